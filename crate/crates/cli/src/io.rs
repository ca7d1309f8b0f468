use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use firefighter::SolveError;
use tempfile::NamedTempFile;

pub const GENERAL: u8 = 1;
pub const BAD_INPUT: u8 = 2;
pub const NO_SOLVER: u8 = 3;
pub const PRECONDITION: u8 = 4;
pub const INVALID_STRATEGY: u8 = 5;

/// An error together with the process exit status it maps to.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl fmt::Debug for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: GENERAL,
            error: e.into(),
        }
    }
}

pub trait WithCode<T> {
    fn code(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> WithCode<T> for Result<T, E> {
    fn code(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

pub fn solve_code(e: &SolveError) -> u8 {
    match e {
        SolveError::InstanceTooLarge { .. } | SolveError::NoApplicableSolver => NO_SOLVER,
        SolveError::PreconditionViolated(_)
        | SolveError::NotAStar
        | SolveError::NotACaterpillar
        | SolveError::DecompositionMismatch(_) => PRECONDITION,
        _ => GENERAL,
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .code(BAD_INPUT)
}

/// Writes through a temporary file in the same directory and renames it into
/// place; `None` means stdout.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        print!("{text}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot write into {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
