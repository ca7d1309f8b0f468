use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Args, ValueEnum};
use firefighter::format::{parse_instance, to_json, ResultFile, StrategyFile};
use firefighter::solvers::{
    kstar_network, min_burned, recognize_kstar, recognize_spine, solve_auto_with,
    solve_bsave_decision_with, solve_corridor, solve_exact_oracle_with, solve_greedy_degree,
    solve_kcaterpillar, solve_kstar, OracleConfig, OracleMode,
};
use firefighter::{SolveError, SolveResult, TreeInstance};

use crate::io::{read, solve_code, write_output, Failure, WithCode, BAD_INPUT, PRECONDITION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Oracle,
    Greedy,
    Corridor,
    Kstar,
    Caterpillar,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Max,
    Min,
    Decision,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: Algo,
    #[arg(long, value_enum, default_value = "max")]
    pub objective: Objective,
    /// Result file; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write the k-star flow network as `arc tail head cap cost` lines.
    #[arg(long)]
    pub dump_network: Option<PathBuf>,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OracleArgs {
    /// Largest instance the bitmask oracle accepts.
    #[arg(long, default_value_t = 14)]
    pub full_cap: usize,
    /// Largest instance the class-memoized oracle accepts.
    #[arg(long, default_value_t = 20)]
    pub oracle_cap: usize,
}

impl OracleArgs {
    pub fn config(self) -> OracleConfig {
        OracleConfig::with_caps(self.full_cap, self.oracle_cap)
    }
}

pub fn run_algo(
    inst: &TreeInstance,
    algo: Algo,
    config: OracleConfig,
) -> Result<SolveResult, SolveError> {
    match algo {
        Algo::Oracle => solve_exact_oracle_with(inst, OracleMode::Restricted, config),
        Algo::Greedy => Ok(solve_greedy_degree(inst)),
        Algo::Corridor => solve_corridor(inst),
        Algo::Kstar => solve_kstar(inst, &recognize_kstar(inst).ok_or(SolveError::NotAStar)?),
        Algo::Caterpillar => solve_kcaterpillar(
            inst,
            &recognize_spine(inst).ok_or(SolveError::NotACaterpillar)?,
        ),
        Algo::Auto => solve_auto_with(inst, config),
    }
}

pub fn solved<T>(res: Result<T, SolveError>) -> Result<T, Failure> {
    res.map_err(|e| Failure {
        code: solve_code(&e),
        error: e.into(),
    })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let (inst, _) = parse_instance(&read(&args.input)?).code(BAD_INPUT)?;
    let config = args.oracle.config();

    if let Some(path) = &args.dump_network {
        if args.algo != Algo::Kstar {
            return Err(anyhow!("--dump-network needs --algo kstar")).code(BAD_INPUT);
        }
        let decomp = recognize_kstar(&inst)
            .ok_or(SolveError::NotAStar)
            .code(PRECONDITION)?;
        let net = solved(kstar_network(&inst, &decomp))?;
        write_output(Some(path), &net.network.dump())?;
    }

    let result = match args.objective {
        Objective::Max | Objective::Min => {
            let res = solved(run_algo(&inst, args.algo, config))?;
            ResultFile {
                objective: if args.objective == Objective::Max {
                    "max"
                } else {
                    "min"
                }
                .into(),
                algorithm_tag: Some(res.algorithm.tag().into()),
                saved_target_weight: Some(res.saved_target_weight),
                burned_target_weight: Some(min_burned(&inst, &res)),
                decision: None,
                strategy: Some(StrategyFile::from(&res.strategy)),
            }
        }
        Objective::Decision => decide(&inst, args.algo, config)?,
    };
    write_output(args.output.as_deref(), &to_json(&result))
}

/// Can every target be saved? `auto` goes through the leaf-normalizing
/// dispatcher; a named algorithm runs on unit weights, so a "no" from the
/// greedy heuristic is not conclusive.
fn decide(inst: &TreeInstance, algo: Algo, config: OracleConfig) -> Result<ResultFile, Failure> {
    let (yes, tag, strategy) = if algo == Algo::Auto {
        let d = solved(solve_bsave_decision_with(inst, config))?;
        (d.yes, d.algorithm.map(|a| a.tag().to_string()), d.witness)
    } else {
        let unit = inst.with_targets(inst.targets().iter().copied())?;
        let res = solved(run_algo(&unit, algo, config))?;
        let yes = res.saved_target_weight == unit.total_target_weight();
        (
            yes,
            Some(res.algorithm.tag().to_string()),
            yes.then_some(res.strategy),
        )
    };
    let (saved, burned) = match &strategy {
        Some(s) => {
            let out = firefighter::simulate(inst, s)?;
            let saved = firefighter::saved_target_weight(inst, &out);
            (Some(saved), Some(inst.total_target_weight() - saved))
        }
        None => (None, None),
    };
    Ok(ResultFile {
        objective: "decision".into(),
        algorithm_tag: tag,
        saved_target_weight: saved,
        burned_target_weight: burned,
        decision: Some(yes),
        strategy: strategy.as_ref().map(StrategyFile::from),
    })
}
