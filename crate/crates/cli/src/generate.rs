use std::path::PathBuf;

use anyhow::{anyhow, bail};
use clap::{Args, ValueEnum};
use firefighter::format::{instance_to_json, parse_instance};
use firefighter::generators::{
    gen_complete_tree, gen_greedy_pathology, gen_maxsave_reduction, gen_minsave_reduction,
    gen_npc_reduction, gen_random_tree, RandomOptions, Shape, TargetMode,
};
use firefighter::Budgets;
use serde_json::{json, Map, Value};

use crate::io::{write_output, Failure, WithCode, BAD_INPUT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    GreedyPathology,
    NpcReduction,
    MaxsaveReduction,
    MinsaveReduction,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Any,
    Kstar,
    Kcaterpillar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Targets {
    All,
    Leaves,
    Sample,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Height (complete, greedy-pathology).
    #[arg(long)]
    pub h: Option<usize>,
    /// Children per internal vertex (complete).
    #[arg(long)]
    pub d: Option<usize>,
    /// Firefighters per step.
    #[arg(long)]
    pub b: Option<usize>,
    /// Inner instance for the reduction families.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Vertex count (random).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "any")]
    pub shape: ShapeArg,
    /// Leg bound for k-star and k-caterpillar shapes.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub targets: Targets,
    /// Target probability for `--targets sample`.
    #[arg(long, default_value_t = 0.5)]
    pub target_prob: f64,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    #[arg(long)]
    pub root: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn need<T>(value: Option<T>, flag: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| anyhow!("--{flag} is required for this family"))
}

fn build(args: &GenerateArgs) -> anyhow::Result<String> {
    let mut meta = Map::new();
    let inst = match args.family {
        Family::Complete => {
            let (h, d) = (need(args.h, "h")?, need(args.d, "d")?);
            meta.insert("family".into(), json!("complete"));
            meta.insert("h".into(), json!(h));
            meta.insert("d".into(), json!(d));
            gen_complete_tree(h, d, args.b.unwrap_or(1))?
        }
        Family::GreedyPathology => {
            let p = gen_greedy_pathology(need(args.h, "h")?, args.b.unwrap_or(1))?;
            meta = p.meta();
            p.instance
        }
        Family::NpcReduction | Family::MaxsaveReduction | Family::MinsaveReduction => {
            let path = need(args.input.as_ref(), "input")?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
            let (mut inner, _) = parse_instance(&text)?;
            if let Some(b) = args.b {
                inner = inner.with_budget(b)?;
            }
            let b = inner
                .budgets()
                .constant()
                .ok_or_else(|| anyhow!("inner budget must be constant"))?;
            let g = match args.family {
                Family::NpcReduction => gen_npc_reduction(&inner, b)?,
                Family::MaxsaveReduction => gen_maxsave_reduction(&inner, b)?,
                _ => gen_minsave_reduction(&inner, need(args.epsilon, "epsilon")?)?,
            };
            meta = g.meta;
            g.instance
        }
        Family::Random => {
            let n = need(args.n, "n")?;
            let shape = match args.shape {
                ShapeArg::Any => Shape::Any,
                ShapeArg::Kstar => Shape::KStar(need(args.k, "k")?),
                ShapeArg::Kcaterpillar => Shape::KCaterpillar(need(args.k, "k")?),
            };
            if !(0.0..=1.0).contains(&args.target_prob) {
                bail!("--target-prob must lie in [0, 1]");
            }
            let options = RandomOptions {
                targets: match args.targets {
                    Targets::All => TargetMode::All,
                    Targets::Leaves => TargetMode::Leaves,
                    Targets::Sample => TargetMode::Sample(args.target_prob),
                },
                max_weight: args.max_weight,
                budgets: Budgets::Constant(args.b.unwrap_or(1)),
                root: args.root,
            };
            meta.insert("family".into(), json!("random"));
            meta.insert("n".into(), json!(n));
            meta.insert(
                "shape".into(),
                Value::from(format!("{:?}", args.shape).to_lowercase()),
            );
            if let Some(k) = args.k {
                meta.insert("k".into(), json!(k));
            }
            meta.insert("seed".into(), json!(args.seed));
            gen_random_tree(n, shape, args.seed, &options)?
        }
    };
    Ok(instance_to_json(&inst, Some(meta)))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), Failure> {
    let text = build(args).code(BAD_INPUT)?;
    write_output(args.output.as_deref(), &text)
}
