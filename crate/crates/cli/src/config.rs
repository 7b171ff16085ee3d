use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tdl_core::spectra::Budget;
use tdl_core::ExponentSet;

#[derive(Parser, Debug)]
#[command(name = "tdl", version, about = "Weight spectra and designs of ternary trace codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the weight distribution of C(E).
    Spectrum(CodeArgs),
    /// Enumerate the code shortened on the given positions.
    Shorten(TransformArgs),
    /// Enumerate the code punctured on the given positions.
    Puncture(TransformArgs),
    /// Run one of the verification suites.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        code: CodeArgs,
        /// Codeword weight whose supports are checked (design).
        #[arg(long)]
        weight: Option<usize>,
        /// Largest dual weight checked (dual-design).
        #[arg(long, default_value_t = 7)]
        max_k: usize,
        /// Check a 10^6-word sample instead of every codeword (quadform-oracle).
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    /// Extension degree of GF(3^m).
    #[arg(long)]
    pub m: usize,
    /// Comma-separated exponent list E.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub exps: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Comma-separated positions T, one or two of them.
    #[arg(long, value_delimiter = ',', required = true)]
    pub pos: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Steiner,
    Design,
    DualDesign,
    QuadformOracle,
    PrmEquality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Shorten,
    Puncture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Spectrum,
    Transform(Transform, Vec<usize>),
    Verify { check: Check, weight: Option<usize>, max_k: usize, fast: bool },
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: usize,
    pub exps: ExponentSet,
    pub task: Task,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub budget: Budget,
}

fn budget_from_env() -> Result<Budget, String> {
    match std::env::var("TDL_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map(Budget::new)
            .map_err(|e| format!("TDL_BUDGET={s:?}: {e}")),
        Err(_) => Ok(Budget::default()),
    }
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig, String> {
        let (code, task) = match &self.command {
            Command::Spectrum(c) => (c, Task::Spectrum),
            Command::Shorten(t) => (&t.code, Task::Transform(Transform::Shorten, t.pos.clone())),
            Command::Puncture(t) => (&t.code, Task::Transform(Transform::Puncture, t.pos.clone())),
            Command::Verify {
                check,
                code,
                weight,
                max_k,
                fast,
            } => (
                code,
                Task::Verify {
                    check: *check,
                    weight: *weight,
                    max_k: *max_k,
                    fast: *fast,
                },
            ),
        };
        if code.m < 3 {
            return Err(format!("--m must be at least 3, got {}", code.m));
        }
        let exps = ExponentSet::new(code.m, &code.exps).map_err(|e| e.to_string())?;
        match &task {
            Task::Transform(_, pos) if pos.is_empty() || pos.len() > 2 => {
                return Err(format!("--pos takes one or two positions, got {}", pos.len()));
            }
            Task::Verify { check, weight, .. } => {
                let needs_odd = matches!(check, Check::Steiner | Check::Design | Check::DualDesign);
                if needs_odd && code.m % 2 == 0 {
                    return Err(format!("design checks need odd m, got {}", code.m));
                }
                if *check == Check::Design && weight.is_none() {
                    return Err("verify design needs --weight".into());
                }
            }
            _ => {}
        }
        Ok(RunConfig {
            m: code.m,
            exps,
            task,
            format: self.format,
            out: self.out.clone(),
            budget: budget_from_env()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, String> {
        let mut all = vec!["tdl"];
        all.extend_from_slice(args);
        Cli::try_parse_from(all).map_err(|e| e.to_string())?.config()
    }

    #[test]
    fn defaults_and_lists() {
        let c = parse(&["shorten", "--m", "5", "--pos", "3,9"]).unwrap();
        assert_eq!(c.exps.exponents(), &[0, 1]);
        assert_eq!(c.task, Task::Transform(Transform::Shorten, vec![3, 9]));
        assert_eq!(c.format, Format::Text);
        let c = parse(&["verify", "dual-design", "--m", "3", "--format", "json"]).unwrap();
        assert!(matches!(c.task, Task::Verify { check: Check::DualDesign, max_k: 7, .. }));
    }

    #[test]
    fn rejects_invalid_runs() {
        assert!(parse(&["spectrum", "--m", "5", "--exps", "2,1"]).is_err());
        assert!(parse(&["puncture", "--m", "5", "--pos", "0,1,2"]).is_err());
        assert!(parse(&["verify", "design", "--m", "5"]).is_err());
        assert!(parse(&["verify", "dual-design", "--m", "6"]).is_err());
        assert!(parse(&["verify", "prm-equality", "--m", "6"]).is_ok());
    }
}
