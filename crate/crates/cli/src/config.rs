//! Command-line surface and the validated run configuration.

use std::path::PathBuf;
use std::time::Duration;

use brickforge::coxeter::{build_cartan, CartanType, CoxeterWord, Family, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const MAX_RANK: usize = 8;
pub const DEFAULT_SEED: u64 = 20_240_517;
pub const DEFAULT_MAX_RANK: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "brickforge",
    version,
    about = "Verify brick polytopes, F-polynomial Newton polytopes and tropical cluster fans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root, weight, shifted-weight and cluster-variable tables.
    Tables(CommonArgs),
    /// Type cone of the g-vector fan is spanned by the summands Asso_β.
    VerifyTypecone(CommonArgs),
    /// Newton polytope of F_β equals Asso_β for every positive root.
    VerifyNewton(CommonArgs),
    /// Tropical cluster map on the x = 0 slice versus the g-vector fan.
    VerifyTropical(CommonArgs),
    /// Flip differences, edges, F-polynomial extremes and brute-force oracles.
    VerifyProperties(CommonArgs),
    /// Several checks in one run.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Checks to run.
        #[arg(long, value_delimiter = ',', default_values = ["typecone", "newton", "tropical", "properties"])]
        checks: Vec<Check>,
    },
    /// The two words relaxing root independence and full support.
    Counterexamples(CommonArgs),
    /// Search short words for root-independent full-support complexes.
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        /// Longest word length to enumerate.
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Rays, polytopes and fan data of a rank-2 type for plotting.
    PlotData(CommonArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// `A3`, a family letter (all ranks up to --max-rank), or `all`; repeatable, comma separated.
    #[arg(long = "type", value_delimiter = ',')]
    pub types: Vec<String>,
    /// Rank bound for family selectors and the default batch.
    #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
    pub max_rank: usize,
    /// Coxeter element as comma separated letters, e.g. `1,2,3`.
    #[arg(long, conflicts_with = "all_coxeter")]
    pub coxeter: Option<String>,
    /// Run every Coxeter element of each type.
    #[arg(long)]
    pub all_coxeter: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory with fixture files overriding the built-in ones.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Wall-clock budget; checks not started in time are reported as skipped.
    #[arg(long)]
    pub budget_seconds: Option<u64>,
    /// Upper bound on seeds explored during cluster mutation.
    #[arg(long, default_value_t = brickforge::cluster::DEFAULT_SEED_BUDGET)]
    pub seed_budget: usize,
    /// Report zero milliseconds so that reports are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Include F4 in tropical checks of the default batch.
    #[arg(long)]
    pub include_f4_tropical: bool,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Tables,
    Typecone,
    Newton,
    Tropical,
    Properties,
    Counterexamples,
    Scan,
    Plot,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Tables => "tables",
            Check::Typecone => "typecone",
            Check::Newton => "newton",
            Check::Tropical => "tropical",
            Check::Properties => "properties",
            Check::Counterexamples => "counterexamples",
            Check::Scan => "scan",
            Check::Plot => "plot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoxeterSelector {
    Standard,
    Word(Word),
    All,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub types: Vec<CartanType>,
    /// True when no `--type` was given.
    pub default_batch: bool,
    pub coxeter: CoxeterSelector,
    pub checks: Vec<Check>,
    pub format: Format,
    pub fixtures: Option<PathBuf>,
    pub seed: u64,
    pub budget: Option<Duration>,
    pub seed_budget: usize,
    pub timing: bool,
    pub include_f4_tropical: bool,
    pub threads: Option<usize>,
    pub scan_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

impl RunConfig {
    pub fn new(checks: Vec<Check>) -> Self {
        RunConfig {
            types: default_batch_types(DEFAULT_MAX_RANK),
            default_batch: true,
            coxeter: CoxeterSelector::Standard,
            checks,
            format: Format::Text,
            fixtures: None,
            seed: DEFAULT_SEED,
            budget: None,
            seed_budget: brickforge::cluster::DEFAULT_SEED_BUDGET,
            timing: true,
            include_f4_tropical: false,
            threads: None,
            scan_length: 6,
        }
    }

    pub fn from_command(command: Command) -> Result<Self, ConfigError> {
        let (common, checks, scan_length) = match command {
            Command::Tables(c) => (c, vec![Check::Tables], 0),
            Command::VerifyTypecone(c) => (c, vec![Check::Typecone], 0),
            Command::VerifyNewton(c) => (c, vec![Check::Newton], 0),
            Command::VerifyTropical(c) => (c, vec![Check::Tropical], 0),
            Command::VerifyProperties(c) => (c, vec![Check::Properties], 0),
            Command::Verify { common, checks } => (common, checks, 0),
            Command::Counterexamples(c) => (c, vec![Check::Counterexamples], 0),
            Command::Scan { common, max_length } => (common, vec![Check::Scan], max_length),
            Command::PlotData(c) => (c, vec![Check::Plot], 0),
        };
        let plot = checks.contains(&Check::Plot);
        let mut config = RunConfig::from_common(&common, checks)?;
        config.scan_length = scan_length;
        if plot {
            if config.default_batch {
                config.types = vec!["B2".parse().expect("valid type")];
            }
            if let Some(t) = config.types.iter().find(|t| t.rank != 2) {
                return Err(ConfigError(format!("plot data needs a rank-2 type, got {t}")));
            }
        }
        Ok(config)
    }

    pub fn from_common(args: &CommonArgs, mut checks: Vec<Check>) -> Result<Self, ConfigError> {
        if args.max_rank == 0 || args.max_rank > MAX_RANK {
            return Err(ConfigError(format!("rank bound {} outside 1..={MAX_RANK}", args.max_rank)));
        }
        checks.sort();
        checks.dedup();
        if checks.is_empty() {
            return Err(ConfigError("no checks selected".into()));
        }
        let default_batch = args.types.is_empty();
        let types =
            if default_batch { default_batch_types(args.max_rank) } else { parse_types(&args.types, args.max_rank)? };
        let coxeter = match (&args.coxeter, args.all_coxeter) {
            (Some(s), _) => CoxeterSelector::Word(parse_coxeter_word(s)?),
            (None, true) => CoxeterSelector::All,
            (None, false) => CoxeterSelector::Standard,
        };
        if let CoxeterSelector::Word(w) = &coxeter {
            for &t in &types {
                CoxeterWord::new(w.clone(), t.rank).map_err(|e| ConfigError(format!("--coxeter {w} for {t}: {e}")))?;
            }
        }
        if args.threads == Some(0) {
            return Err(ConfigError("--threads must be positive".into()));
        }
        Ok(RunConfig {
            types,
            default_batch,
            coxeter,
            checks,
            format: args.format,
            fixtures: args.fixtures.clone(),
            seed: args.seed,
            budget: args.budget_seconds.map(Duration::from_secs),
            seed_budget: args.seed_budget,
            timing: !args.no_timing,
            include_f4_tropical: args.include_f4_tropical,
            threads: args.threads,
            scan_length: 6,
        })
    }

    /// Coxeter words selected for type `t`.
    pub fn coxeter_words(&self, t: CartanType) -> Vec<CoxeterWord> {
        match &self.coxeter {
            CoxeterSelector::Standard => vec![CoxeterWord::standard(t.rank)],
            CoxeterSelector::Word(w) => vec![CoxeterWord::new(w.clone(), t.rank).expect("validated")],
            CoxeterSelector::All => build_cartan(t).coxeter_elements(),
        }
    }
}

/// Crystallographic types up to the rank bound, with `C2` dropped as a copy of `B2`.
pub fn default_batch_types(max_rank: usize) -> Vec<CartanType> {
    CartanType::all_up_to(max_rank).into_iter().filter(|t| !(t.family == Family::C && t.rank == 2)).collect()
}

fn parse_types(items: &[String], max_rank: usize) -> Result<Vec<CartanType>, ConfigError> {
    let mut out = Vec::new();
    for item in items {
        let item = item.trim();
        if item.eq_ignore_ascii_case("all") {
            out.extend(default_batch_types(max_rank));
            continue;
        }
        if item.len() == 1 {
            let family = parse_family(item)?;
            out.extend(default_batch_types(max_rank).into_iter().filter(|t| t.family == family));
            continue;
        }
        let t: CartanType = item.parse().map_err(|e| ConfigError(format!("type {item:?}: {e}")))?;
        if t.rank > MAX_RANK {
            return Err(ConfigError(format!("type {t} exceeds rank bound {MAX_RANK}")));
        }
        out.push(t);
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(ConfigError("type selector matches no type".into()));
    }
    Ok(out)
}

fn parse_family(s: &str) -> Result<Family, ConfigError> {
    Ok(match s.to_ascii_uppercase().as_str() {
        "A" => Family::A,
        "B" => Family::B,
        "C" => Family::C,
        "D" => Family::D,
        "E" => Family::E,
        "F" => Family::F,
        "G" => Family::G,
        _ => return Err(ConfigError(format!("unknown family {s:?}"))),
    })
}

fn parse_coxeter_word(s: &str) -> Result<Word, ConfigError> {
    let letters = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| ConfigError(format!("bad letter {x:?} in --coxeter"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let cli = Cli::try_parse_from(args).expect("clap accepts");
        RunConfig::from_command(cli.command)
    }

    #[test]
    fn selectors() {
        let c = parse(&["brickforge", "verify-newton"]).unwrap();
        assert!(c.default_batch);
        assert_eq!(c.types.len(), 12);
        let c = parse(&["brickforge", "tables", "--type", "B", "--max-rank", "3"]).unwrap();
        assert_eq!(c.types.iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["B2", "B3"]);
        let c = parse(&["brickforge", "verify-typecone", "--type", "A3", "--coxeter", "2,1,3"]).unwrap();
        assert_eq!(c.coxeter_words("A3".parse().unwrap())[0].to_string(), "213");
        let c = parse(&["brickforge", "verify-typecone", "--type", "B2", "--all-coxeter"]).unwrap();
        assert_eq!(c.coxeter_words("B2".parse().unwrap()).len(), 2);
    }

    #[test]
    fn invalid() {
        assert!(parse(&["brickforge", "tables", "--type", "A9"]).is_err());
        assert!(parse(&["brickforge", "tables", "--type", "Q3"]).is_err());
        assert!(parse(&["brickforge", "tables", "--type", "D3"]).is_err());
        assert!(parse(&["brickforge", "tables", "--max-rank", "9"]).is_err());
        assert!(parse(&["brickforge", "tables", "--type", "A3", "--coxeter", "1,1,2"]).is_err());
        assert!(parse(&["brickforge", "tables", "--type", "A3", "--coxeter", "1,2"]).is_err());
    }
}
