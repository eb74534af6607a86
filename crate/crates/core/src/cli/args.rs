use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use super::{Command, Evidence, GraphFormat, Options, Source, Verb};
use crate::closed_form::Method;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Closed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Auto,
    Edgelist,
    Structured,
}

/// Minimum set-join covers and SNT-rank of pattern graphs.
#[derive(Debug, Parser)]
#[command(name = "sntrank", version)]
pub struct Cli {
    #[command(subcommand)]
    verb: VerbArg,

    /// Rank strategy.
    #[arg(long, value_enum, default_value = "auto", global = true)]
    method: MethodArg,

    /// Give up once the cover order would exceed this value.
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Wall-clock limit for the search, in seconds.
    #[arg(long, global = true, value_parser = parse_seconds)]
    time_limit: Option<Duration>,

    /// Worker threads for the search.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,

    /// Graph file format.
    #[arg(long, value_enum, default_value = "auto", global = true)]
    format: FormatArg,

    /// Plain text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Debug, Subcommand)]
enum VerbArg {
    /// st₊ of a graph.
    Rank { graph: String },
    /// st₊ with an optimal cover.
    Cover { graph: String },
    /// Every optimal cover.
    Enumerate {
        graph: String,
        /// Stop after this many covers.
        #[arg(long)]
        max_covers: Option<usize>,
    },
    /// st₊ with an optimal cover and the factors B and C.
    Factorize { graph: String },
    /// Check a cover or a factorization against a graph.
    Verify {
        graph: String,
        #[arg(long, conflicts_with = "factors", required_unless_present = "factors")]
        cover: Option<String>,
        #[arg(long)]
        factors: Option<String>,
    },
    /// Whether the optimal cover is unique, up to automorphism or in its cover graph.
    Uniqueness { graph: String },
    /// s(n), its factor witness and a cover of K_n of that order.
    Katona { n: usize },
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s
        .parse()
        .map_err(|_| format!("'{s}' is not a number of seconds"))?;
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

impl Cli {
    pub fn into_command(self) -> Command {
        let src = |s: &str| Source::from_arg(s);
        let verb = match self.verb {
            VerbArg::Rank { graph } => Verb::Rank(src(&graph)),
            VerbArg::Cover { graph } => Verb::Cover(src(&graph)),
            VerbArg::Enumerate { graph, max_covers } => Verb::Enumerate {
                graph: src(&graph),
                max_covers,
            },
            VerbArg::Factorize { graph } => Verb::Factorize(src(&graph)),
            VerbArg::Verify {
                graph,
                cover,
                factors,
            } => {
                let evidence = match (cover, factors) {
                    (Some(c), _) => Evidence::Cover(src(&c)),
                    (None, Some(f)) => Evidence::Factors(src(&f)),
                    (None, None) => unreachable!("clap requires one of --cover and --factors"),
                };
                Verb::Verify {
                    graph: src(&graph),
                    evidence,
                }
            }
            VerbArg::Uniqueness { graph } => Verb::Uniqueness(src(&graph)),
            VerbArg::Katona { n } => Verb::Katona(n),
        };
        let options = Options {
            method: match self.method {
                MethodArg::Auto => Method::Auto,
                MethodArg::Exact => Method::Exact,
                MethodArg::Closed => Method::Closed,
            },
            max_order: self.max_order,
            time_limit: self.time_limit,
            threads: usize::from(self.threads),
            format: match self.format {
                FormatArg::Auto => GraphFormat::Auto,
                FormatArg::Edgelist => GraphFormat::EdgeList,
                FormatArg::Structured => GraphFormat::Structured,
            },
            human: self.human,
        };
        Command { verb, options }
    }
}
