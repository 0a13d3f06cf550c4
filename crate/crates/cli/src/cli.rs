use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{Expect, MetricSource};

#[derive(Parser, Debug)]
#[command(name = "hypercal", version, about = "Exact checks on hypercomplex Lie-algebra models")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpectArg {
    Hkt,
    NotHkt,
}

impl From<ExpectArg> for Expect {
    fn from(e: ExpectArg) -> Self {
        match e {
            ExpectArg::Hkt => Expect::Hkt,
            ExpectArg::NotHkt => Expect::NotHkt,
        }
    }
}

/// `MODEL` is a path to a model file or a builtin name such as `kodaira_double`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a model.
    Validate { model: String },
    /// Weight decomposition of the k-forms.
    Weights {
        model: String,
        #[arg(long)]
        degree: usize,
    },
    /// HKT verdicts for one or more metrics.
    Hkt {
        model: String,
        /// A metric file, or random:SEED[:N]; defaults to the attached metric.
        #[arg(long)]
        metric: Option<MetricSource>,
        #[arg(long, value_enum)]
        expect: Option<ExpectArg>,
    },
    /// Build the quaternionic double of an affine model.
    Double {
        model: String,
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
    },
    /// The calibration form and its closedness.
    Psi { model: String },
    /// Sampled comass of the calibration form.
    Comass {
        model: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Betti numbers of invariant cohomology.
    Cohomology {
        model: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The pushforward form on the base of a double.
    Theta { model: String },
    /// Full suite.
    Report {
        model: String,
        /// Metrics in the HKT scan.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Canonical model document.
    Export {
        model: String,
        #[arg(short = 'o', long = "output")]
        output: Option<String>,
    },
}
