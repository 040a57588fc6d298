//! Command-line front end: label GDP panels, train/evaluate/compare the
//! three learners, run train/test experiments and predict with saved
//! models.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 internal
//! invariant violation.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "klasstree", version, about = "Decision-tree toolkit for regional development classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute growth/contribution features from GDP panels and label them
    /// with development quadrants
    Label(LabelArgs),
    /// Train one learner on a labeled CSV and save the model as JSON
    Train(TrainArgs),
    /// Cross-validate one learner and report accuracy, kappa, MAE and RMSE
    Evaluate(EvaluateArgs),
    /// Cross-validate several learners side by side
    Compare(CompareArgs),
    /// Train on one or more sources and test on another (P1-P4 style)
    Experiment(ExperimentArgs),
    /// Predict classes and probabilities for a CSV with a saved model
    Predict(PredictArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LearnerKind {
    J48,
    Nbtree,
    Reptree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MappingArg {
    Table1,
    Prose,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

/// Learner hyperparameters (those not relevant to the chosen learner are
/// ignored).
#[derive(Args, Clone)]
struct LearnerOpts {
    /// Learner to use
    #[arg(long, value_enum)]
    learner: LearnerKind,
    /// Force pruning on (default for j48/reptree)
    #[arg(long, conflicts_with = "unpruned")]
    pruned: bool,
    /// Force pruning off
    #[arg(long)]
    unpruned: bool,
    /// Minimum instances per leaf (j48, reptree)
    #[arg(long, default_value_t = 2)]
    min_leaf: usize,
    /// Pessimistic-pruning confidence in (0, 0.5] (j48)
    #[arg(long, default_value_t = 0.25)]
    confidence: f64,
    /// Minimum node size to consider a split (nbtree)
    #[arg(long, default_value_t = 30)]
    min_split: usize,
    /// Minimum relative error reduction to split (nbtree)
    #[arg(long, default_value_t = 0.05)]
    min_improvement: f64,
    /// Folds for the internal utility cross-validation (nbtree)
    #[arg(long, default_value_t = 5)]
    utility_folds: usize,
    /// Holdout denominator: 1/N of records form the pruning set (reptree)
    #[arg(long, default_value_t = 3)]
    pruning_folds: usize,
}

#[derive(Args)]
struct LabelArgs {
    /// District-level panel CSV (level,region,indicator,year,value)
    #[arg(long)]
    panel_districts: PathBuf,
    /// Province-level panel CSV with exactly one region
    #[arg(long)]
    panel_province: PathBuf,
    /// Year pair "t-1,t", e.g. 2006,2007
    #[arg(long)]
    years: String,
    /// Quadrant convention
    #[arg(long, value_enum, default_value = "table1")]
    mapping: MappingArg,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Output path for the feature CSV (r_i,r,y_i,y,class)
    #[arg(long, default_value = "labeled.csv")]
    out_data: PathBuf,
    /// Output path for the annotated row CSV (district,indicator,...)
    #[arg(long, default_value = "klassen_rows.csv")]
    out_rows: PathBuf,
}

#[derive(Args)]
struct TrainArgs {
    /// Labeled CSV
    #[arg(long)]
    data: PathBuf,
    /// Name of the class column
    #[arg(long, default_value = "class")]
    class_column: String,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    #[command(flatten)]
    learner: LearnerOpts,
    /// Seed for seeded learners
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output path for the model JSON
    #[arg(long, default_value = "model.json")]
    out: PathBuf,
    /// Also write the text rendering of the tree
    #[arg(long)]
    text: Option<PathBuf>,
    /// Also write the Graphviz DOT rendering
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Labeled CSV
    #[arg(long)]
    data: PathBuf,
    /// Name of the class column
    #[arg(long, default_value = "class")]
    class_column: String,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    #[command(flatten)]
    learner: LearnerOpts,
    /// Number of cross-validation folds
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Seed for fold assignment and seeded learners
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Also write the report to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Labeled CSV
    #[arg(long)]
    data: PathBuf,
    /// Name of the class column
    #[arg(long, default_value = "class")]
    class_column: String,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Comma-separated learners to compare
    #[arg(long, value_delimiter = ',', default_values = ["j48", "nbtree", "reptree"])]
    learners: Vec<LearnerKind>,
    /// Number of cross-validation folds
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Seed for fold assignment and seeded learners
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Also write the report to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment identifier (P1..P4 or custom)
    #[arg(long, default_value = "custom")]
    id: String,
    /// Training CSV(s); several files are concatenated in order
    #[arg(long, required = true)]
    train: Vec<PathBuf>,
    /// Test CSV
    #[arg(long)]
    test: PathBuf,
    /// Name of the class column
    #[arg(long, default_value = "class")]
    class_column: String,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    #[command(flatten)]
    learner: LearnerOpts,
    /// Seed for seeded learners
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Also write the report to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// Model JSON produced by `train`
    #[arg(long)]
    model: PathBuf,
    /// Input CSV matching the model schema (class column optional)
    #[arg(long)]
    data: PathBuf,
    /// CSV delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Output path for the predictions CSV
    #[arg(long, default_value = "predictions.csv")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Label(args) => commands::label(&args),
        Command::Train(args) => commands::train(&args),
        Command::Evaluate(args) => commands::evaluate(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Experiment(args) => commands::experiment(&args),
        Command::Predict(args) => commands::predict(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
