use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facet_strength::analysis::{Measure, SweepFacet};
use facet_strength::enumeration::Family;
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "facet-strength", version, about = "Exact strength indicators for TSP and spanning-tree facets")]
pub struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "FACETSTRENGTH_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Evaluate indicators for one inequality.
    Compute(ComputeArgs),
    /// Cross-check the closed forms against enumeration and projection.
    Validate(ValidateArgs),
    /// Tabulate an indicator over every subtour size.
    Sweep(SweepArgs),
    /// Dump the extreme points of a polytope.
    Enumerate(EnumerateArgs),
    /// Print the version.
    Version,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Tsp,
    Stgp,
    Sthgp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Tsp => Family::Tsp,
            FamilyArg::Stgp => Family::Stgp,
            FamilyArg::Sthgp => Family::Sthgp,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FacetArg {
    Nonneg,
    Subtour,
    Comb,
}

impl FacetArg {
    pub fn sweep_facet(self) -> Option<SweepFacet> {
        match self {
            FacetArg::Nonneg => Some(SweepFacet::NonNeg),
            FacetArg::Subtour => Some(SweepFacet::Subtour),
            FacetArg::Comb => None,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureArg {
    Epr,
    Cd2,
    Cd,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Epr => Measure::Epr,
            MeasureArg::Cd2 => Measure::Cd2,
            MeasureArg::Cd => Measure::Cd,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMeasureArg {
    Epr,
    Cd2,
    Cd,
    /// Per-edge displacement components (spanning trees of graphs only).
    Dx,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Closed-form values.
    Closed,
    /// Enumeration and projection.
    Oracle,
    Both,
}

/// How distances are computed from enumerated points.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Distance inside the affine hull, ignoring the bounds.
    Weak,
    /// Min-norm point of the face (normal distance).
    Qp,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DumpFormat {
    Bin,
    Text,
}

#[derive(Args, Debug, Serialize)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "subtour")]
    pub facet: FacetArg,
    /// Subtour size, or edge size for hypergraph non-negativity.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comb class sizes b1,t1,b2,t2,b3,t3,h,o.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub comb: Option<Vec<usize>>,
    /// Angle between two hypergraph subtours, as p,q,r.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub angle: Option<Vec<usize>>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "epr,cd2")]
    pub measure: Vec<MeasureArg>,
    #[arg(long, value_enum, default_value = "closed")]
    pub source: Source,
    #[arg(long, value_enum, default_value = "weak")]
    pub mode: Mode,
    /// Above this n, hypergraph subtour ratios are evaluated in the log domain.
    #[arg(long, default_value_t = facet_strength::closedforms::LOG_THRESHOLD_DEFAULT)]
    pub threshold: usize,
    /// Lift the enumeration guard up to the hard ceiling.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "sthgp")]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "subtour")]
    pub facet: FacetArg,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "epr")]
    pub measure: Vec<SweepMeasureArg>,
    /// Emit the EPR-versus-CD disagreement matrix instead.
    #[arg(long, conflicts_with = "reflect")]
    pub disagreement: bool,
    /// Emit value(k) beside value(n-k) for k <= n/2.
    #[arg(long)]
    pub reflect: bool,
    /// Rescale floats so the weakest log ratio is -1 and the largest distance is 1.
    #[arg(long)]
    pub scaled: bool,
    #[arg(long, default_value_t = facet_strength::closedforms::LOG_THRESHOLD_DEFAULT)]
    pub threshold: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Count,
    Epr,
    Centroid,
    Cd,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    /// Restrict family checks to one family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Largest n checked; the default depends on the check.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "count,epr,centroid,cd")]
    pub measure: Vec<Check>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: Mode,
    /// Check subtour angles against projected dot products.
    #[arg(long)]
    pub angles: bool,
    /// Check the partial-sum identity for hypergraph subtours.
    #[arg(long)]
    pub partial_sums: bool,
    /// Check every 3-toothed comb against the affine-hull distance.
    #[arg(long)]
    pub combs: bool,
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, value_enum, required_unless_present = "read")]
    pub family: Option<FamilyArg>,
    #[arg(long, required_unless_present = "read")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "bin")]
    pub format: DumpFormat,
    #[arg(long, required_unless_present = "read")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub allow_large: bool,
    /// Summarize an existing binary dump instead of enumerating.
    #[arg(long, conflicts_with_all = ["family", "n", "out"])]
    pub read: Option<PathBuf>,
}
