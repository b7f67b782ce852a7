use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "apolar", version, about = "Exact ranks, border ranks and product decompositions of forms")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials (lines, parameters).
    #[arg(long, global = true, default_value_t = 8)]
    pub trials: usize,
    /// Height bound for rational searches.
    #[arg(long = "height-bound", global = true, default_value_t = 50)]
    pub height_bound: u64,
    /// Bits for numeric expansions. All current computations are exact, so
    /// the value is only echoed.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Print only the JSON report.
    #[arg(long = "json-only", global = true)]
    pub json_only: bool,
    /// Read the main input from a file instead of the command line.
    #[arg(long, global = true)]
    pub file: Option<String>,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank and border rank of a binary form or a plane cubic.
    Rank {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, conflicts_with_all = ["expr", "cubic"])]
        binary: Option<String>,
        #[arg(long, conflicts_with_all = ["expr", "binary"])]
        cubic: Option<String>,
    },
    /// Orbit class of a plane cubic with its evidence.
    #[command(name = "classify-cubic")]
    ClassifyCubic {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// A decomposition of f (x) f with fewer than rank(f)^2 terms.
    Submult {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Decompositions built from explicit points.
    Decompose {
        #[command(subcommand)]
        kind: DecomposeKind,
    },
    /// Trisecant lines of a space curve through chosen curve points.
    Trisecant {
        /// Forms in s, t separated by ';', or rnc:D, or monomial:D:E0,E1,...
        #[arg(allow_hyphen_values = true)]
        curve: Option<String>,
        /// Parameter of the base point; repeatable. Random when absent.
        #[arg(long = "t1", allow_hyphen_values = true)]
        t1: Vec<String>,
    },
    /// Degree minus multiplicity of a hypersurface at a point.
    Multidrop {
        /// A homogeneous polynomial.
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Use the Hankel determinant of order k+1 instead of a polynomial.
        #[arg(long, conflicts_with = "poly")]
        rnc: Option<usize>,
        /// Curve parameter of the point when --rnc is given.
        #[arg(long, requires = "rnc", conflicts_with = "point", allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Project a curve from a point.
    Project {
        #[arg(allow_hyphen_values = true)]
        curve: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        /// Points whose span contains the center, separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        witnesses: Option<String>,
    },
    /// Lower bounds: monomial products, Kronecker flattenings, Hilbert functions.
    Bound {
        /// a1,b1,a2,b2
        #[arg(long, conflicts_with_all = ["kron", "hf"])]
        monomial: Option<String>,
        /// Two forms (binary or cubic).
        #[arg(long, num_args = 2, conflicts_with = "hf", allow_hyphen_values = true)]
        kron: Option<Vec<String>>,
        /// Flattening per factor: an integer order or "koszul".
        #[arg(long = "flattening", num_args = 2, requires = "kron", allow_hyphen_values = true)]
        flattening: Option<Vec<String>>,
        /// Monomial generators in x1, y1, x2, y2 separated by ','.
        #[arg(long, allow_hyphen_values = true)]
        hf: Option<String>,
        /// Bidegree i,j for a single Hilbert function value.
        #[arg(long, requires = "hf", conflicts_with = "row", allow_hyphen_values = true)]
        at: Option<String>,
        /// Column index j for the row sum over all i.
        #[arg(long, requires = "hf")]
        row: Option<u32>,
    },
    /// A rank window for f (x) f.
    Certify {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Re-check a certificate or report file.
    Verify { path: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum DecomposeKind {
    /// r+1 points of the variety on a line, and a point of that line.
    Line {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        power: usize,
    },
    /// n points spanning a space, one more point in it, and a target.
    Plane {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        extra: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// The product identity for two drop factors given as binary forms.
    Multidrop {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q2: Option<String>,
    },
    /// Two minimal decompositions of a1 (x) b1 + a2 (x) b2 style points.
    Nonproduct {
        /// a1;a2;a3
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// b1;b2
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Rank-3 test for a product of two rank-2 points.
    Rank2 {
        /// a1;a2;p
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        /// b1;b2;q
        #[arg(long, allow_hyphen_values = true)]
        second: String,
        /// Third points a3;b3 on the two lines.
        #[arg(long, allow_hyphen_values = true)]
        third: Option<String>,
    },
}
