//! `tfa`: exact computations with torsion-free abelian groups of finite rank.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tfa_core::corpus::Profile;

#[derive(Parser, Debug)]
#[command(name = "tfa", version, about = "Exact computations with finite-rank torsion-free abelian groups")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check membership and purification with the brute-force oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Exponent bound for the oracle.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: u32,
    /// Coefficient height for candidate lines in searches.
    #[arg(long, global = true, default_value_t = 3)]
    pub height: u32,
    /// Largest number of blocks in enumerated partitions (default: the rank).
    #[arg(long, global = true)]
    pub max_blocks: Option<usize>,
    /// Cap on the number of candidate bases examined by searches.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_bases: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// First corpus seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Corpus profile for `verify` (cd, acd, butler, mixed; default: all).
    #[arg(long, global = true)]
    pub profile: Option<Profile>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether a vector lies in the group.
    Member {
        group: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Type of an element of the group.
    Type {
        group: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Pure subgroup generated by vectors: G ∩ span.
    Purify {
        group: String,
        #[arg(allow_hyphen_values = true)]
        vectors: String,
    },
    /// Whether the vectors form a basis (a maximal independent set of elements).
    BasisCheck {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
    },
    /// Least positive integer carrying the vectors into the group.
    Minmul {
        group: String,
        #[arg(allow_hyphen_values = true)]
        vectors: String,
    },
    /// Reduced representation of an element in a basis.
    Brep {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Splitting check of one partition of a basis, or of all of them.
    Split {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Bounded search for direct decompositions.
    Decompose {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
    },
    /// Isomorphism of the decompositions given by two splitting partitions.
    Iso {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
        #[arg(long)]
        partition: String,
        #[arg(long, allow_hyphen_values = true)]
        other_basis: String,
        #[arg(long)]
        other_partition: String,
    },
    /// Whether a matrix is an automorphism (or quasi-automorphism) of the group.
    AutCheck {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// File of summands defining a Jónsson basis; reports the induced map on G/A.
        #[arg(long)]
        summands: Option<String>,
    },
    /// Rational r with rH = G.
    QuasiEq { first: String, second: String },
    /// Positive integers a, b with aH ≤ G and bG ≤ H.
    Commensurable { first: String, second: String },
    /// Jónsson basis from a file of summands.
    Jonsson { group: String, summands: String },
    /// Search for a Jónsson basis of least index.
    Regulating { group: String },
    /// Lift a decomposition of G/A to G.
    Lift {
        group: String,
        summands: String,
        /// Blocks of G/A generators in invariant-factor coordinates: "1,0;0,1|0,2".
        #[arg(long, allow_hyphen_values = true)]
        blocks: Option<String>,
    },
    /// The quotient G/A.
    Quotient { group: String, subgroup: String },
    /// Property SI for a basis.
    SiCheck {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
    },
    /// Search for a quasi-decomposition, with the typeset certificate.
    SiSearch { group: String },
    /// Property suite on the groups of a file, or on generated groups.
    Verify {
        file: Option<String>,
        /// Number of generated groups.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn run(cmd: &Command, o: &Options) -> report::Report {
    use commands as c;
    let (name, r) = match cmd {
        Command::Member { group, vector } => ("member", c::member(o, group, vector)),
        Command::Type { group, vector } => ("type", c::element_type(group, vector)),
        Command::Purify { group, vectors } => ("purify", c::purify(o, group, vectors)),
        Command::BasisCheck { group, basis } => ("basis-check", c::basis_check(group, basis)),
        Command::Minmul { group, vectors } => ("minmul", c::minmul(group, vectors)),
        Command::Brep { group, basis, vector } => ("brep", c::brep(group, basis, vector)),
        Command::Split { group, basis, partition } => ("split", c::split(o, group, basis, partition.as_deref())),
        Command::Decompose { group, basis } => ("decompose", c::decompose(o, group, basis.as_deref())),
        Command::Iso { group, basis, partition, other_basis, other_partition } => {
            ("iso", c::iso(group, [basis, partition], [other_basis, other_partition]))
        }
        Command::AutCheck { group, matrix, summands } => ("aut-check", c::aut_check(group, matrix, summands.as_deref())),
        Command::QuasiEq { first, second } => ("quasi-eq", c::quasi_eq(first, second)),
        Command::Commensurable { first, second } => ("commensurable", c::commensurable(first, second)),
        Command::Jonsson { group, summands } => ("jonsson", c::jonsson(o, group, summands)),
        Command::Regulating { group } => ("regulating", c::regulating(o, group)),
        Command::Lift { group, summands, blocks } => ("lift", c::lift(group, summands, blocks.as_deref())),
        Command::Quotient { group, subgroup } => ("quotient", c::quotient(group, subgroup)),
        Command::SiCheck { group, basis } => ("si-check", c::si_check(group, basis)),
        Command::SiSearch { group } => ("si-search", c::si_search(o, group)),
        Command::Verify { file, count } => ("verify", c::verify(o, file.as_deref(), *count)),
    };
    match r {
        Ok(mut rep) => {
            rep.command = name.to_string();
            rep
        }
        Err(e) => report::error_report(name, &e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(t) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let rep = run(&cli.command, &cli.opts);
    let text = rep.render(cli.opts.json);
    if rep.is_error() && !cli.opts.json {
        eprint!("{text}");
        return ExitCode::from(1);
    }
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(rep.status.exit_code() as u8)
}
