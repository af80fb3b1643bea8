mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{CommandError, ComplexSource, Report, Settings};
use relhom::algebra::Coefficients;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "relhom", version, about = "Homology of relations, covers, cosheaves, categories and profunctors")]
struct Cli {
    /// Coefficients: Z, Q or Zp:<p>. Field-only computations use Q when Z is chosen.
    #[arg(long, global = true, default_value = "Z")]
    coeff: Coefficients,
    /// Seed for the random instance used when no input file is given.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Degree bound for categories with loops; homology is reported up to this degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include facet lists and per-simplex details.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct RelationArg {
    /// Relation CSV: header row of column labels, first column of row labels, 0/1 entries.
    input: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    relation: Option<PathBuf>,
}

impl RelationArg {
    fn path(&self) -> Option<&PathBuf> {
        self.input.as_ref().or(self.relation.as_ref())
    }
}

#[derive(Args)]
struct ComplexRelationArg {
    #[command(flatten)]
    relation: RelationArg,
    /// Cover file; its covering relation is used.
    #[arg(long, conflicts_with_all = ["input", "relation"])]
    cover: Option<PathBuf>,
    /// Source complex, one facet per line.
    #[arg(long, requires_all = ["target", "generators"])]
    source: Option<PathBuf>,
    /// Target complex, one facet per line.
    #[arg(long, requires_all = ["source", "generators"])]
    target: Option<PathBuf>,
    /// Generating pairs `a b | x y`, one per line.
    #[arg(long, requires_all = ["source", "target"])]
    generators: Option<PathBuf>,
}

impl ComplexRelationArg {
    fn source(&self) -> ComplexSource {
        ComplexSource {
            relation: self.relation.path().cloned(),
            cover: self.cover.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            generators: self.generators.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Both Dowker complexes of a relation and their homology.
    Dowker(RelationArg),
    /// The Galois connection between the Dowker face posets.
    Galois(RelationArg),
    /// Relational join of a complex relation.
    Join(ComplexRelationArg),
    /// Relational product cell complex of a complex relation.
    Product(ComplexRelationArg),
    /// Long exact sequence of product, factors and join.
    Les(ComplexRelationArg),
    /// Spectral sequences of the double complex of a complex relation.
    Ss {
        #[command(flatten)]
        input: ComplexRelationArg,
        /// Add the row and column holding the two complexes.
        #[arg(long)]
        augmented: bool,
    },
    /// Sections, cosheaf homology and global cosection of a complex relation.
    Cosheaf(ComplexRelationArg),
    /// Nerve of a cover, good-cover report and long exact sequence.
    Nerve {
        /// Cover as named facet blocks.
        cover: PathBuf,
    },
    /// Homology of a finite category given as JSON.
    Cat {
        category: PathBuf,
    },
    /// Graph, cograph, long exact sequence and spectral sequences of a profunctor.
    Prof {
        /// Profunctor JSON.
        profunctor: Option<PathBuf>,
        /// Use the adjunction profunctor of the Dowker Galois connection of this relation.
        #[arg(long, conflicts_with = "profunctor")]
        relation: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Report, CommandError> {
    let s = Settings { coeff: cli.coeff, seed: cli.seed, max_degree: cli.max_degree, verbose: cli.verbose };
    match &cli.command {
        Command::Dowker(r) => Ok(commands::dowker(&commands::load_relation(r.path(), &s)?, &s)),
        Command::Galois(r) => commands::galois(&commands::load_relation(r.path(), &s)?, &s),
        Command::Join(a) => Ok(commands::join(&commands::load_complex_relation(&a.source(), &s)?, &s)),
        Command::Product(a) => Ok(commands::product(&commands::load_complex_relation(&a.source(), &s)?, &s)),
        Command::Les(a) => commands::les(&commands::load_complex_relation(&a.source(), &s)?, &s),
        Command::Ss { input, augmented } => commands::ss(&commands::load_complex_relation(&input.source(), &s)?, *augmented, &s),
        Command::Cosheaf(a) => Ok(commands::cosheaf(&commands::load_complex_relation(&a.source(), &s)?, &s)),
        Command::Nerve { cover } => {
            let text = input::read(cover)?;
            commands::nerve(&input::parse_cover(&cover.display().to_string(), &text)?, &s)
        }
        Command::Cat { category } => {
            let text = input::read(category)?;
            commands::cat(&input::parse_category(&category.display().to_string(), &text)?, &s)
        }
        Command::Prof { profunctor, relation } => {
            let p = match profunctor {
                Some(path) => input::parse_profunctor(&path.display().to_string(), &input::read(path)?)?,
                None => commands::profunctor_from_relation(&commands::load_relation(relation.as_ref(), &s)?)?,
            };
            commands::prof(&p, &s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let value = serde_json::Value::Object(report.body);
    let text = match cli.format {
        Format::Structured => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
        Format::Text => commands::render_text(&value),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
