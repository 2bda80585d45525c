//! `syncgames`: classify, compose, construct and witness synchronous correlations,
//! and run the Boole inequality toolkit.

mod input;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use syncgames::boole::{
    atoms_to_intersections, boole_pair_bounds, generate_triple_inequalities, intersections_to_atoms, triple_bounds,
    BooleVector, Interpretation,
};
use syncgames::category::compose;
use syncgames::constructors::{
    appendix_classical, from_classical_model, from_deterministic_pair, from_labelled_function, from_quantum_model,
    lemma1_nonsignaling, lemma2_classical, lemma3_nonsignaling, random_correlation, ClassicalModel,
    PairDistribution, PairWeights, QuantumModel, RandomKind,
};
use syncgames::morphology::{epi_witness, mono_witness, CategoryTag};
use syncgames::rational::format_rational;
use syncgames::{Correlation, DeterministicPair, Error, FiniteSet};

const DEFAULT_MAX_SIZE: usize = 6;

#[derive(Parser)]
#[command(name = "syncgames", version, about = "Exact synchronous-correlation toolkit")]
struct Cli {
    /// Largest allowed size of an input or output set.
    #[arg(long, global = true, env = "SYNCGAMES_MAX_SIZE", default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class flags and per-category morphism properties of a correlation file.
    Classify {
        path: PathBuf,
        /// Print an aligned table instead of JSON.
        #[arg(long)]
        table: bool,
        /// Write mono/epi witness files for every category where they exist.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Write `q ∘ p`.
    Compose {
        q: PathBuf,
        p: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a correlation from a generative description.
    Construct(ConstructArgs),
    /// Write two distinct morphisms with equal compositions, refuting cancelability.
    Witness {
        property: Property,
        #[arg(long, value_parser = parse_category)]
        category: CategoryTag,
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Boole inequalities and atom/intersection transforms.
    #[command(subcommand)]
    Boole(BooleCommand),
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// From a function `x:y,…`.
    Function {
        #[arg(long)]
        map: String,
        /// Input labels; defaults to the map's domain in order.
        #[arg(long)]
        input: Option<String>,
        /// Output labels; defaults to the sorted image.
        #[arg(long)]
        output: Option<String>,
    },
    /// From a deterministic pair `xa,xb:ya,yb;…` covering every input pair.
    Pair {
        #[arg(long)]
        map: String,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        output: Option<String>,
    },
    /// From a hidden-variable model file.
    Mixture {
        #[arg(long)]
        model: PathBuf,
    },
    /// From a tracial projection-valued model file.
    Quantum {
        #[arg(long)]
        model: PathBuf,
    },
    /// Nonsignaling correlation on `{0,1}` with `p(·|0,1) = u`, `p(·|1,0) = v`.
    Lemma1 {
        #[arg(long)]
        set: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Classical correlation on `{0,1}` with `p(·|0,1) = u`, `p(·|1,0) = uᵀ`.
    Lemma2 {
        #[arg(long)]
        set: String,
        #[arg(long)]
        u: String,
    },
    /// Nonsignaling correlation into `{0,1}` with `p(1,1|·) = w`.
    Lemma3 {
        #[arg(long)]
        set: String,
        #[arg(long)]
        w: String,
    },
    /// Classical correlation into `{0,1}` realizing symmetric pairwise weights.
    Appendix {
        #[arg(long)]
        set: String,
        #[arg(long)]
        w: String,
        /// Also write the hidden-variable model.
        #[arg(long)]
        measure_out: Option<PathBuf>,
    },
    /// A seeded random member of a class.
    Random {
        /// synchronous, classical, lemma1_ns, lemma3_ns or deterministic_pair.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        input_size: usize,
        #[arg(long)]
        output_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Mono,
    Epi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    /// Atoms to intersections.
    P2w,
    /// Intersections to atoms.
    W2p,
}

#[derive(Subcommand)]
enum BooleCommand {
    /// Range of `Pr(A ∩ B)` from `Pr(A)` and `Pr(B)`.
    PairBounds {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Bounds on the triple intersection from 3×3 pairwise weights.
    TripleBounds {
        #[arg(long)]
        w: String,
    },
    /// The sixteen inequalities on pairwise weights of three events.
    TripleInequalities {
        #[arg(long)]
        json: bool,
    },
    /// Convert a Boole vector file between atoms and intersections.
    Transform {
        #[arg(long)]
        direction: Direction,
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hidden-variable measure realizing pairwise weights.
    Reconstruct {
        #[arg(long)]
        w: String,
        #[arg(long)]
        set: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn parse_category(s: &str) -> Result<CategoryTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Guard(String),
    Write(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e {
                Error::Parse { .. } | Error::UnknownLabel(_) | Error::DuplicateLabel(_) | Error::EmptySet => 2,
                Error::ShapeMismatch { .. } | Error::SetMismatch(_) | Error::UnsupportedShape(_) => 4,
                _ => 5,
            },
            Failure::Guard(_) => 3,
            Failure::Write(..) => 5,
        }
    }

    fn report(&self) -> String {
        let (kind, message) = match self {
            Failure::Core(e) => {
                let debug = format!("{e:?}");
                let kind: String = debug.chars().take_while(char::is_ascii_alphanumeric).collect();
                (kind, e.to_string())
            }
            Failure::Guard(m) => ("SizeGuard".into(), m.clone()),
            Failure::Write(path, e) => ("Write".into(), format!("{}: {e}", path.display())),
        };
        serde_json::json!({ "error": kind, "message": message }).to_string()
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Context {
    max_size: usize,
    seed: u64,
}

impl Context {
    fn guard(&self, what: &str, size: usize) -> Run<()> {
        if size > self.max_size {
            return Err(Failure::Guard(format!(
                "{what} has {size} elements, above the size guard {} (raise with --max-size)",
                self.max_size
            )));
        }
        Ok(())
    }

    fn guard_correlation(&self, p: &Correlation) -> Run<()> {
        self.guard("input set", p.input_set().size())?;
        self.guard("output set", p.output_set().size())
    }

    fn load(&self, path: &Path) -> Run<Correlation> {
        let p = Correlation::from_json(&input::read(path)?)?;
        self.guard_correlation(&p)?;
        Ok(p)
    }
}

fn emit(text: &str, out: Option<&Path>) -> Run<()> {
    match out {
        Some(path) => {
            let mut text = text.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            fs::write(path, text).map_err(|e| Failure::Write(path.to_path_buf(), e))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Write("<stdout>".into(), e)),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_size != DEFAULT_MAX_SIZE {
        eprintln!(
            "warning: size guard set to {} (default {DEFAULT_MAX_SIZE}); hom-set enumeration grows as |Y|^|X|",
            cli.max_size
        );
    }
    let ctx = Context {
        max_size: cli.max_size,
        seed: cli.seed,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.report());
            ExitCode::from(failure.code())
        }
    }
}

fn run(ctx: &Context, command: Command) -> Run<u8> {
    match command {
        Command::Classify {
            path,
            table,
            witness_dir,
        } => {
            let p = ctx.load(&path)?;
            let report = report::classify(&p, witness_dir.as_deref())?;
            emit(&if table { report.to_table() } else { report.to_json() }, None)?;
            Ok(0)
        }
        Command::Compose { q, p, out } => {
            let (q, p) = (ctx.load(&q)?, ctx.load(&p)?);
            emit(&compose(&q, &p)?.to_json(), out.as_deref())?;
            Ok(0)
        }
        Command::Construct(args) => {
            let p = construct(ctx, args.kind)?;
            emit(&p.to_json(), args.out.as_deref())?;
            Ok(0)
        }
        Command::Witness {
            property,
            category,
            path,
            out,
        } => {
            let p = ctx.load(&path)?;
            let (witness, name) = match property {
                Property::Mono => (mono_witness(&p, category)?, "monomorphism"),
                Property::Epi => (epi_witness(&p, category)?, "epimorphism"),
            };
            match witness {
                Some(w) => {
                    emit(&w.to_json(), out.as_deref())?;
                    Ok(0)
                }
                None => {
                    println!("{} is a {name} in {category}; no witness exists", path.display());
                    Ok(1)
                }
            }
        }
        Command::Boole(cmd) => boole(ctx, cmd),
    }
}

fn weights(ctx: &Context, set: &str, w: &str) -> Run<PairWeights> {
    let set = input::labels(set)?;
    ctx.guard("weight set", set.size())?;
    Ok(PairWeights::new(set, input::matrix(w, "--w")?)?)
}

fn distribution(ctx: &Context, set: &FiniteSet, text: &str, flag: &str) -> Run<PairDistribution> {
    ctx.guard("output set", set.size())?;
    Ok(PairDistribution::new(set.clone(), input::matrix(text, flag)?)?)
}

fn construct(ctx: &Context, kind: ConstructKind) -> Run<Correlation> {
    let p = match kind {
        ConstructKind::Function { map, input, output } => {
            let map = input::function_map(&map)?;
            let input = match input {
                Some(text) => input::labels(&text)?,
                None => FiniteSet::new(map.iter().map(|(x, _)| x.as_str()))?,
            };
            let output = match output {
                Some(text) => input::labels(&text)?,
                None => input::sorted_labels(map.iter().map(|(_, y)| y))?,
            };
            ctx.guard("input set", input.size())?;
            ctx.guard("output set", output.size())?;
            from_labelled_function(&input, &output, &map)?
        }
        ConstructKind::Pair { map, input, output } => {
            let map = input::pair_map(&map)?;
            let input = match input {
                Some(text) => input::labels(&text)?,
                None => input::sorted_labels(map.iter().flat_map(|((a, b), _)| [a, b]))?,
            };
            let output = match output {
                Some(text) => input::labels(&text)?,
                None => input::sorted_labels(map.iter().flat_map(|(_, (a, b))| [a, b]))?,
            };
            ctx.guard("input set", input.size())?;
            ctx.guard("output set", output.size())?;
            let mut images = vec![None; input.squared_size()];
            for ((xa, xb), (ya, yb)) in &map {
                let c = input.pair_index(input.index_of(xa)?, input.index_of(xb)?);
                images[c] = Some((output.index_of(ya)?, output.index_of(yb)?));
            }
            if let Some(c) = images.iter().position(Option::is_none) {
                let (xa, xb) = input.pair_of(c);
                return Err(Error::UnknownLabel(format!(
                    "no image for ({},{})",
                    input.label(xa),
                    input.label(xb)
                ))
                .into());
            }
            let pair = DeterministicPair::from_fn(input.clone(), output, |xa, xb| {
                images[input.pair_index(xa, xb)].expect("checked")
            })?;
            from_deterministic_pair(&pair)?
        }
        ConstructKind::Mixture { model } => {
            let model = ClassicalModel::from_json(&input::read(&model)?)?;
            ctx.guard("input set", model.input_set().size())?;
            ctx.guard("output set", model.output_set().size())?;
            from_classical_model(&model)?
        }
        ConstructKind::Quantum { model } => {
            let model = QuantumModel::from_json(&input::read(&model)?)?;
            ctx.guard("input set", model.input_set().size())?;
            ctx.guard("output set", model.output_set().size())?;
            from_quantum_model(&model)?
        }
        ConstructKind::Lemma1 { set, u, v } => {
            let set = input::labels(&set)?;
            lemma1_nonsignaling(&distribution(ctx, &set, &u, "--u")?, &distribution(ctx, &set, &v, "--v")?)?
        }
        ConstructKind::Lemma2 { set, u } => {
            let set = input::labels(&set)?;
            lemma2_classical(&distribution(ctx, &set, &u, "--u")?)?
        }
        ConstructKind::Lemma3 { set, w } => lemma3_nonsignaling(&weights(ctx, &set, &w)?)?,
        ConstructKind::Appendix { set, w, measure_out } => {
            let measure = appendix_classical(&weights(ctx, &set, &w)?)?;
            if let Some(path) = measure_out {
                emit(&measure.model.to_json(), Some(&path))?;
            }
            measure.correlation
        }
        ConstructKind::Random {
            kind,
            input_size,
            output_size,
        } => {
            let kind: RandomKind = kind.parse()?;
            ctx.guard("input set", input_size)?;
            ctx.guard("output set", output_size)?;
            if input_size == 0 || output_size == 0 {
                return Err(Error::EmptySet.into());
            }
            random_correlation(kind, &FiniteSet::range(input_size), &FiniteSet::range(output_size), ctx.seed)?
        }
    };
    Ok(p)
}

fn boole(ctx: &Context, cmd: BooleCommand) -> Run<u8> {
    match cmd {
        BooleCommand::PairBounds { a, b } => {
            let (lower, upper) = boole_pair_bounds(&input::rational(&a, "a")?, &input::rational(&b, "b")?)?;
            let value = serde_json::json!({ "lower": format_rational(&lower), "upper": format_rational(&upper) });
            emit(&serde_json::to_string_pretty(&value).expect("json serializes"), None)?;
        }
        BooleCommand::TripleBounds { w } => {
            let bounds = triple_bounds(&input::matrix(&w, "--w")?)?;
            let list = |v: &[syncgames::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
            let value = serde_json::json!({
                "lowers": list(&bounds.lowers),
                "uppers": list(&bounds.uppers),
                "max_lower": format_rational(&bounds.max_lower()),
                "min_upper": format_rational(&bounds.min_upper()),
                "feasible": bounds.feasible,
            });
            emit(&serde_json::to_string_pretty(&value).expect("json serializes"), None)?;
        }
        BooleCommand::TripleInequalities { json } => {
            let system = generate_triple_inequalities();
            emit(&if json { system.to_json() } else { system.to_text() }, None)?;
        }
        BooleCommand::Transform { direction, path, out } => {
            let v = BooleVector::from_json(&input::read(&path)?)?;
            let expected = match direction {
                Direction::P2w => Interpretation::Atoms,
                Direction::W2p => Interpretation::Intersections,
            };
            if v.interpretation() != expected {
                return Err(Error::UnsupportedShape(format!(
                    "direction needs an {expected:?} vector, file holds {:?}",
                    v.interpretation()
                ))
                .into());
            }
            let result = match direction {
                Direction::P2w => atoms_to_intersections(&v),
                Direction::W2p => {
                    let r = intersections_to_atoms(&v)?;
                    if !r.feasible() {
                        eprintln!("warning: no measure has these intersections; negative atoms at {:?}", r.negative);
                    }
                    r.atoms
                }
            };
            emit(&result.to_json(), out.as_deref())?;
        }
        BooleCommand::Reconstruct { w, set, out } => {
            let rows = input::matrix(&w, "--w")?;
            let set = match set {
                Some(text) => input::labels(&text)?,
                None => FiniteSet::range(rows.len()),
            };
            ctx.guard("weight set", set.size())?;
            let measure = appendix_classical(&PairWeights::new(set, rows)?)?;
            let value = serde_json::json!({
                "model": serde_json::from_str::<serde_json::Value>(&measure.model.to_json()).expect("valid json"),
                "atoms": serde_json::from_str::<serde_json::Value>(&measure.atoms.to_json()).expect("valid json"),
            });
            emit(&serde_json::to_string_pretty(&value).expect("json serializes"), out.as_deref())?;
        }
    }
    Ok(0)
}
