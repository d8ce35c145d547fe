//! `gengroup` — file-driven front end for the generalized-group library.
//!
//! Structures travel as JSON documents (Cayley tables, Rees specifications,
//! integer matrices, homomorphism image lists); human-facing reports are
//! plain text. Every command is deterministic given its inputs and flags.
//!
//! Exit codes: 0 success, 1 mathematical failure or falsification,
//! 2 usage, I/O, or parse errors.

mod expr;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use gengroup::claims::{self, ClaimReport, ClaimStatus};
use gengroup::finite::CayleyDoc;
use gengroup::hom::{enumerate_homs, HomDoc};
use gengroup::rees::ReesDoc;
use gengroup::slender::{classify, named_verdict, MatrixDoc, SlenderError};
use gengroup::{
    smith_normal_form, verify_axioms, FiniteGenGroup, HomTable, IntMatrix, ReesSpec, TableError,
};

#[derive(Parser)]
#[command(
    name = "gengroup",
    version,
    about = "Finite generalized groups: verification, construction, classification",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the generalized-group axioms on a Cayley-table document.
    Verify { path: PathBuf },
    /// List idempotents and emit every group component as a Cayley document.
    Decompose { path: PathBuf },
    /// Build the multiplication table described by a Rees document.
    Rees { path: PathBuf },
    /// Direct product of two or more Cayley-table documents.
    Product {
        #[arg(num_args = 2.., required = true)]
        paths: Vec<PathBuf>,
    },
    /// Check a map between two tables for the homomorphism law.
    Hom {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Enumerate homomorphisms between two tables, up to a cap.
    #[command(name = "enumerate-homs")]
    EnumerateHoms {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Smith normal form of an integer matrix document.
    Snf { path: PathBuf },
    /// Classify the abelian group presented by a relations matrix.
    Classify { path: PathBuf },
    /// Slenderness verdict for a relations file or a named group.
    Slender {
        /// Catalogue name (Q, J_p, prod_Z, Z^n, free_abelian) or a path to
        /// a relations matrix document.
        input: String,
    },
    /// Evaluate an expression in the star carrier (see star-eval --help).
    #[command(
        name = "star-eval",
        long_about = "Evaluate an expression in the star carrier.\n\n\
            Atoms: i(n) basis element, {3:1,6:-2} sparse literal, [0,0,3] dense literal,\n\
            e(x) local identity, inv(x) inverse, f(x)/g(x) the canonical maps.\n\
            Operators: ⋆ (alias *) and +, applied left to right with no precedence."
    )]
    StarEval { expr: String },
    /// Run the bounded claim suite over the seeded corpus.
    #[command(name = "paper-checks")]
    PaperChecks {
        /// Seed for corpora and sampling (overrides GENGROUP_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Index bound for off-diagonal scans; 0 skips every claim.
        #[arg(long, default_value_t = 100)]
        bounds: u64,
    },
}

/// A command failure and the exit code it maps to.
enum Failure {
    /// Valid input describing a structure that fails its mathematics.
    Math(String),
    /// Unreadable, unparsable, or malformed input.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Math(m) | Failure::Usage(m) => write!(f, "{m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

/// Table construction errors split by kind: malformed documents are usage
/// errors, axiom failures are mathematical ones.
fn table_failure(path: &Path, e: TableError) -> Failure {
    match e {
        TableError::Malformed { .. } => {
            Failure::Usage(format!("{}: {e}", path.display()))
        }
        _ => Failure::Math(format!("{}: {e}", path.display())),
    }
}

fn load_gg(path: &Path) -> Result<FiniteGenGroup, Failure> {
    let doc: CayleyDoc = read_json(path)?;
    FiniteGenGroup::from_doc(doc).map_err(|e| table_failure(path, e))
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value)
        .map_err(|e| Failure::Usage(format!("cannot serialize output: {e}")))?;
    println!("{text}");
    Ok(())
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Verify { path } => cmd_verify(&path),
        Command::Decompose { path } => cmd_decompose(&path),
        Command::Rees { path } => cmd_rees(&path),
        Command::Product { paths } => cmd_product(&paths),
        Command::Hom {
            source,
            target,
            map,
        } => cmd_hom(&source, &target, &map),
        Command::EnumerateHoms {
            source,
            target,
            cap,
        } => cmd_enumerate(&source, &target, cap),
        Command::Snf { path } => cmd_snf(&path),
        Command::Classify { path } => cmd_classify(&path),
        Command::Slender { input } => cmd_slender(&input),
        Command::StarEval { expr } => cmd_star_eval(&expr),
        Command::PaperChecks { seed, bounds } => cmd_paper_checks(seed, bounds),
    }
}

fn cmd_verify(path: &Path) -> Result<u8, Failure> {
    let doc: CayleyDoc = read_json(path)?;
    if doc.names.len() != doc.table.len() {
        return Err(Failure::Usage(format!(
            "{}: {} names for a table of {} rows",
            path.display(),
            doc.names.len(),
            doc.table.len()
        )));
    }
    let report = verify_axioms(&doc.table).map_err(|e| table_failure(path, e))?;
    println!("{report}");
    Ok(if report.verdict() { 0 } else { 1 })
}

#[derive(Serialize)]
struct Decomposition {
    idempotents: Vec<usize>,
    components: Vec<CayleyDoc>,
}

fn cmd_decompose(path: &Path) -> Result<u8, Failure> {
    let g = load_gg(path)?;
    let idempotents = g.idempotents();
    let mut components = Vec::with_capacity(idempotents.len());
    for &u in &idempotents {
        let comp = g
            .group_component(u)
            .map_err(|e| Failure::Math(format!("component at {u}: {e}")))?;
        components.push(comp.as_generalized().to_doc());
    }
    emit(&Decomposition {
        idempotents,
        components,
    })?;
    Ok(0)
}

fn cmd_rees(path: &Path) -> Result<u8, Failure> {
    let doc: ReesDoc = read_json(path)?;
    let spec = ReesSpec::from_doc(doc)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    emit(&spec.build().to_doc())?;
    Ok(0)
}

fn cmd_product(paths: &[PathBuf]) -> Result<u8, Failure> {
    let mut product = load_gg(&paths[0])?;
    for path in &paths[1..] {
        product = product.direct_product(&load_gg(path)?);
    }
    emit(&product.to_doc())?;
    Ok(0)
}

fn cmd_hom(source: &Path, target: &Path, map: &Path) -> Result<u8, Failure> {
    let src = load_gg(source)?;
    let tgt = load_gg(target)?;
    let doc: HomDoc = read_json(map)?;
    let table = HomTable::new(&src, &tgt, doc.images)
        .map_err(|e| Failure::Usage(format!("{}: {e}", map.display())))?;
    let verdict = match table.first_violation() {
        None => {
            println!("homomorphism: yes");
            true
        }
        Some((x, y)) => {
            println!("homomorphism: no (law fails at ({x}, {y}))");
            false
        }
    };
    println!(
        "surjective: {}",
        if table.is_surjective() { "yes" } else { "no" }
    );
    println!(
        "isomorphism: {}",
        if table.is_isomorphism() { "yes" } else { "no" }
    );
    Ok(if verdict { 0 } else { 1 })
}

#[derive(Serialize)]
struct Enumeration {
    count: usize,
    truncated: bool,
    images: Vec<Vec<usize>>,
}

fn cmd_enumerate(source: &Path, target: &Path, cap: usize) -> Result<u8, Failure> {
    let src = load_gg(source)?;
    let tgt = load_gg(target)?;
    let out = enumerate_homs(&src, &tgt, cap);
    emit(&Enumeration {
        count: out.homs.len(),
        truncated: out.truncated,
        images: out.homs.iter().map(|h| h.images().to_vec()).collect(),
    })?;
    Ok(0)
}

#[derive(Serialize)]
struct SnfOut {
    u: MatrixDoc,
    d: MatrixDoc,
    v: MatrixDoc,
    diagonal: Vec<i128>,
}

fn matrix_doc(m: &IntMatrix) -> Result<MatrixDoc, Failure> {
    m.to_doc()
        .map_err(|e| Failure::Usage(format!("cannot serialize matrix: {e}")))
}

fn cmd_snf(path: &Path) -> Result<u8, Failure> {
    let doc: MatrixDoc = read_json(path)?;
    let a = IntMatrix::from_doc(doc)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let snf = smith_normal_form(&a);
    snf.verify(&a)
        .map_err(|e| Failure::Math(format!("decomposition failed verification: {e}")))?;
    let diagonal = snf
        .diagonal()
        .iter()
        .map(|d| {
            i128::try_from(d).map_err(|_| {
                Failure::Usage("diagonal entry exceeds the document range".to_string())
            })
        })
        .collect::<Result<Vec<i128>, Failure>>()?;
    emit(&SnfOut {
        u: matrix_doc(&snf.u)?,
        d: matrix_doc(&snf.d)?,
        v: matrix_doc(&snf.v)?,
        diagonal,
    })?;
    Ok(0)
}

fn classify_line(path: &Path) -> Result<String, Failure> {
    let doc: MatrixDoc = read_json(path)?;
    let relations = IntMatrix::from_doc(doc)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let generators = relations.cols();
    let fg = classify(&relations, generators).map_err(|e| match e {
        SlenderError::ShapeMismatch { .. } => {
            Failure::Usage(format!("{}: {e}", path.display()))
        }
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })?;
    let verdict = if fg.is_slender() {
        "slender"
    } else {
        "not slender"
    };
    Ok(format!("{fg} — {verdict}"))
}

fn cmd_classify(path: &Path) -> Result<u8, Failure> {
    println!("{}", classify_line(path)?);
    Ok(0)
}

fn cmd_slender(input: &str) -> Result<u8, Failure> {
    // Catalogue names win over files: they are fixed strings, and a file
    // plausibly named like one can still be reached via ./ or a full path.
    if let Ok(v) = named_verdict(input) {
        let verdict = if v.slender { "slender" } else { "not slender" };
        println!("{} — {verdict} ({})", v.name, v.note);
        return Ok(0);
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "{input:?} is neither a catalogue name (Q, J_p, prod_Z, Z^n, free_abelian) \
             nor a readable file"
        )));
    }
    println!("{}", classify_line(path)?);
    Ok(0)
}

fn cmd_star_eval(expr: &str) -> Result<u8, Failure> {
    let value = expr::eval_str(expr).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{value}");
    Ok(0)
}

#[derive(Serialize)]
struct ChecksOut {
    seed: u64,
    bounds: u64,
    claims: Vec<ClaimReport>,
}

fn cmd_paper_checks(seed: Option<u64>, bounds: u64) -> Result<u8, Failure> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("GENGROUP_SEED") {
            Ok(text) => text.parse::<u64>().map_err(|_| {
                Failure::Usage(format!("GENGROUP_SEED must be an unsigned integer, got {text:?}"))
            })?,
            Err(_) => 0,
        },
    };
    if bounds == 0 {
        eprintln!("warning: bounds is 0; every claim will be skipped");
    }
    let claims = claims::run_all(seed, bounds);
    for claim in &claims {
        println!("{}", claim.render_line());
    }
    let falsified = claims.iter().any(|c| c.status == ClaimStatus::Falsified);
    emit(&ChecksOut {
        seed,
        bounds,
        claims,
    })?;
    Ok(if falsified { 1 } else { 0 })
}
