//! Command-line front end.
//!
//! Boolean subcommands print `true`/`false` and exit 0/1. Usage and parse
//! errors exit 2; validation errors (undeclared labels, level violations,
//! invalid Q definitions) exit 3.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::explore::{enumerate_terms, hasse_dot, quotient, report, EnumConfig, Relation};
use crate::hcalc::Calculus;
use crate::oracle::{hom_leq, to_labeled_forest};
use crate::ordinal::Ordinal;
use crate::qo::{LabelId, QOrder, QoError};
use crate::terms::{in_level, Node, Term, TermParseError};
use crate::transforms::{apply_r, apply_r_star, apply_s, apply_s_star};

/// Library operations reached by each subcommand.
pub const DISPATCH: &[(&str, &[&str])] = &[
    ("leq", &["load_qo", "parse_term", "leq_h", "leq_q"]),
    ("equiv", &["load_qo", "parse_term", "equiv_h"]),
    (
        "rleq",
        &[
            "load_qo",
            "parse_term",
            "parse_ordinal",
            "leq_h_xi",
            "apply_r_star",
            "summands",
        ],
    ),
    (
        "apply",
        &[
            "load_qo",
            "parse_term",
            "parse_ordinal",
            "apply_s",
            "apply_s_star",
            "apply_r",
            "apply_r_star",
            "print_term",
        ],
    ),
    (
        "level",
        &[
            "load_qo",
            "parse_term",
            "parse_ordinal",
            "in_level",
            "compare",
        ],
    ),
    ("irr", &["load_qo", "parse_term", "is_join_irreducible"]),
    (
        "oracle",
        &["load_qo", "parse_term", "to_labeled_forest", "hom_leq"],
    ),
    (
        "enum",
        &[
            "load_qo",
            "parse_ordinal",
            "enumerate_terms",
            "node_count",
            "canonicalize",
            "quotient",
            "hasse_dot",
            "print_term",
        ],
    ),
    ("dom", &["load_qo", "parse_term", "dominates"]),
    ("ord", &["parse_ordinal", "add", "summands"]),
];

/// Every public operation of the library.
pub const OPERATIONS: &[&str] = &[
    "parse_ordinal",
    "compare",
    "add",
    "summands",
    "load_qo",
    "leq_q",
    "dominates",
    "parse_term",
    "print_term",
    "canonicalize",
    "in_level",
    "node_count",
    "leq_h",
    "equiv_h",
    "is_join_irreducible",
    "apply_s",
    "apply_s_star",
    "apply_r",
    "apply_r_star",
    "leq_h_xi",
    "to_labeled_forest",
    "hom_leq",
    "enumerate_terms",
    "quotient",
    "hasse_dot",
];

#[derive(Parser)]
#[command(
    name = "hforest",
    about = "Iterated Q-labeled forests and the homomorphism quasiorder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Q-definition file (JSON with `labels` and `leq`).
    #[arg(long)]
    qo: PathBuf,
    /// Read the term arguments from this file, one per line.
    #[arg(long)]
    term_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// T <=_h S
    Leq {
        #[command(flatten)]
        common: Common,
        terms: Vec<String>,
    },
    /// T and S are h-equivalent
    Equiv {
        #[command(flatten)]
        common: Common,
        terms: Vec<String>,
    },
    /// T <=_h^xi S, i.e. r*_xi(T) <=_h r*_xi(S)
    Rleq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xi: String,
        terms: Vec<String>,
    },
    /// Apply s, s*, r or r* to a term
    Apply {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = ["s", "r", "s*", "r*"])]
        op: String,
        #[arg(long)]
        ord: String,
        terms: Vec<String>,
    },
    /// Membership of T in level xi
    Level {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xi: String,
        terms: Vec<String>,
    },
    /// F is h-equivalent to a tree term
    Irr {
        #[command(flatten)]
        common: Common,
        terms: Vec<String>,
    },
    /// Level-1 comparison by monotone-map search
    Oracle {
        #[command(flatten)]
        common: Common,
        terms: Vec<String>,
    },
    /// Enumerate terms (or read them from --term-file), quotient, export
    Enum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        max_branch: Option<usize>,
        /// Largest s-index to enumerate (default: leading exponent of xi).
        #[arg(long)]
        index_cap: Option<String>,
        /// `h` or `hxi:ORD`.
        #[arg(long, default_value = "h")]
        rel: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Domination order S <=* R on label sets written as level-0 terms
    Dom {
        #[command(flatten)]
        common: Common,
        terms: Vec<String>,
    },
    /// Normalize an ordinal and list its summand exponents
    Ord { ordinal: String },
}

enum CliError {
    Usage(String),
    Validation(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) => m,
        }
    }
}

type CliResult = Result<i32, CliError>;

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Usage(format!("i/o error: {e}"))
}

fn boolean(out: &mut dyn Write, b: bool) -> CliResult {
    writeln!(out, "{b}").map_err(io_err)?;
    Ok(if b { 0 } else { 1 })
}

struct Session {
    calc: Calculus,
}

impl Session {
    fn open(path: &Path) -> Result<Session, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let qo = QOrder::from_json(&text).map_err(|e| match e {
            QoError::Format(_) => CliError::Usage(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        })?;
        Ok(Session {
            calc: Calculus::new(qo),
        })
    }

    fn term(&self, text: &str) -> Result<Term, CliError> {
        self.calc.parse(text).map_err(|e| match e {
            TermParseError::UnknownLabel { .. } => CliError::Validation(e.to_string()),
            _ => CliError::Usage(format!("{e} in {text:?}")),
        })
    }
}

fn term_args(common: &Common, inline: Vec<String>) -> Result<Vec<String>, CliError> {
    match &common.term_file {
        None => Ok(inline),
        Some(path) => {
            if !inline.is_empty() {
                return Err(CliError::Usage(
                    "give terms inline or via --term-file, not both".into(),
                ));
            }
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect())
        }
    }
}

fn exactly<const N: usize>(
    session: &Session,
    common: &Common,
    inline: Vec<String>,
) -> Result<[Term; N], CliError> {
    let texts = term_args(common, inline)?;
    if texts.len() != N {
        return Err(CliError::Usage(format!(
            "expected {N} term(s), got {}",
            texts.len()
        )));
    }
    let terms: Vec<Term> = texts
        .iter()
        .map(|t| session.term(t))
        .collect::<Result<_, _>>()?;
    Ok(terms.try_into().expect("length checked"))
}

fn ordinal(text: &str) -> Result<Ordinal, CliError> {
    Ordinal::parse(text).map_err(|e| CliError::Usage(format!("{e} in ordinal {text:?}")))
}

fn label_set(t: &Term) -> Result<Vec<LabelId>, CliError> {
    let as_label = |t: &Term| match t.node() {
        Node::Label(l) => Some(*l),
        _ => None,
    };
    let set: Option<Vec<LabelId>> = match t.node() {
        Node::Forest(cs) => cs.iter().map(as_label).collect(),
        _ => as_label(t).map(|l| vec![l]),
    };
    match set {
        Some(s) if !s.is_empty() => Ok(s),
        _ => Err(CliError::Validation(
            "expected a label or a nonempty forest of labels".into(),
        )),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Leq { common, terms } => {
            let s = Session::open(&common.qo)?;
            let [t, u] = exactly(&s, &common, terms)?;
            boolean(out, s.calc.leq_h(&t, &u))
        }
        Command::Equiv { common, terms } => {
            let s = Session::open(&common.qo)?;
            let [t, u] = exactly(&s, &common, terms)?;
            boolean(out, s.calc.equiv_h(&t, &u))
        }
        Command::Rleq { common, xi, terms } => {
            let s = Session::open(&common.qo)?;
            let xi = ordinal(&xi)?;
            let [t, u] = exactly(&s, &common, terms)?;
            boolean(out, s.calc.leq_h_xi(&xi, &t, &u))
        }
        Command::Apply {
            common,
            op,
            ord,
            terms,
        } => {
            let s = Session::open(&common.qo)?;
            let index = ordinal(&ord)?;
            let [t] = exactly(&s, &common, terms)?;
            let st = s.calc.store();
            let result = match op.as_str() {
                "s" => apply_s(st, &index, &t),
                "s*" => apply_s_star(st, &index, &t),
                "r" => apply_r(st, &index, &t),
                _ => apply_r_star(st, &index, &t),
            };
            writeln!(out, "{}", s.calc.display(&result)).map_err(io_err)?;
            Ok(0)
        }
        Command::Level { common, xi, terms } => {
            let s = Session::open(&common.qo)?;
            let xi = ordinal(&xi)?;
            let [t] = exactly(&s, &common, terms)?;
            boolean(out, in_level(&t, &xi))
        }
        Command::Irr { common, terms } => {
            let s = Session::open(&common.qo)?;
            let [f] = exactly(&s, &common, terms)?;
            boolean(out, s.calc.is_join_irreducible(&f))
        }
        Command::Oracle { common, terms } => {
            let s = Session::open(&common.qo)?;
            let [t, u] = exactly(&s, &common, terms)?;
            let f = to_labeled_forest(&t)
                .map_err(|e| CliError::Validation(format!("first term: {e}")))?;
            let g = to_labeled_forest(&u)
                .map_err(|e| CliError::Validation(format!("second term: {e}")))?;
            boolean(out, hom_leq(s.calc.qo(), &f, &g))
        }
        Command::Dom { common, terms } => {
            let s = Session::open(&common.qo)?;
            let [t, u] = exactly(&s, &common, terms)?;
            let dominated = s
                .calc
                .qo()
                .dominates(&label_set(&t)?, &label_set(&u)?)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            boolean(out, dominated)
        }
        Command::Ord { ordinal: text } => {
            let o = ordinal(&text)?;
            writeln!(out, "{o}").map_err(io_err)?;
            let exps: Vec<String> = match o.summands() {
                Ok(v) => v.iter().map(ToString::to_string).collect(),
                Err(_) => Vec::new(),
            };
            writeln!(out, "summands: {}", exps.join(" ")).map_err(io_err)?;
            let sum = exps
                .iter()
                .map(|e| Ordinal::omega_pow(Ordinal::parse(e).expect("printed ordinal")))
                .fold(Ordinal::zero(), |acc, p| acc.add(&p));
            debug_assert_eq!(sum, o);
            Ok(0)
        }
        Command::Enum {
            common,
            xi,
            max_nodes,
            max_branch,
            index_cap,
            rel,
            dot,
            report: report_path,
        } => {
            let s = Session::open(&common.qo)?;
            let relation = match rel.as_str() {
                "h" => Relation::H,
                r => match r.strip_prefix("hxi:") {
                    Some(o) => Relation::HXi(ordinal(o)?),
                    None => {
                        return Err(CliError::Usage(format!(
                            "unknown relation {r:?}; use h or hxi:ORD"
                        )))
                    }
                },
            };
            let terms: Vec<Term> = if common.term_file.is_some() {
                let texts = term_args(&common, Vec::new())?;
                let mut ts: Vec<Term> = texts
                    .iter()
                    .map(|t| s.term(t).map(|t| s.calc.store().canonicalize(&t)))
                    .collect::<Result<_, _>>()?;
                ts.dedup();
                ts
            } else {
                let (Some(xi), Some(n), Some(b)) = (xi, max_nodes, max_branch) else {
                    return Err(CliError::Usage(
                        "enum needs --xi, --max-nodes and --max-branch unless --term-file is given"
                            .into(),
                    ));
                };
                let mut cfg = EnumConfig::new(ordinal(&xi)?, n, b);
                if let Some(cap) = index_cap {
                    cfg = cfg.with_index_cap(ordinal(&cap)?);
                }
                enumerate_terms(&s.calc, &cfg).map_err(|e| CliError::Validation(e.to_string()))?
            };
            let poset = quotient(&s.calc, &terms, &relation);
            writeln!(out, "terms: {}", terms.len()).map_err(io_err)?;
            writeln!(out, "classes: {}", poset.len()).map_err(io_err)?;
            writeln!(out, "covers: {}", poset.hasse().len()).map_err(io_err)?;
            if let Some(path) = dot {
                fs::write(&path, hasse_dot(&s.calc, &poset)).map_err(io_err)?;
            }
            let text = report(&s.calc, &poset);
            match report_path {
                Some(path) => fs::write(&path, text).map_err(io_err)?,
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
    }
}
