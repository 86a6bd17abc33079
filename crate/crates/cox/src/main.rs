//! `cox` — scriptable front end for the coxeter library.
//!
//! Every subcommand prints deterministic text (or one JSON object with
//! `--json`) and exits 0 on success, 1 on a domain error such as asking for
//! the longest element of an infinite group, 2 on usage or input syntax
//! errors, and 3 when a bounded search ran out of room (cap, window, or
//! numeric tolerance).

use std::path::Path;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use coxeter::{
    classify, CoxeterMatrix, CoxeterSystem, Element, Error, Essentiality, ParityVerdict,
    RootVector, Sign, TypeClass, Verdict, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cox", version, about = "Computations in finitely generated Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Family name (A3, B4, H3, I2(7), Dinf, tilde-A2, triangle(2,3,7), ...)
    /// or path to a Coxeter matrix file
    #[arg(long)]
    group: String,
    /// Tolerance for sign certification and eigenvalue tests
    #[arg(long, default_value_t = coxeter::DEFAULT_EPS)]
    eps: f64,
    /// Cap on enumerated elements or roots
    #[arg(long, default_value_t = coxeter::DEFAULT_CAP)]
    cap: usize,
    /// Emit one JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WordArg {
    /// Word as space-separated 1-based generator indices, e.g. "1 2 1"
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct SubsetArg {
    /// Generator subset as comma-separated 1-based indices, e.g. 1,3
    #[arg(long)]
    subset: String,
}

#[derive(Args)]
struct RadiusArg {
    /// Word-length radius of the search ball
    #[arg(long, default_value_t = 10)]
    max_length: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// Root enumeration depth
    #[arg(long, default_value_t = 10)]
    depth: usize,
    /// Power window for orbit classification
    #[arg(long, default_value_t = coxeter::DEFAULT_WINDOW)]
    window: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify each diagram component as finite, affine, or non-affine
    Classify(Common),
    /// Print the bilinear form matrix
    Gram(Common),
    /// Print the connected components of the diagram
    Components(Common),
    /// Normal form of a word
    Reduce(#[command(flatten)] ReduceArgs),
    /// Length of the element a word spells
    Length(#[command(flatten)] ReduceArgs),
    /// Right descent set of an element
    Descents(#[command(flatten)] ReduceArgs),
    /// Product of two elements (pass --word twice)
    Mult(#[command(flatten)] MultArgs),
    /// Split w into a coset representative and a parabolic part
    Coset(#[command(flatten)] CosetArgs),
    /// Longest element of a finite standard parabolic
    Longest(#[command(flatten)] LongestArgs),
    /// List all elements up to a length
    Ball(#[command(flatten)] BallArgs),
    /// Sphere sizes by length
    Growth(#[command(flatten)] BallArgs),
    /// Enumerate positive roots
    Roots(#[command(flatten)] RootsArgs),
    /// Count the positive roots an element makes negative
    Inversions(#[command(flatten)] ReduceArgs),
    /// Classify every enumerated root as periodic, even, or odd under w
    Rootclass(#[command(flatten)] RootclassArgs),
    /// Report periodic roots of w and whether they are critical
    Critical(#[command(flatten)] DynArgs),
    /// Certify that w lies in no proper parabolic subgroup
    Essential(#[command(flatten)] DynArgs),
    /// Reflections generating the parabolic closure of w
    Pc(#[command(flatten)] DynArgs),
    /// Count conjugates of w by conjugators of bounded length
    Orbit(#[command(flatten)] CensusArgs),
    /// Search a ball for elements commuting with every generator
    Center(#[command(flatten)] BallArgs),
    /// Compare the centralizer of w with the powers of w inside balls
    Centralizer(#[command(flatten)] CensusArgs),
    /// Maximal spherical subsets (the nerve's maximal simplices)
    Nerve(Common),
    /// Count parabolic cosets met by a ball, per spherical subset
    Cells(#[command(flatten)] BallArgs),
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    word: WordArg,
}

#[derive(Args)]
struct MultArgs {
    #[command(flatten)]
    common: Common,
    /// Word factor; give this flag exactly twice
    #[arg(long, action = ArgAction::Append)]
    word: Vec<String>,
}

#[derive(Args)]
struct CosetArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    word: WordArg,
    #[command(flatten)]
    subset: SubsetArg,
}

#[derive(Args)]
struct LongestArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    subset: SubsetArg,
}

#[derive(Args)]
struct BallArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    radius: RadiusArg,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    common: Common,
    /// Root enumeration depth
    #[arg(long, default_value_t = 10)]
    depth: usize,
}

#[derive(Args)]
struct RootclassArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    word: WordArg,
    #[command(flatten)]
    scan: ScanArgs,
    /// Also compare each verdict against the one for w^p
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Args)]
struct DynArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    word: WordArg,
    #[command(flatten)]
    scan: ScanArgs,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    word: WordArg,
    #[command(flatten)]
    radius: RadiusArg,
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe (`cox roots ... | head`),
    // like any other line-oriented tool, instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // The CLI names generators 1-based; translate the library's
            // 0-based index before showing it to the user.
            if let Error::IndexOutOfRange { index, rank } = &e {
                eprintln!("error: generator {} out of range for rank {rank}", index + 1);
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax(_)
        | Error::Validation(_)
        | Error::UnknownFamily(_)
        | Error::IndexOutOfRange { .. } => 2,
        Error::NotFinite(_)
        | Error::NotPeriodic(_)
        | Error::NotIrreducibleInfinite(_)
        | Error::UnknownRoot(_) => 1,
        Error::NumericAmbiguity(_) | Error::CapExceeded(_) | Error::Inconsistency(_) => 3,
    }
}

fn load_matrix(group: &str) -> Result<CoxeterMatrix, Error> {
    match CoxeterMatrix::family(group) {
        Ok(m) => Ok(m),
        Err(family_err) => {
            if Path::new(group).is_file() {
                let text = std::fs::read_to_string(group)
                    .map_err(|e| Error::Validation(format!("cannot read {group}: {e}")))?;
                CoxeterMatrix::parse(&text)
            } else {
                Err(family_err)
            }
        }
    }
}

fn load_system(common: &Common) -> Result<CoxeterSystem, Error> {
    Ok(CoxeterSystem::with_eps(load_matrix(&common.group)?, common.eps))
}

fn parse_word(sys: &CoxeterSystem, text: &str) -> Result<Element, Error> {
    sys.reduce(&Word::parse(text)?)
}

/// Comma-separated 1-based indices -> sorted 0-based indices.
fn parse_subset(text: &str) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let i: usize = part
            .parse()
            .map_err(|_| Error::Syntax(format!("bad generator index '{part}'")))?;
        if i == 0 {
            return Err(Error::Syntax("generator indices are 1-based".into()));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn fmt_f(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

fn fmt_coords(coords: &[f64]) -> String {
    coords.iter().map(|&x| fmt_f(x)).collect::<Vec<_>>().join(" ")
}

fn one_based(t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| i + 1).collect()
}

fn joined(t: &[usize], sep: &str) -> String {
    one_based(t).iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
}

fn class_text(t: &TypeClass) -> String {
    match t.verdict {
        Verdict::Affine => format!("affine kernel_dim={}", t.kernel_dim),
        other => other.to_string(),
    }
}

fn parity_text(v: &ParityVerdict) -> String {
    match v {
        ParityVerdict::Periodic { period } => format!("periodic({period})"),
        ParityVerdict::Even { separations } => format!("even({separations})"),
        ParityVerdict::Odd { separations } => format!("odd({separations})"),
        ParityVerdict::Inconclusive => "inconclusive".into(),
    }
}

fn emit(value: Value) {
    println!("{value}");
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Classify(common) => {
            let m = load_matrix(&common.group)?;
            let classes = classify(&m, common.eps)?;
            if common.json {
                let components: Vec<Value> = classes
                    .iter()
                    .map(|(c, t)| {
                        json!({
                            "indices": one_based(&c.indices),
                            "verdict": t.verdict.to_string(),
                            "kernel_dim": t.kernel_dim,
                        })
                    })
                    .collect();
                emit(json!({ "components": components }));
            } else if classes.len() == 1 {
                println!("{}", class_text(&classes[0].1));
            } else {
                for (c, t) in &classes {
                    println!("{}: {}", joined(&c.indices, " "), class_text(t));
                }
            }
            Ok(0)
        }
        Cmd::Gram(common) => {
            let m = load_matrix(&common.group)?;
            let gram = m.gram();
            if common.json {
                emit(json!({ "gram": gram }));
            } else {
                for row in &gram {
                    println!("{}", fmt_coords(row));
                }
            }
            Ok(0)
        }
        Cmd::Components(common) => {
            let m = load_matrix(&common.group)?;
            let comps = m.components();
            if common.json {
                let list: Vec<Vec<usize>> =
                    comps.iter().map(|c| one_based(&c.indices)).collect();
                emit(json!({ "components": list }));
            } else {
                for c in &comps {
                    println!("{}", joined(&c.indices, " "));
                }
            }
            Ok(0)
        }
        Cmd::Reduce(args) => {
            let sys = load_system(&args.common)?;
            let e = parse_word(&sys, &args.word.word)?;
            if args.common.json {
                emit(json!({ "word": e.to_string(), "length": e.len() }));
            } else {
                println!("{e}");
            }
            Ok(0)
        }
        Cmd::Length(args) => {
            let sys = load_system(&args.common)?;
            let e = parse_word(&sys, &args.word.word)?;
            if args.common.json {
                emit(json!({ "length": e.len() }));
            } else {
                println!("{}", e.len());
            }
            Ok(0)
        }
        Cmd::Descents(args) => {
            let sys = load_system(&args.common)?;
            let e = parse_word(&sys, &args.word.word)?;
            let d = sys.right_descents(&e)?;
            if args.common.json {
                emit(json!({ "in": one_based(&d.in_set), "out": one_based(&d.out_set) }));
            } else {
                println!("{}", labelled("in", &joined(&d.in_set, " ")));
                println!("{}", labelled("out", &joined(&d.out_set, " ")));
            }
            Ok(0)
        }
        Cmd::Mult(args) => {
            if args.word.len() != 2 {
                return Err(Error::Validation(
                    "mult takes exactly two --word arguments".into(),
                ));
            }
            let sys = load_system(&args.common)?;
            let u = parse_word(&sys, &args.word[0])?;
            let v = parse_word(&sys, &args.word[1])?;
            let uv = sys.multiply(&u, &v)?;
            if args.common.json {
                emit(json!({ "word": uv.to_string(), "length": uv.len() }));
            } else {
                println!("{uv}");
            }
            Ok(0)
        }
        Cmd::Coset(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let t = parse_subset(&args.subset.subset)?;
            let (w0, a) = sys.coset_decompose(&w, &t)?;
            if args.common.json {
                emit(json!({ "w0": w0.to_string(), "a": a.to_string() }));
            } else {
                println!("{}", labelled("w0", &w0.to_string()));
                println!("{}", labelled("a", &a.to_string()));
            }
            Ok(0)
        }
        Cmd::Longest(args) => {
            let sys = load_system(&args.common)?;
            let t = parse_subset(&args.subset.subset)?;
            let w0 = sys.longest_element(&t)?;
            if args.common.json {
                emit(json!({ "word": w0.to_string(), "length": w0.len() }));
            } else {
                println!("{w0}");
            }
            Ok(0)
        }
        Cmd::Ball(args) => {
            let sys = load_system(&args.common)?;
            let ball = sys.ball(args.radius.max_length, args.common.cap)?;
            if args.common.json {
                let elements: Vec<String> = ball.iter().map(|e| e.to_string()).collect();
                emit(json!({
                    "spheres": ball.sphere_sizes(),
                    "total": ball.total(),
                    "elements": elements,
                }));
            } else {
                for e in ball.iter() {
                    println!("{e}");
                }
            }
            Ok(0)
        }
        Cmd::Growth(args) => {
            let sys = load_system(&args.common)?;
            let series = sys.growth_series(args.radius.max_length, args.common.cap)?;
            if args.common.json {
                emit(json!({ "spheres": series }));
            } else {
                println!("L\tcount");
                for (l, count) in series.iter().enumerate() {
                    println!("{l}\t{count}");
                }
            }
            Ok(0)
        }
        Cmd::Roots(args) => {
            let sys = load_system(&args.common)?;
            let table = sys.enumerate_roots(args.depth, args.common.cap)?;
            if args.common.json {
                let roots: Vec<Value> = table
                    .roots()
                    .iter()
                    .map(|r| {
                        json!({
                            "coords": r.coords,
                            "depth": r.depth,
                            "witness": r.witness.to_string(),
                        })
                    })
                    .collect();
                emit(json!({ "closed": table.closed, "roots": roots }));
            } else {
                for r in table.roots() {
                    println!("{}\t{}", fmt_coords(&r.coords), dash_empty(&r.witness.to_string()));
                }
            }
            Ok(0)
        }
        Cmd::Inversions(args) => {
            let sys = load_system(&args.common)?;
            let e = parse_word(&sys, &args.word.word)?;
            let count = sys.count_inversions(&e, args.common.cap)?;
            if args.common.json {
                emit(json!({ "count": count }));
            } else {
                println!("{count}");
            }
            Ok(0)
        }
        Cmd::Rootclass(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let table = sys.enumerate_roots(args.scan.depth, args.common.cap)?;
            let mut rows: Vec<Value> = Vec::new();
            for root in table.roots() {
                let alpha = RootVector { coords: root.coords.clone(), sign: Sign::Positive };
                let parity = sys.classify_root(&w, &alpha, args.scan.window)?;
                let compare = match args.p {
                    None => None,
                    Some(p) => Some(sys.power_parity_check(&w, &alpha, p, args.scan.window)?),
                };
                if args.common.json {
                    let mut row = json!({
                        "coords": root.coords,
                        "verdict": parity_text(&parity.verdict),
                    });
                    if let Some(check) = compare {
                        row["power_agrees"] = match check {
                            Some(b) => Value::Bool(b),
                            None => Value::Null,
                        };
                    }
                    rows.push(row);
                } else {
                    let mut line =
                        format!("{}\t{}", fmt_coords(&root.coords), parity_text(&parity.verdict));
                    if let Some(check) = compare {
                        let text = match check {
                            Some(true) => "agree",
                            Some(false) => "mismatch",
                            None => "skip",
                        };
                        line.push('\t');
                        line.push_str(text);
                    }
                    println!("{line}");
                }
            }
            if args.common.json {
                emit(json!({ "window": args.scan.window, "roots": rows }));
            }
            Ok(0)
        }
        Cmd::Critical(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let table = sys.enumerate_roots(args.scan.depth, args.common.cap)?;
            let mut rows: Vec<Value> = Vec::new();
            for root in table.roots() {
                let alpha = RootVector { coords: root.coords.clone(), sign: Sign::Positive };
                let parity = sys.classify_root(&w, &alpha, args.scan.window)?;
                if !matches!(parity.verdict, ParityVerdict::Periodic { .. }) {
                    continue;
                }
                let crit = sys.is_critical(&w, &alpha, args.scan.window)?;
                if args.common.json {
                    rows.push(json!({
                        "coords": root.coords,
                        "period": crit.period,
                        "critical": crit.critical,
                    }));
                } else {
                    let tag = if crit.critical { "critical" } else { "non-critical" };
                    println!("{}\t{}\t{}", fmt_coords(&root.coords), crit.period, tag);
                }
            }
            if args.common.json {
                emit(json!({ "roots": rows }));
            }
            Ok(0)
        }
        Cmd::Essential(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let verdict =
                sys.is_essential(&w, args.scan.depth, args.scan.window, args.common.cap)?;
            let (text, code) = match verdict {
                Essentiality::Certified => ("certified", 0),
                Essentiality::NotEssential => ("not-essential", 1),
                Essentiality::Inconclusive => ("inconclusive", 3),
            };
            if args.common.json {
                emit(json!({ "verdict": text }));
            } else {
                println!("{text}");
            }
            Ok(code)
        }
        Cmd::Pc(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let pc = sys.pc_generators(&w, args.scan.depth, args.scan.window, args.common.cap)?;
            if args.common.json {
                let reflections: Vec<String> =
                    pc.reflections.iter().map(|r| r.element.to_string()).collect();
                emit(json!({ "complete": pc.complete, "reflections": reflections }));
            } else {
                for r in &pc.reflections {
                    println!("{}", r.element);
                }
                if !pc.complete {
                    eprintln!("warning: some roots stayed inconclusive; the list may be incomplete");
                }
            }
            Ok(0)
        }
        Cmd::Orbit(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let table = sys.orbit_growth(&w, args.radius.max_length, args.common.cap)?;
            if args.common.json {
                emit(json!({ "rows": table.rows }));
            } else {
                println!("L\tconjugates");
                for (l, count) in &table.rows {
                    println!("{l}\t{count}");
                }
            }
            Ok(0)
        }
        Cmd::Center(args) => {
            let sys = load_system(&args.common)?;
            let found = sys.center_search(args.radius.max_length, args.common.cap)?;
            if args.common.json {
                let elements: Vec<String> = found.iter().map(|e| e.to_string()).collect();
                emit(json!({ "elements": elements }));
            } else {
                for e in &found {
                    println!("{e}");
                }
            }
            Ok(0)
        }
        Cmd::Centralizer(args) => {
            let sys = load_system(&args.common)?;
            let w = parse_word(&sys, &args.word.word)?;
            let report = sys.centralizer_ball(&w, args.radius.max_length, args.common.cap)?;
            if args.common.json {
                let rows: Vec<Value> = report
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "L": r.radius,
                            "centralizer": r.centralizer,
                            "cyclic": r.cyclic,
                            "ratio": r.ratio(),
                        })
                    })
                    .collect();
                emit(json!({ "rows": rows }));
            } else {
                println!("L\tcentralizer\tcyclic\tratio");
                for r in &report.rows {
                    println!(
                        "{}\t{}\t{}\t{}",
                        r.radius,
                        r.centralizer,
                        r.cyclic,
                        fmt_f(r.ratio())
                    );
                }
            }
            Ok(0)
        }
        Cmd::Nerve(common) => {
            let sys = load_system(&common)?;
            let poset = sys.spherical_subsets()?;
            if common.json {
                let subsets: Vec<Vec<usize>> =
                    poset.subsets.iter().map(|t| one_based(t)).collect();
                let maximal: Vec<Vec<usize>> =
                    poset.maximal.iter().map(|t| one_based(t)).collect();
                emit(json!({ "subsets": subsets, "maximal": maximal }));
            } else {
                for t in &poset.maximal {
                    println!("{}", joined(t, " "));
                }
            }
            Ok(0)
        }
        Cmd::Cells(args) => {
            let sys = load_system(&args.common)?;
            let cells = sys.coset_cells(args.radius.max_length, args.common.cap)?;
            if args.common.json {
                let rows: Vec<Value> = cells
                    .cells
                    .iter()
                    .map(|(t, count)| json!({ "subset": one_based(t), "count": count }))
                    .collect();
                emit(json!({ "radius": cells.radius, "cells": rows }));
            } else {
                for (t, count) in &cells.cells {
                    println!("{}\t{}", dash_empty(&joined(t, ",")), count);
                }
            }
            Ok(0)
        }
    }
}

fn labelled(label: &str, body: &str) -> String {
    if body.is_empty() {
        format!("{label}:")
    } else {
        format!("{label}: {body}")
    }
}

fn dash_empty(s: &str) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.into()
    }
}
