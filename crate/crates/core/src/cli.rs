//! Command-line surface. `run` returns the process exit code:
//! 0 success or EQUIVALENT, 1 a failing check, 2 bad input, 3 DISTINGUISHED,
//! 4 UNKNOWN, 5 a move applied at the wrong level.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::diagrams::{is_realizable, GaussDiagram, PlanarDiagram};
use crate::error::{Error, Result};
use crate::moves::{self, Bounds, Diagram, Level, MoveRule, Verdict};
use crate::{skein, suites, table, vinv};

/// Built-in diagrams accepted wherever a diagram text is.
pub const NAMED: [(&str, &str); 5] = [
    ("unknot", ""),
    ("trefoil", "O1+U2+O3+U1+O2+U3+"),
    ("fig8", "O1-U2+O3+U1-O4-U3+O2+U4-"),
    ("vtrefoil", "O1+U2+U1+O2+"),
    ("hopf+", "O1+U2+ / U1+O2+"),
];

#[derive(Parser, Debug)]
#[command(name = "knotskein", version, about = "Skein invariants and move searches for classical, virtual and welded knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Format {
    /// Read diagram texts as Gauss codes
    #[arg(long, conflicts_with = "pd")]
    gauss: bool,
    /// Read diagram texts as PD codes
    #[arg(long)]
    pd: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariant report of one diagram, as JSON
    Invariants {
        /// Gauss code of the diagram
        #[arg(long, value_name = "TEXT", conflicts_with_all = ["pd", "diagram"])]
        gauss: Option<String>,
        /// PD code of the diagram
        #[arg(long, value_name = "TEXT", conflicts_with = "diagram")]
        pd: Option<String>,
        /// Diagram text or a built-in name
        diagram: Option<String>,
    },
    /// Decide equivalence modulo a set of moves (with Reidemeister moves)
    Equiv {
        /// Comma-separated move names
        #[arg(long, default_value = "")]
        moves: String,
        #[arg(long)]
        crossing_cap: Option<usize>,
        #[arg(long, default_value_t = Bounds::default().node_cap)]
        node_cap: usize,
        #[arg(long, default_value_t = Bounds::default().depth_cap)]
        depth_cap: usize,
        /// Also print the replayable path as JSON
        #[arg(long)]
        path: bool,
        #[command(flatten)]
        format: Format,
        first: String,
        second: String,
    },
    /// Stream one-circle Gauss diagrams with their invariant reports
    Table {
        #[arg(long)]
        max_arrows: usize,
    },
    /// Run a property suite: skein, rmoves, preservation, quotients or all
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub input: String,
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conway: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homfly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arf: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_polynomial: Option<String>,
    pub linking_matrix: Vec<Vec<i64>>,
}

impl InvariantReport {
    /// Skein polynomials are included when the diagram is classical; the
    /// knot invariants when it has one component.
    pub fn new(input: &str, g: &GaussDiagram, planar: Option<&PlanarDiagram>) -> Self {
        let realized;
        let planar = match planar {
            Some(p) => Some(p),
            None => {
                realized = PlanarDiagram::realize(g).ok();
                realized.as_ref()
            }
        };
        let mut r = InvariantReport {
            input: input.to_string(),
            crossings: g.num_arrows(),
            components: g.num_circles(),
            writhe: g.writhe(),
            realizable: planar.is_some(),
            jones: None,
            conway: None,
            homfly: None,
            bracket: None,
            arf: None,
            odd_writhe: vinv::odd_writhe(g).ok(),
            index_polynomial: vinv::index_polynomial(g).ok().map(|p| p.render()),
            linking_matrix: vinv::linking_matrix(g).lk,
        };
        if let Some(p) = planar {
            let conway = skein::conway(p);
            r.jones = Some(skein::jones(p).render());
            r.homfly = Some(skein::homfly(p).render());
            r.bracket = Some(skein::kauffman_bracket(p).render());
            r.arf = skein::arf_of_conway(p, &conway).ok();
            r.conway = Some(conway.render());
        }
        r
    }
}

fn named(text: &str) -> Option<&'static str> {
    NAMED.iter().find(|(n, _)| *n == text.trim()).map(|(_, code)| *code)
}

fn looks_like_pd(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with("X[") || (t.starts_with('L') && t[1..].starts_with(|c: char| c.is_ascii_digit()))
}

/// A parsed input: Gauss codes stay abstract until a level is chosen.
enum Parsed {
    Gauss(GaussDiagram),
    Planar(PlanarDiagram),
}

fn parse_diagram(text: &str, format: &Format) -> Result<Parsed> {
    if let Some(code) = named(text) {
        return GaussDiagram::parse(code).map(Parsed::Gauss);
    }
    if format.pd || (!format.gauss && looks_like_pd(text)) {
        PlanarDiagram::parse(text).map(Parsed::Planar)
    } else {
        GaussDiagram::parse(text).map(Parsed::Gauss)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LevelMismatch { .. } => 5,
        _ => 2,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cli.command {
        Command::Invariants { gauss, pd, diagram } => invariants(&mut out, gauss, pd, diagram),
        Command::Equiv { moves, crossing_cap, node_cap, depth_cap, path, format, first, second } => {
            let bounds = Bounds { crossing_cap, node_cap, depth_cap };
            equiv(&mut out, &moves, bounds, path, &format, &first, &second)
        }
        Command::Table { max_arrows } => cmd_table(&mut out, max_arrows),
        Command::Check { suite, seed } => check(&mut out, &suite, seed),
    };
    let _ = out.flush();
    code
}

fn invariants(out: &mut impl Write, gauss: Option<String>, pd: Option<String>, diagram: Option<String>) -> i32 {
    let (text, format) = match (gauss, pd, diagram) {
        (Some(t), _, _) => (t, Format { gauss: true, pd: false }),
        (_, Some(t), _) => (t, Format { gauss: false, pd: true }),
        (_, _, Some(t)) => (t, Format::default()),
        _ => return fail(&Error::BadInput("no diagram given".into())),
    };
    let report = match parse_diagram(&text, &format) {
        Ok(Parsed::Gauss(g)) => InvariantReport::new(&text, &g, None),
        Ok(Parsed::Planar(p)) => InvariantReport::new(&text, p.gauss(), Some(&p)),
        Err(e) => return fail(&e),
    };
    let _ = print_json(out, &report);
    0
}

/// Planar when every input is classical and every rule works on planar
/// diagrams; Gauss otherwise.
fn choose_level(inputs: Vec<Parsed>, rules: &[&'static MoveRule]) -> Result<Vec<Diagram>> {
    let any_pd = inputs.iter().any(|p| matches!(p, Parsed::Planar(_)));
    let all_classical = inputs.iter().all(|p| match p {
        Parsed::Planar(_) => true,
        Parsed::Gauss(g) => is_realizable(g),
    });
    let planar_rules = rules.iter().all(|r| r.level.accepts(Level::Planar));
    if any_pd && !all_classical {
        return Err(Error::BadInput("cannot compare a PD code with a non-realizable Gauss code".into()));
    }
    let planar = all_classical && (any_pd || planar_rules);
    inputs
        .into_iter()
        .map(|p| match (p, planar) {
            (Parsed::Planar(p), true) => Ok(Diagram::Planar(p)),
            (Parsed::Gauss(g), true) => PlanarDiagram::realize(&g).map(Diagram::Planar),
            (Parsed::Planar(p), false) => Ok(Diagram::Gauss(p.to_gauss())),
            (Parsed::Gauss(g), false) => Ok(Diagram::Gauss(g)),
        })
        .collect()
}

#[derive(Serialize)]
struct PathRecord<'a> {
    rule: &'a str,
    anchor: &'a [usize],
    key: &'a str,
}

fn equiv(out: &mut impl Write, moves: &str, bounds: Bounds, path: bool, format: &Format, a: &str, b: &str) -> i32 {
    let result = (|| {
        let rules = moves::parse_rule_list(moves)?;
        let inputs = vec![parse_diagram(a, format)?, parse_diagram(b, format)?];
        let ds = choose_level(inputs, &rules)?;
        moves::equivalent_mod(&ds[0], &ds[1], &rules, bounds)
    })();
    let outcome = match result {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let _ = writeln!(out, "{}", outcome.verdict_line());
    if path {
        let steps: Vec<PathRecord> =
            outcome.path.iter().map(|s| PathRecord { rule: &s.rule, anchor: &s.anchor, key: &s.key }).collect();
        let _ = print_json(out, &steps);
    }
    match outcome.verdict {
        Verdict::Equivalent => 0,
        Verdict::Distinguished => 3,
        Verdict::Unknown => 4,
    }
}

#[derive(Serialize)]
struct TableRecord {
    index: usize,
    arrows: usize,
    key: String,
    #[serde(flatten)]
    report: InvariantReport,
}

fn cmd_table(out: &mut impl Write, max_arrows: usize) -> i32 {
    if max_arrows > table::MAX_ARROWS {
        return fail(&Error::BadInput(format!("--max-arrows must be at most {}", table::MAX_ARROWS)));
    }
    let mut index = 0;
    let mut broken = false;
    table::for_each_diagram(max_arrows, |g| {
        if broken {
            return;
        }
        let key = g.render();
        let record = TableRecord { index, arrows: g.num_arrows(), report: InvariantReport::new(&key, &g, None), key };
        index += 1;
        // a closed pipe ends the stream quietly
        broken = print_json(out, &record).is_err();
    });
    0
}

fn check(out: &mut impl Write, suite: &str, seed: u64) -> i32 {
    let reports = match suites::run(suite, seed) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut ok = true;
    for r in &reports {
        ok &= r.ok();
        let _ = print_json(out, r);
        for p in &r.properties {
            eprintln!("{} {}: {}/{} {}", if p.ok() { "PASS" } else { "FAIL" }, r.suite, p.passed, p.total, p.name);
        }
    }
    if ok {
        0
    } else {
        1
    }
}
