//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verdict command answers "no", 2 on
//! usage or input errors. File arguments accept `-` for standard input.

use std::io::Read;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::amalgam::{amalgamate, AmalgamationMap};
use crate::constructions::{denes_keedwell, medial_affine, AffineSpec};
use crate::decomp::{
    decomposition_from_groupoid, decomposition_isomorphism, groupoid_from_decomposition,
    Decomposition,
};
use crate::error::Error;
use crate::group::{
    is_characteristic, is_dihedral, left_multiplication_group, multiplication_groups,
    right_multiplication_group,
};
use crate::iso::find_isomorphism;
use crate::properties::{property_report, Flag};
use crate::search::{count_models, search_p_groupoids, SearchConstraints};
use crate::subgroupoid::enumerate_subgroupoids;
use crate::table::CayleyTable;

/// Environment variable holding the default worker count for `search`.
pub const THREADS_ENV: &str = "PGROUPOID_THREADS";

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        CommandOutcome {
            code: if holds { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        CommandOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pgroupoid",
    version,
    about = "P-groupoids and decompositions of complete graphs"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Reserved; every command is deterministic, so this is rejected.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclic P-quasigroup r∘s = 2s − r (mod n).
    GenDk { n: usize },
    /// Affine table x·y = a_f·x + a_g·y + c (mod n).
    GenAffine {
        n: usize,
        a_f: usize,
        a_g: usize,
        c: usize,
    },
    /// Property report of a table.
    Check { file: String },
    /// Multiplication groups, dihedral verdict, characteristic verdicts.
    Mlt { file: String },
    /// Table → decomposition JSON.
    Decompose {
        file: String,
        #[arg(long)]
        dot: Option<String>,
    },
    /// Decomposition JSON → table.
    Recompose { file: String },
    /// Isomorphism between two tables or two decompositions.
    Iso {
        first: String,
        second: String,
        /// For decompositions: class i must map onto class i.
        #[arg(long)]
        strict: bool,
    },
    /// Push a decomposition through a vertex surjection.
    Amalgamate {
        file: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        dot: Option<String>,
    },
    /// Enumerate P-groupoids of order n.
    Search(SearchArgs),
    /// All subgroupoids of a table.
    Subgroupoids { file: String },
}

#[derive(Args, Debug)]
struct SearchArgs {
    n: usize,
    #[arg(long)]
    quasigroup: bool,
    #[arg(long)]
    left_distributive: bool,
    #[arg(long, conflicts_with = "no_quandle")]
    quandle: bool,
    #[arg(long)]
    no_quandle: bool,
    #[arg(long)]
    hamiltonian: bool,
    #[arg(long)]
    up_to_iso: bool,
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    max: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
}

/// Runs one command, reading `-` arguments from the process's stdin.
pub fn run<I, S>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(argv, &mut std::io::stdin())
}

/// Runs one command with an explicit stdin.
pub fn run_with_stdin<I, S>(argv: I, stdin: &mut dyn Read) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                CommandOutcome::ok(rendered)
            } else {
                CommandOutcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    if cli.seed.is_some() {
        return CommandOutcome::input_error(
            "--seed is not supported: every command is deterministic",
        );
    }
    let mut ctx = Context {
        json: cli.json,
        stdin,
        stdin_used: false,
    };
    match ctx.dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::input_error(e),
    }
}

struct Context<'a> {
    json: bool,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

impl Context<'_> {
    fn read_input(&mut self, path: &str) -> Result<String, Error> {
        if path == "-" {
            if self.stdin_used {
                return Err(Error::Invalid(
                    "standard input can only be read once".into(),
                ));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
        }
    }

    fn read_table(&mut self, path: &str) -> Result<CayleyTable, Error> {
        CayleyTable::parse_any(&self.read_input(path)?)
    }

    fn emit_table(&self, t: &CayleyTable) -> String {
        if self.json {
            pretty(&t.to_json())
        } else {
            t.to_text()
        }
    }

    fn dispatch(&mut self, command: Command) -> Result<CommandOutcome, Error> {
        match command {
            Command::GenDk { n } => {
                let t = denes_keedwell(n).map_err(|e| match e {
                    Error::EvenOrder(_) => Error::Invalid(format!("order must be odd, got {n}")),
                    other => other,
                })?;
                Ok(CommandOutcome::ok(self.emit_table(&t)))
            }
            Command::GenAffine { n, a_f, a_g, c } => {
                let t = medial_affine(AffineSpec { n, a_f, a_g, c })?;
                Ok(CommandOutcome::ok(self.emit_table(&t)))
            }
            Command::Check { file } => {
                let t = self.read_table(&file)?;
                let report = property_report(&t);
                let out = if self.json {
                    pretty(&report.to_json())
                } else {
                    report_text(&report)
                };
                Ok(CommandOutcome::verdict(report.is_p_groupoid.holds, out))
            }
            Command::Mlt { file } => {
                let t = self.read_table(&file)?;
                Ok(CommandOutcome::ok(pretty(&mlt_summary(&t)?)))
            }
            Command::Decompose { file, dot } => {
                let t = self.read_table(&file)?;
                let d = decomposition_from_groupoid(&t)?;
                if let Some(path) = dot {
                    std::fs::write(&path, d.to_dot())
                        .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                }
                let mut s = d.to_json().to_string();
                s.push('\n');
                Ok(CommandOutcome::ok(s))
            }
            Command::Recompose { file } => {
                let d = Decomposition::from_json(&self.read_input(&file)?)?;
                Ok(CommandOutcome::ok(
                    self.emit_table(&groupoid_from_decomposition(&d)?),
                ))
            }
            Command::Iso {
                first,
                second,
                strict,
            } => self.iso(&first, &second, strict),
            Command::Amalgamate { file, map, dot } => {
                let d = Decomposition::from_json(&self.read_input(&file)?)?;
                let psi = AmalgamationMap::parse(&map)?;
                let g = amalgamate(&d, &psi)?;
                if let Some(path) = dot {
                    std::fs::write(&path, g.to_dot())
                        .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                }
                let out = if self.json {
                    pretty(&g.to_json())
                } else {
                    let mut s = format!(
                        "vertices: {}\nedges: {}\nloops: {}\ncolor counts: {:?}\n",
                        g.vertices,
                        g.edges.len(),
                        g.loops().count(),
                        g.color_counts()
                    );
                    for e in &g.edges {
                        s.push_str(&format!("{} {} color {}\n", e.u, e.v, e.color));
                    }
                    s
                };
                Ok(CommandOutcome::ok(out))
            }
            Command::Search(args) => search(args, self.json),
            Command::Subgroupoids { file } => {
                let t = self.read_table(&file)?;
                let subs = enumerate_subgroupoids(&t);
                let out = if self.json {
                    let nontrivial = subs
                        .iter()
                        .filter(|s| s.len() > 1 && s.len() < t.order())
                        .count();
                    pretty(&json!({
                        "order": t.order(),
                        "subgroupoids": subs,
                        "nontrivial": nontrivial,
                    }))
                } else {
                    subs.iter()
                        .map(|s| {
                            let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                            format!("{{{}}}\n", items.join(", "))
                        })
                        .collect()
                };
                Ok(CommandOutcome::ok(out))
            }
        }
    }

    fn iso(&mut self, first: &str, second: &str, strict: bool) -> Result<CommandOutcome, Error> {
        let a = self.read_input(first)?;
        let b = self.read_input(second)?;
        let is_decomp = |s: &str| s.contains("\"classes\"");
        let (kind, map) = match (is_decomp(&a), is_decomp(&b)) {
            (true, true) => {
                let da = Decomposition::from_json(&a)?;
                let db = Decomposition::from_json(&b)?;
                ("decomposition", decomposition_isomorphism(&da, &db, strict))
            }
            (false, false) => {
                let ta = CayleyTable::parse_any(&a)?;
                let tb = CayleyTable::parse_any(&b)?;
                ("table", find_isomorphism(&ta, &tb))
            }
            _ => {
                return Err(Error::Invalid(
                    "cannot compare a table with a decomposition".into(),
                ))
            }
        };
        let out = if self.json {
            pretty(&json!({
                "kind": kind,
                "isomorphic": map.is_some(),
                "map": map.as_ref().map(|p| p.images().to_vec()),
            }))
        } else {
            match &map {
                Some(p) => format!("isomorphic: {p}\n"),
                None => "not isomorphic\n".to_string(),
            }
        };
        Ok(CommandOutcome::verdict(map.is_some(), out))
    }
}

fn flag_text(name: &str, f: &Flag) -> String {
    match &f.witness {
        None => format!("{name}: {}\n", f.holds),
        Some(w) => format!("{name}: {} (witness {w:?})\n", f.holds),
    }
}

fn report_text(r: &crate::properties::PropertyReport) -> String {
    [
        ("p1", &r.p1),
        ("p2", &r.p2),
        ("p3", &r.p3),
        ("is_p_groupoid", &r.is_p_groupoid),
        ("is_quasigroup", &r.is_quasigroup),
        ("left_distributive", &r.left_distributive),
        ("right_distributive", &r.right_distributive),
        ("medial", &r.medial),
        ("quandle", &r.quandle),
    ]
    .iter()
    .map(|(n, f)| flag_text(n, f))
    .collect()
}

fn mlt_summary(t: &CayleyTable) -> Result<serde_json::Value, Error> {
    let right = right_multiplication_group(t)?;
    let dihedral = is_dihedral(&right);
    let (left_order, full_order, right_char, left_char) = match left_multiplication_group(t) {
        Ok(_) => {
            let groups = multiplication_groups(t)?;
            let rc = is_characteristic(&groups.right, &groups.full).ok();
            let lc = is_characteristic(&groups.left, &groups.full).ok();
            (Some(groups.left.order()), Some(groups.full.order()), rc, lc)
        }
        Err(Error::NotBijective(_)) => (None, None, None, None),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "order": t.order(),
        "mlt_right": right.order(),
        "mlt_left": left_order,
        "mlt": full_order,
        "right_dihedral": dihedral,
        "right_characteristic": right_char,
        "left_characteristic": left_char,
    }))
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn search(args: SearchArgs, json_out: bool) -> Result<CommandOutcome, Error> {
    let time_budget = match args.time_budget {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(Error::Invalid(
                "time budget must be a positive number of seconds".into(),
            ))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let c = SearchConstraints {
        require_quasigroup: args.quasigroup,
        require_left_distributive: args.left_distributive,
        require_quandle: args.quandle,
        forbid_quandle: args.no_quandle,
        require_hamiltonian: args.hamiltonian,
        up_to_iso: args.up_to_iso,
        max_models: args.max,
        time_budget,
        threads: args.threads.unwrap_or_else(default_threads),
    };
    let mut stderr = String::new();
    let stdout = if args.count_only {
        let count = count_models(args.n, &c)?;
        if !count.complete {
            stderr.push_str("warning: search stopped early; counts are partial\n");
        }
        let mut s = json!({
            "labeled": count.labeled,
            "iso_classes": count.iso_classes,
            "complete": count.complete,
        })
        .to_string();
        s.push('\n');
        s
    } else {
        let outcome = search_p_groupoids(args.n, &c)?;
        if !outcome.complete {
            stderr.push_str("warning: search stopped early; results are partial\n");
        }
        if json_out {
            pretty(&json!({
                "n": args.n,
                "labeled": outcome.labeled,
                "models": outcome.tables.len(),
                "complete": outcome.complete,
                "tables": outcome.tables.iter().map(|t| t.rows().map(<[usize]>::to_vec).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        } else {
            outcome
                .tables
                .iter()
                .map(CayleyTable::to_text)
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    Ok(CommandOutcome {
        code: 0,
        stdout,
        stderr,
    })
}
