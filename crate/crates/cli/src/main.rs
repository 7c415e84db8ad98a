use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use brauer_core::action::{apply_word, check_relation_compatibility, check_relations};
use brauer_core::admissible::{admissible_orbits, closure, orbit_and_hasse};
use brauer_core::g2::{verify, G2Algebra};
use brauer_core::phi::{sigma_census, verify_phi_relations, Method};
use brauer_core::presentations::derived_sets_for;
use brauer_core::prover::{Mode, ProofOutcome, Prover, SearchBounds};
use brauer_core::suite::run_all;
use brauer_core::{presentation_for, Error, MonoidWord, RootSystem, RootType, WeylGroup};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "brauer",
    version,
    about = "Brauer monoids of simply laced and folded types"
)]
struct Cli {
    /// Output format; the accepted values depend on the subcommand.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simple and positive roots.
    Roots(TypeArg),
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Admissible root sets.
    #[command(subcommand)]
    Adm(AdmCmd),
    /// Action of monoid words on admissible sets.
    #[command(subcommand)]
    Action(ActionCmd),
    /// Prove `lhs = d^k rhs` from a presentation.
    Prove(ProveArgs),
    /// The 39-dimensional G2 algebra.
    #[command(subcommand)]
    G2(G2Cmd),
    /// The map from the G2 monoid into the D4 monoid.
    #[command(subcommand)]
    Phi(PhiCmd),
    /// Runs every acceptance check; exits 0 iff all pass.
    VerifyAll,
}

#[derive(Args)]
struct TypeArg {
    #[arg(long = "type")]
    root_type: RootType,
}

#[derive(Args)]
struct TypeSet {
    #[arg(long = "type")]
    root_type: RootType,
    /// Comma-separated roots: `a3`, `a1+a2`, `2b0+b1` or `[1,1,2,1]`.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Subcommand)]
enum WeylCmd {
    /// The W-orbit of a root set, with a group element reaching each member.
    Orbit(TypeSet),
    /// The stabilizer of a root set.
    Stabilizer(TypeSet),
}

#[derive(Subcommand)]
enum AdmCmd {
    /// All admissible sets grouped into W-orbits.
    Orbits(TypeArg),
    /// The smallest admissible set containing a mutually orthogonal set.
    Closure(TypeSet),
    /// The raising poset on the orbit of an admissible set.
    Hasse(TypeSet),
}

#[derive(Subcommand)]
enum ActionCmd {
    /// Applies a word (right to left) to a set.
    Apply {
        #[command(flatten)]
        ts: TypeSet,
        #[arg(long)]
        word: String,
    },
    /// Checks that every defining and derived relation acts consistently.
    Check(TypeArg),
}

#[derive(Args)]
struct ProveArgs {
    /// Root-system label of the presentation, e.g. `g2`, `D4`, `C2`.
    #[arg(long)]
    presentation: RootType,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
    #[arg(long, default_value_t = 24)]
    max_depth: usize,
    /// Largest search frontier before giving up.
    #[arg(long, default_value_t = 400_000)]
    max_width: usize,
    #[arg(long, default_value_t = 24)]
    max_length: usize,
    /// Search literal words instead of Weyl-group skeletons.
    #[arg(long)]
    plain: bool,
}

#[derive(Subcommand)]
enum G2Cmd {
    /// Structure constants `b_i b_j = d^delta_exp b_k`.
    Table,
    /// Builds the algebra and checks every structural property.
    Verify {
        /// Skip proving the twelve case products from the relations.
        #[arg(long)]
        no_certify: bool,
    },
}

#[derive(Subcommand)]
enum PhiCmd {
    /// Checks every relation image.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "prover,action")]
        method: Vec<Method>,
        #[arg(long, default_value_t = 24)]
        max_depth: usize,
        #[arg(long, default_value_t = 400_000)]
        max_width: usize,
    },
    /// Triality-invariant admissible D4 sets and their folding.
    Census,
}

enum Failure {
    Usage(String),
    Verification(Value),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Config(_)
            | Error::Domain(_)
            | Error::NoAdmissibleSuperset(_) => Failure::Usage(e.to_string()),
            Error::Resource(_) => Failure::Other(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn pick(requested: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!(
            "format {f:?} not supported here (use one of {allowed:?})"
        ))),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn group(t: RootType) -> Result<WeylGroup, Failure> {
    Ok(WeylGroup::enumerate(
        Arc::new(RootSystem::build(t)?),
        1 << 16,
    )?)
}

/// Emits a report, failing with exit 1 when `ok` is false.
fn report(ok: bool, v: Value, fmt: Format, text: impl FnOnce() -> String) -> Out {
    if !ok {
        return Err(Failure::Verification(v));
    }
    Ok(match fmt {
        Format::Text => text(),
        _ => pretty(&v),
    })
}

fn run(cli: &Cli) -> Out {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Roots(a) => {
            pick(fmt, &[Format::Json])?;
            Ok(pretty(&RootSystem::build(a.root_type)?.to_json()))
        }
        Cmd::Weyl(c) => {
            pick(fmt, &[Format::Json])?;
            let (ts, stab) = match c {
                WeylCmd::Orbit(ts) => (ts, false),
                WeylCmd::Stabilizer(ts) => (ts, true),
            };
            let w = group(ts.root_type)?;
            let rs = w.root_system();
            let set = rs.parse_set(&ts.set)?;
            let letter = if rs.root_type() == RootType::G2Folded {
                'r'
            } else {
                'R'
            };
            let v = if stab {
                let s = w.stabilizer(set);
                json!({
                    "set": rs.format_set(set),
                    "order": s.order(),
                    "elements": s.elements.iter().map(|&e| w.format_element(e, letter)).collect::<Vec<_>>(),
                })
            } else {
                let orbit = w.orbit(set);
                json!({
                    "set": rs.format_set(set),
                    "size": orbit.len(),
                    "members": orbit.iter().map(|&(s, e)| json!({
                        "set": rs.format_set(s),
                        "coords": rs.set_coords(s),
                        "element": w.format_element(e, letter),
                    })).collect::<Vec<_>>(),
                })
            };
            Ok(pretty(&v))
        }
        Cmd::Adm(c) => adm(c, fmt),
        Cmd::Action(c) => {
            pick(fmt, &[Format::Json])?;
            match c {
                ActionCmd::Apply { ts, word } => {
                    let rs = RootSystem::build(ts.root_type)?;
                    let set = rs.parse_set(&ts.set)?;
                    let w = MonoidWord::parse(word)?;
                    let img = apply_word(&rs, &w, set)?;
                    Ok(pretty(&json!({
                        "word": w.to_string(),
                        "set": rs.format_set(set),
                        "result": rs.format_set(img),
                        "coords": rs.set_coords(img),
                    })))
                }
                ActionCmd::Check(a) => {
                    let rs = RootSystem::build(a.root_type)?;
                    let p = presentation_for(a.root_type)?;
                    let mut reports = vec![check_relation_compatibility(&p, &rs)?];
                    for set in derived_sets_for(&p)? {
                        reports.push(check_relations(&rs, &set.name, &set.items)?);
                    }
                    let ok = reports.iter().all(|r| r.ok);
                    report(ok, json!(reports), Format::Json, String::new)
                }
            }
        }
        Cmd::Prove(a) => prove(a, fmt),
        Cmd::G2(c) => {
            let alg = G2Algebra::build()?;
            match c {
                G2Cmd::Table => match pick(fmt, &[Format::Json, Format::Csv])? {
                    Format::Csv => Ok(alg.table_csv()),
                    _ => Ok(pretty(&alg.table_json())),
                },
                G2Cmd::Verify { no_certify } => {
                    let f = pick(fmt, &[Format::Json, Format::Text])?;
                    let rep = verify(&alg, !no_certify)?;
                    let text = || {
                        format!(
                            "basis elements: {} ({} + {} + {})\nassociativity: {} triples, {} failures\nideal chain: {:?}\nall checks passed",
                            rep.basis_size,
                            rep.group_forms,
                            rep.e1_forms,
                            rep.e0_forms,
                            rep.associativity_triples,
                            rep.associativity_failures.len(),
                            rep.ideal_chain_ranks
                        )
                    };
                    report(rep.ok, json!(rep), f, text)
                }
            }
        }
        Cmd::Phi(c) => {
            pick(fmt, &[Format::Json])?;
            match c {
                PhiCmd::Verify {
                    method,
                    max_depth,
                    max_width,
                } => {
                    let bounds = SearchBounds {
                        max_depth: *max_depth,
                        max_frontier: *max_width,
                        ..SearchBounds::default()
                    };
                    let rep = verify_phi_relations(method, bounds)?;
                    report(rep.ok, json!(rep), Format::Json, String::new)
                }
                PhiCmd::Census => {
                    let c = sigma_census()?;
                    report(c.ok, json!(c), Format::Json, String::new)
                }
            }
        }
        Cmd::VerifyAll => {
            let f = pick(fmt, &[Format::Text, Format::Json])?;
            let results = run_all()?;
            let ok = results.iter().all(|r| r.pass);
            let lines = results
                .iter()
                .map(|r| r.line())
                .collect::<Vec<_>>()
                .join("\n");
            if !ok {
                eprintln!("{lines}");
            }
            report(ok, json!(results), f, || lines.clone())
        }
    }
}

fn adm(c: &AdmCmd, fmt: Option<Format>) -> Out {
    match c {
        AdmCmd::Orbits(a) => {
            pick(fmt, &[Format::Json])?;
            let w = group(a.root_type)?;
            let rs = w.root_system();
            let orbits = admissible_orbits(&w)?;
            Ok(pretty(&json!({
                "type": rs.root_type().to_string(),
                "orbit_count": orbits.len(),
                "orbits": orbits.iter().map(|p| json!({
                    "representative": rs.format_set(p.elements[0]),
                    "size": p.elements.len(),
                    "maximum": p.unique_maximum().map(|m| rs.format_set(m)),
                    "members": p.elements.iter().map(|&s| rs.format_set(s)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })))
        }
        AdmCmd::Closure(ts) => {
            pick(fmt, &[Format::Json])?;
            let rs = RootSystem::build(ts.root_type)?;
            let set = rs.parse_set(&ts.set)?;
            let cl = closure(&rs, set)?;
            Ok(pretty(&json!({
                "set": rs.format_set(set),
                "closure": rs.format_set(cl),
                "coords": rs.set_coords(cl),
                "size": cl.len(),
            })))
        }
        AdmCmd::Hasse(ts) => {
            let f = pick(fmt, &[Format::Dot, Format::Json])?;
            let w = group(ts.root_type)?;
            let rs = w.root_system();
            let set = rs.parse_set(&ts.set)?;
            let poset = orbit_and_hasse(&w, set)?;
            if f == Format::Dot {
                return Ok(poset.to_dot(rs));
            }
            Ok(pretty(&json!({
                "elements": poset.elements.iter().map(|&s| rs.format_set(s)).collect::<Vec<_>>(),
                "raising_edges": poset.raising_edges,
                "maximal": poset.maximal,
                "minimal": poset.minimal,
                "heights": poset.heights,
                "diagnostics": poset.diagnostics,
            })))
        }
    }
}

fn prove(a: &ProveArgs, fmt: Option<Format>) -> Out {
    let f = pick(fmt, &[Format::Text, Format::Json])?;
    let p = presentation_for(a.presentation)?;
    let bounds = SearchBounds {
        max_depth: a.max_depth,
        max_word_length: a.max_length,
        max_frontier: a.max_width,
    };
    let prover = Prover::new(&p, if a.plain { Mode::Plain } else { Mode::Skeleton })?;
    let (lhs, rhs) = (MonoidWord::parse(&a.lhs)?, MonoidWord::parse(&a.rhs)?);
    match prover.prove(&lhs, &rhs, bounds)? {
        ProofOutcome::Found { trace, delta } => {
            let replay = prover.replay(&trace);
            let v = json!({
                "proved": replay.ok,
                "delta": delta,
                "trace": trace.to_json(&p),
                "replay": replay,
            });
            report(replay.ok, v, f, || {
                let mut s = trace.render(&p, prover.lemmas());
                s.push_str(&format!(
                    "lhs = d^{delta} rhs ({} steps)\n",
                    trace.steps.len()
                ));
                s
            })
        }
        ProofOutcome::NotFound {
            reason,
            states_explored,
        } => Err(Failure::Verification(json!({
            "proved": false,
            "reason": reason,
            "states_explored": states_explored,
            "bounds": bounds,
        }))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let emit = |text: &str| -> std::io::Result<()> {
        match &cli.out {
            Some(path) => std::fs::write(path, text),
            None => {
                let mut out = std::io::stdout().lock();
                let sep = if text.ends_with('\n') { "" } else { "\n" };
                match write!(out, "{text}{sep}").and_then(|_| out.flush()) {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r,
                }
            }
        }
    };
    let (code, text) = match run(&cli) {
        Ok(text) => (0, text),
        Err(Failure::Verification(v)) => (1, pretty(&json!({ "ok": false, "report": v }))),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
