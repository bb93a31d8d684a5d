use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use knotcover::component_exchange::{exchange_components, nfl_to_pd, parity_normalize, verify_log, ExchangeError, NormalFormLink};
use knotcover::diagram_core::{bracket_cap_from_env, jones_capped, validate, DiagramError, PlanarDiagram};
use knotcover::periodic_quotient::{
    build_periodic, detect_period, nf_to_tangle, normalize_unknot_quotient, quotient, AxisClosureDiagram, PeriodicDiagram,
    QuotientError, QuotientNormalForm, TangleDiagram,
};
use knotcover::torus_cover::{
    cover_report, cover_signature, injectivity_scan, recover_torus_knot, twins_decision, SeifertSignature, SignatureFlag, TorusError,
    TorusKnot, Verdict,
};

#[derive(Parser)]
#[command(name = "knotcover", version, about = "Periodic alternating diagrams, quotient links and torus-knot covers")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Seifert signature of the n-fold cyclic branched cover of a torus knot.
    Cover {
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        #[arg(long)]
        n: u64,
    },
    /// Torus knot whose n-fold cover has the given signature.
    Recover {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        genus: u64,
        /// Comma-separated fibre orders; empty for none.
        #[arg(long, default_value = "")]
        fibres: String,
    },
    /// Compares the n-fold covers of two torus knots.
    Twins {
        /// First knot as `a1,a2`.
        #[arg(long)]
        knot1: String,
        /// Second knot as `a1,a2`.
        #[arg(long)]
        knot2: String,
        #[arg(long)]
        n: u64,
    },
    /// Signature collisions among torus knots up to `amax` for degrees up to `nmax`.
    Scan {
        #[arg(long)]
        amax: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Normal form of an alternating quotient diagram of the trivial knot.
    Quotient {
        /// Axis closure, periodic diagram or (with --period) plain diagram JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Find a rotation of this order first.
        #[arg(long)]
        period: Option<usize>,
    },
    /// Exchanges the two components of a quotient link in normal form.
    Exchange {
        /// Parameters `k;c1,...;+|-;labels=KA|AK`.
        #[arg(long)]
        nfl: String,
        /// Check the Jones polynomial and linking number along the move log.
        #[arg(long)]
        verify: bool,
    },
    /// Periodic diagram built from n copies of a tangle.
    BuildPeriodic {
        #[command(flatten)]
        source: TangleSource,
        #[arg(long)]
        n: usize,
    },
    /// Searches a diagram for a rotation of order n.
    DetectPeriod {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Jones polynomial of an oriented diagram.
    Jones {
        #[command(flatten)]
        source: DiagramSource,
    },
    /// Structural checks on a diagram.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TangleSource {
    /// Tangle JSON file.
    #[arg(long)]
    tangle: Option<PathBuf>,
    /// Pinwheel tangle of a quotient normal form `k;c1,...;+|-`.
    #[arg(long)]
    qnf: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramSource {
    /// Diagram JSON file; unoriented diagrams are oriented along their arc labels.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Link in normal form `k;c1,...;+|-;labels=KA|AK`.
    #[arg(long)]
    nfl: Option<String>,
}

/// A reported failure: error name, message and exit code.
struct Failure {
    name: String,
    message: String,
    code: u8,
}

impl Failure {
    fn input(name: &str, message: impl Into<String>) -> Self {
        Self { name: name.into(), message: message.into(), code: 2 }
    }

    fn domain(name: &str, message: impl Into<String>) -> Self {
        Self { name: name.into(), message: message.into(), code: 1 }
    }
}

fn variant_name<E: std::fmt::Debug>(e: &E) -> String {
    format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect()
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let name = variant_name(&e);
        match e {
            DiagramError::Invalid(_) | DiagramError::Parse(_) | DiagramError::MissingOrientation => Failure::input(&name, e.to_string()),
            _ => Failure::domain(&name, e.to_string()),
        }
    }
}

impl From<TorusError> for Failure {
    fn from(e: TorusError) -> Self {
        let name = variant_name(&e);
        match e {
            TorusError::NotACoverSignature(_) => Failure::domain(&name, e.to_string()),
            _ => Failure::input(&name, e.to_string()),
        }
    }
}

impl From<QuotientError> for Failure {
    fn from(e: QuotientError) -> Self {
        let name = variant_name(&e);
        match e {
            QuotientError::Diagram(d) => d.into(),
            QuotientError::Malformed(_) | QuotientError::PeriodTooSmall(_) | QuotientError::BadRotation(_) => {
                Failure::input(&name, e.to_string())
            }
            _ => Failure::domain(&name, e.to_string()),
        }
    }
}

impl From<ExchangeError> for Failure {
    fn from(e: ExchangeError) -> Self {
        let name = variant_name(&e);
        match e {
            ExchangeError::Diagram(d) => d.into(),
            ExchangeError::Malformed(_) => Failure::input(&name, e.to_string()),
            _ => Failure::domain(&name, e.to_string()),
        }
    }
}

/// Text and JSON renderings of a successful result.
struct Output {
    text: String,
    json: Value,
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input("Io", format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::input("Parse", format!("not a {what}: {e}")))
}

/// A plain diagram, or the diagram inside a periodic or axis-closure file.
fn parse_any_diagram(s: &str) -> Result<PlanarDiagram, Failure> {
    if let Ok(p) = serde_json::from_str::<PeriodicDiagram>(s) {
        return Ok(p.diagram);
    }
    if let Ok(a) = serde_json::from_str::<AxisClosureDiagram>(s) {
        return Ok(a.diagram);
    }
    parse_json(s, "diagram")
}

fn parse_knot(s: &str) -> Result<TorusKnot, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Result<Vec<u64>, _> = parts.iter().map(|p| p.parse::<u64>()).collect();
    match nums {
        Ok(v) if v.len() == 2 => Ok(TorusKnot::new(v[0], v[1])?),
        _ => Err(Failure::input("Parse", format!("expected a1,a2, got {s:?}"))),
    }
}

fn parse_orders(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<u64>().map_err(|_| Failure::input("Parse", format!("bad fibre order {x:?}"))))
        .collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Cover { a1, a2, n } => {
            let r = cover_report(&TorusKnot::new(a1, a2)?, n)?;
            let fib: Vec<String> = r.fibres.iter().map(|o| o.to_string()).collect();
            let flags: Vec<String> = r.flags.iter().map(|f| format!("{f:?}")).collect();
            let mut text = format!("T({},{}) n={} case {}: genus {} fibres {{{}}}", r.a1, r.a2, r.n, r.case, r.genus, fib.join(","));
            if !flags.is_empty() {
                text += &format!(" flags {{{}}}", flags.join(","));
            }
            Ok(Output { text, json: to_value(&r) })
        }
        Command::Recover { n, genus, fibres } => {
            let sig = SeifertSignature::new(genus, parse_orders(&fibres)?, Default::default());
            let (knot, case) = recover_torus_knot(&sig, n)?;
            let flags: Vec<SignatureFlag> = cover_signature(&knot, n)?.flags.into_iter().collect();
            let mut text = format!("{knot} case {}", case.tag);
            if !flags.is_empty() {
                text += &format!(" flags {flags:?}");
            }
            let json = json!({"a1": knot.a1, "a2": knot.a2, "n": n, "case": case.tag, "swapped": case.swapped, "flags": flags});
            Ok(Output { text, json })
        }
        Command::Twins { knot1, knot2, n } => {
            let (k1, k2) = (parse_knot(&knot1)?, parse_knot(&knot2)?);
            let v = twins_decision(&k1, &k2, n)?;
            let text = match &v {
                Verdict::EquivalentKnots => format!("{k1} and {k2} are the same knot"),
                Verdict::NotTwins { left, right, evidence } => {
                    format!("{k1} and {k2} are not {n}-twins: {left} vs {right} ({evidence:?})")
                }
                Verdict::SignaturesAgree { signature } => format!("{k1} and {k2} share the signature {signature}"),
            };
            Ok(Output { text, json: to_value(&v) })
        }
        Command::Scan { amax, nmax } => {
            if amax < 3 || nmax < 2 {
                return Err(Failure::input("InvalidRange", "need amax >= 3 and nmax >= 2"));
            }
            let r = injectivity_scan(amax, nmax);
            let mut json = to_value(&r);
            json["collision_count"] = json!(r.collision_count());
            Ok(Output { text: r.to_string(), json })
        }
        Command::Quotient { input, period } => {
            let s = read(&input)?;
            let closure = match period {
                Some(n) => {
                    let d: PlanarDiagram = parse_json(&s, "diagram")?;
                    let p = detect_period(&d, n)?.ok_or_else(|| Failure::domain("NoRotation", format!("no rotation of order {n}")))?;
                    quotient(&p)?
                }
                None => match serde_json::from_str::<PeriodicDiagram>(&s) {
                    Ok(p) => quotient(&p)?,
                    Err(_) => parse_json::<AxisClosureDiagram>(&s, "axis closure diagram")?,
                },
            };
            let nf = normalize_unknot_quotient(&closure)?;
            let json = json!({"form": nf.form.to_string(), "strips": to_value(&nf.strips), "moves": to_value(&nf.log)});
            Ok(Output { text: nf.form.to_string(), json })
        }
        Command::Exchange { nfl, verify } => {
            let l: NormalFormLink = nfl.parse()?;
            let (p, _) = parity_normalize(&l)?;
            let (r, log) = exchange_components(&l)?;
            if verify {
                verify_log(&l, &log)?;
            }
            let mut text = String::new();
            for e in log.entries() {
                text += &format!("{:?}: {} -> {}\n", e.kind, e.before, e.after);
            }
            text += &r.to_string();
            let json = json!({
                "input": l.to_string(),
                "parity_normalized": p.to_string(),
                "result": r.to_string(),
                "verified": verify,
                "log": to_value(&log),
            });
            Ok(Output { text, json })
        }
        Command::BuildPeriodic { source, n } => {
            let t = match (source.tangle, source.qnf) {
                (Some(path), _) => {
                    let t: TangleDiagram = parse_json(&read(&path)?, "tangle")?;
                    t.check()?;
                    t
                }
                (_, Some(q)) => nf_to_tangle(&q.parse::<QuotientNormalForm>()?)?,
                _ => unreachable!("clap requires one source"),
            };
            let p = build_periodic(&t, n)?;
            let json = to_value(&p);
            Ok(Output { text: json.to_string(), json })
        }
        Command::DetectPeriod { input, n } => {
            let d = parse_any_diagram(&read(&input)?)?;
            let found = detect_period(&d, n)?;
            let text = match &found {
                Some(p) => format!("rotation of order {n}: crossings {:?}", p.automorphism.crossings),
                None => format!("no rotation of order {n}"),
            };
            let json = json!({"n": n, "found": found.is_some(), "periodic": found.as_ref().map(to_value)});
            Ok(Output { text, json })
        }
        Command::Jones { source } => {
            let d = match (source.input, source.nfl) {
                (Some(path), _) => {
                    let d = parse_any_diagram(&read(&path)?)?;
                    if d.orientations.is_some() {
                        d
                    } else {
                        d.with_sequential_orientation()?
                    }
                }
                (_, Some(s)) => nfl_to_pd(&s.parse()?)?.diagram,
                _ => unreachable!("clap requires one source"),
            };
            let j = jones_capped(&d, bracket_cap_from_env())?;
            let text = j.format_in_t();
            Ok(Output { json: json!({"jones": text, "crossings": d.crossing_count()}), text })
        }
        Command::Validate { input } => {
            let d = parse_any_diagram(&read(&input)?)?;
            let r = validate(&d);
            if !r.passed() {
                let f: Vec<String> = r.failures().into_iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
                return Err(Failure::domain("ValidationFailed", f.join("; ")));
            }
            let text = r.checks.iter().map(|c| format!("{}: ok", c.name)).collect::<Vec<_>>().join("\n");
            Ok(Output { text, json: to_value(&r) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if json {
                println!("{}", json!({"error": f.name, "message": f.message}));
            }
            eprintln!("error[{}]: {}", f.name, f.message);
            ExitCode::from(f.code)
        }
    }
}
