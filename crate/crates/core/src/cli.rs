//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 axiom or property failure, 2 input error,
//! 3 resource cap. Every report echoes the seed it ran with.

use crate::config::{
    Limits, DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_LIN_CAP, DEFAULT_MONOID_CAP, DEFAULT_SAMPLES,
    DEFAULT_SEED, SEED_ENV,
};
use crate::equivalence::{gamma_object, round_trip_report, EquivError};
use crate::hilbert3::{span, vec3, witness_report, witness_report_for};
use crate::linmap::{
    brute_force_lin, enumerate_lin, extract_sasaki_lattice, verify_foulis_seeded, verify_galois,
    verify_left_module_on_m, verify_lin_invariants_seeded, verify_sasaki_characterization,
    LinError, BRUTE_FORCE_MAX,
};
use crate::oml::{
    catalog, check_ortho_iso, parse_lattice_file, validate_oml, Oml, OrthoIso, ParseOptions,
};
use crate::report::{Check, Mode, Status, ValidationReport};
use crate::testmonoid::{generate_t, verify_monoid, MonoidError};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Lin(M) carriers above this size skip the pairwise quantale suites.
pub const PAIRWISE_LIN_MAX: usize = 1024;

#[derive(Parser, Debug)]
#[command(
    name = "omloq",
    version,
    about = "Verify orthomodular lattices, their Sasaki maps and dynamic algebras"
)]
pub struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_LIN_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub lin_cap: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MONOID_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub monoid_cap: u64,
    /// Carriers up to this size get exhaustive subset quantifiers.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_THRESHOLD as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub exhaustive_threshold: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Print every check, not only the summary and failures.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the orthomodular lattice axioms.
    Check { input: String },
    /// Print the Sasaki projection and hook of `n` by `m`.
    Sasaki { input: String, m: String, n: String },
    /// Enumerate Lin(M) and run the Sasaki, Galois and Foulis suites.
    Linmaps { input: String },
    /// Generate the test monoid and audit it.
    Tmonoid {
        input: String,
        /// Write the Cayley table as CSV to this path.
        #[arg(long)]
        cayley: Option<PathBuf>,
    },
    /// Run the IDA, SFDA, TODA and module suites on Γ(M).
    Toda { input: String },
    /// Full equivalence round trip, with naturality for each morphism file.
    Equiv {
        input: String,
        #[arg(long = "morphism")]
        morphisms: Vec<PathBuf>,
    },
    /// Reproduce the non-monotonicity witness in three-dimensional space.
    Witness {
        /// Replace x by the span of this vector, e.g. "1,0,0".
        #[arg(long)]
        x: Option<String>,
    },
}

impl Cli {
    pub fn limits(&self) -> Limits {
        Limits {
            seed: self.seed,
            lin_cap: self.lin_cap,
            monoid_cap: self.monoid_cap as usize,
            exhaustive_threshold: self.exhaustive_threshold as usize,
            samples: self.samples as usize,
        }
    }

    fn name(&self) -> &'static str {
        match self.command {
            Command::Check { .. } => "check",
            Command::Sasaki { .. } => "sasaki",
            Command::Linmaps { .. } => "linmaps",
            Command::Tmonoid { .. } => "tmonoid",
            Command::Toda { .. } => "toda",
            Command::Equiv { .. } => "equiv",
            Command::Witness { .. } => "witness",
        }
    }
}

/// A failed run: exit code and message.
struct Abort(i32, String);

impl From<EquivError> for Abort {
    fn from(e: EquivError) -> Self {
        let code = match &e {
            EquivError::SizeExceeded { .. } => EXIT_CAP,
            EquivError::EndpointMismatch(_) => EXIT_INPUT,
            _ => EXIT_FAIL,
        };
        Abort(code, e.to_string())
    }
}

/// Text and JSON renderings of one command's result.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn code_of(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Load a lattice from a file or from `catalog:NAME[:K]`.
pub fn load_lattice(input: &str) -> Result<Arc<Oml>, String> {
    if let Some(rest) = input.strip_prefix("catalog:") {
        let mut parts = rest.splitn(2, ':');
        let name = parts.next().unwrap_or_default();
        let k = match parts.next() {
            Some(k) => k
                .parse()
                .map_err(|_| format!("bad catalog parameter `{k}`"))?,
            None => 0,
        };
        return catalog(name, k).map(Arc::new).map_err(|e| e.to_string());
    }
    parse_lattice_file(Path::new(input), ParseOptions::default())
        .map(Arc::new)
        .map_err(|e| format!("{input}: {e}"))
}

fn render(r: &ValidationReport, verbose: bool) -> String {
    if verbose || r.has_failures() {
        return r.to_string();
    }
    let inconclusive = r
        .checks
        .iter()
        .filter(|c| c.status == Status::Inconclusive)
        .count();
    let mut s = format!(
        "{}: {} checks passed",
        r.subject,
        r.checks.len() - inconclusive
    );
    if inconclusive > 0 {
        s.push_str(&format!(", {inconclusive} inconclusive"));
        for c in r.checks.iter().filter(|c| c.status == Status::Inconclusive) {
            s.push_str(&format!(
                "\n  [INCONCLUSIVE] {}: {}",
                c.name,
                c.note.as_deref().unwrap_or("")
            ));
        }
    }
    s.push('\n');
    s
}

fn render_all(rs: &[ValidationReport], verbose: bool) -> String {
    rs.iter().map(|r| render(r, verbose)).collect()
}

fn cmd_check(input: &str, verbose: bool) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let r = validate_oml(&l);
    let ok = r.all_pass();
    Ok(Outcome {
        code: code_of(ok),
        text: render(&r, verbose),
        json: json!({
            "lattice": l.name(),
            "elements": l.len(),
            "status": status_of(ok),
            "reports": [r],
        }),
    })
}

fn cmd_sasaki(input: &str, m: &str, n: &str) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let find = |s: &str| {
        l.index_of(s)
            .ok_or_else(|| Abort(EXIT_INPUT, format!("unknown label `{s}` in {}", l.name())))
    };
    let (mi, ni) = (find(m)?, find(n)?);
    let pi = l.label(l.project(mi, ni)).to_string();
    let hook = l.label(l.hook(mi, ni)).to_string();
    Ok(Outcome {
        code: EXIT_PASS,
        text: format!("pi={pi} hook={hook}\n"),
        json: json!({ "lattice": l.name(), "m": m, "n": n, "pi": pi, "hook": hook, "status": Status::Pass }),
    })
}

fn cmd_linmaps(input: &str, limits: &Limits, verbose: bool) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let v = validate_oml(&l);
    if v.has_failures() {
        return Ok(Outcome {
            code: EXIT_FAIL,
            text: render(&v, verbose),
            json: json!({ "lattice": l.name(), "status": Status::Fail, "reports": [v] }),
        });
    }
    let maps = match enumerate_lin(&l, limits.lin_cap) {
        Ok(m) => m,
        Err(e @ LinError::SizeExceeded { .. }) => return Err(Abort(EXIT_CAP, e.to_string())),
        Err(e) => return Err(Abort(EXIT_FAIL, e.to_string())),
    };
    let mut reports = vec![
        verify_sasaki_characterization(&l),
        verify_galois(&l),
        verify_lin_invariants_seeded(&l, &maps, limits.seed),
    ];
    if l.len() <= BRUTE_FORCE_MAX {
        let mut r = ValidationReport::new(format!("brute-force oracle for {}", l.name()));
        match brute_force_lin(&l) {
            Ok(bf) => {
                let same = bf.len() == maps.len()
                    && bf.iter().zip(&maps).all(|(a, b)| a.table() == b.table());
                r.push(if same {
                    Check::pass(
                        "enumeration matches n^n search",
                        Mode::Exhaustive,
                        bf.len() as u64,
                    )
                } else {
                    Check::fail(
                        "enumeration matches n^n search",
                        Mode::Exhaustive,
                        format!("{} maps by search, {} by enumeration", bf.len(), maps.len()),
                    )
                });
            }
            Err(e) => r.push(Check::inconclusive(
                "enumeration matches n^n search",
                e.to_string(),
            )),
        }
        reports.push(r);
    }
    if maps.len() <= PAIRWISE_LIN_MAX {
        reports.push(verify_foulis_seeded(&l, &maps, limits.seed));
        reports.push(verify_left_module_on_m(&l, &maps));
    } else {
        let mut r = ValidationReport::new(format!(
            "Foulis quantale axioms on {} maps over {}",
            maps.len(),
            l.name()
        ));
        r.push(Check::inconclusive(
            "Foulis suite",
            format!(
                "{} maps exceed the pairwise limit of {PAIRWISE_LIN_MAX}",
                maps.len()
            ),
        ));
        reports.push(r);
    }
    match extract_sasaki_lattice(&l, &maps) {
        Ok(s) => reports.push(s.report),
        Err(e) => return Err(Abort(EXIT_FAIL, e.to_string())),
    }
    let ok = reports.iter().all(|r| !r.has_failures());
    let mut text = format!("|Lin({})| = {}\n", l.name(), maps.len());
    if verbose {
        for f in &maps {
            text.push_str(&format!("  {}\n", f.describe()));
        }
    }
    text.push_str(&render_all(&reports, verbose));
    Ok(Outcome {
        code: code_of(ok),
        text,
        json: json!({ "lattice": l.name(), "lin_size": maps.len(), "status": status_of(ok), "reports": reports }),
    })
}

fn cmd_tmonoid(
    input: &str,
    cayley: Option<&Path>,
    limits: &Limits,
    verbose: bool,
) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let m = match generate_t(&l, limits.monoid_cap) {
        Ok(m) => m,
        Err(e @ MonoidError::SizeExceeded { .. }) => return Err(Abort(EXIT_CAP, e.to_string())),
        Err(e) => return Err(Abort(EXIT_FAIL, e.to_string())),
    };
    if let Some(path) = cayley {
        std::fs::write(path, m.cayley_csv())
            .map_err(|e| Abort(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    }
    let r = verify_monoid(&m);
    let ok = r.all_pass();
    let word = |a: usize| {
        let w = m.word(a);
        if w.is_empty() {
            "id".to_string()
        } else {
            w
        }
    };
    let elems: Vec<Value> = m
        .ids()
        .map(|a| json!({ "id": a, "word": word(a), "at_top": l.label(m.at_top(a)), "star": m.star(a) }))
        .collect();
    let mut text = format!("|T(Lin({}))| = {}\n", l.name(), m.len());
    if verbose {
        for a in m.ids() {
            text.push_str(&format!("  {a}: {} (star {})\n", word(a), m.star(a)));
        }
    }
    text.push_str(&render(&r, verbose));
    Ok(Outcome {
        code: code_of(ok),
        text,
        json: json!({ "lattice": l.name(), "size": m.len(), "status": status_of(ok), "elements": elems, "reports": [r] }),
    })
}

fn cmd_toda(input: &str, limits: &Limits, verbose: bool) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let (code, reports) = match gamma_object(l.clone(), limits) {
        Ok(h) => (
            EXIT_PASS,
            vec![h.test_lattice().report().clone(), h.suites().clone()],
        ),
        Err(EquivError::SuiteFailure(r)) => (EXIT_FAIL, vec![*r]),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome {
        code,
        text: render_all(&reports, verbose),
        json: json!({ "lattice": l.name(), "status": status_of(code == EXIT_PASS), "reports": reports }),
    })
}

/// Parse a morphism file: `iso <src> <dst>` lines plus optional `src <path>`
/// and `dst <path>` lines naming the endpoint lattice files.
pub fn parse_morphism(path: &Path, src: &Arc<Oml>) -> Result<OrthoIso, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut dst = src.clone();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let at = || format!("{}:{}", path.display(), i + 1);
        match words.as_slice() {
            ["iso", a, b] => pairs.push((a.to_string(), b.to_string())),
            ["src", p] | ["dst", p] => {
                let l = load_lattice(&resolve(base, p))?;
                if words[0] == "src" {
                    if *l != **src {
                        return Err(format!(
                            "{}: morphism starts at {}, not at {}",
                            at(),
                            l.name(),
                            src.name()
                        ));
                    }
                } else {
                    dst = l;
                }
            }
            _ => {
                return Err(format!(
                    "{}: expected `iso <src> <dst>`, `src <path>` or `dst <path>`",
                    at()
                ))
            }
        }
    }
    let mut map: Vec<Option<usize>> = vec![None; src.len()];
    for (a, b) in &pairs {
        let x = src
            .index_of(a)
            .ok_or_else(|| format!("{}: unknown source label `{a}`", path.display()))?;
        let y = dst
            .index_of(b)
            .ok_or_else(|| format!("{}: unknown target label `{b}`", path.display()))?;
        map[x] = Some(y);
    }
    // Unlisted elements keep their label.
    let map = map
        .iter()
        .enumerate()
        .map(|(x, y)| {
            y.or_else(|| dst.index_of(src.label(x)))
                .ok_or_else(|| format!("{}: no image for `{}`", path.display(), src.label(x)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k = OrthoIso::new(src.clone(), dst, map).map_err(|e| e.to_string())?;
    let r = check_ortho_iso(&k);
    if let Some(c) = r.failures().next() {
        return Err(format!(
            "{}: not an ortholattice isomorphism: {} ({})",
            path.display(),
            c.name,
            c.witness.as_deref().unwrap_or("")
        ));
    }
    Ok(k)
}

fn resolve(base: &Path, p: &str) -> String {
    if p.starts_with("catalog:") || Path::new(p).is_absolute() {
        p.to_string()
    } else {
        base.join(p).to_string_lossy().into_owned()
    }
}

fn cmd_equiv(
    input: &str,
    morphisms: &[PathBuf],
    limits: &Limits,
    verbose: bool,
) -> Result<Outcome, Abort> {
    let l = load_lattice(input).map_err(|e| Abort(EXIT_INPUT, e))?;
    let ks = morphisms
        .iter()
        .map(|p| parse_morphism(p, &l))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Abort(EXIT_INPUT, e))?;
    let rep = round_trip_report(l.clone(), &ks, limits)?;
    let ok = rep.passed();
    let mut text = render_all(&rep.sections, verbose);
    text.push_str(&format!("verdict: {}\n", if ok { "PASS" } else { "FAIL" }));
    Ok(Outcome {
        code: code_of(ok),
        text,
        json: json!({ "lattice": l.name(), "status": rep.verdict, "report": rep }),
    })
}

fn cmd_witness(x: Option<&str>) -> Result<Outcome, Abort> {
    let r = match x {
        None => witness_report(),
        Some(s) => {
            let v: Vec<i64> = s
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Abort(EXIT_INPUT, format!("--x expects three integers, got `{s}`")))?;
            let [a, b, c] = v[..] else {
                return Err(Abort(
                    EXIT_INPUT,
                    format!("--x expects three integers, got `{s}`"),
                ));
            };
            witness_report_for(&span(&[vec3(a, b, c)]))
        }
    };
    let ok = r.passed();
    let mut text = r.to_string();
    if x.is_some() && !r.monotone_violation {
        text.push_str("not a witness: pi_u(x) is contained in pi_v(x)\n");
    }
    let mut json = to_value(&r);
    json["status"] = to_value(&status_of(ok));
    Ok(Outcome {
        code: code_of(ok),
        text,
        json,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Abort> {
    let limits = cli.limits();
    let v = cli.verbose;
    match &cli.command {
        Command::Check { input } => cmd_check(input, v),
        Command::Sasaki { input, m, n } => cmd_sasaki(input, m, n),
        Command::Linmaps { input } => cmd_linmaps(input, &limits, v),
        Command::Tmonoid { input, cayley } => cmd_tmonoid(input, cayley.as_deref(), &limits, v),
        Command::Toda { input } => cmd_toda(input, &limits, v),
        Command::Equiv { input, morphisms } => cmd_equiv(input, morphisms, &limits, v),
        Command::Witness { x } => cmd_witness(x.as_deref()),
    }
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = dispatch(&cli);
    let (code, text, mut body) = match result {
        Ok(o) => (o.code, o.text, o.json),
        Err(Abort(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            (
                code,
                String::new(),
                json!({ "status": "error", "error": msg }),
            )
        }
    };
    if cli.json {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), json!(cli.name()));
        obj.insert("seed".into(), json!(cli.seed));
        obj.insert("exit_code".into(), json!(code));
        if let Value::Object(m) = body.take() {
            obj.extend(m);
        }
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&Value::Object(obj)).expect("json")
        );
    } else if !text.is_empty() {
        let _ = write!(out, "{text}");
        if !matches!(cli.command, Command::Sasaki { .. }) {
            let _ = writeln!(out, "seed: {}", cli.seed);
        }
    }
    code
}
