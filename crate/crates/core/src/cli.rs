//! Command-line front end. Every command prints one JSON document (sorted keys,
//! `"schema": 1`) to stdout and human-readable notes to stderr.
//!
//! Exit codes: 0 verified, 1 counterexample, 2 usage or invalid input,
//! 3 inconclusive.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::albert::{albert_form, check_albert_chain, isotropic, similarity_factors, witt_index};
use crate::classes::ClassVector;
use crate::cohomology::{symbol, CohClass};
use crate::error::{Error, Result};
use crate::extensions::CyclicExtension;
use crate::rost::{nrd_class_group, quotient_report, rost_kernel, suslin_group, Exactness, Status};
use crate::suites::{run_suite, SuiteConfig, TowerSpec, SUITES};
use crate::tower::{make_tower, TowerField};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "rostlab",
    version,
    about = "Exact Galois cohomology, Rost kernels and Suslin groups over F_q((x1))...((xd))"
)]
struct Cli {
    /// Session file: one directive per line (`field NAME q=.. ell=.. n=.. depth=..`,
    /// `ext NAME FIELD kummer=ELEM m=..` or `ext NAME FIELD unramified=F`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized suites.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true, env = "ROSTLAB_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    /// Size of the finite field F_q.
    #[arg(long)]
    q: Option<u64>,
    /// The prime ell.
    #[arg(long)]
    ell: Option<u32>,
    /// Coefficients mod ell^n.
    #[arg(long)]
    n: Option<u32>,
    /// Number of Laurent-series levels (0..=3).
    #[arg(long)]
    depth: Option<usize>,
    /// Stored terms per level.
    #[arg(long)]
    precision: Option<usize>,
    /// A field handle from the session file.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Define a tower field and print its basis.
    Field(FieldArgs),
    /// Evaluate an expression: `symbol {a, b, ...} [F]`, `class ELEM [F]`,
    /// `residue (E)`, `cup (E) (class ELEM)`, `decompose (E)`, `period (E)`.
    Eval {
        expr: String,
        #[command(flatten)]
        f: FieldArgs,
    },
    /// Describe a cyclic extension: its norm group and what it splits.
    Ext {
        #[command(flatten)]
        f: FieldArgs,
        /// Kummer generator b of F(b^(1/ell^m)).
        #[arg(long, conflicts_with = "unramified")]
        kummer: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Degree of an unramified extension.
        #[arg(long)]
        unramified: Option<u32>,
        /// An extension handle from the session file.
        #[arg(long)]
        handle: Option<String>,
        /// A degree-2 class to test for splitting.
        #[arg(long)]
        splits: Option<String>,
    },
    /// Rost kernel R(alpha).
    Rost {
        alpha: String,
        #[command(flatten)]
        f: FieldArgs,
    },
    /// Suslin group S(alpha) and the reduced-norm class group.
    Suslin {
        alpha: String,
        #[command(flatten)]
        f: FieldArgs,
    },
    /// Full R/S report for a degree-2 class.
    Report {
        alpha: String,
        #[command(flatten)]
        f: FieldArgs,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        f: FieldArgs,
    },
    /// Albert form of (a, b) + (c, d) and its similarity factors.
    Albert {
        a: String,
        b: String,
        c: String,
        d: String,
        #[command(flatten)]
        f: FieldArgs,
    },
}

// ---- session -------------------------------------------------------------------------

#[derive(Default)]
struct Session {
    fields: BTreeMap<String, Arc<TowerField>>,
    order: Vec<String>,
    exts: BTreeMap<String, CyclicExtension>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn key_values(words: &[&str], line_no: usize) -> Result<BTreeMap<String, String>> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::Parse(format!("line {line_no}: expected key=value, got {w:?}")))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(kv: &BTreeMap<String, String>, key: &str, line_no: usize) -> Result<Option<T>> {
    kv.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| Error::Parse(format!("line {line_no}: bad value for {key}: {v:?}")))
        })
        .transpose()
}

impl Session {
    fn load(text: &str) -> Result<Session> {
        let mut s = Session::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["field", name, rest @ ..] => {
                    let kv = key_values(rest, line_no)?;
                    let req = |k: &str| -> Result<u64> {
                        parse_num::<u64>(&kv, k, line_no)?
                            .ok_or_else(|| Error::Parse(format!("line {line_no}: missing {k}")))
                    };
                    let field = make_tower(
                        req("q")?,
                        req("ell")? as u32,
                        parse_num::<u32>(&kv, "n", line_no)?.unwrap_or(1),
                        req("depth")? as usize,
                        parse_num::<usize>(&kv, "precision", line_no)?.unwrap_or(4),
                    )?;
                    s.insert_field(name, field)?;
                }
                ["ext", name, base, rest @ ..] => {
                    let field = s.get_field(base)?;
                    let kv = key_values(rest, line_no)?;
                    let ext = if let Some(b) = kv.get("kummer") {
                        let m = parse_num::<u32>(&kv, "m", line_no)?.unwrap_or(1);
                        CyclicExtension::kummer(&field, &field.parse(b)?, m)?
                    } else if let Some(f) = parse_num::<u32>(&kv, "unramified", line_no)? {
                        CyclicExtension::unramified(&field, f)?
                    } else {
                        return Err(Error::Parse(format!(
                            "line {line_no}: ext needs kummer= or unramified="
                        )));
                    };
                    if s.exts.insert(name.to_string(), ext).is_some() {
                        return Err(Error::Parse(format!("line {line_no}: duplicate handle {name}")));
                    }
                }
                _ => return Err(Error::Parse(format!("line {line_no}: unknown directive {line:?}"))),
            }
        }
        Ok(s)
    }

    fn insert_field(&mut self, name: &str, field: Arc<TowerField>) -> Result<()> {
        if self.fields.insert(name.to_string(), field).is_some() {
            return Err(Error::Parse(format!("duplicate handle {name}")));
        }
        self.order.push(name.to_string());
        Ok(())
    }

    fn get_field(&self, name: &str) -> Result<Arc<TowerField>> {
        self.fields
            .get(name)
            .cloned()
            .ok_or_else(|| usage(format!("unknown field handle {name:?}")))
    }

    /// The field selected by the flags: explicit parameters define a new
    /// handle, `--field` picks one, otherwise the last one defined.
    fn resolve(&mut self, f: &FieldArgs) -> Result<(String, Arc<TowerField>)> {
        if let Some(q) = f.q {
            let ell = f.ell.ok_or_else(|| usage("--ell is required with --q"))?;
            let field = make_tower(q, ell, f.n.unwrap_or(1), f.depth.unwrap_or(1), f.precision.unwrap_or(4))?;
            let name = format!("F{}", self.order.len() + 1);
            self.insert_field(&name, field.clone())?;
            return Ok((name, field));
        }
        if let Some(name) = &f.field {
            return Ok((name.clone(), self.get_field(name)?));
        }
        let name = self
            .order
            .last()
            .cloned()
            .ok_or_else(|| usage("no field: pass --q/--ell/--depth or a session file"))?;
        let field = self.get_field(&name)?;
        Ok((name, field))
    }
}

// ---- expressions ---------------------------------------------------------------------

enum Val {
    Class(ClassVector),
    Coh(CohClass),
    Json(Value),
}

impl Val {
    fn to_json(&self) -> Value {
        match self {
            Val::Class(v) => json!({ "kind": "class", "exps": v.exps(), "text": v.to_string() }),
            Val::Coh(c) => {
                let mut j = c.to_json();
                j["kind"] = json!("cohomology");
                j
            }
            Val::Json(j) => j.clone(),
        }
    }
}

/// Index of the bracket closing the one at `open`.
fn matching(s: &str, open: usize) -> Result<usize> {
    let bytes = s.as_bytes();
    let (l, r) = match bytes[open] {
        b'(' => (b'(', b')'),
        b'{' => (b'{', b'}'),
        _ => return Err(Error::Parse(format!("expected a bracket in {s:?}"))),
    };
    let mut depth = 0;
    for (i, &c) in bytes.iter().enumerate().skip(open) {
        if c == l {
            depth += 1;
        } else if c == r {
            depth -= 1;
            if depth == 0 {
                return Ok(i);
            }
        }
    }
    Err(Error::Parse(format!("unbalanced brackets in {s:?}")))
}

fn split_top_commas(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parenthesized arguments `(a) (b) ...`.
fn paren_args(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        }
        let close = matching(rest, 0)?;
        out.push(&rest[1..close]);
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}

struct Evaluator<'a> {
    session: &'a Session,
    default: Arc<TowerField>,
}

impl Evaluator<'_> {
    /// Splits off a trailing field handle.
    fn with_handle<'s>(&self, s: &'s str) -> Result<(&'s str, Arc<TowerField>)> {
        let t = s.trim_end();
        if let Some(pos) = t.rfind(|c: char| c.is_whitespace() || c == '}') {
            let last = &t[pos + 1..];
            if let Some(f) = self.session.fields.get(last) {
                return Ok((&t[..=pos], f.clone()));
            }
        }
        Ok((t, self.default.clone()))
    }

    fn eval(&self, s: &str) -> Result<Val> {
        let s = s.trim();
        if s.starts_with('(') && matching(s, 0)? == s.len() - 1 {
            return self.eval(&s[1..s.len() - 1]);
        }
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        match head {
            "class" => {
                let (text, field) = self.with_handle(rest)?;
                Ok(Val::Class(field.parse(text)?.kummer_class()?))
            }
            "symbol" => {
                let rest = rest.trim_start();
                if !rest.starts_with('{') {
                    return Err(Error::Parse("symbol expects {a, b, ...}".into()));
                }
                let close = matching(rest, 0)?;
                let trailing = rest[close + 1..].trim();
                let field = if trailing.is_empty() {
                    self.default.clone()
                } else {
                    self.session.get_field(trailing)?
                };
                let args: Vec<ClassVector> = split_top_commas(&rest[1..close])
                    .iter()
                    .map(|e| field.parse(e)?.kummer_class())
                    .collect::<Result<_>>()?;
                Ok(Val::Coh(symbol(&args)?))
            }
            "residue" | "decompose" | "period" | "specialize" => {
                let args = paren_args(rest)?;
                let [inner] = args.as_slice() else {
                    return Err(Error::Parse(format!("{head} takes one argument")));
                };
                let c = self.coh(inner)?;
                Ok(match head {
                    "residue" => Val::Coh(c.residue()?),
                    "specialize" => Val::Coh(c.specialize()?),
                    "period" => Val::Json(json!({ "kind": "period", "period": c.period() })),
                    _ => {
                        let d = c.decompose()?;
                        Val::Json(json!({
                            "kind": "decomposition",
                            "unramified_part": d.unramified_part.to_json(),
                            "ramified_character": d.ramified_character.exps(),
                        }))
                    }
                })
            }
            "cup" => {
                let args = paren_args(rest)?;
                let [a, b] = args.as_slice() else {
                    return Err(Error::Parse("cup takes two arguments".into()));
                };
                let c = self.coh(a)?;
                match self.eval(b)? {
                    Val::Class(v) => Ok(Val::Coh(c.cup(&v)?)),
                    Val::Coh(d) if d.degree() == 1 => Ok(Val::Coh(c.cup(&d.to_class()?)?)),
                    _ => Err(Error::Parse("second argument of cup must be a class".into())),
                }
            }
            _ => Err(Error::Parse(format!("unknown expression {s:?}"))),
        }
    }

    fn coh(&self, s: &str) -> Result<CohClass> {
        match self.eval(s)? {
            Val::Coh(c) => Ok(c),
            Val::Class(v) => Ok(CohClass::from_class(&v)),
            Val::Json(_) => Err(Error::Parse(format!("{s:?} is not a cohomology class"))),
        }
    }
}

// ---- commands ------------------------------------------------------------------------

fn field_json(name: &str, f: &TowerField) -> Value {
    json!({
        "handle": name,
        "field": f.to_string(),
        "q": f.q(),
        "ell": f.ell(),
        "n": f.n(),
        "depth": f.depth(),
        "precision": f.precision(),
        "basis": {
            "zeta": f.zeta(),
            "variables": f.level_names(),
        },
        "class_group_order": f.class_group_order(),
    })
}

struct Outcome {
    code: i32,
    body: Value,
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Verified => 0,
        Status::Counterexample => 1,
        Status::Inconclusive => 3,
    }
}

fn alpha_of(session: &Session, field: &Arc<TowerField>, text: &str) -> Result<CohClass> {
    let ev = Evaluator {
        session,
        default: field.clone(),
    };
    let c = ev.coh(text)?;
    if c.degree() != 2 {
        return Err(usage(format!("expected a degree-2 class, got degree {}", c.degree())));
    }
    Ok(c)
}

fn execute(cli: &Cli, session: &mut Session, log: &mut dyn Write) -> Result<Outcome> {
    let ok = |body: Value| Ok(Outcome { code: 0, body });
    match &cli.cmd {
        Command::Field(f) => {
            let (name, field) = session.resolve(f)?;
            let _ = writeln!(log, "defined {name} = {field}");
            ok(field_json(&name, &field))
        }
        Command::Eval { expr, f } => {
            let (name, field) = session.resolve(f)?;
            let ev = Evaluator {
                session,
                default: field,
            };
            let v = ev.eval(expr)?;
            ok(json!({ "field": name, "expr": expr, "result": v.to_json() }))
        }
        Command::Ext {
            f,
            kummer,
            m,
            unramified,
            handle,
            splits,
        } => {
            let ext = match (handle, kummer, unramified) {
                (Some(h), _, _) => session
                    .exts
                    .get(h)
                    .cloned()
                    .ok_or_else(|| usage(format!("unknown extension handle {h:?}")))?,
                (None, Some(b), _) => {
                    let (_, field) = session.resolve(f)?;
                    CyclicExtension::kummer(&field, &field.parse(b)?, *m)?
                }
                (None, None, Some(deg)) => {
                    let (_, field) = session.resolve(f)?;
                    CyclicExtension::unramified(&field, *deg)?
                }
                _ => return Err(usage("ext needs --kummer, --unramified or --handle")),
            };
            let mut body = json!({
                "extension": ext.to_json(),
                "norm_group": ext.norm_class_group()?.echelon(),
                "restriction": ext.restriction_images()?.iter().map(|v| v.exps().to_vec()).collect::<Vec<_>>(),
            });
            if let Some(a) = splits {
                let alpha = alpha_of(session, ext.base(), a)?;
                body["splits"] = json!(ext.splits(&alpha)?);
            }
            ok(body)
        }
        Command::Rost { alpha, f } => {
            let (name, field) = session.resolve(f)?;
            let alpha = alpha_of(session, &field, alpha)?;
            let r = rost_kernel(&alpha)?;
            ok(json!({
                "field": name,
                "alpha": alpha.to_json(),
                "R": r.echelon(),
                "order": r.order(),
                "elements": r.elements().iter().map(|v| v.exps().to_vec()).collect::<Vec<_>>(),
            }))
        }
        Command::Suslin { alpha, f } => {
            let (name, field) = session.resolve(f)?;
            let alpha = alpha_of(session, &field, alpha)?;
            let (s, flag) = suslin_group(&alpha)?;
            let (nrd, nrd_flag) = nrd_class_group(&alpha)?;
            Ok(Outcome {
                code: if flag == Exactness::Exact { 0 } else { 3 },
                body: json!({
                    "field": name,
                    "alpha": alpha.to_json(),
                    "S": s.echelon(),
                    "order": s.order(),
                    "s_exact": flag == Exactness::Exact,
                    "Nrd": nrd.echelon(),
                    "nrd_exact": nrd_flag == Exactness::Exact,
                }),
            })
        }
        Command::Report { alpha, f } => {
            let (name, field) = session.resolve(f)?;
            let alpha = alpha_of(session, &field, alpha)?;
            let rep = quotient_report(&alpha)?;
            let mut body = rep.to_json();
            body["field"] = json!(name);
            Ok(Outcome {
                code: status_code(rep.status),
                body,
            })
        }
        Command::Verify { suite, f } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite {suite:?}; known: {}", SUITES.join(", "))));
            }
            let mut cfg = SuiteConfig {
                samples: cli.samples,
                seed: cli.seed,
                ..SuiteConfig::default()
            };
            if let Some(q) = f.q {
                let ell = f.ell.ok_or_else(|| usage("--ell is required with --q"))?;
                let depth = f.depth.ok_or_else(|| usage("--depth is required with --q"))?;
                // validate early so a bad field is a usage error
                make_tower(q, ell, f.n.unwrap_or(1), depth, 1)?;
                cfg.towers = vec![TowerSpec::new(q, ell, f.n.unwrap_or(1), depth)];
            }
            if let Some(p) = f.precision {
                cfg.precision = p;
            }
            let rep = run_suite(suite, &cfg)?;
            let _ = writeln!(
                log,
                "{suite}: {:?} ({} cells, {} failures, {} inconclusive)",
                rep.status, rep.cells, rep.failures, rep.inconclusive
            );
            Ok(Outcome {
                code: rep.exit_code(),
                body: rep.to_json(),
            })
        }
        Command::Albert { a, b, c, d, f } => {
            let (name, field) = session.resolve(f)?;
            let [a, b, c, d] = [a, b, c, d].map(|s| field.parse(s));
            let (a, b, c, d) = (a?, b?, c?, d?);
            if field.depth() == 2 {
                let rep = check_albert_chain(&a, &b, &c, &d)?;
                let mut body = rep.to_json();
                body["field"] = json!(name);
                body["witt_index"] = json!(witt_index(&rep.form)?);
                return Ok(Outcome {
                    code: if rep.holds { 0 } else { 1 },
                    body,
                });
            }
            let form = albert_form(&a, &b, &c, &d)?;
            let alpha = symbol(&[a.kummer_class()?, b.kummer_class()?])?
                .add(&symbol(&[c.kummer_class()?, d.kummer_class()?])?)?;
            ok(json!({
                "field": name,
                "alpha": alpha.to_json(),
                "form": form.to_json(),
                "witt_index": witt_index(&form)?,
                "isotropic": isotropic(&form)?,
                "G": similarity_factors(&form)?.echelon(),
                "R": rost_kernel(&alpha)?.echelon(),
            }))
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InternalVerificationFailed(_) => 1,
        _ => 2,
    }
}

/// Runs the command line `args` (including the program name), writing JSON
/// to `out` and notes to `log`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, log: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(log, "{e}");
            return code;
        }
    };
    let mut notes = Vec::new();
    let result = (|| {
        let mut session = match &cli.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                Session::load(&text)?
            }
            None => Session::default(),
        };
        match cli.jobs {
            Some(0) => Err(usage("--jobs must be positive")),
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| usage(e.to_string()))?
                .install(|| execute(&cli, &mut session, &mut notes)),
            None => execute(&cli, &mut session, &mut notes),
        }
    })();
    let _ = log.write_all(&notes);
    let (code, mut body) = match result {
        Ok(o) => (o.code, o.body),
        Err(e) => {
            let _ = writeln!(log, "error: {}: {e}", e.name());
            (error_code(&e), json!({ "error": e.name(), "message": e.to_string() }))
        }
    };
    body["schema"] = json!(SCHEMA);
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("json"));
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, Value) {
        let mut out = Vec::new();
        let mut log = Vec::new();
        let code = run(
            std::iter::once("rostlab").chain(args.iter().copied()),
            &mut out,
            &mut log,
        );
        let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
        (code, v)
    }

    #[test]
    fn field_and_errors() {
        let (code, v) = call(&["field", "--q", "3", "--ell", "2", "--n", "1", "--depth", "2"]);
        assert_eq!(code, 0);
        assert_eq!(v["handle"], "F1");
        assert_eq!(v["basis"]["zeta"], 2);
        assert_eq!(v["schema"], 1);
        let (code, v) = call(&["field", "--q", "5", "--ell", "3", "--depth", "1"]);
        assert_eq!(code, 2);
        assert_eq!(v["error"], "RootsOfUnityMissing");
        let (code, _) = call(&["bogus"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn expressions() {
        let base = ["--q", "3", "--ell", "2", "--depth", "2"];
        let eval = |e: &str| {
            let mut a = vec!["eval", e];
            a.extend(base);
            call(&a)
        };
        let (code, v) = eval("class 1");
        assert_eq!(code, 0);
        assert_eq!(v["result"]["exps"], json!([0, 0, 0]));
        let (_, v) = eval("residue (symbol {x2, u} F1)");
        assert_eq!(v["result"]["degree"], 1);
        let (_, v) = eval("cup (symbol {x1,x2}) (class x1)");
        assert_eq!(v["result"]["degree"], 3);
        assert_ne!(v["result"]["coeffs"], json!({}));
        let (code, _) = eval("symbol {x1");
        assert_eq!(code, 2);
    }

    #[test]
    fn session_file_handles() {
        let text = "# demo\nfield A q=3 ell=2 depth=1\nfield B q=7 ell=3 depth=2 precision=3\next E A kummer=x1\n";
        let s = Session::load(text).unwrap();
        assert_eq!(s.order, vec!["A", "B"]);
        assert!(s.exts.contains_key("E"));
        assert!(Session::load("field A q=3").is_err());
        assert!(Session::load("frobnicate").is_err());
    }
}
