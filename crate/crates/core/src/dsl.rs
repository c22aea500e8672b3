//! A small line-oriented language for defining rings, multiplicative sets,
//! modules, submodules and maps, and asserting properties about them.
//!
//! ```text
//! ring R = zmod 6
//! mset S over R = closure {4}
//! module M over R = regular
//! sub K of M = gens {2}
//! assert u_s_essential(K, S)
//! assert essential(K) == false
//! assert essential_counterexample(K) == {0, 3}
//! ```
//!
//! The full grammar is in `docs/dsl.md`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::envelope::{check_u_s_envelope, check_u_s_preenvelope, Preenvelope};
use crate::error::{Error, Result};
use crate::essential::{is_essential, is_u_s_essential_fast, is_u_s_essential_mono, is_u_s_essential_oracle};
use crate::hom::Homomorphism;
use crate::injective::{certify_u_s_injective, is_injective_baer};
use crate::module::{FiniteModule, Submodule};
use crate::mset::{u_s_noetherian, MultiplicativeSet};
use crate::ring::{FiniteRing, Ideal};
use crate::torsion::{
    find_u_s_isomorphism, is_u_s_epi, is_u_s_exact, is_u_s_iso, is_u_s_mono, is_u_s_split, is_u_s_torsion,
    s_torsion_submodule,
};

#[derive(Debug, Clone)]
pub enum Value {
    Ring(Arc<FiniteRing>),
    Mset(MultiplicativeSet),
    Module(Arc<FiniteModule>),
    Sub(Submodule),
    Hom(Homomorphism),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Mset(_) => "mset",
            Value::Module(_) => "module",
            Value::Sub(_) => "sub",
            Value::Hom(_) => "hom",
        }
    }
}

/// Named objects in definition order, plus the canonical map of each `sub`/`quot` module.
#[derive(Debug, Default, Clone)]
pub struct Env {
    order: Vec<String>,
    values: HashMap<String, Value>,
    canonical: HashMap<String, Homomorphism>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    /// The last defined object of a kind ("module", "mset", ...).
    pub fn last_of(&self, kind: &str) -> Option<&str> {
        self.order
            .iter()
            .rev()
            .find(|n| self.values[n.as_str()].kind() == kind)
            .map(String::as_str)
    }

    pub fn module(&self, name: &str) -> Result<Arc<FiniteModule>> {
        match self.values.get(name) {
            Some(Value::Module(m)) => Ok(m.clone()),
            Some(Value::Sub(k)) => Ok(k.as_module()?.0),
            _ => Err(Error::domain(format!("`{name}` is not a module"))),
        }
    }

    pub fn sub(&self, name: &str) -> Result<Submodule> {
        match self.values.get(name) {
            Some(Value::Sub(k)) => Ok(k.clone()),
            Some(Value::Module(m)) => Ok(m.whole()),
            _ => Err(Error::domain(format!("`{name}` is not a submodule"))),
        }
    }

    pub fn mset(&self, name: &str) -> Result<MultiplicativeSet> {
        match self.values.get(name) {
            Some(Value::Mset(s)) => Ok(s.clone()),
            _ => Err(Error::domain(format!("`{name}` is not a multiplicative set"))),
        }
    }

    pub fn ring(&self, name: &str) -> Result<Arc<FiniteRing>> {
        match self.values.get(name) {
            Some(Value::Ring(r)) => Ok(r.clone()),
            _ => Err(Error::domain(format!("`{name}` is not a ring"))),
        }
    }

    pub fn hom(&self, name: &str) -> Result<Homomorphism> {
        match self.values.get(name) {
            Some(Value::Hom(f)) => Ok(f.clone()),
            _ => Err(Error::domain(format!("`{name}` is not a map"))),
        }
    }

    fn define(&mut self, name: &str, v: Value) -> std::result::Result<(), String> {
        if self.values.contains_key(name) {
            return Err(format!("`{name}` is already defined"));
        }
        self.order.push(name.to_string());
        self.values.insert(name.to_string(), v);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Literal {
    Bool(bool),
    Word(String),
    Set(BTreeSet<String>),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Word(w) => write!(f, "{w}"),
            Literal::Set(s) => write!(f, "{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(",")),
        }
    }
}

#[derive(Debug, Clone)]
enum Stmt {
    Ring { name: String, def: Vec<String>, set: Option<Vec<String>> },
    Mset { name: String, ring: String, kind: String, set: Option<Vec<String>> },
    ModuleOver { name: String, ring: String, kind: String },
    Module { name: String, kind: String, args: Vec<String> },
    Sub { name: String, of: String, kind: String, arg: Option<String>, set: Option<Vec<String>> },
    Hom { name: String, src: String, dst: String, kind: String, arg: Option<String>, pairs: Vec<(String, String)> },
    Assert { func: String, args: Vec<String>, negate: bool, expected: Literal },
}

#[derive(Debug, Clone)]
struct Line {
    no: usize,
    text: String,
    stmt: Stmt,
}

#[derive(Debug, Clone)]
pub struct Program {
    lines: Vec<Line>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedResource,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssertionResult {
    pub line: usize,
    pub text: String,
    pub status: Status,
    pub actual: String,
}

/// The environment after running a program, with every assertion's outcome.
#[derive(Debug, Clone)]
pub struct Session {
    pub env: Env,
    pub results: Vec<AssertionResult>,
}

impl Session {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// `{a, b, (1,0)}` → element names with whitespace removed.
fn parse_braced(s: &str, line: usize) -> Result<Vec<String>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(line, format!("expected `{{...}}`, got `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, ',')
        .into_iter()
        .map(|e| {
            let e: String = e.chars().filter(|c| !c.is_whitespace()).collect();
            if e.is_empty() {
                Err(perr(line, "empty element in set"))
            } else {
                Ok(e)
            }
        })
        .collect()
}

fn ident(tok: Option<&str>, line: usize, what: &str) -> Result<String> {
    match tok {
        Some(t) if is_ident(t) => Ok(t.to_string()),
        Some(t) => Err(perr(line, format!("expected {what}, got `{t}`"))),
        None => Err(perr(line, format!("expected {what}"))),
    }
}

fn expect(tok: Option<&str>, want: &str, line: usize) -> Result<()> {
    match tok {
        Some(t) if t == want => Ok(()),
        Some(t) => Err(perr(line, format!("expected `{want}`, got `{t}`"))),
        None => Err(perr(line, format!("expected `{want}`"))),
    }
}

/// Splits `head = body` and returns (head tokens, body).
fn split_def(s: &str, line: usize) -> Result<(Vec<&str>, &str)> {
    let (head, body) = s.split_once('=').ok_or_else(|| perr(line, "expected `=`"))?;
    Ok((head.split_whitespace().collect(), body.trim()))
}

/// Body = keyword, optional plain words, optional trailing `{...}`.
fn split_body(body: &str) -> (Vec<&str>, Option<&str>) {
    match body.find('{') {
        Some(i) => (body[..i].split_whitespace().collect(), Some(&body[i..])),
        None => (body.split_whitespace().collect(), None),
    }
}

fn no_extra(words: &[&str], n: usize, line: usize) -> Result<()> {
    if words.len() > n {
        Err(perr(line, format!("unexpected `{}`", words[n])))
    } else {
        Ok(())
    }
}

fn parse_literal(s: &str, line: usize) -> Result<Literal> {
    let t = s.trim();
    Ok(match t {
        "true" => Literal::Bool(true),
        "false" => Literal::Bool(false),
        _ if t.starts_with('{') => Literal::Set(parse_braced(t, line)?.into_iter().collect()),
        _ if !t.is_empty() && !t.contains(char::is_whitespace) => Literal::Word(t.to_string()),
        _ => return Err(perr(line, format!("bad literal `{t}`"))),
    })
}

fn parse_stmt(s: &str, no: usize) -> Result<Stmt> {
    let keyword = s.split_whitespace().next().unwrap_or_default();
    match keyword {
        "ring" => {
            let (head, body) = split_def(s, no)?;
            let name = ident(head.get(1).copied(), no, "ring name")?;
            no_extra(&head, 2, no)?;
            let (words, set) = split_body(body);
            let def: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            let ok = match def.first().map(String::as_str) {
                Some("zmod") => def.len() == 2 && set.is_none(),
                Some("product") | Some("trivext") => def.len() == 3 && set.is_none(),
                Some("quotient") => def.len() == 2 && set.is_some(),
                _ => false,
            };
            if !ok {
                return Err(perr(no, format!("bad ring definition `{body}`")));
            }
            let set = set.map(|t| parse_braced(t, no)).transpose()?;
            Ok(Stmt::Ring { name, def, set })
        }
        "mset" => {
            let (head, body) = split_def(s, no)?;
            let name = ident(head.get(1).copied(), no, "mset name")?;
            expect(head.get(2).copied(), "over", no)?;
            let ring = ident(head.get(3).copied(), no, "ring name")?;
            no_extra(&head, 4, no)?;
            let (words, set) = split_body(body);
            let kind = words.first().copied().unwrap_or_default().to_string();
            let needs_set = matches!(kind.as_str(), "closure" | "complement_prime");
            if !matches!(kind.as_str(), "closure" | "complement_prime" | "units" | "trivial")
                || words.len() != 1
                || needs_set != set.is_some()
            {
                return Err(perr(no, format!("bad mset definition `{body}`")));
            }
            let set = set.map(|t| parse_braced(t, no)).transpose()?;
            Ok(Stmt::Mset { name, ring, kind, set })
        }
        "module" => {
            let (head, body) = split_def(s, no)?;
            let name = ident(head.get(1).copied(), no, "module name")?;
            let words: Vec<&str> = body.split_whitespace().collect();
            let kind = words.first().copied().unwrap_or_default().to_string();
            if head.get(2) == Some(&"over") {
                let ring = ident(head.get(3).copied(), no, "ring name")?;
                no_extra(&head, 4, no)?;
                if !matches!(kind.as_str(), "regular" | "zero") || words.len() != 1 {
                    return Err(perr(no, format!("bad module definition `{body}`")));
                }
                return Ok(Stmt::ModuleOver { name, ring, kind });
            }
            no_extra(&head, 2, no)?;
            let args = words[1.min(words.len())..]
                .iter()
                .map(|w| ident(Some(w), no, "name"))
                .collect::<Result<Vec<_>>>()?;
            let ok = match kind.as_str() {
                "dsum" => !args.is_empty(),
                "quot" => args.len() == 2,
                "sub" => args.len() == 1,
                _ => false,
            };
            if !ok {
                return Err(perr(no, format!("bad module definition `{body}`")));
            }
            Ok(Stmt::Module { name, kind, args })
        }
        "sub" => {
            let (head, body) = split_def(s, no)?;
            let name = ident(head.get(1).copied(), no, "submodule name")?;
            expect(head.get(2).copied(), "of", no)?;
            let of = ident(head.get(3).copied(), no, "module name")?;
            no_extra(&head, 4, no)?;
            let (words, set) = split_body(body);
            let kind = words.first().copied().unwrap_or_default().to_string();
            let arg = words.get(1).map(|w| ident(Some(w), no, "mset name")).transpose()?;
            let ok = match kind.as_str() {
                "gens" => words.len() == 1 && set.is_some(),
                "torsion" => words.len() == 2 && set.is_none(),
                "whole" | "zero" => words.len() == 1 && set.is_none(),
                _ => false,
            };
            if !ok {
                return Err(perr(no, format!("bad submodule definition `{body}`")));
            }
            let set = set.map(|t| parse_braced(t, no)).transpose()?;
            Ok(Stmt::Sub { name, of, kind, arg, set })
        }
        "hom" => {
            let (head, body) = split_def(s, no)?;
            let head = head.join(" ");
            let (name, sig) = head["hom".len()..]
                .split_once(':')
                .ok_or_else(|| perr(no, "expected `hom NAME : A -> B`"))?;
            let name = ident(Some(name.trim()), no, "map name")?;
            let (src, dst) = sig.split_once("->").ok_or_else(|| perr(no, "expected `->`"))?;
            let src = ident(Some(src.trim()), no, "source module")?;
            let dst = ident(Some(dst.trim()), no, "target module")?;
            let (words, set) = split_body(body);
            let kind = words.first().copied().unwrap_or_default().to_string();
            let arg = words.get(1).map(|w| w.to_string());
            let ok = match kind.as_str() {
                "images" => words.len() == 1 && set.is_some(),
                "scalar" => words.len() == 2 && set.is_none(),
                "identity" | "zero" | "inclusion" | "natural" => words.len() == 1 && set.is_none(),
                _ => false,
            };
            if !ok {
                return Err(perr(no, format!("bad map definition `{body}`")));
            }
            let pairs = match set {
                Some(t) => parse_braced(t, no)?
                    .into_iter()
                    .map(|p| match split_top(&p, ':').as_slice() {
                        [a, b] if !a.is_empty() && !b.is_empty() => Ok((a.clone(), b.clone())),
                        _ => Err(perr(no, format!("expected `x: y`, got `{p}`"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            Ok(Stmt::Hom { name, src, dst, kind, arg, pairs })
        }
        "assert" => {
            let rest = s["assert".len()..].trim();
            let (call, negate, expected) = if let Some((c, e)) = rest.split_once("!=") {
                (c, true, parse_literal(e, no)?)
            } else if let Some((c, e)) = rest.split_once("==") {
                (c, false, parse_literal(e, no)?)
            } else {
                (rest, false, Literal::Bool(true))
            };
            let call = call.trim();
            let open = call.find('(').ok_or_else(|| perr(no, "expected `pred(args)`"))?;
            let func = ident(Some(call[..open].trim()), no, "predicate")?;
            let inner = call[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| perr(no, "missing `)`"))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                split_top(inner, ',')
                    .iter()
                    .map(|a| ident(Some(a.trim()), no, "argument name"))
                    .collect::<Result<Vec<_>>>()?
            };
            Ok(Stmt::Assert { func, args, negate, expected })
        }
        other => Err(perr(no, format!("unknown statement `{other}`"))),
    }
}

impl Program {
    pub fn parse(src: &str) -> Result<Program> {
        let mut lines = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let no = i + 1;
            let text = raw.split('#').next().unwrap_or_default().trim();
            if text.is_empty() {
                continue;
            }
            lines.push(Line {
                no,
                text: text.to_string(),
                stmt: parse_stmt(text, no)?,
            });
        }
        Ok(Program { lines })
    }

    pub fn run(&self) -> Result<Session> {
        let mut env = Env::default();
        let mut results = Vec::new();
        for line in &self.lines {
            if let Stmt::Assert { func, args, negate, expected } = &line.stmt {
                results.push(assertion(&env, line, func, args, *negate, expected)?);
            } else {
                define(&mut env, line).map_err(|e| match e {
                    Error::ResourceExceeded { .. } | Error::Parse { .. } => e,
                    other => perr(line.no, other.to_string()),
                })?;
            }
        }
        Ok(Session { env, results })
    }
}

/// Parses and runs a program.
pub fn run_source(src: &str) -> Result<Session> {
    Program::parse(src)?.run()
}

fn ring_elems(r: &FiniteRing, names: &[String], line: usize) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| r.find(n).ok_or_else(|| perr(line, format!("`{n}` is not an element of {}", r.label()))))
        .collect()
}

fn module_elems(m: &FiniteModule, names: &[String], line: usize) -> Result<Vec<usize>> {
    names.iter().map(|n| module_elem(m, n, line)).collect()
}

fn module_elem(m: &FiniteModule, n: &str, line: usize) -> Result<usize> {
    m.find(n)
        .ok_or_else(|| perr(line, format!("`{n}` is not an element of {}", m.label())))
}

fn define(env: &mut Env, line: &Line) -> Result<()> {
    let no = line.no;
    let (name, value) = match &line.stmt {
        Stmt::Ring { name, def, set } => {
            let r = match def[0].as_str() {
                "zmod" => {
                    let n: usize = def[1].parse().map_err(|_| perr(no, format!("bad modulus `{}`", def[1])))?;
                    if n > Caps::global().max_ring {
                        return Err(Error::resource("ring size", n as u128, Caps::global().max_ring as u128));
                    }
                    FiniteRing::zmod(n)?
                }
                "product" => FiniteRing::product(&env.ring(&def[1])?, &env.ring(&def[2])?)?,
                "trivext" => {
                    let base = env.ring(&def[1])?;
                    let m = env.module(&def[2])?;
                    if !crate::ring::same_ring(m.ring(), &base) {
                        return Err(perr(no, format!("`{}` is not a module over `{}`", def[2], def[1])));
                    }
                    FiniteRing::trivial_extension(&m)?
                }
                _ => {
                    let base = env.ring(&def[1])?;
                    let gens = ring_elems(&base, set.as_deref().unwrap_or_default(), no)?;
                    FiniteRing::quotient(&base, &Ideal::generated(&base, &gens)?)?.ring
                }
            };
            (name, Value::Ring(r))
        }
        Stmt::Mset { name, ring, kind, set } => {
            let r = env.ring(ring)?;
            let s = match kind.as_str() {
                "closure" => MultiplicativeSet::closure(&r, &ring_elems(&r, set.as_deref().unwrap_or_default(), no)?)?,
                "complement_prime" => {
                    let gens = ring_elems(&r, set.as_deref().unwrap_or_default(), no)?;
                    MultiplicativeSet::complement_of_prime(&r, &Ideal::generated(&r, &gens)?)?
                }
                "units" => MultiplicativeSet::units(&r),
                _ => MultiplicativeSet::trivial(&r),
            };
            (name, Value::Mset(s))
        }
        Stmt::ModuleOver { name, ring, kind } => {
            let r = env.ring(ring)?;
            let m = if kind == "regular" {
                FiniteModule::regular(&r)
            } else {
                FiniteModule::zero_module(&r)
            };
            (name, Value::Module(m))
        }
        Stmt::Module { name, kind, args } => {
            let m = match kind.as_str() {
                "dsum" => {
                    let parts = args.iter().map(|a| env.module(a)).collect::<Result<Vec<_>>>()?;
                    FiniteModule::direct_sum(&parts)?.module
                }
                "quot" => {
                    let base = env.module(&args[0])?;
                    let k = env.sub(&args[1])?;
                    if !crate::module::same_module(k.parent(), &base) {
                        return Err(perr(no, format!("`{}` is not a submodule of `{}`", args[1], args[0])));
                    }
                    let q = base.quotient(&k)?;
                    env.canonical.insert(name.clone(), q.eta);
                    q.module
                }
                _ => {
                    let (m, inc) = env.sub(&args[0])?.as_module()?;
                    env.canonical.insert(name.clone(), inc);
                    m
                }
            };
            (name, Value::Module(m))
        }
        Stmt::Sub { name, of, kind, arg, set } => {
            let m = env.module(of)?;
            let k = match kind.as_str() {
                "gens" => m.span(&module_elems(&m, set.as_deref().unwrap_or_default(), no)?)?,
                "torsion" => s_torsion_submodule(&m, &env.mset(arg.as_deref().unwrap_or_default())?)?,
                "whole" => m.whole(),
                _ => m.zero_sub(),
            };
            (name, Value::Sub(k))
        }
        Stmt::Hom { name, src, dst, kind, arg, pairs } => {
            let a = env.module(src)?;
            let b = env.module(dst)?;
            let f = match kind.as_str() {
                "images" => {
                    let imgs = pairs
                        .iter()
                        .map(|(x, y)| Ok((module_elem(&a, x, no)?, module_elem(&b, y, no)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Homomorphism::from_generator_images(&a, &b, &imgs)?
                }
                "identity" | "scalar" => {
                    if !crate::module::same_module(&a, &b) {
                        return Err(perr(no, format!("`{kind}` needs source = target")));
                    }
                    if kind == "identity" {
                        Homomorphism::identity(&a)
                    } else {
                        let r = ring_elems(a.ring(), &[arg.clone().unwrap_or_default()], no)?[0];
                        Homomorphism::scalar(&a, r)
                    }
                }
                "zero" => Homomorphism::zero(&a, &b),
                "inclusion" => canonical(env, src, &a, &b, no)?,
                _ => canonical(env, dst, &a, &b, no)?,
            };
            (name, Value::Hom(f))
        }
        Stmt::Assert { .. } => unreachable!("assertions are evaluated separately"),
    };
    env.define(name, value).map_err(|m| perr(no, m))
}

fn canonical(env: &Env, key: &str, a: &Arc<FiniteModule>, b: &Arc<FiniteModule>, no: usize) -> Result<Homomorphism> {
    let f = env
        .canonical
        .get(key)
        .ok_or_else(|| perr(no, format!("`{key}` was not defined by `sub` or `quot`")))?;
    if crate::module::same_module(f.source(), a) && crate::module::same_module(f.target(), b) {
        Ok(f.clone())
    } else {
        Err(perr(no, "source and target do not match the canonical map"))
    }
}

fn names_of(k: &Submodule) -> BTreeSet<String> {
    k.members().iter().map(|x| k.parent().name(x).to_string()).collect()
}

fn arity(func: &str, args: &[String], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::domain(format!("`{func}` takes {n} arguments, got {}", args.len())))
    }
}

fn evaluate(env: &Env, func: &str, args: &[String]) -> Result<Literal> {
    let a = |i: usize| args[i].as_str();
    let cap = Caps::global().max_homs;
    let b = Literal::Bool;
    let two = |n| arity(func, args, n);
    Ok(match func {
        "u_s_torsion" => {
            two(2)?;
            b(is_u_s_torsion(&env.sub(a(0))?, &env.mset(a(1))?)?.holds)
        }
        "u_s_essential" => {
            two(2)?;
            let (k, s) = (env.sub(a(0))?, env.mset(a(1))?);
            let fast = is_u_s_essential_fast(&k, &s)?;
            match is_u_s_essential_oracle(&k, &s) {
                Ok(o) if o.verdict != fast.verdict => {
                    return Err(Error::Internal(format!("deciders disagree on `{}`", a(0))))
                }
                Err(e) if !e.is_resource() => return Err(e),
                _ => {}
            }
            b(fast.verdict)
        }
        "essential" => {
            two(1)?;
            b(is_essential(&env.sub(a(0))?)?.verdict)
        }
        "counterexample" => {
            two(2)?;
            let v = is_u_s_essential_fast(&env.sub(a(0))?, &env.mset(a(1))?)?;
            Literal::Set(v.counterexample.map(|l| names_of(&l)).unwrap_or_default())
        }
        "witness_s" => {
            two(2)?;
            let (k, s) = (env.sub(a(0))?, env.mset(a(1))?);
            let v = is_u_s_essential_fast(&k, &s)?;
            let w = if v.verdict { v.witness_s2 } else { v.witness_s1 };
            Literal::Word(w.map(|x| s.ring().name(x).to_string()).unwrap_or_else(|| "none".into()))
        }
        "s_torsion" => {
            two(2)?;
            Literal::Set(names_of(&s_torsion_submodule(&env.module(a(0))?, &env.mset(a(1))?)?))
        }
        "kernel" | "image" => {
            two(1)?;
            let f = env.hom(a(0))?;
            let k = if func == "kernel" { f.kernel() } else { f.image() };
            Literal::Set(names_of(&k))
        }
        "size" => {
            two(1)?;
            let n = match env.get(a(0)) {
                Some(Value::Ring(r)) => r.size(),
                Some(Value::Mset(s)) => s.len(),
                Some(Value::Module(m)) => m.size(),
                Some(Value::Sub(k)) => k.len(),
                _ => return Err(Error::domain(format!("`{}` has no size", a(0)))),
            };
            Literal::Word(n.to_string())
        }
        "u_s_mono" | "u_s_epi" | "u_s_iso" | "u_s_split" | "u_s_preenvelope" | "u_s_envelope"
        | "u_s_essential_mono" => {
            two(2)?;
            let (f, s) = (env.hom(a(0))?, env.mset(a(1))?);
            b(match func {
                "u_s_mono" => is_u_s_mono(&f, &s)?.holds,
                "u_s_epi" => is_u_s_epi(&f, &s)?.holds,
                "u_s_iso" => is_u_s_iso(&f, &s)?.holds(),
                "u_s_split" => is_u_s_mono(&f, &s)?.holds && is_u_s_split(&f, &s, cap)?.is_some(),
                "u_s_preenvelope" => check_u_s_preenvelope(&f, &s)? == Preenvelope::Yes,
                "u_s_envelope" => {
                    let c = check_u_s_envelope(&f, &s)?;
                    c.is_envelope() && c.preenvelope == Preenvelope::Yes
                }
                _ => is_u_s_mono(&f, &s)?.holds && is_u_s_essential_mono(&f, &s)?,
            })
        }
        "u_s_exact" => {
            two(3)?;
            b(is_u_s_exact(&env.hom(a(0))?, &env.hom(a(1))?, &env.mset(a(2))?)?.is_some())
        }
        "u_s_iso_exists" => {
            two(3)?;
            let (x, y, s) = (env.module(a(0))?, env.module(a(1))?, env.mset(a(2))?);
            b(find_u_s_isomorphism(&x, &y, &s, cap)?.found().is_some())
        }
        "injective" => {
            two(1)?;
            b(is_injective_baer(&env.module(a(0))?)?.passes())
        }
        "u_s_injective" => {
            two(2)?;
            b(certify_u_s_injective(&env.module(a(0))?, &env.mset(a(1))?)?.passes())
        }
        "prime" => {
            two(1)?;
            b(env.module(a(0))?.is_prime()?)
        }
        "regular" => {
            two(1)?;
            b(env.mset(a(0))?.is_regular())
        }
        "u_s_noetherian" => {
            two(2)?;
            b(u_s_noetherian(&env.ring(a(0))?, &env.mset(a(1))?).is_some())
        }
        "essential_counterexample" => {
            two(1)?;
            let v = is_essential(&env.sub(a(0))?)?;
            Literal::Set(v.counterexample.map(|l| names_of(&l)).unwrap_or_default())
        }
        other => return Err(Error::domain(format!("unknown predicate `{other}`"))),
    })
}

fn assertion(
    env: &Env,
    line: &Line,
    func: &str,
    args: &[String],
    negate: bool,
    expected: &Literal,
) -> Result<AssertionResult> {
    let (status, actual) = match evaluate(env, func, args) {
        Ok(v) => {
            let eq = match (&v, expected) {
                (Literal::Set(x), Literal::Set(y)) => x == y,
                (x, y) => x.to_string() == y.to_string(),
            };
            let status = if eq != negate { Status::Pass } else { Status::Fail };
            (status, v.to_string())
        }
        Err(e) if e.is_resource() => (Status::SkippedResource, e.to_string()),
        Err(e @ Error::Internal(_)) => return Err(e),
        Err(e) => return Err(perr(line.no, e.to_string())),
    };
    Ok(AssertionResult {
        line: line.no,
        text: line.text.clone(),
        status,
        actual,
    })
}
