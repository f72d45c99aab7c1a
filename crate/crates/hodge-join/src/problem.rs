//! Problem files: `[ring]`, `[hypersurface]`, `[hypersurface NAME]`, `[cycle NAME]`
//! and `[task]` blocks of `key = value` lines. `#` starts a comment.
//!
//! ```text
//! [ring]
//! nvars = 4
//! d = 3
//!
//! [hypersurface]
//! F = x0^3 + x1^3 + x2^3 + x3^3
//!
//! [cycle L]
//! kind = linear
//! c = z(6), z(6)
//!
//! [task]
//! op = hilbert_function
//! cycle = L
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cycles::{
    combination_poly, fake_point_poly, join_hypersurface, join_poly, linear_cycle_poly, point_poly,
    CycleSpec,
};
use crate::error::{Error, Result};
use crate::field::{CycloNumber, Rational};
use crate::jacobian::HypersurfaceSpec;
use crate::poly::{MonomialOrder, Polynomial};
use crate::text::{parse_number_at, parse_polynomial_at, parse_rational_at};

/// A `key = value` entry with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    pub key_column: usize,
    /// Zero-based column where the value starts.
    pub value_column0: usize,
}

impl Entry {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse_at(self.line, self.value_column0 + 1, message)
    }

    /// Comma-separated items with their zero-based start columns.
    fn items(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in self.value.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let item = piece.trim();
            if !item.is_empty() {
                out.push((item, self.value_column0 + start + lead));
            }
            start += piece.len() + 1;
        }
        out
    }

    fn polynomial(&self, nvars: Option<usize>) -> Result<Polynomial> {
        parse_polynomial_at(&self.value, nvars, self.line, self.value_column0)
    }

    fn polynomials(&self, nvars: Option<usize>) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        let mut start = 0;
        for piece in self.value.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            if !piece.trim().is_empty() {
                out.push(parse_polynomial_at(
                    piece.trim(),
                    nvars,
                    self.line,
                    self.value_column0 + start + lead,
                )?);
            }
            start += piece.len() + 1;
        }
        Ok(out)
    }

    fn numbers(&self) -> Result<Vec<CycloNumber>> {
        self.items()
            .into_iter()
            .map(|(s, col)| parse_number_at(s, self.line, col))
            .collect()
    }

    fn rationals(&self) -> Result<Vec<Rational>> {
        self.items()
            .into_iter()
            .map(|(s, col)| parse_rational_at(s, self.line, col))
            .collect()
    }

    fn rational(&self) -> Result<Rational> {
        parse_rational_at(&self.value, self.line, self.value_column0)
    }

    fn unsigned(&self) -> Result<u32> {
        self.value
            .parse()
            .map_err(|_| self.error(format!("expected a non-negative integer, found `{}`", self.value)))
    }

    fn names(&self) -> Vec<String> {
        self.items().into_iter().map(|(s, _)| s.to_string()).collect()
    }
}

/// A bracketed block with its entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: String,
    pub name: Option<String>,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Block {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str) -> Result<&Entry> {
        self.get(key).ok_or_else(|| {
            Error::parse_at(self.line, 1, format!("[{}] block is missing `{key}`", self.kind))
        })
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for e in &self.entries {
            if !allowed.contains(&e.key.as_str()) {
                return Err(Error::parse_at(
                    e.line,
                    e.key_column,
                    format!("unknown key `{}` in [{}] block", e.key, self.kind),
                ));
            }
        }
        Ok(())
    }
}

/// Splits the source into blocks.
pub fn parse_blocks(src: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::parse_at(line, indent + 1, "unterminated block header"))?;
            let mut words = inner.split_whitespace();
            let kind = words
                .next()
                .ok_or_else(|| Error::parse_at(line, indent + 1, "empty block header"))?
                .to_string();
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(Error::parse_at(line, indent + 1, "block header has extra words"));
            }
            if !["ring", "hypersurface", "cycle", "task"].contains(&kind.as_str()) {
                return Err(Error::parse_at(line, indent + 2, format!("unknown block `{kind}`")));
            }
            blocks.push(Block {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let eq = content
            .find('=')
            .ok_or_else(|| Error::parse_at(line, indent + 1, "expected `key = value`"))?;
        let key = content[..eq].trim().to_string();
        if key.is_empty() {
            return Err(Error::parse_at(line, indent + 1, "missing key"));
        }
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let entry = Entry {
            key,
            value: after.trim().to_string(),
            line,
            key_column: indent + 1,
            value_column0: eq + 1 + lead,
        };
        let block = blocks
            .last_mut()
            .ok_or_else(|| Error::parse_at(line, indent + 1, "entry outside of a block"))?;
        if block.get(&entry.key).is_some() {
            return Err(Error::parse_at(
                line,
                indent + 1,
                format!("duplicate key `{}`", entry.key),
            ));
        }
        block.entries.push(entry);
    }
    Ok(blocks)
}

/// A cycle together with the hypersurface it lives on.
#[derive(Clone, Debug)]
pub struct CycleEntry {
    pub cycle: CycleSpec,
    pub on: Arc<HypersurfaceSpec>,
    /// For joins: the hypersurfaces of the two factors.
    pub factors: Option<(Arc<HypersurfaceSpec>, Arc<HypersurfaceSpec>)>,
}

/// One `[task]` block: `op` plus its parameters.
#[derive(Clone, Debug)]
pub struct Task {
    pub index: usize,
    pub line: usize,
    pub op: String,
    pub params: BTreeMap<String, Entry>,
}

impl Task {
    pub fn param(&self, key: &str) -> Result<&Entry> {
        self.params.get(key).ok_or_else(|| {
            Error::parse_at(self.line, 1, format!("task `{}` is missing `{key}`", self.op))
        })
    }

    pub fn echo(&self) -> BTreeMap<String, String> {
        self.params
            .iter()
            .map(|(k, e)| (k.clone(), e.value.clone()))
            .collect()
    }
}

/// A parsed and resolved problem file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub nvars: usize,
    pub d: u32,
    pub order: MonomialOrder,
    pub hypersurface: Arc<HypersurfaceSpec>,
    pub hypersurfaces: BTreeMap<String, Arc<HypersurfaceSpec>>,
    pub cycles: BTreeMap<String, CycleEntry>,
    pub tasks: Vec<Task>,
}

/// Task operations and their parameters.
pub const TASK_OPS: &[(&str, &[&str])] = &[
    ("smoothness_check", &["on"]),
    ("jacobian_quotient_dim", &["on", "degree"]),
    ("hessian_det", &["on"]),
    ("ideal_piece", &["on", "gens", "degree"]),
    ("membership", &["on", "gens", "poly"]),
    ("hilbert_function", &["cycle"]),
    ("colon_piece", &["cycle", "degree"]),
    ("colon_contains", &["cycle", "poly"]),
    ("is_artinian_gorenstein", &["cycle"]),
    ("ideal_equal", &["cycle", "other"]),
    ("is_fake_linear", &["cycle"]),
    ("express_in_point_basis", &["cycle", "roots"]),
    ("verify_tensor_decomposition", &["cycle"]),
    ("qff_pair", &["cycle", "g", "h"]),
    ("qff_vanishes_on_degree", &["cycle", "degree"]),
    ("theorem4_witness", &["d", "alpha0", "r", "rcheck"]),
    ("theorem6_check", &["factors", "c"]),
];

const CYCLE_KEYS: &[(&str, &[&str])] = &[
    ("raw", &["kind", "on", "P"]),
    ("linear", &["kind", "on", "c"]),
    ("point", &["kind", "on", "r"]),
    ("fake_point", &["kind", "on", "c"]),
    ("join", &["kind", "left", "right"]),
    ("combination", &["kind", "parts"]),
];

impl Problem {
    pub fn parse(src: &str) -> Result<Problem> {
        let blocks = parse_blocks(src)?;
        let ring = blocks
            .iter()
            .find(|b| b.kind == "ring")
            .ok_or_else(|| Error::parse_at(1, 1, "missing [ring] block"))?;
        if blocks.iter().filter(|b| b.kind == "ring").count() > 1 {
            return Err(Error::parse_at(ring.line, 1, "more than one [ring] block"));
        }
        ring.check_keys(&["nvars", "d", "order"])?;
        let nvars = ring.require("nvars")?.unsigned()? as usize;
        let d = ring.require("d")?.unsigned()?;
        let order = match ring.get("order") {
            Some(e) => e.value.parse().map_err(|_| e.error(format!("unknown monomial order `{}`", e.value)))?,
            None => MonomialOrder::default(),
        };

        let mut main = None;
        let mut hypersurfaces = BTreeMap::new();
        for b in blocks.iter().filter(|b| b.kind == "hypersurface") {
            b.check_keys(&["F", "nvars"])?;
            let entry = b.require("F")?;
            let local_nvars = match (&b.name, b.get("nvars")) {
                (None, Some(e)) => return Err(Error::parse_at(e.line, e.key_column, "the ambient hypersurface takes nvars from [ring]")),
                (None, None) => Some(nvars),
                (Some(_), Some(e)) => Some(e.unsigned()? as usize),
                (Some(_), None) => None,
            };
            let f = entry.polynomial(local_nvars)?;
            if f.degree() != Some(d) {
                return Err(entry.error(format!("expected a form of degree {d}")));
            }
            let spec = Arc::new(HypersurfaceSpec::with_order(f, order)?);
            match &b.name {
                None if main.is_some() => {
                    return Err(Error::parse_at(b.line, 1, "more than one ambient [hypersurface] block"))
                }
                None => main = Some(spec),
                Some(name) => {
                    if hypersurfaces.insert(name.clone(), spec).is_some() {
                        return Err(Error::parse_at(b.line, 1, format!("duplicate hypersurface `{name}`")));
                    }
                }
            }
        }
        let hypersurface = main.ok_or_else(|| Error::parse_at(1, 1, "missing [hypersurface] block"))?;

        let mut problem = Problem {
            nvars,
            d,
            order,
            hypersurface,
            hypersurfaces,
            cycles: BTreeMap::new(),
            tasks: Vec::new(),
        };
        for b in &blocks {
            match b.kind.as_str() {
                "cycle" => {
                    let name = b
                        .name
                        .clone()
                        .ok_or_else(|| Error::parse_at(b.line, 1, "[cycle] blocks need a name"))?;
                    let entry = problem.cycle_block(b)?;
                    if problem.cycles.insert(name.clone(), entry).is_some() {
                        return Err(Error::parse_at(b.line, 1, format!("duplicate cycle `{name}`")));
                    }
                }
                "task" => {
                    if b.name.is_some() {
                        return Err(Error::parse_at(b.line, 1, "[task] blocks are unnamed"));
                    }
                    let op = b.require("op")?;
                    let allowed = TASK_OPS
                        .iter()
                        .find(|(name, _)| *name == op.value)
                        .ok_or_else(|| op.error(format!("unknown task `{}`", op.value)))?
                        .1;
                    let mut keys = vec!["op"];
                    keys.extend_from_slice(allowed);
                    b.check_keys(&keys)?;
                    let params = b
                        .entries
                        .iter()
                        .filter(|e| e.key != "op")
                        .map(|e| (e.key.clone(), e.clone()))
                        .collect();
                    problem.tasks.push(Task {
                        index: problem.tasks.len(),
                        line: b.line,
                        op: op.value.clone(),
                        params,
                    });
                }
                _ => {}
            }
        }
        Ok(problem)
    }

    /// The hypersurface named by an `on` entry, or the ambient one.
    pub fn surface(&self, on: Option<&Entry>) -> Result<Arc<HypersurfaceSpec>> {
        match on {
            None => Ok(self.hypersurface.clone()),
            Some(e) => self
                .hypersurfaces
                .get(&e.value)
                .cloned()
                .ok_or_else(|| e.error(format!("unknown hypersurface `{}`", e.value))),
        }
    }

    pub fn cycle(&self, e: &Entry) -> Result<&CycleEntry> {
        self.cycles
            .get(&e.value)
            .ok_or_else(|| e.error(format!("unknown cycle `{}`", e.value)))
    }

    fn cycle_block(&self, b: &Block) -> Result<CycleEntry> {
        let kind = b.require("kind")?;
        let allowed = CYCLE_KEYS
            .iter()
            .find(|(k, _)| *k == kind.value)
            .ok_or_else(|| kind.error(format!("unknown cycle kind `{}`", kind.value)))?
            .1;
        b.check_keys(allowed)?;
        let at = |e: &Entry, err: Error| match err {
            Error::Parse { .. } => err,
            other => Error::Domain(format!("line {}: {other}", e.line)),
        };
        let on = self.surface(b.get("on"))?;
        let simple = |cycle: CycleSpec| CycleEntry {
            cycle,
            on: on.clone(),
            factors: None,
        };
        match kind.value.as_str() {
            "raw" => {
                let e = b.require("P")?;
                let p = e.polynomial(Some(on.nvars()))?;
                if p.degree() != Some(on.cycle_degree()) {
                    return Err(e.error(format!("expected a polynomial of degree {}", on.cycle_degree())));
                }
                Ok(simple(CycleSpec::raw(p, on.d())))
            }
            "linear" => {
                let e = b.require("c")?;
                let c = e.numbers()?;
                linear_cycle_poly(on.d(), on.n(), &c).map(simple).map_err(|err| at(e, err))
            }
            "point" => {
                let e = b.require("r")?;
                let r = parse_number_at(&e.value, e.line, e.value_column0)?;
                point_poly(&on, &r).map(simple).map_err(|err| at(e, err))
            }
            "fake_point" => {
                let e = b.require("c")?;
                fake_point_poly(&on, &e.rational()?).map(simple).map_err(|err| at(e, err))
            }
            "join" => {
                let l = self.cycle(b.require("left")?)?;
                let r_entry = b.require("right")?;
                let r = self.cycle(r_entry)?;
                let cycle = join_poly(&l.cycle, &r.cycle).map_err(|err| at(r_entry, err))?;
                let on = Arc::new(join_hypersurface(&l.on, &r.on).map_err(|err| at(r_entry, err))?);
                Ok(CycleEntry {
                    cycle,
                    on,
                    factors: Some((l.on.clone(), r.on.clone())),
                })
            }
            "combination" => {
                let e = b.require("parts")?;
                let mut parts = Vec::new();
                let mut surface: Option<Arc<HypersurfaceSpec>> = None;
                for (item, col) in e.items() {
                    let (coeff, name) = match item.rsplit_once('*') {
                        Some((c, n)) => (parse_rational_at(c.trim(), e.line, col)?, n.trim()),
                        None => (Rational::one(), item),
                    };
                    let entry = self.cycles.get(name).ok_or_else(|| {
                        Error::parse_at(e.line, col + 1, format!("unknown cycle `{name}`"))
                    })?;
                    match &surface {
                        Some(s) if s.f() != entry.on.f() => {
                            return Err(Error::parse_at(e.line, col + 1, "combined cycles live on different hypersurfaces"))
                        }
                        _ => surface = Some(entry.on.clone()),
                    }
                    parts.push((coeff, entry.cycle.clone()));
                }
                let on = surface.ok_or_else(|| e.error("empty combination"))?;
                let cycle = combination_poly(&on, &parts).map_err(|err| at(e, err))?;
                Ok(CycleEntry {
                    cycle,
                    on,
                    factors: None,
                })
            }
            _ => unreachable!(),
        }
    }
}

/// Polynomial list parameter (`;`-separated).
pub fn polynomials_param(e: &Entry, nvars: usize) -> Result<Vec<Polynomial>> {
    e.polynomials(Some(nvars))
}

pub fn polynomial_param(e: &Entry, nvars: usize) -> Result<Polynomial> {
    e.polynomial(Some(nvars))
}

pub fn unsigned_param(e: &Entry) -> Result<u32> {
    e.unsigned()
}

pub fn rational_param(e: &Entry) -> Result<Rational> {
    e.rational()
}

pub fn rationals_param(e: &Entry) -> Result<Vec<Rational>> {
    e.rationals()
}

pub fn numbers_param(e: &Entry) -> Result<Vec<CycloNumber>> {
    e.numbers()
}

pub fn names_param(e: &Entry) -> Vec<String> {
    e.names()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# linear cycle on the Fermat cubic surface
[ring]
nvars = 4
d = 3

[hypersurface]
F = x0^3 + x1^3 + x2^3 + x3^3

[hypersurface g]
F = x0^3 + x1^3

[cycle p]
kind = point
on = g
r = z(6)

[cycle L]
kind = linear
c = z(6), z(6)

[cycle J]
kind = join
left = p
right = p

[cycle C]
kind = combination
parts = 2*L, -1/2 * J

[task]
op = hilbert_function
cycle = L
";

    #[test]
    fn parses_sample() {
        let p = Problem::parse(SAMPLE).unwrap();
        assert_eq!((p.nvars, p.d), (4, 3));
        assert_eq!(p.cycles.len(), 4);
        assert_eq!(p.cycles["J"].on.nvars(), 4);
        assert!(p.cycles["J"].factors.is_some());
        assert_eq!(p.tasks.len(), 1);
        assert_eq!(p.tasks[0].op, "hilbert_function");
    }

    #[test]
    fn unknown_key_position() {
        let src = SAMPLE.replace("cycle = L", "cycle = L\n  colour = red");
        match Problem::parse(&src) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (33, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn polynomial_error_position() {
        let src = SAMPLE.replace("F = x0^3 + x1^3 + x2^3 + x3^3", "F = x0^3 + x1^3 + x2^3 + x3^");
        match Problem::parse(&src) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_smooth_rejected() {
        let src = SAMPLE.replace("F = x0^3 + x1^3 + x2^3 + x3^3", "F = x0^3 + x1^3 + x2^3");
        assert!(matches!(Problem::parse(&src), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn unknown_block_and_task() {
        assert!(matches!(Problem::parse("[rings]\n"), Err(Error::Parse { line: 1, .. })));
        let src = SAMPLE.replace("op = hilbert_function", "op = frobnicate");
        assert!(matches!(Problem::parse(&src), Err(Error::Parse { .. })));
    }

    #[test]
    fn root_mismatch_is_domain() {
        let src = SAMPLE.replace("r = z(6)", "r = 1");
        assert!(matches!(Problem::parse(&src), Err(Error::Domain(_))));
    }
}
