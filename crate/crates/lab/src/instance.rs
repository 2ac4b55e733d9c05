//! The instance file: one JSON document naming an algebra, modules and
//! conflations.
//!
//! Vertices are numbered from 1 in files and from 0 in memory. Matrices are
//! lists of rows; a map `M_i -> M_j` is `dim M_j` rows of `dim M_i` entries.
//! Negative entries are reduced mod p; entries at or above p are rejected.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use schanuel_core::exactlin::{FpMatrix, Prime};
use schanuel_core::quivalg::{
    indecomposable_injective, indecomposable_projective, simple_module, Arrow, BoundQuiverAlgebra, Quiver, Relation,
    RelationSet,
};
use schanuel_core::repcat::{RepMorphism, Representation};
use schanuel_core::Conflation;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

type RawMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    field_p: u64,
    quiver: RawQuiver,
    #[serde(default)]
    relations: Vec<Vec<RawTerm>>,
    max_path_length: usize,
    #[serde(default)]
    modules: Vec<RawModule>,
    #[serde(default)]
    conflations: Vec<RawConflation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: usize,
    #[serde(default)]
    arrows: Vec<RawArrow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    label: String,
    source: usize,
    target: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: i64,
    path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    dims: Vec<usize>,
    #[serde(default)]
    arrow_maps: IndexMap<String, RawMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConflation {
    name: String,
    a: String,
    b: String,
    c: String,
    x: Vec<RawMatrix>,
    y: Vec<RawMatrix>,
}

/// One problem found while reading an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    /// 1-based line, when known.
    pub line: Option<usize>,
    /// Dotted path to the offending field.
    pub field: String,
    pub message: String,
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("parse error: {0}")]
    Parse(Located),
    #[error("{} validation error(s):\n{}", .0.len(), render_list(.0))]
    Validation(Vec<Located>),
}

fn render_list(errs: &[Located]) -> String {
    errs.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

impl InstanceError {
    pub fn errors(&self) -> Vec<&Located> {
        match self {
            InstanceError::Parse(l) => vec![l],
            InstanceError::Validation(v) => v.iter().collect(),
        }
    }
}

/// A validated instance.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub algebra: Arc<BoundQuiverAlgebra>,
    pub modules: Vec<(String, Representation)>,
    pub conflations: Vec<NamedConflation>,
}

#[derive(Debug, Clone)]
pub struct NamedConflation {
    pub name: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub conflation: Conflation,
}

impl InstanceFile {
    pub fn module(&self, name: &str) -> Option<&Representation> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// A named module, falling back to `S<k>`, `P<k>` and `I<k>` for the
    /// simple, projective and injective at vertex `k`.
    pub fn resolve_module(&self, name: &str) -> Option<Representation> {
        if let Some(m) = self.module(name) {
            return Some(m.clone());
        }
        let (kind, rest) = name.split_at_checked(1)?;
        let k: usize = rest.parse().ok()?;
        if k == 0 || k > self.algebra.vertex_count() {
            return None;
        }
        let build = match kind {
            "S" => simple_module,
            "P" => indecomposable_projective,
            "I" => indecomposable_injective,
            _ => return None,
        };
        build(&self.algebra, k - 1).ok()
    }

    pub fn conflation(&self, name: &str) -> Option<&NamedConflation> {
        self.conflations.iter().find(|c| c.name == name)
    }

    /// Canonical text: fixed key order, relation terms sorted by path, all
    /// entries in `[0, p)`, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let alg = &self.algebra;
        let q = alg.quiver();
        let p = alg.prime().get() as i64;
        let label = |a: usize| q.arrows()[a].label.clone();
        let relations = alg
            .relations()
            .generators
            .iter()
            .map(|r| {
                let mut terms = r.terms.clone();
                terms.sort_by(|x, y| (x.1.len(), &x.1).cmp(&(y.1.len(), &y.1)));
                terms
                    .into_iter()
                    .map(|(c, path)| RawTerm { coeff: c.rem_euclid(p), path: path.into_iter().map(label).collect() })
                    .collect()
            })
            .collect();
        let raw = RawInstance {
            field_p: p as u64,
            quiver: RawQuiver {
                vertices: q.vertex_count(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| RawArrow { label: a.label.clone(), source: a.source + 1, target: a.target + 1 })
                    .collect(),
            },
            relations,
            max_path_length: alg.max_path_length(),
            modules: self
                .modules
                .iter()
                .map(|(name, m)| RawModule {
                    name: name.clone(),
                    dims: m.dims().to_vec(),
                    arrow_maps: q
                        .arrows()
                        .iter()
                        .zip(m.arrow_maps())
                        .map(|(a, mat)| (a.label.clone(), raw_matrix(mat)))
                        .collect(),
                })
                .collect(),
            conflations: self
                .conflations
                .iter()
                .map(|c| RawConflation {
                    name: c.name.clone(),
                    a: c.a.clone(),
                    b: c.b.clone(),
                    c: c.c.clone(),
                    x: c.conflation.x().vertex_maps().iter().map(raw_matrix).collect(),
                    y: c.conflation.y().vertex_maps().iter().map(raw_matrix).collect(),
                })
                .collect(),
        };
        let value = serde_json::to_value(&raw).expect("instance serializes");
        let mut out = String::new();
        write_value(&mut out, &value, 0, false);
        out.push('\n');
        out
    }

    /// SHA-256 of the canonical text, in hex.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_string().as_bytes()))
    }
}

fn raw_matrix(m: &FpMatrix) -> RawMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&v| v as i64).collect()).collect()
}

fn is_scalar(v: &serde_json::Value) -> bool {
    !matches!(v, serde_json::Value::Array(_) | serde_json::Value::Object(_))
}

fn is_flat(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Array(xs) => xs.iter().all(|x| is_scalar(x) || is_flat(x)),
        serde_json::Value::Object(_) => false,
        _ => true,
    }
}

/// Pretty printer keeping matrices, paths and records inside lists on one
/// line.
fn write_value(out: &mut String, v: &serde_json::Value, indent: usize, in_array: bool) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
        Value::Array(xs) if is_flat(v) => {
            out.push('[');
            for (k, x) in xs.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent, true);
            }
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (k, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1, true);
                out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m)
            if in_array
                && m.values()
                    .all(|x| is_scalar(x) || (is_flat(x) && x.as_array().is_some_and(|a| a.iter().all(is_scalar)))) =>
        {
            out.push('{');
            for (k, (key, x)) in m.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                write_value(out, x, indent, false);
            }
            out.push('}');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                write_value(out, x, indent + 1, false);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

/// Collects located problems; lines come from the first occurrence of an
/// object's name in the source text.
struct Validator<'a> {
    text: &'a str,
    errors: Vec<Located>,
}

impl Validator<'_> {
    fn line_of_name(&self, name: &str) -> Option<usize> {
        let needle = serde_json::to_string(name).ok()?;
        self.text.lines().position(|l| l.contains("\"name\"") && l.contains(&needle)).map(|k| k + 1)
    }

    fn line_of_key(&self, key: &str) -> Option<usize> {
        let needle = format!("\"{key}\"");
        self.text.lines().position(|l| l.contains(&needle)).map(|k| k + 1)
    }

    fn push(&mut self, line: Option<usize>, field: impl Into<String>, message: impl Into<String>) {
        self.errors.push(Located { line, field: field.into(), message: message.into() });
    }

    /// Entries reduced mod p; `None` after recording any problem.
    fn matrix(
        &mut self,
        line: Option<usize>,
        field: &str,
        raw: &RawMatrix,
        rows: usize,
        cols: usize,
        p: Prime,
    ) -> Option<FpMatrix> {
        if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
            let got_cols = raw.first().map_or(0, |r| r.len());
            self.push(line, field, format!("expected a {rows}x{cols} matrix, got {}x{got_cols}", raw.len()));
            return None;
        }
        let mut ok = true;
        for (r, row) in raw.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= p.get() as i64 {
                    self.push(line, format!("{field}[{r}][{c}]"), format!("entry {v} is not below p = {p}"));
                    ok = false;
                }
            }
        }
        if !ok {
            return None;
        }
        let flat: Vec<i64> = raw.iter().flatten().copied().collect();
        FpMatrix::from_entries(p, rows, cols, &flat).ok()
    }

    fn fail<T>(self) -> Result<T, InstanceError> {
        Err(InstanceError::Validation(self.errors))
    }

    fn finish<T>(self, value: T) -> Result<T, InstanceError> {
        if self.errors.is_empty() {
            Ok(value)
        } else {
            Err(InstanceError::Validation(self.errors))
        }
    }
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| {
        InstanceError::Parse(Located {
            line: Some(e.line()),
            field: format!("column {}", e.column()),
            message: e.to_string(),
        })
    })?;
    let mut v = Validator { text, errors: Vec::new() };

    let p = match Prime::new(raw.field_p) {
        Ok(p) => p,
        Err(e) => {
            v.push(v.line_of_key("field_p"), "field_p", e.to_string());
            return v.fail();
        }
    };

    let n = raw.quiver.vertices;
    if n == 0 {
        v.push(v.line_of_key("vertices"), "quiver.vertices", "a quiver needs at least one vertex");
    }
    let mut arrows = Vec::new();
    for (k, a) in raw.quiver.arrows.iter().enumerate() {
        let field = format!("quiver.arrows[{k}]");
        let line = v.line_of_key("arrows").map(|l| l + 1 + k);
        if a.source == 0 || a.source > n || a.target == 0 || a.target > n {
            v.push(line, field.clone(), format!("endpoints must lie in 1..={n}"));
        }
        if a.label.is_empty() {
            v.push(line, field.clone(), "empty arrow label");
        }
        if raw.quiver.arrows[..k].iter().any(|b| b.label == a.label) {
            v.push(line, field, format!("duplicate arrow label `{}`", a.label));
        }
        arrows.push(Arrow {
            source: a.source.saturating_sub(1),
            target: a.target.saturating_sub(1),
            label: a.label.clone(),
        });
    }
    if !v.errors.is_empty() {
        return v.fail();
    }
    let quiver = Quiver::new(n, arrows).expect("validated quiver");

    let mut rels = Vec::new();
    for (r, terms) in raw.relations.iter().enumerate() {
        let field = format!("relations[{r}]");
        let line = v.line_of_key("relations").map(|l| l + 1 + r);
        if terms.is_empty() {
            v.push(line, field.clone(), "empty relation");
            continue;
        }
        let mut out = Vec::new();
        let mut ends = None;
        for (t, term) in terms.iter().enumerate() {
            let tfield = format!("{field}[{t}].path");
            let mut idx = Vec::new();
            for l in &term.path {
                match quiver.arrow_index(l) {
                    Some(a) => idx.push(a),
                    None => v.push(line, tfield.clone(), format!("unknown arrow `{l}`")),
                }
            }
            if idx.len() != term.path.len() {
                continue;
            }
            if idx.len() < 2 {
                v.push(line, tfield.clone(), "relation paths need length at least 2");
                continue;
            }
            let arr = quiver.arrows();
            if let Some(w) = idx.windows(2).find(|w| arr[w[0]].target != arr[w[1]].source) {
                v.push(
                    line,
                    tfield.clone(),
                    format!("arrows `{}` then `{}` are not composable", arr[w[0]].label, arr[w[1]].label),
                );
                continue;
            }
            let e = (arr[idx[0]].source, arr[*idx.last().expect("nonempty")].target);
            if *ends.get_or_insert(e) != e {
                v.push(line, tfield, "all paths of a relation must share source and target");
                continue;
            }
            out.push((term.coeff, idx));
        }
        rels.push(Relation { terms: out });
    }
    if !v.errors.is_empty() {
        return v.fail();
    }
    let algebra = match BoundQuiverAlgebra::build(quiver, RelationSet::new(rels), p, raw.max_path_length) {
        Ok(a) => a,
        Err(e) => {
            v.push(v.line_of_key("max_path_length"), "relations", e.to_string());
            return v.fail();
        }
    };
    let q = algebra.quiver();

    let mut modules: Vec<(String, Representation)> = Vec::new();
    for (k, m) in raw.modules.iter().enumerate() {
        let field = format!("modules[{k}]");
        let line = v.line_of_name(&m.name);
        if modules.iter().any(|(name, _)| *name == m.name) {
            v.push(line, format!("{field}.name"), format!("duplicate module name `{}`", m.name));
            continue;
        }
        if m.dims.len() != n {
            v.push(line, format!("{field}.dims"), format!("expected {n} dimensions, got {}", m.dims.len()));
            continue;
        }
        for key in m.arrow_maps.keys() {
            if q.arrow_index(key).is_none() {
                v.push(line, format!("{field}.arrow_maps.{key}"), "no such arrow");
            }
        }
        let mut maps = Vec::new();
        for a in q.arrows() {
            let f = format!("{field}.arrow_maps.{}", a.label);
            match m.arrow_maps.get(&a.label) {
                None => v.push(line, f, "missing arrow map"),
                Some(raw) => {
                    if let Some(mat) = v.matrix(line, &f, raw, m.dims[a.target], m.dims[a.source], p) {
                        maps.push(mat);
                    }
                }
            }
        }
        if maps.len() != q.arrows().len() {
            continue;
        }
        match Representation::new(&algebra, m.dims.clone(), maps) {
            Ok(rep) => modules.push((m.name.clone(), rep)),
            Err(e) => v.push(line, field, e.to_string()),
        }
    }

    let mut conflations: Vec<NamedConflation> = Vec::new();
    for (k, c) in raw.conflations.iter().enumerate() {
        let field = format!("conflations[{k}]");
        let line = v.line_of_name(&c.name);
        if conflations.iter().any(|d| d.name == c.name) {
            v.push(line, format!("{field}.name"), format!("duplicate conflation name `{}`", c.name));
            continue;
        }
        let mut objs = Vec::new();
        for (key, name) in [("a", &c.a), ("b", &c.b), ("c", &c.c)] {
            match modules.iter().find(|(m, _)| m == name) {
                Some((_, m)) => objs.push(m.clone()),
                None => v.push(line, format!("{field}.{key}"), format!("unknown module `{name}`")),
            }
        }
        let [a, b, cc] = match <[Representation; 3]>::try_from(objs) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let x = vertex_maps(&mut v, line, &format!("{field}.x"), &c.x, &a, &b, p);
        let y = vertex_maps(&mut v, line, &format!("{field}.y"), &c.y, &b, &cc, p);
        let (Some(x), Some(y)) = (x, y) else { continue };
        let built = RepMorphism::new(a, b.clone(), x)
            .map_err(|e| (format!("{field}.x"), e.to_string()))
            .and_then(|x| RepMorphism::new(b, cc, y).map(|y| (x, y)).map_err(|e| (format!("{field}.y"), e.to_string())))
            .and_then(|(x, y)| Conflation::new(x, y).map_err(|e| (field.clone(), e.to_string())));
        match built {
            Ok(conf) => conflations.push(NamedConflation {
                name: c.name.clone(),
                a: c.a.clone(),
                b: c.b.clone(),
                c: c.c.clone(),
                conflation: conf,
            }),
            Err((f, msg)) => v.push(line, f, msg),
        }
    }

    v.finish(InstanceFile { algebra, modules, conflations })
}

fn vertex_maps(
    v: &mut Validator<'_>,
    line: Option<usize>,
    field: &str,
    raw: &[RawMatrix],
    src: &Representation,
    tgt: &Representation,
    p: Prime,
) -> Option<Vec<FpMatrix>> {
    if raw.len() != src.dims().len() {
        v.push(line, field, format!("expected {} vertex maps, got {}", src.dims().len(), raw.len()));
        return None;
    }
    let mut out = Vec::new();
    for (i, m) in raw.iter().enumerate() {
        out.push(v.matrix(line, &format!("{field}[{i}]"), m, tgt.dims()[i], src.dims()[i], p));
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"field_p": 3, "quiver": {"vertices": 1}, "max_path_length": 2}"#;

    #[test]
    fn minimal_instance_is_valid() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.algebra.dim(), 1);
        assert!(inst.modules.is_empty());
        let canon = inst.to_canonical_string();
        assert_eq!(parse_instance(&canon).unwrap().to_canonical_string(), canon);
    }

    #[test]
    fn builtin_names_resolve() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.resolve_module("S1").unwrap().dims(), &[1]);
        assert!(inst.resolve_module("S2").is_none());
        assert!(inst.resolve_module("X1").is_none());
    }
}
