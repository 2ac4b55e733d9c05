//! Bound quiver algebras `kQ / I` with `I` admissible.
//!
//! Paths are written left to right in traversal order: the path `a b`
//! first follows `a`, then `b`. A representation evaluates it as
//! `M_b * M_a`. The path basis is computed once, by saturating the
//! relations to a two-sided ideal inside the space of paths of bounded
//! length and reducing with an rref; the surviving paths (the non-pivot
//! columns, in canonical order) form the basis of the algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::exactlin::{add_mod, mul_mod, FpMatrix, Prime};
use crate::repcat::{RepMorphism, Representation};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, Error> {
        for (k, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::BadVertex(a.source.max(a.target)));
            }
            if arrows[..k].iter().any(|b| b.label == a.label) {
                return Err(Error::Invalid(format!("duplicate arrow label `{}`", a.label)));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// Builds a quiver from `(source, target, label)` triples.
    pub fn from_triples(vertex_count: usize, arrows: &[(usize, usize, &str)]) -> Result<Self, Error> {
        let arrows =
            arrows.iter().map(|&(source, target, label)| Arrow { source, target, label: label.to_string() }).collect();
        Quiver::new(vertex_count, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Endpoints of a nontrivial arrow sequence, or `NotComposable`.
    fn endpoints(&self, arrows: &[usize]) -> Result<(usize, usize), Error> {
        let first = *arrows.first().ok_or_else(|| Error::NotComposable("empty path".into()))?;
        let mut at = self.arrow(first)?.target;
        for &a in &arrows[1..] {
            let arrow = self.arrow(a)?;
            if arrow.source != at {
                return Err(Error::NotComposable(format!("{} does not start where the path ends", arrow.label)));
            }
            at = arrow.target;
        }
        Ok((self.arrows[first].source, at))
    }

    fn arrow(&self, a: usize) -> Result<&Arrow, Error> {
        self.arrows.get(a).ok_or_else(|| Error::NotComposable(format!("unknown arrow index {a}")))
    }
}

/// A path of the quiver: a trivial path `e_v` or a composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source + 1);
        }
        let labels: Vec<&str> = self.arrows.iter().map(|&a| quiver.arrows[a].label.as_str()).collect();
        labels.join("")
    }
}

/// One relation: a linear combination of parallel paths of length at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(path: Vec<usize>) -> Self {
        Relation { terms: vec![(1, path)] }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub generators: Vec<Relation>,
}

impl RelationSet {
    pub fn new(generators: Vec<Relation>) -> Self {
        RelationSet { generators }
    }

    pub fn empty() -> Self {
        RelationSet::default()
    }
}

/// Budget of basis triples checked for associativity during construction.
const ASSOCIATIVITY_BUDGET: usize = 4096;

/// Upper bound on enumerated paths; keeps the saturation step at desk scale.
const MAX_ENUMERATED_PATHS: usize = 4096;

#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    p: Prime,
    relations: RelationSet,
    max_path_length: usize,
    nilpotency_degree: usize,
    paths: Vec<Path>,
    path_index: BTreeMap<(usize, Vec<usize>), usize>,
    /// For every enumerated path, its coordinates in the quotient basis.
    reduced: Vec<Vec<u32>>,
    /// Enumerated-path index of each basis element.
    basis: Vec<usize>,
    /// `basis_between[i][j]`: positions in `basis` of the paths `i -> j`.
    basis_between: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self, other)
            || (self.p == other.p
                && self.quiver == other.quiver
                && self.relations == other.relations
                && self.max_path_length == other.max_path_length)
    }
}

impl Eq for BoundQuiverAlgebra {}

impl BoundQuiverAlgebra {
    /// Computes the path basis of `kQ / (rels)` over `F_p`.
    pub fn build(quiver: Quiver, rels: RelationSet, p: Prime, max_path_length: usize) -> Result<Arc<Self>, Error> {
        if max_path_length < 2 {
            return Err(Error::Invalid("max_path_length must be at least 2".into()));
        }
        let paths = enumerate_paths(&quiver, max_path_length)?;
        let path_index: BTreeMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(k, q)| ((q.source, q.arrows.clone()), k)).collect();
        let lookup = |q: &Path| path_index.get(&(q.source, q.arrows.clone())).copied();

        let pv = p.get();
        let mut generators = Vec::new();
        for rel in &rels.generators {
            let mut v = vec![0u32; paths.len()];
            let mut ends = None;
            for (coeff, arrows) in &rel.terms {
                if arrows.len() < 2 {
                    return Err(Error::NotAdmissible("relation term of length < 2".into()));
                }
                let (s, t) = quiver.endpoints(arrows)?;
                if *ends.get_or_insert((s, t)) != (s, t) {
                    return Err(Error::NotAdmissible("relation terms are not parallel".into()));
                }
                if arrows.len() > max_path_length {
                    // Such a term is zero once long paths vanish; nothing to add.
                    continue;
                }
                let idx = path_index[&(s, arrows.clone())];
                v[idx] = add_mod(v[idx], crate::exactlin::reduce_signed(*coeff, pv), pv);
            }
            generators.push(v);
        }

        let ideal = saturate(&quiver, &paths, &lookup, p, generators);
        let rref = ideal.rref();
        let pivots = &rref.pivot_columns;
        let is_pivot: Vec<bool> = {
            let mut flags = vec![false; paths.len()];
            pivots.iter().for_each(|&c| flags[c] = true);
            flags
        };
        let basis: Vec<usize> = (0..paths.len()).filter(|&c| !is_pivot[c]).collect();
        let position: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();

        let mut reduced = vec![vec![0u32; basis.len()]; paths.len()];
        for &c in &basis {
            reduced[c][position[&c]] = 1;
        }
        for (r, &pc) in pivots.iter().enumerate() {
            for &c in &basis {
                let v = rref.reduced.get(r, c);
                if v != 0 {
                    reduced[pc][position[&c]] = pv - v;
                }
            }
        }

        let n = quiver.vertex_count();
        let mut basis_between = vec![vec![Vec::new(); n]; n];
        for (k, &c) in basis.iter().enumerate() {
            basis_between[paths[c].source][paths[c].target].push(k);
        }

        let nonzero_at =
            |len: usize| paths.iter().enumerate().any(|(k, q)| q.len() == len && reduced[k].iter().any(|&v| v != 0));
        if nonzero_at(max_path_length) {
            return Err(Error::NotAdmissible(format!(
                "some path of length {max_path_length} survives the relations; ideal not admissible within the bound"
            )));
        }
        let nilpotency_degree = (1..=max_path_length).find(|&l| !nonzero_at(l)).unwrap_or(max_path_length);

        let alg = BoundQuiverAlgebra {
            quiver,
            p,
            relations: rels,
            max_path_length,
            nilpotency_degree,
            paths,
            path_index,
            reduced,
            basis,
            basis_between,
        };
        alg.check_associativity()?;
        Ok(Arc::new(alg))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn max_path_length(&self) -> usize {
        self.max_path_length
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The path underlying basis element `k`.
    pub fn basis_path(&self, k: usize) -> &Path {
        &self.paths[self.basis[k]]
    }

    /// Positions of the basis paths from `i` to `j`.
    pub fn basis_between(&self, i: usize, j: usize) -> &[usize] {
        &self.basis_between[i][j]
    }

    /// Coordinates of a path in the basis; paths longer than the bound are zero.
    pub fn reduce_path(&self, q: &Path) -> Vec<u32> {
        if q.len() > self.max_path_length {
            return vec![0; self.dim()];
        }
        match self.path_index.get(&(q.source, q.arrows.clone())) {
            Some(&k) => self.reduced[k].clone(),
            None => vec![0; self.dim()],
        }
    }

    /// Product of two basis elements, in basis coordinates.
    pub fn multiply(&self, a: usize, b: usize) -> Vec<u32> {
        match self.basis_path(a).concat(self.basis_path(b)) {
            Some(q) => self.reduce_path(&q),
            None => vec![0; self.dim()],
        }
    }

    /// `x * b` for `x` in basis coordinates and basis element `b`.
    fn multiply_vec_basis(&self, x: &[u32], b: usize) -> Vec<u32> {
        let pv = self.p.get();
        let mut out = vec![0u32; self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            if xa != 0 {
                for (o, v) in out.iter_mut().zip(self.multiply(a, b)) {
                    *o = add_mod(*o, mul_mod(xa, v, pv), pv);
                }
            }
        }
        out
    }

    fn multiply_basis_vec(&self, a: usize, x: &[u32]) -> Vec<u32> {
        let pv = self.p.get();
        let mut out = vec![0u32; self.dim()];
        for (b, &xb) in x.iter().enumerate() {
            if xb != 0 {
                for (o, v) in out.iter_mut().zip(self.multiply(a, b)) {
                    *o = add_mod(*o, mul_mod(xb, v, pv), pv);
                }
            }
        }
        out
    }

    fn check_associativity(&self) -> Result<(), Error> {
        let d = self.dim();
        let mut checked = 0;
        'outer: for a in 0..d {
            for b in 0..d {
                if self.basis_path(a).target != self.basis_path(b).source {
                    continue;
                }
                let ab = self.multiply(a, b);
                for c in 0..d {
                    if checked >= ASSOCIATIVITY_BUDGET {
                        break 'outer;
                    }
                    checked += 1;
                    let left = self.multiply_vec_basis(&ab, c);
                    let right = self.multiply_basis_vec(a, &self.multiply(b, c));
                    if left != right {
                        return Err(Error::NotAdmissible("multiplication on the path basis is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable names of the basis paths.
    pub fn basis_names(&self) -> Vec<String> {
        (0..self.dim()).map(|k| self.basis_path(k).display(&self.quiver)).collect()
    }
}

fn enumerate_paths(quiver: &Quiver, max_len: usize) -> Result<Vec<Path>, Error> {
    let mut paths: Vec<Path> = (0..quiver.vertex_count).map(Path::trivial).collect();
    let mut frontier = paths.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for q in &frontier {
            for (a, arrow) in quiver.arrows.iter().enumerate() {
                if arrow.source == q.target {
                    let mut arrows = q.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: q.source, target: arrow.target, arrows });
                }
            }
        }
        // Lexicographic in arrow indices within one length.
        next.sort_by(|x, y| x.arrows.cmp(&y.arrows));
        paths.extend(next.iter().cloned());
        if paths.len() > MAX_ENUMERATED_PATHS {
            return Err(Error::Invalid(format!(
                "more than {MAX_ENUMERATED_PATHS} paths up to length {max_len}; lower max_path_length"
            )));
        }
        frontier = next;
    }
    Ok(paths)
}

/// Closes the span of `generators` under left and right multiplication by arrows.
fn saturate(
    quiver: &Quiver,
    paths: &[Path],
    lookup: &dyn Fn(&Path) -> Option<usize>,
    p: Prime,
    generators: Vec<Vec<u32>>,
) -> FpMatrix {
    let n = paths.len();
    let to_matrix = |rows: &[Vec<u32>]| {
        let mut m = FpMatrix::zeros(p, rows.len(), n);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        m
    };
    let shift = |v: &[u32], arrow: usize, on_right: bool| {
        let a = &quiver.arrows[arrow];
        let step = Path { source: a.source, target: a.target, arrows: vec![arrow] };
        let mut out = vec![0u32; n];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let moved = if on_right { paths[c].concat(&step) } else { step.concat(&paths[c]) };
            if let Some(idx) = moved.and_then(|q| lookup(&q)) {
                out[idx] = add_mod(out[idx], x, p.get());
            }
        }
        out
    };

    let mut span = nonzero_rows(to_matrix(&generators).rref().reduced);
    loop {
        let mut rows = span.clone();
        for v in &span {
            for a in 0..quiver.arrows.len() {
                rows.push(shift(v, a, true));
                rows.push(shift(v, a, false));
            }
        }
        let next = nonzero_rows(to_matrix(&rows).rref().reduced);
        if next.len() == span.len() {
            return to_matrix(&span);
        }
        span = next;
    }
}

fn nonzero_rows(m: FpMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).filter(|r| r.iter().any(|&v| v != 0)).collect()
}

/// The simple module at vertex `i`.
pub fn simple_module(alg: &Arc<BoundQuiverAlgebra>, i: usize) -> Result<Representation, Error> {
    check_vertex(alg, i)?;
    let dims = (0..alg.vertex_count()).map(|j| usize::from(j == i)).collect();
    Ok(Representation::zero_maps(alg, dims))
}

/// `P_i = e_i A`: paths starting at `i`, arrows acting by appending.
pub fn indecomposable_projective(alg: &Arc<BoundQuiverAlgebra>, i: usize) -> Result<Representation, Error> {
    check_vertex(alg, i)?;
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| alg.basis_between(i, j).len()).collect();
    let p = alg.prime();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let src = alg.basis_between(i, arrow.source);
            let tgt = alg.basis_between(i, arrow.target);
            let step = Path { source: arrow.source, target: arrow.target, arrows: vec![a] };
            let mut m = FpMatrix::zeros(p, tgt.len(), src.len());
            for (col, &b) in src.iter().enumerate() {
                let image = alg.reduce_path(&alg.basis_path(b).concat(&step).expect("composable"));
                for (row, &b2) in tgt.iter().enumerate() {
                    m.set(row, col, image[b2]);
                }
            }
            m
        })
        .collect();
    Representation::new(alg, dims, maps)
}

/// `I_i = D(A e_i)`: duals of paths ending at `i`, arrows acting by the
/// transpose of prepending.
pub fn indecomposable_injective(alg: &Arc<BoundQuiverAlgebra>, i: usize) -> Result<Representation, Error> {
    check_vertex(alg, i)?;
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| alg.basis_between(j, i).len()).collect();
    let p = alg.prime();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let src = alg.basis_between(arrow.source, i);
            let tgt = alg.basis_between(arrow.target, i);
            let step = Path { source: arrow.source, target: arrow.target, arrows: vec![a] };
            let mut m = FpMatrix::zeros(p, tgt.len(), src.len());
            for (row, &q) in tgt.iter().enumerate() {
                let image = alg.reduce_path(&step.concat(alg.basis_path(q)).expect("composable"));
                for (col, &b) in src.iter().enumerate() {
                    m.set(row, col, image[b]);
                }
            }
            m
        })
        .collect();
    Representation::new(alg, dims, maps)
}

/// Position of `e_i` among the basis paths from `i` to `i`: the generator of
/// `P_i` and the socle coordinate of `I_i`.
pub(crate) fn trivial_path_coordinate(alg: &BoundQuiverAlgebra, i: usize) -> usize {
    alg.basis_between(i, i)
        .iter()
        .position(|&b| alg.basis_path(b).is_trivial())
        .expect("trivial path is a basis element")
}

/// Inclusion of the socle `soc(m)_i = ∩ ker(m_α)` over arrows leaving `i`.
pub fn socle_inclusion(m: &Representation) -> RepMorphism {
    let alg = m.algebra();
    let p = alg.prime();
    let n = alg.vertex_count();
    let bases: Vec<FpMatrix> = (0..n)
        .map(|i| {
            let outgoing: Vec<&FpMatrix> = alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == i)
                .map(|(k, _)| m.arrow_map(k))
                .collect();
            let mut stacked = FpMatrix::zeros(p, 0, m.dims()[i]);
            for block in outgoing {
                stacked = stacked.vstack(block).expect("arrow maps share the source dimension");
            }
            stacked.kernel_basis()
        })
        .collect();
    let dims = bases.iter().map(|b| b.cols()).collect();
    let soc = Representation::zero_maps(alg, dims);
    RepMorphism::new_unchecked(soc, m.clone(), bases)
}

fn check_vertex(alg: &BoundQuiverAlgebra, i: usize) -> Result<(), Error> {
    if i >= alg.vertex_count() {
        return Err(Error::BadVertex(i));
    }
    Ok(())
}

/// Small named algebras used by fixtures and tests.
pub mod catalog {
    use super::*;

    /// `n` vertices, no arrows.
    pub fn semisimple(n: usize, p: Prime) -> Arc<BoundQuiverAlgebra> {
        BoundQuiverAlgebra::build(Quiver::new(n, Vec::new()).unwrap(), RelationSet::empty(), p, 2).unwrap()
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`, no relations.
    pub fn linear(n: usize, p: Prime) -> Arc<BoundQuiverAlgebra> {
        let labels = ["a", "b", "c", "d", "e", "f", "g", "h"];
        assert!(n >= 1 && n <= labels.len() + 1);
        let arrows = (0..n - 1).map(|k| Arrow { source: k, target: k + 1, label: labels[k].to_string() }).collect();
        BoundQuiverAlgebra::build(Quiver::new(n, arrows).unwrap(), RelationSet::empty(), p, n.max(2)).unwrap()
    }

    /// One vertex with a loop `a`, bound by `a^k = 0`.
    pub fn truncated_loop(k: usize, p: Prime) -> Arc<BoundQuiverAlgebra> {
        assert!(k >= 2);
        let q = Quiver::from_triples(1, &[(0, 0, "a")]).unwrap();
        let rels = RelationSet::new(vec![Relation::monomial(vec![0; k])]);
        BoundQuiverAlgebra::build(q, rels, p, k).unwrap()
    }

    /// Radical-square-zero algebra of an arbitrary quiver.
    pub fn radical_square_zero(quiver: Quiver, p: Prime) -> Result<Arc<BoundQuiverAlgebra>, Error> {
        let mut rels = Vec::new();
        for (a, x) in quiver.arrows().iter().enumerate() {
            for (b, y) in quiver.arrows().iter().enumerate() {
                if x.target == y.source {
                    rels.push(Relation::monomial(vec![a, b]));
                }
            }
        }
        BoundQuiverAlgebra::build(quiver, RelationSet::new(rels), p, 2)
    }
}

/// Draws a small random bound quiver algebra of total dimension at most
/// `max_dim`.
///
/// Quivers have one to three vertices and up to three arrows; relations are
/// random zero relations and random commutativity relations. Draws that are
/// not admissible within the path bound or too large are retried; after a
/// few failures the radical-square-zero quotient of the drawn quiver is
/// used.
pub fn random_algebra<R: Rng>(rng: &mut R, p: Prime, max_dim: usize) -> Arc<BoundQuiverAlgebra> {
    const LABELS: [&str; 3] = ["a", "b", "c"];
    loop {
        let n = rng.random_range(1..=3usize);
        let arrow_count = rng.random_range(0..=3usize);
        let arrows: Vec<Arrow> = (0..arrow_count)
            .map(|k| Arrow {
                source: rng.random_range(0..n),
                target: rng.random_range(0..n),
                label: LABELS[k].to_string(),
            })
            .collect();
        let quiver = Quiver::new(n, arrows).expect("vertices in range");
        for _ in 0..6 {
            let rels = random_relations(rng, &quiver);
            if let Ok(alg) = BoundQuiverAlgebra::build(quiver.clone(), rels, p, 4) {
                if alg.dim() <= max_dim {
                    return alg;
                }
            }
        }
        if let Ok(alg) = catalog::radical_square_zero(quiver, p) {
            if alg.dim() <= max_dim {
                return alg;
            }
        }
    }
}

fn random_relations<R: Rng>(rng: &mut R, quiver: &Quiver) -> RelationSet {
    let arrows = quiver.arrows();
    let mut length_two = Vec::new();
    for (a, x) in arrows.iter().enumerate() {
        for (b, y) in arrows.iter().enumerate() {
            if x.target == y.source {
                length_two.push(vec![a, b]);
            }
        }
    }
    let mut gens = Vec::new();
    for q in &length_two {
        if rng.random_bool(0.5) {
            gens.push(Relation::monomial(q.clone()));
        }
    }
    // Occasionally a commutativity relation between two parallel length-2 paths.
    if rng.random_bool(0.3) {
        for (k, q) in length_two.iter().enumerate() {
            for r in &length_two[k + 1..] {
                let ends_q = (arrows[q[0]].source, arrows[q[1]].target);
                let ends_r = (arrows[r[0]].source, arrows[r[1]].target);
                if ends_q == ends_r {
                    gens.push(Relation { terms: vec![(1, q.clone()), (-1, r.clone())] });
                }
            }
        }
    }
    RelationSet::new(gens)
}
