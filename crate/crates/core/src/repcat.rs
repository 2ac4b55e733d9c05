//! Representations, morphisms and the additive structure of `rep(Q, I)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{FpMatrix, Prime};
use crate::quivalg::BoundQuiverAlgebra;
use crate::Error;

#[derive(PartialEq, Eq)]
struct RepData {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

/// A representation: a vector space per vertex and a matrix per arrow
/// (`target-dim x source-dim`) annihilated by every relation.
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct Representation(Arc<RepData>);

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").field("dims", &self.0.dims).field("maps", &self.0.maps).finish()
    }
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: &Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Self, Error> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::Invalid(format!("expected {} vertex dimensions, got {}", q.vertex_count(), dims.len())));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::Invalid(format!("expected {} arrow maps, got {}", q.arrows().len(), maps.len())));
        }
        for (arrow, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[arrow.target], dims[arrow.source]) {
                return Err(Error::Invalid(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    arrow.label,
                    dims[arrow.target],
                    dims[arrow.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.prime() != alg.prime() {
                return Err(Error::Invalid(format!("arrow {} matrix has the wrong modulus", arrow.label)));
            }
        }
        let rep = Representation(Arc::new(RepData { algebra: alg.clone(), dims, maps }));
        if let Some(k) = rep.violated_relation() {
            return Err(Error::Invalid(format!("relation {k} does not act as zero")));
        }
        Ok(rep)
    }

    /// All arrows act as zero; valid for any dimension vector.
    pub fn zero_maps(alg: &Arc<BoundQuiverAlgebra>, dims: Vec<usize>) -> Self {
        let p = alg.prime();
        let maps = alg.quiver().arrows().iter().map(|a| FpMatrix::zeros(p, dims[a.target], dims[a.source])).collect();
        Representation(Arc::new(RepData { algebra: alg.clone(), dims, maps }))
    }

    pub fn zero(alg: &Arc<BoundQuiverAlgebra>) -> Self {
        Self::zero_maps(alg, vec![0; alg.vertex_count()])
    }

    pub(crate) fn from_parts_unchecked(alg: &Arc<BoundQuiverAlgebra>, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Self {
        Representation(Arc::new(RepData { algebra: alg.clone(), dims, maps }))
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.0.algebra
    }

    pub fn prime(&self) -> Prime {
        self.0.algebra.prime()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, arrow: usize) -> &FpMatrix {
        &self.0.maps[arrow]
    }

    pub fn arrow_maps(&self) -> &[FpMatrix] {
        &self.0.maps
    }

    /// Matrix of a path `v_s -> v_t` (identity for a trivial path).
    pub fn eval_path(&self, source: usize, arrows: &[usize]) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.prime(), self.0.dims[source]);
        for &a in arrows {
            acc = self.0.maps[a].dot(&acc);
        }
        acc
    }

    fn violated_relation(&self) -> Option<usize> {
        let alg = &self.0.algebra;
        let q = alg.quiver();
        for (k, rel) in alg.relations().generators.iter().enumerate() {
            let Some((_, first)) = rel.terms.first() else { continue };
            let s = q.arrows()[first[0]].source;
            let t = q.arrows()[*first.last().unwrap()].target;
            let mut acc = FpMatrix::zeros(self.prime(), self.0.dims[t], self.0.dims[s]);
            for (c, path) in &rel.terms {
                let term = self.eval_path(s, path).scale(crate::exactlin::reduce_signed(*c, self.prime().get()));
                acc = acc.add(&term).expect("parallel paths");
            }
            if !acc.is_zero() {
                return Some(k);
            }
        }
        // Paths beyond the enumeration bound are zero in the algebra.
        let bound = alg.max_path_length();
        for v in 0..q.vertex_count() {
            if self.0.dims[v] > 0 && !self.long_paths_vanish(v, bound) {
                return Some(alg.relations().generators.len());
            }
        }
        None
    }

    /// Whether every path of length `len` starting at `v` acts as zero.
    fn long_paths_vanish(&self, v: usize, len: usize) -> bool {
        let q = self.0.algebra.quiver();
        let mut frontier: Vec<(usize, FpMatrix)> = vec![(v, FpMatrix::identity(self.prime(), self.0.dims[v]))];
        for _ in 0..len {
            let mut next = Vec::new();
            for (at, m) in &frontier {
                for (a, arrow) in q.arrows().iter().enumerate() {
                    if arrow.source == *at {
                        let moved = self.0.maps[a].dot(m);
                        if !moved.is_zero() {
                            next.push((arrow.target, moved));
                        }
                    }
                }
            }
            frontier = next;
        }
        frontier.is_empty()
    }

    pub fn same_algebra(&self, other: &Representation) -> Result<(), Error> {
        if self.algebra() != other.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

/// A natural transformation between representations, one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<FpMatrix>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepMorphism")
            .field("source_dims", &self.source.dims())
            .field("target_dims", &self.target.dims())
            .field("maps", &self.maps)
            .finish()
    }
}

impl RepMorphism {
    /// Validates shapes and naturality.
    pub fn new(source: Representation, target: Representation, maps: Vec<FpMatrix>) -> Result<Self, Error> {
        source.same_algebra(&target)?;
        if maps.len() != source.dims().len() {
            return Err(Error::Invalid("one matrix per vertex required".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims()[i], source.dims()[i]) {
                return Err(Error::Invalid(format!(
                    "vertex {} map must be {}x{}, got {}x{}",
                    i + 1,
                    target.dims()[i],
                    source.dims()[i],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let f = RepMorphism { source, target, maps };
        f.check_naturality()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, maps: Vec<FpMatrix>) -> Self {
        debug_assert!(maps.iter().enumerate().all(|(i, m)| m.shape() == (target.dims()[i], source.dims()[i])));
        RepMorphism { source, target, maps }
    }

    pub fn check_naturality(&self) -> Result<(), Error> {
        let q = self.source.algebra().quiver();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let lhs = self.target.arrow_map(a).dot(&self.maps[arrow.source]);
            let rhs = self.maps[arrow.target].dot(self.source.arrow_map(a));
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square at arrow {} does not commute", arrow.label)));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Representation) -> Self {
        let maps = m.dims().iter().map(|&d| FpMatrix::identity(m.prime(), d)).collect();
        RepMorphism { source: m.clone(), target: m.clone(), maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let maps =
            source.dims().iter().zip(target.dims()).map(|(&s, &t)| FpMatrix::zeros(source.prime(), t, s)).collect();
        RepMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn vertex_maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RepMorphism) -> Result<RepMorphism, Error> {
        if inner.target != self.source {
            return Err(Error::SourceMismatch("composition of non-composable morphisms".into()));
        }
        let maps = self.maps.iter().zip(&inner.maps).map(|(a, b)| a.dot(b)).collect();
        Ok(RepMorphism { source: inner.source.clone(), target: self.target.clone(), maps })
    }

    /// `self ∘ inner`, for morphisms composable by construction.
    pub fn after(&self, inner: &RepMorphism) -> RepMorphism {
        self.compose(inner).expect("composable by construction")
    }

    fn parallel(&self, other: &RepMorphism) -> Result<(), Error> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::SourceMismatch("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism, Error> {
        self.parallel(other)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(RepMorphism { source: self.source.clone(), target: self.target.clone(), maps })
    }

    pub fn sub(&self, other: &RepMorphism) -> Result<RepMorphism, Error> {
        self.parallel(other)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect::<Result<_, _>>()?;
        Ok(RepMorphism { source: self.source.clone(), target: self.target.clone(), maps })
    }

    pub fn neg(&self) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(FpMatrix::neg).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(FpMatrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.maps.iter().all(FpMatrix::is_identity)
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(FpMatrix::is_invertible)
    }

    pub fn inverse(&self) -> Result<RepMorphism, Error> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.invert().map_err(|_| Error::NotAnIsomorphism("a vertex map is singular".into())))
            .collect::<Result<_, _>>()?;
        Ok(RepMorphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    /// The same matrices, reinterpreted between other (equal-shaped) objects.
    pub(crate) fn retarget(&self, source: &Representation, target: &Representation) -> RepMorphism {
        RepMorphism { source: source.clone(), target: target.clone(), maps: self.maps.clone() }
    }
}

/// Layout of the unknowns of a morphism `src -> tgt`: vertex blocks in
/// order, each block row-major.
pub(crate) struct MorphismVars {
    offsets: Vec<usize>,
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
    count: usize,
}

impl MorphismVars {
    pub(crate) fn new(src: &Representation, tgt: &Representation) -> Self {
        let mut offsets = Vec::with_capacity(src.dims().len());
        let mut count = 0;
        for (s, t) in src.dims().iter().zip(tgt.dims()) {
            offsets.push(count);
            count += s * t;
        }
        MorphismVars { offsets, src_dims: src.dims().to_vec(), tgt_dims: tgt.dims().to_vec(), count }
    }

    #[inline]
    fn var(&self, vertex: usize, row: usize, col: usize) -> usize {
        self.offsets[vertex] + row * self.src_dims[vertex] + col
    }

    pub(crate) fn vectorize(&self, f: &RepMorphism) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.count);
        for m in &f.maps {
            v.extend_from_slice(m.entries());
        }
        v
    }

    pub(crate) fn devectorize(&self, src: &Representation, tgt: &Representation, v: &[u32]) -> RepMorphism {
        let p = src.prime();
        let maps = (0..self.offsets.len())
            .map(|i| {
                let (r, c) = (self.tgt_dims[i], self.src_dims[i]);
                let block: Vec<i64> = v[self.offsets[i]..self.offsets[i] + r * c].iter().map(|&x| x as i64).collect();
                FpMatrix::from_entries(p, r, c, &block).expect("block shape")
            })
            .collect();
        RepMorphism { source: src.clone(), target: tgt.clone(), maps }
    }
}

/// Linear system whose solutions are the morphisms `src -> tgt` satisfying
/// naturality plus any added composition constraints.
pub(crate) struct MorphismSystem {
    src: Representation,
    tgt: Representation,
    vars: MorphismVars,
    rows: Vec<Vec<u32>>,
    rhs: Vec<u32>,
}

impl MorphismSystem {
    pub(crate) fn new(src: &Representation, tgt: &Representation) -> Self {
        let vars = MorphismVars::new(src, tgt);
        let mut sys = MorphismSystem { src: src.clone(), tgt: tgt.clone(), vars, rows: Vec::new(), rhs: Vec::new() };
        sys.add_naturality();
        sys
    }

    fn push(&mut self, row: Vec<u32>, rhs: u32) {
        if row.iter().any(|&v| v != 0) || rhs != 0 {
            self.rows.push(row);
            self.rhs.push(rhs);
        }
    }

    fn add_naturality(&mut self) {
        let p = self.src.prime().get();
        let q = self.src.algebra().quiver().clone();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let n_a = self.tgt.arrow_map(a).clone();
            let m_a = self.src.arrow_map(a).clone();
            // (N_a f_s - f_t M_a)[r, c] = 0
            for r in 0..self.tgt.dims()[t] {
                for c in 0..self.src.dims()[s] {
                    let mut row = vec![0u32; self.vars.count];
                    for k in 0..self.tgt.dims()[s] {
                        let x = n_a.get(r, k);
                        if x != 0 {
                            let v = self.vars.var(s, k, c);
                            row[v] = (row[v] + x) % p;
                        }
                    }
                    for k in 0..self.src.dims()[t] {
                        let x = m_a.get(k, c);
                        if x != 0 {
                            let v = self.vars.var(t, r, k);
                            row[v] = (row[v] + p - x) % p;
                        }
                    }
                    self.push(row, 0);
                }
            }
        }
    }

    /// Requires `f ∘ g = h` for `g: X -> src`, `h: X -> tgt`.
    pub(crate) fn require_precomposition(&mut self, g: &RepMorphism, h: &RepMorphism) {
        let p = self.src.prime().get();
        for j in 0..self.src.dims().len() {
            let (gj, hj) = (&g.maps[j], &h.maps[j]);
            for r in 0..self.tgt.dims()[j] {
                for c in 0..gj.cols() {
                    let mut row = vec![0u32; self.vars.count];
                    for k in 0..self.src.dims()[j] {
                        let x = gj.get(k, c);
                        if x != 0 {
                            let v = self.vars.var(j, r, k);
                            row[v] = (row[v] + x) % p;
                        }
                    }
                    self.push(row, hj.get(r, c));
                }
            }
        }
    }

    /// Requires `g ∘ f = h` for `g: tgt -> Y`, `h: src -> Y`.
    pub(crate) fn require_postcomposition(&mut self, g: &RepMorphism, h: &RepMorphism) {
        let p = self.src.prime().get();
        for j in 0..self.src.dims().len() {
            let (gj, hj) = (&g.maps[j], &h.maps[j]);
            for r in 0..gj.rows() {
                for c in 0..self.src.dims()[j] {
                    let mut row = vec![0u32; self.vars.count];
                    for k in 0..self.tgt.dims()[j] {
                        let x = gj.get(r, k);
                        if x != 0 {
                            let v = self.vars.var(j, k, c);
                            row[v] = (row[v] + x) % p;
                        }
                    }
                    self.push(row, hj.get(r, c));
                }
            }
        }
    }

    pub(crate) fn matrix(&self) -> (FpMatrix, FpMatrix) {
        let p = self.src.prime();
        let mut a = FpMatrix::zeros(p, self.rows.len(), self.vars.count);
        let mut b = FpMatrix::zeros(p, self.rows.len(), 1);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    a.set(r, c, v);
                }
            }
            b.set(r, 0, self.rhs[r]);
        }
        (a, b)
    }

    /// One solution (free variables zero), or `None`.
    pub(crate) fn solve(&self) -> Option<RepMorphism> {
        let (a, b) = self.matrix();
        let x = a.solve_right(&b).ok()?;
        Some(self.vars.devectorize(&self.src, &self.tgt, &x.column(0)))
    }

    /// Basis of the solutions of the homogeneous system, one per column.
    pub(crate) fn kernel(&self) -> FpMatrix {
        self.matrix().0.kernel_basis()
    }
}

/// `Hom(m, n)` with a fixed basis and a coordinate map.
pub(crate) struct HomSpace {
    source: Representation,
    target: Representation,
    vars: MorphismVars,
    basis: FpMatrix,
    free: Vec<usize>,
}

impl HomSpace {
    pub(crate) fn new(m: &Representation, n: &Representation) -> Self {
        let sys = MorphismSystem::new(m, n);
        let (basis, free) = sys.matrix().0.kernel_basis_with_free();
        HomSpace { source: m.clone(), target: n.clone(), vars: sys.vars, basis, free }
    }

    pub(crate) fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of a morphism known to lie in this space.
    pub(crate) fn coords(&self, f: &RepMorphism) -> Vec<u32> {
        let v = self.vars.vectorize(f);
        self.free.iter().map(|&c| v[c]).collect()
    }

    pub(crate) fn morphism(&self, coords: &[u32]) -> RepMorphism {
        let u = FpMatrix::column_vector(self.source.prime(), coords);
        let v = self.basis.dot(&u);
        self.vars.devectorize(&self.source, &self.target, &v.column(0))
    }
}

/// The morphism `P_i -> m` sending the generator `e_i` to `v ∈ m_i`.
pub fn hom_from_projective(projective: &Representation, i: usize, m: &Representation, v: &[u32]) -> RepMorphism {
    let alg = m.algebra();
    let p = m.prime();
    let maps = (0..alg.vertex_count())
        .map(|j| {
            let paths = alg.basis_between(i, j);
            let mut out = FpMatrix::zeros(p, m.dims()[j], paths.len());
            for (col, &b) in paths.iter().enumerate() {
                let image = m.eval_path(i, &alg.basis_path(b).arrows).dot(&FpMatrix::column_vector(p, v));
                out.paste(0, col, &image);
            }
            out
        })
        .collect();
    RepMorphism::new_unchecked(projective.clone(), m.clone(), maps)
}

/// The morphism `m -> I_i` corresponding to the functional `λ` on `m_i`.
pub fn hom_to_injective(m: &Representation, injective: &Representation, i: usize, lambda: &[u32]) -> RepMorphism {
    let alg = m.algebra();
    let p = m.prime();
    let row = FpMatrix::from_entries(p, 1, lambda.len(), &lambda.iter().map(|&x| x as i64).collect::<Vec<_>>())
        .expect("functional shape");
    let maps = (0..alg.vertex_count())
        .map(|j| {
            let paths = alg.basis_between(j, i);
            let mut out = FpMatrix::zeros(p, paths.len(), m.dims()[j]);
            for (r, &q) in paths.iter().enumerate() {
                out.paste(r, 0, &row.dot(&m.eval_path(j, &alg.basis_path(q).arrows)));
            }
            out
        })
        .collect();
    RepMorphism::new_unchecked(m.clone(), injective.clone(), maps)
}

/// Basis of `Hom(m, n)`, in the order produced by `kernel_basis`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>, Error> {
    m.same_algebra(n)?;
    let sys = MorphismSystem::new(m, n);
    let k = sys.kernel();
    Ok((0..k.cols()).map(|c| sys.vars.devectorize(m, n, &k.column(c))).collect())
}

/// `Hom(m, n)` as a matrix whose columns are vectorized basis morphisms.
pub(crate) fn hom_matrix(m: &Representation, n: &Representation) -> FpMatrix {
    MorphismSystem::new(m, n).kernel()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, Error> {
    m.same_algebra(n)?;
    Ok(hom_matrix(m, n).cols())
}

/// Some `r: b -> a` with `r ∘ x = id_a`, if one exists.
pub fn find_retraction(x: &RepMorphism) -> Option<RepMorphism> {
    let mut sys = MorphismSystem::new(x.target(), x.source());
    sys.require_precomposition(x, &RepMorphism::identity(x.source()));
    sys.solve()
}

/// Some `s: c -> b` with `y ∘ s = id_c`, if one exists.
pub fn find_section(y: &RepMorphism) -> Option<RepMorphism> {
    let mut sys = MorphismSystem::new(y.target(), y.source());
    sys.require_postcomposition(y, &RepMorphism::identity(y.target()));
    sys.solve()
}

/// The unique `h` with `mono ∘ h = g`.
pub fn factor_through_mono(mono: &RepMorphism, g: &RepMorphism) -> Result<RepMorphism, Error> {
    if mono.target() != g.target() {
        return Err(Error::TargetMismatch("factorization through a mono with another target".into()));
    }
    let maps = mono
        .maps
        .iter()
        .zip(&g.maps)
        .map(|(m, gj)| m.solve_right(gj).map_err(|_| Error::LiftFailed("image not contained in the subobject".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let h = RepMorphism { source: g.source().clone(), target: mono.source().clone(), maps };
    if mono.after(&h) != *g {
        return Err(Error::LiftFailed("factorization does not reproduce the map".into()));
    }
    h.check_naturality()?;
    Ok(h)
}

/// The unique `h` with `h ∘ epi = g`.
pub fn factor_through_epi(epi: &RepMorphism, g: &RepMorphism) -> Result<RepMorphism, Error> {
    if epi.source() != g.source() {
        return Err(Error::SourceMismatch("factorization through an epi with another source".into()));
    }
    let maps = epi
        .maps
        .iter()
        .zip(&g.maps)
        .map(|(e, gj)| {
            e.transpose()
                .solve_right(&gj.transpose())
                .map(|x| x.transpose())
                .map_err(|_| Error::LiftFailed("map does not vanish on the kernel".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h = RepMorphism { source: epi.target().clone(), target: g.target().clone(), maps };
    if h.after(epi) != *g {
        return Err(Error::LiftFailed("factorization does not reproduce the map".into()));
    }
    h.check_naturality()?;
    Ok(h)
}

/// Kernel object and its inclusion.
pub fn kernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let src = f.source();
    let alg = src.algebra();
    let bases: Vec<FpMatrix> = f.maps.iter().map(FpMatrix::kernel_basis).collect();
    let dims: Vec<usize> = bases.iter().map(FpMatrix::cols).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let moved = src.arrow_map(a).dot(&bases[arrow.source]);
            bases[arrow.target].solve_right(&moved).expect("arrow maps preserve kernels")
        })
        .collect();
    let ker = Representation::from_parts_unchecked(alg, dims, maps);
    let incl = RepMorphism { source: ker.clone(), target: src.clone(), maps: bases };
    (ker, incl)
}

/// Cokernel object and its projection.
pub fn cokernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let tgt = f.target();
    let alg = tgt.algebra();
    let projs: Vec<FpMatrix> = f.maps.iter().map(|m| m.cokernel_projection().proj).collect();
    let dims: Vec<usize> = projs.iter().map(FpMatrix::rows).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            // X Q_s = Q_t N_a, solved through the transpose.
            let rhs = projs[arrow.target].dot(tgt.arrow_map(a));
            projs[arrow.source]
                .transpose()
                .solve_right(&rhs.transpose())
                .expect("arrow maps preserve images")
                .transpose()
        })
        .collect();
    let coker = Representation::from_parts_unchecked(alg, dims, maps);
    let proj = RepMorphism { source: tgt.clone(), target: coker.clone(), maps: projs };
    (coker, proj)
}

/// An n-ary biproduct with all structure maps.
#[derive(Debug, Clone)]
pub struct Biproduct {
    pub total: Representation,
    pub injections: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

impl Biproduct {
    /// Checks `p_i ι_j = δ_ij` and `Σ ι_i p_i = id`.
    pub fn verify(&self) -> bool {
        let n = self.injections.len();
        for i in 0..n {
            for j in 0..n {
                let Ok(c) = self.projections[i].compose(&self.injections[j]) else { return false };
                if (i == j && !c.is_identity()) || (i != j && !c.is_zero()) {
                    return false;
                }
            }
        }
        let mut sum = RepMorphism::zero(&self.total, &self.total);
        for (i, p) in self.injections.iter().zip(&self.projections) {
            match i.compose(p).and_then(|ip| sum.add(&ip)) {
                Ok(s) => sum = s,
                Err(_) => return false,
            }
        }
        sum.is_identity()
    }

    /// The morphism `total -> other.total` with block `(j, i)` equal to
    /// `blocks[j][i]: parts[i] -> other.parts[j]`.
    pub fn matrix_morphism(&self, other: &Biproduct, blocks: &[Vec<RepMorphism>]) -> RepMorphism {
        let mut acc = RepMorphism::zero(&self.total, &other.total);
        for (j, row) in blocks.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                let term = other.injections[j].after(&b.after(&self.projections[i]));
                acc = acc.add(&term).expect("parallel");
            }
        }
        acc
    }
}

/// Block-diagonal direct sum of `parts` in the given order.
pub fn direct_sum(parts: &[Representation]) -> Result<Biproduct, Error> {
    let Some(first) = parts.first() else {
        return Err(Error::Invalid("direct sum of an empty list needs an algebra; use direct_sum_over".into()));
    };
    direct_sum_over(first.algebra(), parts)
}

/// As [`direct_sum`], allowing the empty list (which yields the zero object).
pub fn direct_sum_over(alg: &Arc<BoundQuiverAlgebra>, parts: &[Representation]) -> Result<Biproduct, Error> {
    for part in parts {
        if part.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = alg.prime();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims()[v]).sum()).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let blocks: Vec<&FpMatrix> = parts.iter().map(|m| m.arrow_map(a)).collect();
            FpMatrix::block_diag(p, &blocks)
        })
        .collect();
    let total = Representation::from_parts_unchecked(alg, dims.clone(), maps);
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = vec![0usize; n];
    for part in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let d = part.dims()[v];
            let mut i = FpMatrix::zeros(p, dims[v], d);
            i.paste(offset[v], 0, &FpMatrix::identity(p, d));
            proj.push(i.transpose());
            inj.push(i);
            offset[v] += d;
        }
        injections.push(RepMorphism { source: part.clone(), target: total.clone(), maps: inj });
        projections.push(RepMorphism { source: total.clone(), target: part.clone(), maps: proj });
    }
    Ok(Biproduct { total, injections, projections })
}

/// `f_1 ⊕ ... ⊕ f_n` between the block sums of sources and targets.
pub fn direct_sum_of_morphisms(fs: &[RepMorphism]) -> Result<RepMorphism, Error> {
    let first = fs.first().ok_or_else(|| Error::Invalid("empty morphism list".into()))?;
    let alg = first.source().algebra().clone();
    let sources: Vec<Representation> = fs.iter().map(|f| f.source().clone()).collect();
    let targets: Vec<Representation> = fs.iter().map(|f| f.target().clone()).collect();
    let src = direct_sum_over(&alg, &sources)?;
    let tgt = direct_sum_over(&alg, &targets)?;
    let p = alg.prime();
    let maps = (0..alg.vertex_count())
        .map(|v| {
            let blocks: Vec<&FpMatrix> = fs.iter().map(|f| &f.maps[v]).collect();
            FpMatrix::block_diag(p, &blocks)
        })
        .collect();
    Ok(RepMorphism { source: src.total, target: tgt.total, maps })
}

/// Result of an isomorphism search.
#[derive(Debug, Clone)]
pub enum IsoOutcome {
    /// A verified isomorphism `m -> n`.
    Iso(RepMorphism),
    NotIsomorphic(String),
    Inconclusive {
        hom_dim: usize,
    },
}

impl IsoOutcome {
    pub fn witness(&self) -> Option<&RepMorphism> {
        match self {
            IsoOutcome::Iso(w) => Some(w),
            _ => None,
        }
    }
}

/// Largest search space enumerated exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Decides `m ≅ n` by invariants, seeded random search over `Hom(m, n)` and
/// exhaustive enumeration when the Hom space is small enough.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64, trials: usize) -> Result<IsoOutcome, Error> {
    m.same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoOutcome::NotIsomorphic("dimension vectors differ".into()));
    }
    if m == n {
        return Ok(IsoOutcome::Iso(RepMorphism::identity(m)));
    }
    for (a, (x, y)) in m.arrow_maps().iter().zip(n.arrow_maps()).enumerate() {
        if x.rank() != y.rank() {
            return Ok(IsoOutcome::NotIsomorphic(format!("arrow {} has different ranks", a + 1)));
        }
    }
    let soc_m = crate::quivalg::socle_inclusion(m);
    let soc_n = crate::quivalg::socle_inclusion(n);
    if soc_m.source().dims() != soc_n.source().dims() {
        return Ok(IsoOutcome::NotIsomorphic("socle dimension vectors differ".into()));
    }
    let forward = hom_matrix(m, n);
    let backward = hom_matrix(n, m);
    if forward.cols() != backward.cols() {
        return Ok(IsoOutcome::NotIsomorphic("dim Hom(m,n) != dim Hom(n,m)".into()));
    }
    let h = forward.cols();
    if h == 0 {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero morphisms".into()));
    }
    let vars = MorphismVars::new(m, n);
    let basis: Vec<RepMorphism> = (0..h).map(|c| vars.devectorize(m, n, &forward.column(c))).collect();
    let p = m.prime().get();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut acc = RepMorphism::zero(m, n);
        for b in &basis {
            let c = rng.random_range(0..p);
            if c != 0 {
                acc = acc.add(&b.scale(c)).expect("parallel");
            }
        }
        if acc.is_iso() {
            return Ok(IsoOutcome::Iso(reverify(acc)?));
        }
    }

    let space = (p as u64).checked_pow(h as u32);
    if space.is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        // Odometer over coefficient vectors: bumping digit k adds basis[k],
        // also when the digit wraps, since p * basis[k] = 0.
        let mut digits = vec![0u32; h];
        let mut acc = RepMorphism::zero(m, n);
        loop {
            let mut k = 0;
            loop {
                if k == h {
                    return Ok(IsoOutcome::NotIsomorphic("exhaustive search found no isomorphism".into()));
                }
                acc = acc.add(&basis[k]).expect("parallel");
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if acc.is_iso() {
                return Ok(IsoOutcome::Iso(reverify(acc)?));
            }
        }
    }
    Ok(IsoOutcome::Inconclusive { hom_dim: h })
}

fn reverify(f: RepMorphism) -> Result<RepMorphism, Error> {
    f.check_naturality()?;
    if !f.is_iso() {
        return Err(Error::NotAnIsomorphism("witness failed re-verification".into()));
    }
    Ok(f)
}

/// Attempts per dimension vector before shrinking it.
const SAMPLES_PER_SHAPE: usize = 200;

/// Random representation with total dimension at most `max_dim`, drawn by
/// rejection sampling of arrow matrices.
pub fn random_representation(
    alg: &Arc<BoundQuiverAlgebra>,
    max_dim: usize,
    seed: u64,
) -> Result<Representation, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_representation_with(alg, max_dim, &mut rng)
}

pub fn random_representation_with<R: Rng>(
    alg: &Arc<BoundQuiverAlgebra>,
    max_dim: usize,
    rng: &mut R,
) -> Result<Representation, Error> {
    if max_dim == 0 {
        return Err(Error::Invalid("max_dim must be at least 1".into()));
    }
    let n = alg.vertex_count();
    let total = rng.random_range(1..=max_dim);
    let mut dims = vec![0usize; n];
    for _ in 0..total {
        dims[rng.random_range(0..n)] += 1;
    }
    let p = alg.prime();
    loop {
        for attempt in 0..SAMPLES_PER_SHAPE {
            // Every other draw is sparse, which makes nilpotency relations
            // far more likely to hold.
            let sparse = attempt % 2 == 1;
            let maps: Vec<FpMatrix> = alg
                .quiver()
                .arrows()
                .iter()
                .map(|a| {
                    let (r, c) = (dims[a.target], dims[a.source]);
                    let entries: Vec<i64> = (0..r * c)
                        .map(|_| if sparse && rng.random_bool(0.6) { 0 } else { rng.random_range(0..p.get()) as i64 })
                        .collect();
                    FpMatrix::from_entries(p, r, c, &entries).expect("shape")
                })
                .collect();
            if let Ok(rep) = Representation::new(alg, dims.clone(), maps) {
                return Ok(rep);
            }
        }
        let occupied: Vec<usize> = (0..n).filter(|&v| dims[v] > 0).collect();
        if occupied.iter().map(|&v| dims[v]).sum::<usize>() <= 1 {
            return Err(Error::GenerationBudgetExceeded("no representation found even in dimension one".into()));
        }
        let v = occupied[rng.random_range(0..occupied.len())];
        dims[v] -= 1;
    }
}
