//! Trace, the numerical ideal, the radical, and idempotent lifting.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{BasisElem, CatError, CategorySpec, HomBasis, Mor, Obj, Part};
use crate::qlinalg::{self, bilinear_radical, q, Mat, Scalar};

/// A subspace of `Hom(source, target)` given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSubspace {
    pub source: Obj,
    pub target: Obj,
    pub basis: Vec<Mor>,
}

impl IdealSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(source: &Obj, target: &Obj) -> Self {
        IdealSubspace { source: source.clone(), target: target.clone(), basis: Vec::new() }
    }

    fn vectors(&self, spec: &CategorySpec) -> Vec<Mat> {
        self.basis.iter().map(|m| spec.coords(m)).collect()
    }

    pub fn contains(&self, spec: &CategorySpec, f: &Mor) -> bool {
        let dim = spec.hom_dim(&self.source, &self.target);
        qlinalg::span_contains(dim, &self.vectors(spec), &spec.coords(f))
    }

    pub fn same_span(&self, spec: &CategorySpec, other: &IdealSubspace) -> bool {
        let dim = spec.hom_dim(&self.source, &self.target);
        self.source == other.source
            && self.target == other.target
            && qlinalg::same_span(dim, &self.vectors(spec), &other.vectors(spec))
    }

    pub fn is_subspace_of(&self, spec: &CategorySpec, other: &IdealSubspace) -> bool {
        self.basis.iter().all(|f| other.contains(spec, f))
    }
}

/// A finite-dimensional algebra whose basis is closed under multiplication up
/// to scalars and zero: `e_i e_j` is `c e_k` or `0`.
pub trait MonomialAlgebra {
    fn dim(&self) -> usize;
    fn product(&self, i: usize, j: usize) -> Option<(usize, Scalar)>;

    /// `tr(L_{e_k})` for every basis element.
    fn regular_traces(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                (0..n)
                    .filter_map(|c| match self.product(k, c) {
                        Some((r, v)) if r == c => Some(v),
                        _ => None,
                    })
                    .sum()
            })
            .collect()
    }

    /// Rows of the trace form `(a, b) ↦ tr(L_{ab})` for the chosen basis
    /// elements `rows` against the full basis.
    fn trace_form_rows(&self, rows: &[usize]) -> Mat {
        let t = self.regular_traces();
        let n = self.dim();
        let mut m = Mat::zeros(rows.len(), n);
        for (i, &a) in rows.iter().enumerate() {
            for b in 0..n {
                if let Some((k, v)) = self.product(a, b) {
                    if !t[k].is_zero() {
                        m[(i, b)] = v * &t[k];
                    }
                }
            }
        }
        m
    }

    /// Whether the left ideal generated by a basis element is nilpotent.
    /// Powers `L^{j+1} = L · L^j` form a descending chain of spans of basis
    /// elements; the ideal is nilpotent iff the chain reaches zero.
    fn left_ideal_nilpotent(&self, generator: usize) -> bool {
        let n = self.dim();
        let ideal: BTreeSet<usize> =
            (0..n).filter_map(|a| self.product(a, generator).map(|(k, _)| k)).collect();
        let mut power = ideal.clone();
        loop {
            if power.is_empty() {
                return true;
            }
            let next: BTreeSet<usize> = ideal
                .iter()
                .flat_map(|&a| power.iter().filter_map(move |&b| self.product(a, b).map(|(k, _)| k)))
                .collect();
            if next == power {
                return false;
            }
            power = next;
        }
    }
}

/// `End(Z)` with its standard basis.
pub struct EndAlgebra<'a> {
    spec: &'a CategorySpec,
    basis: HomBasis,
}

impl<'a> EndAlgebra<'a> {
    pub fn new(spec: &'a CategorySpec, z: &Obj) -> Self {
        EndAlgebra { spec, basis: spec.hom_basis(z, z) }
    }

    pub fn basis(&self) -> &HomBasis {
        &self.basis
    }
}

impl MonomialAlgebra for EndAlgebra<'_> {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn product(&self, i: usize, j: usize) -> Option<(usize, Scalar)> {
        let e = self.spec.compose_basis(self.basis.elem(i), self.basis.elem(j))?;
        Some((self.basis.index(e), Scalar::one()))
    }
}

/// `End(X)` modulo the numerical ideal: only the semisimple basis survives.
pub struct QuotientEndAlgebra<'a> {
    inner: EndAlgebra<'a>,
    ss: Vec<usize>,
}

impl<'a> QuotientEndAlgebra<'a> {
    pub fn new(spec: &'a CategorySpec, z: &Obj) -> Self {
        let inner = EndAlgebra::new(spec, z);
        let ss = (0..inner.dim()).filter(|&i| matches!(inner.basis.elem(i).part, Part::Ss(_))).collect();
        QuotientEndAlgebra { inner, ss }
    }
}

impl MonomialAlgebra for QuotientEndAlgebra<'_> {
    fn dim(&self) -> usize {
        self.ss.len()
    }

    fn product(&self, i: usize, j: usize) -> Option<(usize, Scalar)> {
        let (k, v) = self.inner.product(self.ss[i], self.ss[j])?;
        Some((self.ss.binary_search(&k).ok()?, v))
    }
}

impl CategorySpec {
    /// Dimension of the radical of `End(X)` in the numerical quotient; zero
    /// when the quotient is semisimple.
    pub fn quotient_radical_dim(&self, x: &Obj) -> usize {
        let alg = QuotientEndAlgebra::new(self, x);
        let all: Vec<usize> = (0..alg.dim()).collect();
        bilinear_radical(&alg.trace_form_rows(&all)).len()
    }

    /// `tr(f) = Σ_S superdim(S) · tr(ss_S(f))`; numerical parts are traceless.
    pub fn trace(&self, f: &Mor) -> Result<Scalar, CatError> {
        if !f.is_endo() {
            return Err(CatError::NotEndomorphism);
        }
        Ok(f.ss.iter().enumerate().map(|(s, m)| q(self.superdim(s)) * m.trace()).sum())
    }

    /// The literal composite `ε ∘ (f ⊗ id) ∘ η`, summed over the copies of each
    /// simple in the source.
    pub fn trace_via_duality(&self, f: &Mor) -> Result<Scalar, CatError> {
        if !f.is_endo() {
            return Err(CatError::NotEndomorphism);
        }
        let x = &f.source;
        let mut total = Scalar::zero();
        for s in 0..self.n_simples() {
            if x.mult(s) == 0 {
                continue;
            }
            let d = self
                .duals
                .get(&s)
                .ok_or_else(|| CatError::MissingDuals(self.name(s).to_string()))?;
            let simple = Obj::simple(self, s);
            let dual = Obj::simple(self, d.dual);
            let twist = Obj::simple(self, d.twist);
            let pair = self.tensor_obj(&simple, &dual)?;
            let copies = pair.mult(d.twist);
            if d.ev.len() != copies || d.coev.len() != copies {
                return Err(CatError::IncoherentSpec {
                    axiom: super::spec::AXIOM_DUALS.into(),
                    detail: format!(
                        "{}: ev/coev need {copies} coefficients on {}",
                        self.name(s),
                        self.name(d.twist)
                    ),
                });
            }
            let mut ev = Mor::zero(self, &pair, &twist);
            let mut coev = Mor::zero(self, &twist, &pair);
            for c in 0..copies {
                ev.ss[d.twist][(0, c)] = d.ev[c].clone();
                coev.ss[d.twist][(c, 0)] = d.coev[c].clone();
            }
            for i in 0..x.mult(s) {
                let keep: Vec<Vec<usize>> =
                    (0..self.n_simples()).map(|t| if t == s { vec![i] } else { Vec::new() }).collect();
                let inc = self.sub_inclusion(x, &keep);
                let proj = self.transpose_ss(&inc);
                let f_ii = self.compose_all(&[&proj, f, &inc])?;
                let lifted = self.tensor_mor(&f_ii, &Mor::identity(self, &dual))?;
                let scalar = self.compose_all(&[&ev, &lifted, &coev])?;
                total += scalar.ss[d.twist][(0, 0)].clone();
            }
        }
        Ok(total)
    }

    /// Gram matrix of `(f, g) ↦ tr(g ∘ f)` over the standard bases of
    /// `Hom(X, Y)` (rows) and `Hom(Y, X)` (columns).
    pub fn trace_pairing(&self, x: &Obj, y: &Obj) -> Mat {
        let fb = self.hom_basis(x, y);
        let gb = self.hom_basis(y, x);
        let mut m = Mat::zeros(fb.dim(), gb.dim());
        for i in 0..fb.dim() {
            for j in 0..gb.dim() {
                // basis composites are basis elements; only diagonal ones have trace
                if let Some(BasisElem { part: Part::Ss(s), row, col }) = self.compose_basis(gb.elem(j), fb.elem(i)) {
                    if row == col {
                        m[(i, j)] = q(self.superdim(s));
                    }
                }
            }
        }
        m
    }

    fn subspace_from_vectors(&self, x: &Obj, y: &Obj, vecs: &[Mat]) -> IdealSubspace {
        let hb = self.hom_basis(x, y);
        IdealSubspace {
            source: x.clone(),
            target: y.clone(),
            basis: vecs.iter().map(|v| hb.from_coords(self, v.entries())).collect(),
        }
    }

    /// Morphisms `f` with `tr(g ∘ f) = 0` for every `g : Y -> X`.
    pub fn numerical_ideal(&self, x: &Obj, y: &Obj) -> IdealSubspace {
        let rad = bilinear_radical(&self.trace_pairing(x, y));
        self.subspace_from_vectors(x, y, &rad)
    }

    /// `Hom(X, Y)` sits in `End(X ⊕ Y)` as the block from the `X` copies to the
    /// `Y` copies. Returns the algebra indices of that block in the order of
    /// the standard basis of `Hom(X, Y)`.
    fn block_indices(&self, x: &Obj, y: &Obj, alg: &EndAlgebra) -> Vec<usize> {
        let hb = self.hom_basis(x, y);
        (0..hb.dim())
            .map(|i| {
                let e = hb.elem(i);
                let row_shift = match e.part {
                    Part::Ss(s) => x.mult(s),
                    Part::Nil(b, _) => x.mult(self.bimodule[b].target),
                };
                alg.basis().index(BasisElem { part: e.part, row: e.row + row_shift, col: e.col })
            })
            .collect()
    }

    /// Radical via the trace form of the regular representation of
    /// `End(X ⊕ Y)`, restricted to the `Hom(X, Y)` block.
    pub fn radical_trace_form(&self, x: &Obj, y: &Obj) -> IdealSubspace {
        let z = x.sum(y);
        let alg = EndAlgebra::new(self, &z);
        let rows = self.block_indices(x, y, &alg);
        let form = alg.trace_form_rows(&rows);
        self.subspace_from_vectors(x, y, &bilinear_radical(&form))
    }

    /// Radical from the definition: a basis morphism `f` qualifies when
    /// `id - g ∘ f` is invertible for every basis `g : Y -> X` and the left
    /// ideal it generates in `End(X ⊕ Y)` is nilpotent; the radical is their
    /// span.
    pub fn radical_definitional(&self, x: &Obj, y: &Obj) -> IdealSubspace {
        let z = x.sum(y);
        let alg = EndAlgebra::new(self, &z);
        let idx = self.block_indices(x, y, &alg);
        let fb = self.hom_basis(x, y);
        let gb = self.hom_basis(y, x);
        // id - g∘f fails to be invertible exactly when g∘f is a diagonal
        // matrix unit of some semisimple block
        let accepted: Vec<Mor> = (0..fb.dim())
            .filter(|&i| {
                (0..gb.dim()).all(|j| {
                    !matches!(
                        self.compose_basis(gb.elem(j), fb.elem(i)),
                        Some(BasisElem { part: Part::Ss(_), row, col }) if row == col
                    )
                })
            })
            .filter(|&i| alg.left_ideal_nilpotent(idx[i]))
            .map(|i| fb.mor(self, fb.elem(i)))
            .collect();
        IdealSubspace { source: x.clone(), target: y.clone(), basis: accepted }
    }

    /// The radical, computed both ways; disagreement is an error.
    pub fn radical(&self, x: &Obj, y: &Obj) -> Result<IdealSubspace, CatError> {
        let a = self.radical_definitional(x, y);
        let b = self.radical_trace_form(x, y);
        if !a.same_span(self, &b) {
            return Err(CatError::RadicalMismatch { definitional: a.dim(), trace_form: b.dim() });
        }
        Ok(b)
    }

    /// Smallest `k <= bound` with `I^k = 0`, where `I^k` is spanned by k-fold
    /// composites of basis elements. `None` if no such `k` exists.
    pub fn nilpotency_index(&self, x: &Obj, ideal: &IdealSubspace, bound: usize) -> Option<usize> {
        if ideal.basis.iter().all(Mor::is_zero) {
            return Some(1);
        }
        let dim = self.hom_dim(x, x);
        let mut power: Vec<Mor> = ideal.basis.clone();
        for k in 2..=bound {
            let products: Vec<Mor> = power
                .iter()
                .flat_map(|p| ideal.basis.iter().map(move |b| (p, b)))
                .map(|(p, b)| self.compose(p, b).expect("endomorphisms"))
                .filter(|m| !m.is_zero())
                .collect();
            if products.is_empty() {
                return Some(k);
            }
            let vecs: Vec<Mat> = products.iter().map(|m| self.coords(m)).collect();
            let hb = self.hom_basis(x, x);
            power = qlinalg::independent_subset(dim, &vecs)
                .iter()
                .map(|v| hb.from_coords(self, v.entries()))
                .collect();
        }
        None
    }

    /// Lifts an idempotent modulo the numerical ideal to an exact idempotent
    /// by iterating `e ← 3e² − 2e³`.
    pub fn lift_idempotent(&self, e_bar: &Mor) -> Result<Mor, CatError> {
        if !e_bar.is_endo() {
            return Err(CatError::NotEndomorphism);
        }
        let sq = self.compose(e_bar, e_bar)?;
        if !self.quotient_num(&sq.sub(e_bar)?).is_zero() {
            return Err(CatError::NotIdempotentModN);
        }
        let mut e = e_bar.clone();
        // converges in about log2 of the nilpotency index steps
        for _ in 0..64 {
            let e2 = self.compose(&e, &e)?;
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.compose(&e2, &e)?;
            e = e2.scale(&q(3)).sub(&e3.scale(&q(2)))?;
        }
        Err(CatError::NotIdempotentModN)
    }
}
