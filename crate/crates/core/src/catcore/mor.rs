use std::fmt;

use num_traits::Zero;

use super::{CatError, CategorySpec};
use crate::qlinalg::{Mat, Scalar};

/// An object: a multiplicity for each simple, in declaration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub Vec<usize>);

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj{:?}", self.0)
    }
}

impl Obj {
    pub fn zero(spec: &CategorySpec) -> Obj {
        Obj(vec![0; spec.n_simples()])
    }

    pub fn simple(spec: &CategorySpec, s: usize) -> Obj {
        Self::copies(spec, s, 1)
    }

    pub fn copies(spec: &CategorySpec, s: usize, n: usize) -> Obj {
        let mut v = vec![0; spec.n_simples()];
        v[s] = n;
        Obj(v)
    }

    pub fn unit(spec: &CategorySpec) -> Obj {
        Self::simple(spec, spec.unit)
    }

    pub fn mult(&self, s: usize) -> usize {
        self.0[s]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Direct sum; copies of each simple are ordered summand by summand.
    pub fn sum(&self, other: &Obj) -> Obj {
        Obj(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sum_all<'a>(n: usize, objs: impl IntoIterator<Item = &'a Obj>) -> Obj {
        objs.into_iter().fold(Obj(vec![0; n]), |acc, o| acc.sum(o))
    }

    pub fn describe(&self, spec: &CategorySpec) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(s, &m)| if m == 1 { spec.name(s).to_string() } else { format!("{m}*{}", spec.name(s)) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// A morphism as a semisimple part and a numerical part.
///
/// `ss[S]` is an `m_S(target) x m_S(source)` scalar block. `nil[b][k]` is the
/// coefficient matrix of the `k`-th basis vector of bimodule entry `b`
/// (`S -> S'`), of size `m_S'(target) x m_S(source)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mor {
    pub source: Obj,
    pub target: Obj,
    pub ss: Vec<Mat>,
    pub nil: Vec<Vec<Mat>>,
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mor")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("ss", &self.ss)
            .field("nil", &self.nil)
            .finish()
    }
}

impl Mor {
    pub fn zero(spec: &CategorySpec, source: &Obj, target: &Obj) -> Mor {
        let ss = (0..spec.n_simples()).map(|s| Mat::zeros(target.mult(s), source.mult(s))).collect();
        let nil = spec
            .bimodule
            .iter()
            .map(|b| vec![Mat::zeros(target.mult(b.target), source.mult(b.source)); b.dim()])
            .collect();
        Mor { source: source.clone(), target: target.clone(), ss, nil }
    }

    pub fn identity(spec: &CategorySpec, x: &Obj) -> Mor {
        let mut m = Mor::zero(spec, x, x);
        for (s, block) in m.ss.iter_mut().enumerate() {
            *block = Mat::identity(x.mult(s));
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.ss.iter().all(Mat::is_zero) && self.nil.iter().flatten().all(Mat::is_zero)
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn has_nil_part(&self) -> bool {
        self.nil.iter().flatten().any(|m| !m.is_zero())
    }

    fn zip_with(&self, other: &Mor, f: impl Fn(&Mat, &Mat) -> Mat) -> Result<Mor, CatError> {
        if self.source != other.source || self.target != other.target {
            return Err(CatError::ObjectMismatch("adding morphisms between different objects".into()));
        }
        Ok(Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            ss: self.ss.iter().zip(&other.ss).map(|(a, b)| f(a, b)).collect(),
            nil: self
                .nil
                .iter()
                .zip(&other.nil)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        })
    }

    pub fn add(&self, other: &Mor) -> Result<Mor, CatError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mor) -> Result<Mor, CatError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Scalar) -> Mor {
        Mor {
            source: self.source.clone(),
            target: self.target.clone(),
            ss: self.ss.iter().map(|m| m.scale(k)).collect(),
            nil: self.nil.iter().map(|v| v.iter().map(|m| m.scale(k)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> Mor {
        self.scale(&-Scalar::from_integer(1.into()))
    }
}

/// One element of the standard basis of a hom-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Ss(usize),
    Nil(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisElem {
    pub part: Part,
    pub row: usize,
    pub col: usize,
}

/// Index arithmetic for the standard basis of `Hom(X, Y)`: semisimple blocks
/// in simple order, then bimodule entries in declaration order, each matrix
/// row-major.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source: Obj,
    pub target: Obj,
    ss_off: Vec<usize>,
    nil_off: Vec<usize>,
    nil_shape: Vec<(usize, usize, usize)>,
    dim: usize,
}

impl HomBasis {
    pub fn new(spec: &CategorySpec, x: &Obj, y: &Obj) -> HomBasis {
        let mut off = 0;
        let mut ss_off = Vec::with_capacity(spec.n_simples());
        for s in 0..spec.n_simples() {
            ss_off.push(off);
            off += y.mult(s) * x.mult(s);
        }
        let mut nil_off = Vec::with_capacity(spec.bimodule.len());
        let mut nil_shape = Vec::with_capacity(spec.bimodule.len());
        for b in &spec.bimodule {
            nil_off.push(off);
            let (r, c) = (y.mult(b.target), x.mult(b.source));
            nil_shape.push((b.dim(), r, c));
            off += b.dim() * r * c;
        }
        HomBasis { source: x.clone(), target: y.clone(), ss_off, nil_off, nil_shape, dim: off }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, e: BasisElem) -> usize {
        match e.part {
            Part::Ss(s) => self.ss_off[s] + e.row * self.source.mult(s) + e.col,
            Part::Nil(b, k) => {
                let (_, r, c) = self.nil_shape[b];
                self.nil_off[b] + k * r * c + e.row * c + e.col
            }
        }
    }

    pub fn elem(&self, mut i: usize) -> BasisElem {
        assert!(i < self.dim, "basis index out of range");
        for (s, &off) in self.ss_off.iter().enumerate() {
            let size = self.target.mult(s) * self.source.mult(s);
            if i < off + size {
                i -= off;
                let c = self.source.mult(s);
                return BasisElem { part: Part::Ss(s), row: i / c, col: i % c };
            }
        }
        for (b, &off) in self.nil_off.iter().enumerate() {
            let (d, r, c) = self.nil_shape[b];
            if i < off + d * r * c {
                i -= off;
                let k = i / (r * c);
                let rem = i % (r * c);
                return BasisElem { part: Part::Nil(b, k), row: rem / c, col: rem % c };
            }
        }
        unreachable!()
    }

    pub fn mor(&self, spec: &CategorySpec, e: BasisElem) -> Mor {
        let mut m = Mor::zero(spec, &self.source, &self.target);
        let one = Scalar::from_integer(1.into());
        match e.part {
            Part::Ss(s) => m.ss[s][(e.row, e.col)] = one,
            Part::Nil(b, k) => m.nil[b][k][(e.row, e.col)] = one,
        }
        m
    }

    pub fn coords(&self, f: &Mor) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.dim);
        for m in &f.ss {
            v.extend_from_slice(m.entries());
        }
        for stack in &f.nil {
            for m in stack {
                v.extend_from_slice(m.entries());
            }
        }
        debug_assert_eq!(v.len(), self.dim);
        v
    }

    pub fn from_coords(&self, spec: &CategorySpec, v: &[Scalar]) -> Mor {
        assert_eq!(v.len(), self.dim, "coordinate vector has the wrong length");
        let mut m = Mor::zero(spec, &self.source, &self.target);
        let mut it = v.iter().cloned();
        for block in m.ss.iter_mut() {
            let (r, c) = (block.rows(), block.cols());
            *block = Mat::new(r, c, it.by_ref().take(r * c).collect()).expect("ss block");
        }
        for stack in m.nil.iter_mut() {
            for block in stack.iter_mut() {
                let (r, c) = (block.rows(), block.cols());
                *block = Mat::new(r, c, it.by_ref().take(r * c).collect()).expect("nil block");
            }
        }
        m
    }
}

impl CategorySpec {
    pub fn hom_basis(&self, x: &Obj, y: &Obj) -> HomBasis {
        HomBasis::new(self, x, y)
    }

    /// Standard basis of `Hom(X, Y)`.
    pub fn hom_space(&self, x: &Obj, y: &Obj) -> Vec<Mor> {
        let hb = self.hom_basis(x, y);
        (0..hb.dim()).map(|i| hb.mor(self, hb.elem(i))).collect()
    }

    pub fn hom_dim(&self, x: &Obj, y: &Obj) -> usize {
        self.hom_basis(x, y).dim()
    }

    pub fn coords(&self, f: &Mor) -> Mat {
        Mat::column(self.hom_basis(&f.source, &f.target).coords(f))
    }

    /// Square-zero composition `(s, n) ∘ (s', n') = (s s', s n' + n s')`.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor, CatError> {
        if g.source != f.target {
            return Err(CatError::ObjectMismatch(format!(
                "compose: source {:?} does not match target {:?}",
                g.source, f.target
            )));
        }
        let ss = g.ss.iter().zip(&f.ss).map(|(a, b)| a * b).collect();
        let nil = self
            .bimodule
            .iter()
            .enumerate()
            .map(|(bi, b)| {
                (0..b.dim())
                    .map(|k| &(&g.ss[b.target] * &f.nil[bi][k]) + &(&g.nil[bi][k] * &f.ss[b.source]))
                    .collect()
            })
            .collect();
        Ok(Mor { source: f.source.clone(), target: g.target.clone(), ss, nil })
    }

    /// Composes a chain `fs[0] ∘ fs[1] ∘ ...`.
    pub fn compose_all(&self, fs: &[&Mor]) -> Result<Mor, CatError> {
        let (last, rest) = fs.split_last().expect("compose_all needs a morphism");
        rest.iter().rev().try_fold((*last).clone(), |acc, g| self.compose(g, &acc))
    }

    /// Product of two standard basis elements in the composition `Z <- Y <- X`.
    /// The standard basis is closed under composition up to zero, so the result
    /// is a basis element of `Hom(X, Z)` or nothing.
    pub fn compose_basis(&self, g: BasisElem, f: BasisElem) -> Option<BasisElem> {
        if g.col != f.row {
            return None;
        }
        let part = match (g.part, f.part) {
            (Part::Ss(a), Part::Ss(b)) if a == b => Part::Ss(a),
            (Part::Ss(a), Part::Nil(b, k)) if self.bimodule[b].target == a => Part::Nil(b, k),
            (Part::Nil(b, k), Part::Ss(a)) if self.bimodule[b].source == a => Part::Nil(b, k),
            _ => return None,
        };
        Some(BasisElem { part, row: g.row, col: f.col })
    }

    /// Invertibility in the square-zero model: the semisimple blocks decide.
    pub fn inverse(&self, f: &Mor) -> Option<Mor> {
        if f.source != f.target {
            return None;
        }
        let inv_ss: Vec<Mat> = f.ss.iter().map(Mat::inverse).collect::<Option<_>>()?;
        let s_inv = Mor {
            source: f.source.clone(),
            target: f.target.clone(),
            ss: inv_ss,
            nil: Mor::zero(self, &f.source, &f.target).nil,
        };
        // (s + n)^{-1} = s^{-1} - s^{-1} n s^{-1}
        let mut n = f.clone();
        for block in n.ss.iter_mut() {
            *block = Mat::zeros(block.rows(), block.cols());
        }
        let corr = self.compose_all(&[&s_inv, &n, &s_inv]).ok()?;
        s_inv.sub(&corr).ok()
    }

    pub fn is_invertible(&self, f: &Mor) -> bool {
        f.source == f.target && f.ss.iter().all(Mat::is_invertible)
    }

    /// The semisimple part `(ss, 0)`: the quotient functor onto the numerical
    /// quotient category.
    pub fn quotient_num(&self, f: &Mor) -> Mor {
        let mut m = Mor::zero(self, &f.source, &f.target);
        m.ss = f.ss.clone();
        m
    }

    /// Inclusion of the `k`-th summand of `⊕ parts`.
    pub fn inclusion(&self, parts: &[Obj], k: usize) -> Mor {
        let total = Obj::sum_all(self.n_simples(), parts);
        let mut m = Mor::zero(self, &parts[k], &total);
        for s in 0..self.n_simples() {
            let off: usize = parts[..k].iter().map(|p| p.mult(s)).sum();
            for i in 0..parts[k].mult(s) {
                m.ss[s][(off + i, i)] = Scalar::from_integer(1.into());
            }
        }
        m
    }

    /// Projection onto the `k`-th summand of `⊕ parts`.
    pub fn projection(&self, parts: &[Obj], k: usize) -> Mor {
        let inc = self.inclusion(parts, k);
        Mor {
            source: inc.target.clone(),
            target: inc.source.clone(),
            ss: inc.ss.iter().map(Mat::transpose).collect(),
            nil: Mor::zero(self, &inc.target, &inc.source).nil,
        }
    }

    /// Block morphism `⊕ sources -> ⊕ targets`; `blocks[i][j]` maps source `j`
    /// to target `i`, `None` meaning zero.
    pub fn from_blocks(
        &self,
        targets: &[Obj],
        sources: &[Obj],
        blocks: &[Vec<Option<Mor>>],
    ) -> Result<Mor, CatError> {
        let t = Obj::sum_all(self.n_simples(), targets);
        let s = Obj::sum_all(self.n_simples(), sources);
        let mut acc = Mor::zero(self, &s, &t);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                let Some(b) = b else { continue };
                if b.source != sources[j] || b.target != targets[i] {
                    return Err(CatError::ObjectMismatch(format!("block ({i}, {j}) has the wrong shape")));
                }
                let placed = self.compose_all(&[
                    &self.inclusion(targets, i),
                    b,
                    &self.projection(sources, j),
                ])?;
                acc = acc.add(&placed)?;
            }
        }
        Ok(acc)
    }

    /// The `(i, j)` block of a morphism `⊕ sources -> ⊕ targets`.
    pub fn block(&self, f: &Mor, targets: &[Obj], sources: &[Obj], i: usize, j: usize) -> Result<Mor, CatError> {
        self.compose_all(&[&self.projection(targets, i), f, &self.inclusion(sources, j)])
    }

    /// Direct sum of morphisms.
    pub fn mor_sum(&self, fs: &[&Mor]) -> Result<Mor, CatError> {
        let sources: Vec<Obj> = fs.iter().map(|f| f.source.clone()).collect();
        let targets: Vec<Obj> = fs.iter().map(|f| f.target.clone()).collect();
        let blocks: Vec<Vec<Option<Mor>>> = (0..fs.len())
            .map(|i| (0..fs.len()).map(|j| (i == j).then(|| fs[i].clone())).collect())
            .collect();
        self.from_blocks(&targets, &sources, &blocks)
    }

    /// Selects the copies `keep[s]` of each simple: returns the sub-object and
    /// its inclusion.
    pub fn sub_inclusion(&self, x: &Obj, keep: &[Vec<usize>]) -> Mor {
        let sub = Obj(keep.iter().map(Vec::len).collect());
        let mut m = Mor::zero(self, &sub, x);
        for (s, idx) in keep.iter().enumerate() {
            for (j, &i) in idx.iter().enumerate() {
                m.ss[s][(i, j)] = Scalar::from_integer(1.into());
            }
        }
        m
    }

    pub fn transpose_ss(&self, inc: &Mor) -> Mor {
        debug_assert!(!inc.has_nil_part());
        Mor {
            source: inc.target.clone(),
            target: inc.source.clone(),
            ss: inc.ss.iter().map(Mat::transpose).collect(),
            nil: Mor::zero(self, &inc.target, &inc.source).nil,
        }
    }

    /// Linear combination of morphisms in the same hom-space.
    pub fn combination(&self, x: &Obj, y: &Obj, coeffs: &[Scalar], basis: &[Mor]) -> Mor {
        let mut acc = Mor::zero(self, x, y);
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c)).expect("combination");
            }
        }
        acc
    }
}
