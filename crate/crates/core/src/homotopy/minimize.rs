use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ChainMap, Complex, Homotopy};
use crate::catcore::{CatError, CategorySpec, Mor, Obj};

/// A homotopy equivalence `forward : X -> M`, `backward : M -> X` with
/// `forward ∘ backward = id_M` on the nose and
/// `id_X - backward ∘ forward = d h + h d`.
#[derive(Debug, Clone)]
pub struct Minimized {
    pub complex: Complex,
    pub forward: ChainMap,
    pub backward: ChainMap,
    pub homotopy: Homotopy,
}

/// One invertible entry: copy `col` of simple `s` in degree `i` maps onto copy
/// `row` of `s` in degree `i + 1`.
#[derive(Debug, Clone, Copy)]
struct Pivot {
    degree: i32,
    simple: usize,
    row: usize,
    col: usize,
}

fn find_pivot(x: &Complex) -> Option<Pivot> {
    for (&degree, d) in x.differentials() {
        for (simple, block) in d.ss.iter().enumerate() {
            for col in 0..block.cols() {
                for row in 0..block.rows() {
                    if !block[(row, col)].is_zero() {
                        return Some(Pivot { degree, simple, row, col });
                    }
                }
            }
        }
    }
    None
}

/// Inclusion of one copy of a simple and of its complement.
fn split(spec: &CategorySpec, x: &Obj, s: usize, k: usize) -> (Mor, Mor) {
    let one: Vec<Vec<usize>> = (0..spec.n_simples()).map(|t| if t == s { vec![k] } else { Vec::new() }).collect();
    let rest: Vec<Vec<usize>> = (0..spec.n_simples())
        .map(|t| (0..x.mult(t)).filter(|&j| t != s || j != k).collect())
        .collect();
    (spec.sub_inclusion(x, &one), spec.sub_inclusion(x, &rest))
}

impl CategorySpec {
    /// Cancels a single invertible entry of the differential.
    ///
    /// With `X^i = S ⊕ A`, `X^{i+1} = S ⊕ B` and `d^i = [[φ, δ], [γ, ε]]`, the
    /// reduced complex has `ε - γ φ⁻¹ δ` in degree `i`.
    fn cancel_once(&self, x: &Complex, p: Pivot) -> Result<Minimized, CatError> {
        let i = p.degree;
        let (xi, xj) = (x.obj(self, i), x.obj(self, i + 1));
        let (inc_s, inc_a) = split(self, &xi, p.simple, p.col);
        let (inc_t, inc_b) = split(self, &xj, p.simple, p.row);
        let pr_a = self.transpose_ss(&inc_a);
        let (pr_t, pr_b) = (self.transpose_ss(&inc_t), self.transpose_ss(&inc_b));
        let d = x.d(self, i);
        let phi = self.compose_all(&[&pr_t, &d, &inc_s])?;
        let delta = self.compose_all(&[&pr_t, &d, &inc_a])?;
        let gamma = self.compose_all(&[&pr_b, &d, &inc_s])?;
        let eps = self.compose_all(&[&pr_b, &d, &inc_a])?;
        let phi_inv = self.inverse(&phi).expect("pivot block is invertible");

        let mut objs = x.components().clone();
        objs.insert(i, inc_a.source.clone());
        objs.insert(i + 1, inc_b.source.clone());
        let mut diffs = x.differentials().clone();
        diffs.insert(i, eps.sub(&self.compose_all(&[&gamma, &phi_inv, &delta])?)?);
        if let Some(d) = diffs.get_mut(&(i - 1)) {
            *d = self.compose(&pr_a, &x.d(self, i - 1))?;
        }
        if let Some(d) = diffs.get_mut(&(i + 1)) {
            *d = self.compose(&x.d(self, i + 1), &inc_b)?;
        }
        let m = Complex::new(self, objs, diffs)?;

        let mut fwd: BTreeMap<i32, Mor> =
            x.components().iter().map(|(&k, o)| (k, Mor::identity(self, o))).collect();
        let mut bwd = fwd.clone();
        fwd.insert(i, pr_a);
        fwd.insert(i + 1, pr_b.sub(&self.compose_all(&[&gamma, &phi_inv, &pr_t])?)?);
        bwd.insert(i, inc_a.sub(&self.compose_all(&[&inc_s, &phi_inv, &delta])?)?);
        bwd.insert(i + 1, inc_b);
        let forward = ChainMap::new(self, x, &m, fwd)?;
        let backward = ChainMap::new(self, &m, x, bwd)?;
        let h = self.compose_all(&[&inc_s, &phi_inv, &pr_t])?;
        let homotopy = Homotopy { source: x.clone(), target: x.clone(), comps: BTreeMap::from([(i + 1, h)]) };
        Ok(Minimized { complex: m, forward, backward, homotopy })
    }

    /// Gaussian elimination until every differential is purely numerical.
    pub fn minimize(&self, x: &Complex) -> Result<Minimized, CatError> {
        let mut steps = Vec::new();
        let mut cur = x.clone();
        while let Some(p) = find_pivot(&cur) {
            let step = self.cancel_once(&cur, p)?;
            cur = step.complex.clone();
            steps.push(step);
        }
        let mut forward = ChainMap::identity(self, &cur);
        let mut backward = ChainMap::identity(self, &cur);
        let mut homotopy = Homotopy::zero(&cur, &cur);
        // with G = G_1 G', F = F' F_1: id - G F = d H + H d for H = H_1 + G_1 H' F_1,
        // accumulated from the innermost step outwards
        for step in steps.iter().rev() {
            homotopy = step.homotopy.add(self, &homotopy.conjugate(self, &step.backward, &step.forward)?)?;
            forward = forward.after(self, &step.forward)?;
            backward = step.backward.after(self, &backward)?;
        }
        Ok(Minimized { complex: cur, forward, backward, homotopy })
    }

    /// All differentials have zero semisimple part.
    pub fn is_minimal(&self, x: &Complex) -> bool {
        x.differentials().values().all(|d| d.ss.iter().all(|b| b.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;
    use crate::qlinalg::q;

    fn check_equivalence(spec: &CategorySpec, x: &Complex, m: &Minimized) {
        assert!(spec.is_minimal(&m.complex));
        assert_eq!(m.forward.after(spec, &m.backward).unwrap(), ChainMap::identity(spec, &m.complex));
        let gf = m.backward.after(spec, &m.forward).unwrap();
        assert!(m.homotopy.witnesses(spec, &ChainMap::identity(spec, x), &gf).unwrap());
    }

    #[test]
    fn identity_cancels_completely() {
        let c = ell();
        let one = Obj::unit(&c);
        let x = Complex::two_term(&c, &Mor::identity(&c, &one), 0).unwrap();
        let m = c.minimize(&x).unwrap();
        assert!(m.complex.is_zero());
        check_equivalence(&c, &x, &m);
    }

    #[test]
    fn one_cancellation_leaves_alpha() {
        let c = ell();
        let one = Obj::unit(&c);
        let h1 = Obj::simple(&c, 1);
        let alpha = c.hom_space(&one, &h1).pop().unwrap();
        let src = Obj::copies(&c, 0, 2);
        let tgt = one.sum(&h1);
        let mut d = Mor::zero(&c, &src, &tgt);
        d.ss[0][(0, 0)] = q(1);
        d.nil[0][0][(0, 1)] = q(1);
        let x = Complex::two_term(&c, &d, 0).unwrap();
        let m = c.minimize(&x).unwrap();
        assert_eq!(m.complex, Complex::two_term(&c, &alpha, 0).unwrap());
        check_equivalence(&c, &x, &m);
    }

    #[test]
    fn alpha_is_already_minimal() {
        let c = ell();
        let alpha = c.hom_space(&Obj::unit(&c), &Obj::simple(&c, 1)).pop().unwrap();
        let x = Complex::two_term(&c, &alpha, -1).unwrap();
        let m = c.minimize(&x).unwrap();
        assert_eq!(m.complex, x);
        check_equivalence(&c, &x, &m);
    }

    #[test]
    fn three_term_with_mixed_pivots() {
        let c = ell();
        let one = Obj::unit(&c);
        let h1 = Obj::simple(&c, 1);
        let x0 = one.sum(&h1);
        let x1 = one.sum(&h1).sum(&one);
        let x2 = one.clone();
        // d0 = [[1, α-ish], ...]: x0 -> x1
        let mut d0 = Mor::zero(&c, &x0, &x1);
        d0.ss[0][(0, 0)] = q(1);
        d0.ss[1][(0, 0)] = q(2);
        d0.nil[0][0][(0, 0)] = q(3);
        // d1 kills the image of d0: x1 -> x2 on the second copy of 𝟙 only
        let mut d1 = Mor::zero(&c, &x1, &x2);
        d1.ss[0][(0, 1)] = q(5);
        let x = Complex::new(
            &c,
            BTreeMap::from([(0, x0), (1, x1), (2, x2)]),
            BTreeMap::from([(0, d0), (1, d1)]),
        )
        .unwrap();
        let m = c.minimize(&x).unwrap();
        check_equivalence(&c, &x, &m);
        assert!(m.complex.is_zero());
    }
}
