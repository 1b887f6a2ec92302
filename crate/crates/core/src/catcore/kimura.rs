//! Parity profile, symmetric and exterior powers.

use num_traits::One;

use super::{CatError, CategorySpec, Mor, Obj, Parity};
use crate::qlinalg::{binomial, q, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KimuraProfile {
    pub even_rank: u64,
    pub odd_rank: u64,
}

impl KimuraProfile {
    /// Some exterior power vanishes.
    pub fn is_even(&self) -> bool {
        self.odd_rank == 0
    }

    /// Some symmetric power vanishes.
    pub fn is_odd(&self) -> bool {
        self.even_rank == 0
    }

    /// Every object splits by the declared parities of its simples.
    pub fn is_finite_dimensional(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Sym,
    Wedge,
}

/// A word in `X^{⊗n}`: one `(simple, copy)` letter per tensor factor.
type Word = Vec<(usize, usize)>;

/// Words with their simple and position in the product.
type Placed = Vec<(Word, usize, usize)>;

impl CategorySpec {
    pub fn kimura_profile(&self, x: &Obj) -> KimuraProfile {
        let mut p = KimuraProfile { even_rank: 0, odd_rank: 0 };
        for (s, simple) in self.simples.iter().enumerate() {
            let r = simple.rank as u64 * x.mult(s) as u64;
            match simple.parity {
                Parity::Even => p.even_rank += r,
                Parity::Odd => p.odd_rank += r,
            }
        }
        p
    }

    fn categorical_dim(&self, x: &Obj) -> i64 {
        (0..self.n_simples()).map(|s| self.superdim(s) * x.mult(s) as i64).sum()
    }

    /// `binom(d + n - 1, n)` at `d = tr(id_X)`.
    pub fn sym_power_rank(&self, x: &Obj, n: u32) -> Scalar {
        binomial(self.categorical_dim(x) + n as i64 - 1, n)
    }

    /// `binom(d, n)` at `d = tr(id_X)`.
    pub fn wedge_power_rank(&self, x: &Obj, n: u32) -> Scalar {
        binomial(self.categorical_dim(x), n)
    }

    /// `X^{⊗n}` as the left-nested product, with the simple and position of
    /// every word. Only products where each fusion step has one summand can
    /// be tracked letter by letter.
    fn power_words(&self, x: &Obj, n: u32) -> Result<(Obj, Placed), CatError> {
        // surface missing fusion rows before anything else
        let mut obj = x.clone();
        for _ in 1..n {
            obj = self.tensor_obj(&obj, x)?;
        }
        let mut obj = x.clone();
        let mut words: Placed = (0..self.n_simples())
            .flat_map(|s| (0..x.mult(s)).map(move |i| (vec![(s, i)], s, i)))
            .collect();
        for _ in 1..n {
            let layout = self.tensor_layout(&obj, x)?;
            let mut next = Vec::new();
            for (w, u, p) in &words {
                for t in 0..self.n_simples() {
                    for j in 0..x.mult(t) {
                        let e = self.fusion_entry(*u, t)?;
                        let [u2] = e.summands[..] else {
                            return Err(CatError::Unsupported(format!(
                                "tensor powers beyond the square need invertible factors; {} ⊗ {} splits",
                                self.name(*u),
                                self.name(t)
                            )));
                        };
                        let mut w2 = w.clone();
                        w2.push((t, j));
                        next.push((w2, u2, layout.pos(*u, t, 0, *p, j)));
                    }
                }
            }
            obj = layout.product;
            words = next;
        }
        Ok((obj, words))
    }

    /// The symmetry sign of `S ⊗ T` for invertible factors.
    fn swap_sign(&self, s: usize, t: usize) -> Result<Scalar, CatError> {
        Ok(self.fusion_entry(s, t)?.symmetry[(0, 0)].clone())
    }

    /// The averaging projector `(1/n!) Σ χ(σ) σ` on `X^{⊗n}`, with `χ` trivial
    /// for `Sym` and the sign character for `Wedge`.
    pub fn sym_projector(&self, x: &Obj, n: u32, kind: PowerKind) -> Result<Mor, CatError> {
        assert!(n >= 1, "tensor power must be positive");
        if n == 1 {
            return Ok(Mor::identity(self, x));
        }
        if n == 2 {
            let c = self.symmetry(x, x)?;
            let id = Mor::identity(self, &c.source);
            let sum = match kind {
                PowerKind::Sym => id.add(&c)?,
                PowerKind::Wedge => id.sub(&c)?,
            };
            return Ok(sum.scale(&Scalar::new(1.into(), 2.into())));
        }
        let (obj, words) = self.power_words(x, n)?;
        let index: std::collections::HashMap<&Word, usize> =
            words.iter().map(|(w, _, p)| (w, *p)).collect();
        let mut out = Mor::zero(self, &obj, &obj);
        let mut fact = Scalar::one();
        for k in 2..=n as i64 {
            fact *= q(k);
        }
        let inv_fact = fact.recip();
        for perm in permutations(n as usize) {
            let parity_sign = if kind == PowerKind::Wedge && inversions(&perm) % 2 == 1 { q(-1) } else { q(1) };
            for (w, u, p) in &words {
                // letter at position a moves to position perm[a]
                let mut sign = parity_sign.clone();
                for a in 0..w.len() {
                    for b in a + 1..w.len() {
                        if perm[a] > perm[b] {
                            sign *= self.swap_sign(w[a].0, w[b].0)?;
                        }
                    }
                }
                let mut moved = w.clone();
                for (a, &letter) in w.iter().enumerate() {
                    moved[perm[a]] = letter;
                }
                let target = index[&moved];
                out.ss[*u][(target, *p)] += &sign * &inv_fact;
            }
        }
        Ok(out)
    }
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len()).flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count()
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|r| if r >= first { r + 1 } else { r }));
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;

    fn h1(c: &CategorySpec) -> Obj {
        Obj::simple(c, c.simple_index("h1").unwrap())
    }

    #[test]
    fn profile_of_h1_is_odd() {
        let c = ell();
        let p = c.kimura_profile(&h1(&c));
        assert_eq!(p, KimuraProfile { even_rank: 0, odd_rank: 2 });
        assert!(p.is_odd() && !p.is_even() && p.is_finite_dimensional());
    }

    #[test]
    fn power_ranks_of_h1() {
        let c = ell();
        assert_eq!(c.sym_power_rank(&h1(&c), 3), q(0));
        assert_eq!(c.wedge_power_rank(&h1(&c), 2), q(3));
        assert_eq!(c.wedge_power_rank(&Obj::unit(&c), 2), q(0));
    }

    #[test]
    fn square_projectors_of_h1() {
        let c = ell();
        let x = h1(&c);
        for (kind, tr) in [(PowerKind::Sym, 1), (PowerKind::Wedge, 3)] {
            let p = c.sym_projector(&x, 2, kind).unwrap();
            assert_eq!(c.compose(&p, &p).unwrap(), p);
            assert_eq!(c.trace(&p).unwrap(), q(tr));
        }
    }

    #[test]
    fn cube_of_h1_needs_more_fusion() {
        let c = ell();
        assert!(matches!(
            c.sym_projector(&h1(&c), 3, PowerKind::Sym),
            Err(CatError::FusionIncomplete { .. })
        ));
    }

    #[test]
    fn projectors_on_powers_of_two_units() {
        let c = ell();
        let x = Obj::copies(&c, c.unit, 2);
        for n in 1..=4u32 {
            for kind in [PowerKind::Sym, PowerKind::Wedge] {
                let p = c.sym_projector(&x, n, kind).unwrap();
                assert_eq!(c.compose(&p, &p).unwrap(), p);
                let expected = match kind {
                    PowerKind::Sym => c.sym_power_rank(&x, n),
                    PowerKind::Wedge => c.wedge_power_rank(&x, n),
                };
                assert_eq!(c.trace(&p).unwrap(), expected, "n = {n}, {kind:?}");
            }
        }
    }

    #[test]
    fn permutations_are_complete() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().filter(|p| inversions(p) % 2 == 1).count(), 12);
    }
}
