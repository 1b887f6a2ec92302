use std::collections::BTreeMap;

use super::{GradedNumMor, GradedNumObject};
use crate::catcore::{CatError, CategorySpec};
use crate::homotopy::{degree_of_weight, ChainMap, Complex};
use crate::qlinalg::{self, Mat};

impl CategorySpec {
    /// Components of the minimal model, read in the semisimple quotient.
    pub fn pi_obj(&self, x: &Complex) -> Result<GradedNumObject, CatError> {
        let m = self.minimize(x)?.complex;
        Ok(GradedNumObject::new(self, m.components().clone()))
    }

    /// `f` carried to minimal models, then the semisimple part of each
    /// component. Cross-degree data does not exist in the target category.
    pub fn pi_mor(&self, f: &ChainMap) -> Result<GradedNumMor, CatError> {
        let mx = self.minimize(&f.source)?;
        let my = self.minimize(&f.target)?;
        let fm = my.forward.after(self, &f.after(self, &mx.backward)?)?;
        GradedNumMor::from_chain_map(self, &fm)
    }

    /// `π(f)` rebuilt from the maps induced on the truncations at `b`.
    pub fn pi_mor_by_truncation(&self, f: &ChainMap, b: i32) -> Result<GradedNumMor, CatError> {
        let dx = self.weight_truncate(&f.source, b)?;
        let dy = self.weight_truncate(&f.target, b)?;
        let (lo, hi) = self.extend_to_truncation(f, &dx, &dy)?;
        let cut = degree_of_weight(b);
        let mut comps = BTreeMap::new();
        for i in dx.minimal.complex.degrees() {
            let piece = if i >= cut { lo.at(self, i) } else { hi.at(self, i) };
            comps.insert(i, piece);
        }
        let src = GradedNumObject::new(self, dx.minimal.complex.components().clone());
        let tgt = GradedNumObject::new(self, dy.minimal.complex.components().clone());
        // components landing on zero objects carry nothing
        comps.retain(|i, _| tgt.0.contains_key(i));
        GradedNumMor::new(self, &src, &tgt, comps)
    }
}

/// One position of the long exact sequence, for one degree and one simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesSpot {
    pub position: &'static str,
    pub degree: i32,
    pub simple: usize,
    pub mult: usize,
    pub rank_in: usize,
    pub rank_out: usize,
}

impl LesSpot {
    pub fn exact(&self) -> bool {
        self.rank_in + self.rank_out == self.mult
    }
}

#[derive(Debug, Clone)]
pub struct LesReport {
    pub spots: Vec<LesSpot>,
    pub composites_vanish: bool,
    /// Lengths of `A`, `B` and the cone.
    pub lengths: [i32; 3],
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.composites_vanish && self.spots.iter().all(LesSpot::exact)
    }

    pub fn failures(&self) -> Vec<&LesSpot> {
        self.spots.iter().filter(|s| !s.exact()).collect()
    }
}

/// `Hom(πX, πY)` against the image of `Hom(X, Y)`.
#[derive(Debug, Clone)]
pub struct FullnessGap {
    pub image_dim: usize,
    pub target_dim: usize,
    /// A morphism outside the image, when there is one.
    pub witness: Option<GradedNumMor>,
}

impl FullnessGap {
    pub fn is_full(&self) -> bool {
        self.image_dim == self.target_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCheck {
    /// `π(A ⊗ B) ≅ πA ⊗ πB` through the comparison map.
    pub objects: bool,
    pub morphisms: bool,
    pub symmetry: bool,
}

impl TensorCheck {
    pub fn pass(&self) -> bool {
        self.objects && self.morphisms && self.symmetry
    }
}

impl CategorySpec {
    /// Exactness of `πA -> πB -> πC -> πA[1]` for `C` the cone of `f : A -> B`,
    /// by ranks of the semisimple blocks.
    pub fn verify_les(&self, f: &ChainMap) -> Result<LesReport, CatError> {
        let cone = self.cone(f)?;
        let pf = self.pi_mor(f)?;
        let pi = self.pi_mor(&cone.inclusion)?;
        let pp = self.pi_mor(&cone.projection)?;
        let pf1 = self.pi_mor(&f.shift(1))?;
        let composites_vanish = pi.after(self, &pf)?.is_zero()
            && pp.after(self, &pi)?.is_zero()
            && pf1.after(self, &pp)?.is_zero();
        let mut spots = Vec::new();
        for (position, into, out) in [("B", &pf, &pi), ("C", &pi, &pp), ("A[1]", &pp, &pf1)] {
            for (&i, o) in &into.target.0 {
                for s in 0..self.n_simples() {
                    spots.push(LesSpot {
                        position,
                        degree: i,
                        simple: s,
                        mult: o.mult(s),
                        rank_in: into.rank(i, s),
                        rank_out: out.rank(i, s),
                    });
                }
            }
        }
        let lengths = [
            self.length(&f.source)?.length,
            self.length(&f.target)?.length,
            self.length(&cone.complex)?.length,
        ];
        Ok(LesReport { spots, composites_vanish, lengths })
    }

    pub fn fullness_gap(&self, x: &Complex, y: &Complex) -> Result<FullnessGap, CatError> {
        let hom = self.kb_hom(x, y)?;
        let (px, py) = (self.pi_obj(x)?, self.pi_obj(y)?);
        let target_dim = px.hom_dim(&py);
        let images: Vec<Mat> =
            hom.rep_maps(self).iter().map(|f| Ok(self.pi_mor(f)?.vectorize(self))).collect::<Result<_, CatError>>()?;
        let image_dim = qlinalg::span_rank(target_dim, &images);
        let witness = GradedNumMor::basis(self, &px, &py)
            .into_iter()
            .find(|e| !qlinalg::span_contains(target_dim, &images, &e.vectorize(self)));
        Ok(FullnessGap { image_dim, target_dim, witness })
    }

    /// Compatibility of `π` with tensor products and the Koszul symmetry.
    pub fn pi_tensor_check(&self, f: &ChainMap, g: &ChainMap) -> Result<TensorCheck, CatError> {
        let (phi, ok_src) = self.tensor_comparison(&f.source, &g.source)?;
        let (phi_t, ok_tgt) = self.tensor_comparison(&f.target, &g.target)?;
        let (phi_swap, ok_swap) = self.tensor_comparison(&g.source, &f.source)?;
        let objects = ok_src && ok_tgt && ok_swap;

        let pfg = self.pi_mor(&self.tensor_chain_map(f, g)?)?;
        let (pf, pg) = (self.pi_mor(f)?, self.pi_mor(g)?);
        let graded = GradedNumMor::from_chain_map(
            self,
            &self.tensor_chain_map(&pf.as_chain_map(self), &pg.as_chain_map(self))?,
        )?;
        let morphisms = phi_t.after(self, &pfg)? == graded.after(self, &phi)?;

        let (a, b) = (&f.source, &g.source);
        let s = self.pi_mor(&self.complex_symmetry(a, b)?)?;
        let (pa, pb) = (self.pi_obj(a)?.as_complex(self), self.pi_obj(b)?.as_complex(self));
        let sigma = GradedNumMor::from_chain_map(self, &self.complex_symmetry(&pa, &pb)?)?;
        let symmetry = phi_swap.after(self, &s)? == sigma.after(self, &phi)?;
        Ok(TensorCheck { objects, morphisms, symmetry })
    }

    /// `π(A ⊗ B) -> πA ⊗ πB`, and whether it is an isomorphism onto the
    /// graded tensor product.
    fn tensor_comparison(&self, a: &Complex, b: &Complex) -> Result<(GradedNumMor, bool), CatError> {
        let (ma, mb) = (self.minimize(a)?, self.minimize(b)?);
        let t = self.tensor_complex(a, b)?;
        let mt = self.minimize(&t)?;
        let conv = self.tensor_chain_map(&ma.forward, &mb.forward)?.after(self, &mt.backward)?;
        let phi = GradedNumMor::from_chain_map(self, &conv)?;
        let graded = self.tensor_complex(
            &GradedNumObject::new(self, ma.complex.components().clone()).as_complex(self),
            &GradedNumObject::new(self, mb.complex.components().clone()).as_complex(self),
        )?;
        let ok = self.is_minimal(&conv.target)
            && GradedNumObject::new(self, graded.components().clone()) == phi.target
            && phi.is_invertible(self);
        Ok((phi, ok))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;
    use crate::catcore::{Mor, Obj};

    fn alpha(c: &CategorySpec) -> Mor {
        c.hom_space(&Obj::unit(c), &Obj::simple(c, 1)).pop().unwrap()
    }

    #[test]
    fn pi_of_the_alpha_complex() {
        let c = ell();
        let x = Complex::two_term(&c, &alpha(&c), 0).unwrap();
        let p = c.pi_obj(&x).unwrap();
        assert_eq!(p.0, BTreeMap::from([(0, Obj::unit(&c)), (1, Obj::simple(&c, 1))]));
        let id = c.pi_mor(&ChainMap::identity(&c, &x)).unwrap();
        assert_eq!(id, GradedNumMor::identity(&c, &p));
    }

    #[test]
    fn pi_of_a_contractible_complex_is_zero() {
        let c = ell();
        let x = Complex::two_term(&c, &Mor::identity(&c, &Obj::unit(&c)), 0).unwrap();
        assert!(c.pi_obj(&x).unwrap().is_zero());
    }

    #[test]
    fn pi_is_not_full() {
        let c = ell();
        let u = Complex::pure(&c, &Obj::unit(&c), 0);
        let x = Complex::two_term(&c, &alpha(&c), 0).unwrap();
        let gap = c.fullness_gap(&u, &x).unwrap();
        assert_eq!((gap.image_dim, gap.target_dim), (0, 1));
        let w = gap.witness.unwrap();
        assert_eq!(w.components().keys().copied().collect::<Vec<_>>(), vec![0]);
        assert!(c.fullness_gap(&u, &u).unwrap().is_full());
    }

    #[test]
    fn les_of_alpha_splits() {
        let c = ell();
        let u = Complex::pure(&c, &Obj::unit(&c), 0);
        let h = Complex::pure(&c, &Obj::simple(&c, 1), 0);
        let f = ChainMap::new(&c, &u, &h, BTreeMap::from([(0, alpha(&c))])).unwrap();
        let r = c.verify_les(&f).unwrap();
        assert!(r.exact(), "{:?}", r.failures());
        assert!(c.pi_mor(&f).unwrap().is_zero());
        let id = c.verify_les(&ChainMap::identity(&c, &h)).unwrap();
        assert!(id.exact());
    }

    #[test]
    fn truncation_path_agrees() {
        let c = ell();
        let x = Complex::two_term(&c, &alpha(&c), 0).unwrap();
        let id = ChainMap::identity(&c, &x);
        for b in -2..=1 {
            assert_eq!(c.pi_mor_by_truncation(&id, b).unwrap(), c.pi_mor(&id).unwrap());
        }
    }

    #[test]
    fn tensor_with_koszul_signs() {
        let c = ell();
        let x = Complex::two_term(&c, &alpha(&c), 0).unwrap();
        let id = ChainMap::identity(&c, &x);
        let r = c.pi_tensor_check(&id, &id).unwrap();
        assert!(r.pass(), "{r:?}");
    }
}
