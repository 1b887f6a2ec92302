//! Weights, brutal truncations of minimal models, and length.
//!
//! A pure object in chain degree `i` has weight `-i`.

use std::collections::BTreeMap;

use super::{ChainMap, Complex, Minimized};
use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::qlinalg::{self, Mat};

pub fn weight_of_degree(i: i32) -> i32 {
    -i
}

pub fn degree_of_weight(w: i32) -> i32 {
    -w
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthReport {
    /// `None` for the zero object.
    pub window: Option<(i32, i32)>,
    pub length: i32,
}

impl LengthReport {
    pub fn is_empty(&self) -> bool {
        self.window.is_none()
    }
}

/// `low -> M -> high -> low[1]` for a minimal model `M` cut at weight `b`.
#[derive(Debug, Clone)]
pub struct WeightDecomposition {
    pub b: i32,
    pub minimal: Minimized,
    /// Weights `<= b`.
    pub low: Complex,
    /// Weights `>= b + 1`.
    pub high: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    /// `high[-1] -> low`, the differential across the cut.
    pub delta: ChainMap,
}

/// Brutal truncation keeping the degrees in `keep`.
fn brutal(spec: &CategorySpec, x: &Complex, keep: impl Fn(i32) -> bool) -> Complex {
    let objs: BTreeMap<i32, Obj> =
        x.components().iter().filter(|(i, _)| keep(**i)).map(|(&i, o)| (i, o.clone())).collect();
    let diffs = x
        .differentials()
        .iter()
        .filter(|(i, _)| keep(**i) && keep(**i + 1))
        .map(|(&i, d)| (i, d.clone()))
        .collect();
    Complex::new(spec, objs, diffs).expect("brutal truncation")
}

/// Degreewise identity between a truncation and its parent.
fn restriction_map(spec: &CategorySpec, source: &Complex, target: &Complex) -> Result<ChainMap, CatError> {
    let comps = source.common_degrees(target).into_iter().map(|i| (i, Mor::identity(spec, &source.obj(spec, i)))).collect();
    ChainMap::new(spec, source, target, comps)
}

impl CategorySpec {
    /// Weight window of a complex, read from its minimal model.
    pub fn weight_window(&self, x: &Complex) -> Result<Option<(i32, i32)>, CatError> {
        let m = self.minimize(x)?.complex;
        Ok(window_of_minimal(&m))
    }

    pub fn length(&self, x: &Complex) -> Result<LengthReport, CatError> {
        let window = self.weight_window(x)?;
        Ok(LengthReport { window, length: window.map_or(0, |(a, b)| b - a) })
    }

    /// Whether `X` lies in `T_{a,b}`.
    pub fn in_window(&self, x: &Complex, a: i32, b: i32) -> Result<bool, CatError> {
        Ok(match self.weight_window(x)? {
            None => true,
            Some((lo, hi)) => a <= lo && hi <= b,
        })
    }

    pub fn weight_truncate(&self, x: &Complex, b: i32) -> Result<WeightDecomposition, CatError> {
        let minimal = self.minimize(x)?;
        let m = &minimal.complex;
        let cut = degree_of_weight(b);
        let low = brutal(self, m, |i| i >= cut);
        let high = brutal(self, m, |i| i < cut);
        let inclusion = restriction_map(self, &low, m)?;
        let projection = restriction_map(self, m, &high)?;
        let hs = high.shift(-1);
        let mut comps = BTreeMap::new();
        if !hs.obj(self, cut).is_zero() && !low.obj(self, cut).is_zero() {
            comps.insert(cut, m.d(self, cut - 1));
        }
        let delta = ChainMap::new(self, &hs, &low, comps)?;
        Ok(WeightDecomposition { b, minimal, low, high, inclusion, projection, delta })
    }

    /// Restricts `f : X -> Y` to the truncations, after transporting it to the
    /// minimal models. Both squares commute on the nose.
    pub fn extend_to_truncation(
        &self,
        f: &ChainMap,
        dx: &WeightDecomposition,
        dy: &WeightDecomposition,
    ) -> Result<(ChainMap, ChainMap), CatError> {
        let fm = dy.minimal.forward.after(self, &f.after(self, &dx.minimal.backward)?)?;
        let low = ChainMap::new(
            self,
            &dx.low,
            &dy.low,
            dx.low.degrees().into_iter().map(|i| (i, fm.at(self, i))).collect(),
        )?;
        let high = ChainMap::new(
            self,
            &dx.high,
            &dy.high,
            dx.high.degrees().into_iter().map(|i| (i, fm.at(self, i))).collect(),
        )?;
        let left = dy.inclusion.after(self, &low)? == fm.after(self, &dx.inclusion)?;
        let right = high.after(self, &dx.projection)? == dy.projection.after(self, &fm)?;
        if !(left && right) {
            return Err(CatError::ObjectMismatch("truncation squares do not commute".into()));
        }
        Ok((low, high))
    }

    /// Every component of the connecting map is in the radical.
    pub fn delta_is_radical(&self, d: &WeightDecomposition) -> Result<bool, CatError> {
        for m in d.delta.components().values() {
            if !self.radical(&m.source, &m.target)?.contains(self, m) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn window_of_minimal(m: &Complex) -> Option<(i32, i32)> {
    let (lo, hi) = m.range()?;
    Some((weight_of_degree(hi), weight_of_degree(lo)))
}

/// Result of matching an alternative weight decomposition against the
/// canonical one.
#[derive(Debug, Clone)]
pub struct ExtraSummand {
    /// The pure summand `X_b`, in degree `-b`.
    pub x_b: Obj,
    /// `low ⊕ X_b -> low'` compatible with the maps to `X`.
    pub iso: ChainMap,
}

impl CategorySpec {
    /// Given `u : low' -> X` with `low'` of weights `<= b` and cone of weights
    /// `>= b + 1`, finds `X_b` and an isomorphism `low ⊕ X_b ≅ low'` under which
    /// `u` becomes the canonical inclusion plus zero.
    pub fn find_extra_summand(
        &self,
        x: &Complex,
        b: i32,
        alt_low: &Complex,
        u: &ChainMap,
    ) -> Result<Option<ExtraSummand>, CatError> {
        let dec = self.weight_truncate(x, b)?;
        let alt_min = self.minimize(alt_low)?.complex;
        let cut = degree_of_weight(b);
        // the extra summand is what the alternative carries beyond the canonical
        // truncation in the boundary degree
        for i in alt_min.union_degrees(&dec.low) {
            if i != cut && alt_min.obj(self, i) != dec.low.obj(self, i) {
                return Ok(None);
            }
        }
        let (have, want) = (alt_min.obj(self, cut), dec.low.obj(self, cut));
        if (0..self.n_simples()).any(|s| have.mult(s) < want.mult(s)) {
            return Ok(None);
        }
        let x_b = Obj((0..self.n_simples()).map(|s| have.mult(s) - want.mult(s)).collect());
        let aug = dec.low.direct_sum(self, &Complex::pure(self, &x_b, cut));
        // canonical map low ⊕ X_b -> X: the inclusion into the minimal model,
        // carried back to X, and zero on X_b
        let parts = |i: i32| [dec.low.obj(self, i), if i == cut { x_b.clone() } else { Obj::zero(self) }];
        let inc_x = dec.minimal.backward.after(self, &dec.inclusion)?;
        let mut comps = BTreeMap::new();
        for i in aug.common_degrees(x) {
            comps.insert(i, self.compose(&inc_x.at(self, i), &self.projection(&parts(i), 0))?);
        }
        let target = ChainMap::new(self, &aug, x, comps)?;

        // solve u ∘ φ ≃ target for φ among chain maps aug -> low'
        let phis = self.kb_hom(&aug, alt_low)?;
        let into_x = self.kb_hom(&aug, x)?;
        let cands: Vec<ChainMap> = phis.cycles.iter().map(|v| phis.chain_map(self, v)).collect();
        let n = cands.len();
        let mut a = Mat::zeros(into_x.maps.dim(), n + into_x.boundaries.len());
        for (k, phi) in cands.iter().enumerate() {
            let v = into_x.vectorize(self, &u.after(self, phi)?);
            for r in 0..v.rows() {
                a[(r, k)] = v[(r, 0)].clone();
            }
        }
        for (k, bnd) in into_x.boundaries.iter().enumerate() {
            for r in 0..bnd.rows() {
                a[(r, n + k)] = -bnd[(r, 0)].clone();
            }
        }
        let rhs = into_x.vectorize(self, &target);
        let Some(sol) = qlinalg::solve_linear(&a, &rhs)? else { return Ok(None) };
        let kernel = a.kernel();
        let combine = |v: &Mat| -> Result<ChainMap, CatError> {
            let mut phi = ChainMap::zero(&aug, alt_low);
            for (k, c) in cands.iter().enumerate() {
                phi = phi.add(self, &c.scale(&v[(k, 0)]))?;
            }
            Ok(phi)
        };
        // bounded search: the particular solution, then one step along each
        // kernel direction
        let mut trials = vec![sol.clone()];
        trials.extend(kernel.iter().map(|k| &sol + k));
        for t in trials {
            let phi = combine(&t)?;
            if self.kb_inverse(&phi)?.is_some() {
                return Ok(Some(ExtraSummand { x_b, iso: phi }));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;

    fn alpha(c: &CategorySpec) -> Mor {
        c.hom_space(&Obj::unit(c), &Obj::simple(c, 1)).pop().unwrap()
    }

    #[test]
    fn lengths() {
        let c = ell();
        let one = Obj::unit(&c);
        assert_eq!(c.length(&Complex::pure(&c, &one, 0)).unwrap().length, 0);
        let cone = Complex::two_term(&c, &alpha(&c), -1).unwrap();
        assert_eq!(c.length(&cone).unwrap(), LengthReport { window: Some((0, 1)), length: 1 });
        let contractible = Complex::two_term(&c, &Mor::identity(&c, &one), 0).unwrap();
        let r = c.length(&contractible).unwrap();
        assert!(r.is_empty() && r.length == 0);
    }

    #[test]
    fn truncating_the_cone_of_alpha() {
        let c = ell();
        let cone = Complex::two_term(&c, &alpha(&c), -1).unwrap();
        let dec = c.weight_truncate(&cone, 0).unwrap();
        assert_eq!(dec.low, Complex::pure(&c, &Obj::simple(&c, 1), 0));
        assert_eq!(dec.high, Complex::pure(&c, &Obj::unit(&c), -1));
        assert_eq!(dec.delta.components().get(&0), Some(&alpha(&c)));
        assert!(c.delta_is_radical(&dec).unwrap());
        // above the top weight nothing is cut off
        let all = c.weight_truncate(&cone, 1).unwrap();
        assert_eq!(all.low, cone);
        assert!(all.high.is_zero() && all.delta.is_zero());
    }

    #[test]
    fn identity_extends_to_identities() {
        let c = ell();
        let cone = Complex::two_term(&c, &alpha(&c), -1).unwrap();
        let dec = c.weight_truncate(&cone, 0).unwrap();
        let (lo, hi) = c.extend_to_truncation(&ChainMap::identity(&c, &cone), &dec, &dec).unwrap();
        assert_eq!(lo, ChainMap::identity(&c, &dec.low));
        assert_eq!(hi, ChainMap::identity(&c, &dec.high));
    }

    #[test]
    fn extra_unit_is_found() {
        let c = ell();
        let one = Obj::unit(&c);
        let cone = Complex::two_term(&c, &alpha(&c), -1).unwrap();
        let x = cone.direct_sum(&c, &Complex::pure(&c, &one, 0));
        let report = c.check_weight_axioms(&[x]).unwrap();
        assert!(report.all_pass(), "{:?}", report.items);
        assert_eq!(report.extra_summands[0].2, one);
    }
}
