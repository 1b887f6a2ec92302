use super::GradedNumMor;
use crate::catcore::{CatError, CategorySpec};
use crate::homotopy::{ChainMap, Complex, HomCx};
use crate::qlinalg::{self, q, Mat};

fn class_column(spec: &CategorySpec, hom: &HomCx, f: &ChainMap) -> Result<Mat, CatError> {
    hom.class_coords(spec, f)
        .map(Mat::column)
        .ok_or_else(|| CatError::ObjectMismatch("not a chain map of this hom-space".into()))
}

fn unit(n: usize, k: usize) -> Mat {
    let mut e = Mat::zeros(n, 1);
    e[(k, 0)] = q(1);
    e
}

/// `v` placed at rows `off..` of a column of length `n`.
fn pad(n: usize, off: usize, v: &Mat) -> Mat {
    let mut out = Mat::zeros(n, 1);
    out.set_block(off, 0, v);
    out
}

/// Morphisms of truncation triangles extending an endomorphism `f`.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    /// Weight at which the object was cut; `None` for pure or zero objects.
    pub cut: Option<i32>,
    pub f_numerical: bool,
    pub pi_f_nonzero: bool,
    pub extensions_exist: bool,
    /// Dimension of the affine space of extensions.
    pub extension_dim: usize,
    /// Some extension has its low component in the numerical ideal.
    pub low_meets_n: bool,
    pub high_meets_n: bool,
}

impl ObstructionReport {
    /// No extension of `f` has a numerical component, so the quotient by the
    /// numerical ideal cannot carry these triangles.
    pub fn certified(&self) -> bool {
        self.f_numerical && self.extensions_exist && !self.low_meets_n && !self.high_meets_n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    /// The recursive bound `N_X`.
    pub bound: usize,
    /// Smallest `n` with `(ker π)^n = 0`, if found within `depth`.
    pub actual: Option<usize>,
    pub kernel_dim: usize,
    pub depth: usize,
}

impl NilpotencyReport {
    pub fn verified(&self) -> bool {
        self.actual.is_some_and(|a| a <= self.bound)
    }
}

#[derive(Debug, Clone)]
pub struct ConservativityReport {
    pub invertible: bool,
    pub pi_invertible: bool,
    pub p_invertible: bool,
    pub inverse: Option<ChainMap>,
    /// An inverse modulo the numerical ideal.
    pub p_inverse: Option<ChainMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub bound: usize,
    /// `f^n ≃ f` for `2 <= n <= bound`.
    pub powers_agree: bool,
    pub nonzero: bool,
    pub numerical: bool,
}

impl IdempotentReport {
    pub fn pass(&self) -> bool {
        self.powers_agree && self.nonzero && self.numerical
    }
}

impl CategorySpec {
    /// Parametrizes every morphism of truncation triangles `(f_low, f, f_high)`
    /// and decides whether some choice puts `f_low` or `f_high` in the
    /// numerical ideal.
    pub fn triangulated_obstruction(&self, x: &Complex, f: &ChainMap) -> Result<ObstructionReport, CatError> {
        if f.source != *x || f.target != *x {
            return Err(CatError::NotEndomorphism);
        }
        if !self.kb_numerical_ideal(x, x)?.contains(self, f)? {
            return Err(CatError::NotNumerical);
        }
        let pi_f_nonzero = !self.pi_mor(f)?.is_zero();
        let window = self.weight_window(x)?;
        let Some((a, c)) = window.filter(|(a, c)| a < c) else {
            // f itself extends, and it is numerical
            return Ok(ObstructionReport {
                cut: None,
                f_numerical: true,
                pi_f_nonzero,
                extensions_exist: true,
                extension_dim: 0,
                low_meets_n: true,
                high_meets_n: window.is_some(),
            });
        };
        debug_assert!(a < c);
        let dec = self.weight_truncate(x, a)?;
        let m = &dec.minimal.complex;
        let fm = dec.minimal.forward.after(self, &f.after(self, &dec.minimal.backward)?)?;
        let (low, high) = (&dec.low, &dec.high);
        let hs = high.shift(-1);
        let nl = self.kb_numerical_ideal(low, low)?;
        let nh = self.kb_numerical_ideal(high, high)?;
        let h_lm = self.kb_hom(low, m)?;
        let h_mh = self.kb_hom(m, high)?;
        let h_d = self.kb_hom(&hs, low)?;
        let (n_l, n_h) = (nl.dim(), nh.dim());
        let (r1, r2, r3) = (h_lm.dim(), h_mh.dim(), h_d.dim());
        let rows = r1 + r2 + r3;

        // ι u = f ι,  w p = p f,  δ w[-1] = u δ
        let mut cols = Vec::new();
        for u in nl.hom.rep_maps(self) {
            let top = class_column(self, &h_lm, &dec.inclusion.after(self, &u)?)?;
            let bottom = class_column(self, &h_d, &u.after(self, &dec.delta)?)?;
            cols.push(&pad(rows, 0, &top) - &pad(rows, r1 + r2, &bottom));
        }
        for w in nh.hom.rep_maps(self) {
            let mid = class_column(self, &h_mh, &w.after(self, &dec.projection)?)?;
            let bottom = class_column(self, &h_d, &dec.delta.after(self, &w.shift(-1))?)?;
            cols.push(&pad(rows, r1, &mid) + &pad(rows, r1 + r2, &bottom));
        }
        let rhs = &pad(rows, 0, &class_column(self, &h_lm, &fm.after(self, &dec.inclusion)?)?)
            + &pad(rows, r1, &class_column(self, &h_mh, &dec.projection.after(self, &fm)?)?);
        let unknowns = n_l + n_h;
        let a_mat = Mat::from_columns(rows, &cols)?;
        let base = ObstructionReport {
            cut: Some(a),
            f_numerical: true,
            pi_f_nonzero,
            extensions_exist: false,
            extension_dim: 0,
            low_meets_n: false,
            high_meets_n: false,
        };
        let sol = if unknowns == 0 {
            rhs.is_zero().then(|| Mat::zeros(0, 1))
        } else {
            qlinalg::solve_linear(&a_mat, &rhs)?
        };
        let Some(sol) = sol else { return Ok(base) };
        let directions = if unknowns == 0 { Vec::new() } else { a_mat.kernel() };

        let mut low_sub: Vec<Mat> = nl.numerical.iter().map(|v| pad(unknowns, 0, v)).collect();
        low_sub.extend((n_l..unknowns).map(|k| unit(unknowns, k)));
        let mut high_sub: Vec<Mat> = (0..n_l).map(|k| unit(unknowns, k)).collect();
        high_sub.extend(nh.numerical.iter().map(|v| pad(unknowns, n_l, v)));
        Ok(ObstructionReport {
            extensions_exist: true,
            extension_dim: directions.len(),
            low_meets_n: unknowns == 0 || qlinalg::affine_meets_subspace(&sol, &directions, &low_sub)?,
            high_meets_n: unknowns == 0 || qlinalg::affine_meets_subspace(&sol, &directions, &high_sub)?,
            ..base
        })
    }

    /// The recursive bound on the nilpotency of `ker π` in `End(X)`: 1 for the
    /// zero object, the nilpotency of the numerical ideal (at least 2) for a
    /// pure object, and twice the larger bound of the two truncations
    /// otherwise.
    pub fn ker_pi_bound(&self, x: &Complex) -> Result<usize, CatError> {
        let m = self.minimize(x)?.complex;
        let Some((a, c)) = crate::homotopy::window_of_minimal(&m) else { return Ok(1) };
        if a == c {
            let obj = m.obj(self, m.range().expect("nonzero").0);
            let n = self.numerical_ideal(&obj, &obj);
            let idx = self.nilpotency_index(&obj, &n, 2).unwrap_or(2);
            return Ok(idx.max(2));
        }
        let dec = self.weight_truncate(&m, a)?;
        Ok(2 * self.ker_pi_bound(&dec.low)?.max(self.ker_pi_bound(&dec.high)?))
    }

    /// The bound `N_X`, and the actual nilpotency index of `ker π` on `End(X)`
    /// found by multiplying out a basis.
    pub fn ker_pi_nilpotency(&self, x: &Complex, depth: usize) -> Result<NilpotencyReport, CatError> {
        let bound = self.ker_pi_bound(x)?;
        let m = self.minimize(x)?.complex;
        let hom = self.kb_hom(&m, &m)?;
        let n = hom.dim();
        // π on a minimal complex is the degreewise semisimple part
        let images: Vec<Mat> = hom
            .rep_maps(self)
            .iter()
            .map(|f| Ok(GradedNumMor::from_chain_map(self, f)?.vectorize(self)))
            .collect::<Result<_, CatError>>()?;
        let kernel: Vec<Mat> = if n == 0 {
            Vec::new()
        } else {
            let rows = images.first().map_or(0, Mat::rows);
            if rows == 0 {
                (0..n).map(|k| unit(n, k)).collect()
            } else {
                Mat::from_columns(rows, &images)?.kernel()
            }
        };
        let gens: Vec<ChainMap> = kernel.iter().map(|v| hom.from_class_coords(self, v.entries())).collect();
        let depth = depth.max(bound);
        let mut power = kernel.clone();
        let mut actual = None;
        for k in 1..=depth {
            if power.is_empty() {
                actual = Some(k);
                break;
            }
            let mut next = Vec::new();
            for g in &gens {
                for v in &power {
                    let p = g.after(self, &hom.from_class_coords(self, v.entries()))?;
                    next.push(class_column(self, &hom, &p)?);
                }
            }
            power = qlinalg::independent_subset(n, &next).into_iter().filter(|v| !v.is_zero()).collect();
        }
        Ok(NilpotencyReport { bound, actual, kernel_dim: kernel.len(), depth })
    }

    /// Invertibility of `f`, of `π(f)`, and of `f` modulo the numerical ideal.
    pub fn conservativity_check(&self, f: &ChainMap) -> Result<ConservativityReport, CatError> {
        let inverse = self.kb_inverse(f)?;
        let pf = self.pi_mor(f)?;
        let pi_invertible = pf.source == pf.target && pf.is_invertible(self);
        let p_inverse = self.inverse_mod_numerical(f)?;
        Ok(ConservativityReport {
            invertible: inverse.is_some(),
            pi_invertible,
            p_invertible: p_inverse.is_some(),
            inverse,
            p_inverse,
        })
    }

    /// `g` with `g f - 1` and `f g - 1` numerical, if one exists.
    pub fn inverse_mod_numerical(&self, f: &ChainMap) -> Result<Option<ChainMap>, CatError> {
        let (x, y) = (&f.source, &f.target);
        let back = self.kb_hom(y, x)?;
        let nx = self.kb_numerical_ideal(x, x)?;
        let ny = self.kb_numerical_ideal(y, y)?;
        let (dx, dy) = (nx.dim(), ny.dim());
        let rows = dx + dy;
        let mut cols = Vec::new();
        let gs = back.rep_maps(self);
        for g in &gs {
            let gf = class_column(self, &nx.hom, &g.after(self, f)?)?;
            let fg = class_column(self, &ny.hom, &f.after(self, g)?)?;
            cols.push(&pad(rows, 0, &gf) + &pad(rows, dx, &fg));
        }
        for v in &nx.numerical {
            cols.push(-&pad(rows, 0, v));
        }
        for v in &ny.numerical {
            cols.push(-&pad(rows, dx, v));
        }
        let rhs = &pad(rows, 0, &class_column(self, &nx.hom, &ChainMap::identity(self, x))?)
            + &pad(rows, dx, &class_column(self, &ny.hom, &ChainMap::identity(self, y))?);
        if cols.is_empty() {
            return Ok(rhs.is_zero().then(|| ChainMap::zero(y, x)));
        }
        let a = Mat::from_columns(rows, &cols)?;
        let Some(sol) = qlinalg::solve_linear(&a, &rhs)? else { return Ok(None) };
        let coeffs: Vec<_> = (0..gs.len()).map(|k| sol[(k, 0)].clone()).collect();
        Ok(Some(back.from_class_coords(self, &coeffs)))
    }

    pub fn idempotent_endo_check(&self, f: &ChainMap, bound: usize) -> Result<IdempotentReport, CatError> {
        if !f.is_endo() {
            return Err(CatError::NotEndomorphism);
        }
        let n = self.kb_numerical_ideal(&f.source, &f.target)?;
        let mut powers_agree = true;
        let mut p = f.clone();
        for _ in 2..=bound {
            p = f.after(self, &p)?;
            if !n.hom.homotopic(self, &p, f)? {
                powers_agree = false;
                break;
            }
        }
        Ok(IdempotentReport { bound, powers_agree, nonzero: !n.hom.is_null(self, f), numerical: n.contains(self, f)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::{arrow, ell};
    use crate::bench::fixtures::{arrow_complex, lower_corner, unit_complex, upper_triangular};
    use crate::numfun::DEFAULT_BOUND;

    #[test]
    fn upper_triangular_endomorphism_when_dimensions_agree() {
        let c = arrow();
        let (x, f) = upper_triangular(&c).unwrap();
        let r = c.triangulated_obstruction(&x, &f).unwrap();
        assert!(r.certified(), "{r:?}");
        assert!(r.pi_f_nonzero);
        assert_eq!(r.cut, Some(-1));
    }

    #[test]
    fn upper_triangular_endomorphism_on_ell_is_not_numerical() {
        let c = ell();
        let (x, f) = upper_triangular(&c).unwrap();
        assert_eq!(c.triangulated_obstruction(&x, &f).unwrap_err(), CatError::NotNumerical);
        // the class with c = c' = 1 pairs to dim 𝟙 - dim h1
        let n = c.kb_numerical_ideal(&x, &x).unwrap();
        let traces: Vec<_> =
            n.hom.rep_maps(&c).iter().map(|g| c.kb_trace(&g.after(&c, &f).unwrap()).unwrap()).collect();
        assert!(traces.contains(&q(3)));
    }

    #[test]
    fn zero_and_pure_have_no_obstruction() {
        let c = arrow();
        let (x, _) = upper_triangular(&c).unwrap();
        let r = c.triangulated_obstruction(&x, &ChainMap::zero(&x, &x)).unwrap();
        assert!(r.extensions_exist && r.low_meets_n && !r.certified());
        let u = unit_complex(&c);
        let r = c.triangulated_obstruction(&u, &ChainMap::zero(&u, &u)).unwrap();
        assert!(r.cut.is_none() && !r.certified());
    }

    #[test]
    fn lower_corner_idempotent_when_dimensions_agree() {
        let c = arrow();
        let (x, f) = lower_corner(&c).unwrap();
        let r = c.idempotent_endo_check(&f, DEFAULT_BOUND).unwrap();
        assert!(r.pass(), "{r:?}");
        let h = f.sub(&c, &ChainMap::identity(&c, &x)).unwrap();
        let r = c.conservativity_check(&h).unwrap();
        assert_eq!((r.invertible, r.pi_invertible, r.p_invertible), (false, false, true));
    }

    #[test]
    fn lower_corner_on_ell_has_trace_three() {
        let c = ell();
        let (x, f) = lower_corner(&c).unwrap();
        assert_eq!(c.kb_trace(&f).unwrap(), q(3));
        let r = c.idempotent_endo_check(&f, DEFAULT_BOUND).unwrap();
        assert!(r.powers_agree && r.nonzero && !r.numerical);
        let h = f.sub(&c, &ChainMap::identity(&c, &x)).unwrap();
        let r = c.conservativity_check(&h).unwrap();
        assert_eq!((r.invertible, r.pi_invertible, r.p_invertible), (false, false, false));
    }

    #[test]
    fn degenerate_idempotents() {
        let c = ell();
        let u = unit_complex(&c);
        let r = c.idempotent_endo_check(&ChainMap::zero(&u, &u), 4).unwrap();
        assert!(r.powers_agree && !r.nonzero);
        let r = c.idempotent_endo_check(&ChainMap::identity(&c, &u), 4).unwrap();
        assert!(r.powers_agree && r.nonzero && !r.numerical);
    }

    #[test]
    fn identity_is_invertible_everywhere() {
        let c = ell();
        let x = arrow_complex(&c).unwrap();
        let r = c.conservativity_check(&ChainMap::identity(&c, &x)).unwrap();
        assert!(r.invertible && r.pi_invertible && r.p_invertible);
    }

    #[test]
    fn nilpotency_bounds() {
        let c = ell();
        let zero = Complex::zero();
        assert_eq!(c.ker_pi_nilpotency(&zero, 8).unwrap().bound, 1);
        let pure = unit_complex(&c);
        let r = c.ker_pi_nilpotency(&pure, 8).unwrap();
        assert_eq!((r.bound, r.actual), (2, Some(1)));
        let x = arrow_complex(&c).unwrap();
        let r = c.ker_pi_nilpotency(&x, 8).unwrap();
        assert_eq!(r.bound, 4);
        assert!(r.verified(), "{r:?}");
    }

    #[test]
    fn kernel_of_pi_nilpotent_on_a_mixed_pure_object() {
        let c = ell();
        let obj = crate::catcore::Obj(vec![1, 1, 0, 0]);
        let r = c.ker_pi_nilpotency(&Complex::pure(&c, &obj, 0), 8).unwrap();
        assert_eq!((r.bound, r.kernel_dim, r.actual), (2, 1, Some(2)));
    }
}
