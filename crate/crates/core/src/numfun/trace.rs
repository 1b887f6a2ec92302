use crate::catcore::{CatError, CategorySpec};
use crate::homotopy::{ChainMap, Complex, HomCx};
use crate::qlinalg::{self, Mat, Scalar};

/// A hom-space of the homotopy category together with its numerical
/// subspace. Vectors are class coordinates against `hom.reps`.
#[derive(Debug, Clone)]
pub struct QuotientHom {
    pub hom: HomCx,
    pub numerical: Vec<Mat>,
    /// Classes completing `numerical` to a basis.
    pub cosets: Vec<Mat>,
}

impl QuotientHom {
    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn numerical_dim(&self) -> usize {
        self.numerical.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.cosets.len()
    }

    pub fn class_vector(&self, spec: &CategorySpec, f: &ChainMap) -> Result<Mat, CatError> {
        let c = self
            .hom
            .class_coords(spec, f)
            .ok_or_else(|| CatError::ObjectMismatch("not a chain map of this hom-space".into()))?;
        Ok(Mat::column(c))
    }

    pub fn contains(&self, spec: &CategorySpec, f: &ChainMap) -> Result<bool, CatError> {
        let v = self.class_vector(spec, f)?;
        Ok(qlinalg::span_contains(self.dim(), &self.numerical, &v))
    }

    pub fn numerical_maps(&self, spec: &CategorySpec) -> Vec<ChainMap> {
        self.numerical.iter().map(|v| self.hom.from_class_coords(spec, v.entries())).collect()
    }
}

impl CategorySpec {
    /// `Σ_i (-1)^i tr(f^i)`.
    pub fn kb_trace(&self, f: &ChainMap) -> Result<Scalar, CatError> {
        if !f.is_endo() {
            return Err(CatError::NotEndomorphism);
        }
        let mut acc = Scalar::from_integer(0.into());
        for (&i, m) in f.components() {
            let t = self.trace(m)?;
            acc += if i.rem_euclid(2) == 0 { t } else { -t };
        }
        Ok(acc)
    }

    /// Gram matrix of `(f, g) ↦ tr(g ∘ f)` on class bases of `Hom(X, Y)` and
    /// `Hom(Y, X)`.
    pub fn kb_trace_pairing(&self, there: &HomCx, back: &HomCx) -> Result<Mat, CatError> {
        let fs = there.rep_maps(self);
        let gs = back.rep_maps(self);
        let mut p = Mat::zeros(fs.len(), gs.len());
        for (a, f) in fs.iter().enumerate() {
            for (b, g) in gs.iter().enumerate() {
                p[(a, b)] = self.kb_trace(&g.after(self, f)?)?;
            }
        }
        Ok(p)
    }

    pub fn kb_numerical_ideal(&self, x: &Complex, y: &Complex) -> Result<QuotientHom, CatError> {
        let hom = self.kb_hom(x, y)?;
        let back = self.kb_hom(y, x)?;
        let numerical = qlinalg::bilinear_radical(&self.kb_trace_pairing(&hom, &back)?);
        let n = hom.dim();
        let mut span = numerical.clone();
        let mut cosets = Vec::new();
        for k in 0..n {
            let mut e = Mat::zeros(n, 1);
            e[(k, 0)] = qlinalg::q(1);
            if !qlinalg::span_contains(n, &span, &e) {
                span.push(e.clone());
                cosets.push(e);
            }
        }
        Ok(QuotientHom { hom, numerical, cosets })
    }
}
