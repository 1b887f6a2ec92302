use std::collections::BTreeMap;

use super::{ChainMap, Complex, Homotopy};
use crate::catcore::{CatError, CategorySpec, HomBasis, Mor};
use crate::qlinalg::{self, mat_kernel, Mat, Scalar};

/// Coordinates on `⊕_i Hom(X^i, Y^{i+step})`.
#[derive(Debug, Clone)]
pub struct GradedLayout {
    blocks: Vec<(i32, HomBasis, usize)>,
    dim: usize,
}

impl GradedLayout {
    pub fn new(spec: &CategorySpec, x: &Complex, y: &Complex, step: i32) -> GradedLayout {
        let mut blocks = Vec::new();
        let mut off = 0;
        for i in x.degrees() {
            let hb = spec.hom_basis(&x.obj(spec, i), &y.obj(spec, i + step));
            if hb.dim() == 0 {
                continue;
            }
            let d = hb.dim();
            blocks.push((i, hb, off));
            off += d;
        }
        GradedLayout { blocks, dim: off }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn block(&self, i: i32) -> Option<&(i32, HomBasis, usize)> {
        self.blocks.iter().find(|b| b.0 == i)
    }

    /// Every basis element as `(degree, morphism)`.
    fn elements(&self, spec: &CategorySpec) -> Vec<(i32, Mor)> {
        self.blocks
            .iter()
            .flat_map(|(i, hb, _)| (0..hb.dim()).map(move |k| (*i, hb.mor(spec, hb.elem(k)))))
            .collect()
    }

    /// Adds the coordinates of `m`, placed in degree `i`, into column `col`.
    fn accumulate(&self, out: &mut Mat, col: usize, i: i32, m: &Mor) {
        let Some((_, hb, off)) = self.block(i) else {
            debug_assert!(m.is_zero(), "component outside the layout");
            return;
        };
        for (k, v) in hb.coords(m).into_iter().enumerate() {
            out[(off + k, col)] += v;
        }
    }

    pub fn vectorize(&self, comps: impl Fn(i32) -> Mor) -> Mat {
        let mut v = Mat::zeros(self.dim, 1);
        for (i, _, _) in &self.blocks {
            self.accumulate(&mut v, 0, *i, &comps(*i));
        }
        v
    }

    pub fn components(&self, spec: &CategorySpec, v: &Mat) -> BTreeMap<i32, Mor> {
        self.blocks
            .iter()
            .map(|(i, hb, off)| {
                let entries: Vec<Scalar> = (0..hb.dim()).map(|k| v[(off + k, 0)].clone()).collect();
                (*i, hb.from_coords(spec, &entries))
            })
            .collect()
    }

    /// Matrix of a linear operator given on basis elements; `op` returns the
    /// image components keyed by degree in the output layout.
    fn operator(
        &self,
        spec: &CategorySpec,
        out: &GradedLayout,
        op: impl Fn(i32, &Mor) -> Result<Vec<(i32, Mor)>, CatError>,
    ) -> Result<Mat, CatError> {
        let mut m = Mat::zeros(out.dim, self.dim);
        for (col, (i, e)) in self.elements(spec).into_iter().enumerate() {
            for (j, img) in op(i, &e)? {
                out.accumulate(&mut m, col, j, &img);
            }
        }
        Ok(m)
    }
}

/// `Hom_{K^b}(X, Y)`: chain maps modulo null-homotopic ones.
#[derive(Debug, Clone)]
pub struct HomCx {
    pub source: Complex,
    pub target: Complex,
    pub maps: GradedLayout,
    pub homotopies: GradedLayout,
    /// `h ↦ d h + h d` in coordinates.
    pub boundary_op: Mat,
    pub cycles: Vec<Mat>,
    pub boundaries: Vec<Mat>,
    /// Chain maps completing `boundaries` to a basis of `cycles`.
    pub reps: Vec<Mat>,
}

impl HomCx {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn chain_map(&self, spec: &CategorySpec, v: &Mat) -> ChainMap {
        ChainMap::unchecked(spec, &self.source, &self.target, self.maps.components(spec, v))
            .expect("layout matches the complexes")
    }

    pub fn rep_maps(&self, spec: &CategorySpec) -> Vec<ChainMap> {
        self.reps.iter().map(|v| self.chain_map(spec, v)).collect()
    }

    pub fn vectorize(&self, spec: &CategorySpec, f: &ChainMap) -> Mat {
        self.maps.vectorize(|i| f.at(spec, i))
    }

    /// Coordinates of the class of `f` against `reps`.
    pub fn class_coords(&self, spec: &CategorySpec, f: &ChainMap) -> Option<Vec<Scalar>> {
        let mut basis = self.reps.clone();
        basis.extend(self.boundaries.iter().cloned());
        let c = qlinalg::coordinates(self.maps.dim(), &basis, &self.vectorize(spec, f))?;
        Some(c[..self.reps.len()].to_vec())
    }

    /// A homotopy `h` with `f = d h + h d`, if one exists.
    pub fn null_homotopy(&self, spec: &CategorySpec, f: &ChainMap) -> Option<Homotopy> {
        let sol = qlinalg::solve_linear(&self.boundary_op, &self.vectorize(spec, f)).ok()??;
        Some(Homotopy {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.homotopies.components(spec, &sol),
        })
    }

    pub fn is_null(&self, spec: &CategorySpec, f: &ChainMap) -> bool {
        qlinalg::span_contains(self.maps.dim(), &self.boundaries, &self.vectorize(spec, f))
    }

    pub fn homotopic(&self, spec: &CategorySpec, f: &ChainMap, g: &ChainMap) -> Result<bool, CatError> {
        Ok(self.is_null(spec, &f.sub(spec, g)?))
    }

    /// Chain map from class coordinates.
    pub fn from_class_coords(&self, spec: &CategorySpec, c: &[Scalar]) -> ChainMap {
        let mut v = Mat::zeros(self.maps.dim(), 1);
        for (k, r) in c.iter().zip(&self.reps) {
            v = &v + &r.scale(k);
        }
        self.chain_map(spec, &v)
    }
}

impl CategorySpec {
    pub fn kb_hom(&self, x: &Complex, y: &Complex) -> Result<HomCx, CatError> {
        let maps = GradedLayout::new(self, x, y, 0);
        let homotopies = GradedLayout::new(self, x, y, -1);
        let obstruction = GradedLayout::new(self, x, y, 1);
        // f ↦ d_Y f - f d_X, landing in Hom(X^i, Y^{i+1})
        let d_op = maps.operator(self, &obstruction, |i, e| {
            Ok(vec![
                (i, self.compose(&y.d(self, i), e)?),
                (i - 1, self.compose(e, &x.d(self, i - 1))?.neg()),
            ])
        })?;
        let boundary_op = homotopies.operator(self, &maps, |i, e| {
            Ok(vec![
                (i, self.compose(&y.d(self, i - 1), e)?),
                (i - 1, self.compose(e, &x.d(self, i - 1))?),
            ])
        })?;
        let cycles = if obstruction.dim() == 0 {
            (0..maps.dim()).map(|k| unit_vector(maps.dim(), k)).collect()
        } else {
            mat_kernel(&d_op)
        };
        let columns: Vec<Mat> = (0..boundary_op.cols()).map(|c| boundary_op.col_vec(c)).collect();
        let boundaries = qlinalg::independent_subset(maps.dim(), &columns);
        let mut reps = Vec::new();
        let mut span = boundaries.clone();
        for z in &cycles {
            if !qlinalg::span_contains(maps.dim(), &span, z) {
                span.push(z.clone());
                reps.push(z.clone());
            }
        }
        Ok(HomCx {
            source: x.clone(),
            target: y.clone(),
            maps,
            homotopies,
            boundary_op,
            cycles,
            boundaries,
            reps,
        })
    }
}

fn unit_vector(n: usize, k: usize) -> Mat {
    let mut v = Mat::zeros(n, 1);
    v[(k, 0)] = Scalar::from_integer(1.into());
    v
}

impl CategorySpec {
    /// A homotopy inverse of `f`, if `f` is a homotopy equivalence.
    pub fn kb_inverse(&self, f: &ChainMap) -> Result<Option<ChainMap>, CatError> {
        let (x, y) = (&f.source, &f.target);
        let back = self.kb_hom(y, x)?;
        let xx = self.kb_hom(x, x)?;
        let yy = self.kb_hom(y, y)?;
        // unknowns: coefficients on cycles of Hom(Y, X), then boundary
        // coefficients in End(X) and End(Y)
        let gs: Vec<ChainMap> = back.cycles.iter().map(|v| back.chain_map(self, v)).collect();
        let n_g = gs.len();
        let (n_x, n_y) = (xx.boundaries.len(), yy.boundaries.len());
        let rows = xx.maps.dim() + yy.maps.dim();
        let mut a = Mat::zeros(rows, n_g + n_x + n_y);
        for (k, g) in gs.iter().enumerate() {
            let gf = xx.vectorize(self, &g.after(self, f)?);
            let fg = yy.vectorize(self, &f.after(self, g)?);
            for r in 0..xx.maps.dim() {
                a[(r, k)] = gf[(r, 0)].clone();
            }
            for r in 0..yy.maps.dim() {
                a[(xx.maps.dim() + r, k)] = fg[(r, 0)].clone();
            }
        }
        for (k, bnd) in xx.boundaries.iter().enumerate() {
            for r in 0..xx.maps.dim() {
                a[(r, n_g + k)] = -bnd[(r, 0)].clone();
            }
        }
        for (k, bnd) in yy.boundaries.iter().enumerate() {
            for r in 0..yy.maps.dim() {
                a[(xx.maps.dim() + r, n_g + n_x + k)] = -bnd[(r, 0)].clone();
            }
        }
        let idx = xx.vectorize(self, &ChainMap::identity(self, x));
        let idy = yy.vectorize(self, &ChainMap::identity(self, y));
        let rhs = idx.vstack(&idy)?;
        let Some(sol) = qlinalg::solve_linear(&a, &rhs)? else { return Ok(None) };
        let mut g = ChainMap::zero(y, x);
        for (k, gk) in gs.iter().enumerate() {
            g = g.add(self, &gk.scale(&sol[(k, 0)]))?;
        }
        Ok(Some(g))
    }
}
