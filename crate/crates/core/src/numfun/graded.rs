use std::collections::BTreeMap;

use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::homotopy::{ChainMap, Complex};
use crate::qlinalg::Mat;

/// An object of the graded semisimple category: one object of the quotient
/// per degree, nil data forgotten.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedNumObject(pub BTreeMap<i32, Obj>);

impl GradedNumObject {
    pub fn new(spec: &CategorySpec, comps: impl IntoIterator<Item = (i32, Obj)>) -> Self {
        let _ = spec;
        GradedNumObject(comps.into_iter().filter(|(_, o)| !o.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, spec: &CategorySpec, i: i32) -> Obj {
        self.0.get(&i).cloned().unwrap_or_else(|| Obj::zero(spec))
    }

    pub fn shift(&self, n: i32) -> Self {
        GradedNumObject(self.0.iter().map(|(&i, o)| (i - n, o.clone())).collect())
    }

    /// The same data as a complex with zero differential.
    pub fn as_complex(&self, spec: &CategorySpec) -> Complex {
        Complex::new(spec, self.0.clone(), BTreeMap::new()).expect("zero differential")
    }

    /// `dim Hom(self, other)`: degreewise and semisimple only.
    pub fn hom_dim(&self, other: &GradedNumObject) -> usize {
        self.0
            .iter()
            .filter_map(|(i, x)| other.0.get(i).map(|y| x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum::<usize>()))
            .sum()
    }

    pub fn describe(&self, spec: &CategorySpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0.iter().map(|(i, o)| format!("[{i}] {}", o.describe(spec))).collect::<Vec<_>>().join(" ⊕ ")
    }
}

/// A degree-preserving morphism of graded semisimple objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedNumMor {
    pub source: GradedNumObject,
    pub target: GradedNumObject,
    comps: BTreeMap<i32, Mor>,
}

impl GradedNumMor {
    /// Keeps the semisimple part of each component and drops zeros.
    pub fn new(
        spec: &CategorySpec,
        source: &GradedNumObject,
        target: &GradedNumObject,
        comps: BTreeMap<i32, Mor>,
    ) -> Result<Self, CatError> {
        let mut kept = BTreeMap::new();
        for (i, m) in comps {
            if m.source != source.at(spec, i) || m.target != target.at(spec, i) {
                return Err(CatError::ObjectMismatch(format!("graded component in degree {i}")));
            }
            let m = spec.quotient_num(&m);
            if !m.is_zero() {
                kept.insert(i, m);
            }
        }
        Ok(GradedNumMor { source: source.clone(), target: target.clone(), comps: kept })
    }

    pub fn zero(source: &GradedNumObject, target: &GradedNumObject) -> Self {
        GradedNumMor { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(spec: &CategorySpec, x: &GradedNumObject) -> Self {
        let comps = x.0.iter().map(|(&i, o)| (i, Mor::identity(spec, o))).collect();
        GradedNumMor { source: x.clone(), target: x.clone(), comps }
    }

    pub fn at(&self, spec: &CategorySpec, i: i32) -> Mor {
        self.comps.get(&i).cloned().unwrap_or_else(|| Mor::zero(spec, &self.source.at(spec, i), &self.target.at(spec, i)))
    }

    pub fn components(&self) -> &BTreeMap<i32, Mor> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn after(&self, spec: &CategorySpec, f: &GradedNumMor) -> Result<GradedNumMor, CatError> {
        if f.target != self.source {
            return Err(CatError::ObjectMismatch("graded composition".into()));
        }
        let mut comps = BTreeMap::new();
        for (&i, g) in &self.comps {
            if let Some(fi) = f.comps.get(&i) {
                comps.insert(i, spec.compose(g, fi)?);
            }
        }
        GradedNumMor::new(spec, &f.source, &self.target, comps)
    }

    pub fn sub(&self, spec: &CategorySpec, other: &GradedNumMor) -> Result<GradedNumMor, CatError> {
        let mut comps = BTreeMap::new();
        for i in self.comps.keys().chain(other.comps.keys()) {
            comps.insert(*i, self.at(spec, *i).sub(&other.at(spec, *i))?);
        }
        GradedNumMor::new(spec, &self.source, &self.target, comps)
    }

    pub fn is_invertible(&self, spec: &CategorySpec) -> bool {
        self.source.0.keys().chain(self.target.0.keys()).all(|&i| spec.is_invertible(&self.at(spec, i)))
    }

    /// Rank of the block on simple `s` in degree `i`.
    pub fn rank(&self, i: i32, s: usize) -> usize {
        self.comps.get(&i).map_or(0, |m| m.ss[s].rank())
    }

    /// Coordinates in the semisimple hom basis, degree by degree.
    pub fn vectorize(&self, spec: &CategorySpec) -> Mat {
        let mut out = Vec::new();
        for (&i, x) in &self.source.0 {
            let Some(y) = self.target.0.get(&i) else { continue };
            let m = self.at(spec, i);
            for s in 0..spec.n_simples() {
                for r in 0..y.mult(s) {
                    for c in 0..x.mult(s) {
                        out.push(m.ss[s][(r, c)].clone());
                    }
                }
            }
        }
        Mat::column(out)
    }

    /// The same data as a chain map between zero-differential complexes.
    pub fn as_chain_map(&self, spec: &CategorySpec) -> ChainMap {
        ChainMap::new(spec, &self.source.as_complex(spec), &self.target.as_complex(spec), self.comps.clone())
            .expect("zero differentials")
    }

    pub fn from_chain_map(spec: &CategorySpec, f: &ChainMap) -> Result<GradedNumMor, CatError> {
        let src = GradedNumObject::new(spec, f.source.components().clone());
        let tgt = GradedNumObject::new(spec, f.target.components().clone());
        GradedNumMor::new(spec, &src, &tgt, f.components().clone())
    }

    /// The standard basis of `Hom(source, target)`, in `vectorize` order.
    pub fn basis(spec: &CategorySpec, source: &GradedNumObject, target: &GradedNumObject) -> Vec<GradedNumMor> {
        let mut out = Vec::new();
        for (&i, x) in &source.0 {
            let Some(y) = target.0.get(&i) else { continue };
            for s in 0..spec.n_simples() {
                for r in 0..y.mult(s) {
                    for c in 0..x.mult(s) {
                        let mut m = Mor::zero(spec, x, y);
                        m.ss[s][(r, c)] = crate::qlinalg::q(1);
                        let comps = BTreeMap::from([(i, m)]);
                        out.push(GradedNumMor::new(spec, source, target, comps).expect("basis element"));
                    }
                }
            }
        }
        out
    }
}
