use std::collections::BTreeMap;

use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::qlinalg::{q, Scalar};

/// A bounded cochain complex: `d^i : X^i -> X^{i+1}`.
///
/// Only nonzero components are stored, so two complexes with the same data
/// compare equal regardless of how they were built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    objs: BTreeMap<i32, Obj>,
    diffs: BTreeMap<i32, Mor>,
}

impl Complex {
    pub fn zero() -> Complex {
        Complex { objs: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Builds a complex from components and differentials keyed by degree,
    /// checking shapes and `d ∘ d = 0`.
    pub fn new(
        spec: &CategorySpec,
        objs: BTreeMap<i32, Obj>,
        diffs: BTreeMap<i32, Mor>,
    ) -> Result<Complex, CatError> {
        let objs: BTreeMap<i32, Obj> = objs.into_iter().filter(|(_, o)| !o.is_zero()).collect();
        let mut kept = BTreeMap::new();
        for (i, d) in diffs {
            let src = objs.get(&i).cloned().unwrap_or_else(|| Obj::zero(spec));
            let tgt = objs.get(&(i + 1)).cloned().unwrap_or_else(|| Obj::zero(spec));
            if d.source != src || d.target != tgt {
                return Err(CatError::ObjectMismatch(format!("differential in degree {i} has the wrong shape")));
            }
            if !d.is_zero() {
                kept.insert(i, d);
            }
        }
        let x = Complex { objs, diffs: kept };
        for (&i, d) in &x.diffs {
            if let Some(next) = x.diffs.get(&(i + 1)) {
                if !spec.compose(next, d)?.is_zero() {
                    return Err(CatError::ObjectMismatch(format!("d∘d is nonzero at degree {i}")));
                }
            }
        }
        Ok(x)
    }

    /// A single object placed in one degree.
    pub fn pure(spec: &CategorySpec, x: &Obj, degree: i32) -> Complex {
        Complex::new(spec, BTreeMap::from([(degree, x.clone())]), BTreeMap::new()).expect("pure complex")
    }

    /// `[X -> Y]` with `X` in `degree` and `Y` in `degree + 1`.
    pub fn two_term(spec: &CategorySpec, d: &Mor, degree: i32) -> Result<Complex, CatError> {
        Complex::new(
            spec,
            BTreeMap::from([(degree, d.source.clone()), (degree + 1, d.target.clone())]),
            BTreeMap::from([(degree, d.clone())]),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.objs.is_empty()
    }

    /// Lowest and highest nonzero degree.
    pub fn range(&self) -> Option<(i32, i32)> {
        Some((*self.objs.keys().next()?, *self.objs.keys().next_back()?))
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.objs.keys().copied().collect()
    }

    pub fn obj(&self, spec: &CategorySpec, i: i32) -> Obj {
        self.objs.get(&i).cloned().unwrap_or_else(|| Obj::zero(spec))
    }

    pub fn d(&self, spec: &CategorySpec, i: i32) -> Mor {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Mor::zero(spec, &self.obj(spec, i), &self.obj(spec, i + 1)))
    }

    pub fn components(&self) -> &BTreeMap<i32, Obj> {
        &self.objs
    }

    pub fn differentials(&self) -> &BTreeMap<i32, Mor> {
        &self.diffs
    }

    /// `X[n]^i = X^{i+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Complex {
        let sign = if n % 2 == 0 { q(1) } else { q(-1) };
        Complex {
            objs: self.objs.iter().map(|(&i, o)| (i - n, o.clone())).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (i - n, d.scale(&sign))).collect(),
        }
    }

    pub fn direct_sum(&self, spec: &CategorySpec, other: &Complex) -> Complex {
        let lo = self.range().into_iter().chain(other.range()).map(|r| r.0).min();
        let hi = self.range().into_iter().chain(other.range()).map(|r| r.1).max();
        let (Some(lo), Some(hi)) = (lo, hi) else { return Complex::zero() };
        let objs = (lo..=hi).map(|i| (i, self.obj(spec, i).sum(&other.obj(spec, i)))).collect();
        let diffs = (lo..hi)
            .map(|i| (i, spec.mor_sum(&[&self.d(spec, i), &other.d(spec, i)]).expect("block sum")))
            .collect();
        Complex::new(spec, objs, diffs).expect("sum of complexes")
    }

    /// Degrees where both complexes are nonzero, in order.
    pub(crate) fn common_degrees(&self, other: &Complex) -> Vec<i32> {
        self.objs.keys().filter(|i| other.objs.contains_key(i)).copied().collect()
    }

    /// Degrees where either complex is nonzero, in order.
    pub(crate) fn union_degrees(&self, other: &Complex) -> Vec<i32> {
        let mut v: Vec<i32> = self.objs.keys().chain(other.objs.keys()).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A degree-preserving map of complexes. Only nonzero components are stored,
/// so equality is equality of maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    comps: BTreeMap<i32, Mor>,
}

impl ChainMap {
    /// Checks shapes and commutation with the differentials.
    pub fn new(
        spec: &CategorySpec,
        source: &Complex,
        target: &Complex,
        comps: BTreeMap<i32, Mor>,
    ) -> Result<ChainMap, CatError> {
        let f = ChainMap::unchecked(spec, source, target, comps)?;
        for i in source.union_degrees(target) {
            let lhs = spec.compose(&target.d(spec, i), &f.at(spec, i))?;
            let rhs = spec.compose(&f.at(spec, i + 1), &source.d(spec, i))?;
            if lhs != rhs {
                return Err(CatError::ObjectMismatch(format!("not a chain map at degree {i}")));
            }
        }
        Ok(f)
    }

    /// Shape checks only.
    pub fn unchecked(
        spec: &CategorySpec,
        source: &Complex,
        target: &Complex,
        comps: BTreeMap<i32, Mor>,
    ) -> Result<ChainMap, CatError> {
        let mut kept = BTreeMap::new();
        for (i, m) in comps {
            if m.source != source.obj(spec, i) || m.target != target.obj(spec, i) {
                return Err(CatError::ObjectMismatch(format!("chain map component {i} has the wrong shape")));
            }
            if !m.is_zero() {
                kept.insert(i, m);
            }
        }
        Ok(ChainMap { source: source.clone(), target: target.clone(), comps: kept })
    }

    fn normalized(mut self) -> ChainMap {
        self.comps.retain(|_, m| !m.is_zero());
        self
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(spec: &CategorySpec, x: &Complex) -> ChainMap {
        let comps = x.objs.iter().map(|(&i, o)| (i, Mor::identity(spec, o))).collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn at(&self, spec: &CategorySpec, i: i32) -> Mor {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Mor::zero(spec, &self.source.obj(spec, i), &self.target.obj(spec, i)))
    }

    pub fn components(&self) -> &BTreeMap<i32, Mor> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mor::is_zero)
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// `g ∘ f`, written `g.after(f)`.
    pub fn after(&self, spec: &CategorySpec, f: &ChainMap) -> Result<ChainMap, CatError> {
        if f.target != self.source {
            return Err(CatError::ObjectMismatch("chain maps are not composable".into()));
        }
        let comps = f
            .source
            .common_degrees(&self.target)
            .into_iter()
            .map(|i| Ok((i, spec.compose(&self.at(spec, i), &f.at(spec, i))?)))
            .collect::<Result<_, CatError>>()?;
        Ok(ChainMap { source: f.source.clone(), target: self.target.clone(), comps }.normalized())
    }

    fn zip(&self, spec: &CategorySpec, other: &ChainMap, sub: bool) -> Result<ChainMap, CatError> {
        if self.source != other.source || self.target != other.target {
            return Err(CatError::ObjectMismatch("chain maps between different complexes".into()));
        }
        let comps = self
            .source
            .common_degrees(&self.target)
            .into_iter()
            .map(|i| {
                let (a, b) = (self.at(spec, i), other.at(spec, i));
                Ok((i, if sub { a.sub(&b)? } else { a.add(&b)? }))
            })
            .collect::<Result<_, CatError>>()?;
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), comps }.normalized())
    }

    pub fn add(&self, spec: &CategorySpec, other: &ChainMap) -> Result<ChainMap, CatError> {
        self.zip(spec, other, false)
    }

    pub fn sub(&self, spec: &CategorySpec, other: &ChainMap) -> Result<ChainMap, CatError> {
        self.zip(spec, other, true)
    }

    pub fn scale(&self, k: &Scalar) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(&i, m)| (i, m.scale(k))).collect(),
        }
        .normalized()
    }

    /// `f[n]`; components move with the degrees and keep their sign.
    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap {
            source: self.source.shift(n),
            target: self.target.shift(n),
            comps: self.comps.iter().map(|(&i, m)| (i - n, m.clone())).collect(),
        }
    }

    /// `f^n` for an endomorphism, `n >= 1`.
    pub fn power(&self, spec: &CategorySpec, n: u32) -> Result<ChainMap, CatError> {
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.after(spec, self)?;
        }
        Ok(acc)
    }
}

/// Components `h^i : X^i -> Y^{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    pub comps: BTreeMap<i32, Mor>,
}

impl Homotopy {
    pub fn zero(source: &Complex, target: &Complex) -> Homotopy {
        Homotopy { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn at(&self, spec: &CategorySpec, i: i32) -> Mor {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Mor::zero(spec, &self.source.obj(spec, i), &self.target.obj(spec, i - 1)))
    }

    /// The null-homotopic chain map `d h + h d`.
    pub fn boundary(&self, spec: &CategorySpec) -> Result<ChainMap, CatError> {
        let (x, y) = (&self.source, &self.target);
        let comps = x
            .common_degrees(y)
            .into_iter()
            .map(|i| {
                let dh = spec.compose(&y.d(spec, i - 1), &self.at(spec, i))?;
                let hd = spec.compose(&self.at(spec, i + 1), &x.d(spec, i))?;
                Ok((i, dh.add(&hd)?))
            })
            .collect::<Result<_, CatError>>()?;
        ChainMap::unchecked(spec, x, y, comps)
    }

    /// Whether `f - g = d h + h d`.
    pub fn witnesses(&self, spec: &CategorySpec, f: &ChainMap, g: &ChainMap) -> Result<bool, CatError> {
        Ok(f.sub(spec, g)? == self.boundary(spec)?)
    }

    pub fn add(&self, spec: &CategorySpec, other: &Homotopy) -> Result<Homotopy, CatError> {
        let mut comps = BTreeMap::new();
        for i in self.comps.keys().chain(other.comps.keys()) {
            comps.insert(*i, self.at(spec, *i).add(&other.at(spec, *i))?);
        }
        Ok(Homotopy { source: self.source.clone(), target: self.target.clone(), comps })
    }

    /// `g ∘ h ∘ f` for chain maps `f` into the source and `g` out of the target.
    pub fn conjugate(&self, spec: &CategorySpec, g: &ChainMap, f: &ChainMap) -> Result<Homotopy, CatError> {
        let mut comps = BTreeMap::new();
        for i in f.source.degrees() {
            let m = spec.compose_all(&[&g.at(spec, i - 1), &self.at(spec, i), &f.at(spec, i)])?;
            if !m.is_zero() {
                comps.insert(i, m);
            }
        }
        Ok(Homotopy { source: f.source.clone(), target: g.target.clone(), comps })
    }
}

/// A mapping cone with its two canonical maps `Y -> C(f)` and `C(f) -> X[1]`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl CategorySpec {
    /// `C(f)^i = X^{i+1} ⊕ Y^i` with `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self, f: &ChainMap) -> Result<Cone, CatError> {
        let (x, y) = (&f.source, &f.target);
        let xs = x.shift(1);
        let degs = xs.union_degrees(y);
        let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
            return Ok(Cone {
                complex: Complex::zero(),
                inclusion: ChainMap::zero(y, &Complex::zero()),
                projection: ChainMap::zero(&Complex::zero(), &xs),
            });
        };
        let parts = |i: i32| [xs.obj(self, i), y.obj(self, i)];
        let objs = (lo..=hi).map(|i| (i, xs.obj(self, i).sum(&y.obj(self, i)))).collect();
        let mut diffs = BTreeMap::new();
        for i in lo..hi {
            let blocks = vec![
                vec![Some(xs.d(self, i)), None],
                vec![Some(f.at(self, i + 1)), Some(y.d(self, i))],
            ];
            diffs.insert(i, self.from_blocks(&parts(i + 1), &parts(i), &blocks)?);
        }
        let c = Complex::new(self, objs, diffs)?;
        let inc = (lo..=hi).map(|i| (i, self.inclusion(&parts(i), 1))).collect();
        let proj = (lo..=hi).map(|i| (i, self.projection(&parts(i), 0))).collect();
        Ok(Cone {
            inclusion: ChainMap::new(self, y, &c, inc)?,
            projection: ChainMap::new(self, &c, &xs, proj)?,
            complex: c,
        })
    }

    /// The fiber `C(f)[-1]`, sitting in the triangle `Fib(f) -> X -> Y`.
    pub fn cocone(&self, f: &ChainMap) -> Result<Complex, CatError> {
        Ok(self.cone(f)?.complex.shift(-1))
    }
}
