use std::collections::BTreeMap;

use num_traits::Zero;

use super::{CatError, CategorySpec, Mor, Obj};

/// Where each copy of `S ⊗ T` lands inside `X ⊗ Y`.
///
/// Copies of a simple `U` in `X ⊗ Y` are enumerated by `(S, T, k, i, j)` in
/// lexicographic order, where `k` is the position of `U` among the summands of
/// `S ⊗ T` and `i`, `j` index the copies of `S` in `X` and `T` in `Y`.
#[derive(Debug, Clone)]
pub struct TensorLayout {
    pub left: Obj,
    pub right: Obj,
    pub product: Obj,
    base: BTreeMap<(usize, usize, usize), usize>,
}

impl TensorLayout {
    pub fn pos(&self, s: usize, t: usize, k: usize, i: usize, j: usize) -> usize {
        self.base[&(s, t, k)] + i * self.right.mult(t) + j
    }
}

impl CategorySpec {
    pub fn tensor_layout(&self, x: &Obj, y: &Obj) -> Result<TensorLayout, CatError> {
        let n = self.n_simples();
        let mut next = vec![0usize; n];
        let mut base = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                let m = x.mult(s) * y.mult(t);
                if m == 0 {
                    continue;
                }
                let e = self.fusion_entry(s, t)?;
                for (k, &u) in e.summands.iter().enumerate() {
                    base.insert((s, t, k), next[u]);
                    next[u] += m;
                }
            }
        }
        Ok(TensorLayout { left: x.clone(), right: y.clone(), product: Obj(next), base })
    }

    pub fn tensor_obj(&self, x: &Obj, y: &Obj) -> Result<Obj, CatError> {
        Ok(self.tensor_layout(x, y)?.product)
    }

    /// Where `v ⊗ id_T` goes for `v` in bimodule entry `b`: `Ok(Some(b'))` when
    /// it is the same basis vector of entry `b'`, `Ok(None)` when it must be
    /// zero because every receiving bimodule space is zero.
    fn transport(&self, b: usize, other: usize, on_left: bool) -> Result<Option<usize>, CatError> {
        if other == self.unit {
            return Ok(Some(b));
        }
        let entry = &self.bimodule[b];
        let (src, tgt) = if on_left {
            (self.fusion_entry(entry.source, other)?, self.fusion_entry(entry.target, other)?)
        } else {
            (self.fusion_entry(other, entry.source)?, self.fusion_entry(other, entry.target)?)
        };
        let receiving = src
            .summands
            .iter()
            .flat_map(|&u| tgt.summands.iter().map(move |&w| (u, w)))
            .any(|(u, w)| self.bimodule_dim(u, w) > 0);
        if receiving {
            return Err(CatError::TransportMissing {
                entry: entry.basis_names.join(","),
                other: self.name(other).to_string(),
            });
        }
        Ok(None)
    }

    /// `(s, n) ⊗ (s', n') = (s ⊗ s', s ⊗ n' + n ⊗ s')`.
    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Result<Mor, CatError> {
        let src = self.tensor_layout(&f.source, &g.source)?;
        let tgt = self.tensor_layout(&f.target, &g.target)?;
        let mut out = Mor::zero(self, &src.product, &tgt.product);
        let n = self.n_simples();
        for s in 0..n {
            for t in 0..n {
                let (fs, gt) = (&f.ss[s], &g.ss[t]);
                if fs.is_zero() || gt.is_zero() {
                    continue;
                }
                let e = self.fusion_entry(s, t)?;
                for (k, &u) in e.summands.iter().enumerate() {
                    for i2 in 0..fs.rows() {
                        for i in 0..fs.cols() {
                            if fs[(i2, i)].is_zero() {
                                continue;
                            }
                            for j2 in 0..gt.rows() {
                                for j in 0..gt.cols() {
                                    if gt[(j2, j)].is_zero() {
                                        continue;
                                    }
                                    let v = &fs[(i2, i)] * &gt[(j2, j)];
                                    out.ss[u][(tgt.pos(s, t, k, i2, j2), src.pos(s, t, k, i, j))] += v;
                                }
                            }
                        }
                    }
                }
            }
        }
        // numerical part of f against the semisimple part of g
        for (b, entry) in self.bimodule.iter().enumerate() {
            for t in 0..n {
                let gt = &g.ss[t];
                if gt.is_zero() || f.nil[b].iter().all(|m| m.is_zero()) {
                    continue;
                }
                let Some(b2) = self.transport(b, t, true)? else { continue };
                for (v, fm) in f.nil[b].iter().enumerate() {
                    for i2 in 0..fm.rows() {
                        for i in 0..fm.cols() {
                            if fm[(i2, i)].is_zero() {
                                continue;
                            }
                            for j2 in 0..gt.rows() {
                                for j in 0..gt.cols() {
                                    let c = &fm[(i2, i)] * &gt[(j2, j)];
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let r = tgt.pos(entry.target, t, 0, i2, j2);
                                    let col = src.pos(entry.source, t, 0, i, j);
                                    out.nil[b2][v][(r, col)] += c;
                                }
                            }
                        }
                    }
                }
            }
        }
        // semisimple part of f against the numerical part of g
        for (b, entry) in self.bimodule.iter().enumerate() {
            for s in 0..n {
                let fs = &f.ss[s];
                if fs.is_zero() || g.nil[b].iter().all(|m| m.is_zero()) {
                    continue;
                }
                let Some(b2) = self.transport(b, s, false)? else { continue };
                for (v, gm) in g.nil[b].iter().enumerate() {
                    for i2 in 0..fs.rows() {
                        for i in 0..fs.cols() {
                            if fs[(i2, i)].is_zero() {
                                continue;
                            }
                            for j2 in 0..gm.rows() {
                                for j in 0..gm.cols() {
                                    let c = &fs[(i2, i)] * &gm[(j2, j)];
                                    if c.is_zero() {
                                        continue;
                                    }
                                    let r = tgt.pos(s, entry.target, 0, i2, j2);
                                    let col = src.pos(s, entry.source, 0, i, j);
                                    out.nil[b2][v][(r, col)] += c;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The symmetry `X ⊗ Y -> Y ⊗ X`.
    pub fn symmetry(&self, x: &Obj, y: &Obj) -> Result<Mor, CatError> {
        let src = self.tensor_layout(x, y)?;
        let tgt = self.tensor_layout(y, x)?;
        let mut out = Mor::zero(self, &src.product, &tgt.product);
        let n = self.n_simples();
        for s in 0..n {
            for t in 0..n {
                if x.mult(s) * y.mult(t) == 0 {
                    continue;
                }
                let e = self.fusion_entry(s, t)?;
                for (k, &u) in e.summands.iter().enumerate() {
                    let (k2, sign) = (0..e.summands.len())
                        .find_map(|r| {
                            let v = &e.symmetry[(r, k)];
                            (!v.is_zero()).then(|| (r, v.clone()))
                        })
                        .ok_or_else(|| CatError::IncoherentSpec {
                            axiom: super::spec::AXIOM_SYMMETRY.into(),
                            detail: format!("({}, {}) symmetry column is zero", self.name(s), self.name(t)),
                        })?;
                    for i in 0..x.mult(s) {
                        for j in 0..y.mult(t) {
                            out.ss[u][(tgt.pos(t, s, k2, j, i), src.pos(s, t, k, i, j))] = sign.clone();
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;
    use crate::qlinalg::q;

    #[test]
    fn unit_is_neutral() {
        let c = ell();
        let one = Obj::unit(&c);
        let h1 = Obj::simple(&c, c.simple_index("h1").unwrap());
        let x = one.sum(&h1);
        assert_eq!(c.tensor_obj(&one, &x).unwrap(), x);
        assert_eq!(c.tensor_obj(&x, &one).unwrap(), x);
        let alpha = c.hom_space(&one, &h1).pop().unwrap();
        assert_eq!(c.tensor_mor(&Mor::identity(&c, &one), &alpha).unwrap(), alpha);
        assert_eq!(c.tensor_mor(&alpha, &Mor::identity(&c, &one)).unwrap(), alpha);
    }

    #[test]
    fn h1_squared_is_lef_plus_sym2() {
        let c = ell();
        let h1 = Obj::simple(&c, c.simple_index("h1").unwrap());
        let sq = c.tensor_obj(&h1, &h1).unwrap();
        let lef = Obj::simple(&c, c.simple_index("lef").unwrap());
        let sym2 = Obj::simple(&c, c.simple_index("sym2").unwrap());
        assert_eq!(sq, lef.sum(&sym2));
        let id = Mor::identity(&c, &h1);
        assert_eq!(c.tensor_mor(&id, &id).unwrap(), Mor::identity(&c, &sq));
    }

    #[test]
    fn symmetry_is_involutive() {
        let c = ell();
        let h1 = Obj::simple(&c, c.simple_index("h1").unwrap());
        let x = Obj::unit(&c).sum(&h1).sum(&h1);
        let sw = c.symmetry(&x, &x).unwrap();
        let sq = c.compose(&sw, &sw).unwrap();
        assert_eq!(sq, Mor::identity(&c, &sw.source));
        // tr(c_{X,X}) = dim X in a symmetric category: 1 + 2 * (-2)
        assert_eq!(c.trace(&sw).unwrap(), q(-3));
    }

    #[test]
    fn missing_fusion_is_reported() {
        let c = ell();
        let lef = Obj::simple(&c, c.simple_index("lef").unwrap());
        let h1 = Obj::simple(&c, c.simple_index("h1").unwrap());
        match c.tensor_obj(&lef, &h1) {
            Err(CatError::FusionIncomplete { left, right }) => {
                assert_eq!((left.as_str(), right.as_str()), ("lef", "h1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
