use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::qlinalg::q;

/// The summands `X^i ⊗ Y^j` of each total degree, ordered by `i`.
fn parts(spec: &CategorySpec, x: &Complex, y: &Complex, n: i32) -> Result<Vec<(i32, Obj)>, CatError> {
    let (Some((xl, xh)), Some((yl, yh))) = (x.range(), y.range()) else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    for i in xl..=xh {
        let j = n - i;
        if j < yl || j > yh {
            continue;
        }
        out.push((i, spec.tensor_obj(&x.obj(spec, i), &y.obj(spec, j))?));
    }
    Ok(out)
}

fn total_range(x: &Complex, y: &Complex) -> Option<(i32, i32)> {
    let ((xl, xh), (yl, yh)) = (x.range()?, y.range()?);
    Some((xl + yl, xh + yh))
}

fn objs_of(p: &[(i32, Obj)]) -> Vec<Obj> {
    p.iter().map(|(_, o)| o.clone()).collect()
}

impl CategorySpec {
    /// Total complex with `d = d_X ⊗ 1 + (-1)^i 1 ⊗ d_Y` on `X^i ⊗ Y^j`.
    pub fn tensor_complex(&self, x: &Complex, y: &Complex) -> Result<Complex, CatError> {
        let Some((lo, hi)) = total_range(x, y) else { return Ok(Complex::zero()) };
        let mut objs = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in lo..=hi {
            let src = parts(self, x, y, n)?;
            objs.insert(n, Obj::sum_all(self.n_simples(), src.iter().map(|(_, o)| o)));
            if n == hi {
                continue;
            }
            let tgt = parts(self, x, y, n + 1)?;
            let mut blocks = vec![vec![None; src.len()]; tgt.len()];
            for (b, (i, _)) in src.iter().enumerate() {
                let j = n - i;
                for (a, (i2, _)) in tgt.iter().enumerate() {
                    if *i2 == i + 1 {
                        let m = self.tensor_mor(&x.d(self, *i), &Mor::identity(self, &y.obj(self, j)))?;
                        blocks[a][b] = Some(m);
                    } else if *i2 == *i {
                        let sign = if i.rem_euclid(2) == 0 { q(1) } else { q(-1) };
                        let m = self.tensor_mor(&Mor::identity(self, &x.obj(self, *i)), &y.d(self, j))?;
                        blocks[a][b] = Some(m.scale(&sign));
                    }
                }
            }
            diffs.insert(n, self.from_blocks(&objs_of(&tgt), &objs_of(&src), &blocks)?);
        }
        Complex::new(self, objs, diffs)
    }

    /// `f ⊗ g` on total complexes, acting by `f^i ⊗ g^j` on each summand.
    pub fn tensor_chain_map(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap, CatError> {
        let src = self.tensor_complex(&f.source, &g.source)?;
        let tgt = self.tensor_complex(&f.target, &g.target)?;
        let mut comps = BTreeMap::new();
        for n in src.common_degrees(&tgt) {
            let sp = parts(self, &f.source, &g.source, n)?;
            let tp = parts(self, &f.target, &g.target, n)?;
            let mut blocks = vec![vec![None; sp.len()]; tp.len()];
            for (b, (i, _)) in sp.iter().enumerate() {
                if let Some(a) = tp.iter().position(|(i2, _)| i2 == i) {
                    blocks[a][b] = Some(self.tensor_mor(&f.at(self, *i), &g.at(self, n - i))?);
                }
            }
            comps.insert(n, self.from_blocks(&objs_of(&tp), &objs_of(&sp), &blocks)?);
        }
        ChainMap::new(self, &src, &tgt, comps)
    }

    /// `X ⊗ Y -> Y ⊗ X`, acting by `(-1)^{ij} c` on `X^i ⊗ Y^j`.
    pub fn complex_symmetry(&self, x: &Complex, y: &Complex) -> Result<ChainMap, CatError> {
        let src = self.tensor_complex(x, y)?;
        let tgt = self.tensor_complex(y, x)?;
        let mut comps = BTreeMap::new();
        for n in src.common_degrees(&tgt) {
            let sp = parts(self, x, y, n)?;
            let tp = parts(self, y, x, n)?;
            let mut blocks = vec![vec![None; sp.len()]; tp.len()];
            for (b, (i, _)) in sp.iter().enumerate() {
                let j = n - i;
                let a = tp.iter().position(|(i2, _)| *i2 == j).expect("swapped summand");
                let sign = if (i * j).rem_euclid(2) == 0 { q(1) } else { q(-1) };
                blocks[a][b] = Some(self.symmetry(&x.obj(self, *i), &y.obj(self, j))?.scale(&sign));
            }
            comps.insert(n, self.from_blocks(&objs_of(&tp), &objs_of(&sp), &blocks)?);
        }
        ChainMap::new(self, &src, &tgt, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::builtin::ell;

    fn alpha_fiber(c: &CategorySpec) -> Complex {
        let alpha = c.hom_space(&Obj::unit(c), &Obj::simple(c, 1)).pop().unwrap();
        Complex::two_term(c, &alpha, 0).unwrap()
    }

    #[test]
    fn unit_complex_is_neutral() {
        let c = ell();
        let x = alpha_fiber(&c);
        let u = Complex::pure(&c, &Obj::unit(&c), 0);
        assert_eq!(c.tensor_complex(&x, &u).unwrap(), x);
        assert_eq!(c.tensor_complex(&u, &x).unwrap(), x);
    }

    #[test]
    fn tensoring_with_a_shifted_unit_shifts() {
        let c = ell();
        let x = alpha_fiber(&c);
        let u = Complex::pure(&c, &Obj::unit(&c), -1);
        assert_eq!(c.tensor_complex(&u, &x).unwrap(), x.shift(1));
    }

    #[test]
    fn symmetry_is_a_chain_map_with_koszul_signs() {
        let c = ell();
        let x = alpha_fiber(&c);
        let s = c.complex_symmetry(&x, &x).unwrap();
        let back = c.complex_symmetry(&x, &x).unwrap();
        assert_eq!(back.after(&c, &s).unwrap(), ChainMap::identity(&c, &s.source));
    }

    #[test]
    fn pure_weights_add() {
        let c = ell();
        let h1 = Obj::simple(&c, 1);
        let a = Complex::pure(&c, &h1, -1);
        let b = Complex::pure(&c, &h1, -2);
        let t = c.tensor_complex(&a, &b).unwrap();
        assert_eq!(t.range(), Some((-3, -3)));
    }
}
