//! Finite verification of the weight-structure axioms on sample complexes.

use super::{degree_of_weight, ChainMap, Complex};
use crate::catcore::{CatError, CategorySpec, Obj};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomItem {
    pub item: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct WeightAxiomReport {
    pub items: Vec<AxiomItem>,
    /// `(sample index, cut, X_b)` found for item 11.
    pub extra_summands: Vec<(usize, i32, Obj)>,
}

impl WeightAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| !i.pass).count()
    }
}

struct Tally {
    item: u8,
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(item: u8, name: &'static str) -> Self {
        Tally { item, name, checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> AxiomItem {
        AxiomItem {
            item: self.item,
            name: self.name,
            pass: self.failures.is_empty(),
            checked: self.checked,
            detail: self.failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
        }
    }
}

fn contains(outer: Option<(i32, i32)>, inner: Option<(i32, i32)>) -> bool {
    match (outer, inner) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some((a, b)), Some((c, d))) => a <= c && d <= b,
    }
}

fn hull(x: Option<(i32, i32)>, y: Option<(i32, i32)>) -> Option<(i32, i32)> {
    match (x, y) {
        (None, w) | (w, None) => w,
        (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
    }
}

fn plus(x: Option<(i32, i32)>, y: Option<(i32, i32)>) -> Option<(i32, i32)> {
    Some((x?.0 + y?.0, x?.1 + y?.1))
}

impl CategorySpec {
    /// Checks items (1)-(11) of the weight structure on `samples`.
    pub fn check_weight_axioms(&self, samples: &[Complex]) -> Result<WeightAxiomReport, CatError> {
        let windows: Vec<Option<(i32, i32)>> =
            samples.iter().map(|x| self.weight_window(x)).collect::<Result<_, _>>()?;
        let mut items = Vec::new();

        let mut t = Tally::new(1, "window monotonicity");
        for (k, w) in windows.iter().enumerate() {
            let Some((a, b)) = *w else { continue };
            for (da, db) in [(0, 0), (1, 0), (0, 1), (2, 3)] {
                let ok = self.in_window(&samples[k], a - da, b + db)?;
                t.check(ok, || format!("sample {k} not in [{}, {}]", a - da, b + db));
            }
        }
        items.push(t.finish());

        let mut t = Tally::new(2, "window intersections");
        for (k, x) in samples.iter().enumerate() {
            let Some((a, b)) = windows[k] else { continue };
            for (p, q) in [((a - 1, b), (a, b + 1)), ((a, b - 1), (a - 1, b)), ((a + 1, b + 1), (a - 1, b))] {
                let both = self.in_window(x, p.0, p.1)? && self.in_window(x, q.0, q.1)?;
                let meet = self.in_window(x, p.0.max(q.0), p.1.min(q.1))?;
                t.check(both == meet, || format!("sample {k}: [{p:?}] ∩ [{q:?}]"));
            }
        }
        items.push(t.finish());

        let mut t = Tally::new(3, "shifts move windows");
        for (k, x) in samples.iter().enumerate() {
            for n in -2..=2 {
                let w = self.weight_window(&x.shift(n))?;
                t.check(w == windows[k].map(|(a, b)| (a + n, b + n)), || format!("sample {k} shifted by {n}"));
            }
        }
        items.push(t.finish());

        let mut t = Tally::new(4, "pure weight 0 is the base category");
        let pure: Vec<usize> = (0..samples.len()).filter(|&k| windows[k] == Some((0, 0))).collect();
        for &i in &pure {
            let mi = self.minimize(&samples[i])?.complex;
            t.check(mi.range() == Some((0, 0)), || format!("sample {i} is not concentrated in degree 0"));
            for &j in &pure {
                let mj = self.minimize(&samples[j])?.complex;
                let kb = self.kb_hom(&mi, &mj)?.dim();
                let base = self.hom_dim(&mi.obj(self, 0), &mj.obj(self, 0));
                t.check(kb == base, || format!("Hom({i}, {j}): {kb} vs {base}"));
            }
        }
        items.push(t.finish());

        let mut t = Tally::new(5, "tensor adds windows");
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                let Ok(p) = self.tensor_complex(&samples[i], &samples[j]) else { continue };
                let w = self.weight_window(&p)?;
                t.check(contains(plus(windows[i], windows[j]), w), || format!("{i} ⊗ {j}: {w:?}"));
            }
        }
        items.push(t.finish());

        let mut t = Tally::new(6, "every object has a window");
        for (k, x) in samples.iter().enumerate() {
            let m = self.minimize(x)?.complex;
            t.check(m.is_zero() == windows[k].is_none(), || format!("sample {k}"));
        }
        items.push(t.finish());

        // maps between samples used by items 7 and 10
        let mut maps: Vec<(usize, usize, ChainMap)> = Vec::new();
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                let h = self.kb_hom(&samples[i], &samples[j])?;
                maps.push((i, j, ChainMap::zero(&samples[i], &samples[j])));
                if let Some(f) = h.rep_maps(self).into_iter().next() {
                    maps.push((i, j, f));
                }
            }
        }

        let mut t = Tally::new(7, "extension closure");
        for (i, j, f) in &maps {
            let c = self.cone(f)?.complex;
            let wc = self.weight_window(&c)?;
            // B -> C(f) -> A[1]: C lies in any window holding B and A[1]
            let wa1 = windows[*i].map(|(a, b)| (a + 1, b + 1));
            t.check(contains(hull(windows[*j], wa1), wc), || format!("cone of a map {i} -> {j}: {wc:?}"));
        }
        items.push(t.finish());

        let mut t = Tally::new(8, "orthogonality");
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                let (Some((_, b)), Some((c, _))) = (windows[i], windows[j]) else { continue };
                if b < c {
                    let d = self.kb_hom(&samples[i], &samples[j])?.dim();
                    t.check(d == 0, || format!("Hom({i}, {j}) has dimension {d}"));
                }
            }
        }
        items.push(t.finish());

        let mut t9 = Tally::new(9, "truncation triangles with radical delta");
        let mut t10 = Tally::new(10, "maps extend to truncations");
        let mut t11 = Tally::new(11, "alternative truncations differ by a pure summand");
        let mut extra_summands = Vec::new();
        for (k, x) in samples.iter().enumerate() {
            let Some((a, c)) = windows[k] else { continue };
            for b in a..c {
                let dec = self.weight_truncate(x, b)?;
                let ok = self.in_window(&dec.low, a, b)?
                    && self.in_window(&dec.high, b + 1, c)?
                    && self.delta_is_radical(&dec)?
                    && self.cone(&dec.delta)?.complex == dec.minimal.complex;
                t9.check(ok, || format!("sample {k} cut at {b}"));

                for (i, j, f) in maps.iter().filter(|(i, j, _)| *i == k && *j == k) {
                    let ext = self.extend_to_truncation(f, &dec, &dec);
                    t10.check(ext.is_ok(), || format!("endomorphism of {i}={j} at {b}"));
                }

                // alternative: add a unit in degree -b mapping through low
                let cut = degree_of_weight(b);
                let q = Complex::pure(self, &Obj::unit(self), cut);
                let psi = self.kb_hom(&q, &dec.low)?.rep_maps(self).into_iter().next();
                let alt = dec.low.direct_sum(self, &q);
                let to_x = dec.minimal.backward.after(self, &dec.inclusion)?;
                let u = self.alt_map(&dec.low, &q, &alt, x, &to_x, psi.as_ref())?;
                match self.find_extra_summand(x, b, &alt, &u)? {
                    Some(found) => {
                        t11.check(found.x_b == Obj::unit(self), || format!("sample {k} at {b}: X_b = {:?}", found.x_b));
                        extra_summands.push((k, b, found.x_b));
                    }
                    None => t11.check(false, || format!("sample {k} at {b}: no X_b found")),
                }
            }
        }
        items.push(t9.finish());
        items.push(t10.finish());
        items.push(t11.finish());
        Ok(WeightAxiomReport { items, extra_summands })
    }

    /// `low ⊕ Q -> X` given by `(ι, ι ∘ ψ)`, with `ψ = 0` when absent.
    fn alt_map(
        &self,
        low: &Complex,
        q: &Complex,
        alt: &Complex,
        x: &Complex,
        to_x: &ChainMap,
        psi: Option<&ChainMap>,
    ) -> Result<ChainMap, CatError> {
        let mut comps = std::collections::BTreeMap::new();
        for i in alt.common_degrees(x) {
            let parts = [low.obj(self, i), q.obj(self, i)];
            let on_q = match psi {
                Some(p) => self.compose(&to_x.at(self, i), &p.at(self, i))?,
                None => crate::catcore::Mor::zero(self, &parts[1], &x.obj(self, i)),
            };
            let m = self.from_blocks(&[x.obj(self, i)], &parts, &[vec![Some(to_x.at(self, i)), Some(on_q)]])?;
            comps.insert(i, m);
        }
        ChainMap::new(self, alt, x, comps)
    }
}
