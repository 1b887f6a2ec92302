//! The complexes and endomorphisms used by the scenarios.

use std::collections::BTreeMap;

use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::homotopy::{ChainMap, Complex};
use crate::qlinalg::q;

/// The unique (up to scale) numerical morphism `m -> n` between two simples.
pub fn numerical_arrow(spec: &CategorySpec, m: usize, n: usize) -> Result<Mor, CatError> {
    let mut hom = spec.hom_space(&Obj::simple(spec, m), &Obj::simple(spec, n));
    match (hom.pop(), hom.is_empty()) {
        (Some(a), true) if a.has_nil_part() => Ok(a),
        _ => Err(CatError::Unsupported(format!(
            "need a one-dimensional numerical Hom({}, {})",
            spec.name(m),
            spec.name(n)
        ))),
    }
}

/// The first pair of simples `(m, n)` carrying a numerical arrow.
pub fn arrow_pair(spec: &CategorySpec) -> Result<(usize, usize), CatError> {
    spec.bimodule
        .iter()
        .find(|b| b.dim() == 1 && b.source != b.target)
        .map(|b| (b.source, b.target))
        .ok_or_else(|| CatError::Unsupported("no numerical arrow between distinct simples".into()))
}

/// `⊕ parts -> ⊕ parts'` from a matrix of scalar multiples of `a`.
fn arrow_matrix(
    spec: &CategorySpec,
    targets: &[Obj],
    sources: &[Obj],
    a: &Mor,
    ids: &[Mor],
    entries: &[&[i64]],
) -> Result<Mor, CatError> {
    let blocks: Vec<Vec<Option<Mor>>> = entries
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, &k)| {
                    if k == 0 {
                        return None;
                    }
                    let base = if targets[r] == sources[c] { ids[c].clone() } else { a.clone() };
                    Some(base.scale(&q(k)))
                })
                .collect()
        })
        .collect();
    spec.from_blocks(targets, sources, &blocks)
}

/// `M -> N` along the arrow, with `M` in degree 0.
pub fn arrow_complex(spec: &CategorySpec) -> Result<Complex, CatError> {
    let (m, n) = arrow_pair(spec)?;
    Complex::two_term(spec, &numerical_arrow(spec, m, n)?, 0)
}

fn degreewise(spec: &CategorySpec, x: &Complex, d0: Mor, d1: Mor) -> Result<ChainMap, CatError> {
    ChainMap::new(spec, x, x, BTreeMap::from([(0, d0), (1, d1)]))
}

/// `M² -> N²` by `[[a, a], [0, a]]`, with the endomorphism `[[0, 1], [0, 0]]`
/// in both degrees.
pub fn upper_triangular(spec: &CategorySpec) -> Result<(Complex, ChainMap), CatError> {
    let (m, n) = arrow_pair(spec)?;
    let a = numerical_arrow(spec, m, n)?;
    let (mo, no) = (Obj::simple(spec, m), Obj::simple(spec, n));
    let src = [mo.clone(), mo.clone()];
    let tgt = [no.clone(), no.clone()];
    let ids = [Mor::identity(spec, &mo), Mor::identity(spec, &mo)];
    let d = arrow_matrix(spec, &tgt, &src, &a, &ids, &[&[1, 1], &[0, 1]])?;
    let x = Complex::two_term(spec, &d, 0)?;
    let e0 = arrow_matrix(spec, &src, &src, &a, &ids, &[&[0, 1], &[0, 0]])?;
    let idn = [Mor::identity(spec, &no), Mor::identity(spec, &no)];
    let e1 = arrow_matrix(spec, &tgt, &tgt, &a, &idn, &[&[0, 1], &[0, 0]])?;
    let f = degreewise(spec, &x, e0, e1)?;
    Ok((x, f))
}

/// `M ⊕ N -> M ⊕ N` by `[[0, 0], [a, 0]]`, with the endomorphism
/// `diag(1, 0)`, `diag(0, 1)`.
pub fn lower_corner(spec: &CategorySpec) -> Result<(Complex, ChainMap), CatError> {
    let (m, n) = arrow_pair(spec)?;
    let a = numerical_arrow(spec, m, n)?;
    let (mo, no) = (Obj::simple(spec, m), Obj::simple(spec, n));
    let parts = [mo.clone(), no.clone()];
    let ids = [Mor::identity(spec, &mo), Mor::identity(spec, &no)];
    let d = arrow_matrix(spec, &parts, &parts, &a, &ids, &[&[0, 0], &[1, 0]])?;
    let x = Complex::two_term(spec, &d, 0)?;
    let e0 = arrow_matrix(spec, &parts, &parts, &a, &ids, &[&[1, 0], &[0, 0]])?;
    let e1 = arrow_matrix(spec, &parts, &parts, &a, &ids, &[&[0, 0], &[0, 1]])?;
    let f = degreewise(spec, &x, e0, e1)?;
    Ok((x, f))
}

pub fn unit_complex(spec: &CategorySpec) -> Complex {
    Complex::pure(spec, &Obj::unit(spec), 0)
}
