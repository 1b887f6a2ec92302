//! Sample objects, complexes and maps, deterministic in a seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::fixtures::{arrow_complex, arrow_pair, lower_corner, upper_triangular};
use super::BenchError;
use crate::catcore::{CatError, CategorySpec, Mor, Obj};
use crate::homotopy::{ChainMap, Complex};
use crate::qlinalg::{q, Mat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub(crate) fn unsupported(e: CatError) -> BenchError {
    match e {
        CatError::Unsupported(m) => BenchError::UnsupportedModel(m),
        other => BenchError::Cat(other),
    }
}

/// Every multiplicity vector with entries `<= max`.
pub fn object_lattice(spec: &CategorySpec, max: usize) -> Vec<Obj> {
    let mut out = vec![Vec::new()];
    for _ in 0..spec.n_simples() {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..=max).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(Obj).collect()
}

/// The lattice with entries `<= 2` when it is small, else a seeded sample of
/// the same size.
pub fn object_sample(spec: &CategorySpec, r: &mut ChaCha8Rng) -> Vec<Obj> {
    if spec.n_simples() <= 4 {
        return object_lattice(spec, 2);
    }
    (0..81).map(|_| Obj((0..spec.n_simples()).map(|_| r.gen_range(0..=2)).collect())).collect()
}

/// The named complexes used by the weight and functor checks: the unit, the
/// two ends of the numerical arrow, the arrow complex, the two matrix
/// complexes, and a few shifts.
pub fn named_complexes(spec: &CategorySpec) -> Result<Vec<(String, Complex)>, BenchError> {
    let (m, n) = arrow_pair(spec).map_err(unsupported)?;
    let mut out = vec![
        (spec.name(m).to_string(), Complex::pure(spec, &Obj::simple(spec, m), 0)),
        (spec.name(n).to_string(), Complex::pure(spec, &Obj::simple(spec, n), 0)),
    ];
    if m != spec.unit {
        out.insert(0, (spec.name(spec.unit).to_string(), Complex::pure(spec, &Obj::unit(spec), 0)));
    }
    let arrow = arrow_complex(spec).map_err(unsupported)?;
    out.push(("arrow".into(), arrow.clone()));
    out.push(("upper".into(), upper_triangular(spec).map_err(unsupported)?.0));
    out.push(("lower".into(), lower_corner(spec).map_err(unsupported)?.0));
    out.push((format!("{}[1]", spec.name(m)), Complex::pure(spec, &Obj::simple(spec, m), -1)));
    out.push((format!("{}[-1]", spec.name(n)), Complex::pure(spec, &Obj::simple(spec, n), 1)));
    out.push(("arrow[1]".into(), arrow.shift(1)));
    Ok(out)
}

fn random_obj(spec: &CategorySpec, r: &mut ChaCha8Rng) -> Obj {
    // at most two simples per degree keeps hom-spaces small
    let mut v = vec![0; spec.n_simples()];
    for _ in 0..2 {
        let s = r.gen_range(0..spec.n_simples());
        v[s] = r.gen_range(0..=2);
    }
    Obj(v)
}

/// Up to three degrees with numerical differentials (their composites vanish
/// in a square-zero model), sometimes plus a contractible summand.
pub fn random_complex(spec: &CategorySpec, r: &mut ChaCha8Rng) -> Result<Complex, CatError> {
    let start = r.gen_range(-1..=1);
    let len = r.gen_range(1..=3);
    let mut objs = std::collections::BTreeMap::new();
    for i in start..start + len {
        objs.insert(i, random_obj(spec, r));
    }
    let mut diffs = std::collections::BTreeMap::new();
    for i in start..start + len - 1 {
        let mut d = Mor::zero(spec, &objs[&i], &objs[&(i + 1)]);
        for stack in d.nil.iter_mut() {
            for block in stack.iter_mut() {
                for rr in 0..block.rows() {
                    for c in 0..block.cols() {
                        block[(rr, c)] = q(r.gen_range(-1..=2));
                    }
                }
            }
        }
        diffs.insert(i, d);
    }
    let x = Complex::new(spec, objs, diffs)?;
    if r.gen_bool(0.5) {
        let s = Obj::simple(spec, r.gen_range(0..spec.n_simples()));
        let deg = r.gen_range(-1..=1);
        return Ok(x.direct_sum(spec, &Complex::two_term(spec, &Mor::identity(spec, &s), deg)?));
    }
    Ok(x)
}

/// A random chain map `x -> y`: a random class plus a random null-homotopic
/// map.
pub fn random_chain_map(
    spec: &CategorySpec,
    r: &mut ChaCha8Rng,
    x: &Complex,
    y: &Complex,
) -> Result<ChainMap, CatError> {
    let hom = spec.kb_hom(x, y)?;
    let mut v = Mat::zeros(hom.maps.dim(), 1);
    for z in hom.reps.iter().chain(&hom.boundaries) {
        v = &v + &z.scale(&q(r.gen_range(-2..=2)));
    }
    ChainMap::new(spec, x, y, hom.chain_map(spec, &v).components().clone())
}

/// A random invertible integer matrix: a product of unitriangular factors.
pub fn random_invertible(n: usize, r: &mut ChaCha8Rng) -> Mat {
    let mut lo = Mat::identity(n);
    let mut up = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            lo[(i, j)] = q(r.gen_range(-2..=2));
            up[(j, i)] = q(r.gen_range(-2..=2));
        }
    }
    &lo * &up
}

/// An idempotent modulo the numerical ideal with a random numerical part.
pub fn random_idempotent_mod_n(spec: &CategorySpec, x: &Obj, r: &mut ChaCha8Rng) -> Mor {
    let mut e = Mor::zero(spec, x, x);
    for s in 0..spec.n_simples() {
        let m = x.mult(s);
        if m == 0 {
            continue;
        }
        let mut d = Mat::zeros(m, m);
        for i in 0..r.gen_range(0..=m) {
            d[(i, i)] = q(1);
        }
        let p = random_invertible(m, r);
        let p_inv = p.inverse().expect("unitriangular factors");
        e.ss[s] = &(&p * &d) * &p_inv;
    }
    for stack in e.nil.iter_mut() {
        for block in stack.iter_mut() {
            for rr in 0..block.rows() {
                for c in 0..block.cols() {
                    block[(rr, c)] = q(r.gen_range(-2..=2));
                }
            }
        }
    }
    e
}
