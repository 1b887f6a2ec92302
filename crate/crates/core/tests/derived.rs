//! Frozen values, each recomputed here by an independent route.

use weightcat::bench::builtin::ell;
use weightcat::bench::fixtures::{arrow_complex, numerical_arrow, unit_complex};
use weightcat::bench::samples::{random_complex, rng};
use weightcat::catcore::{CategorySpec, Mor, Obj, PowerKind};
use weightcat::homotopy::{ChainMap, Complex};
use weightcat::qlinalg::{q, Mat, Scalar};

// superdimensions of one, h1, lef, sym2
const SUPERDIM: [i64; 4] = [1, -2, 1, 3];

fn euler(x: &Complex) -> i64 {
    x.components()
        .iter()
        .map(|(i, o)| {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            sign * o.0.iter().zip(SUPERDIM).map(|(&m, d)| m as i64 * d).sum::<i64>()
        })
        .sum()
}

fn alpha(c: &CategorySpec) -> Mor {
    numerical_arrow(c, 0, 1).unwrap()
}

#[test]
fn trace_of_the_alpha_complex_is_three() {
    let c = ell();
    let x = arrow_complex(&c).unwrap();
    assert_eq!(euler(&x), 3);
    assert_eq!(c.kb_trace(&ChainMap::identity(&c, &x)).unwrap(), q(3));
}

#[test]
fn identity_traces_are_euler_characteristics() {
    let c = ell();
    let mut r = rng(41);
    for _ in 0..12 {
        let x = random_complex(&c, &mut r).unwrap();
        assert_eq!(c.kb_trace(&ChainMap::identity(&c, &x)).unwrap(), q(euler(&x)));
    }
}

#[test]
fn hom_between_pure_complexes() {
    // additive Hom: one scalar per matching simple copy, one per alpha slot
    let c = ell();
    let objs = [Obj(vec![1, 0, 0, 0]), Obj(vec![0, 1, 0, 0]), Obj(vec![2, 1, 0, 1]), Obj(vec![1, 2, 1, 0])];
    for x in &objs {
        for y in &objs {
            let additive: usize = x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum::<usize>() + x.0[0] * y.0[1];
            for (i, j) in [(0, 0), (0, 1), (2, -1)] {
                let h = c.kb_hom(&Complex::pure(&c, x, i), &Complex::pure(&c, y, j)).unwrap();
                assert_eq!(h.dim(), if i == j { additive } else { 0 }, "{x:?} -> {y:?} at {i}, {j}");
            }
        }
    }
}

#[test]
fn numerical_ideal_of_one_plus_h1_by_brute_force() {
    let c = ell();
    let x = Obj(vec![1, 1, 0, 0]);
    let basis = c.hom_space(&x, &x);
    assert_eq!(basis.len(), 3);
    let pairing: Vec<Scalar> = basis
        .iter()
        .flat_map(|f| basis.iter().map(|g| c.trace(&c.compose(g, f).unwrap()).unwrap()).collect::<Vec<_>>())
        .collect();
    let m = Mat::new(3, 3, pairing).unwrap();
    assert_eq!(m.kernel().len(), 1);
    assert_eq!(c.numerical_ideal(&x, &x).dim(), 1);
    let parts = [Obj(vec![1, 0, 0, 0]), Obj(vec![0, 1, 0, 0])];
    let a = c.compose_all(&[&c.inclusion(&parts, 1), &alpha(&c), &c.projection(&parts, 0)]).unwrap();
    assert!(c.numerical_ideal(&x, &x).contains(&c, &a));
}

#[test]
fn the_unit_maps_nowhere_into_the_alpha_complex() {
    let c = ell();
    let h = c.kb_hom(&unit_complex(&c), &arrow_complex(&c).unwrap()).unwrap();
    assert_eq!(h.dim(), 0);
}

#[test]
fn fullness_on_the_alpha_complex() {
    // End_K: scalars on the two ends agreeing up to the alpha square, modulo
    // nothing; its image under π is the diagonal, the target has two copies
    let c = ell();
    let x = arrow_complex(&c).unwrap();
    let gap = c.fullness_gap(&x, &x).unwrap();
    assert_eq!((gap.image_dim, gap.target_dim), (1, 2));
    let u = unit_complex(&c);
    let gap = c.fullness_gap(&u, &x).unwrap();
    assert_eq!((gap.image_dim, gap.target_dim), (0, 1));
}

#[test]
fn minimizing_a_split_unit() {
    let c = ell();
    let one = Obj(vec![1, 0, 0, 0]);
    let h1 = Obj(vec![0, 1, 0, 0]);
    let d = c
        .from_blocks(
            &[one.clone(), h1.clone()],
            &[one.clone(), one.clone()],
            &[vec![Some(Mor::identity(&c, &one)), None], vec![None, Some(alpha(&c))]],
        )
        .unwrap();
    let x = Complex::two_term(&c, &d, 0).unwrap();
    let m = c.minimize(&x).unwrap();
    assert_eq!(m.complex, arrow_complex(&c).unwrap());
    for y in [unit_complex(&c), arrow_complex(&c).unwrap(), Complex::pure(&c, &h1, 1)] {
        assert_eq!(c.kb_hom(&x, &y).unwrap().dim(), c.kb_hom(&m.complex, &y).unwrap().dim());
        assert_eq!(c.kb_hom(&y, &x).unwrap().dim(), c.kb_hom(&y, &m.complex).unwrap().dim());
    }
}

#[test]
fn tensoring_with_a_shifted_unit_shifts() {
    let c = ell();
    let x = arrow_complex(&c).unwrap();
    let u = Complex::pure(&c, &Obj(vec![1, 0, 0, 0]), -1);
    // the unit in degree -1 is 𝟙[1]; on the left it carries the shift sign
    assert_eq!(c.tensor_complex(&u, &x).unwrap(), x.shift(1));
    let right = c.tensor_complex(&x, &u).unwrap();
    assert_eq!(right.components(), x.shift(1).components());
    assert_eq!(right.d(&c, -1), x.shift(1).d(&c, -1).neg());
    assert!(!right.d(&c, -1).is_zero());
}

/// `(1/n!) Σ χ(σ) σ` acting on `(ℚ^d)^{⊗n}` by permuting tensor factors.
fn classical_projector(d: usize, n: usize, sign: bool) -> Mat {
    let size = d.pow(n as u32);
    let mut m = Mat::zeros(size, size);
    let perms = permutations(n);
    let scale = q(1) / q(perms.len() as i64);
    for p in &perms {
        let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let chi = if sign && inv % 2 == 1 { q(-1) } else { q(1) };
        for idx in 0..size {
            let digits: Vec<usize> = (0..n).map(|k| idx / d.pow(k as u32) % d).collect();
            let mut moved = vec![0; n];
            for k in 0..n {
                moved[p[k]] = digits[k];
            }
            let out: usize = moved.iter().enumerate().map(|(k, v)| v * d.pow(k as u32)).sum();
            m[(out, idx)] += &chi * &scale;
        }
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn kimura_ranks_match_classical_projectors() {
    // h1 is odd of rank 2, so Sym^n h1 behaves like the classical ∧^n ℚ² and back
    let c = ell();
    let h1 = Obj(vec![0, 1, 0, 0]);
    assert_eq!(classical_projector(2, 3, true).rank(), 0);
    assert_eq!(c.sym_power_rank(&h1, 3), q(0));
    assert_eq!(classical_projector(2, 2, false).rank(), 3);
    assert_eq!(c.wedge_power_rank(&h1, 2), q(3));
    assert_eq!(classical_projector(2, 2, true).rank(), 1);
    let sym = c.sym_projector(&h1, 2, PowerKind::Sym).unwrap();
    let wedge = c.sym_projector(&h1, 2, PowerKind::Wedge).unwrap();
    assert_eq!(c.trace(&sym).unwrap(), q(1));
    assert_eq!(c.trace(&wedge).unwrap(), q(3));
}

#[test]
fn pi_tensor_on_the_alpha_complex_squared() {
    let c = ell();
    let x = arrow_complex(&c).unwrap();
    let id = ChainMap::identity(&c, &x);
    let t = c.pi_tensor_check(&id, &id).unwrap();
    assert!(t.pass(), "{t:?}");
    // π(X ⊗ X) has the Euler characteristic of the square
    let px = c.pi_obj(&c.tensor_complex(&x, &x).unwrap()).unwrap();
    assert_eq!(euler(&px.as_complex(&c)), 9);
}
