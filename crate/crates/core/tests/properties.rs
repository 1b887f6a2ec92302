use proptest::prelude::*;

use weightcat::bench::builtin::ell;
use weightcat::bench::fixtures::arrow_complex;
use weightcat::bench::samples::{random_chain_map, random_complex, rng};
use weightcat::catcore::{CategorySpec, Mor, Obj};
use weightcat::homotopy::{ChainMap, Complex};
use weightcat::numfun::GradedNumMor;
use weightcat::qlinalg::{q, Mat};

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Mat::new(rows, cols, v.into_iter().map(q).collect()).unwrap())
}

/// Objects over the unit and `h1`, whose tensor products are all covered.
fn small_obj() -> impl Strategy<Value = Obj> {
    (0usize..=2, 0usize..=2).prop_map(|(a, b)| Obj(vec![a, b, 0, 0]))
}

fn random_mor(spec: &CategorySpec, x: &Obj, y: &Obj, seed: u64) -> Mor {
    let basis = spec.hom_space(x, y);
    let mut r = rng(seed);
    let coeffs: Vec<_> = basis.iter().map(|_| q(rand::Rng::gen_range(&mut r, -2..=2))).collect();
    spec.combination(x, y, &coeffs, &basis)
}

fn complex(seed: u64) -> (CategorySpec, Complex) {
    let c = ell();
    let x = random_complex(&c, &mut rng(seed)).unwrap();
    (c, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_plus_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_mat(r, c))) {
        prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        for k in m.kernel() {
            prop_assert!((&m * &k).is_zero());
        }
    }

    #[test]
    fn inverse_is_two_sided(m in (1usize..5).prop_flat_map(|n| small_mat(n, n))) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(&m * &inv, Mat::identity(m.rows()));
            prop_assert_eq!(&inv * &m, Mat::identity(m.rows()));
        } else {
            prop_assert!(m.rank() < m.rows());
        }
    }

    #[test]
    fn composition_is_associative(x in small_obj(), y in small_obj(), z in small_obj(), w in small_obj(), s in any::<u64>()) {
        let c = ell();
        let f = random_mor(&c, &x, &y, s);
        let g = random_mor(&c, &y, &z, s ^ 1);
        let h = random_mor(&c, &z, &w, s ^ 2);
        let left = c.compose(&h, &c.compose(&g, &f).unwrap()).unwrap();
        let right = c.compose(&c.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn trace_is_cyclic(x in small_obj(), y in small_obj(), s in any::<u64>()) {
        let c = ell();
        let f = random_mor(&c, &x, &y, s);
        let g = random_mor(&c, &y, &x, s ^ 7);
        prop_assert_eq!(c.trace(&c.compose(&g, &f).unwrap()).unwrap(), c.trace(&c.compose(&f, &g).unwrap()).unwrap());
    }

    #[test]
    fn numerical_ideal_is_an_ideal(x in small_obj(), y in small_obj(), z in small_obj(), s in any::<u64>()) {
        let c = ell();
        let n = c.numerical_ideal(&x, &y);
        let g = random_mor(&c, &y, &z, s);
        let h = random_mor(&c, &z, &x, s ^ 3);
        for f in &n.basis {
            prop_assert!(c.numerical_ideal(&x, &z).contains(&c, &c.compose(&g, f).unwrap()));
            prop_assert!(c.numerical_ideal(&z, &y).contains(&c, &c.compose(f, &h).unwrap()));
        }
    }

    #[test]
    fn tensor_is_a_bifunctor(x in small_obj(), y in small_obj(), z in small_obj(), w in small_obj(), s in any::<u64>()) {
        let c = ell();
        let (f1, f2) = (random_mor(&c, &x, &y, s), random_mor(&c, &y, &x, s ^ 1));
        let (g1, g2) = (random_mor(&c, &z, &w, s ^ 2), random_mor(&c, &w, &z, s ^ 3));
        let lhs = c.compose(&c.tensor_mor(&f2, &g2).unwrap(), &c.tensor_mor(&f1, &g1).unwrap()).unwrap();
        let rhs = c.tensor_mor(&c.compose(&f2, &f1).unwrap(), &c.compose(&g2, &g1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetry_is_natural_and_involutive(x in small_obj(), y in small_obj(), z in small_obj(), s in any::<u64>()) {
        let c = ell();
        let f = random_mor(&c, &x, &z, s);
        let id_y = Mor::identity(&c, &y);
        let s_xy = c.symmetry(&x, &y).unwrap();
        let s_zy = c.symmetry(&z, &y).unwrap();
        let lhs = c.compose(&s_zy, &c.tensor_mor(&f, &id_y).unwrap()).unwrap();
        let rhs = c.compose(&c.tensor_mor(&id_y, &f).unwrap(), &s_xy).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = c.compose(&c.symmetry(&y, &x).unwrap(), &s_xy).unwrap();
        prop_assert_eq!(back, Mor::identity(&c, &s_xy.source));
    }

    #[test]
    fn minimization_is_a_homotopy_equivalence(s in any::<u64>()) {
        let (c, x) = complex(s);
        let m = c.minimize(&x).unwrap();
        prop_assert!(c.is_minimal(&m.complex));
        prop_assert_eq!(m.forward.after(&c, &m.backward).unwrap(), ChainMap::identity(&c, &m.complex));
        let gf = m.backward.after(&c, &m.forward).unwrap();
        prop_assert!(m.homotopy.witnesses(&c, &ChainMap::identity(&c, &x), &gf).unwrap());
    }

    #[test]
    fn shifts_round_trip(s in any::<u64>(), n in -3i32..=3) {
        let (_, x) = complex(s);
        prop_assert_eq!(x.shift(n).shift(-n), x);
    }

    #[test]
    fn cone_of_an_identity_is_contractible(s in any::<u64>()) {
        let (c, x) = complex(s);
        let cone = c.cone(&ChainMap::identity(&c, &x)).unwrap();
        prop_assert!(c.minimize(&cone.complex).unwrap().complex.is_zero());
    }

    #[test]
    fn trace_is_a_homotopy_invariant(s in any::<u64>()) {
        let (c, x) = complex(s);
        let f = random_chain_map(&c, &mut rng(s ^ 5), &x, &x).unwrap();
        let m = c.minimize(&x).unwrap();
        let conj = m.forward.after(&c, &f.after(&c, &m.backward).unwrap()).unwrap();
        prop_assert_eq!(c.kb_trace(&conj).unwrap(), c.kb_trace(&f).unwrap());
        let hom = c.kb_hom(&x, &x).unwrap();
        if let Some(cls) = hom.class_coords(&c, &f) {
            let rep = hom.from_class_coords(&c, &cls);
            prop_assert_eq!(c.kb_trace(&rep).unwrap(), c.kb_trace(&f).unwrap());
        }
    }

    #[test]
    fn pi_is_a_functor(s in any::<u64>()) {
        let c = ell();
        let mut r = rng(s);
        let x = random_complex(&c, &mut r).unwrap();
        let y = random_complex(&c, &mut r).unwrap();
        let z = random_complex(&c, &mut r).unwrap();
        let f = random_chain_map(&c, &mut r, &x, &y).unwrap();
        let g = random_chain_map(&c, &mut r, &y, &z).unwrap();
        let gf = c.pi_mor(&g.after(&c, &f).unwrap()).unwrap();
        prop_assert_eq!(gf, c.pi_mor(&g).unwrap().after(&c, &c.pi_mor(&f).unwrap()).unwrap());
        let px = c.pi_obj(&x).unwrap();
        prop_assert_eq!(c.pi_mor(&ChainMap::identity(&c, &x)).unwrap(), GradedNumMor::identity(&c, &px));
    }

    #[test]
    fn kernel_of_pi_lies_in_the_numerical_ideal(s in any::<u64>()) {
        let c = ell();
        let mut r = rng(s);
        let x = random_complex(&c, &mut r).unwrap();
        let y = random_complex(&c, &mut r).unwrap();
        let n = c.kb_numerical_ideal(&x, &y).unwrap();
        for f in n.hom.rep_maps(&c) {
            if c.pi_mor(&f).unwrap().is_zero() {
                prop_assert!(n.contains(&c, &f).unwrap());
            }
        }
    }

    #[test]
    fn pi_agrees_with_the_truncation_path(s in any::<u64>(), b in -2i32..=2) {
        let c = ell();
        let mut r = rng(s);
        let x = random_complex(&c, &mut r).unwrap();
        let y = random_complex(&c, &mut r).unwrap();
        let f = random_chain_map(&c, &mut r, &x, &y).unwrap();
        prop_assert_eq!(c.pi_mor_by_truncation(&f, b).unwrap(), c.pi_mor(&f).unwrap());
    }

    #[test]
    fn triangles_give_exact_sequences(s in any::<u64>()) {
        let c = ell();
        let mut r = rng(s);
        let x = random_complex(&c, &mut r).unwrap();
        let y = random_complex(&c, &mut r).unwrap();
        let f = random_chain_map(&c, &mut r, &x, &y).unwrap();
        let les = c.verify_les(&f).unwrap();
        prop_assert!(les.exact(), "{:?}", les.failures());
    }

    #[test]
    fn pi_invertible_means_invertible(s in any::<u64>()) {
        let c = ell();
        let mut r = rng(s);
        let x = random_complex(&c, &mut r).unwrap();
        let f = random_chain_map(&c, &mut r, &x, &x).unwrap();
        let report = c.conservativity_check(&f).unwrap();
        prop_assert!(!report.pi_invertible || report.invertible);
        prop_assert!(!report.invertible || report.p_invertible);
    }

    #[test]
    fn weight_windows_shift(s in any::<u64>(), n in -2i32..=2) {
        let (c, x) = complex(s);
        let w = c.weight_window(&x).unwrap();
        prop_assert_eq!(c.weight_window(&x.shift(n)).unwrap(), w.map(|(a, b)| (a + n, b + n)));
    }

    #[test]
    fn truncation_deltas_are_radical(s in any::<u64>(), b in -2i32..=2) {
        let (c, x) = complex(s);
        let d = c.weight_truncate(&x, b).unwrap();
        prop_assert!(c.delta_is_radical(&d).unwrap());
        prop_assert_eq!(c.cone(&d.delta).unwrap().complex, d.minimal.complex);
    }
}

#[test]
fn tensoring_the_arrow_complex_with_itself() {
    let c = ell();
    let x = arrow_complex(&c).unwrap();
    let id = ChainMap::identity(&c, &x);
    assert!(c.pi_tensor_check(&id, &id).unwrap().pass());
}
