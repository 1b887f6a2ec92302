use std::collections::BTreeMap;

use crate::catcore::{BimoduleEntry, CategorySpec, DualEntry, FusionEntry, Parity, SimpleObject};
use crate::qlinalg::{q, Mat};

/// The model built from the unit and the first cohomology of an elliptic curve
/// without complex multiplication.
///
/// `h1` is odd of rank 2, `h1 ⊗ h1 = lef ⊕ sym2`, and the only numerical
/// morphism is `α : 𝟙 -> h1`. The symmetry of `h1 ⊗ h1` is `+1` on `lef` and
/// `-1` on `sym2`, so the symmetric square of `h1` is `lef`.
pub fn ell() -> CategorySpec {
    let simples = vec![
        SimpleObject::new("one", Parity::Even, 1),
        SimpleObject::new("h1", Parity::Odd, 2),
        SimpleObject::new("lef", Parity::Even, 1),
        SimpleObject::new("sym2", Parity::Even, 3),
    ];
    let mut fusion = BTreeMap::new();
    fusion.insert((1, 1), FusionEntry { summands: vec![2, 3], symmetry: Mat::from_i64(&[&[1, 0], &[0, -1]]) });
    let bimodule = vec![BimoduleEntry { source: 0, target: 1, basis_names: vec!["alpha".into()] }];
    let mut duals = BTreeMap::new();
    duals.insert(0, DualEntry { dual: 0, twist: 0, ev: vec![q(1)], coev: vec![q(1)] });
    // h1 is self-dual up to the Lefschetz twist
    duals.insert(1, DualEntry { dual: 1, twist: 2, ev: vec![q(1)], coev: vec![q(-2)] });
    let mut spec = CategorySpec { simples, unit: 0, fusion, bimodule, duals };
    spec.fill_unit_rows();
    spec
}

/// A unit and an even rank-one simple `n` with a numerical arrow `𝟙 -> n`.
///
/// Both ends have dimension 1, which is what the trace arguments for the
/// non-nilpotent numerical endomorphisms need. Only the unit rows of the
/// fusion table are known.
pub fn arrow() -> CategorySpec {
    let simples = vec![SimpleObject::new("one", Parity::Even, 1), SimpleObject::new("n", Parity::Even, 1)];
    let bimodule = vec![BimoduleEntry { source: 0, target: 1, basis_names: vec!["beta".into()] }];
    let mut duals = BTreeMap::new();
    duals.insert(0, DualEntry { dual: 0, twist: 0, ev: vec![q(1)], coev: vec![q(1)] });
    let mut spec = CategorySpec { simples, unit: 0, fusion: BTreeMap::new(), bimodule, duals };
    spec.fill_unit_rows();
    spec
}

/// Shipped models by name.
pub fn by_name(name: &str) -> Option<CategorySpec> {
    match name {
        "ell" => Some(ell()),
        "arrow" => Some(arrow()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{Mor, Obj};

    #[test]
    fn ell_validates() {
        let c = ell();
        let report = c.validate().unwrap();
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn arrow_validates() {
        assert!(arrow().validate().unwrap().all_pass());
    }

    #[test]
    fn trace_via_duals_on_h1() {
        let c = ell();
        let h1 = Obj::simple(&c, 1);
        assert_eq!(c.trace_via_duality(&Mor::identity(&c, &h1)).unwrap(), q(-2));
    }
}
