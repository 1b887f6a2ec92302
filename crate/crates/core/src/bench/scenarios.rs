//! Named verification scenarios over a model.

use rand::Rng;

use super::fixtures::{arrow_complex, lower_corner, unit_complex, upper_triangular};
use super::report::{ScenarioReport, SuiteReport};
use super::samples::{
    named_complexes, object_sample, random_chain_map, random_complex, random_idempotent_mod_n, rng, unsupported,
};
use super::BenchError;
use crate::catcore::{CatError, CategorySpec};
use crate::homotopy::{ChainMap, Complex};
use crate::numfun::{GradedNumMor, DEFAULT_BOUND};
use crate::qlinalg::q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Depth of power and nilpotency searches.
    pub bound: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, bound: DEFAULT_BOUND }
    }
}

type Runner = fn(&CategorySpec, &RunConfig) -> Result<ScenarioReport, BenchError>;

/// Scenario names, sorted.
pub const SCENARIOS: [&str; 9] =
    ["cor-3.3", "prop-3.5", "prop-5.5", "prop-6.1", "prop-6.2", "prop-6.4", "prop-6.6", "thm-3.2", "thm-4.1"];

fn runner(name: &str) -> Option<Runner> {
    Some(match name {
        "prop-3.5" => radical_is_numerical,
        "thm-3.2" => numerical_ideal_nilpotent,
        "cor-3.3" => idempotents_lift,
        "thm-4.1" => weight_axioms,
        "prop-5.5" => long_exact_sequences,
        "prop-6.1" => pi_not_full,
        "prop-6.2" => no_triangulated_quotient,
        "prop-6.4" => pi_conservative,
        "prop-6.6" => p_not_conservative,
        _ => return None,
    })
}

pub fn run_scenario(name: &str, spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let run = runner(name).ok_or_else(|| BenchError::UnknownScenario(name.into()))?;
    run(spec, cfg)
}

/// Runs `names` in parallel and assembles the report in name order. Scenarios
/// that cannot run on this model are reported as failed.
pub fn run_named(model: &str, spec: &CategorySpec, cfg: &RunConfig, names: &[&str]) -> Result<SuiteReport, BenchError> {
    let runners: Vec<(&str, Runner)> = names
        .iter()
        .map(|n| runner(n).map(|r| (*n, r)).ok_or_else(|| BenchError::UnknownScenario(n.to_string())))
        .collect::<Result<_, _>>()?;
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = runners.iter().map(|(n, r)| (*n, s.spawn(move || r(spec, cfg)))).collect();
        handles
            .into_iter()
            .map(|(n, h)| match h.join().expect("scenario thread") {
                Ok(r) => r,
                Err(e) => ScenarioReport::failed(n, e.to_string()),
            })
            .collect()
    });
    Ok(SuiteReport::new(model, cfg.seed, cfg.bound, reports))
}

pub fn run_all(model: &str, spec: &CategorySpec, cfg: &RunConfig) -> SuiteReport {
    run_named(model, spec, cfg, &SCENARIOS).expect("known scenarios")
}

fn radical_is_numerical(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-3.5");
    let objs = object_sample(spec, &mut rng(cfg.seed));
    let (mut pairs, mut bad, mut max_dim) = (0usize, Vec::new(), 0usize);
    for x in &objs {
        for y in &objs {
            pairs += 1;
            let n = spec.numerical_ideal(x, y);
            max_dim = max_dim.max(n.dim());
            match spec.radical(x, y) {
                Ok(r) if r.same_span(spec, &n) => {}
                Ok(r) => bad.push(format!("({}, {}): radical {} vs numerical {}", x.describe(spec), y.describe(spec), r.dim(), n.dim())),
                Err(e) => bad.push(format!("({}, {}): {e}", x.describe(spec), y.describe(spec))),
            }
        }
    }
    rep.check("radical equals numerical ideal", bad.is_empty(), first_few(&bad, format!("{pairs} pairs")));
    rep.value("pairs", pairs);
    rep.value("max numerical dim", max_dim);
    Ok(rep)
}

fn first_few(bad: &[String], ok: String) -> String {
    if bad.is_empty() {
        ok
    } else {
        format!("{} failures: {}", bad.len(), bad.iter().take(3).cloned().collect::<Vec<_>>().join("; "))
    }
}

fn numerical_ideal_nilpotent(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("thm-3.2");
    let objs = object_sample(spec, &mut rng(cfg.seed));
    let (mut bad, mut with_nil) = (Vec::new(), 0usize);
    for x in &objs {
        let n = spec.numerical_ideal(x, x);
        let expected = if n.dim() > 0 { 2 } else { 1 };
        with_nil += usize::from(n.dim() > 0);
        let got = spec.nilpotency_index(x, &n, cfg.bound);
        if got != Some(expected) {
            bad.push(format!("{}: index {got:?}, expected {expected}", x.describe(spec)));
        }
    }
    rep.check("numerical ideal squares to zero", bad.is_empty(), first_few(&bad, format!("{} objects", objs.len())));
    rep.value("objects", objs.len());
    rep.value("objects with nonzero ideal", with_nil);
    Ok(rep)
}

fn idempotents_lift(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("cor-3.3");
    let mut r = rng(cfg.seed);
    let objs: Vec<_> = object_sample(spec, &mut r).into_iter().filter(|x| !x.is_zero()).collect();
    let mut bad = Vec::new();
    for k in 0..20 {
        let x = &objs[r.gen_range(0..objs.len())];
        let e = random_idempotent_mod_n(spec, x, &mut r);
        match spec.lift_idempotent(&e) {
            Ok(l) => {
                let idem = spec.compose(&l, &l)? == l;
                let same_class = spec.numerical_ideal(x, x).contains(spec, &l.sub(&e)?);
                if !(idem && same_class) {
                    bad.push(format!("#{k} on {}: idempotent {idem}, same class {same_class}", x.describe(spec)));
                }
            }
            Err(e) => bad.push(format!("#{k} on {}: {e}", x.describe(spec))),
        }
    }
    rep.check("idempotents lift exactly", bad.is_empty(), first_few(&bad, "20 seeded idempotents".into()));
    Ok(rep)
}

fn samples_with_random(spec: &CategorySpec, cfg: &RunConfig, extra: usize) -> Result<Vec<(String, Complex)>, BenchError> {
    let mut out = named_complexes(spec)?;
    let mut r = rng(cfg.seed);
    for k in 0..extra {
        out.push((format!("random{k}"), random_complex(spec, &mut r)?));
    }
    Ok(out)
}

fn weight_axioms(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("thm-4.1");
    let samples = samples_with_random(spec, cfg, 2)?;
    let cxs: Vec<Complex> = samples.iter().map(|(_, x)| x.clone()).collect();
    let report = spec.check_weight_axioms(&cxs)?;
    for item in &report.items {
        let details = if item.pass { format!("{} checks", item.checked) } else { item.detail.clone() };
        rep.check(&format!("({}) {}", item.item, item.name), item.pass, details);
    }
    rep.value("samples", samples.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", "));
    rep.value("extra summands found", report.extra_summands.len());
    Ok(rep)
}

fn long_exact_sequences(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-5.5");
    let samples = samples_with_random(spec, cfg, 2)?;
    let mut r = rng(cfg.seed.wrapping_add(1));
    let mut bad = Vec::new();
    let mut spots = 0;
    for k in 0..25 {
        let i = r.gen_range(0..samples.len());
        let j = r.gen_range(0..samples.len());
        let f = random_chain_map(spec, &mut r, &samples[i].1, &samples[j].1)?;
        let les = spec.verify_les(&f)?;
        spots += les.spots.len();
        if !les.exact() {
            bad.push(format!("#{k} {} -> {}: {:?}", samples[i].0, samples[j].0, les.failures().first()));
        }
    }
    rep.check("long exact sequences are exact", bad.is_empty(), first_few(&bad, "25 seeded triangles".into()));
    rep.value("positions checked", spots);
    Ok(rep)
}

fn pi_not_full(spec: &CategorySpec, _cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-6.1");
    let u = unit_complex(spec);
    let x = arrow_complex(spec).map_err(unsupported)?;
    let gap = spec.fullness_gap(&u, &x)?;
    rep.check("image of Hom(unit, arrow) is 0", gap.image_dim == 0, format!("image {}", gap.image_dim));
    rep.check("target Hom(π unit, π arrow) is 1", gap.target_dim == 1, format!("target {}", gap.target_dim));
    let witness = gap.witness.as_ref().map(|w| describe_graded(spec, w));
    rep.check("witness outside the image", witness.is_some(), witness.clone().unwrap_or_else(|| "none".into()));
    let unit_gap = spec.fullness_gap(&u, &u)?;
    rep.check("full on the unit", unit_gap.is_full(), format!("{} of {}", unit_gap.image_dim, unit_gap.target_dim));
    let self_gap = spec.fullness_gap(&x, &x)?;
    rep.value("End(arrow) image/target", format!("{}/{}", self_gap.image_dim, self_gap.target_dim));
    rep.value("Hom(unit, arrow) image/target", format!("{}/{}", gap.image_dim, gap.target_dim));
    Ok(rep)
}

fn describe_graded(spec: &CategorySpec, w: &GradedNumMor) -> String {
    w.components()
        .iter()
        .map(|(i, m)| format!("degree {i}: {} -> {}", m.source.describe(spec), m.target.describe(spec)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn no_triangulated_quotient(spec: &CategorySpec, _cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-6.2");
    let (x, f) = upper_triangular(spec).map_err(unsupported)?;
    let n = spec.kb_numerical_ideal(&x, &x)?;
    let in_n = n.contains(spec, &f)?;
    let pairings: Vec<String> = n
        .hom
        .rep_maps(spec)
        .iter()
        .map(|g| Ok(spec.kb_trace(&g.after(spec, &f)?)?.to_string()))
        .collect::<Result<_, CatError>>()?;
    rep.check("f is numerical", in_n, format!("tr(g f) over a basis of End: [{}]", pairings.join(", ")));
    let pi_f = spec.pi_mor(&f)?;
    rep.check("π(f) is nonzero", !pi_f.is_zero(), describe_graded(spec, &pi_f));
    rep.check("ker π is strictly inside 𝒩 (witness f)", in_n && !pi_f.is_zero(), "");
    match spec.triangulated_obstruction(&x, &f) {
        Ok(o) => {
            rep.check("extensions across the truncation exist", o.extensions_exist, format!("affine dim {}", o.extension_dim));
            rep.check("no extension has a numerical low part", !o.low_meets_n, "");
            rep.check("no extension has a numerical high part", !o.high_meets_n, "");
        }
        Err(CatError::NotNumerical) => {
            rep.check("extensions avoid 𝒩", false, "skipped: f is not numerical");
        }
        Err(e) => return Err(e.into()),
    }
    rep.value("dim End(X)", n.dim());
    rep.value("dim 𝒩(X, X)", n.numerical_dim());
    Ok(rep)
}

fn pi_conservative(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-6.4");
    let samples = samples_with_random(spec, cfg, 2)?;
    let mut bad = Vec::new();
    for (name, x) in &samples {
        let r = spec.ker_pi_nilpotency(x, cfg.bound)?;
        rep.value(&format!("N[{name}]"), format!("{} (actual {})", r.bound, r.actual.map_or("-".into(), |a| a.to_string())));
        if !r.verified() {
            bad.push(format!("{name}: bound {} actual {:?}", r.bound, r.actual));
        }
    }
    rep.check("ker π nilpotent within the bound", bad.is_empty(), first_few(&bad, format!("{} complexes", samples.len())));

    let mut r = rng(cfg.seed.wrapping_add(2));
    let (mut found, mut bad, mut tries) = (0, Vec::new(), 0);
    while found < 10 && tries < 200 {
        tries += 1;
        let (name, x) = &samples[r.gen_range(0..samples.len())];
        // a random unit multiple of the identity plus a random class
        let lambda = q([1, -1, 2][r.gen_range(0..3)]);
        let f = ChainMap::identity(spec, x).scale(&lambda).add(spec, &random_chain_map(spec, &mut r, x, x)?)?;
        let c = spec.conservativity_check(&f)?;
        if !c.pi_invertible {
            continue;
        }
        found += 1;
        let ok = match &c.inverse {
            Some(g) => {
                let h = spec.kb_hom(x, x)?;
                h.homotopic(spec, &g.after(spec, &f)?, &ChainMap::identity(spec, x))?
            }
            None => false,
        };
        if !ok {
            bad.push(format!("{name}: no inverse"));
        }
    }
    rep.check("π(f) invertible implies f invertible", bad.is_empty() && found == 10, first_few(&bad, format!("{found} seeded endomorphisms")));
    Ok(rep)
}

fn p_not_conservative(spec: &CategorySpec, cfg: &RunConfig) -> Result<ScenarioReport, BenchError> {
    let mut rep = ScenarioReport::new("prop-6.6");
    let (x, f) = lower_corner(spec).map_err(unsupported)?;
    let idem = spec.idempotent_endo_check(&f, cfg.bound)?;
    rep.check(&format!("f^n = f for n <= {}", cfg.bound), idem.powers_agree, "");
    rep.check("f is not null-homotopic", idem.nonzero, "");
    rep.check("f is numerical", idem.numerical, format!("tr(f) = {}", spec.kb_trace(&f)?));
    let h = f.sub(spec, &ChainMap::identity(spec, &x))?;
    let c = spec.conservativity_check(&h)?;
    rep.check("h = f - id is not invertible", !c.invertible, "");
    rep.check("π(h) is not invertible", !c.pi_invertible, "");
    rep.check("p(h) is invertible", c.p_invertible, "");
    Ok(rep)
}
