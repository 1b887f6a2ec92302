//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use weightcat::bench::builtin::{arrow, ell};
use weightcat::bench::model::{parse_spec, spec_to_json};
use weightcat::bench::samples::{named_complexes, random_chain_map, rng};
use weightcat::bench::scenarios::{run_all, run_scenario, RunConfig};
use weightcat::catcore::{CatError, CategorySpec, Obj, PowerKind};
use weightcat::homotopy::ChainMap;
use weightcat::qlinalg::{binomial, q};

type Outcome = Result<String, String>;

fn scenario(spec: &CategorySpec, name: &str) -> Outcome {
    let r = run_scenario(name, spec, &RunConfig::default()).map_err(|e| e.to_string())?;
    let failed: Vec<String> =
        r.checks.iter().filter(|l| !l.pass).map(|l| format!("{} ({})", l.name, l.details)).collect();
    if r.pass {
        Ok(format!("{name}: {} checks", r.checks.len()))
    } else {
        Err(format!("{name}: {}", failed.join("; ")))
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(format!("{x}; {y}")),
        (Err(x), Ok(_)) | (Ok(_), Err(x)) => Err(x),
        (Err(x), Err(y)) => Err(format!("{x}; {y}")),
    }
}

fn weight_axioms(c: &CategorySpec) -> Outcome {
    let axioms = scenario(c, "thm-4.1");
    let samples = named_complexes(c).map_err(|e| e.to_string())?;
    let mut cuts = 0;
    for (name, x) in &samples {
        let Some((lo, hi)) = c.weight_window(x).map_err(|e| e.to_string())? else { continue };
        for b in lo - 1..=hi + 1 {
            let d = c.weight_truncate(x, b).map_err(|e| e.to_string())?;
            cuts += 1;
            if !c.delta_is_radical(&d).map_err(|e| e.to_string())? {
                return Err(format!("delta of {name} at b = {b} is not radical"));
            }
        }
    }
    both(axioms, Ok(format!("{cuts} truncation deltas radical")))
}

fn tensor_compatibility(c: &CategorySpec) -> Outcome {
    let samples = named_complexes(c).map_err(|e| e.to_string())?;
    let mut r = rng(3);
    let (mut covered, mut skipped, mut koszul) = (0, 0, false);
    for (na, a) in &samples {
        for (nb, b) in &samples {
            let f = random_chain_map(c, &mut r, a, a).map_err(|e| e.to_string())?;
            let g = random_chain_map(c, &mut r, b, b).map_err(|e| e.to_string())?;
            let f = f.add(c, &ChainMap::identity(c, a)).map_err(|e| e.to_string())?;
            match c.pi_tensor_check(&f, &g) {
                Ok(t) if t.pass() => {
                    covered += 1;
                    koszul |= na == "h1" && nb == "h1";
                }
                Ok(t) => return Err(format!("{na} ⊗ {nb}: {t:?}")),
                Err(CatError::FusionIncomplete { .. } | CatError::TransportMissing { .. }) => skipped += 1,
                Err(e) => return Err(format!("{na} ⊗ {nb}: {e}")),
            }
        }
    }
    if !koszul {
        return Err("odd ⊗ odd pair not covered".into());
    }
    Ok(format!("{covered} covered pairs pass, {skipped} not fusion-covered"))
}

fn kimura(c: &CategorySpec) -> Outcome {
    let h1 = Obj::simple(c, c.simple_index("h1").ok_or("no h1")?);
    let sym3 = c.sym_power_rank(&h1, 3);
    let wedge2 = c.wedge_power_rank(&h1, 2);
    if sym3 != q(0) || wedge2 != q(3) {
        return Err(format!("sym³ rank {sym3}, ∧² rank {wedge2}"));
    }
    let mut checked = 0;
    let mut cases = vec![(h1.clone(), 2)];
    let two_units = Obj::copies(c, 0, 2);
    for n in 2..=4 {
        cases.push((two_units.clone(), n));
    }
    for (x, n) in cases {
        for kind in [PowerKind::Sym, PowerKind::Wedge] {
            let p = c.sym_projector(&x, n, kind).map_err(|e| e.to_string())?;
            if c.compose(&p, &p).map_err(|e| e.to_string())? != p {
                return Err(format!("{kind:?}^{n} of {} is not idempotent", x.describe(c)));
            }
            let tr = c.trace(&p).map_err(|e| e.to_string())?;
            let expected = match kind {
                PowerKind::Sym => c.sym_power_rank(&x, n),
                PowerKind::Wedge => c.wedge_power_rank(&x, n),
            };
            if tr != expected {
                return Err(format!("{kind:?}^{n} of {}: trace {tr}, rank {expected}", x.describe(c)));
            }
            checked += 1;
        }
    }
    let direct = binomial(-2 + 3 - 1, 3);
    if direct != sym3 {
        return Err(format!("binomial oracle {direct}"));
    }
    Ok(format!("sym³ h1 = 0, ∧² h1 = 3, {checked} projector traces"))
}

fn infrastructure(c: &CategorySpec) -> Outcome {
    let back = parse_spec(&spec_to_json(c)).map_err(|e| e.to_string())?;
    if &back != c {
        return Err("spec round trip differs".into());
    }
    let shipped = include_str!("../../../models/ell.json");
    if parse_spec(shipped).map_err(|e| e.to_string())? != *c {
        return Err("models/ell.json differs from the builtin model".into());
    }
    let cfg = RunConfig { seed: 7, bound: 8 };
    let first = run_all("ell", c, &cfg);
    let second = run_all("ell", c, &cfg);
    if first.to_json() != second.to_json() {
        return Err("reports differ under a fixed seed".into());
    }
    if !first.pass {
        let failed: Vec<_> = first.scenarios.iter().filter(|s| !s.pass).map(|s| s.scenario.clone()).collect();
        return Err(format!("round trip and determinism ok; verify --all fails: {}", failed.join(", ")));
    }
    Ok("round trip, determinism, verify --all".into())
}

fn conservativity_samples(c: &CategorySpec) -> Outcome {
    // the scenario already draws ten seeded endomorphisms; add a sanity draw here
    let samples = named_complexes(c).map_err(|e| e.to_string())?;
    let mut r = rng(11);
    let (name, x) = &samples[r.gen_range(0..samples.len())];
    let c0 = c.conservativity_check(&ChainMap::identity(c, x)).map_err(|e| e.to_string())?;
    if !(c0.invertible && c0.pi_invertible && c0.p_invertible) {
        return Err(format!("identity of {name} not invertible"));
    }
    scenario(c, "prop-6.4")
}

fn main() -> ExitCode {
    let c = ell();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 radical = numerical ideal", Box::new(|| scenario(&c, "prop-3.5"))),
        ("2 nilpotency and idempotent lifting", Box::new(|| both(scenario(&c, "thm-3.2"), scenario(&c, "cor-3.3")))),
        ("3 weight structure axioms", Box::new(|| weight_axioms(&c))),
        ("4 long exact sequences", Box::new(|| scenario(&c, "prop-5.5"))),
        ("5 π is symmetric monoidal", Box::new(|| tensor_compatibility(&c))),
        ("6 π is not full", Box::new(|| scenario(&c, "prop-6.1"))),
        ("7 no triangulated numerical quotient", Box::new(|| scenario(&c, "prop-6.2"))),
        ("8 π is conservative", Box::new(|| conservativity_samples(&c))),
        ("9 p is not conservative", Box::new(|| scenario(&c, "prop-6.6"))),
        ("10 Kimura profile", Box::new(|| kimura(&c))),
        ("11 infrastructure", Box::new(|| infrastructure(&c))),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS  criterion {name}  [{secs:.2}s]  {d}"),
            Err(d) => {
                failures += 1;
                println!("FAIL  criterion {name}  [{secs:.2}s]  {d}");
            }
        }
    }

    // the same functor scenarios on a model where dim M = dim N
    let a = arrow();
    for name in ["prop-6.1", "prop-6.2", "prop-6.6"] {
        match scenario(&a, name) {
            Ok(d) => println!("info  arrow model  PASS  {d}"),
            Err(d) => println!("info  arrow model  FAIL  {d}"),
        }
    }

    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
