use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::CatError;
use crate::qlinalg::{q, Mat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleObject {
    pub name: String,
    pub parity: Parity,
    pub rank: u32,
}

impl SimpleObject {
    pub fn new(name: &str, parity: Parity, rank: u32) -> Self {
        SimpleObject { name: name.to_string(), parity, rank }
    }

    /// Parity-signed rank; the categorical dimension of the simple.
    pub fn superdim(&self) -> i64 {
        match self.parity {
            Parity::Even => self.rank as i64,
            Parity::Odd => -(self.rank as i64),
        }
    }
}

/// Decomposition of `S ⊗ T` into simples, and the symmetry `S ⊗ T -> T ⊗ S`
/// written as a signed permutation from the summands of `(S, T)` (columns)
/// to the summands of `(T, S)` (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionEntry {
    pub summands: Vec<usize>,
    pub symmetry: Mat,
}

/// The space `V(S, S')` of numerical morphisms `S -> S'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleEntry {
    pub source: usize,
    pub target: usize,
    pub basis_names: Vec<String>,
}

impl BimoduleEntry {
    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }
}

/// Duality data for one simple `S`: the dual simple, the invertible simple `T`
/// through which evaluation and coevaluation factor, and their coefficients on
/// the copies of `T` inside `S ⊗ S^∨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEntry {
    pub dual: usize,
    pub twist: usize,
    pub ev: Vec<Scalar>,
    pub coev: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySpec {
    pub simples: Vec<SimpleObject>,
    pub unit: usize,
    pub fusion: BTreeMap<(usize, usize), FusionEntry>,
    pub bimodule: Vec<BimoduleEntry>,
    pub duals: BTreeMap<usize, DualEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

pub const AXIOM_UNIT: &str = "unit axioms";
pub const AXIOM_RANK: &str = "rank compatibility";
pub const AXIOM_SYMMETRY: &str = "symmetry involutivity";
pub const AXIOM_BIMODULE: &str = "bimodule trace-zero";
pub const AXIOM_DUALS: &str = "duals consistency";

impl CategorySpec {
    pub fn n_simples(&self) -> usize {
        self.simples.len()
    }

    pub fn simple_index(&self, name: &str) -> Option<usize> {
        self.simples.iter().position(|s| s.name == name)
    }

    pub fn name(&self, s: usize) -> &str {
        &self.simples[s].name
    }

    pub fn superdim(&self, s: usize) -> i64 {
        self.simples[s].superdim()
    }

    pub fn fusion_entry(&self, s: usize, t: usize) -> Result<&FusionEntry, CatError> {
        self.fusion.get(&(s, t)).ok_or_else(|| CatError::FusionIncomplete {
            left: self.name(s).to_string(),
            right: self.name(t).to_string(),
        })
    }

    /// Index of the bimodule entry for `(source, target)`, if declared.
    pub fn bimodule_index(&self, source: usize, target: usize) -> Option<usize> {
        self.bimodule.iter().position(|b| b.source == source && b.target == target)
    }

    pub fn bimodule_dim(&self, source: usize, target: usize) -> usize {
        self.bimodule_index(source, target).map_or(0, |b| self.bimodule[b].dim())
    }

    /// Inserts the identity rows `(𝟙, S)` and `(S, 𝟙)` where they are missing.
    pub fn fill_unit_rows(&mut self) {
        let u = self.unit;
        for s in 0..self.n_simples() {
            for key in [(u, s), (s, u)] {
                self.fusion
                    .entry(key)
                    .or_insert_with(|| FusionEntry { summands: vec![s], symmetry: Mat::identity(1) });
            }
        }
    }

    /// Checks every axiom and reports each one.
    pub fn validation_report(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |axiom, res: Result<(), String>| {
            let (pass, detail) = match res {
                Ok(()) => (true, String::new()),
                Err(d) => (false, d),
            };
            checks.push(AxiomCheck { axiom, pass, detail });
        };
        push(AXIOM_UNIT, self.check_unit());
        push(AXIOM_RANK, self.check_ranks());
        push(AXIOM_SYMMETRY, self.check_symmetry());
        push(AXIOM_BIMODULE, self.check_bimodule());
        if !self.duals.is_empty() {
            push(AXIOM_DUALS, self.check_duals());
        }
        ValidationReport { checks }
    }

    /// Errors with the first failing axiom.
    pub fn validate(&self) -> Result<ValidationReport, CatError> {
        let report = self.validation_report();
        if let Some(fail) = report.first_failure() {
            return Err(CatError::IncoherentSpec {
                axiom: fail.axiom.to_string(),
                detail: fail.detail.clone(),
            });
        }
        Ok(report)
    }

    fn check_unit(&self) -> Result<(), String> {
        let u = self.simples.get(self.unit).ok_or("unit is not a declared simple")?;
        if u.parity != Parity::Even || u.rank != 1 {
            return Err(format!("unit {} must be even of rank 1", u.name));
        }
        let mut names: Vec<&str> = self.simples.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err("simple names must be unique".into());
        }
        if let Some(s) = self.simples.iter().find(|s| s.rank == 0) {
            return Err(format!("simple {} has rank 0", s.name));
        }
        for s in 0..self.n_simples() {
            for key in [(self.unit, s), (s, self.unit)] {
                let e = self.fusion.get(&key).ok_or_else(|| {
                    format!("missing unit row ({}, {})", self.name(key.0), self.name(key.1))
                })?;
                if e.summands != [s] || e.symmetry != Mat::identity(1) {
                    return Err(format!(
                        "({}, {}) must be [{}] with identity symmetry",
                        self.name(key.0),
                        self.name(key.1),
                        self.name(s)
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_ranks(&self) -> Result<(), String> {
        for (&(s, t), e) in &self.fusion {
            if e.summands.iter().any(|&u| u >= self.n_simples()) {
                return Err("fusion summand out of range".into());
            }
            let lhs = self.superdim(s) * self.superdim(t);
            let rhs: i64 = e.summands.iter().map(|&u| self.superdim(u)).sum();
            if lhs != rhs {
                return Err(format!(
                    "({}, {}): superdims multiply to {lhs} but summands total {rhs}",
                    self.name(s),
                    self.name(t)
                ));
            }
        }
        Ok(())
    }

    fn check_symmetry(&self) -> Result<(), String> {
        for (&(s, t), e) in &self.fusion {
            let label = format!("({}, {})", self.name(s), self.name(t));
            let back = self.fusion.get(&(t, s)).ok_or(format!("{label} has no reverse row"))?;
            let n = e.summands.len();
            if back.summands.len() != n || e.symmetry.rows() != n || e.symmetry.cols() != n {
                return Err(format!("{label}: symmetry matrix has the wrong shape"));
            }
            for c in 0..n {
                let nonzero: Vec<usize> =
                    (0..n).filter(|&r| !e.symmetry[(r, c)].is_zero()).collect();
                let [r] = nonzero[..] else {
                    return Err(format!("{label}: symmetry is not a signed permutation"));
                };
                let v = &e.symmetry[(r, c)];
                if !(v.is_one() || (-v).is_one()) {
                    return Err(format!("{label}: symmetry entries must be ±1"));
                }
                if back.summands[r] != e.summands[c] {
                    return Err(format!("{label}: symmetry mixes different simples"));
                }
            }
            if &back.symmetry * &e.symmetry != Mat::identity(n) {
                return Err(format!("{label}: c_(T,S) ∘ c_(S,T) is not the identity"));
            }
        }
        Ok(())
    }

    fn check_bimodule(&self) -> Result<(), String> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.bimodule {
            if b.source >= self.n_simples() || b.target >= self.n_simples() {
                return Err("bimodule entry names an unknown simple".into());
            }
            if !seen.insert((b.source, b.target)) {
                return Err(format!(
                    "duplicate bimodule entry ({}, {})",
                    self.name(b.source),
                    self.name(b.target)
                ));
            }
        }
        // Every numerical endomorphism of a simple has zero trace: the trace
        // only reads semisimple blocks.
        for (bi, b) in self.bimodule.iter().enumerate() {
            if b.source != b.target {
                continue;
            }
            let x = super::Obj::simple(self, b.source);
            for k in 0..b.dim() {
                let mut f = super::Mor::zero(self, &x, &x);
                f.nil[bi][k] = Mat::identity(1);
                if !self.trace(&f).expect("endomorphism").is_zero() {
                    return Err(format!("{} has nonzero trace", b.basis_names[k]));
                }
            }
        }
        Ok(())
    }

    fn check_duals(&self) -> Result<(), String> {
        for (&s, d) in &self.duals {
            let label = self.name(s).to_string();
            if d.dual >= self.n_simples() || d.twist >= self.n_simples() {
                return Err(format!("{label}: dual data names an unknown simple"));
            }
            let t = &self.simples[d.twist];
            if t.rank != 1 || t.parity != Parity::Even {
                return Err(format!("{label}: twist {} must be even of rank 1", t.name));
            }
            let x = super::Obj::simple(self, s);
            let via_duals = self.trace_via_duality(&super::Mor::identity(self, &x)).map_err(|e| e.to_string())?;
            let block = q(self.superdim(s));
            if via_duals != block {
                return Err(format!(
                    "{label}: ε∘η = {} but the block trace is {}",
                    crate::qlinalg::format_scalar(&via_duals),
                    crate::qlinalg::format_scalar(&block)
                ));
            }
        }
        Ok(())
    }
}
