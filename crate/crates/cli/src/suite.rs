//! Oracle-agreement harness shared by the `selftest` command and the test
//! suites.

use std::fmt;

use ordproof::lang::eval_formula;
use ordproof::model::verify_model;
use ordproof::oracle::brute_sat_auto;
use ordproof::replay::{check_refutation, export, Sigma};
use ordproof::{
    decide_with, refutes, Algorithm, DecideOptions, Formula, Literal, OrderAtom, Theory, Verdict,
    VarId,
};

/// Every literal over variables `0..vars`: all ordered pairs, three kinds,
/// both polarities.
pub fn literal_alphabet(vars: u32) -> Vec<Literal> {
    let mut out = Vec::new();
    for x in 0..vars {
        for y in 0..vars {
            let (x, y) = (VarId(x), VarId(y));
            for atom in [OrderAtom::Le(x, y), OrderAtom::Lt(x, y), OrderAtom::Eq(x, y)] {
                out.push(Literal::new(true, atom));
                out.push(Literal::new(false, atom));
            }
        }
    }
    out
}

/// All non-empty multisets of at most `max_len` literals from `alphabet`,
/// as sorted sequences. Conjunction is commutative and idempotent, so these
/// cover every literal sequence up to reordering.
pub fn literal_multisets(alphabet: &[Literal], max_len: usize) -> Vec<Vec<Literal>> {
    fn go(alpha: &[Literal], start: usize, left: usize, cur: &mut Vec<Literal>, out: &mut Vec<Vec<Literal>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..alpha.len() {
            cur.push(alpha[i]);
            go(alpha, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alphabet, 0, max_len, &mut Vec::new(), &mut out);
    out
}

pub fn conj_of(lits: &[Literal]) -> Formula {
    Formula::conj(lits.iter().map(|&l| Formula::Atom(l))).expect("non-empty literal sequence")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub expected_sat: bool,
    pub unsat: bool,
    /// Both kernels accept the certificate (unsat cases only).
    pub structured_ok: bool,
    pub replay_ok: bool,
    /// The model is a structure of the theory and satisfies the input
    /// (sat cases only).
    pub model_ok: bool,
}

impl CaseReport {
    pub fn agrees(&self) -> bool {
        self.expected_sat != self.unsat
    }

    pub fn sound(&self) -> bool {
        if self.unsat {
            self.structured_ok && self.replay_ok
        } else {
            self.model_ok
        }
    }
}

/// Decides formulas under one theory and cross-checks every verdict.
pub struct Checker {
    theory: Theory,
    algorithm: Algorithm,
    sigma: Sigma,
}

impl Checker {
    pub fn new(theory: Theory, algorithm: Algorithm) -> Self {
        Checker {
            theory,
            algorithm,
            sigma: Sigma::new(theory),
        }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn check(&self, phi: &Formula) -> Result<CaseReport, String> {
        let expected_sat = brute_sat_auto(phi, self.theory).map_err(|e| e.to_string())?;
        let opts = DecideOptions {
            algorithm: self.algorithm,
        };
        let verdict = decide_with(phi, self.theory, opts).map_err(|e| e.to_string())?;
        let mut report = CaseReport {
            expected_sat,
            unsat: verdict.is_unsat(),
            structured_ok: false,
            replay_ok: false,
            model_ok: false,
        };
        match verdict {
            Verdict::Unsat { certificate } => {
                report.structured_ok = refutes(phi, &certificate, self.theory).is_ok();
                report.replay_ok =
                    check_refutation(&self.sigma, phi, &export(&certificate, phi)).is_ok();
            }
            Verdict::Sat { model, clause, .. } => {
                let props = model.relation.props();
                report.model_ok = model.theory == self.theory
                    && props.fits(self.theory)
                    && (self.theory == Theory::Partial || props.total)
                    && verify_model(&model, &clause)
                    && eval_formula(&model.relation, &model.assignment, phi) == Ok(true);
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub cases: usize,
    pub unsat: usize,
    pub disagreements: usize,
    pub unsound: usize,
    pub errors: usize,
    /// A few failing inputs, for diagnostics.
    pub samples: Vec<String>,
}

const MAX_SAMPLES: usize = 8;

impl Summary {
    pub fn record(&mut self, phi: &Formula, result: &Result<CaseReport, String>) {
        self.cases += 1;
        let problem = match result {
            Err(e) => {
                self.errors += 1;
                Some(e.clone())
            }
            Ok(r) => {
                self.unsat += usize::from(r.unsat);
                if !r.agrees() {
                    self.disagreements += 1;
                    Some(format!("decide says {}, oracle disagrees", if r.unsat { "unsat" } else { "sat" }))
                } else if !r.sound() {
                    self.unsound += 1;
                    Some("verdict evidence rejected".into())
                } else {
                    None
                }
            }
        };
        if let Some(p) = problem {
            if self.samples.len() < MAX_SAMPLES {
                self.samples.push(format!("{phi}: {p}"));
            }
        }
    }

    pub fn merge(mut self, other: Summary) -> Summary {
        self.cases += other.cases;
        self.unsat += other.unsat;
        self.disagreements += other.disagreements;
        self.unsound += other.unsound;
        self.errors += other.errors;
        let room = MAX_SAMPLES.saturating_sub(self.samples.len());
        self.samples.extend(other.samples.into_iter().take(room));
        self
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements == 0 && self.unsound == 0 && self.errors == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} cases, {} unsat, {} disagreements, {} unsound, {} errors",
            self.cases, self.unsat, self.disagreements, self.unsound, self.errors
        )
    }
}

/// Runs every conjunction of at most `max_len` literals over `vars`
/// variables through `checker`.
pub fn exhaustive(checker: &Checker, vars: u32, max_len: usize) -> Summary {
    let mut s = Summary::default();
    for lits in literal_multisets(&literal_alphabet(vars), max_len) {
        let phi = conj_of(&lits);
        s.record(&phi, &checker.check(&phi));
    }
    s
}
