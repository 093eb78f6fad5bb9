use thiserror::Error;

use super::{refute_dnf, Algorithm};
use crate::certs::{refutes, ConvProof, PropProof};
use crate::lang::{eval_formula, Formula, Literal, Theory};
use crate::model::{build_linear_model, build_partial_model, verify_model, Model};
use crate::rewrite::{self, conj_list, disj_clauses};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unsat {
        certificate: PropProof,
    },
    Sat {
        model: Model,
        clause_index: usize,
        clause: Vec<Literal>,
    },
}

impl Verdict {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat { .. })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    pub algorithm: Algorithm,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub fn decide(phi: &Formula, theory: Theory) -> Result<Verdict, DecideError> {
    decide_with(phi, theory, DecideOptions::default())
}

/// Rewrites `phi` into a strict-free DNF, refutes every clause or builds a
/// model for the leftmost satisfiable one. Certificates and models are
/// checked before they are returned.
///
/// Over partial orders strict literals are eliminated first and the result
/// is put into DNF. Over linear orders the DNF comes first: negation pushing
/// would otherwise reintroduce `≰` literals that linear elimination must see.
pub fn decide_with(
    phi: &Formula,
    theory: Theory,
    opts: DecideOptions,
) -> Result<Verdict, DecideError> {
    let stages: [(Formula, ConvProof); 2];
    let dnf = match theory {
        Theory::Partial => {
            let less = rewrite::amap_fm(rewrite::deless_partial, phi);
            let less_prf = rewrite::amap_fm_prf(rewrite::deless_partial_prf, phi);
            let (dnf, dnf_prf) = rewrite::to_dnf(&less);
            stages = [(phi.clone(), less_prf), (less, dnf_prf)];
            dnf
        }
        Theory::Linear => {
            let (dnf, dnf_prf) = rewrite::to_dnf(phi);
            let less = rewrite::amap_fm(rewrite::deless_linear, &dnf);
            let less_prf = rewrite::amap_fm_prf(rewrite::deless_linear_prf, &dnf);
            stages = [(phi.clone(), dnf_prf), (dnf, less_prf)];
            less
        }
    };
    if !rewrite::is_dnf(&dnf) {
        return Err(DecideError::Invariant(format!("preprocessing left non-DNF {dnf}")));
    }

    match refute_dnf(&dnf, opts.algorithm) {
        Ok(p) => {
            let certificate = stages
                .into_iter()
                .rev()
                .fold(p, |acc, (src, cp)| PropProof::conv(src, cp, acc));
            refutes(phi, &certificate, theory).map_err(|e| {
                DecideError::Invariant(format!("certificate rejected by the checker: {e}"))
            })?;
            Ok(Verdict::Unsat { certificate })
        }
        Err(clause_index) => {
            let clause_fm = disj_clauses(&dnf)[clause_index];
            let clause = conj_list(clause_fm).map_err(|e| DecideError::Invariant(e.to_string()))?;
            let mut model = match theory {
                Theory::Partial => build_partial_model(&clause),
                Theory::Linear => build_linear_model(&clause),
            }
            .map_err(|e| DecideError::Invariant(e.to_string()))?;
            if !verify_model(&model, &clause) {
                return Err(DecideError::Invariant(format!(
                    "model fails clause {clause_index}"
                )));
            }
            // variables outside the clause do not affect it; pin them anywhere
            if let Some(&base) = model.relation.carrier().iter().next() {
                for v in phi.vars() {
                    if model.assignment.get(v).is_none() {
                        model.assignment.insert(v, base);
                    }
                }
            }
            match eval_formula(&model.relation, &model.assignment, phi) {
                Ok(true) => Ok(Verdict::Sat {
                    model,
                    clause_index,
                    clause,
                }),
                Ok(false) => Err(DecideError::Invariant(
                    "model satisfies its clause but not the input".into(),
                )),
                Err(e) => Err(DecideError::Invariant(e.to_string())),
            }
        }
    }
}
