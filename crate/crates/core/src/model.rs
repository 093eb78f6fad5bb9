//! Models for clauses without contradictions: the quotient of the derived
//! preorder for partial orders, and a deterministic linear extension of it
//! for linear orders.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::closure::{contr_list, leq1_mapping, trancl_mapping};
use crate::lang::{eval_literal, Elem, Literal, OrderAtom, Relation, Theory, Valuation, VarId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub relation: Relation,
    pub assignment: Valuation,
    pub theory: Theory,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("clause contains the literal {0}, which must be rewritten first")]
    Unsupported(Literal),
    #[error("clause is contradictory")]
    Contradictory,
    #[error("relation is not a partial order")]
    NotPartialOrder,
}

/// Maps each variable to the least member of its class under `leq ∩ leq⁻¹`.
/// `leq_keys` is taken to be transitively closed; the diagonal is implicit.
pub fn sym_classes(
    leq_keys: &BTreeSet<(VarId, VarId)>,
    vars: &BTreeSet<VarId>,
) -> BTreeMap<VarId, VarId> {
    vars.iter()
        .map(|&x| {
            let rep = vars
                .iter()
                .copied()
                .find(|&y| y == x || (leq_keys.contains(&(x, y)) && leq_keys.contains(&(y, x))))
                .unwrap_or(x);
            (x, rep)
        })
        .collect()
}

fn clause_vars(clause: &[Literal]) -> BTreeSet<VarId> {
    clause
        .iter()
        .flat_map(|l| {
            let (x, y) = l.vars();
            [x, y]
        })
        .collect()
}

pub fn build_partial_model(clause: &[Literal]) -> Result<Model, ModelError> {
    if let Some(l) = clause.iter().find(|l| matches!(l.atom, OrderAtom::Lt(..))) {
        return Err(ModelError::Unsupported(*l));
    }
    if contr_list(clause).is_some() {
        return Err(ModelError::Contradictory);
    }
    let vars = clause_vars(clause);
    let keys = trancl_mapping(&leq1_mapping(clause)).keys();
    let class = sym_classes(&keys, &vars);
    let carrier: BTreeSet<Elem> = class.values().map(|r| r.0).collect();
    let pairs = keys
        .iter()
        .map(|(x, y)| (class[x].0, class[y].0))
        .chain(carrier.iter().map(|&c| (c, c)))
        .collect::<Vec<_>>();
    let relation = Relation::new(carrier, pairs).expect("class images lie in the carrier");
    let assignment = class.iter().map(|(&v, r)| (v, r.0)).collect();
    Ok(Model {
        relation,
        assignment,
        theory: Theory::Partial,
    })
}

/// Extends a finite partial order to a linear one by topological sorting,
/// always emitting the least available element next.
pub fn linear_extension(r: &Relation) -> Result<Relation, ModelError> {
    if !r.props().is_partial_order() {
        return Err(ModelError::NotPartialOrder);
    }
    let mut remaining: BTreeSet<Elem> = r.carrier().clone();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .copied()
            .find(|&e| !remaining.iter().any(|&d| d != e && r.contains(d, e)))
            .ok_or(ModelError::NotPartialOrder)?;
        remaining.remove(&next);
        order.push(next);
    }
    let pairs: Vec<_> = order
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| order[i..].iter().map(move |&b| (a, b)))
        .collect();
    Ok(Relation::new(order.iter().copied(), pairs).expect("pairs drawn from the carrier"))
}

pub fn build_linear_model(clause: &[Literal]) -> Result<Model, ModelError> {
    if let Some(l) = clause
        .iter()
        .find(|l| !l.pos && matches!(l.atom, OrderAtom::Le(..)))
    {
        return Err(ModelError::Unsupported(*l));
    }
    let partial = build_partial_model(clause)?;
    Ok(Model {
        relation: linear_extension(&partial.relation)?,
        assignment: partial.assignment,
        theory: Theory::Linear,
    })
}

/// The relation has the shape its theory demands and every literal holds.
pub fn verify_model(m: &Model, clause: &[Literal]) -> bool {
    m.relation.props().fits(m.theory)
        && clause
            .iter()
            .all(|&l| eval_literal(&m.relation, &m.assignment, l) == Ok(true))
}
