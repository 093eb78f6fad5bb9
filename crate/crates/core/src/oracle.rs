//! Brute-force ground truth. Deliberately naive and independent of the
//! closure and model code: it only enumerates finite structures and runs the
//! evaluator.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::lang::{eval_formula, Elem, Formula, Relation, Theory, Valuation, VarId};

pub const MAX_CARRIER: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("carrier size {0} is outside 1..=4")]
    CarrierSize(usize),
    #[error("{0} variables exceed the oracle bound of 4")]
    TooManyVars(usize),
}

/// All partial orders on `{0..k-1}`, in order of their off-diagonal bitmask.
pub fn enumerate_posets(k: usize) -> Result<Vec<Relation>, OracleError> {
    if !(1..=MAX_CARRIER).contains(&k) {
        return Err(OracleError::CarrierSize(k));
    }
    let off: Vec<(Elem, Elem)> = (0..k as Elem)
        .flat_map(|a| (0..k as Elem).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << off.len()) {
        let mut m = [[false; MAX_CARRIER]; MAX_CARRIER];
        for (i, row) in m.iter_mut().enumerate().take(k) {
            row[i] = true;
        }
        for (bit, &(a, b)) in off.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                m[a as usize][b as usize] = true;
            }
        }
        let antisym = (0..k).all(|a| (0..k).all(|b| a == b || !(m[a][b] && m[b][a])));
        let trans = (0..k).all(|a| {
            (0..k).all(|b| (0..k).all(|c| !(m[a][b] && m[b][c]) || m[a][c]))
        });
        if antisym && trans {
            let pairs = (0..k)
                .flat_map(|a| (0..k).map(move |b| (a, b)))
                .filter(|&(a, b)| m[a][b])
                .map(|(a, b)| (a as Elem, b as Elem));
            out.push(Relation::new(0..k as Elem, pairs).expect("pairs within carrier"));
        }
    }
    Ok(out)
}

fn posets_cached(k: usize) -> Result<&'static [Relation], OracleError> {
    static CACHE: OnceLock<Vec<Vec<Relation>>> = OnceLock::new();
    if !(1..=MAX_CARRIER).contains(&k) {
        return Err(OracleError::CarrierSize(k));
    }
    let all = CACHE.get_or_init(|| {
        (1..=MAX_CARRIER)
            .map(|k| enumerate_posets(k).expect("k in range"))
            .collect()
    });
    Ok(&all[k - 1])
}

/// Valuations `vars -> {0..k-1}` in restricted-growth form: each variable
/// takes at most one more than the largest value used before it. Every
/// valuation is a relabeling of one of these.
fn canonical_valuations(vars: &[VarId]) -> Vec<Valuation> {
    fn go(vars: &[VarId], i: usize, max: Option<Elem>, cur: &mut Vec<Elem>, out: &mut Vec<Valuation>) {
        if i == vars.len() {
            out.push(vars.iter().copied().zip(cur.iter().copied()).collect());
            return;
        }
        let limit = max.map_or(0, |m| m + 1);
        for val in 0..=limit {
            cur.push(val);
            go(vars, i + 1, Some(max.map_or(val, |m| m.max(val))), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, 0, None, &mut Vec::new(), &mut out);
    out
}

fn all_valuations(vars: &[VarId], k: usize) -> Vec<Valuation> {
    let mut out = vec![Valuation::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|val| {
                (0..k as Elem).map(move |e| {
                    let mut next = val.clone();
                    next.insert(v, e);
                    next
                })
            })
            .collect();
    }
    out
}

/// Is `phi` satisfiable over partial (resp. linear) orders with carriers of
/// size `|vars|`? `vars` must cover the variables of `phi`.
pub fn brute_sat(phi: &Formula, theory: Theory, vars: &BTreeSet<VarId>) -> Result<bool, OracleError> {
    let k = vars.len().max(1);
    if k > MAX_CARRIER {
        return Err(OracleError::TooManyVars(vars.len()));
    }
    let vs: Vec<VarId> = vars.iter().copied().collect();
    let holds = |r: &Relation, v: &Valuation| eval_formula(r, v, phi).unwrap_or(false);
    Ok(match theory {
        Theory::Partial => {
            // poset families are closed under relabeling
            let vals = canonical_valuations(&vs);
            posets_cached(k)?
                .iter()
                .any(|r| vals.iter().any(|v| holds(r, v)))
        }
        Theory::Linear => {
            let chain = Relation::new(
                0..k as Elem,
                (0..k as Elem).flat_map(|a| (a..k as Elem).map(move |b| (a, b))),
            )
            .expect("chain within carrier");
            all_valuations(&vs, k).iter().any(|v| holds(&chain, v))
        }
    })
}

/// [`brute_sat`] over exactly the variables of `phi`.
pub fn brute_sat_auto(phi: &Formula, theory: Theory) -> Result<bool, OracleError> {
    brute_sat(phi, theory, &phi.vars())
}

/// Unrestricted variant of the partial-order search, for cross-checking.
pub fn brute_sat_full(phi: &Formula, theory: Theory, vars: &BTreeSet<VarId>) -> Result<bool, OracleError> {
    let k = vars.len().max(1);
    if k > MAX_CARRIER {
        return Err(OracleError::TooManyVars(vars.len()));
    }
    let vs: Vec<VarId> = vars.iter().copied().collect();
    let vals = all_valuations(&vs, k);
    let rels = match theory {
        Theory::Partial => enumerate_posets(k)?,
        Theory::Linear => enumerate_posets(k)?
            .into_iter()
            .filter(|r| r.props().total)
            .collect(),
    };
    Ok(rels
        .iter()
        .any(|r| vals.iter().any(|v| eval_formula(r, v, phi).unwrap_or(false))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Literal;

    const X: VarId = VarId(0);
    const Y: VarId = VarId(1);

    fn at(l: Literal) -> Formula {
        Formula::Atom(l)
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|k| enumerate_posets(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
        assert!(enumerate_posets(0).is_err());
        assert!(enumerate_posets(5).is_err());
        for r in enumerate_posets(3).unwrap() {
            assert!(r.props().is_partial_order());
        }
    }

    #[test]
    fn restricted_growth_counts_are_bell_numbers() {
        let vs: Vec<VarId> = (0..4).map(VarId).collect();
        assert_eq!(canonical_valuations(&vs[..3]).len(), 5);
        assert_eq!(canonical_valuations(&vs).len(), 15);
    }

    #[test]
    fn oracle_examples() {
        let vars: BTreeSet<VarId> = [X, Y].into_iter().collect();
        assert!(brute_sat(&at(Literal::le(X, Y)), Theory::Partial, &vars).unwrap());

        let motivating = Formula::conj([
            at(Literal::lt(X, Y).negate()),
            at(Literal::eq(X, Y)),
            at(Literal::le(X, Y).negate()),
        ])
        .unwrap();
        assert!(!brute_sat(&motivating, Theory::Partial, &vars).unwrap());

        let incomparable =
            Formula::and(at(Literal::le(X, Y).negate()), at(Literal::le(Y, X).negate()));
        assert!(brute_sat(&incomparable, Theory::Partial, &vars).unwrap());
        assert!(!brute_sat(&incomparable, Theory::Linear, &vars).unwrap());
    }

    #[test]
    fn too_many_variables() {
        let vars: BTreeSet<VarId> = (0..5).map(VarId).collect();
        assert_eq!(
            brute_sat(&at(Literal::le(X, Y)), Theory::Partial, &vars),
            Err(OracleError::TooManyVars(5))
        );
    }

    #[test]
    fn canonical_search_matches_full_search() {
        let z = VarId(2);
        let lits = [
            Literal::le(X, Y),
            Literal::lt(Y, z),
            Literal::eq(X, z),
            Literal::le(z, X).negate(),
            Literal::lt(X, Y).negate(),
            Literal::eq(Y, z).negate(),
        ];
        let vars: BTreeSet<VarId> = [X, Y, z].into_iter().collect();
        for (i, &a) in lits.iter().enumerate() {
            for &b in &lits[i..] {
                for &c in &lits {
                    let phi = Formula::or(Formula::and(at(a), at(b)), Formula::neg(at(c)));
                    let phi2 = Formula::and(at(a), Formula::and(at(b), at(c)));
                    for f in [phi, phi2] {
                        for th in [Theory::Partial, Theory::Linear] {
                            assert_eq!(
                                brute_sat(&f, th, &vars).unwrap(),
                                brute_sat_full(&f, th, &vars).unwrap(),
                                "{f} under {th}"
                            );
                        }
                    }
                }
            }
        }
    }
}
