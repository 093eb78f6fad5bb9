//! Proof-carrying transitive closure and contradiction search.
//!
//! [`leq1_mapping`] collects the `≤` facts stated directly by a clause, each
//! with its assumption proof; [`trancl_mapping`] closes them under
//! transitivity while building `TransP` witnesses; [`contr_list`] then looks
//! for the first negative literal the closure refutes.

mod decide;

use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;

use crate::certs::{CertProof, PropProof};
use crate::lang::{Formula, Literal, OrderAtom, VarId};
use crate::rewrite::{conj_list, NotAClause};

pub use decide::{decide, decide_with, DecideError, DecideOptions, Verdict};

/// Which transitive-closure routine backs the contradiction search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// Iterated relational composition.
    #[default]
    Naive,
    /// Floyd-Warshall over a dense variable index.
    FloydWarshall,
}

/// Finite map from variable pairs to proofs of `x ≤ y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofMap(BTreeMap<(VarId, VarId), CertProof>);

impl ProofMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a map from an association list; the first entry for a key wins.
    pub fn of_alist(entries: impl IntoIterator<Item = ((VarId, VarId), CertProof)>) -> Self {
        let mut m = ProofMap::new();
        for (k, p) in entries {
            m.insert_new(k, p);
        }
        m
    }

    /// Inserts unless the key is present. Returns whether it inserted.
    pub fn insert_new(&mut self, key: (VarId, VarId), p: CertProof) -> bool {
        match self.0.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(p);
                true
            }
            btree_map::Entry::Occupied(_) => false,
        }
    }

    pub fn get(&self, x: VarId, y: VarId) -> Option<&CertProof> {
        self.0.get(&(x, y))
    }

    pub fn contains(&self, x: VarId, y: VarId) -> bool {
        self.0.contains_key(&(x, y))
    }

    pub fn keys(&self) -> BTreeSet<(VarId, VarId)> {
        self.0.keys().copied().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((VarId, VarId), &CertProof)> {
        self.0.iter().map(|(&k, p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn successors(&self, y: VarId) -> impl Iterator<Item = (VarId, &CertProof)> {
        self.0
            .range((y, VarId(u32::MIN))..=(y, VarId(u32::MAX)))
            .map(|(&(_, z), p)| (z, p))
    }
}

pub fn leq1_member_list(l: &Literal) -> Vec<((VarId, VarId), CertProof)> {
    match (l.pos, l.atom) {
        (true, OrderAtom::Le(x, y)) => vec![((x, y), CertProof::AssmP(*l))],
        (true, OrderAtom::Eq(x, y)) => vec![
            ((x, y), CertProof::EQE1P(*l)),
            ((y, x), CertProof::EQE2P(*l)),
        ],
        _ => Vec::new(),
    }
}

pub fn leq1_mapping(assms: &[Literal]) -> ProofMap {
    ProofMap::of_alist(assms.iter().flat_map(leq1_member_list))
}

/// Transitive closure by accumulating the k-fold compositions of `m` for
/// k up to the number of keys, stopping once a power adds nothing new.
/// Existing entries are never overwritten.
pub fn trancl_mapping(m: &ProofMap) -> ProofMap {
    let mut result = m.clone();
    let mut power = m.clone();
    for _ in 1..m.len() {
        let mut next = ProofMap::new();
        for ((x, y), p) in power.entries() {
            for (z, q) in m.successors(y) {
                if !next.contains(x, z) {
                    next.insert_new((x, z), CertProof::trans(p.clone(), q.clone()));
                }
            }
        }
        let mut grew = false;
        for ((x, z), p) in next.entries() {
            if !result.contains(x, z) {
                result.insert_new((x, z), p.clone());
                grew = true;
            }
        }
        // once a power lies inside the union so far, all later powers do too
        if !grew {
            break;
        }
        power = next;
    }
    result
}

/// Same contract as [`trancl_mapping`], computed by Floyd-Warshall.
pub fn trancl_floyd_warshall(m: &ProofMap) -> ProofMap {
    let vars: Vec<VarId> = m
        .0
        .keys()
        .flat_map(|&(x, y)| [x, y])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<VarId, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = vars.len();
    let mut d: Vec<Vec<Option<CertProof>>> = vec![vec![None; n]; n];
    for ((x, y), p) in m.entries() {
        d[index[&x]][index[&y]] = Some(p.clone());
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k].clone() else { continue };
            for j in 0..n {
                if d[i][j].is_none() {
                    if let Some(kj) = &d[k][j] {
                        d[i][j] = Some(CertProof::trans(ik.clone(), kj.clone()));
                    }
                }
            }
        }
    }
    let mut out = m.clone();
    for (i, row) in d.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            if let Some(p) = p {
                out.insert_new((vars[i], vars[j]), p);
            }
        }
    }
    out
}

pub fn trancl(m: &ProofMap, alg: Algorithm) -> ProofMap {
    match alg {
        Algorithm::Naive => trancl_mapping(m),
        Algorithm::FloydWarshall => trancl_floyd_warshall(m),
    }
}

/// Proof of `x ≤ y` from the closed map, reflexivity on the diagonal.
pub fn is_in_leq(leqm: &ProofMap, x: VarId, y: VarId) -> Option<CertProof> {
    if x == y {
        Some(CertProof::ReflP(x))
    } else {
        leqm.get(x, y).cloned()
    }
}

pub fn is_in_eq(leqm: &ProofMap, x: VarId, y: VarId) -> Option<CertProof> {
    let p1 = is_in_leq(leqm, x, y)?;
    let p2 = is_in_leq(leqm, y, x)?;
    Some(CertProof::antisym(p1, p2))
}

pub fn contr1_list(leqm: &ProofMap, l: &Literal) -> Option<PropProof> {
    let p = match (l.pos, l.atom) {
        (false, OrderAtom::Le(x, y)) => is_in_leq(leqm, x, y)?,
        (false, OrderAtom::Eq(x, y)) => is_in_eq(leqm, x, y)?,
        _ => return None,
    };
    Some(PropProof::Lift(CertProof::contr(*l, p)))
}

/// Refutation of the literal sequence, using the first refutable literal.
pub fn contr_list(assms: &[Literal]) -> Option<PropProof> {
    contr_list_with(assms, Algorithm::Naive)
}

pub fn contr_list_with(assms: &[Literal], alg: Algorithm) -> Option<PropProof> {
    let leqm = trancl(&leq1_mapping(assms), alg);
    assms.iter().find_map(|l| contr1_list(&leqm, l))
}

/// Turns a proof that assumes each conjunct of `phi` into one that assumes
/// `phi` itself.
pub fn from_conj_prf(p: PropProof, phi: &Formula) -> Result<PropProof, NotAClause> {
    match phi {
        Formula::Atom(_) => Ok(p),
        Formula::And(a, b) => {
            let inner = from_conj_prf(from_conj_prf(p, b)?, a)?;
            Ok(PropProof::conj_e((**a).clone(), (**b).clone(), inner))
        }
        _ => Err(NotAClause(phi.clone())),
    }
}

/// Refutation of a negation-free DNF formula, if every clause is
/// contradictory.
pub fn contr_fm_prf(phi: &Formula) -> Option<PropProof> {
    refute_dnf(phi, Algorithm::Naive).ok()
}

/// Refutes every clause of `phi` or reports the index of the leftmost
/// clause that has no contradiction.
pub(crate) fn refute_dnf(phi: &Formula, alg: Algorithm) -> Result<PropProof, usize> {
    fn go(phi: &Formula, alg: Algorithm, next_index: &mut usize) -> Result<PropProof, usize> {
        match phi {
            Formula::Or(c, d) => {
                let p1 = go(c, alg, next_index)?;
                let p2 = go(d, alg, next_index)?;
                Ok(PropProof::disj_e((**c).clone(), (**d).clone(), p1, p2))
            }
            _ => {
                let index = *next_index;
                *next_index += 1;
                let lits = conj_list(phi).map_err(|_| index)?;
                let p = contr_list_with(&lits, alg).ok_or(index)?;
                from_conj_prf(p, phi).map_err(|_| index)
            }
        }
    }
    go(phi, alg, &mut 0)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::certs::{check_atom_proof, check_prop_proof, refutes};
    use crate::lang::Theory;

    const X: VarId = VarId(0);
    const Y: VarId = VarId(1);
    const Z: VarId = VarId(2);

    fn pairs(m: &ProofMap) -> Vec<(u32, u32)> {
        m.keys().into_iter().map(|(a, b)| (a.0, b.0)).collect()
    }

    fn edge_map(edges: &[(u32, u32)]) -> ProofMap {
        ProofMap::of_alist(edges.iter().map(|&(a, b)| {
            ((VarId(a), VarId(b)), CertProof::AssmP(Literal::le(VarId(a), VarId(b))))
        }))
    }

    #[test]
    fn leq1_members() {
        assert_eq!(
            leq1_member_list(&Literal::le(X, Y)),
            vec![((X, Y), CertProof::AssmP(Literal::le(X, Y)))]
        );
        let e = Literal::eq(X, Y);
        assert_eq!(
            leq1_member_list(&e),
            vec![((X, Y), CertProof::EQE1P(e)), ((Y, X), CertProof::EQE2P(e))]
        );
        assert!(leq1_member_list(&Literal::le(X, Y).negate()).is_empty());
        assert!(leq1_member_list(&Literal::lt(X, Y)).is_empty());
    }

    #[test]
    fn leq1_mapping_first_writer_wins() {
        let m = leq1_mapping(&[Literal::le(X, Y), Literal::le(Y, X)]);
        assert_eq!(pairs(&m), vec![(0, 1), (1, 0)]);
        let m = leq1_mapping(&[Literal::eq(X, Y)]);
        assert_eq!(pairs(&m), vec![(0, 1), (1, 0)]);
        assert!(leq1_mapping(&[Literal::le(X, Y).negate()]).is_empty());

        let m = leq1_mapping(&[Literal::le(X, Y), Literal::eq(X, Y)]);
        assert_eq!(m.get(X, Y), Some(&CertProof::AssmP(Literal::le(X, Y))));
        assert_eq!(m.get(Y, X), Some(&CertProof::EQE2P(Literal::eq(X, Y))));
    }

    #[test]
    fn closure_examples() {
        let m = edge_map(&[(0, 1), (1, 2)]);
        let c = trancl_mapping(&m);
        assert_eq!(pairs(&c), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            c.get(X, Z),
            Some(&CertProof::trans(
                CertProof::AssmP(Literal::le(X, Y)),
                CertProof::AssmP(Literal::le(Y, Z))
            ))
        );

        let single = edge_map(&[(0, 1)]);
        assert_eq!(trancl_mapping(&single), single);

        let chain = edge_map(&[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            pairs(&trancl_mapping(&chain)),
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(
            trancl_mapping(&chain).keys(),
            trancl_floyd_warshall(&chain).keys()
        );

        assert!(trancl_floyd_warshall(&ProofMap::new()).is_empty());
        let cycle = edge_map(&[(0, 1), (1, 0)]);
        assert_eq!(pairs(&trancl_floyd_warshall(&cycle)), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(pairs(&trancl_mapping(&cycle)), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn closure_proofs_check() {
        let assms = [Literal::le(X, Y), Literal::eq(Y, Z), Literal::le(Z, VarId(3))];
        let set: HashSet<Literal> = assms.iter().copied().collect();
        for alg in [Algorithm::Naive, Algorithm::FloydWarshall] {
            let m = trancl(&leq1_mapping(&assms), alg);
            for ((x, y), p) in m.entries() {
                assert_eq!(check_atom_proof(&set, p), Ok(Literal::le(x, y)));
            }
        }
    }

    #[test]
    fn membership_queries() {
        let m = trancl_mapping(&edge_map(&[(0, 1), (1, 2)]));
        assert_eq!(is_in_leq(&m, VarId(3), VarId(3)), Some(CertProof::ReflP(VarId(3))));
        assert!(is_in_leq(&m, X, Z).is_some());
        assert_eq!(is_in_leq(&m, Z, X), None);
        assert_eq!(is_in_eq(&m, X, Y), None);
        assert_eq!(
            is_in_eq(&m, X, X),
            Some(CertProof::antisym(CertProof::ReflP(X), CertProof::ReflP(X)))
        );
        let both = trancl_mapping(&edge_map(&[(0, 1), (1, 0)]));
        assert!(matches!(is_in_eq(&both, X, Y), Some(CertProof::AntisymP(..))));
    }

    #[test]
    fn contr1_cases() {
        let m = trancl_mapping(&edge_map(&[(0, 1), (1, 0)]));
        assert!(contr1_list(&m, &Literal::le(X, Y).negate()).is_some());
        assert!(contr1_list(&m, &Literal::eq(X, Y).negate()).is_some());
        assert!(contr1_list(&m, &Literal::le(X, Y)).is_none());
        assert!(contr1_list(&m, &Literal::lt(X, Y).negate()).is_none());
    }

    #[test]
    fn contr_list_examples() {
        let a = [Literal::le(X, Y), Literal::le(Y, X), Literal::eq(X, Y).negate()];
        let p = contr_list(&a).unwrap();
        let ctx: Vec<Formula> = a.iter().map(|&l| Formula::Atom(l)).collect();
        assert_eq!(
            check_prop_proof(&ctx, &p, Theory::Partial),
            Ok(Formula::Atom(Literal::fls()))
        );
        assert!(matches!(
            p,
            PropProof::Lift(CertProof::ContrP(_, ref q)) if matches!(**q, CertProof::AntisymP(..))
        ));

        let a = [Literal::le(X, Y), Literal::le(Y, Z), Literal::le(X, Z).negate()];
        let p = contr_list(&a).unwrap();
        assert!(matches!(
            p,
            PropProof::Lift(CertProof::ContrP(_, ref q)) if matches!(**q, CertProof::TransP(..))
        ));

        assert_eq!(contr_list(&[Literal::le(X, Y)]), None);
    }

    #[test]
    fn from_conj_nesting() {
        let (a, b, c) = (Literal::le(X, Y), Literal::le(Y, Z), Literal::le(X, Z).negate());
        let p = contr_list(&[a, b, c]).unwrap();
        let at = |l| Formula::Atom(l);

        assert_eq!(from_conj_prf(p.clone(), &at(a)), Ok(p.clone()));
        assert_eq!(
            from_conj_prf(p.clone(), &Formula::and(at(a), at(b))),
            Ok(PropProof::conj_e(at(a), at(b), p.clone()))
        );

        let clause = Formula::and(at(a), Formula::and(at(b), at(c)));
        let wrapped = from_conj_prf(p.clone(), &clause).unwrap();
        assert_eq!(
            wrapped,
            PropProof::conj_e(
                at(a),
                Formula::and(at(b), at(c)),
                PropProof::conj_e(at(b), at(c), p)
            )
        );
        assert_eq!(refutes(&clause, &wrapped, Theory::Partial), Ok(()));
        assert!(from_conj_prf(wrapped, &Formula::or(at(a), at(b))).is_err());
    }

    #[test]
    fn contr_fm_cases() {
        let at = |l| Formula::Atom(l);
        let c1 = Formula::and(at(Literal::le(X, Y)), at(Literal::le(X, Y).negate()));
        let c2 = at(Literal::eq(X, X).negate());
        let both = Formula::or(c1.clone(), c2.clone());
        let p = contr_fm_prf(&both).unwrap();
        assert!(matches!(p, PropProof::DisjE(..)));
        assert_eq!(refutes(&both, &p, Theory::Partial), Ok(()));

        let sat = Formula::or(c1, at(Literal::le(X, Y)));
        assert_eq!(contr_fm_prf(&sat), None);
        assert_eq!(refute_dnf(&sat, Algorithm::Naive), Err(1));

        assert_eq!(refutes(&c2, &contr_fm_prf(&c2).unwrap(), Theory::Partial), Ok(()));
    }
}
