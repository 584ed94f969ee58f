//! Order and lattice algebra on consequence operators.

use serde::Serialize;

use crate::classify::{check_table, AxiomReport};
use crate::error::{Error, Result};
use crate::operators::{mask_set, OperatorExpr, OperatorTable};
use crate::quotient::Quotient;
use crate::sets::{Element, SentenceSet, Universe};

/// Least subset mask `X` with `a(X) ⊄ b(X)`, if any.
pub fn table_le(a: &OperatorTable, b: &OperatorTable) -> Option<u64> {
    a.images()
        .iter()
        .zip(b.images())
        .position(|(x, y)| x & !y != 0)
        .map(|i| i as u64)
}

/// Least subset mask where the tables differ, if any.
pub fn table_diff(a: &OperatorTable, b: &OperatorTable) -> Option<u64> {
    a.images()
        .iter()
        .zip(b.images())
        .position(|(x, y)| x != y)
        .map(|i| i as u64)
}

/// Pointwise intersection of two tables.
pub fn table_meet(a: &OperatorTable, b: &OperatorTable) -> Result<OperatorTable> {
    let images = a
        .images()
        .iter()
        .zip(b.images())
        .map(|(x, y)| x & y)
        .collect();
    OperatorTable::new(a.universe(), images)
}

/// Least common closed superset, for extensive tables.
pub fn table_weak_join(a: &OperatorTable, b: &OperatorTable) -> Result<OperatorTable> {
    let mut images = Vec::with_capacity(a.images().len());
    for x in 0..a.images().len() as u64 {
        let mut y = x;
        loop {
            let next = a.image_mask(b.image_mask(y));
            if next & y != y {
                return Err(Error::WeakJoinNotExtensive(
                    mask_set(a.universe(), y).to_string(),
                ));
            }
            if next == y {
                break;
            }
            y = next;
        }
        images.push(y);
    }
    OperatorTable::new(a.universe(), images)
}

/// `outer ∘ inner` on tables.
pub fn table_compose(outer: &OperatorTable, inner: &OperatorTable) -> Result<OperatorTable> {
    let images = inner
        .images()
        .iter()
        .map(|&y| outer.image_mask(y))
        .collect();
    OperatorTable::new(outer.universe(), images)
}

/// `a ≤ b`: `None` when it holds, otherwise a set `X` with `a(X) ⊄ b(X)`.
///
/// Finite universes are swept; the countable carrier is decided over
/// atom-state representatives, which needs both operands built from the
/// parametric constructions.
pub fn le_witness(
    a: &OperatorExpr,
    b: &OperatorExpr,
    universe: &Universe,
) -> Result<Option<SentenceSet>> {
    if universe.is_finite() {
        let (ta, tb) = (
            OperatorTable::tabulate(a, universe)?,
            OperatorTable::tabulate(b, universe)?,
        );
        Ok(table_le(&ta, &tb).map(|m| mask_set(universe, m)))
    } else {
        Quotient::for_operators(universe, &[a, b])?.le_witness(a, b)
    }
}

pub fn le(a: &OperatorExpr, b: &OperatorExpr, universe: &Universe) -> Result<bool> {
    Ok(le_witness(a, b, universe)?.is_none())
}

/// Pointwise equality: `None` when equal, otherwise a distinguishing set.
pub fn equivalent(
    a: &OperatorExpr,
    b: &OperatorExpr,
    universe: &Universe,
) -> Result<Option<SentenceSet>> {
    if universe.is_finite() {
        let (ta, tb) = (
            OperatorTable::tabulate(a, universe)?,
            OperatorTable::tabulate(b, universe)?,
        );
        Ok(table_diff(&ta, &tb).map(|m| mask_set(universe, m)))
    } else {
        match le_witness(a, b, universe)? {
            Some(w) => Ok(Some(w)),
            None => le_witness(b, a, universe),
        }
    }
}

pub fn equiv(a: &OperatorExpr, b: &OperatorExpr, universe: &Universe) -> Result<bool> {
    Ok(equivalent(a, b, universe)?.is_none())
}

pub fn meet(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr> {
    OperatorExpr::meet(a, b)
}

pub fn naive_join(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr> {
    OperatorExpr::naive_join(a, b)
}

pub fn weak_join(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr> {
    OperatorExpr::weak_join(a, b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelativeComplement {
    #[serde(serialize_with = "crate::algebra::display_ser")]
    pub candidate: OperatorExpr,
    pub verdict: AxiomReport,
    /// `c ∨ candidate ≡ c1` and `c ∧ candidate ≡ I`.
    pub lattice_check: bool,
}

pub(crate) fn display_ser<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The candidate `A ↦ (c1(A) − c(A)) ∪ A` for a complement of `c` relative
/// to `c1`, with its axiom verdict and the lattice identities it must meet.
pub fn relative_complement(
    c: &OperatorExpr,
    c1: &OperatorExpr,
    universe: &Universe,
    include_top: bool,
) -> Result<RelativeComplement> {
    let n = universe
        .size()
        .ok_or(Error::FiniteOnly("relative complements"))?;
    let tc = OperatorTable::tabulate(c, universe)?;
    let tc1 = OperatorTable::tabulate(c1, universe)?;
    let full = tc.full_mask();
    if !include_top && tc1.images().iter().all(|&m| m == full) {
        return Err(Error::TopExcluded);
    }
    let identity = OperatorTable::new(universe, (0..1u64 << n).collect())?;
    if table_le(&identity, &tc).is_some() || table_diff(&identity, &tc).is_none() {
        return Err(Error::OrderPrecondition("need I < C strictly".into()));
    }
    if table_le(&tc, &tc1).is_some() || table_diff(&tc, &tc1).is_none() {
        return Err(Error::OrderPrecondition("need C < C1 strictly".into()));
    }
    let images = (0..1u64 << n)
        .map(|a| (tc1.image_mask(a) & !tc.image_mask(a)) | a)
        .collect();
    let table = OperatorTable::new(universe, images)?;
    let verdict = check_table(&table);
    let candidate = OperatorExpr::from_table(table);
    let join_ok = equiv(&OperatorExpr::naive_join(c, &candidate)?, c1, universe)?;
    let meet_ok = equiv(
        &OperatorExpr::meet(c, &candidate)?,
        &OperatorExpr::identity(),
        universe,
    )?;
    Ok(RelativeComplement {
        candidate,
        verdict,
        lattice_check: join_ok && meet_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncomparablePair {
    pub first: usize,
    pub second: usize,
    /// `first(X) ⊄ second(X)`.
    pub first_not_below: SentenceSet,
    /// `second(X) ⊄ first(X)`.
    pub second_not_below: SentenceSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainVerdict {
    pub is_chain: bool,
    pub pairs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub incomparable: Option<IncomparablePair>,
}

/// Whether every pair is comparable, decided through `≤` and independently
/// through composition (`C′C = C′` or `CC′ = C`). The two answers must
/// agree on every pair.
pub fn is_chain(family: &[OperatorExpr], universe: &Universe) -> Result<ChainVerdict> {
    let mut incomparable = None;
    let mut pairs = 0;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let (a, b) = (&family[i], &family[j]);
            pairs += 1;
            let ab = le_witness(a, b, universe)?;
            let ba = le_witness(b, a, universe)?;
            let by_order = ab.is_none() || ba.is_none();
            let by_composition = equiv(&OperatorExpr::compose(b, a)?, b, universe)?
                || equiv(&OperatorExpr::compose(a, b)?, a, universe)?;
            if by_order != by_composition {
                return Err(Error::RouteDisagreement(i, j));
            }
            if !by_order && incomparable.is_none() {
                incomparable = Some(IncomparablePair {
                    first: i,
                    second: j,
                    first_not_below: ab.expect("incomparable"),
                    second_not_below: ba.expect("incomparable"),
                });
            }
        }
    }
    Ok(ChainVerdict {
        is_chain: incomparable.is_none(),
        pairs_checked: pairs,
        incomparable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonChainWitness {
    pub a: SentenceSet,
    pub d: SentenceSet,
    /// `C(A,B)(B) = A` and `C(D,B)(B) = B ∪ D` are incomparable.
    pub probe: SentenceSet,
    pub image_a: SentenceSet,
    pub image_d: SentenceSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SublatticeReport {
    pub guard: SentenceSet,
    pub generators: usize,
    pub subfamilies_checked: usize,
    pub inf_closed_form: bool,
    pub sup_closed_form: bool,
    pub inf_of_all: String,
    pub sup_of_all: String,
    pub inf_is_identity: bool,
    pub pairs_checked: usize,
    pub joins_agree: bool,
    pub triples_checked: usize,
    pub distributive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_chain: Option<NonChainWitness>,
}

impl SublatticeReport {
    pub fn all_hold(&self) -> bool {
        self.inf_closed_form && self.sup_closed_form && self.joins_agree && self.distributive
    }
}

/// Subfamilies are all checked up to this many generators; above it only
/// the whole family is.
const SUBFAMILY_LIMIT: usize = 12;

/// Verify the lattice facts for `{C(X, guard) | X ∈ generators}`.
pub fn sublattice_cb(guard: &SentenceSet, generators: &[SentenceSet]) -> Result<SublatticeReport> {
    let universe = guard.universe();
    if !universe.is_finite() {
        return Err(Error::FiniteOnly("the sublattice check"));
    }
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let ops = generators
        .iter()
        .map(|x| OperatorExpr::cxy(x.clone(), guard.clone()))
        .collect::<Result<Vec<_>>>()?;

    let subfamilies: Vec<Vec<usize>> = if generators.len() <= SUBFAMILY_LIMIT {
        (1u32..1 << generators.len())
            .map(|m| {
                (0..generators.len())
                    .filter(|i| m & (1 << i) != 0)
                    .collect()
            })
            .collect()
    } else {
        vec![(0..generators.len()).collect()]
    };
    let mut inf_ok = true;
    let mut sup_ok = true;
    for sub in &subfamilies {
        let (mut inf, mut sup) = (ops[sub[0]].clone(), ops[sub[0]].clone());
        let (mut cap, mut cup) = (generators[sub[0]].clone(), generators[sub[0]].clone());
        for &i in &sub[1..] {
            inf = OperatorExpr::meet(&inf, &ops[i])?;
            sup = OperatorExpr::weak_join(&sup, &ops[i])?;
            cap = cap.intersect(&generators[i])?;
            cup = cup.union(&generators[i])?;
        }
        inf_ok &= equiv(&inf, &OperatorExpr::cxy(cap, guard.clone())?, universe)?;
        sup_ok &= equiv(&sup, &OperatorExpr::cxy(cup, guard.clone())?, universe)?;
    }

    let cap_all = generators[1..]
        .iter()
        .try_fold(generators[0].clone(), |acc, x| acc.intersect(x))?;
    let cup_all = generators[1..]
        .iter()
        .try_fold(generators[0].clone(), |acc, x| acc.union(x))?;
    let inf_all = OperatorExpr::cxy(cap_all, guard.clone())?;
    let sup_all = OperatorExpr::cxy(cup_all, guard.clone())?;
    let inf_is_identity = equiv(&inf_all, &OperatorExpr::identity(), universe)?;

    let mut pairs = 0;
    let mut joins_agree = true;
    for i in 0..ops.len() {
        for j in i..ops.len() {
            pairs += 1;
            joins_agree &= equiv(
                &OperatorExpr::naive_join(&ops[i], &ops[j])?,
                &OperatorExpr::weak_join(&ops[i], &ops[j])?,
                universe,
            )?;
        }
    }

    let mut triples = 0;
    let mut distributive = true;
    for p in &ops {
        for q in &ops {
            for r in &ops {
                triples += 1;
                let lhs = OperatorExpr::meet(p, &OperatorExpr::weak_join(q, r)?)?;
                let rhs = OperatorExpr::weak_join(
                    &OperatorExpr::meet(p, q)?,
                    &OperatorExpr::meet(p, r)?,
                )?;
                let lhs2 = OperatorExpr::weak_join(p, &OperatorExpr::meet(q, r)?)?;
                let rhs2 = OperatorExpr::meet(
                    &OperatorExpr::weak_join(p, q)?,
                    &OperatorExpr::weak_join(p, r)?,
                )?;
                distributive &= equiv(&lhs, &rhs, universe)? && equiv(&lhs2, &rhs2, universe)?;
            }
        }
    }

    Ok(SublatticeReport {
        guard: guard.clone(),
        generators: generators.len(),
        subfamilies_checked: subfamilies.len(),
        inf_closed_form: inf_ok,
        sup_closed_form: sup_ok,
        inf_of_all: inf_all.to_string(),
        sup_of_all: sup_all.to_string(),
        inf_is_identity,
        pairs_checked: pairs,
        joins_agree,
        triples_checked: triples,
        distributive,
        non_chain: non_chain_witness(guard)?,
    })
}

/// For nonempty `B` with some `A`, `B ⊊ A ⊊ L`: the least such `A`, a
/// singleton `D` outside it, and the incomparable images at `B`.
pub fn non_chain_witness(guard: &SentenceSet) -> Result<Option<NonChainWitness>> {
    let universe = guard.universe();
    if guard.is_empty() {
        return Ok(None);
    }
    let outside = guard.complement();
    let mut free = outside.elements();
    let (Some(first), Some(second)) = (free.next(), free.next()) else {
        return Ok(None);
    };
    let a = guard.union(&universe.set([first])?)?;
    let d = universe.set([second as Element])?;
    let ca = OperatorExpr::cxy(a.clone(), guard.clone())?;
    let cd = OperatorExpr::cxy(d.clone(), guard.clone())?;
    let image_a = ca.eval(guard)?;
    let image_d = cd.eval(guard)?;
    if image_a.is_subset(&image_d)? || image_d.is_subset(&image_a)? {
        return Err(Error::CheckFailed(
            "non-chain witness images are comparable".into(),
        ));
    }
    if universe.is_finite() && (le(&ca, &cd, universe)? || le(&cd, &ca, universe)?) {
        return Err(Error::CheckFailed(
            "non-chain witness operators are comparable".into(),
        ));
    }
    Ok(Some(NonChainWitness {
        a,
        d,
        probe: guard.clone(),
        image_a,
        image_d,
    }))
}

/// `C_k = C(ℕ − {1..k}, {0})` for `k = 1..=n`, verified strictly decreasing
/// link by link and never equal to `I`.
pub fn descending_chain(universe: &Universe, n: usize) -> Result<Vec<OperatorExpr>> {
    if universe.is_finite() {
        return Err(Error::CofiniteOnly("the descending chain"));
    }
    if n == 0 {
        return Err(Error::Usage("chain length must be positive".into()));
    }
    let guard = universe.set([0])?;
    let probe = universe.set([0, 1])?;
    let chain = (1..=n as Element)
        .map(|k| OperatorExpr::cxy(universe.cofinite_set(1..=k)?, guard.clone()))
        .collect::<Result<Vec<_>>>()?;
    for (k, op) in chain.iter().enumerate() {
        if op.eval(&probe)? == probe {
            return Err(Error::CheckFailed(format!("link {} fixes {{0,1}}", k + 1)));
        }
    }
    for (k, pair) in chain.windows(2).enumerate() {
        let (upper, lower) = (&pair[0], &pair[1]);
        if !le(lower, upper, universe)? || le(upper, lower, universe)? {
            return Err(Error::CheckFailed(format!("link {} is not strict", k + 1)));
        }
    }
    Ok(chain)
}
