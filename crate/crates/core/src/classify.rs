//! Axiom checking with witnesses, exhaustive enumeration of closure systems
//! on tiny universes, and the atom / dense-cover checks built on top.

use serde::Serialize;

use crate::algebra::table_le;
use crate::error::{Error, Result};
use crate::operators::{mask_set, ClosureSystem, Node, OperatorExpr, OperatorTable};
use crate::quotient::Quotient;
use crate::sets::{bits, mask_of_width, Element, SentenceSet, SubsetBound, Universe};

/// Fallback search bound for cofinite-mode operators outside the exact sweep.
pub const DEFAULT_BOUND: SubsetBound = SubsetBound {
    max_size: 3,
    horizon: 16,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<W> {
    Pass,
    Fail {
        witness: W,
    },
    /// No counterexample inside a bounded search; not a proof.
    InconclusivePass,
}

impl<W> Verdict<W> {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomOneFailure {
    NotExtensive,
    NotIdempotent,
}

/// `X` with `X ⊄ C(X)` or `C(C(X)) ≠ C(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotenceWitness {
    pub set: SentenceSet,
    pub image: SentenceSet,
    pub image_of_image: SentenceSet,
    pub failure: AxiomOneFailure,
}

/// `A ⊆ H` with `C(A) ⊄ C(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneWitness {
    pub smaller: SentenceSet,
    pub larger: SentenceSet,
    pub smaller_image: SentenceSet,
    pub larger_image: SentenceSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FinitaryFailure {
    /// The element is in `C(X)` but in no image of a finite subset.
    NotDerivable,
    /// The element is in the image of a finite subset but not in `C(X)`.
    Overshoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitaryWitness {
    pub set: SentenceSet,
    pub element: String,
    #[serde(skip)]
    pub element_id: Element,
    pub failure: FinitaryFailure,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<SentenceSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckMode {
    /// Every subset (finite mode) or every atom-state representative
    /// (cofinite mode) was examined.
    Exhaustive,
    /// Decided from the construction's parameters.
    ClosedForm,
    BoundedSearch {
        bound: SubsetBound,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom_i: Verdict<IdempotenceWitness>,
    pub axiom_ii: Verdict<MonotoneWitness>,
    pub axiom_iii: Verdict<FinitaryWitness>,
    pub axiomless: bool,
    pub mode: CheckMode,
    /// On a finite carrier (i) and (ii) force (iii); set when that
    /// derivation applies.
    pub finitary_follows_from_i_ii: bool,
}

impl AxiomReport {
    /// Axioms (i) and (ii) hold.
    pub fn is_consequence_operator(&self) -> bool {
        self.axiom_i.passed() && self.axiom_ii.passed()
    }

    pub fn is_finitary_consequence_operator(&self) -> bool {
        self.is_consequence_operator() && self.axiom_iii.passed()
    }
}

/// Check axioms (i)–(iii) for `op` over `universe`.
///
/// Finite universes are swept exhaustively. On the countable carrier the
/// primitive constructions get closed-form verdicts, combinations of them are
/// decided over atom-state representatives, and only when that sweep is too
/// large does a bounded search run (which then needs `bound`).
pub fn check_axioms(
    op: &OperatorExpr,
    universe: &Universe,
    bound: Option<SubsetBound>,
) -> Result<AxiomReport> {
    if universe.is_finite() {
        let table = OperatorTable::tabulate(op, universe)?;
        return Ok(check_table(&table));
    }
    if let Some(report) = closed_form_report(op, universe)? {
        return Ok(report);
    }
    match exact_cofinite_report(op, universe) {
        Err(Error::SweepTooLarge { .. }) => {
            let bound = bound.ok_or(Error::MissingCap)?;
            bounded_report(op, universe, bound)
        }
        other => other,
    }
}

pub fn check_table(table: &OperatorTable) -> AxiomReport {
    let u = table.universe();
    let n = u.size().expect("tables are finite");
    let img = table.images();
    let size = img.len() as u64;

    let mut axiom_i = Verdict::Pass;
    for x in 0..size {
        let y = img[x as usize];
        let failure = if x & !y != 0 {
            Some(AxiomOneFailure::NotExtensive)
        } else if img[y as usize] != y {
            Some(AxiomOneFailure::NotIdempotent)
        } else {
            None
        };
        if let Some(failure) = failure {
            axiom_i = Verdict::Fail {
                witness: IdempotenceWitness {
                    set: mask_set(u, x),
                    image: mask_set(u, y),
                    image_of_image: mask_set(u, img[y as usize]),
                    failure,
                },
            };
            break;
        }
    }

    // covering pairs A ⊂ A + {e} are enough by transitivity of ⊆
    let mut axiom_ii = Verdict::Pass;
    'outer: for a in 0..size {
        for e in 0..n {
            let h = a | (1 << e);
            if h != a && img[a as usize] & !img[h as usize] != 0 {
                axiom_ii = Verdict::Fail {
                    witness: MonotoneWitness {
                        smaller: mask_set(u, a),
                        larger: mask_set(u, h),
                        smaller_image: mask_set(u, img[a as usize]),
                        larger_image: mask_set(u, img[h as usize]),
                    },
                };
                break 'outer;
            }
        }
    }

    // union of C(F) over all F ⊆ X, built up one removed element at a time
    let mut union = vec![0u64; img.len()];
    let mut axiom_iii = Verdict::Pass;
    for x in 0..size {
        let mut acc = img[x as usize];
        for e in bits(x) {
            acc |= union[(x & !(1 << e)) as usize];
        }
        union[x as usize] = acc;
        if matches!(axiom_iii, Verdict::Pass) {
            let cx = img[x as usize];
            if acc != cx {
                let extra = acc & !cx;
                let (failure, elem) = if extra != 0 {
                    (
                        FinitaryFailure::Overshoot,
                        extra.trailing_zeros() as Element,
                    )
                } else {
                    let missing = cx & !acc;
                    (
                        FinitaryFailure::NotDerivable,
                        missing.trailing_zeros() as Element,
                    )
                };
                let subset = (failure == FinitaryFailure::Overshoot).then(|| {
                    let f = submasks(x)
                        .find(|&f| img[f as usize] & (1 << elem) != 0)
                        .expect("element came from some subset");
                    mask_set(u, f)
                });
                axiom_iii = Verdict::Fail {
                    witness: FinitaryWitness {
                        set: mask_set(u, x),
                        element: u.element_name(elem),
                        element_id: elem,
                        failure,
                        subset,
                    },
                };
            }
        }
    }

    let derived = axiom_i.passed() && axiom_ii.passed();
    debug_assert!(!derived || axiom_iii.passed());
    AxiomReport {
        axiom_i,
        axiom_ii,
        axiom_iii,
        axiomless: img[0] == 0,
        mode: CheckMode::Exhaustive,
        finitary_follows_from_i_ii: derived,
    }
}

/// Submasks of `x` in ascending order.
fn submasks(x: u64) -> impl Iterator<Item = u64> {
    (0..=x).filter(move |f| f & !x == 0)
}

/// Verdicts for `I`, `U`, `C(X,Y)`, `C′(X,Y)` and reducible weak joins.
fn closed_form_report(op: &OperatorExpr, universe: &Universe) -> Result<Option<AxiomReport>> {
    let primitive = match op.node() {
        Node::WeakJoin(..) => op.weak_join_closed_form()?,
        Node::Identity | Node::Top | Node::Cxy { .. } | Node::CPrime { .. } => op.clone(),
        _ => return Ok(None),
    };
    let axiom_iii = match primitive.node() {
        Node::CPrime { x, y } if !y.is_finite_set() => {
            // A ⊇ Y is never reached from a finite F, so X − Y is underivable
            let gap = x.difference(y)?;
            match gap.min_element() {
                Some(z) => Verdict::Fail {
                    witness: FinitaryWitness {
                        set: y.clone(),
                        element: universe.element_name(z),
                        element_id: z,
                        failure: FinitaryFailure::NotDerivable,
                        subset: None,
                    },
                },
                None => Verdict::Pass,
            }
        }
        _ => Verdict::Pass,
    };
    Ok(Some(AxiomReport {
        axiom_i: Verdict::Pass,
        axiom_ii: Verdict::Pass,
        axiom_iii,
        axiomless: op.eval(&universe.empty())?.is_empty(),
        mode: CheckMode::ClosedForm,
        finitary_follows_from_i_ii: false,
    }))
}

/// Exact cofinite verdicts over atom-state representatives.
pub fn exact_cofinite_report(op: &OperatorExpr, universe: &Universe) -> Result<AxiomReport> {
    let q = Quotient::for_operators(universe, &[op])?;
    let axiom_i = match q.extensive_idempotent(op)? {
        None => Verdict::Pass,
        Some((set, image, idem)) => Verdict::Fail {
            witness: IdempotenceWitness {
                image_of_image: op.eval(&image)?,
                set,
                image,
                failure: if idem {
                    AxiomOneFailure::NotIdempotent
                } else {
                    AxiomOneFailure::NotExtensive
                },
            },
        },
    };
    let axiom_ii = match q.monotone(op)? {
        None => Verdict::Pass,
        Some((a, h)) => Verdict::Fail {
            witness: MonotoneWitness {
                smaller_image: op.eval(&a)?,
                larger_image: op.eval(&h)?,
                smaller: a,
                larger: h,
            },
        },
    };
    let axiom_iii = match q.finitary(op, axiom_ii.passed())? {
        None => Verdict::Pass,
        Some((set, z)) => Verdict::Fail {
            witness: FinitaryWitness {
                set,
                element: z.to_string(),
                element_id: z,
                failure: FinitaryFailure::NotDerivable,
                subset: None,
            },
        },
    };
    Ok(AxiomReport {
        axiom_i,
        axiom_ii,
        axiom_iii,
        axiomless: op.eval(&universe.empty())?.is_empty(),
        mode: CheckMode::Exhaustive,
        finitary_follows_from_i_ii: false,
    })
}

/// Bounded search on the countable carrier.
///
/// Test sets are the finite subsets of the first `horizon` naturals with at
/// most `max_size` elements, together with their complements. Failures of
/// (i) and (ii) are concrete counterexamples; a (iii) failure means no finite
/// subset within the bound derives the element.
pub fn bounded_report(
    op: &OperatorExpr,
    universe: &Universe,
    bound: SubsetBound,
) -> Result<AxiomReport> {
    if universe.is_finite() {
        return Err(Error::CofiniteOnly("bounded search"));
    }
    let small: Vec<SentenceSet> = universe.full().finite_subsets(Some(bound))?.collect();
    let tests: Vec<SentenceSet> = small
        .iter()
        .cloned()
        .chain(small.iter().map(SentenceSet::complement))
        .collect();

    let mut axiom_i = Verdict::InconclusivePass;
    for x in &tests {
        let img = op.eval(x)?;
        let img2 = op.eval(&img)?;
        let failure = if !x.is_subset(&img)? {
            Some(AxiomOneFailure::NotExtensive)
        } else if img2 != img {
            Some(AxiomOneFailure::NotIdempotent)
        } else {
            None
        };
        if let Some(failure) = failure {
            axiom_i = Verdict::Fail {
                witness: IdempotenceWitness {
                    set: x.clone(),
                    image: img,
                    image_of_image: img2,
                    failure,
                },
            };
            break;
        }
    }

    let mut axiom_ii = Verdict::InconclusivePass;
    'outer: for x in &tests {
        let cx = op.eval(x)?;
        for e in 0..bound.horizon as Element {
            if x.contains(e) {
                continue;
            }
            let h = x.union(&universe.set([e])?)?;
            let ch = op.eval(&h)?;
            if !cx.is_subset(&ch)? {
                axiom_ii = Verdict::Fail {
                    witness: MonotoneWitness {
                        smaller: x.clone(),
                        larger: h,
                        smaller_image: cx,
                        larger_image: ch,
                    },
                };
                break 'outer;
            }
        }
    }

    let mut axiom_iii = Verdict::InconclusivePass;
    'outer3: for x in &tests {
        let cx = op.eval(x)?;
        let Some(z) = cx.difference(x)?.elements().take(bound.horizon).next() else {
            continue;
        };
        let mut found = false;
        for f in x.finite_subsets(Some(bound))? {
            if op.eval(&f)?.contains(z) {
                found = true;
                break;
            }
        }
        if !found {
            axiom_iii = Verdict::Fail {
                witness: FinitaryWitness {
                    set: x.clone(),
                    element: z.to_string(),
                    element_id: z,
                    failure: FinitaryFailure::NotDerivable,
                    subset: None,
                },
            };
            break 'outer3;
        }
    }

    Ok(AxiomReport {
        axiom_i,
        axiom_ii,
        axiom_iii,
        axiomless: op.eval(&universe.empty())?.is_empty(),
        mode: CheckMode::BoundedSearch { bound },
        finitary_follows_from_i_ii: false,
    })
}

/// Least `x` with `C(L − {x}) = L` for an axiomatic consequence operator.
pub fn lemma26_witness(op: &OperatorExpr, universe: &Universe) -> Result<Element> {
    let table = OperatorTable::tabulate(op, universe)?;
    lemma26_table(&table)
}

pub fn lemma26_table(table: &OperatorTable) -> Result<Element> {
    let report = check_table(table);
    if !report.is_consequence_operator() {
        return Err(Error::NotConsequenceOperator);
    }
    if report.axiomless {
        return Err(Error::Axiomless);
    }
    let full = table.full_mask();
    bits(full)
        .find(|&x| table.image_mask(full & !(1 << x)) == full)
        .ok_or_else(|| {
            Error::CheckFailed("axiomatic operator without a co-singleton generating L".into())
        })
}

/// Every closure system on an `n`-element universe, ordered by the
/// characteristic bitmask of the family over the power set.
pub fn enumerate_operators(n: usize, include_top: bool) -> Result<Vec<ClosureSystem>> {
    enumerate_operators_with_workers(n, include_top, 1)
}

/// As [`enumerate_operators`], splitting the candidate range over threads.
/// The output does not depend on `workers`.
pub fn enumerate_operators_with_workers(
    n: usize,
    include_top: bool,
    workers: usize,
) -> Result<Vec<ClosureSystem>> {
    if !(1..=4).contains(&n) {
        return Err(Error::EnumerationTooLarge(n));
    }
    let universe = Universe::letters(n)?;
    let subsets = 1u32 << n;
    let full = (1u64 << n) - 1;
    let candidates: u64 = 1 << subsets;
    let workers = workers.clamp(1, 64) as u64;
    let chunk = candidates.div_ceil(workers);

    let scan = |lo: u64, hi: u64| -> Vec<u64> {
        (lo..hi)
            .filter(|&family| is_moore_family(family, full))
            .collect()
    };
    let families: Vec<u64> = if workers == 1 {
        scan(0, candidates)
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = (w * chunk).min(candidates);
                    let hi = ((w + 1) * chunk).min(candidates);
                    s.spawn(move || scan(lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    Ok(families
        .into_iter()
        .filter(|&family| include_top || family != 1 << full)
        .map(|family| ClosureSystem::from_sorted_masks_unchecked(&universe, bits(family).collect()))
        .collect())
}

/// `family` has bit `s` set when subset `s` is closed.
fn is_moore_family(family: u64, full: u64) -> bool {
    if family & (1 << full) == 0 {
        return false;
    }
    let members: Vec<u64> = bits(family).collect();
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| family & (1 << (a & b)) != 0)
    })
}

/// All consequence operators on a small universe, tabulated once.
#[derive(Debug, Clone)]
pub struct Oracle {
    universe: Universe,
    systems: Vec<ClosureSystem>,
    tables: Vec<OperatorTable>,
}

impl Oracle {
    pub fn new(n: usize, include_top: bool) -> Result<Self> {
        Self::with_workers(n, include_top, 1)
    }

    pub fn with_workers(n: usize, include_top: bool, workers: usize) -> Result<Self> {
        let systems = enumerate_operators_with_workers(n, include_top, workers)?;
        let tables = systems
            .iter()
            .map(ClosureSystem::to_table)
            .collect::<Result<Vec<_>>>()?;
        Ok(Oracle {
            universe: Universe::letters(n)?,
            systems,
            tables,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn systems(&self) -> &[ClosureSystem] {
        &self.systems
    }

    pub fn tables(&self) -> &[OperatorTable] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn operators(&self) -> impl Iterator<Item = OperatorExpr> + '_ {
        self.systems.iter().cloned().map(OperatorExpr::from_system)
    }
}

/// `{C′({x}, L − {x}) | x ∈ L}`.
pub fn e0_family(universe: &Universe) -> Result<Vec<OperatorExpr>> {
    let n = universe
        .size()
        .ok_or(Error::FiniteOnly("the co-singleton family"))?;
    if n < 2 {
        return Err(Error::UniverseTooSmall);
    }
    (0..n as Element)
        .map(|x| {
            let single = universe.set([x])?;
            let rest = single.complement();
            let op = OperatorExpr::cprime(single, rest.clone())?;
            if op.eval(&rest)? != universe.full() {
                return Err(Error::CheckFailed(format!("member {x} fixes L - {{x}}")));
            }
            Ok(op)
        })
        .collect()
}

/// `op` covers the identity among all enumerated consequence operators.
pub fn is_atom(op: &OperatorExpr, oracle: &Oracle) -> Result<bool> {
    let t = OperatorTable::tabulate(op, oracle.universe())?;
    let identity = identity_images(oracle.universe());
    if t.images() == identity.as_slice() {
        return Err(Error::IsIdentity);
    }
    if !t
        .images()
        .iter()
        .enumerate()
        .all(|(x, &y)| x as u64 & !y == 0)
    {
        return Ok(false);
    }
    let strictly_between = oracle.tables().iter().any(|d| {
        d.images() != identity.as_slice() && d.images() != t.images() && table_le(d, &t).is_none()
    });
    Ok(!strictly_between)
}

fn identity_images(u: &Universe) -> Vec<u64> {
    let n = u.size().unwrap_or(0);
    (0..=mask_of_width(n)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseCover {
    pub holds: bool,
    pub axiomatic_checked: usize,
    /// First axiomatic system with no family member below it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<Vec<SentenceSet>>,
}

/// Every enumerated axiomatic operator lies above some member of `family`.
pub fn dense_cover_check(oracle: &Oracle, family: &[OperatorExpr]) -> Result<DenseCover> {
    let family = family
        .iter()
        .map(|e| OperatorTable::tabulate(e, oracle.universe()))
        .collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    for (sys, t) in oracle.systems().iter().zip(oracle.tables()) {
        if t.image_mask(0) == 0 {
            continue;
        }
        checked += 1;
        if !family.iter().any(|e| table_le(e, t).is_none()) {
            return Ok(DenseCover {
                holds: false,
                axiomatic_checked: checked,
                uncovered: Some(sys.closed_sets()),
            });
        }
    }
    Ok(DenseCover {
        holds: true,
        axiomatic_checked: checked,
        uncovered: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> Universe {
        Universe::letters(3).unwrap()
    }

    fn set(u: &Universe, s: &str) -> SentenceSet {
        u.parse_set(s).unwrap()
    }

    #[test]
    fn cxy_is_an_axiomless_finitary_operator() {
        let u = l3();
        let op = OperatorExpr::cxy(set(&u, "{a}"), set(&u, "{b}")).unwrap();
        let r = check_axioms(&op, &u, None).unwrap();
        assert!(r.is_finitary_consequence_operator());
        assert!(r.axiomless);
        assert!(r.finitary_follows_from_i_ii);
        assert_eq!(r.mode, CheckMode::Exhaustive);
    }

    #[test]
    fn naive_join_fails_idempotence_at_empty_set() {
        let u = l3();
        let cp = OperatorExpr::cprime(set(&u, "{b}"), u.empty()).unwrap();
        let s = OperatorExpr::s_example(set(&u, "{a}"), 1).unwrap();
        let j = OperatorExpr::naive_join(&cp, &s).unwrap();
        let r = check_axioms(&j, &u, None).unwrap();
        let w = r.axiom_i.witness().unwrap();
        assert_eq!(w.set, u.empty());
        assert_eq!(w.image, set(&u, "{a,b}"));
        assert_eq!(w.image_of_image, u.full());
        assert_eq!(w.failure, AxiomOneFailure::NotIdempotent);
    }

    #[test]
    fn non_monotone_table_fails_ii_and_iii_together() {
        let u = Universe::letters(2).unwrap();
        // ∅ ↦ {a} while {b} is closed: extensive, idempotent, not monotone
        let t = OperatorTable::new(&u, vec![0b01, 0b01, 0b10, 0b11]).unwrap();
        let r = check_table(&t);
        assert!(r.axiom_i.passed());
        assert!(!r.axiom_ii.passed());
        let w = r.axiom_iii.witness().unwrap();
        assert_eq!(w.failure, FinitaryFailure::Overshoot);
        assert_eq!(w.set.to_string(), "{b}");
        assert_eq!(w.subset.as_ref().unwrap().to_string(), "{}");
    }

    #[test]
    fn cofinite_cprime_with_infinite_guard() {
        let u = Universe::cofinite();
        let op = OperatorExpr::cprime(u.set([0]).unwrap(), u.cofinite_set([0]).unwrap()).unwrap();
        let r = check_axioms(&op, &u, None).unwrap();
        assert_eq!(r.mode, CheckMode::ClosedForm);
        assert!(r.is_consequence_operator());
        let w = r.axiom_iii.witness().unwrap();
        assert_eq!(w.set, u.cofinite_set([0]).unwrap());
        assert_eq!(w.element_id, 0);
        let exact = exact_cofinite_report(&op, &u).unwrap();
        assert_eq!(exact.axiom_iii.witness().unwrap().set, w.set);
    }

    #[test]
    fn bounded_search_finds_the_same_gap() {
        let u = Universe::cofinite();
        let op = OperatorExpr::cprime(u.set([0]).unwrap(), u.cofinite_set([0]).unwrap()).unwrap();
        let r = bounded_report(&op, &u, SubsetBound::new(2, 8)).unwrap();
        assert_eq!(r.axiom_i, Verdict::InconclusivePass);
        assert_eq!(r.axiom_iii.witness().unwrap().element_id, 0);
        let fine = OperatorExpr::cxy(u.set([3]).unwrap(), u.set([0]).unwrap()).unwrap();
        let r = bounded_report(&fine, &u, SubsetBound::new(2, 8)).unwrap();
        assert_eq!(r.axiom_iii, Verdict::InconclusivePass);
    }

    #[test]
    fn lemma26_examples() {
        let u = l3();
        let s = OperatorExpr::s_example(set(&u, "{a}"), 1).unwrap();
        assert_eq!(lemma26_witness(&s, &u).unwrap(), 0);
        let top = OperatorExpr::from_system(ClosureSystem::new(&u, &[u.full()]).unwrap());
        assert_eq!(lemma26_witness(&top, &u).unwrap(), 0);
        let c = OperatorExpr::cxy(set(&u, "{a}"), set(&u, "{b}")).unwrap();
        assert_eq!(lemma26_witness(&c, &u), Err(Error::Axiomless));
    }

    #[test]
    fn enumeration_small_counts() {
        let one = enumerate_operators(1, true).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].masks(), &[1]);
        assert_eq!(one[1].masks(), &[0, 1]);
        assert_eq!(enumerate_operators(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_operators(2, true).unwrap().len(), 7);
        assert_eq!(
            enumerate_operators(5, true),
            Err(Error::EnumerationTooLarge(5))
        );
    }

    #[test]
    fn workers_do_not_change_the_stream() {
        let a = enumerate_operators_with_workers(3, true, 1).unwrap();
        let b = enumerate_operators_with_workers(3, true, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn e0_members_and_atoms() {
        let u = l3();
        let e0 = e0_family(&u).unwrap();
        assert_eq!(e0.len(), 3);
        assert_eq!(e0[0].eval(&set(&u, "{b,c}")).unwrap(), u.full());
        let oracle = Oracle::new(3, true).unwrap();
        assert!(is_atom(&e0[0], &oracle).unwrap());
        let big = OperatorExpr::cxy(set(&u, "{a,c}"), set(&u, "{b}")).unwrap();
        assert!(!is_atom(&big, &oracle).unwrap());
        assert_eq!(
            is_atom(&OperatorExpr::identity(), &oracle),
            Err(Error::IsIdentity)
        );
        assert_eq!(
            e0_family(&Universe::letters(1).unwrap()),
            Err(Error::UniverseTooSmall)
        );
    }

    #[test]
    fn dense_cover_vacuity_control() {
        let oracle = Oracle::new(3, true).unwrap();
        let r = dense_cover_check(&oracle, &[]).unwrap();
        assert!(!r.holds);
        assert_eq!(r.axiomatic_checked, 1);
        let first_axiomatic = oracle
            .tables()
            .iter()
            .position(|t| t.image_mask(0) != 0)
            .unwrap();
        assert_eq!(
            r.uncovered.unwrap(),
            oracle.systems()[first_axiomatic].closed_sets()
        );
    }
}
