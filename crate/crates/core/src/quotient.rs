//! Exact decisions on the countable carrier.
//!
//! Every operator built from `I`, `U`, `C(X,Y)`, `C′(X,Y)`, meets, naive
//! joins, compositions and reducible weak joins maps `A` to `A ∪ D`, where
//! `D` is a union of atoms of the Boolean algebra generated by its parameter
//! sets and depends only on whether `A` misses, partially covers or contains
//! each atom. Sweeping one representative per such state pattern therefore
//! decides order and axiom questions exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operators::{Node, OperatorExpr};
use crate::sets::{Element, Polarity, SentenceSet, Universe};

/// Sweeps larger than this many representatives are refused.
const STATE_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum State {
    Empty,
    Partial,
    Full,
}

#[derive(Debug)]
struct Atom {
    /// Listed elements of the atom (all of it when finite).
    listed: Vec<Element>,
    infinite: bool,
    full: SentenceSet,
    partial: Option<SentenceSet>,
}

impl Atom {
    fn states(&self) -> &'static [State] {
        if self.partial.is_some() {
            &[State::Empty, State::Partial, State::Full]
        } else {
            &[State::Empty, State::Full]
        }
    }
}

pub(crate) struct Quotient {
    universe: Universe,
    atoms: Vec<Atom>,
}

/// Collect the parameter sets of an operator in the decidable class.
fn collect_params(op: &OperatorExpr, out: &mut Vec<SentenceSet>) -> Result<()> {
    match op.node() {
        Node::Identity | Node::Top => Ok(()),
        Node::Cxy { x, y } | Node::CPrime { x, y } => {
            out.push(x.clone());
            out.push(y.clone());
            Ok(())
        }
        Node::Meet(a, b) | Node::NaiveJoin(a, b) => {
            collect_params(a, out)?;
            collect_params(b, out)
        }
        Node::Compose { outer, inner } => {
            collect_params(outer, out)?;
            collect_params(inner, out)
        }
        Node::WeakJoin(..) => collect_params(&op.weak_join_closed_form()?, out),
        Node::SExample { .. } | Node::FromSystem(_) | Node::FromTable(_) => Err(Error::Undecidable),
    }
}

impl Quotient {
    pub(crate) fn for_operators(universe: &Universe, ops: &[&OperatorExpr]) -> Result<Self> {
        if universe.is_finite() {
            return Err(Error::CofiniteOnly("the atom quotient"));
        }
        let mut params = Vec::new();
        for op in ops {
            if let Some(u) = op.universe() {
                if u != universe {
                    return Err(Error::UniverseMismatch);
                }
            }
            collect_params(op, &mut params)?;
        }
        Ok(Self::new(universe, &params))
    }

    fn new(universe: &Universe, params: &[SentenceSet]) -> Self {
        let mut explicit: Vec<Element> = params.iter().flat_map(|p| p.listed()).collect();
        explicit.sort_unstable();
        explicit.dedup();
        let outer_sig: Vec<bool> = params
            .iter()
            .map(|p| p.polarity() == Polarity::Negative)
            .collect();
        let mut groups: BTreeMap<Vec<bool>, Vec<Element>> = BTreeMap::new();
        groups.entry(outer_sig.clone()).or_default();
        for &e in &explicit {
            let sig = params.iter().map(|p| p.contains(e)).collect();
            groups.entry(sig).or_default().push(e);
        }
        let fresh = (0..)
            .find(|e| explicit.binary_search(e).is_err())
            .unwrap_or(0);
        let mut atoms: Vec<Atom> = groups
            .into_iter()
            .filter_map(|(sig, listed)| {
                let infinite = sig == outer_sig;
                if infinite {
                    let outside: Vec<Element> = explicit
                        .iter()
                        .copied()
                        .filter(|e| listed.binary_search(e).is_err())
                        .collect();
                    let min = listed.first().copied().unwrap_or(fresh).min(fresh);
                    Some(Atom {
                        full: universe.cofinite_set(outside).expect("cofinite universe"),
                        partial: Some(universe.set([min]).expect("cofinite universe")),
                        listed,
                        infinite,
                    })
                } else if listed.is_empty() {
                    None
                } else {
                    Some(Atom {
                        full: universe.set(listed.clone()).expect("cofinite universe"),
                        partial: (listed.len() >= 2)
                            .then(|| universe.set([listed[0]]).expect("cofinite universe")),
                        listed,
                        infinite,
                    })
                }
            })
            .collect();
        atoms.sort_by_key(|a| {
            a.partial
                .as_ref()
                .and_then(|p| p.min_element())
                .or_else(|| a.listed.first().copied())
        });
        Quotient {
            universe: universe.clone(),
            atoms,
        }
    }

    fn rep(&self, states: &[State]) -> SentenceSet {
        let mut out = self.universe.empty();
        for (atom, s) in self.atoms.iter().zip(states) {
            let part = match s {
                State::Empty => continue,
                State::Partial => atom
                    .partial
                    .as_ref()
                    .expect("partial state needs two elements"),
                State::Full => &atom.full,
            };
            out = out.union(part).expect("same universe");
        }
        out
    }

    fn state_count(&self) -> u64 {
        self.atoms
            .iter()
            .map(|a| a.states().len() as u64)
            .try_fold(1u64, |acc, k| acc.checked_mul(k))
            .unwrap_or(u64::MAX)
    }

    fn check_budget(&self, count: u64) -> Result<()> {
        if count > STATE_BUDGET {
            Err(Error::SweepTooLarge {
                size: self.atoms.len(),
                limit: STATE_BUDGET.trailing_zeros() as usize,
            })
        } else {
            Ok(())
        }
    }

    /// Every admissible state vector, in mixed-radix order.
    fn state_vectors(&self) -> Result<Vec<Vec<State>>> {
        self.check_budget(self.state_count())?;
        let mut out = vec![Vec::with_capacity(self.atoms.len())];
        for atom in &self.atoms {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    atom.states().iter().map(move |&s| {
                        let mut v = prefix.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Representative sets covering every state pattern.
    pub(crate) fn representatives(&self) -> Result<Vec<SentenceSet>> {
        Ok(self.state_vectors()?.iter().map(|s| self.rep(s)).collect())
    }

    /// First representative `A` with `a(A) ⊄ b(A)`.
    pub(crate) fn le_witness(
        &self,
        a: &OperatorExpr,
        b: &OperatorExpr,
    ) -> Result<Option<SentenceSet>> {
        for x in self.representatives()? {
            if !a.eval(&x)?.is_subset(&b.eval(&x)?)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Axiom (i): first representative that is not mapped extensively and
    /// idempotently; the flag tells which part failed.
    pub(crate) fn extensive_idempotent(
        &self,
        op: &OperatorExpr,
    ) -> Result<Option<(SentenceSet, SentenceSet, bool)>> {
        for x in self.representatives()? {
            let img = op.eval(&x)?;
            if !x.is_subset(&img)? {
                return Ok(Some((x, img, false)));
            }
            if op.eval(&img)? != img {
                return Ok(Some((x, img, true)));
            }
        }
        Ok(None)
    }

    /// Axiom (ii): first pair `A ⊆ H` of representatives with `C(A) ⊄ C(H)`.
    pub(crate) fn monotone(&self, op: &OperatorExpr) -> Result<Option<(SentenceSet, SentenceSet)>> {
        let per_atom: Vec<Vec<(State, State)>> = self
            .atoms
            .iter()
            .map(|a| {
                let st = a.states();
                st.iter()
                    .flat_map(|&lo| {
                        st.iter()
                            .filter(move |&&hi| lo <= hi)
                            .map(move |&hi| (lo, hi))
                    })
                    .collect()
            })
            .collect();
        let count = per_atom
            .iter()
            .try_fold(1u64, |acc, p| acc.checked_mul(p.len() as u64))
            .unwrap_or(u64::MAX);
        self.check_budget(count)?;
        let mut pairs: Vec<(Vec<State>, Vec<State>)> = vec![(Vec::new(), Vec::new())];
        for options in &per_atom {
            pairs = pairs
                .into_iter()
                .flat_map(|(lo, hi)| {
                    options.iter().map(move |&(l, h)| {
                        let (mut lo, mut hi) = (lo.clone(), hi.clone());
                        lo.push(l);
                        hi.push(h);
                        (lo, hi)
                    })
                })
                .collect();
        }
        for (lo, hi) in pairs {
            let (a, h) = (self.rep(&lo), self.rep(&hi));
            if !op.eval(&a)?.is_subset(&op.eval(&h)?)? {
                return Ok(Some((a, h)));
            }
        }
        Ok(None)
    }

    /// Axiom (iii): first `(X, z)` with `z ∈ C(X)` but `z ∉ C(F)` for every
    /// finite `F ⊆ X`.
    ///
    /// `z ∈ X` is always reached through `F = {z}`, so only atoms added by
    /// `C` matter. A finite subset of `X` can realise any state pattern below
    /// that of `X` except covering an infinite atom; when `monotone` is set
    /// the largest such pattern suffices.
    pub(crate) fn finitary(
        &self,
        op: &OperatorExpr,
        monotone: bool,
    ) -> Result<Option<(SentenceSet, Element)>> {
        for s in self.state_vectors()? {
            let x = self.rep(&s);
            let cx = op.eval(&x)?;
            for (i, atom) in self.atoms.iter().enumerate() {
                if s[i] == State::Full || !atom.full.is_subset(&cx)? {
                    continue;
                }
                let derivable = if monotone {
                    let t: Vec<State> = self
                        .atoms
                        .iter()
                        .zip(&s)
                        .map(|(a, &st)| {
                            if a.infinite && st == State::Full {
                                State::Partial
                            } else {
                                st
                            }
                        })
                        .collect();
                    atom.full.is_subset(&op.eval(&self.rep(&t))?)?
                } else {
                    self.below(&s)
                        .iter()
                        .map(|t| atom.full.is_subset(&op.eval(&self.rep(t))?))
                        .collect::<Result<Vec<bool>>>()?
                        .into_iter()
                        .any(|b| b)
                };
                if !derivable {
                    let z = atom
                        .full
                        .difference(&x)?
                        .min_element()
                        .expect("atom not covered by X");
                    return Ok(Some((x, z)));
                }
            }
        }
        Ok(None)
    }

    /// State patterns of finite subsets of a set with pattern `s`.
    fn below(&self, s: &[State]) -> Vec<Vec<State>> {
        let mut out = vec![Vec::new()];
        for (atom, &top) in self.atoms.iter().zip(s) {
            let options: Vec<State> = atom
                .states()
                .iter()
                .copied()
                .filter(|&st| st <= top && !(atom.infinite && st == State::Full))
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&st| {
                        let mut v: Vec<State> = prefix.clone();
                        v.push(st);
                        v
                    })
                })
                .collect();
        }
        out
    }
}
