use proptest::prelude::*;

use tarski_lab::algebra::{equiv, le_witness};
use tarski_lab::classify::check_table;
use tarski_lab::grammar::parse_operator;
use tarski_lab::words::{class_of, decompositions, equivalent, join_words, word_of_seq, Alphabet};
use tarski_lab::{check_axioms, OperatorExpr, OperatorTable, Oracle, SentenceSet, Universe};

fn cofinite_set(u: &Universe, negative: bool, ids: Vec<u64>) -> SentenceSet {
    if negative {
        u.cofinite_set(ids).unwrap()
    } else {
        u.set(ids).unwrap()
    }
}

fn nat_set(span: u64) -> impl Strategy<Value = (bool, Vec<u64>)> {
    (any::<bool>(), prop::collection::vec(0..span, 0..4))
}

/// Membership on a window wide enough to see every listed element plus a
/// far point standing in for the tail.
fn window(s: &SentenceSet) -> Vec<bool> {
    (0..24).chain([1000]).map(|e| s.contains(e)).collect()
}

proptest! {
    #[test]
    fn set_boolean_laws(a in nat_set(20), b in nat_set(20), c in nat_set(20)) {
        let u = Universe::cofinite();
        let (a, b, c) = (cofinite_set(&u, a.0, a.1), cofinite_set(&u, b.0, b.1), cofinite_set(&u, c.0, c.1));
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(
            a.union(&b).unwrap().union(&c).unwrap(),
            a.union(&b.union(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.intersect(&b.union(&c).unwrap()).unwrap(),
            a.intersect(&b).unwrap().union(&a.intersect(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.union(&b).unwrap().complement(), a.complement().intersect(&b.complement()).unwrap());
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.difference(&b).unwrap(), a.intersect(&b.complement()).unwrap());
        prop_assert_eq!(a.is_subset(&b).unwrap(), a.union(&b).unwrap() == b);
        let (wa, wb) = (window(&a), window(&b));
        let wu: Vec<bool> = wa.iter().zip(&wb).map(|(x, y)| *x || *y).collect();
        prop_assert_eq!(window(&a.union(&b).unwrap()), wu);
    }

    #[test]
    fn finite_set_laws(x in 0u64..64, y in 0u64..64) {
        let u = Universe::letters(6).unwrap();
        let (a, b) = (u.from_mask(x).unwrap(), u.from_mask(y).unwrap());
        prop_assert_eq!(a.union(&b).unwrap().mask(), Some(x | y));
        prop_assert_eq!(a.intersect(&b).unwrap().mask(), Some(x & y));
        prop_assert_eq!(a.complement().mask(), Some(!x & 63));
        prop_assert_eq!(u.parse_set(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn word_join_laws(x in "[abc]{1,6}", y in "[abc]{1,6}", z in "[abc]{1,6}") {
        let a = Alphabet::new(['a', 'b', 'c']).unwrap();
        let (wx, wy, wz) = (a.word(&x).unwrap(), a.word(&y).unwrap(), a.word(&z).unwrap());
        let left = join_words(&join_words(&wx, &wy).unwrap(), &wz).unwrap();
        let right = join_words(&wx, &join_words(&wy, &wz).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.size(), wx.size() + wy.size() + wz.size());
        // cancellation on both sides
        let xy = join_words(&wx, &wy).unwrap();
        let xz = join_words(&wx, &wz).unwrap();
        prop_assert_eq!(xy == xz, wy == wz);
        let yx = join_words(&wy, &wx).unwrap();
        let zx = join_words(&wz, &wx).unwrap();
        prop_assert_eq!(yx == zx, wy == wz);
    }

    #[test]
    fn encode_round_trips_and_orders(x in "[abcd]{1,40}", y in "[abcd]{1,40}") {
        let a = Alphabet::new(['a', 'b', 'c', 'd']).unwrap();
        let (wx, wy) = (a.word(&x).unwrap(), a.word(&y).unwrap());
        prop_assert_eq!(a.decode(&wx.encode()), wx.clone());
        let shortlex = (x.len(), x.as_str()).cmp(&(y.len(), y.as_str()));
        prop_assert_eq!(wx.encode().cmp(&wy.encode()), shortlex);
    }

    #[test]
    fn weak_join_is_order_independent_and_least(i in 0usize..61, j in 0usize..61) {
        let oracle = Oracle::new(3, true).unwrap();
        let u = oracle.universe().clone();
        let ops: Vec<OperatorExpr> = oracle.operators().collect();
        let (a, b) = (&ops[i], &ops[j]);
        let ab = OperatorExpr::weak_join(a, b).unwrap();
        let ba = OperatorExpr::weak_join(b, a).unwrap();
        prop_assert!(equiv(&ab, &ba, &u).unwrap());
        // least superset closed under both operands
        let (ta, tb) = (&oracle.tables()[i], &oracle.tables()[j]);
        let tj = OperatorTable::tabulate(&ab, &u).unwrap();
        for x in 0..8u64 {
            let least = (0..8u64)
                .filter(|&z| x & !z == 0 && ta.image_mask(z) == z && tb.image_mask(z) == z)
                .fold(7, |acc, z| acc & z);
            prop_assert_eq!(tj.image_mask(x), least);
        }
        prop_assert!(check_axioms(&ab, &u, None).unwrap().is_finitary_consequence_operator());
    }

    #[test]
    fn table_verdicts_match_definitions(img in prop::collection::vec(0u64..8, 8)) {
        let u = Universe::letters(3).unwrap();
        let r = check_table(&OperatorTable::new(&u, img.clone()).unwrap());
        let i = (0..8u64).all(|x| x & !img[x as usize] == 0 && img[img[x as usize] as usize] == img[x as usize]);
        let ii = (0..8u64).all(|a| (0..8u64).filter(|h| a & !h == 0).all(|h| img[a as usize] & !img[h as usize] == 0));
        prop_assert_eq!(r.axiom_i.passed(), i);
        prop_assert_eq!(r.axiom_ii.passed(), ii);
        if let Some(w) = r.axiom_i.witness() {
            let x = w.set.mask().unwrap();
            prop_assert!(x & !img[x as usize] != 0 || img[img[x as usize] as usize] != img[x as usize]);
        }
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Identity,
    Top,
    Cxy((bool, Vec<u64>), (bool, Vec<u64>)),
    CPrime((bool, Vec<u64>), (bool, Vec<u64>)),
    Meet(Box<Shape>, Box<Shape>),
    Join(Box<Shape>, Box<Shape>),
    Comp(Box<Shape>, Box<Shape>),
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![
        Just(Shape::Identity),
        Just(Shape::Top),
        (nat_set(6), nat_set(6)).prop_map(|(x, y)| Shape::Cxy(x, y)),
        (nat_set(6), nat_set(6)).prop_map(|(x, y)| Shape::CPrime(x, y)),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Meet(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Join(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Shape::Comp(Box::new(a), Box::new(b))),
        ]
    })
}

fn build(u: &Universe, s: &Shape) -> OperatorExpr {
    let set = |p: &(bool, Vec<u64>)| cofinite_set(u, p.0, p.1.clone());
    match s {
        Shape::Identity => OperatorExpr::identity(),
        Shape::Top => OperatorExpr::top(),
        Shape::Cxy(x, y) => OperatorExpr::cxy(set(x), set(y)).unwrap(),
        Shape::CPrime(x, y) => OperatorExpr::cprime(set(x), set(y)).unwrap(),
        Shape::Meet(a, b) => OperatorExpr::meet(&build(u, a), &build(u, b)).unwrap(),
        Shape::Join(a, b) => OperatorExpr::naive_join(&build(u, a), &build(u, b)).unwrap(),
        Shape::Comp(a, b) => OperatorExpr::compose(&build(u, a), &build(u, b)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cofinite_order_is_sound(a in shape(), b in shape(), probes in prop::collection::vec(nat_set(9), 12)) {
        let u = Universe::cofinite();
        let (a, b) = (build(&u, &a), build(&u, &b));
        match le_witness(&a, &b, &u).unwrap() {
            Some(w) => prop_assert!(!a.eval(&w).unwrap().is_subset(&b.eval(&w).unwrap()).unwrap()),
            None => {
                for (neg, ids) in probes {
                    let x = cofinite_set(&u, neg, ids);
                    prop_assert!(a.eval(&x).unwrap().is_subset(&b.eval(&x).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn cofinite_axiom_verdicts_are_sound(s in shape(), probes in prop::collection::vec((nat_set(9), nat_set(9)), 12)) {
        let u = Universe::cofinite();
        let op = build(&u, &s);
        let r = check_axioms(&op, &u, None).unwrap();
        if let Some(w) = r.axiom_i.witness() {
            let img = op.eval(&w.set).unwrap();
            prop_assert!(!w.set.is_subset(&img).unwrap() || op.eval(&img).unwrap() != img);
        }
        if let Some(w) = r.axiom_ii.witness() {
            prop_assert!(w.smaller.is_subset(&w.larger).unwrap());
            prop_assert!(!op.eval(&w.smaller).unwrap().is_subset(&op.eval(&w.larger).unwrap()).unwrap());
        }
        for ((n1, i1), (n2, i2)) in probes {
            let x = cofinite_set(&u, n1, i1);
            let y = x.union(&cofinite_set(&u, n2, i2)).unwrap();
            let (cx, cy) = (op.eval(&x).unwrap(), op.eval(&y).unwrap());
            if r.axiom_i.passed() {
                prop_assert!(x.is_subset(&cx).unwrap());
                prop_assert_eq!(op.eval(&cx).unwrap(), cx.clone());
            }
            if r.axiom_ii.passed() {
                prop_assert!(cx.is_subset(&cy).unwrap());
            }
            if r.axiom_ii.passed() && r.axiom_iii.passed() {
                // parameters live below 9, so a finite prefix of X suffices
                let prefix = x.intersect(&u.set(0..20).unwrap()).unwrap();
                let cf = op.eval(&prefix).unwrap();
                for z in (0..12).filter(|&z| cx.contains(z)) {
                    prop_assert!(cf.contains(z), "{} not derivable from {} in {}", z, prefix, op);
                }
            }
        }
        if let Some(w) = r.axiom_iii.witness() {
            prop_assert!(op.eval(&w.set).unwrap().contains(w.element_id));
        }
    }

    #[test]
    fn display_parses_back(s in shape()) {
        let u = Universe::cofinite();
        let op = build(&u, &s);
        let text = op.to_string();
        prop_assert_eq!(parse_operator(&text, &u).unwrap().to_string(), text);
    }
}

#[test]
fn subword_equivalence_is_an_equivalence() {
    let a = Alphabet::new(['a', 'b']).unwrap();
    let mut population = Vec::new();
    for w in a.words_up_to(4) {
        for k in 0..w.size() {
            for f in decompositions(&w, k).unwrap() {
                assert_eq!(word_of_seq(&f), w);
                assert_eq!(class_of(&f).size, w.size());
                population.push(f);
            }
        }
    }
    let n = population.len();
    let rel: Vec<Vec<bool>> = population
        .iter()
        .map(|f| {
            population
                .iter()
                .map(|g| equivalent(f, g).unwrap())
                .collect()
        })
        .collect();
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            assert_eq!(
                rel[i][j],
                word_of_seq(&population[i]) == word_of_seq(&population[j])
            );
            if rel[i][j] {
                for (jk, ik) in rel[j].iter().zip(&rel[i]) {
                    assert!(!jk || *ik);
                }
            }
        }
    }
}
