//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tarski_lab::algebra::{descending_chain, equiv, le, relative_complement, sublattice_cb};
use tarski_lab::classify::{
    check_axioms, check_table, dense_cover_check, e0_family, enumerate_operators, is_atom,
    lemma26_table, CheckMode,
};
use tarski_lab::concurrence::{is_concurrent, monotone_union_check};
use tarski_lab::demo::{run_demo, DemoOptions};
use tarski_lab::words::{
    count_decompositions, count_decompositions_k, decompositions, equivalent, Alphabet, PartialSeq,
};
use tarski_lab::{OperatorExpr, OperatorTable, Oracle, SentenceSet, Universe};

type Outcome = Result<String, String>;

fn l3() -> Universe {
    Universe::letters(3).unwrap()
}

fn subsets(u: &Universe) -> Vec<SentenceSet> {
    let n = u.size().unwrap();
    (0..1u64 << n).map(|m| u.from_mask(m).unwrap()).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?}"))
}

/// Images of `f` over every subset mask of an `n`-symbol universe.
fn images(n: usize, f: impl Fn(u64) -> u64) -> Vec<u64> {
    (0..1u64 << n).map(f).collect()
}

/// Closure axioms straight from the definitions; on a finite carrier (iii)
/// is `C(X) = ∪ {C(F) | F ⊆ X}`.
fn oracle_axioms(img: &[u64]) -> (bool, bool, bool) {
    let size = img.len() as u64;
    let i = (0..size)
        .all(|x| x & !img[x as usize] == 0 && img[img[x as usize] as usize] == img[x as usize]);
    let ii = (0..size).all(|a| {
        (0..size)
            .filter(|h| a & !h == 0)
            .all(|h| img[a as usize] & !img[h as usize] == 0)
    });
    let iii = (0..size).all(|x| {
        let mut union = 0;
        let mut f = x;
        loop {
            union |= img[f as usize];
            if f == 0 {
                break;
            }
            f = (f - 1) & x;
        }
        union == img[x as usize]
    });
    (i, ii, iii)
}

fn c1_parametric() -> Outcome {
    let start = Instant::now();
    let u = l3();
    let all = subsets(&u);
    let mut checked = 0;
    for x in &all {
        for y in &all {
            let (xm, ym) = (x.mask().unwrap(), y.mask().unwrap());
            let cxy = OperatorExpr::cxy(x.clone(), y.clone()).map_err(|e| e.to_string())?;
            let cp = OperatorExpr::cprime(x.clone(), y.clone()).map_err(|e| e.to_string())?;
            for (op, expected) in [
                (&cxy, images(3, |a| if a & ym != 0 { a | xm } else { a })),
                (&cp, images(3, |a| if ym & !a == 0 { a | xm } else { a })),
            ] {
                let r = check_axioms(op, &u, None).map_err(|e| e.to_string())?;
                ensure(r.is_finitary_consequence_operator(), format!("{op} fails"))?;
                ensure(
                    oracle_axioms(&expected) == (true, true, true),
                    format!("oracle rejects {op}"),
                )?;
                let table = OperatorTable::tabulate(op, &u).map_err(|e| e.to_string())?;
                ensure(
                    table.images() == expected.as_slice(),
                    format!("{op} evaluates wrongly"),
                )?;
                checked += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{checked} operators pass (i)-(iii), {t}"))
}

fn c2_cofinite_caveat() -> Outcome {
    let n = Universe::cofinite();
    let op = OperatorExpr::cprime(n.set([0]).unwrap(), n.cofinite_set([0]).unwrap()).unwrap();
    let r = check_axioms(&op, &n, None).map_err(|e| e.to_string())?;
    let w = r
        .axiom_iii
        .witness()
        .ok_or("cprime {0} co{0} passed (iii)")?;
    ensure(
        w.set == n.cofinite_set([0]).unwrap() && w.element_id == 0,
        format!("witness {w:?}"),
    )?;
    ensure(r.is_consequence_operator(), "(i)/(ii) should hold")?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let x: Vec<u64> = (0..rng.gen_range(0..5))
            .map(|_| rng.gen_range(0..12))
            .collect();
        let y: Vec<u64> = (0..rng.gen_range(0..5))
            .map(|_| rng.gen_range(0..12))
            .collect();
        let y = n.set(y).unwrap();
        ensure(y.len().unwrap() <= 4, "sampled guard too large")?;
        let op = OperatorExpr::cprime(n.set(x).unwrap(), y).unwrap();
        let r = check_axioms(&op, &n, None).map_err(|e| e.to_string())?;
        ensure(
            r.mode == CheckMode::ClosedForm,
            format!("{op}: mode {:?}", r.mode),
        )?;
        ensure(
            r.is_finitary_consequence_operator(),
            format!("{op} should pass"),
        )?;
    }
    Ok("witness (co{0}, 0); 50 finite-guard samples pass in closed form".into())
}

/// Closure operators on `n ≤ 3` symbols by brute force over extensive tables.
fn brute_force_count(n: usize) -> usize {
    let size = 1usize << n;
    let full = (size - 1) as u64;
    let mut img = vec![0u64; size];
    fn go(x: usize, img: &mut Vec<u64>, full: u64, count: &mut usize) {
        if x == img.len() {
            let (i, ii, _) = oracle_axioms(img);
            *count += usize::from(i && ii);
            return;
        }
        let free = full & !(x as u64);
        let mut extra = free;
        loop {
            img[x] = x as u64 | extra;
            go(x + 1, img, full, count);
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
    }
    let mut count = 0;
    go(0, &mut img, full, &mut count);
    count
}

fn c3_enumeration() -> Outcome {
    let expected = [2usize, 7, 61, 2480];
    for (n, &want) in (1..=4).zip(&expected) {
        let start = Instant::now();
        let got = enumerate_operators(n, true)
            .map_err(|e| e.to_string())?
            .len();
        ensure(
            got == want,
            format!("n = {n}: {got} systems, expected {want}"),
        )?;
        if n == 4 {
            within(start, Duration::from_secs(10))?;
        }
        if n <= 3 {
            let brute = brute_force_count(n);
            ensure(brute == want, format!("n = {n}: brute force gives {brute}"))?;
        }
    }
    Ok("2, 7, 61, 2480".into())
}

fn c4_atoms() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        let oracle = Oracle::new(n, true).map_err(|e| e.to_string())?;
        let family = e0_family(oracle.universe()).map_err(|e| e.to_string())?;
        for op in &family {
            ensure(
                is_atom(op, &oracle).map_err(|e| e.to_string())?,
                format!("{op} is not an atom"),
            )?;
            let fixed = OperatorTable::tabulate(op, oracle.universe())
                .unwrap()
                .fixed_points()
                .len();
            ensure(
                fixed == (1 << n) - 1,
                format!("{op} should close all but one set"),
            )?;
        }
        let cover = dense_cover_check(&oracle, &family).map_err(|e| e.to_string())?;
        ensure(
            cover.holds,
            format!("n = {n}: dense cover fails at {:?}", cover.uncovered),
        )?;
        counts.push(cover.axiomatic_checked);
    }
    Ok(format!(
        "all co-singleton operators are atoms; axiomatic covered: {counts:?}"
    ))
}

fn c5_lemma26() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        for sys in enumerate_operators(n, true).map_err(|e| e.to_string())? {
            let t = sys.to_table().unwrap();
            if t.image_mask(0) == 0 {
                continue;
            }
            let x = lemma26_table(&t).map_err(|e| format!("n = {n}: {e}"))?;
            let full = t.full_mask();
            ensure(
                t.image_mask(full & !(1 << x)) == full,
                "witness does not generate L",
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} axiomatic operators, zero failures"))
}

fn golden(name: &str) -> serde_json::Value {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

fn c6_examples() -> Outcome {
    let u = l3();
    let cp = OperatorExpr::cprime(u.set([1]).unwrap(), u.empty()).unwrap();
    let s = OperatorExpr::s_example(u.set([0]).unwrap(), 1).unwrap();

    let join = OperatorExpr::naive_join(&cp, &s).unwrap();
    let r = check_axioms(&join, &u, None).map_err(|e| e.to_string())?;
    let w = r.axiom_i.witness().ok_or("naive join passed (i)")?;
    ensure(w.set.is_empty(), format!("naive join witness {}", w.set))?;

    let comp = OperatorExpr::compose(&cp, &s).unwrap();
    let r = check_axioms(&comp, &u, None).map_err(|e| e.to_string())?;
    ensure(!r.axiom_i.passed(), "composition passed (i)")?;
    let m = u.set([0]).unwrap();
    let cm = comp.eval(&m).unwrap();
    let ccm = comp.eval(&cm).unwrap();
    ensure(
        cm == u.set([0, 1]).unwrap() && ccm == u.full(),
        "M = {a} is not a witness",
    )?;

    for name in ["example-2.8", "example-3.4"] {
        let report = run_demo(name, &DemoOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.demonstrated, format!("{name} not demonstrated"))?;
        ensure(
            serde_json::to_value(&report).unwrap() == golden(name),
            format!("{name} differs from golden"),
        )?;
    }
    Ok("witnesses {} and {a}; golden reports match".into())
}

fn c7_sublattice() -> Outcome {
    let start = Instant::now();
    let u = l3();
    let r = sublattice_cb(&u.set([1]).unwrap(), &subsets(&u)).map_err(|e| e.to_string())?;
    ensure(r.inf_closed_form && r.sup_closed_form, "closed forms fail")?;
    ensure(r.joins_agree, "naive and weak joins differ")?;
    ensure(
        r.distributive && r.triples_checked == 512,
        "distributivity fails",
    )?;
    let w = r.non_chain.ok_or("no non-chain witness")?;
    let (a, d) = (u.set([0, 1]).unwrap(), u.set([2]).unwrap());
    ensure(w.a == a && w.d == d, "unexpected A/D")?;
    let ca = OperatorExpr::cxy(a, u.set([1]).unwrap()).unwrap();
    let cd = OperatorExpr::cxy(d, u.set([1]).unwrap()).unwrap();
    ensure(
        !le(&ca, &cd, &u).unwrap() && !le(&cd, &ca, &u).unwrap(),
        "A/D operators comparable",
    )?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "{} subfamilies, {} pairs, {} triples, {t}",
        r.subfamilies_checked, r.pairs_checked, r.triples_checked
    ))
}

fn c8_complement() -> Outcome {
    let u = l3();
    let c = OperatorExpr::cxy(u.set([0]).unwrap(), u.set([1]).unwrap()).unwrap();
    let c1 = OperatorExpr::cxy(u.set([0, 2]).unwrap(), u.set([1]).unwrap()).unwrap();
    let want = OperatorExpr::cxy(u.set([2]).unwrap(), u.set([1]).unwrap()).unwrap();
    let rc = relative_complement(&c, &c1, &u, false).map_err(|e| e.to_string())?;
    ensure(
        equiv(&rc.candidate, &want, &u).unwrap(),
        format!("candidate {}", rc.candidate),
    )?;
    ensure(rc.lattice_check, "lattice check fails")?;

    let tc = OperatorTable::tabulate(&c, &u).unwrap();
    let tc1 = OperatorTable::tabulate(&c1, &u).unwrap();
    let tw = OperatorTable::tabulate(&want, &u).unwrap();
    let oracle = Oracle::new(3, true).unwrap();
    let mut found = 0;
    for d in oracle.tables() {
        let complement = (0..8u64).all(|a| {
            let (x, y) = (tc.image_mask(a), d.image_mask(a));
            x | y == tc1.image_mask(a) && x & y == a
        });
        if complement {
            ensure(d.images() == tw.images(), "a second complement exists")?;
            found += 1;
        }
    }
    ensure(found == 1, format!("{found} complements among 61"))?;
    Ok("complement is cxy {c} {b}, unique among 61".into())
}

fn c9_composition_order() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::new(3, true).unwrap();
    let u = oracle.universe().clone();
    let ops: Vec<OperatorExpr> = oracle.operators().collect();
    let mut discrepancies = 0;
    for a in &ops {
        for b in &ops {
            let ordered = le(a, b, &u).map_err(|e| e.to_string())?;
            let absorbed =
                equiv(&OperatorExpr::compose(b, a).unwrap(), b, &u).map_err(|e| e.to_string())?;
            discrepancies += usize::from(ordered != absorbed);
        }
    }
    ensure(discrepancies == 0, format!("{discrepancies} discrepancies"))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} pairs, zero discrepancies, {t}",
        ops.len() * ops.len()
    ))
}

fn c10_descending() -> Outcome {
    let start = Instant::now();
    let n = Universe::cofinite();
    let chain = descending_chain(&n, 100).map_err(|e| e.to_string())?;
    ensure(chain.len() == 100, "wrong length")?;
    let zero = n.set([0]).unwrap();
    let probe = n.set([0, 1]).unwrap();
    for (k, pair) in chain.windows(2).enumerate() {
        ensure(
            le(&pair[1], &pair[0], &n).unwrap(),
            format!("link {k} not ≤"),
        )?;
        // C_k({0}) contains k + 1, C_{k+1}({0}) does not
        let next = k as u64 + 2;
        ensure(
            pair[0].eval(&zero).unwrap().contains(next)
                && !pair[1].eval(&zero).unwrap().contains(next),
            format!("link {k} not strict"),
        )?;
    }
    for op in &chain {
        ensure(
            op.eval(&probe).unwrap() != probe,
            format!("{op} fixes {{0,1}}"),
        )?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("100 strictly descending links, no identity, {t}"))
}

fn c11_finite_collapse() -> Outcome {
    let u = l3();
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let mut sampled = 0;
    let mut monotone = 0;
    while sampled < 10_000 {
        let img: Vec<u64> = (0..8u64).map(|x| x | rng.gen_range(0..8)).collect();
        if !img.iter().all(|&y| img[y as usize] == y) {
            continue;
        }
        sampled += 1;
        let r = check_table(&OperatorTable::new(&u, img.clone()).unwrap());
        let (_, ii, iii) = oracle_axioms(&img);
        ensure(
            r.axiom_ii.passed() == ii && r.axiom_iii.passed() == iii,
            "library disagrees with oracle",
        )?;
        ensure(
            ii == iii,
            format!("(ii) = {ii} but (iii) = {iii} for {img:?}"),
        )?;
        monotone += usize::from(ii);
    }
    Ok(format!(
        "{sampled} samples ({monotone} monotone), (ii) = (iii) throughout"
    ))
}

fn c12_words() -> Outcome {
    let a = Alphabet::new(['a', 'b', 'c']).unwrap();
    let mut rank = 0u32;
    for len in 1..=4u32 {
        for r in 0..3usize.pow(len) {
            let text: String = (0..len)
                .rev()
                .map(|i| ['a', 'b', 'c'][r / 3usize.pow(i) % 3])
                .collect();
            let w = a.word(&text).unwrap();
            let code = w.encode();
            ensure(
                code == BigUint::from(rank),
                format!("{text} encodes to {code}, listed at {rank}"),
            )?;
            ensure(a.decode(&code) == w, format!("{text} does not round-trip"))?;
            rank += 1;
        }
    }
    let m = Alphabet::of_text("mathematics").unwrap();
    let w = m.word("mathematics").unwrap();
    ensure(
        count_decompositions(&w) == BigUint::from(1024u32),
        "total count",
    )?;
    ensure(
        count_decompositions_k(&w, 3) == BigUint::from(120u32),
        "k = 3 count",
    )?;
    let streamed: usize = (0..11)
        .map(|k| decompositions(&w, k).unwrap().count())
        .sum();
    ensure(streamed == 1024, format!("streamed {streamed}"))?;
    let parts: Vec<_> = ["math", "e", "mat", "ics"]
        .iter()
        .map(|p| m.word(p).unwrap())
        .collect();
    let f = PartialSeq::from_subwords(&parts).unwrap();
    let f0 = PartialSeq::from_subwords(&[w]).unwrap();
    ensure(
        equivalent(&f, &f0).unwrap(),
        "math|e|mat|ics is not ~ mathematics",
    )?;
    Ok(format!(
        "{rank} words round-trip; 1024 / 120 decompositions; math|e|mat|ics ~ mathematics"
    ))
}

fn c13_skeleton() -> Outcome {
    let oracle = Oracle::new(3, true).unwrap();
    let all = subsets(oracle.universe());
    let mut checks = 0;
    for op in oracle.operators() {
        for x in &all {
            for y in &all {
                let r = monotone_union_check(&op, &[x.clone(), y.clone()])
                    .map_err(|e| e.to_string())?;
                ensure(r.holds, format!("{op} at {x}, {y}"))?;
                checks += 1;
            }
        }
    }
    let chain: Vec<u8> = (0..5).collect();
    let le_pairs: Vec<(u8, u8)> = (0..5).flat_map(|x| (x..5).map(move |y| (x, y))).collect();
    let lt_pairs: Vec<(u8, u8)> = (0..5)
        .flat_map(|x| (x + 1..5).map(move |y| (x, y)))
        .collect();
    ensure(
        is_concurrent(&le_pairs, &chain).unwrap().holds(),
        "≤ not concurrent",
    )?;
    ensure(
        !is_concurrent(&lt_pairs, &chain).unwrap().holds(),
        "< concurrent",
    )?;
    Ok(format!("{checks} union checks; ≤ concurrent, < not"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: BTreeMap<u32, Criterion> = BTreeMap::from([
        (
            1,
            (
                "parametric operators on three symbols",
                c1_parametric as fn() -> Outcome,
            ),
        ),
        (2, ("cprime caveat on the naturals", c2_cofinite_caveat)),
        (3, ("closure system counts", c3_enumeration)),
        (4, ("co-singleton atoms and dense cover", c4_atoms)),
        (5, ("co-singleton generation of L", c5_lemma26)),
        (6, ("naive join and composition failures", c6_examples)),
        (7, ("guarded sublattice", c7_sublattice)),
        (8, ("relative complement", c8_complement)),
        (9, ("order by composition", c9_composition_order)),
        (10, ("descending chain on the naturals", c10_descending)),
        (
            11,
            (
                "monotone iff finitary for finite tables",
                c11_finite_collapse,
            ),
        ),
        (12, ("word encoding and decompositions", c12_words)),
        (13, ("monotone union and concurrence", c13_skeleton)),
    ]);
    let mut failed = 0;
    for (id, (name, run)) in &criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(detail)) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: panicked");
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
