//! Command-line front end.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict (the
//! report carries the witness), 2 for usage and input errors.

mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::algebra::{descending_chain, is_chain, le_witness, relative_complement, sublattice_cb};
use crate::classify::{
    check_axioms, dense_cover_check, e0_family, enumerate_operators_with_workers, is_atom,
    lemma26_witness, Oracle, DEFAULT_BOUND,
};
use crate::concurrence::is_concurrent;
use crate::demo::{run_demo, DemoOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::grammar::{parse_universe, SpecFile};
use crate::operators::{OperatorExpr, OperatorTable};
use crate::sets::{SentenceSet, SubsetBound, Universe};
use crate::words::{
    class_of, count_decompositions_k, decompositions, equivalent, Alphabet, PartialSeq, Word,
};

use format::{axiom_lines, describe_universe, set_list};

pub const SEED_VAR: &str = "TARSKI_LAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "tarski-lab",
    version,
    about = "Consequence operators: checks, lattice algebra, enumeration"
)]
pub struct Cli {
    /// Spec file declaring the universe, named sets and operators.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Inline universe: `a, b, c`, `letters 4` or `cofinite` (default `a, b, c`).
    #[arg(long, global = true, value_name = "DECL")]
    pub universe: Option<String>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    pub workers: usize,
    /// Admit the inconsistent operator U where it is excluded by default.
    #[arg(long, global = true)]
    pub include_top: bool,
    /// Size cap for the bounded search on the cofinite universe.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms (i)-(iii) for an operator.
    Check { operator: String },
    /// Decide A ≤ B.
    Order { a: String, b: String },
    /// Pointwise meet.
    Meet { a: String, b: String },
    /// Weak join (least common upper bound).
    Wjoin { a: String, b: String },
    /// Complement of C relative to C1.
    Complement { c: String, c1: String },
    /// Decide whether the operators form a chain.
    Chain {
        #[arg(required = true)]
        operators: Vec<String>,
    },
    /// Lattice facts for the operators cxy X B over the given generators X.
    Sublattice {
        guard: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// The strictly descending chain cxy co{1..k} {0} on the naturals.
    Descend {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Count (and optionally list) all consequence operators on n symbols.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
    /// Atom and dense-cover checks for the co-singleton family.
    Atoms {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Least x with C(L - {x}) = L for an axiomatic operator.
    Lemma26 { operator: String },
    /// Deductive systems (fixed points) of an operator.
    Theories { operator: String },
    /// Word encoding, decompositions and the subword equivalence.
    Words {
        /// Alphabet symbols in encoding order (default: symbols of the input).
        #[arg(long, global = true)]
        alphabet: Option<String>,
        #[command(subcommand)]
        verb: WordsVerb,
    },
    /// Concurrence of a relation given as an edge list file (`x y` per line).
    Concurrent {
        edges: PathBuf,
        /// Comma-separated domain (default: every element of the relation).
        #[arg(long)]
        domain: Option<String>,
    },
    /// Run a named demonstration.
    Demo {
        name: String,
        /// Sampling seed (default: $TARSKI_LAB_SEED, else a fixed seed).
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordsVerb {
    Encode {
        word: String,
    },
    Decode {
        code: String,
    },
    /// Decompositions into k + 1 subwords.
    Split {
        word: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Class of a sequence written `w_n|...|w_0`.
    Classify {
        seq: String,
    },
    Equiv {
        f: String,
        g: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Done,
    Holds,
    Fails,
}

struct Outcome {
    status: Status,
    json: Value,
    text: String,
}

impl Outcome {
    fn verdict(holds: bool, json: Value, text: String) -> Self {
        let status = if holds { Status::Holds } else { Status::Fails };
        Outcome { status, json, text }
    }

    fn done(json: Value, text: String) -> Self {
        Outcome {
            status: Status::Done,
            json,
            text,
        }
    }
}

/// Parse `args` (including the program name), run, and write the report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("json")
                )
            } else {
                write!(out, "{}", outcome.text)
            };
            if written.is_err() {
                return 2;
            }
            match outcome.status {
                Status::Done | Status::Holds => 0,
                Status::Fails => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(cli: &Cli) -> Result<SpecFile> {
    match (&cli.spec, &cli.universe) {
        (Some(_), Some(_)) => Err(Error::Usage(
            "give either --spec or --universe, not both".into(),
        )),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            SpecFile::parse(&text)
        }
        (None, Some(decl)) => Ok(SpecFile::bare(parse_universe(decl)?)),
        (None, None) => Ok(SpecFile::bare(Universe::letters(3)?)),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { operator } => check(cli, operator),
        Command::Order { a, b } => order(cli, a, b),
        Command::Meet { a, b } => combine(cli, "meet", a, b),
        Command::Wjoin { a, b } => combine(cli, "wjoin", a, b),
        Command::Complement { c, c1 } => complement(cli, c, c1),
        Command::Chain { operators } => chain(cli, operators),
        Command::Sublattice { guard, generators } => sublattice(cli, guard, generators),
        Command::Descend { n } => descend(cli, *n),
        Command::Enumerate { n, list } => enumerate(cli, *n, *list),
        Command::Atoms { n } => atoms(cli, *n),
        Command::Lemma26 { operator } => lemma26(cli, operator),
        Command::Theories { operator } => theories(cli, operator),
        Command::Words { alphabet, verb } => words(alphabet.as_deref(), verb),
        Command::Concurrent { edges, domain } => concurrent(edges, domain.as_deref()),
        Command::Demo { name, seed } => demo(cli, name, *seed),
    }
}

fn bound(cli: &Cli) -> Option<SubsetBound> {
    cli.cap
        .map(|cap| SubsetBound::new(cap, DEFAULT_BOUND.horizon.max(cap)))
}

fn check(cli: &Cli, text: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let op = spec.resolve(text)?;
    let report = check_axioms(&op, &spec.universe, bound(cli))?;
    let holds = report.is_finitary_consequence_operator();
    let json = json!({
        "command": "check",
        "universe": describe_universe(&spec.universe),
        "operator": op.to_string(),
        "consequence_operator": report.is_consequence_operator(),
        "finitary": holds,
        "report": report,
    });
    let text = format!(
        "{op}\n{}{}\n",
        axiom_lines(&report),
        if holds {
            "finitary consequence operator"
        } else {
            "not a finitary consequence operator"
        }
    );
    Ok(Outcome::verdict(holds, json, text))
}

fn order(cli: &Cli, a: &str, b: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let (x, y) = (spec.resolve(a)?, spec.resolve(b)?);
    let ab = le_witness(&x, &y, &spec.universe)?;
    let ba = le_witness(&y, &x, &spec.universe)?;
    let mut text = format!("A = {x}\nB = {y}\n");
    match &ab {
        None => text.push_str("A ≤ B\n"),
        Some(w) => text.push_str(&format!(
            "A ≰ B: A(X) ⊄ B(X) at X = {w} (A(X) = {}, B(X) = {})\n",
            x.eval(w)?,
            y.eval(w)?
        )),
    }
    text.push_str(match (&ab, &ba) {
        (None, None) => "A ≡ B\n",
        (Some(_), Some(_)) => "incomparable\n",
        _ => "",
    });
    let json = json!({
        "command": "order",
        "a": x.to_string(),
        "b": y.to_string(),
        "le": ab.is_none(),
        "witness": ab,
        "ge": ba.is_none(),
        "equivalent": ab.is_none() && ba.is_none(),
    });
    Ok(Outcome::verdict(ab.is_none(), json, text))
}

fn closed_sets(op: &OperatorExpr, u: &Universe) -> Result<Option<Vec<SentenceSet>>> {
    if !u.is_finite() {
        return Ok(None);
    }
    let t = OperatorTable::tabulate(op, u)?;
    Ok(Some(
        t.fixed_points()
            .into_iter()
            .map(|m| u.from_mask(m))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn combine(cli: &Cli, name: &str, a: &str, b: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let (x, y) = (spec.resolve(a)?, spec.resolve(b)?);
    let result = if name == "meet" {
        OperatorExpr::meet(&x, &y)?
    } else {
        OperatorExpr::weak_join(&x, &y)?
    };
    let report = check_axioms(&result, &spec.universe, bound(cli))?;
    let closed = closed_sets(&result, &spec.universe)?;
    let mut text = format!("{result}\n");
    if let Some(c) = &closed {
        text.push_str(&format!("closed sets: {}\n", set_list(c)));
    }
    text.push_str(&axiom_lines(&report));
    let json = json!({
        "command": name,
        "result": result.to_string(),
        "closed_sets": closed,
        "report": report,
    });
    Ok(Outcome::done(json, text))
}

fn complement(cli: &Cli, c: &str, c1: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let (x, y) = (spec.resolve(c)?, spec.resolve(c1)?);
    let rc = relative_complement(&x, &y, &spec.universe, cli.include_top)?;
    let holds = rc.lattice_check && rc.verdict.is_finitary_consequence_operator();
    let closed = closed_sets(&rc.candidate, &spec.universe)?;
    let text = format!(
        "candidate: {}\nclosed sets: {}\n{}lattice check (C ∨ C′ = C1, C ∧ C′ = I): {}\n",
        rc.candidate,
        closed.as_deref().map(set_list).unwrap_or_default(),
        axiom_lines(&rc.verdict),
        if rc.lattice_check { "holds" } else { "fails" }
    );
    let json = json!({
        "command": "complement",
        "c": x.to_string(),
        "c1": y.to_string(),
        "candidate": rc.candidate.to_string(),
        "closed_sets": closed,
        "report": rc.verdict,
        "lattice_check": rc.lattice_check,
    });
    Ok(Outcome::verdict(holds, json, text))
}

fn chain(cli: &Cli, texts: &[String]) -> Result<Outcome> {
    let spec = load(cli)?;
    let ops = texts
        .iter()
        .map(|t| spec.resolve(t))
        .collect::<Result<Vec<_>>>()?;
    let v = is_chain(&ops, &spec.universe)?;
    let text = match &v.incomparable {
        None => format!("chain ({} pairs compared)\n", v.pairs_checked),
        Some(p) => format!(
            "not a chain: #{} and #{} are incomparable (at {} and {})\n",
            p.first, p.second, p.first_not_below, p.second_not_below
        ),
    };
    let json = json!({
        "command": "chain",
        "operators": ops.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "result": v,
    });
    Ok(Outcome::verdict(v.is_chain, json, text))
}

fn sublattice(cli: &Cli, guard: &str, generators: &[String]) -> Result<Outcome> {
    let spec = load(cli)?;
    let b = spec.resolve_set(guard)?;
    let gens = generators
        .iter()
        .map(|g| spec.resolve_set(g))
        .collect::<Result<Vec<_>>>()?;
    let r = sublattice_cb(&b, &gens)?;
    let mark = |ok: bool| if ok { "holds" } else { "fails" };
    let mut text = format!(
        "meets as cxy ∩X B: {}\nweak joins as cxy ∪X B: {}\nnaive = weak join on pairs: {}\ndistributive on triples: {}\ninf: {}\nsup: {}\n",
        mark(r.inf_closed_form),
        mark(r.sup_closed_form),
        mark(r.joins_agree),
        mark(r.distributive),
        r.inf_of_all,
        r.sup_of_all
    );
    if let Some(w) = &r.non_chain {
        text.push_str(&format!(
            "not a chain: at {} cxy {} B gives {} and cxy {} B gives {}\n",
            w.probe, w.a, w.image_a, w.d, w.image_d
        ));
    }
    let holds = r.all_hold();
    let json = json!({"command": "sublattice", "result": r});
    Ok(Outcome::verdict(holds, json, text))
}

fn descend(cli: &Cli, n: usize) -> Result<Outcome> {
    let universe = if cli.spec.is_some() || cli.universe.is_some() {
        load(cli)?.universe
    } else {
        Universe::cofinite()
    };
    let chain = descending_chain(&universe, n)?;
    let names: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
    let text = format!(
        "{}\n{} links, strictly descending, none equal to I\n",
        names.join("\n"),
        names.len()
    );
    Ok(Outcome::done(
        json!({"command": "descend", "n": n, "links": names}),
        text,
    ))
}

fn enumerate(cli: &Cli, n: usize, list: bool) -> Result<Outcome> {
    let systems = enumerate_operators_with_workers(n, true, cli.workers)?;
    let full = (1u64 << n) - 1;
    let shown: Vec<_> = systems
        .iter()
        .filter(|s| cli.include_top || s.masks() != [full])
        .collect();
    let count = systems.len();
    let mut text = format!(
        "n = {n}: {count} consequence operators ({} excluding U)\n",
        count - 1
    );
    let mut listing = Vec::new();
    if list {
        for s in &shown {
            let line = OperatorExpr::from_system((*s).clone()).to_string();
            text.push_str(&line);
            text.push('\n');
            listing.push(line);
        }
    }
    let mut json = json!({
        "command": "enumerate",
        "n": n,
        "count": count,
        "count_excluding_top": count - 1,
        "include_top": cli.include_top,
    });
    if list {
        json["systems"] = json!(listing);
    }
    Ok(Outcome::done(json, text))
}

fn atoms(cli: &Cli, n: usize) -> Result<Outcome> {
    let oracle = Oracle::with_workers(n, true, cli.workers)?;
    let family = e0_family(oracle.universe())?;
    let mut members = Vec::new();
    let mut text = String::new();
    for op in &family {
        let atom = is_atom(op, &oracle)?;
        text.push_str(&format!(
            "{op}: {}\n",
            if atom { "atom" } else { "not an atom" }
        ));
        members.push(json!({"operator": op.to_string(), "atom": atom}));
    }
    let cover = dense_cover_check(&oracle, &family)?;
    let all_atoms = members.iter().all(|m| m["atom"] == json!(true));
    text.push_str(&format!(
        "dense cover over {} axiomatic operators: {}\n",
        cover.axiomatic_checked,
        if cover.holds { "holds" } else { "fails" }
    ));
    let holds = all_atoms && cover.holds;
    let json = json!({"command": "atoms", "n": n, "members": members, "dense_cover": cover});
    Ok(Outcome::verdict(holds, json, text))
}

fn lemma26(cli: &Cli, text: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let op = spec.resolve(text)?;
    let x = lemma26_witness(&op, &spec.universe)?;
    let name = spec.universe.element_name(x);
    let rest = spec.universe.set([x])?.complement();
    let json =
        json!({"command": "lemma26", "operator": op.to_string(), "element": name, "set": rest});
    Ok(Outcome::done(
        json,
        format!("C({rest}) = L with x = {name}\n"),
    ))
}

fn theories(cli: &Cli, text: &str) -> Result<Outcome> {
    let spec = load(cli)?;
    let op = spec.resolve(text)?;
    let closed =
        closed_sets(&op, &spec.universe)?.ok_or(Error::FiniteOnly("listing deductive systems"))?;
    let text = format!(
        "{} deductive systems: {}\n",
        closed.len(),
        set_list(&closed)
    );
    let json = json!({"command": "theories", "operator": op.to_string(), "count": closed.len(), "systems": closed});
    Ok(Outcome::done(json, text))
}

fn alphabet_for(explicit: Option<&str>, inputs: &[&str]) -> Result<Alphabet> {
    match explicit {
        Some(a) => Alphabet::new(a.chars()),
        None => Alphabet::of_text(&inputs.concat().replace('|', "")),
    }
}

fn parse_seq(alphabet: &Alphabet, text: &str) -> Result<PartialSeq> {
    let parts = text
        .split('|')
        .map(|w| alphabet.word(w))
        .collect::<Result<Vec<Word>>>()?;
    PartialSeq::from_subwords(&parts)
}

fn words(alphabet: Option<&str>, verb: &WordsVerb) -> Result<Outcome> {
    match verb {
        WordsVerb::Encode { word } => {
            let a = alphabet_for(alphabet, &[word])?;
            let code = a.word(word)?.encode();
            let json = json!({"command": "words encode", "word": word, "code": code.to_string()});
            Ok(Outcome::done(json, format!("{code}\n")))
        }
        WordsVerb::Decode { code } => {
            let a = Alphabet::new(
                alphabet
                    .ok_or_else(|| Error::Usage("decode needs --alphabet".into()))?
                    .chars(),
            )?;
            let n: BigUint = code
                .parse()
                .map_err(|_| Error::Usage(format!("`{code}` is not a natural number")))?;
            let w = a.decode(&n);
            let json = json!({"command": "words decode", "code": code, "word": w});
            Ok(Outcome::done(json, format!("{w}\n")))
        }
        WordsVerb::Split { word, k, limit } => {
            let a = alphabet_for(alphabet, &[word])?;
            let w = a.word(word)?;
            let count = count_decompositions_k(&w, *k);
            let listed: Vec<String> = decompositions(&w, *k)?
                .take(*limit)
                .map(|f| f.to_string())
                .collect();
            let mut text = listed.join("\n");
            text.push_str(&format!(
                "\n{count} decompositions into {} subwords\n",
                k + 1
            ));
            let json = json!({
                "command": "words split",
                "word": word,
                "k": k,
                "count": count.to_string(),
                "sequences": listed,
            });
            Ok(Outcome::done(json, text))
        }
        WordsVerb::Classify { seq } => {
            let a = alphabet_for(alphabet, &[seq])?;
            let f = parse_seq(&a, seq)?;
            let class = class_of(&f);
            let json = json!({
                "command": "words classify",
                "sequence": f.to_string(),
                "arity": f.arity(),
                "word": class.word,
                "code": class.word.encode().to_string(),
                "size": class.size,
                "max_arity": class.max_arity(),
            });
            let text = format!(
                "[{f}] = [{}], size {}, representatives in T^0..T^{}\n",
                class.word,
                class.size,
                class.max_arity()
            );
            Ok(Outcome::done(json, text))
        }
        WordsVerb::Equiv { f, g } => {
            let a = alphabet_for(alphabet, &[f, g])?;
            let (sf, sg) = (parse_seq(&a, f)?, parse_seq(&a, g)?);
            let holds = equivalent(&sf, &sg)?;
            let json = json!({"command": "words equiv", "f": f, "g": g, "equivalent": holds});
            let text = format!(
                "{}\n",
                if holds {
                    "equivalent"
                } else {
                    "not equivalent"
                }
            );
            Ok(Outcome::verdict(holds, json, text))
        }
    }
}

fn concurrent(path: &PathBuf, domain: Option<&str>) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [x, y] = tokens[..] else {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: "expected `x y`".into(),
            });
        };
        pairs.push((x.to_string(), y.to_string()));
    }
    let domain: Vec<String> = match domain {
        Some(d) => d
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        None => {
            let mut all: Vec<String> = pairs
                .iter()
                .flat_map(|(x, y)| [x.clone(), y.clone()])
                .collect();
            all.sort();
            all.dedup();
            all
        }
    };
    let v = is_concurrent(&pairs, &domain)?;
    let text = match &v {
        crate::concurrence::Concurrence::Concurrent { bound } => match bound {
            Some(b) => format!("concurrent, common bound {b}\n"),
            None => "concurrent (empty domain)\n".to_string(),
        },
        crate::concurrence::Concurrence::NotConcurrent { failing } => {
            format!(
                "not concurrent: {{{}}} has no common bound\n",
                failing.join(",")
            )
        }
    };
    let holds = v.holds();
    Ok(Outcome::verdict(
        holds,
        json!({"command": "concurrent", "domain": domain, "result": v}),
        text,
    ))
}

fn demo(cli: &Cli, name: &str, seed: Option<u64>) -> Result<Outcome> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{SEED_VAR} must be an unsigned integer")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    let opts = DemoOptions {
        workers: cli.workers,
        seed,
        samples: DEFAULT_SAMPLES,
    };
    let report = run_demo(name, &opts)?;
    let mut text = format!(
        "demo {}: {}\n",
        report.demo,
        if report.demonstrated {
            "demonstrated"
        } else {
            "NOT demonstrated"
        }
    );
    for c in &report.claims {
        text.push_str(&format!(
            "  [{}] {}\n",
            if c.holds { "ok" } else { "FAIL" },
            c.claim
        ));
        if !c.detail.is_null() {
            text.push_str(&format!("        {}\n", c.detail));
        }
    }
    let holds = report.demonstrated;
    Ok(Outcome::verdict(
        holds,
        serde_json::to_value(&report).expect("json"),
        text,
    ))
}
