//! Words over a finite alphabet, their shortlex numbering, and partial
//! sequences of subwords.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Gaps of a word are indexed by bits of a `u128`.
pub const MAX_WORD_LEN: usize = 128;

#[derive(Debug, Clone)]
pub struct Alphabet(Arc<AlphabetData>);

#[derive(Debug)]
struct AlphabetData {
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::BadAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i).is_some() {
                return Err(Error::BadAlphabet);
            }
        }
        Ok(Alphabet(Arc::new(AlphabetData { symbols, index })))
    }

    /// Symbols in order of first appearance.
    pub fn of_text(text: &str) -> Result<Self> {
        let mut seen = Vec::new();
        for c in text.chars() {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        Self::new(seen)
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.0.symbols
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        let digits = text
            .chars()
            .map(|c| self.0.index.get(&c).copied().ok_or(Error::NotInAlphabet(c)))
            .collect::<Result<Vec<_>>>()?;
        Word::from_digits(self, digits)
    }

    /// Shortlex rank, starting at 0 for the first one-symbol word.
    pub fn encode(&self, w: &Word) -> Result<BigUint> {
        if w.alphabet != *self {
            return Err(Error::AlphabetMismatch);
        }
        let k = BigUint::from(self.len());
        let mut shorter = BigUint::zero();
        let mut power = k.clone();
        for _ in 1..w.len() {
            shorter += &power;
            power *= &k;
        }
        let mut rank = BigUint::zero();
        for &d in &w.digits {
            rank = rank * &k + BigUint::from(d);
        }
        Ok(shorter + rank)
    }

    pub fn decode(&self, code: &BigUint) -> Word {
        let k = BigUint::from(self.len());
        let mut rest = code.clone();
        let mut len = 1usize;
        let mut block = k.clone();
        while rest >= block {
            rest -= &block;
            block *= &k;
            len += 1;
        }
        let mut digits = vec![0usize; len];
        for slot in digits.iter_mut().rev() {
            *slot = (&rest % &k).to_usize().expect("digit below alphabet size");
            rest /= &k;
        }
        Word {
            alphabet: self.clone(),
            digits,
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        (1..=max_len).flat_map(move |len| {
            let total = k
                .checked_pow(len as u32)
                .expect("word population fits usize");
            (0..total).map(move |mut r| {
                let mut digits = vec![0usize; len];
                for slot in digits.iter_mut().rev() {
                    *slot = r % k;
                    r /= k;
                }
                Word {
                    alphabet: self.clone(),
                    digits,
                }
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Alphabet,
    digits: Vec<usize>,
}

impl Word {
    pub fn from_digits(alphabet: &Alphabet, digits: Vec<usize>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if digits.iter().any(|&d| d >= alphabet.len()) {
            return Err(Error::BadAlphabet);
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            digits,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        self.len()
    }

    pub fn encode(&self) -> BigUint {
        self.alphabet.encode(self).expect("own alphabet")
    }

    fn slice(&self, from: usize, to: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            digits: self.digits[from..to].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols = self.alphabet.symbols();
        self.digits
            .iter()
            .try_for_each(|&d| write!(f, "{}", symbols[d]))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn join_words(w1: &Word, w2: &Word) -> Result<Word> {
    if w1.alphabet != w2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let mut digits = w1.digits.clone();
    digits.extend_from_slice(&w2.digits);
    Ok(Word {
        alphabet: w1.alphabet.clone(),
        digits,
    })
}

/// A member of `T^n`: codes at positions `0..=n`, read from `n` down to `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSeq {
    alphabet: Alphabet,
    values: Vec<BigUint>,
}

impl PartialSeq {
    /// `values[j]` is the code at position `j`.
    pub fn new(alphabet: &Alphabet, values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(PartialSeq {
            alphabet: alphabet.clone(),
            values,
        })
    }

    /// Subwords in reading order: the first lands at position `n`.
    pub fn from_subwords(subwords: &[Word]) -> Result<Self> {
        let first = subwords.first().ok_or(Error::EmptySequence)?;
        let alphabet = first.alphabet.clone();
        let values = subwords
            .iter()
            .rev()
            .map(|w| alphabet.encode(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialSeq { alphabet, values })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, position: usize) -> Option<&BigUint> {
        self.values.get(position)
    }

    /// Decoded subwords in reading order (position `n` first).
    pub fn subwords(&self) -> Vec<Word> {
        self.values
            .iter()
            .rev()
            .map(|c| self.alphabet.decode(c))
            .collect()
    }
}

impl fmt::Display for PartialSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.subwords().iter().map(Word::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

pub fn word_of_seq(f: &PartialSeq) -> Word {
    let mut digits = Vec::new();
    for w in f.subwords() {
        digits.extend_from_slice(&w.digits);
    }
    Word {
        alphabet: f.alphabet.clone(),
        digits,
    }
}

/// `f ~ g`: both denote the same word.
pub fn equivalent(f: &PartialSeq, g: &PartialSeq) -> Result<bool> {
    if f.alphabet != g.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(word_of_seq(f) == word_of_seq(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordClass {
    pub word: Word,
    pub size: usize,
}

impl WordClass {
    /// Representatives exist in `T^k` exactly for `k ≤ size − 1`.
    pub fn max_arity(&self) -> usize {
        self.size - 1
    }

    pub fn has_arity(&self, k: usize) -> bool {
        k < self.size
    }
}

pub fn class_of(f: &PartialSeq) -> WordClass {
    let word = word_of_seq(f);
    WordClass {
        size: word.size(),
        word,
    }
}

pub fn theta(alphabet: &Alphabet, code: &BigUint) -> WordClass {
    let word = alphabet.decode(code);
    class_of(&PartialSeq::from_subwords(std::slice::from_ref(&word)).expect("one subword"))
}

/// Every member of `T^k` denoting `w`, by split-point sets in ascending
/// bitmask order over the gaps.
pub fn decompositions(w: &Word, k: usize) -> Result<Decompositions> {
    if k >= w.size() {
        return Err(Error::ArityOutOfRange { k, size: w.size() });
    }
    if w.size() > MAX_WORD_LEN {
        return Err(Error::WordTooLong(w.size()));
    }
    let gaps = w.size() - 1;
    let limit = if gaps == 128 {
        u128::MAX
    } else {
        (1u128 << gaps) - 1
    };
    Ok(Decompositions {
        word: w.clone(),
        next: if k == 0 {
            Some(0)
        } else {
            Some((1u128 << k) - 1)
        },
        limit,
    })
}

pub struct Decompositions {
    word: Word,
    next: Option<u128>,
    limit: u128,
}

impl Iterator for Decompositions {
    type Item = PartialSeq;

    fn next(&mut self) -> Option<PartialSeq> {
        let mask = self.next?;
        if mask > self.limit {
            self.next = None;
            return None;
        }
        self.next = gosper(mask);
        let mut pieces = Vec::new();
        let mut start = 0;
        for gap in 0..self.word.size() - 1 {
            if mask >> gap & 1 == 1 {
                pieces.push(self.word.slice(start, gap + 1));
                start = gap + 1;
            }
        }
        pieces.push(self.word.slice(start, self.word.size()));
        Some(PartialSeq::from_subwords(&pieces).expect("nonempty split"))
    }
}

/// Next larger integer with the same popcount.
fn gosper(x: u128) -> Option<u128> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// Total number of decompositions over all arities: `2^(size − 1)`.
pub fn count_decompositions(w: &Word) -> BigUint {
    BigUint::one() << (w.size() - 1)
}

/// Decompositions of a fixed arity: `binomial(size − 1, k)`.
pub fn count_decompositions_k(w: &Word, k: usize) -> BigUint {
    let n = w.size() - 1;
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}
