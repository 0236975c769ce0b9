//! Words over finite alphabets: substitution fixed points and coupling maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::sequence::CouplingSequence;

/// Longest word any generator will build unless told otherwise.
pub const DEFAULT_WORD_CAP: usize = 1 << 24;

/// Nonempty word whose letters all belong to a declared alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicWord {
    letters: Vec<char>,
    alphabet: Vec<char>,
}

impl SymbolicWord {
    pub fn new(letters: Vec<char>, alphabet: &[char]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        if let Some(&letter) = letters.iter().find(|l| alphabet.binary_search(l).is_err()) {
            return Err(Error::UnknownLetter { letter });
        }
        Ok(Self { letters, alphabet })
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn count(&self, letter: char) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn is_prefix_of(&self, other: &SymbolicWord) -> bool {
        other.letters.starts_with(&self.letters)
    }
}

impl std::fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.letters.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Substitution rules `letter -> image`.
pub type Rules = BTreeMap<char, String>;

/// The Fibonacci substitution `a -> ab`, `b -> a`.
pub fn fibonacci_rules() -> Rules {
    Rules::from([('a', "ab".to_string()), ('b', "a".to_string())])
}

/// `u_k = S^k(a)` for the Fibonacci substitution; `|u_k| = F_{k+2}` with
/// `F_1 = F_2 = 1`.
pub fn fibonacci_word(k: u32) -> Result<SymbolicWord> {
    fibonacci_word_capped(k, DEFAULT_WORD_CAP)
}

pub fn fibonacci_word_capped(k: u32, cap: usize) -> Result<SymbolicWord> {
    let rules = fibonacci_rules();
    let mut word = vec!['a'];
    for _ in 0..k {
        word = apply(&rules, &word, cap)?;
    }
    SymbolicWord::new(word, &['a', 'b'])
}

fn apply(rules: &Rules, word: &[char], cap: usize) -> Result<Vec<char>> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &letter in word {
        let image = rules.get(&letter).ok_or(Error::UnknownLetter { letter })?;
        out.extend(image.chars());
        if out.len() > cap {
            return Err(Error::SizeCap { what: "substitution word", size: out.len(), cap });
        }
    }
    Ok(out)
}

/// First `n` letters of the fixed point `lim S^k(seed)`.
///
/// Requires `S(seed)` to start with `seed` and have length at least two, and
/// every letter appearing in an image to have a rule of its own.
pub fn substitution_fixed_point(rules: &Rules, seed: char, n: usize) -> Result<SymbolicWord> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n > DEFAULT_WORD_CAP {
        return Err(Error::SizeCap { what: "substitution word", size: n, cap: DEFAULT_WORD_CAP });
    }
    let alphabet: Vec<char> = rules.keys().copied().collect();
    for image in rules.values() {
        if image.is_empty() {
            return Err(Error::InvalidParameter("substitution images must be nonempty".into()));
        }
        if let Some(letter) = image.chars().find(|c| !rules.contains_key(c)) {
            return Err(Error::UnknownLetter { letter });
        }
    }
    let seed_image = rules.get(&seed).ok_or(Error::UnknownLetter { letter: seed })?;
    if !seed_image.starts_with(seed) || seed_image.chars().count() < 2 {
        return Err(Error::NotProlongable { seed });
    }

    let mut word = vec![seed];
    while word.len() < n {
        // Only the first n letters of the previous iterate influence the next prefix.
        word.truncate(n);
        word = apply(rules, &word, usize::MAX)?;
    }
    word.truncate(n);
    SymbolicWord::new(word, &alphabet)
}

/// `p_n = map(word_n)`.
pub fn couplings_from_word(word: &SymbolicWord, map: &BTreeMap<char, f64>) -> Result<CouplingSequence> {
    let ps = word
        .letters()
        .iter()
        .map(|&letter| map.get(&letter).copied().ok_or(Error::UnknownLetter { letter }))
        .collect::<Result<Vec<_>>>()?;
    CouplingSequence::new(ps)
}
