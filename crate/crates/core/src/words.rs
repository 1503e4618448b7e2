//! Free-group words over quandle generators.
//!
//! An element of a presented quandle is written `a^w`, where `a` is a
//! generator and `w` a word in the free group on the generators. Words are
//! kept freely reduced at all times.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense index of a generator within its presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId(pub usize);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_i32(s: i32) -> Sign {
        if s < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    /// Product of two signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// A generator or its inverse (`x` acts by `▷`, `~x` by `▷⁻¹`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GeneratorId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter {
            gen: GeneratorId(gen),
            sign: Sign::Pos,
        }
    }

    pub fn neg(gen: usize) -> Letter {
        Letter {
            gen: GeneratorId(gen),
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// A freely reduced word. The empty word is the identity exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

/// Freely reduces a raw letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Reversed word with every sign flipped.
pub fn invert(w: &Word) -> Word {
    Word(w.0.iter().rev().map(|l| l.inverse()).collect())
}

/// Exponent of `(a^u)^(b^v)` (or `(a^u)^~(b^v)` for a negative sign):
/// `u ~v b v`, freely reduced.
pub fn reassociate(u: &Word, b: GeneratorId, v: &Word, sign: Sign) -> Word {
    let letters = u
        .0
        .iter()
        .copied()
        .chain(invert(v).0)
        .chain(std::iter::once(Letter { gen: b, sign }))
        .chain(v.0.iter().copied());
    reduce(letters)
}

/// Strips matching inverse pairs from the two ends.
///
/// Only valid for universally quantified relations `y^w = y`, where `w` and
/// any of its conjugates impose the same constraint.
pub fn cyclic_reduce(w: &Word) -> Word {
    let letters = &w.0;
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    Word(letters[lo..hi].to_vec())
}

/// For `n = 2` every generator is an involution: signs are dropped and `x x`
/// cancels, including across the ends. Other exponents leave `w` untouched.
pub fn normalize_mod_n(w: &Word, n: u32) -> Word {
    if n != 2 {
        return w.clone();
    }
    let mut out: Vec<Letter> = Vec::new();
    for l in &w.0 {
        let l = Letter {
            gen: l.gen,
            sign: Sign::Pos,
        };
        match out.last() {
            Some(&top) if top.gen == l.gen => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    let (mut lo, mut hi) = (0, out.len());
    while hi - lo >= 2 && out[lo].gen == out[hi - 1].gen {
        lo += 1;
        hi -= 1;
    }
    Word(out[lo..hi].to_vec())
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Word of positive letters `gens[0] gens[1] ...`.
    pub fn positive(gens: &[usize]) -> Word {
        reduce(gens.iter().map(|&g| Letter::pos(g)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        invert(self)
    }

    pub fn concat(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn push(&self, l: Letter) -> Word {
        reduce(self.0.iter().copied().chain(std::iter::once(l)))
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        reduce(std::iter::repeat_n(self.0.iter().copied(), k).flatten())
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<GeneratorId> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Parses whitespace-separated tokens `a` / `~a`. `resolve` maps a name to
    /// its generator. On failure returns the offending token's byte offset and
    /// a message.
    pub fn parse<F>(text: &str, mut resolve: F) -> Result<Word, (usize, String)>
    where
        F: FnMut(&str) -> Option<GeneratorId>,
    {
        let mut letters = Vec::new();
        for (offset, token) in tokens(text) {
            let (sign, name) = match token.strip_prefix('~') {
                Some(rest) => (Sign::Neg, rest),
                None => (Sign::Pos, token),
            };
            if !is_identifier(name) {
                return Err((offset, format!("malformed generator token `{token}`")));
            }
            match resolve(name) {
                Some(gen) => letters.push(Letter { gen, sign }),
                None => return Err((offset, format!("undeclared generator `{name}`"))),
            }
        }
        Ok(reduce(letters))
    }

    /// Renders the word in token syntax using `names` for generators.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        reduce(iter)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.sign == Sign::Neg {
                f.write_str("~")?;
            }
            match self.names.get(l.gen.0) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", l.gen.0)?,
            }
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their byte offsets.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    fn p(g: usize) -> Letter {
        Letter::pos(g)
    }
    fn n(g: usize) -> Letter {
        Letter::neg(g)
    }

    #[test]
    fn reduce_cancels_adjacent_pairs() {
        assert!(reduce([p(A), n(A)]).is_empty());
        assert_eq!(reduce([p(B), p(A), n(A), p(B)]).letters(), &[p(B), p(B)]);
        let w = [p(A), p(B), p(A), p(B)];
        assert_eq!(reduce(w).letters(), &w);
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(invert(&reduce([p(B), p(A)])).letters(), &[n(A), n(B)]);
        assert!(invert(&Word::empty()).is_empty());
        assert_eq!(invert(&Word::letter(n(A))).letters(), &[p(A)]);
    }

    #[test]
    fn reassociate_examples() {
        let a = GeneratorId(A);
        assert_eq!(
            reassociate(&Word::empty(), a, &Word::empty(), Sign::Pos).letters(),
            &[p(A)]
        );
        let got = reassociate(&Word::letter(p(B)), a, &Word::letter(p(C)), Sign::Pos);
        assert_eq!(got.letters(), &[p(B), n(C), p(A), p(C)]);
        // c ~c ~a c -> ~a c
        let got = reassociate(&Word::letter(p(C)), a, &Word::letter(p(C)), Sign::Neg);
        assert_eq!(got.letters(), &[n(A), p(C)]);
    }

    #[test]
    fn cyclic_reduce_strips_conjugates() {
        let w = reduce([n(C), p(A), p(B), p(C)]);
        assert_eq!(cyclic_reduce(&w).letters(), &[p(A), p(B)]);
        let w = reduce([p(A), p(B)]);
        assert_eq!(cyclic_reduce(&w), w);
        let w = reduce([n(A), n(B), p(A), p(B), p(A), n(B)]);
        assert!(cyclic_reduce(&w).len() <= 6);
    }

    #[test]
    fn normalize_mod_two() {
        let w = reduce([n(A), n(B), p(A), p(B), p(A), n(B)]);
        assert_eq!(
            normalize_mod_n(&w, 2).letters(),
            &[p(A), p(B), p(A), p(B), p(A), p(B)]
        );
        let w = reduce([n(A), p(B)]);
        assert_eq!(normalize_mod_n(&w, 3), w);
        assert!(normalize_mod_n(&reduce([p(A), p(A)]), 2).is_empty());
        // b a ~b: signs dropped, then the outer b's cancel
        assert_eq!(
            normalize_mod_n(&reduce([p(B), p(A), n(B)]), 2).letters(),
            &[p(A)]
        );
    }

    #[test]
    fn parse_and_display() {
        let names = vec!["a".to_string(), "b".to_string()];
        let resolve = |s: &str| names.iter().position(|n| n == s).map(GeneratorId);
        let w = Word::parse("~b ~a b a", resolve).unwrap();
        assert_eq!(w.letters(), &[n(B), n(A), p(B), p(A)]);
        assert_eq!(w.display(&names).to_string(), "~b ~a b a");
        let err = Word::parse("a  c", resolve).unwrap_err();
        assert_eq!(err.0, 3);
        assert!(Word::parse("a ~", resolve).is_err());
    }

    fn raw_letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            (0usize..3, any::<bool>()).prop_map(|(g, s)| if s { p(g) } else { n(g) }),
            0..24,
        )
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinks(raw in raw_letters()) {
            let w = reduce(raw.clone());
            prop_assert!(w.len() <= raw.len());
            prop_assert_eq!(reduce(w.letters().iter().copied()), w.clone());
            for pair in w.letters().windows(2) {
                prop_assert!(!pair[0].cancels(pair[1]));
            }
        }

        #[test]
        fn invert_is_an_involution(raw in raw_letters()) {
            let w = reduce(raw);
            prop_assert_eq!(invert(&invert(&w)), w.clone());
            prop_assert!(w.concat(&invert(&w)).is_empty());
        }

        #[test]
        fn cyclic_reduce_gives_a_conjugate(raw in raw_letters()) {
            let w = reduce(raw);
            let c = cyclic_reduce(&w);
            // w = u c ~u for the stripped prefix u
            let k = (w.len() - c.len()) / 2;
            let u = reduce(w.letters()[..k].iter().copied());
            prop_assert_eq!(u.concat(&c).concat(&invert(&u)), w);
        }
    }
}
