//! Words in free groups over the indexed generator families used throughout
//! the crate.
//!
//! A [`Word`] is always stored freely reduced; every constructor reduces.
//! Equality of words is therefore equality in the free group.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("no image assigned to generator {0}")]
    MissingImage(GeneratorSymbol),
    #[error("invalid generator symbol: {0}")]
    InvalidSymbol(String),
}

/// Generator families, declared in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "del")]
    Delta,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::F,
        Family::G,
        Family::X,
        Family::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
            Family::D => "d",
            Family::F => "f",
            Family::G => "g",
            Family::X => "x",
            Family::Delta => "del",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Whether symbols of this family carry a lower index and an upper index.
    pub fn arity(self) -> (bool, bool) {
        match self {
            Family::D | Family::Delta => (false, false),
            Family::X => (true, false),
            Family::A | Family::B | Family::C | Family::F | Family::G => (true, true),
        }
    }

    /// Ambient generators `a[i,k]`, `b[i,k]` of the product of surface groups.
    pub fn is_ambient(self) -> bool {
        matches!(self, Family::A | Family::B)
    }
}

/// A generator name: family, optional lower index in {1,2}, optional upper
/// index (the factor number).
///
/// The derived ordering is (family, sub, sup) lexicographic; it fixes the
/// column order of relation matrices and every other canonical ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    family: Family,
    sub: Option<u8>,
    sup: Option<u16>,
}

impl GeneratorSymbol {
    pub fn new(family: Family, sub: Option<u8>, sup: Option<u16>) -> Result<Self, FreeGroupError> {
        let (has_sub, has_sup) = family.arity();
        let bad = |why: &str| {
            Err(FreeGroupError::InvalidSymbol(format!(
                "{}[{:?},{:?}]: {why}",
                family.name(),
                sub,
                sup
            )))
        };
        if has_sub != sub.is_some() {
            return bad("lower index arity");
        }
        if has_sup != sup.is_some() {
            return bad("upper index arity");
        }
        if let Some(i) = sub {
            if !(1..=2).contains(&i) {
                return bad("lower index must be 1 or 2");
            }
        }
        if sup == Some(0) {
            return bad("upper index must be positive");
        }
        Ok(GeneratorSymbol { family, sub, sup })
    }

    fn indexed(family: Family, i: u8, k: u16) -> Self {
        Self::new(family, Some(i), Some(k)).expect("valid indexed generator")
    }

    pub fn a(i: u8, k: u16) -> Self {
        Self::indexed(Family::A, i, k)
    }
    pub fn b(i: u8, k: u16) -> Self {
        Self::indexed(Family::B, i, k)
    }
    pub fn c(i: u8, k: u16) -> Self {
        Self::indexed(Family::C, i, k)
    }
    pub fn f(i: u8, k: u16) -> Self {
        Self::indexed(Family::F, i, k)
    }
    pub fn g(i: u8, k: u16) -> Self {
        Self::indexed(Family::G, i, k)
    }
    pub fn x(i: u8) -> Self {
        Self::new(Family::X, Some(i), None).expect("valid x generator")
    }
    pub fn d() -> Self {
        GeneratorSymbol { family: Family::D, sub: None, sup: None }
    }
    pub fn delta() -> Self {
        GeneratorSymbol { family: Family::Delta, sub: None, sup: None }
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn sub(&self) -> Option<u8> {
        self.sub
    }
    pub fn sup(&self) -> Option<u16> {
        self.sup
    }

    /// Same symbol with its upper index replaced; identity on families
    /// without an upper index.
    pub fn with_sup(self, sup: u16) -> Self {
        match self.sup {
            Some(_) => GeneratorSymbol { sup: Some(sup), ..self },
            None => self,
        }
    }

    /// Flattened identifier for CAS output: `f12` for `f[1,2]`, `x1`, `d`, `del`.
    pub fn flat_name(&self) -> String {
        let mut s = self.family.name().to_string();
        if let Some(i) = self.sub {
            s.push_str(&i.to_string());
        }
        if let Some(k) = self.sup {
            s.push_str(&k.to_string());
        }
        s
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        match (self.sub, self.sup) {
            (Some(i), Some(k)) => write!(f, "[{i},{k}]"),
            (Some(i), None) => write!(f, "[{i}]"),
            _ => Ok(()),
        }
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub inverted: bool,
}

impl Letter {
    pub fn new(symbol: GeneratorSymbol, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be +-1");
        Letter { symbol, inverted: exponent < 0 }
    }

    pub fn exponent(&self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter { inverted: !self.inverted, ..self }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.inverted != other.inverted
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if self.inverted {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Freely reduce a raw letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out = Word::identity();
    for l in letters {
        out.push(l);
    }
    out
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(symbol: GeneratorSymbol) -> Self {
        Word(vec![Letter::new(symbol, 1)])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        free_reduce(letters)
    }

    /// Product of a sequence of words.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Self {
        let mut out = Word::identity();
        for w in words {
            out.append(w);
        }
        out
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

    /// Right-multiply by a single letter, cancelling if possible.
    pub fn push(&mut self, l: Letter) {
        match self.0.last() {
            Some(last) if last.cancels(&l) => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn append(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// The letters in reverse order with exponents untouched.
    pub fn reverse_bar(&self) -> Word {
        // Reversal of a reduced word is reduced.
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Homomorphic extension of a generator assignment.
    pub fn substitute(&self, images: &HashMap<GeneratorSymbol, Word>) -> Result<Word, FreeGroupError> {
        self.substitute_with(|s| images.get(s))
    }

    /// Like [`Word::substitute`], with images supplied by a lookup function.
    pub fn substitute_with<'a, F>(&self, lookup: F) -> Result<Word, FreeGroupError>
    where
        F: Fn(&GeneratorSymbol) -> Option<&'a Word>,
    {
        let mut out = Word::identity();
        for l in &self.0 {
            let img = lookup(&l.symbol).ok_or(FreeGroupError::MissingImage(l.symbol))?;
            if l.inverted {
                for &m in img.0.iter().rev() {
                    out.push(m.inverse());
                }
            } else {
                out.append(img);
            }
        }
        Ok(out)
    }

    /// Apply a symbol renaming letter by letter.
    pub fn map_symbols<F: Fn(GeneratorSymbol) -> GeneratorSymbol>(&self, f: F) -> Word {
        free_reduce(self.0.iter().map(|l| Letter { symbol: f(l.symbol), inverted: l.inverted }))
    }

    /// `g * self * g^-1`.
    pub fn conjugate(&self, g: &Word) -> Word {
        Word::product([g, self, &g.inverse()])
    }

    /// Returns `(core, conjugator)` with `self = conjugator * core * conjugator^-1`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(&self.0[n - 1 - k]) {
            k += 1;
        }
        (Word(self.0[k..n - k].to_vec()), Word(self.0[..k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => self.0.len() == 1 || !a.cancels(b),
            _ => true,
        }
    }

    /// Cyclic rotation: letters `[k..]` followed by `[..k]`. Only meaningful
    /// for cyclically reduced words (otherwise the result may not be reduced).
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        free_reduce(self.0[k..].iter().chain(&self.0[..k]).copied())
    }

    /// Lexicographically least rotation of a cyclically reduced word and
    /// the shift that produced it.
    pub fn least_rotation(&self) -> (Word, usize) {
        let n = self.0.len();
        if n == 0 {
            return (Word::identity(), 0);
        }
        let at = |start: usize, i: usize| &self.0[(start + i) % n];
        let mut best = 0;
        for cand in 1..n {
            for i in 0..n {
                match at(cand, i).cmp(at(best, i)) {
                    std::cmp::Ordering::Less => {
                        best = cand;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        (self.rotate(best), best)
    }

    /// Signed number of occurrences of `s`.
    pub fn exponent_sum(&self, s: &GeneratorSymbol) -> i64 {
        self.0
            .iter()
            .filter(|l| l.symbol == *s)
            .map(|l| l.exponent() as i64)
            .sum()
    }

    pub fn occurrences(&self, s: &GeneratorSymbol) -> usize {
        self.0.iter().filter(|l| l.symbol == *s).count()
    }

    pub fn contains_symbol(&self, s: &GeneratorSymbol) -> bool {
        self.0.iter().any(|l| l.symbol == *s)
    }

    /// Distinct symbols occurring in the word, sorted.
    pub fn support(&self) -> Vec<GeneratorSymbol> {
        let mut v: Vec<_> = self.0.iter().map(|l| l.symbol).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl From<GeneratorSymbol> for Word {
    fn from(s: GeneratorSymbol) -> Self {
        Word::generator(s)
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word(vec![l])
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(mut self, rhs: Word) -> Word {
        self.append(&rhs);
        self
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::product([self, rhs])
    }
}

impl Mul<&Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: &Word) -> Word {
        self.append(rhs);
        self
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `[u, v] = u v u^-1 v^-1`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    Word::product([u, v, &u.inverse(), &v.inverse()])
}

/// An ordered set of distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet(Vec<GeneratorSymbol>);

impl Alphabet {
    pub fn new(symbols: Vec<GeneratorSymbol>) -> Result<Self, FreeGroupError> {
        let mut seen = std::collections::HashSet::new();
        for s in &symbols {
            if !seen.insert(*s) {
                return Err(FreeGroupError::InvalidSymbol(format!("duplicate generator {s}")));
            }
        }
        Ok(Alphabet(symbols))
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &GeneratorSymbol) -> bool {
        self.0.contains(s)
    }

    pub fn position(&self, s: &GeneratorSymbol) -> Option<usize> {
        self.0.iter().position(|t| t == s)
    }

    pub fn push(&mut self, s: GeneratorSymbol) -> Result<(), FreeGroupError> {
        if self.contains(&s) {
            return Err(FreeGroupError::InvalidSymbol(format!("duplicate generator {s}")));
        }
        self.0.push(s);
        Ok(())
    }

    pub fn remove(&mut self, s: &GeneratorSymbol) -> bool {
        match self.position(s) {
            Some(i) => {
                self.0.remove(i);
                true
            }
            None => false,
        }
    }

    /// The symbols in canonical (sorted) order.
    pub fn sorted(&self) -> Vec<GeneratorSymbol> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    /// Positional substitution: the i-th symbol of `self` goes to the i-th of `target`.
    pub fn correspondence(&self, target: &Alphabet) -> HashMap<GeneratorSymbol, Word> {
        assert_eq!(self.len(), target.len(), "alphabets of different size");
        self.0.iter().zip(&target.0).map(|(s, t)| (*s, Word::generator(*t))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a11() -> Word {
        GeneratorSymbol::a(1, 1).into()
    }
    fn b11() -> Word {
        GeneratorSymbol::b(1, 1).into()
    }
    fn d() -> Word {
        GeneratorSymbol::d().into()
    }

    #[test]
    fn reduce_examples() {
        let l = |s, e| Letter::new(s, e);
        let a = GeneratorSymbol::a(1, 1);
        let b = GeneratorSymbol::b(1, 1);
        assert_eq!(free_reduce([l(a, 1), l(a, -1), l(b, 1)]), b11());
        assert_eq!(free_reduce([]), Word::identity());
        let nested = [l(a, 1), l(b, 1), l(b, -1), l(a, -1), l(GeneratorSymbol::d(), 1)];
        assert_eq!(free_reduce(nested), d());
    }

    #[test]
    fn invert_and_bar() {
        let b21: Word = GeneratorSymbol::b(2, 1).into();
        let w = &a11() * &b21;
        assert_eq!(w.inverse(), &b21.inverse() * &a11().inverse());
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(d().inverse().letters()[0].exponent(), -1);

        let a = |i| Word::from(GeneratorSymbol::a(i, 1));
        let abc = Word::product([&a(1), &a(2), &a(1).pow(1)]);
        assert_eq!(abc.reverse_bar(), Word::product([&a(1), &a(2), &a(1)]));
        let w3 = Word::product([&a(1), &a(2), &GeneratorSymbol::b(1, 1).into()]);
        assert_eq!(w3.reverse_bar(), Word::product([&b11(), &a(2), &a(1)]));
        let f12: Word = GeneratorSymbol::f(1, 2).into();
        assert_eq!(f12.reverse_bar(), f12);
        assert_eq!((&a11() * &b11().inverse()).reverse_bar(), &b11().inverse() * &a11());
    }

    #[test]
    fn substitution() {
        let (a, b) = (GeneratorSymbol::x(1), GeneratorSymbol::x(2));
        let (a2, b2) = (GeneratorSymbol::a(1, 3), GeneratorSymbol::b(2, 3));
        let w = Word::product([&a.into(), &b.into(), &a.into()]);
        let from = Alphabet::new(vec![a, b]).unwrap();
        let to = Alphabet::new(vec![a2, b2]).unwrap();
        let got = w.substitute(&from.correspondence(&to)).unwrap();
        assert_eq!(got, Word::product([&a2.into(), &b2.into(), &a2.into()]));

        let c = GeneratorSymbol::c(1, 1);
        let mut images = HashMap::new();
        images.insert(c, &a11() * &b11().inverse());
        assert_eq!(Word::from(c).substitute(&images).unwrap(), &a11() * &b11().inverse());
        assert_eq!(
            d().substitute(&images),
            Err(FreeGroupError::MissingImage(GeneratorSymbol::d()))
        );
    }

    #[test]
    fn commutators_and_conjugates() {
        let x: Word = GeneratorSymbol::x(1).into();
        assert!(commutator(&x, &x).is_empty());
        assert_eq!(x.conjugate(&Word::identity()), x);
        let c = commutator(&a11(), &b11());
        assert_eq!(c.len(), 4);
        assert_eq!(c.to_string(), "a[1,1] b[1,1] a[1,1]' b[1,1]'");
    }

    #[test]
    fn cyclic_reduction() {
        let a: Word = GeneratorSymbol::a(1, 1).into();
        let b: Word = GeneratorSymbol::b(1, 1).into();
        assert_eq!(Word::product([&a, &b, &a.inverse()]).cyclic_reduce(), (b.clone(), a.clone()));
        let r = &a * &b;
        assert_eq!(r.cyclic_reduce(), (r.clone(), Word::identity()));
        let g = Word::from(GeneratorSymbol::a(2, 1)).pow(2);
        let w = r.conjugate(&g);
        assert_eq!(w.cyclic_reduce(), (r, g));
    }

    #[test]
    fn exponent_sums() {
        let a = GeneratorSymbol::a(1, 1);
        let w = Word::product([&a11(), &a11(), &b11().inverse()]);
        assert_eq!(w.exponent_sum(&a), 2);
        assert_eq!(d().inverse().exponent_sum(&GeneratorSymbol::d()), -1);
        assert_eq!(commutator(&w, &d()).exponent_sum(&a), 0);
    }

    #[test]
    fn symbol_ordering_and_validation() {
        assert!(GeneratorSymbol::a(2, 9) < GeneratorSymbol::b(1, 1));
        assert!(GeneratorSymbol::f(1, 3) < GeneratorSymbol::f(2, 2));
        assert!(GeneratorSymbol::c(1, 1) < GeneratorSymbol::c(1, 4));
        assert!(GeneratorSymbol::x(2) < GeneratorSymbol::delta());
        assert!(GeneratorSymbol::new(Family::D, Some(1), None).is_err());
        assert!(GeneratorSymbol::new(Family::X, Some(1), Some(2)).is_err());
        assert!(GeneratorSymbol::new(Family::F, Some(3), Some(2)).is_err());
        assert!(GeneratorSymbol::new(Family::A, Some(1), Some(0)).is_err());
        assert_eq!(GeneratorSymbol::f(1, 12).flat_name(), "f112");
        assert_eq!(GeneratorSymbol::delta().to_string(), "del");
    }

    #[test]
    fn least_rotation_is_canonical() {
        let a: Word = GeneratorSymbol::a(1, 1).into();
        let b: Word = GeneratorSymbol::b(1, 1).into();
        let w = Word::product([&b, &a, &b, &b]);
        let (m, _) = w.least_rotation();
        for k in 0..w.len() {
            assert_eq!(w.rotate(k).least_rotation().0, m);
        }
        assert_eq!(m, Word::product([&a, &b, &b, &b]));
    }
}
