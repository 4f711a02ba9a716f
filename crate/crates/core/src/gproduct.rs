//! The direct product G of r genus-2 surface groups and the torus map
//! phi: G -> Z^2.
//!
//! Letters `a[i,k]`, `b[i,k]` are the standard generators of factor k.
//! Identity and conjugacy in G are decided one factor at a time.

use std::ops::{Add, Neg};
use std::sync::OnceLock;

use thiserror::Error;

use crate::freegroup::{Family, GeneratorSymbol, Word};
use crate::smallcancel::SymmetrizedRelatorSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GProductError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u16, u16),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(u16),
    #[error("letter {symbol} is not a generator of G at rank {rank}")]
    NotAmbient { symbol: GeneratorSymbol, rank: u16 },
}

fn surface() -> &'static SymmetrizedRelatorSet {
    static SET: OnceLock<SymmetrizedRelatorSet> = OnceLock::new();
    SET.get_or_init(|| SymmetrizedRelatorSet::genus2(1))
}

/// A word over the standard generators of G, tagged with its rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientWord {
    word: Word,
    rank: u16,
}

impl AmbientWord {
    pub fn new(word: Word, rank: u16) -> Result<Self, GProductError> {
        if rank < 2 {
            return Err(GProductError::RankTooSmall(rank));
        }
        for l in word.letters() {
            let s = l.symbol;
            let ok = s.family().is_ambient() && s.sup().is_some_and(|k| k <= rank);
            if !ok {
                return Err(GProductError::NotAmbient { symbol: s, rank });
            }
        }
        Ok(AmbientWord { word, rank })
    }

    pub fn identity(rank: u16) -> Self {
        AmbientWord { word: Word::identity(), rank: rank.max(2) }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn inverse(&self) -> Self {
        AmbientWord { word: self.word.inverse(), rank: self.rank }
    }

    pub fn mul(&self, other: &AmbientWord) -> Result<Self, GProductError> {
        same_rank(self, other)?;
        Ok(AmbientWord { word: &self.word * &other.word, rank: self.rank })
    }

    pub fn project(&self) -> FactorProjection {
        let mut factors = vec![Word::identity(); self.rank as usize];
        for l in self.word.letters() {
            let k = l.symbol.sup().expect("ambient letters carry a factor index");
            factors[k as usize - 1].push(*l);
        }
        FactorProjection { factors }
    }

    pub fn is_identity(&self) -> bool {
        self.project().factors.iter().all(factor_is_identity)
    }

    pub fn phi(&self) -> TorusImage {
        let mut t = TorusImage::default();
        for l in self.word.letters() {
            let e = l.exponent() as i64;
            match l.symbol.sub() {
                Some(1) => t.m1 += e,
                _ => t.m2 += e,
            }
        }
        t
    }

    pub fn in_kernel(&self) -> bool {
        self.phi() == TorusImage::default()
    }
}

fn same_rank(u: &AmbientWord, v: &AmbientWord) -> Result<(), GProductError> {
    if u.rank == v.rank {
        Ok(())
    } else {
        Err(GProductError::RankMismatch(u.rank, v.rank))
    }
}

fn to_first_factor(w: &Word) -> Word {
    w.map_symbols(|s| s.with_sup(1))
}

fn factor_is_identity(w: &Word) -> bool {
    surface().is_identity(&to_first_factor(w)).expect("genus-2 set passes the gate")
}

/// The images of an element of G in each of its r factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProjection {
    pub factors: Vec<Word>,
}

impl FactorProjection {
    pub fn factor(&self, k: u16) -> &Word {
        &self.factors[k as usize - 1]
    }

    /// Per-factor Dehn-reduced forms, relabelled back to their own factor.
    pub fn dehn_reduced(&self) -> Vec<Word> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let red = surface().dehn_reduce(&to_first_factor(w)).expect("gate").final_word;
                red.map_symbols(|s| s.with_sup(i as u16 + 1))
            })
            .collect()
    }

    /// Number of Dehn steps needed in each factor.
    pub fn trace_lengths(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|w| surface().dehn_reduce(&to_first_factor(w)).expect("gate").steps.len())
            .collect()
    }
}

/// `(m1, m2)`: exponent sums towards the two generators of Z^2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TorusImage {
    pub m1: i64,
    pub m2: i64,
}

impl Add for TorusImage {
    type Output = TorusImage;
    fn add(self, o: TorusImage) -> TorusImage {
        TorusImage { m1: self.m1 + o.m1, m2: self.m2 + o.m2 }
    }
}

impl Neg for TorusImage {
    type Output = TorusImage;
    fn neg(self) -> TorusImage {
        TorusImage { m1: -self.m1, m2: -self.m2 }
    }
}

pub fn phi(w: &AmbientWord) -> TorusImage {
    w.phi()
}

pub fn in_kernel(w: &AmbientWord) -> bool {
    w.in_kernel()
}

pub fn is_identity_in_g(w: &AmbientWord) -> bool {
    w.is_identity()
}

pub fn check_identity(lhs: &AmbientWord, rhs: &AmbientWord) -> Result<bool, GProductError> {
    same_rank(lhs, rhs)?;
    Ok(lhs.mul(&rhs.inverse())?.is_identity())
}

/// Per-factor conjugators `x_k` with `u_k = x_k v_k x_k^-1`, if found.
pub fn conjugators_in_g(u: &AmbientWord, v: &AmbientWord) -> Result<Option<Vec<Word>>, GProductError> {
    same_rank(u, v)?;
    let (pu, pv) = (u.project(), v.project());
    let mut out = Vec::with_capacity(u.rank as usize);
    for (k, (fu, fv)) in pu.factors.iter().zip(&pv.factors).enumerate() {
        let x = surface()
            .conjugator(&to_first_factor(fu), &to_first_factor(fv))
            .expect("genus-2 set passes the gate");
        match x {
            Some(x) => out.push(x.map_symbols(|s| s.with_sup(k as u16 + 1))),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn is_conjugate_in_g(u: &AmbientWord, v: &AmbientWord) -> Result<bool, GProductError> {
    Ok(conjugators_in_g(u, v)?.is_some())
}

/// Whether `w` is a word over the a/b generators of G at this rank.
pub fn is_ambient_word(w: &Word, rank: u16) -> bool {
    w.letters()
        .iter()
        .all(|l| matches!(l.symbol.family(), Family::A | Family::B) && l.symbol.sup().is_some_and(|k| k <= rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::commutator;

    fn g(s: GeneratorSymbol) -> Word {
        Word::generator(s)
    }
    fn amb(w: Word, r: u16) -> AmbientWord {
        AmbientWord::new(w, r).unwrap()
    }

    #[test]
    fn projection() {
        let w = Word::product([
            &g(GeneratorSymbol::a(1, 1)),
            &g(GeneratorSymbol::a(1, 2)),
            &g(GeneratorSymbol::a(1, 1)).inverse(),
        ]);
        let p = amb(w, 3).project();
        assert!(p.factor(1).is_empty());
        assert_eq!(*p.factor(2), g(GeneratorSymbol::a(1, 2)));
        assert!(p.factor(3).is_empty());

        let d = commutator(&g(GeneratorSymbol::b(1, 1)), &g(GeneratorSymbol::b(2, 1)));
        let p = amb(d.clone(), 2).project();
        assert_eq!(*p.factor(1), d);
        assert!(p.factor(2).is_empty());
        assert!(AmbientWord::identity(4).project().factors.iter().all(Word::is_empty));
    }

    #[test]
    fn identity_in_g() {
        let a11 = g(GeneratorSymbol::a(1, 1));
        let a12 = g(GeneratorSymbol::a(1, 2));
        assert!(amb(commutator(&a11, &a12), 2).is_identity());
        let surf = commutator(&a11, &g(GeneratorSymbol::a(2, 1)))
            * commutator(&g(GeneratorSymbol::b(1, 1)), &g(GeneratorSymbol::b(2, 1)));
        assert!(amb(surf, 2).is_identity());
        assert!(!amb(&a11 * &a12.inverse(), 2).is_identity());
        let surf3 = crate::smallcancel::genus2_relator(3);
        assert!(amb(surf3, 3).is_identity());
    }

    #[test]
    fn identity_and_conjugacy_checks() {
        let a11 = amb(g(GeneratorSymbol::a(1, 1)), 2);
        let a21 = amb(g(GeneratorSymbol::a(2, 1)), 2);
        let b11 = amb(g(GeneratorSymbol::b(1, 1)), 2);
        assert!(check_identity(&a11, &a11).unwrap());
        assert!(!check_identity(&a11, &a21).unwrap());
        assert_eq!(
            check_identity(&a11, &amb(Word::identity(), 3)),
            Err(GProductError::RankMismatch(2, 3))
        );
        let w = amb(g(GeneratorSymbol::a(1, 2)) * g(GeneratorSymbol::b(2, 1)), 2);
        let c = amb(g(GeneratorSymbol::b(2, 2)) * g(GeneratorSymbol::a(1, 1)), 2);
        let conj = c.mul(&w).unwrap().mul(&c.inverse()).unwrap();
        assert!(is_conjugate_in_g(&conj, &w).unwrap());
        assert!(!is_conjugate_in_g(&a11, &b11).unwrap());
    }

    #[test]
    fn torus_map() {
        let a11 = g(GeneratorSymbol::a(1, 1));
        let b11 = g(GeneratorSymbol::b(1, 1));
        assert_eq!(amb(a11.clone(), 2).phi(), TorusImage { m1: 1, m2: 0 });
        assert_eq!(amb(&a11 * &b11.inverse(), 2).phi(), TorusImage::default());
        assert!(amb(Word::identity(), 2).in_kernel());
        assert!(!amb(a11.clone(), 2).in_kernel());
        let u = &a11 * &g(GeneratorSymbol::b(2, 2));
        assert!(amb(commutator(&u, &g(GeneratorSymbol::a(2, 1))), 2).in_kernel());
    }

    #[test]
    fn validation() {
        assert!(AmbientWord::new(g(GeneratorSymbol::a(1, 3)), 2).is_err());
        assert!(AmbientWord::new(g(GeneratorSymbol::d()), 2).is_err());
        assert!(AmbientWord::new(Word::identity(), 1).is_err());
    }
}
