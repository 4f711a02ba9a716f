//! Test-side oracles, written independently of the library code they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use kpres::freegroup::{Family, GeneratorSymbol, Letter, Word};

/// Rank over Q by fraction-free (Bareiss) row reduction.
pub fn rank_fraction_free(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in col + 1..cols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        m[n - 1][n - 1].clone() * sign
    }
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs() == BigInt::from(1)
}

/// b1 as the number of generators minus the rational rank of the
/// exponent-sum matrix.
pub fn betti_oracle(p: &kpres::dps::Presentation) -> usize {
    let gens = p.generators.symbols();
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            gens.iter()
                .map(|s| r.word.letters().iter().filter(|l| l.symbol == *s).map(|l| l.exponent() as i64).sum())
                .collect()
        })
        .collect();
    gens.len() - rank_fraction_free(&rows)
}

/// An element of the class-2 nilpotent quotient of a genus-2 surface group:
/// a vector over (a1, a2, b1, b2) and a central coordinate. The cocycle is
/// the upper triangle of the form with `[a1,a2] = z` and `[b1,b2] = z^-1`,
/// so the surface relator maps to the identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Nil2 {
    pub v: [i64; 4],
    pub z: i64,
}

impl Nil2 {
    fn beta(v: &[i64; 4], w: &[i64; 4]) -> i64 {
        v[0] * w[1] - v[2] * w[3]
    }

    pub fn mul(self, o: Nil2) -> Nil2 {
        let mut v = self.v;
        for (x, y) in v.iter_mut().zip(o.v) {
            *x += y;
        }
        Nil2 { v, z: self.z + o.z + Self::beta(&self.v, &o.v) }
    }

    pub fn inv(self) -> Nil2 {
        let v = self.v.map(|x| -x);
        // (v, z)(-v, z') = (0, z + z' - beta(v, v)).
        Nil2 { v, z: -self.z + Self::beta(&self.v, &self.v) }
    }

    fn gen(s: &GeneratorSymbol) -> Nil2 {
        let idx = match (s.family(), s.sub()) {
            (Family::A, Some(1)) => 0,
            (Family::A, Some(2)) => 1,
            (Family::B, Some(1)) => 2,
            (Family::B, Some(2)) => 3,
            _ => panic!("not a surface generator: {s}"),
        };
        let mut v = [0; 4];
        v[idx] = 1;
        Nil2 { v, z: 0 }
    }
}

/// Images of an ambient word in the nilpotent quotient of each factor.
pub fn nil2_images(w: &Word, rank: u16) -> Vec<Nil2> {
    let mut out = vec![Nil2::default(); rank as usize];
    for l in w.letters() {
        let k = l.symbol.sup().expect("ambient letter") as usize - 1;
        let g = Nil2::gen(&l.symbol);
        out[k] = out[k].mul(if l.inverted { g.inv() } else { g });
    }
    out
}

pub fn nil2_trivial(w: &Word, rank: u16) -> bool {
    nil2_images(w, rank).iter().all(|e| *e == Nil2::default())
}

/// A random word over `symbols` of at most `len` letters after reduction.
pub fn random_word<R: Rng>(rng: &mut R, symbols: &[GeneratorSymbol], len: usize) -> Word {
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let s = symbols[rng.gen_range(0..symbols.len())];
        letters.push(Letter::new(s, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    Word::from_letters(letters)
}

/// The four generators of factor k.
pub fn factor_symbols(k: u16) -> Vec<GeneratorSymbol> {
    vec![GeneratorSymbol::a(1, k), GeneratorSymbol::a(2, k), GeneratorSymbol::b(1, k), GeneratorSymbol::b(2, k)]
}

pub fn ambient_symbols(r: u16) -> Vec<GeneratorSymbol> {
    (1..=r).flat_map(factor_symbols).collect()
}
