//! Exact integer linear algebra for abelianizations: relation matrices,
//! Smith normal form and first Betti numbers.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dps::Presentation;
use crate::freegroup::GeneratorSymbol;

/// A dense rectangular matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Build from rows; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U * A * V = S` with U, V unimodular and S diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Check the defining identities against the input matrix.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        let diag_ok = self.s.is_diagonal();
        let chain_ok = self.invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        let positive = self.invariant_factors.iter().all(|f| f.is_positive());
        diag_ok && chain_ok && positive && self.u.mul(a).mul(&self.v) == self.s
    }
}

/// Smith normal form with minimal-absolute-value pivoting. Deterministic.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut factors = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, s, v, factors, a);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if !s.get(i, t).is_zero() {
                    let q = -(s.get(i, t).div_floor(s.get(t, t)));
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    dirty |= !s.get(i, t).is_zero();
                }
            }
            for j in t + 1..n {
                if !s.get(t, j).is_zero() {
                    let q = -(s.get(t, j).div_floor(s.get(t, t)));
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    dirty |= !s.get(t, j).is_zero();
                }
            }
            if dirty {
                continue;
            }
            // The pivot must divide the rest, or the chain breaks later.
            let p = s.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&p)));
            if let Some(i) = offender {
                s.add_row(t, i, &BigInt::one());
                u.add_row(t, i, &BigInt::one());
                continue;
            }
            if p.is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            factors.push(s.get(t, t).clone());
            break;
        }
    }
    finish(u, s, v, factors, a)
}

fn finish(u: IntegerMatrix, s: IntegerMatrix, v: IntegerMatrix, factors: Vec<BigInt>, a: &IntegerMatrix) -> SmithForm {
    let sf = SmithForm { u, s, v, invariant_factors: factors };
    debug_assert!(sf.verify(a), "Smith form identities fail");
    sf
}

/// Abelianized relators in the canonical column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationReport {
    /// The first Betti number.
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<GeneratorSymbol>,
    /// One row per relator: its label and exponent sums per generator.
    pub rows: Vec<(String, Vec<i64>)>,
}

impl AbelianizationReport {
    /// The group as `Z^rank + Z/t1 + ...`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        parts.join(" + ")
    }
}

/// The canonical column order: generators sorted by symbol.
pub fn column_order(p: &Presentation) -> Vec<GeneratorSymbol> {
    p.generators.sorted()
}

fn exponent_rows(p: &Presentation, cols: &[GeneratorSymbol]) -> Vec<Vec<i64>> {
    p.relators
        .iter()
        .map(|r| cols.iter().map(|s| r.word.exponent_sum(s)).collect())
        .collect()
}

/// Row per relator, column per generator in canonical order, entries the
/// exponent sums.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let cols = column_order(p);
    IntegerMatrix::from_rows(cols.len(), &exponent_rows(p, &cols))
}

/// Abelianization invariants. Zero and repeated rows do not change the row
/// lattice, so the Smith form is taken of the distinct nonzero rows.
pub fn abelianize(p: &Presentation) -> AbelianizationReport {
    let cols = column_order(p);
    let rows = exponent_rows(p, &cols);
    let distinct: BTreeSet<&Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&e| e != 0)).collect();
    let reduced: Vec<Vec<i64>> = distinct.into_iter().cloned().collect();
    let sf = smith_normal_form(&IntegerMatrix::from_rows(cols.len(), &reduced));
    let rank = cols.len() - sf.invariant_factors.len();
    let torsion = sf.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect();
    AbelianizationReport {
        rank,
        torsion,
        invariant_factors: sf.invariant_factors,
        rows: p.relators.iter().map(|r| r.provenance.clone()).zip(rows).collect(),
        generators: cols,
    }
}

pub fn betti(p: &Presentation) -> usize {
    abelianize(p).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dps::{build_presentation, Relator, Variant};
    use crate::freegroup::{commutator, Alphabet, Word};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn toy(rels: Vec<Word>) -> Presentation {
        let gens = Alphabet::new(vec![GeneratorSymbol::x(1), GeneratorSymbol::x(2)]).unwrap();
        let rels = rels.into_iter().map(|w| Relator { word: w, provenance: "toy".into() }).collect();
        Presentation::new(None, 3, gens, rels).unwrap()
    }

    #[test]
    fn smith_examples() {
        let sf = smith_normal_form(&IntegerMatrix::from_rows(2, &[vec![1, 0], vec![0, 0]]));
        assert_eq!(sf.invariant_factors, ints(&[1]));
        let a = IntegerMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]);
        let sf = smith_normal_form(&a);
        assert_eq!(sf.invariant_factors, ints(&[1, 6]));
        assert!(sf.verify(&a));
        assert!(smith_normal_form(&IntegerMatrix::zeros(3, 2)).invariant_factors.is_empty());
        let a = IntegerMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&a).invariant_factors, ints(&[2, 6, 12]));
        assert!(smith_normal_form(&IntegerMatrix::zeros(0, 4)).invariant_factors.is_empty());
    }

    #[test]
    fn unimodular_transforms() {
        let a = IntegerMatrix::from_rows(3, &[vec![4, 6, 8], vec![3, -5, 7], vec![0, 2, 2], vec![9, 9, 9]]);
        let sf = smith_normal_form(&a);
        assert!(sf.verify(&a));
        assert!(sf.u.determinant().abs().is_one());
        assert!(sf.v.determinant().abs().is_one());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntegerMatrix::from_rows(2, &[vec![1, 2], vec![3, 4]]).determinant(), BigInt::from(-2));
        assert_eq!(IntegerMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(IntegerMatrix::identity(0).determinant(), BigInt::one());
    }

    #[test]
    fn toy_presentations() {
        let (x1, x2): (Word, Word) = (GeneratorSymbol::x(1).into(), GeneratorSymbol::x(2).into());
        let p = toy(vec![commutator(&x1, &x2)]);
        assert!(relation_matrix(&p).is_zero());
        assert_eq!(betti(&p), 2);
        let p = toy(vec![x1.pow(3)]);
        let m = relation_matrix(&p);
        assert_eq!(m.get(0, 0), &BigInt::from(3));
        let rep = abelianize(&p);
        assert_eq!((rep.rank, rep.torsion.clone()), (1, ints(&[3])));
        assert_eq!(rep.describe(), "Z^1 + Z/3");
    }

    #[test]
    fn kernel_betti_numbers() {
        let rep = abelianize(&build_presentation(4, Variant::KSimplified).unwrap());
        assert_eq!(rep.rank, 14);
        assert!(rep.torsion.is_empty());
        assert_eq!(rep.invariant_factors, ints(&[1]));
        let d = rep.generators.iter().position(|s| *s == GeneratorSymbol::d()).unwrap();
        for (label, row) in &rep.rows {
            let nonzero: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0).collect();
            assert!(nonzero.is_empty() || nonzero == vec![d], "{label}");
        }
        assert_eq!(betti(&build_presentation(4, Variant::KFull).unwrap()), 14);
        assert_eq!(betti(&build_presentation(5, Variant::KSimplified).unwrap()), 18);
        assert_eq!(betti(&build_presentation(3, Variant::KR3).unwrap()), 10);
    }
}
