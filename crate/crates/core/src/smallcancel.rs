//! Dehn's algorithm for C'(1/6) one-relator groups, with the genus-2 surface
//! group as the instance used everywhere else.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::freegroup::{commutator, GeneratorSymbol, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmallCancelError {
    #[error("relator is empty")]
    EmptyRelator,
    #[error("relator {0} is not cyclically reduced")]
    NotCyclicallyReduced(Word),
    #[error("relator {0} is a proper power; its symmetrized set collapses")]
    ProperPower(Word),
    #[error("small-cancellation gate failed: max piece {max_piece} of relator length {length}")]
    GateFailed { max_piece: usize, length: usize },
}

/// All cyclic permutations of a relator and of its inverse.
#[derive(Clone, Debug)]
pub struct SymmetrizedRelatorSet {
    members: Vec<Word>,
    relator_length: usize,
    max_piece: usize,
    by_first: HashMap<Letter, Vec<usize>>,
}

/// One Dehn move: the subword at `position` of length `matched` was a prefix
/// of member `relator`, and was replaced by `replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnStep {
    pub position: usize,
    pub relator: usize,
    pub matched: usize,
    pub replacement: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<DehnStep>,
    pub final_word: Word,
}

impl ReductionTrace {
    /// Re-apply the recorded steps to `input`; the result equals `final_word`
    /// for a trace produced from that input.
    pub fn replay(&self, input: &Word) -> Word {
        let mut cur = input.clone();
        for s in &self.steps {
            let l = cur.letters();
            let mut next = Word::from_letters(l[..s.position].iter().copied());
            next.append(&s.replacement);
            for &x in &l[s.position + s.matched..] {
                next.push(x);
            }
            cur = next;
        }
        cur
    }
}

fn common_prefix(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl SymmetrizedRelatorSet {
    pub fn build(relator: &Word) -> Result<Self, SmallCancelError> {
        if relator.is_empty() {
            return Err(SmallCancelError::EmptyRelator);
        }
        if !relator.is_cyclically_reduced() {
            return Err(SmallCancelError::NotCyclicallyReduced(relator.clone()));
        }
        let n = relator.len();
        let inv = relator.inverse();
        let mut members: Vec<Word> = Vec::with_capacity(2 * n);
        let mut seen = HashSet::new();
        for base in [relator, &inv] {
            for k in 0..n {
                let w = base.rotate(k);
                if seen.insert(w.clone()) {
                    members.push(w);
                }
            }
        }
        if members.len() < 2 * n {
            return Err(SmallCancelError::ProperPower(relator.clone()));
        }
        let mut by_first: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (i, m) in members.iter().enumerate() {
            by_first.entry(m.letters()[0]).or_default().push(i);
        }
        let mut set = SymmetrizedRelatorSet { members, relator_length: n, max_piece: 0, by_first };
        set.max_piece = set.piece_spectrum().keys().next_back().copied().unwrap_or(0);
        Ok(set)
    }

    /// The genus-2 surface relator `[a1,a2][b1,b2]` on factor `k`.
    pub fn genus2(k: u16) -> Self {
        Self::build(&genus2_relator(k)).expect("genus-2 relator is C'(1/6)")
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn relator_length(&self) -> usize {
        self.relator_length
    }

    pub fn max_piece(&self) -> usize {
        self.max_piece
    }

    /// Histogram of longest common prefixes over ordered pairs of distinct
    /// members. A piece is a common prefix of two distinct members, and
    /// closure under rotation makes this the same as common subwords.
    pub fn piece_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for (i, u) in self.members.iter().enumerate() {
            for (j, v) in self.members.iter().enumerate() {
                if i != j {
                    *hist.entry(common_prefix(u.letters(), v.letters())).or_insert(0) += 1;
                }
            }
        }
        hist
    }

    pub fn passes_gate(&self) -> bool {
        self.max_piece * 6 < self.relator_length
    }

    fn check_gate(&self) -> Result<(), SmallCancelError> {
        if self.passes_gate() {
            Ok(())
        } else {
            Err(SmallCancelError::GateFailed { max_piece: self.max_piece, length: self.relator_length })
        }
    }

    /// Longest member prefix matching the start of `window`, as (member, length).
    fn longest_prefix(&self, window: &[Letter]) -> Option<(usize, usize)> {
        let first = window.first()?;
        let mut best: Option<(usize, usize)> = None;
        for &mi in self.by_first.get(first)? {
            let len = common_prefix(self.members[mi].letters(), window);
            if best.is_none_or(|(_, b)| len > b) {
                best = Some((mi, len));
            }
        }
        best
    }

    fn dehn_match(&self, window: &[Letter]) -> Option<(usize, usize)> {
        self.longest_prefix(window).filter(|&(_, len)| 2 * len > self.relator_length)
    }

    fn complement_inverse(&self, member: usize, len: usize) -> Word {
        Word::from_letters(self.members[member].letters()[len..].iter().rev().map(|l| l.inverse()))
    }

    /// Linear Dehn reduction, firing the leftmost, then longest, match.
    pub fn dehn_reduce(&self, w: &Word) -> Result<ReductionTrace, SmallCancelError> {
        self.check_gate()?;
        let mut cur: Vec<Letter> = w.letters().to_vec();
        let mut steps = Vec::new();
        let mut i = 0;
        while i < cur.len() {
            let Some((mi, len)) = self.dehn_match(&cur[i..]) else {
                i += 1;
                continue;
            };
            let replacement = self.complement_inverse(mi, len);
            let mut next = Word::from_letters(cur[..i].iter().copied());
            next.append(&replacement);
            for &x in &cur[i + len..] {
                next.push(x);
            }
            let changed = common_prefix(&cur, next.letters());
            steps.push(DehnStep { position: i, relator: mi, matched: len, replacement });
            cur = next.letters().to_vec();
            i = changed.saturating_sub(self.relator_length - 1);
        }
        Ok(ReductionTrace { steps, final_word: Word::from_letters(cur) })
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool, SmallCancelError> {
        Ok(self.dehn_reduce(w)?.final_word.is_empty())
    }

    /// Dehn reduction of `w` read as a cyclic word. Returns `(core, c)` with
    /// `w = c * core * c^-1` in the group and `core` cyclically reduced with
    /// no Dehn move available at any rotation.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> Result<(Word, Word), SmallCancelError> {
        let mut conj = Word::identity();
        let mut cur = w.clone();
        loop {
            let reduced = self.dehn_reduce(&cur)?.final_word;
            let (core, c) = reduced.cyclic_reduce();
            conj.append(&c);
            cur = core;
            let n = cur.len();
            if n == 0 {
                return Ok((cur, conj));
            }
            let doubled: Vec<Letter> = cur.letters().iter().chain(cur.letters()).copied().collect();
            let hit = (0..n).find(|&k| self.dehn_match(&doubled[k..k + n]).is_some());
            match hit {
                Some(k) => {
                    conj.append(&Word::from_letters(cur.letters()[..k].iter().copied()));
                    cur = cur.rotate(k);
                }
                None => return Ok((cur, conj)),
            }
        }
    }

    /// Cyclic Dehn reduction followed by passage to the least rotation.
    /// Returns `(canonical, c)` with `w = c * canonical * c^-1`.
    fn canonical_cyclic(&self, w: &Word) -> Result<(Word, Word), SmallCancelError> {
        let (core, c) = self.cyclic_dehn_reduce(w)?;
        let (least, shift) = core.least_rotation();
        let q = Word::from_letters(core.letters()[..shift].iter().copied());
        Ok((least, c * q))
    }

    /// Search for `x` with `u = x v x^-1`. Cyclically Dehn-reduced forms are
    /// compared up to rotation and up to swapping one half of a relator for
    /// the other half, explored breadth-first within a bounded state budget.
    /// Every returned conjugator has been checked with [`Self::is_identity`].
    pub fn conjugator(&self, u: &Word, v: &Word) -> Result<Option<Word>, SmallCancelError> {
        const STATE_BUDGET: usize = 4096;
        let (target, qv) = self.canonical_cyclic(v)?;
        let (start, gu) = self.canonical_cyclic(u)?;
        let half = self.relator_length / 2;
        let mut found = None;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back((start, Word::identity()));
        // Invariant: u = gu * g * s * g^-1 * gu^-1 for each queued (s, g).
        while let Some((s, g)) = queue.pop_front() {
            if s == target {
                found = Some(g);
                break;
            }
            if !self.relator_length.is_multiple_of(2) || s.len() < half {
                continue;
            }
            let n = s.len();
            let doubled: Vec<Letter> = s.letters().iter().chain(s.letters()).copied().collect();
            for k in 0..n {
                let window = &doubled[k..k + n];
                let Some(first) = window.first() else { continue };
                for &mi in self.by_first.get(first).into_iter().flatten() {
                    if common_prefix(self.members[mi].letters(), window) < half {
                        continue;
                    }
                    let mut t = self.complement_inverse(mi, half);
                    for &x in &window[half..] {
                        t.push(x);
                    }
                    let p = Word::from_letters(s.letters()[..k].iter().copied());
                    let (next, c) = self.canonical_cyclic(&t)?;
                    if seen.len() < STATE_BUDGET && seen.insert(next.clone()) {
                        queue.push_back((next, Word::product([&g, &p, &c])));
                    }
                }
            }
        }
        let Some(g) = found else { return Ok(None) };
        let x = Word::product([&gu, &g, &qv.inverse()]);
        let check = Word::product([&x, v, &x.inverse(), &u.inverse()]);
        assert!(self.is_identity(&check)?, "conjugator certificate failed");
        Ok(Some(x))
    }

    pub fn is_conjugate(&self, u: &Word, v: &Word) -> Result<bool, SmallCancelError> {
        Ok(self.conjugator(u, v)?.is_some())
    }
}

/// `[a[1,k], a[2,k]] [b[1,k], b[2,k]]`.
pub fn genus2_relator(k: u16) -> Word {
    let g = |s: GeneratorSymbol| Word::generator(s);
    commutator(&g(GeneratorSymbol::a(1, k)), &g(GeneratorSymbol::a(2, k)))
        * commutator(&g(GeneratorSymbol::b(1, k)), &g(GeneratorSymbol::b(2, k)))
}
