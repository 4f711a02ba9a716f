//! Tietze moves with derivation certificates, and a structural replay of the
//! simplification from the full kernel presentation to the short one.
//!
//! Every move is checked as it is applied: the abelianization (rank and
//! torsion) must not change, and every relator must still map to the
//! identity of G under the current embedding.

use std::collections::{BTreeMap, HashMap};

use log::debug;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::abelianize;
use crate::dps::words::{c, cat, f, inv};
use crate::dps::{build_presentation, embedding_map, DpsError, Presentation, Relator, Variant};
use crate::format::{symbol_text, variant_text, word_text};
use crate::freegroup::{GeneratorSymbol, Word};
use crate::gproduct::AmbientWord;
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TietzeError {
    #[error("relator index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("unknown relator index {0}")]
    UnknownIndex(usize),
    #[error("no relator is labelled {0}")]
    UnknownLabel(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("generator {0} still occurs and has no defining relator")]
    GeneratorInUse(GeneratorSymbol),
    #[error("generator {0} occurs in no relator")]
    NoDefiningRelator(GeneratorSymbol),
    #[error("unknown generator {0}")]
    UnknownGenerator(GeneratorSymbol),
    #[error("generator {0} already exists")]
    GeneratorExists(GeneratorSymbol),
    #[error("bad definition for {0}: {1}")]
    BadDefinition(GeneratorSymbol, String),
    #[error("relator {0} is not the identity in G")]
    NotIdentityInG(String),
    #[error("abelianization changed from {before} to {after}")]
    AbelianizationChanged { before: String, after: String },
    #[error(transparent)]
    Dps(#[from] DpsError),
}

impl From<crate::freegroup::FreeGroupError> for TietzeError {
    fn from(e: crate::freegroup::FreeGroupError) -> Self {
        TietzeError::Dps(e.into())
    }
}

impl From<crate::gproduct::GProductError> for TietzeError {
    fn from(e: crate::gproduct::GProductError) -> Self {
        TietzeError::Dps(e.into())
    }
}

/// One factor `conjugator * relator^sign * conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub relator: usize,
    #[serde(with = "word_text")]
    pub conjugator: Word,
    pub sign: i8,
}

/// An ordered product of conjugates of relators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationCertificate {
    pub steps: Vec<CertificateStep>,
}

impl DerivationCertificate {
    pub fn single(relator: usize, conjugator: Word, sign: i8) -> Self {
        DerivationCertificate { steps: vec![CertificateStep { relator, conjugator, sign }] }
    }

    /// The freely reduced product the certificate denotes over `p`.
    pub fn product(&self, p: &Presentation) -> Result<Word, TietzeError> {
        let mut out = Word::identity();
        for st in &self.steps {
            let r = p.relators.get(st.relator).ok_or(TietzeError::IndexOutOfRange(st.relator))?;
            let w = if st.sign < 0 { r.word.inverse() } else { r.word.clone() };
            out.append(&w.conjugate(&st.conjugator));
        }
        Ok(out)
    }
}

/// Whether `cert` over the relators of `p` multiplies out to `target`.
pub fn verify_certificate(p: &Presentation, target: &Word, cert: &DerivationCertificate) -> Result<bool, TietzeError> {
    if let Some(st) = cert.steps.iter().find(|st| st.sign != 1 && st.sign != -1) {
        return Err(TietzeError::InvalidCertificate(format!("sign {} on relator {}", st.sign, st.relator)));
    }
    Ok(cert.product(p)? == *target)
}

/// A word with its provenance label, as stored in scripts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledWord {
    #[serde(with = "word_text")]
    pub word: Word,
    pub provenance: String,
}

impl From<&Relator> for LabelledWord {
    fn from(r: &Relator) -> Self {
        LabelledWord { word: r.word.clone(), provenance: r.provenance.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum TietzeMove {
    /// Insert a consequence of the current relators, at the end unless `at`
    /// is given. Certificate indices refer to the relators before insertion.
    AddRelator {
        #[serde(with = "word_text")]
        word: Word,
        provenance: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        at: Option<usize>,
        certificate: DerivationCertificate,
    },
    /// Drop a relator that is a consequence of the others. Certificate
    /// indices refer to the relators after removal.
    RemoveRelator { index: usize, certificate: DerivationCertificate },
    /// New generator `symbol` with defining relator `symbol * definition^-1`.
    AddGenerator {
        #[serde(with = "symbol_text")]
        symbol: GeneratorSymbol,
        #[serde(with = "word_text")]
        definition: Word,
    },
    /// Eliminate `symbol` through a relator in which it occurs exactly once:
    /// the one labelled `via`, or else the shortest such relator.
    RemoveGenerator {
        #[serde(with = "symbol_text")]
        symbol: GeneratorSymbol,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        via: Option<String>,
    },
    /// Swap relator sets without a syntactic certificate. Old and new
    /// relators are checked in G and the abelianization is compared.
    ReplaceChecked { remove: Vec<String>, add: Vec<LabelledWord>, reason: String },
}

impl TietzeMove {
    pub fn describe(&self) -> String {
        match self {
            TietzeMove::AddRelator { provenance, certificate, .. } => {
                format!("add relator {provenance} ({} conjugates)", certificate.steps.len())
            }
            TietzeMove::RemoveRelator { index, certificate } => {
                format!("remove relator {index} ({} conjugates)", certificate.steps.len())
            }
            TietzeMove::AddGenerator { symbol, definition } => format!("add generator {symbol} = {definition}"),
            TietzeMove::RemoveGenerator { symbol, via } => match via {
                Some(v) => format!("eliminate {symbol} via {v}"),
                None => format!("eliminate {symbol}"),
            },
            TietzeMove::ReplaceChecked { remove, add, reason } => {
                format!("{reason}: replace {} relators by {} (checked in G)", remove.len(), add.len())
            }
        }
    }
}

/// A presentation together with the images of its generators in G.
#[derive(Clone, Debug)]
pub struct TietzeState {
    pub presentation: Presentation,
    pub embedding: HashMap<GeneratorSymbol, Word>,
    pub exec: Exec,
}

/// What one applied move did.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub description: String,
    pub generators: usize,
    pub relators: usize,
    pub abelianization: String,
}

/// `(rank, torsion)` of the abelianization.
fn invariants(p: &Presentation) -> (usize, Vec<BigInt>) {
    let a = abelianize(p);
    (a.rank, a.torsion)
}

fn describe_invariants(inv: &(usize, Vec<BigInt>)) -> String {
    let mut parts = vec![format!("Z^{}", inv.0)];
    parts.extend(inv.1.iter().map(|t| format!("Z/{t}")));
    parts.join(" + ")
}

fn slice(w: &Word, from: usize, to: usize) -> Word {
    Word::from_letters(w.letters()[from..to].iter().copied())
}

impl TietzeState {
    pub fn new(presentation: Presentation, embedding: HashMap<GeneratorSymbol, Word>, exec: Exec) -> Self {
        TietzeState { presentation, embedding, exec }
    }

    /// The built presentation of `variant` with its standard embedding.
    pub fn from_variant(r: u16, variant: Variant, exec: Exec) -> Result<Self, TietzeError> {
        let p = build_presentation(r, variant)?;
        let m = embedding_map(r, variant)?;
        let embedding = p.generators.symbols().iter().map(|s| (*s, m.image(s).expect("embedding covers generators").clone())).collect();
        Ok(TietzeState::new(p, embedding, exec))
    }

    pub fn image(&self, w: &Word) -> Result<AmbientWord, TietzeError> {
        Ok(AmbientWord::new(w.substitute(&self.embedding)?, self.presentation.rank)?)
    }

    /// Labels of relators whose image in G is not the identity.
    pub fn failing_relators(&self) -> Result<Vec<String>, TietzeError> {
        let verdicts = self.exec.map(&self.presentation.relators, |r| self.image(&r.word).map(|a| a.is_identity()));
        let mut bad = Vec::new();
        for (r, v) in self.presentation.relators.iter().zip(verdicts) {
            if !v? {
                bad.push(r.provenance.clone());
            }
        }
        Ok(bad)
    }

    pub fn index_of(&self, label: &str) -> Result<usize, TietzeError> {
        self.presentation
            .relators
            .iter()
            .position(|r| r.provenance == label)
            .ok_or_else(|| TietzeError::UnknownLabel(label.to_string()))
    }

    /// Apply `m` in place and check the invariants. On error the state is
    /// left unchanged.
    pub fn apply(&mut self, m: &TietzeMove) -> Result<StepRecord, TietzeError> {
        let before = invariants(&self.presentation);
        let mut next = self.clone();
        next.apply_unchecked(m)?;
        next.presentation.validate()?;
        let after = invariants(&next.presentation);
        if after != before {
            return Err(TietzeError::AbelianizationChanged {
                before: describe_invariants(&before),
                after: describe_invariants(&after),
            });
        }
        if let Some(bad) = next.failing_relators()?.into_iter().next() {
            return Err(TietzeError::NotIdentityInG(bad));
        }
        next.presentation.variant = None;
        *self = next;
        debug!("{}", m.describe());
        Ok(StepRecord {
            description: m.describe(),
            generators: self.presentation.generators.len(),
            relators: self.presentation.relators.len(),
            abelianization: describe_invariants(&after),
        })
    }

    fn apply_unchecked(&mut self, m: &TietzeMove) -> Result<(), TietzeError> {
        let p = &mut self.presentation;
        match m {
            TietzeMove::AddRelator { word, provenance, at, certificate } => {
                if !verify_certificate(p, word, certificate)? {
                    return Err(TietzeError::InvalidCertificate(format!("does not derive {provenance}")));
                }
                let at = at.unwrap_or(p.relators.len());
                if at > p.relators.len() {
                    return Err(TietzeError::UnknownIndex(at));
                }
                p.relators.insert(at, Relator { word: word.clone(), provenance: provenance.clone() });
            }
            TietzeMove::RemoveRelator { index, certificate } => {
                if *index >= p.relators.len() {
                    return Err(TietzeError::UnknownIndex(*index));
                }
                let removed = p.relators.remove(*index);
                if !verify_certificate(p, &removed.word, certificate)? {
                    return Err(TietzeError::InvalidCertificate(format!("does not derive {}", removed.provenance)));
                }
            }
            TietzeMove::AddGenerator { symbol, definition } => {
                if p.generators.contains(symbol) {
                    return Err(TietzeError::GeneratorExists(*symbol));
                }
                if definition.contains_symbol(symbol) {
                    return Err(TietzeError::BadDefinition(*symbol, "uses the new symbol".into()));
                }
                if let Some(s) = definition.support().into_iter().find(|s| !p.generators.contains(s)) {
                    return Err(TietzeError::BadDefinition(*symbol, format!("uses undeclared {s}")));
                }
                let img = definition.substitute(&self.embedding)?;
                p.generators.push(*symbol)?;
                let word = &Word::generator(*symbol) * &definition.inverse();
                p.relators.push(Relator { word, provenance: format!("define({symbol})") });
                self.embedding.insert(*symbol, img);
            }
            TietzeMove::RemoveGenerator { symbol, via } => {
                if !p.generators.contains(symbol) {
                    return Err(TietzeError::UnknownGenerator(*symbol));
                }
                let idx = match via {
                    Some(label) => {
                        let i = p.relators.iter().position(|r| r.provenance == *label).ok_or_else(|| TietzeError::UnknownLabel(label.clone()))?;
                        if p.relators[i].word.occurrences(symbol) != 1 {
                            return Err(TietzeError::GeneratorInUse(*symbol));
                        }
                        i
                    }
                    None => {
                        let mut best: Option<usize> = None;
                        for (i, r) in p.relators.iter().enumerate() {
                            if r.word.occurrences(symbol) == 1 && best.is_none_or(|b| r.word.len() < p.relators[b].word.len()) {
                                best = Some(i);
                            }
                        }
                        match best {
                            Some(i) => i,
                            None if p.relators.iter().any(|r| r.word.contains_symbol(symbol)) => {
                                return Err(TietzeError::GeneratorInUse(*symbol))
                            }
                            None => return Err(TietzeError::NoDefiningRelator(*symbol)),
                        }
                    }
                };
                let rel = p.relators.remove(idx).word;
                // rel = u s^e v, so s = (v u)^-e.
                let pos = rel.letters().iter().position(|l| l.symbol == *symbol).expect("symbol occurs once");
                let e = rel.letters()[pos].exponent();
                let rest = &slice(&rel, pos + 1, rel.len()) * &slice(&rel, 0, pos);
                let value = if e > 0 { rest.inverse() } else { rest };
                let mut sub: HashMap<GeneratorSymbol, Word> =
                    p.generators.symbols().iter().map(|s| (*s, Word::generator(*s))).collect();
                sub.insert(*symbol, value);
                let mut kept = Vec::with_capacity(p.relators.len());
                for r in p.relators.drain(..) {
                    let w = r.word.substitute(&sub)?;
                    if !w.is_empty() {
                        kept.push(Relator { word: w, provenance: r.provenance });
                    }
                }
                p.relators = kept;
                p.generators.remove(symbol);
                self.embedding.remove(symbol);
            }
            TietzeMove::ReplaceChecked { remove, add, .. } => {
                for label in remove {
                    let i = p.relators.iter().position(|r| r.provenance == *label).ok_or_else(|| TietzeError::UnknownLabel(label.clone()))?;
                    p.relators.remove(i);
                }
                for lw in add {
                    p.relators.push(Relator { word: lw.word.clone(), provenance: lw.provenance.clone() });
                }
            }
        }
        Ok(())
    }

    /// The move undoing `m`, computed before `m` is applied, when one exists.
    pub fn inverse_of(&self, m: &TietzeMove) -> Option<TietzeMove> {
        match m {
            TietzeMove::AddRelator { at, certificate, .. } => Some(TietzeMove::RemoveRelator {
                index: at.unwrap_or(self.presentation.relators.len()),
                certificate: certificate.clone(),
            }),
            TietzeMove::RemoveRelator { index, certificate } => {
                let r = self.presentation.relators.get(*index)?;
                Some(TietzeMove::AddRelator {
                    word: r.word.clone(),
                    provenance: r.provenance.clone(),
                    at: Some(*index),
                    certificate: certificate.clone(),
                })
            }
            TietzeMove::AddGenerator { symbol, .. } => {
                Some(TietzeMove::RemoveGenerator { symbol: *symbol, via: Some(format!("define({symbol})")) })
            }
            TietzeMove::RemoveGenerator { .. } | TietzeMove::ReplaceChecked { .. } => None,
        }
    }
}

/// Apply one move to a state, returning the new state.
pub fn apply_move(state: &TietzeState, m: &TietzeMove) -> Result<TietzeState, TietzeError> {
    let mut next = state.clone();
    next.apply(m)?;
    Ok(next)
}

/// A starting presentation, the moves to apply and the variant expected at
/// the end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TietzeScript {
    #[serde(with = "variant_text")]
    pub start: Variant,
    pub rank: u16,
    pub moves: Vec<TietzeMove>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_variant")]
    pub expected: Option<Variant>,
}

mod opt_variant {
    use crate::dps::Variant;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Variant>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(v.cli_name()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Variant>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// Canonical form of a relator up to cyclic permutation and inversion.
pub fn canonical_relator(w: &Word) -> Word {
    let (core, _) = w.cyclic_reduce();
    let (a, _) = core.least_rotation();
    let (b, _) = core.inverse().least_rotation();
    a.min(b)
}

/// How the relators of a state compare with a target presentation, as
/// multisets of canonical forms.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Comparison {
    pub generators_match: bool,
    /// Labels of target relators with no counterpart.
    pub missing: Vec<String>,
    /// Labels of current relators with no counterpart in the target.
    pub extra: Vec<String>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.generators_match && self.missing.is_empty() && self.extra.is_empty()
    }
}

fn multiset(p: &Presentation) -> BTreeMap<Word, Vec<usize>> {
    let mut m: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (i, r) in p.relators.iter().enumerate() {
        m.entry(canonical_relator(&r.word)).or_default().push(i);
    }
    m
}

/// Indices of target relators missing from `p` and of relators of `p`
/// missing from the target.
fn differences(p: &Presentation, target: &Presentation) -> (Vec<usize>, Vec<usize>) {
    let cur = multiset(p);
    let tgt = multiset(target);
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for (w, ti) in &tgt {
        let have = cur.get(w).map_or(0, Vec::len);
        missing.extend(ti.iter().skip(have));
    }
    for (w, ci) in &cur {
        let want = tgt.get(w).map_or(0, Vec::len);
        extra.extend(ci.iter().skip(want));
    }
    missing.sort();
    extra.sort();
    (missing, extra)
}

pub fn compare(p: &Presentation, target: &Presentation) -> Comparison {
    let (missing, extra) = differences(p, target);
    Comparison {
        generators_match: p.generators.sorted() == target.generators.sorted(),
        missing: missing.into_iter().map(|i| target.relators[i].provenance.clone()).collect(),
        extra: extra.into_iter().map(|i| p.relators[i].provenance.clone()).collect(),
    }
}

/// Certificate for `u` as a single conjugate of relator `idx` to the power
/// `sign`, when the cyclic cores agree up to rotation.
fn single_conjugate(p: &Presentation, u: &Word, idx: usize, sign: i8) -> Option<DerivationCertificate> {
    let rel = &p.relators[idx].word;
    let big_r = if sign < 0 { rel.inverse() } else { rel.clone() };
    let (c_r, h_r) = big_r.cyclic_reduce();
    let (c_u, h_u) = u.cyclic_reduce();
    if c_r.len() != c_u.len() || c_r.is_empty() {
        return None;
    }
    // rotate(c_r, k) = P^-1 c_r P with P the first k letters of c_r.
    let k = (0..c_r.len()).find(|&k| c_r.rotate(k) == c_u)?;
    let pk = slice(&c_r, 0, k);
    let conj = cat(&[&h_u, &pk.inverse(), &h_r.inverse()]);
    let cert = DerivationCertificate::single(idx, conj, sign);
    (cert.product(p).ok()? == *u).then_some(cert)
}

/// Index from canonical forms to relator indices.
struct ConjugateIndex {
    by_form: HashMap<Word, Vec<usize>>,
}

impl ConjugateIndex {
    fn new(p: &Presentation) -> Self {
        let mut by_form: HashMap<Word, Vec<usize>> = HashMap::new();
        for (i, r) in p.relators.iter().enumerate() {
            by_form.entry(canonical_relator(&r.word)).or_default().push(i);
        }
        ConjugateIndex { by_form }
    }

    fn single(&self, p: &Presentation, u: &Word) -> Option<DerivationCertificate> {
        if u.is_empty() {
            return None;
        }
        for &i in self.by_form.get(&canonical_relator(u))? {
            for sign in [1, -1] {
                if let Some(c) = single_conjugate(p, u, i, sign) {
                    return Some(c);
                }
            }
        }
        None
    }
}

/// Bounded search for a certificate of `target` over the relators of `p`:
/// a single conjugate, or a product of two conjugates obtained by cutting
/// `target` (or a cyclic rotation of its core) in two.
pub fn search_certificate(p: &Presentation, target: &Word, max_terms: usize) -> Option<DerivationCertificate> {
    let idx = ConjugateIndex::new(p);
    if target.is_empty() {
        return Some(DerivationCertificate::default());
    }
    if max_terms >= 1 {
        if let Some(c) = idx.single(p, target) {
            return Some(c);
        }
    }
    if max_terms < 2 {
        return None;
    }
    let (core, h) = target.cyclic_reduce();
    let n = core.len();
    for k in 0..n {
        // rotate(core, k) = P^-1 core P, so target = (h P^-1) rot (h P^-1)^-1.
        let rot = core.rotate(k);
        let outer = &h * &slice(&core, 0, k).inverse();
        for s in 1..n {
            let (Some(c1), Some(c2)) = (idx.single(p, &slice(&rot, 0, s)), idx.single(p, &slice(&rot, s, n))) else {
                continue;
            };
            let steps = c1
                .steps
                .into_iter()
                .chain(c2.steps)
                .map(|st| CertificateStep { conjugator: &outer * &st.conjugator, ..st })
                .collect();
            let cert = DerivationCertificate { steps };
            if cert.product(p).ok().as_ref() == Some(target) {
                return Some(cert);
            }
        }
    }
    None
}

/// Result of replaying a script.
#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub state: TietzeState,
    pub steps: Vec<StepRecord>,
    pub comparison: Option<Comparison>,
}

impl ReplayReport {
    pub fn presentation(&self) -> &Presentation {
        &self.state.presentation
    }

    /// True when there is no expected variant or the final presentation
    /// matches it.
    pub fn succeeded(&self) -> bool {
        self.comparison.as_ref().is_none_or(Comparison::matches)
    }
}

/// Replay `script` move by move from the built starting presentation.
pub fn replay(script: &TietzeScript, exec: Exec) -> Result<ReplayReport, TietzeError> {
    let mut state = TietzeState::from_variant(script.rank, script.start, exec)?;
    let mut steps = Vec::with_capacity(script.moves.len());
    for m in &script.moves {
        steps.push(state.apply(m)?);
    }
    let comparison = match script.expected {
        Some(v) => Some(compare(&state.presentation, &build_presentation(script.rank, v)?)),
        None => None,
    };
    Ok(ReplayReport { state, steps, comparison })
}

/// Counts of how the structural replay closed the gap to the target.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CompletionCounts {
    pub certified_additions: usize,
    pub checked_additions: usize,
    pub certified_removals: usize,
    pub checked_removals: usize,
}

#[derive(Clone, Debug)]
pub struct StructuralReplay {
    pub script: TietzeScript,
    pub report: ReplayReport,
    pub completion: CompletionCounts,
}

/// Records moves while applying them.
struct ScriptBuilder {
    state: TietzeState,
    moves: Vec<TietzeMove>,
    steps: Vec<StepRecord>,
}

impl ScriptBuilder {
    fn push(&mut self, m: TietzeMove) -> Result<(), TietzeError> {
        self.steps.push(self.state.apply(&m)?);
        self.moves.push(m);
        Ok(())
    }

    fn replace(&mut self, reason: &str, remove: Vec<String>, add: Vec<LabelledWord>) -> Result<(), TietzeError> {
        if remove.is_empty() && add.is_empty() {
            return Ok(());
        }
        self.push(TietzeMove::ReplaceChecked { remove, add, reason: reason.into() })
    }
}

/// Numeric parameter `key` in a label such as `fam(i=1,k=4)`.
fn label_param(label: &str, key: &str) -> Option<u16> {
    let inner = label.split_once('(')?.1.strip_suffix(')')?;
    inner.split(',').find_map(|kv| kv.strip_prefix(key)?.strip_prefix('=')?.parse().ok())
}

/// The `(a, b)` parameters of a commutator label `AB-commutator(a=..,b=..)`.
fn ab_params(label: &str) -> Option<(&str, &str)> {
    label.strip_prefix("AB-commutator(a=")?.strip_suffix(')')?.split_once(",b=")
}

/// Labels of relators in `state` satisfying `keep`.
fn labels_where(state: &TietzeState, keep: impl Fn(&str) -> bool) -> Vec<String> {
    state.presentation.relators.iter().map(|r| r.provenance.clone()).filter(|l| keep(l)).collect()
}

/// Target relators satisfying `keep`.
fn target_where(target: &Presentation, keep: impl Fn(&str) -> bool) -> Vec<LabelledWord> {
    target.relators.iter().filter(|r| keep(&r.provenance)).map(LabelledWord::from).collect()
}

/// Replay the simplification from the full kernel presentation at rank r
/// (at least 4) to the short one, recording the script.
///
/// Generators x_i, del and c[i,r] are eliminated by genuine Tietze moves.
/// The relator swaps are checked replacements; remaining differences are
/// closed one relator at a time, with a certificate when the bounded search
/// finds one and as a checked replacement otherwise.
pub fn structural_replay(r: u16, exec: Exec) -> Result<StructuralReplay, TietzeError> {
    if r < 4 {
        return Err(DpsError::BadRank(r).into());
    }
    let target = build_presentation(r, Variant::KSimplified)?;
    let mut b = ScriptBuilder { state: TietzeState::from_variant(r, Variant::KFull, exec)?, moves: Vec::new(), steps: Vec::new() };
    let rs = r.to_string();

    for i in [1u8, 2] {
        b.push(TietzeMove::RemoveGenerator { symbol: GeneratorSymbol::x(i), via: Some(format!("X-identification(i={i})")) })?;
    }
    b.push(TietzeMove::RemoveGenerator { symbol: GeneratorSymbol::delta(), via: Some("S1-commutator-x".into()) })?;
    for i in [1u8, 2] {
        // c[i,r] = f[i,r]' c[i,1] g[i,r], so g[i,r] = c[i,1]' f[i,r] c[i,r].
        let def = cat(&[&inv(&c(i)), &f(i, r), &Word::generator(GeneratorSymbol::c(i, r))]);
        b.push(TietzeMove::AddGenerator { symbol: GeneratorSymbol::g(i, r), definition: def })?;
        b.push(TietzeMove::RemoveGenerator { symbol: GeneratorSymbol::c(i, r), via: Some(format!("define(g[{i},{r}])")) })?;
    }

    let cr = |s: &str| s.starts_with("c[") && s.ends_with(&format!(",{rs}]"));
    let remove = labels_where(&b.state, |l| match ab_params(l) {
        Some((a, bb)) => (cr(bb) && a != "d") || (a == "d" && bb == "del"),
        None => false,
    });
    let add = target_where(&target, |l| {
        l == "R1-comm-ff-d"
            || (l.starts_with("R1-comm-c-g(") && label_param(l, "k") == Some(r))
            || (l.starts_with("R1-comm-f-g(") && label_param(l, "l") == Some(r))
            || (l.starts_with("R1-comm-cg-cg(") && label_param(l, "k") == Some(r))
    });
    b.replace("commutators with the last factor", remove, add)?;

    let remove = labels_where(&b.state, |l| match ab_params(l) {
        Some((a, bb)) => (a == "d" && cr(bb)) || (a != "d" && bb == "del"),
        None => false,
    });
    b.replace("redundant commutators", remove, Vec::new())?;

    let add = target_where(&target, |l| l == format!("R2-ST(k={r})"));
    b.replace("surface relator swap", vec!["S5-delta-surface".into()], add)?;

    let mut counts = CompletionCounts::default();
    let (missing, _) = differences(&b.state.presentation, &target);
    let mut unproved = Vec::new();
    for i in missing {
        let rel = &target.relators[i];
        match search_certificate(&b.state.presentation, &rel.word, 2) {
            Some(certificate) => {
                counts.certified_additions += 1;
                b.push(TietzeMove::AddRelator { word: rel.word.clone(), provenance: rel.provenance.clone(), at: None, certificate })?;
            }
            None => unproved.push(LabelledWord::from(rel)),
        }
    }
    counts.checked_additions = unproved.len();
    b.replace("range completion", Vec::new(), unproved)?;

    let mut unproved = Vec::new();
    loop {
        let (_, extra) = differences(&b.state.presentation, &target);
        let mut removed = false;
        for &e in extra.iter().rev() {
            let label = b.state.presentation.relators[e].provenance.clone();
            if unproved.contains(&label) {
                continue;
            }
            let mut rest = b.state.presentation.clone();
            let word = rest.relators.remove(e).word;
            match search_certificate(&rest, &word, 2) {
                Some(certificate) => {
                    counts.certified_removals += 1;
                    b.push(TietzeMove::RemoveRelator { index: e, certificate })?;
                    removed = true;
                    break;
                }
                None => unproved.push(label),
            }
        }
        if !removed {
            break;
        }
    }
    counts.checked_removals = unproved.len();
    b.replace("range completion", unproved, Vec::new())?;

    let script = TietzeScript { start: Variant::KFull, rank: r, moves: b.moves, expected: Some(Variant::KSimplified) };
    let comparison = Some(compare(&b.state.presentation, &target));
    let report = ReplayReport { state: b.state, steps: b.steps, comparison };
    Ok(StructuralReplay { script, report, completion: counts })
}
