//! End-to-end verification of a built presentation: relators in G, kernel
//! membership, the identity corpus, mutation sensitivity and the first
//! Betti number.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::abelianize;
use crate::dps::{build_presentation, embedding_map, inverse_map, lemma_corpus, typo_corpus, DpsError, Presentation, SubstitutionMap, Variant};
use crate::freegroup::{commutator, GeneratorSymbol, Word};
use crate::gproduct::AmbientWord;
use crate::par::Exec;
use crate::smallcancel::genus2_relator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub exec: Exec,
    pub seed: u64,
    /// Number of single-letter mutants to try. Zero skips the experiment.
    pub mutations: usize,
    /// Whether to evaluate the identity corpus.
    pub corpus: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exec: Exec::Parallel, seed: 0, mutations: 100, corpus: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorRow {
    pub index: usize,
    pub provenance: String,
    /// Dehn steps used in each factor.
    pub trace_lengths: Vec<usize>,
    pub pass: bool,
}

/// A named yes/no check, such as a generator landing in the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypoRow {
    pub note: String,
    pub verbatim: CheckRow,
    pub corrected: Vec<CheckRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationSummary {
    pub seed: u64,
    pub trials: usize,
    pub caught: usize,
    /// Labels of relators whose mutant still mapped to the identity.
    pub survivors: Vec<String>,
}

impl MutationSummary {
    /// At least 90% of mutants caught.
    pub fn pass(&self) -> bool {
        self.caught * 10 >= self.trials * 9
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianSummary {
    pub description: String,
    pub betti: usize,
    pub expected_betti: usize,
    pub torsion_free: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub variant: String,
    pub rank: u16,
    pub seed: u64,
    pub relators: Vec<RelatorRow>,
    pub checks: Vec<CheckRow>,
    pub corpus: Vec<CheckRow>,
    pub typos: Vec<TypoRow>,
    pub mutation: Option<MutationSummary>,
    pub abelianization: AbelianSummary,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.relators.iter().all(|r| r.pass)
            && self.checks.iter().all(|c| c.pass)
            && self.corpus.iter().all(|c| c.pass)
            && self.mutation.as_ref().is_none_or(MutationSummary::pass)
            && self.abelianization.pass
    }

    /// The first failing row, for error messages.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(r) = self.relators.iter().find(|r| !r.pass) {
            return Some(format!("relator {}", r.provenance));
        }
        if let Some(c) = self.checks.iter().chain(&self.corpus).find(|c| !c.pass) {
            return Some(c.name.clone());
        }
        if self.mutation.as_ref().is_some_and(|m| !m.pass()) {
            return Some("mutation sensitivity".into());
        }
        (!self.abelianization.pass).then(|| "abelianization".into())
    }

    /// Everything except the wall time, which varies between runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {} r={} seed={}", self.variant, self.rank, self.seed)?;
        for r in &self.relators {
            let traces: Vec<String> = r.trace_lengths.iter().map(|t| t.to_string()).collect();
            writeln!(f, "relator #{} {} dehn=[{}] {}", r.index, r.provenance, traces.join(","), verdict(r.pass))?;
        }
        for c in &self.checks {
            writeln!(f, "check {} {}", c.name, verdict(c.pass))?;
        }
        if !self.corpus.is_empty() {
            for c in self.corpus.iter().filter(|c| !c.pass) {
                writeln!(f, "corpus {} FAIL", c.name)?;
            }
            let ok = self.corpus.iter().filter(|c| c.pass).count();
            writeln!(f, "corpus {ok}/{} claims hold", self.corpus.len())?;
        }
        for t in &self.typos {
            let mut line = format!("reading {}: as printed {}", t.note, verdict(t.verbatim.pass));
            for c in &t.corrected {
                let _ = write!(line, "; {} {}", c.name, verdict(c.pass));
            }
            writeln!(f, "{line}")?;
        }
        if let Some(m) = &self.mutation {
            writeln!(f, "mutation {}/{} mutants caught (seed {}) {}", m.caught, m.trials, m.seed, verdict(m.pass()))?;
        }
        let a = &self.abelianization;
        writeln!(f, "abelianization {}", a.description)?;
        writeln!(f, "b1 = {} (expected {}) {}", a.betti, a.expected_betti, verdict(a.pass))?;
        writeln!(f, "verdict {}", verdict(self.passed()))
    }
}

/// The first Betti number each presentation should have.
pub fn expected_betti(variant: Variant, r: u16) -> usize {
    match variant {
        Variant::GFull => 4 * r as usize,
        Variant::SurfaceR => 4,
        Variant::KFull | Variant::KSimplified | Variant::KR3 => 4 * r as usize - 2,
    }
}

/// Per-relator rows: image in G and per-factor Dehn work.
pub fn relator_rows(p: &Presentation, m: &SubstitutionMap, exec: Exec) -> Result<Vec<RelatorRow>, DpsError> {
    let idx: Vec<usize> = (0..p.relators.len()).collect();
    exec.map(&idx, |&i| {
        let r = &p.relators[i];
        let img = m.to_ambient(&r.word)?;
        Ok(RelatorRow {
            index: i,
            provenance: r.provenance.clone(),
            trace_lengths: img.project().trace_lengths(),
            pass: img.is_identity(),
        })
    })
    .into_iter()
    .collect()
}

/// The standard relators of G: one surface relator per factor and the
/// commutators of generators from different factors.
pub fn product_relators(r: u16) -> Vec<(String, Word)> {
    let mut v: Vec<(String, Word)> = (1..=r).map(|k| (format!("surface(k={k})"), genus2_relator(k))).collect();
    let gens = |k: u16| [GeneratorSymbol::a(1, k), GeneratorSymbol::a(2, k), GeneratorSymbol::b(1, k), GeneratorSymbol::b(2, k)];
    for k in 1..=r {
        for l in k + 1..=r {
            for s in gens(k) {
                for t in gens(l) {
                    v.push((format!("factors-commute({s},{t})"), commutator(&s.into(), &t.into())));
                }
            }
        }
    }
    v
}

fn kernel_checks(p: &Presentation, m: &SubstitutionMap) -> Result<Vec<CheckRow>, DpsError> {
    p.generators
        .symbols()
        .iter()
        .map(|s| Ok(CheckRow { name: format!("kernel-membership({s})"), pass: m.to_ambient(&Word::generator(*s))?.in_kernel() }))
        .collect()
}

/// Pull each relator of G back along the inverse map and push it forward
/// again; each must be the identity.
fn round_trip_checks(r: u16, exec: Exec) -> Result<Vec<CheckRow>, DpsError> {
    let back = inverse_map(r)?;
    let there = embedding_map(r, Variant::GFull)?;
    let rels = product_relators(r);
    exec.map(&rels, |(name, w)| {
        let img = there.to_ambient(&back.substitute(w)?)?;
        Ok(CheckRow { name: format!("round-trip {name}"), pass: img.is_identity() })
    })
    .into_iter()
    .collect()
}

fn corpus_rows(r: u16, exec: Exec) -> Result<(Vec<CheckRow>, Vec<TypoRow>), DpsError> {
    let claims = lemma_corpus(r)?;
    let corpus = exec
        .map(&claims, |c| c.evaluate())
        .into_iter()
        .map(|o| o.map(|o| CheckRow { name: o.label, pass: o.holds }))
        .collect::<Result<_, _>>()?;
    let cases = typo_corpus(r)?;
    let mut typos = Vec::new();
    for (case, out) in cases.iter().zip(exec.map(&cases, |c| c.evaluate())) {
        let out = out?;
        typos.push(TypoRow {
            note: case.note.to_string(),
            verbatim: CheckRow { name: out.verbatim.label, pass: out.verbatim.holds },
            corrected: out.corrected.into_iter().map(|o| CheckRow { name: o.label, pass: o.holds }).collect(),
        });
    }
    Ok((corpus, typos))
}

/// Flip the exponent of one random letter of a random relator, `trials`
/// times, and count mutants whose image in G is not the identity.
pub fn mutation_sensitivity(p: &Presentation, m: &SubstitutionMap, trials: usize, seed: u64, exec: Exec) -> Result<MutationSummary, DpsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, usize)> = (0..trials)
        .map(|_| {
            let i = rng.gen_range(0..p.relators.len());
            (i, rng.gen_range(0..p.relators[i].word.len()))
        })
        .collect();
    let results = exec.map(&picks, |&(i, pos)| {
        let w = &p.relators[i].word;
        let mutant = Word::from_letters(
            w.letters().iter().enumerate().map(|(j, l)| if j == pos { l.inverse() } else { *l }),
        );
        m.to_ambient(&mutant).map(|a| !a.is_identity())
    });
    let mut caught = 0;
    let mut survivors = Vec::new();
    for (&(i, _), res) in picks.iter().zip(results) {
        if res? {
            caught += 1;
        } else {
            survivors.push(p.relators[i].provenance.clone());
        }
    }
    Ok(MutationSummary { seed, trials, caught, survivors })
}

/// Verify `variant` at rank r.
pub fn verify(r: u16, variant: Variant, opts: &VerifyOptions) -> Result<VerificationReport, DpsError> {
    let start = Instant::now();
    let p = build_presentation(r, variant)?;
    let v = p.variant.expect("built presentations carry their variant");
    let m = embedding_map(r, v)?;
    let relators = relator_rows(&p, &m, opts.exec)?;
    let checks = match v {
        Variant::GFull => round_trip_checks(r, opts.exec)?,
        Variant::SurfaceR => Vec::new(),
        _ => kernel_checks(&p, &m)?,
    };
    let (corpus, typos) = if opts.corpus && r >= 3 { corpus_rows(r, opts.exec)? } else { (Vec::new(), Vec::new()) };
    let mutation = if opts.mutations > 0 {
        Some(mutation_sensitivity(&p, &m, opts.mutations, opts.seed, opts.exec)?)
    } else {
        None
    };
    let ab = abelianize(&p);
    let expected = expected_betti(v, r);
    let abelianization = AbelianSummary {
        description: ab.describe(),
        betti: ab.rank,
        expected_betti: expected,
        torsion_free: ab.torsion.is_empty(),
        pass: ab.rank == expected && ab.torsion.is_empty(),
    };
    Ok(VerificationReport {
        variant: variant.cli_name().to_string(),
        rank: r,
        seed: opts.seed,
        relators,
        checks,
        corpus,
        typos,
        mutation,
        abelianization,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Whether `w` maps to the identity of G at rank r.
pub fn ambient_identity(w: &Word, r: u16) -> Result<bool, DpsError> {
    Ok(AmbientWord::new(w.clone(), r)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions { corpus: false, ..Default::default() }
    }

    #[test]
    fn every_variant_passes() {
        for (r, v) in [(2, Variant::GFull), (3, Variant::GFull), (3, Variant::SurfaceR), (3, Variant::KFull), (3, Variant::KR3), (4, Variant::KSimplified)] {
            let rep = verify(r, v, &quick()).unwrap();
            assert!(rep.passed(), "{v} r={r}: {:?}", rep.first_failure());
            assert_eq!(rep.abelianization.betti, expected_betti(v, r));
        }
    }

    #[test]
    fn report_is_deterministic() {
        let a = verify(4, Variant::KSimplified, &VerifyOptions { exec: Exec::Sequential, ..quick() }).unwrap();
        let b = verify(4, Variant::KSimplified, &quick()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_string().lines().last(), Some("verdict PASS"));
    }

    #[test]
    fn mutants_are_caught() {
        let p = build_presentation(4, Variant::KSimplified).unwrap();
        let m = embedding_map(4, Variant::KSimplified).unwrap();
        let s = mutation_sensitivity(&p, &m, 100, 0, Exec::Parallel).unwrap();
        assert!(s.pass(), "{s:?}");
    }

    #[test]
    fn product_relator_count() {
        // r surface relators and 16 commutators per pair of factors.
        assert_eq!(product_relators(3).len(), 3 + 16 * 3);
        assert!(product_relators(2).iter().all(|(_, w)| ambient_identity(w, 2).unwrap()));
    }
}
