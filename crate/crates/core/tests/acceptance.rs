//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kpres::abelian::{abelianize, column_order, smith_normal_form, IntegerMatrix};
use kpres::dps::{
    build_presentation, embedding_map, frame_map, inverse_map, lemma_corpus, projection_preimages, typo_corpus, Frame, Variant,
};
use kpres::format::{from_json, to_gap, to_json, to_magma, to_text};
use kpres::freegroup::{GeneratorSymbol, Word};
use kpres::gproduct::AmbientWord;
use kpres::par::Exec;
use kpres::smallcancel::{genus2_relator, SymmetrizedRelatorSet};
use kpres::verify::{mutation_sensitivity, product_relators, verify, VerifyOptions};

use common::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Every relator maps to the identity in G (Dehn) and in the nilpotent
/// quotient oracle. Returns the first failing label, if any.
fn relators_sound(r: u16, v: Variant) -> Result<usize, String> {
    let p = build_presentation(r, v).map_err(|e| e.to_string())?;
    let m = embedding_map(r, v).map_err(|e| e.to_string())?;
    for rel in &p.relators {
        let img = m.to_ambient(&rel.word).map_err(|e| e.to_string())?;
        if !img.is_identity() || !nil2_trivial(img.word(), r) {
            return Err(format!("{v} r={r}: {}", rel.provenance));
        }
    }
    Ok(p.relators.len())
}

fn relator_soundness_full() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    let mut at8 = 0.0;
    let mut cases: Vec<(u16, Variant)> = (3..=8).map(|r| (r, Variant::KFull)).collect();
    cases.push((3, Variant::KR3));
    for (r, v) in cases {
        let t8 = Instant::now();
        match relators_sound(r, v) {
            Ok(n) => total += n,
            Err(e) => return outcome(false, e),
        }
        if r == 8 {
            at8 = t8.elapsed().as_secs_f64();
        }
    }
    outcome(at8 < 10.0, format!("{total} relators, r=3..8 and the r=3 listing; r=8 took {at8:.2}s, all {:.2}s", t.elapsed().as_secs_f64()))
}

fn relator_soundness_simplified() -> Outcome {
    let mut total = 0;
    for r in 4..=8 {
        match relators_sound(r, Variant::KSimplified) {
            Ok(n) => total += n,
            Err(e) => return outcome(false, e),
        }
    }
    outcome(true, format!("{total} relators, r=4..8"))
}

fn betti_numbers() -> Outcome {
    let mut slowest = 0.0f64;
    for r in 3..=8u16 {
        let t = Instant::now();
        let want = 4 * r as usize - 2;
        for v in [Variant::KSimplified, Variant::KFull] {
            let p = build_presentation(r, v).unwrap();
            let ab = abelianize(&p);
            if ab.rank != want || betti_oracle(&p) != want || !ab.torsion.is_empty() {
                return outcome(false, format!("{v} r={r}: {} (oracle b1 {})", ab.describe(), betti_oracle(&p)));
            }
            // d = 1 holds: adding it as a relator changes nothing.
            let cols = column_order(&p);
            let dcol = cols.iter().position(|s| *s == GeneratorSymbol::d()).unwrap();
            let mut rows: Vec<Vec<i64>> = ab.rows.iter().map(|(_, r)| r.clone()).collect();
            let mut unit = vec![0; cols.len()];
            unit[dcol] = 1;
            rows.push(unit);
            if rank_fraction_free(&rows) != cols.len() - want {
                return outcome(false, format!("{v} r={r}: d is not trivial in the abelianization"));
            }
            if v == Variant::KSimplified && r >= 4 {
                let only_d = ab.rows.iter().all(|(_, row)| row.iter().enumerate().all(|(j, &e)| j == dcol || e == 0));
                if !only_d {
                    return outcome(false, format!("r={r}: a relator abelianizes to something other than a power of d"));
                }
            }
        }
        slowest = slowest.max(t.elapsed().as_secs_f64());
    }
    outcome(slowest < 5.0, format!("b1 = 4r-2 for r=3..8, torsion free, only d = 1; slowest rank {slowest:.2}s"))
}

fn product_consistency() -> Outcome {
    let mut count = 0;
    for r in 2..=8 {
        if let Err(e) = relators_sound(r, Variant::GFull) {
            return outcome(false, e);
        }
        let back = inverse_map(r).unwrap();
        let there = embedding_map(r, Variant::GFull).unwrap();
        for (name, w) in product_relators(r) {
            let img = there.to_ambient(&back.substitute(&w).unwrap()).unwrap();
            if !img.is_identity() {
                return outcome(false, format!("r={r}: round trip of {name}"));
            }
            count += 1;
        }
        // The round trip is the identity on generators too.
        for s in ambient_symbols(r) {
            let g = Word::generator(s);
            let img = there.to_ambient(&back.substitute(&g).unwrap()).unwrap();
            if !img.mul(&AmbientWord::new(g, r).unwrap().inverse()).unwrap().is_identity() {
                return outcome(false, format!("r={r}: round trip of {s}"));
            }
        }
    }
    outcome(true, format!("product relators vanish for r=2..8; {count} relators of G survive the round trip"))
}

fn surface_relators() -> Outcome {
    for r in 3..=8 {
        let p = build_presentation(r, Variant::SurfaceR).unwrap();
        let m = frame_map(Frame::Surface, r).unwrap();
        if p.relators.len() != 2 {
            return outcome(false, format!("r={r}: {} relators", p.relators.len()));
        }
        for rel in &p.relators {
            let img = m.to_ambient(&rel.word).unwrap();
            let proj = img.project();
            let elsewhere = (1..r).any(|k| !proj.factor(k).is_empty());
            if elsewhere || !img.is_identity() || !nil2_trivial(img.word(), r) {
                return outcome(false, format!("r={r}: {}", rel.provenance));
            }
        }
    }
    outcome(true, "both relators vanish in the last factor for r=3..8")
}

fn identity_corpus_holds() -> Outcome {
    let mut n = 0;
    for r in 3..=6 {
        let claims = lemma_corpus(r).unwrap();
        let results = Exec::Parallel.map(&claims, |c| c.evaluate().unwrap());
        if let Some(bad) = results.iter().find(|o| !o.holds) {
            return outcome(false, format!("r={r}: {}", bad.label));
        }
        n += claims.len();
    }
    // Suspected misprints: tally each reading over its instances.
    let mut tally: std::collections::BTreeMap<&str, [usize; 5]> = Default::default();
    for case in typo_corpus(4).unwrap() {
        let out = case.evaluate().unwrap();
        let t = tally.entry(case.note).or_default();
        t[0] += 1;
        t[1] += out.verbatim.holds as usize;
        t[2] += out.corrected.len();
        t[3] += out.corrected.iter().filter(|c| c.holds).count();
        t[4] += out.corrected.iter().any(|c| c.holds) as usize;
    }
    for (note, t) in tally {
        println!(
            "    r=4 reading {note}: as printed holds in {}/{}; alternatives hold in {}/{}; some reading holds in {}/{}",
            t[1], t[0], t[3], t[2], t[4], t[0]
        );
    }
    outcome(true, format!("{n} claims hold for r=3..6"))
}

fn subdirectness() -> Outcome {
    let mut n = 0;
    for r in 3..=6u16 {
        let pre = projection_preimages(r).unwrap();
        if pre.len() != 4 * (r as usize - 1) {
            return outcome(false, format!("r={r}: {} preimages", pre.len()));
        }
        let m = frame_map(Frame::Kernel, r).unwrap();
        for (target, w) in &pre {
            let img = m.to_ambient(w).unwrap();
            let proj = img.project();
            for k in 1..r {
                let want = if target.sup() == Some(k) { Word::generator(*target) } else { Word::identity() };
                if *proj.factor(k) != want {
                    return outcome(false, format!("r={r}: preimage of {target} has factor {k} = {}", proj.factor(k)));
                }
            }
            n += 1;
        }
    }
    outcome(true, format!("{n} preimages project exactly, r=3..6"))
}

fn dehn_properties() -> Outcome {
    let t = Instant::now();
    let set = SymmetrizedRelatorSet::genus2(1);
    if set.max_piece() != 1 {
        return outcome(false, format!("max piece {}", set.max_piece()));
    }
    let rel = genus2_relator(1);
    if !nil2_trivial(&rel, 1) || nil2_trivial(&commutator_a(), 1) {
        return outcome(false, "nilpotent oracle disagrees with the surface relator");
    }
    let syms = factor_symbols(1);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 0..200 {
        let mut w = Word::identity();
        for _ in 0..rng.gen_range(1..=10) {
            let len = rng.gen_range(0..=10);
            let g = random_word(&mut rng, &syms, len);
            let rr = if rng.gen_bool(0.5) { rel.clone() } else { rel.inverse() };
            w.append(&rr.conjugate(&g));
        }
        if !set.is_identity(&w).unwrap() {
            return outcome(false, format!("conjugate product {n} not reduced to the identity"));
        }
    }
    let mut tried = 0;
    while tried < 200 {
        let len = rng.gen_range(1..=30);
        let w = random_word(&mut rng, &syms, len);
        if syms.iter().all(|s| w.exponent_sum(s) == 0) {
            continue;
        }
        tried += 1;
        if set.is_identity(&w).unwrap() {
            return outcome(false, format!("{w} has nonzero abelianization but reduced to the identity"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(secs < 2.0, format!("max piece 1; 200 + 200 seeded words decided in {secs:.2}s (seed 8)"))
}

fn commutator_a() -> Word {
    kpres::freegroup::commutator(&GeneratorSymbol::a(1, 1).into(), &GeneratorSymbol::a(2, 1).into())
}

fn smith_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 0..100 {
        let (rows, cols) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntegerMatrix::from_rows(cols, &data);
        let sf = smith_normal_form(&a);
        if sf.u.mul(&a).mul(&sf.v) != sf.s || !sf.s.is_diagonal() {
            return outcome(false, format!("matrix {n}: U A V != S"));
        }
        let dense = |m: &IntegerMatrix| -> Vec<Vec<BigInt>> { (0..m.rows()).map(|i| m.row(i).to_vec()).collect() };
        if !is_unit(&det_bareiss(&dense(&sf.u))) || !is_unit(&det_bareiss(&dense(&sf.v))) {
            return outcome(false, format!("matrix {n}: transform not unimodular"));
        }
        let f = &sf.invariant_factors;
        if f.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) || f.iter().any(|x| x <= &BigInt::zero()) {
            return outcome(false, format!("matrix {n}: divisibility chain broken"));
        }
        if f.len() != rank_fraction_free(&data) {
            return outcome(false, format!("matrix {n}: rank {} vs oracle {}", f.len(), rank_fraction_free(&data)));
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| sf.s.get(i, i).clone()).filter(|x| !x.is_zero()).collect();
        if &diag != f {
            return outcome(false, format!("matrix {n}: diagonal differs from invariant factors"));
        }
    }
    outcome(true, "100 seeded matrices up to 12x12 (seed 9)")
}

fn mutation() -> Outcome {
    let p = build_presentation(4, Variant::KSimplified).unwrap();
    let m = embedding_map(4, Variant::KSimplified).unwrap();
    let s = mutation_sensitivity(&p, &m, 100, 0, Exec::Parallel).unwrap();
    outcome(s.caught >= 90, format!("{}/{} mutants caught (seed 0)", s.caught, s.trials))
}

fn serialization() -> Outcome {
    let mut n = 0;
    let mut cases = vec![(2, Variant::GFull)];
    for r in 3..=6 {
        for v in Variant::ALL {
            if v.resolve(r).is_ok() {
                cases.push((r, v));
            }
        }
    }
    for (r, v) in cases {
        let p = build_presentation(r, v).unwrap();
        let j = to_json(&p);
        let back = from_json(&j).unwrap();
        if to_json(&back) != j || back != p {
            return outcome(false, format!("{v} r={r}: JSON round trip differs"));
        }
        let q = build_presentation(r, v).unwrap();
        if to_text(&p) != to_text(&q) || to_gap(&p) != to_gap(&q) || to_magma(&p) != to_magma(&q) {
            return outcome(false, format!("{v} r={r}: output not deterministic"));
        }
        n += 1;
    }
    let opts = VerifyOptions { corpus: false, ..Default::default() };
    for (r, v) in [(4, Variant::KSimplified), (5, Variant::KFull)] {
        let seq = verify(r, v, &VerifyOptions { exec: Exec::Sequential, ..opts }).unwrap();
        let par = verify(r, v, &opts).unwrap();
        if seq.to_json() != par.to_json() {
            return outcome(false, format!("{v} r={r}: report depends on scheduling"));
        }
    }
    outcome(true, format!("{n} presentations round-trip byte-stably; reports equal across scheduling"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("relator soundness of the full kernel presentation", relator_soundness_full),
        ("relator soundness of the simplified presentation", relator_soundness_simplified),
        ("first Betti numbers", betti_numbers),
        ("product presentation and its inverse map", product_consistency),
        ("surface relators", surface_relators),
        ("identity corpus", identity_corpus_holds),
        ("subdirectness", subdirectness),
        ("Dehn solver", dehn_properties),
        ("Smith normal form", smith_properties),
        ("mutation sensitivity", mutation),
        ("serialization", serialization),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
