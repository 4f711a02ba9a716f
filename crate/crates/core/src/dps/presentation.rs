use std::collections::HashSet;

use log::debug;

use crate::freegroup::{Alphabet, GeneratorSymbol, Word};

use super::words::{
    build_s, build_t, c, cat, comm, d, delta, delta_surface, f, g, inv, surface_type, v1, w1, x,
};
use super::{DpsError, Variant};

/// A relator with a label naming its family and the indices it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub provenance: String,
}

impl Relator {
    /// The family part of the provenance label, without indices.
    pub fn family(&self) -> &str {
        self.provenance.split('(').next().unwrap_or(&self.provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub variant: Option<Variant>,
    pub rank: u16,
    pub generators: Alphabet,
    pub relators: Vec<Relator>,
}

impl Presentation {
    /// A presentation with validated relators: every relator is nonempty and
    /// uses declared generators only.
    pub fn new(
        variant: Option<Variant>,
        rank: u16,
        generators: Alphabet,
        relators: Vec<Relator>,
    ) -> Result<Self, DpsError> {
        let p = Presentation { variant, rank, generators, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), DpsError> {
        for r in &self.relators {
            if r.word.is_empty() {
                return Err(DpsError::UndeclaredGenerator(format!("{}: empty relator", r.provenance)));
            }
            if let Some(s) = r.word.support().into_iter().find(|s| !self.generators.contains(s)) {
                return Err(DpsError::UndeclaredGenerator(format!("{}: {s}", r.provenance)));
            }
        }
        Ok(())
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| &r.word)
    }

    /// The header line of the text format.
    pub fn group_name(&self) -> String {
        match self.variant {
            Some(v) => v.group_name(self.rank),
            None => format!("P_{}", self.rank),
        }
    }
}

/// Collects relators, dropping empty words and exact duplicates.
struct Builder {
    relators: Vec<Relator>,
    seen: HashSet<Word>,
    duplicates: usize,
    trivial: usize,
}

impl Builder {
    fn new() -> Self {
        Builder { relators: Vec::new(), seen: HashSet::new(), duplicates: 0, trivial: 0 }
    }

    fn push(&mut self, word: Word, provenance: String) {
        if word.is_empty() {
            self.trivial += 1;
        } else if self.seen.insert(word.clone()) {
            self.relators.push(Relator { word, provenance });
        } else {
            self.duplicates += 1;
        }
    }

    fn finish(self, variant: Variant, rank: u16, generators: Vec<GeneratorSymbol>) -> Presentation {
        debug!(
            "{variant} r={rank}: {} relators kept, {} duplicates and {} trivial words dropped",
            self.relators.len(),
            self.duplicates,
            self.trivial
        );
        let generators = Alphabet::new(generators).expect("builders list distinct generators");
        Presentation::new(Some(variant), rank, generators, self.relators).expect("builders use declared generators")
    }
}

const I: [u8; 2] = [1, 2];
const EPS: [i8; 2] = [1, -1];

fn pw(w: &Word, e: i8) -> Word {
    w.pow(e as i64)
}

/// `x^e c x^-e y^e c' y^-e`: conjugation by x agrees with conjugation by y.
fn normalizer(xw: &Word, cw: &Word, yw: &Word, e: i8) -> Word {
    cat(&[&pw(xw, e), cw, &pw(xw, -e), &pw(yw, e), &inv(cw), &pw(yw, -e)])
}

fn ab_symbols(r: u16) -> (Vec<GeneratorSymbol>, Vec<GeneratorSymbol>) {
    let mut a = vec![GeneratorSymbol::c(1, 1), GeneratorSymbol::c(2, 1), GeneratorSymbol::d()];
    for i in I {
        for k in 2..r {
            a.push(GeneratorSymbol::f(i, k));
        }
    }
    for i in I {
        for k in 2..r {
            a.push(GeneratorSymbol::g(i, k));
        }
    }
    let b = vec![GeneratorSymbol::c(1, r), GeneratorSymbol::c(2, r), GeneratorSymbol::delta()];
    (a, b)
}

fn fg_symbols(ks: impl Iterator<Item = u16> + Clone) -> Vec<GeneratorSymbol> {
    let mut v = Vec::new();
    for i in I {
        v.extend(ks.clone().map(|k| GeneratorSymbol::f(i, k)));
    }
    for i in I {
        v.extend(ks.clone().map(|k| GeneratorSymbol::g(i, k)));
    }
    v
}

pub fn build_presentation(r: u16, variant: Variant) -> Result<Presentation, DpsError> {
    Ok(match variant.resolve(r)? {
        Variant::GFull => g_full(r),
        Variant::SurfaceR => surface_r(r),
        Variant::KFull => k_full(r),
        Variant::KSimplified => k_simplified(r),
        Variant::KR3 => k_r3(),
    })
}

/// Relator families shared by the presentations built over c, d, f, g, each
/// over its own index range.
struct Ranges {
    /// k for the normalizer, c-g, surface and S.T families.
    single: Vec<u16>,
    /// (k, l) for the f-f and f-g families.
    ff: Vec<(u16, u16)>,
    /// (k, l) for the cg-cg family.
    cg: Vec<(u16, u16)>,
}

fn pairs(ks: &[u16], ls: &[u16]) -> Vec<(u16, u16)> {
    ks.iter().flat_map(|&k| ls.iter().filter(move |&&l| l != k).map(move |&l| (k, l))).collect()
}

fn comm_c_g(bld: &mut Builder, pre: &str, ks: &[u16]) {
    for i in I {
        for j in I {
            for &k in ks {
                let w = comm(&c(i), &g(j, k)) * comm(&(&inv(&c(j)) * &f(j, k)), &c(i));
                bld.push(w, format!("{pre}-comm-c-g(i={i},j={j},k={k})"));
            }
        }
    }
}

fn comm_families(bld: &mut Builder, pre: &str, rg: &Ranges) {
    comm_c_g(bld, pre, &rg.single);
    for i in I {
        for j in I {
            for &(k, l) in &rg.ff {
                bld.push(comm(&f(i, k), &f(j, l)) * inv(&v1(i, j)), format!("{pre}-comm-f-f(i={i},j={j},k={k},l={l})"));
            }
        }
    }
    for i in I {
        for j in I {
            for &(k, l) in &rg.ff {
                bld.push(comm(&f(i, k), &g(j, l)) * inv(&w1(i, j)), format!("{pre}-comm-f-g(i={i},j={j},k={k},l={l})"));
            }
        }
    }
    for i in I {
        for j in I {
            for &(k, l) in &rg.cg {
                let w = comm(&(&c(i) * &g(i, k)), &(&c(j) * &g(j, l))) * inv(&v1(i, j));
                bld.push(w, format!("{pre}-comm-cg-cg(i={i},j={j},k={k},l={l})"));
            }
        }
    }
}

fn surface_families(bld: &mut Builder, pre: &str, ks: &[u16]) {
    for &k in ks {
        bld.push(surface_type(k), format!("{pre}-surface(k={k})"));
        let st = build_s(k).expect("k >= 2") * build_t(k).expect("k >= 2");
        bld.push(st, format!("{pre}-ST(k={k})"));
    }
}

/// Normalizer relators `x_i^e u x_i^-e f_ik^e u' f_ik^-e` for u = c_j and u = d,
/// with `xs(i)` standing for x_i.
fn normalizers(bld: &mut Builder, pre: &str, xs: &dyn Fn(u8) -> Word, ks: &[u16]) {
    for i in I {
        for j in I {
            for e in EPS {
                for &k in ks {
                    bld.push(normalizer(&xs(i), &c(j), &f(i, k), e), format!("{pre}-normalizer-c(i={i},j={j},eps={e},k={k})"));
                }
            }
        }
    }
    for i in I {
        for e in EPS {
            for &k in ks {
                bld.push(normalizer(&xs(i), &d(), &f(i, k), e), format!("{pre}-normalizer-d(i={i},eps={e},k={k})"));
            }
        }
    }
}

fn g_full(r: u16) -> Presentation {
    let ks: Vec<u16> = (2..=r).collect();
    let mut bld = Builder::new();
    for i in I {
        for j in I {
            for &k in &ks {
                bld.push(comm(&x(i), &f(j, k)) * inv(&v1(i, j)), format!("S1-comm-x-f(i={i},j={j},k={k})"));
            }
        }
    }
    for i in I {
        for j in I {
            for &k in &ks {
                bld.push(comm(&x(i), &g(j, k)) * inv(&w1(i, j)), format!("S1-comm-x-g(i={i},j={j},k={k})"));
            }
        }
    }
    normalizers(&mut bld, "S1", &x, &ks);
    bld.push(comm(&x(1), &x(2)) * d(), "S2-commutator-x".into());
    let rg = Ranges { single: ks.clone(), ff: pairs(&ks, &ks), cg: pairs(&ks, &ks) };
    comm_families(&mut bld, "S3", &rg);
    surface_families(&mut bld, "S3", &ks);

    let mut gens = vec![
        GeneratorSymbol::x(1),
        GeneratorSymbol::x(2),
        GeneratorSymbol::c(1, 1),
        GeneratorSymbol::c(2, 1),
        GeneratorSymbol::d(),
    ];
    gens.extend(fg_symbols(2..=r));
    bld.finish(Variant::GFull, r, gens)
}

fn surface_r(r: u16) -> Presentation {
    let mut bld = Builder::new();
    bld.push(comm(&x(1), &x(2)) * delta(), "S-commutator-x".into());
    bld.push(delta_surface(r), "S-delta-surface".into());
    let gens = vec![
        GeneratorSymbol::x(1),
        GeneratorSymbol::x(2),
        GeneratorSymbol::c(1, r),
        GeneratorSymbol::c(2, r),
        GeneratorSymbol::delta(),
    ];
    bld.finish(Variant::SurfaceR, r, gens)
}

fn ab_commutators(bld: &mut Builder, r: u16) {
    let (a_syms, b_syms) = ab_symbols(r);
    for sa in &a_syms {
        for sb in &b_syms {
            bld.push(comm(&(*sa).into(), &(*sb).into()), format!("AB-commutator(a={sa},b={sb})"));
        }
    }
}

fn k_full(r: u16) -> Presentation {
    let inner: Vec<u16> = (2..r).collect();
    let outer: Vec<u16> = (2..=r).collect();
    let mut bld = Builder::new();
    normalizers(&mut bld, "S2", &x, &inner);
    bld.push(cat(&[&comm(&x(1), &x(2)), &delta(), &d()]), "S1-commutator-x".into());
    let rg = Ranges { single: inner.clone(), ff: pairs(&outer, &inner), cg: pairs(&inner, &inner) };
    comm_families(&mut bld, "S4", &rg);
    surface_families(&mut bld, "S4", &inner);
    bld.push(delta_surface(r), "S5-delta-surface".into());
    ab_commutators(&mut bld, r);
    for i in I {
        bld.push(&f(i, r) * &inv(&x(i)), format!("X-identification(i={i})"));
    }

    let (a_syms, b_syms) = ab_symbols(r);
    let mut gens = vec![
        GeneratorSymbol::x(1),
        GeneratorSymbol::x(2),
        GeneratorSymbol::f(1, r),
        GeneratorSymbol::f(2, r),
    ];
    gens.extend(a_syms);
    gens.extend(b_syms);
    bld.finish(Variant::KFull, r, gens)
}

fn k_r3() -> Presentation {
    let mut bld = Builder::new();
    normalizers(&mut bld, "R1", &x, &[2]);
    bld.push(cat(&[&comm(&x(1), &x(2)), &delta(), &d()]), "R1-commutator-x".into());
    comm_c_g(&mut bld, "R1", &[2]);
    for i in I {
        for j in I {
            bld.push(comm(&x(i), &f(j, 2)) * inv(&v1(i, j)), format!("R1-comm-f-f(i={i},j={j},k=3,l=2)"));
        }
    }
    for i in I {
        for j in I {
            bld.push(comm(&x(i), &g(j, 2)) * inv(&w1(i, j)), format!("R1-comm-f-g(i={i},j={j},k=3,l=2)"));
        }
    }
    ab_commutators(&mut bld, 3);
    surface_families(&mut bld, "R2", &[2]);
    bld.push(delta_surface(3), "R2-delta-surface".into());

    let (a_syms, b_syms) = ab_symbols(3);
    let mut gens = vec![GeneratorSymbol::x(1), GeneratorSymbol::x(2)];
    gens.extend(a_syms);
    gens.extend(b_syms);
    bld.finish(Variant::KR3, 3, gens)
}

fn k_simplified(r: u16) -> Presentation {
    let ks: Vec<u16> = (2..=r).collect();
    let kl = pairs(&ks, &ks);
    let mut bld = Builder::new();
    for i in I {
        for j in I {
            for e in EPS {
                for &(k, l) in &kl {
                    bld.push(
                        normalizer(&f(i, k), &c(j), &f(i, l), e),
                        format!("R1-normalizer-c(i={i},j={j},eps={e},k={k},l={l})"),
                    );
                }
            }
        }
    }
    for i in I {
        for e in EPS {
            for &(k, l) in &kl {
                bld.push(normalizer(&f(i, k), &d(), &f(i, l), e), format!("R1-normalizer-d(i={i},eps={e},k={k},l={l})"));
            }
        }
    }
    bld.push(comm(&comm(&f(1, r), &f(2, r)), &d()), "R1-comm-ff-d".into());
    let rg = Ranges { single: ks.clone(), ff: kl.clone(), cg: kl };
    comm_families(&mut bld, "R1", &rg);
    surface_families(&mut bld, "R2", &ks);

    let mut gens = vec![GeneratorSymbol::c(1, 1), GeneratorSymbol::c(2, 1), GeneratorSymbol::d()];
    gens.extend(fg_symbols(2..=r));
    bld.finish(Variant::KSimplified, r, gens)
}

/// Generators of the product G at rank r: a, b over all factors.
pub fn ambient_generators(r: u16) -> Vec<GeneratorSymbol> {
    let mut v = Vec::new();
    for k in 1..=r {
        for i in I {
            v.push(GeneratorSymbol::a(i, k));
        }
        for i in I {
            v.push(GeneratorSymbol::b(i, k));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        for r in 4..=8 {
            assert_eq!(build_presentation(r, Variant::KSimplified).unwrap().generators.len(), 4 * r as usize - 1);
        }
        for r in 3..=8 {
            assert_eq!(build_presentation(r, Variant::KFull).unwrap().generators.len(), 4 * r as usize + 2);
        }
        assert_eq!(build_presentation(3, Variant::KR3).unwrap().generators.len(), 12);
        assert_eq!(build_presentation(2, Variant::GFull).unwrap().generators.len(), 9);
        assert_eq!(build_presentation(5, Variant::SurfaceR).unwrap().relators.len(), 2);
    }

    #[test]
    fn rank_checks() {
        assert!(build_presentation(2, Variant::KSimplified).is_err());
        assert!(build_presentation(2, Variant::KFull).is_err());
        assert_eq!(build_presentation(3, Variant::KSimplified).unwrap().variant, Some(Variant::KR3));
    }

    #[test]
    fn r3_lists() {
        let p = build_presentation(3, Variant::KR3).unwrap();
        let count = |fam: &str| p.relators.iter().filter(|r| r.family() == fam).count();
        assert_eq!(count("R1-normalizer-c"), 8);
        assert_eq!(count("R1-normalizer-d"), 4);
        assert_eq!(count("R1-commutator-x"), 1);
        assert_eq!(count("R1-comm-c-g"), 4);
        // [x_i, f_j2] with i = j is a genuine commutator, so each family
        // keeps all four members.
        assert_eq!(count("R1-comm-f-f"), 4);
        assert_eq!(count("R1-comm-f-g"), 4);
        assert_eq!(count("AB-commutator"), 21);
        assert_eq!(count("R2-surface"), 1);
        assert_eq!(count("R2-ST"), 1);
        assert_eq!(count("R2-delta-surface"), 1);
    }

    #[test]
    fn relators_are_reduced_and_distinct() {
        for v in [Variant::GFull, Variant::KFull, Variant::KSimplified] {
            let p = build_presentation(5, v).unwrap();
            let set: HashSet<_> = p.words().collect();
            assert_eq!(set.len(), p.relators.len());
            assert!(p.words().all(|w| !w.is_empty()));
        }
    }
}
