//! Identities stated in the construction, instantiated over their index
//! ranges and checked in G through the frame map of the generators they
//! use. Steps of the printed derivations that do not hold in G are kept
//! apart in [`typo_corpus`], next to the readings that do.

use crate::format::parse_word;
use crate::freegroup::Word;
use crate::gproduct::{check_identity, is_conjugate_in_g};

use super::maps::{frame_map, inverse_map, Frame};
use super::words::{
    a, b, build_s, build_t, build_t_printed, build_v, build_v_at, build_w, build_w_at, c, cat, comm, cr, d,
    delta, delta_surface, f, g, inv, surface_type, v1, w1, x,
};
use super::DpsError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    EqualsIdentity(Word),
    Equal(Word, Word),
    Conjugate(Word, Word),
}

/// One instantiated identity: `family` names the statement, `params` the
/// indices it was instantiated at.
#[derive(Clone, Debug)]
pub struct Claim {
    pub family: String,
    pub params: String,
    pub frame: Frame,
    pub rank: u16,
    pub kind: ClaimKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub label: String,
    pub holds: bool,
}

impl Claim {
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.family.clone()
        } else {
            format!("{}({})", self.family, self.params)
        }
    }

    pub fn evaluate(&self) -> Result<ClaimOutcome, DpsError> {
        let m = frame_map(self.frame, self.rank)?;
        let holds = match &self.kind {
            ClaimKind::EqualsIdentity(w) => m.to_ambient(w)?.is_identity(),
            ClaimKind::Equal(u, v) => check_identity(&m.to_ambient(u)?, &m.to_ambient(v)?)?,
            ClaimKind::Conjugate(u, v) => is_conjugate_in_g(&m.to_ambient(u)?, &m.to_ambient(v)?)?,
        };
        Ok(ClaimOutcome { label: self.label(), holds })
    }
}

/// A printed statement that looks mistyped, with the corrections tried.
#[derive(Clone, Debug)]
pub struct TypoCase {
    pub note: &'static str,
    pub verbatim: Claim,
    pub corrected: Vec<Claim>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypoOutcome {
    pub verbatim: ClaimOutcome,
    pub corrected: Vec<ClaimOutcome>,
}

impl TypoCase {
    pub fn evaluate(&self) -> Result<TypoOutcome, DpsError> {
        Ok(TypoOutcome {
            verbatim: self.verbatim.evaluate()?,
            corrected: self.corrected.iter().map(Claim::evaluate).collect::<Result<_, _>>()?,
        })
    }
}

const I: [u8; 2] = [1, 2];
const EPS: [i8; 2] = [1, -1];

/// Parse a corpus template after substituting `{name}` placeholders.
fn t(template: &str, vars: &[(&str, u16)]) -> Word {
    let mut s = template.to_string();
    for (n, v) in vars {
        s = s.replace(&format!("{{{n}}}"), &v.to_string());
    }
    parse_word(&s).unwrap_or_else(|e| panic!("corpus template {template:?}: {e}"))
}

struct Corpus {
    rank: u16,
    frame: Frame,
    out: Vec<Claim>,
}

impl Corpus {
    fn push(&mut self, family: &str, params: String, kind: ClaimKind) {
        self.out.push(Claim { family: family.into(), params, frame: self.frame, rank: self.rank, kind });
    }
    fn id(&mut self, family: &str, params: String, w: Word) {
        self.push(family, params, ClaimKind::EqualsIdentity(w));
    }
    fn eq(&mut self, family: &str, params: String, u: Word, v: Word) {
        self.push(family, params, ClaimKind::Equal(u, v));
    }
    fn conj(&mut self, family: &str, params: String, u: Word, v: Word) {
        self.push(family, params, ClaimKind::Conjugate(u, v));
    }
    /// Consecutive lines of a derivation are equal.
    fn chain(&mut self, family: &str, params: &str, lines: &[Word]) {
        for (n, w) in lines.windows(2).enumerate() {
            let p = if params.is_empty() { format!("step={}", n + 1) } else { format!("{params},step={}", n + 1) };
            self.eq(family, p, w[0].clone(), w[1].clone());
        }
    }
}

fn ijek(i: u8, j: u8, e: i8, k: u16) -> String {
    format!("i={i},j={j},eps={e},k={k}")
}

fn off_diagonal(lo: u16, hi: u16) -> Vec<(u16, u16)> {
    let mut v = Vec::new();
    for k in lo..=hi {
        for l in lo..=hi {
            if k != l {
                v.push((k, l));
            }
        }
    }
    v
}

fn cg(i: u8, k: u16) -> Word {
    &c(i) * &g(i, k)
}

/// Identities of the product G on x, c, d, f, g.
fn product_claims(k: &mut Corpus) -> Result<(), DpsError> {
    let r = k.rank;
    for i in I {
        for j in I {
            for e in EPS {
                let ae = a(i, 1).pow(e as i64);
                let xe = x(i).pow(e as i64);
                for kk in 2..=r {
                    let p = ijek(i, j, e, kk);
                    let fe = f(i, kk).pow(e as i64);
                    k.eq("commutator-a-f-vs-a-a", p.clone(), comm(&ae, &f(j, kk)), comm(&ae, &a(j, 1)));
                    k.eq("V-identity", p.clone(), comm(&ae, &f(j, kk)), build_v_at(i, j, e, kk)?);
                    k.eq("V-independent-of-k", p.clone(), build_v_at(i, j, e, kk)?, build_v(i, j, e)?);
                    k.eq("commutator-a-g-vs-a-b", p.clone(), comm(&ae, &g(j, kk)), comm(&ae, &b(j, 1)));
                    k.eq("W-identity", p.clone(), comm(&ae, &g(j, kk)), build_w_at(i, j, e, kk)?);
                    k.eq("W-independent-of-k", p.clone(), build_w_at(i, j, e, kk)?, build_w(i, j, e)?);
                    k.eq(
                        "normalizer-c-identity",
                        p.clone(),
                        cat(&[&ae, &c(j), &inv(&ae)]),
                        cat(&[&fe, &c(j), &inv(&fe)]),
                    );
                    if j == 1 {
                        let p = format!("i={i},eps={e},k={kk}");
                        k.eq("normalizer-d-identity", p, cat(&[&ae, &d(), &inv(&ae)]), cat(&[&fe, &d(), &inv(&fe)]));
                    }
                    k.id("x-f-relator", p.clone(), &comm(&xe, &f(j, kk)) * &inv(&build_v(i, j, e)?));
                    k.id("x-g-relator", p, &comm(&xe, &g(j, kk)) * &inv(&build_w(i, j, e)?));
                }
            }
        }
    }
    k.id("x-commutator", String::new(), &comm(&x(1), &x(2)) * &d());
    k.eq(
        "first-factor-a-vs-b-commutator",
        String::new(),
        comm(&a(1, 1), &a(2, 1)),
        inv(&comm(&b(1, 1), &b(2, 1))),
    );
    for i in I {
        for kk in 2..=r {
            k.eq("first-factor-a-b-same-index", format!("i={i},k={kk}"), comm(&a(i, 1), &b(i, 1)), comm(&f(i, kk), &inv(&c(i))));
        }
    }

    // First factor against factor k.
    for i in I {
        for j in I {
            for kk in 2..=r {
                let p = format!("i={i},j={j},k={kk}");
                let vars = [("i", i as u16), ("j", j as u16), ("k", kk)];
                k.id("commuting-factors-a-a", p.clone(), comm(&a(i, 1), &a(j, kk)));
                k.id("commuting-factors-a-b", p.clone(), comm(&a(i, 1), &b(j, kk)));
                k.id("commuting-factors-b-a", p.clone(), comm(&b(i, 1), &a(j, kk)));

                let u = comm(&x(i), &(&inv(&f(j, kk)) * &x(j)));
                k.eq("commuting-a-a-rewrite", p.clone(), comm(&a(i, 1), &a(j, kk)), u.clone());
                k.conj("commuting-a-a-reduction", p.clone(), u, &comm(&x(i), &x(j)) * &comm(&f(j, kk), &x(i)));

                let u = comm(&x(i), &cat(&[&inv(&g(j, kk)), &inv(&c(j)), &x(j)]));
                k.eq("commuting-a-b-rewrite", p.clone(), comm(&a(i, 1), &b(j, kk)), u.clone());
                let rhs = cat(&[&comm(&g(j, kk), &x(i)), &t("x[{i}] c[{j},1]' x[{i}]'", &vars), &comm(&x(i), &x(j)), &c(j)]);
                k.conj("commuting-a-b-reduction", p.clone(), u, rhs);

                let u = comm(&(&inv(&c(i)) * &x(i)), &(&inv(&f(j, kk)) * &x(j)));
                k.eq("commuting-b-a-rewrite", p.clone(), comm(&b(i, 1), &a(j, kk)), u.clone());
                let rhs = cat(&[
                    &t("x[{j}] c[{i},1] x[{j}]' f[{j},{k}] c[{i},1]' f[{j},{k}]'", &vars),
                    &comm(&f(j, kk), &x(i)),
                    &comm(&x(i), &x(j)),
                ]);
                k.conj("commuting-b-a-reduction", p.clone(), u, rhs);

                let rhs = &comm(&c(i), &g(j, kk)) * &comm(&(&inv(&c(j)) * &f(j, kk)), &c(i));
                k.conj("b-b-first-factor", p, comm(&b(i, 1), &b(j, kk)), rhs);
            }
        }
    }

    // Two factors k != l beyond the first.
    for i in I {
        for j in I {
            for (kk, l) in off_diagonal(2, r) {
                let p = format!("i={i},j={j},k={kk},l={l}");
                let conj_v = cat(&[&inv(&f(i, kk)), &inv(&f(j, l)), &inv(&v1(i, j)), &f(i, kk), &f(j, l)]);
                k.eq("a-a-rewrite", p.clone(), comm(&a(i, kk), &a(j, l)), conj_v.clone());
                k.conj("a-a-reduction", p.clone(), conj_v, &comm(&f(i, kk), &f(j, l)) * &inv(&v1(i, j)));
                k.conj("a-b-reduction", p.clone(), comm(&a(i, kk), &b(j, l)), &comm(&f(i, kk), &g(j, l)) * &inv(&w1(i, j)));
                k.conj("b-b-reduction", p, comm(&b(i, kk), &b(j, l)), &comm(&cg(i, kk), &cg(j, l)) * &inv(&v1(i, j)));
            }
        }
    }

    // The surface relator of the first factor, rewritten.
    let s0 = &comm(&a(1, 1), &a(2, 1)) * &comm(&b(1, 1), &b(2, 1));
    let s1 = &comm(&x(1), &x(2)) * &comm(&(&inv(&c(1)) * &x(1)), &(&inv(&c(2)) * &x(2)));
    let s2 = t("d' c[1,1]' x[1] c[2,1]' x[2] x[1]' c[1,1] x[2]' c[2,1]", &[]);
    k.chain("surface-rewrite", "", &[s0, s1, s2.clone()]);
    for kk in 2..=r {
        k.eq("surface-rewrite-f", format!("k={kk}"), s2.clone(), surface_type(kk));
    }

    // Composing psi with its inverse fixes the standard generators.
    let inv_map = inverse_map(r)?;
    for s in inv_map.domain().symbols() {
        k.eq("inverse-map", s.to_string(), inv_map.image(s).expect("domain symbol").clone(), Word::generator(*s));
    }
    Ok(())
}

/// Identities in the last factor on x, c[i,r], del.
fn surface_claims(k: &mut Corpus) {
    let r = k.rank;
    let vars = [("r", r)];
    k.id("surface-relator-x", String::new(), &comm(&x(1), &x(2)) * &delta());
    k.id("surface-relator-delta", String::new(), delta_surface(r));
    let p0 = &comm(&a(1, r), &a(2, r)) * &comm(&b(1, r), &b(2, r));
    let p1 = &comm(&inv(&x(1)), &inv(&x(2)))
        * &comm(&inv(&(&x(1) * &cr(1, r))), &inv(&(&x(2) * &cr(2, r))));
    let core = "del^-2 x[2] x[1] c[1,{r}]' x[1]' x[2]' x[2] c[2,{r}]' x[2]' x[1] c[1,{r}] x[1]' x[1] x[2] c[2,{r}] x[2]' x[1]'";
    let p2 = cat(&[&t("x[2]' x[1]'", &vars), &t(core, &vars), &t("x[1] x[2]", &vars)]);
    let p3 = t(core, &vars);
    k.eq("surface-identification", String::new(), p0, p1.clone());
    k.eq("surface-delta-rewrite", String::new(), p1, p2.clone());
    k.conj("surface-delta-conjugate", String::new(), p2, p3.clone());
    k.conj("surface-delta-relator", String::new(), p3, delta_surface(r));
}

/// Identities in K: the replacements made when passing to c, d, f, g.
fn kernel_claims(k: &mut Corpus) -> Result<(), DpsError> {
    let r = k.rank;
    let mid: Vec<u16> = (2..r).collect();
    for i in I {
        k.eq("identification-x", format!("i={i}"), x(i), f(i, r));
        k.eq("identification-g", format!("i={i}"), g(i, r), cat(&[&inv(&c(i)), &f(i, r), &cr(i, r)]));
        k.eq("identification-c-g", format!("i={i}"), cg(i, r), &f(i, r) * &cr(i, r));
    }
    k.eq("identification-delta", String::new(), delta(), &comm(&x(2), &x(1)) * &inv(&d()));
    k.id("replaced-delta-d", String::new(), comm(&delta(), &d()));
    k.id("replacement-delta-d", String::new(), comm(&comm(&x(2), &x(1)), &d()));
    k.id("replacement-delta-d-f", String::new(), comm(&comm(&f(1, r), &f(2, r)), &d()));
    for i in I {
        for j in I {
            let p = format!("i={i},j={j}");
            let vars = [("i", i as u16), ("j", j as u16), ("r", r)];
            k.id("replaced-c-c", p.clone(), comm(&cr(i, r), &c(j)));
            let new = &comm(&c(i), &g(j, r)) * &comm(&(&inv(&c(j)) * &f(j, r)), &c(i));
            k.id("replacement-c-g", p.clone(), new.clone());
            let tail = comm(&(&inv(&c(j)) * &f(j, r)), &c(i));
            let l1 = &t("c[{i},1] c[{j},1]' f[{j},{r}] c[{j},{r}] c[{i},1]' c[{j},{r}]' f[{j},{r}]' c[{j},1]", &vars) * &tail;
            let l2 = &t("c[{i},1] c[{j},1]' f[{j},{r}] c[{i},1]' c[{j},{r}] c[{j},{r}]' f[{j},{r}]' c[{j},1]", &vars) * &tail;
            k.chain("replacement-c-g-derivation", &p, &[new, l1, l2.clone()]);
            k.id("replacement-c-g-reduced", p.clone(), l2);
            for &kk in &mid {
                let p = format!("i={i},j={j},k={kk}");
                let vars = [("i", i as u16), ("j", j as u16), ("k", kk), ("r", r)];
                k.id("replaced-c-f", p.clone(), comm(&cr(i, r), &f(j, kk)));
                k.id("replaced-c-g", p.clone(), comm(&cr(i, r), &g(j, kk)));

                let new = &comm(&f(i, kk), &g(j, r)) * &inv(&w1(i, j));
                k.id("replacement-f-g", p.clone(), new.clone());
                let l1 = &t("f[{i},{k}] c[{j},1]' f[{j},{r}] c[{j},{r}] f[{i},{k}]' c[{j},{r}]' f[{j},{r}]' c[{j},1]", &vars)
                    * &inv(&w1(i, j));
                let l2 = &t("f[{i},{k}] c[{j},1]' f[{j},{r}] f[{i},{k}]' c[{j},{r}] c[{j},{r}]' f[{j},{r}]' c[{j},1]", &vars)
                    * &inv(&w1(i, j));
                let l3 = &comm(&f(i, kk), &(&inv(&c(j)) * &x(j))) * &inv(&w1(i, j));
                k.chain("replacement-f-g-derivation", &p, &[new, l1, l2, l3]);

                let new = &comm(&cg(i, r), &cg(j, kk)) * &inv(&v1(i, j));
                k.id("replacement-cg-cg", p.clone(), new.clone());
                let vars = [("i", i as u16), ("j", j as u16), ("l", kk), ("r", r)];
                let l1 = &t("f[{i},{r}] c[{i},{r}] c[{j},1] g[{j},{l}] c[{i},{r}]' f[{i},{r}]' g[{j},{l}]' c[{j},1]'", &vars)
                    * &inv(&v1(i, j));
                let l2 = &t("f[{i},{r}] c[{j},1] g[{j},{l}] c[{i},{r}] c[{i},{r}]' f[{i},{r}]' g[{j},{l}]' c[{j},1]'", &vars)
                    * &inv(&v1(i, j));
                let l3 = cat(&[&t("f[{i},{r}] c[{j},1] f[{i},{r}]'", &vars), &w1(i, j), &inv(&c(j)), &inv(&v1(i, j))]);
                k.chain("replacement-cg-cg-derivation", &p, &[new, l1, l2, l3.clone()]);
                k.id("replacement-cg-cg-reduced", p, l3);
            }
        }
    }
    if r < 4 {
        return Ok(());
    }
    removal_claims(k)?;
    swap_claims(k);
    Ok(())
}

/// The relators dropped when passing to c, d, f, g (rank at least 4).
fn removal_claims(k: &mut Corpus) -> Result<(), DpsError> {
    let r = k.rank;
    let mid: Vec<u16> = (2..r).collect();
    for i in I {
        k.id("removed-c-d", format!("i={i}"), comm(&cr(i, r), &d()));
        k.id("removed-delta-c", format!("i={i}"), comm(&delta(), &c(i)));
        for &kk in &mid {
            k.id("removed-delta-f", format!("i={i},k={kk}"), comm(&delta(), &f(i, kk)));
            k.id("removed-delta-g", format!("i={i},k={kk}"), comm(&delta(), &g(i, kk)));
        }
    }
    for &l in &mid {
        k.eq("d-as-f-commutator", format!("l={l}"), d(), comm(&f(2, r), &f(1, l)));
    }
    for (kk, l) in off_diagonal(2, r - 1) {
        k.eq("d-inverse-as-cg-commutator", format!("k={kk},l={l}"), inv(&d()), comm(&cg(1, kk), &cg(2, l)));
    }

    // Conjugating by c[i,1] and g[i,k] fixes  f2r f1r f2r' f2k f1r' f2k'.
    let pw = |kk: u16| t("f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{k}]'", &[("r", r), ("k", kk)]);
    for i in I {
        for &kk in &mid {
            let p = format!("i={i},k={kk}");
            k.eq("delta-c-target", p.clone(), cat(&[&inv(&c(i)), &pw(kk), &c(i)]), pw(kk));
            for &l in &mid {
                let p = format!("i={i},k={kk},l={l}");
                k.eq("delta-g-target", p, cat(&[&g(i, kk), &pw(l), &inv(&g(i, kk))]), pw(l));
            }
        }
    }
    for i in I {
        for (kk, l) in off_diagonal(2, r - 1) {
            let p = format!("i={i},k={kk},l={l}");
            let lines = delta_c_lines(r, i, kk, l);
            k.eq("delta-c-derivation-target", p.clone(), lines[0].clone(), lines[6].clone());
            k.chain("delta-c-derivation", &p, &lines);
        }
    }
    for (kk, l) in off_diagonal(2, r - 1) {
        let vars = [("r", r), ("k", kk), ("l", l)];
        let p = format!("k={kk},l={l}");
        let v0 = t("f[2,{l}]' f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{l}] f[1,{r}] f[2,{k}]' f[2,{r}] f[1,{r}]'", &vars);
        let v1w = cat(&[
            &comm(&f(2, l), &inv(&f(1, r))),
            &t("f[2,{r}]' f[2,{k}]", &vars),
            &comm(&inv(&f(1, r)), &f(2, l)),
            &t("f[2,{k}]' f[2,{r}]", &vars),
        ]);
        let v2 = t("f[2,{k}]' f[2,{r}]' d f[2,{r}] f[2,{k}] f[2,{r}]' f[2,{k}]' d' f[2,{k}] f[2,{r}]", &vars);
        k.id("delta-c-vanishing", p.clone(), v0.clone());
        k.conj("delta-c-vanishing-derivation", format!("{p},step=1"), v0, v1w.clone());
        k.conj("delta-c-vanishing-derivation", format!("{p},step=2"), v1w, v2.clone());
        k.id("delta-c-vanishing-reduced", p, v2);
    }

    // The f-case for i = 1, as written out.
    for &kk in &mid {
        let vars = [("r", r), ("k", kk)];
        let p = format!("i=1,k={kk}");
        let d0 = comm(&(&comm(&x(2), &x(1)) * &inv(&d())), &f(1, kk));
        let d1 = t("f[2,{r}] f[1,{r}] f[2,{r}]' f[1,{r}]' d' f[1,{k}] d f[1,{r}] f[2,{r}] f[1,{r}]' f[2,{r}]' f[1,{k}]'", &vars);
        let d2 = t("f[2,{r}]' f[1,{k}]' d' f[2,{r}] f[1,{k}] f[1,{k}]' f[1,{r}] f[2,{r}]' f[1,{r}]' f[1,{k}] d f[1,{r}] f[2,{r}] f[1,{r}]'", &vars);
        let d3 = t("f[1,{r}] f[1,{k}]' f[2,{r}]' f[1,{k}] f[1,{r}]' d f[1,{r}] f[2,{r}] f[1,{r}]'", &vars);
        let d4 = t("f[1,{r}] f[2,{r}]' f[1,{k}]' d' f[1,{k}] f[1,{r}]' d f[1,{r}] f[2,{r}] f[1,{r}]'", &vars);
        let d5 = t("f[1,{r}] f[2,{r}]' f[1,{r}]' d' f[1,{r}] f[1,{r}]' d f[1,{r}] f[2,{r}] f[1,{r}]'", &vars);
        k.eq("delta-f-derivation", format!("{p},step=1"), d0, d1.clone());
        k.conj("delta-f-derivation", format!("{p},step=2"), d1, d2.clone());
        k.chain("delta-f-derivation-tail", &p, &[d2, d3, d4, d5.clone()]);
        k.id("delta-f-reduced", p, d5);
    }

    // The g-case for i = 1, as written out; W is expanded at factor r.
    for &l in &mid {
        let vars = [("r", r), ("l", l)];
        let p = format!("i=1,l={l}");
        let wr = |i: u8, j: u8| build_w_at(i, j, 1, r);
        let (w11, w21) = (wr(1, 1)?, wr(2, 1)?);
        let e1 = cat(&[
            &inv(&w21),
            &f(2, r),
            &inv(&w11),
            &t("f[1,{r}] f[2,{r}]' f[2,{l}] f[1,{r}]'", &vars),
            &w11,
            &inv(&f(2, l)),
            &w21,
        ]);
        let e2 = cat(&[
            &inv(&w21),
            &t("f[2,{r}] c[1,1]' f[1,{r}] c[1,1] f[1,{r}]' f[1,{r}] f[2,{r}]' f[2,{l}] f[1,{r}]' f[1,{r}] c[1,1]' f[1,{r}]' c[1,1] f[2,{l}]'", &vars),
            &w21,
        ]);
        let e3 = cat(&[&inv(&w21), &pw_rl(r, l), &w21]);
        let e4 = t(
            "c[1,1]' d f[2,{r}] c[1,1] f[2,{r}]' f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{l}] f[1,{r}]' f[2,{l}]' f[2,{l}] c[1,1]' f[2,{l}]' d' c[1,1]",
            &vars,
        );
        let e5 = pw_rl(r, l);
        k.chain("delta-g-derivation", &p, &[e1, e2, e3, e4, e5]);
    }
    Ok(())
}

/// The derivation that conjugation by c[i,1] fixes
/// `f2r f1r f2r' f2k f1r' f2r'`: the conjugated word, then each printed line.
fn delta_c_lines(r: u16, i: u8, k: u16, l: u16) -> Vec<Word> {
    let vars = [("r", r), ("k", k), ("l", l), ("i", i as u16)];
    [
        "c[{i},1]' f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{r}]' c[{i},1]",
        "f[2,{r}] f[2,{l}]' c[{i},1]' d f[1,{r}] f[2,{l}] f[2,{r}]' f[2,{k}] f[2,{l}]' f[1,{r}]' d' c[{i},1] f[2,{l}] f[2,{r}]'",
        "f[2,{r}] f[2,{l}]' f[1,{r}] f[1,{l}]' c[{i},1]' d f[1,{l}] f[2,{r}]' f[2,{k}] f[1,{l}]' d' c[{i},1] f[1,{l}] f[1,{r}]' f[2,{l}] f[2,{r}]'",
        "f[2,{r}] f[2,{l}]' f[1,{r}] f[1,{l}]' c[{i},1]' d f[2,{r}]' d f[1,{l}] f[1,{l}]' d' f[2,{k}] d' c[{i},1] f[1,{l}] f[1,{r}]' f[2,{l}] f[2,{r}]'",
        "f[2,{r}] f[2,{l}]' f[1,{r}] f[1,{l}]' c[{i},1]' d f[2,{r}]' f[2,{k}] d' c[{i},1] f[1,{l}] f[1,{r}]' f[2,{l}] f[2,{r}]'",
        "f[2,{r}] f[2,{l}]' f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{l}] f[2,{r}]'",
        "f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{r}]'",
    ]
    .iter()
    .map(|s| t(s, &vars))
    .collect()
}

fn pw_rl(r: u16, l: u16) -> Word {
    t("f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{l}] f[1,{r}]' f[2,{l}]'", &[("r", r), ("l", l)])
}

/// Trading the del relator for S T at factor r (rank at least 4).
fn swap_claims(k: &mut Corpus) {
    let r = k.rank;
    k.id("swap-relator-st", String::new(), &build_s(r).expect("r >= 2") * &build_t(r).expect("r >= 2"));
    for l in 2..r {
        let vars = [("r", r), ("l", l)];
        let p = format!("l={l}");
        let f0 = t("x[2]' x[1]' del^-2 x[2] x[1]", &vars);
        let f1 = &build_s(r).expect("r >= 2") * &t("f[2,{r}]' f[1,{l}]' f[2,{r}] f[1,{l}]", &vars);
        k.eq("swap-delta-to-s", p.clone(), f0, f1);

        let g0 = comm(&inv(&cg(1, r)), &inv(&cg(2, r)));
        let g1 = cat(&[
            &inv(&cg(1, r)),
            &inv(&cg(2, r)),
            &cg(1, l),
            &cg(2, r),
            &inv(&cg(1, l)),
            &cg(1, r),
            &inv(&cg(1, r)),
            &inv(&cg(2, r)),
            &d(),
            &cg(1, r),
            &cg(2, r),
        ]);
        k.eq("swap-commutator-to-t", p.clone(), g0, g1);

        let h0 = cat(&[&comm(&inv(&f(2, r)), &inv(&f(1, l))), &inv(&cg(1, r)), &comm(&inv(&cg(2, r)), &cg(1, l)), &cg(1, r)]);
        let h1 = cat(&[
            &t("f[2,{r}]' f[1,{l}]' d f[1,{l}] f[2,{r}]", &vars),
            &inv(&cg(1, r)),
            &inv(&cg(2, r)),
            &inv(&d()),
            &cg(2, r),
            &cg(1, r),
        ]);
        let h2 = cat(&[
            &t("f[2,{r}]' f[1,{l}]' d f[1,{l}] f[2,{r}]", &vars),
            &inv(&cg(1, r)),
            &t("c[2,{r}]' f[2,{r}]' d' f[2,{r}] c[2,{r}]", &vars),
            &cg(1, r),
        ]);
        let h3 = t("f[2,{r}]' f[1,{l}]' d f[1,{l}] f[2,{r}] f[1,{l}]' f[2,{r}]' d' f[2,{r}] f[1,{l}]", &vars);
        k.id("swap-vanishing", p.clone(), h0.clone());
        k.chain("swap-vanishing-derivation", &p, &[h0, h1, h2, h3.clone()]);
        k.id("swap-vanishing-reduced", p, h3);
    }
}

/// Every verified identity at rank r, in a fixed order.
pub fn lemma_corpus(r: u16) -> Result<Vec<Claim>, DpsError> {
    if r < 3 {
        return Err(DpsError::BadRank(r));
    }
    let mut k = Corpus { rank: r, frame: Frame::Product, out: Vec::new() };
    product_claims(&mut k)?;
    k.frame = Frame::Surface;
    surface_claims(&mut k);
    k.frame = Frame::Kernel;
    kernel_claims(&mut k)?;
    Ok(k.out)
}

fn claim(family: &str, params: String, frame: Frame, rank: u16, kind: ClaimKind) -> Claim {
    Claim { family: family.into(), params, frame, rank, kind }
}

struct Typos {
    rank: u16,
    out: Vec<TypoCase>,
}

impl Typos {
    fn case(&mut self, note: &'static str, verbatim: Claim, corrected: Vec<Claim>) {
        self.out.push(TypoCase { note, verbatim, corrected });
    }
    fn eq(&self, family: &str, params: &str, frame: Frame, u: Word, v: Word) -> Claim {
        claim(family, params.to_string(), frame, self.rank, ClaimKind::Equal(u, v))
    }
    fn id(&self, family: &str, params: &str, frame: Frame, w: Word) -> Claim {
        claim(family, params.to_string(), frame, self.rank, ClaimKind::EqualsIdentity(w))
    }
}

/// Statements printed in a form that does not hold in G, each with the
/// corrected readings that were tried. The verbatim readings are kept even
/// where they happen to hold for some indices.
pub fn typo_corpus(r: u16) -> Result<Vec<TypoCase>, DpsError> {
    if r < 3 {
        return Err(DpsError::BadRank(r));
    }
    let mut ty = Typos { rank: r, out: Vec::new() };
    let (p, k_) = (Frame::Product, Frame::Kernel);

    let v = ty.eq("bb-equals-d", "", p, comm(&b(1, 1), &b(1, 2)), d());
    let cor = ty.eq("bb-equals-d", "corrected", p, comm(&b(1, 1), &b(2, 1)), d());
    ty.case("first-factor commutator printed with a factor-2 letter", v, vec![cor]);

    for (i, j) in [(1u8, 2u8), (2, 1)] {
        for kk in 2..=r {
            let ps = format!("i={i},j={j},k={kk}");
            let dj = d().pow(2 * j as i64 - 3);
            let lhs = comm(&a(i, 1), &b(j, 1));
            let printed = cat(&[&c(i), &dj, &g(j, kk), &inv(&c(1)), &inv(&g(2, kk))]);
            let fixed = cat(&[&c(i), &dj, &g(j, kk), &inv(&c(i)), &inv(&g(j, kk))]);
            let v = ty.eq("ab-mixed-index", &ps, p, lhs.clone(), printed);
            let cor = ty.eq("ab-mixed-index", &format!("{ps},corrected"), p, lhs.clone(), fixed);
            let eq4 = ty.eq("ab-mixed-index", &format!("{ps},via-W"), p, lhs, w1(i, j));
            ty.case("fixed indices 1, 2 where i, j are meant", v, vec![cor, eq4]);
        }
    }

    for i in I {
        for j in I {
            for kk in 2..=r {
                let ps = format!("i={i},j={j},k={kk}");
                let listed = cat(&[&comm(&c(i), &g(j, kk)), &inv(&w1(i, j)), &c(i), &inv(&v1(i, j)), &inv(&c(i))]);
                let short = &comm(&c(i), &g(j, kk)) * &comm(&(&inv(&c(j)) * &f(j, kk)), &c(i));
                let v = ty.id("c-g-relator-listed", &ps, p, listed);
                let cor = ty.id("c-g-relator-listed", &format!("{ps},presentation-form"), p, short);
                ty.case("relator list and presentation print different c-g relators", v, vec![cor]);
            }
            for (kk, l) in off_diagonal(2, r) {
                let ps = format!("i={i},j={j},k={kk},l={l}");
                let listed = &comm(&g(i, kk), &cg(j, l)) * &w1(j, i);
                let inv_w = &comm(&g(i, kk), &cg(j, l)) * &inv(&w1(j, i));
                let short = &comm(&cg(i, kk), &cg(j, l)) * &inv(&v1(i, j));
                let v = ty.id("g-cg-relator-listed", &ps, p, listed);
                let c1 = ty.id("g-cg-relator-listed", &format!("{ps},inverse-W"), p, inv_w);
                let c2 = ty.id("g-cg-relator-listed", &format!("{ps},presentation-form"), p, short);
                ty.case("relator list and presentation print different cg-cg relators", v, vec![c1, c2]);

                let lhs = comm(&b(i, kk), &b(j, l));
                let printed = cat(&[&inv(&cg(i, kk)), &inv(&(&g(j, l) * &c(j))), &inv(&v1(i, j)), &cg(i, kk), &cg(j, kk)]);
                let fixed = cat(&[&inv(&cg(i, kk)), &inv(&cg(j, l)), &inv(&v1(i, j)), &cg(i, kk), &cg(j, l)]);
                let v = ty.eq("b-b-rewrite", &ps, p, lhs.clone(), printed);
                let cor = ty.eq("b-b-rewrite", &format!("{ps},corrected"), p, lhs, fixed);
                ty.case("factor-k letters where (c g) at factor l is meant", v, vec![cor]);
            }
        }
    }

    let st = &build_s(r)? * &build_t(r)?;
    let v = ty.id("st-relator", "printed", k_, &build_s(r)? * &build_t_printed(r)?);
    let cor = ty.id("st-relator", "c[1,1]", k_, st);
    ty.case("T printed with c[1,k] as its fifth letter", v, vec![cor]);

    if r >= 4 {
        for (kk, l) in off_diagonal(2, r - 1) {
            let ps = format!("k={kk},l={l}");
            let v = ty.eq("d-as-cg-commutator", &ps, k_, d(), comm(&cg(1, kk), &cg(2, l)));
            let cor = ty.eq("d-as-cg-commutator", &format!("{ps},inverse"), k_, inv(&d()), comm(&cg(1, kk), &cg(2, l)));
            ty.case("commutator of (c g) words equals d inverse, not d", v, vec![cor]);
        }
        for i in I {
            for (kk, l) in off_diagonal(2, r - 1) {
                let ps = format!("i={i},k={kk},l={l}");
                let stated = t(
                    "c[{i},1]' f[2,{r}] f[1,{r}] f[2,{r}]' f[2,{k}] f[1,{r}]' f[2,{k}]' c[{i},1]",
                    &[("r", r), ("k", kk), ("i", i as u16)],
                );
                let lines = delta_c_lines(r, i, kk, l);
                let v = ty.eq("delta-c-derivation-start", &ps, k_, stated, lines[1].clone());
                let cor = ty.eq("delta-c-derivation-start", &format!("{ps},f2r-last"), k_, lines[0].clone(), lines[1].clone());
                ty.case("derivation proves the word ending in f[2,r]', not f[2,k]'", v, vec![cor]);
            }
        }
        for l in 2..r {
            let ps = format!("l={l}");
            let printed = comm(&inv(&cg(1, r)), &inv(&(&c(1) * &g(2, r))));
            let fixed = comm(&inv(&cg(1, r)), &inv(&cg(2, r)));
            let rhs = cat(&[
                &inv(&cg(1, r)),
                &inv(&cg(2, r)),
                &cg(1, l),
                &cg(2, r),
                &inv(&cg(1, l)),
                &cg(1, r),
                &inv(&cg(1, r)),
                &inv(&cg(2, r)),
                &d(),
                &cg(1, r),
                &cg(2, r),
            ]);
            let v = ty.eq("swap-commutator", &ps, k_, printed, rhs.clone());
            let cor = ty.eq("swap-commutator", &format!("{ps},corrected"), k_, fixed, rhs);
            ty.case("c[1,1] g[2,r] where c[2,1] g[2,r] is meant", v, vec![cor]);
        }
    }
    Ok(ty.out)
}
