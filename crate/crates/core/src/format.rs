//! Text grammar for words, and the text, JSON, GAP and Magma renderings of
//! presentations.
//!
//! Word grammar: tokens separated by whitespace or `.`; each token is
//! `fam[sub,sup]`, `x[i]`, `d` or `del`, optionally followed by `'`
//! (inverse) and then `^n` (a power, possibly negative). The token `1`
//! stands for the identity.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dps::{Presentation, Relator, Variant};
use crate::freegroup::{Alphabet, Family, GeneratorSymbol, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

fn perr(position: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { position, message: message.into() }
}

fn parse_index<T: std::str::FromStr>(s: &str, at: usize) -> Result<T, FormatError> {
    s.trim().parse().map_err(|_| perr(at, format!("bad index {s:?}")))
}

/// Parse a single generator name such as `f[1,2]`, `x[2]`, `d` or `del`.
pub fn parse_symbol(tok: &str, at: usize) -> Result<GeneratorSymbol, FormatError> {
    let (name, idx) = match tok.find('[') {
        Some(p) => {
            let rest = &tok[p + 1..];
            let inner = rest.strip_suffix(']').ok_or_else(|| perr(at + p, "missing ']'"))?;
            (&tok[..p], Some((inner, at + p + 1)))
        }
        None => (tok, None),
    };
    let fam = Family::from_name(name).ok_or_else(|| perr(at, format!("unknown generator family {name:?}")))?;
    let (sub, sup) = match idx {
        None => (None, None),
        Some((inner, pos)) => {
            let mut parts = inner.split(',');
            let sub = parts.next().map(|s| parse_index::<u8>(s, pos)).transpose()?;
            let sup = parts.next().map(|s| parse_index::<u16>(s, pos)).transpose()?;
            if parts.next().is_some() {
                return Err(perr(pos, "too many indices"));
            }
            (sub, sup)
        }
    };
    GeneratorSymbol::new(fam, sub, sup).map_err(|e| perr(at, e.to_string()))
}

fn parse_token(tok: &str, at: usize, out: &mut Word) -> Result<(), FormatError> {
    if tok == "1" {
        return Ok(());
    }
    let (base, power) = match tok.find('^') {
        Some(p) => (&tok[..p], parse_index::<i64>(&tok[p + 1..], at + p + 1)?),
        None => (tok, 1),
    };
    let (base, inverted) = match base.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (base, false),
    };
    let sym = parse_symbol(base, at)?;
    let letter = Letter::new(sym, if inverted { -1 } else { 1 });
    let unit = Word::from(letter);
    out.append(&unit.pow(power));
    Ok(())
}

/// Parse a word in the text grammar. The result is freely reduced.
pub fn parse_word(s: &str) -> Result<Word, FormatError> {
    let mut out = Word::identity();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        if ch.is_whitespace() || ch == '.' {
            if let Some(st) = start.take() {
                parse_token(&s[st..i], st, &mut out)?;
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    Ok(out)
}

/// The canonical text form of a word; `1` for the identity.
pub fn word_to_text(w: &Word) -> String {
    w.to_string()
}

/// Plain-text listing: header, rank, variant, generators, then one
/// `label: word` line per relator.
pub fn to_text(p: &Presentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", p.group_name());
    let _ = writeln!(s, "rank {}", p.rank);
    if let Some(v) = p.variant {
        let _ = writeln!(s, "variant {v}");
    }
    let gens: Vec<String> = p.generators.symbols().iter().map(|g| g.to_string()).collect();
    let _ = writeln!(s, "generators {} : {}", gens.len(), gens.join(" "));
    let _ = writeln!(s, "relators {}", p.relators.len());
    for r in &p.relators {
        let _ = writeln!(s, "{}: {}", r.provenance, r.word);
    }
    s
}

#[derive(Serialize, Deserialize)]
struct JsonSymbol {
    fam: Family,
    sub: Option<u8>,
    sup: Option<u16>,
}

#[derive(Serialize, Deserialize)]
struct JsonLetter {
    fam: Family,
    sub: Option<u8>,
    sup: Option<u16>,
    exp: i8,
}

#[derive(Serialize, Deserialize)]
struct JsonRelator {
    word: Vec<JsonLetter>,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct JsonPresentation {
    variant: Option<String>,
    rank: u16,
    generators: Vec<JsonSymbol>,
    relators: Vec<JsonRelator>,
}

fn sym_json(s: &GeneratorSymbol) -> JsonSymbol {
    JsonSymbol { fam: s.family(), sub: s.sub(), sup: s.sup() }
}

pub fn to_json(p: &Presentation) -> String {
    let doc = JsonPresentation {
        variant: p.variant.map(|v| v.cli_name().to_string()),
        rank: p.rank,
        generators: p.generators.symbols().iter().map(sym_json).collect(),
        relators: p
            .relators
            .iter()
            .map(|r| JsonRelator {
                word: r
                    .word
                    .letters()
                    .iter()
                    .map(|l| JsonLetter {
                        fam: l.symbol.family(),
                        sub: l.symbol.sub(),
                        sup: l.symbol.sup(),
                        exp: l.exponent() as i8,
                    })
                    .collect(),
                provenance: r.provenance.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("presentation serializes");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Presentation, FormatError> {
    let doc: JsonPresentation = serde_json::from_str(s).map_err(|e| FormatError::Json(e.to_string()))?;
    let invalid = |e: String| FormatError::Invalid(e);
    let variant = doc
        .variant
        .map(|v| v.parse::<Variant>())
        .transpose()
        .map_err(invalid)?;
    let gens = doc
        .generators
        .iter()
        .map(|g| GeneratorSymbol::new(g.fam, g.sub, g.sup).map_err(|e| invalid(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let generators = Alphabet::new(gens).map_err(|e| invalid(e.to_string()))?;
    let mut relators = Vec::with_capacity(doc.relators.len());
    for r in doc.relators {
        let mut letters = Vec::with_capacity(r.word.len());
        for l in r.word {
            if l.exp != 1 && l.exp != -1 {
                return Err(invalid(format!("exponent {} in {}", l.exp, r.provenance)));
            }
            let s = GeneratorSymbol::new(l.fam, l.sub, l.sup).map_err(|e| invalid(e.to_string()))?;
            letters.push(Letter::new(s, l.exp as i32));
        }
        relators.push(Relator { word: Word::from_letters(letters), provenance: r.provenance });
    }
    Presentation::new(variant, doc.rank, generators, relators).map_err(|e| invalid(e.to_string()))
}

fn cas_word(w: &Word) -> String {
    w.letters()
        .iter()
        .map(|l| {
            let n = l.symbol.flat_name();
            if l.inverted {
                format!("{n}^-1")
            } else {
                n
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn legend(p: &Presentation, comment: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{comment} {} ({}, r = {})",
        p.group_name(),
        p.variant.map(|v| v.cli_name()).unwrap_or("custom"),
        p.rank
    );
    let _ = writeln!(s, "{comment} generator legend:");
    for g in p.generators.symbols() {
        let _ = writeln!(s, "{comment}   {} = {}", g.flat_name(), g);
    }
    s
}

/// A GAP script defining the presented group as `G`.
pub fn to_gap(p: &Presentation) -> String {
    let mut s = legend(p, "#");
    let names: Vec<String> = p.generators.symbols().iter().map(|g| format!("\"{}\"", g.flat_name())).collect();
    let _ = writeln!(s, "F := FreeGroup({});", names.join(", "));
    for (i, g) in p.generators.symbols().iter().enumerate() {
        let _ = writeln!(s, "{} := F.{};", g.flat_name(), i + 1);
    }
    let _ = writeln!(s, "rels := [");
    let n = p.relators.len();
    for (i, r) in p.relators.iter().enumerate() {
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(s, "  {}{sep}  # {}", cas_word(&r.word), r.provenance);
    }
    let _ = writeln!(s, "];");
    let _ = writeln!(s, "G := F / rels;");
    s
}

/// A Magma script defining the presented group as `G`.
pub fn to_magma(p: &Presentation) -> String {
    let mut s = legend(p, "//");
    let names: Vec<String> = p.generators.symbols().iter().map(|g| g.flat_name()).collect();
    let _ = writeln!(s, "F<{}> := FreeGroup({});", names.join(","), names.len());
    let _ = writeln!(s, "rels := [");
    let n = p.relators.len();
    for (i, r) in p.relators.iter().enumerate() {
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(s, "  {}{sep}  // {}", cas_word(&r.word), r.provenance);
    }
    let _ = writeln!(s, "];");
    let _ = writeln!(s, "G := quo<F | rels>;");
    s
}

/// Serde adapter writing a word in the text grammar.
pub mod word_text {
    use super::parse_word;
    use crate::freegroup::Word;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&w.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a generator as `f[1,2]`.
pub mod symbol_text {
    use super::parse_symbol;
    use crate::freegroup::GeneratorSymbol;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &GeneratorSymbol, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&g.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GeneratorSymbol, D::Error> {
        let s = String::deserialize(d)?;
        parse_symbol(s.trim(), 0).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a variant by its command-line name.
pub mod variant_text {
    use crate::dps::Variant;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Variant, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.cli_name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Variant, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("unknown variant {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dps::build_presentation;

    #[test]
    fn grammar_examples() {
        let w = parse_word("f[1,2]' d f[1,2]").unwrap();
        assert_eq!(w.to_string(), "f[1,2]' d f[1,2]");
        assert_eq!(parse_word("a[1,1].a[1,1]'").unwrap(), Word::identity());
        assert_eq!(parse_word("1").unwrap(), Word::identity());
        assert_eq!(parse_word("").unwrap(), Word::identity());
        assert_eq!(parse_word("d^3").unwrap().len(), 3);
        assert_eq!(parse_word("d'^2").unwrap(), parse_word("d^-2").unwrap());
        assert_eq!(parse_word("x[1] del'").unwrap().to_string(), "x[1] del'");
    }

    #[test]
    fn grammar_errors_carry_positions() {
        match parse_word("d q[1,1]") {
            Err(FormatError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_word("x[1,2]").is_err());
        assert!(parse_word("f[3,2]").is_err());
        assert!(parse_word("f[1,2").is_err());
        assert!(parse_word("d^x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = build_presentation(4, Variant::KSimplified).unwrap();
        let j = to_json(&p);
        let q = from_json(&j).unwrap();
        assert_eq!(p, q);
        assert_eq!(to_json(&q), j);
    }

    #[test]
    fn text_and_cas_shapes() {
        let p = build_presentation(4, Variant::KSimplified).unwrap();
        let t = to_text(&p);
        assert!(t.starts_with("K_4\n"));
        assert!(t.contains("generators 15 :"));
        let g = to_gap(&build_presentation(3, Variant::KFull).unwrap());
        assert!(g.contains("F := FreeGroup("));
        assert!(g.contains("G := F / rels;"));
        let m = to_magma(&p);
        assert!(m.contains("G := quo<F | rels>;"));
    }
}
