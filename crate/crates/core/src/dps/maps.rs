use std::collections::HashMap;

use crate::freegroup::{commutator, Alphabet, FreeGroupError, GeneratorSymbol, Word};
use crate::gproduct::AmbientWord;

use super::presentation::{ambient_generators, build_presentation, Presentation};
use super::words::{a, b, c, cat, d, f, g, inv, x};
use super::{DpsError, Variant};

/// A homomorphism given by the images of the generators of its domain.
#[derive(Clone, Debug)]
pub struct SubstitutionMap {
    name: String,
    rank: u16,
    domain: Alphabet,
    images: HashMap<GeneratorSymbol, Word>,
}

impl SubstitutionMap {
    pub fn new(name: impl Into<String>, rank: u16, images: Vec<(GeneratorSymbol, Word)>) -> Self {
        let domain = Alphabet::new(images.iter().map(|(s, _)| *s).collect()).expect("distinct domain symbols");
        SubstitutionMap { name: name.into(), rank, domain, images: images.into_iter().collect() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn image(&self, s: &GeneratorSymbol) -> Option<&Word> {
        self.images.get(s)
    }

    pub fn substitute(&self, w: &Word) -> Result<Word, DpsError> {
        Ok(w.substitute(&self.images)?)
    }

    /// Image of `w` as an element of G.
    pub fn to_ambient(&self, w: &Word) -> Result<AmbientWord, DpsError> {
        Ok(AmbientWord::new(self.substitute(w)?, self.rank)?)
    }

    /// `then` after `self`.
    pub fn then(&self, then: &SubstitutionMap) -> Result<SubstitutionMap, DpsError> {
        let mut images = Vec::with_capacity(self.domain.len());
        for s in self.domain.symbols() {
            images.push((*s, then.substitute(&self.images[s])?));
        }
        Ok(SubstitutionMap::new(format!("{} then {}", self.name, then.name), then.rank, images))
    }

    /// The same map restricted to the generators of `p`.
    pub fn restrict(&self, name: impl Into<String>, p: &Presentation) -> Result<SubstitutionMap, DpsError> {
        let mut images = Vec::new();
        for s in p.generators.symbols() {
            let img = self.images.get(s).ok_or(FreeGroupError::MissingImage(*s))?;
            images.push((*s, img.clone()));
        }
        Ok(SubstitutionMap::new(name, self.rank, images))
    }
}

/// Where words of a given kind live when pushed into G. Every frame also
/// maps the standard generators a, b of G to themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    /// The product G written on x, c, d, f, g: `x_i -> a[i,1]`.
    Product,
    /// The kernel K_r: `x_i -> f[i,r]`, with c[i,r] and del through f, c, g.
    Kernel,
    /// The last factor alone: `x_i -> a[i,r]'`.
    Surface,
}

const I: [u8; 2] = [1, 2];

fn kernel_images(r: u16) -> Vec<(GeneratorSymbol, Word)> {
    let mut v = Vec::new();
    for i in I {
        v.push((GeneratorSymbol::c(i, 1), &a(i, 1) * &inv(&b(i, 1))));
    }
    v.push((GeneratorSymbol::d(), commutator(&b(1, 1), &b(2, 1))));
    for i in I {
        for k in 2..=r {
            v.push((GeneratorSymbol::f(i, k), &a(i, 1) * &inv(&a(i, k))));
        }
    }
    for i in I {
        for k in 2..=r {
            v.push((GeneratorSymbol::g(i, k), &b(i, 1) * &inv(&b(i, k))));
        }
    }
    v
}

fn passthrough(r: u16) -> Vec<(GeneratorSymbol, Word)> {
    ambient_generators(r).into_iter().map(|s| (s, Word::generator(s))).collect()
}

/// The map of `frame` at rank r on every symbol that frame interprets.
pub fn frame_map(frame: Frame, r: u16) -> Result<SubstitutionMap, DpsError> {
    let min = if frame == Frame::Product { 2 } else { 3 };
    if r < min {
        return Err(DpsError::BadRank(r));
    }
    let mut v = passthrough(r);
    match frame {
        Frame::Product => {
            for i in I {
                v.push((GeneratorSymbol::x(i), a(i, 1)));
            }
            v.extend(kernel_images(r));
        }
        Frame::Kernel => {
            let core = kernel_images(r);
            let base = SubstitutionMap::new("kernel-core", r, core.clone());
            v.extend(core);
            for i in I {
                v.push((GeneratorSymbol::x(i), base.substitute(&f(i, r))?));
            }
            for i in I {
                let w = cat(&[&inv(&f(i, r)), &c(i), &g(i, r)]);
                v.push((GeneratorSymbol::c(i, r), base.substitute(&w)?));
            }
            let del = &commutator(&f(2, r), &f(1, r)) * &inv(&d());
            v.push((GeneratorSymbol::delta(), base.substitute(&del)?));
        }
        Frame::Surface => {
            for i in I {
                v.push((GeneratorSymbol::x(i), inv(&a(i, r))));
            }
            for i in I {
                v.push((GeneratorSymbol::c(i, r), &a(i, r) * &inv(&b(i, r))));
            }
            v.push((GeneratorSymbol::delta(), commutator(&inv(&a(2, r)), &inv(&a(1, r)))));
        }
    }
    let name = match frame {
        Frame::Product => "psi",
        Frame::Kernel => "kernel-embedding",
        Frame::Surface => "surface-identification",
    };
    Ok(SubstitutionMap::new(name, r, v))
}

pub fn variant_frame(v: Variant) -> Frame {
    match v {
        Variant::GFull => Frame::Product,
        Variant::SurfaceR => Frame::Surface,
        Variant::KFull | Variant::KSimplified | Variant::KR3 => Frame::Kernel,
    }
}

/// The map from the generators of `variant` at rank r into G.
pub fn embedding_map(r: u16, variant: Variant) -> Result<SubstitutionMap, DpsError> {
    let p = build_presentation(r, variant)?;
    let v = p.variant.expect("built presentations carry their variant");
    frame_map(variant_frame(v), r)?.restrict(format!("embedding {v} r={r}"), &p)
}

/// The map from G back to the generators x, c, d, f, g of the product.
pub fn inverse_map(r: u16) -> Result<SubstitutionMap, DpsError> {
    if r < 2 {
        return Err(DpsError::BadRank(r));
    }
    let mut v = Vec::new();
    for i in I {
        v.push((GeneratorSymbol::a(i, 1), x(i)));
        v.push((GeneratorSymbol::b(i, 1), &inv(&c(i)) * &x(i)));
    }
    for k in 2..=r {
        for i in I {
            v.push((GeneratorSymbol::a(i, k), &inv(&f(i, k)) * &x(i)));
            v.push((GeneratorSymbol::b(i, k), cat(&[&inv(&g(i, k)), &inv(&c(i)), &x(i)])));
        }
    }
    Ok(SubstitutionMap::new("psi-inverse", r, v))
}

/// Words in the generators of K whose images, with the last factor deleted,
/// are the standard generators of the first r-1 factors.
pub fn projection_preimages(r: u16) -> Result<Vec<(GeneratorSymbol, Word)>, DpsError> {
    if r < 3 {
        return Err(DpsError::BadRank(r));
    }
    let mut v = Vec::new();
    for i in I {
        v.push((GeneratorSymbol::a(i, 1), f(i, r)));
        v.push((GeneratorSymbol::b(i, 1), g(i, r)));
    }
    for k in 2..r {
        for i in I {
            v.push((GeneratorSymbol::a(i, k), &inv(&f(i, k)) * &f(i, r)));
            v.push((GeneratorSymbol::b(i, k), &inv(&g(i, k)) * &g(i, r)));
        }
    }
    Ok(v)
}
