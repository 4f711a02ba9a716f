//! The parametrized word families V, W, S, T and small constructors for
//! the generator words they are built from.

use crate::freegroup::{commutator, GeneratorSymbol, Word};

use super::DpsError;

pub fn x(i: u8) -> Word {
    GeneratorSymbol::x(i).into()
}
pub fn c(i: u8) -> Word {
    GeneratorSymbol::c(i, 1).into()
}
pub fn cr(i: u8, r: u16) -> Word {
    GeneratorSymbol::c(i, r).into()
}
pub fn d() -> Word {
    GeneratorSymbol::d().into()
}
pub fn delta() -> Word {
    GeneratorSymbol::delta().into()
}
pub fn f(i: u8, k: u16) -> Word {
    GeneratorSymbol::f(i, k).into()
}
pub fn g(i: u8, k: u16) -> Word {
    GeneratorSymbol::g(i, k).into()
}
pub fn a(i: u8, k: u16) -> Word {
    GeneratorSymbol::a(i, k).into()
}
pub fn b(i: u8, k: u16) -> Word {
    GeneratorSymbol::b(i, k).into()
}

/// Product of the given words.
pub fn cat(parts: &[&Word]) -> Word {
    Word::product(parts.iter().copied())
}

pub fn comm(u: &Word, v: &Word) -> Word {
    commutator(u, v)
}

pub fn inv(w: &Word) -> Word {
    w.inverse()
}

fn check(i: u8, j: u8, eps: i8) -> Result<(), DpsError> {
    if !(1..=2).contains(&i) || !(1..=2).contains(&j) || (eps != 1 && eps != -1) {
        return Err(DpsError::BadIndex(format!("i={i}, j={j}, eps={eps}")));
    }
    Ok(())
}

fn check_k(k: u16) -> Result<(), DpsError> {
    if k < 2 {
        return Err(DpsError::BadIndex(format!("k={k} must be at least 2")));
    }
    Ok(())
}

/// `d^(2i-3)`, i.e. `d^-1` for i=1 and `d` for i=2.
fn d_pow(i: u8, sign: i64) -> Word {
    d().pow(sign * (2 * i as i64 - 3))
}

/// V with the f-letter taken at factor k. The canonical V uses k = 2.
pub fn build_v_at(i: u8, j: u8, eps: i8, k: u16) -> Result<Word, DpsError> {
    check(i, j, eps)?;
    check_k(k)?;
    Ok(if i == j {
        Word::identity()
    } else if eps == 1 {
        d_pow(i, 1)
    } else {
        cat(&[&inv(&f(i, k)), &d_pow(i, -1), &f(i, k)])
    })
}

/// W with the f-letter taken at factor k. The canonical W uses k = 2.
pub fn build_w_at(i: u8, j: u8, eps: i8, k: u16) -> Result<Word, DpsError> {
    check(i, j, eps)?;
    check_k(k)?;
    let fk = f(i, k);
    Ok(if i == j {
        comm(&fk.pow(eps as i64), &inv(&c(i)))
    } else if eps == 1 {
        cat(&[&fk, &inv(&c(j)), &inv(&fk), &d_pow(i, 1), &c(j)])
    } else {
        cat(&[&inv(&fk), &inv(&c(j)), &d_pow(i, -1), &fk, &c(j)])
    })
}

pub fn build_v(i: u8, j: u8, eps: i8) -> Result<Word, DpsError> {
    build_v_at(i, j, eps, 2)
}

pub fn build_w(i: u8, j: u8, eps: i8) -> Result<Word, DpsError> {
    build_w_at(i, j, eps, 2)
}

/// V and W for valid indices; used by the builders where indices come from
/// fixed loops.
pub(crate) fn v1(i: u8, j: u8) -> Word {
    build_v(i, j, 1).expect("valid indices")
}
pub(crate) fn w1(i: u8, j: u8) -> Word {
    build_w(i, j, 1).expect("valid indices")
}

/// `f[1,k]' f[2,k]' d f[1,k] f[2,k]`.
pub fn build_s(k: u16) -> Result<Word, DpsError> {
    check_k(k)?;
    Ok(cat(&[&inv(&f(1, k)), &inv(&f(2, k)), &d(), &f(1, k), &f(2, k)]))
}

/// `(c1 g[1,k])' (c2 g[2,k])' d c1 g[1,k] c2 g[2,k]` with `c_i = c[i,1]`.
pub fn build_t(k: u16) -> Result<Word, DpsError> {
    check_k(k)?;
    Ok(t_with(k, &c(1)))
}

/// T as printed, with `c[1,k]` for the fifth letter. Only meaningful at
/// k = r, where that generator exists.
pub fn build_t_printed(k: u16) -> Result<Word, DpsError> {
    check_k(k)?;
    Ok(t_with(k, &cr(1, k)))
}

fn t_with(k: u16, fifth: &Word) -> Word {
    let cg1 = &c(1) * &g(1, k);
    let cg2 = &c(2) * &g(2, k);
    cat(&[&inv(&cg1), &inv(&cg2), &d(), fifth, &g(1, k), &cg2])
}

/// `d' c1' f[1,k] c2' f[1,k]' d' f[2,k] c1 f[2,k]' c2`.
pub fn surface_type(k: u16) -> Word {
    cat(&[
        &inv(&d()),
        &inv(&c(1)),
        &f(1, k),
        &inv(&c(2)),
        &inv(&f(1, k)),
        &inv(&d()),
        &f(2, k),
        &c(1),
        &inv(&f(2, k)),
        &c(2),
    ])
}

/// `del^-2 x2 x1 [(x1 c[1,r])', (x2 c[2,r])'] x2' x1'`.
pub fn delta_surface(r: u16) -> Word {
    let u = inv(&(&x(1) * &cr(1, r)));
    let v = inv(&(&x(2) * &cr(2, r)));
    cat(&[&delta().pow(-2), &x(2), &x(1), &comm(&u, &v), &inv(&x(2)), &inv(&x(1))])
}
