//! Elements of free modules S^r: vectors of polynomials with the
//! position-over-term order (earlier components dominate).

use crate::monomial::Monomial;
use crate::poly::{PolyCtx, Polynomial};

pub type ModElem = Vec<Polynomial>;

pub fn zero_elem(ncomps: usize) -> ModElem {
    vec![Polynomial::zero(); ncomps]
}

pub fn unit_elem(ncomps: usize, comp: usize, ctx: &PolyCtx) -> ModElem {
    let mut v = zero_elem(ncomps);
    v[comp] = Polynomial::constant(ctx, 1);
    v
}

pub fn is_zero_elem(v: &ModElem) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// Leading term under position-over-term: the first nonzero component wins,
/// and within it the monomial order decides.
pub fn lead_term(v: &ModElem) -> Option<(usize, &Monomial, u64)> {
    for (i, p) in v.iter().enumerate() {
        if let Some((m, c)) = p.lead() {
            return Some((i, m, *c));
        }
    }
    None
}

pub fn add_elem(ctx: &PolyCtx, a: &ModElem, b: &ModElem) -> ModElem {
    a.iter().zip(b).map(|(p, q)| p.add(ctx, q)).collect()
}

pub fn sub_elem(ctx: &PolyCtx, a: &ModElem, b: &ModElem) -> ModElem {
    a.iter().zip(b).map(|(p, q)| p.sub(ctx, q)).collect()
}

pub fn scale_elem(ctx: &PolyCtx, a: &ModElem, c: u64) -> ModElem {
    a.iter().map(|p| p.scale(ctx, c)).collect()
}

/// Multiply by the term c*m.
pub fn term_mul_elem(ctx: &PolyCtx, a: &ModElem, m: &Monomial, c: u64) -> ModElem {
    a.iter().map(|p| p.mul_term(ctx, m, c)).collect()
}

pub fn poly_mul_elem(ctx: &PolyCtx, a: &ModElem, f: &Polynomial) -> ModElem {
    a.iter().map(|p| p.mul(ctx, f)).collect()
}

/// Degree of a homogeneous element w.r.t. component twists; None for 0.
/// Returns Err-like None when entries disagree (inhomogeneous).
pub fn elem_degree(v: &ModElem, twists: &[i64]) -> Option<i64> {
    let mut deg: Option<i64> = None;
    for (i, p) in v.iter().enumerate() {
        if let Some(d) = p.degree() {
            let total = d as i64 + twists[i];
            match deg {
                None => deg = Some(total),
                Some(e) if e == total => {}
                Some(_) => return None,
            }
        }
    }
    deg
}

pub fn elem_is_homogeneous(v: &ModElem, twists: &[i64]) -> bool {
    if v.iter().all(|p| p.is_zero()) {
        return true;
    }
    if !v.iter().all(|p| p.is_homogeneous()) {
        return false;
    }
    let mut deg: Option<i64> = None;
    for (i, p) in v.iter().enumerate() {
        if let Some(d) = p.degree() {
            let total = d as i64 + twists[i];
            match deg {
                None => deg = Some(total),
                Some(e) if e == total => {}
                Some(_) => return false,
            }
        }
    }
    true
}
