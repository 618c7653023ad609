//! Multivariate polynomials over GF(p), terms sorted strictly descending
//! under the active monomial order.

use crate::arith::Fp;
use crate::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;

/// Shared context for polynomial arithmetic: field, variable count, order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyCtx {
    pub fp: Fp,
    pub nvars: usize,
    pub order: MonomialOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// (monomial, nonzero coefficient) pairs, strictly descending.
    pub terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ctx: &PolyCtx, c: u64) -> Self {
        if c.is_multiple_of(ctx.fp.p) {
            return Self::zero();
        }
        Polynomial {
            terms: vec![(Monomial::one(ctx.nvars), c % ctx.fp.p)],
        }
    }

    pub fn var(ctx: &PolyCtx, i: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(ctx.nvars, i), 1)],
        }
    }

    pub fn monomial(m: Monomial, c: u64) -> Self {
        debug_assert!(c != 0);
        Polynomial { terms: vec![(m, c)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    /// Constant coefficient (the degree-0 term), 0 if absent.
    pub fn constant_term(&self) -> u64 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Total degree of a homogeneous polynomial; None for 0.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Canonicalize an arbitrary term list: merge, drop zeros, sort descending.
    pub fn from_terms(ctx: &PolyCtx, terms: Vec<(Monomial, u64)>) -> Self {
        let mut terms: Vec<(Monomial, u64)> = terms
            .into_iter()
            .map(|(m, c)| (m, c % ctx.fp.p))
            .collect();
        terms.sort_by(|a, b| b.0.cmp_order(&a.0, ctx.order));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((pm, pc)) if *pm == m => *pc = ctx.fp.add(*pc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn add(&self, ctx: &PolyCtx, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_order(mb, ctx.order) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), *cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ctx.fp.add(*ca, *cb);
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, ctx: &PolyCtx) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ctx.fp.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, ctx: &PolyCtx, other: &Polynomial) -> Polynomial {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn scale(&self, ctx: &PolyCtx, c: u64) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), ctx.fp.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiply by a single term c*m.
    pub fn mul_term(&self, ctx: &PolyCtx, m: &Monomial, c: u64) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), ctx.fp.mul(*tc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ctx: &PolyCtx, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            acc = acc.add(ctx, &other.mul_term(ctx, m, *c));
        }
        acc
    }

    /// Substitute each variable by the given polynomial.
    pub fn substitute(&self, tgt: &PolyCtx, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(tgt, *c);
            for (i, e) in m.exps.iter().enumerate() {
                for _ in 0..*e {
                    t = t.mul(tgt, &images[i]);
                }
            }
            acc = acc.add(tgt, &t);
        }
        acc
    }

    /// Render with the given variable names, e.g. `3*x^2*y - 1`.
    pub fn display(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(format!("{}", c));
            }
            for (v, e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[v].clone()),
                    _ => factors.push(format!("{}^{}", vars[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}
