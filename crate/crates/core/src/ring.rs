//! Graded quotient rings R = S/J over GF(p), the stand-in for local rings:
//! the irrelevant ideal of all variables plays the maximal ideal.

use crate::arith::Fp;
use crate::error::EngineError;
use crate::groebner::{buchberger_module, is_member, nf, GroebnerBasis};
use crate::hilbert::{krull_dim_from_leads, MonomialQuotient};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyCtx, Polynomial};
use std::sync::Arc;

#[derive(Debug)]
pub struct Ring {
    pub ctx: PolyCtx,
    pub vars: Vec<String>,
    /// Reduced Groebner basis of the defining ideal J.
    pub relations_gb: GroebnerBasis,
    pub edim: usize,
    /// None when the quotient is the zero ring (cannot happen for J in m^2).
    pub krull_dim: Option<usize>,
    pub artinian: bool,
    /// Total k-length; None when infinite.
    pub k_length: Option<usize>,
}

pub type RingHandle = Arc<Ring>;

/// Build R = GF(p)[vars]/(relations). Relations must be homogeneous of
/// degree >= 2 so edim can be read off the presentation.
pub fn make_ring(
    p: u64,
    vars: &[&str],
    order: MonomialOrder,
    relations: Vec<Polynomial>,
) -> Result<RingHandle, EngineError> {
    let fp = Fp::new(p)?;
    let ctx = PolyCtx {
        fp,
        nvars: vars.len(),
        order,
    };
    for r in &relations {
        if r.is_zero() {
            continue;
        }
        if !r.is_homogeneous() || r.degree().unwrap_or(0) < 2 {
            return Err(EngineError::BadRelation(format!("{:?}", r.terms)));
        }
    }
    let gens: Vec<_> = relations
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| vec![r])
        .collect();
    let relations_gb = buchberger_module(&ctx, gens, 1);
    let leads: Vec<Monomial> = relations_gb
        .lead_terms()
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    let krull_dim = krull_dim_from_leads(&leads, ctx.nvars);
    let artinian = krull_dim == Some(0);
    let quotient = MonomialQuotient {
        nvars: ctx.nvars,
        twists: vec![0],
        component_leads: vec![leads],
    };
    let k_length = quotient.length();
    Ok(Arc::new(Ring {
        ctx,
        vars: vars.iter().map(|s| s.to_string()).collect(),
        relations_gb,
        edim: ctx.nvars,
        krull_dim,
        artinian,
        k_length,
    }))
}

impl Ring {
    /// Canonical representative: normal form modulo J.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        nf(&self.ctx, &vec![f.clone()], &self.relations_gb)
            .pop()
            .unwrap()
    }

    pub fn reduce_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        v.iter().map(|f| self.reduce(f)).collect()
    }

    /// Standard monomials of degree d: a k-basis of R_d.
    pub fn std_basis(&self, d: u32) -> Vec<Monomial> {
        let leads: Vec<Monomial> = self
            .relations_gb
            .lead_terms()
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        crate::hilbert::standard_monomials(&leads, self.ctx.nvars, d)
    }

    pub fn var_polys(&self) -> Vec<Polynomial> {
        (0..self.ctx.nvars)
            .map(|i| Polynomial::var(&self.ctx, i))
            .collect()
    }

    pub fn j_gens(&self) -> Vec<Polynomial> {
        self.relations_gb.elems.iter().map(|g| g[0].clone()).collect()
    }

    pub fn hf(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        self.std_basis(d as u32).len()
    }
}

#[derive(Clone, Debug)]
pub struct IdealHandle {
    pub ring: RingHandle,
    /// Nonzero normal forms of the given generators.
    pub generators: Vec<Polynomial>,
    /// Groebner basis of the preimage ideal I + J in S.
    pub gb: GroebnerBasis,
}

impl IdealHandle {
    pub fn new(ring: RingHandle, gens: Vec<Polynomial>) -> Result<Self, EngineError> {
        let ctx = ring.ctx;
        let mut generators = Vec::new();
        for g in gens {
            if !g.is_homogeneous() {
                return Err(EngineError::Malformed(
                    "ideal generator is inhomogeneous".into(),
                ));
            }
            let r = ring.reduce(&g);
            if !r.is_zero() {
                generators.push(r);
            }
        }
        let mut all: Vec<_> = generators.iter().map(|g| vec![g.clone()]).collect();
        all.extend(ring.relations_gb.elems.iter().cloned());
        let gb = buchberger_module(&ctx, all, 1);
        Ok(IdealHandle {
            ring,
            generators,
            gb,
        })
    }

    pub fn maximal(ring: RingHandle) -> Self {
        let gens = ring.var_polys();
        IdealHandle::new(ring, gens).expect("irrelevant ideal is always valid")
    }

    pub fn is_proper(&self) -> bool {
        !self.gb.contains_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        is_member(&self.ring.ctx, &vec![f.clone()], &self.gb)
    }

    /// Generators raised to the c-th power ideal: all c-fold products.
    pub fn power_gens(&self, c: u32) -> Vec<Polynomial> {
        let ctx = &self.ring.ctx;
        if c == 0 {
            return vec![Polynomial::constant(ctx, 1)];
        }
        let mut acc: Vec<Polynomial> = self.generators.clone();
        for _ in 1..c {
            let mut next = Vec::new();
            for a in &acc {
                for g in &self.generators {
                    let p = self.ring.reduce(&a.mul(ctx, g));
                    if !p.is_zero() && !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
            acc = next;
        }
        acc
    }

    fn quotient_leads(gb: &GroebnerBasis) -> Vec<Monomial> {
        gb.lead_terms().into_iter().map(|(_, m)| m).collect()
    }

    /// dim_k I/mI: the minimal number of generators.
    pub fn beta(&self) -> Result<usize, EngineError> {
        if !self.is_proper() {
            return Err(EngineError::UnitIdeal);
        }
        if self.generators.is_empty() {
            return Ok(0);
        }
        let ctx = &self.ring.ctx;
        // mI + J
        let mut mi_gens: Vec<_> = Vec::new();
        for g in &self.generators {
            for v in self.ring.var_polys() {
                mi_gens.push(vec![g.mul(ctx, &v)]);
            }
        }
        mi_gens.extend(self.ring.relations_gb.elems.iter().cloned());
        let mi_gb = buchberger_module(ctx, mi_gens, 1);
        let leads_i = Self::quotient_leads(&self.gb);
        let leads_mi = Self::quotient_leads(&mi_gb);
        let maxdeg = self
            .generators
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0) as i64;
        let q_i = MonomialQuotient {
            nvars: ctx.nvars,
            twists: vec![0],
            component_leads: vec![leads_i],
        };
        let q_mi = MonomialQuotient {
            nvars: ctx.nvars,
            twists: vec![0],
            component_leads: vec![leads_mi],
        };
        let mut total = 0usize;
        for d in 0..=maxdeg {
            // dim (I/mI)_d = HF(S/(mI+J), d) - HF(S/(I+J), d)
            total += q_mi.hf(d) - q_i.hf(d);
        }
        Ok(total)
    }

    /// Krull dimension of R/I; None for the empty (unit) quotient.
    pub fn dim_quotient(&self) -> Option<usize> {
        let leads = Self::quotient_leads(&self.gb);
        krull_dim_from_leads(&leads, self.ring.ctx.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &RingHandle, s: &str) -> Polynomial {
        crate::session::parse_poly_str(&ring.ctx, &ring.vars, s).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let r = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = Polynomial::var(&r.ctx, 0).mul(&r.ctx, &Polynomial::var(&r.ctx, 0));
        let r = make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap();
        assert_eq!(r.edim, 1);
        assert_eq!(r.krull_dim, Some(0));
        assert_eq!(r.k_length, Some(2));
        assert!(r.artinian);
    }

    #[test]
    fn polynomial_ring() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        assert_eq!(r.edim, 2);
        assert_eq!(r.krull_dim, Some(2));
        assert_eq!(r.k_length, None);
    }

    #[test]
    fn hyperbola_ring() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let xy = poly(&r, "x*y");
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, vec![xy]).unwrap();
        assert_eq!(r.edim, 2);
        assert_eq!(r.krull_dim, Some(1));
        assert!(!r.artinian);
    }

    #[test]
    fn rejects_linear_relation() {
        let tmp = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x = Polynomial::var(&tmp.ctx, 0);
        assert!(make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x]).is_err());
    }

    #[test]
    fn rejects_composite_prime() {
        assert!(make_ring(100, &["x"], MonomialOrder::Grevlex, Vec::new()).is_err());
    }

    #[test]
    fn beta_examples() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let m = IdealHandle::maximal(r.clone());
        assert_eq!(m.beta().unwrap(), 2);
        let i = IdealHandle::new(
            r.clone(),
            vec![poly(&r, "x^2"), poly(&r, "x*y"), poly(&r, "y^2")],
        )
        .unwrap();
        assert_eq!(i.beta().unwrap(), 3);
        let r1 = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let i1 = IdealHandle::new(r1.clone(), vec![poly(&r1, "x"), poly(&r1, "x^2")]).unwrap();
        assert_eq!(i1.beta().unwrap(), 1);
    }

    #[test]
    fn beta_generating_set_invariance() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let a = IdealHandle::new(r.clone(), vec![poly(&r, "x"), poly(&r, "y")]).unwrap();
        let b = IdealHandle::new(
            r.clone(),
            vec![poly(&r, "x"), poly(&r, "y"), poly(&r, "x + y")],
        )
        .unwrap();
        assert_eq!(a.beta().unwrap(), b.beta().unwrap());
    }

    #[test]
    fn dim_quotient_examples() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let ix = IdealHandle::new(r.clone(), vec![poly(&r, "x")]).unwrap();
        assert_eq!(ix.dim_quotient(), Some(1));
        let m = IdealHandle::maximal(r.clone());
        assert_eq!(m.dim_quotient(), Some(0));
        // k[x,y]/(xy), I = (x+y): quotient is k[x]/(x^2), dim 0
        let rq = make_ring(
            101,
            &["x", "y"],
            MonomialOrder::Grevlex,
            vec![poly(&r, "x*y")],
        )
        .unwrap();
        let i = IdealHandle::new(rq.clone(), vec![poly(&rq, "x + y")]).unwrap();
        assert_eq!(i.dim_quotient(), Some(0));
    }

    #[test]
    fn reduce_examples() {
        let tmp = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = poly(&tmp, "x^2");
        let r = make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap();
        let f = poly(&r, "x^2 + x");
        assert_eq!(r.reduce(&f), poly(&r, "x"));
        assert!(r.reduce(&Polynomial::zero()).is_zero());
        let r2 = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let xy = poly(&r2, "x*y");
        let rq = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, vec![xy]).unwrap();
        let f = poly(&rq, "x^2*y + x*y^2");
        assert!(rq.reduce(&f).is_zero());
    }
}
