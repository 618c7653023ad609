//! Buchberger's algorithm for submodules of free modules S^r over
//! S = GF(p)[x_1..x_n], with the position-over-term order. Ideals are the
//! r = 1 case. Syzygies and lifts come from the classical elimination
//! trick: compute a basis of the span of (f_i, e_i) in S^(r+k); elements
//! supported in the tag block are syzygies, and normal forms of (v, 0)
//! carry lift coefficients.

use crate::modvec::*;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyCtx, Polynomial};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub ncomps: usize,
    pub elems: Vec<ModElem>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .filter_map(|g| lead_term(g).map(|(c, m, _)| (c, m.clone())))
            .collect()
    }

    /// Componentwise leading-term monomial ideals: entry j lists the lead
    /// monomials living in component j.
    pub fn lead_by_component(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.ncomps];
        for (c, m) in self.lead_terms() {
            out[c].push(m);
        }
        out
    }

    pub fn contains_unit(&self) -> bool {
        self.ncomps == 1
            && self
                .elems
                .iter()
                .any(|g| g[0].lead().map(|(m, _)| m.is_one()).unwrap_or(false))
    }
}

/// Full normal form of v against the basis: every term of the remainder is
/// divisible by no leading term. k-linear in v.
pub fn nf(ctx: &PolyCtx, v: &ModElem, gb: &GroebnerBasis) -> ModElem {
    let mut work = v.clone();
    let mut rem = zero_elem(v.len());
    'outer: while let Some((comp, m, c)) = lead_term(&work).map(|(a, b, c)| (a, b.clone(), c)) {
        for g in &gb.elems {
            if let Some((gc, gm, gcoef)) = lead_term(g) {
                if gc == comp && gm.divides(&m) {
                    let q = gm.quotient(&m);
                    let factor = ctx.fp.div(c, gcoef);
                    let sub = term_mul_elem(ctx, g, &q, factor);
                    work = sub_elem(ctx, &work, &sub);
                    continue 'outer;
                }
            }
        }
        // irreducible lead term: move to remainder
        let t = Polynomial::monomial(m.clone(), c);
        rem[comp] = rem[comp].add(ctx, &t);
        work[comp] = work[comp].sub(ctx, &t);
    }
    rem
}

fn spoly(
    ctx: &PolyCtx,
    gi: &ModElem,
    gj: &ModElem,
    li: &(usize, Monomial, u64),
    lj: &(usize, Monomial, u64),
) -> ModElem {
    let l = li.1.lcm(&lj.1);
    let a = term_mul_elem(ctx, gi, &li.1.quotient(&l), ctx.fp.inv(li.2));
    let b = term_mul_elem(ctx, gj, &lj.1.quotient(&l), ctx.fp.inv(lj.2));
    sub_elem(ctx, &a, &b)
}

/// Buchberger with normal-strategy pair selection (smallest lcm degree
/// first) and the coprime criterion in the ideal case.
pub fn buchberger_module(ctx: &PolyCtx, gens: Vec<ModElem>, ncomps: usize) -> GroebnerBasis {
    let mut basis: Vec<ModElem> = gens.into_iter().filter(|g| !is_zero_elem(g)).collect();
    let mut pairs: BinaryHeap<(Reverse<u32>, usize, usize)> = BinaryHeap::new();
    let push_pairs =
        |pairs: &mut BinaryHeap<(Reverse<u32>, usize, usize)>, basis: &[ModElem], t: usize| {
            let lt = match lead_term(&basis[t]) {
                Some(l) => (l.0, l.1.clone(), l.2),
                None => return,
            };
            for (s, g) in basis.iter().enumerate().take(t) {
                if let Some((sc, sm, _)) = lead_term(g) {
                    if sc == lt.0 {
                        let deg = sm.lcm(&lt.1).degree();
                        pairs.push((Reverse(deg), s, t));
                    }
                }
            }
        };
    for t in 0..basis.len() {
        push_pairs(&mut pairs, &basis, t);
    }
    let pre = GroebnerBasis {
        order: ctx.order,
        ncomps,
        elems: Vec::new(),
        reduced: false,
    };
    let mut gb = pre;
    while let Some((_, i, j)) = pairs.pop() {
        let li = match lead_term(&basis[i]) {
            Some(l) => (l.0, l.1.clone(), l.2),
            None => continue,
        };
        let lj = match lead_term(&basis[j]) {
            Some(l) => (l.0, l.1.clone(), l.2),
            None => continue,
        };
        // product criterion is only valid for ideals
        if ncomps == 1 && li.1.coprime(&lj.1) {
            continue;
        }
        let s = spoly(ctx, &basis[i], &basis[j], &li, &lj);
        gb.elems = basis.clone();
        let r = nf(ctx, &s, &gb);
        if !is_zero_elem(&r) {
            basis.push(r);
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }
    gb.elems = basis;
    reduce_basis(ctx, &mut gb);
    gb
}

/// Interreduce: minimal leads, monic, fully reduced tails.
fn reduce_basis(ctx: &PolyCtx, gb: &mut GroebnerBasis) {
    // drop elements whose lead is divisible by another element's lead
    let mut keep: Vec<ModElem> = Vec::new();
    let elems = std::mem::take(&mut gb.elems);
    for (i, g) in elems.iter().enumerate() {
        let (gc, gm, _) = match lead_term(g) {
            Some(l) => l,
            None => continue,
        };
        let redundant = elems.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            match lead_term(h) {
                Some((hc, hm, _)) => {
                    hc == gc
                        && hm.divides(gm)
                        && (hm != gm || j < i)
                }
                None => false,
            }
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // tail-reduce each against the others
    let mut out: Vec<ModElem> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others = GroebnerBasis {
            order: gb.order,
            ncomps: gb.ncomps,
            elems: keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect(),
            reduced: false,
        };
        let r = nf(ctx, &keep[i], &others);
        if is_zero_elem(&r) {
            continue;
        }
        let lc = lead_term(&r).map(|(_, _, c)| c).unwrap();
        out.push(scale_elem(ctx, &r, ctx.fp.inv(lc)));
    }
    out.sort_by(|a, b| {
        let la = lead_term(a).unwrap();
        let lb = lead_term(b).unwrap();
        la.0.cmp(&lb.0).then(lb.1.cmp_order(la.1, ctx.order))
    });
    gb.elems = out;
    gb.reduced = true;
}

/// Membership test: v lies in the module spanned by the basis.
pub fn is_member(ctx: &PolyCtx, v: &ModElem, gb: &GroebnerBasis) -> bool {
    is_zero_elem(&nf(ctx, v, gb))
}

/// Verification pass: every S-pair of the basis reduces to zero.
pub fn verify_buchberger(ctx: &PolyCtx, gb: &GroebnerBasis) -> bool {
    for i in 0..gb.elems.len() {
        for j in 0..i {
            let li = match lead_term(&gb.elems[i]) {
                Some(l) => (l.0, l.1.clone(), l.2),
                None => continue,
            };
            let lj = match lead_term(&gb.elems[j]) {
                Some(l) => (l.0, l.1.clone(), l.2),
                None => continue,
            };
            if li.0 != lj.0 {
                continue;
            }
            let s = spoly(ctx, &gb.elems[i], &gb.elems[j], &li, &lj);
            if !is_zero_elem(&nf(ctx, &s, gb)) {
                return false;
            }
        }
    }
    true
}

/// Span of (f_i, e_i) in S^(r+k): membership, lifts, and syzygies of the
/// original generators in one structure.
pub struct ExtendedGB {
    pub rank: usize,
    pub ngens: usize,
    pub gb: GroebnerBasis,
}

impl ExtendedGB {
    pub fn new(ctx: &PolyCtx, gens: &[ModElem], rank: usize) -> Self {
        let k = gens.len();
        let ext: Vec<ModElem> = gens
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut v = f.clone();
                v.extend(unit_elem(k, i, ctx));
                v
            })
            .collect();
        let gb = buchberger_module(ctx, ext, rank + k);
        ExtendedGB {
            rank,
            ngens: k,
            gb,
        }
    }

    /// Syzygies of the original generators: tag blocks of basis elements
    /// whose value block vanished.
    pub fn syzygies(&self) -> Vec<ModElem> {
        self.gb
            .elems
            .iter()
            .filter(|g| g[..self.rank].iter().all(|p| p.is_zero()))
            .map(|g| g[self.rank..].to_vec())
            .collect()
    }

    /// If v lies in the span, return coefficients c with v = sum c_i f_i.
    pub fn lift(&self, ctx: &PolyCtx, v: &ModElem) -> Option<Vec<Polynomial>> {
        let mut ext = v.clone();
        ext.extend(zero_elem(self.ngens));
        let r = nf(ctx, &ext, &self.gb);
        if r[..self.rank].iter().all(|p| p.is_zero()) {
            Some(r[self.rank..].iter().map(|p| p.neg(ctx)).collect())
        } else {
            None
        }
    }

    pub fn is_member(&self, ctx: &PolyCtx, v: &ModElem) -> bool {
        self.lift(ctx, v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;

    fn ctx2() -> PolyCtx {
        PolyCtx {
            fp: Fp::new(101).unwrap(),
            nvars: 2,
            order: MonomialOrder::Grevlex,
        }
    }

    fn mv(ctx: &PolyCtx, e: &[u32], c: u64) -> Polynomial {
        let _ = ctx;
        Polynomial::monomial(Monomial { exps: e.to_vec() }, c)
    }

    #[test]
    fn unit_ideal() {
        let c = ctx2();
        let one = vec![Polynomial::constant(&c, 1)];
        let gb = buchberger_module(&c, vec![one], 1);
        assert_eq!(gb.elems.len(), 1);
        assert!(gb.contains_unit());
    }

    #[test]
    fn square_of_max_ideal_already_reduced() {
        let c = ctx2();
        let gens = vec![
            vec![mv(&c, &[2, 0], 1)],
            vec![mv(&c, &[1, 1], 1)],
            vec![mv(&c, &[0, 2], 1)],
        ];
        let gb = buchberger_module(&c, gens, 1);
        assert_eq!(gb.elems.len(), 3);
        assert!(gb.reduced);
        assert!(verify_buchberger(&c, &gb));
        // nf(x^2) = 0, nf(x + x^2) = x
        let f = vec![mv(&c, &[2, 0], 1)];
        assert!(is_member(&c, &f, &gb));
        let g = vec![mv(&c, &[1, 0], 1).add(&c, &mv(&c, &[2, 0], 1))];
        let r = nf(&c, &g, &gb);
        assert_eq!(r[0], mv(&c, &[1, 0], 1));
    }

    #[test]
    fn linear_substitution() {
        let c = ctx2();
        // x - y: nf(x) = y
        let f = vec![mv(&c, &[1, 0], 1).sub(&c, &mv(&c, &[0, 1], 1))];
        let gb = buchberger_module(&c, vec![f], 1);
        let x = vec![mv(&c, &[1, 0], 1)];
        let r = nf(&c, &x, &gb);
        assert_eq!(r[0], mv(&c, &[0, 1], 1));
    }

    #[test]
    fn module_membership() {
        let c = ctx2();
        // columns (x,0),(0,x),(y,-x) in S^2; (yx, 0) is in the module
        let cols = vec![
            vec![mv(&c, &[1, 0], 1), Polynomial::zero()],
            vec![Polynomial::zero(), mv(&c, &[1, 0], 1)],
            vec![mv(&c, &[0, 1], 1), mv(&c, &[1, 0], 100)],
        ];
        let gb = buchberger_module(&c, cols, 2);
        let v = vec![mv(&c, &[1, 1], 1), Polynomial::zero()];
        assert!(is_member(&c, &v, &gb));
        // (y, 0) = (0, x) + (y, -x) is also a member
        let w = vec![mv(&c, &[0, 1], 1), Polynomial::zero()];
        assert!(is_member(&c, &w, &gb));
        // but (0, y) is not: second coordinates of the module lie in (x)
        let u = vec![Polynomial::zero(), mv(&c, &[0, 1], 1)];
        assert!(!is_member(&c, &u, &gb));
    }

    #[test]
    fn zero_matrix_empty_basis() {
        let c = ctx2();
        let gb = buchberger_module(&c, vec![vec![Polynomial::zero()]], 1);
        assert!(gb.elems.is_empty());
    }

    #[test]
    fn koszul_syzygy() {
        let c = ctx2();
        // matrix [x y]: syzygies generated by (y, -x)
        let gens = vec![vec![mv(&c, &[1, 0], 1)], vec![mv(&c, &[0, 1], 1)]];
        let ext = ExtendedGB::new(&c, &gens, 1);
        let syz = ext.syzygies();
        assert_eq!(syz.len(), 1);
        // check exactness: x*s0 + y*s1 = 0
        let s = &syz[0];
        let x = mv(&c, &[1, 0], 1);
        let y = mv(&c, &[0, 1], 1);
        let total = s[0].mul(&c, &x).add(&c, &s[1].mul(&c, &y));
        assert!(total.is_zero());
    }

    #[test]
    fn identity_matrix_no_syzygies() {
        let c = ctx2();
        let gens = vec![
            vec![Polynomial::constant(&c, 1), Polynomial::zero()],
            vec![Polynomial::zero(), Polynomial::constant(&c, 1)],
        ];
        let ext = ExtendedGB::new(&c, &gens, 2);
        assert!(ext.syzygies().is_empty());
    }

    #[test]
    fn equal_columns_syzygy() {
        let c = ctx2();
        let gens = vec![vec![mv(&c, &[1, 0], 1)], vec![mv(&c, &[1, 0], 1)]];
        let ext = ExtendedGB::new(&c, &gens, 1);
        let syz = ext.syzygies();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        let x = mv(&c, &[1, 0], 1);
        assert!(s[0].mul(&c, &x).add(&c, &s[1].mul(&c, &x)).is_zero());
    }

    #[test]
    fn lift_coefficients_exact() {
        let c = ctx2();
        let gens = vec![vec![mv(&c, &[1, 0], 1)], vec![mv(&c, &[0, 1], 1)]];
        let ext = ExtendedGB::new(&c, &gens, 1);
        // v = x^2 + xy = x*(x) + x*(y)
        let v = vec![mv(&c, &[2, 0], 1).add(&c, &mv(&c, &[1, 1], 1))];
        let coeffs = ext.lift(&c, &v).unwrap();
        let x = mv(&c, &[1, 0], 1);
        let y = mv(&c, &[0, 1], 1);
        let recon = coeffs[0].mul(&c, &x).add(&c, &coeffs[1].mul(&c, &y));
        assert_eq!(recon, v[0]);
        // 1 is not in (x, y)
        let w = vec![Polynomial::constant(&c, 1)];
        assert!(ext.lift(&c, &w).is_none());
    }
}
