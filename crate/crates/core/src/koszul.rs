//! Koszul complexes on generating sets and the invariants hanging off
//! them: depth via Koszul homology, the kappa nonvanishing degrees, the
//! generating-set well-definedness check, and the cycles-in-mK test.

use crate::complex::ChainComplex;
use crate::error::EngineError;
use crate::homology::{homology_all, kernel_gens, HomologyData};
use crate::homotopy::lift_map;
use crate::module::{Module, RMatrix};
use crate::modvec::*;
use crate::poly::Polynomial;
use crate::resolution::resolve_module_partial;
use crate::ring::{IdealHandle, RingHandle};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct KoszulData {
    pub ring: RingHandle,
    pub generators: Vec<Polynomial>,
    pub complex: ChainComplex,
}

/// All k-subsets of 0..s in lexicographic order.
fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
    if k > s {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next lex subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + s - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The exterior Koszul complex on a list of homogeneous elements, with
/// d(e_{j1..ji}) = sum_t (-1)^{t+1} g_{jt} e_{..without jt..}.
pub fn koszul(ring: &RingHandle, gens: &[Polynomial]) -> Result<KoszulData, EngineError> {
    let ctx = &ring.ctx;
    let mut reduced = Vec::new();
    for g in gens {
        let r = ring.reduce(g);
        if r.is_zero() {
            return Err(EngineError::Precondition(
                "Koszul generator is zero in the ring".into(),
            ));
        }
        if !r.is_homogeneous() {
            return Err(EngineError::Precondition(
                "Koszul generator is inhomogeneous".into(),
            ));
        }
        reduced.push(r);
    }
    let degs: Vec<i64> = reduced.iter().map(|g| g.degree().unwrap() as i64).collect();
    let s = reduced.len();
    let mut modules = vec![Module::free(ring.clone(), vec![0])];
    let mut diffs = Vec::new();
    let mut prev: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 1..=s {
        let subs = subsets(s, i);
        let twists: Vec<i64> = subs
            .iter()
            .map(|sub| sub.iter().map(|&j| degs[j]).sum())
            .collect();
        let index: HashMap<&[usize], usize> = prev
            .iter()
            .enumerate()
            .map(|(a, b)| (b.as_slice(), a))
            .collect();
        let mut cols = Vec::new();
        for sub in &subs {
            let mut col = zero_elem(prev.len());
            for (t, &j) in sub.iter().enumerate() {
                let mut rest = sub.clone();
                rest.remove(t);
                let row = index[rest.as_slice()];
                let g = if t % 2 == 1 {
                    reduced[j].neg(ctx)
                } else {
                    reduced[j].clone()
                };
                col[row] = col[row].add(ctx, &g);
            }
            cols.push(col);
        }
        diffs.push(RMatrix {
            target_rank: prev.len(),
            cols,
        });
        modules.push(Module::free(ring.clone(), twists));
        prev = subs;
    }
    let complex = ChainComplex::new(ring.clone(), 0, modules, diffs)?;
    Ok(KoszulData {
        ring: ring.clone(),
        generators: reduced,
        complex,
    })
}

/// depth(I, R) = s - max{ i : H_i(K(g_1..g_s)) != 0 } for any generating
/// set of size s.
pub fn depth_via_koszul(ring: &RingHandle, ideal: &IdealHandle) -> Result<usize, EngineError> {
    if !ideal.is_proper() {
        return Err(EngineError::UnitIdeal);
    }
    if ideal.generators.is_empty() {
        return Err(EngineError::Precondition("depth of the zero ideal".into()));
    }
    let k = koszul(ring, &ideal.generators)?;
    let homs = homology_all(&k.complex);
    let hmax = homs
        .iter()
        .filter(|h| !h.is_zero)
        .map(|h| h.degree)
        .max()
        .unwrap_or(0);
    Ok(ideal.generators.len() - hmax as usize)
}

/// R/I as a presented module on one generator.
pub fn cyclic_quotient(ring: &RingHandle, ideal: &IdealHandle) -> Module {
    let rels = ideal.generators.iter().map(|g| vec![g.clone()]).collect();
    Module::presented(ring.clone(), vec![0], rels)
}

#[derive(Clone, Debug)]
pub struct KappaData {
    /// Degrees b <= max_b with kappa_b != 0.
    pub degrees: Vec<i64>,
    pub eta: crate::complex::ChainMap,
    pub resolution: ChainComplex,
}

/// Degrees b where the lift K(I) -> (minimal resolution of R/I) is
/// nonzero modulo m, i.e. eta_b tensor k != 0.
pub fn kappa_nonzero_degrees(
    ring: &RingHandle,
    ideal: &IdealHandle,
    max_b: usize,
) -> Result<KappaData, EngineError> {
    if !ideal.is_proper() {
        return Err(EngineError::UnitIdeal);
    }
    let res = resolve_module_partial(&cyclic_quotient(ring, ideal), max_b);
    let g = res.complex()?;
    let k = koszul(ring, &ideal.generators)?;
    let kc = k.complex.truncate_leq(max_b as i64);
    let bottom = RMatrix::identity(ring, 1);
    let eta = lift_map(&kc, &g, bottom.clone(), 0, false)?;
    let collect = |m: &crate::complex::ChainMap| -> Vec<i64> {
        let mut out = Vec::new();
        for b in 0..=(max_b as i64).min(kc.hi()).min(g.hi()) {
            if let Some(c) = m.component(b) {
                if !c.entries_in_max_ideal(ring) {
                    out.push(b);
                }
            }
        }
        out
    };
    let degrees = collect(&eta);
    // lift-independence: a perturbed solver order must give the same
    // verdicts modulo m
    let eta2 = lift_map(&kc, &g, bottom, 0, true)?;
    if collect(&eta2) != degrees {
        return Err(EngineError::Other(
            "kappa verdicts differ between independent lifts".into(),
        ));
    }
    Ok(KappaData {
        degrees,
        eta,
        resolution: g,
    })
}

#[derive(Clone, Debug)]
pub struct WellDefinedReport {
    pub pass: bool,
    pub window: (i64, i64),
    /// Per homological degree: (lhs Hilbert data, rhs Hilbert data).
    pub rows: Vec<(i64, Vec<usize>, Vec<usize>)>,
}

/// Numerical check that K(gens + y) has the homology of
/// K(gens) + suspended-and-twisted K(gens), for y in (gens).
pub fn check_well_defined(
    ring: &RingHandle,
    gens: &[Polynomial],
    y: &Polynomial,
) -> Result<WellDefinedReport, EngineError> {
    let ideal = IdealHandle::new(ring.clone(), gens.to_vec())?;
    if !ideal.contains(y) {
        return Err(EngineError::Precondition(
            "the added element is not in the ideal of the generators".into(),
        ));
    }
    let yr = ring.reduce(y);
    let dy = yr
        .degree()
        .ok_or_else(|| EngineError::Precondition("the added element is zero".into()))?
        as i64;
    let k1 = koszul(ring, gens)?;
    let mut bigger = gens.to_vec();
    bigger.push(yr);
    let k2 = koszul(ring, &bigger)?;
    let h1 = homology_all(&k1.complex);
    let h2 = homology_all(&k2.complex);
    let max_tw = k2
        .complex
        .modules
        .iter()
        .flat_map(|m| m.twists.iter().copied())
        .max()
        .unwrap_or(0);
    let margin = match ring.k_length {
        Some(len) => len as i64,
        None => 8,
    };
    let (wlo, whi) = (0, max_tw + margin);
    let hf = |data: &[HomologyData], i: i64| -> Vec<usize> {
        data.iter()
            .find(|h| h.degree == i)
            .map(|h| h.hf_window(wlo, whi))
            .unwrap_or_else(|| vec![0; (whi - wlo + 1) as usize])
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for i in 0..=(k2.complex.hi() + 1) {
        let lhs = hf(&h2, i);
        let a = hf(&h1, i);
        let prev = hf(&h1, i - 1);
        let shifted: Vec<usize> = (wlo..=whi).map(|d| a_get(&prev, d - dy - wlo)).collect();
        let rhs: Vec<usize> = a.iter().zip(&shifted).map(|(x, y)| x + y).collect();
        if lhs != rhs {
            pass = false;
        }
        rows.push((i, lhs, rhs));
    }
    Ok(WellDefinedReport {
        pass,
        window: (wlo, whi),
        rows,
    })
}

fn a_get(v: &[usize], i: i64) -> usize {
    if i < 0 || i as usize >= v.len() {
        0
    } else {
        v[i as usize]
    }
}

/// True iff every cycle of K(gens) has all coordinates in m; requires
/// gens to be a minimal generating set of its ideal.
pub fn cycles_in_mk(ring: &RingHandle, gens: &[Polynomial]) -> Result<bool, EngineError> {
    let ideal = IdealHandle::new(ring.clone(), gens.to_vec())?;
    if ideal.beta()? != gens.len() {
        return Err(EngineError::Precondition(
            "generators are not a minimal generating set".into(),
        ));
    }
    let k = koszul(ring, gens)?;
    let cx = &k.complex;
    for i in (cx.lo + 1)..=cx.hi() {
        let d = cx.diff_at(i).unwrap();
        let src = cx.module_at(i).unwrap();
        let tgt = cx.module_at(i - 1).unwrap();
        let cycles = kernel_gens(ring, d, src.rank(), tgt);
        for z in cycles {
            for p in &z {
                if ring.reduce(p).constant_term() != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::monomial::MonomialOrder;
    use crate::ring::make_ring;

    fn poly(ring: &RingHandle, s: &str) -> Polynomial {
        crate::session::parse_poly_str(&ring.ctx, &ring.vars, s).unwrap()
    }

    fn square_zero_ring(vars: &[&str]) -> RingHandle {
        let s = make_ring(101, vars, MonomialOrder::Grevlex, Vec::new()).unwrap();
        let mut rels = Vec::new();
        for i in 0..vars.len() {
            for j in i..vars.len() {
                let p = Polynomial::var(&s.ctx, i).mul(&s.ctx, &Polynomial::var(&s.ctx, j));
                rels.push(p);
            }
        }
        make_ring(101, vars, MonomialOrder::Grevlex, rels).unwrap()
    }

    #[test]
    fn textbook_koszul_shape() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let k = koszul(&r, &[poly(&r, "x"), poly(&r, "y")]).unwrap();
        assert_eq!(k.complex.rank_at(0), 1);
        assert_eq!(k.complex.rank_at(1), 2);
        assert_eq!(k.complex.rank_at(2), 1);
        assert_eq!(k.complex.twists_at(2), vec![2]);
        // regular sequence: resolution of k
        assert!(homology(&k.complex, 1).is_zero);
        assert!(homology(&k.complex, 2).is_zero);
        assert_eq!(homology(&k.complex, 0).length, Some(1));
    }

    #[test]
    fn rank_binomials_three_generators() {
        let r = make_ring(101, &["x", "y", "z"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let gens = vec![poly(&r, "x"), poly(&r, "y"), poly(&r, "z")];
        let k = koszul(&r, &gens).unwrap();
        let ranks: Vec<usize> = (0..=3).map(|i| k.complex.rank_at(i)).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        let euler: i64 = ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        assert_eq!(euler, 0);
    }

    #[test]
    fn depth_examples() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let m = IdealHandle::maximal(r.clone());
        assert_eq!(depth_via_koszul(&r, &m).unwrap(), 2);
        let xy = poly(&r, "x*y");
        let rq = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, vec![xy]).unwrap();
        let ix = IdealHandle::new(rq.clone(), vec![poly(&rq, "x")]).unwrap();
        assert_eq!(depth_via_koszul(&rq, &ix).unwrap(), 0);
        let isum = IdealHandle::new(rq.clone(), vec![poly(&rq, "x + y")]).unwrap();
        assert_eq!(depth_via_koszul(&rq, &isum).unwrap(), 1);
    }

    #[test]
    fn depth_generating_set_independent() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let a = IdealHandle::new(r.clone(), vec![poly(&r, "x"), poly(&r, "y")]).unwrap();
        let b = IdealHandle::new(
            r.clone(),
            vec![poly(&r, "x"), poly(&r, "y"), poly(&r, "x + y")],
        )
        .unwrap();
        assert_eq!(
            depth_via_koszul(&r, &a).unwrap(),
            depth_via_koszul(&r, &b).unwrap()
        );
    }

    #[test]
    fn kappa_dual_numbers() {
        let s = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = poly(&s, "x^2");
        let r = make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap();
        let m = IdealHandle::maximal(r.clone());
        let kd = kappa_nonzero_degrees(&r, &m, 1).unwrap();
        assert_eq!(kd.degrees, vec![0, 1]);
    }

    #[test]
    fn kappa_contains_edim_square_zero() {
        let r = square_zero_ring(&["x", "y"]);
        let m = IdealHandle::maximal(r.clone());
        let kd = kappa_nonzero_degrees(&r, &m, 2).unwrap();
        assert!(kd.degrees.contains(&2));
        assert!(kd.degrees.contains(&0));
    }

    #[test]
    fn well_defined_examples() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x = poly(&r, "x");
        let rep = check_well_defined(&r, std::slice::from_ref(&x), &x).unwrap();
        assert!(rep.pass);
        let gens = vec![poly(&r, "x"), poly(&r, "y")];
        let rep = check_well_defined(&r, &gens, &poly(&r, "x + y")).unwrap();
        assert!(rep.pass);
        let s = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = poly(&s, "x^2");
        let rq = make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap();
        let xq = poly(&rq, "x");
        let rep = check_well_defined(&rq, std::slice::from_ref(&xq), &xq).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn well_defined_rejects_outsider() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let res = check_well_defined(&r, &[poly(&r, "x")], &poly(&r, "y"));
        assert!(res.is_err());
    }

    #[test]
    fn cycles_in_mk_examples() {
        let r = square_zero_ring(&["x", "y"]);
        let gens = vec![poly(&r, "x"), poly(&r, "y")];
        assert!(cycles_in_mk(&r, &gens).unwrap());
        let s = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = poly(&s, "x^2");
        let rq = make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap();
        assert!(cycles_in_mk(&rq, &[poly(&rq, "x")]).unwrap());
        let rp = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        assert!(cycles_in_mk(&rp, &[poly(&rp, "x")]).unwrap());
    }

    #[test]
    fn cycles_rejects_redundant_generators() {
        let r = make_ring(101, &["x", "y"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let gens = vec![poly(&r, "x"), poly(&r, "y"), poly(&r, "x + y")];
        assert!(cycles_in_mk(&r, &gens).is_err());
    }
}
