//! Homotopy-theoretic decisions: ghostness, null-homotopy (one global
//! graded linear solve over k), and comparison-map lifting.

use crate::complex::{ChainComplex, ChainMap};
use crate::error::EngineError;
use crate::groebner::buchberger_module;
use crate::linalg::{solve, FpMatrix};
use crate::module::RMatrix;
use crate::modvec::*;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use std::collections::{BTreeMap, HashMap};

/// True iff H_i(phi) = 0 for every i: the image of each cycle is a
/// boundary in the target.
pub fn is_ghost(phi: &ChainMap) -> bool {
    let ring = &phi.source.ring;
    let ctx = &ring.ctx;
    for i in phi.source.degrees() {
        let src = match phi.source.module_at(i) {
            Some(m) if m.rank() > 0 => m,
            _ => continue,
        };
        let cycles: Vec<ModElem> = match phi.source.diff_at(i) {
            Some(d) => crate::homology::kernel_gens(
                ring,
                d,
                src.rank(),
                phi.source.module_at(i - 1).unwrap(),
            ),
            None => (0..src.rank()).map(|j| unit_elem(src.rank(), j, ctx)).collect(),
        };
        let tgt = match phi.target.module_at(i) {
            Some(m) if m.rank() > 0 => m,
            _ => continue,
        };
        let comp = match phi.component(i) {
            Some(c) => c,
            None => continue,
        };
        let boundary_gens = crate::homology::image_gens(phi.target.diff_at(i + 1), tgt);
        let bgb = buchberger_module(ctx, boundary_gens, tgt.rank());
        for z in &cycles {
            let img = comp.apply(ring, z);
            if !crate::groebner::is_member(ctx, &img, &bgb) {
                return false;
            }
        }
    }
    true
}

// One unknown graded matrix block in a linear solve.
struct Block {
    degree: i64,
    /// (row j, col k, monomial) per unknown scalar, parallel to ids.
    entries: Vec<(usize, usize, Monomial)>,
    first_id: usize,
}

/// Incrementally built k-linear system with sparse symbolic rows.
struct System {
    nunknowns: usize,
    /// contributions[u] = list of (row, coeff)
    contributions: Vec<Vec<(usize, u64)>>,
    rhs: Vec<(usize, u64)>,
    row_index: HashMap<(usize, usize, Monomial), usize>,
    nrows: usize,
}

impl System {
    fn new() -> Self {
        System {
            nunknowns: 0,
            contributions: Vec::new(),
            rhs: Vec::new(),
            row_index: HashMap::new(),
            nrows: 0,
        }
    }

    fn row(&mut self, eq: usize, comp: usize, m: Monomial) -> usize {
        let key = (eq, comp, m);
        if let Some(&r) = self.row_index.get(&key) {
            return r;
        }
        let r = self.nrows;
        self.row_index.insert(key, r);
        self.nrows += 1;
        r
    }

    fn add_unknowns(&mut self, n: usize) -> usize {
        let first = self.nunknowns;
        self.nunknowns += n;
        self.contributions.resize(self.nunknowns, Vec::new());
        first
    }

    /// Record the normal-formed vector as the contribution of unknown u in
    /// equation eq.
    fn add_vector(&mut self, eq: usize, u: usize, v: &ModElem) {
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in &p.terms {
                let r = self.row(eq, comp, m.clone());
                self.contributions[u].push((r, *c));
            }
        }
    }

    fn add_rhs(&mut self, eq: usize, v: &ModElem) {
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in &p.terms {
                let r = self.row(eq, comp, m.clone());
                self.rhs.push((r, *c));
            }
        }
    }

    fn solve(&self, fp: &crate::arith::Fp, reverse: bool) -> Option<Vec<u64>> {
        let mut a = FpMatrix::zero(self.nrows, self.nunknowns);
        for (u, contribs) in self.contributions.iter().enumerate() {
            for &(r, c) in contribs {
                a.set(r, u, fp.add(a.get(r, u), c));
            }
        }
        let mut b = vec![0u64; self.nrows];
        for &(r, c) in &self.rhs {
            b[r] = fp.add(b[r], c);
        }
        solve(fp, &a, &b, reverse)
    }
}

/// Decide phi = d alpha + alpha d by a single graded linear solve; the
/// homotopy witness is returned when one exists.
pub fn is_null_homotopic(phi: &ChainMap) -> Result<Option<Vec<(i64, RMatrix)>>, EngineError> {
    null_homotopy_witness(phi, false)
}

pub fn null_homotopy_witness(
    phi: &ChainMap,
    reverse_solver: bool,
) -> Result<Option<Vec<(i64, RMatrix)>>, EngineError> {
    let f = &phi.source;
    let g = &phi.target;
    let ring = &f.ring;
    let ctx = &ring.ctx;
    let shift = phi.shift()?.unwrap_or(0);
    let mut sys = System::new();
    let mut blocks: Vec<Block> = Vec::new();
    // unknown alpha_i : F_i -> G_{i+1}
    for i in f.degrees() {
        let src_rank = f.rank_at(i);
        let tgt_rank = g.rank_at(i + 1);
        if src_rank == 0 || tgt_rank == 0 {
            continue;
        }
        let stw = f.twists_at(i);
        let ttw = g.twists_at(i + 1);
        let mut entries = Vec::new();
        for k in 0..src_rank {
            for j in 0..tgt_rank {
                let d = stw[k] - ttw[j] + shift;
                if d < 0 {
                    continue;
                }
                for m in ring.std_basis(d as u32) {
                    entries.push((j, k, m));
                }
            }
        }
        let first_id = sys.add_unknowns(entries.len());
        blocks.push(Block {
            degree: i,
            entries,
            first_id,
        });
    }
    // equations: phi_i = dG_{i+1} alpha_i + alpha_{i-1} dF_i, per column,
    // in the quotient module G_i
    let mut eq_ids: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut next_eq = 0usize;
    for i in f.degrees() {
        if f.rank_at(i) == 0 || g.rank_at(i) == 0 {
            continue;
        }
        for k in 0..f.rank_at(i) {
            eq_ids.insert((i, k), next_eq);
            next_eq += 1;
        }
    }
    // hom-validity: alpha_i must kill source relations inside G_{i+1}
    let mut rel_eqs: Vec<(usize, usize, usize)> = Vec::new(); // (block idx, rel idx, eq)
    for (bi, b) in blocks.iter().enumerate() {
        let src = f.module_at(b.degree).unwrap();
        for ri in 0..src.relations.len() {
            rel_eqs.push((bi, ri, next_eq));
            next_eq += 1;
        }
    }
    for b in &blocks {
        let i = b.degree;
        let gmod_next = g.module_at(i + 1);
        // dG_{i+1} alpha_i lands in equations at degree i
        if let Some(dg) = g.diff_at(i + 1) {
            if g.rank_at(i) > 0 {
                let gmod = g.module_at(i).unwrap();
                let gb = gmod.rel_gb();
                for (off, (j, k, m)) in b.entries.iter().enumerate() {
                    if let Some(&eq) = eq_ids.get(&(i, *k)) {
                        let vec = term_mul_elem(ctx, &dg.cols[*j], m, 1);
                        let red = crate::groebner::nf(ctx, &vec, &gb);
                        sys.add_vector(eq, b.first_id + off, &red);
                    }
                }
            }
        }
        // alpha_i dF_{i+1} lands in equations at degree i+1
        if let Some(df) = f.diff_at(i + 1) {
            if g.rank_at(i + 1) > 0 {
                let gmod = gmod_next.unwrap();
                let gb = gmod.rel_gb();
                for kp in 0..f.rank_at(i + 1) {
                    let Some(&eq) = eq_ids.get(&(i + 1, kp)) else {
                        continue;
                    };
                    for (off, (j, k, m)) in b.entries.iter().enumerate() {
                        let p = df.cols[kp][*k].mul_term(ctx, m, 1);
                        if p.is_zero() {
                            continue;
                        }
                        let mut vec = zero_elem(gmod.rank());
                        vec[*j] = p;
                        let red = crate::groebner::nf(ctx, &vec, &gb);
                        sys.add_vector(eq, b.first_id + off, &red);
                    }
                }
            }
        }
    }
    // relation constraints
    for &(bi, ri, eq) in &rel_eqs {
        let b = &blocks[bi];
        let src = f.module_at(b.degree).unwrap();
        let gmod = g.module_at(b.degree + 1).unwrap();
        let gb = gmod.rel_gb();
        let r = &src.relations[ri];
        for (off, (j, k, m)) in b.entries.iter().enumerate() {
            let p = r[*k].mul_term(ctx, m, 1);
            if p.is_zero() {
                continue;
            }
            let mut vec = zero_elem(gmod.rank());
            vec[*j] = p;
            let red = crate::groebner::nf(ctx, &vec, &gb);
            sys.add_vector(eq, b.first_id + off, &red);
        }
    }
    // right-hand sides
    for (&(i, k), &eq) in &eq_ids {
        if let Some(comp) = phi.component(i) {
            let gmod = g.module_at(i).unwrap();
            let red = crate::groebner::nf(ctx, &comp.cols[k], &gmod.rel_gb());
            sys.add_rhs(eq, &red);
        }
    }
    let Some(x) = sys.solve(&ctx.fp, reverse_solver) else {
        return Ok(None);
    };
    // reconstruct the witness
    let mut witness = Vec::new();
    for b in &blocks {
        let src_rank = f.rank_at(b.degree);
        let tgt_rank = g.rank_at(b.degree + 1);
        let mut mat = RMatrix::zero(tgt_rank, src_rank);
        for (off, (j, k, m)) in b.entries.iter().enumerate() {
            let c = x[b.first_id + off];
            if c != 0 {
                let t = Polynomial::monomial(m.clone(), c);
                mat.cols[*k][*j] = mat.cols[*k][*j].add(ctx, &t);
            }
        }
        witness.push((b.degree, mat));
    }
    Ok(Some(witness))
}

/// Verify a homotopy witness against the map it is supposed to trivialize.
pub fn check_homotopy(phi: &ChainMap, witness: &[(i64, RMatrix)]) -> bool {
    let f = &phi.source;
    let g = &phi.target;
    let ring = &f.ring;
    let ctx = &ring.ctx;
    let alpha: BTreeMap<i64, &RMatrix> = witness.iter().map(|(i, m)| (*i, m)).collect();
    for i in f.degrees() {
        if f.rank_at(i) == 0 || g.rank_at(i) == 0 {
            continue;
        }
        let gmod = g.module_at(i).unwrap();
        for k in 0..f.rank_at(i) {
            let mut acc = zero_elem(g.rank_at(i));
            if let (Some(a), Some(dg)) = (alpha.get(&i), g.diff_at(i + 1)) {
                let col = a.cols[k].clone();
                let img = dg.apply(ring, &col);
                acc = add_elem(ctx, &acc, &img);
            }
            if let (Some(a), Some(df)) = (alpha.get(&(i - 1)), f.diff_at(i)) {
                let img = a.apply(ring, &df.cols[k]);
                acc = add_elem(ctx, &acc, &img);
            }
            let want = phi
                .component(i)
                .map(|c| c.cols[k].clone())
                .unwrap_or_else(|| zero_elem(g.rank_at(i)));
            let diff = sub_elem(ctx, &acc, &want);
            if !gmod.is_zero_elem_in_module(&diff) {
                return false;
            }
        }
    }
    true
}

/// Lift a degree-`base` comparison matrix to a chain map F -> G, degree by
/// degree. Fails with the obstructed degree when no lift exists.
pub fn lift_map(
    f: &ChainComplex,
    g: &ChainComplex,
    bottom: RMatrix,
    base: i64,
    reverse_solver: bool,
) -> Result<ChainMap, EngineError> {
    let ring = &f.ring;
    let ctx = &ring.ctx;
    let mut components: BTreeMap<i64, RMatrix> = BTreeMap::new();
    let shift = {
        let stw = f.twists_at(base);
        let ttw = g.twists_at(base);
        bottom
            .internal_degree(&stw, &ttw)
            .map_err(|(row, col)| EngineError::Inhomogeneous {
                degree: base,
                row,
                col,
            })?
            .unwrap_or(0)
    };
    components.insert(base, bottom);
    for i in (base + 1)..=f.hi() {
        let src_rank = f.rank_at(i);
        if src_rank == 0 {
            continue;
        }
        let tgt_rank = g.rank_at(i);
        if tgt_rank == 0 {
            // equation: eta_{i-1} dF_i must vanish in G_{i-1}
            if let (Some(prev), Some(df), Some(gmod)) =
                (components.get(&(i - 1)), f.diff_at(i), g.module_at(i - 1))
            {
                for col in &df.cols {
                    let img = prev.apply(ring, col);
                    if !gmod.is_zero_elem_in_module(&img) {
                        return Err(EngineError::LiftObstructed(i));
                    }
                }
            }
            continue;
        }
        let stw = f.twists_at(i);
        let ttw = g.twists_at(i);
        let mut sys = System::new();
        let mut entries = Vec::new();
        for k in 0..src_rank {
            for j in 0..tgt_rank {
                let d = stw[k] - ttw[j] + shift;
                if d < 0 {
                    continue;
                }
                for m in ring.std_basis(d as u32) {
                    entries.push((j, k, m));
                }
            }
        }
        let first = sys.add_unknowns(entries.len());
        // dG_i eta_i = eta_{i-1} dF_i in G_{i-1}
        let gmod_prev = g.module_at(i - 1);
        if let Some(dg) = g.diff_at(i) {
            let gb = gmod_prev.unwrap().rel_gb();
            for (off, (j, k, m)) in entries.iter().enumerate() {
                let vec = term_mul_elem(ctx, &dg.cols[*j], m, 1);
                let red = crate::groebner::nf(ctx, &vec, &gb);
                sys.add_vector(*k, first + off, &red);
            }
        }
        if let Some(df) = f.diff_at(i) {
            if let Some(gm) = gmod_prev {
                if gm.rank() > 0 {
                    let gb = gm.rel_gb();
                    let prev = components
                        .get(&(i - 1))
                        .cloned()
                        .unwrap_or_else(|| RMatrix::zero(gm.rank(), f.rank_at(i - 1)));
                    for k in 0..src_rank {
                        let rhs = prev.apply(ring, &df.cols[k]);
                        let red = crate::groebner::nf(ctx, &rhs, &gb);
                        sys.add_rhs(k, &red);
                    }
                }
            }
        }
        // source relation constraints inside G_i
        let src = f.module_at(i).unwrap();
        let gmod = g.module_at(i).unwrap();
        if !src.relations.is_empty() {
            let gb = gmod.rel_gb();
            let base_eq = src_rank;
            for (ri, r) in src.relations.iter().enumerate() {
                for (off, (j, k, m)) in entries.iter().enumerate() {
                    let p = r[*k].mul_term(ctx, m, 1);
                    if p.is_zero() {
                        continue;
                    }
                    let mut vec = zero_elem(gmod.rank());
                    vec[*j] = p;
                    let red = crate::groebner::nf(ctx, &vec, &gb);
                    sys.add_vector(base_eq + ri, first + off, &red);
                }
            }
        }
        let Some(x) = sys.solve(&ctx.fp, reverse_solver) else {
            return Err(EngineError::LiftObstructed(i));
        };
        let mut mat = RMatrix::zero(tgt_rank, src_rank);
        for (off, (j, k, m)) in entries.iter().enumerate() {
            let c = x[first + off];
            if c != 0 {
                let t = Polynomial::monomial(m.clone(), c);
                mat.cols[*k][*j] = mat.cols[*k][*j].add(ctx, &t);
            }
        }
        components.insert(i, mat);
    }
    components.retain(|_, m| !m.cols.is_empty() && m.target_rank > 0);
    ChainMap::new(f.clone(), g.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cone, ChainComplex};
    use crate::koszul::koszul;
    use crate::module::{Module, RMatrix};
    use crate::monomial::MonomialOrder;
    use crate::ring::{make_ring, RingHandle};

    fn poly(ring: &RingHandle, s: &str) -> Polynomial {
        crate::session::parse_poly_str(&ring.ctx, &ring.vars, s).unwrap()
    }

    fn dual_numbers() -> RingHandle {
        let s = make_ring(101, &["x"], MonomialOrder::Grevlex, Vec::new()).unwrap();
        let x2 = poly(&s, "x^2");
        make_ring(101, &["x"], MonomialOrder::Grevlex, vec![x2]).unwrap()
    }

    fn kx(ring: &RingHandle) -> ChainComplex {
        koszul(ring, &[poly(ring, "x")]).unwrap().complex
    }

    #[test]
    fn zero_map_is_null_homotopic() {
        let r = dual_numbers();
        let f = kx(&r);
        let z = ChainMap::zero(f.clone(), f.clone());
        let w = is_null_homotopic(&z).unwrap();
        assert!(w.is_some());
        assert!(check_homotopy(&z, &w.unwrap()));
    }

    #[test]
    fn identity_on_exact_complex_is_null_homotopic() {
        let r = dual_numbers();
        let single = ChainComplex::new(
            r.clone(),
            0,
            vec![Module::free(r.clone(), vec![0])],
            vec![],
        )
        .unwrap();
        let c = cone(&ChainMap::identity(&single)).unwrap();
        let id = ChainMap::identity(&c);
        let w = is_null_homotopic(&id).unwrap();
        assert!(w.is_some());
        assert!(check_homotopy(&id, &w.unwrap()));
    }

    #[test]
    fn identity_on_koszul_is_not_null_homotopic_and_not_ghost() {
        let r = dual_numbers();
        let f = kx(&r);
        let id = ChainMap::identity(&f);
        assert!(is_null_homotopic(&id).unwrap().is_none());
        assert!(!is_ghost(&id));
    }

    #[test]
    fn map_out_of_exact_complex_is_ghost() {
        let r = dual_numbers();
        let single = ChainComplex::new(
            r.clone(),
            0,
            vec![Module::free(r.clone(), vec![0])],
            vec![],
        )
        .unwrap();
        let c = cone(&ChainMap::identity(&single)).unwrap();
        let f = kx(&r);
        // project the cone onto its degree-0 part and include into K(x)
        let z = ChainMap::zero(c.clone(), f.clone());
        assert!(is_ghost(&z));
    }

    #[test]
    fn lift_identity_and_shifted_bottom() {
        let r = dual_numbers();
        let f = kx(&r);
        let bottom = RMatrix {
            target_rank: 1,
            cols: vec![vec![Polynomial::constant(&r.ctx, 1)]],
        };
        let lifted = lift_map(&f, &f, bottom, 0, false).unwrap();
        assert!(lifted.validate_commutation().is_ok());
        // multiplication by x lifts with a uniform internal shift
        let bottom_x = RMatrix {
            target_rank: 1,
            cols: vec![vec![poly(&r, "x")]],
        };
        let lifted_x = lift_map(&f, &f, bottom_x, 0, false).unwrap();
        assert_eq!(lifted_x.shift().unwrap(), Some(1));
        assert!(lifted_x.validate_commutation().is_ok());
    }

    #[test]
    fn null_homotopy_verdict_is_solver_order_independent() {
        let r = dual_numbers();
        let f = kx(&r);
        let mx = ChainMap::multiplication(&f, &poly(&r, "x")).unwrap();
        let a = null_homotopy_witness(&mx, false).unwrap();
        let b = null_homotopy_witness(&mx, true).unwrap();
        assert_eq!(a.is_some(), b.is_some());
    }
}
