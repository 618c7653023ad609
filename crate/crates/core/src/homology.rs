//! Exact homology of complexes over R: kernels by lifting to S with
//! relation columns adjoined, images as column modules, and graded
//! presentations of the subquotients.

use crate::complex::ChainComplex;
use crate::groebner::{buchberger_module, ExtendedGB};
use crate::module::{Module, RMatrix};
use crate::modvec::*;
use crate::ring::RingHandle;

/// Generators of {v in S^src : A v lies in the relation module of tgt}.
pub fn kernel_gens(
    ring: &RingHandle,
    matrix: &RMatrix,
    src_rank: usize,
    tgt: &Module,
) -> Vec<ModElem> {
    if tgt.rank() == 0 {
        return (0..src_rank)
            .map(|j| unit_elem(src_rank, j, &ring.ctx))
            .collect();
    }
    let mut gens: Vec<ModElem> = matrix.cols.clone();
    let nmain = gens.len();
    gens.extend(tgt.full_relations());
    let ext = ExtendedGB::new(&ring.ctx, &gens, tgt.rank());
    ext.syzygies()
        .into_iter()
        .map(|s| s[..nmain].to_vec())
        .filter(|v| !is_zero_elem(v))
        .collect()
}

/// Column module of the incoming differential plus ambient relations.
pub fn image_gens(matrix: Option<&RMatrix>, ambient: &Module) -> Vec<ModElem> {
    let mut gens: Vec<ModElem> = match matrix {
        Some(m) => m.cols.clone(),
        None => Vec::new(),
    };
    gens.extend(ambient.full_relations());
    gens
}

/// Strip unit entries from relation columns: generators hit by a scalar
/// relation are redundant and get eliminated.
pub fn minimize_presentation(module: &Module) -> Module {
    let ring = module.ring.clone();
    let ctx = &ring.ctx;
    let mut twists = module.twists.clone();
    let mut rels: Vec<ModElem> = module
        .relations
        .iter()
        .map(|r| r.iter().map(|p| ring.reduce(p)).collect())
        .collect();
    'outer: loop {
        for ri in 0..rels.len() {
            for j in 0..twists.len() {
                let c = rels[ri][j].constant_term();
                if c == 0 || rels[ri][j].degree() != Some(0) {
                    continue;
                }
                let cinv = ctx.fp.inv(c);
                let pivot = rels[ri].clone();
                for r in rels.iter_mut() {
                    let q = r[j].clone();
                    if q.is_zero() {
                        continue;
                    }
                    let factor = q.scale(ctx, cinv);
                    let sub = poly_mul_elem(ctx, &pivot, &factor);
                    *r = sub_elem(ctx, r, &sub)
                        .iter()
                        .map(|p| ring.reduce(p))
                        .collect();
                }
                for r in rels.iter_mut() {
                    r.remove(j);
                }
                twists.remove(j);
                rels.remove(ri);
                continue 'outer;
            }
        }
        break;
    }
    rels.retain(|r| !is_zero_elem(r));
    Module::presented(ring, twists, rels)
}

/// Prune a generating set of a submodule of `ambient` down to a minimal
/// one (graded Nakayama: irredundant = minimal).
pub fn submodule_min_gens(
    ring: &RingHandle,
    gens: &[ModElem],
    ambient: &Module,
) -> Vec<ModElem> {
    let ctx = &ring.ctx;
    let mut cands: Vec<ModElem> = gens
        .iter()
        .filter(|g| !ambient.is_zero_elem_in_module(g))
        .cloned()
        .collect();
    // ascending degree: a homogeneous generator is redundant exactly when it
    // lies in the span of the lower-degree and same-degree ones already kept
    cands.sort_by_key(|g| elem_degree(g, &ambient.twists).unwrap_or(0));
    let mut kept: Vec<ModElem> = Vec::new();
    let mut span = ambient.full_relations();
    let mut gb = buchberger_module(ctx, span.clone(), ambient.rank());
    for g in cands {
        if crate::groebner::is_member(ctx, &g, &gb) {
            continue;
        }
        kept.push(g.clone());
        // seed the next basis with the closed one so old pairs stay cheap
        span = gb.elems.clone();
        span.push(g);
        gb = buchberger_module(ctx, span.clone(), ambient.rank());
    }
    kept
}

/// Presentation and numeric data of one homology module.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub degree: i64,
    /// Cycle representatives, one per presentation generator, in ambient
    /// coordinates.
    pub cycle_reps: Vec<ModElem>,
    /// H_i presented on the cycle generators.
    pub presentation: Module,
    /// Minimized presentation (unit relations stripped).
    pub minimized: Module,
    pub min_gens: usize,
    pub finite_length: bool,
    pub length: Option<usize>,
    pub is_zero: bool,
}

impl HomologyData {
    pub fn zero(ring: RingHandle, degree: i64) -> Self {
        HomologyData {
            degree,
            cycle_reps: Vec::new(),
            presentation: Module::free(ring.clone(), Vec::new()),
            minimized: Module::free(ring, Vec::new()),
            min_gens: 0,
            finite_length: true,
            length: Some(0),
            is_zero: true,
        }
    }

    pub fn hf_window(&self, lo: i64, hi: i64) -> Vec<usize> {
        self.minimized.monomial_quotient().hf_window(lo, hi)
    }
}

/// Exact graded presentation of H_i(F) = Z_i / B_i.
pub fn homology(cx: &ChainComplex, i: i64) -> HomologyData {
    let ring = cx.ring.clone();
    let ambient = match cx.module_at(i) {
        Some(m) if m.rank() > 0 => m,
        _ => return HomologyData::zero(ring, i),
    };
    let cycles: Vec<ModElem> = match cx.diff_at(i) {
        Some(d) => kernel_gens(&ring, d, ambient.rank(), cx.module_at(i - 1).unwrap()),
        None => (0..ambient.rank())
            .map(|j| unit_elem(ambient.rank(), j, &ring.ctx))
            .collect(),
    };
    let boundaries = image_gens(cx.diff_at(i + 1), ambient);
    // pick minimal cycle generators modulo boundaries
    let reps = prune_mod_boundaries(&ring, &cycles, &boundaries, ambient);
    if reps.is_empty() {
        return HomologyData::zero(ring, i);
    }
    // relations among the representatives modulo boundaries
    let mut all = reps.clone();
    all.extend(boundaries.clone());
    let ext = ExtendedGB::new(&ring.ctx, &all, ambient.rank());
    let relations: Vec<ModElem> = ext
        .syzygies()
        .into_iter()
        .map(|s| s[..reps.len()].to_vec())
        .filter(|v| !is_zero_elem(v))
        .collect();
    let twists: Vec<i64> = reps
        .iter()
        .map(|z| elem_degree(z, &ambient.twists).expect("homogeneous cycle"))
        .collect();
    let presentation = Module::presented(ring.clone(), twists, relations);
    let minimized = minimize_presentation(&presentation);
    let min_gens = minimized.rank();
    let quotient = minimized.monomial_quotient();
    let finite_length = quotient.finite_length();
    let length = quotient.length();
    HomologyData {
        degree: i,
        cycle_reps: reps,
        presentation,
        minimized,
        min_gens,
        finite_length,
        length,
        is_zero: min_gens == 0,
    }
}

/// Keep only cycle generators that are nonzero and irredundant modulo the
/// boundary module.
fn prune_mod_boundaries(
    ring: &RingHandle,
    cycles: &[ModElem],
    boundaries: &[ModElem],
    ambient: &Module,
) -> Vec<ModElem> {
    let ctx = &ring.ctx;
    let bgb = buchberger_module(ctx, boundaries.to_vec(), ambient.rank());
    let mut kept: Vec<ModElem> = cycles
        .iter()
        .filter(|z| !crate::groebner::is_member(ctx, z, &bgb))
        .cloned()
        .collect();
    kept.sort_by_key(|g| std::cmp::Reverse(elem_degree(g, &ambient.twists).unwrap_or(0)));
    let mut i = 0;
    while i < kept.len() {
        let mut others: Vec<ModElem> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        others.extend_from_slice(boundaries);
        let gb = buchberger_module(ctx, others, ambient.rank());
        if crate::groebner::is_member(ctx, &kept[i], &gb) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept.sort_by_key(|g| elem_degree(g, &ambient.twists).unwrap_or(0));
    kept
}

/// All homology data over the support window.
pub fn homology_all(cx: &ChainComplex) -> Vec<HomologyData> {
    cx.degrees().map(|i| homology(cx, i)).collect()
}
