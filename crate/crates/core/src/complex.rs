//! Bounded chain complexes of graded modules and their chain maps:
//! construction with exact validation, suspension, hard truncation,
//! mapping cones, base change, and minimization.

use crate::error::EngineError;
use crate::module::{Module, RMatrix};
use crate::modvec::*;
use crate::poly::Polynomial;
use crate::ring::RingHandle;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Complex supported on [lo, lo + modules.len() - 1]; diffs[t] is the
/// differential from degree lo+t+1 to degree lo+t. Empty modules = the
/// zero complex.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ring: RingHandle,
    pub lo: i64,
    pub modules: Vec<Module>,
    pub diffs: Vec<RMatrix>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
            && self.lo == other.lo
            && self.modules.len() == other.modules.len()
            && self
                .modules
                .iter()
                .zip(&other.modules)
                .all(|(a, b)| a.twists == b.twists && a.relations == b.relations)
            && self.diffs == other.diffs
    }
}

impl ChainComplex {
    pub fn zero(ring: RingHandle) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn is_zero_complex(&self) -> bool {
        self.modules.iter().all(|m| m.rank() == 0)
    }

    pub fn module_at(&self, i: i64) -> Option<&Module> {
        if i < self.lo || i > self.hi() {
            return None;
        }
        Some(&self.modules[(i - self.lo) as usize])
    }

    pub fn rank_at(&self, i: i64) -> usize {
        self.module_at(i).map(|m| m.rank()).unwrap_or(0)
    }

    pub fn twists_at(&self, i: i64) -> Vec<i64> {
        self.module_at(i).map(|m| m.twists.clone()).unwrap_or_default()
    }

    /// Differential out of degree i (for lo < i <= hi); None elsewhere.
    pub fn diff_at(&self, i: i64) -> Option<&RMatrix> {
        if i <= self.lo || i > self.hi() {
            return None;
        }
        Some(&self.diffs[(i - self.lo - 1) as usize])
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn all_free(&self) -> bool {
        self.modules.iter().all(|m| m.is_presentation_free())
    }

    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.entries_in_max_ideal(&self.ring))
    }

    /// Validated construction: homogeneity, relation compatibility, and
    /// d-squared = 0 (in the quotient module) are all checked.
    pub fn new(
        ring: RingHandle,
        lo: i64,
        modules: Vec<Module>,
        diffs: Vec<RMatrix>,
    ) -> Result<Self, EngineError> {
        if !modules.is_empty() && diffs.len() + 1 != modules.len() {
            return Err(EngineError::RankMismatch(lo));
        }
        let cx = ChainComplex {
            ring,
            lo,
            modules,
            diffs,
        };
        cx.validate()?;
        Ok(cx)
    }

    fn validate(&self) -> Result<(), EngineError> {
        for i in self.degrees() {
            if i == self.lo {
                continue;
            }
            let d = self.diff_at(i).unwrap();
            let src = self.module_at(i).unwrap();
            let tgt = self.module_at(i - 1).unwrap();
            if d.source_rank() != src.rank() || d.target_rank != tgt.rank() {
                return Err(EngineError::RankMismatch(i));
            }
            if let Err((row, col)) = d.check_homogeneous(&src.twists, &tgt.twists) {
                return Err(EngineError::Inhomogeneous {
                    degree: i,
                    row,
                    col,
                });
            }
            // relation columns of the source must die in the target
            for r in &src.relations {
                let img = d.apply(&self.ring, r);
                if !tgt.is_zero_elem_in_module(&img) {
                    return Err(EngineError::Malformed(format!(
                        "differential at degree {} does not respect source relations",
                        i
                    )));
                }
            }
        }
        for i in self.degrees() {
            if i <= self.lo + 1 {
                continue;
            }
            let d_i = self.diff_at(i).unwrap();
            let d_im1 = self.diff_at(i - 1).unwrap();
            let tgt = self.module_at(i - 2).unwrap();
            let comp = d_im1.compose(&self.ring, d_i);
            for col in &comp.cols {
                if !tgt.is_zero_elem_in_module(col) {
                    return Err(EngineError::DSquared(i));
                }
            }
        }
        Ok(())
    }

    /// Sigma^k: shift up by k, differentials scaled by (-1)^k.
    pub fn suspend(&self, k: i64) -> ChainComplex {
        let negate = k.rem_euclid(2) == 1;
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo + k,
            modules: self.modules.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| d.scale_sign(&self.ring, negate))
                .collect(),
        }
    }

    /// Hard truncation keeping degrees >= i, with the natural projection.
    pub fn truncate_geq(&self, i: i64) -> (ChainComplex, ChainMap) {
        let cx = if i <= self.lo {
            self.clone()
        } else if i > self.hi() {
            ChainComplex {
                ring: self.ring.clone(),
                lo: i,
                modules: Vec::new(),
                diffs: Vec::new(),
            }
        } else {
            let skip = (i - self.lo) as usize;
            ChainComplex {
                ring: self.ring.clone(),
                lo: i,
                modules: self.modules[skip..].to_vec(),
                diffs: self.diffs[skip..].to_vec(),
            }
        };
        let mut components = BTreeMap::new();
        for d in cx.degrees() {
            if cx.rank_at(d) > 0 {
                components.insert(d, RMatrix::identity(&self.ring, cx.rank_at(d)));
            }
        }
        let map = ChainMap {
            source: self.clone(),
            target: cx.clone(),
            components,
        };
        (cx, map)
    }

    /// Hard truncation keeping degrees <= i.
    pub fn truncate_leq(&self, i: i64) -> ChainComplex {
        if i >= self.hi() {
            return self.clone();
        }
        if i < self.lo {
            return ChainComplex {
                ring: self.ring.clone(),
                lo: i,
                modules: Vec::new(),
                diffs: Vec::new(),
            };
        }
        let keep = (i - self.lo + 1) as usize;
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            modules: self.modules[..keep].to_vec(),
            diffs: self.diffs[..keep.saturating_sub(1)].to_vec(),
        }
    }

    /// Direct sum, degreewise.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        if self.modules.is_empty() {
            return other.clone();
        }
        if other.modules.is_empty() {
            return self.clone();
        }
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for i in lo..=hi {
            let mut twists = self.twists_at(i);
            let a_rank = twists.len();
            twists.extend(other.twists_at(i));
            let mut relations = Vec::new();
            let total = twists.len();
            if let Some(m) = self.module_at(i) {
                for r in &m.relations {
                    let mut v = r.clone();
                    v.extend(zero_elem(total - a_rank));
                    relations.push(v);
                }
            }
            if let Some(m) = other.module_at(i) {
                for r in &m.relations {
                    let mut v = zero_elem(a_rank);
                    v.extend(r.clone());
                    relations.push(v);
                }
            }
            modules.push(Module::presented(self.ring.clone(), twists, relations));
            if i > lo {
                let da = self
                    .diff_at(i)
                    .cloned()
                    .unwrap_or_else(|| RMatrix::zero(self.rank_at(i - 1), self.rank_at(i)));
                let db = other
                    .diff_at(i)
                    .cloned()
                    .unwrap_or_else(|| RMatrix::zero(other.rank_at(i - 1), other.rank_at(i)));
                diffs.push(da.direct_sum(&self.ring, &db));
            }
        }
        ChainComplex {
            ring: self.ring.clone(),
            lo,
            modules,
            diffs,
        }
    }

    /// Entrywise image of the differentials under a degree-preserving ring
    /// map given by degree-1 images of the variables.
    pub fn tensor_base_change(
        &self,
        target: RingHandle,
        images: &[Polynomial],
    ) -> Result<ChainComplex, EngineError> {
        if !self.all_free() {
            return Err(EngineError::Precondition(
                "base change requires a complex of free modules".into(),
            ));
        }
        if images.len() != self.ring.ctx.nvars {
            return Err(EngineError::Malformed(
                "variable image count mismatch".into(),
            ));
        }
        for im in images {
            if !im.is_homogeneous() || im.degree() != Some(1) {
                return Err(EngineError::Precondition(
                    "variable images must be homogeneous of degree 1".into(),
                ));
            }
        }
        let tctx = &target.ctx;
        let modules: Vec<Module> = self
            .modules
            .iter()
            .map(|m| Module::free(target.clone(), m.twists.clone()))
            .collect();
        let diffs: Vec<RMatrix> = self
            .diffs
            .iter()
            .map(|d| RMatrix {
                target_rank: d.target_rank,
                cols: d
                    .cols
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|p| target.reduce(&p.substitute(tctx, images)))
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        ChainComplex::new(target, self.lo, modules, diffs)
    }

    /// Drop zero-rank modules at both ends of the window.
    pub fn trim(&self) -> ChainComplex {
        let mut lo_idx = 0usize;
        let mut hi_idx = self.modules.len();
        while lo_idx < hi_idx && self.modules[lo_idx].rank() == 0 {
            lo_idx += 1;
        }
        while hi_idx > lo_idx && self.modules[hi_idx - 1].rank() == 0 {
            hi_idx -= 1;
        }
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo + lo_idx as i64,
            modules: self.modules[lo_idx..hi_idx].to_vec(),
            diffs: if hi_idx > lo_idx {
                self.diffs[lo_idx..hi_idx - 1].to_vec()
            } else {
                Vec::new()
            },
        }
    }

    /// Split off unit entries until the complex is minimal. Requires a
    /// complex of free modules; homotopy equivalence class is preserved.
    pub fn minimize(&self) -> ChainComplex {
        assert!(self.all_free(), "minimize requires free modules");
        let ring = self.ring.clone();
        let ctx = &ring.ctx;
        let mut twists: Vec<Vec<i64>> = self.modules.iter().map(|m| m.twists.clone()).collect();
        let mut diffs: Vec<RMatrix> = self
            .diffs
            .iter()
            .map(|d| d.reduced(&ring))
            .collect();
        'outer: loop {
            for t in 0..diffs.len() {
                let d = &diffs[t];
                let mut pivot: Option<(usize, usize, u64)> = None;
                'find: for (k, col) in d.cols.iter().enumerate() {
                    for (j, p) in col.iter().enumerate() {
                        let c = p.constant_term();
                        if c != 0 && twists[t + 1][k] == twists[t][j] {
                            pivot = Some((j, k, c));
                            break 'find;
                        }
                    }
                }
                let Some((j, k, a)) = pivot else { continue };
                let ainv = ctx.fp.inv(a);
                // clear row j by column operations; source basis change
                // f_c = e_c - q*e_k updates the next differential's rows
                let ncols = diffs[t].cols.len();
                for c in 0..ncols {
                    if c == k {
                        continue;
                    }
                    let q = diffs[t].cols[c][j].scale(ctx, ainv);
                    if q.is_zero() {
                        continue;
                    }
                    let sub = poly_mul_elem(ctx, &diffs[t].cols[k], &q);
                    diffs[t].cols[c] = sub_elem(ctx, &diffs[t].cols[c], &sub)
                        .iter()
                        .map(|p| ring.reduce(p))
                        .collect();
                    if t + 1 < diffs.len() {
                        // row_k += q * row_c on the incoming differential
                        let next = &mut diffs[t + 1];
                        for col in next.cols.iter_mut() {
                            let add = col[c].mul(ctx, &q);
                            col[k] = ring.reduce(&col[k].add(ctx, &add));
                        }
                    }
                }
                // clear column k by row operations; target basis change
                // updates the previous differential's columns
                let nrows = diffs[t].target_rank;
                for r in 0..nrows {
                    if r == j {
                        continue;
                    }
                    let q = diffs[t].cols[k][r].scale(ctx, ainv);
                    if q.is_zero() {
                        continue;
                    }
                    // row_r -= q * row_j ; row j is (0..a..0) so only col k changes
                    diffs[t].cols[k][r] = Polynomial::zero();
                    if t > 0 {
                        let prev = &mut diffs[t - 1];
                        let add = poly_mul_elem(ctx, &prev.cols[r], &q);
                        prev.cols[j] = add_elem(ctx, &prev.cols[j], &add)
                            .iter()
                            .map(|p| ring.reduce(p))
                            .collect();
                    }
                }
                // drop generator k of the source and j of the target
                twists[t + 1].remove(k);
                twists[t].remove(j);
                diffs[t].cols.remove(k);
                for col in diffs[t].cols.iter_mut() {
                    col.remove(j);
                }
                diffs[t].target_rank -= 1;
                if t + 1 < diffs.len() {
                    for col in diffs[t + 1].cols.iter_mut() {
                        col.remove(k);
                    }
                    diffs[t + 1].target_rank -= 1;
                }
                if t > 0 {
                    diffs[t - 1].cols.remove(j);
                }
                continue 'outer;
            }
            break;
        }
        let modules: Vec<Module> = twists
            .into_iter()
            .map(|tw| Module::free(ring.clone(), tw))
            .collect();
        let out = ChainComplex {
            ring,
            lo: self.lo,
            modules,
            diffs,
        };
        debug_assert!(out.validate().is_ok());
        out.trim()
    }
}

/// Mapping cone of a chain map: C_i = G_i (+) F_{i-1} with the block
/// differential [dG phi; 0 -dF].
pub fn cone(phi: &ChainMap) -> Result<ChainComplex, EngineError> {
    let f = &phi.source;
    let g = &phi.target;
    let ring = f.ring.clone();
    let lo = g.lo.min(f.lo + 1);
    let hi = g.hi().max(f.hi() + 1);
    if g.modules.is_empty() && f.modules.is_empty() {
        return Ok(ChainComplex::zero(ring));
    }
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for i in lo..=hi {
        let mut twists = g.twists_at(i);
        let g_rank = twists.len();
        twists.extend(f.twists_at(i - 1));
        let total = twists.len();
        let mut relations = Vec::new();
        if let Some(m) = g.module_at(i) {
            for r in &m.relations {
                let mut v = r.clone();
                v.extend(zero_elem(total - g_rank));
                relations.push(v);
            }
        }
        if let Some(m) = f.module_at(i - 1) {
            for r in &m.relations {
                let mut v = zero_elem(g_rank);
                v.extend(r.clone());
                relations.push(v);
            }
        }
        modules.push(Module::presented(ring.clone(), twists, relations));
        if i > lo {
            let tgt_g = g.rank_at(i - 1);
            let tgt_f = f.rank_at(i - 2);
            let src_g = g.rank_at(i);
            let src_f = f.rank_at(i - 1);
            let mut cols = Vec::new();
            let dg = g.diff_at(i);
            for k in 0..src_g {
                let mut v = match dg {
                    Some(d) => d.cols[k].clone(),
                    None => zero_elem(tgt_g),
                };
                v.extend(zero_elem(tgt_f));
                cols.push(v);
            }
            let phi_comp = phi.component(i - 1);
            let df = f.diff_at(i - 1);
            for k in 0..src_f {
                let mut v = match &phi_comp {
                    Some(m) => m.cols[k].clone(),
                    None => zero_elem(tgt_g),
                };
                let lower = match df {
                    Some(d) => d.cols[k].iter().map(|p| p.neg(&ring.ctx)).collect(),
                    None => zero_elem(tgt_f),
                };
                v.extend(lower);
                cols.push(v);
            }
            diffs.push(RMatrix {
                target_rank: tgt_g + tgt_f,
                cols,
            });
        }
    }
    ChainComplex::new(ring, lo, modules, diffs).map(|c| c.trim())
}

/// A degree-0 chain map; missing components are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub components: BTreeMap<i64, RMatrix>,
}

impl ChainMap {
    pub fn zero(source: ChainComplex, target: ChainComplex) -> Self {
        ChainMap {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn identity(cx: &ChainComplex) -> Self {
        let mut components = BTreeMap::new();
        for i in cx.degrees() {
            if cx.rank_at(i) > 0 {
                components.insert(i, RMatrix::identity(&cx.ring, cx.rank_at(i)));
            }
        }
        ChainMap {
            source: cx.clone(),
            target: cx.clone(),
            components,
        }
    }

    pub fn component(&self, i: i64) -> Option<RMatrix> {
        if let Some(m) = self.components.get(&i) {
            return Some(m.clone());
        }
        let sr = self.source.rank_at(i);
        let tr = self.target.rank_at(i);
        if sr == 0 || tr == 0 {
            return None;
        }
        Some(RMatrix::zero(tr, sr))
    }

    /// Multiplication by a ring element as a chain map F -> F.
    pub fn multiplication(cx: &ChainComplex, f: &Polynomial) -> Result<Self, EngineError> {
        let ring = cx.ring.clone();
        let g = ring.reduce(f);
        let mut components = BTreeMap::new();
        for i in cx.degrees() {
            let rank = cx.rank_at(i);
            if rank == 0 {
                continue;
            }
            let cols = (0..rank)
                .map(|j| {
                    let mut v = zero_elem(rank);
                    v[j] = g.clone();
                    v
                })
                .collect();
            components.insert(i, RMatrix { target_rank: rank, cols });
        }
        ChainMap::new(cx.clone(), cx.clone(), components)
    }

    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, RMatrix>,
    ) -> Result<Self, EngineError> {
        let map = ChainMap {
            source,
            target,
            components,
        };
        map.validate()?;
        Ok(map)
    }

    /// Common internal degree shift across all components; None when every
    /// component is zero. Errors on inhomogeneous or inconsistent entries.
    pub fn shift(&self) -> Result<Option<i64>, EngineError> {
        let mut shift: Option<i64> = None;
        for (&i, m) in &self.components {
            let stw = self.source.twists_at(i);
            let ttw = self.target.twists_at(i);
            match m.internal_degree(&stw, &ttw) {
                Ok(None) => {}
                Ok(Some(s)) => match shift {
                    None => shift = Some(s),
                    Some(t) if t == s => {}
                    Some(_) => {
                        return Err(EngineError::Inhomogeneous {
                            degree: i,
                            row: 0,
                            col: 0,
                        })
                    }
                },
                Err((row, col)) => {
                    return Err(EngineError::Inhomogeneous {
                        degree: i,
                        row,
                        col,
                    });
                }
            }
        }
        Ok(shift)
    }

    fn validate(&self) -> Result<(), EngineError> {
        self.shift()?;
        for (&i, m) in &self.components {
            let sr = self.source.rank_at(i);
            let tr = self.target.rank_at(i);
            if m.source_rank() != sr || m.target_rank != tr {
                return Err(EngineError::RankMismatch(i));
            }
            if let Some(src) = self.source.module_at(i) {
                let tgt = self.target.module_at(i).unwrap();
                for r in &src.relations {
                    let img = m.apply(&self.source.ring, r);
                    if !tgt.is_zero_elem_in_module(&img) {
                        return Err(EngineError::NotChainMap(i));
                    }
                }
            }
        }
        self.validate_commutation()
    }

    pub fn validate_commutation(&self) -> Result<(), EngineError> {
        let ring = &self.source.ring;
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        for i in lo..=hi {
            if self.source.rank_at(i) == 0 {
                continue;
            }
            let tgt_rank = self.target.rank_at(i - 1);
            let lhs = match (self.target.diff_at(i), self.component(i)) {
                (Some(d), Some(phi)) => Some(d.compose(ring, &phi)),
                _ => None,
            };
            let rhs = match (self.component(i - 1), self.source.diff_at(i)) {
                (Some(phi), Some(d)) => Some(phi.compose(ring, d)),
                _ => None,
            };
            if lhs.is_none() && rhs.is_none() {
                continue;
            }
            let sr = self.source.rank_at(i);
            let lhs = lhs.unwrap_or_else(|| RMatrix::zero(tgt_rank, sr));
            let rhs = rhs.unwrap_or_else(|| RMatrix::zero(tgt_rank, sr));
            if tgt_rank == 0 {
                continue;
            }
            let tgt = match self.target.module_at(i - 1) {
                Some(m) => m,
                None => continue,
            };
            for (a, b) in lhs.cols.iter().zip(&rhs.cols) {
                let diff = sub_elem(&ring.ctx, a, b);
                if !tgt.is_zero_elem_in_module(&diff) {
                    return Err(EngineError::NotChainMap(i));
                }
            }
        }
        Ok(())
    }

    /// Composition: apply self first, then other.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap, EngineError> {
        let mut components = BTreeMap::new();
        let ring = &self.source.ring;
        for i in self.source.degrees() {
            if let (Some(a), Some(b)) = (self.component(i), other.component(i)) {
                components.insert(i, b.compose(ring, &a));
            }
        }
        ChainMap::new(self.source.clone(), other.target.clone(), components)
    }
}
