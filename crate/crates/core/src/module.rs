//! Graded modules presented over R = S/J: a twist per generator plus
//! relation columns over S. A free module is the no-relations case; the
//! columns J*e_j are always adjoined implicitly.

use crate::groebner::{buchberger_module, nf, GroebnerBasis};
use crate::hilbert::MonomialQuotient;
use crate::modvec::*;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingHandle;
use std::sync::{Arc, OnceLock};

#[derive(Clone, Debug)]
pub struct Module {
    pub ring: RingHandle,
    pub twists: Vec<i64>,
    /// Relation columns over S, beyond the implicit J*e_j.
    pub relations: Vec<ModElem>,
    rel_gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Module {
    pub fn free(ring: RingHandle, twists: Vec<i64>) -> Self {
        Module {
            ring,
            twists,
            relations: Vec::new(),
            rel_gb: OnceLock::new(),
        }
    }

    pub fn presented(ring: RingHandle, twists: Vec<i64>, relations: Vec<ModElem>) -> Self {
        Module {
            ring,
            twists,
            relations,
            rel_gb: OnceLock::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_presentation_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// All relation columns, including J*e_j for every generator.
    pub fn full_relations(&self) -> Vec<ModElem> {
        let mut out = self.relations.clone();
        let rank = self.rank();
        for j in 0..rank {
            for g in self.ring.j_gens() {
                let mut v = zero_elem(rank);
                v[j] = g;
                out.push(v);
            }
        }
        out
    }

    pub fn rel_gb(&self) -> Arc<GroebnerBasis> {
        self.rel_gb
            .get_or_init(|| {
                Arc::new(buchberger_module(
                    &self.ring.ctx,
                    self.full_relations(),
                    self.rank(),
                ))
            })
            .clone()
    }

    /// Normal form of a vector modulo the relation module.
    pub fn nf(&self, v: &ModElem) -> ModElem {
        nf(&self.ring.ctx, v, &self.rel_gb())
    }

    pub fn is_zero_elem_in_module(&self, v: &ModElem) -> bool {
        is_zero_elem(&self.nf(v))
    }

    /// k-basis of the graded piece in degree d: standard module monomials.
    pub fn std_basis(&self, d: i64) -> Vec<(usize, Monomial)> {
        let leads = self.rel_gb().lead_by_component();
        let mut out = Vec::new();
        for (j, tw) in self.twists.iter().enumerate() {
            let internal = d - tw;
            if internal < 0 {
                continue;
            }
            for m in crate::hilbert::standard_monomials(&leads[j], self.ring.ctx.nvars, internal as u32)
            {
                out.push((j, m));
            }
        }
        out
    }

    pub fn monomial_quotient(&self) -> MonomialQuotient {
        MonomialQuotient {
            nvars: self.ring.ctx.nvars,
            twists: self.twists.clone(),
            component_leads: self.rel_gb().lead_by_component(),
        }
    }

    pub fn elem_is_homogeneous(&self, v: &ModElem) -> bool {
        elem_is_homogeneous(v, &self.twists)
    }
}

/// A homogeneous matrix between modules, stored as columns; column k of a
/// map F -> G lists the image of the k-th generator of F in G-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub target_rank: usize,
    pub cols: Vec<ModElem>,
}

impl RMatrix {
    pub fn zero(target_rank: usize, source_rank: usize) -> Self {
        RMatrix {
            target_rank,
            cols: vec![zero_elem(target_rank); source_rank],
        }
    }

    pub fn identity(ring: &RingHandle, rank: usize) -> Self {
        RMatrix {
            target_rank: rank,
            cols: (0..rank).map(|j| unit_elem(rank, j, &ring.ctx)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>, source_rank: usize) -> Self {
        let target_rank = rows.len();
        let mut cols = vec![zero_elem(target_rank); source_rank];
        for (r, row) in rows.into_iter().enumerate() {
            for (c, p) in row.into_iter().enumerate() {
                cols[c][r] = p;
            }
        }
        RMatrix { target_rank, cols }
    }

    pub fn source_rank(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.cols[col][row]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(is_zero_elem)
    }

    pub fn apply(&self, ring: &RingHandle, v: &ModElem) -> ModElem {
        let ctx = &ring.ctx;
        let mut out = zero_elem(self.target_rank);
        for (k, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let contrib = poly_mul_elem(ctx, &self.cols[k], coeff);
            out = add_elem(ctx, &out, &contrib);
        }
        out
    }

    /// Matrix product self * other (apply other first).
    pub fn compose(&self, ring: &RingHandle, other: &RMatrix) -> RMatrix {
        RMatrix {
            target_rank: self.target_rank,
            cols: other.cols.iter().map(|c| self.apply(ring, c)).collect(),
        }
    }

    pub fn scale_sign(&self, ring: &RingHandle, negate: bool) -> RMatrix {
        if !negate {
            return self.clone();
        }
        let ctx = &ring.ctx;
        RMatrix {
            target_rank: self.target_rank,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|p| p.neg(ctx)).collect())
                .collect(),
        }
    }

    pub fn reduced(&self, ring: &RingHandle) -> RMatrix {
        RMatrix {
            target_rank: self.target_rank,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|p| ring.reduce(p)).collect())
                .collect(),
        }
    }

    /// Every entry homogeneous of degree src_twist - tgt_twist (or zero).
    pub fn check_homogeneous(&self, src_twists: &[i64], tgt_twists: &[i64]) -> Result<(), (usize, usize)> {
        match self.internal_degree(src_twists, tgt_twists) {
            Ok(None) | Ok(Some(0)) => Ok(()),
            Ok(Some(_)) => Err((0, 0)),
            Err(e) => Err(e),
        }
    }

    /// Common internal degree shift s with every nonzero entry homogeneous
    /// of degree src_twist - tgt_twist + s; None for the zero matrix.
    pub fn internal_degree(
        &self,
        src_twists: &[i64],
        tgt_twists: &[i64],
    ) -> Result<Option<i64>, (usize, usize)> {
        let mut shift: Option<i64> = None;
        for (k, col) in self.cols.iter().enumerate() {
            for (j, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    return Err((j, k));
                }
                let s = p.degree().unwrap() as i64 - (src_twists[k] - tgt_twists[j]);
                match shift {
                    None => shift = Some(s),
                    Some(t) if t == s => {}
                    Some(_) => return Err((j, k)),
                }
            }
        }
        Ok(shift)
    }

    /// Entries all in the irrelevant ideal (no unit entries).
    pub fn entries_in_max_ideal(&self, ring: &RingHandle) -> bool {
        self.cols.iter().all(|c| {
            c.iter()
                .all(|p| ring.reduce(p).constant_term() == 0)
        })
    }

    /// Block-diagonal stack: [self 0; 0 other].
    pub fn direct_sum(&self, ring: &RingHandle, other: &RMatrix) -> RMatrix {
        let _ = ring;
        let tr = self.target_rank + other.target_rank;
        let mut cols = Vec::new();
        for c in &self.cols {
            let mut v = c.clone();
            v.extend(zero_elem(other.target_rank));
            cols.push(v);
        }
        for c in &other.cols {
            let mut v = zero_elem(self.target_rank);
            v.extend(c.clone());
            cols.push(v);
        }
        RMatrix {
            target_rank: tr,
            cols,
        }
    }
}
