//! Minimal graded free resolutions of presented modules and of bounded
//! free complexes, syzygy complexes, freeness, and projective-dimension
//! probing.

use crate::complex::ChainComplex;
use crate::error::EngineError;
use crate::homology::{kernel_gens, minimize_presentation, submodule_min_gens};
use crate::module::{Module, RMatrix};
use crate::modvec::*;
use crate::ring::RingHandle;

/// Minimal free resolution data up to a step bound; `diffs[t]` maps step
/// t+1 to step t and presents the t-th syzygy module.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: RingHandle,
    pub twists: Vec<Vec<i64>>,
    pub diffs: Vec<RMatrix>,
    pub betti: Vec<usize>,
    pub complete: bool,
}

impl Resolution {
    pub fn complex(&self) -> Result<ChainComplex, EngineError> {
        let modules: Vec<Module> = self
            .twists
            .iter()
            .map(|tw| Module::free(self.ring.clone(), tw.clone()))
            .collect();
        ChainComplex::new(self.ring.clone(), 0, modules, self.diffs.clone())
    }

    /// Projective dimension when the resolution terminated; the zero
    /// module reports -1.
    pub fn pd_if_complete(&self) -> Option<i64> {
        if self.complete {
            Some(self.betti.len() as i64 - 1)
        } else {
            None
        }
    }
}

/// Minimal free resolution of a presented module to `steps` differential
/// steps; each step resolves the previous kernel on minimal generators.
pub fn resolve_module(m: &Module, steps: usize) -> Resolution {
    resolve_module_impl(m, steps, true)
}

/// Like `resolve_module`, but skips the kernel computation after the last
/// differential, leaving `complete` pessimistic.  Useful when only the
/// differentials up to `steps` are needed.
pub fn resolve_module_partial(m: &Module, steps: usize) -> Resolution {
    resolve_module_impl(m, steps, false)
}

fn resolve_module_impl(m: &Module, steps: usize, check_last: bool) -> Resolution {
    let ring = m.ring.clone();
    let min = minimize_presentation(m);
    if min.rank() == 0 {
        return Resolution {
            ring,
            twists: Vec::new(),
            diffs: Vec::new(),
            betti: Vec::new(),
            complete: true,
        };
    }
    let mut twists = vec![min.twists.clone()];
    let mut betti = vec![min.rank()];
    let mut diffs: Vec<RMatrix> = Vec::new();
    let mut ambient = Module::free(ring.clone(), min.twists.clone());
    let mut ker = submodule_min_gens(&ring, &min.relations, &ambient);
    let mut complete = ker.is_empty();
    while diffs.len() < steps && !ker.is_empty() {
        let new_twists: Vec<i64> = ker
            .iter()
            .map(|g| elem_degree(g, &ambient.twists).expect("homogeneous syzygy"))
            .collect();
        let d = RMatrix {
            target_rank: ambient.rank(),
            cols: ker
                .iter()
                .map(|g| g.iter().map(|p| ring.reduce(p)).collect())
                .collect(),
        };
        let next = Module::free(ring.clone(), new_twists.clone());
        diffs.push(d);
        betti.push(new_twists.len());
        twists.push(new_twists);
        if diffs.len() == steps && !check_last {
            complete = false;
            break;
        }
        let kg = kernel_gens(&ring, diffs.last().unwrap(), next.rank(), &ambient);
        ker = if diffs.len() < steps {
            submodule_min_gens(&ring, &kg, &next)
        } else {
            // only emptiness matters at the boundary
            kg.into_iter()
                .filter(|g| !next.is_zero_elem_in_module(g))
                .collect()
        };
        ambient = next;
        complete = ker.is_empty();
    }
    Resolution {
        ring,
        twists,
        diffs,
        betti,
        complete,
    }
}

/// A bounded complex of free modules is its own projective resolution;
/// the canonical minimal choice is its minimization.
pub fn resolution_of_complex(f: &ChainComplex) -> Result<ChainComplex, EngineError> {
    if !f.all_free() {
        return Err(EngineError::Precondition(
            "resolution input must be a complex of free modules".into(),
        ));
    }
    Ok(f.minimize())
}

/// The n-th syzygy complex: the desuspended hard truncation of the
/// minimal resolution, together with a presentation of its H0.
#[derive(Clone, Debug)]
pub struct SyzygyComplex {
    pub n: i64,
    pub complex: ChainComplex,
    pub h0: Module,
}

pub fn syzygy(f: &ChainComplex, n: i64) -> Result<SyzygyComplex, EngineError> {
    let p = resolution_of_complex(f)?;
    let (t, _) = p.truncate_geq(n);
    let complex = t.suspend(-n);
    let ring = f.ring.clone();
    let h0 = if complex.rank_at(0) == 0 {
        Module::free(ring, Vec::new())
    } else {
        let rels = complex
            .diff_at(1)
            .map(|d| d.cols.clone())
            .unwrap_or_default();
        Module::presented(ring, complex.twists_at(0), rels)
    };
    Ok(SyzygyComplex { n, complex, h0 })
}

/// Freeness of a presented module: after minimizing the presentation, no
/// relation survives modulo the defining ideal.
pub fn is_free(m: &Module) -> bool {
    let min = minimize_presentation(m);
    let free = Module::free(m.ring.clone(), min.twists.clone());
    min.relations.iter().all(|r| free.is_zero_elem_in_module(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdResult {
    Exact(i64),
    AtLeast(i64),
}

/// Exact projective dimension when a zero syzygy occurs within `bound`
/// steps; otherwise a certified lower bound of bound + 1.
pub fn pd_probe(m: &Module, bound: usize) -> (PdResult, Resolution) {
    let res = resolve_module(m, bound);
    let verdict = match res.pd_if_complete() {
        Some(d) => PdResult::Exact(d),
        None => PdResult::AtLeast(bound as i64 + 1),
    };
    (verdict, res)
}
