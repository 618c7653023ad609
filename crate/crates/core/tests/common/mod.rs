//! Shared helpers for integration tests: a brute-force k-linear oracle for
//! homology lengths and null-homotopy over artinian rings, independent of the
//! Groebner pipeline, plus seeded random complex generation.

use std::collections::HashMap;

use homlevel::complex::{ChainComplex, ChainMap};
use homlevel::module::{Module, RMatrix};
use homlevel::monomial::{Monomial, MonomialOrder};
use homlevel::poly::Polynomial;
use homlevel::ring::{make_ring, RingHandle};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn poly(ring: &RingHandle, s: &str) -> Polynomial {
    homlevel::session::parse_poly_str(&ring.ctx, &ring.vars, s).unwrap()
}

pub fn quotient_ring(p: u64, vars: &[&str], rels: &[&str]) -> RingHandle {
    let ambient = make_ring(p, vars, MonomialOrder::Grevlex, Vec::new()).unwrap();
    let rels: Vec<Polynomial> = rels.iter().map(|s| poly(&ambient, s)).collect();
    make_ring(p, vars, MonomialOrder::Grevlex, rels).unwrap()
}

/// Artinian test rings of k-length at most 6.
pub fn artinian_zoo() -> Vec<RingHandle> {
    vec![
        quotient_ring(101, &["x"], &["x^2"]),
        quotient_ring(101, &["x"], &["x^3"]),
        quotient_ring(101, &["x"], &["x^5"]),
        quotient_ring(101, &["x", "y"], &["x^2", "x*y", "y^2"]),
        quotient_ring(101, &["x", "y"], &["x^2", "y^2"]),
        quotient_ring(101, &["x", "y"], &["x^2", "y^3", "x*y"]),
        quotient_ring(7, &["x", "y"], &["x^2 + y^2", "x*y"]),
    ]
}

// ---------------------------------------------------------------------------
// Dense linear algebra over GF(p), written from scratch so the oracle shares
// nothing with the engine's solver.
// ---------------------------------------------------------------------------

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row-reduce in place; returns the rank.
#[allow(clippy::needless_range_loop)]
pub fn row_reduce(p: u64, rows: &mut [Vec<u64>]) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col] % p, p);
        for v in rows[rank].iter_mut() {
            *v = *v % p * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_multiple_of(p) {
                let f = rows[r][col] % p;
                for c in 0..ncols {
                    let sub = f * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] + p * p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn rank_of_columns(p: u64, cols: &[Vec<u64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let nrows = cols[0].len();
    let mut rows: Vec<Vec<u64>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c[r] % p).collect())
        .collect();
    row_reduce(p, &mut rows)
}

/// Does A x = b have a solution?  Column-major A.
fn solvable(p: u64, cols: &[Vec<u64>], b: &[u64]) -> bool {
    let ra = rank_of_columns(p, cols);
    let mut aug: Vec<Vec<u64>> = cols.to_vec();
    aug.push(b.to_vec());
    rank_of_columns(p, &aug) == ra
}

// ---------------------------------------------------------------------------
// k-linear expansion of free modules over an artinian ring
// ---------------------------------------------------------------------------

pub struct KExpansion {
    pub ring: RingHandle,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl KExpansion {
    pub fn new(ring: &RingHandle) -> Self {
        assert!(ring.artinian, "oracle requires an artinian ring");
        let mut basis = Vec::new();
        let mut d = 0u32;
        loop {
            let layer = ring.std_basis(d);
            if layer.is_empty() {
                break;
            }
            basis.extend(layer);
            d += 1;
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        KExpansion {
            ring: ring.clone(),
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn expand(&self, f: &Polynomial) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        let red = self.ring.reduce(f);
        for (m, c) in &red.terms {
            out[self.index[m]] = *c;
        }
        out
    }

    /// Coordinates of `f * m * e_j` inside a free module of the given rank.
    fn expand_in_free(&self, f: &Polynomial, m: &Monomial, j: usize, rank: usize) -> Vec<u64> {
        let prod = f.mul_term(&self.ring.ctx, m, 1);
        let block = self.expand(&prod);
        let mut out = vec![0u64; rank * self.dim()];
        out[j * self.dim()..(j + 1) * self.dim()].copy_from_slice(&block);
        out
    }

    /// The differential as a k-linear map, column-major.  Source basis is
    /// ordered (generator, ring basis monomial).
    pub fn expand_matrix(&self, mat: &RMatrix, src_rank: usize) -> Vec<Vec<u64>> {
        let l = self.dim();
        let tgt_rank = mat.target_rank;
        let mut cols = Vec::with_capacity(src_rank * l);
        for k in 0..src_rank {
            for m in &self.basis {
                let mut col = vec![0u64; tgt_rank * l];
                for j in 0..tgt_rank {
                    let piece = self.expand_in_free(mat.entry(j, k), m, j, tgt_rank);
                    for (t, v) in piece.iter().enumerate() {
                        col[t] = (col[t] + v) % self.ring.ctx.fp.p;
                    }
                }
                cols.push(col);
            }
        }
        cols
    }
}

/// Homology k-lengths of a free bounded complex by plain rank computations:
/// len H_i = dim F_i - rank d_i - rank d_{i+1}.
pub fn oracle_homology_lengths(cx: &ChainComplex) -> Vec<(i64, usize)> {
    let exp = KExpansion::new(&cx.ring);
    let p = cx.ring.ctx.fp.p;
    let l = exp.dim();
    let mut ranks: HashMap<i64, usize> = HashMap::new();
    for i in cx.degrees() {
        if let Some(d) = cx.diff_at(i) {
            let cols = exp.expand_matrix(d, cx.rank_at(i));
            ranks.insert(i, rank_of_columns(p, &cols));
        }
    }
    cx.degrees()
        .map(|i| {
            let dim = cx.rank_at(i) * l;
            let out = ranks.get(&i).copied().unwrap_or(0);
            let inc = ranks.get(&(i + 1)).copied().unwrap_or(0);
            (i, dim - out - inc)
        })
        .collect()
}

/// Brute-force null-homotopy decision for an endo-map of a free complex.
/// Unknowns are the images h_i(e_k) in F_{i+1}, expanded over the ring's
/// k-basis; the system d h + h d = phi is linear in those coordinates.
pub fn oracle_null_homotopic(phi: &ChainMap) -> bool {
    let f = &phi.source;
    let g = &phi.target;
    let exp = KExpansion::new(&f.ring);
    let p = f.ring.ctx.fp.p;
    let l = exp.dim();

    // unknown block offsets: h_i : F_i -> G_{i+1}
    let mut offsets: HashMap<i64, usize> = HashMap::new();
    let mut total = 0usize;
    for i in f.degrees() {
        if f.rank_at(i) > 0 && g.rank_at(i + 1) > 0 {
            offsets.insert(i, total);
            total += f.rank_at(i) * g.rank_at(i + 1) * l;
        }
    }

    // equation row offsets: one vector in G_i per generator of F_i
    let mut row_offsets: HashMap<i64, usize> = HashMap::new();
    let mut nrows = 0usize;
    for i in f.degrees() {
        if f.rank_at(i) > 0 && g.rank_at(i) > 0 {
            row_offsets.insert(i, nrows);
            nrows += f.rank_at(i) * g.rank_at(i) * l;
        }
    }

    let mut cols: Vec<Vec<u64>> = vec![vec![0u64; nrows]; total];
    let add = |col: &mut Vec<u64>, base: usize, piece: &[u64]| {
        for (t, v) in piece.iter().enumerate() {
            col[base + t] = (col[base + t] + v) % p;
        }
    };

    for (&i, &off) in &offsets {
        let gdim = g.rank_at(i + 1) * l;
        for k in 0..f.rank_at(i) {
            for (j2, m) in (0..g.rank_at(i + 1)).flat_map(|j| exp.basis.iter().map(move |m| (j, m)))
            {
                let unk = off + k * gdim + j2 * l + exp.index[m];
                // d_{i+1} h_i term, lands in equation (i, k)
                if let (Some(d), Some(&rb)) = (g.diff_at(i + 1), row_offsets.get(&i)) {
                    for j in 0..g.rank_at(i) {
                        let piece = exp.expand_in_free(d.entry(j, j2), m, j, g.rank_at(i));
                        add(&mut cols[unk], rb + k * g.rank_at(i) * l, &piece);
                    }
                }
                // h_i d_{i+1} term, lands in equations (i+1, k')
                if let (Some(d), Some(&rb)) = (f.diff_at(i + 1), row_offsets.get(&(i + 1))) {
                    for kp in 0..f.rank_at(i + 1) {
                        let a = d.entry(k, kp);
                        let piece = exp.expand_in_free(a, m, j2, g.rank_at(i + 1));
                        add(&mut cols[unk], rb + kp * g.rank_at(i + 1) * l, &piece);
                    }
                }
            }
        }
    }

    let one = Monomial {
        exps: vec![0; f.ring.ctx.nvars],
    };
    let mut rhs = vec![0u64; nrows];
    for (&i, &rb) in &row_offsets {
        let comp = phi
            .component(i)
            .unwrap_or_else(|| RMatrix::zero(g.rank_at(i), f.rank_at(i)));
        for k in 0..f.rank_at(i) {
            for j in 0..g.rank_at(i) {
                let piece = exp.expand_in_free(comp.entry(j, k), &one, j, g.rank_at(i));
                for (t, v) in piece.iter().enumerate() {
                    let idx = rb + k * g.rank_at(i) * l + t;
                    rhs[idx] = (rhs[idx] + v) % p;
                }
            }
        }
    }

    solvable(p, &cols, &rhs)
}

// ---------------------------------------------------------------------------
// seeded random complexes
// ---------------------------------------------------------------------------

fn random_homog(ring: &RingHandle, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = ring.ctx.fp.p;
    let mut acc = Polynomial::zero();
    for m in ring.std_basis(d) {
        let c = rng.gen_range(0..p);
        if c != 0 {
            acc = acc.add(&ring.ctx, &Polynomial::monomial(m, c));
        }
    }
    acc
}

fn elem_degree(ring: &RingHandle, v: &[Polynomial], twists: &[i64]) -> Option<i64> {
    let _ = ring;
    v.iter()
        .zip(twists)
        .filter(|(f, _)| !f.is_zero())
        .map(|(f, tw)| f.degree().unwrap() as i64 + tw)
        .next()
}

/// A random bounded free complex with ranks at most 3: a random homogeneous
/// d_1 followed by columns drawn from its kernel, so d^2 = 0 holds by
/// construction.
pub fn random_complex(ring: &RingHandle, rng: &mut ChaCha8Rng) -> ChainComplex {
    loop {
        let rank0 = rng.gen_range(1..=3usize);
        let rank1 = rng.gen_range(1..=3usize);
        let tw0: Vec<i64> = (0..rank0).map(|_| rng.gen_range(0..2i64)).collect();
        let mut tw1 = Vec::new();
        let mut cols = Vec::new();
        for _ in 0..rank1 {
            let tw = rng.gen_range(1..=2i64) + tw0.iter().min().unwrap();
            let col: Vec<Polynomial> = tw0
                .iter()
                .map(|t| {
                    if tw - t <= 0 {
                        Polynomial::zero()
                    } else {
                        random_homog(ring, (tw - t) as u32, rng)
                    }
                })
                .collect();
            tw1.push(tw);
            cols.push(col);
        }
        let d1 = RMatrix {
            target_rank: rank0,
            cols,
        };
        let src = Module::free(ring.clone(), tw1.clone());
        let tgt = Module::free(ring.clone(), tw0.clone());
        let kernel = homlevel::homology::kernel_gens(ring, &d1, src.rank(), &tgt);
        let take = rng.gen_range(0..=kernel.len().min(3));
        let mut tw2 = Vec::new();
        let mut cols2 = Vec::new();
        for v in kernel.into_iter().take(take) {
            let Some(d) = elem_degree(ring, &v, &tw1) else {
                continue;
            };
            tw2.push(d);
            cols2.push(v);
        }
        let mut modules = vec![
            Module::free(ring.clone(), tw0),
            Module::free(ring.clone(), tw1),
        ];
        let mut diffs = vec![d1];
        if !cols2.is_empty() {
            modules.push(Module::free(ring.clone(), tw2));
            diffs.push(RMatrix {
                target_rank: rank1,
                cols: cols2,
            });
        }
        if let Ok(cx) = ChainComplex::new(ring.clone(), 0, modules, diffs) {
            return cx;
        }
    }
}
