//! Combinatorics of monomial ideals and modules: standard-monomial counts,
//! Hilbert functions, finite-length detection, Krull dimension.

use crate::monomial::Monomial;

/// All monomials of total degree d in nvars variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, idx: usize, rem: u32) {
        if idx + 1 == current.len() {
            current[idx] = rem;
            out.push(Monomial {
                exps: current.clone(),
            });
            return;
        }
        for e in 0..=rem {
            current[idx] = e;
            rec(out, current, idx + 1, rem - e);
        }
        current[idx] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial { exps: vec![] });
        }
        return out;
    }
    rec(&mut out, &mut current, 0, d);
    out
}

/// Monomials of degree d outside the monomial ideal generated by `leads`.
pub fn standard_monomials(leads: &[Monomial], nvars: usize, d: u32) -> Vec<Monomial> {
    monomials_of_degree(nvars, d)
        .into_iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .collect()
}

pub fn count_standard(leads: &[Monomial], nvars: usize, d: u32) -> usize {
    standard_monomials(leads, nvars, d).len()
}

/// A monomial ideal is m-primary iff it contains a pure power of each
/// variable. nvars = 0 quotients are automatically finite.
pub fn is_m_primary(leads: &[Monomial], nvars: usize) -> bool {
    if leads.iter().any(|l| l.is_one()) {
        return true;
    }
    (0..nvars).all(|v| {
        leads.iter().any(|l| {
            l.exps
                .iter()
                .enumerate()
                .all(|(i, &e)| if i == v { e > 0 } else { e == 0 })
        })
    })
}

/// Degree beyond which an m-primary monomial ideal contains everything:
/// sum over variables of (least pure power - 1), plus 1.
pub fn socle_degree_bound(leads: &[Monomial], nvars: usize) -> u32 {
    let mut total = 1u32;
    for v in 0..nvars {
        let least = leads
            .iter()
            .filter(|l| {
                l.exps
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| if i == v { e > 0 } else { e == 0 })
            })
            .map(|l| l.exps[v])
            .min()
            .unwrap_or(1);
        total += least - 1;
    }
    total
}

/// Krull dimension of S/J from the lead terms of a reduced basis of J.
/// None means the unit ideal (empty spectrum).
pub fn krull_dim_from_leads(leads: &[Monomial], nvars: usize) -> Option<usize> {
    if leads.iter().any(|l| l.is_one()) {
        return None;
    }
    // max size of a variable subset touching no generator's full support
    let mut best = 0usize;
    for mask in 0u32..(1 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = !leads.iter().any(|l| {
            l.exps
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || mask & (1 << i) != 0)
        });
        if independent {
            best = size;
        }
    }
    Some(best)
}

/// Graded quotient of a free module by a monomial submodule, given
/// componentwise lead ideals and twists.
pub struct MonomialQuotient {
    pub nvars: usize,
    pub twists: Vec<i64>,
    pub component_leads: Vec<Vec<Monomial>>,
}

impl MonomialQuotient {
    pub fn hf(&self, d: i64) -> usize {
        let mut total = 0;
        for (j, leads) in self.component_leads.iter().enumerate() {
            let internal = d - self.twists[j];
            if internal < 0 {
                continue;
            }
            total += count_standard(leads, self.nvars, internal as u32);
        }
        total
    }

    pub fn finite_length(&self) -> bool {
        self.component_leads
            .iter()
            .all(|leads| is_m_primary(leads, self.nvars))
    }

    /// Total k-length when finite.
    pub fn length(&self) -> Option<usize> {
        if !self.finite_length() {
            return None;
        }
        let lo = self.twists.iter().copied().min().unwrap_or(0);
        let hi = self
            .component_leads
            .iter()
            .zip(&self.twists)
            .map(|(leads, tw)| tw + socle_degree_bound(leads, self.nvars) as i64)
            .max()
            .unwrap_or(0);
        let mut total = 0;
        for d in lo..=hi {
            total += self.hf(d);
        }
        Some(total)
    }

    /// Hilbert values over an inclusive window.
    pub fn hf_window(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.hf(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial { exps: e.to_vec() }
    }

    #[test]
    fn hf_of_m_squared() {
        // S = k[x,y], leads (x^2, xy, y^2): HF = 1, 2, 0, ...
        let leads = vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])];
        let q = MonomialQuotient {
            nvars: 2,
            twists: vec![0],
            component_leads: vec![leads],
        };
        assert_eq!(q.hf_window(0, 4), vec![1, 2, 0, 0, 0]);
        assert!(q.finite_length());
        assert_eq!(q.length(), Some(3));
    }

    #[test]
    fn hf_of_free_rank_one() {
        let q = MonomialQuotient {
            nvars: 2,
            twists: vec![0],
            component_leads: vec![vec![]],
        };
        // binomial count d+1 in two variables
        assert_eq!(q.hf_window(0, 3), vec![1, 2, 3, 4]);
        assert!(!q.finite_length());
    }

    #[test]
    fn hf_of_unit_ideal() {
        let q = MonomialQuotient {
            nvars: 2,
            twists: vec![0],
            component_leads: vec![vec![m(&[0, 0])]],
        };
        assert_eq!(q.hf_window(0, 3), vec![0, 0, 0, 0]);
        assert_eq!(q.length(), Some(0));
    }

    #[test]
    fn krull_dims() {
        // (xy) in k[x,y] -> 1
        assert_eq!(krull_dim_from_leads(&[m(&[1, 1])], 2), Some(1));
        // zero ideal -> 2
        assert_eq!(krull_dim_from_leads(&[], 2), Some(2));
        // m^2 -> 0
        assert_eq!(
            krull_dim_from_leads(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])], 2),
            Some(0)
        );
        // unit ideal -> empty
        assert_eq!(krull_dim_from_leads(&[m(&[0, 0])], 2), None);
    }

    #[test]
    fn hf_agrees_with_enumeration_small_degrees() {
        let leads = vec![m(&[3, 0]), m(&[1, 2])];
        for d in 0..=6u32 {
            let direct = monomials_of_degree(2, d)
                .into_iter()
                .filter(|mm| !leads.iter().any(|l| l.divides(mm)))
                .count();
            assert_eq!(count_standard(&leads, 2, d), direct);
        }
    }
}
