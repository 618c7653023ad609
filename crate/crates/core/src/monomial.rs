//! Monomials under the standard grading, with grevlex and lex orders.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// Exponent vector; degree is the exponent sum (standard grading).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn cmp_order(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Lex => {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => {
                match self.degree().cmp(&other.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // equal degree: last nonzero entry of the difference negative => greater
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial { exps: e.to_vec() }
    }

    #[test]
    fn grevlex_refines_degree() {
        // x^2 > xy > y^2 in grevlex with x before y
        let x2 = m(&[2, 0]);
        let xy = m(&[1, 1]);
        let y2 = m(&[0, 2]);
        assert_eq!(x2.cmp_order(&xy, MonomialOrder::Grevlex), Ordering::Greater);
        assert_eq!(xy.cmp_order(&y2, MonomialOrder::Grevlex), Ordering::Greater);
        let y3 = m(&[0, 3]);
        assert_eq!(y3.cmp_order(&x2, MonomialOrder::Grevlex), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        let x = m(&[1, 0]);
        let y5 = m(&[0, 5]);
        assert_eq!(x.cmp_order(&y5, MonomialOrder::Lex), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let xy = m(&[1, 1]);
        let x2y = m(&[2, 1]);
        assert!(xy.divides(&x2y));
        assert!(!x2y.divides(&xy));
        assert_eq!(xy.quotient(&x2y), m(&[1, 0]));
        assert_eq!(m(&[2, 0]).lcm(&m(&[0, 2])), m(&[2, 2]));
    }
}
