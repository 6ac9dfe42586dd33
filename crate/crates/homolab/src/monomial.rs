//! Monomials in a fixed set of variables and the monomial orders used by
//! the Groebner engine.

use std::cmp::Ordering;

/// Exponent vector of a monomial. The variable count is fixed by context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The i-th variable as a monomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
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
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

/// Monomial orders on a polynomial ring. Both are total, multiplicative,
/// and well-orders on monomials of bounded degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default).
    #[default]
    Grevlex,
    /// Pure lexicographic.
    Lex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(
            a.nvars(),
            b.nvars(),
            "monomial comparison across different variable counts"
        );
        match self {
            MonomialOrder::Grevlex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // same degree: the last nonzero entry of a - b decides,
                // negative meaning a is larger
                for i in (0..a.nvars()).rev() {
                    let (ea, eb) = (a.exps[i], b.exps[i]);
                    if ea != eb {
                        return if ea < eb { Ordering::Greater } else { Ordering::Less };
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..a.nvars() {
                    let (ea, eb) = (a.exps[i], b.exps[i]);
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Enumerates all monomials of total degree `d` in `nvars` variables,
/// in a deterministic (lex-descending) order.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d as u32, nvars);
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, var: usize, rem: u32, nvars: usize) {
    if var + 1 == nvars {
        cur[var] = rem;
        out.push(Monomial::new(cur.clone()));
        cur[var] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        cur[var] = e;
        fill(out, cur, var + 1, rem - e, nvars);
    }
    cur[var] = 0;
}
