//! Multivariate polynomials over a prime field, kept in canonical form
//! (no zero coefficients, unique term map).

use std::collections::BTreeMap;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        let c = c % field.characteristic();
        if c != 0 {
            terms.insert(Monomial::one(nvars), c);
        }
        Polynomial { field, nvars, terms }
    }

    pub fn variable(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), 1)
    }

    pub fn term(field: PrimeField, m: Monomial, c: u64) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        let c = c % field.characteristic();
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial { field, nvars, terms }
    }

    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        it: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in it {
            p.add_term(&m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Some(d) if nonzero and every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Zero counts as homogeneous of any degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term(&mut self, m: &Monomial, c: u64) {
        if c % self.field.characteristic() == 0 {
            return;
        }
        let f = self.field;
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing = f.add(*existing, c % f.characteristic());
                if *existing == 0 {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c % f.characteristic());
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different variable sets");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.field;
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u64) -> Polynomial {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, &a)| (mm.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in other.terms() {
            for (mm, a) in self.terms() {
                out.add_term(&mm.mul(m), self.field.mul(a, c));
            }
        }
        out
    }

    /// Leading term under `ord` (largest monomial), or None if zero.
    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.compare(a, b))
            .map(|(m, &c)| (m, c))
    }

    /// Renders with the given variable names, terms in grevlex-descending order.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ms: Vec<_> = self.terms.keys().collect();
        ms.sort_by(|a, b| MonomialOrder::Grevlex.compare(b, a));
        let mut out = String::new();
        for (k, m) in ms.iter().enumerate() {
            let c = self.terms[*m];
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.render(&vars))
    }
}
