//! Standard-graded quotient rings `R = S/I` of a polynomial cover `S` over a
//! prime field, with the lift-and-augment machinery that turns the cover's
//! Groebner engine into syzygy and membership routines over `R`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;
use crate::field::PrimeField;
use crate::freemod::{column_is_zero, Column};
use crate::groebner::{buchberger, syzygy_basis, GroebnerBasis, ModuleOrder};
use crate::invariants::RingProfile;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

struct RingInner {
    field: PrimeField,
    vars: Vec<String>,
    ideal: GroebnerBasis,
    std_monomials: Mutex<HashMap<i64, Arc<Vec<Monomial>>>>,
    profile: OnceLock<RingProfile>,
    cover: OnceLock<QuotientRing>,
}

/// A quotient `R = S/I` of the polynomial cover by a homogeneous ideal.
/// Cheap to clone; caches are shared between clones.
#[derive(Clone)]
pub struct QuotientRing {
    inner: Arc<RingInner>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.vars == other.inner.vars
                && self.inner.ideal.generators() == other.inner.ideal.generators())
    }
}

impl Eq for QuotientRing {}

impl std::fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl QuotientRing {
    /// The polynomial cover itself (`I = 0`).
    pub fn cover(field: PrimeField, vars: Vec<String>) -> Self {
        Self::new(field, vars, Vec::new()).expect("cover construction cannot fail")
    }

    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        ideal_gens: Vec<Polynomial>,
    ) -> Result<Self, Error> {
        let nvars = vars.len();
        for g in &ideal_gens {
            assert_eq!(g.nvars(), nvars, "ideal generator in wrong variable count");
            assert_eq!(g.field(), field, "ideal generator over wrong field");
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous("ideal generator".into()));
            }
            if let Some(0) = g.homogeneous_degree() {
                return Err(Error::Inhomogeneous("unit in defining ideal".into()));
            }
        }
        let cols: Vec<Column> = ideal_gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| vec![g])
            .collect();
        let ideal = buchberger(field, nvars, &[0], &cols, &ModuleOrder::default())?;
        Ok(QuotientRing {
            inner: Arc::new(RingInner {
                field,
                vars,
                ideal,
                std_monomials: Mutex::new(HashMap::new()),
                profile: OnceLock::new(),
                cover: OnceLock::new(),
            }),
        })
    }

    /// The polynomial cover `S` of this quotient (itself, when `I = 0`).
    pub fn cover_ring(&self) -> QuotientRing {
        if self.is_cover() {
            return self.clone();
        }
        self.inner
            .cover
            .get_or_init(|| QuotientRing::cover(self.inner.field, self.inner.vars.clone()))
            .clone()
    }

    pub fn field(&self) -> PrimeField {
        self.inner.field
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.inner.ideal
    }

    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        self.inner.ideal.generators().iter().map(|c| c[0].clone()).collect()
    }

    /// True when `I = 0`, i.e. the ring is the polynomial cover.
    pub fn is_cover(&self) -> bool {
        self.inner.ideal.is_empty()
    }

    pub fn describe(&self) -> String {
        let base = format!("F{}[{}]", self.inner.field.characteristic(), self.inner.vars.join(","));
        if self.is_cover() {
            base
        } else {
            let gens: Vec<String> = self
                .ideal_generators()
                .iter()
                .map(|g| g.render(&self.inner.vars))
                .collect();
            format!("{}/({})", base, gens.join(", "))
        }
    }

    /// Normal form of a cover polynomial modulo `I`: the canonical
    /// representative of its class in `R`.
    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        if self.is_cover() {
            return p.clone();
        }
        let mut out = self.inner.ideal.normal_form(&[p.clone()]);
        out.pop().unwrap()
    }

    pub fn nf_column(&self, v: &[Polynomial]) -> Column {
        v.iter().map(|p| self.nf(p)).collect()
    }

    pub fn zero_poly(&self) -> Polynomial {
        Polynomial::zero(self.inner.field, self.nvars())
    }

    pub fn one_poly(&self) -> Polynomial {
        Polynomial::one(self.inner.field, self.nvars())
    }

    pub fn var_poly(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.inner.field, self.nvars(), i)
    }

    /// Monomials of `S` of degree `d` that survive in `R` (not divisible by
    /// any leading term of the defining ideal). These form a k-basis of `R_d`.
    pub fn standard_monomials(&self, d: i64) -> Arc<Vec<Monomial>> {
        if let Some(hit) = self.inner.std_monomials.lock().unwrap().get(&d) {
            return Arc::clone(hit);
        }
        let leads: Vec<Monomial> = self
            .inner
            .ideal
            .leads()
            .iter()
            .map(|(_, m)| m.clone())
            .collect();
        let all = monomials_of_degree(self.nvars(), d);
        let kept: Vec<Monomial> = all
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        let arc = Arc::new(kept);
        self.inner
            .std_monomials
            .lock()
            .unwrap()
            .insert(d, Arc::clone(&arc));
        arc
    }

    /// The columns `f_t * e_j` spanning `I.F` inside a free module of the
    /// given rank: the augmentation block of every lift to the cover.
    pub fn ideal_block(&self, rank: usize) -> Vec<Column> {
        let mut out = Vec::new();
        for g in self.inner.ideal.generators() {
            for j in 0..rank {
                let mut col = vec![self.zero_poly(); rank];
                col[j] = g[0].clone();
                out.push(col);
            }
        }
        out
    }

    /// Generators of the syzygy module over `R` of homogeneous columns in a
    /// free module with the given generator degrees: lift to the cover,
    /// augment by the ideal block, compute syzygies there, project and reduce.
    pub fn quotient_syzygies(&self, ambient_degs: &[i64], gens: &[Column]) -> Vec<Column> {
        let m = gens.len();
        let mut combined: Vec<Column> = gens.to_vec();
        combined.extend(self.ideal_block(ambient_degs.len()));
        let syz = syzygy_basis(
            self.inner.field,
            self.nvars(),
            ambient_degs,
            &combined,
            &ModuleOrder::default(),
        )
        .expect("homogeneous inputs stay homogeneous under lifting");
        let mut out = Vec::new();
        for z in syz {
            let head: Column = z[..m].iter().map(|p| self.nf(p)).collect();
            if !column_is_zero(&head) {
                out.push(head);
            }
        }
        out
    }

    /// Vectors `c` with `sum c_i gens_i` in the `R`-span of `modulo`:
    /// the relations of the subquotient `(gens + modulo)/modulo`.
    pub fn syzygies_modulo(
        &self,
        ambient_degs: &[i64],
        gens: &[Column],
        modulo: &[Column],
    ) -> Vec<Column> {
        let m = gens.len();
        let mut combined: Vec<Column> = gens.to_vec();
        combined.extend(modulo.iter().cloned());
        let syz = self.quotient_syzygies(ambient_degs, &combined);
        let mut out = Vec::new();
        for z in syz {
            let head: Column = z[..m].to_vec();
            if !column_is_zero(&head) {
                out.push(head);
            }
        }
        out
    }

    /// Groebner basis over the cover of `span(gens) + I.F`, suitable for
    /// membership tests of the `R`-span of `gens`.
    pub fn membership_basis(&self, ambient_degs: &[i64], gens: &[Column]) -> GroebnerBasis {
        let mut combined: Vec<Column> = gens.to_vec();
        combined.extend(self.ideal_block(ambient_degs.len()));
        buchberger(
            self.inner.field,
            self.nvars(),
            ambient_degs,
            &combined,
            &ModuleOrder::default(),
        )
        .expect("homogeneous inputs stay homogeneous under lifting")
    }

    /// Writes `v` as an `R`-combination of `gens` if possible.
    pub fn lift_over_quotient(
        &self,
        ambient_degs: &[i64],
        gens: &[Column],
        v: &[Polynomial],
    ) -> Option<Vec<Polynomial>> {
        let gb = self.membership_basis(ambient_degs, gens);
        let full = gb.lift(v)?;
        Some(full[..gens.len()].iter().map(|p| self.nf(p)).collect())
    }

    /// Cached ring profile (depth, dimension, CM/Gorenstein flags, type,
    /// canonical module). Computed on first use; idempotent.
    pub fn profile(&self) -> &RingProfile {
        self.inner
            .profile
            .get_or_init(|| crate::invariants::compute_ring_profile(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn hyper() -> QuotientRing {
        // F7[x,y]/(xy)
        let f = f7();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        QuotientRing::new(f, vec!["x".into(), "y".into()], vec![x.mul(&y)]).unwrap()
    }

    #[test]
    fn cover_nf_is_identity() {
        let s = QuotientRing::cover(f7(), vec!["x".into(), "y".into()]);
        let x = s.var_poly(0);
        assert_eq!(s.nf(&x), x);
        assert!(s.is_cover());
    }

    #[test]
    fn hypersurface_normal_forms() {
        let r = hyper();
        let x = r.var_poly(0);
        let y = r.var_poly(1);
        assert!(r.nf(&x.mul(&y)).is_zero());
        assert_eq!(r.nf(&x.mul(&x)), x.mul(&x));
    }

    #[test]
    fn standard_monomials_count_hypersurface() {
        let r = hyper();
        // R_d has basis {x^d, y^d} for d >= 1
        assert_eq!(r.standard_monomials(0).len(), 1);
        assert_eq!(r.standard_monomials(1).len(), 2);
        assert_eq!(r.standard_monomials(5).len(), 2);
    }

    #[test]
    fn quotient_syzygy_of_x_over_hypersurface() {
        // over R = F7[x,y]/(xy), the element x of R has annihilator (y)
        let r = hyper();
        let x = r.var_poly(0);
        let syz = r.quotient_syzygies(&[0], &[vec![x]]);
        assert_eq!(syz.len(), 1);
        let y = r.var_poly(1);
        assert!(syz[0][0] == y || syz[0][0] == y.neg() || {
            // up to scalar
            let c = syz[0][0].terms().next().map(|(_, c)| c).unwrap_or(0);
            syz[0][0] == y.scale(c)
        });
    }

    #[test]
    fn quotient_syzygies_on_cover_match_plain_syzygies() {
        let s = QuotientRing::cover(f7(), vec!["x".into(), "y".into()]);
        let x = s.var_poly(0);
        let y = s.var_poly(1);
        let syz = s.quotient_syzygies(&[0], &[vec![x], vec![y]]);
        assert_eq!(syz.len(), 1);
    }

    #[test]
    fn annihilator_over_artinian_square() {
        // over R = F7[x,y]/(x^2, y^2): syzygies of (x) minimalize to {(x)}
        let f = f7();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        let r = QuotientRing::new(
            f,
            vec!["x".into(), "y".into()],
            vec![x.mul(&x), y.mul(&y)],
        )
        .unwrap();
        let syz = r.quotient_syzygies(&[0], &[vec![x.clone()]]);
        // generators of ann(x) = (x, y^2) reduce mod I to multiples of x
        assert!(!syz.is_empty());
        let gb = r.membership_basis(&[0], &[vec![x.clone()]]);
        for z in &syz {
            assert!(gb.contains(&[z[0].clone()]), "syzygy {z:?} not in (x) + I");
        }
    }

    #[test]
    fn membership_lift_over_quotient() {
        let r = hyper();
        let x = r.var_poly(0);
        let x2 = x.mul(&x);
        let lift = r
            .lift_over_quotient(&[0], &[vec![x.clone()]], &[x2.clone()])
            .expect("x^2 is a multiple of x");
        // c * x = x^2 mod (xy) with c the lift coefficient
        let recon = r.nf(&lift[0].mul(&x));
        assert_eq!(recon, r.nf(&x2));
        assert!(r.lift_over_quotient(&[0], &[vec![x]], &[r.var_poly(1)]).is_none());
    }

    #[test]
    fn unit_ideal_rejected() {
        let f = f7();
        let one = Polynomial::one(f, 1);
        assert!(QuotientRing::new(f, vec!["x".into()], vec![one]).is_err());
    }
}
