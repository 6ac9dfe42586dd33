//! Numerical and finiteness invariants: Hilbert series, dimension and depth,
//! grade, projective/injective dimension (decidable here), Gorenstein
//! dimension and its injective counterpart as certified three-valued
//! verdicts, canonical and deficiency modules, type and minimal generators.

use serde::Serialize;

use crate::error::Error;
use crate::module::{hom_module, GradedModule, ModuleMap};
use crate::resolution::{
    dual_module, ext_modules, minimal_free_resolution, resolution_over_cover, syzygy_module,
};
use crate::ring::QuotientRing;

/// Certified three-valued answer for a homological dimension. `Finite`
/// carries the exact value; `Unknown` is produced only by the Gorenstein
/// dimensions, whose definitions quantify over unbounded Ext vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite(usize),
    Infinite,
    Unknown(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessVerdict {
    pub finiteness: Finiteness,
    /// Short code naming the rule that decided the verdict.
    pub certificate: String,
}

impl FinitenessVerdict {
    pub fn finite(v: usize, cert: &str) -> Self {
        FinitenessVerdict { finiteness: Finiteness::Finite(v), certificate: cert.into() }
    }

    pub fn infinite(cert: &str) -> Self {
        FinitenessVerdict { finiteness: Finiteness::Infinite, certificate: cert.into() }
    }

    pub fn unknown(bound: usize, cert: &str) -> Self {
        FinitenessVerdict { finiteness: Finiteness::Unknown(bound), certificate: cert.into() }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.finiteness, Finiteness::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.finiteness, Finiteness::Infinite)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.finiteness, Finiteness::Unknown(_))
    }

    pub fn value(&self) -> Option<usize> {
        match self.finiteness {
            Finiteness::Finite(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    certificate: &'a str,
}

impl FinitenessVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let (status, value, bound) = match self.finiteness {
            Finiteness::Finite(v) => ("finite", Some(v), None),
            Finiteness::Infinite => ("infinite", None, None),
            Finiteness::Unknown(b) => ("unknown", None, Some(b)),
        };
        serde_json::to_value(VerdictJson { status, value, bound, certificate: &self.certificate })
            .unwrap()
    }
}

/// Cached numerical profile of a ring.
#[derive(Clone, Debug)]
pub struct RingProfile {
    pub depth: usize,
    pub dim: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
    pub type_: usize,
    pub omega: Option<GradedModule>,
}

/// Hilbert series as `numerator / (1-t)^nvars`, the numerator computed from
/// the finite resolution over the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub nvars: usize,
    /// coefficient list indexed from `offset`
    pub offset: i64,
    pub numerator: Vec<i64>,
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    pub fn coefficient(&self, j: i64) -> i64 {
        if j < self.offset {
            return 0;
        }
        self.numerator.get((j - self.offset) as usize).copied().unwrap_or(0)
    }

    /// Order of vanishing of the numerator at `t = 1`.
    pub fn vanishing_order_at_one(&self) -> usize {
        let mut coeffs = self.numerator.clone();
        let mut order = 0;
        while !coeffs.iter().all(|&c| c == 0) && coeffs.iter().sum::<i64>() == 0 {
            // divide by (1 - t): q_k = sum_{i <= k} c_i
            let mut acc = 0i64;
            let mut q = Vec::with_capacity(coeffs.len());
            for &c in &coeffs {
                acc += c;
                q.push(acc);
            }
            q.pop();
            coeffs = q;
            order += 1;
        }
        order
    }

    /// Expands the series: the dimension of the degree-`d` piece.
    pub fn value_at(&self, d: i64) -> i64 {
        // 1/(1-t)^n has coefficients C(e+n-1, n-1)
        let n = self.nvars as i64;
        let mut out = 0i64;
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = d - (self.offset + k as i64);
            if e < 0 {
                continue;
            }
            out += c * binomial(e + n - 1, n - 1);
        }
        out
    }

    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = self.offset + k as i64;
            terms.push(match j {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{j}"),
            });
        }
        if terms.is_empty() {
            return "0".into();
        }
        format!("({}) / (1-t)^{}", terms.join(" + "), self.nvars)
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1i64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Hilbert series of a module from its Betti numbers over the cover.
pub fn hilbert_series(m: &GradedModule) -> HilbertSeries {
    let nvars = m.ring().nvars();
    let res = resolution_over_cover(m);
    let betti = res.betti();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (_, j, _) in betti.entries() {
        lo = lo.min(j);
        hi = hi.max(j);
    }
    if lo > hi {
        return HilbertSeries { nvars, offset: 0, numerator: vec![] };
    }
    let mut numerator = vec![0i64; (hi - lo + 1) as usize];
    for (i, j, n) in betti.entries() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        numerator[(j - lo) as usize] += sign * n as i64;
    }
    HilbertSeries { nvars, offset: lo, numerator }
}

/// Krull dimension and depth of a nonzero module, both computed through the
/// cover: depth by the length of the finite free resolution, dimension by
/// the pole order of the Hilbert series.
pub fn dim_depth(m: &GradedModule) -> Result<(usize, usize), Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("dim/depth"));
    }
    let n = m.ring().nvars();
    let res = resolution_over_cover(m);
    let pd_s = res.length();
    let depth = n - pd_s;
    let series = hilbert_series(m);
    let dim = n - series.vanishing_order_at_one();
    debug_assert!(depth <= dim, "depth exceeds dimension");
    Ok((dim, depth))
}

pub fn depth(m: &GradedModule) -> Result<usize, Error> {
    dim_depth(m).map(|(_, t)| t)
}

/// Least `i` with `Ext^i_R(M, R) != 0`; bounded by the depth of the ring.
pub fn grade(m: &GradedModule) -> Result<usize, Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("grade"));
    }
    let ring = m.ring();
    let r_mod = GradedModule::ring_module(ring);
    let t = ring_depth(ring);
    let exts = ext_modules(m, &r_mod, t);
    for (i, e) in exts.iter().enumerate() {
        if !e.is_zero_module() {
            return Ok(i);
        }
    }
    unreachable!("grade of a nonzero module is at most the ring depth");
}

/// Depth of the ring as a module over itself, computed without touching the
/// cached profile.
pub(crate) fn ring_depth(ring: &QuotientRing) -> usize {
    let r = GradedModule::ring_module(ring);
    dim_depth(&r).expect("ring is nonzero").1
}

pub(crate) fn ring_dim_depth(ring: &QuotientRing) -> (usize, usize) {
    let r = GradedModule::ring_module(ring);
    dim_depth(&r).expect("ring is nonzero")
}

/// Projective dimension over `R`: decidable by resolving one step past the
/// Auslander-Buchsbaum cutoff `depth R - depth M`.
pub fn proj_dim(m: &GradedModule) -> Result<FinitenessVerdict, Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("projective dimension"));
    }
    let t_r = ring_depth(m.ring());
    let t_m = depth(m)?;
    let cutoff = t_r.saturating_sub(t_m);
    let res = minimal_free_resolution(m, cutoff + 1);
    if res.complete() {
        Ok(FinitenessVerdict::finite(res.length(), "ab-cutoff"))
    } else {
        Ok(FinitenessVerdict::infinite("ab-cutoff"))
    }
}

/// Bass number `mu^i(M) = dim_k Ext^i_R(k, M)`.
pub fn bass_number(m: &GradedModule, i: usize) -> usize {
    let k = GradedModule::residue_field(m.ring());
    let exts = ext_modules(&k, m, i);
    exts[i].mu()
}

/// Injective dimension: decided by the non-vanishing window of Bass numbers.
pub fn inj_dim(m: &GradedModule) -> Result<FinitenessVerdict, Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("injective dimension"));
    }
    let t_r = ring_depth(m.ring());
    let t_m = depth(m)?;
    let b = t_r.max(t_m);
    if bass_number(m, b + 1) == 0 {
        Ok(FinitenessVerdict::finite(t_r, "bass-window"))
    } else {
        Ok(FinitenessVerdict::infinite("bass-window"))
    }
}

/// Gorenstein dimension as a certified three-valued verdict, by a rule
/// cascade: finite projective dimension, Gorenstein ring, Ext non-vanishing
/// above the depth, and bounded total-reflexivity checks on the stabilized
/// syzygy.
pub fn g_dim(m: &GradedModule, bound: usize) -> Result<FinitenessVerdict, Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("Gorenstein dimension"));
    }
    assert!(bound >= 1, "gdim bound must be at least 1");
    let ring = m.ring().clone();
    let t_r = ring_depth(&ring);
    let t_m = depth(m)?;

    // (a) finite projective dimension forces equality
    let pd = proj_dim(m)?;
    if let Finiteness::Finite(v) = pd.finiteness {
        return Ok(FinitenessVerdict::finite(v, "pd-equality"));
    }
    // (b) over a Gorenstein ring every module has finite Gorenstein dimension
    if ring_profile_is_gorenstein(&ring) {
        return Ok(FinitenessVerdict::finite(
            t_r.saturating_sub(t_m),
            "gorenstein-ring",
        ));
    }
    // (c) Ext^i(M, R) must vanish above a finite Gorenstein dimension
    let r_mod = GradedModule::ring_module(&ring);
    let exts = ext_modules(m, &r_mod, t_r + bound);
    for (i, e) in exts.iter().enumerate().skip(t_r + 1) {
        if !e.is_zero_module() {
            return Ok(FinitenessVerdict::infinite(&format!(
                "ext-nonvanishing(i={i})"
            )));
        }
    }
    // (d) the stabilized syzygy must look totally reflexive
    let c = t_r.saturating_sub(t_m);
    let g = syzygy_module(m, c);
    if g.is_zero_module() {
        return Ok(FinitenessVerdict::finite(0, "syzygy-vanishes"));
    }
    let g_exts = ext_modules(&g, &r_mod, bound);
    for (i, e) in g_exts.iter().enumerate().skip(1) {
        if !e.is_zero_module() {
            return Ok(FinitenessVerdict::infinite(&format!(
                "syzygy-ext-nonvanishing(i={i})"
            )));
        }
    }
    let g_star = dual_module(&g);
    if !g_star.is_zero_module() {
        let gs_exts = ext_modules(&g_star, &r_mod, bound);
        for (i, e) in gs_exts.iter().enumerate().skip(1) {
            if !e.is_zero_module() {
                return Ok(FinitenessVerdict::infinite(&format!(
                    "dual-ext-nonvanishing(i={i})"
                )));
            }
        }
    }
    match biduality_is_isomorphism(&g) {
        Some(true) => Ok(FinitenessVerdict::unknown(bound, "bounded-search")),
        Some(false) | None => Ok(FinitenessVerdict::infinite("biduality-failure")),
    }
}

/// Builds the natural evaluation map `M -> M**` and reports whether it is an
/// isomorphism (None when the evaluation classes fail to land in the double
/// dual, which also certifies failure).
pub fn biduality_is_isomorphism(m: &GradedModule) -> Option<bool> {
    let mmin = m.minimalize();
    let ring = mmin.ring().clone();
    let r_mod = GradedModule::ring_module(&ring);
    let dual = hom_module(&mmin, &r_mod);
    let double = hom_module(&dual.module, &r_mod);
    // evaluation at generator e_i of M: the functional on M* reading off the
    // i-th coordinate of each witness matrix
    let mut cols = Vec::new();
    for i in 0..mmin.rank_f0() {
        let r_i = mmin.gen_degrees()[i];
        let mut mat_cols = Vec::new();
        for w in dual.witnesses() {
            // w : F0(M) -> F0(R) = R, a 1-row matrix
            mat_cols.push(vec![w.entry(0, i).clone()]);
        }
        // the functional "evaluate at e_i" on M*, of internal degree r_i
        let mat = crate::freemod::PolyMatrix::new(
            ring.field(),
            ring.nvars(),
            vec![0],
            dual.module.gen_degrees().iter().map(|d| d + r_i).collect(),
            mat_cols,
        );
        let coords = double.express(&mat)?;
        cols.push(coords);
    }
    let matrix = crate::freemod::PolyMatrix::new(
        ring.field(),
        ring.nvars(),
        double.module.gen_degrees().to_vec(),
        mmin.gen_degrees().to_vec(),
        cols,
    );
    if !matrix.is_homogeneous() {
        return Some(false);
    }
    let map = ModuleMap::new(mmin.clone(), double.module.clone(), 0, matrix);
    Some(map.diagnostics().is_isomorphism)
}

fn ring_profile_is_gorenstein(ring: &QuotientRing) -> bool {
    ring.profile().is_gorenstein
}

/// Gorenstein injective dimension through the canonical-module reduction:
/// the verdict tracks `g_dim(Hom(omega, M))`; a finite value is reported as
/// `depth R` by the classical formula.
pub fn g_inj_dim(m: &GradedModule, bound: usize) -> Result<FinitenessVerdict, Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("Gorenstein injective dimension"));
    }
    let ring = m.ring().clone();
    let profile = ring.profile();
    let omega = profile
        .omega
        .as_ref()
        .ok_or_else(|| Error::NotCohenMacaulay(ring.describe()))?;
    let h = hom_module(omega, m).module.minimalize();
    if h.is_zero_module() {
        return Ok(FinitenessVerdict::finite(
            profile.depth,
            "via-omega-reduction(cfh-formula)",
        ));
    }
    let inner = g_dim(&h, bound)?;
    Ok(match inner.finiteness {
        Finiteness::Finite(_) => FinitenessVerdict::finite(
            profile.depth,
            "via-omega-reduction(cfh-formula)",
        ),
        Finiteness::Infinite => FinitenessVerdict::infinite("via-omega-reduction"),
        Finiteness::Unknown(b) => FinitenessVerdict::unknown(b, "via-omega-reduction"),
    })
}

/// `Ext^{n-i}_S(M, S)` twisted by `-n`: the i-th deficiency module. Zero
/// outside `[depth M, dim M]`, canonical module of `M` at the top.
pub fn deficiency(m: &GradedModule, i: i64) -> GradedModule {
    let ring = m.ring().clone();
    let n = ring.nvars() as i64;
    if i < 0 || i > n || m.is_zero_module() {
        return GradedModule::zero(ring);
    }
    let cover = ring.cover_ring();
    let m_s = m.over_cover();
    let s_mod = GradedModule::ring_module(&cover);
    let exts = ext_modules(&m_s, &s_mod, (n - i) as usize);
    let e = exts[(n - i) as usize].clone();
    to_quotient_module(&e, &ring).twist(-n).minimalize()
}

/// The canonical module of `M`: its top deficiency module.
pub fn canonical_of_module(m: &GradedModule) -> Result<GradedModule, Error> {
    let (dim, _) = dim_depth(m)?;
    Ok(deficiency(m, dim as i64))
}

/// Reinterprets a module over the cover as a module over the quotient
/// (it must be annihilated by the defining ideal).
pub fn to_quotient_module(m_s: &GradedModule, ring: &QuotientRing) -> GradedModule {
    assert!(m_s.ring().is_cover(), "source must live over the cover");
    let mut cols = m_s.relations().columns().to_vec();
    cols.extend(ring.ideal_block(m_s.rank_f0()));
    let rel = crate::freemod::PolyMatrix::from_columns(
        ring.field(),
        ring.nvars(),
        m_s.gen_degrees().to_vec(),
        cols,
    );
    GradedModule::new(ring.clone(), m_s.gen_degrees().to_vec(), rel)
}

/// The canonical module `omega = Ext^{n-d}_S(R, S)(-n)` of a Cohen-Macaulay
/// quotient.
pub fn canonical_module(ring: &QuotientRing) -> Result<GradedModule, Error> {
    let (d, t) = ring_dim_depth(ring);
    if d != t {
        return Err(Error::NotCohenMacaulay(ring.describe()));
    }
    let r = GradedModule::ring_module(ring);
    Ok(deficiency(&r, d as i64))
}

/// `(type, mu)`: the type is `dim_k Ext^{depth M}_R(k, M)`, the number of
/// minimal generators comes from the minimal presentation.
pub fn type_and_mu(m: &GradedModule) -> Result<(usize, usize), Error> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule("type"));
    }
    let r = depth(m)?;
    Ok((bass_number(m, r), m.mu()))
}

/// Computes the full ring profile; used by the ring's lazy cache.
pub fn compute_ring_profile(ring: &QuotientRing) -> RingProfile {
    let (dim, depth_r) = ring_dim_depth(ring);
    let is_cm = dim == depth_r;
    let r = GradedModule::ring_module(ring);
    let (type_, _) = type_and_mu(&r).expect("ring is nonzero");
    let omega = if is_cm {
        Some(canonical_module(ring).expect("CM ring has a canonical module"))
    } else {
        None
    };
    let is_gorenstein = is_cm && type_ == 1;
    if let Some(w) = &omega {
        debug_assert_eq!(w.mu(), type_, "canonical module must have mu = type");
    }
    RingProfile { depth: depth_r, dim, is_cm, is_gorenstein, type_, omega }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Polynomial;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn poly_ring2() -> QuotientRing {
        QuotientRing::cover(f7(), vec!["x".into(), "y".into()])
    }

    fn hyper() -> QuotientRing {
        let f = f7();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        QuotientRing::new(f, vec!["x".into(), "y".into()], vec![x.mul(&y)]).unwrap()
    }

    fn artin_m2() -> QuotientRing {
        // F7[x,y]/(x,y)^2
        let f = f7();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        QuotientRing::new(
            f,
            vec!["x".into(), "y".into()],
            vec![x.mul(&x), x.mul(&y), y.mul(&y)],
        )
        .unwrap()
    }

    fn artin_square() -> QuotientRing {
        let f = f7();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        QuotientRing::new(f, vec!["x".into(), "y".into()], vec![x.mul(&x), y.mul(&y)]).unwrap()
    }

    #[test]
    fn hilbert_series_of_rings() {
        let s = poly_ring2();
        let r = GradedModule::ring_module(&s);
        let hs = hilbert_series(&r);
        assert_eq!(hs.numerator, vec![1]);
        for d in 0..5 {
            assert_eq!(hs.value_at(d) as usize, r.hilbert_function(d));
        }
        let h = hyper();
        let rh = GradedModule::ring_module(&h);
        let hs2 = hilbert_series(&rh);
        // (1 - t^2) / (1-t)^2
        assert_eq!(hs2.offset, 0);
        assert_eq!(hs2.numerator, vec![1, 0, -1]);
        for d in 0..6 {
            assert_eq!(hs2.value_at(d) as usize, rh.hilbert_function(d));
        }
        let z = GradedModule::zero(s);
        assert!(hilbert_series(&z).is_zero());
    }

    #[test]
    fn dim_depth_examples() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        assert_eq!(dim_depth(&k).unwrap(), (0, 0));
        let h = hyper();
        let rh = GradedModule::ring_module(&h);
        assert_eq!(dim_depth(&rh).unwrap(), (1, 1));
        // S/(x) + S: dim 2, depth 1
        let sx = GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]);
        let free = GradedModule::ring_module(&s);
        let sum = sx.direct_sum(&free);
        assert_eq!(dim_depth(&sum).unwrap(), (2, 1));
        let z = GradedModule::zero(poly_ring2());
        assert!(dim_depth(&z).is_err());
    }

    #[test]
    fn grade_examples() {
        let s = poly_ring2();
        let with_free = GradedModule::residue_field(&s).direct_sum(&GradedModule::ring_module(&s));
        assert_eq!(grade(&with_free).unwrap(), 0);
        let sx = GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]);
        assert_eq!(grade(&sx).unwrap(), 1);
        let k = GradedModule::residue_field(&s);
        assert_eq!(grade(&k).unwrap(), 2);
    }

    #[test]
    fn proj_dim_decisions() {
        let s = poly_ring2();
        let free = GradedModule::free(s.clone(), vec![0, 1]);
        assert_eq!(proj_dim(&free).unwrap().value(), Some(0));
        let k = GradedModule::residue_field(&s);
        assert_eq!(proj_dim(&k).unwrap().value(), Some(2));
        let h = hyper();
        let kh = GradedModule::residue_field(&h);
        assert!(proj_dim(&kh).unwrap().is_infinite());
    }

    #[test]
    fn inj_dim_decisions() {
        let s = poly_ring2();
        let r = GradedModule::ring_module(&s);
        let v = inj_dim(&r).unwrap();
        assert_eq!(v.value(), Some(2)); // regular: id R = dim
        let a = artin_m2();
        let ra = GradedModule::ring_module(&a);
        assert!(inj_dim(&ra).unwrap().is_infinite());
        let h = hyper();
        let rh = GradedModule::ring_module(&h);
        assert_eq!(inj_dim(&rh).unwrap().value(), Some(1));
    }

    #[test]
    fn gdim_rules() {
        // free over any ring: rule (a)
        let a = artin_m2();
        let free = GradedModule::ring_module(&a);
        assert_eq!(g_dim(&free, 4).unwrap().value(), Some(0));
        // Gorenstein hypersurface: rule (b), never Unknown
        let h = hyper();
        let kh = GradedModule::residue_field(&h);
        let v = g_dim(&kh, 4).unwrap();
        assert_eq!(v.value(), Some(1)); // depth R - depth k = 1
        assert_eq!(v.certificate, "gorenstein-ring");
        // k over the non-Gorenstein Artinian ring: Infinite via Ext
        let ka = GradedModule::residue_field(&a);
        assert!(g_dim(&ka, 4).unwrap().is_infinite());
    }

    #[test]
    fn canonical_modules() {
        // Gorenstein hypersurface: omega = R up to twist
        let h = hyper();
        let w = canonical_module(&h).unwrap();
        assert_eq!(w.mu(), 1);
        let r = GradedModule::ring_module(&h);
        assert!(crate::module::hilbert_equal_up_to_shift(&w, &r, 8).is_some());
        // (x,y)^2 quotient: omega has Hilbert function (2, 1) and mu = 2
        let a = artin_m2();
        let wa = canonical_module(&a).unwrap();
        assert_eq!(wa.mu(), 2);
        let lo = wa.min_nonzero_degree().unwrap();
        assert_eq!(wa.hilbert_function(lo), 2);
        assert_eq!(wa.hilbert_function(lo + 1), 1);
        assert_eq!(wa.hilbert_function(lo + 2), 0);
        // polynomial ring: omega = S(-n), one generator in degree n
        let s = poly_ring2();
        let ws = canonical_module(&s).unwrap();
        assert_eq!(ws.gen_degrees(), &[2]);
        assert!(ws.is_free_presentation() || ws.relations().is_zero());
    }

    #[test]
    fn canonical_endomorphisms_recover_ring() {
        // Hom(omega, omega) = R for CM rings
        for ring in [hyper(), artin_m2()] {
            let w = canonical_module(&ring).unwrap();
            let h = hom_module(&w, &w).module.minimalize();
            let r = GradedModule::ring_module(&ring);
            assert!(crate::module::hilbert_equal(&h, &r, 0, 6), "End(omega) != R over {}", ring.describe());
        }
    }

    #[test]
    fn deficiency_window_for_residue_field() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        // K^0(k) = k, K^1 = K^2 = 0
        let k0 = deficiency(&k, 0);
        assert!(!k0.is_zero_module());
        assert_eq!(k0.hilbert_range(-1, 1).iter().sum::<usize>(), 1);
        assert!(deficiency(&k, 1).is_zero_module());
        assert!(deficiency(&k, 2).is_zero_module());
    }

    #[test]
    fn deficiency_window_for_mixed_module() {
        // S/(x) + S over F7[x,y]: K^0 = 0, K^1 != 0, K^2 != 0
        let s = poly_ring2();
        let sx = GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]);
        let m = sx.direct_sum(&GradedModule::ring_module(&s));
        assert!(deficiency(&m, 0).is_zero_module());
        assert!(!deficiency(&m, 1).is_zero_module());
        assert!(!deficiency(&m, 2).is_zero_module());
    }

    #[test]
    fn type_and_mu_examples() {
        let h = hyper();
        let rh = GradedModule::ring_module(&h);
        assert_eq!(type_and_mu(&rh).unwrap().0, 1); // Gorenstein
        let a = artin_m2();
        let ra = GradedModule::ring_module(&a);
        assert_eq!(type_and_mu(&ra).unwrap(), (2, 1)); // socle {x, y}
        let k = GradedModule::residue_field(&a);
        assert_eq!(type_and_mu(&k).unwrap(), (1, 1));
    }

    #[test]
    fn ring_profiles() {
        let h = hyper();
        let p = h.profile();
        assert_eq!((p.depth, p.dim), (1, 1));
        assert!(p.is_cm && p.is_gorenstein);
        assert_eq!(p.type_, 1);

        let a = artin_m2();
        let pa = a.profile();
        assert_eq!((pa.depth, pa.dim), (0, 0));
        assert!(pa.is_cm && !pa.is_gorenstein);
        assert_eq!(pa.type_, 2);

        let f = f7();
        let x = Polynomial::variable(f, 3, 0);
        let y = Polynomial::variable(f, 3, 1);
        let z = Polynomial::variable(f, 3, 2);
        let axes = QuotientRing::new(
            f,
            vec!["x".into(), "y".into(), "z".into()],
            vec![x.mul(&y), x.mul(&z), y.mul(&z)],
        )
        .unwrap();
        let pax = axes.profile();
        assert_eq!((pax.depth, pax.dim), (1, 1));
        assert!(pax.is_cm && !pax.is_gorenstein);
        assert_eq!(pax.type_, 2);

        // 1-dimensional non-CM ring F7[x,y]/(x^2, xy)
        let x2 = Polynomial::variable(f, 2, 0);
        let y2 = Polynomial::variable(f, 2, 1);
        let noncm = QuotientRing::new(
            f,
            vec!["x".into(), "y".into()],
            vec![x2.mul(&x2), x2.mul(&y2)],
        )
        .unwrap();
        let pn = noncm.profile();
        assert_eq!((pn.depth, pn.dim), (0, 1));
        assert!(!pn.is_cm && !pn.is_gorenstein);
    }

    #[test]
    fn gid_examples() {
        // omega over a CM ring: Hom(omega, omega) = R, so the verdict is finite
        let a = artin_m2();
        let w = a.profile().omega.clone().unwrap();
        let v = g_inj_dim(&w, 4).unwrap();
        assert!(v.is_finite());
        // k over the Gorenstein hypersurface: finite
        let h = hyper();
        let kh = GradedModule::residue_field(&h);
        assert!(g_inj_dim(&kh, 4).unwrap().is_finite());
        // k over the non-Gorenstein Artinian ring: infinite
        let ka = GradedModule::residue_field(&a);
        assert!(g_inj_dim(&ka, 4).unwrap().is_infinite());
    }

    #[test]
    fn biduality_on_free_modules() {
        let s = poly_ring2();
        let f = GradedModule::free(s, vec![0, 1]);
        assert_eq!(biduality_is_isomorphism(&f), Some(true));
    }

    #[test]
    fn auslander_buchsbaum_for_finite_pd() {
        let s = poly_ring2();
        let t_r = ring_depth(&s);
        let mods = [
            GradedModule::residue_field(&s),
            GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]),
            GradedModule::free(s.clone(), vec![0]),
        ];
        for m in &mods {
            let pd = proj_dim(m).unwrap().value().unwrap();
            let dep = depth(m).unwrap();
            assert_eq!(pd + dep, t_r);
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = FinitenessVerdict::finite(2, "ab-cutoff");
        let j = v.to_json();
        assert_eq!(j["status"], "finite");
        assert_eq!(j["value"], 2);
        assert!(j.get("bound").is_none());
        let u = FinitenessVerdict::unknown(6, "bounded-search");
        assert_eq!(u.to_json()["bound"], 6);
    }
}
