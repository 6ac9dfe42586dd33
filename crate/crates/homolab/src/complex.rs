//! Bounded complexes of graded modules: shift, Hom and tensor complexes,
//! Koszul complexes and homology. Complexes are descending: the differential
//! lowers the homological index.

use crate::error::Error;
use crate::freemod::{zero_column, Column, PolyMatrix};
use crate::module::{
    hom_module, homology_subquotient, tensor_module, GradedModule, HomModule, ModuleMap,
};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A bounded complex `X` with terms in homological degrees `low..=high` and
/// differentials `d_i : X_i -> X_{i-1}`. `d . d = 0` is checked on
/// construction.
#[derive(Clone)]
pub struct BoundedComplex {
    ring: QuotientRing,
    low: i64,
    terms: Vec<GradedModule>,
    diffs: Vec<ModuleMap>,
}

impl BoundedComplex {
    pub fn new(ring: QuotientRing, low: i64, terms: Vec<GradedModule>, diffs: Vec<ModuleMap>) -> Self {
        if terms.is_empty() {
            assert!(diffs.is_empty());
            return BoundedComplex { ring, low, terms, diffs };
        }
        assert_eq!(diffs.len() + 1, terms.len(), "need one differential per adjacent pair");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.shift(), 0, "differentials must preserve internal degree");
            assert_eq!(
                d.source().gen_degrees(),
                terms[k + 1].gen_degrees(),
                "differential source mismatch at level {}",
                low + k as i64 + 1
            );
            assert_eq!(
                d.target().gen_degrees(),
                terms[k].gen_degrees(),
                "differential target mismatch at level {}",
                low + k as i64
            );
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[k].compose(&diffs[k + 1]);
            assert!(dd.is_zero_map(), "d.d != 0 between levels {} and {}", low + k as i64 + 2, low + k as i64);
        }
        BoundedComplex { ring, low, terms, diffs }
    }

    /// A module concentrated in one homological degree.
    pub fn from_module(m: &GradedModule, at: i64) -> Self {
        BoundedComplex {
            ring: m.ring().clone(),
            low: at,
            terms: vec![m.clone()],
            diffs: vec![],
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: i64) -> GradedModule {
        if self.terms.is_empty() || i < self.low || i > self.high() {
            GradedModule::zero(self.ring.clone())
        } else {
            self.terms[(i - self.low) as usize].clone()
        }
    }

    /// `d_i : X_i -> X_{i-1}`, synthesized as a zero map outside the window.
    pub fn diff(&self, i: i64) -> ModuleMap {
        if !self.terms.is_empty() && i > self.low && i <= self.high() {
            self.diffs[(i - self.low - 1) as usize].clone()
        } else {
            ModuleMap::zero_map(self.term(i), self.term(i - 1), 0)
        }
    }

    /// `n`-fold shift: `(shift^n X)_i = X_{i-n}` with differentials scaled by
    /// `(-1)^n`.
    pub fn shift(&self, n: i64) -> BoundedComplex {
        let diffs = if n.rem_euclid(2) == 1 {
            let p = self.ring.field().characteristic();
            self.diffs.iter().map(|d| d.scale(p - 1)).collect()
        } else {
            self.diffs.clone()
        };
        BoundedComplex {
            ring: self.ring.clone(),
            low: self.low + n,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Homology `ker d_i / im d_{i+1}` presented as a module.
    pub fn homology_at(&self, i: i64) -> GradedModule {
        if self.terms.is_empty() || i < self.low || i > self.high() {
            return GradedModule::zero(self.ring.clone());
        }
        let incoming = self.diff(i + 1);
        let outgoing = self.diff(i);
        homology_subquotient(Some(&incoming), Some(&outgoing)).module
    }
}

impl std::fmt::Debug for BoundedComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "complex [{}..={}] over {}", self.low, self.high(), self.ring.describe())
    }
}

/// A morphism of complexes: levelwise maps commuting with the differentials
/// (checked on construction).
pub struct ComplexMap {
    pub source: BoundedComplex,
    pub target: BoundedComplex,
    pub low: i64,
    pub maps: Vec<ModuleMap>,
}

impl ComplexMap {
    pub fn new(source: BoundedComplex, target: BoundedComplex, low: i64, maps: Vec<ModuleMap>) -> Self {
        for (k, f) in maps.iter().enumerate() {
            let i = low + k as i64;
            assert_eq!(f.source().gen_degrees(), source.term(i).gen_degrees());
            assert_eq!(f.target().gen_degrees(), target.term(i).gen_degrees());
        }
        // commuting squares: target.d_i . f_i = f_{i-1} . source.d_i
        for k in 1..maps.len() {
            let i = low + k as i64;
            let lhs = target.diff(i).compose(&maps[k]);
            let rhs = maps[k - 1].compose(&source.diff(i));
            let p = source.ring().field().characteristic();
            let diff = lhs.add(&rhs.scale(p - 1));
            assert!(diff.is_zero_map(), "complex map fails to commute at level {i}");
        }
        ComplexMap { source, target, low, maps }
    }
}

/// The Koszul complex on a sequence of homogeneous ring elements of positive
/// degree: terms are exterior powers of a rank-n free module.
pub fn koszul_complex(ring: &QuotientRing, elems: &[Polynomial]) -> Result<BoundedComplex, Error> {
    let field = ring.field();
    let nv = ring.nvars();
    let mut degs = Vec::with_capacity(elems.len());
    for e in elems {
        let e = ring.nf(e);
        match e.homogeneous_degree() {
            Some(d) if d > 0 => degs.push(d),
            _ => return Err(Error::Inhomogeneous("Koszul input must be homogeneous of positive degree".into())),
        }
    }
    let elems: Vec<Polynomial> = elems.iter().map(|e| ring.nf(e)).collect();
    let n = elems.len();
    let mut subsets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    for size in 0..=n {
        subsets.push(combinations(n, size));
    }
    let mut terms: Vec<GradedModule> = Vec::with_capacity(n + 1);
    for size in 0..=n {
        let gd: Vec<i64> = subsets[size]
            .iter()
            .map(|t| t.iter().map(|&k| degs[k]).sum())
            .collect();
        terms.push(GradedModule::free(ring.clone(), gd));
    }
    let mut diffs: Vec<ModuleMap> = Vec::with_capacity(n);
    for size in 1..=n {
        let src = &terms[size];
        let tgt = &terms[size - 1];
        let tgt_index: std::collections::HashMap<&[usize], usize> = subsets[size - 1]
            .iter()
            .enumerate()
            .map(|(pos, t)| (t.as_slice(), pos))
            .collect();
        let mut cols: Vec<Column> = Vec::new();
        for t in &subsets[size] {
            let mut col = zero_column(field, nv, tgt.rank_f0());
            for (pos, &k) in t.iter().enumerate() {
                let mut rest = t.clone();
                rest.remove(pos);
                let row = tgt_index[rest.as_slice()];
                let signed = if pos % 2 == 0 {
                    elems[k].clone()
                } else {
                    elems[k].neg()
                };
                col[row] = col[row].add(&signed);
            }
            cols.push(col);
        }
        let matrix = PolyMatrix::new(
            field,
            nv,
            tgt.gen_degrees().to_vec(),
            src.gen_degrees().to_vec(),
            cols,
        );
        diffs.push(ModuleMap::new(src.clone(), tgt.clone(), 0, matrix));
    }
    // terms are indexed 0..=n ascending; diffs[k]: terms[k+1] -> terms[k]
    Ok(BoundedComplex::new(ring.clone(), 0, terms, diffs))
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Direct sum with component offsets into the concatenated generator list.
fn direct_sum_many(ring: &QuotientRing, parts: &[GradedModule]) -> (GradedModule, Vec<usize>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = GradedModule::zero(ring.clone());
    let mut off = 0;
    for p in parts {
        offsets.push(off);
        off += p.rank_f0();
        acc = acc.direct_sum(p);
    }
    (acc, offsets)
}

/// The Hom complex `Hom(X, Y)_i = (+)_j Hom(X_j, Y_{i+j})` with differential
/// `(d psi)_j = d^Y . psi_j - (-1)^i psi_{j-1} . d^X_j`.
pub fn hom_complex(x: &BoundedComplex, y: &BoundedComplex) -> BoundedComplex {
    assert_eq!(x.ring(), y.ring(), "Hom complex across different rings");
    let ring = x.ring().clone();
    if x.is_empty() || y.is_empty() {
        return BoundedComplex::new(ring, 0, vec![], vec![]);
    }
    let low = y.low() - x.high();
    let high = y.high() - x.low();

    // per level: the list of X-indices j contributing Hom(X_j, Y_{i+j})
    let mut level_js: Vec<Vec<i64>> = Vec::new();
    let mut level_homs: Vec<Vec<HomModule>> = Vec::new();
    let mut level_terms: Vec<GradedModule> = Vec::new();
    let mut level_offsets: Vec<Vec<usize>> = Vec::new();
    for i in low..=high {
        let mut js = Vec::new();
        let mut homs = Vec::new();
        for j in x.low()..=x.high() {
            let yj = i + j;
            if yj < y.low() || yj > y.high() {
                continue;
            }
            js.push(j);
            homs.push(hom_module(&x.term(j), &y.term(yj)));
        }
        let parts: Vec<GradedModule> = homs.iter().map(|h| h.module.clone()).collect();
        let (term, offsets) = direct_sum_many(&ring, &parts);
        level_js.push(js);
        level_homs.push(homs);
        level_terms.push(term);
        level_offsets.push(offsets);
    }

    let field = ring.field();
    let nv = ring.nvars();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for i in (low + 1)..=high {
        let src_idx = (i - low) as usize;
        let tgt_idx = src_idx - 1;
        let src = &level_terms[src_idx];
        let tgt = &level_terms[tgt_idx];
        let mut cols: Vec<Column> = Vec::new();
        let sign = if i.rem_euclid(2) == 0 { field.characteristic() - 1 } else { 1 };
        for (cpos, &j) in level_js[src_idx].iter().enumerate() {
            let hom = &level_homs[src_idx][cpos];
            for g in 0..hom.module.rank_f0() {
                let psi = &hom.witnesses()[g];
                let mut col = zero_column(field, nv, tgt.rank_f0());
                // post-composition with d^Y lands in component j of level i-1
                if let Some(tpos) = level_js[tgt_idx].iter().position(|&jj| jj == j) {
                    let dy = y.diff(i + j);
                    if !dy.matrix().is_zero() {
                        let composed = dy.matrix().compose(psi).map_entries(|p| ring.nf(p));
                        let coords = level_homs[tgt_idx][tpos]
                            .express(&composed)
                            .expect("post-composite must be a Hom class");
                        let off = level_offsets[tgt_idx][tpos];
                        for (t, cpoly) in coords.iter().enumerate() {
                            col[off + t] = col[off + t].add(cpoly);
                        }
                    }
                }
                // pre-composition with d^X lands in component j+1 of level i-1
                if let Some(tpos) = level_js[tgt_idx].iter().position(|&jj| jj == j + 1) {
                    let dx = x.diff(j + 1);
                    if !dx.matrix().is_zero() {
                        let composed = psi.compose(dx.matrix()).map_entries(|p| ring.nf(p));
                        let coords = level_homs[tgt_idx][tpos]
                            .express(&composed)
                            .expect("pre-composite must be a Hom class");
                        let off = level_offsets[tgt_idx][tpos];
                        for (t, cpoly) in coords.iter().enumerate() {
                            // minus (-1)^i
                            col[off + t] = col[off + t].add(&cpoly.scale(sign));
                        }
                    }
                }
                cols.push(col);
            }
        }
        let matrix = PolyMatrix::new(
            field,
            nv,
            tgt.gen_degrees().to_vec(),
            src.gen_degrees().to_vec(),
            cols,
        );
        diffs.push(ModuleMap::new(src.clone(), tgt.clone(), 0, matrix));
    }
    BoundedComplex::new(ring, low, level_terms, diffs)
}

/// The tensor complex `(X (x) Y)_i = (+)_j X_j (x) Y_{i-j}` with the Koszul
/// sign `(-1)^j` on the second summand of the differential.
pub fn tensor_complex(x: &BoundedComplex, y: &BoundedComplex) -> BoundedComplex {
    assert_eq!(x.ring(), y.ring(), "tensor complex across different rings");
    let ring = x.ring().clone();
    if x.is_empty() || y.is_empty() {
        return BoundedComplex::new(ring, 0, vec![], vec![]);
    }
    let low = x.low() + y.low();
    let high = x.high() + y.high();
    let field = ring.field();
    let nv = ring.nvars();

    let mut level_js: Vec<Vec<i64>> = Vec::new();
    let mut level_terms: Vec<GradedModule> = Vec::new();
    let mut level_offsets: Vec<Vec<usize>> = Vec::new();
    for i in low..=high {
        let mut js = Vec::new();
        let mut parts = Vec::new();
        for j in x.low()..=x.high() {
            let yj = i - j;
            if yj < y.low() || yj > y.high() {
                continue;
            }
            js.push(j);
            parts.push(tensor_module(&x.term(j), &y.term(yj)));
        }
        let (term, offsets) = direct_sum_many(&ring, &parts);
        level_js.push(js);
        level_terms.push(term);
        level_offsets.push(offsets);
    }

    let mut diffs: Vec<ModuleMap> = Vec::new();
    for i in (low + 1)..=high {
        let src_idx = (i - low) as usize;
        let tgt_idx = src_idx - 1;
        let src = &level_terms[src_idx];
        let tgt = &level_terms[tgt_idx];
        let mut cols: Vec<Column> = Vec::new();
        for &j in level_js[src_idx].iter() {
            let xj = x.term(j);
            let yj = y.term(i - j);
            let (xr, yr) = (xj.rank_f0(), yj.rank_f0());
            for gm in 0..xr {
                for gn in 0..yr {
                    let mut col = zero_column(field, nv, tgt.rank_f0());
                    // d^X (x) id into component j-1 of level i-1
                    if let Some(tpos) = level_js[tgt_idx].iter().position(|&jj| jj == j - 1) {
                        let dx = x.diff(j);
                        let xtr = x.term(j - 1).rank_f0();
                        let off = level_offsets[tgt_idx][tpos];
                        for t in 0..xtr {
                            let e = dx.matrix().entry(t, gm);
                            if !e.is_zero() {
                                let idx = off + t * yr + gn;
                                col[idx] = col[idx].add(e);
                            }
                        }
                    }
                    // (-1)^j id (x) d^Y into component j of level i-1
                    if let Some(tpos) = level_js[tgt_idx].iter().position(|&jj| jj == j) {
                        let dy = y.diff(i - j);
                        let ytr = y.term(i - j - 1).rank_f0();
                        let off = level_offsets[tgt_idx][tpos];
                        let sign = if j.rem_euclid(2) == 0 { 1 } else { field.characteristic() - 1 };
                        for t in 0..ytr {
                            let e = dy.matrix().entry(t, gn);
                            if !e.is_zero() {
                                let idx = off + gm * ytr + t;
                                col[idx] = col[idx].add(&e.scale(sign));
                            }
                        }
                    }
                    cols.push(col.iter().map(|p| ring.nf(p)).collect());
                }
            }
        }
        let matrix = PolyMatrix::new(
            field,
            nv,
            tgt.gen_degrees().to_vec(),
            src.gen_degrees().to_vec(),
            cols,
        );
        diffs.push(ModuleMap::new(src.clone(), tgt.clone(), 0, matrix));
    }
    BoundedComplex::new(ring, low, level_terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::module::hilbert_equal;

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

    #[test]
    fn koszul_on_one_element() {
        let s = poly_ring2();
        let k = koszul_complex(&s, &[s.var_poly(0)]).unwrap();
        assert_eq!(k.low(), 0);
        assert_eq!(k.high(), 1);
        assert_eq!(k.term(0).rank_f0(), 1);
        assert_eq!(k.term(1).gen_degrees(), &[1]);
        // H_0 = R/(x), H_1 = 0
        let h0 = k.homology_at(0);
        let rx = GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]);
        assert!(hilbert_equal(&h0, &rx, 0, 5));
        assert!(k.homology_at(1).is_zero_module());
    }

    #[test]
    fn koszul_ranks_three_variables() {
        let s = QuotientRing::cover(f7(), vec!["x".into(), "y".into(), "z".into()]);
        let elems: Vec<Polynomial> = (0..3).map(|i| s.var_poly(i)).collect();
        let k = koszul_complex(&s, &elems).unwrap();
        let ranks: Vec<usize> = (0..=3).map(|i| k.term(i).rank_f0()).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        // regular sequence: higher homology vanishes, H_0 = k
        for i in 1..=3 {
            assert!(k.homology_at(i).is_zero_module(), "H_{i} nonzero");
        }
        let h0 = k.homology_at(0);
        assert_eq!(h0.hilbert_range(0, 2), vec![1, 0, 0]);
    }

    #[test]
    fn koszul_detects_non_regular_sequence() {
        // over F7[x,y]/(xy) the pair (x, y) is not regular: H_1 != 0
        let h = hyper();
        let k = koszul_complex(&h, &[h.var_poly(0), h.var_poly(1)]).unwrap();
        assert!(!k.homology_at(1).is_zero_module());
    }

    #[test]
    fn koszul_rejects_inhomogeneous_or_constant() {
        let s = poly_ring2();
        assert!(koszul_complex(&s, &[s.one_poly()]).is_err());
        let bad = s.var_poly(0).add(&s.one_poly());
        assert!(koszul_complex(&s, &[bad]).is_err());
    }

    #[test]
    fn shift_composition_and_signs() {
        let s = poly_ring2();
        let k = koszul_complex(&s, &[s.var_poly(0), s.var_poly(1)]).unwrap();
        let s0 = k.shift(0);
        assert_eq!(s0.low(), k.low());
        assert_eq!(s0.diff(1).matrix(), k.diff(1).matrix());
        // double shift restores the signs
        let s2 = k.shift(1).shift(1);
        assert_eq!(s2.low(), k.low() + 2);
        assert_eq!(s2.diff(3).matrix(), k.diff(1).matrix());
        // composite shift equals one shift by the sum
        let s12 = k.shift(1).shift(2);
        let s3 = k.shift(3);
        assert_eq!(s12.low(), s3.low());
        assert_eq!(s12.diff(4).matrix(), s3.diff(4).matrix());
        // a module concentrated in degree 0 moves to degree 1
        let m = GradedModule::ring_module(&s);
        let c = BoundedComplex::from_module(&m, 0).shift(1);
        assert_eq!(c.low(), 1);
        assert!(c.term(0).is_zero_module());
        assert_eq!(c.term(1).rank_f0(), 1);
    }

    #[test]
    fn hom_from_ring_recovers_target() {
        let h = hyper();
        let r = BoundedComplex::from_module(&GradedModule::ring_module(&h), 0);
        let m = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let k = koszul_complex(&h, &[h.var_poly(1)]).unwrap();
        let hc = hom_complex(&r, &k);
        // Hom(R[0], K) has the same terms as K
        for i in 0..=1 {
            assert!(hilbert_equal(&hc.term(i), &k.term(i), 0, 5));
        }
        let _ = m;
    }

    #[test]
    fn hom_into_ring_dualizes_koszul() {
        // Hom(Koszul(x,y), R[0]) is the Koszul complex reversed into [-2..0]
        let s = poly_ring2();
        let k = koszul_complex(&s, &[s.var_poly(0), s.var_poly(1)]).unwrap();
        let r = BoundedComplex::from_module(&GradedModule::ring_module(&s), 0);
        let d = hom_complex(&k, &r);
        assert_eq!(d.low(), -2);
        assert_eq!(d.high(), 0);
        assert_eq!(d.term(0).rank_f0(), 1);
        assert_eq!(d.term(-1).rank_f0(), 2);
        assert_eq!(d.term(-2).rank_f0(), 1);
        assert_eq!(d.term(-2).gen_degrees(), &[-2]);
        // self-duality: homology vanishes except at the top, H_{-2} = k(2)-ish
        assert!(d.homology_at(0).is_zero_module());
        assert!(d.homology_at(-1).is_zero_module());
        let top = d.homology_at(-2);
        assert_eq!(top.mu(), 1);
    }

    #[test]
    fn tensor_unit_complex() {
        let h = hyper();
        let k = koszul_complex(&h, &[h.var_poly(0)]).unwrap();
        let r = BoundedComplex::from_module(&GradedModule::ring_module(&h), 0);
        let t = tensor_complex(&k, &r);
        for i in 0..=1 {
            assert!(hilbert_equal(&t.term(i), &k.term(i), 0, 5));
        }
    }

    #[test]
    fn koszul_factorizes_as_tensor_product() {
        // Koszul(x) (x) Koszul(y) has the terms and homology of Koszul(x, y)
        let s = poly_ring2();
        let kx = koszul_complex(&s, &[s.var_poly(0)]).unwrap();
        let ky = koszul_complex(&s, &[s.var_poly(1)]).unwrap();
        let t = tensor_complex(&kx, &ky);
        let kxy = koszul_complex(&s, &[s.var_poly(0), s.var_poly(1)]).unwrap();
        for i in 0..=2 {
            assert!(hilbert_equal(&t.term(i), &kxy.term(i), 0, 5));
            let ht = t.homology_at(i);
            let hk = kxy.homology_at(i);
            assert!(hilbert_equal(&ht, &hk, 0, 5));
        }
    }

    #[test]
    fn homology_of_exact_complex_vanishes() {
        let s = poly_ring2();
        let k = koszul_complex(&s, &[s.var_poly(0), s.var_poly(1)]).unwrap();
        // augmented: exact in positive degrees
        for i in 1..=2 {
            assert!(k.homology_at(i).is_zero_module());
        }
        // H_0(Koszul(x,y)) = k
        let h0 = k.homology_at(0);
        let k_res = GradedModule::residue_field(&s);
        assert!(hilbert_equal(&h0, &k_res, 0, 4));
    }

    #[test]
    fn tensor_commutes_with_swap_numerically() {
        let h = hyper();
        let kx = koszul_complex(&h, &[h.var_poly(0)]).unwrap();
        let m = GradedModule::cyclic_quotient(&h, &[h.var_poly(1)]);
        let mc = BoundedComplex::from_module(&m, 0);
        let a = tensor_complex(&kx, &mc);
        let b = tensor_complex(&mc, &kx);
        for i in a.low()..=a.high() {
            assert!(hilbert_equal(&a.term(i), &b.term(i), 0, 5));
            assert!(hilbert_equal(&a.homology_at(i), &b.homology_at(i), 0, 5));
        }
    }
}
