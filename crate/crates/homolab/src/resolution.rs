//! Minimal graded free resolutions and the functors built on them: syzygy
//! modules, the Auslander transpose, Betti tables, and Ext/Tor.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::freemod::{zero_column, Column, PolyMatrix};
use crate::module::{
    hom_module, homology_subquotient, minimal_generator_indices, tensor_module, GradedModule,
    ModuleMap,
};
use crate::complex::BoundedComplex;

/// A prefix of the minimal graded free resolution of a module. `steps[0]` is
/// the presentation differential of the minimalized module; `complete` means
/// the next syzygy module vanished inside the computed window.
pub struct FreeResolution {
    module: GradedModule,
    minimal_module: GradedModule,
    steps: Vec<PolyMatrix>,
    complete: bool,
}

impl FreeResolution {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn minimal_module(&self) -> &GradedModule {
        &self.minimal_module
    }

    /// Number of computed differentials (the resolution reaches `F_length`).
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn is_minimal(&self) -> bool {
        self.steps.iter().all(|s| {
            s.columns()
                .iter()
                .flatten()
                .all(|p| p.is_zero() || p.homogeneous_degree().map_or(false, |d| d > 0))
        })
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn step(&self, i: usize) -> Option<&PolyMatrix> {
        if i == 0 {
            None
        } else {
            self.steps.get(i - 1)
        }
    }

    /// Generator degrees of the i-th free module in the resolution.
    pub fn free_degrees(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            self.minimal_module.gen_degrees().to_vec()
        } else if i <= self.steps.len() {
            self.steps[i - 1].col_degrees().to_vec()
        } else {
            Vec::new()
        }
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for i in 0..=self.steps.len() {
            for d in self.free_degrees(i) {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries, complete: self.complete }
    }

    /// The resolution as a complex of free modules in degrees `0..=length`.
    pub fn as_complex(&self) -> BoundedComplex {
        let ring = self.minimal_module.ring().clone();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for i in 0..=self.steps.len() {
            terms.push(GradedModule::free(ring.clone(), self.free_degrees(i)));
        }
        for (k, s) in self.steps.iter().enumerate() {
            diffs.push(ModuleMap::new(terms[k + 1].clone(), terms[k].clone(), 0, s.clone()));
        }
        BoundedComplex::new(ring, 0, terms, diffs)
    }

    /// Groebner re-check of exactness: consecutive differentials compose to
    /// zero and every syzygy of `d_i` lies in the span of the columns of
    /// `d_{i+1}`.
    pub fn audit_exactness(&self) -> bool {
        let ring = self.minimal_module.ring();
        // relations of the module are spanned by the first differential
        if !self.steps.is_empty() {
            let f0 = self.minimal_module.gen_degrees();
            let d1_cols = self.steps[0].columns();
            for rel in self.minimal_module.relations().columns() {
                if ring.lift_over_quotient(f0, d1_cols, rel).is_none() {
                    return false;
                }
            }
        }
        for i in 1..=self.steps.len() {
            let d_i = &self.steps[i - 1];
            let ambient = if i == 1 {
                self.minimal_module.gen_degrees().to_vec()
            } else {
                self.steps[i - 2].col_degrees().to_vec()
            };
            // composition vanishes
            if i < self.steps.len() {
                let composite = d_i.compose(&self.steps[i]);
                for col in composite.columns() {
                    let reduced = ring.nf_column(col);
                    if !reduced.iter().all(|p| p.is_zero()) {
                        return false;
                    }
                }
            }
            // syzygies of d_i are generated by d_{i+1}; at the boundary of an
            // incomplete prefix there is no claim to check
            if i == self.steps.len() && !self.complete {
                continue;
            }
            let syz = ring.quotient_syzygies(&ambient, d_i.columns());
            let next_cols: Vec<Column> = if i < self.steps.len() {
                self.steps[i].columns().to_vec()
            } else {
                Vec::new()
            };
            for z in syz {
                if next_cols.is_empty() {
                    return false;
                }
                if ring
                    .lift_over_quotient(d_i.col_degrees(), &next_cols, &z)
                    .is_none()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Graded Betti numbers of a computed resolution prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
    complete: bool,
}

impl BettiTable {
    pub fn beta(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((ii, _), _)| *ii == i)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &n)| (i, j, n))
    }

    /// Macaulay2-style grid: columns are homological degrees, row `r` holds
    /// the Betti numbers with internal degree `i + r`.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "total: 0 (zero module)".to_string();
        }
        let imax = self.max_index();
        let rmin = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let rmax = self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap();
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        let totals: Vec<String> = (0..=imax).map(|i| self.total(i).to_string()).collect();
        rows.push(("total:".to_string(), totals));
        for r in rmin..=rmax {
            let cells: Vec<String> = (0..=imax)
                .map(|i| {
                    let b = self.beta(i, i as i64 + r);
                    if b == 0 { ".".to_string() } else { b.to_string() }
                })
                .collect();
            rows.push((format!("{r}:"), cells));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap();
        let mut col_w = vec![1usize; imax + 1];
        for (_, cells) in &rows {
            for (i, c) in cells.iter().enumerate() {
                col_w[i] = col_w[i].max(c.len());
            }
        }
        let mut out = String::new();
        out.push_str(&" ".repeat(label_w));
        for (i, w) in col_w.iter().enumerate() {
            out.push_str(&format!(" {:>w$}", i, w = w));
        }
        out.push('\n');
        for (label, cells) in rows {
            out.push_str(&format!("{label:>label_w$}"));
            for (i, c) in cells.iter().enumerate() {
                out.push_str(&format!(" {:>w$}", c, w = col_w[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j), &n)| json!({"i": i, "j": j, "beta": n}))
            .collect();
        json!({"complete": self.complete, "cells": cells})
    }
}

/// Extends the cached minimal resolution of `m` to `max_len` steps (or to
/// completion) and returns the computed prefix.
pub fn minimal_free_resolution(m: &GradedModule, max_len: usize) -> FreeResolution {
    let mmin = m.minimalize();
    let ring = mmin.ring().clone();
    let (steps, complete) = mmin.with_resolution_cache(|cache| {
        while !cache.complete && cache.steps.len() < max_len {
            let (ambient, gens): (Vec<i64>, Vec<Column>) = if cache.steps.is_empty() {
                (
                    mmin.gen_degrees().to_vec(),
                    mmin.relations().columns().to_vec(),
                )
            } else {
                let last = cache.steps.last().unwrap();
                (
                    last.col_degrees().to_vec(),
                    ring.quotient_syzygies(last.col_degrees(), last.columns()),
                )
            };
            let kept = minimal_generator_indices(&ring, &ambient, &gens);
            if kept.is_empty() {
                cache.complete = true;
                break;
            }
            let mut cols: Vec<(i64, usize, Column)> = kept
                .iter()
                .map(|&j| {
                    let c = ring.nf_column(&gens[j]);
                    let d = crate::freemod::column_degree(&c, &ambient).unwrap();
                    (d, j, c)
                })
                .collect();
            cols.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            let matrix = PolyMatrix::from_columns(
                ring.field(),
                ring.nvars(),
                ambient,
                cols.into_iter().map(|(_, _, c)| c).collect(),
            );
            debug_assert!(matrix.is_homogeneous());
            cache.steps.push(matrix);
        }
        let truncated = cache.steps.len() > max_len;
        let steps = cache.steps[..cache.steps.len().min(max_len)].to_vec();
        (steps, cache.complete && !truncated)
    });
    let res = FreeResolution { module: m.clone(), minimal_module: mmin, steps, complete };
    debug_assert!(res.is_minimal());
    res
}

/// Minimal free resolution over the polynomial cover; always completes, in at
/// most `nvars` steps.
pub fn resolution_over_cover(m: &GradedModule) -> FreeResolution {
    let over = m.over_cover();
    let res = minimal_free_resolution(&over, over.ring().nvars() + 1);
    assert!(
        res.complete(),
        "resolution over the cover must terminate within nvars steps"
    );
    res
}

/// The i-th syzygy module: the image of `d_i`, presented by `d_{i+1}`.
pub fn syzygy_module(m: &GradedModule, i: usize) -> GradedModule {
    if i == 0 {
        return m.minimalize();
    }
    let res = minimal_free_resolution(m, i + 1);
    if res.length() < i {
        // resolution ended before level i
        return GradedModule::zero(m.ring().clone());
    }
    let gens = res.free_degrees(i);
    let rel = match res.step(i + 1) {
        Some(d) => d.clone(),
        None => PolyMatrix::zero(m.ring().field(), m.ring().nvars(), gens.clone(), vec![]),
    };
    GradedModule::new(m.ring().clone(), gens, rel)
}

/// Auslander transpose from the minimal presentation: the cokernel of the
/// dualized presentation differential.
pub fn transpose(m: &GradedModule) -> GradedModule {
    let mmin = m.minimalize();
    let a = mmin.relations();
    if a.ncols() == 0 {
        return GradedModule::zero(m.ring().clone());
    }
    let dual = a.dual_transpose();
    let gens: Vec<i64> = dual.row_degrees().to_vec();
    GradedModule::new(m.ring().clone(), gens, dual)
}

/// The dual module `Hom(M, R)` computed from the minimal presentation.
pub fn dual_module(m: &GradedModule) -> GradedModule {
    let r = GradedModule::ring_module(m.ring());
    hom_module(&m.minimalize(), &r).module.minimalize()
}

/// The cochain complex `Hom(F_i, N)` of a resolution, with generator grid
/// `(resolution generator j, N generator k)` flattened as `j * rank(N) + k`.
pub(crate) struct ExtCochain {
    pub modules: Vec<GradedModule>,
    /// `maps[i]`: `Hom(F_i, N) -> Hom(F_{i+1}, N)`
    pub maps: Vec<ModuleMap>,
}

pub(crate) fn ext_cochain(res: &FreeResolution, n: &GradedModule, max_i: usize) -> ExtCochain {
    let ring = n.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let n0 = n.rank_f0();
    let mut modules = Vec::new();
    for i in 0..=max_i {
        let fdegs = res.free_degrees(i);
        let free = GradedModule::free(ring.clone(), fdegs);
        modules.push(hom_module(&free, n).module);
    }
    let mut maps = Vec::new();
    for i in 0..max_i {
        let src = &modules[i];
        let tgt = &modules[i + 1];
        let r_next = res.free_degrees(i + 1).len();
        let mut cols: Vec<Column> = Vec::new();
        let r_i = res.free_degrees(i).len();
        for j in 0..r_i {
            for k in 0..n0 {
                let mut col = zero_column(field, nv, r_next * n0);
                if let Some(d) = res.step(i + 1) {
                    for jp in 0..r_next {
                        let e = d.entry(j, jp);
                        if !e.is_zero() {
                            col[jp * n0 + k] = ring.nf(e);
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
        maps.push(ModuleMap::new(src.clone(), tgt.clone(), 0, matrix));
    }
    ExtCochain { modules, maps }
}

/// `Ext^i_R(M, N)` for `0 <= i <= max_i`, via the minimal free resolution of
/// `M`: the homology of `Hom(F, N)` assembled with direct block matrices.
pub fn ext_modules(m: &GradedModule, n: &GradedModule, max_i: usize) -> Vec<GradedModule> {
    assert_eq!(m.ring(), n.ring(), "Ext across different rings");
    let res = minimal_free_resolution(m, max_i + 1);
    let cochain = ext_cochain(&res, n, max_i + 1);
    let mut out = Vec::new();
    for i in 0..=max_i {
        if cochain.modules[i].rank_f0() == 0 {
            out.push(GradedModule::zero(m.ring().clone()));
            continue;
        }
        let incoming = if i > 0 { Some(&cochain.maps[i - 1]) } else { None };
        let outgoing = Some(&cochain.maps[i]);
        let h = homology_subquotient(incoming, outgoing).module.minimalize();
        out.push(h);
    }
    out
}

/// `Tor_i^R(M, N)` for `0 <= i <= max_i`, via the minimal free resolution of
/// `M` tensored with `N`.
pub fn tor_modules(m: &GradedModule, n: &GradedModule, max_i: usize) -> Vec<GradedModule> {
    assert_eq!(m.ring(), n.ring(), "Tor across different rings");
    let ring = m.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let res = minimal_free_resolution(m, max_i + 1);
    let n0 = n.rank_f0();
    let mut chain_modules = Vec::new();
    for i in 0..=max_i + 1 {
        let free = GradedModule::free(ring.clone(), res.free_degrees(i));
        chain_modules.push(tensor_module(&free, n));
    }
    let mut chain_maps: Vec<ModuleMap> = Vec::new();
    for i in 1..=max_i + 1 {
        let src = &chain_modules[i];
        let tgt = &chain_modules[i - 1];
        let r_i = res.free_degrees(i).len();
        let r_prev = res.free_degrees(i - 1).len();
        let mut cols = Vec::new();
        for j in 0..r_i {
            for k in 0..n0 {
                let mut col = zero_column(field, nv, r_prev * n0);
                if let Some(d) = res.step(i) {
                    for jp in 0..r_prev {
                        let e = d.entry(jp, j);
                        if !e.is_zero() {
                            col[jp * n0 + k] = ring.nf(e);
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
        chain_maps.push(ModuleMap::new(src.clone(), tgt.clone(), 0, matrix));
    }
    let mut out = Vec::new();
    for i in 0..=max_i {
        if chain_modules[i].rank_f0() == 0 {
            out.push(GradedModule::zero(ring.clone()));
            continue;
        }
        // chain_maps[i]: C_{i+1} -> C_i is incoming; chain_maps[i-1]: C_i -> C_{i-1} outgoing
        let incoming = Some(&chain_maps[i]);
        let outgoing = if i > 0 { Some(&chain_maps[i - 1]) } else { None };
        let h = homology_subquotient(incoming, outgoing).module.minimalize();
        out.push(h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::module::{hilbert_equal, hilbert_equal_up_to_shift};
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

    #[test]
    fn residue_field_resolves_by_koszul() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        let res = minimal_free_resolution(&k, 5);
        assert!(res.complete());
        assert_eq!(res.length(), 2);
        let b = res.betti();
        assert_eq!(b.total(0), 1);
        assert_eq!(b.total(1), 2);
        assert_eq!(b.total(2), 1);
        assert_eq!(b.beta(2, 2), 1);
        assert!(res.is_minimal());
        assert!(res.audit_exactness());
    }

    #[test]
    fn periodic_resolution_over_hypersurface() {
        let h = hyper();
        let m = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let res = minimal_free_resolution(&m, 10);
        assert!(!res.complete());
        assert_eq!(res.length(), 10);
        let b = res.betti();
        for i in 0..=10 {
            assert_eq!(b.total(i), 1, "beta_{i} should be 1");
        }
        // differentials alternate x and y (up to scalar)
        let d1 = res.step(1).unwrap();
        let d2 = res.step(2).unwrap();
        assert_eq!(d1.entry(0, 0).num_terms(), 1);
        assert_eq!(d2.entry(0, 0).num_terms(), 1);
        assert_ne!(
            d1.entry(0, 0).terms().next().unwrap().0,
            d2.entry(0, 0).terms().next().unwrap().0
        );
        assert!(res.audit_exactness());
    }

    #[test]
    fn free_module_has_length_zero() {
        let s = poly_ring2();
        let f = GradedModule::free(s, vec![0, -1, 3]);
        let res = minimal_free_resolution(&f, 4);
        assert!(res.complete());
        assert_eq!(res.length(), 0);
    }

    #[test]
    fn first_syzygy_of_residue_field_is_maximal_ideal() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        let om0 = syzygy_module(&k, 0);
        assert!(hilbert_equal(&om0, &k, 0, 4));
        let om1 = syzygy_module(&k, 1);
        // m = (x, y): Hilbert function 0,2,3,4,...
        assert_eq!(om1.hilbert_range(0, 3), vec![0, 2, 3, 4]);
    }

    #[test]
    fn second_syzygy_periodicity_over_hypersurface() {
        let h = hyper();
        let m = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let om2 = syzygy_module(&m, 2);
        assert_eq!(hilbert_equal_up_to_shift(&om2, &m, 8), Some(-2));
    }

    #[test]
    fn transpose_of_free_is_zero() {
        let s = poly_ring2();
        let f = GradedModule::free(s.clone(), vec![0, 2]);
        assert!(transpose(&f).is_zero_module());
        let r = GradedModule::ring_module(&s);
        assert!(transpose(&r).is_zero_module());
    }

    #[test]
    fn transpose_of_residue_field_one_variable() {
        let s1 = QuotientRing::cover(f7(), vec!["x".into()]);
        let k = GradedModule::residue_field(&s1);
        let t = transpose(&k);
        assert_eq!(hilbert_equal_up_to_shift(&t, &k, 4), Some(-1));
    }

    #[test]
    fn transpose_swaps_branches_over_hypersurface() {
        let h = hyper();
        let mx = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let my = GradedModule::cyclic_quotient(&h, &[h.var_poly(1)]);
        let t = transpose(&mx);
        assert!(hilbert_equal_up_to_shift(&t, &my, 8).is_some());
    }

    #[test]
    fn ext_of_free_vanishes_positively() {
        let h = hyper();
        let f = GradedModule::free(h.clone(), vec![0, 1]);
        let n = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let exts = ext_modules(&f, &n, 3);
        assert!(!exts[0].is_zero_module());
        for e in &exts[1..] {
            assert!(e.is_zero_module());
        }
    }

    #[test]
    fn koszul_ext_dimensions_over_cover() {
        // Ext^i(S/(x,y), k) over F7[x,y] has dimension C(2,i)
        let s = poly_ring2();
        let m = GradedModule::cyclic_quotient(&s, &[s.var_poly(0), s.var_poly(1)]);
        let k = GradedModule::residue_field(&s);
        let exts = ext_modules(&m, &k, 3);
        let dims: Vec<usize> = exts
            .iter()
            .map(|e| e.hilbert_range(-4, 4).iter().sum())
            .collect();
        assert_eq!(dims, vec![1, 2, 1, 0]);
    }

    #[test]
    fn odd_ext_periodicity_over_hypersurface() {
        // Ext^{2i+1}(M, M) = M for M = R/(x) over R = F7[x,y]/(xy)
        let h = hyper();
        let m = GradedModule::cyclic_quotient(&h, &[h.var_poly(0)]);
        let exts = ext_modules(&m, &m, 5);
        for i in [1usize, 3, 5] {
            let e = &exts[i];
            assert!(
                hilbert_equal_up_to_shift(e, &m, 8).is_some(),
                "Ext^{i}(M,M) should match M up to shift"
            );
        }
    }

    #[test]
    fn tor_zero_is_tensor_and_koszul_tor_dims() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        let tors = tor_modules(&k, &k, 3);
        let dims: Vec<usize> = tors
            .iter()
            .map(|t| t.hilbert_range(-4, 4).iter().sum())
            .collect();
        assert_eq!(dims, vec![1, 2, 1, 0]);
        let t0 = &tors[0];
        let tens = tensor_module(&k, &k);
        assert!(hilbert_equal(t0, &tens, -2, 4));
    }

    #[test]
    fn transversal_tor_vanishes() {
        let s = poly_ring2();
        let mx = GradedModule::cyclic_quotient(&s, &[s.var_poly(0)]);
        let my = GradedModule::cyclic_quotient(&s, &[s.var_poly(1)]);
        let tors = tor_modules(&mx, &my, 1);
        assert!(tors[1].is_zero_module());
        assert!(!tors[0].is_zero_module());
    }

    #[test]
    fn resolution_over_cover_completes_for_quotient_module() {
        let h = hyper();
        let rh = GradedModule::ring_module(&h);
        let res = resolution_over_cover(&rh);
        assert!(res.complete());
        assert_eq!(res.length(), 1); // hypersurface: 0 -> S(-2) -> S
        assert_eq!(res.free_degrees(1), vec![2]);
    }

    #[test]
    fn betti_render_shape() {
        let s = poly_ring2();
        let k = GradedModule::residue_field(&s);
        let res = minimal_free_resolution(&k, 3);
        let grid = res.betti().render();
        assert!(grid.contains("total:"));
        assert!(grid.contains('0'));
        let j = res.betti().to_json();
        assert!(j["cells"].as_array().unwrap().len() >= 3);
    }
}
