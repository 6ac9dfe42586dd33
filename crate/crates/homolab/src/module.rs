//! Finitely generated graded modules over a quotient ring, given by
//! presentations, together with the abelian-category toolkit: kernels,
//! cokernels, Hom, tensor, minimal presentations and map diagnostics.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::PrimeField;
use crate::freemod::{column_degree, column_is_zero, zero_column, Column, PolyMatrix};
use crate::groebner::GroebnerBasis;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

pub(crate) struct ResolutionCache {
    /// `steps[i]` is the differential from homological degree `i+1` to `i`
    /// of the minimal free resolution of the minimalized module.
    pub steps: Vec<PolyMatrix>,
    pub complete: bool,
}

struct ModuleInner {
    gen_degrees: Vec<i64>,
    relations: PolyMatrix,
    minimal: OnceLock<GradedModule>,
    relations_gb: OnceLock<GroebnerBasis>,
    resolution: Mutex<ResolutionCache>,
}

/// A finitely generated graded module `M = coker(A : F1 -> F0)` over a
/// quotient ring, entries kept in normal form modulo the defining ideal.
/// Cheap to clone; caches are shared.
#[derive(Clone)]
pub struct GradedModule {
    ring: QuotientRing,
    inner: Arc<ModuleInner>,
}

impl GradedModule {
    pub fn new(ring: QuotientRing, gen_degrees: Vec<i64>, relations: PolyMatrix) -> Self {
        assert_eq!(
            relations.row_degrees(),
            &gen_degrees[..],
            "presentation rows must match generator degrees"
        );
        let relations = relations.map_entries(|p| ring.nf(p));
        assert!(relations.is_homogeneous(), "presentation must be homogeneous");
        GradedModule {
            ring,
            inner: Arc::new(ModuleInner {
                gen_degrees,
                relations,
                minimal: OnceLock::new(),
                relations_gb: OnceLock::new(),
                resolution: Mutex::new(ResolutionCache { steps: Vec::new(), complete: false }),
            }),
        }
    }

    /// Free module with the given generator degrees.
    pub fn free(ring: QuotientRing, gen_degrees: Vec<i64>) -> Self {
        let field = ring.field();
        let nv = ring.nvars();
        let rel = PolyMatrix::zero(field, nv, gen_degrees.clone(), vec![]);
        Self::new(ring, gen_degrees, rel)
    }

    pub fn zero(ring: QuotientRing) -> Self {
        Self::free(ring, vec![])
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &QuotientRing) -> Self {
        Self::free(ring.clone(), vec![0])
    }

    /// `R/(f_1, ..., f_k)` as a module.
    pub fn cyclic_quotient(ring: &QuotientRing, gens: &[Polynomial]) -> Self {
        let cols: Vec<Column> = gens
            .iter()
            .map(|g| vec![ring.nf(g)])
            .filter(|c| !column_is_zero(c))
            .collect();
        let rel = PolyMatrix::from_columns(ring.field(), ring.nvars(), vec![0], cols);
        Self::new(ring.clone(), vec![0], rel)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &QuotientRing) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var_poly(i)).collect();
        Self::cyclic_quotient(ring, &vars)
    }

    /// The submodule of a free module generated by homogeneous columns,
    /// presented by its quotient-ring syzygies.
    pub fn submodule_of_free(ring: &QuotientRing, ambient_degs: &[i64], gens: &[Column]) -> Self {
        subquotient(ring, ambient_degs, gens.to_vec(), Vec::new()).module
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.inner.gen_degrees
    }

    pub fn rank_f0(&self) -> usize {
        self.inner.gen_degrees.len()
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.inner.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.inner.relations.ncols() == 0
    }

    /// Groebner basis (over the cover) of `im(A) + I.F0`: membership in the
    /// relation submodule.
    pub(crate) fn relations_gb(&self) -> &GroebnerBasis {
        self.inner.relations_gb.get_or_init(|| {
            self.ring
                .membership_basis(&self.inner.gen_degrees, self.inner.relations.columns())
        })
    }

    /// True iff the class of `v` in `M` is zero.
    pub fn class_is_zero(&self, v: &[Polynomial]) -> bool {
        self.relations_gb().contains(v)
    }

    pub(crate) fn with_resolution_cache<T>(
        &self,
        f: impl FnOnce(&mut ResolutionCache) -> T,
    ) -> T {
        let mut guard = self.inner.resolution.lock().unwrap();
        f(&mut guard)
    }

    /// The same module viewed over the polynomial cover: the defining
    /// relations of the ring join the presentation.
    pub fn over_cover(&self) -> GradedModule {
        if self.ring.is_cover() {
            return self.clone();
        }
        let cover = self.ring.cover_ring();
        let mut cols = self.inner.relations.columns().to_vec();
        cols.extend(self.ring.ideal_block(self.rank_f0()));
        let rel = PolyMatrix::from_columns(
            cover.field(),
            cover.nvars(),
            self.inner.gen_degrees.clone(),
            cols,
        );
        GradedModule::new(cover, self.inner.gen_degrees.clone(), rel)
    }

    /// Internal twist: `twist(a)` is `M(a)`, with generator degrees lowered
    /// by `a` (so `M(a)_d = M_{a+d}`).
    pub fn twist(&self, a: i64) -> GradedModule {
        let degs: Vec<i64> = self.inner.gen_degrees.iter().map(|d| d - a).collect();
        let rel = PolyMatrix::new(
            self.ring.field(),
            self.ring.nvars(),
            degs.clone(),
            self.inner.relations.col_degrees().iter().map(|d| d - a).collect(),
            self.inner.relations.columns().to_vec(),
        );
        GradedModule::new(self.ring.clone(), degs, rel)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        let mut degs = self.inner.gen_degrees.clone();
        degs.extend_from_slice(&other.inner.gen_degrees);
        let (a, b) = (self.rank_f0(), other.rank_f0());
        let mut cols: Vec<Column> = Vec::new();
        let mut col_degs: Vec<i64> = Vec::new();
        for (j, c) in self.inner.relations.columns().iter().enumerate() {
            let mut col = c.clone();
            col.extend(zero_column(self.ring.field(), self.ring.nvars(), b));
            cols.push(col);
            col_degs.push(self.inner.relations.col_degrees()[j]);
        }
        for (j, c) in other.inner.relations.columns().iter().enumerate() {
            let mut col = zero_column(self.ring.field(), self.ring.nvars(), a);
            col.extend(c.iter().cloned());
            cols.push(col);
            col_degs.push(other.inner.relations.col_degrees()[j]);
        }
        let rel = PolyMatrix::new(self.ring.field(), self.ring.nvars(), degs.clone(), col_degs, cols);
        GradedModule::new(self.ring.clone(), degs, rel)
    }

    /// Minimal presentation: prunes unit entries until every relation entry
    /// has positive degree. Cached; idempotent.
    pub fn minimalize(&self) -> GradedModule {
        self.inner
            .minimal
            .get_or_init(|| minimalize_with_maps(self).module)
            .clone()
    }

    pub fn is_zero_module(&self) -> bool {
        self.minimalize().rank_f0() == 0
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimalize().rank_f0()
    }

    /// Dimension over k of the degree-`d` graded piece.
    pub fn hilbert_function(&self, d: i64) -> usize {
        let slice = DegreeSlice::new(&self.ring, &self.inner.gen_degrees, d);
        if slice.coords.is_empty() {
            return 0;
        }
        let mut space = RowSpace::new(self.ring.field(), slice.coords.len());
        let rel = &self.inner.relations;
        for (j, col) in rel.columns().iter().enumerate() {
            let cd = rel.col_degrees()[j];
            if cd > d {
                continue;
            }
            for m in self.ring.standard_monomials(d - cd).iter() {
                let scaled: Column = col.iter().map(|p| self.ring.nf(&p.mul_term(m, 1))).collect();
                space.insert(slice.coordinates(&scaled));
            }
        }
        slice.coords.len() - space.rank()
    }

    pub fn hilbert_range(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.hilbert_function(d)).collect()
    }

    /// Least degree with a nonzero graded piece, or None for the zero module,
    /// searched through the generator degrees.
    pub fn min_nonzero_degree(&self) -> Option<i64> {
        let min = *self.inner.gen_degrees.iter().min()?;
        let max = *self.inner.gen_degrees.iter().max()?;
        (min..=max).find(|&d| self.hilbert_function(d) > 0)
    }

    /// True iff `f * M = 0` for every listed ring element.
    pub fn is_annihilated_by(&self, elems: &[Polynomial]) -> bool {
        for f in elems {
            for i in 0..self.rank_f0() {
                let mut v = zero_column(self.ring.field(), self.ring.nvars(), self.rank_f0());
                v[i] = self.ring.nf(f);
                if !self.class_is_zero(&v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn describe(&self) -> String {
        format!(
            "coker({}x{}) gens {:?} over {}",
            self.rank_f0(),
            self.inner.relations.ncols(),
            self.inner.gen_degrees,
            self.ring.describe()
        )
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Result of minimalization with the comparison maps to and from the
/// original presentation.
pub struct Minimalization {
    pub module: GradedModule,
    /// generator-level matrix of the projection `M -> Mmin`
    pub to_min: PolyMatrix,
    /// generator-level matrix of the inclusion-like section `Mmin -> M`
    pub from_min: PolyMatrix,
}

pub fn minimalize_with_maps(m: &GradedModule) -> Minimalization {
    let ring = m.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let orig_n = m.rank_f0();

    let mut degs: Vec<i64> = m.gen_degrees().to_vec();
    let mut rels: Vec<Column> = m.relations().columns().to_vec();
    let mut rel_degs: Vec<i64> = m.relations().col_degrees().to_vec();
    // to_cur[orig]: expression of original generator over current generators
    let mut to_cur: Vec<Column> = (0..orig_n)
        .map(|i| {
            let mut c = zero_column(field, nv, orig_n);
            c[i] = Polynomial::one(field, nv);
            c
        })
        .collect();
    // from_cur[cur]: expression of current generator over original generators
    let mut from_cur: Vec<Column> = to_cur.clone();

    loop {
        let mut unit: Option<(usize, usize, u64)> = None;
        'scan: for (j, col) in rels.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if !p.is_zero() && p.homogeneous_degree() == Some(0) {
                    let c = p.terms().next().unwrap().1;
                    unit = Some((i, j, c));
                    break 'scan;
                }
            }
        }
        let Some((i, j, c)) = unit else { break };
        let cinv = field.inv(c);
        // e_i = -c^{-1} * sum_{k != i} rels[j][k] e_k in the cokernel
        let subst: Column = rels[j]
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if k == i {
                    Polynomial::zero(field, nv)
                } else {
                    ring.nf(&p.scale(cinv).neg())
                }
            })
            .collect();
        // rewrite the other relations
        let pivot = rels.remove(j);
        rel_degs.remove(j);
        for col in rels.iter_mut() {
            let coeff = col[i].clone();
            if !coeff.is_zero() {
                for (k, s) in subst.iter().enumerate() {
                    if k != i && !s.is_zero() {
                        col[k] = ring.nf(&col[k].add(&coeff.mul(s)));
                    }
                }
            }
        }
        let _ = pivot;
        // rewrite the running change-of-generators maps
        for t in to_cur.iter_mut() {
            let coeff = t[i].clone();
            if !coeff.is_zero() {
                for (k, s) in subst.iter().enumerate() {
                    if k != i && !s.is_zero() {
                        t[k] = ring.nf(&t[k].add(&coeff.mul(s)));
                    }
                }
                t[i] = Polynomial::zero(field, nv);
            }
        }
        // drop row i everywhere
        degs.remove(i);
        for col in rels.iter_mut() {
            col.remove(i);
        }
        for t in to_cur.iter_mut() {
            t.remove(i);
        }
        from_cur.remove(i);
    }

    // drop zero relation columns
    let mut kept_cols = Vec::new();
    let mut kept_degs = Vec::new();
    for (j, col) in rels.into_iter().enumerate() {
        if !column_is_zero(&col) {
            kept_cols.push(col);
            kept_degs.push(rel_degs[j]);
        }
    }
    let rel = PolyMatrix::new(field, nv, degs.clone(), kept_degs, kept_cols);
    let module = GradedModule::new(ring.clone(), degs.clone(), rel);
    let to_min = PolyMatrix::new(
        field,
        nv,
        degs.clone(),
        m.gen_degrees().to_vec(),
        to_cur,
    );
    let from_min = PolyMatrix::new(
        field,
        nv,
        m.gen_degrees().to_vec(),
        degs,
        from_cur,
    );
    Minimalization { module, to_min, from_min }
}

/// A degree-preserving (up to a fixed shift) map of graded modules, given on
/// generator level. Construction checks well-definedness: the matrix must
/// carry source relations into the target relation submodule.
#[derive(Clone)]
pub struct ModuleMap {
    source: GradedModule,
    target: GradedModule,
    shift: i64,
    matrix: PolyMatrix,
}

impl ModuleMap {
    pub fn new(source: GradedModule, target: GradedModule, shift: i64, matrix: PolyMatrix) -> Self {
        assert_eq!(source.ring(), target.ring(), "map across different rings");
        let matrix = matrix.map_entries(|p| source.ring().nf(p));
        assert_eq!(matrix.nrows(), target.rank_f0(), "map matrix row count");
        assert_eq!(matrix.ncols(), source.rank_f0(), "map matrix column count");
        assert_eq!(matrix.row_degrees(), target.gen_degrees(), "map matrix row degrees");
        let expected: Vec<i64> = source.gen_degrees().iter().map(|d| d + shift).collect();
        assert_eq!(matrix.col_degrees(), &expected[..], "map matrix column degrees");
        assert!(matrix.is_homogeneous(), "map matrix must be homogeneous");
        // well-definedness: each source relation maps into the target relations
        for col in source.relations().columns() {
            let image = matrix.apply(col);
            assert!(
                target.class_is_zero(&image),
                "ill-defined module map: relation image does not vanish"
            );
        }
        ModuleMap { source, target, shift, matrix }
    }

    pub fn zero_map(source: GradedModule, target: GradedModule, shift: i64) -> Self {
        let field = source.ring().field();
        let nv = source.ring().nvars();
        let matrix = PolyMatrix::zero(
            field,
            nv,
            target.gen_degrees().to_vec(),
            source.gen_degrees().iter().map(|d| d + shift).collect(),
        );
        Self::new(source, target, shift, matrix)
    }

    pub fn identity(m: &GradedModule) -> Self {
        let matrix = PolyMatrix::identity(m.ring().field(), m.ring().nvars(), m.gen_degrees());
        Self::new(m.clone(), m.clone(), 0, matrix)
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(
            other.target.gen_degrees(),
            self.source.gen_degrees(),
            "composition degree mismatch"
        );
        let raw = self.matrix.compose(&other.matrix);
        // shift bookkeeping: re-tag column degrees with the combined shift
        let shift = self.shift + other.shift;
        let matrix = PolyMatrix::new(
            raw.field(),
            raw.nvars(),
            self.target.gen_degrees().to_vec(),
            other.source.gen_degrees().iter().map(|d| d + shift).collect(),
            raw.columns().to_vec(),
        );
        ModuleMap::new(other.source.clone(), self.target.clone(), shift, matrix)
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| self.target.class_is_zero(c))
    }

    pub fn scale(&self, c: u64) -> ModuleMap {
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            self.shift,
            self.matrix.map_entries(|p| p.scale(c)),
        )
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.shift, other.shift, "adding maps of different shifts");
        let cols: Vec<Column> = self
            .matrix
            .columns()
            .iter()
            .zip(other.matrix.columns())
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        let matrix = PolyMatrix::new(
            self.matrix.field(),
            self.matrix.nvars(),
            self.matrix.row_degrees().to_vec(),
            self.matrix.col_degrees().to_vec(),
            cols,
        );
        ModuleMap::new(self.source.clone(), self.target.clone(), self.shift, matrix)
    }

    /// Kernel as a module together with its inclusion into the source.
    pub fn kernel(&self) -> (GradedModule, ModuleMap) {
        let ring = self.source.ring().clone();
        // solutions c over the source generators with (matrix c) in im(target relations)
        let u = if self.is_zero_map_matrix() {
            identity_columns(&ring, self.source.rank_f0())
        } else {
            ring.syzygies_modulo(
                self.target.gen_degrees(),
                self.matrix.columns(),
                self.target.relations().columns(),
            )
        };
        // shift back to source-ambient degrees
        let sub = subquotient(
            &ring,
            self.source.gen_degrees(),
            u,
            self.source.relations().columns().to_vec(),
        );
        let inclusion_matrix = PolyMatrix::from_columns(
            ring.field(),
            ring.nvars(),
            self.source.gen_degrees().to_vec(),
            sub.gens.clone(),
        );
        let inclusion = ModuleMap::new(
            sub.module.clone(),
            self.source.clone(),
            0,
            inclusion_matrix,
        );
        (sub.module, inclusion)
    }

    fn is_zero_map_matrix(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn cokernel(&self) -> GradedModule {
        let rel = self.matrix.concat_cols(self.target.relations());
        GradedModule::new(self.target.ring().clone(), self.target.gen_degrees().to_vec(), rel)
    }

    pub fn diagnostics(&self) -> MapDiagnostics {
        let is_zero = self.is_zero_map();
        let (ker, _) = self.kernel();
        let is_injective = ker.is_zero_module();
        let is_surjective = self.cokernel().is_zero_module();
        MapDiagnostics {
            is_zero,
            is_injective,
            is_surjective,
            is_isomorphism: is_injective && is_surjective,
        }
    }
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "map {}x{} shift {} : {} -> {}",
            self.matrix.nrows(),
            self.matrix.ncols(),
            self.shift,
            self.source.describe(),
            self.target.describe()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MapDiagnostics {
    pub is_zero: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    pub is_isomorphism: bool,
}

fn identity_columns(ring: &QuotientRing, n: usize) -> Vec<Column> {
    (0..n)
        .map(|i| {
            let mut c = zero_column(ring.field(), ring.nvars(), n);
            c[i] = ring.one_poly();
            c
        })
        .collect()
}

/// A subquotient `(span(gens) + span(modulo)) / span(modulo)` of a free
/// module, normalized to a presentation whose generators are the classes of
/// `gens`, with an `express` operation writing ambient vectors in those
/// generators.
pub struct Subquotient {
    ring: QuotientRing,
    pub ambient_degs: Vec<i64>,
    pub gens: Vec<Column>,
    pub modulo: Vec<Column>,
    pub module: GradedModule,
    express_gb: OnceLock<GroebnerBasis>,
}

pub fn subquotient(
    ring: &QuotientRing,
    ambient_degs: &[i64],
    gens: Vec<Column>,
    modulo: Vec<Column>,
) -> Subquotient {
    let gens: Vec<Column> = gens
        .into_iter()
        .map(|c| ring.nf_column(&c))
        .filter(|c| !column_is_zero(c))
        .collect();
    let modulo: Vec<Column> = modulo
        .into_iter()
        .map(|c| ring.nf_column(&c))
        .filter(|c| !column_is_zero(c))
        .collect();
    let gen_degs: Vec<i64> = gens
        .iter()
        .map(|c| column_degree(c, ambient_degs).expect("inhomogeneous subquotient generator"))
        .collect();
    let rel_cols = ring.syzygies_modulo(ambient_degs, &gens, &modulo);
    let rel = PolyMatrix::from_columns(ring.field(), ring.nvars(), gen_degs.clone(), rel_cols);
    let module = GradedModule::new(ring.clone(), gen_degs, rel);
    Subquotient {
        ring: ring.clone(),
        ambient_degs: ambient_degs.to_vec(),
        gens,
        modulo,
        module,
        express_gb: OnceLock::new(),
    }
}

impl Subquotient {
    /// Coordinates of the class of `v` over the subquotient generators, if
    /// `v` lies in `span(gens) + span(modulo)`.
    pub fn express(&self, v: &[Polynomial]) -> Option<Column> {
        let gb = self.express_gb.get_or_init(|| {
            let mut combined = self.gens.clone();
            combined.extend(self.modulo.iter().cloned());
            self.ring.membership_basis(&self.ambient_degs, &combined)
        });
        let full = gb.lift(v)?;
        Some(full[..self.gens.len()].iter().map(|p| self.ring.nf(p)).collect())
    }
}

/// `Hom_R(M, N)` as a graded module, with witnesses realizing each generator
/// as an explicit generator-level matrix `F0(M) -> F0(N)`.
pub struct HomModule {
    source: GradedModule,
    target: GradedModule,
    pub module: GradedModule,
    witnesses: Vec<PolyMatrix>,
    expresser: HomExpress,
}

enum HomExpress {
    /// Source is free: coordinates are the flattened matrix entries.
    FreeSource,
    General(Subquotient),
}

pub fn hom_module(m: &GradedModule, n: &GradedModule) -> HomModule {
    assert_eq!(m.ring(), n.ring(), "Hom across different rings");
    let ring = m.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let a = m.rank_f0();
    let n0 = n.rank_f0();
    let r = m.gen_degrees();
    let s = n.gen_degrees();
    let flat = |i: usize, k: usize| i * n0 + k;
    let ambient_degs: Vec<i64> = (0..a)
        .flat_map(|i| (0..n0).map(move |k| (i, k)))
        .map(|(i, k)| s[k] - r[i])
        .collect();

    let witness_of = |col: &Column| -> PolyMatrix {
        // unflatten an ambient vector into a generator-level matrix
        let mut cols: Vec<Column> = vec![zero_column(field, nv, n0); a];
        for i in 0..a {
            for k in 0..n0 {
                cols[i][k] = col[flat(i, k)].clone();
            }
        }
        let shift = column_degree(col, &ambient_degs).unwrap_or(0);
        PolyMatrix::new(
            field,
            nv,
            s.to_vec(),
            r.iter().map(|d| d + shift).collect(),
            cols,
        )
    };

    if m.is_free_presentation() {
        // Hom(F0, N) = N^a with the grid of generators (i, k)
        let mut rel_cols: Vec<Column> = Vec::new();
        let mut rel_degs: Vec<i64> = Vec::new();
        for i in 0..a {
            for (l, bcol) in n.relations().columns().iter().enumerate() {
                let mut col = zero_column(field, nv, a * n0);
                for k in 0..n0 {
                    col[flat(i, k)] = bcol[k].clone();
                }
                rel_cols.push(col);
                rel_degs.push(n.relations().col_degrees()[l] - r[i]);
            }
        }
        let rel = PolyMatrix::new(field, nv, ambient_degs.clone(), rel_degs, rel_cols);
        let module = GradedModule::new(ring.clone(), ambient_degs.clone(), rel);
        let witnesses = (0..a * n0)
            .map(|g| {
                let mut col = zero_column(field, nv, a * n0);
                col[g] = Polynomial::one(field, nv);
                witness_of(&col)
            })
            .collect();
        return HomModule {
            source: m.clone(),
            target: n.clone(),
            module,
            witnesses,
            expresser: HomExpress::FreeSource,
        };
    }

    // general source: solve for matrices carrying relations into relations
    let am = m.relations();
    let b = am.ncols();
    let c_degs = am.col_degrees();
    // big-linear-map columns live in R^(b*n0): block j, row k
    let big_flat = |j: usize, k: usize| j * n0 + k;
    let big_degs: Vec<i64> = (0..b)
        .flat_map(|j| (0..n0).map(move |k| (j, k)))
        .map(|(j, k)| s[k] - c_degs[j])
        .collect();
    let mut l_cols: Vec<Column> = Vec::new();
    for i in 0..a {
        for _k in 0..n0 {
            l_cols.push(zero_column(field, nv, b * n0));
        }
    }
    for i in 0..a {
        for k in 0..n0 {
            let col = &mut l_cols[flat(i, k)];
            for j in 0..b {
                col[big_flat(j, k)] = am.entry(i, j).clone();
            }
        }
    }
    let mut modulo: Vec<Column> = Vec::new();
    for j in 0..b {
        for bcol in n.relations().columns() {
            let mut col = zero_column(field, nv, b * n0);
            for k in 0..n0 {
                col[big_flat(j, k)] = bcol[k].clone();
            }
            modulo.push(col);
        }
    }
    // solutions = flattened matrices satisfying the factoring condition
    let u = ring.syzygies_modulo(&big_degs, &l_cols, &modulo);
    // maps factoring through the target relations are zero in Hom
    let mut w_cols: Vec<Column> = Vec::new();
    for i in 0..a {
        for bcol in n.relations().columns() {
            let mut col = zero_column(field, nv, a * n0);
            for k in 0..n0 {
                col[flat(i, k)] = bcol[k].clone();
            }
            w_cols.push(col);
        }
    }
    let sub = subquotient(&ring, &ambient_degs, u, w_cols);
    let witnesses = sub.gens.iter().map(|c| witness_of(c)).collect();
    HomModule {
        source: m.clone(),
        target: n.clone(),
        module: sub.module.clone(),
        witnesses,
        expresser: HomExpress::General(sub),
    }
}

impl HomModule {
    pub fn witnesses(&self) -> &[PolyMatrix] {
        &self.witnesses
    }

    /// Coordinates of a generator-level matrix as an element of the Hom
    /// module, if it is a well-defined homomorphism class.
    pub fn express(&self, mat: &PolyMatrix) -> Option<Column> {
        let a = self.source.rank_f0();
        let n0 = self.target.rank_f0();
        let mut flatv = zero_column(self.module.ring().field(), self.module.ring().nvars(), a * n0);
        for i in 0..a {
            for k in 0..n0 {
                flatv[i * n0 + k] = self.module.ring().nf(mat.entry(k, i));
            }
        }
        match &self.expresser {
            HomExpress::FreeSource => Some(flatv),
            HomExpress::General(sub) => sub.express(&flatv),
        }
    }

    /// Realizes a homogeneous element (coordinates over the Hom generators)
    /// as an actual module map.
    pub fn eval(&self, coords: &[Polynomial]) -> ModuleMap {
        assert_eq!(coords.len(), self.module.rank_f0(), "Hom coordinate length");
        let ring = self.module.ring();
        let field = ring.field();
        let nv = ring.nvars();
        let shift = coords
            .iter()
            .zip(self.module.gen_degrees())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, d)| c.homogeneous_degree().expect("homogeneous Hom coordinates") + d)
            .next()
            .unwrap_or(0);
        let s = self.target.gen_degrees();
        let r = self.source.gen_degrees();
        let mut acc = PolyMatrix::zero(
            field,
            nv,
            s.to_vec(),
            r.iter().map(|d| d + shift).collect(),
        );
        for (g, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = &self.witnesses[g];
            for j in 0..acc.ncols() {
                for i in 0..acc.nrows() {
                    let add = w.entry(i, j).mul(c);
                    let cur = acc.entry(i, j).add(&add);
                    acc.set_entry(i, j, ring.nf(&cur));
                }
            }
        }
        ModuleMap::new(self.source.clone(), self.target.clone(), shift, acc)
    }

    /// Evaluation of the g-th generator as a module map.
    pub fn eval_generator(&self, g: usize) -> ModuleMap {
        let ring = self.module.ring();
        let mut coords = zero_column(ring.field(), ring.nvars(), self.module.rank_f0());
        coords[g] = ring.one_poly();
        self.eval(&coords)
    }
}

/// `M tensor_R N`, presented on the grid of generator pairs, flat index
/// `i * rank(N) + j`.
pub fn tensor_module(m: &GradedModule, n: &GradedModule) -> GradedModule {
    assert_eq!(m.ring(), n.ring(), "tensor across different rings");
    let ring = m.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let a = m.rank_f0();
    let bn = n.rank_f0();
    let degs: Vec<i64> = (0..a)
        .flat_map(|i| (0..bn).map(move |j| (i, j)))
        .map(|(i, j)| m.gen_degrees()[i] + n.gen_degrees()[j])
        .collect();
    let flat = |i: usize, j: usize| i * bn + j;
    let mut cols: Vec<Column> = Vec::new();
    let mut col_degs: Vec<i64> = Vec::new();
    for (c, acol) in m.relations().columns().iter().enumerate() {
        for j in 0..bn {
            let mut col = zero_column(field, nv, a * bn);
            for i in 0..a {
                col[flat(i, j)] = acol[i].clone();
            }
            cols.push(col);
            col_degs.push(m.relations().col_degrees()[c] + n.gen_degrees()[j]);
        }
    }
    for i in 0..a {
        for (l, bcol) in n.relations().columns().iter().enumerate() {
            let mut col = zero_column(field, nv, a * bn);
            for j in 0..bn {
                col[flat(i, j)] = bcol[j].clone();
            }
            cols.push(col);
            col_degs.push(n.relations().col_degrees()[l] + m.gen_degrees()[i]);
        }
    }
    let rel = PolyMatrix::new(field, nv, degs.clone(), col_degs, cols);
    GradedModule::new(ring, degs, rel)
}

/// Functorial `f tensor id_C` on the tensor grid presentation.
pub fn tensor_map(f: &ModuleMap, c: &GradedModule) -> ModuleMap {
    let src = tensor_module(f.source(), c);
    let tgt = tensor_module(f.target(), c);
    let ring = src.ring().clone();
    let field = ring.field();
    let nv = ring.nvars();
    let cn = c.rank_f0();
    let a_s = f.source().rank_f0();
    let a_t = f.target().rank_f0();
    let mut cols: Vec<Column> = Vec::new();
    for i in 0..a_s {
        for j in 0..cn {
            let mut col = zero_column(field, nv, a_t * cn);
            for t in 0..a_t {
                col[t * cn + j] = f.matrix().entry(t, i).clone();
            }
            cols.push(col);
        }
    }
    let matrix = PolyMatrix::new(
        field,
        nv,
        tgt.gen_degrees().to_vec(),
        src.gen_degrees().iter().map(|d| d + f.shift()).collect(),
        cols,
    );
    ModuleMap::new(src, tgt, f.shift(), matrix)
}

/// Homology `ker(g) / im(f)` at the middle of `P --f--> Q --g--> T`, as a
/// subquotient of `Q`'s generator space (with expressible witnesses).
pub fn homology_subquotient(f: Option<&ModuleMap>, g: Option<&ModuleMap>) -> Subquotient {
    let q = match (f, g) {
        (Some(f), _) => f.target().clone(),
        (_, Some(g)) => g.source().clone(),
        _ => panic!("homology needs at least one adjacent map"),
    };
    let ring = q.ring().clone();
    let u = match g {
        None => identity_columns(&ring, q.rank_f0()),
        Some(g) if g.matrix().is_zero() => identity_columns(&ring, q.rank_f0()),
        Some(g) => ring.syzygies_modulo(
            g.target().gen_degrees(),
            g.matrix().columns(),
            g.target().relations().columns(),
        ),
    };
    let mut modulo: Vec<Column> = q.relations().columns().to_vec();
    if let Some(f) = f {
        modulo.extend(f.matrix().columns().iter().cloned());
    }
    subquotient(&ring, q.gen_degrees(), u, modulo)
}

/// Equality of Hilbert functions over an explicit degree window.
pub fn hilbert_equal(a: &GradedModule, b: &GradedModule, lo: i64, hi: i64) -> bool {
    (lo..=hi).all(|d| a.hilbert_function(d) == b.hilbert_function(d))
}

/// Equality of Hilbert functions up to a single degree shift, aligned at the
/// minimal nonzero degree; returns the shift `t` with `HF_a(d) = HF_b(d - t)`
/// when it exists over the window.
pub fn hilbert_equal_up_to_shift(
    a: &GradedModule,
    b: &GradedModule,
    width: i64,
) -> Option<i64> {
    match (a.min_nonzero_degree(), b.min_nonzero_degree()) {
        (None, None) => Some(0),
        (Some(da), Some(db)) => {
            let t = db - da;
            let ok = (da..=da + width).all(|d| a.hilbert_function(d) == b.hilbert_function(d + t));
            ok.then_some(t)
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// degreewise linear algebra over the coefficient field

/// Basis of the degree-`d` slice of a free `R`-module: coordinates are pairs
/// (component, standard monomial).
pub struct DegreeSlice {
    pub coords: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl DegreeSlice {
    pub fn new(ring: &QuotientRing, ambient_degs: &[i64], d: i64) -> Self {
        let mut coords = Vec::new();
        for (i, &gd) in ambient_degs.iter().enumerate() {
            for m in ring.standard_monomials(d - gd).iter() {
                coords.push((i, m.clone()));
            }
        }
        let index = coords
            .iter()
            .enumerate()
            .map(|(pos, c)| (c.clone(), pos))
            .collect();
        DegreeSlice { coords, index }
    }

    /// Dense coordinate vector of an NF-reduced column of the right degree.
    pub fn coordinates(&self, col: &[Polynomial]) -> Vec<u64> {
        let mut v = vec![0u64; self.coords.len()];
        for (i, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                let pos = *self
                    .index
                    .get(&(i, m.clone()))
                    .expect("column term outside the degree slice (not NF-reduced?)");
                v[pos] = c;
            }
        }
        v
    }
}

/// Incremental row space over `F_p` with Gaussian elimination.
pub struct RowSpace {
    field: PrimeField,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: PrimeField, _width: usize) -> Self {
        RowSpace { field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let c = v[p];
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = self.field.sub(*vi, self.field.mul(c, *ri));
                }
            }
        }
        v
    }

    /// Inserts; returns true when the vector was independent.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(v[p]);
                let norm: Vec<u64> = v.iter().map(|&c| self.field.mul(c, inv)).collect();
                self.rows.push(norm);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// Indices of a minimal generating subset of homogeneous columns (graded
/// Nakayama: a generator is redundant iff its class dies in `U/mU`).
pub fn minimal_generator_indices(
    ring: &QuotientRing,
    ambient_degs: &[i64],
    cols: &[Column],
) -> Vec<usize> {
    let mut by_degree: Vec<(i64, usize)> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if column_is_zero(c) {
            continue;
        }
        let d = column_degree(c, ambient_degs).expect("inhomogeneous generator column");
        by_degree.push((d, j));
    }
    by_degree.sort();
    let mut kept: Vec<usize> = Vec::new();
    let mut pos = 0;
    while pos < by_degree.len() {
        let d = by_degree[pos].0;
        let mut batch = Vec::new();
        while pos < by_degree.len() && by_degree[pos].0 == d {
            batch.push(by_degree[pos].1);
            pos += 1;
        }
        let slice = DegreeSlice::new(ring, ambient_degs, d);
        let mut space = RowSpace::new(ring.field(), slice.coords.len());
        // multiples of strictly-lower-degree kept generators span (mU)_d
        for &k in &kept {
            let kd = column_degree(&cols[k], ambient_degs).unwrap();
            if kd >= d {
                continue;
            }
            for m in ring.standard_monomials(d - kd).iter() {
                let scaled: Column =
                    cols[k].iter().map(|p| ring.nf(&p.mul_term(m, 1))).collect();
                space.insert(slice.coordinates(&scaled));
            }
        }
        for j in batch {
            let v = slice.coordinates(&ring.nf_column(&cols[j]));
            if space.insert(v) {
                kept.push(j);
            }
        }
    }
    kept.sort();
    kept
}
