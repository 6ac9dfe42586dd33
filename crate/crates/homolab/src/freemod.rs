//! Graded free modules and homogeneous matrices over them.

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// A graded free module, described by the internal degrees of its generators.
/// `generator_degrees[j] = d` means the j-th generator lives in degree `d`
/// (the module is a direct sum of twists `R(-d)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModule {
    generator_degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(generator_degrees: Vec<i64>) -> Self {
        FreeModule { generator_degrees }
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.generator_degrees
    }
}

/// A column vector with polynomial entries: one element of a free module.
pub type Column = Vec<Polynomial>;

pub fn column_is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(|p| p.is_zero())
}

pub fn column_add(a: &[Polynomial], b: &[Polynomial]) -> Column {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn column_sub(a: &[Polynomial], b: &[Polynomial]) -> Column {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn column_mul_term(v: &[Polynomial], m: &Monomial, c: u64) -> Column {
    v.iter().map(|p| p.mul_term(m, c)).collect()
}

pub fn column_mul_poly(v: &[Polynomial], f: &Polynomial) -> Column {
    v.iter().map(|p| p.mul(f)).collect()
}

pub fn zero_column(field: PrimeField, nvars: usize, rank: usize) -> Column {
    vec![Polynomial::zero(field, nvars); rank]
}

/// `Some(d)` if the column is homogeneous of internal degree `d` relative to
/// the row degrees (entry i nonzero implies deg + row_degs[i] = d), `None` if
/// mixed. A zero column reports `None` distinctly via `column_is_zero`.
pub fn column_degree(v: &[Polynomial], row_degs: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (p, &rd) in v.iter().zip(row_degs) {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree()? + rd;
        match deg {
            None => deg = Some(d),
            Some(existing) if existing == d => {}
            _ => return None,
        }
    }
    deg
}

/// A rectangular matrix of polynomials with graded row/column degrees,
/// stored column-major. Entry `(i, j)` must be zero or homogeneous of
/// degree `col_degrees[j] - row_degrees[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    field: PrimeField,
    nvars: usize,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    cols: Vec<Column>,
}

impl PolyMatrix {
    pub fn new(
        field: PrimeField,
        nvars: usize,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        cols: Vec<Column>,
    ) -> Self {
        assert_eq!(cols.len(), col_degrees.len(), "column count mismatch");
        for c in &cols {
            assert_eq!(c.len(), row_degrees.len(), "row count mismatch");
        }
        PolyMatrix { field, nvars, row_degrees, col_degrees, cols }
    }

    pub fn zero(
        field: PrimeField,
        nvars: usize,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
    ) -> Self {
        let cols = col_degrees
            .iter()
            .map(|_| zero_column(field, nvars, row_degrees.len()))
            .collect();
        Self::new(field, nvars, row_degrees, col_degrees, cols)
    }

    pub fn identity(field: PrimeField, nvars: usize, degs: &[i64]) -> Self {
        let mut m = Self::zero(field, nvars, degs.to_vec(), degs.to_vec());
        for i in 0..degs.len() {
            m.cols[i][i] = Polynomial::one(field, nvars);
        }
        m
    }

    /// Builds from columns, inferring column degrees from the row degrees.
    /// Panics if some column is inhomogeneous; zero columns take `fallback`
    /// degree (or 0).
    pub fn from_columns(
        field: PrimeField,
        nvars: usize,
        row_degrees: Vec<i64>,
        cols: Vec<Column>,
    ) -> Self {
        let col_degrees = cols
            .iter()
            .map(|c| {
                if column_is_zero(c) {
                    0
                } else {
                    column_degree(c, &row_degrees).expect("inhomogeneous column")
                }
            })
            .collect();
        Self::new(field, nvars, row_degrees, col_degrees, cols)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Polynomial) {
        self.cols[j][i] = p;
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| column_is_zero(c))
    }

    /// True iff every entry is zero or homogeneous of degree
    /// `col_degrees[j] - row_degrees[i]`.
    pub fn is_homogeneous(&self) -> bool {
        for (j, col) in self.cols.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                match p.homogeneous_degree() {
                    Some(d) if d == self.col_degrees[j] - self.row_degrees[i] => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Polynomial]) -> Column {
        assert_eq!(v.len(), self.ncols(), "matrix-vector dimension mismatch");
        let mut out = zero_column(self.field, self.nvars, self.nrows());
        for (j, f) in v.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let scaled = column_mul_poly(&self.cols[j], f);
            out = column_add(&out, &scaled);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.ncols(), other.nrows(), "matrix product dimension mismatch");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        PolyMatrix::new(
            self.field,
            self.nvars,
            self.row_degrees.clone(),
            other.col_degrees.clone(),
            cols,
        )
    }

    /// Transpose; row/column degrees are negated, matching duals of free modules.
    pub fn dual_transpose(&self) -> PolyMatrix {
        let mut cols = Vec::with_capacity(self.nrows());
        for i in 0..self.nrows() {
            cols.push((0..self.ncols()).map(|j| self.cols[j][i].clone()).collect());
        }
        PolyMatrix::new(
            self.field,
            self.nvars,
            self.col_degrees.iter().map(|d| -d).collect(),
            self.row_degrees.iter().map(|d| -d).collect(),
            cols,
        )
    }

    /// Horizontal concatenation (same row space).
    pub fn concat_cols(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.row_degrees, other.row_degrees, "row degree mismatch in concat");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        let mut col_degrees = self.col_degrees.clone();
        col_degrees.extend(&other.col_degrees);
        PolyMatrix::new(self.field, self.nvars, self.row_degrees.clone(), col_degrees, cols)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(&f).collect())
            .collect();
        PolyMatrix::new(
            self.field,
            self.nvars,
            self.row_degrees.clone(),
            self.col_degrees.clone(),
            cols,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn x() -> Polynomial {
        Polynomial::variable(f7(), 2, 0)
    }

    fn y() -> Polynomial {
        Polynomial::variable(f7(), 2, 1)
    }

    #[test]
    fn identity_apply_is_identity() {
        let id = PolyMatrix::identity(f7(), 2, &[0, 1]);
        let v = vec![x(), y().mul(&y())];
        assert_eq!(id.apply(&v), v);
    }

    #[test]
    fn zero_apply_is_zero() {
        let z = PolyMatrix::zero(f7(), 2, vec![0], vec![1, 1]);
        let v = vec![x(), y()];
        assert!(column_is_zero(&z.apply(&v)));
    }

    #[test]
    fn koszul_relation_column() {
        // [y, -x]^T applied to (1) gives (y, -x)
        let m = PolyMatrix::from_columns(f7(), 2, vec![1, 1], vec![vec![y(), x().neg()]]);
        let out = m.apply(&[Polynomial::one(f7(), 2)]);
        assert_eq!(out, vec![y(), x().neg()]);
        assert_eq!(m.col_degrees(), &[2]);
    }

    #[test]
    fn homogeneity_detection() {
        // [x  y] with row degree 0, col degrees (1,1) is homogeneous
        let good = PolyMatrix::new(f7(), 2, vec![0], vec![1, 1], vec![vec![x()], vec![y()]]);
        assert!(good.is_homogeneous());
        // [x + x^2] with col degree 1 is not
        let bad = PolyMatrix::new(
            f7(),
            2,
            vec![0],
            vec![1],
            vec![vec![x().add(&x().mul(&x()))]],
        );
        assert!(!bad.is_homogeneous());
        // a zero matrix is homogeneous whatever the degrees
        let z = PolyMatrix::zero(f7(), 2, vec![3], vec![-5]);
        assert!(z.is_homogeneous());
    }

    #[test]
    fn homogeneity_closed_under_product() {
        let a = PolyMatrix::new(f7(), 2, vec![0], vec![1, 1], vec![vec![x()], vec![y()]]);
        let b = PolyMatrix::new(
            f7(),
            2,
            vec![1, 1],
            vec![2],
            vec![vec![y(), x().neg()]],
        );
        let ab = a.compose(&b);
        assert!(ab.is_homogeneous());
        assert!(ab.is_zero()); // x*y - y*x = 0
    }
}
