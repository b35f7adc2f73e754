//! Exact rational scalars and dense echelon-form linear algebra.
//!
//! Everything downstream (pairing matrices, pushforwards, subring closure)
//! runs on these primitives. Coefficients are arbitrary-precision rationals,
//! kept in canonical form (reduced fraction, positive denominator) by
//! construction; pivoting is deterministic (first nonzero column, rows in
//! input order) so every echelon basis the tool reports is reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar from a numerator/denominator pair.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// True when the scalar has denominator 1.
pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

/// Parses `"num"` or `"num/den"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad integer `{t}`")))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}

/// Renders a scalar as `num` or `num/den`.
pub fn format_scalar(s: &Scalar) -> String {
    if is_integer(s) {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub echelon: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with the given column count and no rows.
    pub fn empty(cols: usize) -> Self {
        QMatrix::zeros(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stack: {} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul: {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "apply_row: vector {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[j] += vi * a;
                }
            }
        }
        Ok(out)
    }

    /// Inverse via Gauss–Jordan on the augmented matrix, `None` if singular.
    pub fn invert(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let r = rref(&aug);
        if r.rank < n || !(0..n).all(|i| r.pivots.get(i) == Some(&i)) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.echelon.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon form with deterministic pivoting: columns are scanned
/// left to right and the first remaining row with a nonzero entry is used.
pub fn rref(m: &QMatrix) -> Rref {
    let mut e = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..e.cols {
        if pivot_row == e.rows {
            break;
        }
        let Some(src) = (pivot_row..e.rows).find(|&r| !e.get(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..e.cols {
                let a = e.get(src, c).clone();
                let b = e.get(pivot_row, c).clone();
                e.set(src, c, b);
                e.set(pivot_row, c, a);
            }
        }
        let inv = e.get(pivot_row, col).recip();
        for c in col..e.cols {
            let v = e.get(pivot_row, c) * &inv;
            e.set(pivot_row, c, v);
        }
        for r in 0..e.rows {
            if r == pivot_row || e.get(r, col).is_zero() {
                continue;
            }
            let factor = e.get(r, col).clone();
            for c in col..e.cols {
                let v = e.get(r, c) - &factor * e.get(pivot_row, c);
                e.set(r, c, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    Rref {
        echelon: e,
        rank: pivots.len(),
        pivots,
    }
}

/// Echelonized basis of the rowspan, zero rows dropped.
pub fn row_basis(m: &QMatrix) -> QMatrix {
    let r = rref(m);
    let mut rows = Vec::with_capacity(r.rank);
    for i in 0..r.rank {
        rows.push(r.echelon.row(i).to_vec());
    }
    QMatrix::from_rows(rows).unwrap_or_else(|_| QMatrix::empty(m.cols))
}

fn pivot_columns_of_echelon(basis: &QMatrix) -> Vec<usize> {
    basis
        .iter_rows()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("zero basis row"))
        .collect()
}

/// Coordinates of `v` over `basis_rows` (which must be in reduced echelon
/// form with no zero rows), or `None` when `v` lies outside the rowspan.
pub fn coords_in_span(basis_rows: &QMatrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if v.len() != basis_rows.cols() {
        return Err(Error::DimensionMismatch(format!(
            "coords_in_span: vector {} vs {} columns",
            v.len(),
            basis_rows.cols()
        )));
    }
    let pivots = pivot_columns_of_echelon(basis_rows);
    let coords: Vec<Scalar> = pivots.iter().map(|&c| v[c].clone()).collect();
    let mut residual = v.to_vec();
    for (i, coord) in coords.iter().enumerate() {
        if coord.is_zero() {
            continue;
        }
        for (c, rv) in basis_rows.row(i).iter().enumerate() {
            if !rv.is_zero() {
                residual[c] -= coord * rv;
            }
        }
    }
    if residual.iter().all(Scalar::is_zero) {
        Ok(Some(coords))
    } else {
        Ok(None)
    }
}

/// Echelonized basis of `rowspan(a) + rowspan(b)`.
pub fn subspace_sum(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "subspace_sum: {} vs {} columns",
            a.cols(),
            b.cols()
        )));
    }
    Ok(row_basis(&a.stack(b)?))
}

/// Solves `x · a = rhs` for a row vector `x`, `None` when inconsistent.
/// When the rows of `a` are independent the solution is unique.
pub fn solve_row_combination(a: &QMatrix, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if rhs.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "solve_row_combination: vector {} vs {} columns",
            rhs.len(),
            a.cols()
        )));
    }
    // Transpose to the column picture: aᵀ · xᵀ = rhsᵀ, eliminate on [aᵀ | rhsᵀ].
    let mut aug = QMatrix::zeros(a.cols(), a.rows() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(j, i, a.get(i, j).clone());
        }
    }
    for (j, v) in rhs.iter().enumerate() {
        aug.set(j, a.rows(), v.clone());
    }
    let r = rref(&aug);
    if r.pivots.contains(&a.rows()) {
        return Ok(None); // rhs column became a pivot: inconsistent
    }
    let mut x = vec![Scalar::zero(); a.rows()];
    for (row, &col) in r.pivots.iter().enumerate() {
        x[col] = r.echelon.get(row, a.rows()).clone();
    }
    Ok(Some(x))
}

/// Audits a coefficient list for integrality: returns the entries with
/// denominator ≠ 1 (empty means the list is integral).
pub fn non_integral<'a, I: IntoIterator<Item = &'a Scalar>>(coeffs: I) -> Vec<Scalar> {
    coeffs
        .into_iter()
        .filter(|s| !is_integer(s))
        .cloned()
        .collect()
}
