//! Exact rational linear algebra.
//!
//! Dense row-major matrices over `BigRational`. Pivoting is deterministic
//! (columns left to right, first nonzero row top to bottom), so kernel bases
//! are reproducible across runs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bad rational literal {0:?}")]
    BadLiteral(String),
}

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q2(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, with an optional leading `-` or `−` (U+2212).
pub fn parse_scalar(s: &str) -> Result<Scalar, LinalgError> {
    let bad = || LinalgError::BadLiteral(s.to_string());
    let t = s.trim();
    let (neg, body) = if let Some(rest) = t.strip_prefix('−') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else {
        (false, t)
    };
    if body.is_empty() || body.starts_with('-') || body.starts_with('+') {
        return Err(bad());
    }
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let v = BigRational::new(n, d);
    Ok(if neg { -v } else { v })
}

/// Formats as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", format_scalar(&self[(r, c)]))?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(x: Scalar) -> Self {
        Mat { rows: 1, cols: 1, data: vec![x] }
    }

    /// Builds from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.iter().flat_map(|x| x.iter().map(|&v| q(v))).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self, LinalgError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        let r = rows.len();
        Ok(Mat { rows: r, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn column(v: Vec<Scalar>) -> Self {
        Mat { rows: v.len(), cols: 1, data: v }
    }

    /// Stacks column vectors side by side into a `dim x vecs.len()` matrix.
    pub fn from_columns(dim: usize, vecs: &[Mat]) -> Result<Self, LinalgError> {
        let mut m = Mat::zeros(dim, vecs.len());
        for (j, v) in vecs.iter().enumerate() {
            if v.rows != dim || v.cols != 1 {
                return Err(LinalgError::Shape(format!(
                    "vector {j} is {}x{}, expected {dim}x1",
                    v.rows, v.cols
                )));
            }
            for i in 0..dim {
                m[(i, j)] = v.data[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Mat {
        Mat::column((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        if k.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, rhs: &Mat) -> Result<(), LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Copies `src` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Mat) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols, "block out of range");
        for r in 0..src.rows {
            for c in 0..src.cols {
                self[(r0 + r, c0 + c)] = src[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut m = Mat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::Shape("hstack row mismatch".into()));
        }
        let mut m = Mat::zeros(self.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, rhs);
        Ok(m)
    }

    pub fn vstack(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != rhs.cols {
            return Err(LinalgError::Shape("vstack column mismatch".into()));
        }
        let mut m = Mat::zeros(self.rows + rhs.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, rhs);
        Ok(m)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(row, c)] * &factor;
                    m[(r, c)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Vec<Mat> {
        mat_kernel(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        solve_linear(self, &Mat::identity(self.rows)).ok().flatten()
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).expect("matrix add")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Kernel basis as column vectors, one per free column of the RREF.
pub fn mat_kernel(m: &Mat) -> Vec<Mat> {
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            Mat::column(v)
        })
        .collect()
}

/// Solves `a x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve_linear(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    if a.rows != b.rows {
        return Err(LinalgError::Shape(format!(
            "lhs has {} rows, rhs has {}",
            a.rows, b.rows
        )));
    }
    let aug = a.hstack(b)?;
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x[(p, j)] = r[(i, a.cols + j)].clone();
        }
    }
    Ok(Some(x))
}

/// Left radical of a bilinear form given by its Gram matrix:
/// all `c` with `cᵀ G = 0`.
pub fn bilinear_radical(pairing: &Mat) -> Vec<Mat> {
    mat_kernel(&pairing.transpose())
}

/// Whether `point + span(directions)` meets `span(subspace)`.
pub fn affine_meets_subspace(
    point: &Mat,
    directions: &[Mat],
    subspace: &[Mat],
) -> Result<bool, LinalgError> {
    if point.cols != 1 {
        return Err(LinalgError::Shape("point must be a column vector".into()));
    }
    let dim = point.rows;
    let d = Mat::from_columns(dim, directions)?;
    let s = Mat::from_columns(dim, subspace)?;
    // point + D t = S u  <=>  [D | -S] (t, u) = -point
    let a = d.hstack(&-&s)?;
    Ok(solve_linear(&a, &-point)?.is_some())
}

/// Rank of a family of column vectors of length `dim`.
pub fn span_rank(dim: usize, vecs: &[Mat]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Mat::from_columns(dim, vecs).expect("span_rank").rank()
}

pub fn span_contains(dim: usize, basis: &[Mat], v: &Mat) -> bool {
    let a = Mat::from_columns(dim, basis).expect("span_contains");
    solve_linear(&a, v).expect("span_contains").is_some()
}

/// Equality of spans.
pub fn same_span(dim: usize, a: &[Mat], b: &[Mat]) -> bool {
    let ra = span_rank(dim, a);
    let rb = span_rank(dim, b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(dim, &all) == ra
}

/// Keeps the vectors that are independent of everything before them.
pub fn independent_subset(dim: usize, vecs: &[Mat]) -> Vec<Mat> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_columns(dim, vecs).expect("independent_subset");
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|p| vecs[p].clone()).collect()
}

/// Coordinates of `v` in the (independent) family `basis`, if it lies in the span.
pub fn coordinates(dim: usize, basis: &[Mat], v: &Mat) -> Option<Vec<Scalar>> {
    let a = Mat::from_columns(dim, basis).expect("coordinates");
    solve_linear(&a, v).expect("coordinates").map(Mat::into_entries)
}

/// Generalised binomial coefficient `binom(d, n)` for any integer `d`.
pub fn binomial(d: i64, n: u32) -> Scalar {
    let mut acc = Scalar::one();
    for k in 0..n as i64 {
        acc = acc * q(d - k) / q(k + 1);
    }
    acc
}

pub fn abs_scalar(x: &Scalar) -> Scalar {
    x.abs()
}
