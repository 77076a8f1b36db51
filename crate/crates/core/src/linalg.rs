//! Dense matrices and vectors over a [`Semifield`].

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semifield::{MaxPlus, Scalar, Semifield};

/// Column vector over `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<S: Semifield = MaxPlus> {
    entries: Vec<Scalar>,
    _semifield: PhantomData<S>,
}

/// Row-major dense matrix over `S`; both dimensions are at least one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S: Semifield = MaxPlus> {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    _semifield: PhantomData<S>,
}

impl<S: Semifield> Vector<S> {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        entries.iter().try_for_each(S::validate)?;
        Ok(Self::from_vec_unchecked(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Scalar>) -> Self {
        Vector {
            entries,
            _semifield: PhantomData,
        }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec_unchecked(vec![Scalar::Zero; dim])
    }

    /// The all-`𝟙` vector.
    pub fn ones(dim: usize) -> Self {
        Self::from_vec_unchecked(vec![S::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// No `𝟘` components.
    pub fn is_regular(&self) -> bool {
        self.entries.iter().all(Scalar::is_finite)
    }

    fn check_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::shape(op, (self.dim(), 1), (other.dim(), 1)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other, "vector add")?;
        Ok(self.zip_with(other, S::add))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_dim(other, "vector meet")?;
        Ok(self.zip_with(other, S::meet))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        Self::from_vec_unchecked(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, alpha: &Scalar) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|a| S::mul(alpha, a)).collect())
    }

    /// Entry-wise inversion with `𝟘` kept as `𝟘`; the result is read as the
    /// row vector `x⁻`.
    pub fn conj(&self) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(S::conj).collect())
    }

    /// `xᵀy = ⊕ᵢ xᵢyᵢ`.
    pub fn dot(&self, other: &Self) -> Result<Scalar> {
        self.check_dim(other, "dot")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Scalar::Zero, |acc, (a, b)| S::add(&acc, &S::mul(a, b))))
    }

    /// `x⁻y`.
    pub fn conj_dot(&self, other: &Self) -> Result<Scalar> {
        self.conj().dot(other)
    }

    /// `⊕ᵢ xᵢ`, i.e. `𝟏ᵀx`.
    pub fn sum(&self) -> Scalar {
        self.entries.iter().fold(Scalar::Zero, |acc, a| S::add(&acc, a))
    }

    /// Outer product `x yᵀ`.
    pub fn outer(&self, other: &Self) -> Matrix<S> {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(S::mul(a, b));
            }
        }
        Matrix::from_parts_unchecked(self.dim(), other.dim(), entries)
    }

    /// Entry-wise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| S::le(a, b))
    }

    pub fn as_column(&self) -> Matrix<S> {
        Matrix::from_parts_unchecked(self.dim(), 1, self.entries.clone())
    }
}

impl<S: Semifield> std::ops::Index<usize> for Vector<S> {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl<S: Semifield> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.entries)
    }
}

impl<S: Semifield> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[Scalar]) -> fmt::Result {
    f.write_str("[")?;
    for (k, v) in row.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

fn parse_entries(s: &str) -> Result<Vec<Scalar>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Scalar>()
                .map_err(|e| Error::Validation(e.to_string()))
        })
        .collect()
}

/// Whitespace or comma separated entries, e.g. `"1 -inf 3/2"`.
impl<S: Semifield> FromStr for Vector<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_entries(s.trim().trim_start_matches('[').trim_end_matches(']'))?)
    }
}

impl<S: Semifield> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::EmptyMatrix);
        }
        entries.iter().try_for_each(S::validate)?;
        Ok(Self::from_parts_unchecked(rows, cols, entries))
    }

    pub(crate) fn from_parts_unchecked(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        Matrix {
            rows,
            cols,
            entries,
            _semifield: PhantomData,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::EmptyMatrix);
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn from_columns(columns: &[Vector<S>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vector::dim);
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(Error::EmptyMatrix);
        }
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts_unchecked(rows, cols, vec![Scalar::Zero; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector<S> {
        Vector::from_vec_unchecked(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector::from_vec_unchecked((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> impl Iterator<Item = Vector<S>> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Columns at the given indices, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self> {
        let cols: Vec<_> = indices.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(&cols)
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// No zero rows.
    pub fn is_row_regular(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().any(Scalar::is_finite))
    }

    /// No zero columns.
    pub fn is_column_regular(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).any(|i| self.get(i, j).is_finite()))
    }

    /// Row- and column-regular.
    pub fn is_regular(&self) -> bool {
        self.is_row_regular() && self.is_column_regular()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::shape("matrix add", self.shape(), other.shape()));
        }
        Ok(Self::from_parts_unchecked(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| S::add(a, b))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape("matrix product", self.shape(), other.shape()));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::Zero;
                for k in 0..self.cols {
                    acc = S::add(&acc, &S::mul(self.get(i, k), other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Self::from_parts_unchecked(self.rows, other.cols, entries))
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &Vector<S>) -> Result<Vector<S>> {
        if self.cols != x.dim() {
            return Err(Error::shape("matrix-vector product", self.shape(), (x.dim(), 1)));
        }
        Ok(Vector::from_vec_unchecked(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.iter())
                        .fold(Scalar::Zero, |acc, (a, b)| S::add(&acc, &S::mul(a, b)))
                })
                .collect(),
        ))
    }

    /// `yᵀ A`, returned as a vector of length `cols`.
    pub fn left_mul_vec(&self, y: &Vector<S>) -> Result<Vector<S>> {
        if self.rows != y.dim() {
            return Err(Error::shape("vector-matrix product", (1, y.dim()), self.shape()));
        }
        Ok(Vector::from_vec_unchecked(
            (0..self.cols)
                .map(|j| {
                    (0..self.rows).fold(Scalar::Zero, |acc, i| {
                        S::add(&acc, &S::mul(&y[i], self.get(i, j)))
                    })
                })
                .collect(),
        ))
    }

    pub fn scale(&self, alpha: &Scalar) -> Self {
        Self::from_parts_unchecked(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| S::mul(alpha, a)).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self::from_parts_unchecked(self.cols, self.rows, entries)
    }

    /// Multiplicative conjugate transpose `A⁻`.
    pub fn conj_transpose(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::AllZeroMatrix);
        }
        let t = self.transpose();
        Ok(Self::from_parts_unchecked(
            t.rows,
            t.cols,
            t.entries.iter().map(S::conj).collect(),
        ))
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).fold(Scalar::Zero, |acc, i| S::add(&acc, self.get(i, i))))
    }

    pub fn power(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `Tr(A) = tr A ⊕ tr A² ⊕ … ⊕ tr Aⁿ`.
    pub fn trace_closure(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut power = self.clone();
        let mut acc = power.trace()?;
        for _ in 1..self.rows {
            power = power.mul(self)?;
            acc = S::add(&acc, &power.trace()?);
        }
        Ok(acc)
    }

    /// `A* = I ⊕ A ⊕ … ⊕ Aⁿ⁻¹`, defined when `Tr(A) <= 𝟙`.
    pub fn kleene_star(&self) -> Result<Self> {
        let trace = self.trace_closure()?;
        if S::lt(&S::one(), &trace) {
            return Err(Error::SpectralConditionViolated { trace });
        }
        let mut power = Self::identity(self.rows);
        let mut acc = power.clone();
        for _ in 1..self.rows {
            power = power.mul(self)?;
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Entry-wise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| S::le(a, b))
    }
}

impl<S: Semifield> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_row(f, self.row(i))?;
        }
        f.write_str("]")
    }
}

impl<S: Semifield> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rows separated by `;`, entries by whitespace or commas:
/// `"2 -inf; 4 1"`.
impl<S: Semifield> FromStr for Matrix<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| parse_entries(r.trim().trim_start_matches('[').trim_end_matches(']')))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

pub fn mat_add<S: Semifield>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.add(b)
}

pub fn mat_mul<S: Semifield>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.mul(b)
}

pub fn conj_transpose<S: Semifield>(a: &Matrix<S>) -> Result<Matrix<S>> {
    a.conj_transpose()
}

pub fn trace_closure<S: Semifield>(a: &Matrix<S>) -> Result<Scalar> {
    a.trace_closure()
}

pub fn kleene_star<S: Semifield>(a: &Matrix<S>) -> Result<Matrix<S>> {
    a.kleene_star()
}

/// The dependence indicator `δ(A, b) = (A (b⁻A)⁻)⁻ b`, evaluated literally.
///
/// For regular `b` and row-regular `A` it equals `𝟙` exactly when `b` is a
/// linear combination of the columns of `A`. When `b` has `𝟘` components the
/// conjugate transposes drop those rows and the indicator can read `𝟙` for
/// an independent `b`; use [`in_span`] for an exact test.
pub fn delta<S: Semifield>(a: &Matrix<S>, b: &Vector<S>) -> Result<Scalar> {
    if a.is_zero() {
        return Err(Error::AllZeroMatrix);
    }
    if b.is_zero() {
        return Err(Error::ZeroVector);
    }
    if a.rows() != b.dim() {
        return Err(Error::shape("delta", a.shape(), (b.dim(), 1)));
    }
    let coeffs = a.left_mul_vec(&b.conj())?.conj();
    let image = a.mul_vec(&coeffs)?;
    image.conj_dot(b)
}

/// Greatest `v` with `A v <= b` (the residual `A \ b`).
///
/// A column of `A` that is finite in a row where `b` is `𝟘` gets coefficient
/// `𝟘`; an all-`𝟘` column also gets `𝟘`, as it contributes nothing.
pub fn residual<S: Semifield>(a: &Matrix<S>, b: &Vector<S>) -> Result<Vector<S>> {
    if a.rows() != b.dim() {
        return Err(Error::shape("residual", a.shape(), (b.dim(), 1)));
    }
    let coeffs = (0..a.cols())
        .map(|j| {
            let mut best: Option<Scalar> = None;
            for i in 0..a.rows() {
                let aij = a.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                let bound = S::mul(&b[i], &S::conj(aij));
                best = Some(match best {
                    None => bound,
                    Some(cur) => S::meet(&cur, &bound),
                });
            }
            best.unwrap_or(Scalar::Zero)
        })
        .collect();
    Ok(Vector::from_vec_unchecked(coeffs))
}

/// Whether `b` is a linear combination (coefficients may be `𝟘`) of the
/// columns of `a`.
pub fn in_span<S: Semifield>(a: &Matrix<S>, b: &Vector<S>) -> Result<bool> {
    let v = residual(a, b)?;
    Ok(a.mul_vec(&v)? == *b)
}

/// `a = λ b` for some finite `λ`.
pub fn collinear<S: Semifield>(a: &Vector<S>, b: &Vector<S>) -> bool {
    if a.dim() != b.dim() || a.is_zero() {
        return false;
    }
    let mut ratio: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b.iter()) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let r = S::mul(x, &S::conj(y));
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    Some(_) => return false,
                }
            }
            _ => return false,
        }
    }
    true
}

/// Drops columns that are linear combinations of the others.
///
/// Exact multiples of an earlier column go first; the remaining columns are
/// then scanned left to right, each tested against every other column still
/// retained. Returns the kept columns and their indices in `columns`.
pub fn reduce_to_independent<S: Semifield>(
    columns: &Matrix<S>,
) -> Result<(Matrix<S>, Vec<usize>)> {
    let cols: Vec<Vector<S>> = columns.columns().collect();
    if let Some(j) = cols.iter().position(Vector::is_zero) {
        return Err(Error::ZeroColumn(j));
    }

    let mut kept: Vec<usize> = Vec::with_capacity(cols.len());
    for (j, c) in cols.iter().enumerate() {
        if !kept.iter().any(|&k| collinear(c, &cols[k])) {
            kept.push(j);
        }
    }

    let mut pos = 0;
    while pos < kept.len() {
        if kept.len() > 1 {
            let others: Vec<Vector<S>> = kept
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &k)| cols[k].clone())
                .collect();
            let others = Matrix::from_columns(&others)?;
            if in_span(&others, &cols[kept[pos]])? {
                kept.remove(pos);
                continue;
            }
        }
        pos += 1;
    }

    Ok((columns.select_columns(&kept)?, kept))
}
