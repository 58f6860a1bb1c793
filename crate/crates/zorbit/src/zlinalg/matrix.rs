//! Dense integer and rational matrices and vectors.
//!
//! These are deliberately small-scale types: the dimensions in this crate are
//! the ambient dimension of the geometry (single digits in practice), so
//! everything is row-major `Vec` storage with exact arithmetic and no attempt
//! at blocking or sparsity.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::scalar::{gcd, int, lcm, parse_rat, Int, ParseRatError, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntVector {
    data: Vec<Int>,
}

impl IntVector {
    pub fn new(data: Vec<Int>) -> Self {
        IntVector { data }
    }

    pub fn zeros(n: usize) -> Self {
        IntVector { data: vec![Int::zero(); n] }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        IntVector { data: v.iter().map(|&x| int(x)).collect() }
    }

    /// `i`-th standard basis vector of `Z^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut v = Self::zeros(n);
        v.data[i] = Int::one();
        v
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn at(&self, i: usize) -> &Int {
        &self.data[i]
    }

    pub fn set(&mut self, i: usize, v: Int) {
        self.data[i] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Int> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Int> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.len(), other.len(), "dot of mismatched lengths");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector::new(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.len(), other.len());
        IntVector::new(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Int) -> IntVector {
        IntVector::new(self.data.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector::new(self.data.iter().map(|a| -a).collect())
    }

    /// Gcd of the entries, nonnegative; 0 only for the zero vector.
    pub fn content(&self) -> Int {
        self.data.iter().fold(Int::zero(), |g, x| gcd(&g, x))
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector::new(self.data.iter().map(|x| Rat::from(x.clone())).collect())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatVector {
    data: Vec<Rat>,
}

impl RatVector {
    pub fn new(data: Vec<Rat>) -> Self {
        RatVector { data }
    }

    pub fn zeros(n: usize) -> Self {
        RatVector { data: vec![Rat::zero(); n] }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut v = Self::zeros(n);
        v.data[i] = Rat::one();
        v
    }

    pub fn from_strs(v: &[&str]) -> Result<Self, ParseRatError> {
        Ok(RatVector { data: v.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>()? })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn at(&self, i: usize) -> &Rat {
        &self.data[i]
    }

    pub fn set(&mut self, i: usize, v: Rat) {
        self.data[i] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rat> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Rat> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &RatVector) -> Rat {
        assert_eq!(self.len(), other.len(), "dot of mismatched lengths");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector::new(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len());
        RatVector::new(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatVector {
        RatVector::new(self.data.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector::new(self.data.iter().map(|a| -a).collect())
    }

    /// Positive lcm of the denominators (1 for the empty vector).
    pub fn lcm_denoms(&self) -> Int {
        self.data.iter().fold(Int::one(), |l, x| lcm(&l, x.denom()))
    }

    /// Writes `v = w / d` with `w` integral and `d = lcm_denoms(v) > 0`.
    pub fn clear_denominators(&self) -> (IntVector, Int) {
        let d = self.lcm_denoms();
        let w = IntVector::new(
            self.data.iter().map(|x| (x * Rat::from(d.clone())).to_integer()).collect(),
        );
        (w, d)
    }

    /// Exact integrality test plus conversion.
    pub fn to_int(&self) -> Option<IntVector> {
        if self.data.iter().all(|x| x.denom().is_one()) {
            Some(IntVector::new(self.data.iter().map(|x| x.numer().clone()).collect()))
        } else {
            None
        }
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>, // row-major
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_row_vectors(rows: &[IntVector], cols: usize) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.as_slice().iter().cloned()).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        assert!(i < self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> IntVector {
        IntVector::new(self.row(i).to_vec())
    }

    pub fn col_vector(&self, j: usize) -> IntVector {
        assert!(j < self.cols);
        IntVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self.at(a, j).clone();
            let y = self.at(b, j).clone();
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    /// Row operation `row[dst] += c * row[src]`.
    pub fn add_mul_row(&mut self, dst: usize, src: usize, c: &Int) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let v = self.at(dst, j) + c * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.at(i, a).clone();
            let y = self.at(i, b).clone();
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    /// Column operation `col[dst] += c * col[src]`.
    pub fn add_mul_col(&mut self, dst: usize, src: usize, c: &Int) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let v = self.at(i, dst) + c * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        IntVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Copy of the rows in `range`.
    pub fn take_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        assert!(range.end <= self.rows);
        IntMatrix {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    /// Sum of squares of the entries.
    pub fn frobenius_sq(&self) -> Int {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from(x.clone())).collect(),
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_row_vectors(rows: &[RatVector], cols: usize) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.as_slice().iter().cloned()).collect(),
        }
    }

    pub fn from_strs(rows: &[&[&str]]) -> Result<Self, ParseRatError> {
        let parsed: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok(Self::from_rows(parsed))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        assert!(i < self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RatVector {
        RatVector::new(self.row(i).to_vec())
    }

    pub fn col_vector(&self, j: usize) -> RatVector {
        assert!(j < self.cols);
        RatVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        RatVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Glues `other` to the right of `self`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.extend(other.row(i).iter().cloned());
            rows.push(row);
        }
        RatMatrix::from_rows(rows)
    }

    pub fn take_rows(&self, range: std::ops::Range<usize>) -> RatMatrix {
        assert!(range.end <= self.rows);
        RatMatrix {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn take_cols(&self, range: std::ops::Range<usize>) -> RatMatrix {
        assert!(range.end <= self.cols);
        let mut out = RatMatrix::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.set(i, jj, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Positive lcm of all entry denominators.
    pub fn lcm_denoms(&self) -> Int {
        self.data.iter().fold(Int::one(), |l, x| lcm(&l, x.denom()))
    }

    /// Writes `A = M / d` with `M` integral and `d = lcm_denoms(A)`.
    pub fn clear_denominators(&self) -> (IntMatrix, Int) {
        let d = self.lcm_denoms();
        let dr = Rat::from(d.clone());
        let m = IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| (x * &dr).to_integer()).collect(),
        };
        (m, d)
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.denom().is_one()) {
            Some(IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.numer().clone()).collect(),
            })
        } else {
            None
        }
    }

    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// column of each nonzero row.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, j).is_zero()) else {
                continue;
            };
            // swap pivot row into place and normalize it to leading 1
            if p != r {
                for jj in 0..m.cols {
                    let x = m.at(p, jj).clone();
                    let y = m.at(r, jj).clone();
                    m.set(p, jj, y);
                    m.set(r, jj, x);
                }
            }
            let inv = m.at(r, j).clone();
            for jj in 0..m.cols {
                let v = m.at(r, jj) / &inv;
                m.set(r, jj, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, j).is_zero() {
                    let c = m.at(i, j).clone();
                    for jj in 0..m.cols {
                        let v = m.at(i, jj) - &c * m.at(r, jj);
                        m.set(i, jj, v);
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows form a basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, f);
            }
            rows.push(v);
        }
        let mut out = RatMatrix::from_rows(rows);
        if out.rows == 0 {
            out.cols = self.cols;
        }
        out
    }

    /// Any exact solution `X` of `A X = B`, or `None` if inconsistent.
    pub fn solve_right(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, b.rows, "shape mismatch in solve_right");
        let (r, pivots) = self.hstack(b).rref();
        // a pivot in the B block means an inconsistent row
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.at(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut m = self.clone();
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.at(i, k).is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                for j in 0..n {
                    let x = m.at(p, j).clone();
                    let y = m.at(k, j).clone();
                    m.set(p, j, y);
                    m.set(k, j, x);
                }
                det = -det;
            }
            det *= m.at(k, k);
            let inv = m.at(k, k).clone();
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let c = m.at(i, k) / &inv;
                for j in k..n {
                    let v = m.at(i, j) - &c * m.at(k, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn test_int_det_small() {
        assert_eq!(IntMatrix::from_i64(&[&[2]]).det(), int(2));
        assert_eq!(IntMatrix::from_i64(&[&[1, -1], &[2, -3]]).det(), int(-1));
        assert_eq!(
            IntMatrix::from_i64(&[&[2, 0, 1], &[1, 1, 0], &[3, 1, 2]]).det(),
            int(2)
        );
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).det(), int(0));
        // zero leading pivot forces a row swap
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), int(-1));
    }

    #[test]
    fn test_det_matches_rational_det() {
        // cross-check Bareiss against plain Gaussian elimination
        let mut state = 88172645463325252u64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for _ in 0..200 {
            let a = IntMatrix::from_rows(
                (0..4).map(|_| (0..4).map(|_| int(rnd())).collect()).collect(),
            );
            assert_eq!(Rat::from(a.det()), a.to_rat().det());
        }
    }

    #[test]
    fn test_mul_identity() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        assert_eq!(&a * &IntMatrix::identity(2), a);
        assert_eq!(&IntMatrix::identity(2) * &a, a);
    }

    #[test]
    fn test_rref_and_rank() {
        let a = RatMatrix::from_strs(&[&["1", "2", "3"], &["2", "4", "6"], &["0", "1", "1"]])
            .unwrap();
        assert_eq!(a.rank(), 2);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert!(r.is_zero_row(2));
    }

    #[test]
    fn test_nullspace() {
        let a = RatMatrix::from_strs(&[&["1", "1", "-1"]]).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.rows(), 2);
        for i in 0..ns.rows() {
            assert!(a.mul_vec(&ns.row_vector(i)).is_zero());
        }
        // full-rank square matrix has trivial kernel
        let b = RatMatrix::from_strs(&[&["1", "2"], &["0", "1"]]).unwrap();
        assert_eq!(b.nullspace().rows(), 0);
        assert_eq!(b.nullspace().cols(), 2);
    }

    #[test]
    fn test_solve_right() {
        let a = RatMatrix::from_strs(&[&["2", "0"], &["1", "1"]]).unwrap();
        let b = RatMatrix::from_strs(&[&["1"], &["1"]]).unwrap();
        let x = a.solve_right(&b).unwrap();
        assert_eq!(&a * &x, b);
        assert_eq!(*x.at(0, 0), rat(1, 2));

        // inconsistent system
        let a = RatMatrix::from_strs(&[&["1", "1"], &["2", "2"]]).unwrap();
        let b = RatMatrix::from_strs(&[&["1"], &["3"]]).unwrap();
        assert!(a.solve_right(&b).is_none());
    }

    #[test]
    fn test_clear_denominators() {
        let v = RatVector::from_strs(&["2/3", "0", "1"]).unwrap();
        let (w, d) = v.clear_denominators();
        assert_eq!(d, int(3));
        assert_eq!(w, IntVector::from_i64(&[2, 0, 3]));
    }

    #[test]
    fn test_content() {
        assert_eq!(IntVector::from_i64(&[6, -4, 10]).content(), int(2));
        assert_eq!(IntVector::from_i64(&[0, 0]).content(), int(0));
        assert_eq!(IntVector::from_i64(&[0, -7]).content(), int(7));
    }

    #[test]
    fn test_take_and_stack() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(a.take_rows(1..3), IntMatrix::from_i64(&[&[3, 4], &[5, 6]]));
        let b = a.take_rows(0..1).vstack(&a.take_rows(2..3));
        assert_eq!(b, IntMatrix::from_i64(&[&[1, 2], &[5, 6]]));
    }
}
