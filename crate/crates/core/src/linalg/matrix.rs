use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Dimensions are fixed at construction; only entries may change.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "row {count} has wrong length");
            data.extend(row);
            count += 1;
        }
        Self {
            rows: count,
            cols,
            data,
        }
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect()),
        )
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "vector length does not match rows");
        let mut out = vec![BigInt::zero(); self.cols];
        for (xi, row) in x.iter().zip(self.row_iter()) {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += xi * a;
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        IntMatrix::from_rows(
            self.cols + other.cols,
            self.row_iter()
                .zip(other.row_iter())
                .map(|(a, b)| a.iter().chain(b).cloned().collect()),
        )
    }

    /// Kronecker product; row `(i, k)` has index `i·other.rows + k`, column `(j, l)` index `j·other.cols + l`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix difference dimension mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// The submatrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(self.cols, rows.iter().map(|&i| self.row(i).to_vec()))
    }

    /// Drops rows that are entirely zero.
    pub fn nonzero_rows(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.cols,
            self.row_iter()
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .map(<[BigInt]>::to_vec),
        )
    }

    pub fn columns(&self, range: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix::from_rows(
            range.len(),
            self.row_iter().map(|r| r[range.clone()].to_vec()),
        )
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    pub(crate) fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    /// col[dst] -= q * col[src]
    pub(crate) fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let y = self.data[i * self.cols + src].clone();
            if !y.is_zero() {
                self.data[i * self.cols + dst] -= q * y;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -std::mem::take(x);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Per-coordinate additive orders. `0` marks a free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Moduli(Vec<BigInt>);

impl Moduli {
    pub fn new(moduli: Vec<BigInt>) -> Self {
        assert!(
            moduli.iter().all(|m| !m.is_negative()),
            "moduli must be non-negative"
        );
        Self(moduli)
    }

    pub fn uniform(modulus: impl Into<BigInt>, len: usize) -> Self {
        Self::new(vec![modulus.into(); len])
    }

    pub fn free(len: usize) -> Self {
        Self::uniform(0, len)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Moduli) -> Moduli {
        Moduli(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn repeat(&self, times: usize) -> Moduli {
        Moduli(
            (0..times)
                .flat_map(|_| self.0.iter().cloned())
                .collect(),
        )
    }

    /// Reduces each coordinate into `[0, m)` where `m > 0`.
    pub fn reduce(&self, v: &mut [BigInt]) {
        debug_assert_eq!(v.len(), self.0.len());
        for (x, m) in v.iter_mut().zip(&self.0) {
            if !m.is_zero() {
                *x = x.mod_floor(m);
            }
        }
    }

    pub fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        self.reduce(&mut out);
        out
    }

    /// True when `v` lies in the lattice spanned by the modulus rows.
    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        v.iter().zip(&self.0).all(|(x, m)| {
            if m.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(m)
            }
        })
    }

    /// The rows `mᵢ·eᵢ` for every `mᵢ > 0`.
    pub fn relation_rows(&self) -> IntMatrix {
        let n = self.0.len();
        IntMatrix::from_rows(
            n,
            self.0.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(i, m)| {
                let mut row = vec![BigInt::zero(); n];
                row[i] = m.clone();
                row
            }),
        )
    }

    /// Number of elements of `⊕ ℤ/mᵢ`, or `None` when some coordinate is free.
    pub fn group_order(&self) -> Option<BigInt> {
        self.0.iter().try_fold(BigInt::one(), |acc, m| {
            if m.is_zero() {
                None
            } else {
                Some(acc * m)
            }
        })
    }
}

impl From<Vec<BigInt>> for Moduli {
    fn from(v: Vec<BigInt>) -> Self {
        Self::new(v)
    }
}

/// `gcd` with `gcd(0, k) = k`, so a free coordinate only stays free against another free one.
pub fn modulus_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
