//! Dense integer matrices with exact rank and determinant.
//!
//! Entries are stored as [`BigInt`]. Elimination is fraction-free (Bareiss):
//! every intermediate value is a minor of the input, so all divisions are
//! exact. A checked `i128` pass runs first and the computation restarts over
//! `BigInt` only if it overflows.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
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
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as `i64`, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        match self.to_i128() {
            Some(m) => match eliminate(m, self.rows, self.cols) {
                Some(e) => e.rank,
                None => eliminate(self.data.clone(), self.rows, self.cols)
                    .expect("BigInt elimination cannot overflow")
                    .rank,
            },
            None => {
                eliminate(self.data.clone(), self.rows, self.cols)
                    .expect("BigInt elimination cannot overflow")
                    .rank
            }
        }
    }

    /// Exact determinant. Panics on a non-square matrix.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if let Some(m) = self.to_i128() {
            if let Some(e) = eliminate(m, self.rows, self.cols) {
                return BigInt::from(e.det);
            }
        }
        eliminate(self.data.clone(), self.rows, self.cols)
            .expect("BigInt elimination cannot overflow")
            .det
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.data.iter().map(ToPrimitive::to_i128).collect()
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IntegerMatrix {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Entries that fit in `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<serde_json::Value> = self
                .row(i)
                .iter()
                .map(|x| match x.to_i64() {
                    Some(v) => v.into(),
                    None => x.to_string().into(),
                })
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut parsed = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            let r: Result<Vec<BigInt>, D::Error> = row
                .iter()
                .map(|v| match v {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| D::Error::custom("non-integer matrix entry")),
                    serde_json::Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom("bad integer string")),
                    _ => Err(D::Error::custom("matrix entries must be integers")),
                })
                .collect();
            parsed.push(r?);
        }
        Ok(IntegerMatrix::from_rows(cols, &parsed))
    }
}

/// Ring operations needed by fraction-free elimination. `None` signals
/// overflow.
trait Exact: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn negated(&self) -> Self;
    /// `(a*b - c*d) / p`, where the division is known to be exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        let ab = a.checked_mul(*b)?;
        let cd = c.checked_mul(*d)?;
        Some(ab.checked_sub(cd)? / p)
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        Some((a * b - c * d) / p)
    }
}

struct Elimination<T> {
    rank: usize,
    det: T,
}

/// Fraction-free row echelon form. Columns without a pivot are skipped; the
/// entries below the pivot rows remain minors of the input, so the Bareiss
/// division stays exact.
fn eliminate<T: Exact>(mut a: Vec<T>, rows: usize, cols: usize) -> Option<Elimination<T>> {
    let mut prev = T::unit();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !a[i * cols + c].vanishes()) else {
            continue;
        };
        if pivot != r {
            for j in 0..cols {
                a.swap(pivot * cols + j, r * cols + j);
            }
            negate = !negate;
        }
        let p = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                a[i * cols + j] = T::cross_div(&p, &a[i * cols + j], &lead, &a[r * cols + j], &prev)?;
            }
            a[i * cols + c] = T::nil();
        }
        prev = p;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        let d = if rows == 0 { T::unit() } else { a[rows * cols - 1].clone() };
        if negate {
            d.negated()
        } else {
            d
        }
    } else {
        T::nil()
    };
    Some(Elimination { rank: r, det })
}

/// `|det|` as a non-negative `BigInt`.
pub fn abs_det(m: &IntegerMatrix) -> BigInt {
    m.det().abs()
}
