//! Dense integer matrices, Smith and Hermite normal forms, and an exact
//! solver for `A x = b` over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.set(i, i, BigInt::one());
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a `len × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut a = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                a.set(i, j, x.clone());
            }
        }
        Ok(a)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries as `i64`, or `None` if any entry overflows.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[IntMatrix]) -> Result<IntMatrix> {
        let cols = parts.first().map_or(0, |p| p.cols);
        let mut rows = Vec::new();
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: p.cols,
                });
            }
            rows.extend(p.to_rows());
        }
        if rows.is_empty() {
            return Ok(IntMatrix::zeros(0, cols));
        }
        Self::from_rows(rows)
    }

    /// Square block with rows and columns `start..start + size`.
    pub fn block(&self, start: usize, size: usize) -> IntMatrix {
        let mut b = Self::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                b.set(i, j, self.get(start + i, start + j).clone());
            }
        }
        b
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, x);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn rank(&self) -> usize {
        self.smith().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = q * s;
                self.data[dst * self.cols + j] -= delta;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = q * s;
                self.data[i * self.cols + dst] -= delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    /// Smith normal form `D = U * A * V` with `U`, `V` unimodular.
    pub fn smith(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = Self::identity(m);
        let mut v = Self::identity(n);
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) =
                min_abs_entry(&d, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
            else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            loop {
                let mut remainder = false;
                for i in t + 1..m {
                    if !d.get(i, t).is_zero() {
                        let q = d.get(i, t).div_floor(d.get(t, t));
                        d.row_sub(i, t, &q);
                        u.row_sub(i, t, &q);
                        remainder |= !d.get(i, t).is_zero();
                    }
                }
                for j in t + 1..n {
                    if !d.get(t, j).is_zero() {
                        let q = d.get(t, j).div_floor(d.get(t, t));
                        d.col_sub(j, t, &q);
                        v.col_sub(j, t, &q);
                        remainder |= !d.get(t, j).is_zero();
                    }
                }
                if remainder {
                    let cross = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                    let (pi, pj) = min_abs_entry(&d, cross).expect("pivot is nonzero");
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                    continue;
                }
                let pivot = d.get(t, t).clone();
                let bad =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
                match bad {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        d.row_sub(t, i, &minus_one);
                        u.row_sub(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SmithForm { u, d, v, rank: t }
    }
}

/// Position of the entry with least nonzero absolute value among `cells`.
fn min_abs_entry(
    d: &IntMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !d.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()))
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Solves `A x = b` for the matrix this form was computed from.
    pub fn solve(&self, b: &[BigInt]) -> Result<Solution> {
        if b.len() != self.u.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.u.rows(),
                found: b.len(),
            });
        }
        let cols = self.v.rows();
        let c = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..self.rank {
            let (q, r) = c[i].div_rem(self.d.get(i, i));
            if !r.is_zero() {
                return Err(Error::NoSolution);
            }
            y[i] = q;
        }
        if c[self.rank..].iter().any(|x| !x.is_zero()) {
            return Err(Error::NoSolution);
        }
        let kernel: Vec<Vec<BigInt>> = (self.rank..cols).map(|j| self.v.column(j)).collect();
        let homogeneous = hermite_rows(kernel);
        let particular = reduce_mod_hermite(self.v.mul_vec(&y), &homogeneous);
        Ok(Solution {
            particular,
            homogeneous,
        })
    }
}

/// All integer solutions of `A x = b`: `particular + span(homogeneous)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<BigInt>,
    pub homogeneous: Vec<Vec<BigInt>>,
}

/// Solves `A x = b` over the integers.
///
/// The homogeneous basis is in Hermite normal form and the particular
/// solution is reduced against it, so the output depends only on the
/// solution set.
pub fn smith_solve(a: &IntMatrix, b: &[BigInt]) -> Result<Solution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    a.smith().solve(b)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and zero
/// rows are dropped.
pub fn hermite_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        while let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        {
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if !rows[i][col].is_zero() {
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    sub_scaled(&mut rows, i, r, &q);
                    clean &= rows[i][col].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            rows[r].iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                sub_scaled(&mut rows, i, r, &q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn sub_scaled(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for j in 0..rows[dst].len() {
        let delta = q * &rows[src][j];
        rows[dst][j] -= delta;
    }
}

/// Canonical representative of `x` modulo a lattice given in Hermite form.
pub fn reduce_mod_hermite(mut x: Vec<BigInt>, hermite: &[Vec<BigInt>]) -> Vec<BigInt> {
    for row in hermite {
        let Some(p) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check_smith(a: &IntMatrix) {
        let s = a.smith();
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn identity_system() {
        let b = big(&[4, -7, 9]);
        let sol = smith_solve(&IntMatrix::identity(3), &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.homogeneous.is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let a = mat(&[&[0, 2], &[0, -2]]);
        let sol = smith_solve(&a, &big(&[0, 0])).unwrap();
        assert_eq!(sol.homogeneous, vec![big(&[1, 0])]);
        assert_eq!(sol.particular, big(&[0, 0]));
    }

    #[test]
    fn parity_obstruction() {
        assert_eq!(
            smith_solve(&mat(&[&[2]]), &big(&[1])),
            Err(Error::NoSolution)
        );
    }

    #[test]
    fn inconsistent_rows() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert_eq!(smith_solve(&a, &big(&[1, 2])), Err(Error::NoSolution));
    }

    #[test]
    fn known_invariant_factors() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        check_smith(&a);
        assert_eq!(a.smith().invariant_factors(), big(&[2, 6, 12]));
    }

    #[test]
    fn determinants() {
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(
            mat(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 0]]).det(),
            BigInt::zero()
        );
        assert_eq!(IntMatrix::zeros(0, 0).det(), BigInt::one());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(vec![big(&[2, 4]), big(&[0, 3])]);
        let b = hermite_rows(vec![big(&[2, 7]), big(&[-2, -1]), big(&[4, 5])]);
        assert_eq!(a, vec![big(&[2, 1]), big(&[0, 3])]);
        assert_eq!(a, b);
    }

    #[test]
    fn wide_and_empty_shapes() {
        check_smith(&mat(&[&[0, 0, 0]]));
        check_smith(&mat(&[&[3, 5, 7]]));
        check_smith(&IntMatrix::zeros(3, 0));
        assert_eq!(IntMatrix::zeros(2, 2).rank(), 0);
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), m)
                .prop_map(|rows| IntMatrix::from_i64_rows(&rows).unwrap())
        })
    }

    fn small_solution_exists(a: &IntMatrix, b: &[BigInt]) -> bool {
        let n = a.cols();
        let total = 11usize.pow(n as u32);
        (0..total).any(|mut code| {
            let x: Vec<BigInt> = (0..n)
                .map(|_| {
                    let d = (code % 11) as i64 - 5;
                    code /= 11;
                    BigInt::from(d)
                })
                .collect();
            a.mul_vec(&x) == b
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn smith_is_a_valid_decomposition(a in arb_matrix()) {
            check_smith(&a);
        }

        #[test]
        fn solver_is_sound_and_complete(a in arb_matrix(), seed in proptest::collection::vec(-3i64..=3, 4)) {
            // Mix solvable right-hand sides (A * seed) with arbitrary ones.
            let x0 = big(&seed[..a.cols()]);
            let solvable = a.mul_vec(&x0);
            let arbitrary = big(&seed[..a.rows()]);
            for b in [solvable, arbitrary] {
                match smith_solve(&a, &b) {
                    Ok(sol) => {
                        prop_assert_eq!(a.mul_vec(&sol.particular), b.clone());
                        for h in &sol.homogeneous {
                            prop_assert!(a.mul_vec(h).iter().all(Zero::is_zero));
                        }
                        prop_assert_eq!(sol.homogeneous.len(), a.cols() - a.rank());
                    }
                    Err(Error::NoSolution) => {
                        prop_assert!(!small_solution_exists(&a, &b));
                    }
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }
        }
    }
}
