//! Integer polynomials with coefficients in ascending degree order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = -BigInt::one();
        c[d] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Poly) -> Option<Poly> {
        let dd = divisor.degree()?;
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let Some(sd) = self.degree() else {
            return Some(self.clone());
        };
        if sd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &lead * c;
            }
            q[k] = lead;
        }
        rem.iter().all(Zero::is_zero).then(|| Poly::new(q))
    }
}

/// Characteristic polynomial `det(x I - A)` by the division-free Berkowitz recursion.
pub fn charpoly(a: &IntMatrix) -> Poly {
    assert!(
        a.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = a.rows();
    // Coefficients in descending order while iterating.
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Leading r×r block A_r, column S = A[0..r, r], row R = A[r, 0..r], corner A[r, r].
        let s: Vec<BigInt> = (0..r).map(|i| a.get(i, r).clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| a.get(r, j).clone()).collect();
        let mut toeplitz = vec![BigInt::one(), -a.get(r, r).clone()];
        let mut power = s;
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&power).map(|(x, y)| x * y).sum();
            toeplitz.push(-dot);
            power = (0..r)
                .map(|i| (0..r).map(|j| a.get(i, j) * &power[j]).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| i - j < toeplitz.len())
                    .map(|j| &toeplitz[i - j] * &p[j])
                    .sum()
            })
            .collect();
        p = next;
    }
    p.reverse();
    Poly::new(p)
}

/// The `d`-th cyclotomic polynomial, `(x^d - 1) / prod_{e | d, e < d} Phi_e`.
pub fn cyclotomic(d: usize) -> Poly {
    assert!(d >= 1);
    let mut p = Poly::x_pow_minus_one(d);
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = p
            .div_exact_monic(&cyclotomic(e))
            .expect("Phi_e divides x^d - 1");
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactor {
    pub d: usize,
    pub multiplicity: usize,
}

/// Multiplicities of `Phi_d` for every divisor `d` of `order`, plus the cofactor
/// left after removing them.
pub fn cyclotomic_multiplicities(p: &Poly, order: usize) -> (Vec<CyclotomicFactor>, Poly) {
    let mut rest = p.clone();
    let mut table = Vec::new();
    for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
        let phi = cyclotomic(d);
        let mut multiplicity = 0;
        while let Some(q) = rest.div_exact_monic(&phi).filter(|_| !rest.is_zero()) {
            rest = q;
            multiplicity += 1;
        }
        table.push(CyclotomicFactor { d, multiplicity });
    }
    (table, rest)
}
