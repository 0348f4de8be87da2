use num_bigint::BigInt;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A signed permutation matrix: column `k` is `sign[k] * e_{target[k]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialMatrix {
    target: Vec<usize>,
    sign: Vec<i8>,
}

impl MonomialMatrix {
    pub fn identity(m: usize) -> Self {
        MonomialMatrix {
            target: (0..m).collect(),
            sign: vec![1; m],
        }
    }

    /// Zero-based targets and signs in `{+1, -1}`.
    pub fn new(target: Vec<usize>, sign: Vec<i8>) -> Result<Self> {
        let m = target.len();
        if sign.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: sign.len(),
            });
        }
        let mut seen = vec![false; m];
        for &t in &target {
            if t >= m || seen[t] {
                return Err(Error::InvalidPermutation(format!(
                    "monomial targets {target:?} are not a bijection"
                )));
            }
            seen[t] = true;
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidPermutation(format!(
                "signs {sign:?} not in {{+1,-1}}"
            )));
        }
        Ok(MonomialMatrix { target, sign })
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    /// `(target, sign)` of the image of basis vector `k`.
    #[inline]
    pub fn image_of_basis(&self, k: usize) -> (usize, i8) {
        (self.target[k], self.sign[k])
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(k, &t)| t == k) && self.sign.iter().all(|&s| s == 1)
    }

    pub fn is_unsigned(&self) -> bool {
        self.sign.iter().all(|&s| s == 1)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::default(); v.len()];
        for (k, x) in v.iter().enumerate() {
            out[self.target[k]] = if self.sign[k] == 1 { x.clone() } else { -x };
        }
        out
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let (target, sign) = other
            .target
            .iter()
            .zip(&other.sign)
            .map(|(&t, &s)| (self.target[t], s * self.sign[t]))
            .unzip();
        MonomialMatrix { target, sign }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let m = self.dim();
        let mut target = vec![0; m];
        let mut sign = vec![1; m];
        for k in 0..m {
            target[self.target[k]] = k;
            sign[self.target[k]] = self.sign[k];
        }
        MonomialMatrix { target, sign }
    }

    pub fn pow(&self, k: u64) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.dim());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let m = self.dim();
        let mut a = IntMatrix::zeros(m, m);
        for k in 0..m {
            a.set(self.target[k], k, BigInt::from(self.sign[k]));
        }
        a
    }
}
