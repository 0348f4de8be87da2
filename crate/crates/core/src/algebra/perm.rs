//! Permutations of `{1, ..., n}`.
//!
//! Composition is the ordinary left action: `p.compose(&q)` is the map
//! `x -> p(q(x))`. Formulas written with the reversed convention
//! (`(στ)(x) = τ(σ(x))`) go through [`RightPerm`], which is the only place
//! that convention is allowed to appear.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}` stored as its one-indexed image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from one-indexed images, `images[k - 1] = p(k)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Perm { images })
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({i} {j}) outside 1..={n}"
            )));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Perm { images })
    }

    /// `τ_i = (i, i+1)`.
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        Self::transposition(n, i, i + 1)
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[1, 2], &[3, 4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={n}"
                    )));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the one-indexed point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Perm { images }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs() % self.order().max(1);
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `c ∘ self ∘ c⁻¹`.
    pub fn conjugate_by(&self, c: &Perm) -> Result<Perm> {
        Ok(c.compose(self)?.compose_unchecked(&c.inverse()))
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted ascending; sums to `n`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut ty: Vec<usize> = std::iter::repeat_n(1, self.degree() - moved)
            .chain(self.cycles().iter().map(Vec::len))
            .collect();
        ty.sort_unstable();
        ty
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Parity as a sign: `+1` for even permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Factors the permutation as `τ_{i_1} ∘ τ_{i_2} ∘ ... ∘ τ_{i_k}` and
    /// returns the indices `i_1, ..., i_k` (bubble-sort word, not canonical).
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Sort a copy of the image table with adjacent swaps; each swap at
        // position i right-multiplies by τ_i.
        let mut table = self.images.clone();
        let mut swaps = Vec::new();
        let n = table.len();
        for pass in 0..n {
            for i in 0..n.saturating_sub(1 + pass) {
                if table[i] > table[i + 1] {
                    table.swap(i, i + 1);
                    swaps.push(i + 1);
                }
            }
        }
        // self ∘ τ_{s_1} ∘ ... ∘ τ_{s_k} = id, so self = τ_{s_k} ∘ ... ∘ τ_{s_1}.
        swaps.reverse();
        swaps
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Every permutation of `{1, ..., n}` in lexicographic order of image tables.
pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    let mut next = Some(Perm::identity(n));
    std::iter::from_fn(move || {
        let current = next.take()?;
        next = next_lexicographic(&current.images).map(|images| Perm { images });
        Some(current)
    })
}

fn next_lexicographic(images: &[usize]) -> Option<Vec<usize>> {
    let mut a = images.to_vec();
    let n = a.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    Some(a)
}

/// All `c` with `c ∘ w1 ∘ c⁻¹ = w2`, in lexicographic order.
///
/// The result is a coset of the centralizer of `w1`; it is empty exactly when
/// the cycle types differ.
pub fn find_conjugators(w1: &Perm, w2: &Perm) -> Result<impl Iterator<Item = Perm>> {
    if w1.degree() != w2.degree() {
        return Err(Error::DegreeMismatch {
            left: w1.degree(),
            right: w2.degree(),
        });
    }
    let feasible = w1.cycle_type() == w2.cycle_type();
    let (w1, w2) = (w1.clone(), w2.clone());
    let n = w1.degree();
    Ok(all_perms(if feasible { n } else { 0 })
        .filter(move |c| feasible && c.degree() == n)
        .filter(move |c| c.compose_unchecked(&w1) == w2.compose_unchecked(c)))
}

/// A permutation read with the reversed composition convention
/// `(σ·τ)(x) = τ(σ(x))`.
///
/// Under that convention the projection of a word `ρ_{i_1} ... ρ_{i_k}` is the
/// map `x -> τ_{i_k}(... τ_{i_1}(x))`, which is the inverse of the left-action
/// projection. [`RightPerm::to_left_action`] therefore inverts, and it is a
/// group isomorphism between the two conventions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RightPerm(pub Perm);

impl RightPerm {
    /// Product in the reversed convention: apply `self` first, then `other`.
    pub fn then(&self, other: &RightPerm) -> Result<RightPerm> {
        Ok(RightPerm(other.0.compose(&self.0)?))
    }

    pub fn to_left_action(&self) -> Perm {
        self.0.inverse()
    }

    pub fn from_left_action(p: &Perm) -> RightPerm {
        RightPerm(p.inverse())
    }

    /// `w⁻¹(i)` as it appears in conjugation formulas such as
    /// `w λ_{i,j} w⁻¹ = λ_{w⁻¹(i), w⁻¹(j)}`.
    pub fn inverse_image(&self, i: usize) -> usize {
        self.0.inverse().apply(i)
    }
}
