use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::algebra::{all_perms, find_conjugators, MonomialMatrix, Perm};
use crate::error::{Error, Result};
use crate::families::Family;

/// The finite group `W` of a crystallographic group `Z^m ⋊ W`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointGroup {
    /// `S_n` acting on `{1, ..., n}`.
    Symmetric(usize),
    /// `(Z_2)^n`, elements written as sets of generators `τ_k`.
    SignTuples(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PointElement {
    Perm(Perm),
    /// `flags[k - 1]` is set when `τ_k` is present.
    Signs(Vec<bool>),
}

impl PointElement {
    pub fn signs_from(n: usize, present: &[usize]) -> PointElement {
        let mut flags = vec![false; n];
        for &k in present {
            flags[k - 1] = true;
        }
        PointElement::Signs(flags)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            PointElement::Perm(p) => p.is_identity(),
            PointElement::Signs(s) => s.iter().all(|&b| !b),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            PointElement::Perm(p) => p.order(),
            PointElement::Signs(_) if self.is_identity() => 1,
            PointElement::Signs(_) => 2,
        }
    }

    pub fn compose(&self, other: &PointElement) -> Result<PointElement> {
        match (self, other) {
            (PointElement::Perm(p), PointElement::Perm(q)) => Ok(PointElement::Perm(p.compose(q)?)),
            (PointElement::Signs(a), PointElement::Signs(b)) if a.len() == b.len() => Ok(
                PointElement::Signs(a.iter().zip(b).map(|(x, y)| x ^ y).collect()),
            ),
            _ => Err(Error::AmbientMismatch {
                group: "point group".into(),
                reason: format!("cannot compose {self} with {other}"),
            }),
        }
    }

    pub fn inverse(&self) -> PointElement {
        match self {
            PointElement::Perm(p) => PointElement::Perm(p.inverse()),
            PointElement::Signs(_) => self.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> PointElement {
        match self {
            PointElement::Perm(p) => PointElement::Perm(p.pow(k)),
            PointElement::Signs(s) if k.rem_euclid(2) == 1 => PointElement::Signs(s.clone()),
            PointElement::Signs(s) => PointElement::Signs(vec![false; s.len()]),
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            PointElement::Perm(p) => Some(p),
            PointElement::Signs(_) => None,
        }
    }

    /// Indices `k` with `τ_k` present, for sign tuples.
    pub fn sign_support(&self) -> Option<Vec<usize>> {
        match self {
            PointElement::Signs(s) => Some(
                s.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(k, _)| k + 1)
                    .collect(),
            ),
            PointElement::Perm(_) => None,
        }
    }
}

impl fmt::Display for PointElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointElement::Perm(p) => write!(f, "{p}"),
            PointElement::Signs(_) => {
                let support: Vec<String> = self
                    .sign_support()
                    .unwrap_or_default()
                    .iter()
                    .map(usize::to_string)
                    .collect();
                write!(f, "{{{}}}", support.join(","))
            }
        }
    }
}

impl PointGroup {
    pub fn degree(&self) -> usize {
        match *self {
            PointGroup::Symmetric(n) | PointGroup::SignTuples(n) => n,
        }
    }

    pub fn identity(&self) -> PointElement {
        match *self {
            PointGroup::Symmetric(n) => PointElement::Perm(Perm::identity(n)),
            PointGroup::SignTuples(n) => PointElement::Signs(vec![false; n]),
        }
    }

    pub fn size(&self) -> u128 {
        match *self {
            PointGroup::Symmetric(n) => (1..=n as u128).product(),
            PointGroup::SignTuples(n) => 1u128 << n,
        }
    }

    pub fn contains(&self, w: &PointElement) -> bool {
        match (self, w) {
            (PointGroup::Symmetric(n), PointElement::Perm(p)) => p.degree() == *n,
            (PointGroup::SignTuples(n), PointElement::Signs(s)) => s.len() == *n,
            _ => false,
        }
    }

    /// All elements: permutations in lexicographic order, sign tuples in
    /// binary counting order with `τ_1` as the low bit.
    pub fn elements(&self) -> Vec<PointElement> {
        match *self {
            PointGroup::Symmetric(n) => all_perms(n).map(PointElement::Perm).collect(),
            PointGroup::SignTuples(n) => (0u64..1 << n)
                .map(|mask| PointElement::Signs((0..n).map(|k| mask >> k & 1 == 1).collect()))
                .collect(),
        }
    }

    /// All `c` with `c w1 c⁻¹ = w2`, in enumeration order.
    pub fn conjugators(&self, w1: &PointElement, w2: &PointElement) -> Result<Vec<PointElement>> {
        match (w1, w2) {
            (PointElement::Perm(a), PointElement::Perm(b)) => {
                Ok(find_conjugators(a, b)?.map(PointElement::Perm).collect())
            }
            (PointElement::Signs(_), PointElement::Signs(_)) if w1 == w2 => Ok(self.elements()),
            (PointElement::Signs(_), PointElement::Signs(_)) => Ok(Vec::new()),
            _ => Err(Error::AmbientMismatch {
                group: "point group".into(),
                reason: "mixed permutation and sign elements".into(),
            }),
        }
    }
}

/// How `W` acts on the labeled basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ActionRule {
    /// `e_{i,j} -> e_{p(i),p(j)}` on ordered pairs.
    OrderedPairs,
    /// `e_{i,j} -> ± e_{sort(p(i),p(j))}` on pairs `i < j`, negative when `p(i) > p(j)`.
    SignedUnorderedPairs,
    /// `τ_k` negates every `e_{i,k}`.
    SecondIndexSigns,
    /// Odd permutations swap the two basis vectors; even ones act trivially.
    ParitySwap,
}

/// `Z^m ⋊_φ W` with a monomial action on a basis labeled by index pairs.
#[derive(Clone, Debug)]
pub struct CrystalGroup {
    family: Family,
    n: usize,
    labels: Vec<(usize, usize)>,
    position: Vec<Option<usize>>,
    point: PointGroup,
    rule: ActionRule,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    pub v: Vec<BigInt>,
    pub w: PointElement,
}

impl Element {
    pub fn new(v: Vec<BigInt>, w: PointElement) -> Self {
        Element { v, w }
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.v.iter().all(Zero::is_zero)
    }

    pub fn translation_is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(t) => write!(f, "{t}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(t) => s.serialize_u64(*t),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl CrystalGroup {
    pub(crate) fn new(
        family: Family,
        n: usize,
        labels: Vec<(usize, usize)>,
        point: PointGroup,
        rule: ActionRule,
    ) -> Self {
        let mut position = vec![None; (n + 1) * (n + 1)];
        for (k, &(i, j)) in labels.iter().enumerate() {
            position[i * (n + 1) + j] = Some(k);
        }
        CrystalGroup {
            family,
            n,
            labels,
            position,
            point,
            rule,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn point_group(&self) -> PointGroup {
        self.point
    }

    pub fn rule(&self) -> ActionRule {
        self.rule
    }

    pub fn name(&self) -> String {
        format!("{}({})", self.family, self.n)
    }

    /// Basis position of the label `(i, j)`.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i > self.n || j > self.n {
            return None;
        }
        self.position[i * (self.n + 1) + j]
    }

    pub fn zero_vector(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn basis_vector(&self, k: usize) -> Vec<BigInt> {
        let mut v = self.zero_vector();
        v[k] = BigInt::from(1);
        v
    }

    pub fn identity(&self) -> Element {
        Element::new(self.zero_vector(), self.point.identity())
    }

    pub fn translation(&self, v: Vec<BigInt>) -> Result<Element> {
        let e = Element::new(v, self.point.identity());
        self.check(&e)?;
        Ok(e)
    }

    pub fn point_lift(&self, w: PointElement) -> Result<Element> {
        let e = Element::new(self.zero_vector(), w);
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if e.v.len() != self.rank() {
            return Err(Error::AmbientMismatch {
                group: self.name(),
                reason: format!(
                    "translation has length {}, rank is {}",
                    e.v.len(),
                    self.rank()
                ),
            });
        }
        self.check_point(&e.w)
    }

    pub fn check_point(&self, w: &PointElement) -> Result<()> {
        if self.point.contains(w) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                group: self.name(),
                reason: format!("{w} is not in the point group"),
            })
        }
    }

    /// The action matrix `φ(w)`. `w` must belong to the point group.
    pub fn phi(&self, w: &PointElement) -> MonomialMatrix {
        let (target, sign) = self
            .labels
            .iter()
            .map(|&(i, j)| self.image_of_label(w, i, j))
            .unzip();
        MonomialMatrix::new(target, sign).expect("family action is a signed permutation")
    }

    fn image_of_label(&self, w: &PointElement, i: usize, j: usize) -> (usize, i8) {
        let at = |a: usize, b: usize| self.index_of(a, b).expect("label is in the basis");
        match (self.rule, w) {
            (ActionRule::OrderedPairs, PointElement::Perm(p)) => (at(p.apply(i), p.apply(j)), 1),
            (ActionRule::SignedUnorderedPairs, PointElement::Perm(p)) => {
                let (a, b) = (p.apply(i), p.apply(j));
                if a < b {
                    (at(a, b), 1)
                } else {
                    (at(b, a), -1)
                }
            }
            (ActionRule::SecondIndexSigns, PointElement::Signs(s)) => {
                (at(i, j), if s[j - 1] { -1 } else { 1 })
            }
            (ActionRule::ParitySwap, PointElement::Perm(p)) => {
                let k = at(i, j);
                if p.sign() == 1 {
                    (k, 1)
                } else {
                    (self.rank() - 1 - k, 1)
                }
            }
            _ => panic!("{w} is not in the point group of {}", self.name()),
        }
    }

    pub fn act(&self, w: &PointElement, v: &[BigInt]) -> Vec<BigInt> {
        self.phi(w).apply(v)
    }

    /// `(v1, w1)(v2, w2) = (v1 + φ(w1) v2, w1 w2)`
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        let moved = self.act(&a.w, &b.v);
        let v = a.v.iter().zip(moved).map(|(x, y)| x + y).collect();
        let w = a.w.compose(&b.w).expect("same point group");
        Element::new(v, w)
    }

    /// `(v, w)⁻¹ = (-φ(w⁻¹) v, w⁻¹)`
    pub fn inv(&self, e: &Element) -> Result<Element> {
        self.check(e)?;
        Ok(self.inv_unchecked(e))
    }

    pub(crate) fn inv_unchecked(&self, e: &Element) -> Element {
        let wi = e.w.inverse();
        let v = self.act(&wi, &e.v).into_iter().map(|x| -x).collect();
        Element::new(v, wi)
    }

    /// `g e g⁻¹`
    pub fn conjugate(&self, g: &Element, e: &Element) -> Result<Element> {
        let ge = self.mul(g, e)?;
        Ok(self.mul_unchecked(&ge, &self.inv_unchecked(g)))
    }

    /// `Σ_{k < t} φ(w)^k v` with `t` the order of `w`.
    pub fn twisted_sum(&self, w: &PointElement, v: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi(w);
        let mut acc: Vec<BigInt> = v.to_vec();
        let mut term: Vec<BigInt> = v.to_vec();
        for _ in 1..w.order() {
            term = phi.apply(&term);
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
        }
        acc
    }

    /// Order of an element: `t = order(w)` exactly when the twisted sum of its
    /// translation vanishes, infinite otherwise.
    pub fn order(&self, e: &Element) -> Result<Order> {
        self.check(e)?;
        if self.twisted_sum(&e.w, &e.v).iter().all(Zero::is_zero) {
            Ok(Order::Finite(e.w.order()))
        } else {
            Ok(Order::Infinite)
        }
    }

    /// `e^k` via `e^(q t + r) = (q Σ_{j<t} φ(w)^j v, 1) e^r`.
    pub fn pow(&self, e: &Element, k: i64) -> Result<Element> {
        self.check(e)?;
        let t = e.w.order() as i64;
        let (q, r) = (k.div_euclid(t), k.rem_euclid(t));
        let mut tail = self.identity();
        for _ in 0..r {
            tail = self.mul_unchecked(&tail, e);
        }
        if q == 0 {
            return Ok(tail);
        }
        let q = BigInt::from(q);
        let full = self
            .twisted_sum(&e.w, &e.v)
            .into_iter()
            .map(|x| x * &q)
            .collect();
        Ok(self.mul_unchecked(&Element::new(full, self.point.identity()), &tail))
    }

    pub fn point_elements(&self) -> Vec<PointElement> {
        self.point.elements()
    }
}
