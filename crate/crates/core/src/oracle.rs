//! Brute-force reference computations.
//!
//! Everything here works on plain `i64` vectors and permutation tables with
//! its own action rules and multiplication, so the engine can be checked
//! against an implementation that shares none of its arithmetic.

use num_traits::ToPrimitive;

use crate::algebra::Perm;
use crate::crystal::{CrystalGroup, Element, PointElement};
use crate::error::{Error, Result};
use crate::families::{defining_relations, quotient, Family};
use crate::par;

/// `0`-based images of a permutation, or membership flags of a sign tuple.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NaivePoint {
    Perm(Vec<usize>),
    Signs(Vec<bool>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NaiveElement {
    pub v: Vec<i64>,
    pub w: NaivePoint,
}

/// A quotient rebuilt from the defining action rules.
#[derive(Clone, Debug)]
pub struct NaiveGroup {
    pub family: Family,
    pub n: usize,
    /// `1`-based index pairs labelling the basis.
    pub labels: Vec<(usize, usize)>,
}

impl NaiveGroup {
    pub fn new(family: Family, n: usize) -> Self {
        let labels = match family {
            Family::Vb | Family::PlbExt => {
                let mut l = Vec::new();
                for i in 1..=n {
                    for j in 1..=n {
                        if i != j {
                            l.push((i, j));
                        }
                    }
                }
                l
            }
            Family::Vt => {
                let mut l = Vec::new();
                for i in 1..=n {
                    for j in i + 1..=n {
                        l.push((i, j));
                    }
                }
                l
            }
            Family::Kb3 => vec![(1, 2), (1, 3)],
        };
        NaiveGroup { family, n, labels }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    fn index(&self, pair: (usize, usize)) -> usize {
        self.labels
            .iter()
            .position(|&l| l == pair)
            .expect("label in basis")
    }

    pub fn identity(&self) -> NaiveElement {
        NaiveElement {
            v: vec![0; self.rank()],
            w: self.point_identity(),
        }
    }

    fn point_identity(&self) -> NaivePoint {
        match self.family {
            Family::PlbExt => NaivePoint::Signs(vec![false; self.n]),
            _ => NaivePoint::Perm((0..self.n).collect()),
        }
    }

    /// Image of basis vector `k` under `w`, as `(index, sign)`.
    pub fn act_basis(&self, w: &NaivePoint, k: usize) -> (usize, i64) {
        let (i, j) = self.labels[k];
        match (self.family, w) {
            (Family::Vb, NaivePoint::Perm(p)) => (self.index((p[i - 1] + 1, p[j - 1] + 1)), 1),
            (Family::Vt, NaivePoint::Perm(p)) => {
                let (a, b) = (p[i - 1] + 1, p[j - 1] + 1);
                if a < b {
                    (self.index((a, b)), 1)
                } else {
                    (self.index((b, a)), -1)
                }
            }
            (Family::PlbExt, NaivePoint::Signs(s)) => (k, if s[j - 1] { -1 } else { 1 }),
            (Family::Kb3, NaivePoint::Perm(p)) => {
                let inversions = (0..3)
                    .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                    .filter(|&(a, b)| p[a] > p[b])
                    .count();
                if inversions % 2 == 1 {
                    (1 - k, 1)
                } else {
                    (k, 1)
                }
            }
            _ => panic!("point element does not match the family"),
        }
    }

    pub fn act(&self, w: &NaivePoint, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (k, &a) in v.iter().enumerate() {
            let (t, s) = self.act_basis(w, k);
            out[t] += s * a;
        }
        out
    }

    fn compose(a: &NaivePoint, b: &NaivePoint) -> NaivePoint {
        match (a, b) {
            (NaivePoint::Perm(p), NaivePoint::Perm(q)) => {
                NaivePoint::Perm(q.iter().map(|&x| p[x]).collect())
            }
            (NaivePoint::Signs(s), NaivePoint::Signs(t)) => {
                NaivePoint::Signs(s.iter().zip(t).map(|(x, y)| x != y).collect())
            }
            _ => panic!("mixed point elements"),
        }
    }

    pub fn mul(&self, a: &NaiveElement, b: &NaiveElement) -> NaiveElement {
        let moved = self.act(&a.w, &b.v);
        NaiveElement {
            v: a.v.iter().zip(moved).map(|(x, y)| x + y).collect(),
            w: Self::compose(&a.w, &b.w),
        }
    }

    pub fn is_identity(&self, e: &NaiveElement) -> bool {
        *e == self.identity()
    }

    /// Every point element, permutations in lexicographic order.
    pub fn points(&self) -> Vec<NaivePoint> {
        match self.family {
            Family::PlbExt => (0..1u64 << self.n)
                .map(|mask| NaivePoint::Signs((0..self.n).map(|b| mask >> b & 1 == 1).collect()))
                .collect(),
            _ => {
                let mut out = Vec::new();
                let mut used = vec![false; self.n];
                let mut cur = Vec::with_capacity(self.n);
                permutations(self.n, &mut used, &mut cur, &mut out);
                out.into_iter().map(NaivePoint::Perm).collect()
            }
        }
    }

    pub fn from_element(&self, group: &CrystalGroup, e: &Element) -> Option<NaiveElement> {
        let mut v = vec![0; self.rank()];
        for (k, a) in e.v.iter().enumerate() {
            v[self.index(group.labels()[k])] = a.to_i64()?;
        }
        let w = match &e.w {
            PointElement::Perm(p) => NaivePoint::Perm(p.images().iter().map(|x| x - 1).collect()),
            PointElement::Signs(s) => NaivePoint::Signs(s.clone()),
        };
        Some(NaiveElement { v, w })
    }

    pub fn to_element(&self, group: &CrystalGroup, e: &NaiveElement) -> Element {
        let v = group
            .labels()
            .iter()
            .map(|&l| e.v[self.index(l)].into())
            .collect();
        let w = match &e.w {
            NaivePoint::Perm(p) => PointElement::Perm(
                Perm::from_images(p.iter().map(|x| x + 1).collect()).expect("valid permutation"),
            ),
            NaivePoint::Signs(s) => PointElement::Signs(s.clone()),
        };
        Element::new(v, w)
    }
}

fn permutations(n: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for x in 0..n {
        if !used[x] {
            used[x] = true;
            cur.push(x);
            permutations(n, used, cur, out);
            cur.pop();
            used[x] = false;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BruteOrder {
    Finite(u64),
    /// No power up to the cap is the identity.
    Unknown,
}

/// Smallest `k <= cap` with `e^k = 1`, by repeated multiplication.
pub fn brute_order(group: &NaiveGroup, e: &NaiveElement, cap: u64) -> BruteOrder {
    let mut power = e.clone();
    for k in 1..=cap {
        if group.is_identity(&power) {
            return BruteOrder::Finite(k);
        }
        power = group.mul(&power, e);
    }
    BruteOrder::Unknown
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BruteConjugacy {
    /// `g` with `g e1 = e2 g`.
    Witness(NaiveElement),
    /// Inconclusive: nothing found inside the search box.
    NotFoundWithin(u32),
}

/// Searches conjugators `(x, c)` with `|x|_∞ <= radius` and `c` over the whole point group.
pub fn brute_conjugacy(
    group: &NaiveGroup,
    e1: &NaiveElement,
    e2: &NaiveElement,
    radius: u32,
) -> BruteConjugacy {
    let m = group.rank();
    let side = 2 * radius as u64 + 1;
    let boxes = side.pow(m as u32);
    let points = group.points();
    for c in points {
        let lhs_point = NaiveGroup::compose(&c, &e1.w);
        let rhs_point = NaiveGroup::compose(&e2.w, &c);
        if lhs_point != rhs_point {
            continue;
        }
        // g e1 = e2 g reads x + c·v1 = v2 + w2·x coordinatewise
        let moved = group.act(&c, &e1.v);
        let action: Vec<(usize, i64)> = (0..m).map(|k| group.act_basis(&e2.w, k)).collect();
        let found = par::find_first_index(boxes, |code| {
            let mut code = code;
            let x: Vec<i64> = (0..m)
                .map(|_| {
                    let d = (code % side) as i64 - radius as i64;
                    code /= side;
                    d
                })
                .collect();
            let mut rhs = e2.v.clone();
            for (k, &(t, s)) in action.iter().enumerate() {
                rhs[t] += s * x[k];
            }
            let ok = (0..m).all(|k| x[k] + moved[k] == rhs[k]);
            ok.then(|| NaiveElement { v: x, w: c.clone() })
        });
        if let Some(g) = found {
            return BruteConjugacy::Witness(g);
        }
    }
    BruteConjugacy::NotFoundWithin(radius)
}

/// `(relation, holds)` for every instance of every defining relation.
pub fn relation_suite(family: Family, n: usize) -> Result<Vec<(String, bool)>> {
    if n > 8 {
        return Err(Error::Precondition(format!(
            "relation suite runs for n <= 8, got {n}"
        )));
    }
    let group = quotient(family, n)?;
    let relations = defining_relations(family, n);
    par::map(&relations, |r| Ok((r.to_string(), r.holds_in(&group)?)))
        .into_iter()
        .collect()
}

/// Nontrivial point elements acting as the identity.
pub fn faithfulness_enum(group: &NaiveGroup) -> Result<Vec<NaivePoint>> {
    const CAP: u128 = 3_628_800;
    let size: u128 = match group.family {
        Family::PlbExt => 1u128 << group.n,
        _ => (1..=group.n as u128).product(),
    };
    if size > CAP {
        return Err(Error::EnumerationCap { size, cap: CAP });
    }
    let id = group.point_identity();
    Ok(group
        .points()
        .into_iter()
        .filter(|w| *w != id && (0..group.rank()).all(|k| group.act_basis(w, k) == (k, 1)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elt(g: &NaiveGroup, coeffs: &[((usize, usize), i64)], perm: &[usize]) -> NaiveElement {
        let mut v = vec![0; g.rank()];
        for &(l, a) in coeffs {
            v[g.index(l)] = a;
        }
        NaiveElement {
            v,
            w: NaivePoint::Perm(perm.iter().map(|x| x - 1).collect()),
        }
    }

    #[test]
    fn order_examples() {
        let g = NaiveGroup::new(Family::Vb, 3);
        assert_eq!(brute_order(&g, &g.identity(), 1), BruteOrder::Finite(1));
        // ρ1ρ2 projects to 1 -> 2 -> 3 -> 1
        let rho = elt(&g, &[], &[2, 3, 1]);
        assert_eq!(brute_order(&g, &rho, 10), BruteOrder::Finite(3));
        let e = elt(&g, &[((1, 2), 1)], &[2, 1, 3]);
        assert_eq!(brute_order(&g, &e, 50), BruteOrder::Unknown);
    }

    #[test]
    fn conjugacy_examples() {
        let g = NaiveGroup::new(Family::Vb, 3);
        let e = elt(&g, &[((1, 2), 2), ((2, 1), 1)], &[2, 1, 3]);
        assert_eq!(
            brute_conjugacy(&g, &e, &e, 0),
            BruteConjugacy::Witness(g.identity())
        );
        let f = elt(&g, &[((1, 2), 3)], &[2, 1, 3]);
        let BruteConjugacy::Witness(w) = brute_conjugacy(&g, &e, &f, 3) else {
            panic!("expected a witness");
        };
        assert_eq!(g.mul(&w, &e), g.mul(&f, &w));
        let a = elt(&g, &[((1, 2), 1)], &[2, 1, 3]);
        let b = elt(&g, &[((1, 2), 2)], &[2, 1, 3]);
        assert_eq!(
            brute_conjugacy(&g, &a, &b, 3),
            BruteConjugacy::NotFoundWithin(3)
        );
    }

    #[test]
    fn relation_suites_pass() {
        for (f, n) in [(Family::Vb, 4), (Family::Vt, 4), (Family::PlbExt, 3)] {
            let suite = relation_suite(f, n).unwrap();
            assert!(!suite.is_empty());
            assert!(suite.iter().all(|(_, ok)| *ok), "{f}");
        }
        assert!(relation_suite(Family::Vb, 9).is_err());
    }

    #[test]
    fn faithfulness_examples() {
        assert!(faithfulness_enum(&NaiveGroup::new(Family::Vb, 3))
            .unwrap()
            .is_empty());
        assert!(faithfulness_enum(&NaiveGroup::new(Family::PlbExt, 2))
            .unwrap()
            .is_empty());
        let kernel = faithfulness_enum(&NaiveGroup::new(Family::Kb3, 3)).unwrap();
        assert_eq!(
            kernel,
            vec![
                NaivePoint::Perm(vec![1, 2, 0]),
                NaivePoint::Perm(vec![2, 0, 1])
            ]
        );
        assert!(faithfulness_enum(&NaiveGroup::new(Family::Vb, 11)).is_err());
    }

    #[test]
    fn conversions_round_trip() {
        let group = crate::families::vt_quotient(4).unwrap();
        let g = NaiveGroup::new(Family::Vt, 4);
        let e =
            crate::word::evaluate(&crate::word::parse("s1 l[3,2]^2 r3").unwrap(), &group).unwrap();
        let naive = g.from_element(&group, &e).unwrap();
        assert_eq!(g.to_element(&group, &naive), e);
    }
}
