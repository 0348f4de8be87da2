//! The concrete quotient groups, their generator images, defining relations
//! and the relator catalogue connecting them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::algebra::Perm;
use crate::crystal::{ActionRule, CrystalGroup, Element, PointElement, PointGroup};
use crate::error::{Error, Result};
use crate::word::{evaluate, GenWord, Generator};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// Virtual braids modulo the commutator of the pure subgroup.
    Vb,
    /// Virtual twins modulo the commutator of the pure subgroup.
    Vt,
    /// Pure extended loop braids modulo the commutator of the welded pure subgroup.
    PlbExt,
    /// Three-strand virtual braids modulo the commutator of the σ-kernel.
    Kb3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Vb, Family::Vt, Family::PlbExt, Family::Kb3];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Vb => "vb",
            Family::Vt => "vt",
            Family::PlbExt => "plbext",
            Family::Kb3 => "kb3",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                Error::Json(format!(
                    "unknown family '{s}' (expected vb, vt, plbext or kb3)"
                ))
            })
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn increasing_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

fn require(family: Family, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::StrandCount {
            family: family.to_string(),
            n,
            min,
        });
    }
    Ok(())
}

/// `Z^{n(n-1)} ⋊ S_n`, basis `e_{i,j}` for ordered pairs, `φ(p) e_{i,j} = e_{p(i),p(j)}`.
pub fn vb_quotient(n: usize) -> Result<CrystalGroup> {
    require(Family::Vb, n, 2)?;
    Ok(CrystalGroup::new(
        Family::Vb,
        n,
        ordered_pairs(n),
        PointGroup::Symmetric(n),
        ActionRule::OrderedPairs,
    ))
}

/// `Z^{n(n-1)/2} ⋊ S_n`, basis `e_{i,j}` for `i < j`, with `e_{j,i} = -e_{i,j}`.
pub fn vt_quotient(n: usize) -> Result<CrystalGroup> {
    require(Family::Vt, n, 2)?;
    Ok(CrystalGroup::new(
        Family::Vt,
        n,
        increasing_pairs(n),
        PointGroup::Symmetric(n),
        ActionRule::SignedUnorderedPairs,
    ))
}

/// `Z^{n(n-1)} ⋊ (Z_2)^n`, where `τ_k` inverts every `α_{i,k}`.
pub fn plbext_quotient(n: usize) -> Result<CrystalGroup> {
    require(Family::PlbExt, n, 1)?;
    Ok(CrystalGroup::new(
        Family::PlbExt,
        n,
        ordered_pairs(n),
        PointGroup::SignTuples(n),
        ActionRule::SecondIndexSigns,
    ))
}

/// `Z^2 ⋊ S_3` on `δ_{1,2}, δ_{1,3}`; transpositions swap the two basis vectors.
///
/// This action is reconstructed from the order and conjugacy criteria of the
/// three-strand quotient: it is the only monomial action compatible with both.
pub fn kb3_quotient() -> CrystalGroup {
    CrystalGroup::new(
        Family::Kb3,
        3,
        vec![(1, 2), (1, 3)],
        PointGroup::Symmetric(3),
        ActionRule::ParitySwap,
    )
}

pub fn quotient(family: Family, n: usize) -> Result<CrystalGroup> {
    match family {
        Family::Vb => vb_quotient(n),
        Family::Vt => vt_quotient(n),
        Family::PlbExt => plbext_quotient(n),
        Family::Kb3 if n == 3 => Ok(kb3_quotient()),
        Family::Kb3 => Err(Error::StrandCount {
            family: "kb3".into(),
            n,
            min: 3,
        }),
    }
}

fn not_in_family(group: &CrystalGroup, g: &Generator, reason: &str) -> Error {
    Error::SymbolNotInFamily {
        symbol: g.to_string(),
        family: group.family().to_string(),
        reason: reason.to_string(),
    }
}

fn out_of_range(group: &CrystalGroup, g: &Generator) -> Error {
    Error::IndexOutOfRange {
        symbol: g.to_string(),
        n: group.n(),
    }
}

/// Image of one generator in the quotient.
///
/// VB: `σ_i -> (-e_{i,i+1}, τ_i)`, `ρ_i -> (0, τ_i)`, `λ_{i,j} -> (e_{i,j}, 1)`.
/// VT: `σ_i -> (e_{i,i+1}, τ_i)`, and `λ_{j,i} = -e_{i,j}` for `i < j`.
/// PLB: `α_{i,j} -> (e_{i,j}, 1)`, `τ_k -> (0, τ_k)`.
/// KB3: `ρ_i` and `δ_{1,j}` only.
pub fn generator_image(group: &CrystalGroup, g: &Generator) -> Result<Element> {
    let n = group.n();
    let family = group.family();
    let adjacent = |i: usize| -> Result<PointElement> {
        if i == 0 || i >= n {
            return Err(out_of_range(group, g));
        }
        Ok(PointElement::Perm(Perm::adjacent(n, i)?))
    };
    let unit = |i: usize, j: usize, sign: i64| -> Result<Vec<BigInt>> {
        let k = group.index_of(i, j).ok_or_else(|| out_of_range(group, g))?;
        let mut v = group.zero_vector();
        v[k] = BigInt::from(sign);
        Ok(v)
    };
    let valid_pair = |i: usize, j: usize| i != j && (1..=n).contains(&i) && (1..=n).contains(&j);
    let identity = group.point_group().identity();
    match (family, *g) {
        (Family::Vb | Family::Vt | Family::Kb3, Generator::Rho(i)) => {
            group.point_lift(adjacent(i)?)
        }
        (Family::Vb, Generator::Sigma(i)) => {
            let w = adjacent(i)?;
            Ok(Element::new(unit(i, i + 1, -1)?, w))
        }
        (Family::Vt, Generator::Sigma(i)) => {
            let w = adjacent(i)?;
            Ok(Element::new(unit(i, i + 1, 1)?, w))
        }
        (Family::Vb, Generator::Lambda(i, j)) if valid_pair(i, j) => {
            Ok(Element::new(unit(i, j, 1)?, identity))
        }
        (Family::Vt, Generator::Lambda(i, j)) if valid_pair(i, j) => {
            let v = if i < j {
                unit(i, j, 1)?
            } else {
                unit(j, i, -1)?
            };
            Ok(Element::new(v, identity))
        }
        (Family::Vb | Family::Vt, Generator::Lambda(..)) => Err(out_of_range(group, g)),
        (Family::PlbExt, Generator::Alpha(i, j)) if valid_pair(i, j) => {
            Ok(Element::new(unit(i, j, 1)?, identity))
        }
        (Family::PlbExt, Generator::Alpha(..)) => Err(out_of_range(group, g)),
        (Family::PlbExt, Generator::Tau(k)) => {
            if k == 0 || k > n {
                return Err(out_of_range(group, g));
            }
            group.point_lift(PointElement::signs_from(n, &[k]))
        }
        (Family::Kb3, Generator::Delta(i, j)) => Ok(Element::new(unit(i, j, 1)?, identity)),
        (Family::Kb3, Generator::Sigma(_)) => Err(not_in_family(
            group,
            g,
            "the images of σ_i in this quotient are not determined; use ρ and δ words",
        )),
        (Family::PlbExt, _) => Err(not_in_family(group, g, "generators are α[i,j] and τ_k")),
        (Family::Kb3, _) => Err(not_in_family(group, g, "generators are ρ_i and δ[1,j]")),
        (Family::Vb | Family::Vt, _) => Err(not_in_family(
            group,
            g,
            "generators are σ_i, ρ_i and λ[i,j]",
        )),
    }
}

/// One instance of a defining relation `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    /// Name of the relation family, e.g. `"braid"`.
    pub kind: &'static str,
    pub lhs: GenWord,
    pub rhs: GenWord,
}

impl Relation {
    fn new(kind: &'static str, lhs: GenWord, rhs: GenWord) -> Self {
        Relation { kind, lhs, rhs }
    }

    pub fn holds_in(&self, group: &CrystalGroup) -> Result<bool> {
        Ok(evaluate(&self.lhs, group)? == evaluate(&self.rhs, group)?)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |w: &GenWord| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            }
        };
        write!(
            f,
            "{}: {} = {}",
            self.kind,
            side(&self.lhs),
            side(&self.rhs)
        )
    }
}

fn w(symbols: &[(Generator, i64)]) -> GenWord {
    symbols
        .iter()
        .fold(GenWord::empty(), |acc, &(g, e)| acc.then(g, e))
}

use Generator::{Alpha as A, Rho as R, Sigma as S, Tau as T};

fn far_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i.abs_diff(j) >= 2)
        .collect()
}

fn distinct<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    let mut cur = [0usize; K];
    fn rec<const K: usize>(
        n: usize,
        depth: usize,
        cur: &mut [usize; K],
        out: &mut Vec<[usize; K]>,
    ) {
        if depth == K {
            out.push(*cur);
            return;
        }
        for x in 1..=n {
            if !cur[..depth].contains(&x) {
                cur[depth] = x;
                rec(n, depth + 1, cur, out);
            }
        }
    }
    rec(n, 0, &mut cur, &mut out);
    out
}

/// Every instance of every defining relation of the family's presentation.
pub fn defining_relations(family: Family, n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let adj = 1..n.saturating_sub(1);
    let gens = 1..n;
    match family {
        Family::Vb | Family::Vt => {
            if family == Family::Vb {
                for i in adj.clone() {
                    out.push(Relation::new(
                        "s-braid",
                        w(&[(S(i), 1), (S(i + 1), 1), (S(i), 1)]),
                        w(&[(S(i + 1), 1), (S(i), 1), (S(i + 1), 1)]),
                    ));
                }
            } else {
                for i in gens.clone() {
                    out.push(Relation::new(
                        "s-involution",
                        w(&[(S(i), 2)]),
                        GenWord::empty(),
                    ));
                }
            }
            for (i, j) in far_pairs(n).into_iter().filter(|(i, j)| i < j) {
                out.push(Relation::new(
                    "s-commute",
                    w(&[(S(i), 1), (S(j), 1)]),
                    w(&[(S(j), 1), (S(i), 1)]),
                ));
            }
            for i in adj.clone() {
                out.push(Relation::new(
                    "r-braid",
                    w(&[(R(i), 1), (R(i + 1), 1), (R(i), 1)]),
                    w(&[(R(i + 1), 1), (R(i), 1), (R(i + 1), 1)]),
                ));
            }
            for (i, j) in far_pairs(n).into_iter().filter(|(i, j)| i < j) {
                out.push(Relation::new(
                    "r-commute",
                    w(&[(R(i), 1), (R(j), 1)]),
                    w(&[(R(j), 1), (R(i), 1)]),
                ));
            }
            for i in gens.clone() {
                out.push(Relation::new(
                    "r-involution",
                    w(&[(R(i), 2)]),
                    GenWord::empty(),
                ));
            }
            for (i, j) in far_pairs(n) {
                out.push(Relation::new(
                    "mixed-commute",
                    w(&[(S(i), 1), (R(j), 1)]),
                    w(&[(R(j), 1), (S(i), 1)]),
                ));
            }
            for i in adj {
                out.push(Relation::new(
                    "mixed-braid",
                    w(&[(R(i), 1), (R(i + 1), 1), (S(i), 1)]),
                    w(&[(S(i + 1), 1), (R(i), 1), (R(i + 1), 1)]),
                ));
            }
        }
        Family::PlbExt => {
            for [i, j, k, l] in distinct::<4>(n) {
                out.push(Relation::new(
                    "a-commute",
                    w(&[(A(i, j), 1), (A(k, l), 1)]),
                    w(&[(A(k, l), 1), (A(i, j), 1)]),
                ));
            }
            for [i, j, k] in distinct::<3>(n) {
                out.push(Relation::new(
                    "a-common-target",
                    w(&[(A(i, j), 1), (A(k, j), 1)]),
                    w(&[(A(k, j), 1), (A(i, j), 1)]),
                ));
                out.push(Relation::new(
                    "a-triangle",
                    w(&[(A(i, j), 1), (A(k, j), 1), (A(i, k), 1)]),
                    w(&[(A(i, k), 1), (A(i, j), 1), (A(k, j), 1)]),
                ));
            }
            for i in 1..=n {
                out.push(Relation::new(
                    "t-involution",
                    w(&[(T(i), 2)]),
                    GenWord::empty(),
                ));
            }
            for [i, j] in distinct::<2>(n) {
                out.push(Relation::new(
                    "t-source",
                    w(&[(T(i), 1), (A(i, j), 1)]),
                    w(&[(A(i, j), 1), (T(i), 1)]),
                ));
            }
            for [i, j, k] in distinct::<3>(n) {
                out.push(Relation::new(
                    "t-far",
                    w(&[(T(i), 1), (A(j, k), 1)]),
                    w(&[(A(j, k), 1), (T(i), 1)]),
                ));
            }
            for [i, j] in distinct::<2>(n) {
                out.push(Relation::new(
                    "t-target",
                    w(&[(T(i), 1), (A(j, i), 1), (T(i), 1)]),
                    w(&[(A(j, i), -1)]),
                ));
            }
        }
        Family::Kb3 => {
            for i in 1..3 {
                out.push(Relation::new(
                    "r-involution",
                    w(&[(R(i), 2)]),
                    GenWord::empty(),
                ));
            }
            out.push(Relation::new(
                "r-braid",
                w(&[(R(1), 1), (R(2), 1), (R(1), 1)]),
                w(&[(R(2), 1), (R(1), 1), (R(2), 1)]),
            ));
        }
    }
    out
}

/// A relator family from the quotient diagram, instantiated per index `i`.
#[derive(Clone, Copy, Debug)]
pub struct RelatorTemplate {
    pub arrow: u8,
    pub relation: &'static str,
    build: fn(usize) -> GenWord,
    /// Instances run over `1..=n - offset`.
    offset: usize,
}

impl RelatorTemplate {
    pub fn word(&self, i: usize) -> GenWord {
        (self.build)(i)
    }

    pub fn instances(&self, n: usize) -> Vec<(usize, GenWord)> {
        (1..=n.saturating_sub(self.offset))
            .map(|i| (i, self.word(i)))
            .collect()
    }
}

/// Relators `(1)`-`(5)`; each word is `lhs · rhs⁻¹` of the added relation.
pub fn relator_catalogue() -> Vec<RelatorTemplate> {
    vec![
        RelatorTemplate {
            arrow: 1,
            relation: "r_i s_{i+1} s_i = s_{i+1} s_i r_{i+1}",
            build: |i| {
                w(&[
                    (R(i), 1),
                    (S(i + 1), 1),
                    (S(i), 1),
                    (R(i + 1), -1),
                    (S(i), -1),
                    (S(i + 1), -1),
                ])
            },
            offset: 2,
        },
        RelatorTemplate {
            arrow: 2,
            relation: "s_i^2 = 1",
            build: |i| w(&[(S(i), 2)]),
            offset: 1,
        },
        RelatorTemplate {
            arrow: 3,
            relation: "s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}",
            build: |i| {
                w(&[
                    (S(i), 1),
                    (S(i + 1), 1),
                    (S(i), 1),
                    (S(i + 1), -1),
                    (S(i), -1),
                    (S(i + 1), -1),
                ])
            },
            offset: 2,
        },
        RelatorTemplate {
            arrow: 4,
            relation: "r_{i+1} s_i s_{i+1} = s_i s_{i+1} r_i",
            build: |i| {
                w(&[
                    (R(i + 1), 1),
                    (S(i), 1),
                    (S(i + 1), 1),
                    (R(i), -1),
                    (S(i + 1), -1),
                    (S(i), -1),
                ])
            },
            offset: 2,
        },
        RelatorTemplate {
            arrow: 5,
            relation: "s_i r_i = r_i s_i",
            build: |i| w(&[(S(i), 1), (R(i), 1), (S(i), -1), (R(i), -1)]),
            offset: 1,
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorReport {
    pub arrow: u8,
    pub trivial: bool,
    /// `(i, image of the i-th instance)`.
    pub images: Vec<(usize, Element)>,
}

/// Evaluates every instance of relator `arrow` in `group`.
pub fn relator_check(group: &CrystalGroup, arrow: u8) -> Result<RelatorReport> {
    if !matches!(group.family(), Family::Vb | Family::Vt) {
        return Err(Error::SymbolNotInFamily {
            symbol: format!("relator ({arrow})"),
            family: group.family().to_string(),
            reason: "relators are defined for vb and vt".into(),
        });
    }
    let template = relator_catalogue()
        .into_iter()
        .find(|t| t.arrow == arrow)
        .ok_or_else(|| Error::SymbolNotInFamily {
            symbol: format!("relator ({arrow})"),
            family: group.family().to_string(),
            reason: "arrows are numbered 1 to 5".into(),
        })?;
    let images = template
        .instances(group.n())
        .into_iter()
        .map(|(i, word)| Ok((i, evaluate(&word, group)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RelatorReport {
        arrow,
        trivial: images.iter().all(|(_, e)| e.is_identity()),
        images,
    })
}

/// Image of the pure braid generator `A_{i,j}` in the VB quotient: `(e_{i,j} + e_{j,i}, 1)`.
pub fn artin_pure_image(group: &CrystalGroup, i: usize, j: usize) -> Result<Element> {
    if group.family() != Family::Vb || !(1 <= i && i < j && j <= group.n()) {
        return Err(Error::IndexOutOfRange {
            symbol: format!("A[{i},{j}]"),
            n: group.n(),
        });
    }
    let mut v = group.zero_vector();
    v[group.index_of(i, j).expect("valid pair")] = BigInt::from(1);
    v[group.index_of(j, i).expect("valid pair")] = BigInt::from(1);
    group.translation(v)
}
