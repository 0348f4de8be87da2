//! Torsion certificates, synthesis of elements with prescribed order,
//! conjugacy normal forms and realizations of `Z_n ⋊ Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::{IntMatrix, Perm};
use crate::crystal::{orbit_transversal, CrystalGroup, Element, Order, PointElement, PointGroup};
use crate::error::{Error, Result};
use crate::families::{generator_image, Family};
use crate::word::{format_element, Generator};

/// Signed coefficient sum over one orbit of basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitSum {
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
    /// `Σ s_k a_{m_k}` taken over one full signed period of the orbit.
    pub sum: BigInt,
    pub self_inverse: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionCertificate {
    pub element: Element,
    pub order: Order,
    pub orbit_sums: Vec<OrbitSum>,
    pub transversal: Vec<(usize, usize)>,
}

impl TorsionCertificate {
    pub fn is_torsion(&self) -> bool {
        self.order.is_finite()
    }
}

/// Decides the order of `e` from its orbit sums alone.
///
/// The period of a signed orbit is its length when the accumulated sign is
/// `+1` and twice its length otherwise, so self-inverse orbits always sum to
/// zero.
pub fn torsion_certificate(group: &CrystalGroup, e: &Element) -> Result<TorsionCertificate> {
    group.check(e)?;
    let data = orbit_transversal(group, &e.w)?;
    let labels = group.labels();
    let orbit_sums: Vec<OrbitSum> = data
        .orbits
        .iter()
        .map(|o| {
            let single: BigInt = o
                .members
                .iter()
                .zip(&o.signs)
                .map(|(&m, &s)| &e.v[m] * BigInt::from(s))
                .sum();
            // the second pass of a self-inverse orbit repeats everything negated
            let sum = if o.self_inverse {
                BigInt::zero()
            } else {
                single
            };
            OrbitSum {
                representative: labels[o.representative()],
                members: o.members.iter().map(|&m| labels[m]).collect(),
                sum,
                self_inverse: o.self_inverse,
            }
        })
        .collect();
    let order = if orbit_sums.iter().all(|s| s.sum.is_zero()) {
        Order::Finite(e.w.order())
    } else {
        Order::Infinite
    };
    Ok(TorsionCertificate {
        element: e.clone(),
        order,
        transversal: data.transversal().into_iter().map(|k| labels[k]).collect(),
        orbit_sums,
    })
}

fn permutation_family(group: &CrystalGroup) -> Result<usize> {
    match group.point_group() {
        PointGroup::Symmetric(n) => Ok(n),
        PointGroup::SignTuples(_) => Err(Error::AmbientMismatch {
            group: group.name(),
            reason: "point group has no cycle types".into(),
        }),
    }
}

/// `ρ`-word whose blocks of consecutive generators realize `cycle_type`.
///
/// Block `q` occupies strands `s_q + 1 ..= s_q + n_q` with `s_q = n_1 + ... + n_{q-1}`.
pub fn cycle_type_point(group: &CrystalGroup, cycle_type: &[usize]) -> Result<PointElement> {
    let n = permutation_family(group)?;
    let total: usize = cycle_type.iter().sum();
    if cycle_type.iter().any(|&c| c < 2) || total > n {
        return Err(Error::PartitionDoesNotFit {
            cycle_type: cycle_type.to_vec(),
            n,
        });
    }
    let mut w = group.identity();
    let mut start = 0;
    for &len in cycle_type {
        for i in start + 1..start + len {
            w = group.mul(&w, &generator_image(group, &Generator::Rho(i))?)?;
        }
        start += len;
    }
    Ok(w.w)
}

/// `(0, w)` with `w` a product of disjoint consecutive cycles of the given lengths.
pub fn make_torsion_element(group: &CrystalGroup, cycle_type: &[usize]) -> Result<Element> {
    Ok(Element::new(
        group.zero_vector(),
        cycle_type_point(group, cycle_type)?,
    ))
}

/// Like [`make_torsion_element`] with a random translation whose orbit sums vanish.
///
/// Coefficients are drawn from `-bound..=bound` and each representative is
/// then set to cancel the rest of its orbit.
pub fn make_random_torsion_element<R: Rng + ?Sized>(
    group: &CrystalGroup,
    cycle_type: &[usize],
    bound: i64,
    rng: &mut R,
) -> Result<Element> {
    let w = cycle_type_point(group, cycle_type)?;
    let data = orbit_transversal(group, &w)?;
    let mut v = group.zero_vector();
    for o in &data.orbits {
        for &m in &o.members {
            v[m] = BigInt::from(rng.gen_range(-bound..=bound));
        }
        if !o.self_inverse {
            let rest: BigInt = o.members[1..]
                .iter()
                .zip(&o.signs[1..])
                .map(|(&m, &s)| &v[m] * BigInt::from(s))
                .sum();
            v[o.representative()] = -rest;
        }
    }
    Ok(Element::new(v, w))
}

/// Moves each orbit's coefficient sum onto its least basis vector.
///
/// Only defined for unsigned actions, where `(I - φ(w)) x` reaches every
/// vector with vanishing orbit sums.
pub fn conjugacy_normal_form(group: &CrystalGroup, e: &Element) -> Result<Element> {
    group.check(e)?;
    if matches!(group.family(), Family::Vt | Family::PlbExt) {
        return Err(Error::SignedFamily(group.name()));
    }
    let data = orbit_transversal(group, &e.w)?;
    let mut v = group.zero_vector();
    for o in &data.orbits {
        v[o.representative()] = o.members.iter().map(|&m| &e.v[m]).sum();
    }
    Ok(Element::new(v, e.w.clone()))
}

/// `A` of order `n` and `B` of infinite order with `B A B⁻¹ = A^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VcRealization {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub a: Element,
    pub b: Element,
    pub gamma: Perm,
    pub a_has_order_n: bool,
    pub conjugation_holds: bool,
    pub b_infinite: bool,
    /// `⟨A⟩ ∩ ⟨B⟩ = 1`, checked on translations of the powers.
    pub trivial_intersection: bool,
    pub transcript: Vec<String>,
}

impl VcRealization {
    pub fn verified(&self) -> bool {
        self.a_has_order_n && self.conjugation_holds && self.b_infinite && self.trivial_intersection
    }
}

/// Realizes `Z_n ⋊_k Z` in the VB or VT quotient on `n` strands.
///
/// `A` is the image of `ρ_1 ... ρ_{n-1}`. For each `γ` with
/// `γ π(A) γ⁻¹ = π(A)^k`, in lexicographic order, the system
/// `(I - φ(π(A)^k)) x = -c` is solved, `c` being the translation of
/// `γ̃ A γ̃⁻¹ A^{-k}`. `B = (x, γ)` for the first solution `x` in
/// `p, p + h_1, ..., p + h_r` with infinite order.
pub fn realize_virtually_cyclic(family: Family, n: usize, k: usize) -> Result<VcRealization> {
    if !matches!(family, Family::Vb | Family::Vt) {
        return Err(Error::AmbientMismatch {
            group: family.to_string(),
            reason: "virtually cyclic realizations are built in vb and vt".into(),
        });
    }
    let group = crate::families::quotient(family, n)?;
    if k == 0 || k >= n || n.gcd(&k) != 1 {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n - 1 and gcd(n, k) = 1, got n = {n}, k = {k}"
        )));
    }
    let mut transcript = Vec::new();
    let mut a = group.identity();
    for i in 1..n {
        a = group.mul(&a, &generator_image(&group, &Generator::Rho(i))?)?;
    }
    let ak = group.pow(&a, k as i64)?;
    transcript.push(format!("A = {}", format_element(&group, &a)));
    let gammas = group.point_group().conjugators(&a.w, &ak.w)?;
    if gammas.is_empty() {
        return Err(Error::NoConjugator { n, k });
    }
    let system = IntMatrix::identity(group.rank()).sub(&group.phi(&ak.w).to_matrix());
    let smith = system.smith();
    for gamma in gammas {
        let lift = group.point_lift(gamma.clone())?;
        let moved = group.conjugate(&lift, &a)?;
        let defect = group.mul(&moved, &group.inv(&ak)?)?;
        debug_assert!(defect.w.is_identity());
        let rhs: Vec<BigInt> = defect.v.iter().map(|x| -x).collect();
        transcript.push(format!(
            "gamma = {gamma}, defect = {}",
            format_element(&group, &defect)
        ));
        let sol = match smith.solve(&rhs) {
            Ok(sol) => sol,
            Err(Error::NoSolution) => {
                transcript.push("  conjugation system has no solution".into());
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut candidates = vec![sol.particular.clone()];
        candidates.extend(sol.homogeneous.iter().map(|h| {
            sol.particular
                .iter()
                .zip(h)
                .map(|(p, x)| p + x)
                .collect::<Vec<_>>()
        }));
        for x in candidates {
            let b = Element::new(x, gamma.clone());
            if group.order(&b)? == Order::Infinite {
                transcript.push(format!("B = {}", format_element(&group, &b)));
                return finish(group, family, n, k, a, b, transcript);
            }
            transcript.push(format!(
                "  candidate {} has finite order",
                format_element(&group, &b)
            ));
        }
    }
    Err(Error::NoInfiniteOrderComplement {
        family: family.to_string(),
        n,
        k,
    })
}

fn finish(
    group: CrystalGroup,
    family: Family,
    n: usize,
    k: usize,
    a: Element,
    b: Element,
    mut transcript: Vec<String>,
) -> Result<VcRealization> {
    let a_has_order_n = group.pow(&a, n as i64)?.is_identity()
        && (1..n).all(|j| {
            !group
                .pow(&a, j as i64)
                .map(|p| p.is_identity())
                .unwrap_or(true)
        });
    let conjugation_holds = group.conjugate(&b, &a)? == group.pow(&a, k as i64)?;
    let b_infinite = group.order(&b)? == Order::Infinite;
    let t = b.w.order() as i64;
    let b_power_moves = !group.pow(&b, t)?.translation_is_zero();
    let a_powers_rotate = (1..n as i64).all(|j| {
        group
            .pow(&a, j)
            .map(|p| p.translation_is_zero() && !p.w.is_identity())
            .unwrap_or(false)
    });
    let trivial_intersection = b_power_moves && a_powers_rotate;
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    transcript.push(format!("A^{n} = 1: {}", mark(a_has_order_n)));
    transcript.push(format!("B A B^-1 = A^{k}: {}", mark(conjugation_holds)));
    transcript.push(format!("B has infinite order: {}", mark(b_infinite)));
    transcript.push(format!(
        "<A> meets <B> trivially: {}",
        mark(trivial_intersection)
    ));
    let gamma =
        b.w.as_perm()
            .cloned()
            .ok_or_else(|| Error::Internal("complement over a sign tuple".into()))?;
    let out = VcRealization {
        family,
        n,
        k,
        a,
        b,
        gamma,
        a_has_order_n,
        conjugation_holds,
        b_infinite,
        trivial_intersection,
        transcript,
    };
    if !out.verified() {
        return Err(Error::Internal(format!(
            "realization for (n, k) = ({n}, {k}) failed its own checks"
        )));
    }
    Ok(out)
}
