//! The Bieberbach subgroups `G̃_n` of the VB quotient and the invariants of
//! the flat manifolds they define.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::poly::CyclotomicFactor;
use crate::algebra::{charpoly, cyclotomic_multiplicities, IntMatrix, Poly};
use crate::crystal::{
    fixed_sublattice, orbit_transversal, subgroup_torsion_free, CrystalGroup, Element,
    PointElement, Sublattice,
};
use crate::error::{Error, Result};
use crate::families::{generator_image, vb_quotient};
use crate::word::Generator;

/// A full-rank sublattice of the VB translations together with one lift of
/// the cyclic holonomy generator.
#[derive(Clone, Debug)]
pub struct BieberbachSubgroup {
    pub group: CrystalGroup,
    /// Columns are the basis `Y'` in ambient coordinates, grouped by orbit.
    pub lattice: Sublattice,
    pub lift: Element,
    pub holonomy_order: usize,
    /// Sizes of the orbit blocks of `Y'`, in order.
    pub blocks: Vec<usize>,
}

/// Builds `G̃_n`, generated by `(e_{1,2}, π(ρ_{n-1} ... ρ_1))` and the lattice
/// `Y' = {O_{1,2}} ∪ {n e_{i,j} : (i,j) ≠ (1,2)}`.
///
/// `O_{1,2}` is the sum over the orbit of `e_{1,2}`. Within each orbit block
/// the basis follows powers of the holonomy generator, so the first block is
/// `O_{1,2}, n φ(τ) e_{1,2}, ..., n φ(τ)^{n-1} e_{1,2}`.
pub fn build_gn_tilde(n: usize) -> Result<BieberbachSubgroup> {
    let group = vb_quotient(n)?;
    let mut tau = group.identity();
    for i in (1..n).rev() {
        tau = group.mul(&tau, &generator_image(&group, &Generator::Rho(i))?)?;
    }
    let e12 = group.index_of(1, 2).expect("n >= 2");
    let lift = Element::new(group.basis_vector(e12), tau.w.clone());
    let data = orbit_transversal(&group, &tau.w)?;
    let scale = BigInt::from(n);
    let mut columns = Vec::with_capacity(group.rank());
    let mut blocks = Vec::new();
    let first = data
        .orbit_of(e12)
        .ok_or_else(|| Error::Internal("e_{1,2} has no orbit".into()))?;
    let mut orbit_sum = group.zero_vector();
    for &m in &first.members {
        orbit_sum[m] = BigInt::one();
    }
    columns.push(orbit_sum);
    for &m in &first.members[1..] {
        columns.push(scaled_unit(&group, m, &scale));
    }
    blocks.push(first.members.len());
    for orbit in data.orbits.iter().filter(|o| !o.members.contains(&e12)) {
        for &m in &orbit.members {
            columns.push(scaled_unit(&group, m, &scale));
        }
        blocks.push(orbit.members.len());
    }
    let lattice = Sublattice::new(group.rank(), &columns)?;
    Ok(BieberbachSubgroup {
        holonomy_order: tau.w.order() as usize,
        group,
        lattice,
        lift,
        blocks,
    })
}

fn scaled_unit(group: &CrystalGroup, k: usize, scale: &BigInt) -> Vec<BigInt> {
    let mut v = group.zero_vector();
    v[k] = scale.clone();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BieberbachVerification {
    pub dimension: usize,
    pub holonomy_order: usize,
    pub lattice_full_rank: bool,
    /// `lift^t ∈ lattice` for the holonomy order `t`.
    pub closed: bool,
    /// The holonomy acts faithfully on the lattice.
    pub faithful: bool,
    pub torsion_free: bool,
    pub torsion_element: Option<Element>,
}

impl BieberbachVerification {
    pub fn is_bieberbach(&self) -> bool {
        self.lattice_full_rank && self.closed && self.faithful && self.torsion_free
    }
}

fn lifts(sub: &BieberbachSubgroup) -> Result<Vec<Element>> {
    (0..sub.holonomy_order as i64)
        .map(|k| sub.group.pow(&sub.lift, k))
        .collect()
}

pub fn verify_bieberbach(sub: &BieberbachSubgroup) -> Result<BieberbachVerification> {
    let t = sub.holonomy_order;
    let top = sub.group.pow(&sub.lift, t as i64)?;
    let closed = top.w.is_identity() && sub.lattice.contains(&top.v);
    let m = holonomy_matrix(sub)?;
    let id = IntMatrix::identity(m.rows());
    let faithful = (1..t as u32).all(|j| m.pow(j) != id) && m.pow(t as u32) == id;
    let lifts = lifts(sub)?;
    let check = subgroup_torsion_free(&sub.group, &sub.lattice, &lifts)?;
    Ok(BieberbachVerification {
        dimension: sub.lattice.rank(),
        holonomy_order: t,
        lattice_full_rank: sub.lattice.is_full_rank(),
        closed,
        faithful,
        torsion_free: check.torsion_free,
        torsion_element: check.torsion_element,
    })
}

/// Rank and basis of the translations fixed by the holonomy.
pub fn center_rank(sub: &BieberbachSubgroup) -> Result<(usize, Sublattice)> {
    let fixed = fixed_sublattice(&sub.group, &sub.lattice, std::slice::from_ref(&sub.lift.w))?;
    Ok((fixed.rank(), fixed))
}

/// The action of the holonomy generator on the lattice, in `Y'` coordinates.
pub fn holonomy_matrix(sub: &BieberbachSubgroup) -> Result<IntMatrix> {
    action_matrix(&sub.group, &sub.lattice, &sub.lift.w)
}

fn action_matrix(
    group: &CrystalGroup,
    lattice: &Sublattice,
    w: &PointElement,
) -> Result<IntMatrix> {
    let smith = lattice.basis().smith();
    let columns = lattice
        .columns()
        .iter()
        .map(|c| match smith.solve(&group.act(w, c)) {
            Ok(sol) => Ok(sol.particular),
            Err(Error::NoSolution) => Err(Error::InconsistentLifts(format!(
                "lattice is not invariant under {w}"
            ))),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_columns(lattice.rank(), &columns)
}

fn cyclic_matrix(sub: &BieberbachSubgroup) -> Result<IntMatrix> {
    let m = holonomy_matrix(sub)?;
    if m.pow(sub.holonomy_order as u32) != IntMatrix::identity(m.rows()) {
        return Err(Error::NonCyclicHolonomy);
    }
    Ok(m)
}

/// `dim - rank(M - I)`.
pub fn betti_1(sub: &BieberbachSubgroup) -> Result<usize> {
    let m = holonomy_matrix(sub)?;
    Ok(m.rows() - m.sub(&IntMatrix::identity(m.rows())).rank())
}

/// The holonomy is generated by `M`, so it lies in `SL` iff `det M = 1`.
pub fn is_orientable(sub: &BieberbachSubgroup) -> Result<bool> {
    Ok(holonomy_matrix(sub)?.det().is_one())
}

fn multiplicities(sub: &BieberbachSubgroup) -> Result<(Poly, Vec<CyclotomicFactor>)> {
    let m = cyclic_matrix(sub)?;
    let p = charpoly(&m);
    let (factors, rest) = cyclotomic_multiplicities(&p, sub.holonomy_order);
    if rest != Poly::one() {
        return Err(Error::Internal(format!(
            "characteristic polynomial has a non-cyclotomic factor {rest:?}"
        )));
    }
    Ok((p, factors))
}

/// Every rational-irreducible summand occurs at least twice.
pub fn admits_anosov(sub: &BieberbachSubgroup) -> Result<(bool, Vec<CyclotomicFactor>)> {
    let (_, factors) = multiplicities(sub)?;
    let ok = factors
        .iter()
        .filter(|f| f.multiplicity > 0)
        .all(|f| f.multiplicity >= 2);
    Ok((ok, factors))
}

/// Even dimension, with the eigenvalues `1` and (for even order) `-1` of even multiplicity.
pub fn is_kahler(sub: &BieberbachSubgroup) -> Result<(bool, Vec<CyclotomicFactor>)> {
    let (_, factors) = multiplicities(sub)?;
    let real: Vec<CyclotomicFactor> = factors.into_iter().filter(|f| f.d <= 2).collect();
    let ok = sub.lattice.rank().is_multiple_of(2) && real.iter().all(|f| f.multiplicity % 2 == 0);
    Ok((ok, real))
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldReport {
    pub n: usize,
    pub dimension: usize,
    pub holonomy_order: usize,
    pub betti1: usize,
    pub betti1_formula: String,
    pub orientable: bool,
    pub kahler: bool,
    pub anosov: bool,
    pub torsion_free: bool,
    pub center_rank: usize,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub determinant: BigInt,
    pub charpoly: Poly,
    pub cyclotomic: Vec<CyclotomicFactor>,
    pub blocks: Vec<IntMatrix>,
}

pub fn manifold_report(n: usize) -> Result<ManifoldReport> {
    let sub = build_gn_tilde(n)?;
    let m = holonomy_matrix(&sub)?;
    let verification = verify_bieberbach(&sub)?;
    let (charpoly, cyclotomic) = multiplicities(&sub)?;
    let betti1 = betti_1(&sub)?;
    let mut blocks = Vec::new();
    let mut start = 0;
    for &size in &sub.blocks {
        blocks.push(m.block(start, size));
        start += size;
    }
    Ok(ManifoldReport {
        n,
        dimension: m.rows(),
        holonomy_order: sub.holonomy_order,
        betti1,
        betti1_formula: format!(
            "n(n-1) - rank(M - I) = {} - {} = {betti1}",
            m.rows(),
            m.rows() - betti1
        ),
        orientable: is_orientable(&sub)?,
        kahler: is_kahler(&sub)?.0,
        anosov: admits_anosov(&sub)?.0,
        torsion_free: verification.torsion_free,
        center_rank: center_rank(&sub)?.0,
        determinant: m.det(),
        charpoly,
        cyclotomic,
        blocks,
    })
}

/// True when every entry of `m` outside the diagonal blocks is zero.
pub fn is_block_diagonal(m: &IntMatrix, blocks: &[usize]) -> bool {
    let mut owner = Vec::with_capacity(m.rows());
    for (b, &size) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, size));
    }
    owner.len() == m.rows()
        && (0..m.rows())
            .all(|i| (0..m.cols()).all(|j| owner[i] == owner[j] || m.get(i, j).is_zero()))
}
