use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{CrystalGroup, Element, Order, PointElement};
use crate::algebra::{hermite_rows, IntMatrix, MonomialMatrix};
use crate::error::{Error, Result};
use crate::par;

/// Largest point group `is_crystallographic` enumerates by default (`10!`).
pub const DEFAULT_ENUMERATION_CAP: u128 = 3_628_800;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Conjugacy {
    /// `g` with `g e1 g⁻¹ = e2`.
    Conjugate(Element),
    NotConjugate,
}

impl Conjugacy {
    pub fn witness(&self) -> Option<&Element> {
        match self {
            Conjugacy::Conjugate(g) => Some(g),
            Conjugacy::NotConjugate => None,
        }
    }
}

/// Decides whether `e1` and `e2` are conjugate.
///
/// For every `c` with `c w1 c⁻¹ = w2` the system `(I - φ(w2)) x = v2 - φ(c) v1`
/// is solved over the integers; the first solvable `c` in enumeration order
/// gives the witness `(x, c)`.
pub fn conjugacy_test(group: &CrystalGroup, e1: &Element, e2: &Element) -> Result<Conjugacy> {
    group.check(e1)?;
    group.check(e2)?;
    let conjugators = group.point_group().conjugators(&e1.w, &e2.w)?;
    if conjugators.is_empty() {
        return Ok(Conjugacy::NotConjugate);
    }
    let m = group.rank();
    let system = IntMatrix::identity(m).sub(&group.phi(&e2.w).to_matrix());
    let smith = system.smith();
    for c in conjugators {
        let moved = group.act(&c, &e1.v);
        let b: Vec<BigInt> = e2.v.iter().zip(moved).map(|(x, y)| x - y).collect();
        match smith.solve(&b) {
            Ok(sol) => return Ok(Conjugacy::Conjugate(Element::new(sol.particular, c))),
            Err(Error::NoSolution) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(Conjugacy::NotConjugate)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Faithfulness {
    pub faithful: bool,
    /// First nontrivial element acting as the identity, if any.
    pub kernel_witness: Option<PointElement>,
    pub point_group_size: u128,
}

/// The action is faithful iff no nontrivial `w` has `φ(w) = I`.
pub fn is_crystallographic(group: &CrystalGroup, cap: u128) -> Result<Faithfulness> {
    let size = group.point_group().size();
    if size > cap {
        return Err(Error::EnumerationCap { size, cap });
    }
    let elements = group.point_elements();
    let kernel_witness = par::find_first(&elements, |w| {
        (!w.is_identity() && group.phi(w).is_identity()).then(|| w.clone())
    });
    Ok(Faithfulness {
        faithful: kernel_witness.is_none(),
        kernel_witness,
        point_group_size: size,
    })
}

/// A sublattice of `Z^m` given by basis columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient_rank: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Sublattice {
            basis: IntMatrix::from_columns(ambient_rank, columns)?,
        })
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice {
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        crate::algebra::smith_solve(&self.basis, v)
            .ok()
            .map(|s| s.particular)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionFreeness {
    pub torsion_free: bool,
    /// A nontrivial element of finite order, if one exists.
    pub torsion_element: Option<Element>,
    pub holonomy_order: usize,
}

/// `Σ_{k < t} φ(w)^k` as a dense matrix, `t` the order of `w`.
pub fn norm_matrix(group: &CrystalGroup, w: &PointElement) -> IntMatrix {
    let phi = group.phi(w);
    let mut power = MonomialMatrix::identity(group.rank());
    let mut acc = IntMatrix::zeros(group.rank(), group.rank());
    for _ in 0..w.order() {
        acc = acc.add(&power.to_matrix());
        power = phi.compose(&power);
    }
    acc
}

/// Decides whether the group generated by `lattice` and `lifts` is torsion-free.
///
/// `lifts` holds one lift per holonomy element. At holonomy `g` with lift
/// `(v_g, w_g)` there is torsion iff `N_g (x + v_g) = 0` for some `x` in the
/// lattice, where `N_g` is the norm of `φ(w_g)`.
pub fn subgroup_torsion_free(
    group: &CrystalGroup,
    lattice: &Sublattice,
    lifts: &[Element],
) -> Result<TorsionFreeness> {
    check_lifts(group, lattice, lifts)?;
    let basis = lattice.basis();
    let found = par::find_first(lifts, |lift| {
        if lift.w.is_identity() {
            return None;
        }
        let norm = norm_matrix(group, &lift.w);
        let rhs: Vec<BigInt> = norm.mul_vec(&lift.v).into_iter().map(|x| -x).collect();
        let sol = crate::algebra::smith_solve(&norm.mul(basis), &rhs).ok()?;
        let x = basis.mul_vec(&sol.particular);
        let v = x.iter().zip(&lift.v).map(|(a, b)| a + b).collect();
        Some(Element::new(v, lift.w.clone()))
    });
    if let Some(t) = &found {
        debug_assert!(matches!(group.order(t), Ok(Order::Finite(_))));
    }
    Ok(TorsionFreeness {
        torsion_free: found.is_none(),
        torsion_element: found,
        holonomy_order: lifts.len(),
    })
}

fn check_lifts(group: &CrystalGroup, lattice: &Sublattice, lifts: &[Element]) -> Result<()> {
    if lattice.ambient_rank() != group.rank() {
        return Err(Error::DimensionMismatch {
            expected: group.rank(),
            found: lattice.ambient_rank(),
        });
    }
    for lift in lifts {
        group.check(lift)?;
    }
    for (i, a) in lifts.iter().enumerate() {
        if lifts[..i].iter().any(|b| b.w == a.w) {
            return Err(Error::InconsistentLifts(format!("two lifts over {}", a.w)));
        }
        for column in lattice.columns() {
            if !lattice.contains(&group.act(&a.w, &column)) {
                return Err(Error::InconsistentLifts(format!(
                    "lattice is not invariant under {}",
                    a.w
                )));
            }
        }
        for b in lifts {
            let ab = group.mul_unchecked(a, b);
            let Some(target) = lifts.iter().find(|l| l.w == ab.w) else {
                return Err(Error::InconsistentLifts(format!(
                    "holonomy is not closed: {} is missing",
                    ab.w
                )));
            };
            let diff: Vec<BigInt> = ab.v.iter().zip(&target.v).map(|(x, y)| x - y).collect();
            if !lattice.contains(&diff) {
                return Err(Error::InconsistentLifts(format!(
                    "lift({}) lift({}) differs from lift({}) outside the lattice",
                    a.w, b.w, ab.w
                )));
            }
        }
    }
    Ok(())
}

/// Hermite-reduced basis of `{x ∈ L : φ(h) x = x for every h}`.
pub fn fixed_sublattice(
    group: &CrystalGroup,
    lattice: &Sublattice,
    holonomy: &[PointElement],
) -> Result<Sublattice> {
    for h in holonomy {
        group.check_point(h)?;
    }
    let basis = lattice.basis();
    let m = group.rank();
    let blocks: Vec<IntMatrix> = holonomy
        .iter()
        .map(|h| {
            group
                .phi(h)
                .to_matrix()
                .sub(&IntMatrix::identity(m))
                .mul(basis)
        })
        .collect();
    let vectors: Vec<Vec<BigInt>> = if blocks.is_empty() {
        lattice.columns()
    } else {
        let system = IntMatrix::vstack(&blocks)?;
        let zero = vec![BigInt::zero(); system.rows()];
        crate::algebra::smith_solve(&system, &zero)?
            .homogeneous
            .iter()
            .map(|y| basis.mul_vec(y))
            .collect()
    };
    Sublattice::new(m, &hermite_rows(vectors))
}
