use super::group::{CrystalGroup, PointElement};
use crate::error::Result;

/// One orbit of basis vectors under `⟨φ(w)⟩`.
///
/// `φ(w)^k e_{members[0]} = signs[k] e_{members[k]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orbit {
    pub members: Vec<usize>,
    pub signs: Vec<i8>,
    /// The orbit meets both a basis vector and its negative.
    pub self_inverse: bool,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitData {
    pub orbits: Vec<Orbit>,
}

impl OrbitData {
    /// Representatives, one per orbit, in increasing basis order.
    pub fn transversal(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::representative).collect()
    }

    pub fn orbit_of(&self, k: usize) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.members.contains(&k))
    }
}

/// Orbits of the basis under `⟨φ(w)⟩`, each represented by its least basis index.
pub fn orbit_transversal(group: &CrystalGroup, w: &PointElement) -> Result<OrbitData> {
    group.check_point(w)?;
    let phi = group.phi(w);
    let m = group.rank();
    let mut seen = vec![false; m];
    let mut orbits = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        let mut signs = vec![1i8];
        seen[start] = true;
        let (mut at, mut sign) = phi.image_of_basis(start);
        while at != start {
            seen[at] = true;
            members.push(at);
            signs.push(sign);
            let (next, s) = phi.image_of_basis(at);
            at = next;
            sign *= s;
        }
        orbits.push(Orbit {
            members,
            signs,
            self_inverse: sign == -1,
        });
    }
    Ok(OrbitData { orbits })
}
