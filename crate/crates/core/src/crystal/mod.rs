pub mod decide;
pub mod group;
pub mod orbit;

pub use decide::{
    conjugacy_test, fixed_sublattice, is_crystallographic, norm_matrix, subgroup_torsion_free,
    Conjugacy, Faithfulness, Sublattice, TorsionFreeness, DEFAULT_ENUMERATION_CAP,
};
pub use group::{ActionRule, CrystalGroup, Element, Order, PointElement, PointGroup};
pub use orbit::{orbit_transversal, Orbit, OrbitData};
