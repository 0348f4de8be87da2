//! Crystallographic quotients of virtual, twin and loop braid groups.
//!
//! Elements of a quotient `Z^m ⋊ W` are pairs `(v, w)` with
//! `(v1, w1)(v2, w2) = (v1 + φ(w1) v2, w1 w2)`.

pub mod algebra;
pub mod bieberbach;
pub mod crystal;
pub mod error;
pub mod families;
pub mod json;
pub mod oracle;
mod par;
pub mod torsion;
pub mod word;

pub use crystal::{CrystalGroup, Element, Order, PointElement};
pub use error::{Error, Result};
pub use families::{quotient, Family};
pub use word::{evaluate, parse, GenWord, Generator};
