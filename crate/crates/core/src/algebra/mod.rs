pub mod matrix;
pub mod monomial;
pub mod perm;
pub mod poly;

pub use matrix::{hermite_rows, smith_solve, IntMatrix, SmithForm, Solution};
pub use monomial::MonomialMatrix;
pub use perm::{all_perms, find_conjugators, RightPerm, Perm};
pub use poly::{charpoly, cyclotomic, cyclotomic_multiplicities, Poly};
