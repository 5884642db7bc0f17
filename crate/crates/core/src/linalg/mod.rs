//! Exact integer and rational linear algebra.

pub mod diophantine;
pub mod hermite;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod rank;
pub mod smith;

pub use diophantine::{solve_diophantine, solve_with_smith, DiophantineOutcome, Infeasibility};
pub use hermite::{column_hermite, ColumnHermite};
pub use lattice::{lattice_quotient, AbelianGroupStructure, LatticeQuotient};
pub use lp::{Inequalities, LpOutcome, Sense};
pub use matrix::{big_vec, dot, IntMatrix};
pub use rank::{rank_of_columns, rank_of_rows, EchelonBasis};
pub use smith::{smith_normal_form, SmithDecomposition};
