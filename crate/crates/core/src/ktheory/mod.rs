//! Finitely generated abelian groups, integer homomorphisms and exact
//! sequences.

mod group;
mod matrix;
mod sequence;

pub use group::{
    check_exact, cokernel, cokernel_projection, image_rank, kernel, kernel_inclusion, FGAbelianGroup, GroupHom,
};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use sequence::{pv_sequence, solve_six_term, KnownZero, SixTermData, SixTermSolution};
