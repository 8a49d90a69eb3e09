//! Exact integer linear algebra over arbitrary-precision integers.

mod matrix;
mod modular;
mod smith;

pub use matrix::IntMatrix;
pub use modular::{
    critical_dim, homology, kernel_basis, kernel_mod, kernel_mod_order, modulus, module_order_mod, reduce_vec,
    solve_integer, solve_mod, solve_with,
};
pub use smith::{cokernel_structure, smith_normal_form, AbelianGroup, SmithDecomposition};
