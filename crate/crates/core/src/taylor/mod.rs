//! Generalized Taylor coefficients of the transmutation kernel.

mod jet;
mod params;
mod stable;

pub use jet::{
    coefficients_from_jet, coeffs_to_derivs, darboux_jet, derivs_to_coeffs, expansion_coefficients, inverse_function_jet,
    kernel_derivatives_at_origin, kernel_derivatives_with_table, solution_coefficients, ExpansionCoefficients, JetScalar,
    PotentialJet,
};
pub use params::{enumerate_parameter_lists, ParameterList};
pub use stable::{s_direct, s_table_recurrent, SCoefficientTable};
