//! Dense complex linear algebra for one and two qubits: hermitian and
//! unitary matrices, deviation-matrix states, partial trace, Pauli
//! decomposition and the partial-transpose separability test.

mod matrix;
mod pauli;
mod state;

pub use matrix::{
    hermiticity_defect, tensor, unitarity_defect, CMatrix, HermitianMatrix, Tensor, UnitaryMatrix, HERMITIAN_TOL,
    PSD_TOL, UNITARY_TOL,
};
pub use pauli::{bloch_operator, pauli_decompose, Pauli, PauliCoefficients, AXES};
pub use state::{
    basis_state, entanglement_epsilon_bound, is_ppt_entangled, partial_trace, partial_transpose, ppt_onset_epsilon,
    pseudo_pure, DeviationState, Party, PptReport, DEFAULT_EPSILON, PPT_TOL, TRACE_TOL,
};

pub(crate) use matrix::c;
