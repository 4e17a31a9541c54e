//! Positive-partial-transpose separability test, the counterpoint showing
//! that separable states can still carry discord.

use crate::error::Result;
use crate::linalg::{hermitian_eigen, partial_transpose};
use crate::states::BipartiteState;

/// Eigenvalues of the partial transpose above -PPT_TOL count as nonnegative.
pub const PPT_TOL: f64 = 1e-10;

/// Outcome of the partial-transpose test.
///
/// `is_ppt` holds exactly when `min_eigenvalue >= -PPT_TOL`. The test is
/// conclusive as a separability criterion only for joint dimension ≤ 6
/// (2×2 and 2×3); `conclusive` is false beyond that.
#[derive(Debug, Clone, Copy)]
pub struct PptVerdict {
    pub min_eigenvalue: f64,
    pub is_ppt: bool,
    pub conclusive: bool,
}

/// Spectrum test of the partial transpose of a bipartite state.
pub fn ppt_test(state: &BipartiteState) -> Result<PptVerdict> {
    let pt = partial_transpose(state.rho(), state.dim_s(), state.dim_a())?;
    let eig = hermitian_eigen(&pt)?;
    let min_eigenvalue = eig.min_eigenvalue();
    Ok(PptVerdict {
        min_eigenvalue,
        is_ppt: min_eigenvalue >= -PPT_TOL,
        conclusive: state.dim() <= 6,
    })
}
