//! Complete projective measurements on subsystem A: conditioning on
//! outcomes, the dephasing map of an unread measurement, the superselection
//! residual, and the pure-product decomposition of classically accessible
//! states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, ket_outer, partial_trace, tensor, ComplexMatrix, Subsystem,
};
use crate::states::BipartiteState;

/// Tolerance on projector idempotence, orthogonality, and completeness.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Outcomes below this probability carry no conditional state and
/// contribute nothing to conditional entropies (0·log 0 = 0).
pub const P_FLOOR: f64 = 1e-12;
/// Superselection residual ceiling for the pure-product decomposition.
pub const DECOMP_TOL: f64 = 1e-8;

/// A complete set of mutually orthogonal projectors on H_A.
///
/// Multi-rank projectors are first-class; rank-1 sets are what
/// [`qubit_basis`] constructs. Outcome ordering is the constructor's
/// projector order and is preserved by every downstream report.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    dim_a: usize,
    projectors: Vec<ComplexMatrix>,
    ranks: Vec<usize>,
}

impl ProjectiveMeasurement {
    /// Validates idempotence, Hermiticity, mutual orthogonality, and
    /// completeness, all at [`PROJECTOR_TOL`].
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let dim_a = projectors
            .first()
            .map(ComplexMatrix::dim)
            .ok_or(Error::NotComplete { deviation: 1.0 })?;
        let mut ranks = Vec::with_capacity(projectors.len());
        for (index, p) in projectors.iter().enumerate() {
            if p.dim() != dim_a {
                return Err(Error::DimensionMismatch {
                    expected: dim_a,
                    actual: p.dim(),
                });
            }
            let herm = p.hermiticity_deviation();
            let idem = (p * p).max_abs_diff(p);
            let deviation = herm.max(idem);
            if deviation > PROJECTOR_TOL {
                return Err(Error::NotProjector { index, deviation });
            }
            ranks.push(p.trace().re.round() as usize);
        }
        for i in 0..projectors.len() {
            for j in (i + 1)..projectors.len() {
                let deviation = (&projectors[i] * &projectors[j]).max_abs();
                if deviation > PROJECTOR_TOL {
                    return Err(Error::NotOrthogonal {
                        first: i,
                        second: j,
                        deviation,
                    });
                }
            }
        }
        let mut sum = ComplexMatrix::zeros(dim_a);
        for p in &projectors {
            sum = &sum + p;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim_a));
        if deviation > PROJECTOR_TOL {
            return Err(Error::NotComplete { deviation });
        }
        Ok(Self {
            dim_a,
            projectors,
            ranks,
        })
    }

    /// The trivial measurement {Id_A}: a single full-rank sector.
    pub fn identity(dim_a: usize) -> Self {
        Self {
            dim_a,
            projectors: vec![ComplexMatrix::identity(dim_a)],
            ranks: vec![dim_a],
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn is_rank_one(&self) -> bool {
        self.ranks.iter().all(|&r| r == 1)
    }
}

/// Rank-1 qubit basis parametrized by the polar pair (θ, φ):
/// projectors onto cos θ|0⟩ + e^{iφ} sin θ|1⟩ and its orthogonal
/// complement e^{-iφ} sin θ|0⟩ - cos θ|1⟩. Angles wrap.
pub fn qubit_basis(theta: f64, phi: f64) -> ProjectiveMeasurement {
    let (sin, cos) = theta.sin_cos();
    let phase = Complex64::from_polar(1.0, phi);
    let v0 = [Complex64::new(cos, 0.0), phase * sin];
    let v1 = [phase.conj() * sin, Complex64::new(-cos, 0.0)];
    ProjectiveMeasurement {
        dim_a: 2,
        projectors: vec![ket_outer(&v0), ket_outer(&v1)],
        ranks: vec![1, 1],
    }
}

/// How conditional states are represented after an outcome on A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionMode {
    /// Keep the joint conditional state Π_j ρ Π_j / p_j on H_S ⊗ H_A.
    Projected,
    /// Reduce to S alone: Tr_A(Π_j ρ) / p_j.
    Traced,
}

/// One measurement outcome: its probability and, when the probability is
/// at least [`P_FLOOR`], the conditional state.
#[derive(Debug, Clone)]
pub struct ConditionalOutcome {
    pub probability: f64,
    pub state: Option<ComplexMatrix>,
}

/// Post-measurement ensemble, one entry per projector in outcome order.
#[derive(Debug, Clone)]
pub struct ConditionalEnsemble {
    pub mode: ConditionMode,
    /// Dimension of the conditional states: dim_s·dim_a for
    /// [`ConditionMode::Projected`], dim_s for [`ConditionMode::Traced`].
    pub dim: usize,
    pub outcomes: Vec<ConditionalOutcome>,
}

fn check_measurement_dims(state: &BipartiteState, meas: &ProjectiveMeasurement) -> Result<()> {
    if meas.dim_a() != state.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: state.dim_a(),
            actual: meas.dim_a(),
        });
    }
    Ok(())
}

/// Conditions the state on each outcome of a measurement on A.
///
/// Projectors are lifted as Id_S ⊗ Π_j; probabilities are
/// p_j = Tr(Π_j ρ Π_j). For rank-1 projectors both modes carry the same
/// S-marginal entropy.
pub fn condition(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
    mode: ConditionMode,
) -> Result<ConditionalEnsemble> {
    check_measurement_dims(state, meas)?;
    let dim_s = state.dim_s();
    let dim_a = state.dim_a();
    let eye_s = ComplexMatrix::identity(dim_s);
    let mut outcomes = Vec::with_capacity(meas.len());
    for proj in meas.projectors() {
        let lifted = tensor(&eye_s, proj);
        let projected = &(&lifted * state.rho()) * &lifted;
        let probability = projected.trace().re;
        let conditional = if probability < P_FLOOR {
            None
        } else {
            let normalized = projected.scaled_re(1.0 / probability).hermitized();
            Some(match mode {
                ConditionMode::Projected => normalized,
                ConditionMode::Traced => {
                    partial_trace(&normalized, dim_s, dim_a, Subsystem::S)?
                }
            })
        };
        outcomes.push(ConditionalOutcome {
            probability,
            state: conditional,
        });
    }
    Ok(ConditionalEnsemble {
        mode,
        dim: match mode {
            ConditionMode::Projected => dim_s * dim_a,
            ConditionMode::Traced => dim_s,
        },
        outcomes,
    })
}

/// Outcome probabilities Tr((Id ⊗ Π_j) ρ), in projector order.
pub fn outcome_probabilities(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
) -> Result<Vec<f64>> {
    check_measurement_dims(state, meas)?;
    let eye_s = ComplexMatrix::identity(state.dim_s());
    Ok(meas
        .projectors()
        .iter()
        .map(|proj| (&tensor(&eye_s, proj) * state.rho()).trace().re)
        .collect())
}

/// The unread-measurement (einselection) map ρ ↦ Σ_j Π_j ρ Π_j.
///
/// Idempotent, trace preserving, and entropy non-decreasing.
pub fn dephase(state: &BipartiteState, meas: &ProjectiveMeasurement) -> Result<BipartiteState> {
    check_measurement_dims(state, meas)?;
    let eye_s = ComplexMatrix::identity(state.dim_s());
    let mut acc = ComplexMatrix::zeros(state.dim());
    for proj in meas.projectors() {
        let lifted = tensor(&eye_s, proj);
        acc = &acc + &(&(&lifted * state.rho()) * &lifted);
    }
    Ok(BipartiteState::unchecked(
        state.dim_s(),
        state.dim_a(),
        acc.hermitized(),
    ))
}

/// Frobenius norm ‖ρ - Σ_j Π_j ρ Π_j‖; zero exactly when the state already
/// satisfies the superselection identity for this measurement.
pub fn superselection_residual(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
) -> Result<f64> {
    let dephased = dephase(state, meas)?;
    Ok((state.rho() - dephased.rho()).frobenius_norm())
}

/// One term of the pure-product decomposition: a weight and the pure state
/// π_{j,k}^S ⊗ Π_j^A it multiplies.
#[derive(Debug, Clone)]
pub struct PureProductComponent {
    pub weight: f64,
    pub state: BipartiteState,
}

/// Decomposes a classically accessible state into weighted pure products.
///
/// Requires a rank-1 measurement whose superselection residual is within
/// [`DECOMP_TOL`]; each outcome's conditional S-state is eigendecomposed
/// into conditional projectors π_{j,k}^S, yielding weights p_j·λ_{j,k}
/// and pure components that reconstruct the input. Fails with
/// `NonzeroDiscord` when the state is not classically accessible in this
/// basis.
pub fn classical_decomposition(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
) -> Result<Vec<PureProductComponent>> {
    if !meas.is_rank_one() {
        return Err(Error::NotRankOne {
            ranks: meas.ranks().to_vec(),
        });
    }
    let residual = superselection_residual(state, meas)?;
    if residual > DECOMP_TOL {
        return Err(Error::NonzeroDiscord {
            residual,
            tol: DECOMP_TOL,
        });
    }
    let ensemble = condition(state, meas, ConditionMode::Traced)?;
    let mut components = Vec::new();
    for (outcome, proj) in ensemble.outcomes.iter().zip(meas.projectors()) {
        let Some(conditional) = &outcome.state else {
            continue;
        };
        let eig = hermitian_eigen(conditional)?;
        for k in 0..state.dim_s() {
            let weight = outcome.probability * eig.eigenvalues()[k];
            if weight < P_FLOOR {
                continue;
            }
            let pi_s = ket_outer(&eig.eigenvector(k));
            components.push(PureProductComponent {
                weight,
                state: BipartiteState::unchecked(
                    state.dim_s(),
                    state.dim_a(),
                    tensor(&pi_s, proj),
                ),
            });
        }
    }
    Ok(components)
}
