//! Entropies, the two quantum generalizations of mutual information, the
//! discord between them, its minimization over qubit measurement bases, and
//! the classical baseline on which the two expressions coincide.
//!
//! All entropies are in bits, so a maximally mixed qubit scores exactly 1.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::measurement::{
    condition, dephase, outcome_probabilities, qubit_basis, superselection_residual,
    ConditionMode, ProjectiveMeasurement,
};
use crate::states::{BipartiteState, PSD_TOL};

/// Classical probability tables must sum to 1 within this.
pub const CLASSICAL_TABLE_TOL: f64 = 1e-12;
/// Default (θ, φ) grid for the discord minimization.
pub const DEFAULT_GRID: (usize, usize) = (64, 32);
/// The simplex refinement stops once an iteration improves less than this.
pub const MIN_IMPROVEMENT: f64 = 1e-10;
/// Hard iteration cap for the simplex refinement.
pub const MAX_REFINE_ITERS: usize = 200;

/// Residual bound treated as "the superselection identity holds".
pub const RESIDUAL_ZERO_TOL: f64 = 1e-10;
/// Discord bound treated as "the discord vanishes".
pub const DELTA_ZERO_TOL: f64 = 1e-9;

/// Conditional-entropy identity residual allowed for rank-1 measurements.
pub const PROP1_TOL: f64 = 1e-9;
/// Largest tolerated negative excursion of the discord.
pub const PROP2_TOL: f64 = 1e-10;
/// Discord allowed at a basis whose superselection identity holds.
pub const PROP3_FORWARD_TOL: f64 = 1e-7;
/// Superselection residual allowed at a basis with vanishing discord.
pub const PROP3_BACKWARD_TOL: f64 = 1e-6;

/// Binary entropy H₂(p) = -p log₂ p - (1-p) log₂(1-p), in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.log2();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).log2();
    }
    h
}

fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Von Neumann entropy -Tr ρ log₂ ρ of a density matrix.
///
/// Eigenvalues within [`PSD_TOL`] of zero contribute nothing (the
/// 0·log 0 = 0 convention after clipping); anything more negative is a
/// hard error.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigen(rho)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
        });
    }
    let mut h = 0.0;
    for &lambda in eig.eigenvalues() {
        if lambda > PSD_TOL {
            h -= lambda * lambda.log2();
        }
    }
    Ok(h.max(0.0))
}

/// Finite joint probability table p(x, y), row-major with x slow.
#[derive(Debug, Clone)]
pub struct ClassicalJoint {
    rows: usize,
    cols: usize,
    table: Vec<f64>,
}

impl ClassicalJoint {
    pub fn new(rows: usize, cols: usize, table: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || table.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: table.len(),
            });
        }
        let mut sum = 0.0;
        for &p in &table {
            if p < 0.0 {
                return Err(Error::NegativeProbability { value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > CLASSICAL_TABLE_TOL {
            return Err(Error::ProbabilityNotNormalized { sum });
        }
        Ok(Self { rows, cols, table })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.table[x * self.cols + y]
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|x| (0..self.cols).map(|y| self.prob(x, y)).sum())
            .collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|y| (0..self.rows).map(|x| self.prob(x, y)).sum())
            .collect()
    }

    /// Diagonal quantum embedding Σ_xy p(x,y) |x⟩⟨x| ⊗ |y⟩⟨y|.
    pub fn embed(&self) -> BipartiteState {
        BipartiteState::unchecked(self.rows, self.cols, ComplexMatrix::diagonal(&self.table))
    }
}

/// The two classically equivalent routes to the mutual information.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalForm {
    /// H(X) - H(X|Y), with the conditionals taken through the Bayes rule.
    J,
    /// H(X) + H(Y) - H(X,Y).
    I,
}

/// Classical mutual information of a joint table, in bits.
///
/// The two forms agree within 1e-12 on every valid table; keeping both
/// routes separate is what lets that equivalence be checked rather than
/// assumed.
pub fn classical_mutual_information(joint: &ClassicalJoint, form: ClassicalForm) -> f64 {
    match form {
        ClassicalForm::I => {
            shannon(&joint.marginal_x()) + shannon(&joint.marginal_y()) - shannon(&joint.table)
        }
        ClassicalForm::J => {
            let p_y = joint.marginal_y();
            let mut conditional = 0.0;
            for (y, &py) in p_y.iter().enumerate() {
                if py <= 0.0 {
                    continue;
                }
                let given_y: Vec<f64> =
                    (0..joint.rows).map(|x| joint.prob(x, y) / py).collect();
                conditional += py * shannon(&given_y);
            }
            shannon(&joint.marginal_x()) - conditional
        }
    }
}

/// Measurement-independent mutual information I(S:A) = H(S) + H(A) - H(S,A).
pub fn mutual_information_i(state: &BipartiteState) -> Result<f64> {
    let h_s = von_neumann_entropy(&state.marginal_s())?;
    let h_a = von_neumann_entropy(&state.marginal_a())?;
    let h_sa = von_neumann_entropy(state.rho())?;
    Ok(h_s + h_a - h_sa)
}

/// Conditional entropy H(S|{Π_j}) = Σ_j p_j H(ρ_{S|Π_j}) for the given
/// conditioning mode. Outcomes below the probability floor contribute 0.
pub fn conditional_entropy(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
    mode: ConditionMode,
) -> Result<f64> {
    let ensemble = condition(state, meas, mode)?;
    let mut h = 0.0;
    for outcome in &ensemble.outcomes {
        if let Some(conditional) = &outcome.state {
            h += outcome.probability * von_neumann_entropy(conditional)?;
        }
    }
    Ok(h)
}

/// Which generalization of J(S:A) a discord report uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// H(S) - H(S|{Π_j}) with joint conditional states Π_j ρ Π_j / p_j.
    Rank1,
    /// H(S) - H(S|{Π_j}) with reduced conditional states Tr_A(Π_j ρ)/p_j.
    Traced,
    /// H(S) + H(A)^D - H(S,A)^D, entropies taken after dephasing.
    Dephased,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Rank1 => "rank1",
            Variant::Traced => "traced",
            Variant::Dephased => "dephased",
        })
    }
}

/// Measurement-dependent mutual information J(S:A)_{Π} for one variant.
pub fn mutual_information_j(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
    variant: Variant,
) -> Result<f64> {
    let h_s = von_neumann_entropy(&state.marginal_s())?;
    match variant {
        Variant::Rank1 => Ok(h_s - conditional_entropy(state, meas, ConditionMode::Projected)?),
        Variant::Traced => Ok(h_s - conditional_entropy(state, meas, ConditionMode::Traced)?),
        Variant::Dephased => {
            let dephased = dephase(state, meas)?;
            let h_a_d = von_neumann_entropy(&dephased.marginal_a())?;
            let h_sa_d = von_neumann_entropy(dephased.rho())?;
            Ok(h_s + h_a_d - h_sa_d)
        }
    }
}

/// Everything computed for one (state, measurement) pair.
///
/// `discord` is `mutual_i - mutual_j` exactly as computed, by definition.
/// Non-negativity is guaranteed for the rank1 and traced variants only;
/// the dephased variant's J is not bounded by I in general, which is why
/// the report carries its variant tag.
#[derive(Debug, Clone)]
pub struct DiscordReport {
    pub h_s: f64,
    pub h_a: f64,
    pub h_sa: f64,
    pub mutual_i: f64,
    pub mutual_j: f64,
    pub discord: f64,
    pub outcome_probs: Vec<f64>,
    pub variant: Variant,
}

/// Full discord report for a state and a measurement on A.
pub fn discord(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
    variant: Variant,
) -> Result<DiscordReport> {
    let h_s = von_neumann_entropy(&state.marginal_s())?;
    let h_a = von_neumann_entropy(&state.marginal_a())?;
    let h_sa = von_neumann_entropy(state.rho())?;
    let mutual_i = h_s + h_a - h_sa;
    let mutual_j = mutual_information_j(state, meas, variant)?;
    let outcome_probs = outcome_probabilities(state, meas)?;
    Ok(DiscordReport {
        h_s,
        h_a,
        h_sa,
        mutual_i,
        mutual_j,
        discord: mutual_i - mutual_j,
        outcome_probs,
        variant,
    })
}

/// Result of searching the qubit measurement bases for minimal discord.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub discord: f64,
    pub theta: f64,
    pub phi: f64,
    pub report: DiscordReport,
}

/// Minimizes the rank-1 discord over qubit measurement bases.
///
/// A coarse grid over θ ∈ [0, π/2], φ ∈ [0, π) (half ranges; the projector
/// set repeats outside them) seeds an optional derivative-free simplex
/// descent. Ties on the grid resolve to the first minimizer in row-major
/// (θ outer, φ inner) order, and the refinement starts only from that
/// point, so results are schedule-independent.
pub fn minimize_discord(
    state: &BipartiteState,
    grid: (usize, usize),
    refine: bool,
) -> Result<MinimizeResult> {
    if state.dim_a() != 2 {
        return Err(Error::UnsupportedDimension {
            dim_a: state.dim_a(),
        });
    }
    let (n_theta, n_phi) = grid;
    assert!(n_theta >= 1 && n_phi >= 1, "grid must be at least 1x1");

    let theta_step = if n_theta > 1 {
        FRAC_PI_2 / (n_theta - 1) as f64
    } else {
        0.0
    };
    let phi_step = PI / n_phi as f64;

    // Fail loudly here if the very first evaluation cannot be computed;
    // after that the objective is total on the angle plane.
    discord(state, &qubit_basis(0.0, 0.0), Variant::Rank1)?;
    let eval = |theta: f64, phi: f64| -> f64 {
        discord(state, &qubit_basis(theta, phi), Variant::Rank1)
            .expect("discord evaluation on a validated two-qubit state")
            .discord
    };

    let mut best = f64::INFINITY;
    let mut best_theta = 0.0;
    let mut best_phi = 0.0;
    for ti in 0..n_theta {
        let theta = ti as f64 * theta_step;
        for pj in 0..n_phi {
            let phi = pj as f64 * phi_step;
            let value = eval(theta, phi);
            if value < best {
                best = value;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    if refine {
        let steps = (
            if theta_step > 0.0 { theta_step } else { 0.05 },
            if phi_step > 0.0 { phi_step } else { 0.05 },
        );
        let (value, (theta, phi)) = simplex_descent(eval, (best_theta, best_phi), steps);
        if value < best {
            best = value;
            best_theta = theta;
            best_phi = phi;
        }
    }

    let report = discord(state, &qubit_basis(best_theta, best_phi), Variant::Rank1)?;
    Ok(MinimizeResult {
        discord: best,
        theta: best_theta,
        phi: best_phi,
        report,
    })
}

/// Nelder-Mead descent in the (θ, φ) plane with the standard coefficients.
fn simplex_descent<F: Fn(f64, f64) -> f64>(
    f: F,
    start: (f64, f64),
    steps: (f64, f64),
) -> (f64, (f64, f64)) {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const BETA: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let mut pts = [
        [start.0, start.1],
        [start.0 + steps.0, start.1],
        [start.0, start.1 + steps.1],
    ];
    let mut vals = pts.map(|p| f(p[0], p[1]));

    for _ in 0..MAX_REFINE_ITERS {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite discord values"));
        let [best, mid, worst] = idx;
        let prev_worst = vals[worst];

        let centroid = [
            (pts[best][0] + pts[mid][0]) / 2.0,
            (pts[best][1] + pts[mid][1]) / 2.0,
        ];
        let reflect = [
            centroid[0] + ALPHA * (centroid[0] - pts[worst][0]),
            centroid[1] + ALPHA * (centroid[1] - pts[worst][1]),
        ];
        let fr = f(reflect[0], reflect[1]);

        if fr < vals[best] {
            let expand = [
                centroid[0] + GAMMA * (reflect[0] - centroid[0]),
                centroid[1] + GAMMA * (reflect[1] - centroid[1]),
            ];
            let fe = f(expand[0], expand[1]);
            if fe < fr {
                pts[worst] = expand;
                vals[worst] = fe;
            } else {
                pts[worst] = reflect;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            pts[worst] = reflect;
            vals[worst] = fr;
        } else {
            let toward = if fr < vals[worst] { reflect } else { pts[worst] };
            let contract = [
                centroid[0] + BETA * (toward[0] - centroid[0]),
                centroid[1] + BETA * (toward[1] - centroid[1]),
            ];
            let fc = f(contract[0], contract[1]);
            if fc < vals[worst].min(fr) {
                pts[worst] = contract;
                vals[worst] = fc;
            } else {
                for &i in &[mid, worst] {
                    pts[i] = [
                        pts[best][0] + SIGMA * (pts[i][0] - pts[best][0]),
                        pts[best][1] + SIGMA * (pts[i][1] - pts[best][1]),
                    ];
                    vals[i] = f(pts[i][0], pts[i][1]);
                }
            }
        }

        // The worst value decreases nearly every iteration; once even it
        // stops moving by the threshold, the simplex is flat at that scale.
        let new_worst = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if prev_worst - new_worst < MIN_IMPROVEMENT {
            break;
        }
    }

    let mut which = 0;
    for i in 1..3 {
        if vals[i] < vals[which] {
            which = i;
        }
    }
    (vals[which], (pts[which][0], pts[which][1]))
}

/// Residuals of the three structural results, packaged for property suites.
///
/// The prop3 slots are `None` when their premise does not apply: the
/// forward residual is the discord magnitude at a basis whose
/// superselection identity holds, and the backward residual is the
/// superselection residual at a basis whose discord vanishes.
#[derive(Debug, Clone, Copy)]
pub struct PropositionResiduals {
    pub prop1: f64,
    pub prop2_violation: f64,
    pub prop3_forward: Option<f64>,
    pub prop3_backward: Option<f64>,
}

/// Evaluates all proposition residuals for one rank-1 measurement.
pub fn proposition_residuals(
    state: &BipartiteState,
    meas: &ProjectiveMeasurement,
) -> Result<PropositionResiduals> {
    if !meas.is_rank_one() {
        return Err(Error::NotRankOne {
            ranks: meas.ranks().to_vec(),
        });
    }
    let report = discord(state, meas, Variant::Rank1)?;
    let delta = report.discord;
    let cond_h = report.h_s - report.mutual_j;

    let dephased = dephase(state, meas)?;
    let h_d = von_neumann_entropy(dephased.rho())?;
    let h_d_a = von_neumann_entropy(&dephased.marginal_a())?;
    let prop1 = (cond_h - (h_d - h_d_a)).abs();

    let prop2_violation = (-delta).max(0.0);

    let residual = superselection_residual(state, meas)?;
    let prop3_forward = (residual <= RESIDUAL_ZERO_TOL).then_some(delta.abs());
    let prop3_backward = (delta <= DELTA_ZERO_TOL).then_some(residual);

    Ok(PropositionResiduals {
        prop1,
        prop2_violation,
        prop3_forward,
        prop3_backward,
    })
}
