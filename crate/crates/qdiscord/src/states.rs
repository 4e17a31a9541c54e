//! Validated bipartite density matrices and the named state families used
//! throughout: pre-measurement pure states, partially decohered c-not
//! output, Werner states, explicit separable mixtures, and seeded random
//! full-rank states.

use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, ket_outer, ket_tensor, ComplexMatrix, Subsystem, HERMITIAN_TOL,
};

/// Max tolerated |trace - 1| for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues above -PSD_TOL count as zero; anything lower is a hard error.
pub const PSD_TOL: f64 = 1e-10;
/// Max tolerated |norm² - 1| for kets supplied as pure states.
pub const KET_NORM_TOL: f64 = 1e-10;

/// Density matrix on H_S ⊗ H_A with recorded factor dimensions.
///
/// Construction through [`BipartiteState::new`] checks the three density
/// matrix invariants (Hermitian, unit trace, positive semidefinite); family
/// constructors that guarantee them build the state directly.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    dim_s: usize,
    dim_a: usize,
    rho: ComplexMatrix,
}

impl BipartiteState {
    /// Validates `rho` as a density matrix on H_S ⊗ H_A.
    pub fn new(rho: ComplexMatrix, dim_s: usize, dim_a: usize) -> Result<Self> {
        if rho.dim() != dim_s * dim_a {
            return Err(Error::DimensionMismatch {
                expected: dim_s * dim_a,
                actual: rho.dim(),
            });
        }
        let deviation = rho.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tol: HERMITIAN_TOL,
            });
        }
        let trace_dev = (rho.trace() - Complex64::ONE).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::NotUnitTrace {
                deviation: trace_dev,
            });
        }
        let eig = hermitian_eigen(&rho)?;
        let min = eig.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { dim_s, dim_a, rho })
    }

    /// Internal fast path for matrices that are density operators by
    /// construction.
    pub(crate) fn unchecked(dim_s: usize, dim_a: usize, rho: ComplexMatrix) -> Self {
        debug_assert_eq!(rho.dim(), dim_s * dim_a);
        Self { dim_s, dim_a, rho }
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    /// Joint dimension dim_s · dim_a.
    pub fn dim(&self) -> usize {
        self.dim_s * self.dim_a
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// ρ_S = Tr_A ρ.
    pub fn marginal_s(&self) -> ComplexMatrix {
        crate::linalg::partial_trace(&self.rho, self.dim_s, self.dim_a, Subsystem::S)
            .expect("dimensions are consistent by construction")
    }

    /// ρ_A = Tr_S ρ.
    pub fn marginal_a(&self) -> ComplexMatrix {
        crate::linalg::partial_trace(&self.rho, self.dim_s, self.dim_a, Subsystem::A)
            .expect("dimensions are consistent by construction")
    }
}

/// Pure pre-measurement state |ψ⟩⟨ψ| with |ψ⟩ = Σ_i α_i |i⟩|i⟩.
///
/// The amplitudes fix both factor dimensions to their count; the bases are
/// the computational kets (any other choice is a local unitary away).
pub fn pre_measurement(amplitudes: &[Complex64]) -> Result<BipartiteState> {
    let n = amplitudes.len();
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > KET_NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let mut psi = vec![Complex64::ZERO; n * n];
    for (i, &alpha) in amplitudes.iter().enumerate() {
        psi[i * n + i] = alpha;
    }
    Ok(BipartiteState::unchecked(n, n, ket_outer(&psi)))
}

/// Two-qubit c-not output after partial decoherence:
/// ½(|00⟩⟨00| + |11⟩⟨11|) + (z/2)(|00⟩⟨11| + |11⟩⟨00|).
///
/// z = 1 is the pure Bell projector, z = 0 the fully einselected classical
/// mixture; the spectrum is {(1±z)/2, 0, 0}.
pub fn decohered_cnot(z: f64) -> Result<BipartiteState> {
    check_unit_interval("z", z)?;
    let mut rho = ComplexMatrix::zeros(4);
    rho[(0, 0)] = Complex64::new(0.5, 0.0);
    rho[(3, 3)] = Complex64::new(0.5, 0.0);
    rho[(0, 3)] = Complex64::new(z / 2.0, 0.0);
    rho[(3, 0)] = Complex64::new(z / 2.0, 0.0);
    Ok(BipartiteState::unchecked(2, 2, rho))
}

/// Werner state (1-z)/4 · Id + z |ψ⟩⟨ψ| with |ψ⟩ = (|00⟩+|11⟩)/√2.
///
/// Spectrum {(1+3z)/4, (1-z)/4 ×3}; both marginals are maximally mixed for
/// every z.
pub fn werner(z: f64) -> Result<BipartiteState> {
    check_unit_interval("z", z)?;
    let bell = bell_projector();
    let rho = &ComplexMatrix::identity(4).scaled_re((1.0 - z) / 4.0) + &bell.scaled_re(z);
    Ok(BipartiteState::unchecked(2, 2, rho))
}

// |ψ⟩⟨ψ| for |ψ⟩ = (|00⟩+|11⟩)/√2; the four corner entries are exactly ½.
fn bell_projector() -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(4);
    let half = Complex64::new(0.5, 0.0);
    rho[(0, 0)] = half;
    rho[(0, 3)] = half;
    rho[(3, 0)] = half;
    rho[(3, 3)] = half;
    rho
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// One pure product term p · |s⟩⟨s| ⊗ |a⟩⟨a| of a separable mixture.
#[derive(Debug, Clone)]
pub struct ProductComponent {
    pub weight: f64,
    pub ket_s: Vec<Complex64>,
    pub ket_a: Vec<Complex64>,
}

/// One mixture member ρ^(i) = Σ_j p_j |s_j⟩⟨s_j| ⊗ |a_j⟩⟨a_j|.
#[derive(Debug, Clone)]
pub struct SeparableTerm {
    pub weight: f64,
    pub components: Vec<ProductComponent>,
}

/// Explicit separable decomposition ρ = Σ_i p_i ρ^(i).
#[derive(Debug, Clone)]
pub struct SeparableSpec {
    pub terms: Vec<SeparableTerm>,
}

/// Assembles the density matrix of an explicit separable mixture.
///
/// Both weight levels must lie on the probability simplex and every ket
/// must be normalized; the result always passes the positive-transpose
/// test because it is separable by construction.
pub fn from_separable_spec(spec: &SeparableSpec) -> Result<BipartiteState> {
    check_simplex(spec.terms.iter().map(|t| t.weight))?;
    let first = spec
        .terms
        .iter()
        .flat_map(|t| t.components.iter())
        .next()
        .ok_or(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        })?;
    let dim_s = first.ket_s.len();
    let dim_a = first.ket_a.len();

    let mut rho = ComplexMatrix::zeros(dim_s * dim_a);
    for term in &spec.terms {
        check_simplex(term.components.iter().map(|c| c.weight))?;
        for comp in &term.components {
            if comp.ket_s.len() != dim_s {
                return Err(Error::DimensionMismatch {
                    expected: dim_s,
                    actual: comp.ket_s.len(),
                });
            }
            if comp.ket_a.len() != dim_a {
                return Err(Error::DimensionMismatch {
                    expected: dim_a,
                    actual: comp.ket_a.len(),
                });
            }
            for ket in [&comp.ket_s, &comp.ket_a] {
                let deviation = (crate::linalg::ket_norm_sqr(ket) - 1.0).abs();
                if deviation > KET_NORM_TOL {
                    return Err(Error::NotNormalized { deviation });
                }
            }
            let product = ket_tensor(&comp.ket_s, &comp.ket_a);
            rho = &rho + &ket_outer(&product).scaled_re(term.weight * comp.weight);
        }
    }
    BipartiteState::new(rho, dim_s, dim_a)
}

fn check_simplex(weights: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for w in weights {
        if w < 0.0 {
            return Err(Error::NegativeProbability { value: w });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > TRACE_TOL {
        return Err(Error::ProbabilityNotNormalized { sum });
    }
    Ok(())
}

/// Seeded full-rank random state: ρ = GG†/Tr(GG†) for a complex Gaussian G.
///
/// Deterministic for a fixed seed; the Gaussian-induced ensemble is full
/// rank with probability 1.
pub fn random_state(dim_s: usize, dim_a: usize, seed: u64) -> BipartiteState {
    assert!(
        dim_s >= 2 && dim_a >= 2,
        "subsystem dimensions must be at least 2"
    );
    let n = dim_s * dim_a;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = ComplexMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                g[(r, c)] = Complex64::new(re, im);
            }
        }
        let gram = &g * &g.adjoint();
        let trace = gram.trace().re;
        // A near-zero trace draw is measure-zero; redraw from the stream.
        if trace > 1e-6 {
            let rho = gram.scaled_re(1.0 / trace).hermitized();
            return BipartiteState::unchecked(dim_s, dim_a, rho);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    dim_s: usize,
    dim_a: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Reads the JSON state format
/// `{"dim_s": n, "dim_a": m, "re": [[...]], "im": [[...]]}` and validates
/// the matrix; row-major under the project index convention.
pub fn read_state_json(path: &Path) -> Result<BipartiteState> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&text)?;
    state_from_file(&file)
}

fn state_from_file(file: &StateFile) -> Result<BipartiteState> {
    let dim = file.dim_s * file.dim_a;
    if dim == 0 {
        return Err(Error::MalformedStateFile {
            detail: "dim_s and dim_a must be positive".into(),
        });
    }
    for (name, part) in [("re", &file.re), ("im", &file.im)] {
        if part.len() != dim {
            return Err(Error::MalformedStateFile {
                detail: format!("{name} has {} rows, expected {dim}", part.len()),
            });
        }
        if let Some(row) = part.iter().find(|row| row.len() != dim) {
            return Err(Error::MalformedStateFile {
                detail: format!("{name} row has {} entries, expected {dim}", row.len()),
            });
        }
    }
    let mut rho = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            rho[(r, c)] = Complex64::new(file.re[r][c], file.im[r][c]);
        }
    }
    BipartiteState::new(rho, file.dim_s, file.dim_a)
}

/// Writes a state in the JSON format accepted by [`read_state_json`].
pub fn write_state_json(path: &Path, state: &BipartiteState) -> Result<()> {
    let dim = state.dim();
    let mut re = vec![vec![0.0; dim]; dim];
    let mut im = vec![vec![0.0; dim]; dim];
    for r in 0..dim {
        for c in 0..dim {
            let entry = state.rho()[(r, c)];
            re[r][c] = entry.re;
            im[r][c] = entry.im;
        }
    }
    let file = StateFile {
        dim_s: state.dim_s(),
        dim_a: state.dim_a(),
        re,
        im,
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}
