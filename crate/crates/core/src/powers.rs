//! Cohering power of unitaries, decohering power of channels and the
//! sup-cohering power of system-ancilla interaction unitaries.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{apply_channel, KrausChannel};
use crate::error::{Error, Result};
use crate::gates::UnitaryGate;
use crate::linalg::kron_vec;
use crate::measures::{binary_entropy, coherence_rel_entropy, von_neumann_entropy};
use crate::optimize::{grid_coordinate_descent, Axis, SearchSettings};
use crate::states::{canonical_phase_patterns, maximally_coherent, PhaseMode, PureState, ReferenceBasis};

/// Points-per-angle budget of the free-phase grid (total grid points).
const FREE_GRID_BUDGET: usize = 4096;

/// Two values closer than this are a tie when picking maximizers.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Maximizer {
    /// Index of the reference basis vector.
    BasisIndex { index: usize },
    /// Relative phases of the maximally coherent state.
    Phases { phases: Vec<f64> },
    /// Phases of the system state and the computational ancilla index.
    PhasesAndAncilla { phases: Vec<f64>, ancilla: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRecord {
    pub points_per_angle: usize,
    pub refine_iterations: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerResult {
    /// Bits.
    pub value: f64,
    pub maximizer: Maximizer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<PhaseMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridRecord>,
}

/// The maximally coherent states a power is optimized over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxCoherentSet {
    pub mode: PhaseMode,
    pub dim: usize,
    /// Grid points per relative phase (free mode only).
    pub points_per_angle: usize,
    pub search: SearchSettings,
}

impl MaxCoherentSet {
    pub fn canonical(dim: usize) -> Self {
        Self { mode: PhaseMode::Canonical, dim, points_per_angle: 2, search: SearchSettings::default() }
    }

    /// 64 points for a single phase; otherwise the largest even count whose
    /// product grid stays within 4096 points (16 per angle at d = 4).
    pub fn free(dim: usize) -> Self {
        Self::free_with_grid(dim, default_points_per_angle(dim))
    }

    pub fn free_with_grid(dim: usize, points_per_angle: usize) -> Self {
        Self { mode: PhaseMode::Free, dim, points_per_angle, search: SearchSettings::default() }
    }

    pub fn new(mode: PhaseMode, dim: usize) -> Self {
        match mode {
            PhaseMode::Canonical => Self::canonical(dim),
            PhaseMode::Free => Self::free(dim),
        }
    }

    /// The `2^{d−1}` sign patterns of the canonical set.
    pub fn canonical_members(&self) -> Vec<Vec<f64>> {
        canonical_phase_patterns(self.dim)
    }

    fn axes(&self) -> Vec<Axis> {
        (1..self.dim).map(|_| Axis::new(0.0, TAU, self.points_per_angle)).collect()
    }
}

fn default_points_per_angle(dim: usize) -> usize {
    if dim <= 2 {
        return 64;
    }
    let k = (dim - 1) as u32;
    let mut n = 2usize;
    while (n + 2).checked_pow(k).is_some_and(|t| t <= FREE_GRID_BUDGET) {
        n += 2;
    }
    n
}

fn mc_state(d: usize, phases: &[f64], basis: &ReferenceBasis) -> Result<PureState> {
    let psi = maximally_coherent(d, phases, PhaseMode::Free)?;
    PureState::new(basis.matrix().mul_vec(psi.amplitudes()), vec![d])
}

fn check_dim(what: &str, got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::DimensionMismatch(format!("{what} has dimension {got}, expected {expected}")));
    }
    Ok(())
}

/// `max_i C_re(U|i><i|U†)` over the vectors of `basis`, measured in `basis`.
pub fn cohering_power(u: &UnitaryGate, basis: &ReferenceBasis) -> Result<PowerResult> {
    cohering_power_between(u, basis, basis)
}

/// Cohering power with separate input and measurement bases: the maximum of
/// `C_re(U|b_i><b_i|U†)` in `output` over the vectors `|b_i>` of `input`.
/// The maximizer is the smallest achieving index.
pub fn cohering_power_between(
    u: &UnitaryGate,
    input: &ReferenceBasis,
    output: &ReferenceBasis,
) -> Result<PowerResult> {
    check_dim("input basis", input.dim(), u.dim())?;
    check_dim("output basis", output.dim(), u.dim())?;
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for i in 0..u.dim() {
        let psi = PureState::normalized(u.apply(&input.vector(i)), vec![u.dim()])?;
        let c = coherence_rel_entropy(&psi.density(), output)?.bits();
        if c > best + TIE_TOL {
            best = c;
            arg = i;
        }
    }
    Ok(PowerResult { value: best, maximizer: Maximizer::BasisIndex { index: arg }, mode: None, grid: None })
}

/// Closed form `H(cos²(γ/2), sin²(γ/2))` for `e^{iα}Rz(β)Ry(γ)Rz(δ)`.
pub fn cohering_power_zyz(gamma: f64) -> f64 {
    binary_entropy((gamma / 2.0).cos().powi(2))
}

/// `min_ψ f(ψ)` over the set; returns the minimizing phases, the value and
/// an optional grid record.
fn minimize_over_set<F>(mset: &MaxCoherentSet, mut f: F) -> Result<(Vec<f64>, f64, Option<GridRecord>)>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    match mset.mode {
        PhaseMode::Canonical => {
            let mut best: Option<(Vec<f64>, f64)> = None;
            for phases in mset.canonical_members() {
                let v = f(&phases)?;
                if best.as_ref().is_none_or(|(_, b)| v < *b - TIE_TOL) {
                    best = Some((phases, v));
                }
            }
            let (p, v) = best.expect("canonical set is non-empty");
            Ok((p, v, None))
        }
        PhaseMode::Free => {
            let mut err = None;
            let m = grid_coordinate_descent(&mset.axes(), mset.search, |x| match f(x) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    f64::INFINITY
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let record = GridRecord {
                points_per_angle: mset.points_per_angle,
                refine_iterations: mset.search.refine_iterations,
                evaluations: m.evaluations,
            };
            Ok((m.point, m.value, Some(record)))
        }
    }
}

/// `log₂ d − min_{ψ ∈ M} C_re(E(|ψ><ψ|))`, with `M` the maximally coherent
/// states of `basis` selected by `mset`.
pub fn decohering_power(
    e: &KrausChannel,
    mset: &MaxCoherentSet,
    basis: &ReferenceBasis,
) -> Result<PowerResult> {
    let d = e.dim();
    check_dim("maximally coherent set", mset.dim, d)?;
    check_dim("basis", basis.dim(), d)?;
    let (phases, min_c, grid) = minimize_over_set(mset, |phases| {
        let out = apply_channel(e, &mc_state(d, phases, basis)?.density())?;
        Ok(coherence_rel_entropy(&out, basis)?.bits())
    })?;
    Ok(PowerResult {
        value: (d as f64).log2() - min_c,
        maximizer: Maximizer::Phases { phases },
        mode: Some(mset.mode),
        grid,
    })
}

/// `max_{ψ ∈ M} S(E(|ψ><ψ|))`, the entangling-capability lower bound of the
/// decohering power.
pub fn max_output_entropy(
    e: &KrausChannel,
    mset: &MaxCoherentSet,
    basis: &ReferenceBasis,
) -> Result<PowerResult> {
    let d = e.dim();
    check_dim("maximally coherent set", mset.dim, d)?;
    check_dim("basis", basis.dim(), d)?;
    let (phases, neg, grid) = minimize_over_set(mset, |phases| {
        let out = apply_channel(e, &mc_state(d, phases, basis)?.density())?;
        Ok(-von_neumann_entropy(&out)?.bits())
    })?;
    Ok(PowerResult { value: -neg, maximizer: Maximizer::Phases { phases }, mode: Some(mset.mode), grid })
}

/// `max C_re(U(|ψ>⊗|e>))` over maximally coherent `|ψ>` of the system
/// (selected by `mset`) and computational ancilla states `|e>`, measured in
/// the computational product basis. The system is the first factor.
pub fn sup_cohering_power(u: &UnitaryGate, mset: &MaxCoherentSet, ancilla_dim: usize) -> Result<PowerResult> {
    let d_a = mset.dim;
    if ancilla_dim == 0 || d_a * ancilla_dim != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary of dimension {} does not split as {d_a} x {ancilla_dim}",
            u.dim()
        )));
    }
    let basis = ReferenceBasis::computational(u.dim());
    let mut best: Option<(Vec<f64>, usize, f64)> = None;
    let mut evaluations = 0;
    for anc in 0..ancilla_dim {
        let mut ket = vec![Complex64::new(0.0, 0.0); ancilla_dim];
        ket[anc] = Complex64::new(1.0, 0.0);
        let (phases, neg, grid) = minimize_over_set(mset, |phases| {
            let psi = maximally_coherent(d_a, phases, PhaseMode::Free)?;
            let joint = PureState::normalized(u.apply(&kron_vec(psi.amplitudes(), &ket)), vec![d_a, ancilla_dim])?;
            Ok(-coherence_rel_entropy(&joint.density(), &basis)?.bits())
        })?;
        evaluations += grid.map_or(0, |g| g.evaluations);
        if best.as_ref().is_none_or(|(_, _, b)| -neg > *b + TIE_TOL) {
            best = Some((phases, anc, -neg));
        }
    }
    let (phases, ancilla, value) = best.expect("ancilla dimension is positive");
    let grid = (mset.mode == PhaseMode::Free).then_some(GridRecord {
        points_per_angle: mset.points_per_angle,
        refine_iterations: mset.search.refine_iterations,
        evaluations,
    });
    Ok(PowerResult {
        value,
        maximizer: Maximizer::PhasesAndAncilla { phases, ancilla },
        mode: Some(mset.mode),
        grid,
    })
}
