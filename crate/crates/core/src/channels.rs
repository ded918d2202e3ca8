//! CPTP maps in Kraus form: qubit noise presets, application, structural
//! predicates and the Stinespring-style dilation of an interaction unitary.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gates::{build_gate, GateSpec, UnitaryGate};
use crate::linalg::{c, ComplexMatrix, ONE};
use crate::states::{dephase_all, random_density, DensityOperator, ReferenceBasis};

/// Tolerance for `Σ K†K = I`.
pub const CPTP_TOL: f64 = 1e-9;

/// Tolerance of the unital and dephasing-commutation decision procedures.
pub const PREDICATE_TOL: f64 = 1e-9;

const PROBE_SEED: u64 = 0x5eed_c0de;
const RANDOM_PROBES: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelPreset {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    AmplitudeDamping,
    Depolarizing,
}

impl ChannelPreset {
    pub const ALL: [ChannelPreset; 5] = [
        ChannelPreset::BitFlip,
        ChannelPreset::PhaseFlip,
        ChannelPreset::BitPhaseFlip,
        ChannelPreset::AmplitudeDamping,
        ChannelPreset::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelPreset::BitFlip => "bit_flip",
            ChannelPreset::PhaseFlip => "phase_flip",
            ChannelPreset::BitPhaseFlip => "bit_phase_flip",
            ChannelPreset::AmplitudeDamping => "amplitude_damping",
            ChannelPreset::Depolarizing => "depolarizing",
        }
    }

    /// Kraus set of the preset.
    ///
    /// Amplitude damping uses η as the transmissivity:
    /// `{[[1,0],[0,√η]], [[0,√(1−η)],[0,0]]}`, so η = 1 is the identity and
    /// η = 0 relaxes everything to `|0>`. Depolarizing is
    /// `(1 − p)ρ + p·I/2`.
    pub fn build(self, param: f64) -> Result<KrausChannel> {
        if !(0.0..=1.0).contains(&param) {
            return Err(Error::BadParameter(format!(
                "{} parameter must lie in [0, 1], got {param}",
                self.name()
            )));
        }
        let pauli = |g: GateSpec| build_gate(&g).expect("static gate").matrix().clone();
        let id = ComplexMatrix::identity(2);
        let keep = (1.0 - param).sqrt();
        let flip = param.sqrt();
        let ops = match self {
            ChannelPreset::BitFlip => vec![id.scale_real(keep), pauli(GateSpec::X).scale_real(flip)],
            ChannelPreset::PhaseFlip => vec![id.scale_real(keep), pauli(GateSpec::Z).scale_real(flip)],
            ChannelPreset::BitPhaseFlip => vec![id.scale_real(keep), pauli(GateSpec::Y).scale_real(flip)],
            ChannelPreset::AmplitudeDamping => vec![
                ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, param.sqrt()]])?,
                ComplexMatrix::from_real_rows(&[&[0.0, (1.0 - param).sqrt()], &[0.0, 0.0]])?,
            ],
            ChannelPreset::Depolarizing => {
                let w = (param / 4.0).sqrt();
                vec![
                    id.scale_real((1.0 - 0.75 * param).sqrt()),
                    pauli(GateSpec::X).scale_real(w),
                    pauli(GateSpec::Y).scale_real(w),
                    pauli(GateSpec::Z).scale_real(w),
                ]
            }
        };
        KrausChannel::new(ops, format!("{}:{param}", self.name()))
    }
}

impl fmt::Display for ChannelPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelPreset::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownPreset(format!("channel '{s}'")))
    }
}

/// Preset qubit channel by name.
pub fn preset_channel(name: &str, param: f64) -> Result<KrausChannel> {
    name.parse::<ChannelPreset>()?.build(param)
}

/// CPTP map `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    tag: String,
    unital: bool,
    dephasing_commuting: OnceLock<bool>,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>, tag: impl Into<String>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::DimensionMismatch("channel needs at least one Kraus operator".into()))?;
        let d = first.rows();
        if ops.iter().any(|k| k.rows() != d || k.cols() != d) {
            return Err(Error::DimensionMismatch("Kraus operators must share one square shape".into()));
        }
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > CPTP_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        let mut ch = Self { ops, tag: tag.into(), unital: false, dephasing_commuting: OnceLock::new() };
        let mixed = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
        ch.unital = ch.apply_matrix(&mixed).max_abs_diff(&mixed) <= PREDICATE_TOL;
        Ok(ch)
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(d)], format!("identity:{d}")).expect("identity is CPTP")
    }

    /// Completely dephasing channel in the computational basis.
    pub fn dephasing(d: usize) -> Self {
        let ops = (0..d)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(d, d);
                k[(i, i)] = ONE;
                k
            })
            .collect();
        Self::new(ops, format!("dephasing:{d}")).expect("projective measurement is CPTP")
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.ops[0].rows()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Cached [`commutes_with_dephasing`] in the computational basis.
    pub fn commutes_with_computational_dephasing(&self) -> bool {
        *self
            .dephasing_commuting
            .get_or_init(|| commutes_with_dephasing(self, &ReferenceBasis::computational(self.dim())))
    }

    fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(rho.rows(), rho.cols());
        for k in &self.ops {
            out = &out + &rho.conjugate_by(k);
        }
        out
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        apply_channel(self, rho)
    }
}

/// `Σ K ρ K†`, validated as a density operator with the input's dims.
pub fn apply_channel(e: &KrausChannel, rho: &DensityOperator) -> Result<DensityOperator> {
    if e.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel of dimension {} applied to state of dimension {}",
            e.dim(),
            rho.dim()
        )));
    }
    DensityOperator::new(e.apply_matrix(rho.matrix()), rho.dims().to_vec())
}

/// Kraus operators `K_e = (I ⊗ <e|) U (I ⊗ |0>)` of the channel
/// `ρ ↦ Tr_E U (ρ ⊗ |0><0|) U†`, with the ancilla as the second factor.
pub fn dilate(u: &UnitaryGate, ancilla_dim: usize) -> Result<KrausChannel> {
    let total = u.dim();
    if ancilla_dim == 0 || !total.is_multiple_of(ancilla_dim) {
        return Err(Error::DimensionMismatch(format!(
            "unitary of dimension {total} does not factor with ancilla dimension {ancilla_dim}"
        )));
    }
    let sys = total / ancilla_dim;
    let m = u.matrix();
    let ops = (0..ancilla_dim)
        .map(|e| {
            let mut k = ComplexMatrix::zeros(sys, sys);
            for a_out in 0..sys {
                for a_in in 0..sys {
                    k[(a_out, a_in)] = m[(a_out * ancilla_dim + e, a_in * ancilla_dim)];
                }
            }
            k
        })
        .collect();
    KrausChannel::new(ops, format!("dilate:{}:{ancilla_dim}", u.spec()))
}

/// Probe states: every basis projector, the two symmetrized superpositions
/// of each pair of basis vectors, then seeded random densities.
fn probe_states(basis: &ReferenceBasis) -> Vec<DensityOperator> {
    let d = basis.dim();
    let mut probes = Vec::new();
    for i in 0..d {
        probes.push(ComplexMatrix::projector(&basis.vector(i)));
        for j in i + 1..d {
            let (bi, bj) = (basis.vector(i), basis.vector(j));
            for phase in [ONE, c(0.0, 1.0)] {
                let v: Vec<_> = bi.iter().zip(&bj).map(|(a, b)| (a + phase * b) * FRAC_1_SQRT_2).collect();
                probes.push(ComplexMatrix::projector(&v));
            }
        }
    }
    let mut out: Vec<DensityOperator> = probes
        .into_iter()
        .map(|m| DensityOperator::from_matrix(m).expect("projector onto unit vector"))
        .collect();
    out.extend((0..RANDOM_PROBES).map(|k| random_density(d, PROBE_SEED + k)));
    out
}

/// Whether `E∘Δ = Δ∘E` on the fixed probe set, with `Δ` the full dephasing
/// in `basis`.
pub fn commutes_with_dephasing(e: &KrausChannel, basis: &ReferenceBasis) -> bool {
    if e.dim() != basis.dim() {
        return false;
    }
    probe_states(basis).iter().all(|rho| {
        let lhs = dephase_all(rho, basis).and_then(|x| apply_channel(e, &x));
        let rhs = apply_channel(e, rho).and_then(|x| dephase_all(&x, basis));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => l.matrix().max_abs_diff(r.matrix()) <= PREDICATE_TOL,
            _ => false,
        }
    })
}

/// Whether `E(I/d) = I/d`.
pub fn is_unital(e: &KrausChannel) -> bool {
    e.is_unital()
}

/// Kraus set `{K_i ⊗ L_j}`.
pub fn channel_tensor(e: &KrausChannel, f: &KrausChannel) -> Result<KrausChannel> {
    let mut ops = Vec::with_capacity(e.ops.len() * f.ops.len());
    for k in &e.ops {
        for l in &f.ops {
            ops.push(k.kron(l)?);
        }
    }
    KrausChannel::new(ops, format!("({})x({})", e.tag, f.tag))
}

/// Parses `bit_flip:0.25`, `identity:4`, `dephasing:3` or
/// `dilate:<gate spec>:<ancilla dim>` (e.g. `dilate:U_adc:0.36:2`).
pub fn channel_from_str(s: &str) -> Result<KrausChannel> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("dilate:") {
        let (gate, anc) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse("dilation needs 'dilate:<gate>:<ancilla dim>'".into()))?;
        let anc: usize = anc.parse().map_err(|_| Error::Parse(format!("bad ancilla dimension '{anc}'")))?;
        return dilate(&build_gate(&gate.parse()?)?, anc);
    }
    let (name, param) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("channel '{s}' needs a parameter, e.g. bit_flip:0.25")))?;
    let dim = || param.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension '{param}'")));
    match name {
        "identity" => Ok(KrausChannel::identity(dim()?)),
        "dephasing" => Ok(KrausChannel::dephasing(dim()?)),
        _ => {
            let preset: ChannelPreset = name.parse()?;
            let p: f64 = param.parse().map_err(|_| Error::Parse(format!("bad parameter '{param}'")))?;
            preset.build(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::states::PureState;

    fn plus() -> DensityOperator {
        DensityOperator::from_matrix(ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap())
            .unwrap()
    }

    fn half() -> ComplexMatrix {
        ComplexMatrix::identity(2).scale_real(0.5)
    }

    #[test]
    fn presets_are_cptp_on_grid() {
        for preset in ChannelPreset::ALL {
            for k in 0..=20 {
                preset.build(k as f64 / 20.0).unwrap();
            }
            assert!(preset.build(-0.1).is_err());
            assert!(preset.build(1.1).is_err());
        }
        assert!(matches!(preset_channel("nope", 0.1), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn preset_examples() {
        let rho = crate::states::random_density(2, 3);
        let out = preset_channel("bit_flip", 0.0).unwrap().apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        // eta = 0 is full damping
        let out = preset_channel("amplitude_damping", 0.0).unwrap().apply(&plus()).unwrap();
        assert!(out.matrix().max_abs_diff(DensityOperator::basis_state(2, 0).matrix()) < 1e-15);
        let out = preset_channel("amplitude_damping", 1.0).unwrap().apply(&plus()).unwrap();
        assert!(out.matrix().max_abs_diff(plus().matrix()) < 1e-15);

        let out = preset_channel("phase_flip", 0.5).unwrap().apply(&plus()).unwrap();
        assert!(out.matrix().max_abs_diff(&half()) < 1e-15);

        let out = preset_channel("depolarizing", 1.0).unwrap().apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(&half()) < 1e-15);

        let out = preset_channel("amplitude_damping", 0.36).unwrap().apply(&plus()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.82, 0.3], &[0.3, 0.18]]).unwrap();
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn depolarizing_matches_mixing_form() {
        let rho = crate::states::random_density(2, 8);
        let p = 0.3;
        let out = preset_channel("depolarizing", p).unwrap().apply(&rho).unwrap();
        let expected = &rho.matrix().scale_real(1.0 - p) + &half().scale_real(p);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dilations() {
        let cnot = build_gate(&GateSpec::Cnot).unwrap();
        let deph = dilate(&cnot, 2).unwrap();
        assert_eq!(deph.ops()[0], ComplexMatrix::from_diag(&[1.0, 0.0]));
        assert_eq!(deph.ops()[1], ComplexMatrix::from_diag(&[0.0, 1.0]));
        let out = deph.apply(&plus()).unwrap();
        assert!(out.matrix().max_abs_diff(&half()) < 1e-15);

        let eta = 0.36;
        let adc = dilate(&build_gate(&GateSpec::Uadc(eta)).unwrap(), 2).unwrap();
        let preset = preset_channel("amplitude_damping", eta).unwrap();
        for (a, b) in adc.ops().iter().zip(preset.ops()) {
            assert!(a.max_abs_diff(b) < 1e-10);
        }

        let id = dilate(&UnitaryGate::identity(4), 2).unwrap();
        let rho = crate::states::random_density(2, 1);
        assert!(id.apply(&rho).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-15);

        assert!(dilate(&UnitaryGate::identity(4), 3).is_err());
    }

    #[test]
    fn dilation_matches_partial_trace() {
        let u = crate::states::random_unitary(6, 21);
        let ch = dilate(&u, 3).unwrap();
        let rho = crate::states::random_density(2, 22);
        let anc = DensityOperator::basis_state(3, 0);
        let joint = rho.tensor(&anc).unwrap().evolve(&u).unwrap();
        let reduced = joint.reduce(&[0]).unwrap();
        assert!(ch.apply(&rho).unwrap().matrix().max_abs_diff(reduced.matrix()) < 1e-10);
    }

    #[test]
    fn dephasing_commutation() {
        let comp = ReferenceBasis::computational(2);
        for p in [0.0, 0.2, 0.7] {
            assert!(commutes_with_dephasing(&preset_channel("phase_flip", p).unwrap(), &comp));
            assert!(commutes_with_dephasing(&preset_channel("bit_flip", p).unwrap(), &comp));
        }
        // diagonal goes to diagonal and coherences only rescale
        assert!(commutes_with_dephasing(&preset_channel("amplitude_damping", 0.5).unwrap(), &comp));
        let hb = ReferenceBasis::new(UnitaryGate::hadamard(), "hadamard");
        // Z only swaps |+> and |->, so phase flip still commutes there; damping does not
        assert!(commutes_with_dephasing(&preset_channel("phase_flip", 0.3).unwrap(), &hb));
        assert!(!commutes_with_dephasing(&preset_channel("amplitude_damping", 0.5).unwrap(), &hb));
        let h_gate = KrausChannel::new(vec![UnitaryGate::hadamard().matrix().clone()], "H").unwrap();
        assert!(!commutes_with_dephasing(&h_gate, &comp));
        assert!(!h_gate.commutes_with_computational_dephasing());
    }

    #[test]
    fn unital_flags() {
        assert!(is_unital(&preset_channel("depolarizing", 0.4).unwrap()));
        assert!(is_unital(&preset_channel("bit_flip", 0.4).unwrap()));
        let ad = preset_channel("amplitude_damping", 0.5).unwrap();
        assert!(!is_unital(&ad));
        let out = ad.apply(&DensityOperator::maximally_mixed(2)).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.75, 0.25])) < 1e-15);
    }

    #[test]
    fn tensor_channels() {
        let id = channel_tensor(&KrausChannel::identity(2), &KrausChannel::identity(2)).unwrap();
        let rho = crate::states::random_density(4, 2);
        assert!(id.apply(&rho).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let bf = preset_channel("bit_flip", 0.3).unwrap();
        let joint = channel_tensor(&bf, &KrausChannel::identity(2)).unwrap();
        let a = crate::states::random_density(2, 4);
        let b = crate::states::random_density(2, 5);
        let lhs = joint.apply(&a.tensor(&b).unwrap()).unwrap();
        let rhs = bf.apply(&a).unwrap().tensor(&b).unwrap();
        assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-10);

        let pf = preset_channel("phase_flip", 0.5).unwrap();
        let s = FRAC_1_SQRT_2;
        let bell = PureState::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)], vec![2, 2]).unwrap().density();
        let out = channel_tensor(&pf, &pf).unwrap().apply(&bell).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let k = ComplexMatrix::identity(2).scale_real(0.9);
        assert!(matches!(KrausChannel::new(vec![k], "bad"), Err(Error::NotTracePreserving { .. })));
    }

    #[test]
    fn channel_strings() {
        assert_eq!(channel_from_str("bit_flip:0.25").unwrap().tag(), "bit_flip:0.25");
        assert_eq!(channel_from_str("identity:3").unwrap().dim(), 3);
        assert_eq!(channel_from_str("dilate:U_adc:0.36:2").unwrap().dim(), 2);
        assert_eq!(channel_from_str("dilate:GCNOT:3:3").unwrap().dim(), 3);
        assert!(channel_from_str("bit_flip").is_err());
        assert!(channel_from_str("bit_flip:2").is_err());
    }
}
