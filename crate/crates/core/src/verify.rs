//! Verification suites. Each suite recomputes a family of identities and
//! inequalities on fixed parameter grids and seeded random inputs and
//! returns one report row per relation. Rows over many samples keep the
//! worst sample.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::channels::{apply_channel, channel_tensor, dilate, ChannelPreset, KrausChannel};
use crate::correlations::{
    discord_fixed_basis, one_way_deficit, qi_relative_entropy, verify_coherence_chain, BipartiteState, IncoherentOp,
    IDENTITY_TOL, GRID_TOL,
};
use crate::error::{Error, Result};
use crate::gates::{build_gate, controlled, GateSpec, UnitaryGate};
use crate::linalg::{c, ComplexMatrix};
use crate::measures::{binary_entropy, coherence_rel_entropy, relative_entropy, von_neumann_entropy};
use crate::powers::{
    cohering_power, cohering_power_between, cohering_power_zyz, decohering_power, max_output_entropy,
    sup_cohering_power, MaxCoherentSet,
};
use crate::report::{Check, Relation, VerificationReport};
use crate::states::{
    dephase, maximally_coherent, random_density_with, random_incoherent_with, random_pure_with, random_unitary_with,
    DensityOperator, PhaseMode, PureState, ReferenceBasis,
};

/// Suites in the order `all` runs them.
pub const SUITES: [&str; 5] = ["cohering", "decohering", "dilation", "chain", "deficit"];

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0;

/// Eleven-point parameter grid `0, 0.1, …, 1`.
pub fn unit_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Maximally coherent set for the decohering-power identities and trade-offs.
    pub mode: PhaseMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, mode: PhaseMode::Canonical }
    }
}

/// Runs a named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let suites: Vec<&'static str> = match name {
        "all" => SUITES.to_vec(),
        other => match SUITES.iter().find(|s| **s == other) {
            Some(s) => vec![*s],
            None => return Err(Error::UnknownSuite(other.to_string())),
        },
    };
    let mut report = VerificationReport::new(name, Some(cfg.seed), Some(cfg.mode));
    let mut ctx = Ctx::new(cfg);
    for s in suites {
        ctx.stream = 0;
        ctx.suite = s;
        let rows = match s {
            "cohering" => cohering_suite(&mut ctx),
            "decohering" => decohering_suite(&mut ctx),
            "dilation" => dilation_suite(&mut ctx),
            "chain" => chain_suite(&mut ctx),
            _ => deficit_suite(&mut ctx),
        };
        report.checks.extend(rows);
    }
    report.inputs_digest = Some(ctx.finish());
    Ok(report)
}

/// Per-run state: seeded random streams and the digest of generated inputs.
struct Ctx {
    cfg: SuiteConfig,
    suite: &'static str,
    stream: u64,
    hasher: Sha256,
    rows: Vec<Check>,
}

impl Ctx {
    fn new(cfg: &SuiteConfig) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(format!("seed={};mode={}", cfg.seed, cfg.mode).as_bytes());
        Self { cfg: *cfg, suite: "", stream: 0, hasher, rows: Vec::new() }
    }

    /// A fresh generator; streams are numbered in call order within a suite.
    fn rng(&mut self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let tag = SUITES.iter().position(|s| *s == self.suite).unwrap_or(0) as u64;
        rng.set_stream(tag << 32 | self.stream);
        self.stream += 1;
        rng
    }

    fn absorb(&mut self, m: &ComplexMatrix) {
        for z in m.data() {
            self.hasher.update(z.re.to_le_bytes());
            self.hasher.update(z.im.to_le_bytes());
        }
    }

    fn absorb_f64(&mut self, xs: &[f64]) {
        for x in xs {
            self.hasher.update(x.to_le_bytes());
        }
    }

    fn finish(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn id(&self, name: &str) -> String {
        format!("{}.{name}", self.suite)
    }

    fn push(&mut self, check: Check) {
        self.rows.push(check);
    }

    /// Runs a fallible group of checks; an error becomes one failing row.
    fn group(&mut self, name: &str, text: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = f(self) {
            let id = self.id(name);
            self.rows.push(Check::errored(id, text, &e));
        }
    }

    fn take(&mut self) -> Vec<Check> {
        std::mem::take(&mut self.rows)
    }
}

/// The sample with the least slack against `relation`, annotated with the
/// sample count and its index.
fn worst(
    id: String,
    text: &str,
    relation: Relation,
    samples: &[(f64, f64)],
    tol: f64,
    label: impl Fn(usize) -> String,
) -> Check {
    let slack = |c: &Check| {
        if !c.margin.is_finite() {
            f64::NEG_INFINITY
        } else {
            match relation {
                Relation::Equal => tol - c.margin,
                _ => c.margin + tol,
            }
        }
    };
    let mut best: Option<(usize, Check)> = None;
    for (k, &(l, r)) in samples.iter().enumerate() {
        let chk = Check::new(id.clone(), text, relation, l, r, tol);
        if best.as_ref().is_none_or(|(_, b)| slack(&chk) < slack(b)) {
            best = Some((k, chk));
        }
    }
    match best {
        Some((k, chk)) => chk.with_note(format!("{} samples, worst {}", samples.len(), label(k))),
        None => Check::new(id, text, relation, f64::NAN, f64::NAN, tol).with_note("no samples"),
    }
}

fn plus_density() -> DensityOperator {
    maximally_coherent(2, &[0.0], PhaseMode::Canonical).expect("qubit").density()
}

fn log2(d: usize) -> f64 {
    (d as f64).log2()
}

// ---------------------------------------------------------------- cohering

fn cohering_suite(ctx: &mut Ctx) -> Vec<Check> {
    let comp2 = ReferenceBasis::computational(2);
    ctx.group("hadamard", "C(H) = 1", |ctx| {
        let v = cohering_power(&UnitaryGate::hadamard(), &comp2)?.value;
        ctx.push(Check::equal(ctx.id("hadamard"), "C(H) = 1", v, 1.0, IDENTITY_TOL));
        Ok(())
    });
    for (name, spec) in [("pauli-x", GateSpec::X), ("pauli-y", GateSpec::Y), ("pauli-z", GateSpec::Z)] {
        let text = format!("C({spec}) = 0");
        ctx.group(name, &text, |ctx| {
            let v = cohering_power(&build_gate(&spec)?, &comp2)?.value;
            ctx.push(Check::equal(ctx.id(name), &text, v, 0.0, IDENTITY_TOL));
            Ok(())
        });
    }

    ctx.group("bounds", "0 <= C(U) <= log2 d", |ctx| {
        let mut rng = ctx.rng();
        for d in 2..=4 {
            let mut lower = Vec::new();
            let mut upper = Vec::new();
            for _ in 0..10 {
                let u = random_unitary_with(d, &mut rng);
                ctx.absorb(u.matrix());
                let v = cohering_power(&u, &ReferenceBasis::computational(d))?.value;
                lower.push((v, 0.0));
                upper.push((v, log2(d)));
            }
            let text = format!("C(U) >= 0, random U at d = {d}");
            ctx.push(worst(ctx.id(&format!("lower-bound-d{d}")), &text, Relation::AtLeast, &lower, IDENTITY_TOL, |k| format!("unitary {k}")));
            let text = format!("C(U) <= log2 {d}, random U at d = {d}");
            ctx.push(worst(ctx.id(&format!("upper-bound-d{d}")), &text, Relation::AtMost, &upper, IDENTITY_TOL, |k| format!("unitary {k}")));
        }
        Ok(())
    });

    ctx.group("zyz", "C(ZYZ(a,b,g,d)) = H(cos^2(g/2), sin^2(g/2))", |ctx| {
        let mut rng = ctx.rng();
        let mut samples = Vec::new();
        for _ in 0..50 {
            let a: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 * PI);
            ctx.absorb_f64(&a);
            let u = build_gate(&GateSpec::Zyz { alpha: a[0], beta: a[1], gamma: a[2], delta: a[3] })?;
            samples.push((cohering_power(&u, &comp2)?.value, cohering_power_zyz(a[2])));
        }
        ctx.push(worst(ctx.id("zyz"), "C(ZYZ(a,b,g,d)) = H(cos^2(g/2), sin^2(g/2))", Relation::Equal, &samples, IDENTITY_TOL, |k| format!("angles {k}")));
        Ok(())
    });

    let comp4 = ReferenceBasis::computational(4);
    ctx.group("additivity-hh", "C(H x H) = C(H) + C(H) in the product basis", |ctx| {
        let h = UnitaryGate::hadamard();
        let lhs = cohering_power(&h.tensor(&h)?, &comp4)?.value;
        let rhs = 2.0 * cohering_power(&h, &comp2)?.value;
        ctx.push(Check::equal(ctx.id("additivity-hh"), "C(H x H) = C(H) + C(H) in the product basis", lhs, rhs, IDENTITY_TOL));
        Ok(())
    });
    ctx.group("additivity", "C(U x V) = C(U) + C(V) in the product basis", |ctx| {
        let mut rng = ctx.rng();
        let mut samples = Vec::new();
        for _ in 0..20 {
            let u = random_unitary_with(2, &mut rng);
            let v = random_unitary_with(2, &mut rng);
            ctx.absorb(u.matrix());
            ctx.absorb(v.matrix());
            let lhs = cohering_power(&u.tensor(&v)?, &comp4)?.value;
            samples.push((lhs, cohering_power(&u, &comp2)?.value + cohering_power(&v, &comp2)?.value));
        }
        ctx.push(worst(ctx.id("additivity"), "C(U x V) = C(U) + C(V), random qubit pairs, product basis", Relation::Equal, &samples, IDENTITY_TOL, |k| format!("pair {k}")));
        Ok(())
    });

    ctx.group("bell-basis", "C(H x H) relative to the Bell basis", |ctx| {
        let h = UnitaryGate::hadamard();
        let hh = h.tensor(&h)?;
        let bell = ReferenceBasis::bell();
        let c_bell = cohering_power_between(&hh, &comp4, &bell)?.value;
        let sum = 2.0 * cohering_power(&h, &comp2)?.value;
        ctx.push(Check::equal(
            ctx.id("bell-basis-value"),
            "C(H x H) = 1 for product inputs measured in the Bell basis",
            c_bell,
            1.0,
            IDENTITY_TOL,
        ));
        ctx.push(Check::equal(
            ctx.id("bell-basis-gap"),
            "C(H) + C(H) - C(H x H) = 1 in the Bell basis (additivity fails)",
            sum - c_bell,
            1.0,
            IDENTITY_TOL,
        ));
        let within = cohering_power(&hh, &bell)?.value;
        ctx.push(
            Check::at_most(ctx.id("bell-basis-permutation"), "C(H x H) <= C(H) + C(H), Bell inputs and Bell measurement", within, sum, IDENTITY_TOL)
                .with_note("H x H permutes the Bell states, so Bell-basis inputs stay incoherent"),
        );
        Ok(())
    });

    ctx.group("controlled", "C(controlled(n, U)) = C(U)", |ctx| {
        let mut rng = ctx.rng();
        for n in 1..=2usize {
            let dim = 2usize << n;
            let basis = ReferenceBasis::computational(dim);
            let mut samples = Vec::new();
            for _ in 0..20 {
                let u = random_unitary_with(2, &mut rng);
                ctx.absorb(u.matrix());
                samples.push((cohering_power(&controlled(n, &u)?, &basis)?.value, cohering_power(&u, &comp2)?.value));
            }
            let text = format!("C(controlled({n}, U)) = C(U), random qubit U");
            ctx.push(worst(ctx.id(&format!("controlled-n{n}")), &text, Relation::Equal, &samples, IDENTITY_TOL, |k| format!("unitary {k}")));
        }
        Ok(())
    });
    ctx.group("cnot", "CNOT has no cohering power but entangles |+>|0>", |ctx| {
        let cnot = build_gate(&GateSpec::Cnot)?;
        ctx.push(Check::equal(ctx.id("cnot-power"), "C(CNOT) = 0", cohering_power(&cnot, &comp4)?.value, 0.0, IDENTITY_TOL));
        let out = plus_density().tensor(&DensityOperator::basis_state(2, 0))?.evolve(&cnot)?;
        let v = coherence_rel_entropy(&out, &comp4)?.bits();
        ctx.push(Check::equal(ctx.id("cnot-plus-zero"), "C_re(CNOT |+>|0>) = 1", v, 1.0, IDENTITY_TOL));
        Ok(())
    });

    ctx.group("convexity", "C_re(U delta U^dagger) <= C(U) for incoherent delta", |ctx| {
        let mut rng = ctx.rng();
        for d in 2..=4 {
            let basis = ReferenceBasis::computational(d);
            let mut samples = Vec::new();
            for _ in 0..100 {
                let delta = random_incoherent_with(d, &mut rng);
                let u = random_unitary_with(d, &mut rng);
                ctx.absorb(delta.matrix());
                ctx.absorb(u.matrix());
                let lhs = coherence_rel_entropy(&delta.evolve(&u)?, &basis)?.bits();
                samples.push((lhs, cohering_power(&u, &basis)?.value));
            }
            let text = format!("C_re(U delta U^dagger) <= C(U), incoherent delta at d = {d}");
            ctx.push(worst(ctx.id(&format!("convexity-d{d}")), &text, Relation::AtMost, &samples, IDENTITY_TOL, |k| format!("pair {k}")));
        }
        Ok(())
    });

    ctx.group("permutation", "relabeling the basis leaves C(U) unchanged", |ctx| {
        let mut rng = ctx.rng();
        let mut samples = Vec::new();
        for d in 2..=4 {
            let u = random_unitary_with(d, &mut rng);
            ctx.absorb(u.matrix());
            // cyclic shift i -> i + 1
            let mut p = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                p[((i + 1) % d, i)] = c(1.0, 0.0);
            }
            let shifted = ReferenceBasis::new(UnitaryGate::from_matrix(p)?, "shifted");
            samples.push((cohering_power(&u, &shifted)?.value, cohering_power(&u, &ReferenceBasis::computational(d))?.value));
        }
        ctx.push(worst(ctx.id("permutation"), "C(U) in a cyclically relabeled basis = C(U)", Relation::Equal, &samples, 1e-12, |k| format!("d = {}", k + 2)));
        Ok(())
    });

    ctx.group("relative-entropy-oracle", "S(rho || sigma) >= C_re(rho) over incoherent sigma", |ctx| {
        let mut rng = ctx.rng();
        let mut bound = Vec::new();
        let mut attained = Vec::new();
        for k in 0..200 {
            let d = 2 + k % 3;
            let rho = random_density_with(d, &mut rng);
            let sigma = random_incoherent_with(d, &mut rng);
            ctx.absorb(rho.matrix());
            ctx.absorb(sigma.matrix());
            let basis = ReferenceBasis::computational(d);
            let c_re = coherence_rel_entropy(&rho, &basis)?.bits();
            bound.push((relative_entropy(&rho, &sigma)?.bits(), c_re));
            let delta = dephase(&rho, &basis, &[0])?;
            attained.push((relative_entropy(&rho, &delta)?.bits(), c_re));
        }
        ctx.push(worst(ctx.id("relative-entropy-bound"), "S(rho || sigma) >= C_re(rho), random incoherent sigma, d in {2,3,4}", Relation::AtLeast, &bound, IDENTITY_TOL, |k| format!("pair {k}")));
        ctx.push(worst(ctx.id("relative-entropy-attained"), "S(rho || Delta rho) = C_re(rho), d in {2,3,4}", Relation::Equal, &attained, IDENTITY_TOL, |k| format!("state {k}")));
        Ok(())
    });
    ctx.take()
}

// -------------------------------------------------------------- decohering

fn decohering_suite(ctx: &mut Ctx) -> Vec<Check> {
    let comp2 = ReferenceBasis::computational(2);
    let mode = ctx.cfg.mode;
    let mset = MaxCoherentSet::new(mode, 2);
    let grid = unit_grid();
    ctx.absorb_f64(&grid);

    for preset in ChannelPreset::ALL {
        let name = format!("{}-complement", preset.name());
        let text = format!("D(E) + C_re(E(|+>)) = 1, E = {}", preset.name());
        ctx.group(&name, &text, |ctx| {
            let mut samples = Vec::new();
            for &p in &grid {
                let e = preset.build(p)?;
                let d = decohering_power(&e, &mset, &comp2)?.value;
                let c_plus = coherence_rel_entropy(&apply_channel(&e, &plus_density())?, &comp2)?.bits();
                samples.push((d + c_plus, 1.0));
            }
            ctx.push(worst(ctx.id(&name), &text, Relation::Equal, &samples, IDENTITY_TOL, |k| format!("p = {}", grid[k])));
            Ok(())
        });
    }
    ctx.group("bit-flip-zero", "D(bit flip) = 0", |ctx| {
        let mut samples = Vec::new();
        for &p in &grid {
            samples.push((decohering_power(&ChannelPreset::BitFlip.build(p)?, &mset, &comp2)?.value, 0.0));
        }
        let mut chk = worst(ctx.id("bit-flip-zero"), "D(bit flip) = 0", Relation::Equal, &samples, IDENTITY_TOL, |k| format!("p = {}", grid[k]));
        if mode == PhaseMode::Free {
            let note = chk.note.take().unwrap_or_default();
            chk = chk.with_note(format!("{note}; holds only over the canonical set"));
        }
        ctx.push(chk);
        Ok(())
    });
    ctx.group("examples", "closed-form decohering powers", |ctx| {
        let d = decohering_power(&ChannelPreset::PhaseFlip.build(0.5)?, &mset, &comp2)?.value;
        ctx.push(Check::equal(ctx.id("phase-flip-half"), "D(phase flip, p = 0.5) = 1", d, 1.0, IDENTITY_TOL));
        let d = decohering_power(&ChannelPreset::Depolarizing.build(1.0)?, &mset, &comp2)?.value;
        ctx.push(Check::equal(ctx.id("depolarizing-full"), "D(depolarizing, p = 1) = 1", d, 1.0, IDENTITY_TOL));
        Ok(())
    });

    let free = MaxCoherentSet::free(2);
    let canonical = MaxCoherentSet::canonical(2);
    for preset in ChannelPreset::ALL {
        let name = format!("{}-entropy-bound", preset.name());
        let text = format!("D(E) >= max S(E(psi)) over free phases, E = {}", preset.name());
        ctx.group(&name, &text, |ctx| {
            let mut samples = Vec::new();
            let mut structured = true;
            for &p in &grid {
                let e = preset.build(p)?;
                structured &= e.is_unital() && e.commutes_with_computational_dephasing();
                samples.push((decohering_power(&e, &free, &comp2)?.value, max_output_entropy(&e, &free, &comp2)?.value));
            }
            let label = |k: usize| format!("p = {}", grid[k]);
            let chk = if structured {
                let text = format!("D(E) = max S(E(psi)) over free phases (unital, commutes with dephasing), E = {}", preset.name());
                worst(ctx.id(&name), &text, Relation::Equal, &samples, GRID_TOL, label)
            } else {
                worst(ctx.id(&name), &text, Relation::AtLeast, &samples, IDENTITY_TOL, label)
                    .with_note("not both unital and dephasing-commuting: only the bound applies")
            };
            ctx.push(chk);
            Ok(())
        });
    }
    ctx.group("free-above-canonical", "D_free(E) >= D_canonical(E)", |ctx| {
        let mut samples = Vec::new();
        let mut labels = Vec::new();
        for preset in ChannelPreset::ALL {
            for &p in &grid {
                let e = preset.build(p)?;
                samples.push((decohering_power(&e, &free, &comp2)?.value, decohering_power(&e, &canonical, &comp2)?.value));
                labels.push(format!("{} p = {p}", preset.name()));
            }
        }
        ctx.push(worst(ctx.id("free-above-canonical"), "D_free(E) >= D_canonical(E), five presets", Relation::AtLeast, &samples, IDENTITY_TOL, |k| labels[k].clone()));
        Ok(())
    });

    ctx.group("super-additivity", "D(E x F) >= D(E) + D(F)", |ctx| {
        let mut rng = ctx.rng();
        let comp4 = ReferenceBasis::computational(4);
        let m4 = MaxCoherentSet::canonical(4);
        let mut samples = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..10 {
            let (i, j) = (rng.random_range(0..5), rng.random_range(0..5));
            let (p, q) = (rng.random::<f64>(), rng.random::<f64>());
            ctx.absorb_f64(&[i as f64, j as f64, p, q]);
            let e = ChannelPreset::ALL[i].build(p)?;
            let f = ChannelPreset::ALL[j].build(q)?;
            let joint = decohering_power(&channel_tensor(&e, &f)?, &m4, &comp4)?.value;
            let sum = decohering_power(&e, &canonical, &comp2)?.value + decohering_power(&f, &canonical, &comp2)?.value;
            samples.push((joint, sum));
            labels.push(format!("{}({p:.3}) x {}({q:.3})", ChannelPreset::ALL[i].name(), ChannelPreset::ALL[j].name()));
        }
        let strict = samples.iter().filter(|(l, r)| l - r > IDENTITY_TOL).count();
        let chk = worst(ctx.id("super-additivity"), "D(E x F) >= D(E) + D(F), canonical sets, random preset pairs", Relation::AtLeast, &samples, IDENTITY_TOL, |k| labels[k].clone());
        let note = chk.note.clone().unwrap_or_default();
        ctx.push(chk.with_note(format!("{note}; strict in {strict} of {}", samples.len())));
        Ok(())
    });

    ctx.group("uncertainty", "C_re(E(psi)) + S(E(psi)) <= 1", |ctx| {
        let mut rng = ctx.rng();
        for preset in ChannelPreset::ALL {
            let mut samples = Vec::new();
            for _ in 0..100 {
                let psi = random_pure_with(2, &mut rng);
                let p = rng.random::<f64>();
                ctx.absorb(psi.density().matrix());
                ctx.absorb_f64(&[p]);
                let out = apply_channel(&preset.build(p)?, &psi.density())?;
                let lhs = coherence_rel_entropy(&out, &comp2)?.bits() + von_neumann_entropy(&out)?.bits();
                samples.push((lhs, 1.0));
            }
            let text = format!("C_re(E(psi)) + S(E(psi)) <= 1, random pure psi, E = {}", preset.name());
            ctx.push(worst(ctx.id(&format!("{}-uncertainty", preset.name())), &text, Relation::AtMost, &samples, IDENTITY_TOL, |k| format!("state {k}")));
        }
        Ok(())
    });
    ctx.take()
}

// ---------------------------------------------------------------- dilation

fn dilation_suite(ctx: &mut Ctx) -> Vec<Check> {
    let comp2 = ReferenceBasis::computational(2);
    let comp4 = ReferenceBasis::computational(4);
    let mset = MaxCoherentSet::new(ctx.cfg.mode, 2);
    let grid = unit_grid();
    ctx.absorb_f64(&grid);

    ctx.group("uadc", "U_adc relations over eta", |ctx| {
        let mut power = Vec::new();
        let mut output = Vec::new();
        let mut sup = Vec::new();
        let mut tradeoff = Vec::new();
        let mut channel = Vec::new();
        let plus_zero = plus_density().tensor(&DensityOperator::basis_state(2, 0))?;
        for &eta in &grid {
            let u = build_gate(&GateSpec::Uadc(eta))?;
            let c_u = cohering_power(&u, &comp4)?.value;
            power.push((c_u, binary_entropy(eta)));
            let c_out = coherence_rel_entropy(&plus_zero.evolve(&u)?, &comp4)?.bits();
            output.push((c_out, 1.0 + 0.5 * c_u));
            let s = sup_cohering_power(&u, &mset, 2)?.value;
            sup.push((s, 1.0 + 0.5 * binary_entropy(eta)));
            let e = dilate(&u, 2)?;
            tradeoff.push((decohering_power(&e, &mset, &comp2)?.value + s, 1.0));
            let preset = ChannelPreset::AmplitudeDamping.build(eta)?;
            channel.push((max_channel_distance(&e, &preset)?, 0.0));
        }
        let label = |k: usize| format!("eta = {}", grid[k]);
        ctx.push(worst(ctx.id("uadc-power"), "C(U_adc) = H2(eta)", Relation::Equal, &power, IDENTITY_TOL, label));
        ctx.push(worst(ctx.id("uadc-plus-zero"), "C_re(U_adc |+>|0>) = 1 + C(U_adc)/2", Relation::Equal, &output, IDENTITY_TOL, label));
        ctx.push(worst(ctx.id("uadc-sup"), "sup-cohering power of U_adc = 1 + H2(eta)/2", Relation::Equal, &sup, IDENTITY_TOL, label));
        ctx.push(worst(ctx.id("uadc-tradeoff"), "D(E) + sup-cohering power(U_adc) >= 1, E the dilated channel", Relation::AtLeast, &tradeoff, GRID_TOL, label));
        ctx.push(worst(ctx.id("uadc-channel"), "tracing out the ancilla of U_adc gives amplitude damping", Relation::Equal, &channel, IDENTITY_TOL, label));
        Ok(())
    });

    ctx.group("random-dilation", "D(E) + sup-cohering power(U) >= log2 d", |ctx| {
        let mut rng = ctx.rng();
        let mut samples = Vec::new();
        for _ in 0..5 {
            let u = random_unitary_with(4, &mut rng);
            ctx.absorb(u.matrix());
            let e = dilate(&u, 2)?;
            samples.push((decohering_power(&e, &mset, &comp2)?.value + sup_cohering_power(&u, &mset, 2)?.value, 1.0));
        }
        ctx.push(worst(ctx.id("random-dilation"), "D(E) + sup-cohering power(U) >= log2 d, random 2 x 2 interactions", Relation::AtLeast, &samples, GRID_TOL, |k| format!("unitary {k}")));
        Ok(())
    });
    ctx.take()
}

/// Largest entry difference of the outputs of two channels over the
/// computational projectors and the `|+>`, `|+i>` probes.
fn max_channel_distance(e: &KrausChannel, f: &KrausChannel) -> Result<f64> {
    let mut probes = vec![DensityOperator::basis_state(2, 0), DensityOperator::basis_state(2, 1), plus_density()];
    probes.push(maximally_coherent(2, &[PI / 2.0], PhaseMode::Free)?.density());
    let mut worst = 0.0f64;
    for rho in &probes {
        worst = worst.max(e.apply(rho)?.matrix().max_abs_diff(f.apply(rho)?.matrix()));
    }
    Ok(worst)
}

// ------------------------------------------------------------------- chain

fn chain_suite(ctx: &mut Ctx) -> Vec<Check> {
    ctx.group("examples", "coherence chain examples", |ctx| {
        let r = verify_coherence_chain(&plus_density(), IncoherentOp::Cnot)?;
        let v = &r.values;
        let spread = [v.c_ae, v.q.unwrap_or(f64::NAN), v.e.unwrap_or(f64::NAN)]
            .iter()
            .fold(0.0f64, |m, x| m.max((x - v.c_a).abs()));
        ctx.push(Check::equal(ctx.id("cnot-plus"), "C_A = C_AE = Q = E = 1 for |+> under CNOT", v.c_a, 1.0, IDENTITY_TOL));
        ctx.push(Check::equal(ctx.id("cnot-plus-links"), "largest gap between chain terms for |+> under CNOT", spread, 0.0, IDENTITY_TOL));
        Ok(())
    });

    for (op, d) in [(IncoherentOp::Cnot, 2usize), (IncoherentOp::Gcnot(3), 3)] {
        let name = format!("monotone-d{d}");
        let text = format!("C_A >= C_AE, random mixed rho_A, {op}");
        ctx.group(&name, &text, |ctx| {
            let mut rng = ctx.rng();
            let mut samples = Vec::new();
            for _ in 0..100 {
                let rho = random_density_with(d, &mut rng);
                ctx.absorb(rho.matrix());
                let r = verify_coherence_chain(&rho, op)?;
                samples.push((r.values.c_a, r.values.c_ae));
            }
            ctx.push(worst(ctx.id(&name), &text, Relation::AtLeast, &samples, IDENTITY_TOL, |k| format!("state {k}")));
            Ok(())
        });
    }

    for d in [2usize, 3] {
        let name = format!("gcnot-pure-d{d}");
        ctx.group(&name, "C_A = C_AE = Q = E under GCNOT", |ctx| {
            let mut rng = ctx.rng();
            for k in 0..20 {
                let psi = random_pure_with(d, &mut rng);
                ctx.absorb(psi.density().matrix());
                let r = verify_coherence_chain(&psi.density(), IncoherentOp::Gcnot(d))?;
                let v = &r.values;
                let terms = [v.c_ae, v.q.unwrap_or(f64::NAN), v.e.unwrap_or(f64::NAN)];
                // compare C_A against the chain term furthest from it
                let far = terms.iter().copied().fold(v.c_a, |acc, x| {
                    if !x.is_finite() || (x - v.c_a).abs() > (acc - v.c_a).abs() { x } else { acc }
                });
                ctx.push(Check::equal(
                    ctx.id(&format!("{name}-{k}")),
                    format!("C_A = C_AE = Q = E, random pure state {k}, GCNOT({d})"),
                    v.c_a,
                    far,
                    IDENTITY_TOL,
                ));
            }
            Ok(())
        });
    }

    ctx.group("gi-closest", "S(rho || sigma_GI) >= C_AE for random GI sigma", |ctx| {
        let mut rng = ctx.rng();
        let basis = ReferenceBasis::computational(4);
        let mut samples = Vec::new();
        for _ in 0..20 {
            let rho = random_density_with(4, &mut rng).with_dims(vec![2, 2])?;
            ctx.absorb(rho.matrix());
            let sigma = random_gi_state(&mut rng)?;
            ctx.absorb(sigma.matrix());
            samples.push((relative_entropy(&rho, &sigma)?.bits(), coherence_rel_entropy(&rho, &basis)?.bits()));
        }
        ctx.push(worst(ctx.id("gi-closest"), "S(rho || sum_i p_i sigma_A x sigma_E) >= S(Delta_AE rho) - S(rho), random incoherent products", Relation::AtLeast, &samples, IDENTITY_TOL, |k| format!("pair {k}")));
        Ok(())
    });
    ctx.take()
}

/// Mixture of three products of random incoherent qubit states.
fn random_gi_state<R: Rng>(rng: &mut R) -> Result<DensityOperator> {
    let weights: Vec<f64> = (0..3).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(4, 4);
    for w in weights {
        let term = random_incoherent_with(2, rng).tensor(&random_incoherent_with(2, rng))?;
        m = &m + &term.matrix().scale_real(w / total);
    }
    DensityOperator::new(m, vec![2, 2])
}

// ----------------------------------------------------------------- deficit

fn deficit_suite(ctx: &mut Ctx) -> Vec<Check> {
    ctx.group("examples", "deficit examples", |ctx| {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)], vec![2, 2])?;
        let bell = BipartiteState::computational(bell.density())?;
        ctx.push(Check::equal(ctx.id("bell-qi"), "C_QI(Bell) = 1", qi_relative_entropy(&bell)?.bits(), 1.0, IDENTITY_TOL));
        ctx.push(Check::equal(ctx.id("bell-discord"), "discord(Bell) = 1", discord_fixed_basis(&bell)?.bits(), 1.0, IDENTITY_TOL));
        ctx.push(Check::equal(ctx.id("bell-deficit"), "one-way deficit(Bell) = 1", one_way_deficit(&bell)?.value, 1.0, GRID_TOL));
        let mut rng = ctx.rng();
        let sigma = random_density_with(2, &mut rng);
        ctx.absorb(sigma.matrix());
        let ps = BipartiteState::computational(plus_density().tensor(&sigma)?)?;
        ctx.push(Check::equal(ctx.id("plus-product-deficit"), "one-way deficit(|+><+| x sigma) = 0", one_way_deficit(&ps)?.value, 0.0, GRID_TOL));
        Ok(())
    });

    ctx.group("corpus", "coherence-correlation identities on random two-qubit states", |ctx| {
        let mut rng = ctx.rng();
        let mut identity = Vec::new();
        let mut compact = Vec::new();
        let mut below = Vec::new();
        let mut at_opt = Vec::new();
        let mut at_ref = Vec::new();
        let mut coincide = 0usize;
        for _ in 0..200 {
            let rho = random_density_with(4, &mut rng).with_dims(vec![2, 2])?;
            ctx.absorb(rho.matrix());
            let r = crate::correlations::verify_deficit_relations(&BipartiteState::computational(rho)?)?;
            let pair = |i: usize| (r.checks[i].lhs, r.checks[i].rhs);
            identity.push(pair(0));
            compact.push(pair(1));
            below.push(pair(2));
            at_opt.push(pair(3));
            at_ref.push(pair(4));
            if (r.checks[4].lhs - r.checks[4].rhs).abs() <= GRID_TOL {
                coincide += 1;
            }
        }
        let label = |k: usize| format!("state {k}");
        ctx.push(worst(ctx.id("discord-coherence-sum"), "C(rho_A) + discord(rho) = C_QI(rho)", Relation::Equal, &identity, IDENTITY_TOL, label));
        ctx.push(worst(ctx.id("compact-relation"), "C(Delta_A rho) + C_QI(rho) = C(rho)", Relation::Equal, &compact, IDENTITY_TOL, label));
        ctx.push(worst(ctx.id("deficit-below-qi"), "one-way deficit <= C_QI(rho)", Relation::AtMost, &below, GRID_TOL, label));
        ctx.push(worst(ctx.id("tradeoff-at-deficit-basis"), "C(rho_A) + discord(rho) = deficit in the deficit-optimal basis", Relation::Equal, &at_opt, IDENTITY_TOL, label));
        let chk = worst(ctx.id("tradeoff-at-reference-basis"), "C(rho_A) + discord(rho) >= deficit in the reference basis", Relation::AtLeast, &at_ref, IDENTITY_TOL, label);
        let note = chk.note.clone().unwrap_or_default();
        ctx.push(chk.with_note(format!("{note}; reference basis deficit-optimal in {coincide} of 200")));
        Ok(())
    });
    ctx.take()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn worst_picks_least_slack() {
        let s = [(1.0, 1.0), (1.0, 1.5), (1.0, 1.1)];
        let w = worst("x".into(), "", Relation::Equal, &s, 1e-9, |k| k.to_string());
        assert_eq!(w.rhs, 1.5);
        assert!(w.note.unwrap().ends_with("worst 1"));
        let w = worst("x".into(), "", Relation::AtLeast, &s, 1e-9, |k| k.to_string());
        assert_eq!(w.rhs, 1.5);
        let w = worst("x".into(), "", Relation::AtMost, &s, 1e-9, |k| k.to_string());
        assert_eq!(w.rhs, 1.0);
        assert!(w.pass);
    }

    #[test]
    fn cohering_suite_passes() {
        let r = run_suite("cohering", &SuiteConfig { seed: 3, ..Default::default() }).unwrap();
        assert!(r.all_passed(), "{}", r.to_table());
        assert!(r.checks.iter().any(|c| c.id == "cohering.hadamard"));
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = SuiteConfig { seed: 11, ..Default::default() };
        let a = run_suite("chain", &cfg).unwrap();
        let b = run_suite("chain", &cfg).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        let other = run_suite("chain", &SuiteConfig { seed: 12, ..Default::default() }).unwrap();
        assert_ne!(a.inputs_digest, other.inputs_digest);
    }
}
