//! Self-check suite behind `qmin verify`.
//!
//! Every check reports the worst deviation it saw against a pinned
//! tolerance. `tolerance_scale` multiplies all numeric tolerances, so a scale
//! of zero makes any check with a nonzero residual fail.

use std::fmt;

use crate::basis::{gamma_decompose, reconstruct};
use crate::channels::{
    analytic_evolved_xstate, apply_product_channel, gad_sudden_death_threshold, sweep, xstate_measures,
    ChannelKind, KrausChannel,
};
use crate::eigen::hermitian_eigensystem;
use crate::error::Result;
use crate::families::{fmin_isotropic, fmin_werner, isotropic, pure_alpha, werner};
use crate::io::{parse_sweep_csv, sweep_csv};
use crate::linalg::ComplexMatrix;
use crate::measures::{
    concurrence, fidelity, fmin_pure, fmin_upper_bound, measure_report, min_exact_2xn, sine_metric,
    MeasureReport,
};
use crate::optimizer::{minimize, oracle_report, OracleConfig};
use crate::random::{random_unitary, RandomSource};
use crate::state::{
    balance_qubit_marginal, random_density, random_mixed_bipartite, schmidt, BipartiteState, DensityMatrix,
    Subsystem,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub worst: f64,
    pub cases: usize,
    pub passed: bool,
}

impl Check {
    fn within(name: &'static str, tolerance: f64, worst: f64, cases: usize) -> Self {
        Self {
            name,
            tolerance,
            worst,
            cases,
            passed: worst.is_finite() && worst <= tolerance,
        }
    }

    /// Qualitative check; `worst` is the number of failing cases.
    fn holds(name: &'static str, failures: usize, cases: usize) -> Self {
        Self {
            name,
            tolerance: 0.0,
            worst: failures as f64,
            cases,
            passed: failures == 0,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<44} worst {:.3e}  tol {:.1e}  cases {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tolerance,
            self.cases
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tolerance_scale: f64,
    pub oracle: OracleConfig,
    /// Random states per dimension pair in the state corpora.
    pub corpus: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            tolerance_scale: 1.0,
            oracle: OracleConfig::default(),
            corpus: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} of {} checks passed",
            self.checks.len() - self.failures(),
            self.checks.len()
        )
    }
}

struct Suite {
    cfg: VerifyConfig,
    checks: Vec<Check>,
    /// `|hs_min − purity·f_min|` over every report produced.
    consistency: (f64, usize),
}

impl Suite {
    fn tol(&self, t: f64) -> f64 {
        t * self.cfg.tolerance_scale
    }

    fn within(&mut self, name: &'static str, tol: f64, worst: f64, cases: usize) {
        let tol = self.tol(tol);
        self.checks.push(Check::within(name, tol, worst, cases));
    }

    fn holds(&mut self, name: &'static str, failures: usize, cases: usize) {
        self.checks.push(Check::holds(name, failures, cases));
    }

    fn rng(&self, stream: u64) -> RandomSource {
        RandomSource::substream(self.cfg.seed, stream)
    }

    fn track(&mut self, r: &MeasureReport) {
        self.consistency.0 = self.consistency.0.max((r.hs_min - r.purity * r.f_min).abs());
        self.consistency.1 += 1;
    }

    fn oracle(&mut self, s: &BipartiteState) -> Result<MeasureReport> {
        let r = oracle_report(s, &self.cfg.oracle)?;
        self.track(&r);
        Ok(r)
    }

    fn exact(&mut self, s: &BipartiteState) -> Result<MeasureReport> {
        let r = measure_report(s, &self.cfg.oracle)?;
        self.track(&r);
        Ok(r)
    }
}

const DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

/// Runs every check; only internal errors (not failed checks) are `Err`.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut s = Suite {
        cfg: *cfg,
        checks: Vec::new(),
        consistency: (0.0, 0),
    };
    numeric_core(&mut s)?;
    quantum_state(&mut s)?;
    operator_basis(&mut s)?;
    correlation_measures(&mut s)?;
    optimizer_checks(&mut s)?;
    channel_checks(&mut s)?;
    family_checks(&mut s)?;
    sweep_checks(&mut s)?;
    let (worst, n) = s.consistency;
    s.within("hs_min = purity * f_min", 1e-9, worst, n);
    Ok(VerifyReport {
        seed: cfg.seed,
        checks: s.checks,
    })
}

fn random_hermitian(d: usize, rng: &mut RandomSource) -> ComplexMatrix {
    let g = rng.gaussian_matrix(d, d);
    (&g + &g.dagger()).scale_re(0.5)
}

fn numeric_core(s: &mut Suite) -> Result<()> {
    let mut rng = s.rng(1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for d in 1..=16 {
        for _ in 0..3 {
            let h = random_hermitian(d, &mut rng);
            let eig = hermitian_eigensystem(&h)?;
            worst = worst.max(eig.map_spectrum(|x| x).max_abs_diff(&h));
            cases += 1;
        }
    }
    s.within("eigensystem reconstruction", 1e-8, worst, cases);

    let mut worst = 0.0f64;
    for d in 2..=8 {
        let a = rng.gaussian_matrix(d, d);
        let b = rng.gaussian_matrix(d, d);
        let ab = (&a * &b).trace()?;
        let ba = (&b * &a).trace()?;
        worst = worst.max((ab - ba).norm());
    }
    s.within("tr(AB) = tr(BA)", 1e-10, worst, 7);

    let mut worst = 0.0f64;
    for d in 2..=9 {
        let u = random_unitary(d, &mut rng);
        worst = worst.max((&u.dagger() * &u).max_abs_diff(&ComplexMatrix::identity(d)));
    }
    s.within("Haar unitary orthonormality", 1e-10, worst, 8);
    Ok(())
}

fn quantum_state(s: &mut Suite) -> Result<()> {
    let mut rng = s.rng(2);
    let (mut w_tensor, mut w_purity, mut w_schmidt) = (0.0f64, 0.0f64, 0.0f64);
    let mut cases = 0;
    for &(m, n) in &DIMS {
        for _ in 0..s.cfg.corpus {
            let a = random_density(m, &mut rng);
            let b = random_density(n, &mut rng);
            let prod = BipartiteState::product(&a, &b)?;
            w_tensor = w_tensor.max(prod.partial_trace(Subsystem::A).matrix().max_abs_diff(a.matrix()));

            let psi = crate::state::random_pure_vector(m * n, &mut rng);
            let pure = BipartiteState::from_pure(&psi, m, n)?;
            let pa = pure.partial_trace(Subsystem::A).purity();
            let pb = pure.partial_trace(Subsystem::B).purity();
            w_purity = w_purity.max((pa - pb).abs());
            let sd = schmidt(&psi, m, n)?;
            w_schmidt = w_schmidt.max((sd.coefficients.iter().sum::<f64>() - 1.0).abs());
            cases += 1;
        }
    }
    s.within("partial trace of a product", 1e-12, w_tensor, cases);
    s.within("pure-state marginal purities agree", 1e-10, w_purity, cases);
    s.within("Schmidt coefficients sum to one", 1e-10, w_schmidt, cases);
    Ok(())
}

fn operator_basis(s: &mut Suite) -> Result<()> {
    let mut rng = s.rng(3);
    let (mut w_round, mut w_norm) = (0.0f64, 0.0f64);
    let mut mismatch = 0;
    let mut cases = 0;
    for &(m, n) in &DIMS {
        for k in 0..s.cfg.corpus {
            let mut st = random_mixed_bipartite(m, n, &mut rng);
            if m == 2 && k % 2 == 1 {
                st = balance_qubit_marginal(&st)?;
            }
            let g = gamma_decompose(&st)?;
            w_round = w_round.max(reconstruct(&g)?.matrix().max_abs_diff(st.matrix()));
            w_norm = w_norm.max((g.gamma_norm_sq - st.purity()).abs());
            let flat = ComplexMatrix::identity(m).scale_re(1.0 / m as f64);
            let mixed = st.partial_trace(Subsystem::A).matrix().max_abs_diff(&flat) < 1e-9;
            if (g.x_norm() < 1e-10) != mixed {
                mismatch += 1;
            }
            cases += 1;
        }
    }
    s.within("Gamma round trip", 1e-10, w_round, cases);
    s.within("|Gamma|^2 = purity", 1e-10, w_norm, cases);
    s.holds("x = 0 iff maximally mixed marginal", mismatch, cases);
    Ok(())
}

fn correlation_measures(s: &mut Suite) -> Result<()> {
    let mut rng = s.rng(4);

    let (mut worst, mut cases) = (0.0f64, 0);
    for &(m, n) in &DIMS {
        for _ in 0..s.cfg.corpus / 2 {
            let psi = crate::state::random_pure_vector(m * n, &mut rng);
            let st = BipartiteState::from_pure(&psi, m, n)?;
            let want = fmin_pure(&schmidt(&psi, m, n)?);
            let got = s.oracle(&st)?.f_min;
            worst = worst.max((got - want).abs());
            cases += 1;
        }
    }
    s.within("pure states: f_min = 1 - sum lambda^2", 1e-8, worst, cases);

    let (mut w_f, mut w_hs) = (0.0f64, 0.0f64);
    for _ in 0..s.cfg.corpus {
        let ab = random_mixed_bipartite(2, 2, &mut rng);
        let c = random_density(2, &mut rng);
        let abc = ab.append_to_b(&c)?;
        let r0 = s.exact(&ab)?;
        let r1 = s.exact(&abc)?;
        w_f = w_f.max((r1.f_min - r0.f_min).abs());
        w_hs = w_hs.max((r1.hs_min - r0.hs_min * c.purity()).abs());
    }
    s.within("ancilla: f_min unchanged", 1e-9, w_f, s.cfg.corpus);
    s.within("ancilla: hs_min scales by purity", 1e-9, w_hs, s.cfg.corpus);

    let mut worst = 0.0f64;
    for &(m, n) in &DIMS[..2] {
        for _ in 0..s.cfg.corpus / 2 {
            let st = random_mixed_bipartite(m, n, &mut rng);
            let ua = random_unitary(m, &mut rng);
            let ub = random_unitary(n, &mut rng);
            let f0 = s.exact(&st)?.f_min;
            let f1 = s.exact(&st.local_unitary(&ua, &ub)?)?.f_min;
            worst = worst.max((f1 - f0).abs());
        }
    }
    s.within("local unitary invariance", 1e-9, worst, s.cfg.corpus);

    let mut worst = 0.0f64;
    for &(m, n) in &DIMS {
        let st = BipartiteState::product(&random_density(m, &mut rng), &random_density(n, &mut rng))?;
        worst = worst.max(s.oracle(&st)?.f_min.abs());
    }
    s.within("product states have zero f_min", 1e-9, worst, DIMS.len());

    let mut asym = 0.0f64;
    let mut bad = 0;
    for d in [2, 3, 4] {
        let a = random_density(d, &mut rng);
        let b = random_density(d, &mut rng);
        asym = asym.max((fidelity(&a, &b)? - fidelity(&b, &a)?).abs());
        if (fidelity(&a, &a)? - 1.0).abs() > 1e-12 || sine_metric(&a, &a)? > 1e-6 {
            bad += 1;
        }
    }
    s.within("fidelity symmetry", 0.0, asym, 3);
    s.holds("F = 1 iff sine metric = 0", bad, 3);
    Ok(())
}

fn optimizer_checks(s: &mut Suite) -> Result<()> {
    let mut rng = s.rng(5);
    let (mut worst, mut cases) = (0.0f64, 0);
    for &(m, n) in &DIMS[..2] {
        for k in 0..s.cfg.corpus {
            let mut st = random_mixed_bipartite(m, n, &mut rng);
            if k % 2 == 1 {
                st = balance_qubit_marginal(&st)?;
            }
            let exact = min_exact_2xn(&st)?.f_min;
            let got = s.oracle(&st)?.f_min;
            worst = worst.max((got - exact).abs());
            cases += 1;
        }
    }
    s.within("oracle matches the 2 x n closed form", 1e-8, worst, cases);

    let corpus: Vec<BipartiteState> = vec![
        isotropic(3, 0.6)?,
        werner(3, -0.3)?,
        balance_qubit_marginal(&random_mixed_bipartite(2, 3, &mut rng))?,
    ];
    let mut rises = 0;
    let mut nondet = 0;
    let mut drift = 0.0f64;
    for st in &corpus {
        let a = minimize(st, &s.cfg.oracle);
        rises += a.history.windows(2).filter(|w| w[1] > w[0]).count();
        if minimize(st, &s.cfg.oracle).value.to_bits() != a.value.to_bits() {
            nondet += 1;
        }
        let mut big = s.cfg.oracle;
        big.samples *= 4;
        drift = drift.max((minimize(st, &big).value - a.value).abs());
    }
    s.holds("refinement never increases the objective", rises, corpus.len());
    s.holds("seed determinism", nondet, corpus.len());
    s.within("4x samples moves the minimum", 1e-8, drift, corpus.len());
    Ok(())
}

const CHANNELS: [ChannelKind; 3] = [
    ChannelKind::AmplitudeDamping,
    ChannelKind::Depolarizing,
    ChannelKind::GeneralizedAmplitudeDamping,
];

/// Five `(α, γ)` pairs per `p`, four values of `p`: twenty points.
fn xstate_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for &p in &[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0] {
        for &(a, g) in &[(0.5, 0.0), (0.5, 0.35), (0.2, 0.6), (0.85, 0.9), (0.3, 1.0)] {
            out.push((a, g, p));
        }
    }
    out
}

fn channel_checks(s: &mut Suite) -> Result<()> {
    let grid = xstate_grid();
    let (mut w_complete, mut w_trace, mut w_pos, mut w_x) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut invalid = 0;
    let mut cases = 0;
    for kind in CHANNELS {
        for &(a, g, p) in &grid {
            let ch = KrausChannel::new(kind, g, Some(p))?;
            w_complete = w_complete.max(ch.completeness_defect());
            let evolved = apply_product_channel(&pure_alpha(a)?, &ch)?;
            w_trace = w_trace.max((evolved.matrix().trace()?.re - 1.0).abs());
            w_pos = w_pos.max(-hermitian_eigensystem(evolved.matrix())?.values[0]) + 0.0;
            if DensityMatrix::validate(evolved.matrix().clone()).is_err() {
                invalid += 1;
            }
            let closed = xstate_measures(&analytic_evolved_xstate(kind, a, g, Some(p))?);
            let r = s.exact(&evolved)?;
            let c = concurrence(&evolved)?;
            w_x = w_x
                .max((closed.concurrence - c).abs())
                .max((closed.hs_min - r.hs_min).abs())
                .max((closed.f_min - r.f_min).abs());
            cases += 1;
        }
    }
    s.within("Kraus completeness", 1e-12, w_complete, cases);
    s.within("channels preserve trace", 1e-12, w_trace, cases);
    s.within("channels preserve positivity", 1e-10, w_pos, cases);
    s.holds("evolved states validate", invalid, cases);
    s.within("X-state closed form vs general route", 1e-8, w_x, cases);

    let mut nonzero = 0;
    let mut cases = 0;
    for kind in CHANNELS {
        for alpha in [0.0, 1.0] {
            for r in sweep(kind, alpha, Some(0.5), 21)? {
                if r.concurrence > 1e-12 || r.hs_min > 1e-12 || r.f_min > 1e-12 {
                    nonzero += 1;
                }
                cases += 1;
            }
        }
    }
    s.holds("product initial states stay uncorrelated", nonzero, cases);

    let ad = sweep(ChannelKind::AmplitudeDamping, 0.5, None, 100)?;
    let end = ad.last().expect("non-empty sweep");
    s.within(
        "amplitude damping ends uncorrelated",
        1e-12,
        end.concurrence.max(end.hs_min).max(end.f_min),
        1,
    );
    let rise = ad
        .windows(2)
        .map(|w| w[1].f_min - w[0].f_min)
        .fold(0.0f64, f64::max);
    s.within("amplitude damping f_min nonincreasing", 1e-12, rise, ad.len());

    let dep = sweep(ChannelKind::Depolarizing, 0.5, None, 201)?;
    let survivors = dep
        .iter()
        .filter(|r| r.gamma < 1.0 && r.concurrence == 0.0 && r.f_min > 1e-3)
        .count();
    s.holds(
        "depolarizing: f_min survives sudden death",
        usize::from(survivors == 0),
        dep.len(),
    );

    let g0 = gad_sudden_death_threshold(0.5, 2.0 / 3.0)?.unwrap_or(f64::NAN);
    s.within("GAD threshold at p = 2/3", 1e-4, (g0 - 0.6).abs(), 1);
    let g1 = gad_sudden_death_threshold(0.5, 1.0)?.unwrap_or(f64::NAN);
    s.within("GAD threshold at p = 1", 1e-9, (g1 - 1.0).abs(), 1);
    Ok(())
}

fn family_checks(s: &mut Suite) -> Result<()> {
    let (mut w_iso, mut w_wer, mut w_bound) = (0.0f64, 0.0f64, 0.0f64);
    for m in [2, 3] {
        for &x in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let st = isotropic(m, x)?;
            let want = fmin_isotropic(m, x)?;
            w_iso = w_iso.max((s.oracle(&st)?.f_min - want).abs());
            w_bound = w_bound.max((fmin_upper_bound(&st)? - want).abs());
        }
        for &x in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
            let st = werner(m, x)?;
            let want = fmin_werner(m, x)?;
            w_wer = w_wer.max((s.oracle(&st)?.f_min - want).abs());
            w_bound = w_bound.max((fmin_upper_bound(&st)? - want).abs());
        }
    }
    s.within("isotropic closed form vs oracle", 1e-6, w_iso, 10);
    s.within("Werner closed form vs oracle", 1e-6, w_wer, 10);
    s.within("families saturate the upper bound", 1e-9, w_bound, 20);

    let mut zero = 0.0f64;
    for m in [2, 3, 4, 8] {
        let mf = m as f64;
        zero = zero
            .max(fmin_isotropic(m, 1.0 / (mf * mf))?.abs())
            .max(fmin_werner(m, 1.0 / mf)?.abs());
    }
    s.within("closed forms vanish at x = 1/m^2, 1/m", 1e-15, zero, 8);

    let ms = [2, 4, 8, 16, 32];
    let iso: Vec<f64> = ms
        .iter()
        .map(|&m| fmin_isotropic(m, 0.7).map(|v| (v - 1.0).abs()))
        .collect::<Result<_>>()?;
    let wer: Vec<f64> = ms
        .iter()
        .map(|&m| fmin_werner(m, 0.8).map(|v| (v - 0.64 / 1.64).abs()))
        .collect::<Result<_>>()?;
    let bad =
        iso.windows(2).filter(|w| w[1] >= w[0]).count() + wer.windows(2).filter(|w| w[1] >= w[0]).count();
    s.holds("large-m trends approach their limits", bad, 8);
    Ok(())
}

fn sweep_checks(s: &mut Suite) -> Result<()> {
    let mut bad_range = 0;
    let mut nondet = 0;
    let mut w_start = 0.0f64;
    let mut cases = 0;
    for (kind, p) in [
        (ChannelKind::AmplitudeDamping, None),
        (ChannelKind::Depolarizing, None),
        (ChannelKind::GeneralizedAmplitudeDamping, Some(2.0 / 3.0)),
    ] {
        let rows = sweep(kind, 0.5, p, 41)?;
        let text = sweep_csv(&rows);
        if sweep_csv(&sweep(kind, 0.5, p, 41)?) != text {
            nondet += 1;
        }
        for r in parse_sweep_csv(&text)? {
            let g = r.gamma;
            let st = apply_product_channel(&pure_alpha(0.5)?, &KrausChannel::new(kind, g, p)?)?;
            let ok = (0.0..=1.0).contains(&r.f_min)
                && (0.0..=1.0).contains(&r.concurrence)
                && r.hs_min >= 0.0
                && r.hs_min <= st.purity() + 1e-12;
            bad_range += usize::from(!ok);
            cases += 1;
        }
        let initial = s.exact(&pure_alpha(0.5)?)?;
        let c0 = initial.concurrence.unwrap_or(f64::NAN);
        w_start = w_start
            .max((rows[0].f_min - initial.f_min).abs())
            .max((rows[0].hs_min - initial.hs_min).abs())
            .max((rows[0].concurrence - c0).abs());
    }
    s.holds("sweep CSV is deterministic", nondet, 3);
    s.holds("sweep values in range", bad_range, cases);
    s.within("sweep at gamma = 0 matches the initial state", 1e-10, w_start, 3);
    Ok(())
}
