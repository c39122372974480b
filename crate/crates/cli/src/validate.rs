//! The oracle-equivalence battery behind `qss validate`.

use std::fmt;
use std::str::FromStr;

use qss_core::closed_form::{e1_damp, e1_damp_general, e1_flip_nparty, e_majority};
use qss_core::noise::{amplitude_damping, lift_iid, HopAssignment, NoiseSpec};
use qss_core::protocol::{run_exact, Evaluation, ProtocolConfig, QecConfig, QecMode, QecScheme};
use qss_core::qec::{five_encode, five_recover_decode, five_recovery_channel, four_encode, four_recover_decode, four_recovery_channel};
use qss_core::qstate::{apply_unitary, fidelity, gates, DensityMatrix, Operator, StateVector, Tensor};

use crate::error::{CliError, CliResult};
use crate::tables::{table_rows, TableParams};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Allowed distance of the fitted damping slope from 2.
pub const SLOPE_TOLERANCE: f64 = 0.1;
const DEFAULT_TABLE_GAMMAS: [f64; 3] = [0.1, 0.3, 0.7];
const TABLE_TRIPLE: (f64, f64, f64) = (0.1, 0.2, 0.3);
const GRID_POINTS: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckName {
    Tables,
    Flip,
    Symmetry,
    Repetition,
    Five,
    Four,
    Slope,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Tables,
        CheckName::Flip,
        CheckName::Symmetry,
        CheckName::Repetition,
        CheckName::Five,
        CheckName::Four,
        CheckName::Slope,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CheckName::Tables => "tables",
            CheckName::Flip => "flip",
            CheckName::Symmetry => "symmetry",
            CheckName::Repetition => "repetition",
            CheckName::Five => "five",
            CheckName::Four => "four",
            CheckName::Slope => "slope",
        }
    }
}

impl FromStr for CheckName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CheckName::ALL.into_iter().find(|c| c.label() == s).ok_or_else(|| {
            let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.label()).collect();
            format!("unknown check `{s}` ({})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: CheckName,
    pub max_deviation: f64,
    pub limit: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.limit
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<10} max deviation {:.3e} (limit {:.1e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name.label(),
            self.max_deviation,
            self.limit
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidateOptions {
    pub tolerance: f64,
    pub only: Vec<CheckName>,
    /// Replaces the default damping strengths of the table and four-qubit checks.
    pub gamma: Option<f64>,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            only: Vec::new(),
            gamma: None,
        }
    }
}

fn grid() -> impl Iterator<Item = f64> {
    (0..GRID_POINTS).map(|i| i as f64 / (GRID_POINTS - 1) as f64)
}

fn exact(cfg: &ProtocolConfig) -> CliResult<(f64, Vec<f64>)> {
    let r = run_exact(cfg)?;
    let per = r.per_tuple.unwrap_or_default().iter().map(|t| t.error).collect();
    Ok((r.error_exact.unwrap_or(f64::NAN), per))
}

fn damping_abc(a: f64, b: f64, c: f64) -> CliResult<ProtocolConfig> {
    let hops = [b, c, a]
        .into_iter()
        .map(NoiseSpec::damping)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProtocolConfig::new(3, HopAssignment::new(hops), QecConfig::NONE, Evaluation::Exact)?)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates as a failure
    values
        .into_iter()
        .fold(0.0, |m: f64, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

fn check_tables(gamma: Option<f64>) -> CliResult<f64> {
    let gammas = gamma.map_or(DEFAULT_TABLE_GAMMAS.to_vec(), |g| vec![g]);
    let mut devs = Vec::new();
    for g in gammas {
        let rows = table_rows(TableParams::Uniform(g))?;
        devs.extend(rows.iter().map(|r| r.abs_diff()));
        let avg = rows.iter().map(|r| r.exact_sim).sum::<f64>() / rows.len() as f64;
        devs.push((avg - e1_damp(g)?).abs());
    }
    let (a, b, c) = TABLE_TRIPLE;
    let rows = table_rows(TableParams::PerHop { a, b, c })?;
    devs.extend(rows.iter().map(|r| r.abs_diff()));
    let avg = rows.iter().map(|r| r.exact_sim).sum::<f64>() / rows.len() as f64;
    devs.push((avg - e1_damp_general(a, b, c)?).abs());
    Ok(max_of(devs))
}

fn check_flip() -> CliResult<f64> {
    let mut devs = Vec::new();
    for n in 3..=6 {
        for p in grid() {
            let cfg = ProtocolConfig::uniform(n, NoiseSpec::flip(p)?, QecConfig::NONE)?;
            let want = e1_flip_nparty(p, n)?;
            let (avg, per) = exact(&cfg)?;
            devs.push((avg - want).abs());
            devs.extend(per.iter().map(|e| (e - want).abs()));
        }
    }
    Ok(max_of(devs))
}

fn check_symmetry(gamma: Option<f64>) -> CliResult<f64> {
    let mut triples = vec![(0.1, 0.2, 0.3), (0.7, 0.05, 0.4), (0.9, 0.5, 0.0)];
    if let Some(g) = gamma {
        triples.push((g, 0.5, 0.2));
    }
    let mut devs = Vec::new();
    for (a, b, c) in triples {
        let (fwd, _) = exact(&damping_abc(a, b, c)?)?;
        let (rev, _) = exact(&damping_abc(c, b, a)?)?;
        devs.push((fwd - rev).abs());
    }
    Ok(max_of(devs))
}

fn check_repetition() -> CliResult<f64> {
    let rep = QecConfig::new(QecScheme::Repetition, QecMode::SingleCycle);
    let mut devs = Vec::new();
    for p in grid() {
        let cfg = ProtocolConfig::uniform(3, NoiseSpec::flip(p)?, rep)?;
        let (avg, _) = exact(&cfg)?;
        devs.push((avg - e_majority(e1_flip_nparty(p, 3)?)?).abs());
    }
    Ok(max_of(devs))
}

fn test_states() -> CliResult<Vec<StateVector>> {
    Ok(vec![
        StateVector::zero(),
        StateVector::one(),
        StateVector::plus(),
        StateVector::from_bloch(1.1, 2.3),
    ])
}

/// `op` on qubit `q` of an `n`-qubit register.
fn lifted(op: &Operator, q: usize, n: usize) -> Operator {
    Operator::identity(q).tensor(op).tensor(&Operator::identity(n - q - 1))
}

fn check_five() -> CliResult<f64> {
    let mut devs = vec![five_recovery_channel().completeness_deviation()];
    for psi in test_states()? {
        let rho = DensityMatrix::from_pure(&five_encode(&psi)?);
        devs.push((1.0 - fidelity(&five_recover_decode(&rho)?, &psi)?).abs());
        for q in 0..5 {
            for pauli in [gates::pauli_x(), gates::pauli_y(), gates::pauli_z()] {
                let hit = apply_unitary(&rho, &pauli, &[q])?;
                devs.push((1.0 - fidelity(&five_recover_decode(&hit)?, &psi)?).abs());
            }
        }
    }
    Ok(max_of(devs))
}

fn check_four(gamma: Option<f64>) -> CliResult<f64> {
    let gammas = gamma.map_or(vec![0.0, 0.05, 0.3], |g| vec![g]);
    let e1 = Operator::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0])?;
    let mut devs = Vec::new();
    for psi in test_states()? {
        let rho = DensityMatrix::from_pure(&four_encode(&psi)?);
        devs.push((1.0 - fidelity(&four_recover_decode(&rho, 0.0)?, &psi)?).abs());
    }
    // single damping events are corrected for any design strength
    for &g in &gammas {
        devs.push(four_recovery_channel(g)?.completeness_deviation());
        for psi in test_states()? {
            let rho = DensityMatrix::from_pure(&four_encode(&psi)?);
            for q in 0..4 {
                let k = lifted(&e1, q, 4);
                let m = k.matrix() * rho.matrix() * k.matrix().adjoint();
                let hit = DensityMatrix::new(m.unscale(m.trace().re))?;
                devs.push((1.0 - fidelity(&four_recover_decode(&hit, g)?, &psi)?).abs());
            }
        }
    }
    Ok(max_of(devs))
}

/// Log-log slope of the four-qubit infidelity of `|+⟩` between γ = 1e-3 and 1e-2.
pub fn four_qubit_slope() -> CliResult<f64> {
    let psi = StateVector::plus();
    let infidelity = |g: f64| -> CliResult<f64> {
        let rho = DensityMatrix::from_pure(&four_encode(&psi)?);
        let noisy = lift_iid(&amplitude_damping(g)?, 4)?.apply(&rho)?;
        Ok(1.0 - fidelity(&four_recover_decode(&noisy, g)?, &psi)?)
    };
    let (lo, hi) = (1e-3, 1e-2);
    Ok((infidelity(hi)? / infidelity(lo)?).ln() / (hi / lo).ln())
}

pub fn run_check(name: CheckName, opts: &ValidateOptions) -> CliResult<CheckOutcome> {
    let (max_deviation, limit) = match name {
        CheckName::Tables => (check_tables(opts.gamma)?, opts.tolerance),
        CheckName::Flip => (check_flip()?, opts.tolerance),
        CheckName::Symmetry => (check_symmetry(opts.gamma)?, opts.tolerance),
        CheckName::Repetition => (check_repetition()?, opts.tolerance),
        CheckName::Five => (check_five()?, opts.tolerance),
        CheckName::Four => (check_four(opts.gamma)?, opts.tolerance),
        CheckName::Slope => ((four_qubit_slope()? - 2.0).abs(), SLOPE_TOLERANCE),
    };
    Ok(CheckOutcome {
        name,
        max_deviation,
        limit,
    })
}

/// Runs the selected checks (all of them when `only` is empty).
pub fn run_validation(opts: &ValidateOptions) -> CliResult<Vec<CheckOutcome>> {
    if !(opts.tolerance.is_finite() && opts.tolerance >= 0.0) {
        return Err(CliError::Input(format!("tolerance must be a non-negative number, got {}", opts.tolerance)));
    }
    let selected: Vec<CheckName> = if opts.only.is_empty() {
        CheckName::ALL.to_vec()
    } else {
        opts.only.clone()
    };
    selected.into_iter().map(|c| run_check(c, opts)).collect()
}
