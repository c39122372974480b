//! Datasets behind each figure: one CSV per plotted curve plus a manifest.

use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qss_core::noise::{HopAssignment, NoiseSpec};
use qss_core::protocol::{Evaluation, ProtocolConfig, QecConfig, QecMode, QecScheme};

use crate::error::{CliError, CliResult};
use crate::format::fixed12;
use crate::sweep::{check_rows, run_sweep, write_rows, Evaluations, Row, SweepParam, SweepSpec};

pub const DEFAULT_STEPS: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl FromStr for FigureId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (fig1 … fig6)"))
    }
}

/// A group of curves sharing one sweep: analytic, exact and (optionally)
/// Monte Carlo values of a single configuration family.
pub struct CurveFamily {
    pub name: String,
    pub spec: SweepSpec,
    /// Extra description for the manifest, such as fixed parameters.
    pub fixed: String,
}

fn family(name: impl Into<String>, vary: SweepParam, steps: usize, base: ProtocolConfig, fixed: &str) -> CliResult<CurveFamily> {
    Ok(CurveFamily {
        name: name.into(),
        spec: SweepSpec::new(vary, 0.0, 1.0, Some(steps), base)?,
        fixed: fixed.to_string(),
    })
}

fn uniform(parties: usize, noise: NoiseSpec, scheme: QecScheme, mode: QecMode) -> CliResult<ProtocolConfig> {
    Ok(ProtocolConfig::uniform(parties, noise, QecConfig::new(scheme, mode))?)
}

fn qec_families(
    vary: SweepParam,
    noise: NoiseSpec,
    steps: usize,
    schemes: &[(QecScheme, QecMode)],
) -> CliResult<Vec<CurveFamily>> {
    schemes
        .iter()
        .map(|&(scheme, mode)| {
            let name = match scheme {
                QecScheme::None | QecScheme::Repetition => format!("n3_{}", scheme.label()),
                _ => format!("n3_{}_{}", scheme.label(), mode.label()),
            };
            family(name, vary, steps, uniform(3, noise, scheme, mode)?, "")
        })
        .collect()
}

/// The curve families of a figure.
pub fn families(id: FigureId, steps: usize) -> CliResult<Vec<CurveFamily>> {
    let flip = NoiseSpec::flip(0.0)?;
    let damp = NoiseSpec::damping(0.0)?;
    let none = (QecScheme::None, QecMode::SingleCycle);
    let rep = (QecScheme::Repetition, QecMode::SingleCycle);
    let five = (QecScheme::FiveQubit, QecMode::PerHop);
    let four = (QecScheme::FourQubit, QecMode::PerHop);
    match id {
        FigureId::Fig1 => {
            let mut out = Vec::new();
            for (vary, name) in [
                (SweepParam::GammaA, "gamma_A"),
                (SweepParam::GammaB, "gamma_B"),
                (SweepParam::GammaC, "gamma_C"),
            ] {
                for other in [0.0, 0.5] {
                    let hops = HopAssignment::uniform(NoiseSpec::damping(other)?, 3);
                    let base = ProtocolConfig::new(3, hops, QecConfig::NONE, Evaluation::Exact)?;
                    let tag = if other == 0.0 { "others_0" } else { "others_0.5" };
                    out.push(family(
                        format!("{name}_{tag}"),
                        vary,
                        steps,
                        base,
                        &format!("other damping strengths {}", fixed12(other)),
                    )?);
                }
            }
            Ok(out)
        }
        FigureId::Fig2 => (3..=6)
            .map(|n| family(format!("n{n}_none"), SweepParam::P, steps, uniform(n, flip, none.0, none.1)?, ""))
            .collect(),
        FigureId::Fig3 => qec_families(SweepParam::P, flip, steps, &[none, rep]),
        FigureId::Fig4 => qec_families(SweepParam::Gamma, damp, steps, &[none, rep]),
        FigureId::Fig5 => qec_families(SweepParam::P, flip, steps, &[none, rep, five]),
        FigureId::Fig6 => qec_families(SweepParam::Gamma, damp, steps, &[none, rep, five, four]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Analytic,
    Exact,
    MonteCarlo,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Analytic => "analytic",
            Kind::Exact => "exact",
            Kind::MonteCarlo => "monte_carlo",
        }
    }

    /// The row restricted to this evaluation's columns.
    fn project(self, row: &Row) -> Row {
        let mut r = row.clone();
        if self != Kind::Analytic {
            r.error_analytic = None;
        }
        if self != Kind::Exact {
            r.error_exact = None;
        }
        if self != Kind::MonteCarlo {
            r.error_mc = None;
            r.mc_stderr = None;
            r.trials = None;
            r.seed = None;
        }
        r
    }

    fn present(self, row: &Row) -> bool {
        match self {
            Kind::Analytic => row.error_analytic.is_some(),
            Kind::Exact => row.error_exact.is_some(),
            Kind::MonteCarlo => row.error_mc.is_some(),
        }
    }
}

/// Computes every curve of a figure and returns the rows per family.
pub fn compute(id: FigureId, steps: usize, monte_carlo: Option<(u64, u64)>) -> CliResult<Vec<(CurveFamily, Vec<Row>)>> {
    families(id, steps)?
        .into_iter()
        .map(|f| {
            let rows = run_sweep(&f.spec, Evaluations { exact: true, monte_carlo })?;
            Ok((f, rows))
        })
        .collect()
}

/// Writes one CSV per curve and `<fig>_manifest.csv`; returns the paths.
pub fn write_figure(id: FigureId, dir: &Path, steps: usize, monte_carlo: Option<(u64, u64)>) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let computed = compute(id, steps, monte_carlo)?;
    let manifest_path = dir.join(format!("{}_manifest.csv", id.label()));
    let mut manifest = csv::Writer::from_path(&manifest_path)?;
    manifest.write_record([
        "file",
        "figure",
        "curve",
        "evaluation",
        "sweep_param",
        "n_parties",
        "noise_model",
        "qec_scheme",
        "qec_mode",
        "fixed",
    ])?;
    let mut written = vec![manifest_path.clone()];
    for (fam, rows) in &computed {
        check_rows(rows)?;
        for kind in [Kind::Analytic, Kind::Exact, Kind::MonteCarlo] {
            if !rows.iter().any(|r| kind.present(r)) {
                continue;
            }
            let file = format!("{}_{}_{}.csv", id.label(), fam.name, kind.label());
            let projected: Vec<Row> = rows.iter().map(|r| kind.project(r)).collect();
            write_rows(File::create(dir.join(&file))?, &projected)?;
            let first = &rows[0];
            manifest.write_record([
                file.as_str(),
                id.label(),
                fam.name.as_str(),
                kind.label(),
                first.sweep_param.as_str(),
                &first.n_parties.to_string(),
                first.noise_model.as_str(),
                first.qec_scheme.as_str(),
                first.qec_mode.as_str(),
                fam.fixed.as_str(),
            ])?;
            written.push(dir.join(file));
        }
    }
    manifest.flush().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids_round_trip() {
        for id in FigureId::ALL {
            assert_eq!(id.label().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig7".parse::<FigureId>().is_err());
    }

    #[test]
    fn family_counts() {
        let counts: Vec<usize> = FigureId::ALL
            .iter()
            .map(|&id| families(id, 5).unwrap().len())
            .collect();
        assert_eq!(counts, [6, 4, 2, 2, 3, 4]);
    }
}
