//! Per-tuple comparison of the exact simulation with the closed forms.

use std::io::Write;

use qss_core::closed_form::{table1_entry, table2_entry};
use qss_core::noise::{HopAssignment, NoiseSpec};
use qss_core::protocol::{run_exact, ChoiceTuple, Evaluation, ProtocolConfig, QecConfig};

use crate::error::CliResult;
use crate::format::fixed12;

pub const TABLE_TOLERANCE: f64 = 1e-9;

/// Equal damping on every hop, or per-hop strengths `(γ_A, γ_B, γ_C)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TableParams {
    Uniform(f64),
    PerHop { a: f64, b: f64, c: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub tuple: ChoiceTuple,
    pub closed_form: f64,
    pub exact_sim: f64,
}

impl TableRow {
    pub fn abs_diff(&self) -> f64 {
        (self.closed_form - self.exact_sim).abs()
    }
}

pub fn table_rows(params: TableParams) -> CliResult<Vec<TableRow>> {
    let (a, b, c) = match params {
        TableParams::Uniform(g) => (g, g, g),
        TableParams::PerHop { a, b, c } => (a, b, c),
    };
    let hops = [b, c, a]
        .into_iter()
        .map(NoiseSpec::damping)
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = ProtocolConfig::new(3, HopAssignment::new(hops), QecConfig::NONE, Evaluation::Exact)?;
    let report = run_exact(&cfg)?;
    ChoiceTuple::enumerate(3)
        .zip(report.per_tuple.unwrap_or_default())
        .map(|(t, sim)| {
            let op = t.intermediate_ops[0];
            let closed_form = match params {
                TableParams::Uniform(g) => table1_entry(t.prep, op, t.secret, g)?,
                TableParams::PerHop { a, b, c } => table2_entry(t.prep, op, t.secret, a, b, c)?,
            };
            Ok(TableRow {
                tuple: t,
                closed_form,
                exact_sim: sim.error,
            })
        })
        .collect()
}

pub fn write_table<W: Write>(out: W, rows: &[TableRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["prep", "op", "secret", "closed_form", "exact_sim", "abs_diff"])?;
    for r in rows {
        w.write_record([
            r.tuple.prep.label().to_string(),
            r.tuple.intermediate_ops[0].label().to_string(),
            r.tuple.secret.value().to_string(),
            fixed12(r.closed_form),
            fixed12(r.exact_sim),
            fixed12(r.abs_diff()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
