//! CSV and JSON rendering.
//!
//! Numbers are written in shortest round-trip form; non-finite values become
//! the strings `inf`, `-inf` and `nan` in both formats.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use parityprobe::crosscheck::Deviations;
use parityprobe::{
    CurveRow, DetectorReport, MetrologyReport, OptimizationResult, ProbeSettings, Table1Row,
};
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliError;

/// Columns of every per-configuration CSV row, in order.
pub const CURVE_COLUMNS: [&str; 12] = [
    "phi",
    "s_db",
    "big_b",
    "k",
    "probability",
    "mean_n",
    "std_n",
    "visibility",
    "qfi",
    "qcr",
    "errprop",
    "hl",
];

const DETECTOR_COLUMNS: [&str; 7] = [
    "eta",
    "probability_eta",
    "lambda1",
    "lambda2",
    "q_ratio",
    "qfi_eta",
    "qcr_eta",
];

const TABLE_COLUMNS: [&str; 7] = [
    "k",
    "phi_target",
    "s_db",
    "big_b",
    "qcr_min",
    "errprop_min",
    "mean_n_max",
];

pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt_num(x))
    }
}

fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

pub fn settings_json(s: &ProbeSettings) -> Value {
    object([
        ("s_db", num(s.s_db)),
        ("s2_db", num(s.s2_db)),
        ("big_b", num(s.big_b)),
        ("k", json!(s.k)),
        ("phi", num(s.phi)),
    ])
}

pub fn report_json(r: &MetrologyReport) -> Value {
    object([
        ("probability", num(r.probability)),
        ("mean_n", num(r.mean_n)),
        ("mean_n2", num(r.mean_n2)),
        ("std_n", num(r.std_n)),
        ("dmean_dphi", num(r.dmean_dphi)),
        ("visibility", num(r.visibility)),
        ("qfi", num(r.qfi)),
        ("qcr", num(r.qcr)),
        ("errprop", num(r.errprop)),
        ("hl", num(r.hl)),
        ("g02", num(r.g02)),
    ])
}

fn detector_values(d: &DetectorReport) -> [f64; 7] {
    [
        d.eta,
        d.probability_eta,
        d.lambda1,
        d.lambda2,
        d.q_ratio,
        d.qfi_eta,
        d.qcr_eta,
    ]
}

pub fn detector_json(d: &DetectorReport) -> Value {
    object(
        DETECTOR_COLUMNS
            .into_iter()
            .zip(detector_values(d).map(num)),
    )
}

pub fn optimization_json(o: &OptimizationResult) -> Value {
    object([
        ("best_s_db", num(o.best_s_db)),
        ("best_big_b", num(o.best_big_b)),
        ("objective", num(o.objective)),
        ("evaluations", json!(o.evaluations)),
        ("converged", json!(o.converged)),
    ])
}

pub fn deviations_json(d: &Deviations, pass: bool) -> Value {
    object([
        ("points", json!(d.points)),
        ("probability", num(d.probability)),
        ("mean_n", num(d.mean_n)),
        ("mean_n2", num(d.mean_n2)),
        ("g02", num(d.g02)),
        ("qfi", num(d.qfi)),
        ("pass", json!(pass)),
    ])
}

fn curve_cells(phi: f64, s_db: f64, big_b: f64, k: usize, r: &MetrologyReport) -> Vec<String> {
    let mut cells = vec![fmt_num(phi), fmt_num(s_db), fmt_num(big_b), k.to_string()];
    cells.extend(
        [
            r.probability,
            r.mean_n,
            r.std_n,
            r.visibility,
            r.qfi,
            r.qcr,
            r.errprop,
            r.hl,
        ]
        .map(fmt_num),
    );
    cells
}

pub fn curve_row_json(row: &CurveRow, s2_db: f64) -> Value {
    let mut v = report_json(&row.report);
    let m = v.as_object_mut().expect("report is an object");
    m.insert("phi".into(), num(row.phi));
    m.insert("s_db".into(), num(row.s_db));
    m.insert("s2_db".into(), num(s2_db));
    m.insert("big_b".into(), num(row.big_b));
    m.insert("k".into(), json!(row.k));
    m.insert("optimized".into(), json!(row.optimized));
    v
}

pub fn table_row_json(row: &Table1Row) -> Value {
    object([
        ("k", json!(row.k)),
        ("phi_target", num(row.phi_target)),
        ("s_db", num(row.s_db)),
        ("big_b", num(row.big_b)),
        ("qcr_min", num(row.qcr_min)),
        ("errprop_min", num(row.errprop_min)),
        ("mean_n_max", num(row.mean_n_max)),
    ])
}

/// Destination of a command's output.
pub struct Sink {
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self, CliError> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Sink { inner })
    }

    pub fn json(mut self, value: &Value) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut self.inner, value).map_err(io::Error::from)?;
        writeln!(self.inner)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn csv(
        self,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(self.inner);
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn write_report(
    sink: Sink,
    format: Format,
    settings: &ProbeSettings,
    report: &MetrologyReport,
    detector: Option<&DetectorReport>,
    optimization: Option<&OptimizationResult>,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("config".into(), settings_json(settings));
            if let Some(o) = optimization {
                doc.insert("optimization".into(), optimization_json(o));
            }
            doc.insert("report".into(), report_json(report));
            if let Some(d) = detector {
                doc.insert("detector".into(), detector_json(d));
            }
            sink.json(&Value::Object(doc))
        }
        Format::Csv => {
            let mut header = CURVE_COLUMNS.to_vec();
            let mut row = curve_cells(
                settings.phi,
                settings.s_db,
                settings.big_b,
                settings.k,
                report,
            );
            if let Some(d) = detector {
                header.extend(DETECTOR_COLUMNS);
                row.extend(detector_values(d).map(fmt_num));
            }
            sink.csv(&header, [row])
        }
    }
}

pub fn write_curve(
    sink: Sink,
    format: Format,
    rows: &[CurveRow],
    s2_db: f64,
) -> Result<(), CliError> {
    match format {
        Format::Json => sink.json(&Value::Array(
            rows.iter().map(|r| curve_row_json(r, s2_db)).collect(),
        )),
        Format::Csv => sink.csv(
            &CURVE_COLUMNS,
            rows.iter()
                .map(|r| curve_cells(r.phi, r.s_db, r.big_b, r.k, &r.report)),
        ),
    }
}

pub fn write_table(sink: Sink, format: Format, rows: &[Table1Row]) -> Result<(), CliError> {
    match format {
        Format::Json => sink.json(&Value::Array(rows.iter().map(table_row_json).collect())),
        Format::Csv => sink.csv(
            &TABLE_COLUMNS,
            rows.iter().map(|r| {
                let mut cells = vec![r.k.to_string()];
                cells.extend(
                    [
                        r.phi_target,
                        r.s_db,
                        r.big_b,
                        r.qcr_min,
                        r.errprop_min,
                        r.mean_n_max,
                    ]
                    .map(fmt_num),
                );
                cells
            }),
        ),
    }
}

pub fn write_deviations(
    sink: Sink,
    format: Format,
    d: &Deviations,
    pass: bool,
) -> Result<(), CliError> {
    match format {
        Format::Json => sink.json(&deviations_json(d, pass)),
        Format::Csv => sink.csv(
            &["quantity", "max_rel_dev"],
            [
                ("probability", d.probability),
                ("mean_n", d.mean_n),
                ("mean_n2", d.mean_n2),
                ("g02", d.g02),
                ("qfi", d.qfi),
            ]
            .map(|(n, v)| vec![n.to_string(), fmt_num(v)]),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-17, std::f64::consts::TAU, 2.5e300] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn non_finite_are_strings() {
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(fmt_num(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_num(f64::NAN), "nan");
    }
}
