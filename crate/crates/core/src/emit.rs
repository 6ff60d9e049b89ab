//! Deterministic CSV and JSON rendering.
//!
//! Floating-point fields are printed with six significant digits using the
//! same rules as C's `%.6g` (round-half-even on the exact binary value,
//! trailing zeros trimmed, exponent form outside `1e-4 ≤ |v| < 1e6`). JSON
//! keys keep struct declaration order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adapt::TraceSample;
use crate::curve::LossCurve;
use crate::sweep::SweepResult;
use crate::topology::{serialize_topology, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Packet-size prediction for one (loss, power) query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub loss_percent: f64,
    pub power_dbm: f64,
    pub analytic_bits: f64,
    /// Only available when the power is a member of the curve family.
    pub grid_bits: Option<u64>,
}

/// Anything the simulator can write out.
#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Sweep(&'a SweepResult),
    Trace(&'a [TraceSample]),
    Topology(&'a Topology),
    Curves(&'a [LossCurve]),
    Prediction(&'a Prediction),
}

pub fn format_sig6(v: f64) -> String {
    const PRECISION: i32 = 6;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, v);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to the value [`format_sig6`] prints.
pub fn round_sig6(v: f64) -> f64 {
    if v.is_finite() {
        format_sig6(v).parse().expect("formatted float parses")
    } else {
        v
    }
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let rounded = round_sig6(n.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(rounded) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn json_document<T: Serialize>(data: &T) -> String {
    let mut value = serde_json::to_value(data).expect("table serializes");
    round_floats(&mut value);
    let mut doc = serde_json::to_string_pretty(&value).expect("value serializes");
    doc.push('\n');
    doc
}

fn csv_document<I>(header: &str, rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut doc = String::from(header);
    doc.push('\n');
    for row in rows {
        doc.push_str(&row.join(","));
        doc.push('\n');
    }
    doc
}

pub fn emit_table(table: Table<'_>, format: OutputFormat) -> String {
    match (table, format) {
        (Table::Sweep(result), OutputFormat::Csv) => csv_document(
            "axis_value,packet_size_bits,mean_loss_percent,std_loss_percent",
            result.rows.iter().map(|r| {
                vec![
                    format_sig6(r.axis_value),
                    r.packet_size_bits.to_string(),
                    format_sig6(r.mean_loss_percent),
                    format_sig6(r.std_loss_percent),
                ]
            }),
        ),
        (Table::Sweep(result), OutputFormat::Json) => json_document(result),
        (Table::Trace(trace), OutputFormat::Csv) => csv_document(
            "tick,packet_bits,loss_percent,power_dbm,event",
            trace.iter().map(|s| {
                vec![
                    s.tick.to_string(),
                    s.packet_bits.to_string(),
                    format_sig6(s.loss_percent),
                    format_sig6(s.power_dbm),
                    s.event.to_string(),
                ]
            }),
        ),
        (Table::Trace(trace), OutputFormat::Json) => json_document(&trace),
        (Table::Topology(topology), OutputFormat::Csv) => csv_document(
            "uav,x_m,y_m",
            topology
                .positions
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| vec![i.to_string(), format_sig6(x), format_sig6(y)]),
        ),
        // Full precision, so the document round-trips.
        (Table::Topology(topology), OutputFormat::Json) => serialize_topology(topology),
        (Table::Curves(curves), OutputFormat::Csv) => csv_document(
            "power_dbm,a,b",
            curves
                .iter()
                .map(|c| vec![format_sig6(c.power_dbm), format_sig6(c.a), format_sig6(c.b)]),
        ),
        (Table::Curves(curves), OutputFormat::Json) => json_document(&curves),
        (Table::Prediction(p), OutputFormat::Csv) => {
            let grid = p.grid_bits.map(|g| g.to_string()).unwrap_or_default();
            let mut doc = String::from("loss_percent,power_dbm,analytic_bits,grid_bits\n");
            let _ = writeln!(
                doc,
                "{},{},{},{}",
                format_sig6(p.loss_percent),
                format_sig6(p.power_dbm),
                format_sig6(p.analytic_bits),
                grid
            );
            doc
        }
        (Table::Prediction(p), OutputFormat::Json) => json_document(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapt::TraceEvent;
    use crate::sweep::{SweepRow, SweepSpec, SweptAxis};

    #[test]
    fn sig6_matches_printf_g() {
        // Expected strings from Python's "%.6g".
        let cases = [
            (0.0, "0"),
            (5.0, "5"),
            (70.0, "70"),
            (66.257_481_520_173_84, "66.2575"),
            (46.370_979_460_167_135, "46.371"),
            (2.4e9, "2.4e+09"),
            (2.8e10, "2.8e+10"),
            (123_456.0, "123456"),
            (1_234_567.0, "1.23457e+06"),
            (0.0001, "0.0001"),
            (0.000_012_345_6, "1.23456e-05"),
            (-6.0, "-6"),
            (80.000_005_212_785_34, "80"),
            (0.004_709_981_338_315_939, "0.00470998"),
            (2.5e-300, "2.5e-300"),
            (1.000_000_5, "1"),
            (0.125, "0.125"),
            (1_000_000.0, "1e+06"),
            (999_999.5, "1e+06"),
        ];
        for (v, want) in cases {
            assert_eq!(format_sig6(v), want, "value {v:e}");
        }
        assert_eq!(round_sig6(66.257_481_520_173_84), 66.2575);
    }

    fn one_row_sweep() -> SweepResult {
        let mut spec = SweepSpec::with_defaults(SweptAxis::PacketSizeByPower);
        spec.axis_values = vec![7.0];
        spec.packet_sizes = vec![100];
        SweepResult {
            spec,
            rows: vec![SweepRow {
                axis_value: 7.0,
                packet_size_bits: 100,
                mean_loss_percent: 70.473_589_377_389_02,
                std_loss_percent: 0.0,
            }],
        }
    }

    #[test]
    fn single_row_sweep_csv() {
        let result = one_row_sweep();
        let csv = emit_table(Table::Sweep(&result), OutputFormat::Csv);
        assert_eq!(
            csv,
            "axis_value,packet_size_bits,mean_loss_percent,std_loss_percent\n7,100,70.4736,0\n"
        );
        assert_eq!(csv, emit_table(Table::Sweep(&result), OutputFormat::Csv));
    }

    #[test]
    fn sweep_json_keeps_key_order_and_rounds() {
        let result = one_row_sweep();
        let json = emit_table(Table::Sweep(&result), OutputFormat::Json);
        let spec_at = json.find("\"spec\"").unwrap();
        let rows_at = json.find("\"rows\"").unwrap();
        assert!(spec_at < rows_at);
        assert!(json.contains("\"mean_loss_percent\": 70.4736"));
        assert!(json.contains("\"base_seed\": 42"));
    }

    #[test]
    fn trace_and_prediction_csv() {
        let trace = [TraceSample {
            tick: 2,
            packet_bits: 40,
            loss_percent: 51.084_380_287_974_77,
            power_dbm: 5.0,
            event: TraceEvent::Escalated,
        }];
        assert_eq!(
            emit_table(Table::Trace(&trace), OutputFormat::Csv),
            "tick,packet_bits,loss_percent,power_dbm,event\n2,40,51.0844,5,escalated\n"
        );
        let p = Prediction {
            loss_percent: 20.0,
            power_dbm: 6.0,
            analytic_bits: 8.0,
            grid_bits: None,
        };
        assert_eq!(
            emit_table(Table::Prediction(&p), OutputFormat::Csv),
            "loss_percent,power_dbm,analytic_bits,grid_bits\n20,6,8,\n"
        );
        assert!(emit_table(Table::Prediction(&p), OutputFormat::Json).contains("\"grid_bits\": null"));
    }
}
