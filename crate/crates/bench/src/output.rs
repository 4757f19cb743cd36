use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{BenchError, Result};
use crate::runner::{BenchRecord, OpKind};

pub const CSV_HEADER: [&str; 9] =
    ["structure", "M", "arity", "n_bucket", "op", "ops_count", "total_ns", "mean_comparisons", "mean_entry_moves"];

fn sorted(records: &[BenchRecord]) -> Vec<&BenchRecord> {
    let mut v: Vec<&BenchRecord> = records.iter().collect();
    v.sort_by(|a, b| (&a.structure, a.layers, a.op, a.n_bucket).cmp(&(&b.structure, b.layers, b.op, b.n_bucket)));
    v
}

/// CSV text: `# key=value` metadata lines, the header, then rows sorted by
/// (structure, op, n_bucket).
pub fn csv_string(records: &[BenchRecord], meta: &[(String, String)]) -> Result<String> {
    let mut out = Vec::new();
    for (k, v) in meta {
        writeln!(out, "# {k}={v}").expect("writing to a Vec");
    }
    {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
        w.write_record(CSV_HEADER)?;
        for r in sorted(records) {
            w.serialize(r)?;
        }
        w.flush().map_err(|e| BenchError::io("csv buffer", e))?;
    }
    Ok(String::from_utf8(out).expect("csv output is utf-8"))
}

pub fn write_csv(records: &[BenchRecord], meta: &[(String, String)], path: &Path) -> Result<()> {
    let text = csv_string(records, meta)?;
    std::fs::write(path, text).map_err(|e| BenchError::io(format!("writing {}", path.display()), e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    MeanComparisons,
    NsPerOp,
}

impl Metric {
    fn value(self, r: &BenchRecord) -> f64 {
        match self {
            Metric::MeanComparisons => r.mean_comparisons,
            Metric::NsPerOp => r.total_ns as f64 / r.ops_count as f64,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Metric::MeanComparisons => "mean comparisons per op",
            Metric::NsPerOp => "ns per op",
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Self-contained SVG line chart: log2 of `n_bucket` on x, `metric` on y,
/// one polyline per (structure, op).
pub fn svg_string(records: &[BenchRecord], metric: Metric) -> Result<String> {
    if records.is_empty() {
        return Err(BenchError::Config("no records to plot".into()));
    }
    let mut series: BTreeMap<(String, OpKind), Vec<(f64, f64)>> = BTreeMap::new();
    for r in sorted(records) {
        let name = if r.structure == "layered" { format!("layered M={}", r.layers) } else { r.structure.clone() };
        series.entry((name, r.op)).or_default().push(((r.n_bucket as f64).log2(), metric.value(r)));
    }
    let xs = series.values().flatten().map(|p| p.0);
    let (x_lo, x_hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let y_hi = series.values().flatten().map(|p| p.1).fold(0.0, f64::max);
    let x_span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
    let y_top = if y_hi > 0.0 { y_hi * 1.05 } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_lo) / x_span * plot_w;
    let py = |y: f64| TOP + plot_h - y / y_top * plot_h;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w,
        TOP + plot_h
    )
    .unwrap();
    writeln!(s, r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}" stroke="black"/>"#, TOP + plot_h).unwrap();

    for b in (x_lo.ceil() as i64)..=(x_hi.floor() as i64) {
        let x = px(b as f64);
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">2^{b}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0
        )
        .unwrap();
    }
    for i in 0..=5 {
        let v = y_top * f64::from(i) / 5.0;
        let y = py(v);
        writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.1}</text>"##,
            LEFT,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">heap size n (log scale)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        metric.label()
    )
    .unwrap();

    for (i, ((name, op), points)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = if *op == OpKind::Pop { r#" stroke-dasharray="6 3""# } else { "" };
        let pts: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#, pts.join(" "))
            .unwrap();
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{name} {op}</text>"#,
            lx + 25.0,
            lx + 30.0,
            ly + 4.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(records: &[BenchRecord], metric: Metric, path: &Path) -> Result<()> {
    let text = svg_string(records, metric)?;
    let file = File::create(path).map_err(|e| BenchError::io(format!("creating {}", path.display()), e))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes()).map_err(|e| BenchError::io(format!("writing {}", path.display()), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(structure: &str, op: OpKind, b: u32) -> BenchRecord {
        BenchRecord {
            structure: structure.into(),
            layers: 1,
            arity: 2,
            n_bucket: 1 << b,
            op,
            ops_count: 10,
            total_ns: 1234,
            mean_comparisons: f64::from(b) + 0.5,
            mean_entry_moves: 1.0,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        let text = csv_string(&[], &[]).unwrap();
        assert_eq!(text, "structure,M,arity,n_bucket,op,ops_count,total_ns,mean_comparisons,mean_entry_moves\n");
    }

    #[test]
    fn rows_sorted() {
        let recs =
            vec![rec("binary", OpKind::Pop, 3), rec("binary", OpKind::Insert, 4), rec("binary", OpKind::Insert, 3)];
        let text = csv_string(&recs, &[("timing_block".into(), "64".into())]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# timing_block=64");
        assert_eq!(lines[2], "binary,1,2,8,insert,10,1234,3.5,1.0");
        assert_eq!(lines[3], "binary,1,2,16,insert,10,1234,4.5,1.0");
        assert_eq!(lines[4], "binary,1,2,8,pop,10,1234,3.5,1.0");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn regenerated_outputs_are_identical() {
        let recs: Vec<BenchRecord> =
            (2..10).flat_map(|b| [rec("binary", OpKind::Insert, b), rec("fibonacci", OpKind::Pop, b)]).collect();
        assert_eq!(csv_string(&recs, &[]).unwrap(), csv_string(&recs, &[]).unwrap());
        let a = svg_string(&recs, Metric::MeanComparisons).unwrap();
        assert_eq!(a, svg_string(&recs, Metric::MeanComparisons).unwrap());
        assert!(a.starts_with("<svg"));
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(!a.contains("href"));
    }

    #[test]
    fn svg_needs_records() {
        assert!(svg_string(&[], Metric::NsPerOp).is_err());
    }

    #[test]
    fn unwritable_path() {
        let err = write_csv(&[], &[], Path::new("/nonexistent/dir/out.csv")).unwrap_err();
        assert!(matches!(err, BenchError::Io { .. }));
    }
}
