// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV tables, minimal SVG plots and atomic file output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::config::Format;
use crate::CliError;

/// Third CSV column: a numeric parameter value or a label.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Num(f64),
    Label(String),
}

impl Series {
    fn render(&self) -> String {
        match self {
            Series::Num(v) => num(*v),
            Series::Label(s) => s.clone(),
        }
    }

    fn legend(&self) -> String {
        match self {
            Series::Num(v) => format!("{v}"),
            Series::Label(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub y: f64,
    pub series: Option<Series>,
}

/// How a table is drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Plot {
    /// One polyline per series.
    Line { x_label: String, y_label: String },
    /// `x` horizontal, series value vertical, `y` as the contoured field.
    Contour { x_label: String, y_label: String, levels: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub model: String,
    pub params: Vec<(String, String)>,
    pub series_name: Option<String>,
    pub rows: Vec<Row>,
}

/// One output file stem with its data and plot style.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub stem: String,
    pub title: String,
    pub table: Table,
    pub plot: Plot,
}

/// 17 significant digits; non-finite values as `nan`, `inf`, `-inf`.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut s = format!("# model={} params={}\n", self.model, params.join(";"));
        let has_series = self.rows.iter().any(|r| r.series.is_some());
        s.push_str(if has_series { "x,y,series\n" } else { "x,y\n" });
        for r in &self.rows {
            let _ = write!(s, "{},{}", num(r.x), num(r.y));
            if has_series {
                let _ = write!(s, ",{}", r.series.as_ref().map(Series::render).unwrap_or_default());
            }
            s.push('\n');
        }
        s
    }

    /// Rows grouped by series, in first-appearance order.
    fn groups(&self) -> Vec<(Option<&Series>, Vec<(f64, f64)>)> {
        let mut out: Vec<(Option<&Series>, Vec<(f64, f64)>)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(s, _)| *s == r.series.as_ref()) {
                Some((_, pts)) => pts.push((r.x, r.y)),
                None => out.push((r.series.as_ref(), vec![(r.x, r.y)])),
            }
        }
        out
    }
}

/// Writes `bytes` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Config(format!("{} has no file name", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

/// Writes every artifact in every requested format under `dir`.
pub fn write_artifacts(
    dir: &Path,
    artifacts: &[Artifact],
    formats: &[Format],
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for a in artifacts {
        for f in formats {
            let (ext, body) = match f {
                Format::Csv => ("csv", a.table.to_csv()),
                Format::Svg => ("svg", render_svg(a)),
            };
            let path = dir.join(format!("{}.{ext}", a.stem));
            write_atomic(&path, body.as_bytes())?;
            written.push(path);
        }
    }
    Ok(written)
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }
}

fn axes(s: &mut String, title: &str, fr: &Frame, x_label: &str, y_label: &str) {
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#, (x0 + x1) / 2.0, escape(title));
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#, x1 - x0, y1 - y0);
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let xv = fr.x.0 + f * (fr.x.1 - fr.x.0);
        let yv = fr.y.0 + f * (fr.y.1 - fr.y.0);
        let (px, py) = (fr.px(xv), fr.py(yv));
        let _ = writeln!(s, r#"<line x1="{px:.1}" y1="{y1}" x2="{px:.1}" y2="{}" stroke="black"/>"#, y1 + 4.0);
        let _ = writeln!(s, r#"<text x="{px:.1}" y="{}" text-anchor="middle">{}</text>"#, y1 + 16.0, tick(xv));
        let _ = writeln!(s, r#"<line x1="{}" y1="{py:.1}" x2="{x0}" y2="{py:.1}" stroke="black"/>"#, x0 - 4.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#, x0 - 6.0, py + 4.0, tick(yv));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (x0 + x1) / 2.0, H - 12.0, escape(x_label));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{}", (v * 1000.0).round() / 1000.0)
    }
}

pub fn render_svg(a: &Artifact) -> String {
    match &a.plot {
        Plot::Line { x_label, y_label } => line_svg(a, x_label, y_label),
        Plot::Contour { x_label, y_label, levels } => contour_svg(a, x_label, y_label, levels),
    }
}

fn line_svg(a: &Artifact, x_label: &str, y_label: &str) -> String {
    let rows = &a.table.rows;
    let fr = Frame {
        x: bounds(rows.iter().map(|r| r.x)),
        y: bounds(rows.iter().map(|r| r.y)),
    };
    let mut s = String::new();
    axes(&mut s, &a.title, &fr, x_label, y_label);
    for (i, (series, pts)) in a.table.groups().into_iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        // Non-finite values break the line.
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if seg.len() > 1 {
                let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, seg.join(" "));
            } else if let Some(p) = seg.first() {
                let (x, y) = p.split_once(',').unwrap();
                let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="2" fill="{color}"/>"#);
            }
            seg.clear();
        };
        for (x, y) in pts {
            if x.is_finite() && y.is_finite() {
                segment.push(format!("{:.2},{:.2}", fr.px(x), fr.py(y)));
            } else {
                flush(&mut segment, &mut s);
            }
        }
        flush(&mut segment, &mut s);
        if let Some(series) = series {
            let ly = TOP + 14.0 * i as f64 + 8.0;
            let lx = W - RIGHT + 10.0;
            let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 18.0);
            let name = a.table.series_name.as_deref().unwrap_or("");
            let eq = if name.is_empty() { String::new() } else { format!("{name}=") };
            let _ = writeln!(s, r#"<text x="{}" y="{}">{}{}</text>"#, lx + 22.0, ly + 4.0, escape(&eq), escape(&series.legend()));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Grid of `(x, y) -> value` from contour rows; `y` is the series value.
fn grid(rows: &[Row]) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for r in rows {
        let y = match r.series {
            Some(Series::Num(v)) => v,
            _ => continue,
        };
        if !xs.contains(&r.x) {
            xs.push(r.x);
        }
        if !ys.contains(&y) {
            ys.push(y);
        }
    }
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let mut z = vec![vec![f64::NAN; xs.len()]; ys.len()];
    for r in rows {
        if let Some(Series::Num(y)) = r.series {
            let i = ys.iter().position(|&v| v == y).unwrap();
            let j = xs.iter().position(|&v| v == r.x).unwrap();
            z[i][j] = r.y;
        }
    }
    (xs, ys, z)
}

fn shade(t: f64) -> String {
    // light yellow to dark blue
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(255.0, 8.0), lerp(247.0, 48.0), lerp(188.0, 107.0))
}

fn contour_svg(a: &Artifact, x_label: &str, y_label: &str, levels: &[f64]) -> String {
    let (xs, ys, z) = grid(&a.table.rows);
    let fr = Frame { x: bounds(xs.iter().copied()), y: bounds(ys.iter().copied()) };
    let (zlo, zhi) = bounds(z.iter().flatten().copied());
    let mut s = String::new();
    axes(&mut s, &a.title, &fr, x_label, y_label);
    let half = |v: &[f64], k: usize| -> (f64, f64) {
        let lo = if k == 0 { v[0] } else { 0.5 * (v[k - 1] + v[k]) };
        let hi = if k + 1 == v.len() { v[k] } else { 0.5 * (v[k] + v[k + 1]) };
        (lo, hi)
    };
    for (i, row) in z.iter().enumerate() {
        let (y0, y1) = half(&ys, i);
        for (j, &v) in row.iter().enumerate() {
            let (x0, x1) = half(&xs, j);
            let fill = if v.is_finite() { shade((v - zlo) / (zhi - zlo)) } else { "#dddddd".into() };
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                fr.px(x0),
                fr.py(y1),
                fr.px(x1) - fr.px(x0),
                fr.py(y0) - fr.py(y1)
            );
        }
    }
    // Marching squares, one segment per crossed cell edge pair.
    for &level in levels {
        let mut d = String::new();
        for i in 0..ys.len().saturating_sub(1) {
            for j in 0..xs.len().saturating_sub(1) {
                let corners = [
                    (xs[j], ys[i], z[i][j]),
                    (xs[j + 1], ys[i], z[i][j + 1]),
                    (xs[j + 1], ys[i + 1], z[i + 1][j + 1]),
                    (xs[j], ys[i + 1], z[i + 1][j]),
                ];
                if corners.iter().any(|c| !c.2.is_finite()) {
                    continue;
                }
                let mut cross = Vec::new();
                for e in 0..4 {
                    let (a, b) = (corners[e], corners[(e + 1) % 4]);
                    if (a.2 - level) * (b.2 - level) < 0.0 {
                        let f = (level - a.2) / (b.2 - a.2);
                        cross.push((a.0 + f * (b.0 - a.0), a.1 + f * (b.1 - a.1)));
                    }
                }
                for pair in cross.chunks_exact(2) {
                    let _ = write!(
                        d,
                        "M{:.2},{:.2}L{:.2},{:.2}",
                        fr.px(pair[0].0),
                        fr.py(pair[0].1),
                        fr.px(pair[1].0),
                        fr.py(pair[1].1)
                    );
                }
            }
        }
        if !d.is_empty() {
            let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="black" stroke-width="0.8"/>"#);
        }
    }
    let lx = W - RIGHT + 10.0;
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let ly = TOP + 16.0 * k as f64;
        let _ = writeln!(s, r#"<rect x="{lx}" y="{ly}" width="14" height="14" fill="{}"/>"#, shade(f));
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 20.0, ly + 11.0, tick(zlo + f * (zhi - zlo)));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: Vec<Row>) -> Table {
        Table {
            model: "m".into(),
            params: vec![("a".into(), "1".into()), ("b".into(), "x,y".into())],
            series_name: Some("s".into()),
            rows,
        }
    }

    #[test]
    fn csv_schema() {
        let t = table(vec![
            Row { x: 0.1, y: 1.0 / 3.0, series: Some(Series::Num(2.0)) },
            Row { x: 1.0, y: f64::INFINITY, series: Some(Series::Num(2.0)) },
        ]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# model=m params=a=1;b=x,y");
        assert_eq!(lines[1], "x,y,series");
        assert_eq!(lines[2], "1.0000000000000001e-1,3.3333333333333331e-1,2.0000000000000000e0");
        assert_eq!(lines[3], "1.0000000000000000e0,inf,2.0000000000000000e0");
        let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 1.0 / 3.0);
    }

    #[test]
    fn svg_renders_lines_and_contours() {
        let rows: Vec<Row> = (0..3)
            .flat_map(|i| {
                (0..3).map(move |j| Row { x: j as f64, y: (i + j) as f64, series: Some(Series::Num(i as f64)) })
            })
            .collect();
        let mut a = Artifact {
            stem: "t".into(),
            title: "a <b>".into(),
            table: table(rows),
            plot: Plot::Line { x_label: "x".into(), y_label: "y".into() },
        };
        let line = render_svg(&a);
        assert!(line.starts_with("<svg") && line.trim_end().ends_with("</svg>"));
        assert_eq!(line.matches("<polyline").count(), 3);
        assert!(line.contains("a &lt;b&gt;"));
        a.plot = Plot::Contour { x_label: "x".into(), y_label: "s".into(), levels: vec![1.5, 2.5] };
        let contour = render_svg(&a);
        assert_eq!(contour.matches("<path").count(), 2);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = std::env::temp_dir().join(format!("esdlab-out-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("f.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
