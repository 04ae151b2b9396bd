//! Hand-rolled SVG summaries of estimate reports.

use std::fmt::Write;
use std::path::Path;

use clap::ValueEnum;
use ksnake_core::estimators::{log_log_fit, EstimateReport, ReportTable};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    /// Volume ratios against `r`, with the 7/6 second-moment reference.
    Scaling,
    /// Mean return counts on a (d, r) grid.
    Phase,
    /// Boundary hit probability against `r` on log-log axes.
    Decay,
}

const W: f64 = 640.0;
const H: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub fn run(kind: PlotKind, report: &Path, out: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(report).map_err(|e| CliError::Usage(format!("{}: {e}", report.display())))?;
    let table = ReportTable::parse(&text)?;
    let svg = match kind {
        PlotKind::Scaling => scaling(&table)?,
        PlotKind::Phase => phase(&table)?,
        PlotKind::Decay => decay(&table)?,
    };
    std::fs::write(out, svg)?;
    Ok(())
}

/// Axis mapping, optionally logarithmic.
#[derive(Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    a: f64,
    b: f64,
    log: bool,
}

impl Scale {
    fn new(lo: f64, hi: f64, a: f64, b: f64, log: bool) -> Self {
        let (lo, hi) = if log { (lo.log10(), hi.log10()) } else { (lo, hi) };
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Scale { lo, hi, a, b, log }
    }

    fn map(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        self.a + (v - self.lo) / (self.hi - self.lo) * (self.b - self.a)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let mults: &[f64] = if self.hi - self.lo < 2.0 {
                &[1.0, 2.0, 5.0]
            } else {
                &[1.0]
            };
            return (self.lo.floor() as i32..=self.hi.ceil() as i32)
                .flat_map(|e| mults.iter().map(move |m| m * 10f64.powi(e)))
                .filter(|&v| v.log10() >= self.lo - 1e-9 && v.log10() <= self.hi + 1e-9)
                .collect();
        }
        let span = self.hi - self.lo;
        let raw = span / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|&s| s >= raw)
            .unwrap_or(10.0 * mag);
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + 1e-9 * span {
            out.push(t);
            t += step;
        }
        out
    }
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.0e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn sig3(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let scale = 10f64.powi(2 - v.abs().log10().floor() as i32);
    label((v * scale).round() / scale)
}

struct Svg(String);

impl Svg {
    fn new(title: &str) -> Self {
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
            W / 2.0,
            esc(title)
        );
        Svg(s)
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, extra: &str) {
        let _ = writeln!(
            self.0,
            "<path d=\"M{x1:.1},{y1:.1} L{x2:.1},{y2:.1}\" stroke=\"{stroke}\" fill=\"none\" {extra}/>"
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            let _ = write!(d, "{}{x:.1},{y:.1} ", if i == 0 { 'M' } else { 'L' });
        }
        let _ = writeln!(
            self.0,
            "<path d=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.5\" fill=\"none\"/>",
            d.trim_end()
        );
    }

    fn dot(&mut self, x: f64, y: f64, fill: &str) {
        let _ = writeln!(self.0, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"{fill}\"/>");
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, body: &str) {
        let _ = writeln!(
            self.0,
            "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"{anchor}\">{}</text>",
            esc(body)
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.0,
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{w:.1}\" height=\"{h:.1}\" fill=\"{fill}\" stroke=\"white\"/>"
        );
    }

    fn axes(&mut self, xs: &Scale, ys: &Scale, xlabel: &str, ylabel: &str) {
        let (x0, y0) = (LEFT, H - BOTTOM);
        self.line(x0, y0, W - RIGHT, y0, "black", "");
        self.line(x0, TOP, x0, y0, "black", "");
        for t in xs.ticks() {
            let x = xs.map(t);
            self.line(x, y0, x, y0 + 5.0, "black", "");
            self.text(x, y0 + 18.0, "middle", &label(t));
        }
        for t in ys.ticks() {
            let y = ys.map(t);
            self.line(x0 - 5.0, y, x0, y, "black", "");
            self.text(x0 - 8.0, y + 4.0, "end", &label(t));
        }
        self.text((x0 + W - RIGHT) / 2.0, H - 18.0, "middle", xlabel);
        let _ = writeln!(
            self.0,
            "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>",
            (TOP + y0) / 2.0,
            (TOP + y0) / 2.0,
            esc(ylabel)
        );
    }

    fn finish(mut self) -> String {
        self.0.push_str("</svg>\n");
        self.0
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn series<'a>(table: &'a ReportTable, stat: &str) -> Vec<&'a EstimateReport> {
    let mut v: Vec<&EstimateReport> = table.find(stat).filter(|r| r.r.is_some()).collect();
    v.sort_by_key(|r| r.r);
    v
}

fn mismatch(kind: &str, needs: &str) -> CliError {
    CliError::Usage(format!("report has no {needs} rows; cannot draw a {kind} plot"))
}

fn scaling(table: &ReportTable) -> CliResult<String> {
    let reference: f64 = 7.0 / 6.0;
    let named = [
        ("second_moment_ratio", "E[#B^2] / r^4"),
        ("mean_ratio", "E[#B] / (r+1)^2"),
        ("boundary_ratio", "E[#dB] / (2r+1)"),
    ];
    let data: Vec<(&str, Vec<&EstimateReport>)> = named
        .iter()
        .map(|(s, l)| (*l, series(table, s)))
        .filter(|(_, v)| !v.is_empty())
        .collect();
    if data.is_empty() {
        return Err(mismatch("scaling", "second_moment_ratio or mean_ratio"));
    }
    let all = data.iter().flat_map(|(_, v)| v.iter());
    let (mut xlo, mut xhi, mut ylo, mut yhi) = (f64::MAX, f64::MIN, reference.min(1.0), reference.max(1.0));
    for r in all {
        let x = f64::from(r.r.unwrap());
        let (lo, hi) = r.ci().unwrap_or((r.estimate, r.estimate));
        xlo = xlo.min(x);
        xhi = xhi.max(x);
        ylo = ylo.min(lo);
        yhi = yhi.max(hi);
    }
    let pad = 0.08 * (yhi - ylo).max(0.05);
    let xs = Scale::new(xlo, xhi, LEFT + 10.0, W - RIGHT - 10.0, false);
    let ys = Scale::new(ylo - pad, yhi + pad, H - BOTTOM, TOP, false);
    let mut svg = Svg::new("Ball volume scaling");
    svg.axes(&xs, &ys, "r", "ratio");
    let y = ys.map(reference);
    svg.line(LEFT, y, W - RIGHT, y, "#555", "stroke-dasharray=\"6 4\"");
    svg.text(W - RIGHT + 6.0, y + 4.0, "start", "7/6 reference");
    let y = ys.map(1.0);
    svg.line(LEFT, y, W - RIGHT, y, "#bbb", "stroke-dasharray=\"2 3\"");
    for (i, (name, rows)) in data.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (xs.map(f64::from(r.r.unwrap())), ys.map(r.estimate)))
            .collect();
        svg.polyline(&pts, color);
        for (r, &(x, y)) in rows.iter().zip(&pts) {
            if let Some((lo, hi)) = r.ci() {
                svg.line(x, ys.map(lo), x, ys.map(hi), color, "");
            }
            svg.dot(x, y, color);
        }
        let ly = TOP + 20.0 + 18.0 * (i as f64 + 1.0);
        svg.line(
            W - RIGHT + 6.0,
            ly - 4.0,
            W - RIGHT + 20.0,
            ly - 4.0,
            color,
            "stroke-width=\"2\"",
        );
        svg.text(W - RIGHT + 24.0, ly, "start", name);
    }
    Ok(svg.finish())
}

fn heat(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = (
        40.0 + 215.0 * t,
        90.0 + 60.0 * (1.0 - (2.0 * t - 1.0).abs()),
        200.0 * (1.0 - t) + 30.0,
    );
    format!("rgb({},{},{})", r as u8, g as u8, b as u8)
}

fn phase(table: &ReportTable) -> CliResult<String> {
    let rows: Vec<&EstimateReport> = table
        .find("mean_return_count")
        .filter(|r| r.d.is_some() && r.r.is_some())
        .collect();
    if rows.is_empty() {
        return Err(mismatch("phase", "mean_return_count"));
    }
    let mut dims: Vec<u32> = rows.iter().map(|r| r.d.unwrap()).collect();
    let mut radii: Vec<u32> = rows.iter().map(|r| r.r.unwrap()).collect();
    dims.sort_unstable();
    dims.dedup();
    radii.sort_unstable();
    radii.dedup();
    let z = |v: f64| (1.0 + v.max(0.0)).log10();
    let zmax = rows.iter().map(|r| z(r.estimate)).fold(0.0, f64::max).max(1e-9);
    let cw = (W - LEFT - RIGHT) / radii.len() as f64;
    let ch = (H - TOP - BOTTOM) / dims.len() as f64;
    let mut svg = Svg::new("Mean returns to the origin within B(rho, r)");
    for r in &rows {
        let i = radii.iter().position(|&x| Some(x) == r.r).unwrap() as f64;
        let j = dims.iter().position(|&x| Some(x) == r.d).unwrap() as f64;
        let (x, y) = (LEFT + i * cw, TOP + j * ch);
        svg.rect(x, y, cw, ch, &heat(z(r.estimate) / zmax));
        svg.text(
            x + cw / 2.0,
            y + ch / 2.0 + 4.0,
            "middle",
            &label((r.estimate * 100.0).round() / 100.0),
        );
    }
    for (i, r) in radii.iter().enumerate() {
        svg.text(
            LEFT + (i as f64 + 0.5) * cw,
            H - BOTTOM + 18.0,
            "middle",
            &r.to_string(),
        );
    }
    for (j, d) in dims.iter().enumerate() {
        svg.text(LEFT - 8.0, TOP + (j as f64 + 0.5) * ch + 4.0, "end", &format!("d={d}"));
    }
    svg.text((LEFT + W - RIGHT) / 2.0, H - 18.0, "middle", "r");
    for (k, t) in [0.0, 0.5, 1.0].iter().enumerate() {
        let y = TOP + 20.0 + 22.0 * k as f64;
        svg.rect(W - RIGHT + 10.0, y, 18.0, 18.0, &heat(*t));
        svg.text(W - RIGHT + 34.0, y + 13.0, "start", &sig3(10f64.powf(t * zmax) - 1.0));
    }
    Ok(svg.finish())
}

fn decay(table: &ReportTable) -> CliResult<String> {
    let rows: Vec<&EstimateReport> = series(table, "boundary_hit_prob")
        .into_iter()
        .filter(|r| r.estimate > 0.0 && r.r.unwrap() > 0)
        .collect();
    if rows.is_empty() {
        return Err(mismatch("decay", "positive boundary_hit_prob"));
    }
    let d = rows[0].d;
    let fit_pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.r.unwrap() % 2 == 0)
        .map(|r| (f64::from(r.r.unwrap()), r.estimate))
        .collect();
    let fit = log_log_fit(&fit_pts);
    let (mut ylo, mut yhi) = (f64::MAX, f64::MIN);
    for r in &rows {
        let (lo, hi) = r.ci().unwrap_or((r.estimate, r.estimate));
        ylo = ylo.min(if lo > 0.0 { lo } else { r.estimate });
        yhi = yhi.max(hi);
    }
    let xlo = f64::from(rows[0].r.unwrap());
    let xhi = f64::from(rows[rows.len() - 1].r.unwrap());
    let xs = Scale::new(xlo / 1.2, xhi * 1.2, LEFT, W - RIGHT, true);
    let ys = Scale::new(ylo / 1.5, yhi * 1.5, H - BOTTOM, TOP, true);
    let title = match d {
        Some(d) => format!("Boundary hits of the origin, d = {d}"),
        None => "Boundary hits of the origin".to_string(),
    };
    let mut svg = Svg::new(&title);
    svg.axes(&xs, &ys, "r", "P(origin hit by the boundary)");
    let color = COLORS[0];
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (xs.map(f64::from(r.r.unwrap())), ys.map(r.estimate)))
        .collect();
    svg.polyline(&pts, color);
    for (r, &(x, y)) in rows.iter().zip(&pts) {
        if let Some((lo, hi)) = r.ci() {
            svg.line(x, ys.map(lo.max(ylo / 1.5)), x, ys.map(hi), color, "");
        }
        svg.dot(x, y, color);
    }
    let mut note_y = TOP + 30.0;
    if let Some((slope, intercept)) = fit {
        let line: Vec<(f64, f64)> = [xlo, xhi]
            .iter()
            .map(|&x| (xs.map(x), ys.map(intercept.exp() * x.powf(slope))))
            .collect();
        svg.line(
            line[0].0,
            line[0].1,
            line[1].0,
            line[1].1,
            COLORS[1],
            "stroke-dasharray=\"6 4\"",
        );
        svg.text(W - RIGHT + 6.0, note_y, "start", &format!("fitted slope {slope:.3}"));
        note_y += 18.0;
    }
    if let Some(theory) = table.find("decay_slope").find_map(|r| r.param_value) {
        svg.text(
            W - RIGHT + 6.0,
            note_y,
            "start",
            &format!("theory 1 - d/2 = {}", label(theory)),
        );
    }
    Ok(svg.finish())
}
