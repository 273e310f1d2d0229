//! Deterministic SVG charts. Output depends only on the inputs: fixed canvas,
//! fixed number formatting, no ids or timestamps.

use std::fmt::{self, Write as _};
use std::path::Path;

use crate::assoc::CorrelationMatrix;
use crate::error::{EdaError, Result};
use crate::stats::{FrequencyTable, Histogram, SummaryStats};
use crate::table::Column;

pub const WIDTH: u32 = 800;
pub const HEIGHT: u32 = 600;
pub const MARGIN: f64 = 60.0;

const TICKS: usize = 5;
const BAR_FILL: &str = "#4c72b0";
const UNDEFINED_FILL: &str = "#bfbfbf";
const NEG: (f64, f64, f64) = (33.0, 102.0, 172.0);
const POS: (f64, f64, f64) = (178.0, 24.0, 43.0);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDoc {
    pub width: u32,
    pub height: u32,
    pub body: String,
}

impl SvgDoc {
    pub fn as_str(&self) -> &str {
        &self.body
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.body.as_bytes())?;
        Ok(())
    }
}

impl fmt::Display for SvgDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.body)
    }
}

pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && c != '\t' && c != '\n' && c != '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// Coordinates: two decimals, no negative zero.
fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Four significant digits, trailing zeros trimmed.
pub fn tick_label(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-3..6).contains(&mag) {
        let s = format!("{v:.3e}");
        let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
        let m = trim_zeros(m);
        return format!("{m}e{e}");
    }
    let decimals = (3 - mag).max(0) as usize;
    let s = trim_zeros(&format!("{v:.decimals$}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn annotation(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Linear blue → white → red over [-1, 1]; 0 maps to pure white.
pub fn diverging_color(v: f64) -> String {
    let v = v.clamp(-1.0, 1.0);
    let (anchor, t) = if v < 0.0 { (NEG, -v) } else { (POS, v) };
    let mix = |a: f64| (255.0 + (a - 255.0) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(anchor.0), mix(anchor.1), mix(anchor.2))
}

struct Scale {
    lo: f64,
    hi: f64,
    out_lo: f64,
    out_hi: f64,
}

impl Scale {
    fn new(lo: f64, hi: f64, out_lo: f64, out_hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Scale {
            lo,
            hi,
            out_lo,
            out_hi,
        }
    }

    fn map(&self, v: f64) -> f64 {
        self.out_lo + (v - self.lo) / (self.hi - self.lo) * (self.out_hi - self.out_lo)
    }

    fn ticks(&self) -> impl Iterator<Item = f64> + '_ {
        (0..TICKS).map(move |i| self.lo + (self.hi - self.lo) * i as f64 / (TICKS - 1) as f64)
    }
}

struct Canvas {
    out: String,
}

impl Canvas {
    fn new(title: &str) -> Self {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
        );
        let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>");
        let mut c = Canvas { out };
        c.text(WIDTH as f64 / 2.0, MARGIN / 2.0, "middle", "title", title);
        c
    }

    fn left() -> f64 {
        MARGIN
    }
    fn right() -> f64 {
        WIDTH as f64 - MARGIN
    }
    fn top() -> f64 {
        MARGIN
    }
    fn bottom() -> f64 {
        HEIGHT as f64 - MARGIN
    }

    fn rect(&mut self, class: &str, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.out,
            "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"#333333\" stroke-width=\"0.5\"/>",
            px(x),
            px(y),
            px(w),
            px(h)
        );
    }

    fn line(&mut self, class: &str, x1: f64, y1: f64, x2: f64, y2: f64) {
        let _ = writeln!(
            self.out,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
            px(x1),
            px(y1),
            px(x2),
            px(y2)
        );
    }

    fn circle(&mut self, cx: f64, cy: f64) {
        let _ = writeln!(
            self.out,
            "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{BAR_FILL}\" fill-opacity=\"0.6\"/>",
            px(cx),
            px(cy)
        );
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, class: &str, s: &str) {
        let _ = writeln!(
            self.out,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\">{}</text>",
            px(x),
            px(y),
            escape_xml(s)
        );
    }

    fn x_axis(&mut self, scale: &Scale) {
        let y = Self::bottom();
        self.line("axis", Self::left(), y, Self::right(), y);
        let ticks: Vec<f64> = scale.ticks().collect();
        for t in ticks {
            let x = scale.map(t);
            self.line("tick", x, y, x, y + 5.0);
            self.text(x, y + 18.0, "middle", "tick-label", &tick_label(t));
        }
    }

    fn y_axis(&mut self, scale: &Scale) {
        let x = Self::left();
        self.line("axis", x, Self::top(), x, Self::bottom());
        let ticks: Vec<f64> = scale.ticks().collect();
        for t in ticks {
            let y = scale.map(t);
            self.line("tick", x - 5.0, y, x, y);
            self.text(x - 8.0, y + 4.0, "end", "tick-label", &tick_label(t));
        }
    }

    fn finish(mut self) -> SvgDoc {
        self.out.push_str("</svg>\n");
        SvgDoc {
            width: WIDTH,
            height: HEIGHT,
            body: self.out,
        }
    }
}

fn count_scale(max: f64) -> Scale {
    let top = if max > 0.0 { max } else { 1.0 };
    Scale::new(0.0, top, Canvas::bottom(), Canvas::top())
}

fn plot_height() -> f64 {
    Canvas::bottom() - Canvas::top()
}

/// One bar per bin; widths follow the bin edges, heights are linear in count.
pub fn plot_histogram(h: &Histogram, title: &str) -> SvgDoc {
    let mut c = Canvas::new(title);
    let lo = h.edges.first().copied().unwrap_or(0.0);
    let hi = h.edges.last().copied().unwrap_or(1.0);
    let xs = Scale::new(lo, hi, Canvas::left(), Canvas::right());
    let max = h.counts.iter().copied().max().unwrap_or(0) as f64;
    let ys = count_scale(max);
    for (i, &count) in h.counts.iter().enumerate() {
        let (x0, x1) = (xs.map(h.edges[i]), xs.map(h.edges[i + 1]));
        let height = count as f64 / (ys.hi) * plot_height();
        c.rect("bar", x0, Canvas::bottom() - height, x1 - x0, height, BAR_FILL);
    }
    c.x_axis(&xs);
    c.y_axis(&ys);
    c.finish()
}

/// Vertical box plot. Whiskers stop at the fences, or at min/max when those
/// lie inside; each value in `points_beyond` becomes a marker.
pub fn plot_box(stats: &SummaryStats, whisker_k: f64, points_beyond: &[f64], title: &str) -> SvgDoc {
    let mut c = Canvas::new(title);
    let lo_fence = stats.q1 - whisker_k * stats.iqr;
    let hi_fence = stats.q3 + whisker_k * stats.iqr;
    let w_lo = stats.min.max(lo_fence);
    let w_hi = stats.max.min(hi_fence);
    let (mut lo, mut hi) = (stats.min, stats.max);
    for &p in points_beyond.iter().filter(|p| p.is_finite()) {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    let pad = (hi - lo) * 0.05;
    let ys = Scale::new(lo - pad, hi + pad, Canvas::bottom(), Canvas::top());
    let cx = WIDTH as f64 / 2.0;
    let half = 80.0;
    let (y_q1, y_q3) = (ys.map(stats.q1), ys.map(stats.q3));
    c.rect("box", cx - half, y_q3, 2.0 * half, y_q1 - y_q3, "#c6dbef");
    c.line("median", cx - half, ys.map(stats.median), cx + half, ys.map(stats.median));
    c.line("whisker", cx, y_q3, cx, ys.map(w_hi));
    c.line("whisker", cx, y_q1, cx, ys.map(w_lo));
    c.line("cap", cx - half / 2.0, ys.map(w_hi), cx + half / 2.0, ys.map(w_hi));
    c.line("cap", cx - half / 2.0, ys.map(w_lo), cx + half / 2.0, ys.map(w_lo));
    for &p in points_beyond.iter().filter(|p| p.is_finite()) {
        c.circle(cx, ys.map(p));
    }
    c.y_axis(&ys);
    c.finish()
}

fn category_bars(c: &mut Canvas, labels: &[&str], counts: &[f64]) {
    let n = labels.len();
    let slot = (Canvas::right() - Canvas::left()) / n as f64;
    let max = counts.iter().copied().fold(0.0, f64::max);
    let ys = count_scale(max);
    for (i, (&label, &count)) in labels.iter().zip(counts).enumerate() {
        let x = Canvas::left() + slot * i as f64;
        let height = count / ys.hi * plot_height();
        c.rect("bar", x + slot * 0.1, Canvas::bottom() - height, slot * 0.8, height, BAR_FILL);
        c.text(x + slot / 2.0, Canvas::bottom() + 18.0, "middle", "category", label);
    }
    c.line("axis", Canvas::left(), Canvas::bottom(), Canvas::right(), Canvas::bottom());
    c.y_axis(&ys);
}

/// Bars in table order, heights linear in count.
pub fn plot_bar(f: &FrequencyTable, title: &str) -> Result<SvgDoc> {
    if f.is_empty() {
        return Err(EdaError::invalid("cannot plot an empty frequency table"));
    }
    let mut c = Canvas::new(title);
    let labels = f.labels();
    let counts: Vec<f64> = f.rows.iter().map(|r| r.count as f64).collect();
    category_bars(&mut c, &labels, &counts);
    Ok(c.finish())
}

/// `values[g][s]` is the height of series `s` within group `g`.
pub fn plot_grouped_bar(
    groups: &[String],
    series: &[String],
    values: &[Vec<f64>],
    title: &str,
) -> Result<SvgDoc> {
    if groups.is_empty() || series.is_empty() {
        return Err(EdaError::invalid("grouped bar chart needs groups and series"));
    }
    if values.len() != groups.len() {
        return Err(EdaError::LengthMismatch {
            expected: groups.len(),
            got: values.len(),
        });
    }
    if let Some(bad) = values.iter().find(|v| v.len() != series.len()) {
        return Err(EdaError::LengthMismatch {
            expected: series.len(),
            got: bad.len(),
        });
    }
    if values.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(EdaError::invalid("bar heights must be finite and non-negative"));
    }
    const PALETTE: [&str; 6] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"];
    let mut c = Canvas::new(title);
    let slot = (Canvas::right() - Canvas::left()) / groups.len() as f64;
    let bar_w = slot * 0.8 / series.len() as f64;
    let max = values.iter().flatten().copied().fold(0.0, f64::max);
    let ys = count_scale(max);
    for (g, row) in values.iter().enumerate() {
        let x0 = Canvas::left() + slot * g as f64 + slot * 0.1;
        for (s, &v) in row.iter().enumerate() {
            let height = v / ys.hi * plot_height();
            let fill = PALETTE[s % PALETTE.len()];
            c.rect("bar", x0 + bar_w * s as f64, Canvas::bottom() - height, bar_w, height, fill);
        }
        c.text(
            Canvas::left() + slot * (g as f64 + 0.5),
            Canvas::bottom() + 18.0,
            "middle",
            "category",
            &groups[g],
        );
    }
    for (s, name) in series.iter().enumerate() {
        let y = Canvas::top() + 14.0 * s as f64;
        c.rect("legend", Canvas::right() - 110.0, y - 9.0, 10.0, 10.0, PALETTE[s % PALETTE.len()]);
        c.text(Canvas::right() - 95.0, y, "start", "legend-label", name);
    }
    c.line("axis", Canvas::left(), Canvas::bottom(), Canvas::right(), Canvas::bottom());
    c.y_axis(&ys);
    Ok(c.finish())
}

/// One marker per jointly present pair; both axes padded by 5% of the range.
pub fn plot_scatter(x: &Column, y: &Column, title: &str) -> Result<SvgDoc> {
    if x.len() != y.len() {
        return Err(EdaError::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let xs = x.f64_cells()?;
    let ys = y.f64_cells()?;
    let pairs: Vec<(f64, f64)> = xs
        .into_iter()
        .zip(ys)
        .filter_map(|(a, b)| Some((a?, b?)))
        .collect();
    if pairs.is_empty() {
        return Err(EdaError::InsufficientData { needed: 1, got: 0 });
    }
    let bounds = |v: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    };
    let (xlo, xhi) = bounds(&mut pairs.iter().map(|p| p.0));
    let (ylo, yhi) = bounds(&mut pairs.iter().map(|p| p.1));
    let sx = Scale::new(xlo, xhi, Canvas::left(), Canvas::right());
    let sy = Scale::new(ylo, yhi, Canvas::bottom(), Canvas::top());
    let mut c = Canvas::new(title);
    for &(a, b) in &pairs {
        c.circle(sx.map(a), sy.map(b));
    }
    c.x_axis(&sx);
    c.y_axis(&sy);
    c.text(WIDTH as f64 / 2.0, HEIGHT as f64 - 15.0, "middle", "axis-label", x.name());
    c.text(15.0, HEIGHT as f64 / 2.0, "middle", "axis-label", y.name());
    Ok(c.finish())
}

/// Correlation heatmap on a fixed [-1, 1] scale; undefined cells are gray.
pub fn plot_heatmap(m: &CorrelationMatrix, title: &str) -> SvgDoc {
    let mut c = Canvas::new(title);
    let n = m.len().max(1);
    let label_room = 90.0;
    let side = (Canvas::right() - Canvas::left() - label_room)
        .min(Canvas::bottom() - Canvas::top() - label_room)
        / n as f64;
    let x0 = Canvas::left() + label_room;
    let y0 = Canvas::top();
    for (i, row) in m.values.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (x, y) = (x0 + side * j as f64, y0 + side * i as f64);
            match cell {
                Some(v) => {
                    c.rect("cell", x, y, side, side, &diverging_color(*v));
                    c.text(x + side / 2.0, y + side / 2.0 + 4.0, "middle", "value", &annotation(*v));
                }
                None => {
                    c.rect("cell", x, y, side, side, UNDEFINED_FILL);
                    c.text(x + side / 2.0, y + side / 2.0 + 4.0, "middle", "value", "n/a");
                }
            }
        }
    }
    for (i, label) in m.labels.iter().enumerate() {
        c.text(x0 - 6.0, y0 + side * (i as f64 + 0.5) + 4.0, "end", "row-label", label);
        c.text(x0 + side * (i as f64 + 0.5), y0 + side * n as f64 + 16.0, "middle", "col-label", label);
    }
    c.finish()
}
