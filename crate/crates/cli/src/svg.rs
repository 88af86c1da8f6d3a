//! Hand-rolled SVG plots: diffable, dependency-light, with the numeric data
//! embedded as comments.

use std::io::Write;
use std::path::Path;

use crate::engine::PointOutcome;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 70.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_points(points: &[(f64, f64)]) -> Self {
        let mut frame = Frame {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for &(x, y) in points {
            frame.x_min = frame.x_min.min(x);
            frame.x_max = frame.x_max.max(x);
            frame.y_min = frame.y_min.min(y);
            frame.y_max = frame.y_max.max(y);
        }
        // Degenerate ranges get a symmetric pad so points stay visible.
        if frame.x_max - frame.x_min < 1e-300 {
            frame.x_min -= 0.5;
            frame.x_max += 0.5;
        }
        if frame.y_max - frame.y_min < 1e-300 {
            frame.y_min -= 0.5;
            frame.y_max += 0.5;
        }
        frame
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open_svg(title: &str, x_label: &str, y_label: &str, frame: &Frame) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    s.push_str(&format!("<!-- {title} -->\n"));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // Axes.
    s.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    ));
    s.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n",
        x = WIDTH / 2.0,
        y = MARGIN / 2.0
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"12\">{x_label}</text>\n",
        x = WIDTH / 2.0,
        y = HEIGHT - MARGIN / 3.0
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 {x} {y})\">{y_label}</text>\n",
        x = MARGIN / 3.0,
        y = HEIGHT / 2.0
    ));
    // Range labels.
    s.push_str(&format!(
        "<text x=\"{m}\" y=\"{y}\" font-size=\"10\">{v:.4e}</text>\n",
        m = MARGIN,
        y = HEIGHT - MARGIN + 14.0,
        v = frame.x_min
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"end\" font-size=\"10\">{v:.4e}</text>\n",
        x = WIDTH - MARGIN,
        y = HEIGHT - MARGIN + 14.0,
        v = frame.x_max
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"end\" font-size=\"10\">{v:.4e}</text>\n",
        x = MARGIN - 4.0,
        y = HEIGHT - MARGIN,
        v = frame.y_min
    ));
    s.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" text-anchor=\"end\" font-size=\"10\">{v:.4e}</text>\n",
        x = MARGIN - 4.0,
        y = MARGIN + 4.0,
        v = frame.y_max
    ));
    s
}

fn write_if_some(path: &Path, content: Option<String>) -> std::io::Result<()> {
    if let Some(text) = content {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        file.write_all(text.as_bytes())?;
        file.flush()?;
    }
    Ok(())
}

/// Entanglement spectrum plot: Re ξ_i against eigenvalue index, one series
/// per sweep point.
fn spectrum_svg(outcomes: &[PointOutcome]) -> Option<String> {
    let series: Vec<(usize, &Vec<f64>)> = outcomes
        .iter()
        .enumerate()
        .filter_map(|(i, o)| o.xi_real.as_ref().map(|xi| (i, xi)))
        .collect();
    if series.is_empty() {
        return None;
    }
    let mut points = Vec::new();
    for (_, xi) in &series {
        for (k, &v) in xi.iter().enumerate() {
            if v.is_finite() {
                points.push((k as f64, v));
            }
        }
    }
    if points.is_empty() {
        return None;
    }
    let frame = Frame::from_points(&points);
    let mut svg = open_svg("entanglement spectrum", "eigenvalue index", "Re xi", &frame);
    for (series_idx, (point_idx, xi)) in series.iter().enumerate() {
        let color = PALETTE[series_idx % PALETTE.len()];
        svg.push_str(&format!("<!-- point {point_idx} Re xi:"));
        for v in xi.iter() {
            svg.push_str(&format!(" {v:.16e}"));
        }
        svg.push_str(" -->\n");
        for (k, &v) in xi.iter().enumerate() {
            if v.is_finite() {
                svg.push_str(&format!(
                    "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"{color}\"/>\n",
                    x = frame.sx(k as f64),
                    y = frame.sy(v)
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

/// Convergence plot: |β_fit − β_pred| against J_rung on log-log axes.
fn convergence_svg(outcomes: &[PointOutcome]) -> Option<String> {
    let mut data = Vec::new();
    for outcome in outcomes {
        let row = &outcome.row;
        if let (Some(re), Some(pred)) = (row.beta_fit_re, row.beta_pred) {
            let im = row.beta_fit_im.unwrap_or(0.0);
            let err = ((re - pred).powi(2) + im.powi(2)).sqrt();
            if row.j_rung > 0.0 && err > 0.0 {
                data.push((row.j_rung, err));
            }
        }
    }
    if data.len() < 2 {
        return None;
    }
    let log_points: Vec<(f64, f64)> = data.iter().map(|&(x, y)| (x.log10(), y.log10())).collect();
    let frame = Frame::from_points(&log_points);
    let mut svg = open_svg(
        "effective-temperature convergence",
        "log10 J_rung",
        "log10 |beta_fit - beta_pred|",
        &frame,
    );
    svg.push_str("<!-- (J_rung, |beta_fit - beta_pred|):");
    for (x, y) in &data {
        svg.push_str(&format!(" ({x:.16e}, {y:.16e})"));
    }
    svg.push_str(" -->\n");
    let mut path = String::from("<polyline fill=\"none\" stroke=\"#1f77b4\" points=\"");
    for (lx, ly) in &log_points {
        path.push_str(&format!("{x:.3},{y:.3} ", x = frame.sx(*lx), y = frame.sy(*ly)));
    }
    path.push_str("\"/>\n");
    svg.push_str(&path);
    for (lx, ly) in &log_points {
        svg.push_str(&format!(
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"#d62728\"/>\n",
            x = frame.sx(*lx),
            y = frame.sy(*ly)
        ));
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

/// Write `plot_spectrum.svg` and `plot_convergence.svg` for whatever data the
/// rows actually contain; plots without data are skipped.
pub fn write_plots(outcomes: &[PointOutcome], dir: &Path) -> std::io::Result<()> {
    write_if_some(&dir.join("plot_spectrum.svg"), spectrum_svg(outcomes))?;
    write_if_some(&dir.join("plot_convergence.svg"), convergence_svg(outcomes))?;
    Ok(())
}
