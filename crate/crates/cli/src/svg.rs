//! Two-panel SVG figures: the parameter path in the `a`-plane and the root
//! trajectories it induces in the `z`-plane.

use std::fmt::Write;

use monodromy::{Complex, ParamPath, TrackResult};

const PANEL: f64 = 600.0;
const MARGIN: f64 = 0.05;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

/// Affine map from a data box onto a square panel, equal scale on both axes.
struct Frame {
    center: Complex,
    scale: f64,
}

impl Frame {
    fn fit<'a>(points: impl IntoIterator<Item = &'a Complex>) -> Frame {
        let (mut lo, mut hi) = (
            Complex::new(f64::INFINITY, f64::INFINITY),
            Complex::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for z in points {
            lo = Complex::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        if !lo.re.is_finite() {
            return Frame {
                center: Complex::new(0.0, 0.0),
                scale: 1.0,
            };
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im);
        let span = if span > 0.0 { span } else { 1.0 };
        Frame {
            center: (lo + hi) / 2.0,
            scale: PANEL * (1.0 - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, z: Complex) -> (f64, f64) {
        let x = PANEL / 2.0 + (z.re - self.center.re) * self.scale;
        let y = PANEL / 2.0 - (z.im - self.center.im) * self.scale;
        (x, y)
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[Complex], color: &str) {
    if pts.len() < 2 {
        return;
    }
    out.push_str("<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"");
    out.push_str(color);
    out.push_str("\" points=\"");
    for (i, &z) in pts.iter().enumerate() {
        let (x, y) = frame.map(z);
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    out.push_str("\"/>\n");
}

fn start_marker(out: &mut String, frame: &Frame, z: Complex, color: &str) {
    let (x, y) = frame.map(z);
    let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{color}\"/>");
}

fn end_marker(out: &mut String, frame: &Frame, z: Complex, color: &str) {
    let (x, y) = frame.map(z);
    let _ = writeln!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
        x - 4.0,
        y - 4.0
    );
}

fn cross(out: &mut String, frame: &Frame, z: Complex) {
    let (x, y) = frame.map(z);
    let _ = writeln!(
        out,
        "<path d=\"M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}\" stroke=\"#000000\" stroke-width=\"1.5\"/>",
        x - 5.0,
        y - 5.0,
        x + 5.0,
        y + 5.0,
        x - 5.0,
        y + 5.0,
        x + 5.0,
        y - 5.0
    );
}

fn panel(out: &mut String, x_offset: f64, title: &str, body: &str) {
    let _ = writeln!(
        out,
        "<svg x=\"{x_offset}\" y=\"0\" width=\"{PANEL}\" height=\"{PANEL}\" viewBox=\"0 0 {PANEL} {PANEL}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0.5\" y=\"0.5\" width=\"{}\" height=\"{}\" fill=\"#ffffff\" stroke=\"#cccccc\"/>",
        PANEL - 1.0,
        PANEL - 1.0
    );
    let _ = writeln!(
        out,
        "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>"
    );
    out.push_str(body);
    out.push_str("</svg>\n");
}

/// Renders the path (with `marks`, typically branch points, as crosses) and
/// the root trajectories of `tr`. Output depends only on the inputs.
pub fn plot_trajectories(tr: &TrackResult, path: &ParamPath, marks: &[Complex]) -> String {
    let step = (path.length() / 400.0).max(1e-9);
    let path_pts = match path.start() {
        Some(a0) if path.length() == 0.0 => vec![a0],
        Some(_) => path.sample(step),
        None => Vec::new(),
    };
    let a_frame = Frame::fit(path_pts.iter().chain(marks));
    let mut left = String::new();
    for &m in marks {
        cross(&mut left, &a_frame, m);
    }
    polyline(&mut left, &a_frame, &path_pts, "#000000");
    if let (Some(&first), Some(&last)) = (path_pts.first(), path_pts.last()) {
        start_marker(&mut left, &a_frame, first, "#000000");
        end_marker(&mut left, &a_frame, last, "#000000");
    }

    let z_frame = Frame::fit(tr.trajectories.iter().flatten());
    let mut right = String::new();
    for (i, traj) in tr.trajectories.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        polyline(&mut right, &z_frame, traj, color);
        if let (Some(&first), Some(&last)) = (traj.first(), traj.last()) {
            start_marker(&mut right, &z_frame, first, color);
            end_marker(&mut right, &z_frame, last, color);
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{PANEL}\" viewBox=\"0 0 {w} {PANEL}\">",
        w = 2.0 * PANEL
    );
    panel(&mut out, 0.0, "parameter a", &left);
    panel(&mut out, PANEL, "roots z", &right);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_keeps_margin() {
        let pts = [Complex::new(-1.0, -1.0), Complex::new(1.0, 1.0)];
        let f = Frame::fit(&pts);
        let (x0, y0) = f.map(pts[0]);
        let (x1, y1) = f.map(pts[1]);
        assert!((x0 - 30.0).abs() < 1e-9 && (y0 - 570.0).abs() < 1e-9);
        assert!((x1 - 570.0).abs() < 1e-9 && (y1 - 30.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_frame_is_finite() {
        let f = Frame::fit(&[Complex::new(2.0, 3.0)]);
        assert_eq!(f.map(Complex::new(2.0, 3.0)), (300.0, 300.0));
        let empty: [Complex; 0] = [];
        assert_eq!(Frame::fit(&empty).scale, 1.0);
    }
}
