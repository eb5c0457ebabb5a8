//! Small self-contained SVG plots — a polyline chart and a heat map — with
//! no drawing dependencies. Output is deterministic: fixed canvas, fixed
//! palette, fixed-precision coordinates, and stride-based downsampling.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;
/// Polylines are thinned to at most this many vertices.
const MAX_LINE_POINTS: usize = 2000;
/// Heat maps are thinned to at most this many cells per axis.
const MAX_HEAT_CELLS: usize = 200;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// 5-stop dark-to-bright color ramp, linearly interpolated.
const RAMP: [(f64, [u8; 3]); 5] = [
    (0.00, [0x44, 0x01, 0x54]),
    (0.25, [0x3b, 0x52, 0x8b]),
    (0.50, [0x21, 0x91, 0x8c]),
    (0.75, [0x5e, 0xc9, 0x62]),
    (1.00, [0xfd, 0xe7, 0x25]),
];

fn ramp_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let mut lo = RAMP[0];
    let mut hi = RAMP[RAMP.len() - 1];
    for w in RAMP.windows(2) {
        if t >= w[0].0 && t <= w[1].0 {
            lo = w[0];
            hi = w[1];
            break;
        }
    }
    let span = hi.0 - lo.0;
    let f = if span > 0.0 { (t - lo.0) / span } else { 0.0 };
    let ch = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        ch(lo.1[0], hi.1[0]),
        ch(lo.1[1], hi.1[1]),
        ch(lo.1[2], hi.1[2])
    )
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(f64::MIN_POSITIVE);
        MARGIN_LEFT + (v - self.x_min) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(f64::MIN_POSITIVE);
        HEIGHT - MARGIN_BOTTOM - (v - self.y_min) / span * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn svg_header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
}

fn axes(out: &mut String, frame: &Frame, title: &str, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    out.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        (x0 + x1) / 2.0,
        MARGIN_TOP - 14.0,
        escape(title)
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    ));
    for i in 0..=4 {
        let fx = frame.x_min + (frame.x_max - frame.x_min) * i as f64 / 4.0;
        let fy = frame.y_min + (frame.y_max - frame.y_min) * i as f64 / 4.0;
        let px = frame.x(fx);
        let py = frame.y(fy);
        out.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{y0}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            y0 + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            y0 + 20.0,
            tick(fx)
        ));
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0}\" y2=\"{py:.2}\" stroke=\"black\"/>\n",
            x0 - 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            x0 - 9.0,
            py + 4.0,
            tick(fy)
        ));
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn thin(n: usize, cap: usize) -> usize {
    n.div_ceil(cap).max(1)
}

/// A multi-series line chart. Each series is a label plus (x, y) samples;
/// long series are thinned by striding, always keeping the final point.
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, points) in series {
        for &(x, y) in points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if !x_min.is_finite() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let frame = Frame {
        x_min,
        x_max: if x_max > x_min { x_max } else { x_min + 1.0 },
        y_min: if y_min == 0.0 { 0.0 } else { y_min - pad },
        y_max: y_max + pad,
    };

    let mut out = String::new();
    svg_header(&mut out);
    axes(&mut out, &frame, title, x_label, y_label);
    for (k, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        if points.is_empty() {
            continue;
        }
        let stride = thin(points.len(), MAX_LINE_POINTS);
        let mut path = String::new();
        let mut kept: Vec<&(f64, f64)> = points.iter().step_by(stride).collect();
        if let Some(last) = points.last() {
            if !std::ptr::eq(*kept.last().unwrap(), last) {
                kept.push(last);
            }
        }
        for &&(x, y) in &kept {
            if !path.is_empty() {
                path.push(' ');
            }
            path.push_str(&format!("{:.2},{:.2}", frame.x(x), frame.y(y)));
        }
        out.push_str(&format!(
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
        let ly = MARGIN_TOP + 18.0 + 18.0 * k as f64;
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            MARGIN_LEFT + 10.0,
            MARGIN_LEFT + 34.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            MARGIN_LEFT + 40.0,
            ly + 4.0,
            escape(label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// A heat map of `values[i * xs.len() + j]` over (ys[i], xs[j]) — rows are
/// the y axis (drawn bottom-up), columns the x axis. Large grids are
/// thinned by striding.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
) -> String {
    assert_eq!(values.len(), xs.len() * ys.len(), "heatmap shape mismatch");
    let mut out = String::new();
    svg_header(&mut out);
    if xs.is_empty() || ys.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let frame = Frame {
        x_min: xs[0],
        x_max: *xs.last().unwrap(),
        y_min: ys[0],
        y_max: *ys.last().unwrap(),
    };
    let mut v_min = f64::INFINITY;
    let mut v_max = f64::NEG_INFINITY;
    for &v in values {
        v_min = v_min.min(v);
        v_max = v_max.max(v);
    }
    let v_span = if v_max > v_min { v_max - v_min } else { 1.0 };

    let sx = thin(xs.len(), MAX_HEAT_CELLS);
    let sy = thin(ys.len(), MAX_HEAT_CELLS);
    let cols: Vec<usize> = (0..xs.len()).step_by(sx).collect();
    let rows: Vec<usize> = (0..ys.len()).step_by(sy).collect();
    for (ri, &i) in rows.iter().enumerate() {
        let y_hi = frame.y(ys[i]);
        let y_lo = if ri + 1 < rows.len() {
            frame.y(ys[rows[ri + 1]])
        } else {
            frame.y(frame.y_max)
        };
        for (cj, &j) in cols.iter().enumerate() {
            let x_lo = frame.x(xs[j]);
            let x_hi = if cj + 1 < cols.len() {
                frame.x(xs[cols[cj + 1]])
            } else {
                frame.x(frame.x_max)
            };
            let t = (values[i * xs.len() + j] - v_min) / v_span;
            out.push_str(&format!(
                "<rect x=\"{x_lo:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
                y_lo.min(y_hi),
                (x_hi - x_lo).abs().max(0.5),
                (y_hi - y_lo).abs().max(0.5),
                ramp_color(t)
            ));
        }
    }
    axes(&mut out, &frame, title, x_label, y_label);
    // color bar legend: min and max
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">[{} .. {}]</text>\n",
        WIDTH - MARGIN_RIGHT,
        MARGIN_TOP - 14.0,
        tick(v_min),
        tick(v_max)
    ));
    out.push_str("</svg>\n");
    out
}
