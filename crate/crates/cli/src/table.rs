use std::fmt::Write as _;

use casimir_core::ThermoResult;

/// One curve of a sweep.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<ThermoResult>,
}

/// Sweep results over a shared independent variable.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub x_name: &'static str,
    pub x_unit: &'static str,
    pub x: Vec<f64>,
    pub log_x: bool,
    /// Report `|value|` instead of the signed value.
    pub magnitude: bool,
    pub symbol: &'static str,
    pub unit: &'static str,
    pub title: String,
    pub series: Vec<Series>,
}

/// 12 significant digits, fixed exponent layout.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

impl Sweep {
    fn shown(&self, r: &ThermoResult) -> f64 {
        if self.magnitude {
            r.value.abs()
        } else {
            r.value
        }
    }

    pub fn all_converged(&self) -> bool {
        self.series.iter().all(|s| s.points.iter().all(|p| p.converged))
    }

    pub fn unconverged(&self) -> usize {
        self.series
            .iter()
            .map(|s| s.points.iter().filter(|p| !p.converged).count())
            .sum()
    }

    fn value_name(&self, label: &str) -> String {
        if self.magnitude {
            format!("|{}| {label}", self.symbol)
        } else {
            format!("{} {label}", self.symbol)
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec![format!("{} ({})", self.x_name, self.x_unit)];
        for s in &self.series {
            header.push(format!("{} ({})", self.value_name(&s.label), self.unit));
            header.push(format!("{} {} error ({})", self.symbol, s.label, self.unit));
            header.push(format!("{} converged", s.label));
        }
        out.push_str(&header.join(","));
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            let mut row = vec![fmt_num(*x)];
            for s in &self.series {
                let p = &s.points[i];
                row.push(fmt_num(self.shown(p)));
                row.push(fmt_num(p.est_error));
                row.push(p.converged.to_string());
            }
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const W: f64 = 720.0;
        const H: f64 = 480.0;
        const L: f64 = 100.0;
        const R: f64 = 30.0;
        const T: f64 = 40.0;
        const B: f64 = 60.0;
        const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e8b57", "#7d3c98"];

        let xmap = |x: f64| if self.log_x { x.log10() } else { x };
        let (x0, x1) = (xmap(self.x[0]), xmap(*self.x.last().unwrap()));
        let ys: Vec<f64> = self.series.iter().flat_map(|s| s.points.iter().map(|p| self.shown(p))).collect();
        let mut y0 = ys.iter().copied().fold(f64::INFINITY, f64::min);
        let mut y1 = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if y1 - y0 <= f64::EPSILON * y1.abs().max(1e-300) {
            let pad = 0.5 * y0.abs().max(1e-300);
            y0 -= pad;
            y1 += pad;
        }
        let pad = 0.05 * (y1 - y0);
        let (y0, y1) = (y0 - pad, y1 + pad);
        let px = |x: f64| L + (xmap(x) - x0) / (x1 - x0) * (W - L - R);
        let py = |y: f64| H - B - (y - y0) / (y1 - y0) * (H - T - B);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            W / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{L}" y="{T}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - L - R,
            H - T - B
        );

        // x ticks: decades for log axes, five even steps otherwise
        let xticks: Vec<f64> = if self.log_x {
            (x0.ceil() as i32..=x1.floor() as i32).map(|k| 10f64.powi(k)).collect()
        } else {
            (0..=4).map(|k| self.x[0] + (self.x[self.x.len() - 1] - self.x[0]) * k as f64 / 4.0).collect()
        };
        for t in xticks {
            let x = px(t);
            let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, H - B, H - B + 5.0);
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, H - B + 18.0, tick_label(t));
        }
        for k in 0..=4 {
            let v = y0 + (y1 - y0) * k as f64 / 4.0;
            let y = py(v);
            let _ = writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{L}" y2="{y:.2}" stroke="black"/>"#, L - 5.0);
            let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, L - 8.0, y + 4.0, tick_label(v));
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{} ({})</text>"#,
            (L + W - R) / 2.0,
            H - 15.0,
            self.x_name,
            escape(self.x_unit)
        );
        let ylab = if self.magnitude {
            format!("|{}| ({})", self.symbol, self.unit)
        } else {
            format!("{} ({})", self.symbol, self.unit)
        };
        let _ = writeln!(
            s,
            r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
            (T + H - B) / 2.0,
            (T + H - B) / 2.0,
            escape(&ylab)
        );

        for (k, series) in self.series.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let dash = if k % 2 == 1 { r#" stroke-dasharray="6 4""# } else { "" };
            let pts: Vec<String> = self
                .x
                .iter()
                .zip(&series.points)
                .map(|(x, p)| format!("{:.2},{:.2}", px(*x), py(self.shown(p))))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.8"{dash} points="{}"/>"#,
                pts.join(" ")
            );
            let ly = T + 18.0 + 18.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.8"{dash}/>"#,
                W - R - 170.0,
                W - R - 140.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                W - R - 134.0,
                ly + 4.0,
                escape(&series.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-2..1e4).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
