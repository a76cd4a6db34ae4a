//! Hand-emitted SVG charts from previously written JSON reports.
//! Plots are a convenience; no acceptance artifact depends on them.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::commands::Ctx;
use crate::reports::OutputSet;
use crate::{validation, CliResult};

const W: f64 = 640.0;
const H: f64 = 400.0;
const ML: f64 = 60.0; // left margin
const MB: f64 = 50.0; // bottom margin
const MT: f64 = 40.0; // top margin
const MR: f64 = 20.0; // right margin

struct Canvas {
    body: String,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Canvas {
    fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Canvas {
        Canvas {
            body: String::new(),
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    fn px(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(1e-9);
        ML + (x - self.x_min) / span * (W - ML - MR)
    }

    fn py(&self, y: f64) -> f64 {
        let span = (self.y_max - self.y_min).max(1e-9);
        H - MB - (y - self.y_min) / span * (H - MB - MT)
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        self.body.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{fill}\"/>\n"
        ));
    }

    fn circle(&mut self, x: f64, y: f64, r: f64, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r:.2}\" fill=\"{fill}\"/>\n"
        ));
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, dash: bool) {
        let d = if dash { " stroke-dasharray=\"6 4\"" } else { "" };
        self.body.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"1.5\"{d}/>\n"
        ));
    }

    fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, s: &str) {
        let esc = s
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        self.body.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size}\" font-family=\"monospace\" text-anchor=\"{anchor}\">{esc}</text>\n"
        ));
    }

    fn axes(&mut self, title: &str, x_label: &str, y_label: &str) {
        self.line(ML, H - MB, W - MR, H - MB, "#000", false);
        self.line(ML, MT, ML, H - MB, "#000", false);
        self.text(W / 2.0, MT - 14.0, 14.0, "middle", title);
        self.text(W / 2.0, H - 10.0, 12.0, "middle", x_label);
        self.text(14.0, MT - 14.0, 12.0, "start", y_label);
        // y tick labels at min and max
        self.line(ML - 4.0, self.py(self.y_min), ML, self.py(self.y_min), "#000", false);
        self.line(ML - 4.0, self.py(self.y_max), ML, self.py(self.y_max), "#000", false);
        let (lo, hi) = (self.y_min, self.y_max);
        self.text(ML - 8.0, self.py(lo) + 4.0, 10.0, "end", &format!("{lo:.2}"));
        self.text(ML - 8.0, self.py(hi) + 4.0, 10.0, "end", &format!("{hi:.2}"));
    }

    fn finish(self) -> Vec<u8> {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
        .into_bytes()
    }
}

fn load_report(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| validation(format!("cannot read report {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| validation(format!("bad JSON in {}: {e}", path.display())))
}

fn series_claim(v: &Value) -> String {
    v.get("claim")
        .and_then(Value::as_str)
        .unwrap_or("unlabeled series")
        .to_string()
}

fn betti_vs_n(v: &Value) -> CliResult<Vec<u8>> {
    let r = v
        .get("result")
        .ok_or_else(|| validation("missing result object"))?;
    let betti: Vec<f64> = r
        .get("betti")
        .and_then(Value::as_array)
        .ok_or_else(|| validation("missing series `betti`"))?
        .iter()
        .filter_map(Value::as_f64)
        .collect();
    let n_min = r.get("n_min").and_then(Value::as_u64).unwrap_or(0) as f64;
    if betti.is_empty() {
        return Err(validation("empty window: no betti series to plot"));
    }
    let y_max = betti.iter().cloned().fold(1.0f64, f64::max);
    let mut c = Canvas::new(n_min - 0.5, n_min + betti.len() as f64 - 0.5, 0.0, y_max * 1.1);
    c.axes(&series_claim(v), "n (strand count)", "b_p(n)");
    let bw = (W - ML - MR) / betti.len() as f64 * 0.6;
    for (i, &b) in betti.iter().enumerate() {
        let x = n_min + i as f64;
        let px = c.px(x) - bw / 2.0;
        let py = c.py(b);
        c.rect(px, py, bw, (H - MB) - py, "#4878a8");
        c.text(c.px(x), H - MB + 16.0, 11.0, "middle", &format!("{}", x as i64));
        c.text(c.px(x), py - 4.0, 10.0, "middle", &format!("{}", b as i64));
    }
    Ok(c.finish())
}

fn distribution_vs_mu(v: &Value) -> CliResult<Vec<u8>> {
    let r = v
        .get("result")
        .ok_or_else(|| validation("missing result object"))?;
    let dist = r
        .get("distribution")
        .and_then(Value::as_object)
        .ok_or_else(|| validation("missing series `distribution`"))?;
    let mu = r
        .get("mu_masses")
        .and_then(Value::as_object)
        .ok_or_else(|| validation("missing series `mu_masses`"))?;
    let total: f64 = dist.values().filter_map(Value::as_f64).sum();
    if dist.is_empty() || total == 0.0 {
        return Err(validation("empty distribution: nothing to plot"));
    }
    let labels: Vec<&String> = dist.keys().collect();
    let mut y_max = 0.0f64;
    let mut pairs = Vec::new();
    for lab in &labels {
        let emp = dist[*lab].as_f64().unwrap_or(0.0) / total;
        let m = mu.get(*lab).and_then(Value::as_f64).unwrap_or(0.0);
        y_max = y_max.max(emp).max(m);
        pairs.push((lab.to_string(), emp, m));
    }
    let mut c = Canvas::new(-0.5, pairs.len() as f64 - 0.5, 0.0, y_max * 1.15);
    c.axes(&series_claim(v), "class-group type", "frequency (bars) vs measure (ticks)");
    let bw = (W - ML - MR) / pairs.len() as f64 * 0.5;
    for (i, (lab, emp, m)) in pairs.iter().enumerate() {
        let x = c.px(i as f64);
        let py = c.py(*emp);
        c.rect(x - bw / 2.0, py, bw, (H - MB) - py, "#4878a8");
        let my = c.py(*m);
        c.line(x - bw / 2.0 - 4.0, my, x + bw / 2.0 + 4.0, my, "#c03020", false);
        c.text(x, H - MB + 16.0, 9.0, "middle", lab);
    }
    Ok(c.finish())
}

fn hq_vs_q(v: &Value) -> CliResult<Vec<u8>> {
    let r = v
        .get("result")
        .ok_or_else(|| validation("missing result object"))?;
    let degs = r
        .get("degree_of_hq")
        .and_then(Value::as_array)
        .ok_or_else(|| validation("missing series `degree_of_hq`"))?;
    let mut points = Vec::new();
    for (q, d) in degs.iter().enumerate() {
        if let Some(s) = d.as_str() {
            if let Some(n) = s
                .strip_prefix("attained:")
                .or_else(|| s.strip_prefix("censored:"))
            {
                if let Ok(n) = n.parse::<f64>() {
                    points.push((q as f64, n));
                }
            }
        }
    }
    if points.is_empty() {
        return Err(validation("no attained homology degrees to plot"));
    }
    let x_max = points.iter().map(|p| p.0).fold(1.0, f64::max);
    let y_max = points.iter().map(|p| p.1).fold(1.0, f64::max);
    let level = r.get("max_hq_minus_q").and_then(Value::as_f64);
    let mut c = Canvas::new(-0.5, x_max + 0.5, 0.0, (y_max + 1.0) * 1.1);
    c.axes(&series_claim(v), "q (homological degree)", "h_q (top nonzero total degree)");
    if let Some(lv) = level {
        // the fitted h_q = q + level line
        c.line(c.px(0.0), c.py(lv), c.px(x_max), c.py(x_max + lv), "#c03020", true);
        c.text(W - MR - 4.0, c.py(x_max + lv) - 6.0, 10.0, "end", &format!("h_q - q = {lv}"));
    }
    for (q, n) in &points {
        c.circle(c.px(*q), c.py(*n), 4.0, "#4878a8");
        c.text(c.px(*q), H - MB + 16.0, 11.0, "middle", &format!("{}", *q as i64));
    }
    Ok(c.finish())
}

pub fn plot(ctx: &Ctx, kind: &str, input: &Path, output: Option<&str>) -> CliResult<Vec<PathBuf>> {
    let v = load_report(input)?;
    let bytes = match kind {
        "betti-vs-n" => betti_vs_n(&v)?,
        "distribution-vs-mu" => distribution_vs_mu(&v)?,
        "hq-vs-q" => hq_vs_q(&v)?,
        _ => {
            return Err(validation(format!(
                "unknown plot kind {kind:?}: expected betti-vs-n, distribution-vs-mu, or hq-vs-q"
            )))
        }
    };
    let name = output.map(|s| s.to_string()).unwrap_or(format!("{kind}.svg"));
    let mut out = OutputSet::new(&ctx.out_dir, ctx.force)?;
    match out.write(&name, &bytes) {
        Ok(_) => Ok(out.written_paths().to_vec()),
        Err(e) => {
            out.abandon();
            Err(e)
        }
    }
}
