use crate::trace::{FreezeEvent, ProcessTrace};
use lattice_core::{Metric, Parallelogram};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub vertices: usize,
    pub opened: usize,
    pub blocked: usize,
    pub frozen_clusters: usize,
    pub frozen_vertices: u64,
    pub first_freeze: Option<f64>,
    pub last_freeze: Option<f64>,
}

/// JSON-ready description of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub window: Parallelogram,
    #[serde(rename = "N")]
    pub n: u32,
    pub metric: Metric,
    pub seed: u64,
    pub stream: u64,
    pub margin: Option<i32>,
    pub freeze_events: Vec<FreezeEvent>,
    pub summary: TraceSummary,
}

impl ProcessTrace {
    pub fn summary(&self) -> TraceSummary {
        let opened = self.entries().filter(|e| e.outcome == crate::Outcome::Opened).count();
        let ev = self.events();
        TraceSummary {
            vertices: self.window().len(),
            opened,
            blocked: self.window().len() - opened,
            frozen_clusters: ev.len(),
            frozen_vertices: ev.iter().map(|e| e.size as u64).sum(),
            first_freeze: ev.first().map(|e| e.time),
            last_freeze: ev.last().map(|e| e.time),
        }
    }

    /// `margin`: coefficient gap between the window and the reported box, if any.
    pub fn report(&self, margin: Option<i32>) -> TraceReport {
        TraceReport {
            window: self.window(),
            n: self.n(),
            metric: self.metric(),
            seed: self.seed(),
            stream: self.stream(),
            margin,
            freeze_events: self.events().to_vec(),
            summary: self.summary(),
        }
    }

    pub fn to_json(&self, margin: Option<i32>) -> serde_json::Result<String> {
        serde_json::to_string_pretty(&self.report(margin))
    }

    /// Hexagon-per-vertex picture at time `t`: white closed, light open and
    /// active, frozen clusters dark and shaded by freeze order.
    pub fn to_svg(&self, t: f64) -> String {
        const R: f64 = 0.577_350_269_189_625_8; // circumradius 1/√3
        const SCALE: f64 = 10.0;
        let w = self.window();
        let pts: Vec<(f64, f64)> = w.iter().map(|v| v.embed()).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let pad = 1.0;
        let (width, height) = ((x1 - x0 + 2.0 * pad) * SCALE, (y1 - y0 + 2.0 * pad) * SCALE);
        let corners: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let th = std::f64::consts::PI / 6.0 + k as f64 * std::f64::consts::PI / 3.0;
                (R * th.cos(), R * th.sin())
            })
            .collect();
        let frozen = self.frozen_mask(t);
        let n_events = self.events().len().max(1);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for (i, (v, &(x, y))) in w.iter().zip(&pts).enumerate() {
            let fill = if let Some(rank) = self.frozen_event_index_at(v, t) {
                let g = 20 + (100 * rank / n_events) as u32;
                format!("rgb({g},{g},{})", g + 60)
            } else if self.is_open_at(v, t) {
                if frozen[i] { "#8899aa".to_string() } else { "#bcd8f0".to_string() }
            } else {
                "white".to_string()
            };
            let mut d = String::new();
            for (cx, cy) in &corners {
                let px = (x + cx - x0 + pad) * SCALE;
                let py = (y1 - (y + cy) + pad) * SCALE;
                let _ = write!(d, "{px:.2},{py:.2} ");
            }
            let _ = writeln!(s, r##"<polygon points="{}" fill="{fill}" stroke="#cccccc" stroke-width="0.5"/>"##, d.trim_end());
        }
        s.push_str("</svg>\n");
        s
    }
}
