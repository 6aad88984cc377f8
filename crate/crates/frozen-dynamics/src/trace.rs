use crate::forest::{ClusterForest, NONE};
use crate::DynamicsError;
use lattice_core::{LatticeCoord, Metric, Parallelogram, ScaledBBox};
use random_field::TauField;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Opened,
    Blocked,
}

/// One attempt, in activation order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry {
    pub vertex: LatticeCoord,
    pub tau: f64,
    pub outcome: Outcome,
}

/// A cluster reaching diameter `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreezeEvent {
    /// `τ` of the vertex whose opening created the cluster.
    pub time: f64,
    pub opener: LatticeCoord,
    /// Window index of the cluster's root; stable for the rest of the run.
    pub cluster: u32,
    pub diameter: f64,
    pub bbox: ScaledBBox,
    pub size: u32,
}

/// Extra checks for [`run_frozen_with`].
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Box whose neighbourhood must sit inside the window with margin.
    pub probe: Option<Parallelogram>,
    /// Required coefficient margin around `probe`, as a multiple of `N`.
    pub margin_factor: f64,
    /// Skip the margin check.
    pub allow_small_window: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { probe: None, margin_factor: 2.0, allow_small_window: false }
    }
}

/// Complete history of one frozen-percolation run on a window.
#[derive(Clone, Debug)]
pub struct ProcessTrace {
    window: Parallelogram,
    n: u32,
    metric: Metric,
    seed: u64,
    stream: u64,
    tau: Vec<f64>,
    order: Vec<u32>,
    opened: Vec<bool>,
    root: Vec<u32>,
    /// Index into `events` of the vertex's cluster, `NONE` if it never froze.
    frozen_event: Vec<u32>,
    events: Vec<FreezeEvent>,
}

/// Run the dynamics on every vertex of the field's window.
///
/// Vertices are tried once, in increasing `τ`. A vertex opens unless one of
/// its neighbours already belongs to a frozen cluster; on opening it merges
/// with all neighbouring clusters, and a merged cluster of diameter at least
/// `n` under `metric` freezes at that instant. Outside the window every
/// vertex is closed.
pub fn run_frozen(tau: &TauField, n: u32, metric: Metric) -> ProcessTrace {
    simulate(tau, n, metric)
}

/// [`run_frozen`] with a window-size check around `opts.probe`.
pub fn run_frozen_with(tau: &TauField, n: u32, metric: Metric, opts: RunOptions) -> Result<ProcessTrace, DynamicsError> {
    if let (Some(probe), false) = (opts.probe, opts.allow_small_window) {
        let need = (opts.margin_factor * n as f64).ceil() as i32;
        let have = tau.window().margin_around(&probe);
        if have < need {
            return Err(DynamicsError::WindowTooSmall { window: tau.window(), probe, need, have });
        }
    }
    Ok(simulate(tau, n, metric))
}

fn simulate(tau: &TauField, n: u32, metric: Metric) -> ProcessTrace {
    let window = tau.window();
    let len = window.len();
    let order = tau.activation_order();
    let mut forest = ClusterForest::new(len);
    let mut events = Vec::new();
    let mut nbr = [0usize; 6];
    for &idx in &order {
        let i = idx as usize;
        let v = window.coord_at(i);
        let mut k = 0;
        let mut blocked = false;
        for w in v.neighbors() {
            if let Some(j) = window.index_of(w) {
                if forest.is_open(j) {
                    let r = forest.find(j);
                    if forest.is_frozen_root(r) {
                        blocked = true;
                        break;
                    }
                    nbr[k] = j;
                    k += 1;
                }
            }
        }
        if blocked {
            continue;
        }
        forest.open(i, v);
        let mut root = i;
        for &j in &nbr[..k] {
            root = forest.union(root, j);
        }
        if forest.reaches(root, n, metric) {
            forest.freeze(root);
            let bbox = forest.bbox(root);
            events.push(FreezeEvent {
                time: tau.tau_at(i),
                opener: v,
                cluster: root as u32,
                diameter: bbox.diameter(metric),
                bbox,
                size: forest.size(root),
            });
        }
    }
    let opened: Vec<bool> = (0..len).map(|i| forest.is_open(i)).collect();
    let root = forest.roots();
    let mut event_of_root = std::collections::HashMap::with_capacity(events.len());
    for (e, ev) in events.iter().enumerate() {
        event_of_root.insert(ev.cluster, e as u32);
    }
    let frozen_event = root
        .iter()
        .map(|&r| if r == NONE { NONE } else { event_of_root.get(&r).copied().unwrap_or(NONE) })
        .collect();
    ProcessTrace {
        window,
        n,
        metric,
        seed: tau.seed(),
        stream: tau.stream(),
        tau: (0..len).map(|i| tau.tau_at(i)).collect(),
        order,
        opened,
        root,
        frozen_event,
        events,
    }
}

impl ProcessTrace {
    pub fn window(&self) -> Parallelogram {
        self.window
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn events(&self) -> &[FreezeEvent] {
        &self.events
    }

    /// Attempts in activation order.
    pub fn entries(&self) -> impl Iterator<Item = TraceEntry> + '_ {
        self.order.iter().map(move |&i| {
            let i = i as usize;
            TraceEntry {
                vertex: self.window.coord_at(i),
                tau: self.tau[i],
                outcome: if self.opened[i] { Outcome::Opened } else { Outcome::Blocked },
            }
        })
    }

    pub fn tau(&self, v: LatticeCoord) -> Option<f64> {
        self.window.index_of(v).map(|i| self.tau[i])
    }

    /// Open in the frozen process at time `t`.
    #[inline]
    pub fn is_open_at(&self, v: LatticeCoord, t: f64) -> bool {
        self.window.index_of(v).is_some_and(|i| self.open_idx(i, t))
    }

    #[inline]
    fn open_idx(&self, i: usize, t: f64) -> bool {
        self.opened[i] && self.tau[i] <= t
    }

    /// The open vertices after the last attempt.
    pub fn final_open_set(&self) -> BTreeSet<LatticeCoord> {
        (0..self.opened.len()).filter(|&i| self.opened[i]).map(|i| self.window.coord_at(i)).collect()
    }

    /// Freeze event of `v`'s cluster if it has frozen by time `t`.
    pub fn frozen_event_at(&self, v: LatticeCoord, t: f64) -> Option<&FreezeEvent> {
        let i = self.window.index_of(v)?;
        self.frozen_idx(i, t).then(|| &self.events[self.frozen_event[i] as usize])
    }

    /// Position in [`ProcessTrace::events`] of `v`'s freeze event, if it
    /// has frozen by time `t`.
    pub fn frozen_event_index_at(&self, v: LatticeCoord, t: f64) -> Option<usize> {
        let i = self.window.index_of(v)?;
        self.frozen_idx(i, t).then(|| self.frozen_event[i] as usize)
    }

    /// `v` is open and its cluster has frozen by time `t`.
    #[inline]
    fn frozen_idx(&self, i: usize, t: f64) -> bool {
        let e = self.frozen_event[i];
        e != NONE && self.tau[i] <= t && self.events[e as usize].time <= t
    }

    /// Final union–find root of an open vertex.
    pub fn cluster_id(&self, v: LatticeCoord) -> Option<u32> {
        let i = self.window.index_of(v)?;
        (self.root[i] != NONE).then_some(self.root[i])
    }

    /// `v` lies in, or next to, a cluster that has frozen by time `t`.
    pub fn is_frozen_site(&self, v: LatticeCoord, t: f64) -> bool {
        let Some(i) = self.window.index_of(v) else { return false };
        self.frozen_idx(i, t)
            || v.neighbors().iter().any(|w| self.window.index_of(*w).is_some_and(|j| self.frozen_idx(j, t)))
    }

    fn flood<F: Fn(usize) -> bool>(&self, start: usize, pass: F) -> Vec<usize> {
        let mut seen = vec![false; self.opened.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(i) = queue.pop_front() {
            out.push(i);
            for w in self.window.coord_at(i).neighbors() {
                if let Some(j) = self.window.index_of(w) {
                    if !seen[j] && pass(j) {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        out
    }

    /// `C(v; t)`: the component of `v` among vertices open at time `t`.
    pub fn open_cluster(&self, v: LatticeCoord, t: f64) -> BTreeSet<LatticeCoord> {
        match self.window.index_of(v) {
            Some(i) if self.open_idx(i, t) => {
                self.flood(i, |j| self.open_idx(j, t)).into_iter().map(|j| self.window.coord_at(j)).collect()
            }
            _ => BTreeSet::new(),
        }
    }

    /// Bounding box of `C(v; t)`, `None` if `v` is not open at `t`.
    pub fn open_cluster_bbox(&self, v: LatticeCoord, t: f64) -> Option<ScaledBBox> {
        let i = self.window.index_of(v)?;
        if !self.open_idx(i, t) {
            return None;
        }
        ScaledBBox::from_points(self.flood(i, |j| self.open_idx(j, t)).into_iter().map(|j| self.window.coord_at(j)))
    }

    /// `C_a(v; t)`: the component of `v` among active (non-frozen) sites,
    /// open and closed alike. Empty if `v` itself is frozen.
    pub fn active_cluster(&self, v: LatticeCoord, t: f64) -> BTreeSet<LatticeCoord> {
        let Some(i) = self.window.index_of(v) else { return BTreeSet::new() };
        let frozen = self.frozen_mask(t);
        if frozen[i] {
            return BTreeSet::new();
        }
        self.flood(i, |j| !frozen[j]).into_iter().map(|j| self.window.coord_at(j)).collect()
    }

    /// Per-index frozen-site flags at time `t`.
    pub fn frozen_mask(&self, t: f64) -> Vec<bool> {
        let mut mask = vec![false; self.opened.len()];
        for i in 0..self.opened.len() {
            if self.frozen_idx(i, t) {
                mask[i] = true;
                for w in self.window.coord_at(i).neighbors() {
                    if let Some(j) = self.window.index_of(w) {
                        mask[j] = true;
                    }
                }
            }
        }
        mask
    }

    /// Freeze events whose cluster meets `region` (at the end of the run;
    /// frozen clusters never change).
    pub fn events_meeting(&self, region: &Parallelogram) -> Vec<&FreezeEvent> {
        let mut hit = vec![false; self.events.len()];
        let r = self.window.intersect(region);
        if !r.is_empty() {
            for v in r.iter() {
                let i = self.window.index_of(v).unwrap();
                if self.frozen_event[i] != NONE {
                    hit[self.frozen_event[i] as usize] = true;
                }
            }
        }
        self.events.iter().zip(hit).filter(|(_, h)| *h).map(|(e, _)| e).collect()
    }
}
