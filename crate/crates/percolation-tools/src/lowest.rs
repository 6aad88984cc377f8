use crate::cover::{Class, CoverSearch};
use lattice_core::{LatticeCoord, Parallelogram};
use random_field::{Color, SiteColoring};
use std::collections::VecDeque;

/// Vertices of `region` from which two closed arms reach `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestSet {
    pub region: Parallelogram,
    pub target: Vec<LatticeCoord>,
    /// The lowest achieving vertices (one row), in increasing `a`.
    pub vertices: Vec<LatticeCoord>,
}

impl LowestSet {
    pub fn row(&self) -> Option<i32> {
        self.vertices.first().map(|v| v.b)
    }
}

/// Whether `v` has two closed, mutually non-touching paths in `region \ {v}`
/// starting at distinct neighbours of `v` and ending next to `target`.
pub fn has_two_closed_arms<V: SiteColoring + ?Sized>(view: &V, region: &Parallelogram, target: &[LatticeCoord], v: LatticeCoord) -> bool {
    two_arms(view, region, &|u| ends_at(target, u), v)
}

#[inline]
fn ends_at(target: &[LatticeCoord], u: LatticeCoord) -> bool {
    target.iter().any(|&t| t.is_adjacent(u))
}

fn two_arms<V: SiteColoring + ?Sized>(view: &V, region: &Parallelogram, is_end: &dyn Fn(LatticeCoord) -> bool, v: LatticeCoord) -> bool {
    if !region.contains(v) || !view.is_closed(v) {
        return false;
    }
    let inside = |u: LatticeCoord| u != v && region.contains(u);
    let class_ok = |u: LatticeCoord, (c, _): Class| view.has_color(u, c);
    let mut search = CoverSearch::new(v, 0, *region, &inside, is_end, &class_ok, true);
    search.cyclic(&[(Color::Closed, false); 2]).is_some()
}

/// The lowest row of `region` containing a vertex with two non-touching
/// closed arms to `target` (a set of vertices just outside `region`), and
/// every such vertex on it. Empty if there is none.
pub fn lowest_two_arm_vertices<V: SiteColoring + ?Sized>(view: &V, region: &Parallelogram, target: &[LatticeCoord]) -> LowestSet {
    let mut target: Vec<LatticeCoord> = target.to_vec();
    target.sort();
    target.dedup();
    let in_set = |u: LatticeCoord| target.binary_search(&u).is_ok();
    let is_end = |u: LatticeCoord| u.neighbors().iter().any(|&t| in_set(t));
    // Closed vertices joined to the target by a closed path: every arm lies
    // in this cluster, so candidates need two non-adjacent neighbours in it.
    let mut cluster = vec![false; region.len()];
    let mut queue = VecDeque::new();
    for u in region.iter().filter(|&u| is_end(u) && view.is_closed(u)) {
        cluster[region.index_of(u).unwrap()] = true;
        queue.push_back(u);
    }
    while let Some(u) = queue.pop_front() {
        for w in u.neighbors() {
            if let Some(i) = region.index_of(w) {
                if !cluster[i] && view.is_closed(w) {
                    cluster[i] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let in_cluster = |u: LatticeCoord| region.index_of(u).is_some_and(|i| cluster[i]);
    let with_target = shares_block_with_target(region, &cluster, &is_end);
    let mut found = Vec::new();
    for b in region.b_lo..=region.b_hi {
        for a in region.a_lo..=region.a_hi {
            let v = LatticeCoord::new(a, b);
            if !view.is_closed(v) {
                continue;
            }
            // Two disjoint arms put `v` on a cycle through the target.
            if !region.index_of(v).is_some_and(|i| with_target[i]) {
                continue;
            }
            let nb: Vec<_> = v.neighbors().into_iter().filter(|&u| in_cluster(u)).collect();
            let separated = nb.iter().enumerate().any(|(i, x)| nb[i + 1..].iter().any(|y| !x.is_adjacent(*y)));
            if separated && two_arms(view, region, &is_end, v) {
                found.push(v);
            }
        }
        if !found.is_empty() {
            break;
        }
    }
    LowestSet { region: *region, target, vertices: found }
}

/// Cluster vertices lying in a common biconnected block with the target,
/// the target being one extra node adjacent to every cluster vertex that
/// ends an arm. Iterative Tarjan from the target node.
fn shares_block_with_target(region: &Parallelogram, cluster: &[bool], is_end: &dyn Fn(LatticeCoord) -> bool) -> Vec<bool> {
    const UNSEEN: u32 = u32::MAX;
    let n = cluster.len();
    let root = n;
    let ends: Vec<usize> = (0..n).filter(|&i| cluster[i] && is_end(region.coord_at(i))).collect();
    // `None` once exhausted, `usize::MAX` for a skipped slot.
    let neighbors = |u: usize, k: usize| -> Option<usize> {
        if u == root {
            return ends.get(k).copied();
        }
        let v = region.coord_at(u);
        match k {
            0..=5 => Some(region.index_of(v.neighbors()[k]).filter(|&j| cluster[j]).unwrap_or(usize::MAX)),
            6 => Some(if is_end(v) { root } else { usize::MAX }),
            _ => None,
        }
    };
    let mut disc = vec![UNSEEN; n + 1];
    let mut low = vec![0u32; n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    let mut preorder = Vec::new();
    let mut stack = vec![(root, 0usize)];
    disc[root] = 0;
    let mut time = 1;
    while let Some(&mut (u, ref mut k)) = stack.last_mut() {
        match neighbors(u, *k) {
            Some(w) => {
                *k += 1;
                if w == usize::MAX || w == parent[u] {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    parent[w] = u;
                    preorder.push(w);
                    stack.push((w, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            }
            None => {
                stack.pop();
                let p = parent[u];
                if p != usize::MAX {
                    low[p] = low[p].min(low[u]);
                }
            }
        }
    }
    // `w` stays in its parent's block unless `low[w] ≥ disc[parent]`.
    let mut inside = vec![false; n + 1];
    for &w in &preorder {
        let p = parent[w];
        inside[w] = p == root || (inside[p] && low[w] < disc[p]);
    }
    inside.truncate(n);
    inside
}
