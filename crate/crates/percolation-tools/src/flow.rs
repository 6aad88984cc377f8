//! Vertex-disjoint path counting by unit-capacity maximum flow.

use lattice_core::{LatticeCoord, Parallelogram};
use std::collections::VecDeque;

const NONE: u32 = u32::MAX;

struct Graph {
    head: Vec<u32>,
    to: Vec<u32>,
    next: Vec<u32>,
    cap: Vec<u8>,
}

impl Graph {
    fn with_nodes(n: usize) -> Self {
        Graph { head: vec![NONE; n], to: Vec::new(), next: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, u: u32, v: u32) {
        for (a, b, c) in [(u, v, 1u8), (v, u, 0u8)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a as usize]);
            self.head[a as usize] = self.to.len() as u32 - 1;
        }
    }
}

/// Maximum number (capped at `limit`) of vertex-disjoint paths through
/// `allowed` vertices of `bx` from a vertex of `sources` to a vertex
/// satisfying `is_sink`. Single-vertex paths count.
pub(crate) fn max_disjoint_paths(
    bx: &Parallelogram,
    allowed: impl Fn(LatticeCoord) -> bool,
    sources: &[LatticeCoord],
    is_sink: impl Fn(LatticeCoord) -> bool,
    limit: usize,
) -> usize {
    if limit == 0 {
        return 0;
    }
    // Restrict to the part reachable from the sources.
    let mut local = vec![NONE; bx.len()];
    let mut verts = Vec::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if let Some(i) = bx.index_of(s) {
            if local[i] == NONE && allowed(s) {
                local[i] = verts.len() as u32;
                verts.push(s);
                queue.push_back(s);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        for w in u.neighbors() {
            if let Some(i) = bx.index_of(w) {
                if local[i] == NONE && allowed(w) {
                    local[i] = verts.len() as u32;
                    verts.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let n = verts.len() as u32;
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut g = Graph::with_nodes(2 * n as usize + 2);
    let mut is_source = vec![false; n as usize];
    for &s in sources {
        if let Some(i) = bx.index_of(s) {
            if local[i] != NONE && !is_source[local[i] as usize] {
                is_source[local[i] as usize] = true;
                g.arc(src, 2 * local[i]);
            }
        }
    }
    for (k, &v) in verts.iter().enumerate() {
        let k = k as u32;
        g.arc(2 * k, 2 * k + 1);
        if is_sink(v) {
            g.arc(2 * k + 1, snk);
        }
        for w in v.neighbors() {
            if let Some(i) = bx.index_of(w) {
                if local[i] != NONE {
                    g.arc(2 * k + 1, 2 * local[i]);
                }
            }
        }
    }
    let mut flow = 0;
    let mut via = vec![NONE; g.head.len()];
    while flow < limit {
        via.iter_mut().for_each(|x| *x = NONE);
        let mut queue = VecDeque::from([src]);
        via[src as usize] = NONE - 1;
        'bfs: while let Some(u) = queue.pop_front() {
            let mut e = g.head[u as usize];
            while e != NONE {
                let v = g.to[e as usize];
                if g.cap[e as usize] > 0 && via[v as usize] == NONE {
                    via[v as usize] = e;
                    if v == snk {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
                e = g.next[e as usize];
            }
        }
        if via[snk as usize] == NONE {
            break;
        }
        let mut v = snk;
        while v != src {
            let e = via[v as usize] as usize;
            g.cap[e] -= 1;
            g.cap[e ^ 1] += 1;
            v = g.to[e ^ 1];
        }
        flow += 1;
    }
    flow
}
