use lattice_core::{diameter_at_least, LatticeCoord, Metric, ScaledBBox};

pub(crate) const NONE: u32 = u32::MAX;

/// Six-axis extents packed as `i32`; the public [`ScaledBBox`] is built on
/// demand. Keeps the per-vertex footprint of large windows small.
#[derive(Clone, Copy)]
struct Extent {
    lo: [i32; 6],
    hi: [i32; 6],
}

impl Extent {
    #[inline]
    fn point(v: LatticeCoord) -> Self {
        let (a, b) = (v.a, v.b);
        let p = [2 * a + b, a + 2 * b, b - a, b, a + b, a];
        Extent { lo: p, hi: p }
    }

    #[inline]
    fn merge(&mut self, o: &Extent) {
        for i in 0..6 {
            self.lo[i] = self.lo[i].min(o.lo[i]);
            self.hi[i] = self.hi[i].max(o.hi[i]);
        }
    }

    fn to_bbox(self) -> ScaledBBox {
        ScaledBBox { lo: self.lo.map(i64::from), hi: self.hi.map(i64::from) }
    }
}

/// Union–find over window indices with union by size, path compression and
/// an exact bounding box per root.
pub struct ClusterForest {
    parent: Vec<u32>,
    size: Vec<u32>,
    extent: Vec<Extent>,
    frozen: Vec<bool>,
}

impl ClusterForest {
    pub fn new(n: usize) -> Self {
        ClusterForest {
            parent: vec![NONE; n],
            size: vec![0; n],
            extent: vec![Extent { lo: [0; 6], hi: [0; 6] }; n],
            frozen: vec![false; n],
        }
    }

    #[inline]
    pub fn is_open(&self, i: usize) -> bool {
        self.parent[i] != NONE
    }

    /// Make `i` a singleton cluster at `v`.
    #[inline]
    pub fn open(&mut self, i: usize, v: LatticeCoord) {
        self.parent[i] = i as u32;
        self.size[i] = 1;
        self.extent[i] = Extent::point(v);
    }

    #[inline]
    pub fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = i;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    /// Merge the clusters of `i` and `j`; returns the surviving root.
    #[inline]
    pub fn union(&mut self, i: usize, j: usize) -> usize {
        let (mut ri, mut rj) = (self.find(i), self.find(j));
        if ri == rj {
            return ri;
        }
        if self.size[ri] < self.size[rj] {
            std::mem::swap(&mut ri, &mut rj);
        }
        self.parent[rj] = ri as u32;
        self.size[ri] += self.size[rj];
        let e = self.extent[rj];
        self.extent[ri].merge(&e);
        ri
    }

    #[inline]
    pub fn size(&self, root: usize) -> u32 {
        self.size[root]
    }

    pub fn bbox(&self, root: usize) -> ScaledBBox {
        self.extent[root].to_bbox()
    }

    #[inline]
    pub fn reaches(&self, root: usize, n: u32, m: Metric) -> bool {
        diameter_at_least(&self.extent[root].to_bbox(), n, m)
    }

    #[inline]
    pub fn is_frozen_root(&self, root: usize) -> bool {
        self.frozen[root]
    }

    #[inline]
    pub fn freeze(&mut self, root: usize) {
        self.frozen[root] = true;
    }

    /// Final root of every index (`NONE` for closed ones), fully compressed.
    pub fn roots(mut self) -> Vec<u32> {
        for i in 0..self.parent.len() {
            if self.parent[i] != NONE {
                let r = self.find(i);
                self.parent[i] = r as u32;
            }
        }
        self.parent
    }
}
