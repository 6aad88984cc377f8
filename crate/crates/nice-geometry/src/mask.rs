use lattice_core::{LatticeCoord, Parallelogram, NEIGHBOR_OFFSETS};

/// A rasterised region: membership bits over a window that keeps a
/// one-vertex frame of non-members around the region, so every member's
/// neighbours (lattice or box-metric) have valid indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    window: Parallelogram,
    bits: Vec<bool>,
    count: usize,
}

impl Mask {
    /// Members are the vertices of `bbox` satisfying `f`.
    pub fn from_fn(bbox: Parallelogram, f: impl Fn(LatticeCoord) -> bool) -> Self {
        let window = if bbox.is_empty() { Parallelogram::new(0, 0, 0, 0) } else { bbox.expand(1) };
        let mut bits = vec![false; window.len()];
        let mut count = 0;
        if !bbox.is_empty() {
            for v in bbox.iter() {
                if f(v) {
                    bits[window.index_of(v).unwrap()] = true;
                    count += 1;
                }
            }
        }
        Mask { window, bits, count }
    }

    pub fn from_vertices<I: IntoIterator<Item = LatticeCoord>>(vs: I) -> Self {
        let vs: Vec<LatticeCoord> = vs.into_iter().collect();
        let Some(first) = vs.first() else {
            return Mask::from_fn(Parallelogram::new(0, -1, 0, -1), |_| false);
        };
        let mut bx = Parallelogram::new(first.a, first.a, first.b, first.b);
        for v in &vs {
            bx = Parallelogram::new(bx.a_lo.min(v.a), bx.a_hi.max(v.a), bx.b_lo.min(v.b), bx.b_hi.max(v.b));
        }
        let window = bx.expand(1);
        let mut bits = vec![false; window.len()];
        let mut count = 0;
        for v in vs {
            let i = window.index_of(v).unwrap();
            if !bits[i] {
                bits[i] = true;
                count += 1;
            }
        }
        Mask { window, bits, count }
    }

    pub fn window(&self) -> Parallelogram {
        self.window
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, v: LatticeCoord) -> bool {
        self.window.index_of(v).is_some_and(|i| self.bits[i])
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    #[inline]
    pub(crate) fn index(&self, v: LatticeCoord) -> Option<usize> {
        self.window.index_of(v)
    }

    #[inline]
    pub(crate) fn coord(&self, i: usize) -> LatticeCoord {
        self.window.coord_at(i)
    }

    pub(crate) fn raw_len(&self) -> usize {
        self.bits.len()
    }

    /// Index offsets of the six lattice neighbours, in [`NEIGHBOR_OFFSETS`] order.
    pub(crate) fn neighbor_steps(&self) -> [isize; 6] {
        let w = self.window.width() as isize;
        NEIGHBOR_OFFSETS.map(|(da, db)| da as isize + db as isize * w)
    }

    /// Member indices in row-major order.
    pub(crate) fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn vertices(&self) -> impl Iterator<Item = LatticeCoord> + '_ {
        self.member_indices().map(|i| self.coord(i))
    }

    /// Coefficient-ℓ∞ diameter `max(a-span, b-span)`; 0 when empty.
    pub fn diameter(&self) -> i64 {
        span_diameter(self.vertices())
    }

    /// Members inside `bx`.
    pub fn restrict(&self, bx: &Parallelogram) -> Mask {
        let inner = self.window.interior().intersect(bx);
        Mask::from_fn(inner, |v| self.contains(v))
    }

    /// Connected components (lattice adjacency), each as a member list in
    /// discovery order, ordered by their smallest row-major index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let steps = self.neighbor_steps();
        let mut seen = vec![false; self.bits.len()];
        let mut out = Vec::new();
        for s in self.member_indices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for d in steps {
                    let w = (u as isize + d) as usize;
                    if self.bits[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// The mask of the given members only.
    pub(crate) fn subset(&self, members: &[usize]) -> Mask {
        Mask::from_vertices(members.iter().map(|&i| self.coord(i)))
    }
}

pub(crate) fn span_diameter<I: IntoIterator<Item = LatticeCoord>>(vs: I) -> i64 {
    let (mut a_lo, mut a_hi, mut b_lo, mut b_hi) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for v in vs {
        a_lo = a_lo.min(v.a as i64);
        a_hi = a_hi.max(v.a as i64);
        b_lo = b_lo.min(v.b as i64);
        b_hi = b_hi.max(v.b as i64);
    }
    if a_lo > a_hi {
        0
    } else {
        (a_hi - a_lo).max(b_hi - b_lo)
    }
}
