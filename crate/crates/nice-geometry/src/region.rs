use crate::mask::Mask;
use crate::NiceGeometryError;
use lattice_core::{LatticeCoord, Parallelogram};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite vertex set, either listed or generated from a shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RegionJson", into = "RegionJson")]
pub enum Region {
    Explicit(BTreeSet<LatticeCoord>),
    Procedural { shape: Shape, window: Parallelogram },
}

/// Built-in generators. All coordinates are lattice coefficients; discs
/// and tubes are measured in the Euclidean embedding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// `[0, length) ⊠ [0, width)`.
    Corridor { length: i32, width: i32 },
    /// `[0, arm) ⊠ [0, width) ∪ [0, width) ⊠ [0, arm)`.
    LShape { arm: i32, width: i32 },
    BlobUnion(BlobUnion),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlobUnion {
    /// `[a, b, radius]`.
    #[serde(default)]
    pub discs: Vec<[f64; 3]>,
    /// `[a_lo, a_hi, b_lo, b_hi]`, inclusive.
    #[serde(default)]
    pub rects: Vec<[i32; 4]>,
    /// `[a0, b0, a1, b1, width]`: points within `width/2` of the segment.
    #[serde(default)]
    pub tubes: Vec<[f64; 5]>,
}

fn embed(a: f64, b: f64) -> (f64, f64) {
    (a + 0.5 * b, 0.866_025_403_784_438_6 * b)
}

fn segment_distance(p: (f64, f64), s: (f64, f64), t: (f64, f64)) -> f64 {
    let (dx, dy) = (t.0 - s.0, t.1 - s.1);
    let l2 = dx * dx + dy * dy;
    let u = if l2 == 0.0 { 0.0 } else { (((p.0 - s.0) * dx + (p.1 - s.1) * dy) / l2).clamp(0.0, 1.0) };
    (p.0 - s.0 - u * dx).hypot(p.1 - s.1 - u * dy)
}

impl Shape {
    pub fn contains(&self, v: LatticeCoord) -> bool {
        match self {
            Shape::Corridor { length, width } => (0..*length).contains(&v.a) && (0..*width).contains(&v.b),
            Shape::LShape { arm, width } => {
                (0..*arm).contains(&v.a) && (0..*width).contains(&v.b) || (0..*width).contains(&v.a) && (0..*arm).contains(&v.b)
            }
            Shape::BlobUnion(u) => {
                if u.rects.iter().any(|r| (r[0]..=r[1]).contains(&v.a) && (r[2]..=r[3]).contains(&v.b)) {
                    return true;
                }
                let p = v.embed();
                u.discs.iter().any(|d| {
                    let c = embed(d[0], d[1]);
                    (p.0 - c.0).hypot(p.1 - c.1) <= d[2]
                }) || u.tubes.iter().any(|t| segment_distance(p, embed(t[0], t[1]), embed(t[2], t[3])) <= t[4] / 2.0)
            }
        }
    }

    /// A box containing every member.
    pub fn bounding_box(&self) -> Parallelogram {
        match self {
            Shape::Corridor { length, width } => Parallelogram::new(0, length - 1, 0, width - 1),
            Shape::LShape { arm, width } => {
                let side = (*arm).max(*width);
                Parallelogram::new(0, side - 1, 0, side - 1)
            }
            Shape::BlobUnion(u) => {
                let mut boxes: Vec<[f64; 4]> = u.rects.iter().map(|r| [r[0], r[1], r[2], r[3]].map(f64::from)).collect();
                // Embedded distance ≥ ‖(Δa, Δb)‖_∞ · √3/2, so a radius r stays within 2r/√3 in coefficients.
                let k = 2.0 / 3f64.sqrt();
                boxes.extend(u.discs.iter().map(|d| [d[0] - k * d[2], d[0] + k * d[2], d[1] - k * d[2], d[1] + k * d[2]]));
                boxes.extend(u.tubes.iter().map(|t| {
                    let r = k * t[4] / 2.0;
                    [t[0].min(t[2]) - r, t[0].max(t[2]) + r, t[1].min(t[3]) - r, t[1].max(t[3]) + r]
                }));
                if boxes.is_empty() {
                    return Parallelogram::new(0, -1, 0, -1);
                }
                let lo = |i: usize| boxes.iter().map(|b| b[i]).fold(f64::INFINITY, f64::min).floor() as i32 - 1;
                let hi = |i: usize| boxes.iter().map(|b| b[i]).fold(f64::NEG_INFINITY, f64::max).ceil() as i32 + 1;
                Parallelogram::new(lo(0), hi(1), lo(2), hi(3))
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Shape::Corridor { .. } => "corridor",
            Shape::LShape { .. } => "l-shape",
            Shape::BlobUnion(_) => "blob-union",
        }
    }
}

impl Region {
    pub fn from_vertices<I: IntoIterator<Item = LatticeCoord>>(vs: I) -> Self {
        Region::Explicit(vs.into_iter().collect())
    }

    pub fn procedural(shape: Shape) -> Self {
        let window = shape.bounding_box();
        Region::Procedural { shape, window }
    }

    pub fn corridor(length: i32, width: i32) -> Self {
        Region::procedural(Shape::Corridor { length, width })
    }

    pub fn l_shape(arm: i32, width: i32) -> Self {
        Region::procedural(Shape::LShape { arm, width })
    }

    pub fn contains(&self, v: LatticeCoord) -> bool {
        match self {
            Region::Explicit(s) => s.contains(&v),
            Region::Procedural { shape, window } => window.contains(v) && shape.contains(v),
        }
    }

    pub fn mask(&self) -> Mask {
        match self {
            Region::Explicit(s) => Mask::from_vertices(s.iter().copied()),
            Region::Procedural { shape, window } => Mask::from_fn(*window, |v| shape.contains(v)),
        }
    }

    pub fn from_json(s: &str) -> Result<Self, NiceGeometryError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RegionJson {
    Cells {
        cells: Vec<[i32; 2]>,
    },
    Procedural {
        procedural: String,
        #[serde(default)]
        params: serde_json::Value,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<Parallelogram>,
    },
}

impl TryFrom<RegionJson> for Region {
    type Error = NiceGeometryError;
    fn try_from(j: RegionJson) -> Result<Self, NiceGeometryError> {
        match j {
            RegionJson::Cells { cells } => Ok(Region::from_vertices(cells.into_iter().map(|[a, b]| LatticeCoord::new(a, b)))),
            RegionJson::Procedural { procedural, params, window } => {
                let bad = |e: serde_json::Error| NiceGeometryError::BadParams(format!("{procedural}: {e}"));
                let shape = match procedural.as_str() {
                    "corridor" => {
                        #[derive(Deserialize)]
                        struct P {
                            length: i32,
                            width: i32,
                        }
                        let p: P = serde_json::from_value(params).map_err(bad)?;
                        Shape::Corridor { length: p.length, width: p.width }
                    }
                    "l-shape" => {
                        #[derive(Deserialize)]
                        struct P {
                            arm: i32,
                            width: i32,
                        }
                        let p: P = serde_json::from_value(params).map_err(bad)?;
                        Shape::LShape { arm: p.arm, width: p.width }
                    }
                    "blob-union" => Shape::BlobUnion(serde_json::from_value(params).map_err(bad)?),
                    other => return Err(NiceGeometryError::UnknownShape(other.to_string())),
                };
                let bbox = shape.bounding_box();
                let window = window.map_or(bbox, |w| w.intersect(&bbox));
                Ok(Region::Procedural { shape, window })
            }
        }
    }
}

impl From<Region> for RegionJson {
    fn from(r: Region) -> Self {
        match r {
            Region::Explicit(s) => RegionJson::Cells { cells: s.into_iter().map(|v| [v.a, v.b]).collect() },
            Region::Procedural { shape, window } => {
                let name = shape.name().to_string();
                let params = match shape {
                    Shape::Corridor { length, width } => serde_json::json!({ "length": length, "width": width }),
                    Shape::LShape { arm, width } => serde_json::json!({ "arm": arm, "width": width }),
                    Shape::BlobUnion(u) => serde_json::to_value(u).expect("plain data"),
                };
                RegionJson::Procedural { procedural: name, params, window: Some(window) }
            }
        }
    }
}
