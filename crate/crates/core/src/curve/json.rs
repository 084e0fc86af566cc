use serde::{Deserialize, Serialize};

use super::{Edge, Ray, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, PrimitiveVector, RationalPoint};

/// On-disk curve format. Rationals are strings `"p/q"` or `"p"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub vertices: Vec<[String; 2]>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub rays: Vec<RayJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub v: [usize; 2],
    pub w: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayJson {
    pub v: usize,
    pub dir: [i64; 2],
    pub w: u64,
}

impl From<&TropicalCurve> for CurveFile {
    fn from(c: &TropicalCurve) -> Self {
        CurveFile {
            vertices: c.vertices().iter().map(|p| [format_rational(&p.x), format_rational(&p.y)]).collect(),
            edges: c.edges().iter().map(|e| EdgeJson { v: e.ends, w: e.weight }).collect(),
            rays: c
                .rays()
                .iter()
                .map(|r| RayJson { v: r.vertex, dir: [r.direction.x(), r.direction.y()], w: r.weight })
                .collect(),
        }
    }
}

impl TryFrom<&CurveFile> for TropicalCurve {
    type Error = Error;

    fn try_from(f: &CurveFile) -> Result<Self> {
        let vertices = f
            .vertices
            .iter()
            .enumerate()
            .map(|(i, [x, y])| {
                let x = parse_rational(x).map_err(|_| Error::Structure(format!("vertices[{i}][0]: bad rational {x:?}")))?;
                let y = parse_rational(y).map_err(|_| Error::Structure(format!("vertices[{i}][1]: bad rational {y:?}")))?;
                Ok(RationalPoint::new(x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = f.edges.iter().map(|e| Edge { ends: e.v, weight: e.w }).collect();
        let rays = f
            .rays
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let direction = PrimitiveVector::new(r.dir[0], r.dir[1])
                    .map_err(|e| Error::Structure(format!("rays[{i}].dir: {e}")))?;
                Ok(Ray { vertex: r.v, direction, weight: r.w })
            })
            .collect::<Result<Vec<_>>>()?;
        TropicalCurve::new(vertices, edges, rays)
    }
}

impl TropicalCurve {
    /// Pretty-printed JSON in the curve file format; byte-stable.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CurveFile::from(self)).expect("curve files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| Error::Structure(e.to_string()))?;
        TropicalCurve::try_from(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn line_file_format() {
        let json = fixtures::tropical_line().to_json();
        let compact: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            compact,
            serde_json::json!({
                "vertices": [["0", "0"]],
                "edges": [],
                "rays": [
                    {"v": 0, "dir": [-1, 0], "w": 1},
                    {"v": 0, "dir": [0, -1], "w": 1},
                    {"v": 0, "dir": [1, 1], "w": 1}
                ]
            })
        );
    }

    #[test]
    fn byte_stable_round_trip() {
        for c in fixtures::all() {
            let text = c.1.to_json();
            let back = TropicalCurve::from_json(&text).unwrap();
            assert_eq!(back, c.1);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn schema_errors_name_the_field() {
        let err = TropicalCurve::from_json(r#"{"vertices": [["0","x"]], "rays": []}"#).unwrap_err();
        assert!(err.to_string().contains("vertices[0][1]"), "{err}");
        let err = TropicalCurve::from_json(r#"{"vertices": [["0","0"]], "rays": [{"v":0,"dir":[2,0],"w":1}]}"#).unwrap_err();
        assert!(err.to_string().contains("rays[0].dir"), "{err}");
        let err = TropicalCurve::from_json(r#"{"vertices": [["0","0"]], "rayz": []}"#).unwrap_err();
        assert!(err.to_string().contains("rayz"), "{err}");
    }
}
