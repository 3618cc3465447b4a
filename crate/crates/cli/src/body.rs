//! Body specifications (`--body`) and the body JSON format.

use std::fmt;
use std::str::FromStr;

use aip_core::counterexample::{b_eta, body_kab};
use aip_core::geometry::{cross_polytope, regular_polygon, standard_simplex, unit_square};
use aip_core::math::vec2;
use aip_core::random::{random_hull, rng};
use aip_core::{AffineMap, Mat2, Polygon, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub enum BodyKind {
    Square,
    Cross,
    Ngon(usize),
    Simplex,
    Kab(f64, f64),
    Beta(f64),
    Random { k: usize, seed: u64 },
    File(String),
}

/// A generator plus an optional affine map applied to its output.
#[derive(Clone, Debug, PartialEq)]
pub struct BodySpec {
    pub kind: BodyKind,
    pub post_map: Option<AffineMap>,
}

#[derive(Debug)]
pub enum BodyError {
    Parse(String),
    BadParams(String),
    Io(String),
}

impl fmt::Display for BodyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyError::Parse(s) => write!(f, "parse error: {s}"),
            BodyError::BadParams(s) => write!(f, "bad parameters: {s}"),
            BodyError::Io(s) => write!(f, "io error: {s}"),
        }
    }
}

impl std::error::Error for BodyError {}

fn args<T: FromStr>(name: &str, inner: &str, n: usize) -> Result<Vec<T>, BodyError> {
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(BodyError::Parse(format!("{name} takes {n} argument(s), got {}", parts.len())));
    }
    parts
        .iter()
        .map(|s| s.parse().map_err(|_| BodyError::Parse(format!("{name}: cannot parse {s:?}"))))
        .collect()
}

impl FromStr for BodyKind {
    type Err = BodyError;

    fn from_str(s: &str) -> Result<BodyKind, BodyError> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(BodyKind::File(path.to_string()));
        }
        let (name, inner) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(BodyError::Parse(format!("unbalanced parentheses in {s:?}"))),
            None => (s, None),
        };
        let kind = match (name, inner) {
            ("square", None) => BodyKind::Square,
            ("cross", None) => BodyKind::Cross,
            ("simplex", None) => BodyKind::Simplex,
            ("ngon", Some(a)) => BodyKind::Ngon(args(name, a, 1)?[0]),
            ("kab", Some(a)) => {
                let v: Vec<f64> = args(name, a, 2)?;
                BodyKind::Kab(v[0], v[1])
            }
            ("beta", Some(a)) => BodyKind::Beta(args(name, a, 1)?[0]),
            ("random", Some(a)) => {
                let v: Vec<u64> = args(name, a, 2)?;
                BodyKind::Random {
                    k: v[0] as usize,
                    seed: v[1],
                }
            }
            _ => return Err(BodyError::Parse(format!("unknown body {s:?}"))),
        };
        Ok(kind)
    }
}

/// Parses `a,b,c,d,tx,ty` as `x ↦ [[a, b], [c, d]]·x + (tx, ty)`.
pub fn parse_map(s: &str) -> Result<AffineMap, BodyError> {
    let v: Vec<f64> = args("map", s, 6)?;
    AffineMap::new(Mat2::new(v[0], v[1], v[2], v[3]), vec2(v[4], v[5]))
        .map_err(|e| BodyError::BadParams(format!("map: {e}")))
}

impl BodySpec {
    pub fn parse(body: &str, map: Option<&str>) -> Result<BodySpec, BodyError> {
        Ok(BodySpec {
            kind: body.parse()?,
            post_map: map.map(parse_map).transpose()?,
        })
    }

    pub fn generate(&self) -> Result<Polygon, BodyError> {
        let bad = |e: aip_core::Error| BodyError::BadParams(e.to_string());
        let p = match &self.kind {
            BodyKind::Square => unit_square(),
            BodyKind::Cross => cross_polytope(),
            BodyKind::Simplex => standard_simplex(),
            BodyKind::Ngon(m) => regular_polygon(*m).map_err(bad)?,
            BodyKind::Kab(a, b) => body_kab(*a, *b).map_err(bad)?,
            BodyKind::Beta(eta) => b_eta(*eta).map_err(bad)?,
            BodyKind::Random { k, seed } => {
                if *k < 3 {
                    return Err(BodyError::BadParams("random needs at least 3 points".into()));
                }
                random_hull(&mut rng(*seed), *k)
            }
            BodyKind::File(path) => read_body(path)?,
        };
        Ok(match &self.post_map {
            Some(t) => t.apply_polygon(&p),
            None => p,
        })
    }
}

#[derive(Serialize, Deserialize)]
pub struct BodyJson {
    pub dim: u32,
    pub kind: String,
    pub vertices: Vec<[f64; 2]>,
}

impl BodyJson {
    pub fn from_polygon(p: &Polygon) -> BodyJson {
        BodyJson {
            dim: 2,
            kind: "polygon".into(),
            vertices: points(p.vertices()),
        }
    }

    pub fn to_polygon(&self) -> Result<Polygon, BodyError> {
        if self.dim != 2 || self.kind != "polygon" {
            return Err(BodyError::Parse(format!(
                "expected a 2-dimensional polygon, got dim {} kind {:?}",
                self.dim, self.kind
            )));
        }
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| vec2(v[0], v[1])).collect();
        Polygon::new(&pts).map_err(|e| BodyError::BadParams(e.to_string()))
    }
}

pub fn points(v: &[Vec2]) -> Vec<[f64; 2]> {
    v.iter().map(|p| [p.x, p.y]).collect()
}

pub fn read_body(path: &str) -> Result<Polygon, BodyError> {
    let text = std::fs::read_to_string(path).map_err(|e| BodyError::Io(format!("{path}: {e}")))?;
    let json: BodyJson = serde_json::from_str(&text).map_err(|e| BodyError::Parse(format!("{path}: {e}")))?;
    json.to_polygon()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!("square".parse::<BodyKind>().unwrap(), BodyKind::Square);
        assert_eq!("ngon(512)".parse::<BodyKind>().unwrap(), BodyKind::Ngon(512));
        assert_eq!("kab(1, 2)".parse::<BodyKind>().unwrap(), BodyKind::Kab(1.0, 2.0));
        assert_eq!("beta(0.5)".parse::<BodyKind>().unwrap(), BodyKind::Beta(0.5));
        assert_eq!(
            "random(12,7)".parse::<BodyKind>().unwrap(),
            BodyKind::Random { k: 12, seed: 7 }
        );
        assert_eq!("file:a/b.json".parse::<BodyKind>().unwrap(), BodyKind::File("a/b.json".into()));
        for bad in ["ngon", "ngon(x)", "kab(1)", "blob", "square(1", "random(1,2,3)"] {
            assert!(bad.parse::<BodyKind>().is_err(), "{bad}");
        }
    }

    #[test]
    fn generators() {
        let sq = BodySpec::parse("square", None).unwrap().generate().unwrap();
        assert_eq!(sq.area(), 4.0);
        let n = BodySpec::parse("ngon(512)", None).unwrap().generate().unwrap();
        assert_eq!(n.len(), 512);
        assert!(n.vertices().iter().all(|v| (v.norm() - 1.0).abs() < 1e-15));
        let r1 = BodySpec::parse("random(12,7)", None).unwrap().generate().unwrap();
        let r2 = BodySpec::parse("random(12,7)", None).unwrap().generate().unwrap();
        assert_eq!(r1, r2);
        assert!(BodySpec::parse("ngon(2)", None).unwrap().generate().is_err());
        assert!(BodySpec::parse("random(2,1)", None).unwrap().generate().is_err());
    }

    #[test]
    fn post_map_is_applied() {
        let p = BodySpec::parse("square", Some("2,0,0,1,1,0")).unwrap().generate().unwrap();
        assert_eq!(p.area(), 8.0);
        assert_eq!(p.centroid(), vec2(1.0, 0.0));
        assert!(parse_map("0,0,0,0,0,0").is_err());
    }

    #[test]
    fn body_json_round_trip() {
        let p = BodySpec::parse("random(9,3)", None).unwrap().generate().unwrap();
        let text = serde_json::to_string(&BodyJson::from_polygon(&p)).unwrap();
        let back: BodyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polygon().unwrap(), p);
        let clockwise = r#"{"dim":2,"kind":"polygon","vertices":[[0,0],[0,1],[1,1],[1,0]]}"#;
        let q: BodyJson = serde_json::from_str(clockwise).unwrap();
        assert_eq!(q.to_polygon().unwrap().area(), 1.0);
    }
}
