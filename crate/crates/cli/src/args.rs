//! Parsers for point ids, coordinates and tolerance overrides.

use std::collections::BTreeMap;

use aip_core::math::vec2;
use aip_core::{PointFunction, Vec2};
use serde::{Deserialize, Serialize};

/// Wire form of a point function: `{"id": "santalo"}` or
/// `{"id": "capfamily", "eps": 0.01, "delta": 0.0004}`.
#[derive(Serialize, Deserialize)]
pub struct PointJson {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
}

impl PointJson {
    pub fn from_point(pf: &PointFunction) -> PointJson {
        let (eps, delta) = match *pf {
            PointFunction::CapFamily { eps, delta } => (Some(eps), Some(delta)),
            _ => (None, None),
        };
        PointJson {
            id: pf.id().into(),
            eps,
            delta,
        }
    }

    pub fn to_point(&self) -> Result<PointFunction, String> {
        match (self.id.as_str(), self.eps, self.delta) {
            ("capfamily", Some(e), Some(d)) => PointFunction::cap_family(e, d).map_err(|e| e.to_string()),
            ("capfamily", _, _) => Err("capfamily needs eps and delta".into()),
            (id, None, None) => PointFunction::from_id(id).ok_or_else(|| format!("unknown point id {id:?}")),
            (id, _, _) => Err(format!("point id {id:?} takes no parameters")),
        }
    }
}

/// Accepts a name (`santalo`), a one-letter alias (`s`), `capfamily(eps,delta)`
/// or the JSON form.
pub fn point(s: &str) -> Result<PointFunction, String> {
    let s = s.trim();
    if s.starts_with('{') {
        let json: PointJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        return json.to_point();
    }
    if let Some(inner) = s.strip_prefix("capfamily(").and_then(|r| r.strip_suffix(')')) {
        let (e, d) = inner.split_once(',').ok_or("capfamily(eps,delta) needs two values")?;
        let e: f64 = e.trim().parse().map_err(|_| format!("bad eps {e:?}"))?;
        let d: f64 = d.trim().parse().map_err(|_| format!("bad delta {d:?}"))?;
        return PointFunction::cap_family(e, d).map_err(|e| e.to_string());
    }
    let name = match s {
        "g" => "centroid",
        "s" => "santalo",
        "j" => "john",
        "l" => "loewner",
        "m" => "symcore",
        other => other,
    };
    PointFunction::from_id(name).ok_or_else(|| format!("unknown point id {s:?}"))
}

pub fn coords(s: &str) -> Result<Vec2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|_| format!("bad coordinate {x:?}"))?;
    let y: f64 = y.trim().parse().map_err(|_| format!("bad coordinate {y:?}"))?;
    Ok(vec2(x, y))
}

pub fn tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("bad tolerance {v:?}"))?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("tolerance {k} must be positive"));
    }
    Ok((k.trim().to_string(), v))
}

/// Named tolerance overrides, restricted to the checks the tool knows.
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    pub const NAMES: [&'static str; 4] = ["dual", "product", "invariance", "preimage"];

    pub fn new(pairs: &[(String, f64)]) -> Result<Tolerances, String> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if !Tolerances::NAMES.contains(&k.as_str()) {
                return Err(format!("unknown tolerance {k:?}; known: {}", Tolerances::NAMES.join(", ")));
            }
            map.insert(k.clone(), *v);
        }
        Ok(Tolerances(map))
    }

    pub fn get(&self, name: &str, default: f64) -> f64 {
        self.0.get(name).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_forms() {
        assert_eq!(point("s").unwrap(), PointFunction::Santalo);
        assert_eq!(point("loewner").unwrap(), PointFunction::Loewner);
        let c = PointFunction::cap_family(0.01, 0.0004).unwrap();
        assert_eq!(point("capfamily(0.01, 0.0004)").unwrap(), c);
        assert_eq!(point(r#"{"id":"capfamily","eps":0.01,"delta":0.0004}"#).unwrap(), c);
        assert_eq!(point(r#"{"id":"john"}"#).unwrap(), PointFunction::John);
        assert!(point("capfamily").is_err());
        assert!(point("capfamily(0,1)").is_err());
        assert!(point(r#"{"id":"john","eps":1}"#).is_err());
        assert!(point("zonoid").is_err());
    }

    #[test]
    fn tolerance_names_are_checked() {
        let t = Tolerances::new(&[tol("dual=1e-3").unwrap()]).unwrap();
        assert_eq!(t.get("dual", 1.0), 1e-3);
        assert_eq!(t.get("product", 2.0), 2.0);
        assert!(Tolerances::new(&[("typo".into(), 1.0)]).is_err());
        assert!(tol("dual=-1").is_err());
        assert_eq!(coords("-0.5, 2").unwrap(), vec2(-0.5, 2.0));
    }
}
