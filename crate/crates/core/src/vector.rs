//! Line features as a GeoJSON-style feature collection of LineStrings.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::morphology::RidgeSet;
use crate::rope::LineNetwork;

#[derive(Debug, Clone, PartialEq)]
pub struct LineFeature {
    pub coords: Vec<Point>,
    pub properties: Map<String, Value>,
}

fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn export_lines(features: &[LineFeature]) -> String {
    let feats: Vec<Value> = features
        .iter()
        .map(|f| {
            let coords: Vec<Value> = f
                .coords
                .iter()
                .map(|p| json!([round6(p.x), round6(p.y)]))
                .collect();
            json!({
                "type": "Feature",
                "geometry": { "type": "LineString", "coordinates": coords },
                "properties": Value::Object(f.properties.clone()),
            })
        })
        .collect();
    let doc = json!({ "type": "FeatureCollection", "features": feats });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

pub fn parse_lines(text: &str) -> Result<Vec<LineFeature>> {
    let bad = |m: &str| Error::Parse(format!("line file: {m}"));
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let feats = doc
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing features"))?;
    feats
        .iter()
        .map(|f| {
            let coords = f
                .pointer("/geometry/coordinates")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("feature without coordinates"))?
                .iter()
                .map(|c| {
                    match (
                        c.get(0).and_then(Value::as_f64),
                        c.get(1).and_then(Value::as_f64),
                    ) {
                        (Some(x), Some(y)) => Ok(Point::new(x, y)),
                        _ => Err(bad("bad coordinate")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let properties = f
                .get("properties")
                .and_then(Value::as_object)
                .cloned()
                .unwrap_or_default();
            Ok(LineFeature { coords, properties })
        })
        .collect()
}

/// One feature per line of longest depth.
pub fn network_features(net: &LineNetwork) -> Vec<LineFeature> {
    net.lines
        .iter()
        .map(|l| {
            let mut props = Map::new();
            props.insert("rank".into(), json!(l.rank));
            props.insert("mdl".into(), json!(round6(l.mdl)));
            props.insert("generator_x".into(), json!(round6(l.generator.x)));
            props.insert("generator_y".into(), json!(round6(l.generator.y)));
            LineFeature {
                coords: vec![l.chord.0, l.chord.1],
                properties: props,
            }
        })
        .collect()
}

/// One feature per ridge polyline.
pub fn ridge_features(set: &RidgeSet) -> Vec<LineFeature> {
    let kind = if set.skeleton { "skeleton" } else { "ridge" };
    (0..set.polylines.len())
        .map(|k| {
            let chain = &set.polylines[k];
            let mut props = Map::new();
            props.insert("id".into(), json!(k + 1));
            props.insert("kind".into(), json!(kind));
            props.insert("nodes".into(), json!(chain.len()));
            props.insert("mean_value".into(), json!(round6(set.mean_value(k))));
            props.insert("orientation".into(), json!(round6(set.orientation(k))));
            LineFeature {
                coords: chain.iter().map(|&i| set.grid().position_of(i)).collect(),
                properties: props,
            }
        })
        .collect()
}
