use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::assembly::{HousesKind, Level, Origin, Patch, SymmetryKind, Tile};
use crate::geom::{Point, Polygon};
use crate::pentagon::{Corner, PentagonSpec};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub n: u32,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub rings: usize,
    pub symmetry_declared: SymmetryKind,
    pub level: Level,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub houses_kind: Option<HousesKind>,
}

/// Angles (degrees) under their corner names `A..E`, sides under `a..e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PentagonFields {
    #[serde(rename = "A")]
    pub angle_a: f64,
    #[serde(rename = "B")]
    pub angle_b: f64,
    #[serde(rename = "C")]
    pub angle_c: f64,
    #[serde(rename = "D")]
    pub angle_d: f64,
    #[serde(rename = "E")]
    pub angle_e: f64,
    #[serde(rename = "a")]
    pub side_a: f64,
    #[serde(rename = "b")]
    pub side_b: f64,
    #[serde(rename = "c")]
    pub side_c: f64,
    #[serde(rename = "d")]
    pub side_d: f64,
    #[serde(rename = "e")]
    pub side_e: f64,
}

impl PentagonFields {
    fn angles(&self) -> [f64; 5] {
        [
            self.angle_a,
            self.angle_b,
            self.angle_c,
            self.angle_d,
            self.angle_e,
        ]
    }

    fn sides(&self) -> [f64; 5] {
        [
            self.side_a,
            self.side_b,
            self.side_c,
            self.side_d,
            self.side_e,
        ]
    }
}

impl From<&PentagonSpec> for PentagonFields {
    fn from(p: &PentagonSpec) -> Self {
        let [angle_a, angle_b, angle_c, angle_d, angle_e] = p.angles;
        let [side_a, side_b, side_c, side_d, side_e] = p.sides;
        PentagonFields {
            angle_a,
            angle_b,
            angle_c,
            angle_d,
            angle_e,
            side_a,
            side_b,
            side_c,
            side_d,
            side_e,
        }
    }
}

impl From<&PentagonFields> for PentagonSpec {
    fn from(f: &PentagonFields) -> Self {
        PentagonSpec {
            angles: f.angles(),
            sides: f.sides(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TileRecord {
    pub id: usize,
    pub level: Level,
    pub ring: usize,
    pub sector: usize,
    pub reflected: bool,
    pub arm: Option<usize>,
    pub vertices: Vec<[f64; 2]>,
}

/// The on-disk form of a patch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatchDocument {
    pub schema_version: String,
    pub config: Config,
    pub pentagon: PentagonFields,
    pub tiles: Vec<TileRecord>,
}

// vertices as parsed: a NaN written by other tools arrives as null
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTile {
    id: usize,
    level: Level,
    ring: usize,
    sector: usize,
    reflected: bool,
    arm: Option<usize>,
    vertices: Vec<Vec<Option<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[allow(dead_code)]
    schema_version: String,
    config: Config,
    pentagon: PentagonFields,
    tiles: Vec<RawTile>,
}

impl PatchDocument {
    pub fn from_patch(patch: &Patch) -> Self {
        let houses_kind = match patch.origin {
            Origin::Houses(k) => Some(k),
            _ => None,
        };
        PatchDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            config: Config {
                n: patch.n,
                c: patch.pentagon.angle(Corner::C),
                d: patch.pentagon.angle(Corner::D),
                rings: patch.rings,
                symmetry_declared: patch.symmetry_declared,
                level: patch.level,
                houses_kind,
            },
            pentagon: PentagonFields::from(&patch.pentagon),
            tiles: patch
                .tiles
                .iter()
                .enumerate()
                .map(|(id, t)| TileRecord {
                    id,
                    level: t.level,
                    ring: t.ring,
                    sector: t.sector,
                    reflected: t.reflected,
                    arm: t.arm,
                    vertices: t.polygon.vertices().iter().map(|p| [p.x, p.y]).collect(),
                })
                .collect(),
        }
    }
}

/// Serializes `patch` as pretty-printed JSON. Floats use the shortest decimal
/// form that reads back to the same double.
pub fn serialize(patch: &Patch) -> Vec<u8> {
    let mut out =
        serde_json::to_vec_pretty(&PatchDocument::from_patch(patch)).expect("documents serialize");
    out.push(b'\n');
    out
}

fn tile_from_raw(k: usize, raw: RawTile, level: Level) -> Result<Tile, SchemaError> {
    let path = |rest: &str| format!("tiles[{k}]{rest}");
    let id = raw.id;
    if raw.level != level {
        return Err(SchemaError::new(
            path(".level"),
            format!("tile id {id} is {} in a {level} document", raw.level),
        ));
    }
    if raw.vertices.len() < 3 {
        return Err(SchemaError::new(
            path(".vertices"),
            format!(
                "tile id {id} has {} vertices, need at least 3",
                raw.vertices.len()
            ),
        ));
    }
    let mut pts = Vec::with_capacity(raw.vertices.len());
    for (j, v) in raw.vertices.iter().enumerate() {
        let here = path(&format!(".vertices[{j}]"));
        match v.as_slice() {
            [Some(x), Some(y)] if x.is_finite() && y.is_finite() => pts.push(Point::new(*x, *y)),
            [_, _] => {
                return Err(SchemaError::new(
                    here,
                    format!("tile id {id} has a non-finite coordinate"),
                ));
            }
            _ => {
                return Err(SchemaError::new(
                    here,
                    format!(
                        "tile id {id}: a vertex is an [x, y] pair, got {} numbers",
                        v.len()
                    ),
                ));
            }
        }
    }
    let polygon = Polygon::try_new(pts)
        .map_err(|e| SchemaError::new(path(".vertices"), format!("tile id {id}: {e}")))?;
    Ok(Tile {
        polygon,
        level,
        ring: raw.ring,
        sector: raw.sector,
        reflected: raw.reflected,
        arm: raw.arm,
        divider: None,
    })
}

/// Reads a document written by [`serialize`]. The schema version is checked
/// before anything else.
pub fn parse(bytes: &[u8]) -> Result<Patch, SchemaError> {
    let value: Value = serde_json::from_slice(bytes)
        .map_err(|e| SchemaError::new("$", format!("malformed JSON: {e}")))?;
    match value.get("schema_version") {
        None => return Err(SchemaError::new("schema_version", "missing field")),
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => {
            return Err(SchemaError::new(
                "schema_version",
                format!("unsupported schema_version {other}, expected \"{SCHEMA_VERSION}\""),
            ));
        }
    }
    let raw: RawDocument = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        SchemaError::new(path, e.into_inner().to_string())
    })?;
    if raw.tiles.is_empty() {
        return Err(SchemaError::new("tiles", "document has no tiles"));
    }
    for (name, x) in [("config.C", raw.config.c), ("config.D", raw.config.d)] {
        if !x.is_finite() {
            return Err(SchemaError::new(name, "non-finite number"));
        }
    }
    let level = raw.config.level;
    let tiles = raw
        .tiles
        .into_iter()
        .enumerate()
        .map(|(k, t)| tile_from_raw(k, t, level))
        .collect::<Result<Vec<_>, _>>()?;
    let origin = match raw.config.houses_kind {
        Some(k) => Origin::Houses(k),
        None => Origin::Rotational,
    };
    Ok(Patch {
        n: raw.config.n,
        symmetry_declared: raw.config.symmetry_declared,
        rings: raw.config.rings,
        pentagon: PentagonSpec::from(&raw.pentagon),
        tiles,
        center: Point::ORIGIN,
        level,
        origin,
    })
}
