//! JSON documents and OBJ export.
//!
//! Every document is an envelope
//! `{"format_version": "1", "kind": ..., "payload": ..., "provenance": {...}}`.
//! Matrices are row-major `[[f64; 3]; 3]`, vectors are `{"t", "x", "y"}` objects.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::flatsurf::ConeSurface;
use crate::holonomy::AffineRepresentation;
use crate::hull::HullSurface;
use crate::suspension::SuspendedSpacetime;
use crate::tol::EPS_SCHEMA;

pub const FORMAT_VERSION: &str = "1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayloadKind {
    Representation,
    Decoration,
    ConeSurface,
    Hull,
    SuspendedSpacetime,
    Report,
}

impl PayloadKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PayloadKind::Representation => "representation",
            PayloadKind::Decoration => "decoration",
            PayloadKind::ConeSurface => "cone_surface",
            PayloadKind::Hull => "hull",
            PayloadKind::SuspendedSpacetime => "suspended_spacetime",
            PayloadKind::Report => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: BTreeMap::new(),
        }
    }
}

impl Provenance {
    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Representation(AffineRepresentation),
    Decoration(Decoration),
    ConeSurface(ConeSurface),
    Hull(Box<HullSurface>),
    SuspendedSpacetime(Box<SuspendedSpacetime>),
    /// Free-form results such as admissibility reports.
    Report(Value),
}

impl Payload {
    pub fn kind(&self) -> PayloadKind {
        match self {
            Payload::Representation(_) => PayloadKind::Representation,
            Payload::Decoration(_) => PayloadKind::Decoration,
            Payload::ConeSurface(_) => PayloadKind::ConeSurface,
            Payload::Hull(_) => PayloadKind::Hull,
            Payload::SuspendedSpacetime(_) => PayloadKind::SuspendedSpacetime,
            Payload::Report(_) => PayloadKind::Report,
        }
    }

    fn to_value(&self) -> Value {
        let v = match self {
            Payload::Representation(x) => serde_json::to_value(x),
            Payload::Decoration(x) => serde_json::to_value(x),
            Payload::ConeSurface(x) => serde_json::to_value(x),
            Payload::Hull(x) => serde_json::to_value(x),
            Payload::SuspendedSpacetime(x) => serde_json::to_value(x),
            Payload::Report(x) => Ok(x.clone()),
        };
        v.expect("payload types serialize to JSON")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DocumentEnvelope {
    pub format_version: String,
    pub payload: Payload,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct RawEnvelope<'a> {
    format_version: &'a str,
    kind: PayloadKind,
    payload: Value,
    provenance: &'a Provenance,
}

impl DocumentEnvelope {
    pub fn new(payload: Payload) -> Self {
        DocumentEnvelope { format_version: FORMAT_VERSION.to_string(), payload, provenance: Provenance::default() }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn kind(&self) -> PayloadKind {
        self.payload.kind()
    }

    pub fn to_json(&self) -> String {
        let raw = RawEnvelope {
            format_version: &self.format_version,
            kind: self.kind(),
            payload: self.payload.to_value(),
            provenance: &self.provenance,
        };
        serde_json::to_string_pretty(&raw).expect("envelope serializes")
    }
}

fn parse_error(e: &serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::from("/payload");
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => write!(out, "/{index}"),
            Segment::Map { key } => write!(out, "/{}", key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => write!(out, "/{variant}"),
            Segment::Unknown => Ok(()),
        }
        .expect("write to string");
    }
    out
}

fn typed<T: serde::de::DeserializeOwned>(payload: Value) -> Result<T> {
    serde_path_to_error::deserialize(payload).map_err(|e| Error::Schema {
        pointer: pointer_of(e.path()),
        message: e.inner().to_string(),
    })
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), message: message.into() }
}

fn validate_representation(rep: &AffineRepresentation) -> Result<()> {
    use crate::holonomy::{MarkedGroupPresentation, Presentation};
    let rank = rep.presentation.rank();
    match &rep.presentation {
        Presentation::Surface(p) => {
            MarkedGroupPresentation::new(p.genus, p.punctures)
                .map_err(|e| schema("/payload/presentation", e.to_string()))?;
        }
        Presentation::Free { peripherals, .. } => {
            for (j, w) in peripherals.iter().enumerate() {
                if w.0.iter().any(|l| l.gen >= rank) {
                    return Err(schema(
                        format!("/payload/presentation/peripherals/{j}"),
                        format!("peripheral word uses a generator outside 0..{rank}"),
                    ));
                }
            }
        }
    }
    if rep.images.len() != rank {
        return Err(schema("/payload/images", format!("expected {rank} generator images, found {}", rep.images.len())));
    }
    let labels = rep.labels();
    for (i, phi) in rep.images.iter().enumerate() {
        let finite = phi.linear.matrix().iter().all(|x| x.is_finite()) && phi.translation.to_array().iter().all(|x| x.is_finite());
        if !finite {
            return Err(schema(format!("/payload/images/{i}"), format!("generator {} has non-finite entries", labels[i])));
        }
        let defect = phi.linear.form_residual();
        if defect > EPS_SCHEMA {
            return Err(schema(
                format!("/payload/images/{i}/linear"),
                format!("generator {} violates m^T J m = J (defect {defect:e})", labels[i]),
            ));
        }
        let m = phi.linear.matrix();
        if m.determinant() < 0.0 || m[(0, 0)] < 0.0 {
            return Err(schema(
                format!("/payload/images/{i}/linear"),
                format!("generator {} is not orientation and time-orientation preserving", labels[i]),
            ));
        }
    }
    Ok(())
}

fn validate_payload(kind: PayloadKind, payload: Value) -> Result<Payload> {
    Ok(match kind {
        PayloadKind::Representation => {
            let rep: AffineRepresentation = typed(payload)?;
            validate_representation(&rep)?;
            Payload::Representation(rep)
        }
        PayloadKind::Decoration => {
            let d: Decoration = typed(payload)?;
            for (i, p) in d.points.iter().enumerate() {
                if !p.to_array().iter().all(|x| x.is_finite()) {
                    return Err(schema(format!("/payload/points/{i}"), "non-finite coordinate"));
                }
            }
            Payload::Decoration(d)
        }
        PayloadKind::ConeSurface => {
            let s: ConeSurface = typed(payload)?;
            let s = ConeSurface::new(s.triangles, s.gluing).map_err(|e| schema("/payload", e.to_string()))?;
            Payload::ConeSurface(s)
        }
        PayloadKind::Hull => Payload::Hull(Box::new(typed(payload)?)),
        PayloadKind::SuspendedSpacetime => {
            let st: SuspendedSpacetime = typed(payload)?;
            validate_representation(&st.representation).map_err(|e| match e {
                Error::Schema { pointer, message } => {
                    schema(pointer.replacen("/payload", "/payload/representation", 1), message)
                }
                e => e,
            })?;
            Payload::SuspendedSpacetime(Box::new(st))
        }
        PayloadKind::Report => Payload::Report(payload),
    })
}

/// Parses and validates a document from a string.
pub fn parse_document(text: &str) -> Result<DocumentEnvelope> {
    let mut root: Value = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    let obj = root.as_object_mut().ok_or_else(|| schema("", "document must be a JSON object"))?;
    let version = match obj.remove("format_version") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(schema("/format_version", "must be a string")),
        None => return Err(schema("/format_version", "missing")),
    };
    if version != FORMAT_VERSION {
        return Err(Error::Version(version));
    }
    let kind: PayloadKind = match obj.remove("kind") {
        Some(k) => serde_json::from_value(k).map_err(|e| schema("/kind", e.to_string()))?,
        None => return Err(schema("/kind", "missing")),
    };
    let provenance: Provenance = match obj.remove("provenance") {
        Some(p) => serde_json::from_value(p).map_err(|e| schema("/provenance", e.to_string()))?,
        None => Provenance::default(),
    };
    let payload = obj.remove("payload").ok_or_else(|| schema("/payload", "missing"))?;
    if let Some(extra) = obj.keys().next() {
        return Err(schema(format!("/{extra}"), "unknown field"));
    }
    Ok(DocumentEnvelope { format_version: version, payload: validate_payload(kind, payload)?, provenance })
}

/// Reads a document from any byte stream.
pub fn read_document_from(mut r: impl std::io::Read) -> Result<DocumentEnvelope> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    parse_document(&text)
}

pub fn read_document(path: impl AsRef<Path>) -> Result<DocumentEnvelope> {
    let text = std::fs::read_to_string(path)?;
    parse_document(&text)
}

pub fn write_document(doc: &DocumentEnvelope, path: impl AsRef<Path>) -> Result<()> {
    let mut text = doc.to_json();
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Wavefront OBJ text for the facet complex of `h`.
///
/// Convention: OBJ `(X, Y, Z) = (x, t, y)`, so time points up. Vertices are the
/// orbit points used by some facet, in increasing orbit index, numbered from 1.
/// Faces follow `h.facets` in order; each is counterclockwise seen from the
/// future (`+Y`), so normals point toward increasing `t`.
pub fn obj_string(h: &HullSurface) -> String {
    let mut used: Vec<usize> = h.facets.iter().flat_map(|f| f.vertices.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &v)| (v, k + 1)).collect();
    let mut out = String::new();
    writeln!(out, "# penner-hull facet complex: {} vertices, {} faces", used.len(), h.facets.len()).expect("write");
    for &v in &used {
        let p = h.orbit.entries[v].point;
        writeln!(out, "v {} {} {}", p.x, p.t, p.y).expect("write");
    }
    for f in &h.facets {
        out.push('f');
        for v in f.vertices.iter().rev() {
            write!(out, " {}", index[v]).expect("write");
        }
        out.push('\n');
    }
    out
}

pub fn write_obj(h: &HullSurface, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, obj_string(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn representation_round_trip() {
        let doc = DocumentEnvelope::new(Payload::Representation(fixtures::torus_affine_rep()))
            .with_provenance(Provenance::default().with("seed", 7));
        let back = parse_document(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn truncated_is_parse_error() {
        let text = DocumentEnvelope::new(Payload::ConeSurface(fixtures::pillowcase())).to_json();
        let cut = &text[..text.len() / 2];
        assert!(matches!(parse_document(cut), Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_version() {
        let text = r#"{"format_version": "9", "kind": "report", "payload": {}}"#;
        assert_eq!(parse_document(text), Err(Error::Version("9".into())));
    }

    #[test]
    fn bad_generator_is_named() {
        let mut rep = fixtures::torus_rep();
        let mut rows = rep.images[1].linear.rows();
        rows[0][0] += 1e-3;
        rep.images[1].linear = rows.into();
        let text = DocumentEnvelope::new(Payload::Representation(rep)).to_json();
        match parse_document(&text) {
            Err(Error::Schema { pointer, message }) => {
                assert_eq!(pointer, "/payload/images/1/linear");
                assert!(message.contains("b1"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn type_error_has_pointer() {
        let text = r#"{"format_version": "1", "kind": "decoration", "payload": {"points": [{"t": 1, "x": "a", "y": 0}]}}"#;
        match parse_document(text) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/payload/points/0/x"),
            other => panic!("{other:?}"),
        }
    }
}
