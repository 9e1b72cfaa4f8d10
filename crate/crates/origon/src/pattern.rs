//! Crease pattern data model: labeled vertices, segment and ray creases
//! with mountain/valley assignment, and structural validation.

use crate::error::{Error, Result};
use crate::euclid::{distance, Point2, Vec2};
use crate::tol;

/// Fold assignment of a crease.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Assignment {
    Mountain,
    Valley,
    /// Paper boundary.
    Border,
    /// Drawn but not folded.
    Flat,
}

impl Assignment {
    /// Single-letter code used in exports.
    pub fn letter(self) -> &'static str {
        match self {
            Assignment::Mountain => "M",
            Assignment::Valley => "V",
            Assignment::Border => "B",
            Assignment::Flat => "F",
        }
    }
}

/// Which gadget a pattern folds into.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Positive,
    Negative,
    /// Union of a canonical pair; folds either way.
    Hybrid,
}

impl GadgetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GadgetKind::Positive => "positive",
            GadgetKind::Negative => "negative",
            GadgetKind::Hybrid => "hybrid",
        }
    }
}

/// A named point of the pattern.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: String,
    pub at: Point2,
}

/// Shape of a crease: a segment between two vertices, or a ray that
/// leaves the pattern (pleat creases run off to infinity and are
/// truncated only at export time).
#[derive(Copy, Clone, Debug)]
pub enum EdgeShape {
    Segment { from: usize, to: usize },
    Ray { from: usize, dir: Vec2 },
}

/// A crease with its fold assignment and a role label such as `l_L` or
/// `B_L G_L` naming what the crease does in the gadget.
#[derive(Clone, Debug)]
pub struct Edge {
    pub shape: EdgeShape,
    pub assignment: Assignment,
    pub role: String,
}

/// A complete crease pattern for one gadget.
#[derive(Clone, Debug)]
pub struct CreasePattern {
    kind: GadgetKind,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    metadata: Vec<(String, String)>,
}

impl CreasePattern {
    pub fn new(kind: GadgetKind) -> CreasePattern {
        CreasePattern { kind, vertices: Vec::new(), edges: Vec::new(), metadata: Vec::new() }
    }

    pub fn kind(&self) -> GadgetKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Free-form key/value annotations, kept in insertion order.
    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn set_metadata(&mut self, key: &str, value: &str) {
        if let Some(entry) = self.metadata.iter_mut().find(|(k, _)| k == key) {
            entry.1 = value.to_string();
        } else {
            self.metadata.push((key.to_string(), value.to_string()));
        }
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertex_index(id).map(|i| &self.vertices[i])
    }

    /// Adds a vertex and returns its index. Re-adding an existing id is
    /// allowed when the position agrees within tolerance and then returns
    /// the existing index; a conflicting position is an error.
    pub fn add_vertex(&mut self, id: &str, at: Point2) -> Result<usize> {
        if !(at.x.is_finite() && at.y.is_finite()) {
            return Err(Error::InvalidPattern(format!("vertex {id} has non-finite coordinates")));
        }
        if let Some(i) = self.vertex_index(id) {
            if distance(self.vertices[i].at, at) > tol::GEOM {
                return Err(Error::InvalidPattern(format!(
                    "vertex {id} re-added at a conflicting position"
                )));
            }
            return Ok(i);
        }
        self.vertices.push(Vertex { id: id.to_string(), at });
        Ok(self.vertices.len() - 1)
    }

    /// Adds a segment crease between two existing vertices (by id).
    pub fn add_segment(
        &mut self,
        role: &str,
        from: &str,
        to: &str,
        assignment: Assignment,
    ) -> Result<()> {
        let from_ix = self
            .vertex_index(from)
            .ok_or_else(|| Error::InvalidPattern(format!("unknown vertex {from} in {role}")))?;
        let to_ix = self
            .vertex_index(to)
            .ok_or_else(|| Error::InvalidPattern(format!("unknown vertex {to} in {role}")))?;
        if distance(self.vertices[from_ix].at, self.vertices[to_ix].at) <= tol::GEOM {
            return Err(Error::InvalidPattern(format!(
                "crease {role} between {from} and {to} has near-zero length"
            )));
        }
        self.edges.push(Edge {
            shape: EdgeShape::Segment { from: from_ix, to: to_ix },
            assignment,
            role: role.to_string(),
        });
        Ok(())
    }

    /// Adds a ray crease leaving an existing vertex (by id).
    pub fn add_ray(&mut self, role: &str, from: &str, dir: Vec2, assignment: Assignment) -> Result<()> {
        let from_ix = self
            .vertex_index(from)
            .ok_or_else(|| Error::InvalidPattern(format!("unknown vertex {from} in {role}")))?;
        let dir = dir
            .normalized()
            .map_err(|_| Error::InvalidPattern(format!("ray {role} has a near-zero direction")))?;
        self.edges.push(Edge {
            shape: EdgeShape::Ray { from: from_ix, dir },
            assignment,
            role: role.to_string(),
        });
        Ok(())
    }

    /// Endpoint positions of an edge; a ray reports its origin and the
    /// point one unit along.
    pub fn edge_points(&self, edge: &Edge) -> (Point2, Point2) {
        match edge.shape {
            EdgeShape::Segment { from, to } => (self.vertices[from].at, self.vertices[to].at),
            EdgeShape::Ray { from, dir } => {
                let o = self.vertices[from].at;
                (o, o.add(dir))
            }
        }
    }

    /// Structural validation: unique vertex ids, finite coordinates,
    /// in-range indices, no zero-length segments and no duplicated
    /// creases (same unordered endpoints).
    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if !(v.at.x.is_finite() && v.at.y.is_finite()) {
                return Err(Error::InvalidPattern(format!("vertex {} is not finite", v.id)));
            }
            if self.vertices[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::InvalidPattern(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for e in &self.edges {
            match e.shape {
                EdgeShape::Segment { from, to } => {
                    if from >= self.vertices.len() || to >= self.vertices.len() {
                        return Err(Error::InvalidPattern(format!(
                            "crease {} references a missing vertex",
                            e.role
                        )));
                    }
                    if distance(self.vertices[from].at, self.vertices[to].at) <= tol::GEOM {
                        return Err(Error::InvalidPattern(format!(
                            "crease {} has near-zero length",
                            e.role
                        )));
                    }
                    let key = (from.min(to), from.max(to));
                    if seen.contains(&key) {
                        return Err(Error::InvalidPattern(format!(
                            "crease {} duplicates another crease between the same vertices",
                            e.role
                        )));
                    }
                    seen.push(key);
                }
                EdgeShape::Ray { from, dir } => {
                    if from >= self.vertices.len() {
                        return Err(Error::InvalidPattern(format!(
                            "ray {} references a missing vertex",
                            e.role
                        )));
                    }
                    if (dir.norm() - 1.0).abs() > tol::GEOM {
                        return Err(Error::InvalidPattern(format!(
                            "ray {} direction is not unit length",
                            e.role
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
