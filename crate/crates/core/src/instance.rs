//! Problem instances, solutions and their JSON forms.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::matroid::MatroidSpec;
use crate::scalar::{format_rational, parse_rational, ExactField, Rational};

/// Matroid Center on the real line: sorted points plus a matroid over their indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInstance<T> {
    points: Vec<T>,
    matroid: MatroidSpec,
}

impl<T: ExactField> LineInstance<T> {
    pub fn new(points: Vec<T>, matroid: MatroidSpec) -> Result<Self> {
        if points.is_empty() {
            return Err(input("line instance needs at least one point"));
        }
        if points.windows(2).any(|w| w[0] > w[1]) {
            return Err(input("line points must be sorted in non-decreasing order"));
        }
        matroid.validate(points.len())?;
        Ok(LineInstance { points, matroid })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn matroid(&self) -> &MatroidSpec {
        &self.matroid
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Robust Euclidean k-Supplier: open at most `k` facilities so that at least
/// `p` clients lie within the radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupplierInstance<T> {
    dim: usize,
    clients: Vec<Vec<T>>,
    facilities: Vec<Vec<T>>,
    k: usize,
    p: usize,
}

impl<T: ExactField> SupplierInstance<T> {
    pub fn new(
        dim: usize,
        clients: Vec<Vec<T>>,
        facilities: Vec<Vec<T>>,
        k: usize,
        p: usize,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(input("dimension must be positive"));
        }
        if clients.is_empty() || facilities.is_empty() {
            return Err(input("need at least one client and one facility"));
        }
        if let Some(bad) = clients.iter().chain(&facilities).find(|v| v.len() != dim) {
            return Err(input(format!(
                "vector of length {} in a {dim}-dimensional instance",
                bad.len()
            )));
        }
        if p > clients.len() {
            return Err(input(format!(
                "p = {p} exceeds the {} clients",
                clients.len()
            )));
        }
        Ok(SupplierInstance {
            dim,
            clients,
            facilities,
            k,
            p,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clients(&self) -> &[Vec<T>] {
        &self.clients
    }

    pub fn facilities(&self) -> &[Vec<T>] {
        &self.facilities
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

/// Output of every solver.
///
/// `centers` index the points (line) or facilities (supplier). `covered` lists
/// the clients the radius is measured over: all points for line and k-center
/// style problems, the served clients for the robust supplier problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<T> {
    pub centers: Vec<usize>,
    pub achieved_sq_radius: T,
    pub covered: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineJson {
    points: Vec<String>,
    matroid: MatroidSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupplierJson {
    dim: usize,
    clients: Vec<Vec<String>>,
    facilities: Vec<Vec<String>>,
    k: usize,
    p: usize,
}

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

fn format_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

impl LineInstance<Rational> {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: LineJson = serde_json::from_str(text).map_err(|e| input(e.to_string()))?;
        LineInstance::new(parse_all(&raw.points)?, raw.matroid)
    }

    pub fn to_json(&self) -> String {
        let raw = LineJson {
            points: format_all(&self.points),
            matroid: self.matroid.clone(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

impl SupplierInstance<Rational> {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SupplierJson = serde_json::from_str(text).map_err(|e| input(e.to_string()))?;
        let clients = raw
            .clients
            .iter()
            .map(|v| parse_all(v))
            .collect::<Result<_>>()?;
        let facilities = raw
            .facilities
            .iter()
            .map(|v| parse_all(v))
            .collect::<Result<_>>()?;
        SupplierInstance::new(raw.dim, clients, facilities, raw.k, raw.p)
    }

    pub fn to_json(&self) -> String {
        let raw = SupplierJson {
            dim: self.dim,
            clients: self.clients.iter().map(|v| format_all(v)).collect(),
            facilities: self.facilities.iter().map(|v| format_all(v)).collect(),
            k: self.k,
            p: self.p,
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

/// An instance file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyInstance {
    Line(LineInstance<Rational>),
    Supplier(SupplierInstance<Rational>),
}

impl AnyInstance {
    /// Dispatches on the top-level keys: `points` means line, `clients` supplier.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| input(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| input("instance must be a JSON object"))?;
        if obj.contains_key("points") {
            LineInstance::from_json(text).map(AnyInstance::Line)
        } else if obj.contains_key("clients") {
            SupplierInstance::from_json(text).map(AnyInstance::Supplier)
        } else {
            Err(input("instance has neither \"points\" nor \"clients\""))
        }
    }
}
