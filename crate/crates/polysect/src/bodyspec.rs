//! Body-spec JSON: `{"kind": "ball" | "ellipsoid" | "polytope" | "cap", …}`.
//!
//! Numbers may be JSON numbers or strings; strings are read exactly
//! (`"1/3"`, `"0.1"`). Polytopes come from an `off` file (relative to the
//! spec file) or an inline `vertices` list. A cap names the facet by its
//! outward normal direction.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use polysect_core::body::{glue_cap, make_ball, make_ellipsoid, wrap_polytope, Body};
use polysect_core::geometry::{Scalar, Vector};
use polysect_core::polytope::{convex_hull, Polytope};
use serde::Deserialize;

use crate::off::load_polytope;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    pub fn exact(&self) -> anyhow::Result<Scalar> {
        match self {
            Num::Int(v) => Ok(Scalar::from_int(*v)),
            Num::Float(v) => Scalar::from_f64_exact(*v).ok_or_else(|| anyhow!("non-finite number")),
            Num::Text(s) => s.parse().map_err(|_| anyhow!("bad number {s:?}")),
        }
    }

    pub fn float(&self) -> anyhow::Result<f64> {
        match self {
            Num::Float(v) => Ok(*v),
            _ => Ok(self.exact()?.to_f64()),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Ball {
        center: Vec<Num>,
        radius: Num,
    },
    Ellipsoid {
        center: Vec<Num>,
        axes: Vec<Num>,
    },
    Polytope {
        #[serde(default)]
        off: Option<String>,
        #[serde(default)]
        vertices: Option<Vec<Vec<Num>>>,
    },
    Cap {
        #[serde(default)]
        off: Option<String>,
        #[serde(default)]
        vertices: Option<Vec<Vec<Num>>>,
        facet: Vec<Num>,
        height: Num,
    },
}

/// A body ready for the testers.
pub struct LoadedBody {
    pub body: Body,
    /// The exact polytope (for caps, the polytope the cap sits on).
    pub polytope: Option<Polytope>,
    pub warnings: Vec<String>,
}

fn floats(v: &[Num]) -> anyhow::Result<Vec<f64>> {
    v.iter().map(Num::float).collect()
}

fn exact_vec(v: &[Num]) -> anyhow::Result<Vector> {
    Ok(Vector::new(v.iter().map(Num::exact).collect::<anyhow::Result<_>>()?))
}

fn polytope_from(off: &Option<String>, vertices: &Option<Vec<Vec<Num>>>, dir: &Path, warnings: &mut Vec<String>) -> anyhow::Result<Polytope> {
    match (off, vertices) {
        (Some(path), None) => load_off_file(&dir.join(path), warnings),
        (None, Some(vs)) => {
            let pts: Vec<Vector> = vs.iter().map(|v| exact_vec(v)).collect::<anyhow::Result<_>>()?;
            Ok(convex_hull(&pts)?)
        }
        _ => bail!("a polytope needs exactly one of `off` and `vertices`"),
    }
}

pub fn load_off_file(path: &Path, warnings: &mut Vec<String>) -> anyhow::Result<Polytope> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let loaded = load_polytope(&text).with_context(|| format!("parsing {}", path.display()))?;
    if loaded.dropped > 0 {
        warnings.push(format!("non-convex input: {} points are not hull vertices and were dropped", loaded.dropped));
    }
    Ok(loaded.polytope)
}

impl BodySpec {
    /// Builds the body; relative OFF paths resolve against `dir`.
    pub fn build(&self, dir: &Path) -> anyhow::Result<LoadedBody> {
        let mut warnings = Vec::new();
        let (body, polytope) = match self {
            BodySpec::Ball { center, radius } => (make_ball(floats(center)?, radius.float()?)?, None),
            BodySpec::Ellipsoid { center, axes } => (make_ellipsoid(floats(center)?, floats(axes)?)?, None),
            BodySpec::Polytope { off, vertices } => {
                let p = polytope_from(off, vertices, dir, &mut warnings)?;
                (wrap_polytope(&p)?, Some(p))
            }
            BodySpec::Cap { off, vertices, facet, height } => {
                let p = polytope_from(off, vertices, dir, &mut warnings)?;
                let n = exact_vec(facet)?;
                let i = p
                    .facets()
                    .iter()
                    .position(|f| parallel(f.normal(), &n))
                    .ok_or_else(|| anyhow!("no facet has outward normal along {n}"))?;
                let face = p.facet_face(i);
                (glue_cap(&p, &face, height.float()?)?, Some(p))
            }
        };
        Ok(LoadedBody { body, polytope, warnings })
    }
}

fn parallel(a: &Vector, b: &Vector) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let ab = a.dot(b);
    ab.is_positive() && ab.square() == a.norm_sq() * b.norm_sq()
}

/// `--body` argument: an `.off` path, a JSON spec path, or inline JSON.
pub fn load_body(arg: &str) -> anyhow::Result<LoadedBody> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        let spec: BodySpec = serde_json::from_str(arg).context("parsing inline body spec")?;
        return spec.build(Path::new("."));
    }
    let path = PathBuf::from(arg);
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("off")) {
        let mut warnings = Vec::new();
        let p = load_off_file(&path, &mut warnings)?;
        return Ok(LoadedBody {
            body: wrap_polytope(&p)?,
            polytope: Some(p),
            warnings,
        });
    }
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let spec: BodySpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    spec.build(&dir)
}
