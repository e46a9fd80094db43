//! OFF-like polytope files.
//!
//! Accepted layout: an optional header (`OFF`, `4OFF`, or `nOFF` followed
//! by the dimension), a count line `nv [nf [ne]]`, `nv` vertex lines and
//! `nf` face lines `k i₁ … i_k`. Coordinates may be integers, decimals or
//! `a/b` fractions and are read exactly. `#` starts a comment.

use std::cmp::Ordering;

use polysect_core::geometry::{Point, Scalar, Vector};
use polysect_core::polytope::{convex_hull, Polytope, PolytopeError};

#[derive(Debug, thiserror::Error)]
pub enum OffError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("file ends before {0}")]
    Truncated(&'static str),
    #[error("no vertices")]
    Empty,
    #[error(transparent)]
    Hull(#[from] PolytopeError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OffData {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub faces: Vec<Vec<usize>>,
}

pub fn parse_off(text: &str) -> Result<OffData, OffError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let syntax = |line: usize, msg: &str| OffError::Syntax { line, msg: msg.to_string() };

    let (mut ln, mut first) = lines.next().ok_or(OffError::Truncated("the header"))?;
    let mut dim: Option<usize> = None;
    let head: Vec<&str> = first.split_whitespace().collect();
    if head[0].ends_with("OFF") {
        let tag = head[0].trim_start_matches(|c| c == 'C' || c == 'N' || c == 'S' || c == 'T');
        let mut rest = head[1..].to_vec();
        dim = match tag {
            "OFF" => Some(3),
            "4OFF" => Some(4),
            "nOFF" => {
                if rest.is_empty() {
                    let (l, next) = lines.next().ok_or(OffError::Truncated("the dimension"))?;
                    ln = l;
                    rest = next.split_whitespace().collect();
                }
                let d = rest.remove(0).parse().map_err(|_| syntax(ln, "bad dimension"))?;
                Some(d)
            }
            _ => return Err(syntax(ln, "unknown header")),
        };
        if !rest.is_empty() {
            return parse_body(&rest.join(" "), ln, dim, lines);
        }
        (ln, first) = lines.next().ok_or(OffError::Truncated("the counts"))?;
    }
    parse_body(first, ln, dim, lines)
}

fn parse_body<'a>(
    counts: &str,
    ln: usize,
    dim: Option<usize>,
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<OffData, OffError> {
    let syntax = |line: usize, msg: &str| OffError::Syntax { line, msg: msg.to_string() };
    let nums: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(ln, "bad count")))
        .collect::<Result<_, _>>()?;
    let nv = *nums.first().ok_or_else(|| syntax(ln, "missing vertex count"))?;
    let nf = nums.get(1).copied().unwrap_or(0);
    if nv == 0 {
        return Err(OffError::Empty);
    }
    let mut dim = dim;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, text) = lines.next().ok_or(OffError::Truncated("all vertices are read"))?;
        let coords: Vec<Scalar> = text
            .split_whitespace()
            .map(|t| t.parse::<Scalar>().map_err(|_| syntax(l, "bad coordinate")))
            .collect::<Result<_, _>>()?;
        let d = *dim.get_or_insert(coords.len());
        if coords.len() < d {
            return Err(syntax(l, "too few coordinates"));
        }
        // Extra columns (colours, weights) are ignored.
        vertices.push(Vector::new(coords.into_iter().take(d).collect()));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, text) = lines.next().ok_or(OffError::Truncated("all faces are read"))?;
        let toks: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| syntax(l, "bad face index")))
            .collect::<Result<_, _>>()?;
        let k = *toks.first().ok_or_else(|| syntax(l, "empty face"))?;
        if toks.len() < k + 1 {
            return Err(syntax(l, "face is shorter than its count"));
        }
        let face = toks[1..=k].to_vec();
        if face.iter().any(|&i| i >= nv) {
            return Err(syntax(l, "face index out of range"));
        }
        faces.push(face);
    }
    Ok(OffData {
        dim: dim.expect("at least one vertex"),
        vertices,
        faces,
    })
}

/// A polytope read from OFF text, with the input points that were not
/// hull vertices.
pub struct LoadedPolytope {
    pub polytope: Polytope,
    pub dropped: usize,
}

pub fn load_polytope(text: &str) -> Result<LoadedPolytope, OffError> {
    let data = parse_off(text)?;
    let polytope = convex_hull(&data.vertices)?;
    let mut input = data.vertices.clone();
    input.sort();
    input.dedup();
    let dropped = input.len() - polytope.vertices().len();
    Ok(LoadedPolytope { polytope, dropped })
}

/// OFF text for a polytope: exact coordinates, facets as vertex cycles
/// (counterclockwise seen from outside) in three dimensions and as
/// incidence lists otherwise.
pub fn write_off(p: &Polytope) -> String {
    let d = p.ambient_dim();
    let faces: Vec<Vec<usize>> = if d == 3 && p.is_full_dim() {
        (0..p.facets().len()).map(|i| facet_cycle(p, i)).collect()
    } else {
        p.incidence().to_vec()
    };
    let mut out = match d {
        3 => "OFF\n".to_string(),
        4 => "4OFF\n".to_string(),
        _ => format!("nOFF\n{d}\n"),
    };
    out.push_str(&format!("{} {} 0\n", p.vertices().len(), faces.len()));
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for f in faces {
        let row: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", f.len(), row.join(" ")));
    }
    out
}

fn cross(a: &Vector, b: &Vector) -> Vector {
    Vector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

fn facet_cycle(p: &Polytope, i: usize) -> Vec<usize> {
    let normal = p.facets()[i].normal();
    let idx = &p.incidence()[i];
    let verts = p.vertices();
    let mut c = Vector::zeros(3);
    for &j in idx {
        c = &c + &verts[j];
    }
    let c = c.scale(&Scalar::ratio(1, idx.len() as i64));
    let r = &verts[idx[0]] - &c;
    let half = |a: &Vector| {
        let s = normal.dot(&cross(&r, a));
        !(s.is_positive() || (s.is_zero() && r.dot(a).is_positive()))
    };
    let mut out = idx.clone();
    out.sort_by(|&a, &b| {
        let (va, vb) = (&verts[a] - &c, &verts[b] - &c);
        half(&va).cmp(&half(&vb)).then_with(|| {
            let s = normal.dot(&cross(&va, &vb));
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    out
}
