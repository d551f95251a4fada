use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::flat::orthonormal_complement;
use crate::geometry::{Ball, Body, Ellipsoid, Polytope};
use crate::Vector;

/// A named body. Dimension-generic shapes take `d` at build time.
#[derive(Debug, Clone, PartialEq)]
pub enum BodySpec {
    /// Ball about the origin.
    Ball { radius: f64 },
    /// Axis-aligned ellipsoid about the origin.
    Ellipsoid { axes: Vec<f64> },
    /// `[0,1]^d`.
    Cube,
    /// `conv{0, e_1, …, e_d}`.
    Simplex,
    /// Regular simplex with unit edges, centered at the origin.
    RegularSimplex,
    /// Cross-polytope `{|x|_1 ≤ 1}`.
    Octahedron,
    /// Regular `n`-gon inscribed in the unit circle (`d = 2`).
    RegularPolygon(usize),
    /// Polytope text file.
    File(PathBuf),
}

impl FromStr for BodySpec {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let floats = |a: &str| -> Result<Vec<f64>> {
            a.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| GeomError::Config(format!("bad number {t:?}: {e}"))))
                .collect()
        };
        let spec = match (name, arg) {
            ("ball", None) => BodySpec::Ball { radius: 1.0 },
            ("ball", Some(a)) => BodySpec::Ball { radius: floats(a)?[0] },
            ("ellipsoid", Some(a)) => BodySpec::Ellipsoid { axes: floats(a)? },
            ("cube", None) => BodySpec::Cube,
            ("simplex", None) => BodySpec::Simplex,
            ("regular-simplex", None) => BodySpec::RegularSimplex,
            ("octahedron", None) => BodySpec::Octahedron,
            ("regular-polygon", Some(a)) => BodySpec::RegularPolygon(
                a.parse().map_err(|e| GeomError::Config(format!("bad polygon size {a:?}: {e}")))?,
            ),
            ("file", Some(a)) => BodySpec::File(PathBuf::from(a)),
            _ => return Err(GeomError::Config(format!("unknown body {s:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for BodySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodySpec::Ball { radius } if *radius == 1.0 => f.write_str("ball"),
            BodySpec::Ball { radius } => write!(f, "ball:{radius}"),
            BodySpec::Ellipsoid { axes } => {
                let axes: Vec<String> = axes.iter().map(f64::to_string).collect();
                write!(f, "ellipsoid:{}", axes.join(","))
            }
            BodySpec::Cube => f.write_str("cube"),
            BodySpec::Simplex => f.write_str("simplex"),
            BodySpec::RegularSimplex => f.write_str("regular-simplex"),
            BodySpec::Octahedron => f.write_str("octahedron"),
            BodySpec::RegularPolygon(n) => write!(f, "regular-polygon:{n}"),
            BodySpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl BodySpec {
    pub fn is_smooth(&self) -> bool {
        matches!(self, BodySpec::Ball { .. } | BodySpec::Ellipsoid { .. })
    }

    pub fn build(&self, d: usize) -> Result<Body> {
        if d == 0 {
            return Err(GeomError::Config("dimension must be positive".into()));
        }
        match self {
            BodySpec::Ball { radius } => Ok(Ball::new(Vector::zeros(d), *radius)?.into()),
            BodySpec::Ellipsoid { axes } => {
                if axes.len() != d {
                    return Err(GeomError::Dimension { expected: d, got: axes.len() });
                }
                Ok(Ellipsoid::from_semi_axes(Vector::zeros(d), axes)?.into())
            }
            BodySpec::Cube => Ok(cube(d)?.into()),
            BodySpec::Simplex => Ok(corner_simplex(d)?.into()),
            BodySpec::RegularSimplex => Ok(regular_simplex(d)?.into()),
            BodySpec::Octahedron => Ok(cross_polytope(d)?.into()),
            BodySpec::RegularPolygon(n) => {
                if d != 2 {
                    return Err(GeomError::Config("regular-polygon needs dim 2".into()));
                }
                Ok(regular_polygon(*n)?.into())
            }
            BodySpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| GeomError::Config(format!("{}: {e}", path.display())))?;
                let p = parse_polytope_text(&text)?;
                if p.dim() != d {
                    return Err(GeomError::Dimension { expected: d, got: p.dim() });
                }
                Ok(p.into())
            }
        }
    }
}

/// Parse a body name and build it in dimension `d`.
pub fn parse_body(spec: &str, d: usize) -> Result<Body> {
    spec.parse::<BodySpec>()?.build(d)
}

fn unit(d: usize, i: usize, s: f64) -> Vector {
    let mut v = Vector::zeros(d);
    v[i] = s;
    v
}

pub fn cube(d: usize) -> Result<Polytope> {
    let vertices = (0..1usize << d)
        .map(|mask| Vector::from_fn(d, |i, _| ((mask >> i) & 1) as f64))
        .collect();
    let mut hs = Vec::with_capacity(2 * d);
    for i in 0..d {
        hs.push((unit(d, i, -1.0), 0.0));
        hs.push((unit(d, i, 1.0), 1.0));
    }
    Polytope::new(vertices, hs)
}

pub fn corner_simplex(d: usize) -> Result<Polytope> {
    let mut vertices = vec![Vector::zeros(d)];
    vertices.extend((0..d).map(|i| unit(d, i, 1.0)));
    let mut hs: Vec<(Vector, f64)> = (0..d).map(|i| (unit(d, i, -1.0), 0.0)).collect();
    hs.push((Vector::from_element(d, 1.0), 1.0));
    Polytope::new(vertices, hs)
}

pub fn regular_simplex(d: usize) -> Result<Polytope> {
    let ones = DMatrix::from_element(d + 1, 1, 1.0 / ((d + 1) as f64).sqrt());
    let basis = orthonormal_complement(&ones);
    let vertices: Vec<Vector> = (0..=d)
        .map(|i| {
            let e = Vector::from_fn(d + 1, |j, _| if j == i { 1.0 } else { 0.0 } - 1.0 / (d + 1) as f64);
            basis.transpose() * e / std::f64::consts::SQRT_2
        })
        .collect();
    let hs = vertices
        .iter()
        .map(|v| {
            let r = v.norm();
            (-v / r, r / d as f64)
        })
        .collect();
    Polytope::new(vertices, hs)
}

pub fn cross_polytope(d: usize) -> Result<Polytope> {
    let vertices = (0..d).flat_map(|i| [unit(d, i, 1.0), unit(d, i, -1.0)]).collect();
    let hs = (0..1usize << d)
        .map(|mask| (Vector::from_fn(d, |i, _| if (mask >> i) & 1 == 1 { -1.0 } else { 1.0 }), 1.0))
        .collect();
    Polytope::new(vertices, hs)
}

pub fn regular_polygon(n: usize) -> Result<Polytope> {
    if n < 3 {
        return Err(GeomError::Config(format!("regular polygon needs at least 3 sides, got {n}")));
    }
    let step = std::f64::consts::TAU / n as f64;
    let vertices = (0..n)
        .map(|k| {
            let t = step * k as f64;
            Vector::from_vec(vec![t.cos(), t.sin()])
        })
        .collect();
    let hs = (0..n)
        .map(|k| {
            let t = step * (k as f64 + 0.5);
            (Vector::from_vec(vec![t.cos(), t.sin()]), (step / 2.0).cos())
        })
        .collect();
    Polytope::new(vertices, hs)
}

/// Parse the polytope text format: a `vertices` section of rows with `d`
/// numbers and a `halfspaces` section of rows `normal… offset`. Blank lines
/// and `#` comments are ignored.
pub fn parse_polytope_text(text: &str) -> Result<Polytope> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Vertices,
        Halfspaces,
    }
    let mut section = Section::None;
    let mut vertices: Vec<Vector> = Vec::new();
    let mut hs: Vec<(Vector, f64)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| GeomError::Parse { line: lineno + 1, message };
        match line.to_ascii_lowercase().as_str() {
            "vertices" => {
                section = Section::Vertices;
                continue;
            }
            "halfspaces" => {
                section = Section::Halfspaces;
                continue;
            }
            _ => {}
        }
        let row: Vec<f64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| err(format!("bad number {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        match section {
            Section::None => return Err(err("data before a `vertices` or `halfspaces` header".into())),
            Section::Vertices => {
                if let Some(v) = vertices.first() {
                    if v.len() != row.len() {
                        return Err(err(format!("expected {} coordinates, got {}", v.len(), row.len())));
                    }
                }
                vertices.push(Vector::from_vec(row));
            }
            Section::Halfspaces => {
                if row.len() < 2 {
                    return Err(err("halfspace row needs a normal and an offset".into()));
                }
                let (n, o) = row.split_at(row.len() - 1);
                hs.push((Vector::from_row_slice(n), o[0]));
            }
        }
    }
    let d = vertices.first().map(|v| v.len()).ok_or_else(|| GeomError::Parse { line: 0, message: "no vertices".into() })?;
    if hs.is_empty() {
        return Err(GeomError::Parse { line: 0, message: "no halfspaces".into() });
    }
    if let Some((n, _)) = hs.iter().find(|(n, _)| n.len() != d) {
        return Err(GeomError::Dimension { expected: d, got: n.len() });
    }
    Polytope::new(vertices, hs)
}
