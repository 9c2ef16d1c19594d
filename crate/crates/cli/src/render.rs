//! SVG renders of plane modular colourings.
//!
//! Each lattice point `m ∈ [−M, M]²` becomes one circle at `m₁e₁ + m₂e₂`,
//! filled with the palette entry of its colour. The oblique basis puts `e₂`
//! at angle `2π/k` from `e₁`, so `R_k` acts as a true rotation in the
//! picture; the Cartesian basis is used for `k ∈ {2, 4}`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use chroma::{rep_2d, restriction_number, ColourLattice, IntVector};
use num_bigint::BigInt;

pub const DEFAULT_PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Cartesian,
    Oblique,
}

impl Basis {
    pub fn default_for(k: u64) -> Basis {
        if matches!(k, 3 | 6) {
            Basis::Oblique
        } else {
            Basis::Cartesian
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub k: u64,
    pub n: u64,
    pub extent: u64,
    pub basis: Basis,
    pub palette: Vec<String>,
    pub radius: f64,
    pub size: f64,
}

impl RenderSpec {
    pub fn new(k: u64, n: u64) -> Self {
        RenderSpec {
            k,
            n,
            extent: 4,
            basis: Basis::default_for(k),
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            radius: 8.0,
            size: 480.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderError {
    /// Precondition failure; `chroma render2d` exits 2.
    Invalid(String),
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for RenderError {}

fn invalid(msg: impl Into<String>) -> RenderError {
    RenderError::Invalid(msg.into())
}

/// Check preconditions. With `force`, a modulus that breaks the rotation
/// invariance is still rendered.
pub fn validate(spec: &RenderSpec, force: bool) -> Result<(), RenderError> {
    if !matches!(spec.k, 2 | 3 | 4 | 6) {
        return Err(invalid(format!("k={} is not one of 2, 3, 4, 6", spec.k)));
    }
    if spec.n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if spec.extent == 0 {
        return Err(invalid("extent must be at least 1"));
    }
    if (spec.palette.len() as u64) < spec.n {
        return Err(invalid(format!(
            "palette has {} colours, need {}",
            spec.palette.len(),
            spec.n
        )));
    }
    if !(spec.radius > 0.0 && spec.size > 4.0 * spec.radius) {
        return Err(invalid("radius must be positive and well below the canvas size"));
    }
    if !force {
        let bound = restriction_number(&rep_2d(spec.k).expect("k checked above")).n_max;
        if !bound.admits(spec.n) {
            return Err(invalid(format!(
                "{}-colouring is not invariant under C_{} (N={bound}); use --force to render anyway",
                spec.n, spec.k
            )));
        }
    }
    Ok(())
}

fn basis_vectors(spec: &RenderSpec) -> [(f64, f64); 2] {
    let angle = match spec.basis {
        Basis::Cartesian => PI / 2.0,
        Basis::Oblique => 2.0 * PI / spec.k as f64,
    };
    [(1.0, 0.0), (angle.cos(), angle.sin())]
}

/// Fixed-precision coordinate; `-0.000` is folded to `0.000`.
fn coord(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render_svg(spec: &RenderSpec, force: bool) -> Result<String, RenderError> {
    validate(spec, force)?;
    let lattice = ColourLattice::new(2, spec.n).map_err(|e| invalid(e.to_string()))?;
    let [e1, e2] = basis_vectors(spec);
    let half = spec.extent as i64;

    let mut points = Vec::new();
    for m1 in -half..=half {
        for m2 in -half..=half {
            let x = m1 as f64 * e1.0 + m2 as f64 * e2.0;
            let y = m1 as f64 * e1.1 + m2 as f64 * e2.1;
            let m = IntVector::new(vec![BigInt::from(m1), BigInt::from(m2)]).expect("dim 2");
            let colour = lattice.colour_of(&m).expect("dim 2");
            points.push((m1, m2, x, y, colour));
        }
    }

    let (min_x, max_x) = points.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.2), hi.max(p.2)));
    let (min_y, max_y) = points.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.3), hi.max(p.3)));
    let margin = 2.0 * spec.radius;
    let span = (max_x - min_x).max(max_y - min_y).max(f64::EPSILON);
    let scale = (spec.size - 2.0 * margin) / span;
    let width = (max_x - min_x) * scale + 2.0 * margin;
    let height = (max_y - min_y) * scale + 2.0 * margin;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = coord(width),
        h = coord(height)
    )
    .unwrap();
    writeln!(
        svg,
        "  <title>Modular {}-colouring of the plane lattice, C_{} axis, M={}</title>",
        spec.n, spec.k, spec.extent
    )
    .unwrap();
    writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(svg, r#"  <g id="points">"#).unwrap();
    for (m1, m2, x, y, colour) in &points {
        let cx = (x - min_x) * scale + margin;
        let cy = (max_y - y) * scale + margin;
        writeln!(
            svg,
            r#"    <circle cx="{}" cy="{}" r="{}" fill="{}" data-m="{m1},{m2}" data-colour="{colour}"/>"#,
            coord(cx),
            coord(cy),
            coord(spec.radius),
            spec.palette[*colour as usize]
        )
        .unwrap();
    }
    writeln!(svg, "  </g>").unwrap();
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

/// A circle read back from a rendered SVG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedPoint {
    pub m: (i64, i64),
    pub fill: String,
}

fn attribute<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

/// Lattice coordinates and fills of every circle in an SVG produced by [`render_svg`].
pub fn parse_points(svg: &str) -> Vec<RenderedPoint> {
    svg.lines()
        .map(str::trim)
        .filter(|l| l.starts_with("<circle"))
        .filter_map(|l| {
            let (a, b) = attribute(l, "data-m")?.split_once(',')?;
            Some(RenderedPoint {
                m: (a.parse().ok()?, b.parse().ok()?),
                fill: attribute(l, "fill")?.to_string(),
            })
        })
        .collect()
}
