//! Deterministic SVG and JSON output for pentagons, juzus and the tiling.
//!
//! Numbers are written with a fixed number of decimals so that identical inputs
//! give byte-identical files.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::enumerate_types;
use crate::hyperbolic::{Geodesic, C64};
use crate::linkage::RecipeTrace;
use crate::tiling::{base_pentagon, cell_label_permutation, Tiling};

/// Edge colors in label order: blue, purple, red, yellow, green.
pub const EDGE_COLORS: [&str; 5] = ["#3333ff", "#b30066", "#cc0000", "#cc9900", "#009900"];
pub const EDGE_COLOR_NAMES: [&str; 5] = ["blue", "purple", "red", "yellow", "green"];

const DECIMALS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("unknown render mode {0:?} (expected pentagon, juzu, tiling or overlay)")]
    UnknownMode(String),
    #[error("unknown output format {0:?} (expected svg or json)")]
    UnknownFormat(String),
    #[error("image size must be between 16 and 8192 pixels, got {0}")]
    BadSize(u32),
    #[error("mode {0} needs a tiling")]
    MissingTiling(RenderMode),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderMode {
    Pentagon,
    Juzu,
    Tiling,
    /// Tiling with the control point, next to the pentagon and juzu panels.
    Overlay,
}

impl RenderMode {
    pub fn name(self) -> &'static str {
        match self {
            RenderMode::Pentagon => "pentagon",
            RenderMode::Juzu => "juzu",
            RenderMode::Tiling => "tiling",
            RenderMode::Overlay => "overlay",
        }
    }
}

impl std::fmt::Display for RenderMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RenderMode {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [RenderMode::Pentagon, RenderMode::Juzu, RenderMode::Tiling, RenderMode::Overlay]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| RenderError::UnknownMode(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Svg,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Svg => "svg",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(OutputFormat::Svg),
            "json" => Ok(OutputFormat::Json),
            _ => Err(RenderError::UnknownFormat(s.to_string())),
        }
    }
}

/// Formats a number with fixed precision and no negative zero.
fn num(x: f64) -> String {
    let s = format!("{:.*}", DECIMALS, x);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Maps a region of the plane onto a square canvas with y pointing up.
#[derive(Clone, Copy)]
struct View {
    center: C64,
    half_width: f64,
    size: f64,
    offset: f64,
}

impl View {
    fn new(center: C64, half_width: f64, size: f64) -> View {
        View { center, half_width, size, offset: 0.0 }
    }

    fn shifted(self, offset: f64) -> View {
        View { offset, ..self }
    }

    fn scale(&self) -> f64 {
        self.size / (2.0 * self.half_width)
    }

    fn point(&self, z: C64) -> (f64, f64) {
        let d = z - self.center;
        (self.offset + self.size / 2.0 + d.re * self.scale(), self.size / 2.0 - d.im * self.scale())
    }

    fn xy(&self, z: C64) -> String {
        let (x, y) = self.point(z);
        format!("{} {}", num(x), num(y))
    }
}

fn check_size(size: u32) -> Result<f64, RenderError> {
    if (16..=8192).contains(&size) {
        Ok(size as f64)
    } else {
        Err(RenderError::BadSize(size))
    }
}

fn open_svg(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(
        out,
        "<style>.face-even{{fill:#f4f4f4}}.face-odd{{fill:#dcdcdc}}.tile{{stroke:#888;stroke-width:0.5}}\
         .bead{{stroke:#000;stroke-width:1}}.coincident{{stroke:#000;stroke-width:3}}</style>"
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

fn pentagon_group(out: &mut String, trace: &RecipeTrace, size: f64, offset: f64) {
    let v = &trace.linkage.vertices;
    let centroid = v.iter().sum::<C64>() / 5.0;
    let view = View::new(centroid, 2.2, size).shifted(offset);
    let stroke = num(size / 100.0);
    let _ = writeln!(out, r#"<g class="pentagon">"#);
    for k in 0..5 {
        let (a, b) = (v[k], v[(k + 1) % 5]);
        let _ = writeln!(
            out,
            r#"<path class="edge edge-{k} {name}" d="M {} L {}" stroke="{color}" stroke-width="{stroke}" stroke-linecap="round"/>"#,
            view.xy(a),
            view.xy(b),
            name = EDGE_COLOR_NAMES[k],
            color = EDGE_COLORS[k],
        );
    }
    for (k, z) in v.iter().enumerate() {
        let (x, y) = view.point(*z);
        let _ = writeln!(out, r##"<circle class="vertex vertex-{k}" cx="{}" cy="{}" r="{}" fill="#000000"/>"##, num(x), num(y), num(size / 150.0));
    }
    let _ = writeln!(out, "</g>");
}

/// Labels that coincide with another label in the classified type.
fn coincident_labels(trace: &RecipeTrace) -> [bool; 5] {
    let mut marked = [false; 5];
    if let Some(t) = trace.linkage.type_index.and_then(|i| enumerate_types().get(i)) {
        for (a, b) in t.pairs() {
            marked[a as usize] = true;
            marked[b as usize] = true;
        }
    }
    marked
}

fn juzu_group(out: &mut String, trace: &RecipeTrace, size: f64, offset: f64) {
    let view = View::new(C64::new(0.0, 0.0), 1.25, size).shifted(offset);
    let (cx, cy) = view.point(C64::new(0.0, 0.0));
    let marked = coincident_labels(trace);
    let _ = writeln!(out, r#"<g class="juzu">"#);
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#444444" stroke-width="1"/>"##,
        num(cx),
        num(cy),
        num(view.scale())
    );
    let points = trace.linkage.juzu();
    for (k, p) in points.points().iter().enumerate() {
        let (x, y) = view.point(p.u());
        let class = if marked[k] { "bead coincident" } else { "bead" };
        let _ = writeln!(
            out,
            r#"<circle class="{class} bead-{k}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            num(x),
            num(y),
            num(size / 40.0),
            EDGE_COLORS[k]
        );
    }
    let _ = writeln!(out, "</g>");
}

/// SVG path data of the geodesic segment from `a` to `b`.
fn geodesic_path(view: &View, a: C64, b: C64, start: bool) -> String {
    let head = if start { format!("M {} ", view.xy(a)) } else { String::new() };
    match Geodesic::through(a, b) {
        Ok(Geodesic::Arc { center, radius }) => {
            let (ax, ay) = view.point(a);
            let (bx, by) = view.point(b);
            let (cx, cy) = view.point(center);
            let cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
            let sweep = u8::from(cross > 0.0);
            let r = num(radius * view.scale());
            format!("{head}A {r} {r} 0 0 {sweep} {}", view.xy(b))
        }
        _ => format!("{head}L {}", view.xy(b)),
    }
}

fn tiling_group(out: &mut String, tiling: &Tiling, size: f64, offset: f64, marker: Option<C64>) {
    let view = View::new(C64::new(0.0, 0.0), 1.02, size).shifted(offset);
    let (cx, cy) = view.point(C64::new(0.0, 0.0));
    let base = base_pentagon();
    let _ = writeln!(out, r#"<g class="tiling">"#);
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="#ffffff" stroke="#000000" stroke-width="1"/>"##,
        num(cx),
        num(cy),
        num(view.scale())
    );
    for (i, f) in tiling.faces().iter().enumerate() {
        let v: Vec<C64> = base.iter().map(|p| f.transform.apply(p.z())).collect();
        let mut d = String::new();
        for k in 0..5 {
            d.push_str(&geodesic_path(&view, v[k], v[(k + 1) % 5], k == 0));
            d.push(' ');
        }
        d.push('Z');
        let parity = if f.parity() == 0 { "face-even" } else { "face-odd" };
        let _ = writeln!(out, r#"<path class="tile {parity}" data-face="{i}" d="{d}"/>"#);
    }
    if let Some(z) = marker {
        let (x, y) = view.point(z);
        let _ = writeln!(
            out,
            r##"<circle class="control-point" cx="{}" cy="{}" r="{}" fill="#000000"/>"##,
            num(x),
            num(y),
            num(size / 120.0)
        );
    }
    let _ = writeln!(out, "</g>");
}

pub fn pentagon_svg(trace: &RecipeTrace, size: u32) -> Result<String, RenderError> {
    let s = check_size(size)?;
    let mut out = String::new();
    open_svg(&mut out, s, s);
    pentagon_group(&mut out, trace, s, 0.0);
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn juzu_svg(trace: &RecipeTrace, size: u32) -> Result<String, RenderError> {
    let s = check_size(size)?;
    let mut out = String::new();
    open_svg(&mut out, s, s);
    juzu_group(&mut out, trace, s, 0.0);
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn tiling_svg(tiling: &Tiling, marker: Option<C64>, size: u32) -> Result<String, RenderError> {
    let s = check_size(size)?;
    let mut out = String::new();
    open_svg(&mut out, s, s);
    tiling_group(&mut out, tiling, s, 0.0, marker);
    out.push_str("</svg>\n");
    Ok(out)
}

/// The tiling with the control point, followed by the pentagon and juzu panels.
pub fn overlay_svg(trace: &RecipeTrace, tiling: &Tiling, size: u32) -> Result<String, RenderError> {
    let s = check_size(size)?;
    let mut out = String::new();
    open_svg(&mut out, 3.0 * s, s);
    tiling_group(&mut out, tiling, s, 0.0, Some(trace.source.z()));
    pentagon_group(&mut out, trace, s, s);
    juzu_group(&mut out, trace, s, 2.0 * s);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders one frame in the requested mode.
pub fn render_svg(mode: RenderMode, trace: &RecipeTrace, tiling: Option<&Tiling>, size: u32) -> Result<String, RenderError> {
    match mode {
        RenderMode::Pentagon => pentagon_svg(trace, size),
        RenderMode::Juzu => juzu_svg(trace, size),
        RenderMode::Tiling => tiling_svg(tiling.ok_or(RenderError::MissingTiling(mode))?, Some(trace.source.z()), size),
        RenderMode::Overlay => overlay_svg(trace, tiling.ok_or(RenderError::MissingTiling(mode))?, size),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceJson {
    pub word: String,
    pub center: [f64; 2],
    pub parity: u8,
    pub vertices: [[f64; 2]; 5],
    /// Image of the central label order under the face's group element.
    pub label_permutation: [u8; 5],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeJson {
    pub word: String,
    pub midpoint: [f64; 2],
    pub endpoints: [[f64; 2]; 2],
    pub faces: [Option<usize>; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexJson {
    pub word: String,
    pub point: [f64; 2],
    pub faces: Vec<Option<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TilingJson {
    pub faces: Vec<FaceJson>,
    pub edges: Vec<EdgeJson>,
    pub vertices: Vec<VertexJson>,
}

fn xy(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn tiling_json(tiling: &Tiling) -> TilingJson {
    let base = base_pentagon();
    let faces = tiling
        .faces()
        .iter()
        .map(|f| FaceJson {
            word: f.word.to_string(),
            center: xy(f.center.z()),
            parity: f.parity(),
            vertices: base.map(|p| xy(f.transform.apply(p.z()))),
            label_permutation: cell_label_permutation(&f.word),
        })
        .collect();
    let edges = (0..tiling.edges().len())
        .map(|i| {
            let e = &tiling.edges()[i];
            let (a, b) = tiling.edge_endpoints(i);
            let (fa, fb) = tiling.edge_faces(i);
            EdgeJson { word: e.word.to_string(), midpoint: xy(e.center.z()), endpoints: [xy(a.z()), xy(b.z())], faces: [fa, fb] }
        })
        .collect();
    let vertices = (0..tiling.vertices().len())
        .map(|i| {
            let v = &tiling.vertices()[i];
            VertexJson { word: v.word.to_string(), point: xy(v.center.z()), faces: tiling.vertex_faces(i) }
        })
        .collect();
    TilingJson { faces, edges, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::field::solve_on_grid;
    use crate::conformal::quad::build_quad;
    use crate::hyperbolic::DiskPoint;
    use crate::linkage::evaluate;
    use crate::tiling::{base_edge_midpoint, generate_tiling, TilingBound};

    #[test]
    fn number_format_is_fixed() {
        assert_eq!(num(0.5), "0.5000");
        assert_eq!(num(-1e-9), "0.0000");
        assert_eq!(num(-2.25), "-2.2500");
    }

    #[test]
    fn parse_modes_and_formats() {
        assert_eq!("overlay".parse::<RenderMode>().unwrap(), RenderMode::Overlay);
        assert!("movie".parse::<RenderMode>().is_err());
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("png".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn pentagon_svg_has_five_colored_edges_and_is_stable() {
        let f = solve_on_grid(&build_quad(), 16, 0.05).unwrap();
        let t = evaluate(DiskPoint::ORIGIN, &f).unwrap();
        let a = pentagon_svg(&t, 400).unwrap();
        assert_eq!(a, pentagon_svg(&t, 400).unwrap());
        assert_eq!(a.matches("class=\"edge ").count(), 5);
        for c in EDGE_COLORS {
            assert!(a.contains(c));
        }
        assert!(matches!(pentagon_svg(&t, 4), Err(RenderError::BadSize(4))));
    }

    #[test]
    fn juzu_marks_coincident_beads_on_an_edge() {
        let f = solve_on_grid(&build_quad(), 16, 0.05).unwrap();
        let t = evaluate(base_edge_midpoint(), &f).unwrap();
        let svg = juzu_svg(&t, 300).unwrap();
        assert_eq!(svg.matches("bead coincident").count(), 2);
        assert!(svg.contains("bead coincident bead-2"));
        assert!(svg.contains("bead coincident bead-3"));
    }

    #[test]
    fn tiling_outputs() {
        let tiling = generate_tiling(TilingBound::Radius(0.95)).unwrap();
        let j = tiling_json(&tiling);
        assert!(j.faces.len() >= 24);
        assert_eq!(j.faces[0].label_permutation, [0, 1, 2, 3, 4]);
        let svg = tiling_svg(&tiling, None, 500).unwrap();
        assert_eq!(svg.matches("class=\"tile ").count(), j.faces.len());
        let f = solve_on_grid(&build_quad(), 16, 0.05).unwrap();
        let t = evaluate(DiskPoint::ORIGIN, &f).unwrap();
        assert!(matches!(render_svg(RenderMode::Overlay, &t, None, 300), Err(RenderError::MissingTiling(_))));
        assert!(render_svg(RenderMode::Overlay, &t, Some(&tiling), 300).unwrap().contains("control-point"));
    }
}
