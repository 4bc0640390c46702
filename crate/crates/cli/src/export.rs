//! Text encoders for assembled meshes.
//!
//! Floats are written as shortest round-trip decimals, so every output is
//! byte-deterministic and parses back to the exact `f64` values.

use std::fmt::Write;

use riemann_core::{seam_report, BranchIndex, CharismaKind, SurfaceMesh};
use serde::Serialize;

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

const WALL_MATERIAL: &str = "walls";
const WALL_RGB: [u8; 3] = [128, 128, 128];

struct Num(ryu::Buffer);

impl Num {
    fn new() -> Self {
        Num(ryu::Buffer::new())
    }

    fn fmt(&mut self, x: f64) -> &str {
        self.0.format(x)
    }
}

fn header_comment(mesh: &SurfaceMesh) -> String {
    let ks: Vec<String> = mesh.sheets.iter().map(|k| k.to_string()).collect();
    format!(
        "riemann surface function={} charisma={} branches={}",
        mesh.function,
        charisma_name(mesh.kind),
        ks.join(",")
    )
}

fn charisma_name(kind: CharismaKind) -> &'static str {
    match kind {
        CharismaKind::Sin { use_range_imag: true } => "sin-imag",
        kind => kind.name(),
    }
}

/// ASCII PLY 1.0 with per-vertex `uchar` RGB; `z` carries the charisma.
pub fn to_ply(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    let mut num = Num::new();
    out.push_str("ply\nformat ascii 1.0\n");
    writeln!(out, "comment {}", header_comment(mesh)).unwrap();
    writeln!(out, "element vertex {}", mesh.vertices.len()).unwrap();
    for axis in ["x", "y", "z"] {
        writeln!(out, "property double {axis}").unwrap();
    }
    for channel in ["red", "green", "blue"] {
        writeln!(out, "property uchar {channel}").unwrap();
    }
    writeln!(out, "element face {}", mesh.faces.len()).unwrap();
    out.push_str("property list uchar int vertex_indices\nend_header\n");
    for (p, [r, g, b]) in mesh.vertices.iter().zip(&mesh.colors) {
        for x in p.position() {
            out.push_str(num.fmt(x));
            out.push(' ');
        }
        writeln!(out, "{r} {g} {b}").unwrap();
    }
    for [a, b, c] in &mesh.faces {
        writeln!(out, "3 {a} {b} {c}").unwrap();
    }
    out
}

fn material_name(k: Option<BranchIndex>) -> String {
    match k {
        Some(k) => format!("branch_{k}"),
        None => WALL_MATERIAL.to_string(),
    }
}

/// Wavefront OBJ with one group and material per branch (plus `walls`).
pub fn to_obj(mesh: &SurfaceMesh, mtl_file: &str) -> String {
    let mut out = String::new();
    let mut num = Num::new();
    writeln!(out, "# {}", header_comment(mesh)).unwrap();
    writeln!(out, "mtllib {mtl_file}").unwrap();
    for p in &mesh.vertices {
        let [x, y, c] = p.position();
        out.push_str("v ");
        out.push_str(num.fmt(x));
        out.push(' ');
        out.push_str(num.fmt(y));
        out.push(' ');
        out.push_str(num.fmt(c));
        out.push('\n');
    }
    let mut current = None;
    for (face, owner) in mesh.faces.iter().zip(&mesh.face_branch) {
        if current != Some(*owner) {
            let name = material_name(*owner);
            writeln!(out, "g {name}\nusemtl {name}").unwrap();
            current = Some(*owner);
        }
        let [a, b, c] = face.map(|v| v + 1);
        writeln!(out, "f {a} {b} {c}").unwrap();
    }
    out
}

/// Material library matching [`to_obj`]: diffuse colour from the branch palette.
pub fn to_mtl(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    let mut num = Num::new();
    writeln!(out, "# {}", header_comment(mesh)).unwrap();
    let mut materials: Vec<(String, [u8; 3])> = mesh
        .sheets
        .iter()
        .map(|&k| (material_name(Some(k)), riemann_core::mesh::branch_color(k)))
        .collect();
    if mesh.face_branch.iter().any(Option::is_none) {
        materials.push((WALL_MATERIAL.to_string(), WALL_RGB));
    }
    for (name, rgb) in materials {
        writeln!(out, "newmtl {name}").unwrap();
        out.push_str("Kd");
        for channel in rgb {
            out.push(' ');
            out.push_str(num.fmt(f64::from(channel) / 255.0));
        }
        out.push_str("\n\n");
    }
    out
}

/// `x,y,c,k`, one row per vertex.
pub fn to_csv(mesh: &SurfaceMesh) -> String {
    let mut out = String::from("x,y,c,k\n");
    let mut num = Num::new();
    for p in &mesh.vertices {
        let [x, y, c] = p.position();
        out.push_str(num.fmt(x));
        out.push(',');
        out.push_str(num.fmt(y));
        out.push(',');
        out.push_str(num.fmt(c));
        writeln!(out, ",{}", p.k).unwrap();
    }
    out
}

#[derive(Serialize)]
struct GridDoc {
    r_min: f64,
    r_max: f64,
    n_r: usize,
    n_theta: usize,
    spacing: &'static str,
}

#[derive(Serialize)]
struct VertexDoc {
    x: f64,
    y: f64,
    c: f64,
    k: i64,
    w: [f64; 2],
}

#[derive(Serialize)]
struct SeamDoc {
    upper: i64,
    lower: i64,
    max_gap: f64,
    mean_gap: f64,
    welded: bool,
}

#[derive(Serialize)]
struct MeshSeamDoc {
    #[serde(flatten)]
    stats: SeamDoc,
    upper_edge: Vec<usize>,
    lower_edge: Vec<usize>,
}

#[derive(Serialize)]
struct MeshDoc {
    schema: u32,
    function: String,
    charisma: &'static str,
    grid: GridDoc,
    sheets: Vec<i64>,
    welded: bool,
    weld_tol: f64,
    vertices: Vec<VertexDoc>,
    colors: Vec<[u8; 3]>,
    faces: Vec<[usize; 3]>,
    face_branch: Vec<Option<i64>>,
    seams: Vec<MeshSeamDoc>,
}

#[derive(Serialize)]
struct SeamReportDoc {
    schema: u32,
    function: String,
    charisma: &'static str,
    sheets: Vec<i64>,
    weld_tol: f64,
    seams: Vec<SeamDoc>,
}

fn grid_doc(mesh: &SurfaceMesh) -> GridDoc {
    let g = mesh.grid;
    GridDoc {
        r_min: g.r_min,
        r_max: g.r_max,
        n_r: g.n_r,
        n_theta: g.n_theta,
        spacing: match g.spacing {
            riemann_core::RadialSpacing::Linear => "linear",
            riemann_core::RadialSpacing::Logarithmic => "log",
        },
    }
}

fn seam_docs(mesh: &SurfaceMesh) -> Vec<SeamDoc> {
    seam_report(mesh)
        .into_iter()
        .map(|s| SeamDoc {
            upper: s.upper.0,
            lower: s.lower.0,
            max_gap: s.max_gap,
            mean_gap: s.mean_gap,
            welded: s.welded,
        })
        .collect()
}

/// Full mesh document: every vertex with its branch and range value.
pub fn to_json(mesh: &SurfaceMesh) -> String {
    let doc = MeshDoc {
        schema: SCHEMA_VERSION,
        function: mesh.function.to_string(),
        charisma: charisma_name(mesh.kind),
        grid: grid_doc(mesh),
        sheets: mesh.sheets.iter().map(|k| k.0).collect(),
        welded: mesh.welded,
        weld_tol: mesh.weld_tol,
        vertices: mesh
            .vertices
            .iter()
            .map(|p| VertexDoc {
                x: p.x,
                y: p.y,
                c: p.c,
                k: p.k.0,
                w: [p.w.re, p.w.im],
            })
            .collect(),
        colors: mesh.colors.clone(),
        faces: mesh.faces.clone(),
        face_branch: mesh.face_branch.iter().map(|k| k.map(|k| k.0)).collect(),
        seams: seam_docs(mesh)
            .into_iter()
            .zip(&mesh.seams)
            .map(|(stats, seam)| MeshSeamDoc {
                stats,
                upper_edge: seam.upper_edge.clone(),
                lower_edge: seam.lower_edge.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("mesh values are finite");
    s.push('\n');
    s
}

/// The `.seams.json` sidecar written next to every mesh.
pub fn seams_json(mesh: &SurfaceMesh) -> String {
    let doc = SeamReportDoc {
        schema: SCHEMA_VERSION,
        function: mesh.function.to_string(),
        charisma: charisma_name(mesh.kind),
        sheets: mesh.sheets.iter().map(|k| k.0).collect(),
        weld_tol: mesh.weld_tol,
        seams: seam_docs(mesh),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("seam values are finite");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use riemann_core::{assemble_surface, build_sheet, DomainGrid, IndexedFunction};

    use super::*;

    fn mesh(kind: CharismaKind, walls: bool) -> SurfaceMesh {
        let grid = DomainGrid::new(0.5, 1.0, 2, 8).unwrap();
        let sheets: Vec<_> = [-1, 0, 1]
            .iter()
            .map(|&k| build_sheet(IndexedFunction::Root(3), BranchIndex(k), kind, &grid).unwrap())
            .collect();
        let mut m = assemble_surface(&sheets, true, 1e-9).unwrap();
        if walls {
            m.add_walls();
        }
        m
    }

    #[test]
    fn ply_header_and_counts() {
        let m = mesh(CharismaKind::SIN, false);
        let ply = to_ply(&m);
        let lines: Vec<&str> = ply.lines().collect();
        assert_eq!(lines[0], "ply");
        assert_eq!(lines[1], "format ascii 1.0");
        assert!(ply.contains(&format!("element vertex {}\n", m.vertices.len())));
        assert!(ply.contains("property uchar red\n"));
        let end = lines.iter().position(|l| *l == "end_header").unwrap();
        assert_eq!(lines.len() - end - 1, m.vertices.len() + m.faces.len());
        let first: Vec<&str> = lines[end + 1].split(' ').collect();
        assert_eq!(first.len(), 6);
        assert_eq!(first[0].parse::<f64>().unwrap(), m.vertices[0].x);
        assert_eq!(first[2].parse::<f64>().unwrap(), m.vertices[0].c);
    }

    #[test]
    fn obj_groups_per_branch_and_walls() {
        let m = mesh(CharismaKind::Index, true);
        let obj = to_obj(&m, "s.mtl");
        assert!(obj.contains("mtllib s.mtl\n"));
        for k in ["-1", "0", "1"] {
            assert_eq!(obj.matches(&format!("usemtl branch_{k}\n")).count(), 1);
        }
        assert!(obj.contains("usemtl walls\n"));
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), m.vertices.len());
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), m.faces.len());
        let mtl = to_mtl(&m);
        assert_eq!(mtl.matches("newmtl ").count(), 4);
        assert!(mtl.contains("newmtl branch_0\nKd "));
    }

    #[test]
    fn csv_rows() {
        let m = mesh(CharismaKind::Cos, false);
        let csv = to_csv(&m);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,y,c,k"));
        assert_eq!(lines.count(), m.vertices.len());
    }

    #[test]
    fn json_carries_range_values() {
        let m = mesh(CharismaKind::SIN, false);
        let v: serde_json::Value = serde_json::from_str(&to_json(&m)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["function"], "root:3");
        assert_eq!(v["vertices"].as_array().unwrap().len(), m.vertices.len());
        assert_eq!(v["seams"][0]["upper_edge"].as_array().unwrap().len(), 2);
        assert!(v["seams"][0]["max_gap"].as_f64().is_some());
        let w0 = &v["vertices"][0]["w"];
        assert_eq!(w0[0].as_f64().unwrap(), m.vertices[0].w.re);
        let seams: serde_json::Value = serde_json::from_str(&seams_json(&m)).unwrap();
        assert_eq!(seams["seams"].as_array().unwrap().len(), 3);
        assert_eq!(seams["sheets"], serde_json::json!([-1, 0, 1]));
    }
}
