use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use riemann_cli::{parse_args, run, CliError};
use riemann_core::DomainGrid;
use tempfile::TempDir;

fn riemann(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riemann"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary should run")
}

fn listing(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

struct Ply {
    vertices: Vec<[f64; 3]>,
    colors: Vec<[u8; 3]>,
    faces: Vec<[usize; 3]>,
}

fn read_ply(path: &Path) -> Ply {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ply"));
    assert_eq!(lines.next(), Some("format ascii 1.0"));
    let (mut nv, mut nf) = (0, 0);
    for line in lines.by_ref() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["element", "vertex", n] => nv = n.parse().unwrap(),
            ["element", "face", n] => nf = n.parse().unwrap(),
            ["end_header"] => break,
            _ => {}
        }
    }
    let mut ply = Ply {
        vertices: Vec::new(),
        colors: Vec::new(),
        faces: Vec::new(),
    };
    for line in lines.by_ref().take(nv) {
        let p: Vec<&str> = line.split(' ').collect();
        assert_eq!(p.len(), 6);
        ply.vertices.push([0, 1, 2].map(|i| p[i].parse().unwrap()));
        ply.colors.push([3, 4, 5].map(|i| p[i].parse().unwrap()));
    }
    for line in lines.by_ref().take(nf) {
        let p: Vec<usize> = line.split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(p[0], 3);
        assert!(p[1..].iter().all(|&v| v < nv));
        ply.faces.push([p[1], p[2], p[3]]);
    }
    assert_eq!(lines.next(), None);
    assert_eq!((ply.vertices.len(), ply.faces.len()), (nv, nf));
    ply
}

fn components(n: usize, faces: &[[usize; 3]]) -> usize {
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for f in faces {
        for e in [(f[0], f[1]), (f[1], f[2])] {
            let (a, b) = (find(&mut parent, e.0), find(&mut parent, e.1));
            parent[a] = b;
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

#[test]
fn sine_figure_welds_into_one_component() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--figure", "4", "-o", "fig4.ply"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ply = read_ply(&dir.path().join("fig4.ply"));
    let grid = DomainGrid::default();
    assert_eq!(ply.vertices.len(), 3 * grid.len() - 3 * grid.n_r);
    assert_eq!(components(ply.vertices.len(), &ply.faces), 1);
    let seams: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig4.seams.json")).unwrap()).unwrap();
    assert_eq!(seams["schema"], 1);
    assert!(seams["seams"].as_array().unwrap().iter().all(|s| s["welded"] == true));
}

#[test]
fn index_figure_has_stacked_planes_and_walls() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--figure", "3a", "--n-r", "5", "--n-theta", "16", "-o", "f.ply"]);
    assert!(out.status.success());
    let ply = read_ply(&dir.path().join("f.ply"));
    let mut heights: Vec<f64> = ply.vertices.iter().map(|v| v[2]).collect();
    heights.sort_by(f64::total_cmp);
    heights.dedup();
    assert_eq!(heights, vec![-1.0, 0.0, 1.0]);
    let sheet_faces = 3 * 2 * 4 * 16;
    assert_eq!(ply.faces.len(), sheet_faces + 3 * 2 * 4);
    // Walls connect the three planes.
    assert_eq!(components(ply.vertices.len(), &ply.faces), 1);
}

#[test]
fn incompatible_charisma_exits_3_without_output() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--function", "log", "--charisma", "sin"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--charisma"));
    assert!(listing(dir.path()).is_empty());
}

#[test]
fn empty_branch_range_exits_2_without_output() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--branches", "4..6", "-o", "x.ply"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--branches"));
    assert!(listing(dir.path()).is_empty());
}

#[test]
fn clap_errors_exit_2_and_help_exits_0() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--format", "stl"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--format"));
    assert_eq!(riemann(dir.path(), &["--help"]).status.code(), Some(0));
    assert!(listing(dir.path()).is_empty());
}

#[test]
fn unwritable_destination_exits_4_without_output() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--n-r", "3", "--n-theta", "8", "-o", "missing/dir/x.ply"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(listing(dir.path()).is_empty());

    // The mesh goes through but the sidecar cannot be placed: the mesh must
    // not survive either.
    fs::create_dir(dir.path().join("x.seams.json")).unwrap();
    let out = riemann(dir.path(), &["--n-r", "3", "--n-theta", "8", "-o", "x.ply"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(listing(dir.path()), vec![dir.path().join("x.seams.json")]);
}

#[test]
fn evaluation_errors_exit_5_without_output() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("x.ply");
    let mut job = parse_args(["riemann", "-o", path.to_str().unwrap()]).unwrap();
    job.grid.r_min = 0.0;
    let err = run(&job).unwrap_err();
    assert!(matches!(err, CliError::Domain(_)));
    assert_eq!(err.exit_code(), 5);
    assert!(listing(dir.path()).is_empty());
}

#[test]
fn every_format_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for format in ["ply", "obj", "json", "csv"] {
        for run in ["a", "b"] {
            let name = format!("{run}.{format}");
            let out = riemann(
                dir.path(),
                &["--figure", "6", "--n-r", "6", "--n-theta", "24", "--format", format, "-o", &name],
            );
            assert!(out.status.success());
        }
        let mut suffixes = vec![format.to_string(), "seams.json".to_string()];
        if format == "obj" {
            suffixes.push("mtl".to_string());
        }
        for suffix in suffixes {
            let a = fs::read(dir.path().join(format!("a.{suffix}"))).unwrap();
            let b = fs::read(dir.path().join(format!("b.{suffix}"))).unwrap();
            assert!(!a.is_empty());
            if suffix != "obj" {
                assert_eq!(a, b, "{suffix}");
            } else {
                // Only the mtllib line names the run.
                let fix = |s: Vec<u8>| String::from_utf8(s).unwrap().replace("b.mtl", "a.mtl");
                assert_eq!(fix(a), fix(b));
            }
        }
    }
}

#[test]
fn text_formats_parse_back() {
    let dir = TempDir::new().unwrap();
    let common = ["--figure", "5", "--n-r", "4", "--n-theta", "12"];
    let n_vertices = 3 * 4 * 13 - 3 * 4;
    let n_faces = 3 * 2 * 3 * 12;

    let mut args = common.to_vec();
    args.extend(["--format", "csv", "-o", "s.csv"]);
    assert!(riemann(dir.path(), &args).status.success());
    let csv = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("x,y,c,k"));
    let rows: Vec<Vec<f64>> = rows
        .map(|r| r.split(',').map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), n_vertices);
    assert!(rows.iter().all(|r| r.len() == 4 && (-1.0..=1.0).contains(&r[2])));

    let mut args = common.to_vec();
    args.extend(["--format", "json", "-o", "s.json"]);
    assert!(riemann(dir.path(), &args).status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["charisma"], "cos");
    assert_eq!(doc["vertices"].as_array().unwrap().len(), n_vertices);
    assert_eq!(doc["faces"].as_array().unwrap().len(), n_faces);
    let v = &doc["vertices"][5];
    for key in ["x", "y", "c", "k", "w"] {
        assert!(!v[key].is_null(), "{key}");
    }

    let mut args = common.to_vec();
    args.extend(["--format", "obj", "-o", "s.obj"]);
    assert!(riemann(dir.path(), &args).status.success());
    let obj = fs::read_to_string(dir.path().join("s.obj")).unwrap();
    assert!(obj.contains("mtllib s.mtl\n"));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), n_vertices);
    let faces: Vec<Vec<usize>> = obj
        .lines()
        .filter_map(|l| l.strip_prefix("f "))
        .map(|l| l.split(' ').map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(faces.len(), n_faces);
    assert!(faces.iter().flatten().all(|&v| (1..=n_vertices).contains(&v)));
    let mtl = fs::read_to_string(dir.path().join("s.mtl")).unwrap();
    assert_eq!(mtl.matches("newmtl branch_").count(), 3);
}

#[test]
fn phase_figure_keeps_the_wrap_open() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--figure", "3b-range", "--walls", "--n-r", "4", "--n-theta", "12"]);
    assert!(out.status.success());
    let seams: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("riemann_surface.seams.json")).unwrap(),
    )
    .unwrap();
    let seams = seams["seams"].as_array().unwrap();
    assert_eq!(seams.iter().filter(|s| s["welded"] == true).count(), 2);
    let wrap = seams.iter().find(|s| s["upper"] == 1).unwrap();
    assert_eq!(wrap["lower"], -1);
    assert!((wrap["max_gap"].as_f64().unwrap() - std::f64::consts::TAU).abs() < 1e-12);
    // No wall is drawn across the π to -π wrap.
    let ply = read_ply(&dir.path().join("riemann_surface.ply"));
    assert_eq!(ply.faces.len(), 3 * 2 * 3 * 12);
}

#[test]
fn vertex_colours_follow_branch() {
    let dir = TempDir::new().unwrap();
    let out = riemann(dir.path(), &["--figure", "6", "--no-weld", "--n-r", "3", "--n-theta", "8", "--format", "json", "-o", "l.json"]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("l.json")).unwrap()).unwrap();
    let vertices = doc["vertices"].as_array().unwrap();
    let colors = doc["colors"].as_array().unwrap();
    let mut by_k = std::collections::BTreeMap::new();
    for (v, c) in vertices.iter().zip(colors) {
        let prev = by_k.insert(v["k"].as_i64().unwrap(), c.clone());
        if let Some(prev) = prev {
            assert_eq!(&prev, c);
        }
    }
    assert_eq!(by_k.len(), 5);
    assert_eq!(doc["welded"], false);
}
