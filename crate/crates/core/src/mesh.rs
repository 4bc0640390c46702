//! Riemann-surface meshes built over a cut-aligned polar grid.
//!
//! Each branch `k` yields one sheet: the grid lifted to `(Re z, Im z, C)`.
//! The grid carries two copies of the cut, a column just below the negative
//! real axis (`θ = -π⁺`) and one on it (`θ = π`), so every sheet is an open
//! surface whose boundary includes both sides of the cut. Assembly pairs the
//! upper cut edge of sheet `k` with the lower cut edge of its continuation,
//! measures the gap, and optionally welds seams whose gap is within tolerance.

use std::f64::consts::{PI, TAU};

use crate::branches::{log_branch, root_branch, BranchIndex, IndexedFunction};
use crate::charisma::{evaluate_charisma, CharismaKind};
use crate::{ComplexValue, Error, Result};

/// Default tolerance for welding seams, in charisma units.
pub const DEFAULT_WELD_TOL: f64 = 1e-9;

/// Cyclic branch palette, indexed by `k mod 6`.
pub const BRANCH_PALETTE: [[u8; 3]; 6] = [
    [228, 26, 28],   // 0: red
    [55, 126, 184],  // 1, -5: blue
    [255, 127, 0],   // 2, -4: orange
    [152, 78, 163],  // 3, -3: purple
    [166, 86, 40],   // 4, -2: brown
    [77, 175, 74],   // 5, -1: green
];

pub fn branch_color(k: BranchIndex) -> [u8; 3] {
    BRANCH_PALETTE[k.0.rem_euclid(BRANCH_PALETTE.len() as i64) as usize]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialSpacing {
    #[default]
    Linear,
    Logarithmic,
}

/// Polar sampling lattice `r e^{iθ}` aligned with the negative real axis.
///
/// Points are stored row-major: row `i` is the radius `r_i`, column
/// `j in 0..=n_theta` the angle `θ_j = -π + 2πj/n_theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub spacing: RadialSpacing,
}

impl Default for DomainGrid {
    fn default() -> Self {
        DomainGrid {
            r_min: 0.05,
            r_max: 2.0,
            n_r: 40,
            n_theta: 240,
            spacing: RadialSpacing::Linear,
        }
    }
}

impl DomainGrid {
    pub fn new(r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        let grid = DomainGrid {
            r_min,
            r_max,
            n_r,
            n_theta,
            spacing: RadialSpacing::Linear,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn with_spacing(mut self, spacing: RadialSpacing) -> Self {
        self.spacing = spacing;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidGrid(msg));
        if !(self.r_min.is_finite() && self.r_min > 0.0) {
            return invalid(format!("r_min must be positive, got {}", self.r_min));
        }
        if !(self.r_max.is_finite() && self.r_max > self.r_min) {
            return invalid(format!(
                "r_max must exceed r_min, got [{}, {}]",
                self.r_min, self.r_max
            ));
        }
        if self.n_r < 2 {
            return invalid(format!("n_r must be at least 2, got {}", self.n_r));
        }
        if self.n_theta < 8 {
            return invalid(format!("n_theta must be at least 8, got {}", self.n_theta));
        }
        Ok(())
    }

    /// Columns per row, including both copies of the cut.
    pub fn columns(&self) -> usize {
        self.n_theta + 1
    }

    pub fn len(&self) -> usize {
        self.n_r * self.columns()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.columns() + col
    }

    pub fn radius(&self, row: usize) -> f64 {
        let last = self.n_r - 1;
        if row == 0 {
            return self.r_min;
        }
        if row == last {
            return self.r_max;
        }
        let t = row as f64 / last as f64;
        match self.spacing {
            RadialSpacing::Linear => self.r_min + (self.r_max - self.r_min) * t,
            RadialSpacing::Logarithmic => self.r_min * (self.r_max / self.r_min).powf(t),
        }
    }

    pub fn angle(&self, col: usize) -> f64 {
        if col == self.n_theta {
            PI
        } else {
            -PI + TAU * col as f64 / self.n_theta as f64
        }
    }

    /// Lattice point at `(row, col)`.
    ///
    /// Column 0 sits one smallest-normal step below the cut so its principal
    /// phase is `-π⁺`; column `n_theta` sits exactly on it. Quarter-turn
    /// columns are placed exactly on the axes.
    pub fn point(&self, row: usize, col: usize) -> ComplexValue {
        let r = self.radius(row);
        if col == 0 {
            return ComplexValue::new(-r, -f64::MIN_POSITIVE);
        }
        if col == self.n_theta {
            return ComplexValue::new(-r, 0.0);
        }
        if (4 * col).is_multiple_of(self.n_theta) {
            return match 4 * col / self.n_theta {
                1 => ComplexValue::new(0.0, -r),
                2 => ComplexValue::new(r, 0.0),
                _ => ComplexValue::new(0.0, r),
            };
        }
        ComplexValue::from_polar(r, self.angle(col))
    }
}

/// The polar lattice as a flat row-major list of `n_r * (n_theta + 1)` points.
pub fn sample_domain(grid: &DomainGrid) -> Result<Vec<ComplexValue>> {
    grid.validate()?;
    let mut points = Vec::with_capacity(grid.len());
    for row in 0..grid.n_r {
        for col in 0..grid.columns() {
            points.push(grid.point(row, col));
        }
    }
    Ok(points)
}

/// A domain sample lifted to 3D on one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
    /// Charisma ordinate.
    pub c: f64,
    pub k: BranchIndex,
    /// Range value `f_k(x + iy)`.
    pub w: ComplexValue,
}

impl SurfacePoint {
    pub fn z(&self) -> ComplexValue {
        ComplexValue::new(self.x, self.y)
    }

    pub fn position(&self) -> [f64; 3] {
        [self.x, self.y, self.c]
    }

    pub fn distance(&self, other: &SurfacePoint) -> f64 {
        let (dx, dy, dc) = (self.x - other.x, self.y - other.y, self.c - other.c);
        (dx * dx + dy * dy + dc * dc).sqrt()
    }
}

/// One branch of the surface: the full lattice lifted by charisma, plus two
/// triangles per lattice quad.
#[derive(Debug, Clone, PartialEq)]
pub struct Sheet {
    pub function: IndexedFunction,
    pub kind: CharismaKind,
    pub grid: DomainGrid,
    pub k: BranchIndex,
    pub points: Vec<SurfacePoint>,
    pub faces: Vec<[usize; 3]>,
}

impl Sheet {
    /// Vertex indices of the `θ = π` column, one per row.
    pub fn upper_edge(&self) -> Vec<usize> {
        (0..self.grid.n_r)
            .map(|row| self.grid.index(row, self.grid.n_theta))
            .collect()
    }

    /// Vertex indices of the `θ = -π⁺` column, one per row.
    pub fn lower_edge(&self) -> Vec<usize> {
        (0..self.grid.n_r).map(|row| self.grid.index(row, 0)).collect()
    }
}

fn lift(z: ComplexValue, f: IndexedFunction, k: BranchIndex, kind: CharismaKind) -> Result<SurfacePoint> {
    let w = match f {
        IndexedFunction::Log => log_branch(z, k)?,
        IndexedFunction::Root(n) => root_branch(z, n, k)?,
    };
    let c = evaluate_charisma(z, k, f, kind)?.get();
    Ok(SurfacePoint {
        x: z.re,
        y: z.im,
        c,
        k,
        w,
    })
}

/// Lift every lattice point onto branch `k` and triangulate.
///
/// Each quad is split along its low-r/low-θ to high-r/high-θ diagonal, with
/// both triangles counter-clockwise seen from `+C`.
pub fn build_sheet(
    f: IndexedFunction,
    k: BranchIndex,
    kind: CharismaKind,
    grid: &DomainGrid,
) -> Result<Sheet> {
    f.validate()?;
    kind.check_compatible(f)?;
    f.check_index(k)?;
    let points = sample_domain(grid)?
        .into_iter()
        .map(|z| lift(z, f, k, kind))
        .collect::<Result<Vec<_>>>()?;

    let mut faces = Vec::with_capacity(2 * (grid.n_r - 1) * grid.n_theta);
    for row in 0..grid.n_r - 1 {
        for col in 0..grid.n_theta {
            let a = grid.index(row, col);
            let b = grid.index(row, col + 1);
            let c = grid.index(row + 1, col);
            let d = grid.index(row + 1, col + 1);
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    Ok(Sheet {
        function: f,
        kind,
        grid: *grid,
        k,
        points,
        faces,
    })
}

/// Where the upper cut edge of one sheet meets the lower cut edge of the
/// sheet that continues it.
#[derive(Debug, Clone, PartialEq)]
pub struct Seam {
    /// Sheet whose `θ = π` edge is on this seam.
    pub upper: BranchIndex,
    /// Sheet whose `θ = -π⁺` edge is on this seam.
    pub lower: BranchIndex,
    /// Mesh vertices along the upper edge, one per grid row.
    pub upper_edge: Vec<usize>,
    /// Mesh vertices along the lower edge. Equal to `upper_edge` once welded.
    pub lower_edge: Vec<usize>,
    /// Largest pointwise 3D distance between the two edges, before welding.
    pub max_gap: f64,
    pub mean_gap: f64,
    pub welded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeamStats {
    pub upper: BranchIndex,
    pub lower: BranchIndex,
    pub max_gap: f64,
    pub mean_gap: f64,
    pub welded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub function: IndexedFunction,
    pub kind: CharismaKind,
    pub grid: DomainGrid,
    /// Branches in assembly order.
    pub sheets: Vec<BranchIndex>,
    pub vertices: Vec<SurfacePoint>,
    pub colors: Vec<[u8; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Owning branch of each face; `None` for wall faces.
    pub face_branch: Vec<Option<BranchIndex>>,
    pub seams: Vec<Seam>,
    /// Whether welding was requested at assembly.
    pub welded: bool,
    pub weld_tol: f64,
}

/// Concatenate sheets, measure every seam, and weld those within `weld_tol`.
///
/// A seam is welded only if every vertex pair along it is within tolerance;
/// the lower-edge vertices are then dropped and their faces re-pointed at the
/// matching upper-edge vertices.
pub fn assemble_surface(sheets: &[Sheet], weld: bool, weld_tol: f64) -> Result<SurfaceMesh> {
    let first = sheets.first().ok_or(Error::NoSheets)?;
    if !(weld_tol.is_finite() && weld_tol >= 0.0) {
        return Err(Error::InvalidTolerance(weld_tol));
    }
    for (i, sheet) in sheets.iter().enumerate() {
        if sheet.grid != first.grid {
            return Err(Error::SheetMismatch("grid"));
        }
        if sheet.function != first.function {
            return Err(Error::SheetMismatch("function"));
        }
        if sheet.kind != first.kind {
            return Err(Error::SheetMismatch("charisma"));
        }
        if sheets[..i].iter().any(|s| s.k == sheet.k) {
            return Err(Error::DuplicateSheet(sheet.k));
        }
    }

    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut face_branch = Vec::new();
    let mut offsets = Vec::with_capacity(sheets.len());
    for sheet in sheets {
        let offset = vertices.len();
        offsets.push(offset);
        vertices.extend_from_slice(&sheet.points);
        faces.extend(sheet.faces.iter().map(|t| t.map(|v| v + offset)));
        face_branch.extend(std::iter::repeat_n(Some(sheet.k), sheet.faces.len()));
    }

    let mut seams = Vec::new();
    for (a, sheet) in sheets.iter().enumerate() {
        let next = first.function.continuation(sheet.k);
        let Some(b) = sheets.iter().position(|s| s.k == next && s.k != sheet.k) else {
            continue;
        };
        let upper_edge: Vec<usize> = sheet.upper_edge().iter().map(|v| v + offsets[a]).collect();
        let lower_edge: Vec<usize> = sheets[b].lower_edge().iter().map(|v| v + offsets[b]).collect();
        let gaps: Vec<f64> = upper_edge
            .iter()
            .zip(&lower_edge)
            .map(|(&u, &l)| vertices[u].distance(&vertices[l]))
            .collect();
        let max_gap = gaps.iter().copied().fold(0.0, f64::max);
        let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
        seams.push(Seam {
            upper: sheet.k,
            lower: next,
            upper_edge,
            lower_edge,
            max_gap,
            mean_gap,
            welded: weld && max_gap <= weld_tol,
        });
    }

    if seams.iter().any(|s| s.welded) {
        // Lower-edge vertices of welded seams collapse onto their upper twins.
        let mut target: Vec<usize> = (0..vertices.len()).collect();
        for seam in seams.iter().filter(|s| s.welded) {
            for (&u, &l) in seam.upper_edge.iter().zip(&seam.lower_edge) {
                target[l] = u;
            }
        }
        let mut remap = vec![usize::MAX; vertices.len()];
        let mut kept = Vec::with_capacity(vertices.len());
        for (v, point) in vertices.iter().enumerate() {
            if target[v] == v {
                remap[v] = kept.len();
                kept.push(*point);
            }
        }
        let resolve = |v: usize| remap[target[v]];
        for face in &mut faces {
            *face = face.map(resolve);
        }
        for seam in &mut seams {
            seam.upper_edge.iter_mut().for_each(|v| *v = resolve(*v));
            seam.lower_edge.iter_mut().for_each(|v| *v = resolve(*v));
        }
        vertices = kept;
    }

    let colors = vertices.iter().map(|p| branch_color(p.k)).collect();
    Ok(SurfaceMesh {
        function: first.function,
        kind: first.kind,
        grid: first.grid,
        sheets: sheets.iter().map(|s| s.k).collect(),
        vertices,
        colors,
        faces,
        face_branch,
        seams,
        welded: weld,
        weld_tol,
    })
}

/// Per-seam gap statistics, measured before any welding.
pub fn seam_report(mesh: &SurfaceMesh) -> Vec<SeamStats> {
    mesh.seams
        .iter()
        .map(|s| SeamStats {
            upper: s.upper,
            lower: s.lower,
            max_gap: s.max_gap,
            mean_gap: s.mean_gap,
            welded: s.welded,
        })
        .collect()
}

impl SurfaceMesh {
    pub fn face_area(&self, face: [usize; 3]) -> f64 {
        let [a, b, c] = face.map(|v| self.vertices[v].position());
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let n = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
    }

    pub fn total_area(&self) -> f64 {
        self.faces.iter().map(|&f| self.face_area(f)).sum()
    }

    /// Add vertical wall strips across every unwelded seam, showing where the
    /// sheets connect discontinuously. Returns the number of faces added.
    ///
    /// Phase surfaces get no walls: their only open seam is the `C = π` to
    /// `C = -π` wrap, which is not a join of the surface.
    pub fn add_walls(&mut self) -> usize {
        if self.kind == CharismaKind::Phase {
            return 0;
        }
        let mut added = Vec::new();
        for seam in self.seams.iter().filter(|s| !s.welded) {
            for row in 0..seam.upper_edge.len() - 1 {
                let (u0, u1) = (seam.upper_edge[row], seam.upper_edge[row + 1]);
                let (l0, l1) = (seam.lower_edge[row], seam.lower_edge[row + 1]);
                added.push([u0, u1, l1]);
                added.push([u0, l1, l0]);
            }
        }
        let before = self.faces.len();
        for face in added {
            let scale = face
                .iter()
                .flat_map(|&a| face.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.vertices[a].distance(&self.vertices[b]))
                .fold(0.0, f64::max);
            if self.face_area(face) > f64::EPSILON * scale * scale {
                self.faces.push(face);
                self.face_branch.push(None);
            }
        }
        self.faces.len() - before
    }
}
