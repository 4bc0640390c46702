//! The pipeline behind the binary: build sheets, assemble, encode, write.

use std::io::Write;
use std::path::{Path, PathBuf};

use riemann_core::{assemble_surface, build_sheet, SurfaceMesh};
use tempfile::NamedTempFile;

use crate::args::{Format, JobSpec};
use crate::error::CliError;
use crate::export;

#[derive(Debug)]
pub struct RunOutcome {
    pub mesh: SurfaceMesh,
    /// Files written, mesh first and seam report last.
    pub files: Vec<PathBuf>,
}

pub fn build_mesh(job: &JobSpec) -> Result<SurfaceMesh, CliError> {
    let sheets = job
        .branches
        .iter()
        .map(|&k| build_sheet(job.function, k, job.charisma, &job.grid))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mesh = assemble_surface(&sheets, job.weld, job.weld_tol)?;
    if job.walls {
        mesh.add_walls();
    }
    Ok(mesh)
}

/// `dir/name.ext` to `dir/name.<suffix>`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.{suffix}"))
}

pub fn seams_path(output: &Path) -> PathBuf {
    sibling(output, "seams.json")
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Stage every file in a temporary sibling, then rename them into place. If
/// any step fails, nothing is left at the destination paths.
fn write_all(files: &[(PathBuf, String)]) -> Result<(), CliError> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir).map_err(io_error(path))?;
        tmp.write_all(contents.as_bytes()).map_err(io_error(path))?;
        tmp.as_file().sync_all().map_err(io_error(path))?;
        staged.push((tmp, path));
    }
    let mut placed: Vec<&PathBuf> = Vec::new();
    for (tmp, path) in staged {
        if let Err(e) = tmp.persist(path) {
            for done in placed {
                let _ = std::fs::remove_file(done);
            }
            return Err(io_error(path)(e.error));
        }
        placed.push(path);
    }
    Ok(())
}

pub fn run(job: &JobSpec) -> Result<RunOutcome, CliError> {
    let mesh = build_mesh(job)?;
    let mut files = Vec::new();
    match job.format {
        Format::Ply => files.push((job.output.clone(), export::to_ply(&mesh))),
        Format::Csv => files.push((job.output.clone(), export::to_csv(&mesh))),
        Format::Json => files.push((job.output.clone(), export::to_json(&mesh))),
        Format::Obj => {
            let mtl = sibling(&job.output, "mtl");
            let mtl_name = mtl.file_name().unwrap_or_default().to_string_lossy().into_owned();
            files.push((job.output.clone(), export::to_obj(&mesh, &mtl_name)));
            files.push((mtl, export::to_mtl(&mesh)));
        }
    }
    files.push((seams_path(&job.output), export::seams_json(&mesh)));
    write_all(&files)?;
    Ok(RunOutcome {
        mesh,
        files: files.into_iter().map(|(p, _)| p).collect(),
    })
}
