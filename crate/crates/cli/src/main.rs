use std::process::ExitCode;

use riemann_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let result = parse_args(std::env::args_os()).and_then(|job| run(&job));
    match result {
        Ok(outcome) => {
            let mesh = &outcome.mesh;
            let welded = mesh.seams.iter().filter(|s| s.welded).count();
            println!(
                "{} sheets, {} vertices, {} faces, {}/{} seams welded",
                mesh.sheets.len(),
                mesh.vertices.len(),
                mesh.faces.len(),
                welded,
                mesh.seams.len()
            );
            for path in &outcome.files {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e @ CliError::Clap(_)) => {
            if let CliError::Clap(inner) = &e {
                let _ = inner.print();
            }
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("riemann: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
