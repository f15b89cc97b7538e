//! Runs an experiment config the way the command-line tool does and lists
//! the model catalogue. Pass a config path or use the bundled one.

use levy_heat::cli::{list_models, run_file};
use std::path::{Path, PathBuf};

fn main() -> levy_heat::Result<()> {
    print!("{}", list_models());
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/stable_interval.json"));
    let out = std::env::temp_dir().join("levy-heat-example");
    std::fs::create_dir_all(&out)?;
    let outcome = run_file(&path, None, Some(&out))?;
    for r in &outcome.reports {
        println!("{r}");
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    println!("exit code {}", outcome.exit.code());
    Ok(())
}
