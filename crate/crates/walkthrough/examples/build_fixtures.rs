//! Regenerate `fixtures/` from the corpus built in code.
//!
//! ```text
//! cargo run -p walkthrough --example build_fixtures [-- <dir>]
//! ```

use std::path::PathBuf;

fn main() -> anyhow::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(walkthrough::corpus::default_fixtures_dir);
    let built = walkthrough::fixtures::build()?;
    for path in walkthrough::fixtures::write(&dir, &built)? {
        println!("{}", path.display());
    }
    Ok(())
}
