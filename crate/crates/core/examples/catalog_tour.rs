//! Walk the catalog and export every entry in its file format.

use orbitsolve::{catalog, io};

fn main() -> orbitsolve::Result<()> {
    for id in catalog::list() {
        let entry = catalog::get(id)?;
        let exported = io::export_entry(id)?;
        let size = serde_json::to_string(&exported)?.len();
        println!("{id:<22} {:<70} {size} bytes", entry.note);
    }
    println!("{}", serde_json::to_string_pretty(&io::export_entry("Z")?)?);
    Ok(())
}
