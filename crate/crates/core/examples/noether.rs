//! Noether currents of the Nambu–Goto string for the Poincaré symmetries.

use varseq::cli::ModelFile;
use varseq::prolong::{noether_current, symmetry_check};
use varseq::variational::cartan_form;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/models/string.jv");
    let model = ModelFile::parse(&std::fs::read_to_string(path)?)?;
    let lambda = model.form("lambda").ok_or("no Lagrangian")?;
    let theta = cartan_form(lambda)?;
    for named in &model.fields {
        let symmetric = symmetry_check(&named.field, lambda)?;
        let current = noether_current(&theta, &named.field)?;
        println!("{} (symmetry: {symmetric}):", named.name);
        println!("  Ψ = {}", current.horizontal.to_text());
    }
    Ok(())
}
