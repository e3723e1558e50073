//! Builds the rotation complex at n = 5 and checks its characterisation and
//! its equivalence with the TT part of the blocking polyhedron.

use tspoly::artifacts::Artifacts;
use tspoly::rotation::{characterisation_check, verify_equivalence};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let report = characterisation_check(&art, 3, 1)?;
    println!(
        "rotation complex f-vector {:?}, checks pass: {}",
        report.f_vector,
        report.passed()
    );
    let t2 = verify_equivalence(&art)?;
    println!(
        "TT part f-vector {:?}, equivalence holds: {}",
        t2.tt_f_vector,
        t2.passed()
    );
    println!("{}", serde_json::to_string_pretty(&t2)?);
    Ok(())
}
