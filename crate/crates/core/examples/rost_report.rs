//! R(alpha), S(alpha) and the quotient R/S for every class over a small tower.

use std::collections::BTreeMap;

use rostlab::cohomology::CohClass;
use rostlab::rost::quotient_report;
use rostlab::{make_tower, Result};

fn main() -> Result<()> {
    let f = make_tower(3, 2, 1, 2, 3)?;
    let mut tally = BTreeMap::new();
    for alpha in CohClass::all(&f, 2)? {
        let rep = quotient_report(&alpha)?;
        *tally
            .entry(format!("{:?}, |R/S| = {}", rep.status, rep.quotient_order))
            .or_insert(0) += 1;
    }
    println!("{f}: {tally:?}");

    let alpha = CohClass::all(&f, 2)?.pop().expect("nonempty");
    println!(
        "{}",
        serde_json::to_string_pretty(&quotient_report(&alpha)?.to_json()).expect("json")
    );
    Ok(())
}
