//! Intersections of norm groups against the norm group of the compositum.

use rostlab::rost::norm_intersection_condition;
use rostlab::{make_tower, Result};

fn main() -> Result<()> {
    for (q, ell) in [(3, 2), (7, 3)] {
        let k = make_tower(q, ell, 1, 1, 6)?;
        let gens = [k.parse("u")?.kummer_class()?, k.parse("x")?.kummer_class()?];
        let c = norm_intersection_condition(&k, &gens)?;
        println!(
            "{k}: lhs {:?} rhs {:?} holds {}",
            c.lhs.echelon(),
            c.rhs.echelon(),
            c.holds
        );
    }
    Ok(())
}
