//! Splitting Brauer classes into an unramified part plus {lift(chi), y}.

use rostlab::cohomology::CohClass;
use rostlab::{make_tower, symbol, Result};

fn main() -> Result<()> {
    let f = make_tower(7, 3, 1, 2, 3)?;
    println!("field: {f}");
    let y = f.var(2)?.kummer_class()?;
    for alpha in CohClass::all(&f, 2)?.into_iter().step_by(7).take(6) {
        let d = alpha.decompose()?;
        let over_residue = d.unramified_part.specialize()?;
        println!(
            "{}  =  {} (from the residue field: {}) + {{lift {}, y}}",
            alpha.to_json(),
            d.unramified_part.to_json(),
            over_residue.to_json(),
            d.ramified_character
        );
        let chi = f.class_representative(&d.ramified_character.lift_with_top(&f, 0)?)?;
        let rebuilt = over_residue
            .inflate(&f)?
            .add(&symbol(&[chi.kummer_class()?, y.clone()])?)?;
        assert_eq!(rebuilt, alpha);
    }
    Ok(())
}
