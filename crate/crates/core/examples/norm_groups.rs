//! Norm groups of cyclic extensions and which Brauer classes they split.

use rostlab::cohomology::CohClass;
use rostlab::{make_tower, CyclicExtension, ExtensionTower, Result};

fn main() -> Result<()> {
    let f = make_tower(3, 2, 1, 2, 4)?;
    let alpha = CohClass::all(&f, 2)?.pop().expect("nonempty");
    println!("alpha = {}", alpha.to_json());

    let exts = [
        CyclicExtension::kummer(&f, &f.parse("x")?, 1)?,
        CyclicExtension::kummer(&f, &f.parse("u*y")?, 1)?,
        CyclicExtension::unramified(&f, 2)?,
    ];
    for e in &exts {
        println!(
            "{}: norm group {:?}, splits alpha: {}",
            e.to_json(),
            e.norm_class_group()?.echelon(),
            e.splits(&alpha)?
        );
    }

    let mut tower = ExtensionTower::single(exts[0].clone());
    let top = tower.top().clone();
    tower.push(CyclicExtension::kummer(&top, &top.parse("y")?, 1)?)?;
    println!(
        "degree {} tower, norm group {:?}, splits alpha: {}",
        tower.degree(),
        tower.norm_class_group()?.echelon(),
        tower.splits(&alpha)?
    );
    Ok(())
}
