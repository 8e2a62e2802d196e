//! Symbols in H^r(F, Z/4(r-1)), cup products and residue maps.

use rostlab::{make_tower, symbol, Result};

fn main() -> Result<()> {
    let f = make_tower(5, 2, 2, 2, 4)?;
    println!("field: {f}");
    let cls = |s: &str| f.parse(s).and_then(|e| e.kummer_class());

    let xy = symbol(&[cls("x")?, cls("y")?])?;
    let uy = symbol(&[cls("u")?, cls("y")?])?;
    let alpha = xy.add(&uy.scale(3))?;
    println!("alpha = {}", alpha.to_json());
    println!("period = {}", alpha.period());
    println!("residue along y = {}", alpha.residue()?.to_json());

    // Steinberg relation: {a, 1 - a} = 0
    let a = f.parse("3*x")?;
    let one_minus = f.one().sub(&a)?;
    let st = symbol(&[a.kummer_class()?, one_minus.kummer_class()?])?;
    println!("{{3x, 1 - 3x}} is zero: {}", st.is_zero());

    // {x, -x} = 0 as well
    let xx = symbol(&[cls("x")?, cls("-x")?])?;
    println!("{{x, -x}} is zero: {}", xx.is_zero());

    let cube = alpha.cup(&cls("x + y")?)?;
    println!("alpha ∪ (x + y) = {}", cube.to_json());
    Ok(())
}
