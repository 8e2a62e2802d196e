//! Arithmetic in F_3((x))((y)): inverses, valuations, roots and Kummer classes.

use rostlab::{make_tower, Result};

fn main() -> Result<()> {
    let f = make_tower(3, 2, 1, 2, 6)?;
    println!("field: {f}");

    let a = f.parse("2 + x")?;
    let inv = a.inv()?;
    println!("({a})^-1 = {inv}");
    println!("check: {}", a.mul(&inv)?);

    let b = f.parse("x^2*y^-1 + y")?;
    println!(
        "v({b}) = {:?}, residue of y*b = {}",
        b.valuation(),
        b.mul(&f.var(2)?)?.residue()?
    );

    // 1 + y is a square: the square root is a one-unit
    let c = f.parse("1 + y")?;
    let r = c.nth_root(2).expect("1 + y is a square");
    println!("sqrt({c}) = {r}");

    for s in ["u", "x", "y", "u*x*y^3", "4*x^2"] {
        let e = f.parse(s)?;
        println!("class of {s:>8} in F*/F*^2: {}", e.kummer_class()?);
    }
    Ok(())
}
