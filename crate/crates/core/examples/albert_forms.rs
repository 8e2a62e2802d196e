//! Albert forms of biquaternion classes: isotropy and similarity factors.

use rostlab::albert::{albert_form, check_albert_chain, witt_index};
use rostlab::{make_tower, Result};

fn main() -> Result<()> {
    let f = make_tower(3, 2, 1, 2, 3)?;
    let p = |s: &str| f.parse(s);
    let rep = check_albert_chain(&p("u")?, &p("x")?, &p("x")?, &p("y")?)?;
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("json"));

    // over three levels an anisotropic Albert form appears
    let g = make_tower(3, 2, 1, 3, 3)?;
    let phi = albert_form(&g.parse("u")?, &g.parse("x")?, &g.parse("y")?, &g.parse("z")?)?;
    println!("(u, x) + (y, z): Witt index {}", witt_index(&phi)?);
    Ok(())
}
