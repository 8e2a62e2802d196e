//! Constructing (L, xi) with L splitting beta and N(xi) = theta, in both cases.

use rostlab::inductive::{generate_problems, inductive_pair};
use rostlab::{make_tower, Result};

fn main() -> Result<()> {
    let k = make_tower(5, 2, 2, 1, 8)?;
    for prob in generate_problems(&k, 1, 6, 7)? {
        prob.validate()?;
        let pair = inductive_pair(&prob)?;
        println!(
            "a = {}, theta = {}  =>  case {}, L = {}, xi = {}, verified: {}",
            prob.a,
            prob.theta,
            pair.case,
            pair.extension.to_json(),
            pair.xi,
            prob.verify(&pair.extension, &pair.xi)?
        );
    }
    Ok(())
}
