//! Diagonal quadratic forms over towers with odd `q`, `ell = 2`, `n = 1`.
//!
//! Isotropy is decided by Springer's theorem: split the entries by the parity
//! of their top valuation, pass to residue forms and recurse down to the
//! finite field.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::classes::{ClassVector, Subgroup};
use crate::cohomology::{symbol, CohClass};
use crate::error::{Error, Result};
use crate::rost::{nrd_lower_bound, rost_kernel};
use crate::tower::{FieldElement, TowerField};

#[derive(Clone, Debug)]
pub struct QuadraticForm {
    field: Arc<TowerField>,
    diagonal: Vec<FieldElement>,
}

fn check_field(field: &TowerField) -> Result<()> {
    if field.q().is_multiple_of(2) || field.ell() != 2 || field.n() != 1 {
        return Err(Error::UnsupportedField(format!(
            "quadratic forms need odd q with ell = 2 and n = 1, got {field}"
        )));
    }
    Ok(())
}

impl QuadraticForm {
    pub fn new(field: &Arc<TowerField>, diagonal: Vec<FieldElement>) -> Result<QuadraticForm> {
        check_field(field)?;
        for a in &diagonal {
            if a.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
            if a.is_zero() {
                return Err(Error::ZeroEntry);
            }
        }
        Ok(QuadraticForm {
            field: field.clone(),
            diagonal,
        })
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }
    pub fn diagonal(&self) -> &[FieldElement] {
        &self.diagonal
    }
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn scaled(&self, rho: &FieldElement) -> Result<QuadraticForm> {
        let diagonal = self.diagonal.iter().map(|a| a.mul(rho)).collect::<Result<_>>()?;
        QuadraticForm::new(&self.field, diagonal)
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        let mut diagonal = self.diagonal.clone();
        diagonal.extend(other.diagonal.iter().cloned());
        QuadraticForm::new(&self.field, diagonal)
    }

    pub fn anisotropic_dim(&self) -> Result<usize> {
        anisotropic_dim(&self.diagonal)
    }

    pub fn to_json(&self) -> Value {
        json!(self.diagonal.iter().map(|a| a.to_string()).collect::<Vec<_>>())
    }
}

fn anisotropic_dim(entries: &[FieldElement]) -> Result<usize> {
    let Some(first) = entries.first() else {
        return Ok(0);
    };
    let field = first.field();
    if field.depth() == 0 {
        let gf = field.finite_field();
        let n = entries.len();
        if n % 2 == 1 {
            return Ok(1);
        }
        let mut disc = if (n / 2) % 2 == 1 { gf.neg(1) } else { 1 };
        for a in entries {
            disc = gf.mul(disc, a.as_fq().expect("depth 0"));
        }
        return Ok(if gf.dlog(disc) % 2 == 0 { 0 } else { 2 });
    }
    let mut parts: [Vec<FieldElement>; 2] = [Vec::new(), Vec::new()];
    for a in entries {
        let (v, _) = a.valuation_split()?;
        parts[v.rem_euclid(2) as usize].push(a.leading_coefficient()?);
    }
    Ok(anisotropic_dim(&parts[0])? + anisotropic_dim(&parts[1])?)
}

pub fn witt_index(q: &QuadraticForm) -> Result<usize> {
    Ok((q.dim() - q.anisotropic_dim()?) / 2)
}

pub fn isotropic(q: &QuadraticForm) -> Result<bool> {
    Ok(witt_index(q)? > 0)
}

/// `<a, b, -ab, -c, -d, cd>`, attached to `(a, b) + (c, d)`.
pub fn albert_form(a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> Result<QuadraticForm> {
    let field = a.field().clone();
    for e in [a, b, c, d] {
        if e.is_zero() {
            return Err(Error::ZeroEntry);
        }
    }
    QuadraticForm::new(
        &field,
        vec![a.clone(), b.clone(), a.mul(b)?.neg(), c.neg(), d.neg(), c.mul(d)?],
    )
}

/// Square classes `rho` with `rho phi ≅ phi`, i.e. `phi ⊥ -rho phi` hyperbolic.
pub fn similarity_factors(phi: &QuadraticForm) -> Result<Subgroup> {
    if phi.dim() % 2 == 1 {
        return Err(Error::OddDimension);
    }
    let field = phi.field();
    let mut members = Vec::new();
    for v in ClassVector::all(field) {
        let rho = field.class_representative(&v)?;
        let sum = phi.perp(&phi.scaled(&rho.neg())?)?;
        if witt_index(&sum)? == phi.dim() {
            members.push(v);
        }
    }
    let g = Subgroup::span(field, &members)?;
    if g.order() != members.len() as u64 {
        return Err(Error::InternalVerificationFailed(
            "similarity factors do not form a subgroup".into(),
        ));
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct AlbertReport {
    pub alpha: CohClass,
    pub form: QuadraticForm,
    pub isotropic: bool,
    pub rost: Subgroup,
    pub similarity: Subgroup,
    pub nrd: Subgroup,
    pub holds: bool,
}

impl AlbertReport {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.to_json(),
            "form": self.form.to_json(),
            "isotropic": self.isotropic,
            "R": self.rost.echelon(),
            "G": self.similarity.echelon(),
            "Nrd": self.nrd.echelon(),
            "holds": self.holds,
        })
    }
}

/// Compares `R(alpha)`, `G(phi)` and the reduced-norm path for
/// `alpha = (a, b) + (c, d)` over a depth-2 tower.
pub fn check_albert_chain(a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> Result<AlbertReport> {
    let field = a.field().clone();
    check_field(&field)?;
    if field.depth() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "depth {} (depth 2 required)",
            field.depth()
        )));
    }
    let form = albert_form(a, b, c, d)?;
    let alpha =
        symbol(&[a.kummer_class()?, b.kummer_class()?])?.add(&symbol(&[c.kummer_class()?, d.kummer_class()?])?)?;
    let rost = rost_kernel(&alpha)?;
    let similarity = similarity_factors(&form)?;
    let nrd = nrd_lower_bound(&alpha)?.0.join(&Subgroup::multiples(&field, 2))?;
    Ok(AlbertReport {
        holds: rost == similarity && similarity == nrd,
        isotropic: isotropic(&form)?,
        alpha,
        form,
        rost,
        similarity,
        nrd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::make_tower;

    fn form(f: &Arc<TowerField>, entries: &[&str]) -> QuadraticForm {
        QuadraticForm::new(f, entries.iter().map(|e| f.parse(e).unwrap()).collect()).unwrap()
    }

    #[test]
    fn small_forms() {
        let f = make_tower(3, 2, 1, 1, 3).unwrap();
        assert_eq!(witt_index(&form(&f, &["1", "-1"])).unwrap(), 1);
        assert!(isotropic(&form(&f, &["1", "1", "1"])).unwrap());
        // norm form of the quaternion algebra (u, x)
        assert_eq!(witt_index(&form(&f, &["1", "-u", "-x", "u*x"])).unwrap(), 0);
        assert_eq!(witt_index(&form(&f, &["1", "-1", "x", "-x"])).unwrap(), 2);
    }

    #[test]
    fn albert_forms() {
        let f = make_tower(3, 2, 1, 2, 3).unwrap();
        let one = f.one();
        let split = albert_form(&one, &one, &one, &one).unwrap();
        assert!(isotropic(&split).unwrap());
        assert_eq!(similarity_factors(&split).unwrap(), Subgroup::full(&f));
        assert_eq!(albert_form(&one, &f.zero(), &one, &one).unwrap_err(), Error::ZeroEntry);
        assert_eq!(
            similarity_factors(&form(&f, &["1", "x", "y"])).unwrap_err(),
            Error::OddDimension
        );
    }

    #[test]
    fn albert_chain_on_named_classes() {
        let f = make_tower(3, 2, 1, 2, 3).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let rep = check_albert_chain(&p("u"), &p("x"), &p("x"), &p("y")).unwrap();
        assert!(rep.holds);
        let rep = check_albert_chain(&p("1"), &p("x"), &p("1"), &p("y")).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.rost, Subgroup::full(&f));
    }
}
