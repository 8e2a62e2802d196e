//! Rost kernels, reduced-norm class groups and Suslin groups.
//!
//! `R(alpha)` is the kernel of `v -> alpha ∪ v` on `F*/F*^(ell^n)`. The reduced
//! norm group is bounded below by the span of the norm groups of all supported
//! splitting towers (one or two cyclic steps). For period `ell` there is a
//! second, residue-field description of the Suslin group; when the two agree,
//! or when the lower bound already fills `R(alpha)`, the group is exact.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::{ring_of, ClassVector, Subgroup};
use crate::cohomology::{self, cup_kernel, CohClass};
use crate::error::{Error, Result};
use crate::extensions::{CyclicExtension, ExtensionTower};
use crate::gf::inv_mod;
use crate::howell::Ring;
use crate::tower::{FieldElement, TowerField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Verified,
    Counterexample,
    Inconclusive,
}

/// `{v : alpha ∪ v = 0}`.
pub fn rost_kernel(alpha: &CohClass) -> Result<Subgroup> {
    if alpha.degree() != 2 {
        return Err(Error::DegreeUnsupported(alpha.degree()));
    }
    cup_kernel(alpha)
}

// ---- splitting atlas -----------------------------------------------------------------

/// Supported splitting towers of a field, grouped by the kernel of restriction
/// on `H^2`; each group carries the join of the towers' norm groups.
pub struct SplittingAtlas {
    field: Arc<TowerField>,
    ring: Ring,
    /// (kernel of restriction as a Howell form over H^2 coordinates, joined
    /// norm group, least tower degree)
    groups: Vec<(Vec<(usize, Vec<u64>)>, Subgroup, u32)>,
    towers: usize,
}

fn h2_rank(field: &TowerField) -> usize {
    cohomology::rank(field.depth(), 2)
}

fn restriction_kernel(field: &Arc<TowerField>, tower: &ExtensionTower) -> Result<Vec<(usize, Vec<u64>)>> {
    let ring = ring_of(field.as_ref());
    let mut rows = Vec::new();
    for i in 0..h2_rank(field) {
        let img = tower.restrict(&CohClass::basis_element(field, 2, i)?)?;
        rows.push(img.coeffs().iter().map(|&x| x as u64).collect::<Vec<_>>());
    }
    let cols = h2_rank(tower.top());
    let ker = ring.left_kernel(&rows, cols);
    Ok(ring.howell(&ker, h2_rank(field)))
}

/// Every supported single cyclic step over `field`, deduplicated by its
/// standardized presentation.
fn single_steps(field: &Arc<TowerField>) -> Vec<CyclicExtension> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in 1..=field.n() {
        for v in ClassVector::all(field) {
            let Ok(ext) = CyclicExtension::kummer_from_class(field, &v, m) else {
                continue;
            };
            let key = match ext.kummer_generator() {
                Some(b) => format!("{m}:{}", b),
                None => format!("{m}:unramified"),
            };
            if seen.insert(key) {
                out.push(ext);
            }
        }
    }
    out
}

impl SplittingAtlas {
    pub fn build(field: &Arc<TowerField>) -> Result<SplittingAtlas> {
        let ring = ring_of(field.as_ref());
        let mut by_kernel: HashMap<Vec<(usize, Vec<u64>)>, (Subgroup, u32)> = HashMap::new();
        let mut towers = 0;
        let mut add = |tower: &ExtensionTower| -> Result<()> {
            let ker = restriction_kernel(field, tower)?;
            if ker.is_empty() {
                return Ok(());
            }
            let norms = tower.norm_class_group()?;
            towers += 1;
            match by_kernel.get_mut(&ker) {
                Some((g, deg)) => {
                    *g = g.join(&norms)?;
                    *deg = (*deg).min(tower.degree());
                }
                None => {
                    by_kernel.insert(ker, (norms, tower.degree()));
                }
            }
            Ok(())
        };
        for first in single_steps(field) {
            let top = first.top().clone();
            let one = ExtensionTower::single(first);
            add(&one)?;
            for second in single_steps(&top) {
                let mut two = one.clone();
                two.push(second)?;
                add(&two)?;
            }
        }
        let mut groups: Vec<_> = by_kernel.into_iter().map(|(k, (g, d))| (k, g, d)).collect();
        groups.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(SplittingAtlas {
            field: field.clone(),
            ring,
            groups,
            towers,
        })
    }

    /// Cached atlas per field.
    pub fn of(field: &Arc<TowerField>) -> Result<Arc<SplittingAtlas>> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<SplittingAtlas>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = format!("{:?}|{:?}", field, field.precision());
        if let Some(a) = cache.lock().unwrap().get(&key) {
            return Ok(a.clone());
        }
        let atlas = Arc::new(Self::build(field)?);
        Ok(cache.lock().unwrap().entry(key).or_insert(atlas).clone())
    }

    pub fn tower_count(&self) -> usize {
        self.towers
    }

    fn splitting_groups<'a>(
        &'a self,
        alpha: &CohClass,
    ) -> Result<impl Iterator<Item = &'a (Vec<(usize, Vec<u64>)>, Subgroup, u32)>> {
        if alpha.field().as_ref() != self.field.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let probe: Vec<u64> = alpha.coeffs().iter().map(|&x| x as u64).collect();
        Ok(self
            .groups
            .iter()
            .filter(move |(ker, _, _)| self.ring.reduce_against(ker, &probe).iter().all(|&x| x == 0)))
    }

    /// Span of the norm groups of the towers splitting `alpha`.
    pub fn norm_span(&self, alpha: &CohClass) -> Result<Subgroup> {
        let mut acc = Subgroup::trivial(&self.field);
        for (_, norms, _) in self.splitting_groups(alpha)? {
            acc = acc.join(norms)?;
        }
        Ok(acc)
    }

    /// Least degree of a supported tower splitting `alpha`.
    pub fn splitting_degree(&self, alpha: &CohClass) -> Result<Option<u32>> {
        if alpha.is_zero() {
            return Ok(Some(1));
        }
        Ok(self.splitting_groups(alpha)?.map(|g| g.2).min())
    }
}

/// Index of `alpha` as the least degree of a supported splitting tower
/// (`None` when no tower of at most two steps splits it).
pub fn splitting_index(alpha: &CohClass) -> Result<Option<u32>> {
    SplittingAtlas::of(alpha.field())?.splitting_degree(alpha)
}

/// Reduced-norm class group: exact (the full group) over depth <= 1 fields
/// and for `alpha = 0`, otherwise the norm-span lower bound.
pub fn nrd_lower_bound(alpha: &CohClass) -> Result<(Subgroup, Exactness)> {
    let field = alpha.field();
    if alpha.is_zero() || field.depth() <= 1 {
        return Ok((Subgroup::full(field), Exactness::Exact));
    }
    Ok((SplittingAtlas::of(field)?.norm_span(alpha)?, Exactness::LowerBound))
}

/// `nrd_lower_bound` with the flag upgraded by the period-`ell` certificate.
pub fn nrd_class_group(alpha: &CohClass) -> Result<(Subgroup, Exactness)> {
    let (g, flag) = nrd_lower_bound(alpha)?;
    if flag == Exactness::Exact || alpha.period() != alpha.field().ell() {
        return Ok((g, flag));
    }
    let joined = g.join(&Subgroup::multiples(alpha.field(), alpha.field().ell() as i64))?;
    let exact = joined == suslin_via_residues(alpha)?;
    Ok((g, if exact { Exactness::Exact } else { Exactness::LowerBound }))
}

/// `prod_i ell^i * Nrd(ell^i alpha)` from norm spans.
pub fn suslin_norm_span(alpha: &CohClass) -> Result<Subgroup> {
    let field = alpha.field();
    let ell = field.ell() as i64;
    let mut acc = Subgroup::trivial(field);
    let mut d = 1i64;
    for _ in 0..=field.n() {
        let (g, _) = nrd_lower_bound(&alpha.scale(d))?;
        acc = acc.join(&g.scaled(d))?;
        d *= ell;
    }
    Ok(acc)
}

/// Suslin group with its exactness flag.
pub fn suslin_group(alpha: &CohClass) -> Result<(Subgroup, Exactness)> {
    let field = alpha.field();
    let s = suslin_norm_span(alpha)?;
    if alpha.is_zero() || field.depth() <= 1 {
        return Ok((s, Exactness::Exact));
    }
    if s == rost_kernel(alpha)? {
        return Ok((s, Exactness::Exact));
    }
    if alpha.period() == field.ell() && s == suslin_via_residues(alpha)? {
        return Ok((s, Exactness::Exact));
    }
    Ok((s, Exactness::LowerBound))
}

// ---- residue-field description -------------------------------------------------------

/// The cyclic extension `E0/k` cut out by a character `chi` of `k`.
pub enum CharacterField {
    Trivial,
    Extension(CyclicExtension),
    /// An unramified extension whose residue field exceeds the supported size;
    /// only its norm group is available.
    LargeUnramified(u32),
}

impl CharacterField {
    pub fn of(chi: &ClassVector) -> Result<CharacterField> {
        if chi.is_zero() {
            return Ok(CharacterField::Trivial);
        }
        let k = chi.field();
        let order = chi.order();
        let s = order.trailing_zeros_base(k.ell());
        let div = (k.modulus() / order) as i64;
        let b = ClassVector::from_ints(k, &chi.exps().iter().map(|&e| e as i64 / div).collect::<Vec<_>>())?;
        match CyclicExtension::kummer_from_class(k, &b, s) {
            Ok(e) => Ok(CharacterField::Extension(e)),
            Err(Error::FieldTooLarge(_)) => Ok(CharacterField::LargeUnramified(order)),
            Err(e) => Err(e),
        }
    }

    /// `N_{E0/k}(E0*)` in `k*/k*^(ell^n)`.
    pub fn norm_group(&self, k: &Arc<TowerField>) -> Result<Subgroup> {
        match self {
            CharacterField::Trivial => Ok(Subgroup::full(k)),
            CharacterField::Extension(e) => e.norm_class_group(),
            CharacterField::LargeUnramified(f) => {
                let mut gens = vec![ClassVector::basis(k, 0)];
                gens.extend((1..k.rank()).map(|i| ClassVector::basis(k, i).scale(*f as i64)));
                Subgroup::span(k, &gens)
            }
        }
    }

    /// `N_{E0/k}(G)` for a subgroup of `E0*/E0*^(ell^n)` given through `s_of`.
    fn norm_of(&self, k: &Arc<TowerField>, residue_class: &CohClass) -> Result<Subgroup> {
        match self {
            CharacterField::Trivial => suslin_via_residues(residue_class),
            CharacterField::Extension(e) => {
                let restricted = e.restrict(residue_class)?;
                let s = suslin_via_residues(&restricted)?;
                s.map_by(k, &e.norm_classes()?)
            }
            CharacterField::LargeUnramified(_) => {
                if k.depth() <= 1 {
                    self.norm_group(k)
                } else {
                    Err(Error::FieldTooLarge(k.q() as u64))
                }
            }
        }
    }
}

trait TrailingZerosBase {
    fn trailing_zeros_base(self, b: u32) -> u32;
}
impl TrailingZerosBase for u32 {
    fn trailing_zeros_base(mut self, b: u32) -> u32 {
        let mut t = 0;
        while self > 1 && self.is_multiple_of(b) {
            self /= b;
            t += 1;
        }
        t
    }
}

fn require_period_ell(alpha: &CohClass) -> Result<()> {
    if alpha.degree() != 2 || alpha.period() > alpha.field().ell() {
        return Err(Error::PreconditionViolated(format!(
            "class of period {} (period {} required)",
            alpha.period(),
            alpha.field().ell()
        )));
    }
    Ok(())
}

/// Suslin group of a period-`ell` class from residue data:
/// units `a` with `ā ∈ N_{E0/k}(S(ᾱ'_{E0})) k*^ell`, the `ell`-th powers, and the
/// elements of `R(alpha)` whose top coordinate is prime to `ell`.
pub fn suslin_via_residues(alpha: &CohClass) -> Result<Subgroup> {
    require_period_ell(alpha)?;
    let field = alpha.field();
    if alpha.is_zero() || field.depth() <= 1 {
        return Ok(Subgroup::full(field));
    }
    let ell = field.ell() as i64;
    let k = field.residue_field()?.clone();
    let dec = alpha.decompose()?;
    let alpha_bar = dec.unramified_part.specialize()?;
    let e0 = CharacterField::of(&dec.ramified_character)?;
    let g_k = e0.norm_of(&k, &alpha_bar)?.join(&Subgroup::multiples(&k, ell))?;
    let mut gens: Vec<ClassVector> = g_k
        .generators()
        .iter()
        .map(|g| g.lift_with_top(field, 0))
        .collect::<Result<_>>()?;
    gens.extend(Subgroup::multiples(field, ell).generators());
    for v in rost_kernel(alpha)?.elements() {
        if v.top() as i64 % ell != 0 {
            gens.push(v);
        }
    }
    Subgroup::span(field, &gens)
}

/// Order of `(R(ᾱ') ∩ N_{E0/k}(E0*)) / (N_{E0/k}(S(ᾱ'_{E0})) k*^ell)`.
pub fn quotient_rhs_order(alpha: &CohClass) -> Result<u64> {
    require_period_ell(alpha)?;
    let field = alpha.field();
    if alpha.is_zero() || field.depth() == 0 {
        return Ok(1);
    }
    let k = field.residue_field()?.clone();
    let dec = alpha.decompose()?;
    let alpha_bar = dec.unramified_part.specialize()?;
    let e0 = CharacterField::of(&dec.ramified_character)?;
    let numer = if alpha_bar.is_zero() || k.depth() == 0 {
        Subgroup::full(&k)
    } else {
        rost_kernel(&alpha_bar)?
    }
    .meet(&e0.norm_group(&k)?)?;
    let denom = e0
        .norm_of(&k, &alpha_bar)?
        .join(&Subgroup::multiples(&k, field.ell() as i64))?;
    if !denom.is_subgroup_of(&numer)? {
        return Err(Error::InternalVerificationFailed(
            "denominator of the residue quotient is not contained in its numerator".into(),
        ));
    }
    Ok(numer.order() / denom.order())
}

// ---- reports -------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct RostReport {
    pub alpha: CohClass,
    pub period: u32,
    pub rost: Subgroup,
    pub suslin: Subgroup,
    pub s_exact: Exactness,
    pub quotient_order: u64,
    pub rhs_order: Option<u64>,
    pub witnesses: Vec<ClassVector>,
    pub status: Status,
}

pub fn quotient_report(alpha: &CohClass) -> Result<RostReport> {
    if alpha.degree() != 2 {
        return Err(Error::DegreeUnsupported(alpha.degree()));
    }
    let rost = rost_kernel(alpha)?;
    let (suslin, s_exact) = suslin_group(alpha)?;
    if !suslin.is_subgroup_of(&rost)? {
        return Err(Error::InternalVerificationFailed(
            "S(alpha) is not inside R(alpha)".into(),
        ));
    }
    let quotient_order = rost.order() / suslin.order();
    let period = alpha.period();
    let rhs_order = if period <= alpha.field().ell() {
        Some(quotient_rhs_order(alpha)?)
    } else {
        None
    };
    let witnesses = rost.coset_representatives(&suslin)?;
    let status = match (witnesses.is_empty(), s_exact) {
        (true, _) => Status::Verified,
        (false, Exactness::Exact) => Status::Counterexample,
        (false, Exactness::LowerBound) => Status::Inconclusive,
    };
    let status = match rhs_order {
        Some(r) if s_exact == Exactness::Exact && r != quotient_order => Status::Counterexample,
        _ => status,
    };
    Ok(RostReport {
        alpha: alpha.clone(),
        period,
        rost,
        suslin,
        s_exact,
        quotient_order,
        rhs_order,
        witnesses,
        status,
    })
}

impl RostReport {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.to_json(),
            "period": self.period,
            "R": self.rost.echelon(),
            "S": self.suslin.echelon(),
            "s_exact": self.s_exact == Exactness::Exact,
            "quotient_order": self.quotient_order,
            "rhs_order": self.rhs_order,
            "witnesses": self.witnesses.iter().map(|w| w.exps().to_vec()).collect::<Vec<_>>(),
            "status": self.status,
        })
    }
}

// ---- constructive witnesses -----------------------------------------------------------

/// `lambda` rewritten to valuation one, the splitting field `F(ell^n-th root of -lambda)`
/// and an element `mu` of it with `N(mu) = (-1)^(ell^n) lambda`.
#[derive(Clone, Debug)]
pub struct SplittingWitness {
    pub lambda_reduced: FieldElement,
    pub extension: CyclicExtension,
    pub mu: FieldElement,
}

/// For `v(lambda)` prime to `ell` with `residue(alpha ∪ lambda) = 0`, exhibits
/// `lambda` (after reduction to valuation one) as a norm from a field splitting `alpha`.
pub fn splitting_norm_witness(alpha: &CohClass, lam: &FieldElement) -> Result<SplittingWitness> {
    let field = alpha.field();
    if lam.field().as_ref() != field.as_ref() {
        return Err(Error::FieldMismatch);
    }
    if field.depth() == 0 {
        return Err(Error::PreconditionViolated("the base field has no valuation".into()));
    }
    let ell = field.ell() as i64;
    let big = field.modulus() as i64;
    let d = field.depth();
    let r = lam
        .valuation()
        .ok_or_else(|| Error::PreconditionViolated("lambda is zero".into()))?;
    if r.rem_euclid(ell) == 0 {
        return Err(Error::PreconditionViolated(format!(
            "v(lambda) = {r} is divisible by {ell}"
        )));
    }
    if !alpha.cup(&lam.kummer_class()?)?.residue()?.is_zero() {
        return Err(Error::PreconditionViolated(
            "residue of alpha ∪ lambda is nonzero".into(),
        ));
    }
    let s = inv_mod(r.rem_euclid(big), big).expect("valuation prime to ell");
    let c = (1 - r * s).div_euclid(big);
    let lambda_reduced = lam.pow(s)?.mul(&field.var_pow(d, big * c)?)?;
    let target = lambda_reduced.neg();
    let extension = CyclicExtension::kummer(field, &target, field.n())?;
    if !extension.splits(alpha)? {
        return Err(Error::InternalVerificationFailed(
            "the Kummer extension does not split alpha".into(),
        ));
    }
    let gen = extension
        .kummer_generator()
        .ok_or_else(|| Error::InternalVerificationFailed("expected a ramified extension".into()))?;
    let h = target
        .div(gen)?
        .nth_root(big as u64)
        .ok_or_else(|| Error::InternalVerificationFailed("quotient is not an ell^n-th power".into()))?;
    let mu = extension.primitive_element()?.mul(&extension.embed(&h)?)?;
    let expected = if big % 2 == 0 {
        lambda_reduced.clone()
    } else {
        lambda_reduced.neg()
    };
    if !extension.norm(&mu)?.agrees_with(&expected)? {
        return Err(Error::InternalVerificationFailed("N(mu) differs from ±lambda".into()));
    }
    Ok(SplittingWitness {
        lambda_reduced,
        extension,
        mu,
    })
}

/// Both sides of the norm condition for degree-`ell` Kummer extensions `k(a_i^(1/ell))`.
#[derive(Clone, Debug)]
pub struct NormCondition {
    pub lhs: Subgroup,
    pub rhs: Subgroup,
    pub holds: bool,
}

/// `lhs = ∩ N(k(a_i^(1/ell)))`, `rhs = k*^ell · N(compositum)`.
pub fn norm_intersection_condition(k: &Arc<TowerField>, gens: &[ClassVector]) -> Result<NormCondition> {
    if k.depth() > 1 {
        return Err(Error::PreconditionViolated(format!(
            "depth {} (at most 1 supported)",
            k.depth()
        )));
    }
    if gens.len() > 2 {
        return Err(Error::PreconditionViolated(format!(
            "{} generators (at most 2 supported)",
            gens.len()
        )));
    }
    let ell = k.ell() as i64;
    let shape = |e: Error| match e {
        Error::FieldTooLarge(_) | Error::UnsupportedShape(_) => {
            Error::UnsupportedShape(format!("compositum over {k}: {e}"))
        }
        e => e,
    };
    let mut lhs = Subgroup::full(k);
    let mut tower = ExtensionTower::trivial(k);
    for a in gens {
        if a.field().as_ref() != k.as_ref() {
            return Err(Error::FieldMismatch);
        }
        if a.scale(k.modulus() as i64 / ell).is_zero() {
            continue;
        }
        let ext = CyclicExtension::kummer_from_class(k, a, 1).map_err(shape)?;
        lhs = lhs.meet(&ext.norm_class_group()?)?;
        let img = tower.embed(&k.class_representative(a)?)?.kummer_class()?;
        if !img.scale(k.modulus() as i64 / ell).is_zero() {
            let step = CyclicExtension::kummer_from_class(tower.top(), &img, 1).map_err(shape)?;
            tower.push(step)?;
        }
    }
    let rhs = Subgroup::multiples(k, ell).join(&tower.norm_class_group()?)?;
    if !rhs.is_subgroup_of(&lhs)? {
        return Err(Error::InternalVerificationFailed(
            "compositum norms escape the intersection".into(),
        ));
    }
    Ok(NormCondition {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::symbol;
    use crate::tower::make_tower;

    #[test]
    fn kernel_of_xy_over_f3xy() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let x = ClassVector::basis(&f, 1);
        let y = ClassVector::basis(&f, 2);
        let alpha = symbol(&[x.clone(), y.clone()]).unwrap();
        let r = rost_kernel(&alpha).unwrap();
        assert!(!r.contains(&x).unwrap());
        assert!(!r.contains(&ClassVector::basis(&f, 0)).unwrap());
        assert!(r.contains(&ClassVector::zero(&f)).unwrap());
        // oracle: double residue of alpha ∪ v over all 8 classes
        for v in ClassVector::all(&f) {
            let c = alpha.cup(&v).unwrap();
            let dr = c.residue().unwrap().residue().unwrap();
            assert_eq!(r.contains(&v).unwrap(), dr.is_zero());
        }
        assert_eq!(
            rost_kernel(&CohClass::zero(&f, 2).unwrap()).unwrap(),
            Subgroup::full(&f)
        );
    }

    #[test]
    fn local_fields_are_full() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let alpha = symbol(&[ClassVector::basis(&f, 0), ClassVector::basis(&f, 1)]).unwrap();
        let (g, flag) = nrd_class_group(&alpha).unwrap();
        assert_eq!((g, flag), (Subgroup::full(&f), Exactness::Exact));
    }

    #[test]
    fn report_on_two_local_field() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        for alpha in CohClass::all(&f, 2).unwrap() {
            let rep = quotient_report(&alpha).unwrap();
            assert_eq!(rep.status, Status::Verified, "{alpha}");
            assert_eq!(rep.quotient_order, 1);
            assert_eq!(rep.rhs_order, Some(1));
            assert_eq!(rep.s_exact, Exactness::Exact);
        }
    }

    #[test]
    fn witness_for_valuation_one() {
        let f = make_tower(3, 2, 1, 2, 3).unwrap();
        let lam = f.parse("2*y + x*y^2").unwrap();
        // alpha = (chi, -lambda) with chi = u: residue of alpha ∪ lambda vanishes
        let alpha = symbol(&[ClassVector::basis(&f, 0), lam.neg().kummer_class().unwrap()]).unwrap();
        let w = splitting_norm_witness(&alpha, &lam).unwrap();
        assert!(w.extension.splits(&alpha).unwrap());
        assert!(w.extension.norm(&w.mu).unwrap().agrees_with(&w.lambda_reduced).unwrap());
        // v(lambda) = 3 reduces to valuation one
        let lam3 = f.parse("y^3").unwrap();
        let zero = CohClass::zero(&f, 2).unwrap();
        let w = splitting_norm_witness(&zero, &lam3).unwrap();
        assert_eq!(w.lambda_reduced.valuation(), Some(1));
        assert!(matches!(
            splitting_norm_witness(&zero, &f.parse("y^2").unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn norm_condition() {
        let k0 = make_tower(3, 2, 1, 0, 1).unwrap();
        let c = norm_intersection_condition(&k0, &[ClassVector::basis(&k0, 0)]).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs, Subgroup::full(&k0));
        let k = make_tower(3, 2, 1, 1, 4).unwrap();
        let one = norm_intersection_condition(&k, &[ClassVector::basis(&k, 1)]).unwrap();
        assert!(one.holds);
        let two = norm_intersection_condition(&k, &[ClassVector::basis(&k, 0), ClassVector::basis(&k, 1)]).unwrap();
        assert!(two.rhs.is_subgroup_of(&two.lhs).unwrap());
        // over a local field the unramified and ramified norm groups meet in the squares
        assert_eq!(two.lhs, Subgroup::multiples(&k, 2));
    }
}
