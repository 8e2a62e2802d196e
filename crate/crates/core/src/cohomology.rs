//! Milnor symbols mod `ell^n` over tower fields.
//!
//! `H^m(F)[ell^n]` is free over `Z/ell^n` on the symbols `{x_S}` (`|S| = m`) and
//! `{zeta, x_S}` (`|S| = m - 1`), where `x_S` lists the level variables of
//! `S` in increasing order. The twist is trivialized with the fixed `zeta`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::classes::{ClassVector, Subgroup};
use crate::error::{Error, Result};
use crate::tower::TowerField;

pub const MAX_DEGREE: usize = 4;

/// A basis symbol: optional `zeta` slot followed by the variables in `mask`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisSymbol {
    pub zeta: bool,
    /// Bit `j - 1` stands for `x_j`.
    pub mask: u8,
}

impl BasisSymbol {
    pub fn levels(&self) -> Vec<usize> {
        (0..8).filter(|b| self.mask >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// Generator indices (0 = zeta, j = x_j) in slot order.
    fn slots(&self) -> Vec<usize> {
        let mut s = Vec::new();
        if self.zeta {
            s.push(0);
        }
        s.extend(self.levels());
        s
    }

    /// Subset key, e.g. `{1,2}`.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.levels().iter().map(|l| l.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Basis of `H^m` for a depth-`d` tower: `zeta` parts first, then pure ones.
pub fn basis(depth: usize, degree: usize) -> Vec<BasisSymbol> {
    let mut out = Vec::new();
    for (zeta, size) in [(true, degree.wrapping_sub(1)), (false, degree)] {
        if size > depth {
            continue;
        }
        for mask in 0u8..(1 << depth) {
            if mask.count_ones() as usize == size {
                out.push(BasisSymbol { zeta, mask });
            }
        }
    }
    out
}

/// Rank of `H^m(F)[ell^n]`: `C(d, m) + C(d, m-1)`.
pub fn rank(depth: usize, degree: usize) -> usize {
    basis(depth, degree).len()
}

/// Normal form of the symbol of basis generators `gens` (0 = zeta, j = x_j):
/// `Some((coefficient, basis symbol))` or `None` when it vanishes.
fn reduce_monomial(mut gens: Vec<usize>, minus_one_log: i64) -> Option<(i64, BasisSymbol)> {
    let mut coef: i64 = 1;
    loop {
        // bubble sort; transposing distinct entries flips the sign
        let len = gens.len();
        for i in 0..len {
            for j in 0..len - 1 - i {
                if gens[j] > gens[j + 1] {
                    gens.swap(j, j + 1);
                    coef = -coef;
                }
            }
        }
        let dup = gens.windows(2).position(|w| w[0] == w[1]);
        match dup {
            None => break,
            Some(i) if gens[i] == 0 => return None,
            Some(i) => {
                // {x, x} = {-1, x}
                if minus_one_log == 0 {
                    return None;
                }
                coef *= minus_one_log;
                gens[i] = 0;
            }
        }
    }
    let zeta = gens.first() == Some(&0);
    let mask = gens.iter().filter(|&&g| g > 0).fold(0u8, |m, &g| m | 1 << (g - 1));
    Some((coef, BasisSymbol { zeta, mask }))
}

/// A class in `H^m(F, Z/ell^n(m-1))`, as coordinates over [`basis`].
#[derive(Clone)]
pub struct CohClass {
    field: Arc<TowerField>,
    degree: usize,
    coeffs: Vec<u32>,
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs && self.field == other.field
    }
}
impl Eq for CohClass {}

impl std::hash::Hash for CohClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut slots: Vec<String> = Vec::new();
            if b.zeta {
                slots.push("u".into());
            }
            slots.extend(b.levels().iter().map(|&l| self.field.level_names()[l - 1].clone()));
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{{{}}}", slots.join(","))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_field(a: &TowerField, b: &TowerField) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// `log_zeta(-1) mod ell^n`.
pub(crate) fn minus_one_log(field: &TowerField) -> i64 {
    if field.q().is_multiple_of(2) {
        0
    } else {
        ((field.q() as i64 - 1) / 2) % field.modulus() as i64
    }
}

impl CohClass {
    pub fn zero(field: &Arc<TowerField>, degree: usize) -> Result<CohClass> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeUnsupported(degree));
        }
        Ok(CohClass {
            field: field.clone(),
            degree,
            coeffs: vec![0; rank(field.depth(), degree)],
        })
    }

    pub fn from_coeffs(field: &Arc<TowerField>, degree: usize, coeffs: &[i64]) -> Result<CohClass> {
        let mut c = Self::zero(field, degree)?;
        if coeffs.len() != c.coeffs.len() {
            return Err(Error::InvalidParameter(format!(
                "H^{degree} has rank {}, got {} coefficients",
                c.coeffs.len(),
                coeffs.len()
            )));
        }
        let m = field.modulus() as i64;
        c.coeffs = coeffs.iter().map(|x| x.rem_euclid(m) as u32).collect();
        Ok(c)
    }

    /// The basis symbol at position `i` with coefficient 1.
    pub fn basis_element(field: &Arc<TowerField>, degree: usize, i: usize) -> Result<CohClass> {
        let mut c = Self::zero(field, degree)?;
        c.coeffs[i] = 1;
        Ok(c)
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn basis(&self) -> Vec<BasisSymbol> {
        basis(self.field.depth(), self.degree)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficient of a basis symbol (zero if absent).
    pub fn coeff_of(&self, b: BasisSymbol) -> u32 {
        self.basis().iter().position(|x| *x == b).map_or(0, |i| self.coeffs[i])
    }

    fn same_shape(&self, other: &CohClass) -> Result<()> {
        check_field(&self.field, &other.field)?;
        if self.degree != other.degree {
            return Err(Error::DegreeUnsupported(other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        self.same_shape(other)?;
        let m = self.field.modulus();
        Ok(CohClass {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + b) % m)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> CohClass {
        let m = self.field.modulus() as i64;
        CohClass {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| (c as i64 * k).rem_euclid(m) as u32)
                .collect(),
        }
    }

    /// Order of the class: a power of `ell`.
    pub fn period(&self) -> u32 {
        let ring = crate::classes::ring_of(&self.field);
        let e = self.coeffs.iter().map(|&c| ring.val(c as u64)).min().unwrap_or(ring.n);
        self.field.ell().pow(self.field.n() - e)
    }

    fn accumulate(&self, acc: &mut [i64], c: i64, gens: Vec<usize>) {
        if c == 0 {
            return;
        }
        if let Some((s, b)) = reduce_monomial(gens, minus_one_log(&self.field)) {
            let idx = self.basis().iter().position(|x| *x == b).expect("basis symbol");
            acc[idx] += s * c;
        }
    }

    /// Degree-1 class attached to a Kummer class.
    pub fn from_class(v: &ClassVector) -> CohClass {
        let field = v.field().clone();
        CohClass {
            coeffs: v.exps().to_vec(),
            degree: 1,
            field,
        }
    }

    /// The Kummer class of a degree-1 class.
    pub fn to_class(&self) -> Result<ClassVector> {
        if self.degree != 1 {
            return Err(Error::DegreeUnsupported(self.degree));
        }
        ClassVector::new(&self.field, self.coeffs.clone())
    }

    /// Cup product with a degree-1 class: `self ∪ (lam)`.
    pub fn cup(&self, lam: &ClassVector) -> Result<CohClass> {
        check_field(&self.field, lam.field())?;
        let degree = self.degree + 1;
        let mut out = CohClass::zero(&self.field, degree)?;
        let mut acc = vec![0i64; out.coeffs.len()];
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            for (g, &e) in lam.exps().iter().enumerate() {
                let mut gens = b.slots();
                gens.push(g);
                out.accumulate(&mut acc, c as i64 * e as i64, gens);
            }
        }
        let m = self.field.modulus() as i64;
        out.coeffs = acc.iter().map(|x| x.rem_euclid(m) as u32).collect();
        Ok(out)
    }

    /// Residue to the residue tower: keeps the symbols involving the top
    /// variable and drops it (it is the last slot).
    pub fn residue(&self) -> Result<CohClass> {
        let d = self.field.depth();
        if d == 0 {
            return Err(Error::DepthZero);
        }
        if self.degree < 2 {
            return Err(Error::DegreeUnsupported(self.degree));
        }
        let res = self.field.residue_field()?;
        let mut out = CohClass::zero(res, self.degree - 1)?;
        let top = 1u8 << (d - 1);
        let target = out.basis();
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            if b.mask & top != 0 {
                let nb = BasisSymbol {
                    zeta: b.zeta,
                    mask: b.mask & !top,
                };
                let i = target.iter().position(|x| *x == nb).expect("basis symbol");
                out.coeffs[i] = c;
            }
        }
        Ok(out)
    }

    /// Inflation from the residue tower (`field` is the tower over it).
    pub fn inflate(&self, field: &Arc<TowerField>) -> Result<CohClass> {
        check_field(field.residue_field()?, &self.field)?;
        let mut out = CohClass::zero(field, self.degree)?;
        let target = out.basis();
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            let i = target.iter().position(|x| x == b).expect("basis symbol");
            out.coeffs[i] = c;
        }
        Ok(out)
    }

    /// Inverse of [`CohClass::inflate`] on unramified classes.
    pub fn specialize(&self) -> Result<CohClass> {
        if self.degree >= 2 && !self.residue()?.is_zero() {
            return Err(Error::NotUnramified);
        }
        let res = self.field.residue_field()?;
        let mut out = CohClass::zero(res, self.degree)?;
        let target = out.basis();
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            if let Some(i) = target.iter().position(|x| x == b) {
                out.coeffs[i] = c;
            } else if c != 0 {
                return Err(Error::NotUnramified);
            }
        }
        Ok(out)
    }

    /// `alpha = alpha' + {lift(chi0), x_d}` with `alpha'` unramified.
    pub fn decompose(&self) -> Result<BrauerDecomposition> {
        if self.degree != 2 {
            return Err(Error::DegreeUnsupported(self.degree));
        }
        let chi0 = self.residue()?.to_class()?;
        let lifted = chi0.lift_with_top(&self.field, 0)?;
        let d = self.field.depth();
        let ramified = symbol(&[lifted, ClassVector::basis(&self.field, d)])?;
        Ok(BrauerDecomposition {
            alpha: self.clone(),
            unramified_part: self.sub(&ramified)?,
            ramified_character: chi0,
        })
    }

    /// Whether `alpha ∪ (lam)` is unramified.
    pub fn is_ramification_compatible(&self, lam: &ClassVector) -> Result<bool> {
        Ok(self.cup(lam)?.residue()?.is_zero())
    }

    /// The reformulated criterion: `r alpha = {lift(∂alpha), (-1)^r lam}` with
    /// `r` the top coordinate of `lam`.
    pub fn ramification_criterion_rhs(&self, lam: &ClassVector) -> Result<bool> {
        let dec = self.decompose()?;
        let r = lam.top() as i64;
        let mut sign = ClassVector::zero(&self.field);
        if r % 2 == 1 {
            sign = ClassVector::basis(&self.field, 0).scale(minus_one_log(&self.field));
        }
        let chi = dec.ramified_character.lift_with_top(&self.field, 0)?;
        let rhs = symbol(&[chi, lam.add(&sign)?])?;
        Ok(self.scale(r) == rhs)
    }

    /// JSON normal form `{degree, coeffs: {"{1,2}": c}}` with sorted keys.
    pub fn to_json(&self) -> Value {
        let mut map = BTreeMap::new();
        for (b, &c) in self.basis().iter().zip(&self.coeffs) {
            if c != 0 {
                map.insert(b.key(), c);
            }
        }
        json!({ "degree": self.degree, "coeffs": map })
    }

    /// Every class of the group, in coefficient-lexicographic order.
    pub fn all(field: &Arc<TowerField>, degree: usize) -> Result<Vec<CohClass>> {
        let zero = Self::zero(field, degree)?;
        let m = field.modulus() as u64;
        let r = zero.coeffs.len() as u32;
        Ok((0..m.pow(r))
            .map(|mut code| {
                let mut c = zero.clone();
                for slot in c.coeffs.iter_mut().rev() {
                    *slot = (code % m) as u32;
                    code /= m;
                }
                c
            })
            .collect())
    }

    /// Classes killed by `k` (for `k = ell` the period-dividing-`ell` part).
    pub fn all_killed_by(field: &Arc<TowerField>, degree: usize, k: u32) -> Result<Vec<CohClass>> {
        let step = field.modulus() / crate::gf::gcd(k as u64, field.modulus() as u64) as u32;
        let zero = Self::zero(field, degree)?;
        let count = field.modulus() / step;
        let r = zero.coeffs.len() as u32;
        Ok((0..(count as u64).pow(r))
            .map(|mut code| {
                let mut c = zero.clone();
                for slot in c.coeffs.iter_mut().rev() {
                    *slot = (code % count as u64) as u32 * step;
                    code /= count as u64;
                }
                c
            })
            .collect())
    }
}

/// Normal form of the Milnor symbol `{a_1, ..., a_m}`.
pub fn symbol(args: &[ClassVector]) -> Result<CohClass> {
    let m = args.len();
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::DegreeUnsupported(m));
    }
    let field = args[0].field().clone();
    for a in args {
        check_field(&field, a.field())?;
    }
    let mut out = CohClass::zero(&field, m)?;
    let mut acc = vec![0i64; out.coeffs.len()];
    let r = field.rank();
    let mut idx = vec![0usize; m];
    'outer: loop {
        let c: i64 = idx.iter().zip(args).map(|(&g, a)| a.exps()[g] as i64).product::<i64>() % field.modulus() as i64;
        out.accumulate(&mut acc, c, idx.clone());
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < r {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    let md = field.modulus() as i64;
    out.coeffs = acc.iter().map(|x| x.rem_euclid(md) as u32).collect();
    Ok(out)
}

/// Splitting of a degree-2 class along the residue sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerDecomposition {
    pub alpha: CohClass,
    /// `alpha'`, with zero residue.
    pub unramified_part: CohClass,
    /// `∂(alpha)` over the residue tower.
    pub ramified_character: ClassVector,
}

/// Kernel of `v -> c ∪ v` on the class group.
pub fn cup_kernel(c: &CohClass) -> Result<Subgroup> {
    let field = c.field();
    let ring = crate::classes::ring_of(field);
    let rows: Vec<Vec<u64>> = (0..field.rank())
        .map(|i| {
            c.cup(&ClassVector::basis(field, i))
                .map(|img| img.coeffs.iter().map(|&x| x as u64).collect())
        })
        .collect::<Result<_>>()?;
    let cols = rank(field.depth(), c.degree + 1);
    let gens: Vec<ClassVector> = ring
        .left_kernel(&rows, cols)
        .into_iter()
        .map(|y| ClassVector::from_ints(field, &y.iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    Subgroup::span(field, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::make_tower;

    fn cv(f: &Arc<TowerField>, e: &[i64]) -> ClassVector {
        ClassVector::from_ints(f, e).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(2, 2), 3);
        assert_eq!(rank(2, 3), 1);
        assert_eq!(rank(3, 3), 4);
        assert_eq!(rank(3, 4), 1);
        assert_eq!(rank(1, 3), 0);
        assert_eq!(rank(0, 1), 1);
    }

    #[test]
    fn quaternion_over_f3x() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let a = symbol(&[cv(&f, &[1, 0]), cv(&f, &[0, 1])]).unwrap();
        assert_eq!(a.to_json()["coeffs"]["{1}"], 1);
        assert_eq!(a.residue().unwrap().to_class().unwrap().exps(), &[1]);
        // {x, x} = {-1, x}, and -1 is the nonsquare of F_3
        let xx = symbol(&[cv(&f, &[0, 1]), cv(&f, &[0, 1])]).unwrap();
        assert_eq!(xx, a);
    }

    #[test]
    fn triple_symbol_over_two_local_field() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let x = cv(&f, &[0, 1, 0]);
        let y = cv(&f, &[0, 0, 1]);
        let m1 = cv(&f, &[1, 0, 0]);
        let a = symbol(&[x.clone(), y.clone(), x.clone()]).unwrap();
        let b = symbol(&[m1, x.clone(), y.clone()]).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
        // double residue: {-1} over F_3, the nonsquare class
        let r = a.residue().unwrap().residue().unwrap();
        assert_eq!(r.to_class().unwrap().exps(), &[1]);
        assert_eq!(symbol(&[x.clone(), y.clone()]).unwrap().cup(&x).unwrap(), a);
    }

    #[test]
    fn exactness_on_basis() {
        let f = make_tower(7, 3, 1, 2, 2).unwrap();
        let k = f.residue_field().unwrap().clone();
        for c in CohClass::all(&k, 2).unwrap() {
            let inf = c.inflate(&f).unwrap();
            assert!(inf.residue().unwrap().is_zero());
            assert_eq!(inf.specialize().unwrap(), c);
        }
        let ramified = symbol(&[cv(&f, &[1, 0, 0]), cv(&f, &[0, 0, 1])]).unwrap();
        assert_eq!(ramified.specialize(), Err(Error::NotUnramified));
    }

    #[test]
    fn decomposition_round_trip() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let u = cv(&f, &[1, 0, 0]);
        let x = cv(&f, &[0, 1, 0]);
        let y = cv(&f, &[0, 0, 1]);
        let ux = symbol(&[u, x.clone()]).unwrap();
        let alpha = ux.add(&symbol(&[x, y]).unwrap()).unwrap();
        let dec = alpha.decompose().unwrap();
        assert_eq!(dec.unramified_part, ux);
        assert_eq!(dec.ramified_character.exps(), &[0, 1]);
    }

    #[test]
    fn ramification_criterion() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let x = cv(&f, &[0, 1, 0]);
        let y = cv(&f, &[0, 0, 1]);
        let alpha = symbol(&[x.clone(), y]).unwrap();
        assert!(!alpha.is_ramification_compatible(&x).unwrap());
        for lam in ClassVector::all(&f) {
            assert_eq!(
                alpha.is_ramification_compatible(&lam).unwrap(),
                alpha.ramification_criterion_rhs(&lam).unwrap()
            );
        }
    }

    #[test]
    fn degree_limits() {
        let f = make_tower(3, 2, 1, 3, 2).unwrap();
        let x = ClassVector::basis(&f, 1);
        assert!(symbol(&vec![x.clone(); 5]).is_err());
        assert!(CohClass::zero(&f, 5).is_err());
        let k = make_tower(3, 2, 1, 0, 2).unwrap();
        let c = CohClass::zero(&k, 2).unwrap();
        assert_eq!(c.residue(), Err(Error::DepthZero));
    }
}
