//! Cyclic extensions of tower fields: unramified ones and Kummer extensions
//! `F(T)`, `T^(ell^m) = c * x_j` with `c` a monomial in the lower levels.
//!
//! Each extension carries a standardized tower for `L`: level `j` gets the new
//! variable `T` (with `ell^m` times the precision), everything else is kept.
//! For `j = 0` the extension is the unramified one with residue field
//! `F_(q^(ell^m))`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::classes::{apply_linear, ClassVector, Subgroup};
use crate::cohomology::{symbol, CohClass};
use crate::error::{Error, Result};
use crate::gf::{embedding, Embedding};
use crate::tower::{FieldElement, Repr, TowerField};

#[derive(Clone)]
pub struct CyclicExtension {
    base: Arc<TowerField>,
    top: Arc<TowerField>,
    level: usize,
    m: u32,
    degree: u32,
    /// Exponents `(w0, w1, ..., w_{j-1})` of `c = zeta^w0 x1^w1 ...`.
    c_exps: Vec<i64>,
    /// The normalized Kummer generator `c * x_j` (absent for residue-field extensions).
    kummer: Option<FieldElement>,
    emb: Option<Arc<Embedding>>,
}

impl std::fmt::Debug for CyclicExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} / {:?}", self.top, self.base)
    }
}

fn renamed(name: &str) -> String {
    match name.strip_prefix('x') {
        Some(rest) => format!("t{rest}"),
        None => format!("{name}'"),
    }
}

impl CyclicExtension {
    /// The unramified extension of degree `f` (a power of `ell`).
    pub fn unramified(base: &Arc<TowerField>, f: u32) -> Result<CyclicExtension> {
        let ell = base.ell();
        let mut m = 0;
        let mut g = f;
        while g > 1 && g.is_multiple_of(ell) {
            g /= ell;
            m += 1;
        }
        if f == 0 || g != 1 {
            return Err(Error::InvalidParameter(format!("degree {f} is not a power of {ell}")));
        }
        Self::residue_extension(base, m)
    }

    fn residue_extension(base: &Arc<TowerField>, m: u32) -> Result<CyclicExtension> {
        let degree = base.ell().pow(m);
        let big = (base.q() as u64)
            .checked_pow(degree)
            .filter(|&q| q <= crate::gf::MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge(base.q() as u64))?;
        let top = base.with_layout(big as u32, base.precision().to_vec(), base.level_names().to_vec())?;
        let emb = embedding(base.q(), big as u32)?;
        Ok(CyclicExtension {
            base: base.clone(),
            top,
            level: 0,
            m,
            degree,
            c_exps: Vec::new(),
            kummer: None,
            emb: Some(emb),
        })
    }

    /// `F(b^(1/ell^m))`, after normalizing `b` modulo `ell^m`-th powers.
    pub fn kummer(base: &Arc<TowerField>, b: &FieldElement, m: u32) -> Result<CyclicExtension> {
        if b.field().as_ref() != base.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Self::kummer_from_class(base, &b.kummer_class()?, m)
    }

    /// Kummer extension attached to a class of `F*/F*^(ell^n)`.
    pub fn kummer_from_class(base: &Arc<TowerField>, class: &ClassVector, m: u32) -> Result<CyclicExtension> {
        let ell = base.ell() as i64;
        if m == 0 || m > base.n() {
            return Err(Error::InvalidParameter(format!(
                "Kummer level {m} outside 1..={}",
                base.n()
            )));
        }
        let em = ell.pow(m);
        let v: Vec<i64> = class.exps().iter().map(|&e| e as i64 % em).collect();
        if v.iter().all(|&e| e % ell == 0) {
            return Err(Error::NotAField);
        }
        let j = v.iter().rposition(|&e| e != 0).expect("nonzero");
        if v[j] % ell == 0 {
            return Err(Error::UnsupportedShape(format!(
                "leading Kummer coordinate {} is divisible by {ell}",
                v[j]
            )));
        }
        let k = crate::gf::inv_mod(v[j], em).expect("unit");
        let w: Vec<i64> = v.iter().map(|&e| (e * k).rem_euclid(em)).collect();
        if j == 0 {
            return Self::residue_extension(base, m);
        }
        let mut precision = base.precision().to_vec();
        precision[j - 1] *= em as usize;
        let mut names = base.level_names().to_vec();
        names[j - 1] = renamed(&names[j - 1]);
        let top = base.with_layout(base.q(), precision, names)?;
        let c_exps = w[..j].to_vec();
        let mut gen_exps = vec![0i64; base.depth()];
        gen_exps[..j - 1].copy_from_slice(&c_exps[1..]);
        gen_exps[j - 1] = 1;
        let kummer = base.monomial(c_exps[0], &gen_exps)?;
        Ok(CyclicExtension {
            base: base.clone(),
            top,
            level: j,
            m,
            degree: em as u32,
            c_exps,
            kummer: Some(kummer),
            emb: None,
        })
    }

    pub fn base(&self) -> &Arc<TowerField> {
        &self.base
    }
    /// Standardized tower of `L`.
    pub fn top(&self) -> &Arc<TowerField> {
        &self.top
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// `m` with `[L:F] = ell^m`.
    pub fn exponent(&self) -> u32 {
        self.m
    }
    /// Level carrying the new generator (0 for a residue-field extension).
    pub fn level(&self) -> usize {
        self.level
    }
    pub fn ramification_index(&self) -> u32 {
        if self.level > 0 && self.level == self.base.depth() {
            self.degree
        } else {
            1
        }
    }
    pub fn residue_degree(&self) -> u32 {
        self.degree / self.ramification_index()
    }
    pub fn is_unramified(&self) -> bool {
        self.ramification_index() == 1
    }
    /// The normalized Kummer generator `c * x_j`, if any.
    pub fn kummer_generator(&self) -> Option<&FieldElement> {
        self.kummer.as_ref()
    }

    /// `T` (or the generator of the larger finite field).
    pub fn primitive_element(&self) -> Result<FieldElement> {
        if self.level == 0 {
            Ok(self.top.zeta_pow(1))
        } else {
            self.top.var(self.level)
        }
    }

    fn c_power(&self, k: i64) -> Repr {
        let scaled: Vec<i64> = self.c_exps.iter().map(|&w| w * k).collect();
        self.top.r_monomial(scaled[0], &scaled[1..])
    }

    fn embed_repr(&self, level: usize, a: &Repr) -> Repr {
        match a {
            Repr::Zero => Repr::Zero,
            _ if self.level == 0 => {
                let emb = self.emb.as_ref().expect("embedding");
                self.top.r_map_fq(a, &|x| emb.apply(x))
            }
            Repr::Series { val, coeffs } if level > self.level => Repr::Series {
                val: *val,
                coeffs: coeffs.iter().map(|c| self.embed_repr(level - 1, c)).collect(),
            },
            Repr::Series { val, coeffs } if level == self.level => {
                let em = self.degree as usize;
                let mut out = vec![Repr::Zero; (coeffs.len() - 1) * em + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    let e = val + i as i64;
                    out[i * em] = self.top.r_mul(level - 1, c, &self.c_power(-e));
                }
                self.top.normalize(level, val * em as i64, out)
            }
            _ => a.clone(),
        }
    }

    fn descend_repr(&self, level: usize, a: &Repr) -> Result<Repr> {
        let fail = || Error::InternalVerificationFailed("element does not lie in the base field".into());
        match a {
            Repr::Zero => Ok(Repr::Zero),
            _ if self.level == 0 => {
                let emb = self.emb.as_ref().expect("embedding");
                let r = self.base.r_map_fq(a, &|x| emb.preimage(x).unwrap_or(0));
                if self.top.r_map_fq(&r, &|x| emb.apply(x)) == *a {
                    Ok(r)
                } else {
                    Err(fail())
                }
            }
            Repr::Series { val, coeffs } if level > self.level => Ok(Repr::Series {
                val: *val,
                coeffs: coeffs
                    .iter()
                    .map(|c| self.descend_repr(level - 1, c))
                    .collect::<Result<_>>()?,
            }),
            Repr::Series { val, coeffs } if level == self.level => {
                let em = self.degree as i64;
                if val.rem_euclid(em) != 0 {
                    return Err(fail());
                }
                let base_val = val / em;
                let mut out = Vec::new();
                for (t, c) in coeffs.iter().enumerate() {
                    let e = val + t as i64;
                    if e % em != 0 {
                        if !c.is_zero() {
                            return Err(fail());
                        }
                        continue;
                    }
                    let k = e / em;
                    out.push(self.base.r_mul(level - 1, c, &self.c_power(k)));
                }
                Ok(self.base.normalize(level, base_val, out))
            }
            _ => Ok(a.clone()),
        }
    }

    fn sigma_repr(&self, level: usize, a: &Repr, times: u64) -> Repr {
        match a {
            Repr::Zero => Repr::Zero,
            _ if self.level == 0 => {
                let gf = self.top.finite_field();
                let q = self.base.q() as u64;
                let mut e = 1u64;
                for _ in 0..times {
                    e = e * q % (gf.size() as u64 - 1);
                }
                self.top.r_map_fq(a, &|x| gf.pow(x, e))
            }
            Repr::Series { val, coeffs } if level > self.level => Repr::Series {
                val: *val,
                coeffs: coeffs.iter().map(|c| self.sigma_repr(level - 1, c, times)).collect(),
            },
            Repr::Series { val, coeffs } if level == self.level => {
                let gf = self.top.finite_field();
                let step = (self.top.modulus() / self.degree) as u64;
                let omega_m = gf.pow(self.top.omega(), step);
                Repr::Series {
                    val: *val,
                    coeffs: coeffs
                        .iter()
                        .enumerate()
                        .map(|(t, c)| {
                            let e = ((val + t as i64) * times as i64).rem_euclid(self.degree as i64);
                            let w = self.top.r_const(level - 1, gf.pow(omega_m, e as u64));
                            self.top.r_mul(level - 1, c, &w)
                        })
                        .collect(),
                }
            }
            _ => a.clone(),
        }
    }

    /// Inclusion `F -> L`.
    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field().as_ref() != self.base.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.top.wrap(self.embed_repr(self.base.depth(), &a.repr)))
    }

    /// Inverse of [`CyclicExtension::embed`] on elements of `F`.
    pub fn descend(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field().as_ref() != self.top.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.base.wrap(self.descend_repr(self.top.depth(), &a.repr)?))
    }

    /// `sigma^i(z)` for the fixed generator `sigma` of the Galois group.
    pub fn conjugate(&self, z: &FieldElement, i: u64) -> Result<FieldElement> {
        if z.field().as_ref() != self.top.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Ok(self
            .top
            .wrap(self.sigma_repr(self.top.depth(), &z.repr, i % self.degree as u64)))
    }

    /// `N_{L/F}(z)` as the product of the Galois conjugates.
    pub fn norm(&self, z: &FieldElement) -> Result<FieldElement> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = z.clone();
        for i in 1..self.degree as u64 {
            acc = acc.mul(&self.conjugate(z, i)?)?;
        }
        self.descend(&acc)
    }

    /// Generators of `L*/L*^(ell^n)`: `zeta_L` and the level variables of `L`.
    pub fn top_generators(&self) -> Result<Vec<FieldElement>> {
        let mut g = vec![self.top.zeta_pow(1)];
        for j in 1..=self.top.depth() {
            g.push(self.top.var(j)?);
        }
        Ok(g)
    }

    /// Classes in `F` of the norms of the generators of `L*`.
    pub fn norm_classes(&self) -> Result<Vec<ClassVector>> {
        self.top_generators()?
            .iter()
            .map(|g| self.norm(g)?.kummer_class())
            .collect()
    }

    /// `N_{L/F}(L*) F*^(ell^n) / F*^(ell^n)`.
    pub fn norm_class_group(&self) -> Result<Subgroup> {
        Subgroup::span(&self.base, &self.norm_classes()?)
    }

    /// Images in `L*/L*^(ell^n)` of the basis classes of `F`.
    pub fn restriction_images(&self) -> Result<Vec<ClassVector>> {
        let mut imgs = vec![self.embed(&self.base.zeta_pow(1))?.kummer_class()?];
        for j in 1..=self.base.depth() {
            imgs.push(self.embed(&self.base.var(j)?)?.kummer_class()?);
        }
        Ok(imgs)
    }

    pub fn restrict_class(&self, v: &ClassVector) -> Result<ClassVector> {
        if v.field().as_ref() != self.base.as_ref() {
            return Err(Error::FieldMismatch);
        }
        apply_linear(&self.top, &self.restriction_images()?, v)
    }

    /// Restriction of a cohomology class, by functoriality of symbols.
    pub fn restrict(&self, c: &CohClass) -> Result<CohClass> {
        if c.field().as_ref() != self.base.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let imgs = self.restriction_images()?;
        restrict_with(&self.top, &imgs, c)
    }

    pub fn splits(&self, alpha: &CohClass) -> Result<bool> {
        Ok(self.restrict(alpha)?.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let kind = if self.is_unramified() { "unramified" } else { "kummer" };
        let mut v = json!({
            "kind": kind,
            "degree": self.degree,
            "e": self.ramification_index(),
            "f": self.residue_degree(),
            "field": self.top.to_string(),
        });
        if let Some(b) = &self.kummer {
            v["b"] = json!(b.to_string());
        }
        v
    }
}

pub(crate) fn restrict_with(top: &Arc<TowerField>, imgs: &[ClassVector], c: &CohClass) -> Result<CohClass> {
    let mut out = CohClass::zero(top, c.degree())?;
    for (b, &coef) in c.basis().iter().zip(c.coeffs()) {
        if coef == 0 {
            continue;
        }
        let mut args = Vec::new();
        if b.zeta {
            args.push(imgs[0].clone());
        }
        for l in b.levels() {
            args.push(imgs[l].clone());
        }
        out = out.add(&symbol(&args)?.scale(coef as i64))?;
    }
    Ok(out)
}

/// A chain `F = L_0 ⊂ L_1 ⊂ ... ⊂ L_r` of cyclic extensions.
#[derive(Clone, Debug)]
pub struct ExtensionTower {
    base: Arc<TowerField>,
    steps: Vec<Arc<CyclicExtension>>,
}

impl ExtensionTower {
    pub fn trivial(base: &Arc<TowerField>) -> Self {
        ExtensionTower {
            base: base.clone(),
            steps: Vec::new(),
        }
    }

    pub fn single(ext: CyclicExtension) -> Self {
        ExtensionTower {
            base: ext.base.clone(),
            steps: vec![Arc::new(ext)],
        }
    }

    /// Appends an extension of the current top field.
    pub fn push(&mut self, ext: CyclicExtension) -> Result<()> {
        if ext.base.as_ref() != self.top().as_ref() {
            return Err(Error::FieldMismatch);
        }
        self.steps.push(Arc::new(ext));
        Ok(())
    }

    pub fn base(&self) -> &Arc<TowerField> {
        &self.base
    }
    pub fn top(&self) -> &Arc<TowerField> {
        self.steps.last().map_or(&self.base, |s| &s.top)
    }
    pub fn steps(&self) -> &[Arc<CyclicExtension>] {
        &self.steps
    }
    pub fn degree(&self) -> u32 {
        self.steps.iter().map(|s| s.degree).product()
    }

    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement> {
        self.steps.iter().try_fold(a.clone(), |x, s| s.embed(&x))
    }

    pub fn norm(&self, z: &FieldElement) -> Result<FieldElement> {
        self.steps.iter().rev().try_fold(z.clone(), |x, s| s.norm(&x))
    }

    pub fn norm_class_group(&self) -> Result<Subgroup> {
        let Some(last) = self.steps.last() else {
            return Ok(Subgroup::full(&self.base));
        };
        let classes: Vec<ClassVector> = last
            .top_generators()?
            .iter()
            .map(|g| self.norm(g)?.kummer_class())
            .collect::<Result<_>>()?;
        Subgroup::span(&self.base, &classes)
    }

    pub fn restriction_images(&self) -> Result<Vec<ClassVector>> {
        let mut imgs = vec![self.embed(&self.base.zeta_pow(1))?.kummer_class()?];
        for j in 1..=self.base.depth() {
            imgs.push(self.embed(&self.base.var(j)?)?.kummer_class()?);
        }
        Ok(imgs)
    }

    pub fn restrict(&self, c: &CohClass) -> Result<CohClass> {
        restrict_with(self.top(), &self.restriction_images()?, c)
    }

    pub fn splits(&self, alpha: &CohClass) -> Result<bool> {
        Ok(self.restrict(alpha)?.is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "steps": self.steps.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::make_tower;

    #[test]
    fn shapes() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let u = CyclicExtension::unramified(&f, 2).unwrap();
        assert_eq!((u.ramification_index(), u.residue_degree(), u.top().q()), (1, 2, 9));
        let k = CyclicExtension::kummer(&f, &f.var(1).unwrap(), 1).unwrap();
        assert_eq!((k.ramification_index(), k.residue_degree()), (2, 1));
        assert_eq!(k.top().level_names(), &["t1".to_string()]);
        let sq = f.parse("1 + x").unwrap();
        assert_eq!(CyclicExtension::kummer(&f, &sq, 1).unwrap_err(), Error::NotAField);
        let four = f.from_int(4);
        assert_eq!(CyclicExtension::kummer(&f, &four, 1).unwrap_err(), Error::NotAField);
    }

    #[test]
    fn kummer_norms() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let k = CyclicExtension::kummer(&f, &f.var(1).unwrap(), 1).unwrap();
        let t = k.primitive_element().unwrap();
        assert_eq!(k.norm(&t).unwrap(), f.parse("-x").unwrap());
        let z = k.top().one().add(&t).unwrap();
        assert_eq!(k.norm(&z).unwrap(), f.parse("1 + 2*x").unwrap());
        // x = T^2 in L
        assert_eq!(k.embed(&f.var(1).unwrap()).unwrap(), t.pow(2).unwrap());
    }

    #[test]
    fn unramified_norm_group() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let u = CyclicExtension::unramified(&f, 2).unwrap();
        let g = u.norm_class_group().unwrap();
        let expect = Subgroup::span(&f, &[ClassVector::basis(&f, 0)]).unwrap();
        assert_eq!(g, expect);
        // oracle: a is a norm iff {u, a} = 0 for the unramified character u
        let zeta = ClassVector::basis(&f, 0);
        for a in ClassVector::all(&f) {
            let paired = symbol(&[zeta.clone(), a.clone()]).unwrap().is_zero();
            assert_eq!(paired, g.contains(&a).unwrap());
        }
        // finite-field norm F_9* -> F_3* is onto
        let n = u.norm(&u.top().zeta_pow(1)).unwrap();
        assert_eq!(n.kummer_class().unwrap().exps(), &[1, 0]);
    }

    #[test]
    fn ramified_norm_group() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let k = CyclicExtension::kummer(&f, &f.var(1).unwrap(), 1).unwrap();
        let g = k.norm_class_group().unwrap();
        let xcls = ClassVector::basis(&f, 1);
        for a in ClassVector::all(&f) {
            let paired = symbol(&[xcls.clone(), a.clone()]).unwrap().is_zero();
            assert_eq!(paired, g.contains(&a).unwrap());
        }
        assert_eq!(g.order(), 2);
        assert!(g.contains(&ClassVector::new(&f, vec![1, 1]).unwrap()).unwrap());
    }

    #[test]
    fn restriction_kills_own_symbol() {
        let f = make_tower(7, 3, 1, 2, 2).unwrap();
        let b = f.parse("3*x1*x2").unwrap();
        let c = f.parse("x1").unwrap();
        let alpha = symbol(&[b.kummer_class().unwrap(), c.kummer_class().unwrap()]).unwrap();
        let l = CyclicExtension::kummer(&f, &b, 1).unwrap();
        assert!(l.splits(&alpha).unwrap());
        assert!(l.restrict(&CohClass::zero(&f, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn lower_level_kummer() {
        // F_3((x1))((x2)) adjoining sqrt(x1): unramified on top, ramified below
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let l = CyclicExtension::kummer(&f, &f.var(1).unwrap(), 1).unwrap();
        assert_eq!(l.level(), 1);
        assert_eq!(l.ramification_index(), 1);
        let a = f.parse("x1 + x2").unwrap();
        assert_eq!(l.descend(&l.embed(&a).unwrap()).unwrap(), a);
        let n = l.norm(&l.primitive_element().unwrap()).unwrap();
        assert_eq!(n, f.parse("-x1").unwrap());
    }

    #[test]
    fn unramified_character_split() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let alpha = symbol(&[ClassVector::basis(&f, 0), ClassVector::basis(&f, 1)]).unwrap();
        let u = CyclicExtension::unramified(&f, 2).unwrap();
        assert!(u.splits(&alpha).unwrap());
    }
}
