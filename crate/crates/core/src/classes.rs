//! The class group `F*/F*^(ell^n)` as `(Z/ell^n)^(d+1)` and its subgroups.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::howell::Ring;
use crate::tower::TowerField;

/// Exponent vector over the basis `(zeta, x1, ..., xd)`.
#[derive(Clone)]
pub struct ClassVector {
    field: Arc<TowerField>,
    exps: Vec<u32>,
}

impl PartialEq for ClassVector {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps && self.field == other.field
    }
}
impl Eq for ClassVector {}

impl Hash for ClassVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for ClassVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ClassVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn ring_of(field: &TowerField) -> Ring {
    Ring::new(field.ell() as u64, field.n())
}

fn check(a: &TowerField, b: &TowerField) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl ClassVector {
    /// Reduces the given exponents mod `ell^n`.
    pub fn new(field: &Arc<TowerField>, exps: Vec<u32>) -> Result<Self> {
        Self::from_ints(field, &exps.iter().map(|&e| e as i64).collect::<Vec<_>>())
    }

    pub fn from_ints(field: &Arc<TowerField>, exps: &[i64]) -> Result<Self> {
        if exps.len() != field.rank() {
            return Err(Error::InvalidParameter(format!(
                "class vector of length {} over a rank-{} class group",
                exps.len(),
                field.rank()
            )));
        }
        let m = field.modulus() as i64;
        Ok(ClassVector {
            field: field.clone(),
            exps: exps.iter().map(|e| e.rem_euclid(m) as u32).collect(),
        })
    }

    pub fn zero(field: &Arc<TowerField>) -> Self {
        ClassVector {
            field: field.clone(),
            exps: vec![0; field.rank()],
        }
    }

    /// Basis vector: `0` is zeta, `j` is `x_j`.
    pub fn basis(field: &Arc<TowerField>, i: usize) -> Self {
        let mut v = Self::zero(field);
        v.exps[i] = 1;
        v
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
    /// Coordinate of the top uniformizer.
    pub fn top(&self) -> u32 {
        *self.exps.last().expect("nonempty")
    }

    pub fn add(&self, other: &ClassVector) -> Result<ClassVector> {
        check(&self.field, &other.field)?;
        let m = self.field.modulus();
        Ok(ClassVector {
            field: self.field.clone(),
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % m).collect(),
        })
    }

    pub fn sub(&self, other: &ClassVector) -> Result<ClassVector> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ClassVector {
        let m = self.field.modulus() as i64;
        ClassVector {
            field: self.field.clone(),
            exps: self.exps.iter().map(|&e| (e as i64 * k).rem_euclid(m) as u32).collect(),
        }
    }

    /// Order of the class in the group.
    pub fn order(&self) -> u32 {
        let ring = ring_of(&self.field);
        let e = self.exps.iter().map(|&x| ring.val(x as u64)).min().unwrap_or(ring.n);
        self.field.ell().pow(self.field.n() - e)
    }

    /// Image in the residue class group (drops the top coordinate).
    pub fn residue_part(&self) -> Result<ClassVector> {
        let res = self.field.residue_field()?;
        Ok(ClassVector {
            field: res.clone(),
            exps: self.exps[..self.exps.len() - 1].to_vec(),
        })
    }

    /// Lift of a residue class with the given top coordinate.
    pub fn lift_with_top(&self, field: &Arc<TowerField>, top: i64) -> Result<ClassVector> {
        let mut e: Vec<i64> = self.exps.iter().map(|&x| x as i64).collect();
        e.push(top);
        let v = Self::from_ints(field, &e)?;
        check(field.residue_field()?, &self.field)?;
        Ok(v)
    }

    /// Every class of the field, in lexicographic order.
    pub fn all(field: &Arc<TowerField>) -> Vec<ClassVector> {
        let m = field.modulus();
        let r = field.rank();
        let total = (m as u64).pow(r as u32);
        (0..total)
            .map(|mut code| {
                let mut exps = vec![0u32; r];
                for slot in exps.iter_mut().rev() {
                    *slot = (code % m as u64) as u32;
                    code /= m as u64;
                }
                ClassVector {
                    field: field.clone(),
                    exps,
                }
            })
            .collect()
    }
}

/// A subgroup of the class group in canonical (Howell) form.
#[derive(Clone)]
pub struct Subgroup {
    field: Arc<TowerField>,
    form: Vec<(usize, Vec<u64>)>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form && self.field == other.field
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.echelon().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "> of order {}", self.order())
    }
}

impl Subgroup {
    fn from_rows(field: &Arc<TowerField>, rows: &[Vec<u64>]) -> Subgroup {
        let ring = ring_of(field);
        Subgroup {
            field: field.clone(),
            form: ring.howell(rows, field.rank()),
        }
    }

    pub fn span(field: &Arc<TowerField>, gens: &[ClassVector]) -> Result<Subgroup> {
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            check(field, &g.field)?;
            rows.push(g.exps.iter().map(|&x| x as u64).collect());
        }
        Ok(Self::from_rows(field, &rows))
    }

    pub fn trivial(field: &Arc<TowerField>) -> Subgroup {
        Subgroup {
            field: field.clone(),
            form: Vec::new(),
        }
    }

    pub fn full(field: &Arc<TowerField>) -> Subgroup {
        let rows: Vec<Vec<u64>> = (0..field.rank())
            .map(|i| (0..field.rank()).map(|j| u64::from(i == j)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    /// `k * full`: the classes divisible by `k`.
    pub fn multiples(field: &Arc<TowerField>, k: i64) -> Subgroup {
        Self::full(field).scaled(k)
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    /// Canonical echelon rows.
    pub fn echelon(&self) -> Vec<Vec<u32>> {
        self.form
            .iter()
            .map(|(_, r)| r.iter().map(|&x| x as u32).collect())
            .collect()
    }

    pub fn generators(&self) -> Vec<ClassVector> {
        self.echelon()
            .into_iter()
            .map(|exps| ClassVector {
                field: self.field.clone(),
                exps,
            })
            .collect()
    }

    pub fn order(&self) -> u64 {
        ring_of(&self.field).order(&self.form)
    }

    pub fn contains(&self, v: &ClassVector) -> Result<bool> {
        check(&self.field, &v.field)?;
        let ring = ring_of(&self.field);
        let probe: Vec<u64> = v.exps.iter().map(|&x| x as u64).collect();
        Ok(ring.reduce_against(&self.form, &probe).iter().all(|&x| x == 0))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        check(&self.field, &other.field)?;
        let mut rows: Vec<Vec<u64>> = self.form.iter().map(|(_, r)| r.clone()).collect();
        rows.extend(other.form.iter().map(|(_, r)| r.clone()));
        Ok(Self::from_rows(&self.field, &rows))
    }

    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup> {
        check(&self.field, &other.field)?;
        let ring = ring_of(&self.field);
        let a: Vec<Vec<u64>> = self.form.iter().map(|(_, r)| r.clone()).collect();
        let b: Vec<Vec<u64>> = other.form.iter().map(|(_, r)| r.clone()).collect();
        let mut stacked = a.clone();
        stacked.extend(b);
        let rank = self.field.rank();
        let rows: Vec<Vec<u64>> = ring
            .left_kernel(&stacked, rank)
            .into_iter()
            .map(|y| {
                let mut v = vec![0u64; rank];
                for (coef, row) in y.iter().zip(&a) {
                    for (slot, x) in v.iter_mut().zip(row) {
                        *slot = (*slot + coef * x) % ring.modulus;
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_rows(&self.field, &rows))
    }

    /// `{k v : v in self}`.
    pub fn scaled(&self, k: i64) -> Subgroup {
        let ring = ring_of(&self.field);
        let k = ring.reduce(k);
        let rows: Vec<Vec<u64>> = self
            .form
            .iter()
            .map(|(_, r)| r.iter().map(|x| (x * k) % ring.modulus).collect())
            .collect();
        Self::from_rows(&self.field, &rows)
    }

    /// `{v : k v in self}`.
    pub fn preimage_of_scaling(&self, k: i64) -> Subgroup {
        // kernel of v -> k v mod self, via left kernel of [k I ; self]
        let ring = ring_of(&self.field);
        let rank = self.field.rank();
        let k = ring.reduce(k);
        let mut rows: Vec<Vec<u64>> = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { k } else { 0 }).collect())
            .collect();
        rows.extend(self.form.iter().map(|(_, r)| r.clone()));
        let gens: Vec<Vec<u64>> = ring
            .left_kernel(&rows, rank)
            .into_iter()
            .map(|y| y[..rank].to_vec())
            .collect();
        Self::from_rows(&self.field, &gens)
    }

    pub fn elements(&self) -> Vec<ClassVector> {
        ring_of(&self.field)
            .elements(&self.form, self.field.rank())
            .into_iter()
            .map(|e| ClassVector {
                field: self.field.clone(),
                exps: e.into_iter().map(|x| x as u32).collect(),
            })
            .collect()
    }

    /// Coset representatives of `self / sub` (lexicographically least in each coset).
    pub fn coset_representatives(&self, sub: &Subgroup) -> Result<Vec<ClassVector>> {
        check(&self.field, &sub.field)?;
        let mut els = self.elements();
        els.sort();
        let sub_els = sub.elements();
        let mut covered: std::collections::HashSet<Vec<u32>> = sub_els.iter().map(|s| s.exps.clone()).collect();
        let mut reps: Vec<ClassVector> = Vec::new();
        for e in els {
            if covered.contains(&e.exps) {
                continue;
            }
            for s in &sub_els {
                covered.insert(e.add(s)?.exps);
            }
            reps.push(e);
        }
        Ok(reps)
    }

    /// Image under a linear map given by the images of the basis vectors.
    pub fn map_by(&self, target: &Arc<TowerField>, basis_images: &[ClassVector]) -> Result<Subgroup> {
        let imgs: Result<Vec<ClassVector>> = self
            .generators()
            .iter()
            .map(|g| apply_linear(target, basis_images, g))
            .collect();
        Subgroup::span(target, &imgs?)
    }
}

/// `sum_i v_i * images[i]`.
pub fn apply_linear(target: &Arc<TowerField>, images: &[ClassVector], v: &ClassVector) -> Result<ClassVector> {
    if images.len() != v.exps.len() {
        return Err(Error::FieldMismatch);
    }
    let mut acc = ClassVector::zero(target);
    for (img, &c) in images.iter().zip(&v.exps) {
        acc = acc.add(&img.scale(c as i64))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::make_tower;

    #[test]
    fn spans_and_members() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let g = Subgroup::span(&f, &[ClassVector::basis(&f, 1), ClassVector::basis(&f, 0)]).unwrap();
        assert_eq!(g, Subgroup::full(&f));
        assert_eq!(g.order(), 4);

        let f4 = make_tower(5, 2, 2, 1, 2).unwrap();
        let v = |a, b| ClassVector::new(&f4, vec![a, b]).unwrap();
        let h = Subgroup::span(&f4, &[v(2, 0)]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.contains(&v(2, 0)).unwrap());
        assert!(!h.contains(&v(1, 0)).unwrap());
    }

    #[test]
    fn meet_matches_enumeration() {
        let f4 = make_tower(5, 2, 2, 1, 2).unwrap();
        let v = |a, b| ClassVector::new(&f4, vec![a, b]).unwrap();
        let a = Subgroup::span(&f4, &[v(1, 0)]).unwrap();
        let b = Subgroup::span(&f4, &[v(1, 2)]).unwrap();
        let m = a.meet(&b).unwrap();
        assert_eq!(m, Subgroup::span(&f4, &[v(2, 0)]).unwrap());
        // oracle: intersect element lists
        let ea = a.elements();
        let common: Vec<_> = b.elements().into_iter().filter(|x| ea.contains(x)).collect();
        assert_eq!(common.len() as u64, m.order());
        for c in common {
            assert!(m.contains(&c).unwrap());
        }
    }

    #[test]
    fn scaling_preimage() {
        let f4 = make_tower(5, 2, 2, 1, 2).unwrap();
        let triv = Subgroup::trivial(&f4);
        let pre = triv.preimage_of_scaling(2);
        assert_eq!(pre, Subgroup::multiples(&f4, 2));
        assert_eq!(Subgroup::full(&f4).scaled(2).order(), 4);
    }

    #[test]
    fn cosets() {
        let f = make_tower(3, 2, 1, 2, 2).unwrap();
        let full = Subgroup::full(&f);
        let sub = Subgroup::span(&f, &[ClassVector::basis(&f, 0)]).unwrap();
        let reps = full.coset_representatives(&sub).unwrap();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn mismatch_is_reported() {
        let f = make_tower(3, 2, 1, 1, 2).unwrap();
        let g = make_tower(3, 2, 1, 2, 2).unwrap();
        let s = Subgroup::full(&f);
        assert_eq!(s.contains(&ClassVector::zero(&g)), Err(Error::FieldMismatch));
    }
}
