//! Randomized and exhaustive properties of the arithmetic, the cohomology
//! groups, norm groups, Rost/Suslin groups and quadratic forms.

use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rostlab::albert::{isotropic, witt_index, QuadraticForm};
use rostlab::cohomology::CohClass;
use rostlab::rost::{nrd_lower_bound, rost_kernel, suslin_group, Exactness};
use rostlab::suites::random_element;
use rostlab::{make_tower, symbol, ClassVector, CyclicExtension, FieldElement, Subgroup, TowerField};

fn towers() -> Vec<Arc<TowerField>> {
    [(3, 2, 1, 1), (3, 2, 1, 2), (3, 2, 1, 3), (7, 3, 1, 2), (5, 2, 2, 2)]
        .iter()
        .map(|&(q, l, n, d)| make_tower(q, l, n, d, 3).unwrap())
        .collect()
}

fn tower() -> impl Strategy<Value = Arc<TowerField>> {
    (0..5usize).prop_map(|i| towers()[i].clone())
}

fn elements(f: &Arc<TowerField>, seed: u64, k: usize) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| random_element(f, &mut rng).unwrap()).collect()
}

fn class(e: &FieldElement) -> ClassVector {
    e.kummer_class().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_units_are_powers(f in tower(), seed in any::<u64>()) {
        let [a] = elements(&f, seed, 1).try_into().unwrap();
        let d = f.depth();
        // v(a) >= -2, so y^3 a lies in the maximal ideal
        let u = f.one().add(&a.mul(&f.var_pow(d, 3).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(u.residue().unwrap(), f.residue_field().unwrap().one());
        prop_assert!(class(&u).is_zero());
    }

    #[test]
    fn classes_are_multiplicative(f in tower(), seed in any::<u64>()) {
        let [a, b] = elements(&f, seed, 2).try_into().unwrap();
        prop_assert_eq!(class(&a.mul(&b).unwrap()), class(&a).add(&class(&b)).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().valuation().unwrap(),
            a.valuation().unwrap() + b.valuation().unwrap()
        );
    }

    #[test]
    fn spans_are_canonical(f in tower(), seed in any::<u64>()) {
        let mut gens: Vec<ClassVector> = elements(&f, seed, 4).iter().map(class).collect();
        let before = Subgroup::span(&f, &gens).unwrap();
        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let after = Subgroup::span(&f, &gens).unwrap();
        prop_assert_eq!(before.echelon(), after.echelon());
    }

    #[test]
    fn steinberg_and_sign(f in tower(), seed in any::<u64>()) {
        let [a, b, c] = elements(&f, seed, 3).try_into().unwrap();
        let one_minus = f.one().sub(&a).unwrap();
        prop_assume!(!one_minus.is_zero());
        prop_assert!(symbol(&[class(&a), class(&one_minus)]).unwrap().is_zero());
        if f.depth() >= 2 {
            prop_assert!(symbol(&[class(&a), class(&one_minus), class(&c)]).unwrap().is_zero());
        }
        let ab = symbol(&[class(&a), class(&b)]).unwrap();
        let ba = symbol(&[class(&b), class(&a)]).unwrap();
        prop_assert!(ab.add(&ba).unwrap().is_zero());
        let left = symbol(&[class(&a.mul(&b).unwrap()), class(&c)]).unwrap();
        let right = symbol(&[class(&a), class(&c)]).unwrap().add(&symbol(&[class(&b), class(&c)]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn witt_index_is_scaling_invariant(seed in any::<u64>(), dim in 1usize..6) {
        let f = make_tower(3, 2, 1, 2, 3).unwrap();
        let q = QuadraticForm::new(&f, elements(&f, seed, dim)).unwrap();
        let w = witt_index(&q).unwrap();
        for v in ClassVector::all(&f) {
            let rho = f.class_representative(&v).unwrap();
            prop_assert_eq!(witt_index(&q.scaled(&rho).unwrap()).unwrap(), w);
        }
        let minus = q.scaled(&f.from_int(-1)).unwrap();
        let h = q.perp(&minus).unwrap();
        prop_assert!(isotropic(&h).unwrap());
        prop_assert_eq!(witt_index(&h).unwrap(), dim);
    }
}

#[test]
fn representatives_round_trip() {
    for f in towers() {
        for v in ClassVector::all(&f) {
            assert_eq!(class(&f.class_representative(&v).unwrap()), v);
        }
    }
}

#[test]
fn classes_are_torsion() {
    for f in towers() {
        let big = f.modulus() as i64;
        for deg in 1..=f.depth() + 1 {
            for c in CohClass::all(&f, deg).unwrap().into_iter().take(200) {
                assert!(c.scale(big).is_zero());
            }
        }
    }
}

/// The degree-`ell^m` symbol `(b, a)` vanishes whenever `a` is a norm from
/// `F(b^(1/ell^m))`; mod `ell^n` that symbol is `ell^(n-m) {b, a}`.
#[test]
fn norms_kill_the_defining_symbol() {
    for f in towers().into_iter().filter(|f| f.depth() <= 2) {
        for b in ClassVector::all(&f) {
            for m in 1..=f.n() {
                let Ok(ext) = CyclicExtension::kummer_from_class(&f, &b, m) else {
                    continue;
                };
                let scale = (f.modulus() / f.ell().pow(m)) as i64;
                for a in ext.norm_class_group().unwrap().elements() {
                    let s = symbol(&[b.clone(), a]).unwrap().scale(scale);
                    assert!(s.is_zero(), "{f}: b = {b}, m = {m}");
                }
            }
        }
    }
}

/// Local class field theory: `[F* : N(L*)] = [L : F]` for one level.
#[test]
fn local_norm_index_is_the_degree() {
    for (q, l, n) in [(3, 2, 1), (7, 3, 1), (5, 2, 2), (13, 3, 1)] {
        let f = make_tower(q, l, n, 1, 6).unwrap();
        for b in ClassVector::all(&f) {
            for m in 1..=n {
                let Ok(ext) = CyclicExtension::kummer_from_class(&f, &b, m) else {
                    continue;
                };
                let index = f.class_group_order() / ext.norm_class_group().unwrap().order();
                assert_eq!(index, ext.degree() as u64, "{f}: b = {b}, m = {m}");
            }
        }
    }
}

/// Above one level the index exceeds the degree: over F_3((x))((y)) the
/// quadratic extension F(x^(1/2)) has only the norm classes 1 and -x.
#[test]
fn two_level_norm_index_exceeds_degree() {
    let f = make_tower(3, 2, 1, 2, 4).unwrap();
    let ext = CyclicExtension::kummer(&f, &f.parse("x").unwrap(), 1).unwrap();
    let norms = ext.norm_class_group().unwrap();
    assert_eq!(norms.order(), 2);
    assert!(norms.contains(&class(&f.parse("-x").unwrap())).unwrap());
    assert_eq!(f.class_group_order() / norms.order(), 2 * ext.degree() as u64);
}

#[test]
fn suslin_inside_rost() {
    for f in towers() {
        for alpha in CohClass::all(&f, 2).unwrap() {
            let r = rost_kernel(&alpha).unwrap();
            let (s, _) = suslin_group(&alpha).unwrap();
            assert!(s.is_subgroup_of(&r).unwrap(), "{f}: {}", alpha.to_json());
            assert!(nrd_lower_bound(&alpha).unwrap().0.is_subgroup_of(&r).unwrap());
        }
    }
}

/// `S(ell alpha)^ell ⊆ S(alpha) ⊆ S(ell alpha)` for the mod-4 tower over F_5.
#[test]
fn suslin_groups_along_multiples() {
    let f = make_tower(5, 2, 2, 2, 3).unwrap();
    for alpha in CohClass::all(&f, 2).unwrap() {
        let (s, flag) = suslin_group(&alpha).unwrap();
        let (s2, flag2) = suslin_group(&alpha.scale(2)).unwrap();
        assert!(s2.scaled(2).is_subgroup_of(&s).unwrap());
        if flag == Exactness::Exact && flag2 == Exactness::Exact {
            assert!(s.is_subgroup_of(&s2).unwrap());
        }
    }
}
