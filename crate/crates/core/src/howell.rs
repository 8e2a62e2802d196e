//! Howell normal form over `Z/ell^n`.
//!
//! Rows are vectors with entries in `[0, ell^n)`. The echelon produced here has
//! pivots of the form `ell^e`, entries above each pivot reduced into `[0, ell^e)`,
//! and is closed under the annihilator trick, so two row sets span the same
//! submodule exactly when their forms are identical.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring {
    pub ell: u64,
    pub n: u32,
    pub modulus: u64,
}

impl Ring {
    pub fn new(ell: u64, n: u32) -> Self {
        Ring {
            ell,
            n,
            modulus: ell.pow(n),
        }
    }

    /// `ell`-adic valuation, capped at `n` (so `val(0) = n`).
    pub fn val(&self, mut x: u64) -> u32 {
        x %= self.modulus;
        if x == 0 {
            return self.n;
        }
        let mut e = 0;
        while x.is_multiple_of(self.ell) {
            x /= self.ell;
            e += 1;
        }
        e
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    fn unit_inverse(&self, u: u64) -> u64 {
        crate::gf::inv_mod(u as i64, self.modulus as i64).expect("unit") as u64
    }

    fn axpy(&self, y: &mut [u64], a: u64, x: &[u64]) {
        // y <- y - a x
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = (*yi + self.modulus - (a * xi) % self.modulus) % self.modulus;
        }
    }

    /// Howell form of the row span. Returns `(pivot column, row)` pairs in
    /// increasing pivot order.
    pub fn howell(&self, rows: &[Vec<u64>], cols: usize) -> Vec<(usize, Vec<u64>)> {
        let m = self.modulus;
        let mut pool: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x % m).collect::<Vec<_>>())
            .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
            .collect();
        let mut out: Vec<(usize, Vec<u64>)> = Vec::new();
        for col in 0..cols {
            let best = pool
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| self.val(r[col]))
                .map(|(i, _)| i);
            let Some(bi) = best else { continue };
            let mut pivot = pool.swap_remove(bi);
            let e = self.val(pivot[col]);
            let pe = self.ell.pow(e);
            let unit = self.unit_inverse(pivot[col] / pe);
            for x in pivot.iter_mut() {
                *x = (*x * unit) % m;
            }
            for r in pool.iter_mut() {
                if r[col] != 0 {
                    let t = r[col] / pe;
                    self.axpy(r, t, &pivot);
                }
            }
            let factor = self.ell.pow(self.n - e);
            let ann: Vec<u64> = pivot.iter().map(|x| (x * factor) % m).collect();
            pool.push(ann);
            pool.retain(|r| r.iter().any(|&x| x != 0));
            out.push((col, pivot));
        }
        for i in 0..out.len() {
            let (col, row) = out[i].clone();
            let pe = self.ell.pow(self.val(row[col]));
            for entry in out.iter_mut().take(i) {
                let a = entry.1[col];
                if a >= pe {
                    self.axpy(&mut entry.1, a / pe, &row);
                }
            }
        }
        out
    }

    /// Reduces `v` against a Howell form; the result is zero iff `v` is in the span.
    pub fn reduce_against(&self, form: &[(usize, Vec<u64>)], v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().map(|x| x % self.modulus).collect();
        for (col, row) in form {
            let pe = self.ell.pow(self.val(row[*col]));
            let a = v[*col];
            if !a.is_multiple_of(pe) {
                return v;
            }
            if a != 0 {
                self.axpy(&mut v, a / pe, row);
            }
        }
        v
    }

    /// Generators of the left kernel `{y : sum y_i rows_i = 0}`.
    pub fn left_kernel(&self, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let k = rows.len();
        let aug: Vec<Vec<u64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.resize(cols, 0);
                v.extend((0..k).map(|j| u64::from(i == j)));
                v
            })
            .collect();
        self.howell(&aug, cols + k)
            .into_iter()
            .filter(|(c, _)| *c >= cols)
            .map(|(_, r)| r[cols..].to_vec())
            .collect()
    }

    /// Number of elements of the span of a Howell form.
    pub fn order(&self, form: &[(usize, Vec<u64>)]) -> u64 {
        form.iter()
            .map(|(c, r)| self.ell.pow(self.n - self.val(r[*c])))
            .product()
    }

    /// Every element of the span, each exactly once.
    pub fn elements(&self, form: &[(usize, Vec<u64>)], cols: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; cols]];
        for (c, r) in form {
            let count = self.ell.pow(self.n - self.val(r[*c]));
            let mut next = Vec::with_capacity(out.len() * count as usize);
            for v in &out {
                for t in 0..count {
                    next.push(v.iter().zip(r).map(|(a, b)| (a + t * b) % self.modulus).collect());
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_span(ring: &Ring, gens: &[Vec<u64>], cols: usize) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; cols]);
        loop {
            let mut grown = set.clone();
            for v in &set {
                for g in gens {
                    grown.insert(v.iter().zip(g).map(|(a, b)| (a + b) % ring.modulus).collect());
                }
            }
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    #[test]
    fn enumeration_matches_closure() {
        let ring = Ring::new(2, 2);
        let gens = vec![vec![2, 1, 0], vec![0, 2, 2], vec![1, 3, 2]];
        let form = ring.howell(&gens, 3);
        let els: BTreeSet<_> = ring.elements(&form, 3).into_iter().collect();
        assert_eq!(els, brute_span(&ring, &gens, 3));
        assert_eq!(ring.order(&form), els.len() as u64);
    }

    #[test]
    fn annihilator_closure_is_needed() {
        // span{(2,1)} in (Z/4)^2 contains (0,2)
        let ring = Ring::new(2, 2);
        let form = ring.howell(&[vec![2, 1]], 2);
        assert_eq!(ring.order(&form), 4);
        assert!(ring.reduce_against(&form, &[0, 2]).iter().all(|&x| x == 0));
        assert!(ring.reduce_against(&form, &[2, 0]).iter().any(|&x| x != 0));
    }

    #[test]
    fn left_kernel_of_small_matrix() {
        let ring = Ring::new(3, 1);
        let rows = vec![vec![1, 2], vec![2, 1], vec![0, 0]];
        let ker = ring.left_kernel(&rows, 2);
        let form = ring.howell(&ker, 3);
        assert_eq!(ring.order(&form), 9);
        for y in ring.elements(&form, 3) {
            for c in 0..2 {
                let s: u64 = (0..3).map(|i| y[i] * rows[i][c]).sum();
                assert_eq!(s % 3, 0);
            }
        }
    }
}
