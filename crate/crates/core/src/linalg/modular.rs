use num_integer::Integer;

use super::abelian::AbelianStructure;
use super::{ext_gcd, mod_inverse, normalizing_unit};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℤ/m with `m < 2³²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1 && modulus <= u32::MAX as u64, "modulus out of range");
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Result<Self> {
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let mut m = Self::zeros(rows.len(), c, modulus);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.add(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Adds a signed integer to an entry.
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        let m = self.modulus as i64;
        let e = &mut self.data[i * self.cols + j];
        *e = ((*e as i64 + v.rem_euclid(m)) % m) as u64;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * (b % m)) % m)
            })
            .collect()
    }
}

/// Which transforms an elimination records.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tracking {
    pub right: bool,
    pub left_inverse: bool,
}

/// Diagonalization `L·A·R = diag(d₀, …)` over ℤ/m by unimodular row and column operations.
/// Each `d_t` is a divisor of `m`; right-hand sides supplied up front are carried through `L`.
#[derive(Clone, Debug)]
pub struct ModElimination {
    modulus: u64,
    rows: usize,
    cols: usize,
    diag: Vec<u64>,
    right: Option<Vec<Vec<u64>>>,
    left_inv: Option<Vec<Vec<u64>>>,
    rhs: Vec<Vec<u64>>,
}

/// A solution of `A·x = b` together with generators of the kernel of `A`.
#[derive(Clone, Debug)]
pub struct ModSolution {
    pub x: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
}

struct Work {
    m: u64,
    rows: usize,
    cols: usize,
    a: Vec<u64>,
    right: Option<Vec<Vec<u64>>>,
    left_inv: Option<Vec<Vec<u64>>>,
    rhs: Vec<Vec<u64>>,
}

#[inline]
fn mulm(a: u64, b: u64, m: u64) -> u64 {
    a * b % m
}

/// `x ↦ s·x + t·y`, `y ↦ u·x + v·y` on two equal-length slices.
fn combine(x: &mut [u64], y: &mut [u64], (s, t, u, v): (u64, u64, u64, u64), m: u64) {
    for (p, q) in x.iter_mut().zip(y.iter_mut()) {
        let (a, b) = (*p, *q);
        *p = (mulm(s, a, m) + mulm(t, b, m)) % m;
        *q = (mulm(u, a, m) + mulm(v, b, m)) % m;
    }
}

/// Integer-level 2×2 unimodular combination taking `(a, b)` to `(gcd, 0)`, as residues,
/// together with its inverse.
fn gcd_step(a: u64, b: u64, m: u64) -> ((u64, u64, u64, u64), (u64, u64, u64, u64)) {
    let (d, s, t) = ext_gcd(a as i64, b as i64);
    let r = |x: i64| x.rem_euclid(m as i64) as u64;
    let (ad, bd) = (a as i64 / d, b as i64 / d);
    ((r(s), r(t), r(-bd), r(ad)), (r(ad), r(-t), r(bd), r(s)))
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i != j);
    if i < j {
        let (l, r) = v.split_at_mut(j);
        (&mut l[i], &mut r[0])
    } else {
        let (l, r) = v.split_at_mut(i);
        (&mut r[0], &mut l[j])
    }
}

impl Work {
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
        for b in &mut self.rhs {
            b.swap(i, k);
        }
        if let Some(li) = &mut self.left_inv {
            li.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
        if let Some(r) = &mut self.right {
            r.swap(j, k);
        }
    }

    fn scale_row(&mut self, i: usize, u: u64) {
        let m = self.m;
        for e in &mut self.a[i * self.cols..(i + 1) * self.cols] {
            *e = mulm(*e, u, m);
        }
        for b in &mut self.rhs {
            b[i] = mulm(b[i], u, m);
        }
        if let Some(li) = &mut self.left_inv {
            let inv = mod_inverse(u, m).expect("unit");
            for e in &mut li[i] {
                *e = mulm(*e, inv, m);
            }
        }
    }

    /// row_i -= q·row_t, from column `from` on.
    fn sub_row(&mut self, i: usize, t: usize, q: u64, from: usize) {
        let m = self.m;
        let nq = (m - q % m) % m;
        let c = self.cols;
        let (ri, rt) = pair_mut_rows(&mut self.a, c, i, t);
        for (x, &y) in ri[from..].iter_mut().zip(&rt[from..]) {
            if y != 0 {
                *x = (*x + mulm(nq, y, m)) % m;
            }
        }
        for b in &mut self.rhs {
            b[i] = (b[i] + mulm(nq, b[t], m)) % m;
        }
        if let Some(li) = &mut self.left_inv {
            // L⁻¹ ← L⁻¹·E⁻¹ : col_t += q·col_i
            let (ct, ci) = pair_mut(li, t, i);
            for (x, &y) in ct.iter_mut().zip(ci.iter()) {
                *x = (*x + mulm(q % m, y, m)) % m;
            }
        }
    }

    fn combine_rows(&mut self, t: usize, i: usize, from: usize) {
        let m = self.m;
        let (f, finv) = gcd_step(self.at(t, from), self.at(i, from), m);
        let c = self.cols;
        let (rt, ri) = pair_mut_rows(&mut self.a, c, t, i);
        combine(&mut rt[from..], &mut ri[from..], f, m);
        for b in &mut self.rhs {
            let (x, y) = pair_mut(b, t, i);
            combine(std::slice::from_mut(x), std::slice::from_mut(y), f, m);
        }
        if let Some(li) = &mut self.left_inv {
            // new col_t = a'·col_t + b'·col_i ; new col_i = -t·col_t + s·col_i
            let (ct, ci) = pair_mut(li, t, i);
            combine(ct, ci, (finv.0, finv.2, finv.1, finv.3), m);
        }
    }

    /// col_j -= q·col_t over rows `from..`.
    fn sub_col(&mut self, j: usize, t: usize, q: u64, from: usize) {
        let m = self.m;
        let nq = (m - q % m) % m;
        for i in from..self.rows {
            let y = self.a[i * self.cols + t];
            if y != 0 {
                let x = &mut self.a[i * self.cols + j];
                *x = (*x + mulm(nq, y, m)) % m;
            }
        }
        if let Some(r) = &mut self.right {
            let (cj, ct) = pair_mut(r, j, t);
            for (x, &y) in cj.iter_mut().zip(ct.iter()) {
                if y != 0 {
                    *x = (*x + mulm(nq, y, m)) % m;
                }
            }
        }
    }

    fn combine_cols(&mut self, t: usize, j: usize, from: usize) {
        let m = self.m;
        let (f, _) = gcd_step(self.at(from, t), self.at(from, j), m);
        let c = self.cols;
        for i in from..self.rows {
            let (a, b) = (self.a[i * c + t], self.a[i * c + j]);
            self.a[i * c + t] = (mulm(f.0, a, m) + mulm(f.1, b, m)) % m;
            self.a[i * c + j] = (mulm(f.2, a, m) + mulm(f.3, b, m)) % m;
        }
        if let Some(r) = &mut self.right {
            let (ct, cj) = pair_mut(r, t, j);
            combine(ct, cj, f, m);
        }
    }
}

fn pair_mut_rows(a: &mut [u64], c: usize, i: usize, k: usize) -> (&mut [u64], &mut [u64]) {
    assert!(i != k);
    if i < k {
        let (l, r) = a.split_at_mut(k * c);
        (&mut l[i * c..(i + 1) * c], &mut r[..c])
    } else {
        let (l, r) = a.split_at_mut(i * c);
        (&mut r[..c], &mut l[k * c..(k + 1) * c])
    }
}

impl ModElimination {
    pub fn new(a: &ModMatrix, tracking: Tracking, rhs: &[Vec<u64>]) -> Result<Self> {
        let (rows, cols, m) = (a.rows, a.cols, a.modulus);
        for b in rhs {
            if b.len() != rows {
                return Err(Error::Dimension(format!(
                    "right-hand side of length {} for {} rows",
                    b.len(),
                    rows
                )));
            }
        }
        let unit = |n: usize| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1 % m;
                    v
                })
                .collect()
        };
        let mut w = Work {
            m,
            rows,
            cols,
            a: a.data.clone(),
            right: tracking.right.then(|| unit(cols)),
            left_inv: tracking.left_inverse.then(|| unit(rows)),
            rhs: rhs.iter().map(|b| b.iter().map(|x| x % m).collect()).collect(),
        };
        let mut diag = Vec::new();
        let n = rows.min(cols);
        for t in 0..n {
            // pivot: entry of least gcd with m
            let mut best: Option<(u64, usize, usize)> = None;
            'search: for i in t..rows {
                for j in t..cols {
                    let v = w.at(i, j);
                    if v == 0 {
                        continue;
                    }
                    let g = v.gcd(&m);
                    if best.is_none_or(|b| g < b.0) {
                        best = Some((g, i, j));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            loop {
                let u = normalizing_unit(w.at(t, t), m);
                if u != 1 {
                    w.scale_row(t, u);
                }
                for i in t + 1..rows {
                    let v = w.at(i, t);
                    if v == 0 {
                        continue;
                    }
                    let g = w.at(t, t);
                    if v.is_multiple_of(g) {
                        w.sub_row(i, t, v / g, t);
                    } else {
                        w.combine_rows(t, i, t);
                    }
                }
                let mut dirty = false;
                for j in t + 1..cols {
                    let v = w.at(t, j);
                    if v == 0 {
                        continue;
                    }
                    let g = w.at(t, t);
                    if v.is_multiple_of(g) {
                        w.sub_col(j, t, v / g, t);
                    } else {
                        w.combine_cols(t, j, t);
                        dirty = true;
                    }
                }
                if !dirty || (t + 1..rows).all(|i| w.at(i, t) == 0) {
                    break;
                }
            }
            let u = normalizing_unit(w.at(t, t), m);
            if u != 1 {
                w.scale_row(t, u);
            }
            diag.push(w.at(t, t));
        }
        Ok(ModElimination {
            modulus: m,
            rows,
            cols,
            diag,
            right: w.right,
            left_inv: w.left_inv,
            rhs: w.rhs,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Pivots `d_t`, each a divisor of the modulus.
    pub fn diag(&self) -> &[u64] {
        &self.diag
    }

    /// Column `t` of the right transform.
    pub fn right_column(&self, t: usize) -> Option<&[u64]> {
        self.right.as_ref().map(|r| r[t].as_slice())
    }

    /// Column `t` of `L⁻¹`.
    pub fn left_inverse_column(&self, t: usize) -> Option<&[u64]> {
        self.left_inv.as_ref().map(|r| r[t].as_slice())
    }

    /// Solves against the `k`-th right-hand side. Requires right tracking.
    pub fn solve(&self, k: usize, with_kernel: bool) -> Option<ModSolution> {
        let m = self.modulus;
        let c = &self.rhs[k];
        let right = self.right.as_ref().expect("solve requires the right transform");
        if c[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (t, &d) in self.diag.iter().enumerate() {
            if !c[t].is_multiple_of(d) {
                return None;
            }
            let q = c[t] / d;
            if q == 0 {
                continue;
            }
            for (xi, &r) in x.iter_mut().zip(&right[t]) {
                *xi = (*xi + mulm(q, r, m)) % m;
            }
        }
        let kernel = if with_kernel {
            let mut ker = Vec::new();
            for t in 0..self.cols {
                let s = if t < self.rank() { m / self.diag[t] } else { 1 };
                if s % m == 0 {
                    continue;
                }
                ker.push(right[t].iter().map(|&r| mulm(r, s, m)).collect());
            }
            ker
        } else {
            Vec::new()
        };
        Some(ModSolution { x, kernel })
    }

    /// Number of rows of the eliminated matrix.
    pub fn rows(&self) -> usize {
        self.rows
    }
}

/// One solution of `A·x ≡ b (mod m)` and generators of the kernel, or `None`.
pub fn solve_mod(a: &ModMatrix, b: &[u64]) -> Result<Option<ModSolution>> {
    let e = ModElimination::new(
        a,
        Tracking {
            right: true,
            left_inverse: false,
        },
        &[b.to_vec()],
    )?;
    Ok(e.solve(0, true))
}

/// Structure of `(ℤ/m)^rows / A·(ℤ/m)^cols` with generators as vectors mod `m`.
pub fn cokernel_structure(a: &ModMatrix) -> Result<AbelianStructure> {
    let m = a.modulus;
    let e = ModElimination::new(
        a,
        Tracking {
            right: false,
            left_inverse: true,
        },
        &[],
    )?;
    let mut cyc = Vec::new();
    for t in 0..a.rows {
        let d = if t < e.rank() { e.diag[t] } else { m };
        let gen = e.left_inverse_column(t).expect("left tracking").to_vec();
        cyc.push((d, gen));
    }
    Ok(AbelianStructure::from_cyclic(cyc, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>], md: u64) -> ModMatrix {
        ModMatrix::from_rows(rows, md).unwrap()
    }

    #[test]
    fn scalar_equations() {
        assert!(solve_mod(&m(&[vec![2]], 4), &[1]).unwrap().is_none());
        let s = solve_mod(&m(&[vec![2]], 4), &[2]).unwrap().unwrap();
        assert_eq!(s.x, vec![1]);
        assert_eq!(s.kernel, vec![vec![2]]);
    }

    #[test]
    fn identity_and_cokernel() {
        let id = m(&[vec![1, 0], vec![0, 1]], 6);
        let s = solve_mod(&id, &[4, 5]).unwrap().unwrap();
        assert_eq!(s.x, vec![4, 5]);
        assert!(s.kernel.is_empty());
        let c = cokernel_structure(&m(&[vec![2]], 4)).unwrap();
        assert_eq!(c.factors, vec![2]);
        let c = cokernel_structure(&m(&[vec![2, 0], vec![0, 3]], 12)).unwrap();
        assert_eq!(c.factors, vec![6]);
    }

    fn brute_image(a: &ModMatrix) -> std::collections::BTreeSet<Vec<u64>> {
        let md = a.modulus();
        let mut out = std::collections::BTreeSet::new();
        let total = (md as usize).pow(a.cols() as u32);
        for code in 0..total {
            let mut x = Vec::new();
            let mut c = code;
            for _ in 0..a.cols() {
                x.push((c % md as usize) as u64);
                c /= md as usize;
            }
            out.insert(a.mul_vec(&x));
        }
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let md = [4u64, 6, 8, 9, 12][rng.gen_range(0..5)];
            let r = rng.gen_range(1..=3);
            let c = rng.gen_range(1..=3);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(0..md as i64)).collect())
                .collect();
            let a = m(&rows, md);
            let image = brute_image(&a);
            let coker = cokernel_structure(&a).unwrap();
            assert_eq!(
                coker.order() as usize * image.len(),
                (md as usize).pow(r as u32),
                "{rows:?} mod {md}"
            );
            for code in 0..(md as usize).pow(r as u32) {
                let mut b = Vec::new();
                let mut cc = code;
                for _ in 0..r {
                    b.push((cc % md as usize) as u64);
                    cc /= md as usize;
                }
                let sol = solve_mod(&a, &b).unwrap();
                assert_eq!(sol.is_some(), image.contains(&b), "{rows:?} b={b:?} mod {md}");
                if let Some(s) = sol {
                    assert_eq!(a.mul_vec(&s.x), b);
                    for k in &s.kernel {
                        assert!(a.mul_vec(k).iter().all(|&v| v == 0));
                    }
                }
            }
        }
    }
}
