use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] += a * o.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += q·row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Rows `(i, k) ← op · (row_i, row_k)`.
    fn mix_rows(&mut self, i: usize, k: usize, op: &[[BigInt; 2]; 2]) {
        for j in 0..self.cols {
            let (x, y) = (self.get(i, j).clone(), self.get(k, j).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(i, j, &op[0][0] * &x + &op[0][1] * &y);
            self.set(k, j, &op[1][0] * &x + &op[1][1] * &y);
        }
    }

    /// Columns `(i, k) ← (col_i, col_k) · op`.
    fn mix_cols(&mut self, i: usize, k: usize, op: &[[BigInt; 2]; 2]) {
        for r in 0..self.rows {
            let (x, y) = (self.get(r, i).clone(), self.get(r, k).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(r, i, &x * &op[0][0] + &y * &op[1][0]);
            self.set(r, k, &x * &op[0][1] + &y * &op[1][1]);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// `left · A · right = diag(d)` with `d₁ | d₂ | …` and unimodular transforms.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    /// Nonzero invariant factors different from one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. Alternating row and column Hermite passes with size reduction keep
/// entries bounded; a final gcd/lcm sweep restores the divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    loop {
        hermite_rows(&mut m, &mut left);
        if is_monomial(&m) {
            break;
        }
        let mut mt = m.transpose();
        let mut rt = right.transpose();
        hermite_rows(&mut mt, &mut rt);
        m = mt.transpose();
        right = rt.transpose();
        if is_monomial(&m) {
            break;
        }
    }
    // move the surviving entries onto the diagonal
    let mut k = 0;
    for i in 0..r {
        if let Some(j) = (0..c).find(|&j| !m.get(i, j).is_zero()) {
            m.swap_rows(k, i);
            left.swap_rows(k, i);
            m.swap_cols(k, j);
            right.swap_cols(k, j);
            k += 1;
        }
    }
    for i in 0..k {
        if m.get(i, i).is_negative() {
            m.negate_row(i);
            left.negate_row(i);
        }
    }
    // (a, b) → (gcd, lcm) on diagonal pairs
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (m.get(i, i).clone(), m.get(j, j).clone());
            if y.is_multiple_of(&x) {
                continue;
            }
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let (xg, yg) = (&x / &g, &y / &g);
            // L = [[s, t], [-y/g, x/g]], R = [[1, -t·y/g], [1, s·x/g]]
            let l = [[e.x.clone(), e.y.clone()], [-yg.clone(), xg.clone()]];
            let rr = [[BigInt::one(), -(&e.y * &yg)], [BigInt::one(), &e.x * &xg]];
            left.mix_rows(i, j, &l);
            right.mix_cols(i, j, &rr);
            m.set(i, i, g.clone());
            m.set(j, j, &x * &yg);
        }
    }
    let n = r.min(c);
    let diag = (0..n).map(|i| m.get(i, i).clone()).collect();
    SnfResult { diag, left, right }
}

fn is_monomial(m: &IntMatrix) -> bool {
    let rows_ok = (0..m.rows).all(|i| (0..m.cols).filter(|&j| !m.get(i, j).is_zero()).count() <= 1);
    let cols_ok = (0..m.cols).all(|j| (0..m.rows).filter(|&i| !m.get(i, j).is_zero()).count() <= 1);
    rows_ok && cols_ok
}

/// Row-style Hermite form in place, with `left` receiving the same row operations.
fn hermite_rows(m: &mut IntMatrix, left: &mut IntMatrix) {
    let mut p = 0;
    for j in 0..m.cols {
        if p == m.rows {
            break;
        }
        for i in p + 1..m.rows {
            if m.get(i, j).is_zero() {
                continue;
            }
            if m.get(p, j).is_zero() {
                m.swap_rows(p, i);
                left.swap_rows(p, i);
                continue;
            }
            let (a, b) = (m.get(p, j).clone(), m.get(i, j).clone());
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let op = [[e.x, e.y], [-(&b / &g), &a / &g]];
            m.mix_rows(p, i, &op);
            left.mix_rows(p, i, &op);
        }
        if m.get(p, j).is_zero() {
            continue;
        }
        if m.get(p, j).is_negative() {
            m.negate_row(p);
            left.negate_row(p);
        }
        let piv = m.get(p, j).clone();
        for k in 0..p {
            let q = m.get(k, j).div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                m.add_row(k, p, &nq);
                left.add_row(k, p, &nq);
            }
        }
        p += 1;
    }
}
