use std::sync::Arc;

use num_integer::Integer;

use super::module::CoefModule;
use crate::error::{Error, Result};
use crate::qmodz::QmodZ;

/// Number of normalized `n`-tuples over a group of order `order`.
pub(crate) fn tuple_count(order: usize, n: usize) -> usize {
    (order - 1).pow(n as u32)
}

/// Lexicographic index of a tuple of non-identity elements.
#[inline]
pub(crate) fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * (order - 1) + (g - 1))
}

pub(crate) fn tuple_at(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = idx % (order - 1) + 1;
        idx /= order - 1;
    }
    t
}

/// A normalized cochain with values `values[i]/modulus` in the module coordinates.
/// Storage is dense: tuple index times the module dimension plus the coordinate.
#[derive(Clone, Debug)]
pub struct Cochain {
    module: Arc<CoefModule>,
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return false;
        }
        let l = self.modulus.lcm(&other.modulus);
        let (a, b) = (l / self.modulus, l / other.modulus);
        self.values.iter().zip(&other.values).all(|(&x, &y)| x * a == y * b)
    }
}

impl Eq for Cochain {}

impl Cochain {
    pub fn zero(module: &Arc<CoefModule>, degree: usize, modulus: u64) -> Self {
        let n = module.group().order();
        assert!(modulus >= 1);
        Cochain {
            module: module.clone(),
            degree,
            modulus,
            values: vec![0; tuple_count(n, degree) * module.dim()],
        }
    }

    /// Builds from a function of `(tuple, coordinate)` returning values in ℚ/ℤ; the modulus is
    /// the least common multiple of the denominators that occur.
    pub fn from_fn(
        module: &Arc<CoefModule>,
        degree: usize,
        f: impl Fn(&[usize], usize) -> QmodZ,
    ) -> Result<Self> {
        let n = module.group().order();
        let d = module.dim();
        let mut vals = Vec::with_capacity(tuple_count(n, degree) * d);
        let mut modulus = 1u64;
        for i in 0..tuple_count(n, degree) {
            let t = tuple_at(n, degree, i);
            for k in 0..d {
                let v = f(&t, k);
                modulus = modulus.lcm(&v.den());
                vals.push(v);
            }
        }
        let values = vals.iter().map(|v| v.residue(modulus).expect("lcm")).collect();
        let c = Cochain {
            module: module.clone(),
            degree,
            modulus,
            values,
        };
        c.check_orders()?;
        Ok(c)
    }

    /// Builds from residues modulo `modulus`.
    pub fn from_residues(module: &Arc<CoefModule>, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        let n = module.group().order();
        if values.len() != tuple_count(n, degree) * module.dim() {
            return Err(Error::Dimension(format!(
                "{} values for a degree-{degree} cochain of dimension {}",
                values.len(),
                module.dim()
            )));
        }
        let c = Cochain {
            module: module.clone(),
            degree,
            modulus,
            values: values.into_iter().map(|v| v % modulus).collect(),
        };
        c.check_orders()?;
        Ok(c)
    }

    fn check_orders(&self) -> Result<()> {
        let d = self.module.dim();
        for (i, &v) in self.values.iter().enumerate() {
            let e = self.module.orders()[i % d];
            if e != 0 && !(v * e).is_multiple_of(self.modulus) {
                return Err(Error::Dimension(format!(
                    "value {} exceeds the order-{e} coordinate",
                    QmodZ::from_residue(v, self.modulus)
                )));
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &Arc<CoefModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.values
    }

    pub fn group_order(&self) -> usize {
        self.module.group().order()
    }

    /// Residue at a tuple (any tuple containing the identity gives zero).
    #[inline]
    pub fn residue(&self, t: &[usize], k: usize) -> u64 {
        if t.contains(&0) {
            return 0;
        }
        self.values[tuple_index(self.group_order(), t) * self.module.dim() + k]
    }

    pub fn value(&self, t: &[usize], k: usize) -> QmodZ {
        QmodZ::from_residue(self.residue(t, k), self.modulus)
    }

    /// The full module vector at a tuple, as residues.
    pub fn vector(&self, t: &[usize]) -> Vec<u64> {
        let d = self.module.dim();
        if t.contains(&0) {
            return vec![0; d];
        }
        let base = tuple_index(self.group_order(), t) * d;
        self.values[base..base + d].to_vec()
    }

    pub fn set(&mut self, t: &[usize], k: usize, v: QmodZ) -> Result<()> {
        if t.len() != self.degree || t.contains(&0) {
            return Err(Error::Dimension("values live on tuples of non-identity elements".into()));
        }
        if !self.modulus.is_multiple_of(v.den()) {
            *self = self.with_modulus(self.modulus.lcm(&v.den()));
        }
        let idx = tuple_index(self.group_order(), t) * self.module.dim() + k;
        self.values[idx] = v.residue(self.modulus).expect("modulus contains the denominator");
        self.check_orders()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Least common multiple of the orders of all values.
    pub fn denominator(&self) -> u64 {
        self.values
            .iter()
            .fold(1u64, |acc, &v| acc.lcm(&(self.modulus / v.gcd(&self.modulus))))
    }

    /// Re-expresses at a multiple of the current modulus.
    pub fn with_modulus(&self, modulus: u64) -> Self {
        assert!(modulus.is_multiple_of(self.modulus), "{modulus} is not a multiple of {}", self.modulus);
        let s = modulus / self.modulus;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            modulus,
            values: self.values.iter().map(|&v| v * s).collect(),
        }
    }

    /// Smallest modulus representing the same values.
    pub fn reduced(&self) -> Self {
        let m = self.denominator();
        let s = self.modulus / m;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            modulus: m,
            values: self.values.iter().map(|&v| v / s).collect(),
        }
    }

    fn zip(&self, other: &Cochain, f: impl Fn(u64, u64, u64) -> u64) -> Result<Cochain> {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::Dimension("cochains of different shape".into()));
        }
        let m = self.modulus.lcm(&other.modulus);
        let (a, b) = (self.with_modulus(m), other.with_modulus(m));
        Ok(Cochain {
            module: self.module.clone(),
            degree: self.degree,
            modulus: m,
            values: a.values.iter().zip(&b.values).map(|(&x, &y)| f(x, y, m)).collect(),
        })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |x, y, m| (x + y) % m)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |x, y, m| (x + m - y) % m)
    }

    pub fn neg(&self) -> Cochain {
        let m = self.modulus;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            modulus: m,
            values: self.values.iter().map(|&v| (m - v) % m).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let m = self.modulus;
        let k = k.rem_euclid(m as i64) as u64;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            modulus: m,
            values: self.values.iter().map(|&v| ((v as u128 * k as u128) % m as u128) as u64).collect(),
        }
    }

    /// Same values over another module of identical shape.
    pub fn with_module(&self, module: &Arc<CoefModule>) -> Result<Cochain> {
        if module.dim() != self.module.dim() || module.group().order() != self.group_order() {
            return Err(Error::Dimension("module of a different shape".into()));
        }
        Ok(Cochain {
            module: module.clone(),
            ..self.clone()
        })
    }

    /// Pulls back along a map of groups `a: G' → G` given as an index table (needs a
    /// trivial-action module on the source).
    pub fn pullback(&self, target: &Arc<CoefModule>, a: &[usize]) -> Result<Cochain> {
        if target.dim() != self.module.dim() || a.len() != target.group().order() {
            return Err(Error::Dimension("pullback shape mismatch".into()));
        }
        let n = target.group().order();
        let d = target.dim();
        let mut values = Vec::with_capacity(tuple_count(n, self.degree) * d);
        let mut img = vec![0; self.degree];
        for i in 0..tuple_count(n, self.degree) {
            let t = tuple_at(n, self.degree, i);
            for (x, &y) in img.iter_mut().zip(&t) {
                *x = a[y];
            }
            for k in 0..d {
                values.push(self.residue(&img, k));
            }
        }
        Ok(Cochain {
            module: target.clone(),
            degree: self.degree,
            modulus: self.modulus,
            values,
        })
    }

    /// Iterates over `(tuple, coordinate, value)` for nonzero values in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, usize, QmodZ)> + '_ {
        let d = self.module.dim();
        let n = self.group_order();
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(i, &v)| {
            (
                tuple_at(n, self.degree, i / d),
                i % d,
                QmodZ::from_residue(v, self.modulus),
            )
        })
    }
}
