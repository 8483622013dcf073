//! Exact arithmetic over GF(p) and linear algebra on the natural module V = GF(p)^n.
//!
//! Vectors are rows and matrices act on the right, so `(v^g)^h = v^{gh}`
//! matches exponent notation throughout the rest of the crate.

use std::fmt;

use thiserror::Error;

/// Largest admitted field characteristic; keeps all arithmetic in machine words.
pub const MAX_MODULUS: u16 = 251;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GfpError {
    #[error("modulus {0} is not prime")]
    NotPrime(u16),
    #[error("modulus {0} exceeds supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u16),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u16, u16),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular mod {0}")]
    Singular(u16),
}

fn is_prime(p: u16) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    let p = u32::from(p);
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a characteristic before it is used as a modulus anywhere.
pub fn check_modulus(p: u16) -> Result<(), GfpError> {
    if p > MAX_MODULUS {
        return Err(GfpError::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(GfpError::NotPrime(p));
    }
    Ok(())
}

/// A residue in GF(p), tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    value: u16,
    modulus: u16,
}

impl FieldElement {
    pub fn new(value: i64, modulus: u16) -> Result<Self, GfpError> {
        check_modulus(modulus)?;
        let m = i64::from(modulus);
        Ok(FieldElement {
            value: value.rem_euclid(m) as u16,
            modulus,
        })
    }

    pub fn value(&self) -> u16 {
        self.value
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    fn check(&self, other: &Self) -> Result<(), GfpError> {
        if self.modulus != other.modulus {
            return Err(GfpError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfpError> {
        self.check(other)?;
        Ok(FieldElement {
            value: ((u32::from(self.value) + u32::from(other.value)) % u32::from(self.modulus))
                as u16,
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfpError> {
        self.check(other)?;
        Ok(FieldElement {
            value: ((u32::from(self.value) * u32::from(other.value)) % u32::from(self.modulus))
                as u16,
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn inv(&self) -> Result<Self, GfpError> {
        if self.value == 0 {
            return Err(GfpError::Singular(self.modulus));
        }
        // p is prime, so a^(p-2) inverts a
        let mut acc = 1u32;
        let mut base = u32::from(self.value);
        let mut exp = u32::from(self.modulus) - 2;
        let m = u32::from(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Ok(FieldElement {
            value: acc as u16,
            modulus: self.modulus,
        })
    }
}

// Raw-residue helpers shared by the container types.
#[inline]
fn addm(a: u16, b: u16, p: u16) -> u16 {
    ((u32::from(a) + u32::from(b)) % u32::from(p)) as u16
}

#[inline]
fn mulm(a: u16, b: u16, p: u16) -> u16 {
    ((u32::from(a) * u32::from(b)) % u32::from(p)) as u16
}

#[inline]
fn negm(a: u16, p: u16) -> u16 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// A row vector over GF(p). Entries share one modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecP {
    p: u16,
    entries: Vec<u16>,
}

impl VecP {
    pub fn new(entries: &[i64], p: u16) -> Result<Self, GfpError> {
        check_modulus(p)?;
        let m = i64::from(p);
        Ok(VecP {
            p,
            entries: entries.iter().map(|&e| e.rem_euclid(m) as u16).collect(),
        })
    }

    pub fn zero(n: usize, p: u16) -> Result<Self, GfpError> {
        check_modulus(p)?;
        Ok(VecP {
            p,
            entries: vec![0; n],
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modulus(&self) -> u16 {
        self.p
    }

    pub fn entry(&self, i: usize) -> u16 {
        self.entries[i]
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &VecP) -> Result<VecP, GfpError> {
        if self.p != other.p {
            return Err(GfpError::ModulusMismatch(self.p, other.p));
        }
        if self.len() != other.len() {
            return Err(GfpError::DimensionMismatch(self.len(), other.len()));
        }
        Ok(VecP {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| addm(a, b, self.p))
                .collect(),
        })
    }

    pub fn sub(&self, other: &VecP) -> Result<VecP, GfpError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VecP {
        VecP {
            p: self.p,
            entries: self.entries.iter().map(|&a| negm(a, self.p)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: u16) -> VecP {
        VecP {
            p: self.p,
            entries: self.entries.iter().map(|&a| mulm(a, k, self.p)).collect(),
        }
    }
}

impl fmt::Display for VecP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A square matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatP {
    p: u16,
    dim: usize,
    entries: Vec<u16>,
}

impl MatP {
    pub fn new(rows: &[Vec<i64>], p: u16) -> Result<Self, GfpError> {
        check_modulus(p)?;
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(GfpError::DimensionMismatch(row.len(), dim));
            }
        }
        let m = i64::from(p);
        Ok(MatP {
            p,
            dim,
            entries: rows
                .iter()
                .flat_map(|row| row.iter().map(|&e| e.rem_euclid(m) as u16))
                .collect(),
        })
    }

    pub fn identity(dim: usize, p: u16) -> Result<Self, GfpError> {
        check_modulus(p)?;
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Ok(MatP { p, dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u16 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> u16 {
        self.entries[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &e)| e == u16::from(k / self.dim == k % self.dim))
    }

    fn check(&self, other: &Self) -> Result<(), GfpError> {
        if self.p != other.p {
            return Err(GfpError::ModulusMismatch(self.p, other.p));
        }
        if self.dim != other.dim {
            return Err(GfpError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatP) -> Result<MatP, GfpError> {
        self.check(other)?;
        let n = self.dim;
        let p = u32::from(self.p);
        let mut entries = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc += u32::from(self.entries[i * n + k]) * u32::from(other.entries[k * n + j]);
                    // keep partial sums small; n*p^2 fits u32 but reduce anyway
                    acc %= p;
                }
                entries[i * n + j] = acc as u16;
            }
        }
        Ok(MatP {
            p: self.p,
            dim: n,
            entries,
        })
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> u16 {
        let n = self.dim;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut det = 1u16;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0);
            let pivot = match pivot {
                Some(r) => r,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = negm(det, p);
            }
            let pv = a[col * n + col];
            det = mulm(det, pv, p);
            let pv_inv = FieldElement {
                value: pv,
                modulus: p,
            }
            .inv()
            .expect("nonzero pivot")
            .value;
            for r in col + 1..n {
                let factor = mulm(a[r * n + col], pv_inv, p);
                if factor != 0 {
                    for j in col..n {
                        let sub = mulm(factor, a[col * n + j], p);
                        a[r * n + j] = addm(a[r * n + j], negm(sub, p), p);
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inv(&self) -> Result<MatP, GfpError> {
        let n = self.dim;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut b = MatP::identity(n, p)?.entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(GfpError::Singular(p))?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let pv_inv = FieldElement {
                value: a[col * n + col],
                modulus: p,
            }
            .inv()?
            .value;
            for j in 0..n {
                a[col * n + j] = mulm(a[col * n + j], pv_inv, p);
                b[col * n + j] = mulm(b[col * n + j], pv_inv, p);
            }
            for r in 0..n {
                if r != col && a[r * n + col] != 0 {
                    let factor = a[r * n + col];
                    for j in 0..n {
                        let s1 = mulm(factor, a[col * n + j], p);
                        let s2 = mulm(factor, b[col * n + j], p);
                        a[r * n + j] = addm(a[r * n + j], negm(s1, p), p);
                        b[r * n + j] = addm(b[r * n + j], negm(s2, p), p);
                    }
                }
            }
        }
        Ok(MatP {
            p,
            dim: n,
            entries: b,
        })
    }
}

impl fmt::Display for MatP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-vector-times-matrix right action. Only the top-left `v.len()` block of
/// `g` participates, which is the module action when the leading coordinates
/// span a `g`-invariant subspace.
pub fn vec_act(v: &VecP, g: &MatP) -> Result<VecP, GfpError> {
    if v.p != g.p {
        return Err(GfpError::ModulusMismatch(v.p, g.p));
    }
    let n = v.len();
    if g.dim < n {
        return Err(GfpError::DimensionMismatch(g.dim, n));
    }
    let p = u32::from(v.p);
    let mut out = vec![0u16; n];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0u32;
        for i in 0..n {
            acc = (acc + u32::from(v.entries[i]) * u32::from(g.entry(i, j))) % p;
        }
        *o = acc as u16;
    }
    Ok(VecP {
        p: v.p,
        entries: out,
    })
}

/// Exact matrix product; thin wrapper kept for symmetry with `vec_act`.
pub fn mat_mul(a: &MatP, b: &MatP) -> Result<MatP, GfpError> {
    a.mul(b)
}

/// Least k >= 1 with g^k = 1. Errors on singular input.
pub fn element_order(g: &MatP) -> Result<u64, GfpError> {
    if !g.is_invertible() {
        return Err(GfpError::Singular(g.p));
    }
    let mut acc = g.clone();
    let mut k = 1u64;
    while !acc.is_identity() {
        acc = acc.mul(g)?;
        k += 1;
    }
    Ok(k)
}

/// All p^n vectors in lexicographic order.
pub fn all_vectors(p: u16, n: usize) -> Result<Vec<VecP>, GfpError> {
    check_modulus(p)?;
    let total = (u64::from(p)).pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut current = vec![0u16; n];
    loop {
        out.push(VecP {
            p,
            entries: current.clone(),
        });
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            current[i] += 1;
            if current[i] < p {
                break;
            }
            current[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>], p: u16) -> MatP {
        MatP::new(rows, p).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(FieldElement::new(1, 4), Err(GfpError::NotPrime(4)));
        assert_eq!(FieldElement::new(1, 257), Err(GfpError::ModulusTooLarge(257)));
        assert!(FieldElement::new(-1, 5).unwrap().value() == 4);
    }

    #[test]
    fn mat_mul_identity() {
        let a = m(&[vec![0, 2], vec![1, 0]], 3);
        let id = MatP::identity(2, 3).unwrap();
        assert_eq!(mat_mul(&id, &a).unwrap(), a);
        assert_eq!(mat_mul(&a, &id).unwrap(), a);
    }

    #[test]
    fn mat_mul_hand_computed() {
        // [[0,2],[1,0]]^2 = [[2,0],[0,2]] over GF(3)
        let a = m(&[vec![0, 2], vec![1, 0]], 3);
        assert_eq!(
            mat_mul(&a, &a).unwrap(),
            m(&[vec![2, 0], vec![0, 2]], 3)
        );
        // [[2]] * [[2]] = [[1]] over GF(3)
        let b = m(&[vec![2]], 3);
        assert_eq!(mat_mul(&b, &b).unwrap(), m(&[vec![1]], 3));
    }

    #[test]
    fn mat_mul_mismatch_errors() {
        let a = m(&[vec![1]], 3);
        let b = m(&[vec![1, 0], vec![0, 1]], 3);
        assert!(matches!(
            mat_mul(&a, &b),
            Err(GfpError::DimensionMismatch(_, _))
        ));
        let c = m(&[vec![1]], 5);
        assert!(matches!(
            mat_mul(&a, &c),
            Err(GfpError::ModulusMismatch(3, 5))
        ));
    }

    #[test]
    fn vec_act_examples() {
        let g = m(&[vec![0, 2], vec![1, 0]], 3);
        let v = VecP::new(&[1, 0], 3).unwrap();
        assert_eq!(vec_act(&v, &g).unwrap(), VecP::new(&[0, 2], 3).unwrap());
        let id = MatP::identity(2, 3).unwrap();
        assert_eq!(vec_act(&v, &id).unwrap(), v);
        let zero = VecP::zero(2, 3).unwrap();
        assert_eq!(vec_act(&zero, &g).unwrap(), zero);
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(element_order(&MatP::identity(2, 3).unwrap()).unwrap(), 1);
        assert_eq!(element_order(&m(&[vec![2]], 3)).unwrap(), 2);
        assert_eq!(element_order(&m(&[vec![2]], 5)).unwrap(), 4);
        let singular = m(&[vec![0]], 3);
        assert_eq!(element_order(&singular), Err(GfpError::Singular(3)));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[vec![1, 1], vec![1, 2]], 3);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn all_vectors_count_and_order() {
        let vs = all_vectors(3, 2).unwrap();
        assert_eq!(vs.len(), 9);
        assert!(vs[0].is_zero());
        assert!(vs.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        // Right-action law: (v^g)^h = v^{gh}.
        #[test]
        fn right_action_law(
            ventries in proptest::collection::vec(0i64..3, 2),
            gsel in 0usize..4,
            hsel in 0usize..4,
        ) {
            let pool = [
                m(&[vec![0, 2], vec![1, 0]], 3),
                m(&[vec![1, 1], vec![1, 2]], 3),
                m(&[vec![1, 1], vec![0, 1]], 3),
                MatP::identity(2, 3).unwrap(),
            ];
            let v = VecP::new(&ventries, 3).unwrap();
            let g = &pool[gsel];
            let h = &pool[hsel];
            let lhs = vec_act(&vec_act(&v, g).unwrap(), h).unwrap();
            let rhs = vec_act(&v, &mat_mul(g, h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
