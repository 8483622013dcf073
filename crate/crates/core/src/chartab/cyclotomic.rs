//! Exact elements of Q(zeta_e), stored as coordinate vectors on the power
//! basis 1, zeta, ..., zeta^{e-1} and kept reduced modulo the e-th cyclotomic
//! polynomial. Reduction by a monic integer polynomial is exact, so equality
//! is plain coordinate equality. No floating point anywhere.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i128>;

/// Coefficients of the e-th cyclotomic polynomial, low degree first, monic.
pub fn cyclotomic_polynomial(e: usize) -> Vec<i128> {
    thread_local! {
        static CACHE: std::cell::RefCell<std::collections::HashMap<usize, Vec<i128>>> =
            std::cell::RefCell::new(std::collections::HashMap::new());
    }
    assert!(e >= 1);
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&e).cloned()) {
        return hit;
    }
    // x^e - 1 divided by all proper-divisor cyclotomic polynomials
    let mut num = vec![0i128; e + 1];
    num[0] = -1;
    num[e] = 1;
    for d in 1..e {
        if e % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(e, num.clone()));
    num
}

/// Exact division of integer polynomials; divisor must be monic and divide.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i128; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// An exact element of Q(zeta_e); character values live in the subring Z[zeta_e].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: usize,
    coords: Vec<Rat>, // length = conductor, reduced mod Phi_e
}

impl Cyclotomic {
    fn reduce_in_place(&mut self) {
        let e = self.conductor;
        let phi: Vec<Rat> = cyclotomic_polynomial(e)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        let dn = phi.len() - 1;
        // long division by the monic Phi_e; remainder has degree < dn
        for i in (dn..self.coords.len()).rev() {
            let c = self.coords[i];
            if !c.is_zero() {
                for (j, d) in phi.iter().enumerate() {
                    self.coords[i - dn + j] -= c * d;
                }
            }
        }
        self.coords.truncate(e);
        self.coords.resize(e, Rat::zero());
    }

    pub fn zero(conductor: usize) -> Self {
        assert!(conductor >= 1);
        Cyclotomic {
            conductor,
            coords: vec![Rat::zero(); conductor],
        }
    }

    pub fn from_rational(r: Rat, conductor: usize) -> Self {
        let mut c = Cyclotomic::zero(conductor);
        c.coords[0] = r;
        c
    }

    pub fn from_integer(n: i128, conductor: usize) -> Self {
        Cyclotomic::from_rational(Rat::from_integer(n), conductor)
    }

    /// zeta_e^k
    pub fn root_of_unity(conductor: usize, k: usize) -> Self {
        let mut c = Cyclotomic::zero(conductor);
        let mut coords = vec![Rat::zero(); conductor.max(k % conductor + 1)];
        coords[k % conductor] = Rat::one();
        c.coords = coords;
        c.reduce_in_place();
        c
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Re-express at a larger conductor; `target` must be a multiple.
    pub fn lift(&self, target: usize) -> Cyclotomic {
        assert_eq!(target % self.conductor, 0, "conductor must divide target");
        if target == self.conductor {
            return self.clone();
        }
        let f = target / self.conductor;
        let mut coords = vec![Rat::zero(); target];
        for (k, c) in self.coords.iter().enumerate() {
            coords[k * f] += c;
        }
        let mut out = Cyclotomic {
            conductor: target,
            coords,
        };
        out.reduce_in_place();
        out
    }

    fn aligned(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let l = num_integer::lcm(self.conductor, other.conductor);
            (self.lift(l), other.lift(l))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        let e = a.conductor;
        let mut coords = vec![Rat::zero(); e];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coords[(i + j) % e] += x * y;
            }
        }
        let mut out = Cyclotomic {
            conductor: e,
            coords,
        };
        out.reduce_in_place();
        out
    }

    pub fn scale(&self, r: Rat) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation: zeta ↦ zeta^{-1}.
    pub fn conj(&self) -> Cyclotomic {
        let e = self.conductor;
        let mut coords = vec![Rat::zero(); e];
        for (k, c) in self.coords.iter().enumerate() {
            coords[(e - k) % e] += c;
        }
        let mut out = Cyclotomic {
            conductor: e,
            coords,
        };
        out.reduce_in_place();
        out
    }

    /// |z|^2 = z * conj(z); a totally real cyclotomic.
    pub fn norm_sq(&self) -> Cyclotomic {
        self.mul(&self.conj())
    }

    /// Deterministic total order used only for canonical sorting of outputs.
    pub fn cmp_lex(&self, other: &Cyclotomic) -> std::cmp::Ordering {
        let (a, b) = self.aligned(other);
        a.coords.cmp(&b.coords)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            if r.is_integer() {
                return write!(f, "{}", r.to_integer());
            }
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            if k == 0 {
                if a.is_integer() {
                    write!(f, "{}", a.to_integer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            } else {
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{}*", a.to_integer())?;
                    } else {
                        write!(f, "{}/{}*", a.numer(), a.denom())?;
                    }
                }
                write!(f, "z{}^{}", self.conductor, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for e in [2usize, 3, 4, 5, 6, 12] {
            let mut s = Cyclotomic::zero(e);
            for k in 0..e {
                s = s.add(&Cyclotomic::root_of_unity(e, k));
            }
            assert!(s.is_zero(), "sum of all {e}-th roots");
        }
    }

    #[test]
    fn conjugation_and_norm() {
        let z = Cyclotomic::root_of_unity(5, 1);
        assert_eq!(z.norm_sq(), Cyclotomic::from_integer(1, 5));
        let m1 = Cyclotomic::root_of_unity(2, 1);
        assert_eq!(m1, Cyclotomic::from_integer(-1, 2));
        assert_eq!(m1.conj(), m1);
    }

    #[test]
    fn lift_preserves_value() {
        // zeta_3 at conductor 6 equals zeta_6^2
        let a = Cyclotomic::root_of_unity(3, 1).lift(6);
        let b = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(a, b);
        // mixed-conductor arithmetic aligns automatically
        let s = Cyclotomic::root_of_unity(3, 1).add(&Cyclotomic::root_of_unity(3, 2));
        assert_eq!(s, Cyclotomic::from_integer(-1, 3));
    }

    #[test]
    fn rational_detection() {
        let z = Cyclotomic::root_of_unity(4, 1);
        assert!(z.as_rational().is_none());
        let z2 = z.mul(&z);
        assert_eq!(z2.as_integer(), Some(-1));
        let half = Cyclotomic::from_rational(Rat::new(1, 2), 4);
        assert_eq!(half.as_rational(), Some(Rat::new(1, 2)));
        assert_eq!(half.as_integer(), None);
    }

    #[test]
    fn golden_ratio_relation() {
        // (zeta_5 + zeta_5^4) satisfies x^2 + x - 1 = 0
        let x = Cyclotomic::root_of_unity(5, 1).add(&Cyclotomic::root_of_unity(5, 4));
        let expr = x.mul(&x).add(&x).sub(&Cyclotomic::from_integer(1, 5));
        assert!(expr.is_zero());
    }
}
