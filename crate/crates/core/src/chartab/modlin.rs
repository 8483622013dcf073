//! Dense linear algebra over GF(l) for the class-algebra eigenvector step.
//! l stays below 2^31 so products fit in u64.

pub fn addm(a: u64, b: u64, l: u64) -> u64 {
    (a + b) % l
}

pub fn subm(a: u64, b: u64, l: u64) -> u64 {
    (a + l - b % l) % l
}

pub fn mulm(a: u64, b: u64, l: u64) -> u64 {
    a * b % l
}

pub fn powm(mut base: u64, mut exp: u64, l: u64) -> u64 {
    let mut acc = 1u64;
    base %= l;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % l;
        }
        base = base * base % l;
        exp >>= 1;
    }
    acc
}

pub fn invm(a: u64, l: u64) -> u64 {
    powm(a, l - 2, l)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of order exactly e in GF(l)^*; requires e | l-1.
pub fn root_of_order(e: u64, l: u64) -> u64 {
    assert_eq!((l - 1) % e, 0);
    let prime_divs: Vec<u64> = {
        let mut ds = Vec::new();
        let mut m = e;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                ds.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            ds.push(m);
        }
        ds
    };
    for c in 2..l {
        let z = powm(c, (l - 1) / e, l);
        if z == 0 || z == 1 && e > 1 {
            continue;
        }
        if prime_divs.iter().all(|&q| powm(z, e / q, l) != 1) {
            return z;
        }
    }
    panic!("no element of order {e} mod {l}");
}

/// Row-major dense matrix over GF(l).
#[derive(Debug, Clone)]
pub struct ModMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u64], l: u64) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for j in 0..self.cols {
                acc = addm(acc, mulm(self.get(i, j), v[j], l), l);
            }
            out[i] = acc;
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, l: u64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let pr = (row..self.rows).find(|&r| self.get(r, col) != 0);
            let pr = match pr {
                Some(r) => r,
                None => continue,
            };
            if pr != row {
                for j in 0..self.cols {
                    let a = self.get(pr, j);
                    let b = self.get(row, j);
                    self.set(pr, j, b);
                    self.set(row, j, a);
                }
            }
            let inv = invm(self.get(row, col), l);
            for j in 0..self.cols {
                let v = mulm(self.get(row, j), inv, l);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row {
                    let f = self.get(r, col);
                    if f != 0 {
                        for j in 0..self.cols {
                            let v = subm(self.get(r, j), mulm(f, self.get(row, j), l), l);
                            self.set(r, j, v);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right null space {x : Mx = 0}, as column vectors.
    pub fn kernel(&self, l: u64) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref(l);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = subm(0, m.get(r, free), l);
            }
            basis.push(x);
        }
        basis
    }
}

/// Solves B * y = target for y, where the columns of `basis` are independent.
/// Returns None if target is outside the span.
pub fn solve_in_span(basis: &[Vec<u64>], target: &[u64], l: u64) -> Option<Vec<u64>> {
    let n = target.len();
    let d = basis.len();
    let mut aug = ModMat::zeros(n, d + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            aug.set(i, j, b[i]);
        }
    }
    for i in 0..n {
        aug.set(i, d, target[i]);
    }
    let pivots = aug.rref(l);
    if pivots.contains(&d) {
        return None;
    }
    let mut y = vec![0u64; d];
    for (r, &pc) in pivots.iter().enumerate() {
        y[pc] = aug.get(r, d);
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_singular_matrix() {
        // [[1,2],[2,4]] mod 5 has kernel spanned by (3,1): 1*3+2*1=5=0
        let m = ModMat {
            rows: 2,
            cols: 2,
            data: vec![1, 2, 2, 4],
        };
        let k = m.kernel(5);
        assert_eq!(k.len(), 1);
        let x = &k[0];
        assert_eq!((x[0] + 2 * x[1]) % 5, 0);
    }

    #[test]
    fn root_orders() {
        let z = root_of_order(6, 7);
        assert_eq!(powm(z, 6, 7), 1);
        assert_ne!(powm(z, 3, 7), 1);
        assert_ne!(powm(z, 2, 7), 1);
    }

    #[test]
    fn solve_in_span_works() {
        let b1 = vec![1, 0, 2];
        let b2 = vec![0, 1, 3];
        let y = solve_in_span(&[b1, b2], &[2, 3, 6], 7).unwrap();
        assert_eq!(y, vec![2, 3]);
        assert!(solve_in_span(&[vec![1, 0, 0]], &[0, 1, 0], 7).is_none());
    }
}
