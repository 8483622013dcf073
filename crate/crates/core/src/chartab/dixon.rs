//! Character tables by the class-algebra method: class multiplication
//! coefficients, simultaneous eigenvectors of the class-sum matrices over a
//! suitable GF(l), degrees from the orthogonality relation, and exact
//! cyclotomic lift via discrete-Fourier multiplicity counts of the
//! eigenvalue roots of unity.

use crate::groups::ClassifiedGroup;

use super::cyclotomic::Cyclotomic;
use super::modlin::{addm, invm, is_prime_u64, mulm, powm, root_of_order, solve_in_span, subm, ModMat};
use super::ChartabError;

/// Least prime l with l = 1 (mod e) and l > 2*ceil(sqrt(|G|))*e.
pub fn select_prime(order: u64, exponent: u64) -> u64 {
    let sqrt = (order as f64).sqrt().ceil() as u64;
    let bound = 2 * sqrt * exponent;
    let mut l = exponent + 1;
    while l <= bound || l % exponent != 1 % exponent || !is_prime_u64(l) {
        l += 1;
    }
    l
}

/// Class matrices M_i with (M_i)[j][k] = #{(x,y) in C_i x C_j : xy = rep_k}.
fn class_matrices(cg: &ClassifiedGroup, l: u64) -> Result<Vec<ModMat>, ChartabError> {
    let k = cg.num_classes();
    let mut mats = vec![ModMat::zeros(k, k); k];
    for i in 0..k {
        for kc in 0..k {
            let z = cg.classes.rep[kc];
            for &x in &cg.classes.classes[i] {
                let y = cg.view.mul_idx(cg.view.inv_idx(x)?, z)?;
                let j = cg.classes.class_of[y];
                let v = addm(mats[i].get(j, kc), 1, l);
                mats[i].set(j, kc, v);
            }
        }
    }
    Ok(mats)
}

/// Splits a subspace (columns over GF(l)) into eigenspaces of m.
fn split_by(basis: &[Vec<u64>], m: &ModMat, l: u64) -> Result<Vec<Vec<Vec<u64>>>, ChartabError> {
    let d = basis.len();
    if d <= 1 {
        return Ok(vec![basis.to_vec()]);
    }
    // restriction r with m*basis = basis*r; subspaces fed here are invariant
    let mut r = ModMat::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        let mb = m.mul_vec(b, l);
        let y = solve_in_span(basis, &mb, l)
            .ok_or_else(|| ChartabError::Internal("subspace not invariant".into()))?;
        for i in 0..d {
            r.set(i, j, y[i]);
        }
    }
    let mut out = Vec::new();
    let mut found = 0usize;
    for lambda in 0..l {
        if found == d {
            break;
        }
        let mut shifted = r.clone();
        for i in 0..d {
            shifted.set(i, i, subm(shifted.get(i, i), lambda, l));
        }
        let ker = shifted.kernel(l);
        if ker.is_empty() {
            continue;
        }
        let mut sub = Vec::new();
        for w in &ker {
            let mut u = vec![0u64; basis[0].len()];
            for (j, b) in basis.iter().enumerate() {
                for (ui, bi) in u.iter_mut().zip(b) {
                    *ui = addm(*ui, mulm(w[j], *bi, l), l);
                }
            }
            sub.push(u);
        }
        found += sub.len();
        out.push(sub);
    }
    if found != d {
        return Err(ChartabError::Internal(
            "class matrix not diagonalizable over GF(l)".into(),
        ));
    }
    Ok(out)
}

/// Central-character vectors (omega_j per class), one per irreducible,
/// normalized to 1 at the identity class. Deterministic order of discovery.
fn central_characters(
    cg: &ClassifiedGroup,
    mats: &[ModMat],
    l: u64,
) -> Result<Vec<Vec<u64>>, ChartabError> {
    let k = cg.num_classes();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut e = vec![0u64; k];
            e[i] = 1;
            e
        })
        .collect()];
    let split_round = |spaces: &mut Vec<Vec<Vec<u64>>>, m: &ModMat| -> Result<(), ChartabError> {
        let mut next = Vec::new();
        for basis in spaces.iter() {
            next.extend(split_by(basis, m, l)?);
        }
        *spaces = next;
        Ok(())
    };
    for m in mats {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        split_round(&mut spaces, m)?;
    }
    // fallback: deterministic schedule of linear combinations 1, 2, 3, ...
    let mut c = 1u64;
    while spaces.iter().any(|s| s.len() > 1) {
        if c > l {
            return Err(ChartabError::Internal(
                "failed to separate class-algebra eigenvectors".into(),
            ));
        }
        let mut combo = ModMat::zeros(k, k);
        let mut w = 1u64;
        for m in mats {
            for idx in 0..combo.data.len() {
                combo.data[idx] = addm(combo.data[idx], mulm(w, m.data[idx], l), l);
            }
            w = mulm(w, c, l);
        }
        split_round(&mut spaces, &combo)?;
        c += 1;
    }
    let id = cg.identity_class();
    let mut out = Vec::new();
    for s in spaces {
        let u = &s[0];
        if u[id] == 0 {
            return Err(ChartabError::Internal(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let f = invm(u[id], l);
        out.push(u.iter().map(|&x| mulm(x, f, l)).collect());
    }
    Ok(out)
}

/// One unsorted irreducible: degree plus exact values per class.
pub struct RawCharacter {
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

pub fn irreducible_characters(cg: &ClassifiedGroup) -> Result<Vec<RawCharacter>, ChartabError> {
    let k = cg.num_classes();
    let order = cg.order();
    let e = cg.exponent;
    let l = select_prime(order, e);
    let mats = class_matrices(cg, l)?;
    let omegas = central_characters(cg, &mats, l)?;
    if omegas.len() != k {
        return Err(ChartabError::Internal(format!(
            "expected {k} central characters, found {}",
            omegas.len()
        )));
    }

    let inv_class: Vec<usize> = (0..k)
        .map(|j| {
            let rep = cg.classes.rep[j];
            cg.view.inv_idx(rep).map(|i| cg.classes.class_of[i])
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(ChartabError::Group)?;
    let class_sizes: Vec<u64> = cg.classes.classes.iter().map(|c| c.len() as u64).collect();

    // power map: class of rep_j^s for s in 0..e
    let mut power_map = vec![vec![0usize; e as usize]; k];
    for j in 0..k {
        let mut acc = cg.view.identity_index();
        for s in 0..e as usize {
            power_map[j][s] = cg.classes.class_of[acc];
            acc = cg.view.mul_idx(acc, cg.classes.rep[j])?;
        }
    }

    let z = root_of_order(e, l);
    let z_inv = invm(z, l);
    let e_inv = invm(e % l, l);
    let sqrt_bound = (order as f64).sqrt().ceil() as u64;

    let mut out = Vec::with_capacity(k);
    for omega in &omegas {
        // degree from sum_j omega_j * omega_{j*} / |C_j| = |G| / deg^2
        let mut s = 0u64;
        for j in 0..k {
            let t = mulm(
                mulm(omega[j], omega[inv_class[j]], l),
                invm(class_sizes[j] % l, l),
                l,
            );
            s = addm(s, t, l);
        }
        let deg_sq = mulm(order % l, invm(s, l), l);
        let degree = (1..=sqrt_bound)
            .find(|&d| mulm(d, d, l) == deg_sq)
            .ok_or_else(|| ChartabError::Internal("degree recovery failed".into()))?;

        // chi(rep_j) mod l
        let chi_bar: Vec<u64> = (0..k)
            .map(|j| mulm(mulm(degree, omega[j], l), invm(class_sizes[j] % l, l), l))
            .collect();

        // exact lift: multiplicities of each e-th root of unity among the
        // eigenvalues of the representing matrix
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let mut val = Cyclotomic::zero(e as usize);
            let mut total = 0u64;
            for t in 0..e {
                let mut m_t = 0u64;
                for s in 0..e {
                    let term = mulm(chi_bar[power_map[j][s as usize]], powm(z_inv, s * t, l), l);
                    m_t = addm(m_t, term, l);
                }
                m_t = mulm(m_t, e_inv, l);
                total += m_t;
                if m_t != 0 {
                    val = val.add(
                        &Cyclotomic::root_of_unity(e as usize, t as usize)
                            .scale(num_rational::Ratio::from_integer(m_t as i128)),
                    );
                }
            }
            if total != degree {
                return Err(ChartabError::Internal(format!(
                    "eigenvalue multiplicities sum to {total}, degree is {degree}"
                )));
            }
            values.push(val);
        }
        out.push(RawCharacter { degree, values });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_selection() {
        // |G|=6, e=6: bound 2*3*6=36, need l = 1 mod 6, l > 36 -> 37
        assert_eq!(select_prime(6, 6), 37);
        // trivial group
        assert_eq!(select_prime(1, 1), 3);
    }
}
