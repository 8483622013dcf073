//! Exact character tables and the class-function calculus: inner products,
//! restriction, induction, regular characters and direct-product
//! decompositions. Every value is an exact cyclotomic; floating point is
//! banned from this module.

mod cyclotomic;
mod dixon;
mod modlin;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, Rat};

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::groups::{ClassifiedGroup, FiniteGroupView, GroupError, SubgroupHandle};

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("class functions belong to different groups: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("subgroups do not form a direct product")]
    NotDirectProduct,
    #[error("decomposition coefficient is not a character: {0}")]
    NotCharacter(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A class function: one exact cyclotomic value per conjugacy class, tagged
/// with the owning group's label.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    pub group_label: String,
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(cg: &ClassifiedGroup, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), cg.num_classes());
        ClassFunction {
            group_label: cg.view.label().to_string(),
            values,
        }
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            group_label: self.group_label.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            group_label: self.group_label.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Pointwise product (the class function of a tensor with itself etc.).
    pub fn pointwise_mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            group_label: self.group_label.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn scale(&self, r: Rat) -> ClassFunction {
        ClassFunction {
            group_label: self.group_label.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Value-wise equality with automatic conductor alignment.
    pub fn equals(&self, other: &ClassFunction) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.sub(b).is_zero())
    }
}

/// The exact table of irreducible characters, rows canonically ordered by
/// (degree, then values lexicographically under the canonical class order).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub conductor: usize,
    pub degrees: Vec<u64>,
    pub irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }
}

/// Computes the exact character table and hard-fails on any orthogonality
/// defect rather than returning a silently wrong table.
pub fn character_table(cg: &ClassifiedGroup) -> Result<CharacterTable, ChartabError> {
    let mut raw = dixon::irreducible_characters(cg)?;
    raw.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                let c = x.cmp_lex(y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let table = CharacterTable {
        conductor: cg.exponent as usize,
        degrees: raw.iter().map(|r| r.degree).collect(),
        irreducibles: raw
            .into_iter()
            .map(|r| ClassFunction::new(cg, r.values))
            .collect(),
    };
    verify_table(cg, &table)?;
    Ok(table)
}

/// Row orthogonality, column orthogonality and the degree sum, all exact.
pub fn verify_table(cg: &ClassifiedGroup, table: &CharacterTable) -> Result<(), ChartabError> {
    let k = cg.num_classes();
    if table.irreducibles.len() != k {
        return Err(ChartabError::Internal(format!(
            "{} irreducibles for {} classes",
            table.irreducibles.len(),
            k
        )));
    }
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq != cg.order() {
        return Err(ChartabError::Internal(format!(
            "degree squares sum to {sum_sq}, group order is {}",
            cg.order()
        )));
    }
    for (i, a) in table.irreducibles.iter().enumerate() {
        for (j, b) in table.irreducibles.iter().enumerate() {
            let ip = inner_product(cg, a, b)?;
            let want = Cyclotomic::from_integer(i64::from(i == j) as i128, 1);
            if !ip.sub(&want).is_zero() {
                return Err(ChartabError::Internal(format!(
                    "row orthogonality fails at ({i},{j}): got {ip}"
                )));
            }
        }
    }
    for x in 0..k {
        for y in 0..k {
            let mut s = Cyclotomic::zero(table.conductor);
            for chi in &table.irreducibles {
                s = s.add(&chi.value(x).mul(&chi.value(y).conj()));
            }
            let want = if x == y {
                Cyclotomic::from_integer(cg.classes.centralizer_order[x] as i128, 1)
            } else {
                Cyclotomic::zero(1)
            };
            if !s.sub(&want).is_zero() {
                return Err(ChartabError::Internal(format!(
                    "column orthogonality fails at ({x},{y})"
                )));
            }
        }
    }
    Ok(())
}

/// (phi, psi) = (1/|G|) sum_x phi(x) conj(psi(x)), exact.
pub fn inner_product(
    cg: &ClassifiedGroup,
    phi: &ClassFunction,
    psi: &ClassFunction,
) -> Result<Cyclotomic, ChartabError> {
    if phi.group_label != psi.group_label {
        return Err(ChartabError::GroupMismatch(
            phi.group_label.clone(),
            psi.group_label.clone(),
        ));
    }
    if phi.values.len() != cg.num_classes() {
        return Err(ChartabError::GroupMismatch(
            phi.group_label.clone(),
            cg.view.label().to_string(),
        ));
    }
    let mut s = Cyclotomic::zero(1);
    for (c, (a, b)) in phi.values.iter().zip(&psi.values).enumerate() {
        let term = a
            .mul(&b.conj())
            .scale(Ratio::from_integer(cg.classes.class_size(c) as i128));
        s = s.add(&term);
    }
    Ok(s.scale(Ratio::new(1, cg.order() as i128)))
}

/// Values copied along the subgroup embedding.
pub fn restrict(
    ambient: &ClassifiedGroup,
    chi: &ClassFunction,
    sub: &ClassifiedGroup,
) -> Result<ClassFunction, ChartabError> {
    let mut values = Vec::with_capacity(sub.num_classes());
    for &rep in &sub.classes.rep {
        let e = sub.view.element(rep);
        let c = ambient
            .class_of_element(e)
            .ok_or(ChartabError::NotASubgroup)?;
        values.push(chi.value(c).clone());
    }
    Ok(ClassFunction::new(sub, values))
}

/// Frobenius induction by the definition formula:
/// phi^G(x) = (1/|H|) sum_{y in G} phi_dot(y x y^{-1}).
pub fn induce(
    ambient: &ClassifiedGroup,
    sub: &ClassifiedGroup,
    phi: &ClassFunction,
) -> Result<ClassFunction, ChartabError> {
    let h = sub.order() as i128;
    let mut values = Vec::with_capacity(ambient.num_classes());
    for &rep in &ambient.classes.rep {
        let x = ambient.view.element(rep);
        let mut s = Cyclotomic::zero(1);
        for y in ambient.view.elements() {
            let conj = y.mul(x)?.mul(&y.inverse()?)?;
            if let Some(c) = sub.class_of_element(&conj) {
                s = s.add(phi.value(c));
            }
        }
        values.push(s.scale(Ratio::new(1, h)));
    }
    Ok(ClassFunction::new(ambient, values))
}

/// rho_A: |A| at the identity, zero elsewhere.
pub fn regular_character(cg: &ClassifiedGroup) -> ClassFunction {
    let id = cg.identity_class();
    let values = (0..cg.num_classes())
        .map(|c| {
            if c == id {
                Cyclotomic::from_integer(cg.order() as i128, 1)
            } else {
                Cyclotomic::zero(1)
            }
        })
        .collect();
    ClassFunction::new(cg, values)
}

/// True iff chi restricted to the subgroup `a` (inside `ambient`) is an
/// integer multiple of the regular character of `a`: zero off the identity
/// and |A| divides chi(1).
pub fn is_regular_multiple(
    ambient: &ClassifiedGroup,
    chi: &ClassFunction,
    a: &SubgroupHandle,
) -> Result<bool, ChartabError> {
    let id = ambient.view.identity_index();
    for &m in a.members() {
        if m == id {
            continue;
        }
        let c = ambient.classes.class_of[m];
        if !chi.value(c).is_zero() {
            return Ok(false);
        }
    }
    let deg = chi
        .value(ambient.identity_class())
        .as_integer()
        .ok_or_else(|| ChartabError::Internal("character degree is not an integer".into()))?;
    Ok(deg % a.order() as i128 == 0)
}

/// True iff f (a class function on `cg`) is an integer multiple of rho_{cg}.
pub fn is_integer_multiple_of_regular(cg: &ClassifiedGroup, f: &ClassFunction) -> bool {
    let id = cg.identity_class();
    for (c, v) in f.values.iter().enumerate() {
        if c != id && !v.is_zero() {
            return false;
        }
    }
    match f.value(id).as_rational() {
        Some(r) => (r / Ratio::from_integer(cg.order() as i128)).is_integer(),
        None => false,
    }
}

/// A subgroup packaged with its classes and its own exact character table.
#[derive(Debug, Clone)]
pub struct SubTable {
    pub cg: ClassifiedGroup,
    pub table: CharacterTable,
}

impl SubTable {
    pub fn new(
        ambient: &FiniteGroupView,
        handle: &SubgroupHandle,
        label: &str,
    ) -> Result<Self, ChartabError> {
        let view = handle.to_view(ambient, label)?;
        let cg = ClassifiedGroup::new(view)?;
        let table = character_table(&cg)?;
        Ok(SubTable { cg, table })
    }
}

/// Checks elementwise commuting and trivial intersection of two subgroup views.
pub fn is_direct_product(h: &SubTable, k: &SubTable) -> Result<bool, ChartabError> {
    let mut common = 0usize;
    for e in h.cg.view.elements() {
        if k.cg.view.index_of(e).is_some() {
            common += 1;
        }
    }
    if common != 1 {
        return Ok(false);
    }
    for a in h.cg.view.elements() {
        for b in k.cg.view.elements() {
            if a.mul(b)? != b.mul(a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Unique coefficients tau_lambda with chi|_{H x K} = sum_lambda tau_lambda x lambda,
/// one class function on H per irreducible lambda of K (in K's table order).
/// Each coefficient is verified to be a character of H or zero.
pub fn product_decompose(
    ambient: &ClassifiedGroup,
    chi: &ClassFunction,
    h: &SubTable,
    k: &SubTable,
) -> Result<Vec<ClassFunction>, ChartabError> {
    if !is_direct_product(h, k)? {
        return Err(ChartabError::NotDirectProduct);
    }
    let korder = k.cg.order() as i128;
    let mut out = Vec::with_capacity(k.table.num_irreducibles());
    for lambda in &k.table.irreducibles {
        let mut values = Vec::with_capacity(h.cg.num_classes());
        for &hrep in &h.cg.classes.rep {
            let helem = h.cg.view.element(hrep);
            let mut s = Cyclotomic::zero(1);
            for (ki, kelem) in k.cg.view.elements().iter().enumerate() {
                let prod = helem.mul(kelem)?;
                let c = ambient
                    .class_of_element(&prod)
                    .ok_or(ChartabError::NotASubgroup)?;
                let kc = k.cg.classes.class_of[ki];
                s = s.add(&chi.value(c).mul(&lambda.value(kc).conj()));
            }
            values.push(s.scale(Ratio::new(1, korder)));
        }
        let tau = ClassFunction::new(&h.cg, values);
        if character_coefficients(&h.cg, &h.table, &tau)?.is_none() {
            return Err(ChartabError::NotCharacter(format!(
                "tau coefficient on {}",
                h.cg.view.label()
            )));
        }
        out.push(tau);
    }
    Ok(out)
}

/// Decomposes f over the irreducibles; Some(coeffs) iff every multiplicity is
/// a nonnegative integer, i.e. f is a character or zero.
pub fn character_coefficients(
    cg: &ClassifiedGroup,
    table: &CharacterTable,
    f: &ClassFunction,
) -> Result<Option<Vec<i128>>, ChartabError> {
    let mut coeffs = Vec::with_capacity(table.num_irreducibles());
    for chi in &table.irreducibles {
        let c = inner_product(cg, f, chi)?;
        match c.as_rational() {
            Some(r) if r.is_integer() && r >= Ratio::zero() => coeffs.push(r.to_integer()),
            _ => return Ok(None),
        }
    }
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpalg::MatP;
    use crate::groups::{linear_group, semidirect, ClassifiedGroup, SubgroupHandle, DEFAULT_CAP};

    fn m(rows: &[Vec<i64>], p: u16) -> MatP {
        MatP::new(rows, p).unwrap()
    }

    fn classified(label: &str, gens: &[MatP], p: u16, n: usize) -> ClassifiedGroup {
        let g = linear_group(label, gens, n, DEFAULT_CAP).unwrap();
        let gv = semidirect(&g, p, n, DEFAULT_CAP).unwrap();
        ClassifiedGroup::new(gv).unwrap()
    }

    fn s3() -> ClassifiedGroup {
        classified("C2", &[m(&[vec![2]], 3)], 3, 1)
    }

    fn pure_linear_handle(cg: &ClassifiedGroup) -> SubgroupHandle {
        let idx: Vec<usize> = (0..cg.view.len())
            .filter(|&i| cg.view.element(i).is_pure_linear())
            .collect();
        SubgroupHandle::new(&cg.view, idx).unwrap()
    }

    fn pure_translation_handle(cg: &ClassifiedGroup) -> SubgroupHandle {
        let idx: Vec<usize> = (0..cg.view.len())
            .filter(|&i| cg.view.element(i).is_pure_translation())
            .collect();
        SubgroupHandle::new(&cg.view, idx).unwrap()
    }

    #[test]
    fn c2_table() {
        let g = linear_group("C2", &[m(&[vec![2]], 3)], 1, DEFAULT_CAP).unwrap();
        let cg = ClassifiedGroup::new(g).unwrap();
        let t = character_table(&cg).unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        let nontriv = (0..cg.num_classes())
            .find(|&c| c != cg.identity_class())
            .unwrap();
        let vals: Vec<i128> = t
            .irreducibles
            .iter()
            .map(|chi| chi.value(nontriv).as_integer().unwrap())
            .collect();
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn s3_degrees_and_orthogonality() {
        let cg = s3();
        let t = character_table(&cg).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn order20_degrees() {
        let cg = classified("C4", &[m(&[vec![2]], 5)], 5, 1);
        let t = character_table(&cg).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 4]);
    }

    #[test]
    fn restriction_to_translations() {
        // the degree-2 character of S3 restricted to C3 is 2, -1, -1
        let cg = s3();
        let t = character_table(&cg).unwrap();
        let chi2 = &t.irreducibles[2];
        let vh = pure_translation_handle(&cg);
        let sub = SubTable::new(&cg.view, &vh, "V").unwrap();
        let res = restrict(&cg, chi2, &sub.cg).unwrap();
        let id = sub.cg.identity_class();
        assert_eq!(res.value(id).as_integer(), Some(2));
        for c in 0..sub.cg.num_classes() {
            if c != id {
                assert_eq!(res.value(c).as_integer(), Some(-1));
            }
        }
    }

    #[test]
    fn induction_and_frobenius_reciprocity() {
        let cg = s3();
        let t = character_table(&cg).unwrap();
        let vh = pure_translation_handle(&cg);
        let sub = SubTable::new(&cg.view, &vh, "V").unwrap();
        for lam in &sub.table.irreducibles {
            let ind = induce(&cg, &sub.cg, lam).unwrap();
            // degree multiplies by the index
            assert_eq!(ind.value(cg.identity_class()).as_integer(), Some(2));
            for chi in &t.irreducibles {
                let lhs = inner_product(&cg, &ind, chi).unwrap();
                let res = restrict(&cg, chi, &sub.cg).unwrap();
                let rhs = inner_product(&sub.cg, lam, &res).unwrap();
                assert!(lhs.sub(&rhs).is_zero());
            }
        }
    }

    #[test]
    fn induced_trivial_character_values() {
        // 1_V induced to S3: |G:V| = 2 at 1, 2 on the order-3 class, 0 elsewhere
        let cg = s3();
        let vh = pure_translation_handle(&cg);
        let sub = SubTable::new(&cg.view, &vh, "V").unwrap();
        let one = sub
            .table
            .irreducibles
            .iter()
            .find(|chi| chi.values.iter().all(|v| v.as_integer() == Some(1)))
            .unwrap();
        let ind = induce(&cg, &sub.cg, one).unwrap();
        let mut vals: Vec<i128> = ind.values.iter().map(|v| v.as_integer().unwrap()).collect();
        vals.sort_unstable();
        assert_eq!(vals, vec![0, 2, 2]);
    }

    #[test]
    fn regular_character_multiples() {
        let cg = s3();
        let t = character_table(&cg).unwrap();
        let vh = pure_translation_handle(&cg);
        let rho = {
            let sub = SubTable::new(&cg.view, &vh, "V").unwrap();
            regular_character(&sub.cg)
        };
        assert_eq!(rho.value(0).as_integer(), Some(3));
        // no irreducible of S3 vanishes on all of V \ {1}
        for chi in &t.irreducibles {
            assert!(!is_regular_multiple(&cg, chi, &vh).unwrap());
        }
        // but the sum over the whole table weighted by degrees is regular
        let mut reg = ClassFunction::new(&cg, vec![Cyclotomic::zero(1); cg.num_classes()]);
        for chi in &t.irreducibles {
            let d = chi.value(cg.identity_class()).as_rational().unwrap();
            reg = reg.add(&chi.scale(d));
        }
        assert!(is_regular_multiple(&cg, &reg, &vh).unwrap());
    }

    #[test]
    fn product_decomposition_reconstructs() {
        // GV for G = <2> mod 5, decomposed over H = G-part, K = V-part
        let cg = classified("C4", &[m(&[vec![2]], 5)], 5, 1);
        let t = character_table(&cg).unwrap();
        let gh = pure_linear_handle(&cg);
        let vh = pure_translation_handle(&cg);
        let hsub = SubTable::new(&cg.view, &gh, "G").unwrap();
        let ksub = SubTable::new(&cg.view, &vh, "V").unwrap();
        // G and V do not commute elementwise here
        assert!(!is_direct_product(&hsub, &ksub).unwrap());

        // A genuine direct product: A = <g^2> x <v> inside GV is not available,
        // so take H = V itself and K = trivial
        let trivial = SubgroupHandle::new(&cg.view, vec![cg.view.identity_index()]).unwrap();
        let ksub = SubTable::new(&cg.view, &trivial, "1").unwrap();
        let hsub = SubTable::new(&cg.view, &vh, "V").unwrap();
        for chi in &t.irreducibles {
            let taus = product_decompose(&cg, chi, &hsub, &ksub).unwrap();
            assert_eq!(taus.len(), 1);
            let res = restrict(&cg, chi, &hsub.cg).unwrap();
            assert!(taus[0].equals(&res));
        }
    }

    #[test]
    fn product_decomposition_direct_product() {
        // V = GF(3)^2 with trivial G is abelian; split as <e1> x <e2>
        let cg = classified("1", &[m(&[vec![1, 0], vec![0, 1]], 3)], 3, 2);
        assert_eq!(cg.order(), 9);
        let t = character_table(&cg).unwrap();
        let e1 = crate::groups::GvElement::translation(
            crate::gfpalg::VecP::new(&[1, 0], 3).unwrap(),
            2,
        )
        .unwrap();
        let e2 = crate::groups::GvElement::translation(
            crate::gfpalg::VecP::new(&[0, 1], 3).unwrap(),
            2,
        )
        .unwrap();
        let h = SubgroupHandle::cyclic(&cg.view, cg.view.index_of(&e1).unwrap()).unwrap();
        let k = SubgroupHandle::cyclic(&cg.view, cg.view.index_of(&e2).unwrap()).unwrap();
        let hsub = SubTable::new(&cg.view, &h, "H").unwrap();
        let ksub = SubTable::new(&cg.view, &k, "K").unwrap();
        assert!(is_direct_product(&hsub, &ksub).unwrap());
        for chi in &t.irreducibles {
            let taus = product_decompose(&cg, chi, &hsub, &ksub).unwrap();
            // linear character of a direct product: exactly one tau nonzero
            let nonzero: Vec<usize> = taus
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(nonzero.len(), 1);
            // reconstruction on every (h, k) pair
            for (hi, helem) in hsub.cg.view.elements().iter().enumerate() {
                for (ki, kelem) in ksub.cg.view.elements().iter().enumerate() {
                    let prod = helem.mul(kelem).unwrap();
                    let want = chi.value(cg.class_of_element(&prod).unwrap());
                    let hc = hsub.cg.classes.class_of[hi];
                    let kc = ksub.cg.classes.class_of[ki];
                    let mut got = Cyclotomic::zero(1);
                    for (tau, lam) in taus.iter().zip(&ksub.table.irreducibles) {
                        got = got.add(&tau.value(hc).mul(lam.value(kc)));
                    }
                    assert!(got.sub(want).is_zero());
                }
            }
        }
    }

    #[test]
    fn quaternion_and_sl23_tables() {
        let q8 = linear_group(
            "Q8",
            &[m(&[vec![0, 2], vec![1, 0]], 3), m(&[vec![1, 1], vec![1, 2]], 3)],
            2,
            DEFAULT_CAP,
        )
        .unwrap();
        let cg = ClassifiedGroup::new(q8).unwrap();
        let t = character_table(&cg).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
    }
}
