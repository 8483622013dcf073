//! Explicit finite groups: closure from matrix generators, affine semidirect
//! products G ⋉ V, conjugacy classes, centralizers, normalizers and orbit
//! machinery.
//!
//! Elements are pairs (matrix, translation). Pure-linear elements have zero
//! translation, pure translations have identity matrix; the semidirect product
//! houses both uniformly. Canonical element order is lexicographic on
//! (matrix entries row-major, translation entries), and all derived data
//! (class order, representatives) inherits it, so outputs are bit-identical
//! across runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::gfpalg::{all_vectors, element_order, vec_act, GfpError, MatP, VecP};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] GfpError),
    #[error("generator is not invertible")]
    SingularGenerator,
    #[error("group size cap {cap} exceeded (at least {reached} elements)")]
    CapExceeded { cap: usize, reached: usize },
    #[error("element not in group")]
    NotInGroup,
    #[error("set is not a subgroup")]
    NotASubgroup,
    #[error("set is not stable under the requested action")]
    NotStable,
    #[error("expected pure-linear elements (zero translation part)")]
    NotPureLinear,
    #[error("expected pure-translation elements (identity matrix part)")]
    NotPureTranslation,
}

/// Default cap on explicitly constructed groups.
pub const DEFAULT_CAP: usize = 2000;

/// One element of GV: a matrix part and a translation part.
///
/// Product law: (g1,v1)(g2,v2) = (g1 g2, v1^{g2} + v2).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GvElement {
    pub lin: MatP,
    pub trans: VecP,
}

impl GvElement {
    pub fn new(lin: MatP, trans: VecP) -> Self {
        GvElement { lin, trans }
    }

    pub fn linear(lin: MatP, module_dim: usize) -> Result<Self, GroupError> {
        let trans = VecP::zero(module_dim, lin.modulus())?;
        Ok(GvElement { lin, trans })
    }

    pub fn translation(trans: VecP, mat_dim: usize) -> Result<Self, GroupError> {
        let lin = MatP::identity(mat_dim, trans.modulus())?;
        Ok(GvElement { lin, trans })
    }

    pub fn identity(mat_dim: usize, module_dim: usize, p: u16) -> Result<Self, GroupError> {
        Ok(GvElement {
            lin: MatP::identity(mat_dim, p)?,
            trans: VecP::zero(module_dim, p)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.lin.is_identity() && self.trans.is_zero()
    }

    pub fn is_pure_linear(&self) -> bool {
        self.trans.is_zero()
    }

    pub fn is_pure_translation(&self) -> bool {
        self.lin.is_identity()
    }

    pub fn mul(&self, other: &GvElement) -> Result<GvElement, GroupError> {
        Ok(GvElement {
            lin: self.lin.mul(&other.lin)?,
            trans: vec_act(&self.trans, &other.lin)?.add(&other.trans)?,
        })
    }

    pub fn inverse(&self) -> Result<GvElement, GroupError> {
        let lin_inv = self.lin.inv()?;
        let trans = vec_act(&self.trans, &lin_inv)?.neg();
        Ok(GvElement {
            lin: lin_inv,
            trans,
        })
    }

    /// Conjugate self^g = g^{-1} self g.
    pub fn conj(&self, g: &GvElement) -> Result<GvElement, GroupError> {
        g.inverse()?.mul(self)?.mul(g)
    }
}

impl std::fmt::Display for GvElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.lin, self.trans)
    }
}

/// An explicit finite group: canonically ordered element list plus index.
#[derive(Debug, Clone)]
pub struct FiniteGroupView {
    label: String,
    elements: Vec<GvElement>,
    index: HashMap<GvElement, usize>,
    generators: Vec<usize>,
    identity: usize,
    p: u16,
    mat_dim: usize,
    module_dim: usize,
}

impl FiniteGroupView {
    fn build(
        label: &str,
        mut elements: Vec<GvElement>,
        generator_elems: &[GvElement],
    ) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        let first = elements.first().ok_or(GroupError::NotASubgroup)?;
        let p = first.lin.modulus();
        let mat_dim = first.lin.dim();
        let module_dim = first.trans.len();
        let index: HashMap<GvElement, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let identity = *index
            .get(&GvElement::identity(mat_dim, module_dim, p)?)
            .ok_or(GroupError::NotASubgroup)?;
        let generators = generator_elems
            .iter()
            .map(|g| index.get(g).copied().ok_or(GroupError::NotInGroup))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroupView {
            label: label.to_string(),
            elements,
            index,
            generators,
            identity,
            p,
            mat_dim,
            module_dim,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn modulus(&self) -> u16 {
        self.p
    }

    pub fn mat_dim(&self) -> usize {
        self.mat_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn element(&self, i: usize) -> &GvElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[GvElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &GvElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> Result<usize, GroupError> {
        let prod = self.elements[i].mul(&self.elements[j])?;
        self.index_of(&prod).ok_or(GroupError::NotInGroup)
    }

    pub fn inv_idx(&self, i: usize) -> Result<usize, GroupError> {
        let inv = self.elements[i].inverse()?;
        self.index_of(&inv).ok_or(GroupError::NotInGroup)
    }

    /// Conjugate index: elements[i]^{elements[j]}.
    pub fn conj_idx(&self, i: usize, j: usize) -> Result<usize, GroupError> {
        let c = self.elements[i].conj(&self.elements[j])?;
        self.index_of(&c).ok_or(GroupError::NotInGroup)
    }

    /// Order of the element at index i.
    pub fn element_order_idx(&self, i: usize) -> Result<u64, GroupError> {
        let mut acc = self.elements[i].clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            acc = acc.mul(&self.elements[i])?;
            k += 1;
        }
        Ok(k)
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> Result<u64, GroupError> {
        let mut e = 1u64;
        for i in 0..self.len() {
            let o = self.element_order_idx(i)?;
            e = num_integer::lcm(e, o);
        }
        Ok(e)
    }
}

/// Dimino-style closure of a generator set, deterministic and capped.
pub fn closure(generators: &[GvElement], cap: usize) -> Result<FiniteGroupView, GroupError> {
    closure_labeled("G", generators, cap)
}

pub fn closure_labeled(
    label: &str,
    generators: &[GvElement],
    cap: usize,
) -> Result<FiniteGroupView, GroupError> {
    let first = generators.first().ok_or(GroupError::NotASubgroup)?;
    for g in generators {
        if !g.lin.is_invertible() {
            return Err(GroupError::SingularGenerator);
        }
    }
    let id = GvElement::identity(first.lin.dim(), first.trans.len(), first.lin.modulus())?;
    let mut seen: HashMap<GvElement, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = x.mul(g)?;
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::CapExceeded {
                        cap,
                        reached: seen.len() + 1,
                    });
                }
                seen.insert(y.clone(), ());
                frontier.push(y);
            }
        }
    }
    let elements: Vec<GvElement> = seen.into_keys().collect();
    FiniteGroupView::build(label, elements, generators)
}

/// The affine group GV: every (g, v) with g from G (pure linear) and v in GF(p)^n.
pub fn semidirect(
    g: &FiniteGroupView,
    p: u16,
    n: usize,
    cap: usize,
) -> Result<FiniteGroupView, GroupError> {
    if g.modulus() != p {
        return Err(GroupError::Field(GfpError::ModulusMismatch(g.modulus(), p)));
    }
    for e in g.elements() {
        if !e.is_pure_linear() {
            return Err(GroupError::NotPureLinear);
        }
    }
    let vsize = (u64::from(p)).pow(n as u32);
    let total = g.order().saturating_mul(vsize);
    if total as usize > cap {
        return Err(GroupError::CapExceeded {
            cap,
            reached: total as usize,
        });
    }
    let vectors = all_vectors(p, n)?;
    let mut elements = Vec::with_capacity(total as usize);
    for e in g.elements() {
        for v in &vectors {
            elements.push(GvElement::new(e.lin.clone(), v.clone()));
        }
    }
    // generators: G's generators plus the standard basis translations
    let mut gens = Vec::new();
    for &gi in g.generator_indices() {
        gens.push(GvElement::new(
            g.element(gi).lin.clone(),
            VecP::zero(n, p)?,
        ));
    }
    for i in 0..n {
        let mut entries = vec![0i64; n];
        entries[i] = 1;
        gens.push(GvElement::translation(
            VecP::new(&entries, p)?,
            g.mat_dim(),
        )?);
    }
    if gens.is_empty() {
        gens.push(GvElement::identity(g.mat_dim(), n, p)?);
    }
    FiniteGroupView::build(&format!("{}V", g.label()), elements, &gens)
}

/// Conjugacy data: classes partition the element indices; representatives are
/// the lexicographically least members; classes are ordered by representative.
#[derive(Debug, Clone)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<usize>>,
    pub rep: Vec<usize>,
    pub class_of: Vec<usize>,
    pub centralizer_order: Vec<u64>,
}

impl ConjugacyPartition {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }
}

/// Conjugacy classes by orbit closure under generator conjugation.
pub fn conjugacy_classes(view: &FiniteGroupView) -> Result<ConjugacyPartition, GroupError> {
    let n = view.len();
    let gens: Vec<usize> = if view.generator_indices().is_empty() {
        (0..n).collect()
    } else {
        let mut g = view.generator_indices().to_vec();
        // include inverses so the conjugation orbit closes
        for i in view.generator_indices() {
            g.push(view.inv_idx(*i)?);
        }
        g.sort_unstable();
        g.dedup();
        g
    };
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut rep = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = view.conj_idx(x, g)?;
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        rep.push(members[0]);
        classes.push(members);
    }
    let order = view.order();
    let centralizer_order = classes
        .iter()
        .map(|c| order / c.len() as u64)
        .collect();
    Ok(ConjugacyPartition {
        classes,
        rep,
        class_of,
        centralizer_order,
    })
}

/// A subgroup given by sorted member indices into an ambient view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupHandle {
    members: Vec<usize>,
}

impl SubgroupHandle {
    /// Wraps a member set after verifying closure under product and inverse.
    pub fn new(view: &FiniteGroupView, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(GroupError::NotASubgroup);
        }
        let set: std::collections::HashSet<usize> = members.iter().copied().collect();
        if !set.contains(&view.identity_index()) {
            return Err(GroupError::NotASubgroup);
        }
        for &i in &members {
            if !set.contains(&view.inv_idx(i)?) {
                return Err(GroupError::NotASubgroup);
            }
            for &j in &members {
                if !set.contains(&view.mul_idx(i, j)?) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(SubgroupHandle { members })
    }

    /// Unchecked variant for sets already known to be closed.
    fn from_closed(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        SubgroupHandle { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Whole-group handle.
    pub fn full(view: &FiniteGroupView) -> Self {
        SubgroupHandle::from_closed((0..view.len()).collect())
    }

    /// The cyclic subgroup generated by one element.
    pub fn cyclic(view: &FiniteGroupView, x: usize) -> Result<Self, GroupError> {
        let mut members = vec![view.identity_index()];
        let mut acc = x;
        while acc != view.identity_index() {
            members.push(acc);
            acc = view.mul_idx(acc, x)?;
        }
        Ok(SubgroupHandle::from_closed(members))
    }

    /// Builds a standalone view of the subgroup; elements are shared with the
    /// ambient group, so ambient indices are recovered via `index_of`.
    pub fn to_view(&self, view: &FiniteGroupView, label: &str) -> Result<FiniteGroupView, GroupError> {
        let elements: Vec<GvElement> = self
            .members
            .iter()
            .map(|&i| view.element(i).clone())
            .collect();
        FiniteGroupView::build(label, elements.clone(), &elements)
    }
}

/// Elements of `within` commuting with every element of `s`.
pub fn centralizer(
    view: &FiniteGroupView,
    within: &SubgroupHandle,
    s: &[usize],
) -> Result<SubgroupHandle, GroupError> {
    let mut members = Vec::new();
    for &g in within.members() {
        let mut ok = true;
        for &x in s {
            if view.mul_idx(g, x)? != view.mul_idx(x, g)? {
                ok = false;
                break;
            }
        }
        if ok {
            members.push(g);
        }
    }
    Ok(SubgroupHandle::from_closed(members))
}

/// Elements of `within` normalizing the cyclic subgroup generated by `x`.
pub fn normalizer_of_cyclic(
    view: &FiniteGroupView,
    within: &SubgroupHandle,
    x: usize,
) -> Result<SubgroupHandle, GroupError> {
    let cyc = SubgroupHandle::cyclic(view, x)?;
    let mut members = Vec::new();
    for &g in within.members() {
        if cyc.contains(view.conj_idx(x, g)?) {
            members.push(g);
        }
    }
    Ok(SubgroupHandle::from_closed(members))
}

/// How a subgroup acts on a set of elements in `orbit_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionMode {
    /// b ↦ b^a (conjugation inside the ambient group).
    Conjugation,
    /// Pure translations acted on through the matrix part: (1,v) ↦ (1, v^a).
    Module,
}

/// Number of orbits of `a` on the element set `b` under the selected action.
pub fn orbit_count(
    view: &FiniteGroupView,
    a: &SubgroupHandle,
    b: &[usize],
    mode: ActionMode,
) -> Result<usize, GroupError> {
    let apply = |x: usize, g: usize| -> Result<usize, GroupError> {
        match mode {
            ActionMode::Conjugation => view.conj_idx(x, g),
            ActionMode::Module => {
                let e = view.element(x);
                if !e.is_pure_translation() {
                    return Err(GroupError::NotPureTranslation);
                }
                let moved = vec_act(&e.trans, &view.element(g).lin)?;
                let me = GvElement::new(e.lin.clone(), moved);
                view.index_of(&me).ok_or(GroupError::NotInGroup)
            }
        }
    };
    let bset: std::collections::HashSet<usize> = b.iter().copied().collect();
    let mut assigned: std::collections::HashSet<usize> = std::collections::HashSet::new();
    let mut orbits = 0usize;
    let mut sorted_b: Vec<usize> = bset.iter().copied().collect();
    sorted_b.sort_unstable();
    for &start in &sorted_b {
        if assigned.contains(&start) {
            continue;
        }
        orbits += 1;
        let mut frontier = vec![start];
        assigned.insert(start);
        while let Some(x) = frontier.pop() {
            for &g in a.members() {
                let y = apply(x, g)?;
                if !bset.contains(&y) {
                    return Err(GroupError::NotStable);
                }
                if assigned.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    Ok(orbits)
}

/// C_V(A), [A,V], and whether V is their direct sum.
#[derive(Debug, Clone)]
pub struct ModuleSplit {
    pub fixed: Vec<VecP>,
    pub commutator: Vec<VecP>,
    pub direct_sum: bool,
}

/// Splits V = GF(p)^n under a subgroup A of the ambient group: the common
/// fixed space C_V(A) and the commutator span [A,V] = <v^a - v>.
pub fn fixed_and_commutator_split(
    view: &FiniteGroupView,
    a: &SubgroupHandle,
    p: u16,
    n: usize,
) -> Result<ModuleSplit, GroupError> {
    let vectors = all_vectors(p, n)?;
    let mut fixed = Vec::new();
    for v in &vectors {
        let mut ok = true;
        for &ai in a.members() {
            if &vec_act(v, &view.element(ai).lin)? != v {
                ok = false;
                break;
            }
        }
        if ok {
            fixed.push(v.clone());
        }
    }
    // commutator span: close {v^a - v} under addition
    let mut comm: std::collections::BTreeSet<VecP> = std::collections::BTreeSet::new();
    comm.insert(VecP::zero(n, p)?);
    let mut frontier: Vec<VecP> = Vec::new();
    for v in &vectors {
        for &ai in a.members() {
            let d = vec_act(v, &view.element(ai).lin)?.sub(v)?;
            if comm.insert(d.clone()) {
                frontier.push(d);
            }
        }
    }
    while let Some(x) = frontier.pop() {
        let current: Vec<VecP> = comm.iter().cloned().collect();
        for y in current {
            let s = x.add(&y)?;
            if comm.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let commutator: Vec<VecP> = comm.into_iter().collect();
    let inter = fixed
        .iter()
        .filter(|v| commutator.binary_search(v).is_ok())
        .count();
    let direct_sum =
        inter == 1 && fixed.len() * commutator.len() == vectors.len();
    Ok(ModuleSplit {
        fixed,
        commutator,
        direct_sum,
    })
}

/// Fixed vectors of a single matrix in GF(p)^n.
pub fn fixed_vectors(g: &MatP, p: u16, n: usize) -> Result<Vec<VecP>, GroupError> {
    let mut out = Vec::new();
    for v in all_vectors(p, n)? {
        if vec_act(&v, g)? == v {
            out.push(v);
        }
    }
    Ok(out)
}

/// Some v with trivial stabilizer in G, or None. Deterministic: least such v.
pub fn regular_orbit_witness(
    g: &FiniteGroupView,
    p: u16,
    n: usize,
) -> Result<Option<VecP>, GroupError> {
    for v in all_vectors(p, n)? {
        let mut stab = 0usize;
        for e in g.elements() {
            if vec_act(&v, &e.lin)? == v {
                stab += 1;
            }
        }
        if stab == 1 {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Kernel of the action of G on GF(p)^n: elements whose matrix part acts as
/// the identity on the leading n coordinates.
pub fn action_kernel(g: &FiniteGroupView, n: usize) -> Result<Vec<usize>, GroupError> {
    let mut out = Vec::new();
    'outer: for (i, e) in g.elements().iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let want = u16::from(r == c);
                if e.lin.entry(r, c) != want {
                    continue 'outer;
                }
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// Orbit representatives (lexicographically least) of G on GF(p)^n.
pub fn module_orbit_reps(
    g: &FiniteGroupView,
    p: u16,
    n: usize,
) -> Result<Vec<VecP>, GroupError> {
    let vectors = all_vectors(p, n)?;
    let mut seen: std::collections::HashSet<VecP> = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for v in &vectors {
        if seen.contains(v) {
            continue;
        }
        reps.push(v.clone());
        for e in g.elements() {
            seen.insert(vec_act(v, &e.lin)?);
        }
    }
    Ok(reps)
}

/// A group together with its conjugacy partition and exponent; the working
/// context for all character computations.
#[derive(Debug, Clone)]
pub struct ClassifiedGroup {
    pub view: FiniteGroupView,
    pub classes: ConjugacyPartition,
    pub exponent: u64,
}

impl ClassifiedGroup {
    pub fn new(view: FiniteGroupView) -> Result<Self, GroupError> {
        let classes = conjugacy_classes(&view)?;
        let exponent = view.exponent()?;
        Ok(ClassifiedGroup {
            view,
            classes,
            exponent,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn order(&self) -> u64 {
        self.view.order()
    }

    pub fn identity_class(&self) -> usize {
        self.classes.class_of[self.view.identity_index()]
    }

    pub fn class_of_element(&self, e: &GvElement) -> Option<usize> {
        self.view.index_of(e).map(|i| self.classes.class_of[i])
    }
}

/// Helper: builds a pure-linear group view from matrices.
pub fn linear_group(
    label: &str,
    matrices: &[MatP],
    module_dim: usize,
    cap: usize,
) -> Result<FiniteGroupView, GroupError> {
    for m in matrices {
        if element_order(m).is_err() {
            return Err(GroupError::SingularGenerator);
        }
    }
    let gens: Vec<GvElement> = matrices
        .iter()
        .map(|m| GvElement::linear(m.clone(), module_dim))
        .collect::<Result<Vec<_>, _>>()?;
    closure_labeled(label, &gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpalg::MatP;

    fn m(rows: &[Vec<i64>], p: u16) -> MatP {
        MatP::new(rows, p).unwrap()
    }

    fn s3() -> FiniteGroupView {
        let g = linear_group("C2", &[m(&[vec![2]], 3)], 1, DEFAULT_CAP).unwrap();
        semidirect(&g, 3, 1, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn closure_trivial_and_c2() {
        let id = GvElement::identity(1, 1, 3).unwrap();
        let triv = closure(&[id], DEFAULT_CAP).unwrap();
        assert_eq!(triv.order(), 1);
        let c2 = linear_group("C2", &[m(&[vec![2]], 3)], 1, DEFAULT_CAP).unwrap();
        assert_eq!(c2.order(), 2);
    }

    #[test]
    fn closure_quaternion() {
        let q8 = linear_group(
            "Q8",
            &[m(&[vec![0, 2], vec![1, 0]], 3), m(&[vec![1, 1], vec![1, 2]], 3)],
            2,
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
    }

    #[test]
    fn closure_cap_exceeded() {
        let err = linear_group("Q8", &[m(&[vec![0, 2], vec![1, 0]], 3)], 2, 3).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { cap: 3, .. }));
    }

    #[test]
    fn semidirect_sizes() {
        let triv = closure(&[GvElement::identity(1, 1, 3).unwrap()], 10).unwrap();
        assert_eq!(semidirect(&triv, 3, 1, 10).unwrap().order(), 3);
        assert_eq!(s3().order(), 6);
        let c4 = linear_group("C4", &[m(&[vec![2]], 5)], 1, DEFAULT_CAP).unwrap();
        assert_eq!(semidirect(&c4, 5, 1, DEFAULT_CAP).unwrap().order(), 20);
    }

    #[test]
    fn s3_classes() {
        let gv = s3();
        let part = conjugacy_classes(&gv).unwrap();
        assert_eq!(part.num_classes(), 3);
        let mut sizes: Vec<usize> = part.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // class equation and centralizer product
        let total: usize = part.classes.iter().map(|c| c.len()).sum();
        assert_eq!(total as u64, gv.order());
        for (c, members) in part.classes.iter().enumerate() {
            assert_eq!(members.len() as u64 * part.centralizer_order[c], gv.order());
        }
    }

    #[test]
    fn order20_has_five_classes() {
        let c4 = linear_group("C4", &[m(&[vec![2]], 5)], 1, DEFAULT_CAP).unwrap();
        let gv = semidirect(&c4, 5, 1, DEFAULT_CAP).unwrap();
        assert_eq!(conjugacy_classes(&gv).unwrap().num_classes(), 5);
    }

    #[test]
    fn abelian_group_singleton_classes() {
        let triv = closure(&[GvElement::identity(1, 1, 3).unwrap()], 10).unwrap();
        let v = semidirect(&triv, 3, 1, 10).unwrap();
        let part = conjugacy_classes(&v).unwrap();
        assert_eq!(part.num_classes(), 3);
        assert!(part.classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn centralizer_examples() {
        let gv = s3();
        let full = SubgroupHandle::full(&gv);
        // centralizer of identity is the whole group
        let c = centralizer(&gv, &full, &[gv.identity_index()]).unwrap();
        assert_eq!(c.len(), 6);
        // C_G(v) trivial for v != 0 inside the G-part
        let gpart: Vec<usize> = (0..gv.len())
            .filter(|&i| gv.element(i).is_pure_linear())
            .collect();
        let gh = SubgroupHandle::new(&gv, gpart).unwrap();
        let v = GvElement::translation(VecP::new(&[1], 3).unwrap(), 1).unwrap();
        let vi = gv.index_of(&v).unwrap();
        let cgv = centralizer(&gv, &gh, &[vi]).unwrap();
        assert!(cgv.is_trivial());
    }

    #[test]
    fn centralizer_of_minus_identity_in_v() {
        // C_V(-I) = {0} over GF(3)^2
        let g = linear_group("C2", &[m(&[vec![2, 0], vec![0, 2]], 3)], 2, DEFAULT_CAP).unwrap();
        let minus = &g.elements()[..];
        let neg = minus
            .iter()
            .find(|e| !e.is_identity())
            .unwrap();
        let fixed = fixed_vectors(&neg.lin, 3, 2).unwrap();
        assert_eq!(fixed.len(), 1);
        assert!(fixed[0].is_zero());
    }

    #[test]
    fn normalizer_examples() {
        let gv = s3();
        let full = SubgroupHandle::full(&gv);
        assert_eq!(
            normalizer_of_cyclic(&gv, &full, gv.identity_index())
                .unwrap()
                .len(),
            6
        );
        // G-part normalizes <v>: inversion maps v to -v
        let gpart: Vec<usize> = (0..gv.len())
            .filter(|&i| gv.element(i).is_pure_linear())
            .collect();
        let gh = SubgroupHandle::new(&gv, gpart).unwrap();
        let v = GvElement::translation(VecP::new(&[1], 3).unwrap(), 1).unwrap();
        let vi = gv.index_of(&v).unwrap();
        let n = normalizer_of_cyclic(&gv, &gh, vi).unwrap();
        assert_eq!(n.len(), 2);
    }

    #[test]
    fn orbit_count_examples() {
        // G = <2> mod 5 on V = GF(5): orbits {0} and the rest
        let c4 = linear_group("C4", &[m(&[vec![2]], 5)], 1, DEFAULT_CAP).unwrap();
        let gv = semidirect(&c4, 5, 1, DEFAULT_CAP).unwrap();
        let gpart: Vec<usize> = (0..gv.len())
            .filter(|&i| gv.element(i).is_pure_linear())
            .collect();
        let gh = SubgroupHandle::new(&gv, gpart).unwrap();
        let vpart: Vec<usize> = (0..gv.len())
            .filter(|&i| gv.element(i).is_pure_translation())
            .collect();
        assert_eq!(
            orbit_count(&gv, &gh, &vpart, ActionMode::Module).unwrap(),
            2
        );
        // trivial acting group: |B| orbits
        let triv = SubgroupHandle::new(&gv, vec![gv.identity_index()]).unwrap();
        assert_eq!(
            orbit_count(&gv, &triv, &vpart, ActionMode::Module).unwrap(),
            5
        );
    }

    #[test]
    fn split_examples() {
        // A trivial: C_V = V, [A,V] = 0
        let g = linear_group("C2", &[m(&[vec![2, 0], vec![0, 2]], 3)], 2, DEFAULT_CAP).unwrap();
        let triv = SubgroupHandle::new(&g, vec![g.identity_index()]).unwrap();
        let split = fixed_and_commutator_split(&g, &triv, 3, 2).unwrap();
        assert_eq!(split.fixed.len(), 9);
        assert_eq!(split.commutator.len(), 1);
        assert!(split.direct_sum);
        // A = <-I>: C_V = 0, [A,V] = V
        let full = SubgroupHandle::full(&g);
        let split = fixed_and_commutator_split(&g, &full, 3, 2).unwrap();
        assert_eq!(split.fixed.len(), 1);
        assert_eq!(split.commutator.len(), 9);
        assert!(split.direct_sum);
        // unipotent order-p action: direct sum fails
        let u = linear_group("U", &[m(&[vec![1, 1], vec![0, 1]], 3)], 2, DEFAULT_CAP).unwrap();
        let full = SubgroupHandle::full(&u);
        let split = fixed_and_commutator_split(&u, &full, 3, 2).unwrap();
        assert!(!split.direct_sum);
    }

    #[test]
    fn regular_orbit_examples() {
        let c2 = linear_group("C2", &[m(&[vec![2]], 3)], 1, DEFAULT_CAP).unwrap();
        let w = regular_orbit_witness(&c2, 3, 1).unwrap();
        assert_eq!(w, Some(VecP::new(&[1], 3).unwrap()));
        // GL(2,2) on GF(2)^2 has no regular orbit
        let gl22 = linear_group(
            "GL22",
            &[m(&[vec![0, 1], vec![1, 0]], 2), m(&[vec![1, 1], vec![0, 1]], 2)],
            2,
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(gl22.order(), 6);
        assert_eq!(regular_orbit_witness(&gl22, 2, 2).unwrap(), None);
    }

    #[test]
    fn element_order_divides_group_order() {
        let gv = s3();
        for i in 0..gv.len() {
            let o = gv.element_order_idx(i).unwrap();
            assert_eq!(gv.order() % o, 0);
        }
    }

    #[test]
    fn action_kernel_detects_nonfaithful() {
        // 2x2 matrices acting on the first coordinate only
        let g = linear_group("K", &[m(&[vec![1, 0], vec![0, 2]], 3)], 1, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(action_kernel(&g, 1).unwrap().len(), 2);
        let faithful = linear_group("C2", &[m(&[vec![2]], 3)], 1, DEFAULT_CAP).unwrap();
        assert_eq!(action_kernel(&faithful, 1).unwrap().len(), 1);
    }
}
