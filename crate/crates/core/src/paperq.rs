//! Counting bounds for irreducible characters of affine groups GV.
//!
//! Everything here is phrased over a [`GvContext`]: the group GV together with
//! its exact character table and the distinguished subgroups (the linear part
//! G, the translation part V, stabilizers, cyclic subgroups). The checks come
//! in two families:
//!
//! * character subsets — irreducibles whose restriction to a distinguished
//!   subgroup avoids a regular-character pattern; and
//! * counting bounds — exact inequalities between those subset sizes and
//!   volume data of the action (fixed-point counts, orbit counts, normalizer
//!   orders).
//!
//! Every bound is evaluated with exact arithmetic and reported with its slack;
//! hypotheses that fail mark the report not-applicable instead of skipping it.

use num_rational::Ratio;
use thiserror::Error;

use crate::chartab::{
    character_table, is_integer_multiple_of_regular, is_regular_multiple, product_decompose,
    CharacterTable, ChartabError, ClassFunction, Rat, SubTable,
};
use crate::gfpalg::VecP;
use crate::groups::{
    centralizer, fixed_vectors, module_orbit_reps, normalizer_of_cyclic, orbit_count,
    regular_orbit_witness, semidirect, action_kernel, ActionMode, ClassifiedGroup,
    FiniteGroupView, GroupError, GvElement, SubgroupHandle,
};

#[derive(Debug, Error)]
pub enum PaperqError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The full working context for one instance: GV, its exact table, and the
/// standard subgroup handles.
pub struct GvContext {
    pub label: String,
    pub p: u16,
    pub n: usize,
    pub gv: ClassifiedGroup,
    pub table: CharacterTable,
    /// Pure-linear part, as a subgroup of GV.
    pub g_handle: SubgroupHandle,
    /// The linear part classified as a group of its own.
    pub g_cg: ClassifiedGroup,
    /// Pure-translation part, as a subgroup of GV.
    pub v_handle: SubgroupHandle,
    pub faithful: bool,
    pub coprime: bool,
}

impl GvContext {
    /// Builds GV from a pure-linear group acting on GF(p)^n and computes its
    /// exact character table.
    pub fn build(g: &FiniteGroupView, p: u16, n: usize, cap: usize) -> Result<Self, PaperqError> {
        let gv_view = semidirect(g, p, n, cap)?;
        let label = gv_view.label().to_string();
        let gv = ClassifiedGroup::new(gv_view)?;
        let table = character_table(&gv)?;
        let g_members: Vec<usize> = (0..gv.view.len())
            .filter(|&i| gv.view.element(i).is_pure_linear())
            .collect();
        let g_handle = SubgroupHandle::new(&gv.view, g_members)?;
        let v_members: Vec<usize> = (0..gv.view.len())
            .filter(|&i| gv.view.element(i).is_pure_translation())
            .collect();
        let v_handle = SubgroupHandle::new(&gv.view, v_members)?;
        let g_cg = ClassifiedGroup::new(g.clone())?;
        let faithful = action_kernel(g, n)?.len() == 1;
        let coprime = u64::from(p) != 0 && g.order() % u64::from(p) != 0;
        Ok(GvContext {
            label,
            p,
            n,
            gv,
            table,
            g_handle,
            g_cg,
            v_handle,
            faithful,
            coprime,
        })
    }

    pub fn order_g(&self) -> u64 {
        self.g_handle.order()
    }

    pub fn order_v(&self) -> u64 {
        self.v_handle.order()
    }

    pub fn order_gv(&self) -> u64 {
        self.gv.order()
    }

    pub fn k_g(&self) -> usize {
        self.g_cg.num_classes()
    }

    pub fn k_gv(&self) -> usize {
        self.gv.num_classes()
    }

    /// Index in GV of the pure translation by v.
    pub fn translation_index(&self, v: &VecP) -> Result<usize, PaperqError> {
        let e = GvElement::translation(v.clone(), self.gv.view.mat_dim())?;
        self.gv
            .view
            .index_of(&e)
            .ok_or_else(|| PaperqError::Internal("translation not in GV".into()))
    }

    /// C_G(v): the stabilizer of v inside the linear part.
    pub fn stabilizer_of(&self, v_idx: usize) -> Result<SubgroupHandle, PaperqError> {
        Ok(centralizer(&self.gv.view, &self.g_handle, &[v_idx])?)
    }

    /// C_V(g): the translations fixed by g, as a subgroup of GV.
    pub fn fixed_translations(&self, g_idx: usize) -> Result<SubgroupHandle, PaperqError> {
        let g = self.gv.view.element(g_idx).clone();
        let mut members = Vec::new();
        for &i in self.v_handle.members() {
            let e = self.gv.view.element(i);
            let moved = crate::gfpalg::vec_act(&e.trans, &g.lin).map_err(GroupError::Field)?;
            if moved == e.trans {
                members.push(i);
            }
        }
        Ok(SubgroupHandle::new(&self.gv.view, members)?)
    }

    /// |C_V(x)| for an element x of GV, via its matrix part.
    pub fn fixed_space_size(&self, idx: usize) -> Result<u64, PaperqError> {
        let e = self.gv.view.element(idx);
        Ok(fixed_vectors(&e.lin, self.p, self.n)?.len() as u64)
    }

    /// Lexicographically least vector in a regular orbit, if one exists.
    pub fn regular_witness(&self) -> Result<Option<VecP>, PaperqError> {
        let g_view = &self.g_cg.view;
        Ok(regular_orbit_witness(g_view, self.p, self.n)?)
    }

    /// Orbit representatives of the linear part on V (zero vector first).
    pub fn orbit_reps(&self) -> Result<Vec<VecP>, PaperqError> {
        Ok(module_orbit_reps(&self.g_cg.view, self.p, self.n)?)
    }

    /// GV-indices of the class representatives of the linear part.
    pub fn g_class_reps(&self) -> Result<Vec<usize>, PaperqError> {
        let mut out = Vec::new();
        for &rep in &self.g_cg.classes.rep {
            let e = self.g_cg.view.element(rep);
            let idx = self
                .gv
                .view
                .index_of(e)
                .ok_or_else(|| PaperqError::Internal("linear element not in GV".into()))?;
            out.push(idx);
        }
        Ok(out)
    }

    /// True iff the linear part is abelian.
    pub fn g_abelian(&self) -> bool {
        self.g_cg
            .classes
            .classes
            .iter()
            .all(|c| c.len() == 1)
    }
}

/// A named subset of the irreducibles, by row index into the table.
#[derive(Debug, Clone)]
pub struct CharacterSubsetReport {
    pub subset_id: String,
    pub members: Vec<usize>,
    pub cardinality: usize,
    pub context: String,
}

/// Whether a bound's hypotheses are met.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    Satisfied,
    NotApplicable(String),
}

/// One evaluated inequality: lhs <= rhs with exact slack.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub bound_id: String,
    pub status: Applicability,
    pub lhs: i128,
    pub rhs: Rat,
    pub holds: bool,
    pub slack: Rat,
    pub context: String,
}

fn bound(id: &str, lhs: i128, rhs: Rat, context: String) -> BoundReport {
    let l = Ratio::from_integer(lhs);
    BoundReport {
        bound_id: id.to_string(),
        status: Applicability::Satisfied,
        lhs,
        rhs,
        holds: l <= rhs,
        slack: rhs - l,
        context,
    }
}

fn not_applicable(id: &str, reason: &str, context: String) -> BoundReport {
    BoundReport {
        bound_id: id.to_string(),
        status: Applicability::NotApplicable(reason.to_string()),
        lhs: 0,
        rhs: Ratio::from_integer(0),
        holds: true,
        slack: Ratio::from_integer(0),
        context,
    }
}

fn rat(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// Irr(GV,x): irreducibles whose restriction to <x> is not an integer
/// multiple of the regular character of <x>.
pub fn irr_not_regular(ctx: &GvContext, x_idx: usize) -> Result<CharacterSubsetReport, PaperqError> {
    let a = SubgroupHandle::cyclic(&ctx.gv.view, x_idx)?;
    let mut members = Vec::new();
    for (i, chi) in ctx.table.irreducibles.iter().enumerate() {
        if !is_regular_multiple(&ctx.gv, chi, &a)? {
            members.push(i);
        }
    }
    Ok(CharacterSubsetReport {
        subset_id: "not-regular-on-cyclic".into(),
        cardinality: members.len(),
        members,
        context: format!("x = {}", ctx.gv.view.element(x_idx)),
    })
}

/// Convenience: k(GV, v) for a translation element.
pub fn k_gv_at(ctx: &GvContext, v: &VecP) -> Result<usize, PaperqError> {
    let idx = ctx.translation_index(v)?;
    Ok(irr_not_regular(ctx, idx)?.cardinality)
}

/// Decomposition coefficients of every irreducible over the direct product
/// H x K: one vector of coefficients on H per irreducible, indexed by Irr(K).
fn all_decompositions(
    ctx: &GvContext,
    h: &SubTable,
    k: &SubTable,
) -> Result<Vec<Vec<ClassFunction>>, PaperqError> {
    let mut out = Vec::with_capacity(ctx.table.num_irreducibles());
    for chi in &ctx.table.irreducibles {
        out.push(product_decompose(&ctx.gv, chi, h, k)?);
    }
    Ok(out)
}

/// The subset of irreducibles whose restriction to S x <v> is not of the form
/// (character of S) x (regular character of <v>). The subgroup S must fix v
/// elementwise; S = C_G(v) gives the main variant, S = a prime-order subgroup
/// of it the refined one.
pub fn irr0(
    ctx: &GvContext,
    s: &SubgroupHandle,
    v_idx: usize,
) -> Result<CharacterSubsetReport, PaperqError> {
    let a = SubgroupHandle::cyclic(&ctx.gv.view, v_idx)?;
    let ssub = SubTable::new(&ctx.gv.view, s, "S")?;
    let asub = SubTable::new(&ctx.gv.view, &a, "A")?;
    let decs = all_decompositions(ctx, &ssub, &asub)?;
    let mut members = Vec::new();
    for (i, taus) in decs.iter().enumerate() {
        // restriction equals tau x (regular of A) exactly when every
        // coefficient is the same class function
        let all_equal = taus[1..].iter().all(|t| t.equals(&taus[0]));
        if !all_equal {
            members.push(i);
        }
    }
    Ok(CharacterSubsetReport {
        subset_id: "not-product-with-regular".into(),
        cardinality: members.len(),
        members,
        context: format!(
            "|S| = {}, v = {}",
            s.order(),
            ctx.gv.view.element(v_idx)
        ),
    })
}

/// Irreducibles of degree coprime to p.
pub fn irr_p_prime(ctx: &GvContext) -> CharacterSubsetReport {
    let p = u64::from(ctx.p);
    let members: Vec<usize> = ctx
        .table
        .degrees
        .iter()
        .enumerate()
        .filter(|(_, d)| *d % p != 0)
        .map(|(i, _)| i)
        .collect();
    CharacterSubsetReport {
        subset_id: "degree-coprime-to-p".into(),
        cardinality: members.len(),
        members,
        context: format!("p = {}", ctx.p),
    }
}

/// Data shared by the dual-side checks for a fixed linear element g:
/// A = <g>, C = fixed translations of g, and the coefficient vectors of every
/// irreducible over A x C.
pub struct DualDecomposition {
    pub a_handle: SubgroupHandle,
    pub c_handle: SubgroupHandle,
    pub a_sub: SubTable,
    pub c_sub: SubTable,
    /// Per irreducible, the coefficients on A indexed by Irr(C).
    pub taus: Vec<Vec<ClassFunction>>,
}

pub fn dual_decomposition(ctx: &GvContext, g_idx: usize) -> Result<DualDecomposition, PaperqError> {
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, g_idx)?;
    let c_handle = ctx.fixed_translations(g_idx)?;
    let a_sub = SubTable::new(&ctx.gv.view, &a_handle, "A")?;
    let c_sub = SubTable::new(&ctx.gv.view, &c_handle, "C")?;
    let taus = all_decompositions(ctx, &a_sub, &c_sub)?;
    Ok(DualDecomposition {
        a_handle,
        c_handle,
        a_sub,
        c_sub,
        taus,
    })
}

/// Irreducibles whose restriction to <g> x C_V(g) is not of the form
/// (regular of <g>) x (character of C_V(g)). Also asserts that every
/// irreducible already flagged by `irr_not_regular` at g belongs here.
pub fn irr_g(ctx: &GvContext, g_idx: usize) -> Result<CharacterSubsetReport, PaperqError> {
    let dual = dual_decomposition(ctx, g_idx)?;
    irr_g_from(ctx, g_idx, &dual)
}

pub fn irr_g_from(
    ctx: &GvContext,
    g_idx: usize,
    dual: &DualDecomposition,
) -> Result<CharacterSubsetReport, PaperqError> {
    let mut members = Vec::new();
    for (i, taus) in dual.taus.iter().enumerate() {
        let all_regular = taus
            .iter()
            .all(|t| is_integer_multiple_of_regular(&dual.a_sub.cg, t));
        if !all_regular {
            members.push(i);
        }
    }
    // containment: non-regular restriction to <g> alone is the stronger condition
    let narrow = irr_not_regular(ctx, g_idx)?;
    for m in &narrow.members {
        if !members.contains(m) {
            return Err(PaperqError::Internal(format!(
                "character {m} restricts non-regularly to the cyclic part but its product decomposition is all-regular"
            )));
        }
    }
    Ok(CharacterSubsetReport {
        subset_id: "not-regular-times-character".into(),
        cardinality: members.len(),
        members,
        context: format!("g = {}", ctx.gv.view.element(g_idx)),
    })
}

/// Splits the set from `irr_g` into X (all pairwise coefficient differences
/// are integer multiples of the regular character of <g>) and Y (the rest).
pub fn partition_xy(
    ctx: &GvContext,
    g_idx: usize,
    dual: &DualDecomposition,
) -> Result<(CharacterSubsetReport, CharacterSubsetReport), PaperqError> {
    let in_g = irr_g_from(ctx, g_idx, dual)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for &i in &in_g.members {
        let taus = &dual.taus[i];
        let mut aligned = true;
        'outer: for (j, a) in taus.iter().enumerate() {
            for b in &taus[j + 1..] {
                if !is_integer_multiple_of_regular(&dual.a_sub.cg, &a.sub(b)) {
                    aligned = false;
                    break 'outer;
                }
            }
        }
        if aligned {
            x.push(i);
        } else {
            y.push(i);
        }
    }
    let context = format!("g = {}", ctx.gv.view.element(g_idx));
    Ok((
        CharacterSubsetReport {
            subset_id: "coefficients-aligned".into(),
            cardinality: x.len(),
            members: x,
            context: context.clone(),
        },
        CharacterSubsetReport {
            subset_id: "coefficients-split".into(),
            cardinality: y.len(),
            members: y,
            context,
        },
    ))
}

/// Regular-orbit bound: with a regular-orbit representative v,
/// k(GV,v) <= |V| - |G| + k(G); with faithful coprime action additionally
/// k(GV) <= |V| - |G| + k(G), and k(GV) = |V| forces the linear part abelian.
pub fn bound_regular_orbit(ctx: &GvContext) -> Result<Vec<BoundReport>, PaperqError> {
    let mut out = Vec::new();
    let witness = match ctx.regular_witness()? {
        Some(v) => v,
        None => {
            out.push(not_applicable(
                "regular-orbit",
                "no regular orbit",
                String::new(),
            ));
            return Ok(out);
        }
    };
    let rhs = rat(ctx.order_v() as i128 - ctx.order_g() as i128 + ctx.k_g() as i128);
    let lhs = k_gv_at(ctx, &witness)? as i128;
    out.push(bound(
        "regular-orbit",
        lhs,
        rhs,
        format!("v = {witness}"),
    ));
    if ctx.faithful && ctx.coprime {
        out.push(bound(
            "regular-orbit-full",
            ctx.k_gv() as i128,
            rhs,
            format!("v = {witness}"),
        ));
        if ctx.k_gv() as u64 == ctx.order_v() {
            let lhs = i128::from(!ctx.g_abelian());
            out.push(bound(
                "abelian-at-equality",
                lhs,
                rat(0),
                "class count equals |V|; linear part must be abelian".into(),
            ));
        }
    } else {
        out.push(not_applicable(
            "regular-orbit-full",
            "requires faithful coprime action",
            String::new(),
        ));
    }
    Ok(out)
}

/// Volume bound: k(GV,v) <= |C_G(v)| |V| for every orbit representative; with
/// coprimality and a regular orbit, k(GV) <= |V|.
pub fn bound_centralizer_volume(ctx: &GvContext) -> Result<Vec<BoundReport>, PaperqError> {
    let mut out = Vec::new();
    if !ctx.faithful {
        out.push(not_applicable(
            "centralizer-volume",
            "action not faithful",
            String::new(),
        ));
        return Ok(out);
    }
    for v in ctx.orbit_reps()? {
        let v_idx = ctx.translation_index(&v)?;
        let c = ctx.stabilizer_of(v_idx)?;
        let lhs = irr_not_regular(ctx, v_idx)?.cardinality as i128;
        let rhs = rat(c.order() as i128 * ctx.order_v() as i128);
        out.push(bound("centralizer-volume", lhs, rhs, format!("v = {v}")));
    }
    if ctx.coprime && ctx.regular_witness()?.is_some() {
        out.push(bound(
            "coprime-volume",
            ctx.k_gv() as i128,
            rat(ctx.order_v() as i128),
            "coprime action with a regular orbit".into(),
        ));
    } else {
        out.push(not_applicable(
            "coprime-volume",
            "requires coprime action with a regular orbit",
            String::new(),
        ));
    }
    Ok(out)
}

/// Per-class fixed-point data of the stabilizer C = C_G(v): its classified
/// view, class representatives, and |C_V(c_i)| per representative.
pub struct StabilizerData {
    pub c_handle: SubgroupHandle,
    pub c_cg: ClassifiedGroup,
    /// GV-indices of the class representatives of C, identity first.
    pub reps: Vec<usize>,
    pub fixed_sizes: Vec<u64>,
}

pub fn stabilizer_data(ctx: &GvContext, v_idx: usize) -> Result<StabilizerData, PaperqError> {
    let c_handle = ctx.stabilizer_of(v_idx)?;
    let c_view = c_handle.to_view(&ctx.gv.view, "C")?;
    let c_cg = ClassifiedGroup::new(c_view)?;
    let mut reps: Vec<usize> = Vec::new();
    for &r in &c_cg.classes.rep {
        let e = c_cg.view.element(r);
        reps.push(
            ctx.gv
                .view
                .index_of(e)
                .ok_or_else(|| PaperqError::Internal("stabilizer element not in GV".into()))?,
        );
    }
    // identity class first
    let id_pos = reps
        .iter()
        .position(|&i| i == ctx.gv.view.identity_index())
        .ok_or_else(|| PaperqError::Internal("identity missing from stabilizer classes".into()))?;
    reps.swap(0, id_pos);
    let fixed_sizes = reps
        .iter()
        .map(|&i| ctx.fixed_space_size(i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StabilizerData {
        c_handle,
        c_cg,
        reps,
        fixed_sizes,
    })
}

/// Fixed-point-sum bounds at a vector v with stabilizer C, requiring
/// (|C|, |V|) = 1: the size of the non-product subset is at most
/// sum_i |C_V(c_i)| over class representatives c_i of C, with refinements for
/// C > 1 and the whole-table variant under full coprimality.
pub fn bound_knorr(ctx: &GvContext, v: &VecP) -> Result<Vec<BoundReport>, PaperqError> {
    let mut out = Vec::new();
    let v_idx = ctx.translation_index(v)?;
    let context = format!("v = {v}");
    if !ctx.faithful {
        out.push(not_applicable(
            "fixed-sum",
            "action not faithful",
            context,
        ));
        return Ok(out);
    }
    let data = stabilizer_data(ctx, v_idx)?;
    if data.c_handle.order() % u64::from(ctx.p) == 0 {
        out.push(not_applicable(
            "fixed-sum",
            "stabilizer order not coprime to |V|",
            context,
        ));
        return Ok(out);
    }
    let s1: i128 = data.fixed_sizes.iter().map(|&x| x as i128).sum();
    let s2: i128 = data.fixed_sizes[1..].iter().map(|&x| x as i128).sum();
    let csize = data.c_handle.order() as i128;
    let kc = data.c_cg.num_classes() as i128;

    let irr0_count = irr0(ctx, &data.c_handle, v_idx)?.cardinality as i128;
    out.push(bound("fixed-sum", irr0_count, rat(s1), context.clone()));
    let k_at_v = irr_not_regular(ctx, v_idx)?.cardinality as i128;
    out.push(bound("fixed-sum-narrow", k_at_v, rat(s1), context.clone()));

    let max_rhs = if csize > 1 {
        let r1 = Ratio::new(2 * s1, csize);
        let r2 = Ratio::new(2 * csize * s2, kc - 1);
        let rhs = if r1 >= r2 { r1 } else { r2 };
        out.push(bound("fixed-sum-max", irr0_count, rhs, context.clone()));
        Some(rhs)
    } else {
        out.push(not_applicable(
            "fixed-sum-max",
            "stabilizer is trivial",
            context.clone(),
        ));
        None
    };

    if ctx.coprime {
        let k = ctx.k_gv() as i128;
        out.push(bound("fixed-sum-k", k, rat(s1), context.clone()));
        // under coprimality every degree is coprime to p, so the whole table
        // lies in the non-product subset
        out.push(bound("irr0-saturates", k, rat(irr0_count), context.clone()));
        if let Some(rhs) = max_rhs {
            out.push(bound("fixed-sum-max-k", k, rhs, context.clone()));
        }
    } else {
        out.push(not_applicable(
            "fixed-sum-k",
            "requires coprime action",
            context,
        ));
    }
    Ok(out)
}

/// Prime-element bounds at v: for every class representative g of prime order
/// q inside C = C_G(v),
/// |{degree coprime to p}| <= k(GV,v) <= |irr0 at <g>| <=
/// (|N_G(<v>)| |V| + (q-1) p |N_G(<g>)| |C_V(g)|) / q.
pub fn bound_prime_element(ctx: &GvContext, v: &VecP) -> Result<Vec<BoundReport>, PaperqError> {
    let mut out = Vec::new();
    let v_idx = ctx.translation_index(v)?;
    let context = format!("v = {v}");
    if !ctx.faithful {
        out.push(not_applicable(
            "prime-in-stabilizer",
            "action not faithful",
            context,
        ));
        return Ok(out);
    }
    let data = stabilizer_data(ctx, v_idx)?;
    if data.c_handle.order() == 1 {
        out.push(not_applicable(
            "prime-in-stabilizer",
            "stabilizer is trivial",
            context,
        ));
        return Ok(out);
    }
    let k_at_v = irr_not_regular(ctx, v_idx)?.cardinality as i128;
    let pprime = irr_p_prime(ctx).cardinality as i128;
    out.push(bound("pprime-chain", pprime, rat(k_at_v), context.clone()));
    let n_v = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, v_idx)?;
    let mut any_prime = false;
    for &g_idx in &data.reps[1..] {
        let q = ctx.gv.view.element_order_idx(g_idx)?;
        if !is_prime(q) {
            continue;
        }
        any_prime = true;
        let gctx = format!("v = {v}, g = {}", ctx.gv.view.element(g_idx));
        let c0 = SubgroupHandle::cyclic(&ctx.gv.view, g_idx)?;
        let refined = irr0(ctx, &c0, v_idx)?.cardinality as i128;
        out.push(bound("chain-refined", k_at_v, rat(refined), gctx.clone()));
        let n0 = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, g_idx)?;
        let cvg = ctx.fixed_space_size(g_idx)? as i128;
        let rhs = Ratio::new(
            n_v.order() as i128 * ctx.order_v() as i128
                + (q as i128 - 1) * i128::from(ctx.p) * n0.order() as i128 * cvg,
            q as i128,
        );
        out.push(bound("prime-in-stabilizer", refined, rhs, gctx));
    }
    if !any_prime {
        out.push(not_applicable(
            "prime-in-stabilizer",
            "no prime-order class representative in the stabilizer",
            context,
        ));
    }
    Ok(out)
}

/// Dual-side bounds at a linear element g with order coprime to |V|:
/// the size of the dual subset against orbit and normalizer volumes, with
/// prime-order refinements and the aligned/split partition bounds.
pub fn bound_dual(ctx: &GvContext, g_idx: usize) -> Result<Vec<BoundReport>, PaperqError> {
    let mut out = Vec::new();
    let e = ctx.gv.view.element(g_idx).clone();
    let context = format!("g = {e}");
    let o = ctx.gv.view.element_order_idx(g_idx)?;
    if g_idx == ctx.gv.view.identity_index() || o % u64::from(ctx.p) == 0 {
        out.push(not_applicable(
            "dual-general",
            "element trivial or order not coprime to |V|",
            context,
        ));
        return Ok(out);
    }
    let dual = dual_decomposition(ctx, g_idx)?;
    let in_g = irr_g_from(ctx, g_idx, &dual)?;
    let (x, y) = partition_xy(ctx, g_idx, &dual)?;
    out.push(bound(
        "dual-partition",
        (x.cardinality + y.cardinality) as i128,
        rat(in_g.cardinality as i128),
        context.clone(),
    ));

    let a_order = dual.a_handle.order() as i128;
    let c_order = dual.c_handle.order() as i128;
    let n_handle = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, g_idx)?;
    let cga = centralizer(&ctx.gv.view, &ctx.g_handle, dual.a_handle.members())?;
    let n_na = orbit_count(
        &ctx.gv.view,
        &n_handle,
        dual.a_handle.members(),
        ActionMode::Conjugation,
    )? as i128;
    let n_cgac = orbit_count(
        &ctx.gv.view,
        &cga,
        dual.c_handle.members(),
        ActionMode::Module,
    )? as i128;
    let mut max_term: i128 = 0;
    for &a_idx in dual.a_handle.members() {
        if a_idx == ctx.gv.view.identity_index() {
            continue;
        }
        let na = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, a_idx)?;
        let t = na.order() as i128 * ctx.fixed_space_size(a_idx)? as i128;
        max_term = max_term.max(t);
    }
    let lhs = in_g.cardinality as i128;
    let general = Ratio::new((n_na - 1) * n_cgac * max_term, (a_order - 1) * c_order);
    out.push(bound("dual-general", lhs, general, context.clone()));
    out.push(bound(
        "dual-x",
        x.cardinality as i128,
        general / rat(c_order),
        context.clone(),
    ));
    out.push(bound(
        "dual-y",
        y.cardinality as i128,
        Ratio::new((n_na - 1) * (n_cgac - 1) * max_term, a_order - 1),
        context.clone(),
    ));
    if is_prime(o) {
        out.push(bound(
            "dual-prime",
            lhs,
            rat(cga.order() as i128 * n_cgac),
            context.clone(),
        ));
        out.push(bound(
            "dual-x-prime",
            x.cardinality as i128,
            Ratio::new(cga.order() as i128 * n_cgac, c_order),
            context.clone(),
        ));
        out.push(bound(
            "dual-y-prime",
            y.cardinality as i128,
            rat(cga.order() as i128 * (n_cgac - 1) * c_order),
            context,
        ));
    } else {
        out.push(not_applicable(
            "dual-prime",
            "element order is not prime",
            context,
        ));
    }
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
