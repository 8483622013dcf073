//! Independent brute-force checks and exact identity verification.
//!
//! Everything in this module is deliberately slow and obviously correct: the
//! conjugacy oracle conjugates by all group elements, the induction oracle
//! uses a coset transversal instead of the averaging formula, and every
//! aggregate identity is recomputed from raw element sums. The main pipeline
//! is validated against these, never the other way round.
//!
//! Identity checks carry stable string ids ("S1.1", "S2.3", "S3.7", ...)
//! grouped into three families; the ids never change across releases so
//! reports stay diffable.

use num_rational::Ratio;
use num_traits::Zero;

use thiserror::Error;

use crate::chartab::{
    induce, inner_product, is_integer_multiple_of_regular, regular_character, restrict,
    ChartabError, ClassFunction, Cyclotomic, Rat, SubTable,
};
use crate::gfpalg::{vec_act, VecP};
use crate::groups::{
    centralizer, fixed_and_commutator_split, normalizer_of_cyclic, orbit_count, ActionMode,
    ClassifiedGroup, ConjugacyPartition, FiniteGroupView, GroupError, SubgroupHandle,
};
use crate::paperq::{
    dual_decomposition, irr0, irr_g_from, irr_not_regular, is_prime, stabilizer_data, GvContext,
    PaperqError,
};

/// Cap for the brute-force paths; instances above it are skipped by callers.
pub const ORACLE_CAP: u64 = 500;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Paperq(#[from] PaperqError),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// How the two sides of a check are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// One exact check: lhs RELATION rhs, with ok decided exactly.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: String,
    pub rhs: String,
    pub relation: Relation,
    pub ok: bool,
    pub context: String,
}

fn rat_report(id: &str, lhs: Rat, rhs: Rat, relation: Relation, context: String) -> IdentityReport {
    let ok = match relation {
        Relation::Eq => lhs == rhs,
        Relation::Le => lhs <= rhs,
        Relation::Ge => lhs >= rhs,
    };
    IdentityReport {
        identity_id: id.to_string(),
        lhs: format_rat(lhs),
        rhs: format_rat(rhs),
        relation,
        ok,
        context,
    }
}

/// Aggregate report: ok iff no violations were counted.
fn agg_report(id: &str, violations: usize, context: String) -> IdentityReport {
    IdentityReport {
        identity_id: id.to_string(),
        lhs: violations.to_string(),
        rhs: "0".to_string(),
        relation: Relation::Eq,
        ok: violations == 0,
        context,
    }
}

fn format_rat(r: Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn as_rat(c: &Cyclotomic, what: &str) -> Result<Rat, OracleError> {
    c.as_rational()
        .ok_or_else(|| OracleError::Internal(format!("{what} is not rational: {c}")))
}

/// Subgroup generated by the elementwise products of two commuting subgroups.
pub fn product_handle(
    view: &FiniteGroupView,
    h: &SubgroupHandle,
    k: &SubgroupHandle,
) -> Result<SubgroupHandle, GroupError> {
    let mut members = Vec::with_capacity(h.len() * k.len());
    for &a in h.members() {
        for &b in k.members() {
            members.push(view.mul_idx(a, b)?);
        }
    }
    SubgroupHandle::new(view, members)
}

/// Class function on `sub` defined by an element-level rule; verifies the rule
/// really is constant on classes.
fn class_function_from<F>(sub: &ClassifiedGroup, f: F) -> Result<ClassFunction, OracleError>
where
    F: Fn(&crate::groups::GvElement) -> i128,
{
    let mut values = Vec::with_capacity(sub.num_classes());
    for class in &sub.classes.classes {
        let v = f(sub.view.element(class[0]));
        for &m in &class[1..] {
            if f(sub.view.element(m)) != v {
                return Err(OracleError::Internal(
                    "element rule is not a class function".into(),
                ));
            }
        }
        values.push(Cyclotomic::from_integer(v, 1));
    }
    Ok(ClassFunction::new(sub, values))
}

/// (chi * eta, chi) over the subgroup, as an exact rational.
fn twisted_norm(
    ctx: &GvContext,
    chi: &ClassFunction,
    sub: &ClassifiedGroup,
    eta: &ClassFunction,
) -> Result<Rat, OracleError> {
    let res = restrict(&ctx.gv, chi, sub)?;
    let prod = res.pointwise_mul(eta);
    let ip = inner_product(sub, &prod, &res)?;
    as_rat(&ip, "twisted norm")
}

/// sum over non-identity elements of the handle of |chi(x)|^2.
fn sum_norms_off_identity(
    ctx: &GvContext,
    chi: &ClassFunction,
    handle: &SubgroupHandle,
) -> Result<Rat, OracleError> {
    let id = ctx.gv.view.identity_index();
    let mut s = Cyclotomic::zero(1);
    for &m in handle.members() {
        if m == id {
            continue;
        }
        let c = ctx.gv.classes.class_of[m];
        s = s.add(&chi.value(c).norm_sq());
    }
    as_rat(&s, "norm sum")
}

/// True iff every pure translation lies in the kernel of chi.
fn translations_in_kernel(ctx: &GvContext, chi: &ClassFunction) -> bool {
    let deg = chi.value(ctx.gv.identity_class()).clone();
    ctx.v_handle.members().iter().all(|&m| {
        let c = ctx.gv.classes.class_of[m];
        chi.value(c).sub(&deg).is_zero()
    })
}

/// First identity family: with a regular-orbit vector v and A = <v> of prime
/// order p, eta = p*1 - rho on A satisfies
/// S1.1: (p-1)|V| = sum over irreducibles of (tau*eta, tau)_A;
/// S1.2: each summand equals the off-identity norm sum of tau on A;
/// S1.3: when V is in the kernel, the summand is (p-1) tau(1)^2.
pub fn check_identity_s1(ctx: &GvContext, v: &VecP) -> Result<Vec<IdentityReport>, OracleError> {
    let v_idx = ctx.translation_index(v)?;
    let c = ctx.stabilizer_of(v_idx)?;
    if !c.is_trivial() {
        return Err(OracleError::Hypothesis("stabilizer of v is nontrivial".into()));
    }
    let p = i128::from(ctx.p);
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, v_idx)?;
    if a_handle.order() != u64::from(ctx.p) {
        return Err(OracleError::Hypothesis("<v> does not have order p".into()));
    }
    let a_sub = SubTable::new(&ctx.gv.view, &a_handle, "A")?;
    let rho = regular_character(&a_sub.cg);
    let one_scaled = ClassFunction::new(
        &a_sub.cg,
        vec![Cyclotomic::from_integer(p, 1); a_sub.cg.num_classes()],
    );
    let eta = one_scaled.sub(&rho);
    let context = format!("v = {v}");
    let mut out = Vec::new();
    let mut total = Rat::zero();
    for (i, chi) in ctx.table.irreducibles.iter().enumerate() {
        let lhs = twisted_norm(ctx, chi, &a_sub.cg, &eta)?;
        let rhs = sum_norms_off_identity(ctx, chi, &a_handle)?;
        out.push(rat_report(
            "S1.2",
            lhs,
            rhs,
            Relation::Eq,
            format!("{context}, row {i}"),
        ));
        if translations_in_kernel(ctx, chi) {
            let deg = as_rat(chi.value(ctx.gv.identity_class()), "degree")?;
            out.push(rat_report(
                "S1.3",
                lhs,
                Ratio::from_integer(p - 1) * deg * deg,
                Relation::Eq,
                format!("{context}, row {i}"),
            ));
        }
        total += lhs;
    }
    out.push(rat_report(
        "S1.1",
        Ratio::from_integer((p - 1) * ctx.order_v() as i128),
        total,
        Relation::Eq,
        context,
    ));
    Ok(out)
}

/// Induced-value closed forms for the three test characters supported on
/// (stabilizer) x (cyclic of v) and its variants.
pub fn check_induced_formulas(
    ctx: &GvContext,
    v: &VecP,
) -> Result<Vec<IdentityReport>, OracleError> {
    let mut out = Vec::new();
    let v_idx = ctx.translation_index(v)?;
    let data = stabilizer_data(ctx, v_idx)?;
    let coprime_c = data.c_handle.order() % u64::from(ctx.p) != 0;
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, v_idx)?;
    let n_handle = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, v_idx)?;
    let p = i128::from(ctx.p);
    let context = format!("v = {v}");

    if coprime_c {
        let ca = product_handle(&ctx.gv.view, &data.c_handle, &a_handle)?;
        let ca_cg = ClassifiedGroup::new(ca.to_view(&ctx.gv.view, "CA")?)?;
        // eta: p off the translation-trivial part, 0 on it
        let eta = class_function_from(&ca_cg, |e| if e.trans.is_zero() { 0 } else { p })?;
        let ind = induce(&ctx.gv, &ca_cg, &eta)?;
        out.extend(check_meeting_values(
            ctx,
            &ca_cg,
            &ind,
            "S2.eta",
            &context,
            |e| !e.trans.is_zero(),
            |ctx, e| {
                let cvc = ctx.fixed_space_size_of(e)?;
                Ok(Ratio::from_integer(
                    (n_handle.order() / data.c_handle.order()) as i128 * cvc as i128,
                ))
            },
        )?);

        // eta1: |C| p on elements nontrivial in both parts
        let csize = data.c_handle.order() as i128;
        let eta1 = class_function_from(&ca_cg, |e| {
            if !e.lin.is_identity() && !e.trans.is_zero() {
                csize * p
            } else {
                0
            }
        })?;
        let ind1 = induce(&ctx.gv, &ca_cg, &eta1)?;
        if data.c_handle.order() == 1 {
            let violations = ind1.values.iter().filter(|x| !x.is_zero()).count();
            out.push(agg_report("S2.eta1", violations, format!("{context} (trivial stabilizer)")));
        } else {
            out.extend(check_meeting_values(
                ctx,
                &ca_cg,
                &ind1,
                "S2.eta1",
                &context,
                |e| !e.lin.is_identity() && !e.trans.is_zero(),
                |ctx, e| {
                    let cvc = ctx.fixed_space_size_of(e)?;
                    Ok(Ratio::from_integer(n_handle.order() as i128 * cvc as i128))
                },
            )?);
        }
    }

    // eta2 family: one check per prime-order class representative in the stabilizer
    for &g_idx in &data.reps[1..] {
        let q = ctx.gv.view.element_order_idx(g_idx)?;
        if !is_prime(q) {
            continue;
        }
        let q = q as i128;
        let c0 = SubgroupHandle::cyclic(&ctx.gv.view, g_idx)?;
        let n0 = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, g_idx)?;
        let cvg0 = ctx.fixed_space_size(g_idx)? as i128;
        let c0a = product_handle(&ctx.gv.view, &c0, &a_handle)?;
        let c0a_cg = ClassifiedGroup::new(c0a.to_view(&ctx.gv.view, "C0A")?)?;
        let eta2 = class_function_from(&c0a_cg, |e| if e.trans.is_zero() { 0 } else { p })?;
        let ind2 = induce(&ctx.gv, &c0a_cg, &eta2)?;
        let gctx = format!("{context}, g = {}", ctx.gv.view.element(g_idx));

        let mixed_cap = Ratio::new(p * n0.order() as i128 * cvg0, q);
        let pure_value = Ratio::new(n_handle.order() as i128 * ctx.order_v() as i128, q);
        let mut total = Rat::zero();
        let mut violations = 0usize;
        for (k, rep) in ctx.gv.classes.rep.iter().enumerate() {
            let val = as_rat(ind2.value(k), "induced value")?;
            total += val;
            // classify the class by its intersection with the support
            let mut mixed = false;
            let mut pure = false;
            for m in c0a_cg
                .view
                .elements()
                .iter()
                .filter_map(|e| ctx.gv.view.index_of(e))
            {
                if ctx.gv.classes.class_of[m] != k {
                    continue;
                }
                let e = ctx.gv.view.element(m);
                if e.trans.is_zero() {
                    continue;
                }
                if e.lin.is_identity() {
                    pure = true;
                } else {
                    mixed = true;
                }
            }
            let _ = rep;
            if pure && mixed {
                violations += 1; // support classes must be homogeneous
            } else if pure {
                if val != pure_value {
                    violations += 1;
                }
            } else if mixed {
                if val > mixed_cap {
                    violations += 1;
                }
            } else if !val.is_zero() {
                violations += 1;
            }
        }
        out.push(agg_report("S2.eta2", violations, gctx.clone()));
        let sum_cap = Ratio::from_integer(p - 1) * pure_value
            + Ratio::from_integer((q - 1) * (p - 1)) * mixed_cap;
        out.push(rat_report("S2.eta2.sum", total, sum_cap, Relation::Le, gctx));
    }
    Ok(out)
}

/// Shared pattern: an induced character must vanish off the classes meeting
/// the support set and take a predicted value (from the linear part of a
/// meeting element) on them.
fn check_meeting_values<S, V>(
    ctx: &GvContext,
    sub: &ClassifiedGroup,
    induced: &ClassFunction,
    id: &str,
    context: &str,
    in_support: S,
    predicted: V,
) -> Result<Vec<IdentityReport>, OracleError>
where
    S: Fn(&crate::groups::GvElement) -> bool,
    V: Fn(&GvContext, &crate::groups::GvElement) -> Result<Rat, OracleError>,
{
    let mut out = Vec::new();
    let mut off_support_violations = 0usize;
    for k in 0..ctx.gv.num_classes() {
        // least meeting element of the class, if any
        let mut meet: Option<usize> = None;
        for e in sub.view.elements() {
            if !in_support(e) {
                continue;
            }
            let idx = ctx
                .gv
                .view
                .index_of(e)
                .ok_or_else(|| OracleError::Internal("subgroup element missing".into()))?;
            if ctx.gv.classes.class_of[idx] == k {
                meet = Some(idx);
                break;
            }
        }
        let val = as_rat(induced.value(k), "induced value")?;
        match meet {
            Some(idx) => {
                let want = predicted(ctx, ctx.gv.view.element(idx))?;
                out.push(rat_report(
                    id,
                    val,
                    want,
                    Relation::Eq,
                    format!("{context}, class {k}"),
                ));
            }
            None => {
                if !val.is_zero() {
                    off_support_violations += 1;
                }
            }
        }
    }
    out.push(agg_report(
        &format!("{id}.vanish"),
        off_support_violations,
        context.to_string(),
    ));
    Ok(out)
}

impl GvContext {
    /// |C_V(x)| read off an element rather than an index.
    pub fn fixed_space_size_of(&self, e: &crate::groups::GvElement) -> Result<u64, PaperqError> {
        Ok(crate::groups::fixed_vectors(&e.lin, self.p, self.n)?.len() as u64)
    }
}

/// Second identity family: with C = C_G(v) of order coprime to |V| and
/// A = <v>, the aggregate and per-row identities tying the twisted norms over
/// C x A to fixed-point sums and to the product-decomposition coefficients.
pub fn check_identities_s2(ctx: &GvContext, v: &VecP) -> Result<Vec<IdentityReport>, OracleError> {
    let v_idx = ctx.translation_index(v)?;
    let data = stabilizer_data(ctx, v_idx)?;
    if data.c_handle.order() % u64::from(ctx.p) == 0 {
        return Err(OracleError::Hypothesis(
            "stabilizer order not coprime to |V|".into(),
        ));
    }
    let p = i128::from(ctx.p);
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, v_idx)?;
    let c_sub = SubTable::new(&ctx.gv.view, &data.c_handle, "C")?;
    let a_sub = SubTable::new(&ctx.gv.view, &a_handle, "A")?;
    let ca = product_handle(&ctx.gv.view, &data.c_handle, &a_handle)?;
    let ca_cg = ClassifiedGroup::new(ca.to_view(&ctx.gv.view, "CA")?)?;
    let csize = data.c_handle.order() as i128;
    let eta = class_function_from(&ca_cg, |e| if e.trans.is_zero() { 0 } else { p })?;
    let eta1 = class_function_from(&ca_cg, |e| {
        if !e.lin.is_identity() && !e.trans.is_zero() {
            csize * p
        } else {
            0
        }
    })?;
    let context = format!("v = {v}");
    let rho_c = regular_character(&c_sub.cg);
    let irr0_members = irr0(ctx, &data.c_handle, v_idx)?.members;

    let mut out = Vec::new();
    let mut total_eta = Rat::zero();
    let mut total_eta1 = Rat::zero();
    let mut reconstruction_violations = 0usize;
    let mut s24_violations = 0usize;
    for (i, chi) in ctx.table.irreducibles.iter().enumerate() {
        let taus = crate::chartab::product_decompose(&ctx.gv, chi, &c_sub, &a_sub)?;
        // reconstruction of the restriction from the coefficients
        for (ca_class, members) in ca_cg.classes.classes.iter().enumerate() {
            let e = ca_cg.view.element(members[0]);
            let c_part = crate::groups::GvElement::linear(e.lin.clone(), e.trans.len())
                .map_err(OracleError::Group)?;
            let a_part = crate::groups::GvElement::translation(
                e.trans.clone(),
                ctx.gv.view.mat_dim(),
            )
            .map_err(OracleError::Group)?;
            let cc = c_sub
                .cg
                .class_of_element(&c_part)
                .ok_or_else(|| OracleError::Internal("linear part escapes C".into()))?;
            let ac = a_sub
                .cg
                .class_of_element(&a_part)
                .ok_or_else(|| OracleError::Internal("translation part escapes A".into()))?;
            let mut got = Cyclotomic::zero(1);
            for (tau, lam) in taus.iter().zip(&a_sub.table.irreducibles) {
                got = got.add(&tau.value(cc).mul(lam.value(ac)));
            }
            let gv_class = ctx
                .gv
                .class_of_element(ca_cg.view.element(members[0]))
                .ok_or_else(|| OracleError::Internal("CA element escapes GV".into()))?;
            if !got.sub(chi.value(gv_class)).is_zero() {
                reconstruction_violations += 1;
            }
            let _ = ca_class;
        }

        let te = twisted_norm(ctx, chi, &ca_cg, &eta)?;
        let te1 = twisted_norm(ctx, chi, &ca_cg, &eta1)?;
        total_eta += te;
        total_eta1 += te1;

        // pairwise-difference forms of the two twisted norms
        let mut pair_sum = Rat::zero();
        let mut pair_sum_off = Rat::zero();
        for (li, tl) in taus.iter().enumerate() {
            for tm in &taus[li + 1..] {
                let d = tl.sub(tm);
                let ip = inner_product(&c_sub.cg, &d, &d)?;
                let ip = as_rat(&ip, "difference norm")?;
                pair_sum += ip;
                pair_sum_off += sum_norms_off_identity_sub(&c_sub.cg, &d)?;
                // nonzero integer multiples of the regular character have
                // self-inner-product at least |C|
                if !d.is_zero() && is_integer_multiple_of_regular(&c_sub.cg, &d) {
                    let lhs = as_rat(&inner_product(&c_sub.cg, &d, &d)?, "norm")?;
                    if lhs < Ratio::from_integer(csize) {
                        s24_violations += 1;
                    }
                }
                let _ = &rho_c;
            }
        }
        out.push(rat_report(
            "S2.3",
            te,
            pair_sum,
            Relation::Eq,
            format!("{context}, row {i}"),
        ));
        out.push(rat_report(
            "S2.8",
            te1,
            pair_sum_off,
            Relation::Eq,
            format!("{context}, row {i}"),
        ));
        if irr0_members.contains(&i) {
            out.push(rat_report(
                "S2.5",
                te,
                Ratio::from_integer(p - 1),
                Relation::Ge,
                format!("{context}, row {i}"),
            ));
        }
    }
    out.push(agg_report("S2.2", reconstruction_violations, context.clone()));
    out.push(agg_report("S2.4", s24_violations, context.clone()));

    let s1: i128 = data.fixed_sizes.iter().map(|&x| x as i128).sum();
    let s2: i128 = data.fixed_sizes[1..].iter().map(|&x| x as i128).sum();
    out.push(rat_report(
        "S2.1",
        Ratio::from_integer((p - 1) * s1),
        total_eta,
        Relation::Eq,
        context.clone(),
    ));
    out.push(rat_report(
        "S2.7",
        Ratio::from_integer((p - 1) * csize * s2),
        total_eta1,
        Relation::Eq,
        context,
    ));
    Ok(out)
}

/// sum over non-identity elements of the subgroup's own view of |f(x)|^2.
fn sum_norms_off_identity_sub(sub: &ClassifiedGroup, f: &ClassFunction) -> Result<Rat, OracleError> {
    let id = sub.identity_class();
    let mut s = Cyclotomic::zero(1);
    for (c, class) in sub.classes.classes.iter().enumerate() {
        if c == id {
            continue;
        }
        s = s.add(
            &f.value(c)
                .norm_sq()
                .scale(Ratio::from_integer(class.len() as i128)),
        );
    }
    as_rat(&s, "norm sum")
}

/// Third identity family: dual side, fixing a linear element g with order
/// coprime to |V|; ties twisted norms over <g> x C_V(g) to orbit counts and
/// the dual decomposition coefficients.
pub fn check_identities_s3(ctx: &GvContext, g_idx: usize) -> Result<Vec<IdentityReport>, OracleError> {
    let o = ctx.gv.view.element_order_idx(g_idx)?;
    if g_idx == ctx.gv.view.identity_index() || o % u64::from(ctx.p) == 0 {
        return Err(OracleError::Hypothesis(
            "element trivial or order not coprime to |V|".into(),
        ));
    }
    let dual = dual_decomposition(ctx, g_idx)?;
    let context = format!("g = {}", ctx.gv.view.element(g_idx));
    let mut out = Vec::new();

    // direct-sum hypothesis for every nontrivial element of A
    let mut split_violations = 0usize;
    for &a_idx in dual.a_handle.members() {
        if a_idx == ctx.gv.view.identity_index() {
            continue;
        }
        let a_cyc = SubgroupHandle::cyclic(&ctx.gv.view, a_idx)?;
        let split = fixed_and_commutator_split(&ctx.gv.view, &a_cyc, ctx.p, ctx.n)?;
        if !split.direct_sum {
            split_violations += 1;
        }
    }
    out.push(agg_report("split.direct", split_violations, context.clone()));

    let ac = product_handle(&ctx.gv.view, &dual.a_handle, &dual.c_handle)?;
    let ac_cg = ClassifiedGroup::new(ac.to_view(&ctx.gv.view, "AC")?)?;
    let a_order = dual.a_handle.order() as i128;
    let c_order = dual.c_handle.order() as i128;
    let eta = class_function_from(&ac_cg, |e| if e.lin.is_identity() { 0 } else { a_order })?;
    let eta1 = class_function_from(&ac_cg, |e| {
        if !e.lin.is_identity() && !e.trans.is_zero() {
            a_order * c_order
        } else {
            0
        }
    })?;

    let in_g = irr_g_from(ctx, g_idx, &dual)?.members;
    let mut total_eta = Rat::zero();
    let mut total_eta1 = Rat::zero();
    for (i, chi) in ctx.table.irreducibles.iter().enumerate() {
        let te = twisted_norm(ctx, chi, &ac_cg, &eta)?;
        let te1 = twisted_norm(ctx, chi, &ac_cg, &eta1)?;
        total_eta += te;
        total_eta1 += te1;
        let taus = &dual.taus[i];
        let mut sum4 = Rat::zero();
        for tau in taus {
            sum4 += sum_norms_off_identity_sub(&dual.a_sub.cg, tau)?;
        }
        out.push(rat_report(
            "S3.4",
            te,
            sum4,
            Relation::Eq,
            format!("{context}, row {i}"),
        ));
        let mut sum7 = Rat::zero();
        for (li, tl) in taus.iter().enumerate() {
            for tm in &taus[li + 1..] {
                sum7 += sum_norms_off_identity_sub(&dual.a_sub.cg, &tl.sub(tm))?;
            }
        }
        out.push(rat_report(
            "S3.7",
            te1,
            sum7,
            Relation::Eq,
            format!("{context}, row {i}"),
        ));
        if in_g.contains(&i) {
            out.push(rat_report(
                "S3.5",
                te,
                Ratio::from_integer(a_order - 1),
                Relation::Ge,
                format!("{context}, row {i}"),
            ));
        }
    }

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
        max_term = max_term.max(na.order() as i128 * ctx.fixed_space_size(a_idx)? as i128);
    }
    out.push(rat_report(
        "S3.3",
        Ratio::new((n_na - 1) * n_cgac * max_term, c_order),
        total_eta,
        Relation::Ge,
        context.clone(),
    ));
    out.push(rat_report(
        "S3.3b",
        Ratio::from_integer((n_na - 1) * (n_cgac - 1) * max_term),
        total_eta1,
        Relation::Ge,
        context.clone(),
    ));
    if is_prime(o) {
        out.push(rat_report(
            "S3.3a",
            Ratio::from_integer(cga.order() as i128 * (a_order - 1) * n_cgac),
            total_eta,
            Relation::Ge,
            context.clone(),
        ));
        out.push(rat_report(
            "S3.3c",
            Ratio::from_integer(cga.order() as i128 * (a_order - 1) * (n_cgac - 1) * c_order),
            total_eta1,
            Relation::Ge,
            context.clone(),
        ));
        // prime-order simplifications of the orbit count and the max term
        out.push(rat_report(
            "S3.prime",
            Ratio::from_integer(n_na - 1),
            Ratio::new((a_order - 1) * cga.order() as i128, n_handle.order() as i128),
            Relation::Eq,
            context.clone(),
        ));
        out.push(rat_report(
            "S3.prime.max",
            Ratio::from_integer(max_term),
            Ratio::from_integer(n_handle.order() as i128 * c_order),
            Relation::Eq,
            context,
        ));
    }
    Ok(out)
}

/// Conjugacy classes by all-pairs conjugation — no generator tricks.
pub fn brute_classes(view: &FiniteGroupView) -> Result<ConjugacyPartition, OracleError> {
    if view.order() > ORACLE_CAP {
        return Err(OracleError::Hypothesis(format!(
            "order {} above oracle cap {ORACLE_CAP}",
            view.order()
        )));
    }
    let n = view.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut rep = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = Vec::new();
        for g in 0..n {
            let y = view.conj_idx(start, g)?;
            if class_of[y] == usize::MAX {
                class_of[y] = cid;
                members.push(y);
            }
        }
        members.sort_unstable();
        rep.push(members[0]);
        classes.push(members);
    }
    let order = view.order();
    let centralizer_order = classes.iter().map(|c| order / c.len() as u64).collect();
    Ok(ConjugacyPartition {
        classes,
        rep,
        class_of,
        centralizer_order,
    })
}

/// Induction by an explicit right-coset transversal instead of averaging.
pub fn induce_transversal(
    ambient: &ClassifiedGroup,
    sub: &ClassifiedGroup,
    phi: &ClassFunction,
) -> Result<ClassFunction, OracleError> {
    // right cosets H t, transversal by least unseen element
    let mut seen = vec![false; ambient.view.len()];
    let mut transversal = Vec::new();
    for t in 0..ambient.view.len() {
        if seen[t] {
            continue;
        }
        transversal.push(t);
        for h in sub.view.elements() {
            let ht = h
                .mul(ambient.view.element(t))
                .map_err(OracleError::Group)?;
            let idx = ambient
                .view
                .index_of(&ht)
                .ok_or_else(|| OracleError::Internal("coset escapes ambient group".into()))?;
            seen[idx] = true;
        }
    }
    let mut values = Vec::with_capacity(ambient.num_classes());
    for &rep in &ambient.classes.rep {
        let x = ambient.view.element(rep);
        let mut s = Cyclotomic::zero(1);
        for &t in &transversal {
            let te = ambient.view.element(t);
            let conj = te.mul(x).map_err(OracleError::Group)?.mul(
                &te.inverse().map_err(OracleError::Group)?,
            )
            .map_err(OracleError::Group)?;
            if let Some(c) = sub.class_of_element(&conj) {
                s = s.add(phi.value(c));
            }
        }
        values.push(s);
    }
    Ok(ClassFunction::new(ambient, values))
}

/// Pipeline-vs-oracle equivalences: conjugacy partitions and the two
/// induction implementations.
pub fn check_oracles(ctx: &GvContext) -> Result<Vec<IdentityReport>, OracleError> {
    let mut out = Vec::new();
    if ctx.order_gv() > ORACLE_CAP {
        return Ok(out);
    }
    let brute = brute_classes(&ctx.gv.view)?;
    let same = brute.classes == ctx.gv.classes.classes
        && brute.rep == ctx.gv.classes.rep
        && brute.class_of == ctx.gv.classes.class_of;
    out.push(agg_report("oracle.classes", usize::from(!same), String::new()));

    // induction comparison from the translation subgroup
    let v_sub = SubTable::new(&ctx.gv.view, &ctx.v_handle, "V")?;
    let mut violations = 0usize;
    for lam in &v_sub.table.irreducibles {
        let a = induce(&ctx.gv, &v_sub.cg, lam)?;
        let b = induce_transversal(&ctx.gv, &v_sub.cg, lam)?;
        if !a.equals(&b) {
            violations += 1;
        }
    }
    out.push(agg_report("oracle.induction", violations, "from translations".into()));
    Ok(out)
}

/// Exhaustive fusion check on the stabilizer side: for c in C, nontrivial a
/// in <v>, and every element (g,u) of GV,
/// (ca)^{gu} lies in C x A exactly when g normalizes <v> and u is fixed by c^g.
pub fn check_fusion_cv(ctx: &GvContext, v: &VecP) -> Result<Vec<IdentityReport>, OracleError> {
    if ctx.order_gv() > ORACLE_CAP {
        return Ok(Vec::new());
    }
    let v_idx = ctx.translation_index(v)?;
    let data = stabilizer_data(ctx, v_idx)?;
    if data.c_handle.order() % u64::from(ctx.p) == 0 {
        return Err(OracleError::Hypothesis(
            "stabilizer order not coprime to |V|".into(),
        ));
    }
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, v_idx)?;
    let n_handle = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, v_idx)?;
    let ca = product_handle(&ctx.gv.view, &data.c_handle, &a_handle)?;
    let id = ctx.gv.view.identity_index();
    let mut violations = 0usize;
    for &c_idx in data.c_handle.members() {
        for &a_idx in a_handle.members() {
            if a_idx == id {
                continue;
            }
            let ca_elem = ctx.gv.view.mul_idx(c_idx, a_idx)?;
            for t in 0..ctx.gv.view.len() {
                let conj = ctx.gv.view.conj_idx(ca_elem, t)?;
                let in_ca = ca.contains(conj);
                let te = ctx.gv.view.element(t);
                let g_lin = crate::groups::GvElement::linear(te.lin.clone(), ctx.n)
                    .map_err(OracleError::Group)?;
                let g_in_gv = ctx
                    .gv
                    .view
                    .index_of(&g_lin)
                    .ok_or_else(|| OracleError::Internal("linear part escapes GV".into()))?;
                let g_in_n = n_handle.contains(g_in_gv);
                // c^g as a matrix, then its fixed-vector condition on u
                let cg = ctx.gv.view.conj_idx(c_idx, g_in_gv)?;
                let cg_lin = &ctx.gv.view.element(cg).lin;
                let u_fixed = vec_act(&te.trans, cg_lin).map_err(GroupError::Field)? == te.trans;
                if in_ca != (g_in_n && u_fixed) {
                    violations += 1;
                }
            }
        }
    }
    let mut out = vec![agg_report("fusion.cv", violations, format!("v = {v}"))];

    // class-representative count over the fused rectangle
    let mut met = std::collections::BTreeSet::new();
    for &c_idx in data.c_handle.members() {
        for &a_idx in a_handle.members() {
            if a_idx == id {
                continue;
            }
            met.insert(ctx.gv.classes.class_of[ctx.gv.view.mul_idx(c_idx, a_idx)?]);
        }
    }
    let expected = Ratio::new(
        data.c_cg.num_classes() as i128
            * (i128::from(ctx.p) - 1)
            * data.c_handle.order() as i128,
        n_handle.order() as i128,
    );
    out.push(rat_report(
        "S2.count",
        Ratio::from_integer(met.len() as i128),
        expected,
        Relation::Eq,
        format!("v = {v}"),
    ));
    Ok(out)
}

/// Exhaustive fusion check on the dual side: for nontrivial a in <g> and c in
/// C_V(g), and every element (h,u) of GV, (ac)^{hu} lies in A x C exactly when
/// h normalizes <a>, c^h stays in C, and u is fixed by a.
pub fn check_fusion_vc(ctx: &GvContext, g_idx: usize) -> Result<Vec<IdentityReport>, OracleError> {
    if ctx.order_gv() > ORACLE_CAP {
        return Ok(Vec::new());
    }
    let o = ctx.gv.view.element_order_idx(g_idx)?;
    if g_idx == ctx.gv.view.identity_index() || o % u64::from(ctx.p) == 0 {
        return Err(OracleError::Hypothesis(
            "element trivial or order not coprime to |V|".into(),
        ));
    }
    let a_handle = SubgroupHandle::cyclic(&ctx.gv.view, g_idx)?;
    let c_handle = ctx.fixed_translations(g_idx)?;
    let ac = product_handle(&ctx.gv.view, &a_handle, &c_handle)?;
    let id = ctx.gv.view.identity_index();
    let mut violations = 0usize;
    for &a_idx in a_handle.members() {
        if a_idx == id {
            continue;
        }
        let na = normalizer_of_cyclic(&ctx.gv.view, &ctx.g_handle, a_idx)?;
        let a_lin = &ctx.gv.view.element(a_idx).lin;
        for &c_idx in c_handle.members() {
            let ac_elem = ctx.gv.view.mul_idx(a_idx, c_idx)?;
            let c_vec = ctx.gv.view.element(c_idx).trans.clone();
            for t in 0..ctx.gv.view.len() {
                let conj = ctx.gv.view.conj_idx(ac_elem, t)?;
                let in_ac = ac.contains(conj);
                let te = ctx.gv.view.element(t);
                let h_lin = crate::groups::GvElement::linear(te.lin.clone(), ctx.n)
                    .map_err(OracleError::Group)?;
                let h_in_gv = ctx
                    .gv
                    .view
                    .index_of(&h_lin)
                    .ok_or_else(|| OracleError::Internal("linear part escapes GV".into()))?;
                let h_in_na = na.contains(h_in_gv);
                let ch = vec_act(&c_vec, &te.lin).map_err(GroupError::Field)?;
                let ch_elem = crate::groups::GvElement::translation(ch, ctx.gv.view.mat_dim())
                    .map_err(OracleError::Group)?;
                let ch_in_c = ctx
                    .gv
                    .view
                    .index_of(&ch_elem)
                    .map(|i| c_handle.contains(i))
                    .unwrap_or(false);
                let u_fixed = vec_act(&te.trans, a_lin).map_err(GroupError::Field)? == te.trans;
                if in_ac != (h_in_na && ch_in_c && u_fixed) {
                    violations += 1;
                }
            }
        }
    }
    Ok(vec![agg_report(
        "fusion.vc",
        violations,
        format!("g = {}", ctx.gv.view.element(g_idx)),
    )])
}

/// Norm floor over a prime-order subgroup: every irreducible whose
/// restriction to A is not a regular multiple satisfies
/// sum over nontrivial a of |tau(a)|^2 >= |A| - 1.
pub fn robinson_floor(ctx: &GvContext, a_handle: &SubgroupHandle) -> Result<Vec<IdentityReport>, OracleError> {
    if !is_prime(a_handle.order()) {
        return Err(OracleError::Hypothesis("subgroup order is not prime".into()));
    }
    let floor = Ratio::from_integer(a_handle.order() as i128 - 1);
    let mut out = Vec::new();
    for (i, chi) in ctx.table.irreducibles.iter().enumerate() {
        if crate::chartab::is_regular_multiple(&ctx.gv, chi, a_handle)? {
            continue;
        }
        let s = sum_norms_off_identity(ctx, chi, a_handle)?;
        out.push(rat_report(
            "robinson",
            s,
            floor,
            Relation::Ge,
            format!("|A| = {}, row {i}", a_handle.order()),
        ));
    }
    Ok(out)
}

/// Convenience wrapper used by tests: irr_not_regular count at a translation.
pub fn k_at_translation(ctx: &GvContext, v: &VecP) -> Result<usize, OracleError> {
    let idx = ctx.translation_index(v)?;
    Ok(irr_not_regular(ctx, idx)?.cardinality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpalg::MatP;
    use crate::groups::{linear_group, DEFAULT_CAP};

    fn m(rows: &[Vec<i64>], p: u16) -> MatP {
        MatP::new(rows, p).unwrap()
    }

    fn ctx(label: &str, gens: &[MatP], p: u16, n: usize) -> GvContext {
        let g = linear_group(label, gens, n, DEFAULT_CAP).unwrap();
        GvContext::build(&g, p, n, DEFAULT_CAP).unwrap()
    }

    fn s3() -> GvContext {
        ctx("C2", &[m(&[vec![2]], 3)], 3, 1)
    }

    #[test]
    fn s1_identities_on_s3() {
        let c = s3();
        let v = VecP::new(&[1], 3).unwrap();
        let reports = check_identity_s1(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let total = reports.iter().find(|r| r.identity_id == "S1.1").unwrap();
        assert_eq!(total.lhs, "6");
        assert_eq!(total.rhs, "6");
    }

    #[test]
    fn s1_identities_on_order20() {
        let c = ctx("C4", &[m(&[vec![2]], 5)], 5, 1);
        let v = VecP::new(&[1], 5).unwrap();
        let reports = check_identity_s1(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok));
        let total = reports.iter().find(|r| r.identity_id == "S1.1").unwrap();
        assert_eq!(total.lhs, "20");
    }

    #[test]
    fn induced_closed_forms_on_s3() {
        let c = s3();
        let v = VecP::new(&[1], 3).unwrap();
        let reports = check_induced_formulas(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        // the class of the order-3 elements carries the value 6 = |N:C| |C_V(1)|
        let on_support: Vec<_> = reports
            .iter()
            .filter(|r| r.identity_id == "S2.eta")
            .collect();
        assert!(on_support.iter().any(|r| r.lhs == "6"));
    }

    #[test]
    fn s2_identities_on_s3() {
        let c = s3();
        let v = VecP::new(&[1], 3).unwrap();
        let reports = check_identities_s2(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let total = reports.iter().find(|r| r.identity_id == "S2.1").unwrap();
        assert_eq!(total.lhs, "6");
    }

    #[test]
    fn s3_identities_on_s3_instance() {
        let c = s3();
        let g_idx = *c
            .g_handle
            .members()
            .iter()
            .find(|&&i| i != c.gv.view.identity_index())
            .unwrap();
        let reports = check_identities_s3(&c, g_idx).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
    }

    #[test]
    fn brute_classes_match() {
        let c = s3();
        let reports = check_oracles(&c).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let c20 = ctx("C4", &[m(&[vec![2]], 5)], 5, 1);
        assert_eq!(brute_classes(&c20.gv.view).unwrap().num_classes(), 5);
    }

    #[test]
    fn fusion_on_s3() {
        let c = s3();
        let v = VecP::new(&[1], 3).unwrap();
        let reports = check_fusion_cv(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let g_idx = *c
            .g_handle
            .members()
            .iter()
            .find(|&&i| i != c.gv.view.identity_index())
            .unwrap();
        let reports = check_fusion_vc(&c, g_idx).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
    }

    #[test]
    fn nontrivial_stabilizer_branches() {
        // diag(1,2) on GF(3)^2 fixes v = (1,0), so C = G has order 2 and the
        // eta1/eta2 paths are exercised
        let c = ctx("diag", &[m(&[vec![1, 0], vec![0, 2]], 3)], 3, 2);
        let v = VecP::new(&[1, 0], 3).unwrap();
        let reports = check_induced_formulas(&c, &v).unwrap();
        assert!(reports.iter().any(|r| r.identity_id == "S2.eta1"));
        assert!(reports.iter().any(|r| r.identity_id == "S2.eta2"));
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let reports = check_identities_s2(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
        let reports = check_fusion_cv(&c, &v).unwrap();
        assert!(reports.iter().all(|r| r.ok), "{reports:?}");
    }

    #[test]
    fn robinson_floor_on_s3() {
        let c = s3();
        let v_idx = c.translation_index(&VecP::new(&[1], 3).unwrap()).unwrap();
        let a = SubgroupHandle::cyclic(&c.gv.view, v_idx).unwrap();
        let reports = robinson_floor(&c, &a).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.ok));
    }
}
