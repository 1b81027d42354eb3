//! Gorenstein detection and Gorenstein covers: the rank criterion on the
//! constant terms of `H + N`, the third-diagonal test for lex-segment cells,
//! inclusion checking by division, cover search over a cell, and layered
//! bounds for the Gorenstein colength of a quotient.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cells::{
    canonical_deformation, for_each_assignment, pow_u128, syzygy_deformation_from_basis,
};
use crate::error::{Error, Result};
use crate::hbm::{self, decode_cellpoint, CellPoint, Deformation};
use crate::localstd::{
    grauert_divide, lt_ideal_local, reduced_standard_basis, IdealPresentation, StandardBasis,
};
use crate::monomial::Monomial;
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};
use crate::staircase::Staircase;

/// Largest colength gap the Gorenstein-colength search will explore.
const MAX_SEARCH_GAP: u64 = 12;
/// Number of witnesses retained per search layer.
const WITNESS_CAP: usize = 8;

/// Minimal generator data read off the constant terms of `H + N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankProfile {
    /// Minimal number of generators of the ideal of maximal minors.
    pub mu: usize,
    /// Rank of the constant-term matrix.
    pub rank_const: usize,
}

/// How a cover or colength search walks the parameter space.
#[derive(Debug, Clone)]
pub enum SearchStrategy {
    /// Enumerate every point over `F_p`, stopping if more than `budget`
    /// candidates would be evaluated.  Exclusions are exhaustive.
    ExhaustiveFp { prime: u64, budget: u64 },
    /// Sample integer points over the rationals; results are witnesses only.
    RandomQ { samples: u64, bound: i64, seed: u64 },
}

/// A Gorenstein ideal contained in the target, together with where it was
/// found.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub cover_ideal: IdealPresentation,
    /// Chart coordinates of the cover when its cell carries the chart.
    pub cell_point: Option<CellPoint>,
    pub colength_gap: u64,
    /// True when every smaller gap has been exhaustively excluded.
    pub certified_minimal: bool,
}

impl CoverResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "point": self
                .cell_point
                .as_ref()
                .map(|p| p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "generators": self
                .cover_ideal
                .gens()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>(),
            "gap": self.colength_gap,
            "gorenstein": true,
            "minimal": if self.certified_minimal { "exact" } else { "upper-bound" },
        })
    }
}

/// Outcome of a Gorenstein-colength search.
#[derive(Debug, Clone)]
pub struct GclBound {
    pub target_colength: u64,
    /// A cover exists at this gap, so gcl ≤ value.
    pub value: u64,
    /// Every gap below this has been exhaustively excluded, so gcl ≥ this.
    pub lower_bound: u64,
    pub witnesses: Vec<CoverResult>,
}

impl GclBound {
    pub fn exact(&self) -> bool {
        self.lower_bound >= self.value
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "target_colength": self.target_colength,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "exact": self.exact(),
            "witnesses": self
                .witnesses
                .iter()
                .map(CoverResult::to_json)
                .collect::<Vec<_>>(),
        })
    }
}

/// The constant-term matrix of `H + N` and its rank: `y^{d_j}` contributes a
/// unit exactly when `d_j = 0`, `−x` contributes nothing, and each entry of
/// `N` contributes its constant coefficient.  The minimal generator count of
/// the ideal of maximal minors is `t + 1 − rank`.
pub fn rank_profile(n: &Deformation) -> RankProfile {
    let t = n.staircase().t();
    let rank_const = scalar_rank(constant_rows(n));
    RankProfile {
        mu: t + 1 - rank_const,
        rank_const,
    }
}

/// The constant-term matrix of `H + N` as rows.
fn constant_rows(n: &Deformation) -> Vec<Vec<Scalar>> {
    let e = n.staircase();
    let t = e.t();
    let field = n.field();
    let mut rows = Vec::with_capacity(t + 1);
    for i in 1..=t + 1 {
        let mut row = Vec::with_capacity(t);
        for j in 1..=t {
            let mut c = n.entry(i, j).coeff(0);
            if i == j && e.d(j) == 0 {
                c = c.add(&Scalar::one(field));
            }
            row.push(c);
        }
        rows.push(row);
    }
    rows
}

fn scalar_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].mul(&inv);
            for c in col..ncols {
                let sub = rows[rank][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&sub);
            }
        }
        rank += 1;
    }
    rank
}

/// The third-diagonal criterion on a lex-segment cell: a point presents a
/// Gorenstein ideal exactly when every constant coefficient on the second
/// subdiagonal is nonzero.
pub fn is_gorenstein_point(p: &CellPoint) -> Result<bool> {
    let e = p.staircase();
    if !e.classify().lex_segment {
        return Err(Error::NotLexSegment);
    }
    let t = e.t();
    Ok((3..=t + 1).all(|i| p.coord(i, i - 2, 0).is_some_and(|c| !c.is_zero())))
}

/// The number of minimal generators of the ideal, computed as the colength
/// jump from `J` to `mJ`.
pub fn minimal_generator_count(j: &IdealPresentation) -> Result<u64> {
    let (lt, _) = lt_ideal_local(j)?;
    let mut m_gens = Vec::with_capacity(2 * j.gens().len());
    for g in j.gens() {
        m_gens.push(g.mul_monomial(&Monomial::new(1, 0)));
        m_gens.push(g.mul_monomial(&Monomial::new(0, 1)));
    }
    let jm = IdealPresentation::new(m_gens)?.with_socle_hint(lt.socle_degree() + 1);
    let (lt_m, _) = lt_ideal_local(&jm)?;
    Ok(lt_m.colength() - lt.colength())
}

/// Is the candidate ideal contained in the target?  Every candidate generator
/// must reduce to zero against the reduced standard basis of the target.
pub fn is_cover(target: &IdealPresentation, candidate: &IdealPresentation) -> Result<bool> {
    if target.field() != candidate.field() {
        return Err(Error::ShapeMismatch(
            "cover comparison requires a single coefficient field".into(),
        ));
    }
    let basis = reduced_standard_basis(target)?;
    let s = basis.staircase().socle_degree();
    inclusion(&basis, s, candidate)
}

fn inclusion(
    target_basis: &StandardBasis,
    target_socle: u32,
    candidate: &IdealPresentation,
) -> Result<bool> {
    for g in candidate.gens() {
        if !grauert_divide(g, target_basis, target_socle + 1)?
            .remainder
            .is_zero()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Presents a 2-generated ideal by a minimal generating pair: two reduced
/// basis elements whose images stay independent modulo the constant syzygy
/// relations.  Falls back to the full basis when no pair qualifies.
fn minimal_presentation(rb: &StandardBasis) -> Result<IdealPresentation> {
    let e = rb.staircase();
    let s = e.socle_degree();
    let t = e.t();
    let field = rb.field();
    let full =
        |rb: &StandardBasis| IdealPresentation::new(rb.elements().to_vec()).map(|j| j.with_socle_hint(s));
    let Ok(n) = syzygy_deformation_from_basis(rb) else {
        return full(rb);
    };
    let base = constant_rows(&n);
    for a in 0..=t {
        for b in a + 1..=t {
            let mut rows = base.clone();
            for (i, row) in rows.iter_mut().enumerate() {
                for k in [a, b] {
                    row.push(if i == k {
                        Scalar::one(field)
                    } else {
                        Scalar::zero(field)
                    });
                }
            }
            if scalar_rank(rows) == t + 1 {
                return IdealPresentation::new(vec![rb.element(a).clone(), rb.element(b).clone()])
                    .map(|j| j.with_socle_hint(s));
            }
        }
    }
    full(rb)
}

fn strategy_field(strategy: &SearchStrategy) -> Result<FieldTag> {
    match strategy {
        SearchStrategy::ExhaustiveFp { prime, .. } => FieldTag::fp(*prime),
        SearchStrategy::RandomQ { .. } => Ok(FieldTag::Q),
    }
}

fn reduce_poly(f: &BiPoly, tag: FieldTag) -> Result<BiPoly> {
    let mut out = BiPoly::zero(tag, f.cap());
    for (m, c) in f.iter() {
        out.add_assign_term(m, &c.convert(tag)?);
    }
    Ok(out)
}

/// Re-expresses the presentation over the search field; rational generators
/// reduce modulo `p`.
fn reduce_ideal(j: &IdealPresentation, tag: FieldTag) -> Result<IdealPresentation> {
    if j.field() == tag {
        return Ok(j.clone());
    }
    let gens = j
        .gens()
        .iter()
        .map(|f| reduce_poly(f, tag))
        .collect::<Result<Vec<_>>>()?;
    let out = IdealPresentation::new(gens)?;
    Ok(match j.socle_hint() {
        Some(s) => out.with_socle_hint(s),
        None => out,
    })
}

/// Validates one candidate point as a cover of the target: Gorenstein by the
/// rank criterion, included by division, and re-certified through its reduced
/// basis.
fn point_cover(
    target_basis: &StandardBasis,
    target_socle: u32,
    p: &CellPoint,
    gap: u64,
) -> Result<Option<CoverResult>> {
    let n = decode_cellpoint(p);
    if rank_profile(&n).mu != 2 {
        return Ok(None);
    }
    let e = p.staircase();
    let minors = n.signed_minors(Cap::Unbounded)?;
    let cand = IdealPresentation::new(minors)?.with_socle_hint(e.socle_degree());
    if !inclusion(target_basis, target_socle, &cand)? {
        return Ok(None);
    }
    let rb = reduced_standard_basis(&cand)?;
    if rb.staircase() != e {
        return Err(Error::Internal("cover candidate escaped its cell".into()));
    }
    Ok(Some(CoverResult {
        cover_ideal: minimal_presentation(&rb)?,
        cell_point: Some(p.clone()),
        colength_gap: gap,
        certified_minimal: false,
    }))
}

/// Searches the canonical family of `e` for Gorenstein ideals contained in
/// the target.  Extra points are evaluated first; the enumeration order is
/// deterministic, and duplicate points are skipped.
pub fn cover_search(
    target: &IdealPresentation,
    e: &Staircase,
    strategy: &SearchStrategy,
    extra_points: &[CellPoint],
) -> Result<Vec<CoverResult>> {
    let flags = e.classify();
    if !flags.lex_segment {
        return Err(Error::NotLexSegment);
    }
    if !flags.gorenstein_admissible {
        return Err(Error::NotGorensteinAdmissible);
    }
    let field = strategy_field(strategy)?;
    let tf = reduce_ideal(target, field)?;
    let basis = reduced_standard_basis(&tf)?;
    let c_t = basis.staircase().colength();
    let s_t = basis.staircase().socle_degree();
    if e.colength() < c_t {
        return Err(Error::Precondition(
            "the cover staircase has smaller colength than the target ideal".into(),
        ));
    }
    let gap = e.colength() - c_t;
    let slots = hbm::template_slots(e);

    let mut results = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let consider = |p: CellPoint,
                        results: &mut Vec<CoverResult>,
                        seen: &mut BTreeSet<String>|
     -> Result<()> {
        if !seen.insert(p.to_string()) {
            return Ok(());
        }
        if !is_gorenstein_point(&p)? {
            return Ok(());
        }
        if let Some(mut w) = point_cover(&basis, s_t, &p, gap)? {
            w.certified_minimal = gap == 0;
            results.push(w);
        }
        Ok(())
    };

    for p in extra_points {
        if p.staircase() != e || p.field() != field {
            return Err(Error::ShapeMismatch(
                "extra points must lie on the search staircase over the search field".into(),
            ));
        }
        consider(p.clone(), &mut results, &mut seen)?;
    }
    match strategy {
        SearchStrategy::ExhaustiveFp { prime, budget } => {
            let count = pow_u128(*prime, slots.len()).ok_or(Error::BudgetExceeded(*budget))?;
            if count > u128::from(*budget) {
                return Err(Error::BudgetExceeded(*budget));
            }
            for_each_assignment(*prime, slots.len(), |coeffs| {
                let coords = coeffs
                    .iter()
                    .map(|&a| Scalar::from_int(field, a as i64))
                    .collect();
                let p = CellPoint::new(e.clone(), field, coords)?;
                consider(p, &mut results, &mut seen)
            })?;
        }
        SearchStrategy::RandomQ {
            samples,
            bound,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let b = (*bound).max(1);
            for _ in 0..*samples {
                let coords = (0..slots.len())
                    .map(|_| Scalar::from_int(field, rng.gen_range(-b..=b)))
                    .collect();
                let p = CellPoint::new(e.clone(), field, coords)?;
                consider(p, &mut results, &mut seen)?;
            }
        }
    }
    Ok(results)
}

/// Bounds the Gorenstein colength of the quotient by the target: the least
/// colength gap at which a Gorenstein ideal inside the target exists.  Gap 0
/// is decided by the generator count, gap 1 by enumerating the covers that
/// contain `m` times the target (complete over a prime field), and larger
/// gaps by walking staircases and their truncated families.  Extra points
/// are consulted before each layer.
pub fn gcl_bound(
    target: &IdealPresentation,
    strategy: &SearchStrategy,
    extra_points: &[CellPoint],
) -> Result<GclBound> {
    let field = strategy_field(strategy)?;
    let tf = reduce_ideal(target, field)?;
    let basis = reduced_standard_basis(&tf)?;
    let e_t = basis.staircase().clone();
    let c = e_t.colength();
    let s_t = e_t.socle_degree();

    if minimal_generator_count(&tf)? == 2 {
        let point = canonical_deformation(&tf).ok().and_then(|r| r.point);
        let witness = CoverResult {
            cover_ideal: minimal_presentation(&basis)?,
            cell_point: point,
            colength_gap: 0,
            certified_minimal: true,
        };
        return Ok(GclBound {
            target_colength: c,
            value: 0,
            lower_bound: 0,
            witnesses: vec![witness],
        });
    }

    let mut extras: Vec<(u64, CellPoint)> = Vec::new();
    for p in extra_points {
        if p.field() != field {
            return Err(Error::ShapeMismatch(
                "extra points must live over the search field".into(),
            ));
        }
        let pc = p.staircase().colength();
        if pc >= c {
            extras.push((pc - c, p.clone()));
        }
    }
    extras.sort_by_key(|(gap, _)| *gap);

    let budget_tag = match strategy {
        SearchStrategy::ExhaustiveFp { budget, .. } => *budget,
        SearchStrategy::RandomQ { samples, .. } => *samples,
    };
    let mut spent: u64 = 0;
    let mut lower_bound: u64 = 1;
    for gap in 1..=MAX_SEARCH_GAP {
        let mut witnesses = Vec::new();
        for (g, p) in &extras {
            if *g == gap {
                if let Some(w) = point_cover(&basis, s_t, p, *g)? {
                    witnesses.push(w);
                }
            }
        }
        if !witnesses.is_empty() {
            return Ok(finish(c, gap, lower_bound, witnesses));
        }

        let complete = match strategy {
            SearchStrategy::ExhaustiveFp { prime, budget } => {
                witnesses = if gap == 1 {
                    hyperplane_layer_fp(&basis, s_t, *prime, *budget, &mut spent)?
                } else {
                    family_layer_fp(&basis, s_t, c + gap, gap, *prime, *budget, &mut spent)?
                };
                true
            }
            SearchStrategy::RandomQ {
                samples,
                bound,
                seed,
            } => {
                witnesses = if gap == 1 {
                    hyperplane_layer_q(&basis, s_t, *samples, *bound, *seed)?
                } else {
                    family_layer_q(
                        &basis,
                        s_t,
                        c + gap,
                        gap,
                        *samples,
                        *bound,
                        seed.wrapping_add(gap),
                    )?
                };
                false
            }
        };
        if !witnesses.is_empty() {
            return Ok(finish(c, gap, lower_bound, witnesses));
        }
        if complete {
            lower_bound = gap + 1;
        }
    }
    Err(Error::BudgetExceeded(budget_tag))
}

fn finish(c: u64, gap: u64, lower_bound: u64, mut witnesses: Vec<CoverResult>) -> GclBound {
    let exact = lower_bound >= gap;
    for w in &mut witnesses {
        w.certified_minimal = exact;
    }
    GclBound {
        target_colength: c,
        value: gap,
        lower_bound,
        witnesses,
    }
}

/// Tests one gap-1 candidate: the ideal spanned by `m` times the target and
/// the combinations of its basis annihilated by the functional `v`.  Every
/// cover with gap 1 contains `m` times the target, so ranging `v` over all
/// directions is a complete search.
fn hyperplane_cover(
    target_basis: &StandardBasis,
    target_socle: u32,
    v: &[Scalar],
) -> Result<Option<CoverResult>> {
    let els = target_basis.elements();
    let Some(lead) = v.iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let inv = v[lead].inv()?;
    let mut gens = Vec::with_capacity(3 * els.len());
    for f in els {
        gens.push(f.mul_monomial(&Monomial::new(1, 0)));
        gens.push(f.mul_monomial(&Monomial::new(0, 1)));
    }
    for (i, f) in els.iter().enumerate() {
        if i == lead {
            continue;
        }
        gens.push(f.sub(&els[lead].scale(&v[i].mul(&inv))));
    }
    let cand = IdealPresentation::new(gens)?.with_socle_hint(target_socle + 1);
    let (lt, _) = lt_ideal_local(&cand)?;
    if lt.colength() != target_basis.staircase().colength() + 1 {
        return Ok(None);
    }
    if minimal_generator_count(&cand)? != 2 {
        return Ok(None);
    }
    if !inclusion(target_basis, target_socle, &cand)? {
        return Err(Error::Internal(
            "hyperplane candidate escaped the target".into(),
        ));
    }
    let rb = reduced_standard_basis(&cand)?;
    let pretty = minimal_presentation(&rb)?;
    let point = canonical_deformation(&pretty).ok().and_then(|r| r.point);
    Ok(Some(CoverResult {
        cover_ideal: pretty,
        cell_point: point,
        colength_gap: 1,
        certified_minimal: false,
    }))
}

fn hyperplane_layer_fp(
    basis: &StandardBasis,
    s_t: u32,
    prime: u64,
    budget: u64,
    spent: &mut u64,
) -> Result<Vec<CoverResult>> {
    let field = basis.field();
    let t1 = basis.elements().len();
    let mut found = Vec::new();
    for lead in 0..t1 {
        for_each_assignment(prime, t1 - lead - 1, |tail| {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let mut v = vec![Scalar::zero(field); t1];
            v[lead] = Scalar::one(field);
            for (k, &a) in tail.iter().enumerate() {
                v[lead + 1 + k] = Scalar::from_int(field, a as i64);
            }
            if let Some(w) = hyperplane_cover(basis, s_t, &v)? {
                if found.len() < WITNESS_CAP {
                    found.push(w);
                }
            }
            Ok(())
        })?;
    }
    Ok(found)
}

fn hyperplane_layer_q(
    basis: &StandardBasis,
    s_t: u32,
    samples: u64,
    bound: i64,
    seed: u64,
) -> Result<Vec<CoverResult>> {
    let field = basis.field();
    let t1 = basis.elements().len();
    let b = bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    for _ in 0..samples {
        let v: Vec<Scalar> = (0..t1)
            .map(|_| Scalar::from_int(field, rng.gen_range(-b..=b)))
            .collect();
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        if let Some(w) = hyperplane_cover(basis, s_t, &v)? {
            if found.len() < WITNESS_CAP {
                found.push(w);
            }
        }
    }
    Ok(found)
}

fn family_cover(
    target_basis: &StandardBasis,
    target_socle: u32,
    n: &Deformation,
    gap: u64,
) -> Result<Option<CoverResult>> {
    if rank_profile(n).mu != 2 {
        return Ok(None);
    }
    let e = n.staircase();
    let minors = n.signed_minors(Cap::Unbounded)?;
    let cand = IdealPresentation::new(minors)?.with_socle_hint(e.socle_degree());
    if !inclusion(target_basis, target_socle, &cand)? {
        return Ok(None);
    }
    let rb = reduced_standard_basis(&cand)?;
    if rb.staircase() != e {
        return Err(Error::Internal("cover candidate escaped its cell".into()));
    }
    let pretty = minimal_presentation(&rb)?;
    let point = canonical_deformation(&pretty).ok().and_then(|r| r.point);
    Ok(Some(CoverResult {
        cover_ideal: pretty,
        cell_point: point,
        colength_gap: gap,
        certified_minimal: false,
    }))
}

fn family_layer_fp(
    basis: &StandardBasis,
    s_t: u32,
    colength: u64,
    gap: u64,
    prime: u64,
    budget: u64,
    spent: &mut u64,
) -> Result<Vec<CoverResult>> {
    let field = basis.field();
    let colength: u32 = colength
        .try_into()
        .map_err(|_| Error::BudgetExceeded(budget))?;
    let mut found = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for e in Staircase::enumerate(colength) {
        let slots = hbm::n_le_s_template_slots(&e);
        let cost = pow_u128(prime, slots.len()).ok_or(Error::BudgetExceeded(budget))?;
        if u128::from(*spent) + cost > u128::from(budget) {
            return Err(Error::BudgetExceeded(budget));
        }
        for_each_assignment(prime, slots.len(), |coeffs| {
            *spent += 1;
            let mut n = Deformation::zero(e.clone(), field, Cap::Unbounded);
            for (&(i, j, k), &cv) in slots.iter().zip(coeffs) {
                if cv != 0 {
                    let mut entry = n.entry(i, j).clone();
                    entry.add_assign_term(k, &Scalar::from_int(field, cv as i64));
                    n.set_entry(i, j, entry)?;
                }
            }
            if let Some(w) = family_cover(basis, s_t, &n, gap)? {
                if seen.insert(w.cover_ideal.gens().iter().map(|g| g.to_string()).collect())
                    && found.len() < WITNESS_CAP
                {
                    found.push(w);
                }
            }
            Ok(())
        })?;
    }
    Ok(found)
}

fn family_layer_q(
    basis: &StandardBasis,
    s_t: u32,
    colength: u64,
    gap: u64,
    samples: u64,
    bound: i64,
    seed: u64,
) -> Result<Vec<CoverResult>> {
    let field = basis.field();
    let Ok(colength) = u32::try_from(colength) else {
        return Ok(Vec::new());
    };
    let b = bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    for e in Staircase::enumerate(colength) {
        let slots = hbm::template_slots(&e);
        for _ in 0..samples {
            let coords: Vec<Scalar> = (0..slots.len())
                .map(|_| Scalar::from_int(field, rng.gen_range(-b..=b)))
                .collect();
            let p = CellPoint::new(e.clone(), field, coords)?;
            if let Some(w) = family_cover(basis, s_t, &decode_cellpoint(&p), gap)? {
                if found.len() < WITNESS_CAP {
                    found.push(w);
                }
            }
        }
    }
    Ok(found)
}
