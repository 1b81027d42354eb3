//! Gröbner-cell operations: cell membership, the syzygy construction of a
//! deformation matrix from a standard basis, truncation at the socle degree,
//! reduction moves and the canonical-matrix pipeline, linear coordinate
//! changes and generic initial staircases, a witness factory for staircases
//! whose canonical family misses part of the cell, and exhaustive
//! finite-field probes of the degree-bounded family.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hbm::{self, encode_cellpoint, CellPoint, Deformation};
use crate::localstd::{
    lt_ideal_local, reduced_standard_basis, y_divide, IdealPresentation, StandardBasis,
};
use crate::monomial::{Monomial, OrderKind};
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};
use crate::staircase::{StairFlags, Staircase};

/// Summary of the affine cell attached to a staircase.
#[derive(Debug, Clone)]
pub struct CellReport {
    pub staircase: Staircase,
    pub dimension: u64,
    pub flags: StairFlags,
    pub chart_witness: Option<(usize, usize)>,
    pub forced_zero: Vec<(usize, usize)>,
}

impl CellReport {
    pub fn new(e: &Staircase) -> CellReport {
        CellReport {
            staircase: e.clone(),
            dimension: hbm::cell_dimension(e),
            flags: e.classify(),
            chart_witness: e.chart_witness(),
            forced_zero: hbm::forced_zero_slots(e),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "generators": self.staircase.generators_string(),
            "colength": self.staircase.colength(),
            "socle_degree": self.staircase.socle_degree(),
            "hilbert_function": self.staircase.hilbert_function(),
            "dimension": self.dimension,
            "lex_segment": self.flags.lex_segment,
            "chart_condition": self.flags.chart_condition,
            "chart_witness": self
                .chart_witness
                .map(|(i, j)| serde_json::json!([i, j])),
            "gorenstein_admissible": self.flags.gorenstein_admissible,
            "forced_zero_slots": self
                .forced_zero
                .iter()
                .map(|&(i, j)| serde_json::json!([i, j]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Does the ideal lie in the cell of `e`, i.e. is its leading-term ideal
/// under the local degree order exactly `e`?
pub fn membership(j: &IdealPresentation, e: &Staircase) -> Result<bool> {
    let (lt, _) = lt_ideal_local(j)?;
    Ok(lt == *e)
}

/// The deformation matrix encoding the S-polynomial expansions of a standard
/// basis: `S_j = y^{d_j} f_{j−1} − x f_j` is rewritten as `Σ_i q_{i,j} f_i`
/// by `y`-division and stored as `n_{i,j} = −q_{i−1,j}`.  Entries share one
/// truncation cap of at least `s + 2`.
pub fn syzygy_deformation_from_basis(b: &StandardBasis) -> Result<Deformation> {
    let e = b.staircase().clone();
    let field = b.field();
    let t = e.t();
    let div_cap = 2 * e.socle_degree() + 3;
    let max_lt = (0..=t)
        .map(|i| (t - i) as u32 + e.m(i))
        .max()
        .expect("staircase has at least one generator");
    let common = Cap::Finite(div_cap - max_lt);
    let mut n = Deformation::zero(e.clone(), field, common);
    for j in 1..=t {
        let s_j = b
            .element(j - 1)
            .mul_monomial(&Monomial::new(0, e.d(j)))
            .sub(&b.element(j).mul_monomial(&Monomial::new(1, 0)));
        if s_j.is_zero() {
            continue;
        }
        let q = y_divide(&s_j, b, div_cap)?;
        for (i, qi) in q.iter().enumerate() {
            if !qi.is_zero() {
                n.set_entry(i + 1, j, qi.neg().with_cap(common))?;
            }
        }
    }
    n.check_in_n()?;
    Ok(n)
}

/// The syzygy matrix of the unique reduced standard basis of the ideal.
pub fn syzygy_deformation(j: &IdealPresentation) -> Result<Deformation> {
    let b = reduced_standard_basis(j)?;
    syzygy_deformation_from_basis(&b)
}

/// Entrywise truncation at the socle degree.  The ideal of maximal minors is
/// unchanged: the discarded terms contribute to the minors only inside
/// `m^{s+1}`.  When every entry is known at least up to degree `s` the result
/// is returned as an exact polynomial matrix; otherwise the truncation caps
/// are kept.
pub fn truncate_deformation(n: &Deformation) -> Deformation {
    let s = n.staircase().socle_degree();
    let bar = n.truncate_entries(s);
    if n.min_cap().admits(s) {
        uncap(&bar)
    } else {
        bar
    }
}

fn uncap(n: &Deformation) -> Deformation {
    let t = n.staircase().t();
    let mut out = Deformation::zero(n.staircase().clone(), n.field(), Cap::Unbounded);
    for i in 1..=t + 1 {
        for j in 1..=t {
            out.set_entry(i, j, n.entry(i, j).with_cap(Cap::Unbounded))
                .expect("same shape");
        }
    }
    out
}

fn strictly_lower(n: &Deformation) -> bool {
    let t = n.staircase().t();
    (1..=t + 1).all(|i| (i..=t).all(|j| n.entry(i, j).is_zero()))
}

fn strictly_upper(n: &Deformation) -> bool {
    let t = n.staircase().t();
    (1..=t + 1).all(|i| (1..=t.min(i)).all(|j| n.entry(i, j).is_zero()))
}

/// One reduction move at a position `(i, j)` below the diagonal: splits
/// `n_{i,j} = r + y^{d_j} q`, adds `−q` times row `j` to row `i` of `H + N`,
/// then `q` times column `i−1` to column `j−1`.  The ideal of maximal minors
/// is unchanged and the `(i, j)` entry drops below degree `d_j`.
pub fn reduction_move(n: &Deformation, i: usize, j: usize) -> Result<Deformation> {
    let t = n.staircase().t();
    if i < 1 || i > t + 1 || j < 1 || j > t {
        return Err(Error::IndexOutOfRange(format!(
            "move ({i},{j}) on a {}×{t} matrix",
            t + 1
        )));
    }
    if i <= j {
        return Err(Error::Precondition(
            "reduction moves of the second type act below the diagonal".into(),
        ));
    }
    if !strictly_lower(n) {
        return Err(Error::Precondition(
            "reduction moves require a strictly lower triangular matrix".into(),
        ));
    }
    n.check_in_n()?;
    let mut out = n.clone();
    apply_move(&mut out, i, j);
    out.check_in_n()
        .map_err(|err| Error::Internal(format!("reduction move left the family: {err}")))?;
    Ok(out)
}

fn apply_move(n: &mut Deformation, i: usize, j: usize) {
    let e = n.staircase().clone();
    let t = e.t();
    let (r, q) = n.entry(i, j).clone().split_at(e.d(j));
    if q.is_zero() {
        return;
    }
    n.set_entry(i, j, r).expect("position validated");
    // Row operation: row i of N picks up −q times the strictly-lower entries
    // of row j; the −x of row j is cancelled by the column operation below.
    for c in 1..j {
        let add = q.mul(n.entry(j, c)).neg();
        if !add.is_zero() {
            let cur = n.entry(i, c).add(&add);
            n.set_entry(i, c, cur).expect("position validated");
        }
    }
    if j >= 2 {
        // Column operation: column j−1 picks up q times column i−1, whose
        // diagonal contributes q·y^{d_{i−1}}.
        let diag = n.entry(i - 1, j - 1).add(&q.mul_ypow(e.d(i - 1)));
        n.set_entry(i - 1, j - 1, diag).expect("position validated");
        for l in i..=t + 1 {
            let add = q.mul(n.entry(l, i - 1));
            if !add.is_zero() {
                let cur = n.entry(l, j - 1).add(&add);
                n.set_entry(l, j - 1, cur).expect("position validated");
            }
        }
    }
}

/// Reduces a strictly lower triangular matrix of the order-bound family into
/// the canonical family, sweeping the columns from last to first and each
/// column downwards.  Each move only spills into columns further left, so a
/// single pass terminates.
pub fn reduce_to_canonical(n: &Deformation) -> Result<Deformation> {
    if !strictly_lower(n) {
        return Err(Error::Precondition(
            "the reduction sweep requires a strictly lower triangular matrix".into(),
        ));
    }
    n.check_in_n()?;
    let mut out = n.clone();
    let e = out.staircase().clone();
    let t = e.t();
    for j in (1..=t).rev() {
        for i in j + 1..=t + 1 {
            if out.entry(i, j).deg().is_some_and(|d| d >= e.d(j)) {
                apply_move(&mut out, i, j);
            }
        }
    }
    if !out.classify().in_m {
        return Err(Error::Internal(
            "reduction sweep did not land in the canonical family".into(),
        ));
    }
    Ok(out)
}

/// One reduction move at a position `(i, j)` above the diagonal: splits
/// `n_{i,j} = r + y^{d_i} q`, adds `−q` times column `i` to column `j`, then
/// `q` times row `j+1` to row `i+1`.
pub fn upper_reduction_move(n: &Deformation, i: usize, j: usize) -> Result<Deformation> {
    let t = n.staircase().t();
    if i < 1 || i > t + 1 || j < 1 || j > t {
        return Err(Error::IndexOutOfRange(format!(
            "move ({i},{j}) on a {}×{t} matrix",
            t + 1
        )));
    }
    if i >= j {
        return Err(Error::Precondition(
            "reduction moves of the first type act above the diagonal".into(),
        ));
    }
    if !strictly_upper(n) {
        return Err(Error::Precondition(
            "first-type reduction moves require a strictly upper triangular matrix".into(),
        ));
    }
    n.check_in_n()?;
    let mut out = n.clone();
    apply_upper_move(&mut out, i, j);
    out.check_in_n()
        .map_err(|err| Error::Internal(format!("reduction move left the family: {err}")))?;
    Ok(out)
}

fn apply_upper_move(n: &mut Deformation, i: usize, j: usize) {
    let e = n.staircase().clone();
    let t = e.t();
    let (r, q) = n.entry(i, j).clone().split_at(e.d(i));
    if q.is_zero() {
        return;
    }
    n.set_entry(i, j, r).expect("position validated");
    // Column operation: column j picks up −q times the entries of column i;
    // the −x below the diagonal of column i is cancelled by the row
    // operation below.
    for l in 1..=t + 1 {
        if l == i {
            continue;
        }
        let add = q.mul(n.entry(l, i)).neg();
        if !add.is_zero() {
            let cur = n.entry(l, j).add(&add);
            n.set_entry(l, j, cur).expect("position validated");
        }
    }
    // Row operation: row i+1 picks up q times row j+1, whose diagonal
    // contributes q·y^{d_{j+1}} when that diagonal exists.
    if j + 1 <= t {
        let diag = n.entry(i + 1, j + 1).add(&q.mul_ypow(e.d(j + 1)));
        n.set_entry(i + 1, j + 1, diag).expect("position validated");
    }
    for c in 1..=t {
        if c == j {
            continue;
        }
        let add = q.mul(n.entry(j + 1, c));
        if !add.is_zero() {
            let cur = n.entry(i + 1, c).add(&add);
            n.set_entry(i + 1, c, cur).expect("position validated");
        }
    }
}

/// Sweeps a strictly upper triangular matrix into the degree-bounded family
/// `N(E)_{<d}`: columns first to last, within a column from the diagonal
/// upwards.
pub fn reduce_upper(n: &Deformation) -> Result<Deformation> {
    if !strictly_upper(n) {
        return Err(Error::Precondition(
            "the upper reduction sweep requires a strictly upper triangular matrix".into(),
        ));
    }
    n.check_in_n()?;
    let mut out = n.clone();
    let e = out.staircase().clone();
    let t = e.t();
    for j in 1..=t {
        for i in (1..j).rev() {
            if out.entry(i, j).deg().is_some_and(|d| d >= e.d(i)) {
                apply_upper_move(&mut out, i, j);
            }
        }
    }
    if !out.classify().in_n_lt_d {
        return Err(Error::Internal(
            "upper reduction sweep did not land in the degree-bounded family".into(),
        ));
    }
    Ok(out)
}

/// The canonical matrix of a cell ideal together with its chart coordinates.
#[derive(Debug, Clone)]
pub struct CanonicalResult {
    pub staircase: Staircase,
    pub matrix: Deformation,
    /// The chart coordinates; absent when the staircase fails the chart
    /// condition, in which case the matrix is still canonical for this ideal
    /// but the cell as a whole is not an affine space in these coordinates.
    pub point: Option<CellPoint>,
}

impl CanonicalResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "matrix": self.matrix.to_json(),
            "point": self.point.as_ref().map(|p| p.to_json()),
        })
    }
}

/// Computes the canonical matrix of the ideal: reduced standard basis, syzygy
/// matrix, truncation at the socle degree, then the reduction sweep.  The
/// truncated matrix is certified by recomputing the leading-term ideal of its
/// maximal minors before any move is applied.
pub fn canonical_deformation(j: &IdealPresentation) -> Result<CanonicalResult> {
    let b = reduced_standard_basis(j)?;
    let e = b.staircase().clone();
    let syz = syzygy_deformation_from_basis(&b)?;
    let bar = truncate_deformation(&syz);
    if !strictly_lower(&bar) {
        return Err(Error::Precondition(
            "the syzygy matrix has entries above the diagonal after truncation; \
             the reduction schedule covers only strictly lower triangular matrices"
                .into(),
        ));
    }
    let minors = bar.signed_minors(Cap::Unbounded)?;
    let jp = IdealPresentation::new(minors)?.with_socle_hint(e.socle_degree());
    let (lt, _) = lt_ideal_local(&jp)?;
    if lt != e {
        return Err(Error::Internal(
            "truncated syzygy matrix fails to regenerate the leading-term ideal".into(),
        ));
    }
    let matrix = reduce_to_canonical(&bar)?;
    let point = encode_cellpoint(&matrix).ok();
    Ok(CanonicalResult {
        staircase: e,
        matrix,
        point,
    })
}

/// Applies the substitution `x ↦ g₁₁x + g₁₂y`, `y ↦ g₂₁x + g₂₂y` to every
/// generator.
pub fn change_coordinates(
    j: &IdealPresentation,
    g: &[[Scalar; 2]; 2],
) -> Result<IdealPresentation> {
    if g.iter().flatten().any(|c| c.tag() != j.field()) {
        return Err(Error::ShapeMismatch(
            "coordinate-change entries carry the wrong coefficient field".into(),
        ));
    }
    let det = g[0][0].mul(&g[1][1]).sub(&g[0][1].mul(&g[1][0]));
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let gens = j
        .gens()
        .iter()
        .map(|f| f.substitute_linear(&g[0][0], &g[0][1], &g[1][0], &g[1][1]))
        .collect();
    let out = IdealPresentation::new(gens)?;
    Ok(match j.socle_hint() {
        Some(s) => out.with_socle_hint(s),
        None => out,
    })
}

/// The staircase of the ideal after a random linear change of coordinates.
/// Three independent draws from the seeded generator must agree, otherwise
/// the computation is reported as inconclusive.
pub fn generic_initial(j: &IdealPresentation, seed: u64, bound: i64) -> Result<Staircase> {
    if j.field() == FieldTag::Q && bound < 1 {
        return Err(Error::Precondition(
            "the coordinate sampling bound must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut winner: Option<Staircase> = None;
    for _ in 0..3 {
        let g = random_matrix(j.field(), bound, &mut rng);
        let moved = change_coordinates(j, &g)?;
        let (lt, _) = lt_ideal_local(&moved)?;
        match &winner {
            None => winner = Some(lt),
            Some(w) if *w == lt => {}
            Some(_) => return Err(Error::Inconclusive),
        }
    }
    Ok(winner.expect("three draws"))
}

fn random_matrix(field: FieldTag, bound: i64, rng: &mut ChaCha8Rng) -> [[Scalar; 2]; 2] {
    loop {
        let draw = |rng: &mut ChaCha8Rng| match field {
            FieldTag::Q => Scalar::from_int(field, rng.gen_range(-bound..=bound)),
            FieldTag::Fp(p) => Scalar::random_fp(p, rng),
        };
        let g = [[draw(rng), draw(rng)], [draw(rng), draw(rng)]];
        let det = g[0][0].mul(&g[1][1]).sub(&g[0][1].mul(&g[1][0]));
        if !det.is_zero() {
            return g;
        }
    }
}

/// Generators of an ideal in the cell of `e` that no canonical-family matrix
/// presents: the staircase generators, with the generator at the witness row
/// perturbed by a single monomial from the complement.
pub fn nonsurj_witness(e: &Staircase, field: FieldTag) -> Result<IdealPresentation> {
    let (i, j) = e.chart_witness().ok_or_else(|| {
        Error::Precondition(
            "the staircase satisfies the chart condition; the canonical family \
             covers its whole cell"
                .into(),
        )
    })?;
    let t = e.t();
    let mut gens = Vec::with_capacity(t + 1);
    for k in 0..=t {
        let mut g = BiPoly::monomial(
            field,
            Cap::Unbounded,
            Monomial::new((t - k) as u32, e.m(k)),
        );
        if k == i {
            g.add_assign_term(
                &Monomial::new((t - j) as u32, e.m(j) - 1),
                &Scalar::one(field),
            );
        }
        gens.push(g);
    }
    Ok(IdealPresentation::new(gens)?.with_socle_hint(e.socle_degree()))
}

/// Result of an exhaustive finite-field probe of a cell.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub staircase: Staircase,
    pub prime: u64,
    /// Free coefficients of the socle-truncated family `N(E)_{≤s}`.
    pub n_template: usize,
    /// Free coefficients of the degree-bounded family `N(E)_{<d}`.
    pub d_template: usize,
    /// Number of distinct ideals presented by the degree-bounded family.
    pub image_count: u64,
    /// Number of points of the cell over the prime field.
    pub cell_count: u64,
    pub injective: bool,
    pub pass: bool,
    pub counterexamples: Vec<serde_json::Value>,
}

impl ProbeReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "prime": self.prime,
            "n_template": self.n_template,
            "d_template": self.d_template,
            "image_count": self.image_count,
            "cell_count": self.cell_count,
            "injective": self.injective,
            "pass": self.pass,
            "counterexamples": self.counterexamples,
        })
    }
}

/// Exhaustively compares the degree-bounded family with its cell over `F_p`.
///
/// The cell is enumerated through reduced-basis candidates: every cell ideal
/// is generated by its reduced basis elements at the minimal staircase
/// generators, whose tails range over the complement monomials smaller than
/// the leading term, and distinct accepted candidates present distinct
/// ideals.  The family `N(E)_{<d}` is enumerated directly and its minors are
/// fingerprinted by reduced standard bases.
pub fn conjecture_probe(e: &Staircase, p: u64, budget: u64) -> Result<ProbeReport> {
    let field = FieldTag::fp(p)?;
    let s = e.socle_degree();
    let n_template = hbm::n_le_s_template_slots(e).len();
    let d_slots = hbm::lt_d_template_slots(e);

    let min_gens = e.minimal_generators();
    let complement = e.complement();
    let tails: Vec<Vec<Monomial>> = min_gens
        .iter()
        .map(|g| {
            complement
                .iter()
                .filter(|m| OrderKind::LocalDeg.cmp(m, g) == std::cmp::Ordering::Less)
                .copied()
                .collect()
        })
        .collect();
    let v_exp: usize = tails.iter().map(Vec::len).sum();
    let cost = pow_u128(p, v_exp).zip(pow_u128(p, d_slots.len()));
    match cost {
        Some((a, b)) if a + b <= u128::from(budget) => {}
        _ => return Err(Error::BudgetExceeded(budget)),
    }

    let mut cell: BTreeSet<String> = BTreeSet::new();
    for_each_assignment(p, v_exp, |coeffs| {
        let mut gens = Vec::with_capacity(min_gens.len());
        let mut off = 0;
        for (g, ts) in min_gens.iter().zip(&tails) {
            let mut f = BiPoly::monomial(field, Cap::Unbounded, *g);
            for (k, m) in ts.iter().enumerate() {
                if coeffs[off + k] != 0 {
                    f.add_assign_term(m, &Scalar::from_int(field, coeffs[off + k] as i64));
                }
            }
            off += ts.len();
            gens.push(f);
        }
        let jp = IdealPresentation::new(gens)?.with_socle_hint(s);
        if let Ok(b) = reduced_standard_basis(&jp) {
            if b.staircase() == e {
                cell.insert(b.fingerprint());
            }
        }
        Ok(())
    })?;

    let mut images: BTreeMap<String, Deformation> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut injective = true;
    for_each_assignment(p, d_slots.len(), |coeffs| {
        let mut n = Deformation::zero(e.clone(), field, Cap::Unbounded);
        for (&(i, j, k), &c) in d_slots.iter().zip(coeffs) {
            if c != 0 {
                let mut entry = n.entry(i, j).clone();
                entry.add_assign_term(k, &Scalar::from_int(field, c as i64));
                n.set_entry(i, j, entry)?;
            }
        }
        let minors = n.signed_minors(Cap::Unbounded)?;
        let jp = IdealPresentation::new(minors)?.with_socle_hint(s);
        let b = reduced_standard_basis(&jp)
            .map_err(|err| Error::Internal(format!("family member has no cell basis: {err}")))?;
        if b.staircase() != e {
            return Err(Error::Internal(
                "family member escapes its cell".into(),
            ));
        }
        match images.entry(b.fingerprint()) {
            Entry::Vacant(slot) => {
                slot.insert(n);
            }
            Entry::Occupied(seen) => {
                injective = false;
                if counterexamples.len() < 4 {
                    counterexamples.push(serde_json::json!({
                        "kind": "collision",
                        "first": seen.get().to_json(),
                        "second": n.to_json(),
                    }));
                }
            }
        }
        Ok(())
    })?;

    let image_count = images.len() as u64;
    let cell_count = cell.len() as u64;
    for fp in cell
        .iter()
        .filter(|f| !images.contains_key(f.as_str()))
        .take(3)
    {
        counterexamples.push(serde_json::json!({
            "kind": "missed_ideal",
            "reduced_basis": fp,
        }));
    }
    let pass = injective && image_count == cell_count;
    Ok(ProbeReport {
        staircase: e.clone(),
        prime: p,
        n_template,
        d_template: d_slots.len(),
        image_count,
        cell_count,
        injective,
        pass,
        counterexamples,
    })
}

pub(crate) fn pow_u128(p: u64, e: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(u128::from(p))?;
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc)
}

pub(crate) fn for_each_assignment(
    p: u64,
    len: usize,
    mut f: impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    let mut coeffs = vec![0u64; len];
    loop {
        f(&coeffs)?;
        let mut k = 0;
        loop {
            if k == len {
                return Ok(());
            }
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
    }
}
