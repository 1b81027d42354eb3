//! Deformation matrices `N`, the families they can belong to, signed maximal
//! minors of `H + N`, and the affine coordinate chart on the canonical family.
//!
//! A deformation is a `(t+1) × t` matrix of polynomials in `y` added to the
//! canonical bidiagonal matrix `H` of a staircase.  The signed maximal minors
//! of `H + N` generate an ideal whose leading-term ideal is the staircase
//! whenever `N` satisfies the order bounds of the family `N(E)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};
use crate::staircase::Staircase;
use crate::ypoly::YPoly;

/// A `(t+1) × t` matrix of `y`-polynomials deforming the canonical matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    staircase: Staircase,
    field: FieldTag,
    entries: Vec<Vec<YPoly>>,
}

/// Membership of a deformation in the nested matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyFlags {
    /// Order bounds: `ord(n_{i,j}) ≥ u_{i,j}+1` on and above the diagonal,
    /// `≥ u_{i,j}` below.
    pub in_n: bool,
    /// `in_n` with all entry degrees at most the socle degree.
    pub in_n_le_s: bool,
    /// Zero above the diagonal, `deg(n_{i,j}) < d_j` on and below.
    pub in_t0: bool,
    /// The canonical family: `in_n ∧ in_t0`.
    pub in_m: bool,
    /// `in_n` with `deg < d_i` on/above the diagonal and `deg < d_j` below.
    pub in_n_lt_d: bool,
}

impl Deformation {
    pub fn zero(staircase: Staircase, field: FieldTag, cap: Cap) -> Deformation {
        let t = staircase.t();
        Deformation {
            staircase,
            field,
            entries: vec![vec![YPoly::zero(field, cap); t]; t + 1],
        }
    }

    pub fn new(staircase: Staircase, field: FieldTag, entries: Vec<Vec<YPoly>>) -> Result<Deformation> {
        let t = staircase.t();
        if entries.len() != t + 1 || entries.iter().any(|r| r.len() != t) {
            return Err(Error::ShapeMismatch(format!(
                "expected {}×{} entries for {staircase}",
                t + 1,
                t
            )));
        }
        if entries.iter().flatten().any(|p| p.field() != field) {
            return Err(Error::ShapeMismatch(
                "entries carry mixed coefficient fields".into(),
            ));
        }
        Ok(Deformation {
            staircase,
            field,
            entries,
        })
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// 1-based entry access, `1 ≤ i ≤ t+1`, `1 ≤ j ≤ t`.
    pub fn entry(&self, i: usize, j: usize) -> &YPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: YPoly) -> Result<()> {
        let t = self.staircase.t();
        if i < 1 || i > t + 1 || j < 1 || j > t {
            return Err(Error::IndexOutOfRange(format!("entry ({i},{j}) of a {}×{t} matrix", t + 1)));
        }
        if p.field() != self.field {
            return Err(Error::ShapeMismatch("entry field mismatch".into()));
        }
        self.entries[i - 1][j - 1] = p;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(YPoly::is_zero)
    }

    /// The coarsest cap among entries.
    pub fn min_cap(&self) -> Cap {
        self.entries
            .iter()
            .flatten()
            .fold(Cap::Unbounded, |acc, p| acc.meet(p.cap()))
    }

    pub fn truncate_entries(&self, d: u32) -> Deformation {
        Deformation {
            staircase: self.staircase.clone(),
            field: self.field,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.truncate(d)).collect())
                .collect(),
        }
    }

    pub fn classify(&self) -> FamilyFlags {
        let e = &self.staircase;
        let t = e.t();
        let s = e.socle_degree();
        let mut in_n = true;
        let mut in_t0 = true;
        let mut deg_le_s = true;
        let mut deg_lt_d = true;
        for i in 1..=t + 1 {
            for j in 1..=t {
                let n = self.entry(i, j);
                if n.is_zero() {
                    continue;
                }
                let ord = n.ord().expect("nonzero") as i64;
                let deg = n.deg().expect("nonzero") as i64;
                let floor = if i > j { e.u(i, j) } else { e.u(i, j) + 1 };
                if ord < floor {
                    in_n = false;
                }
                if i < j || deg >= e.d(j) as i64 {
                    in_t0 = false;
                }
                if deg > s as i64 {
                    deg_le_s = false;
                }
                let d_bound = if i > j { e.d(j) } else { e.d(i) };
                if deg >= d_bound as i64 {
                    deg_lt_d = false;
                }
            }
        }
        FamilyFlags {
            in_n,
            in_n_le_s: in_n && deg_le_s,
            in_t0,
            in_m: in_n && in_t0,
            in_n_lt_d: in_n && deg_lt_d,
        }
    }

    /// Errors with the first offending entry if the order bounds fail.
    pub fn check_in_n(&self) -> Result<()> {
        let e = &self.staircase;
        let t = e.t();
        for i in 1..=t + 1 {
            for j in 1..=t {
                let n = self.entry(i, j);
                if n.is_zero() {
                    continue;
                }
                let floor = if i > j { e.u(i, j) } else { e.u(i, j) + 1 };
                if (n.ord().expect("nonzero") as i64) < floor {
                    return Err(Error::NotInFamilyN { i, j });
                }
            }
        }
        Ok(())
    }

    /// The full matrix `H + N` with entries truncated to `cap`.
    pub fn h_plus_n(&self, cap: Cap) -> Result<Vec<Vec<BiPoly>>> {
        if let Cap::Finite(c) = cap {
            for row in &self.entries {
                for p in row {
                    p.cap().at_least(c)?;
                }
            }
        } else if self.min_cap() != Cap::Unbounded {
            return Err(Error::Internal(
                "uncapped matrix requested from capped entries".into(),
            ));
        }
        let mut m = self.staircase.canonical_h(self.field, cap);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                m[r][c] = m[r][c].add(&p.to_bipoly().with_cap(cap));
            }
        }
        Ok(m)
    }

    /// Signed maximal minors `f_i = (−1)^{t−i} · det((H+N) minus row i+1)`,
    /// `i = 0..=t`; the generators of the parametrized ideal.
    pub fn signed_minors(&self, cap: Cap) -> Result<Vec<BiPoly>> {
        let m = self.h_plus_n(cap)?;
        let t = self.staircase.t();
        let mut memo: HashMap<(usize, u32), BiPoly> = HashMap::new();
        let full: u32 = (1u32 << (t + 1)) - 1;
        let mut out = Vec::with_capacity(t + 1);
        for i in 0..=t {
            let det = minor_det(&m, 0, full & !(1 << i), self.field, cap, &mut memo);
            out.push(if (t - i) % 2 == 1 { det.neg() } else { det });
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "entries": self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value, field: FieldTag, cap: Cap) -> Result<Deformation> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let staircase = Staircase::from_json(
            v.get("staircase")
                .ok_or_else(|| bad("deformation JSON needs `staircase`".into()))?,
        )?;
        let rows = v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| bad("deformation JSON needs an `entries` array".into()))?;
        let mut entries = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| bad("entries must be an array of arrays".into()))?;
            let mut out_row = Vec::with_capacity(row.len());
            for cell in row {
                let s = cell
                    .as_str()
                    .ok_or_else(|| bad("matrix entries must be strings".into()))?;
                let p = crate::parser::parse_poly(s, field, cap)?;
                out_row.push(YPoly::from_bipoly(&p).map_err(|_| {
                    bad(format!("entry `{s}` involves x; matrix entries are polynomials in y"))
                })?);
            }
            entries.push(out_row);
        }
        Deformation::new(staircase, field, entries)
    }
}

fn minor_det(
    m: &[Vec<BiPoly>],
    col: usize,
    rows: u32,
    field: FieldTag,
    cap: Cap,
    memo: &mut HashMap<(usize, u32), BiPoly>,
) -> BiPoly {
    let t = m[0].len();
    if col == t {
        return BiPoly::one(field, cap);
    }
    if let Some(hit) = memo.get(&(col, rows)) {
        return hit.clone();
    }
    let mut acc = BiPoly::zero(field, cap);
    let mut pos = 0u32;
    for r in 0..m.len() {
        if rows & (1 << r) == 0 {
            continue;
        }
        let entry = &m[r][col];
        if !entry.is_zero() {
            let sub = minor_det(m, col + 1, rows & !(1 << r), field, cap, memo);
            let term = entry.mul(&sub);
            acc = if pos % 2 == 1 {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
        pos += 1;
    }
    memo.insert((col, rows), acc.clone());
    acc
}

/// The free-coefficient slots `(i, j, k)` of the canonical family `M(E)`:
/// strictly-lower positions `i > j` with `v_{i,j} ≤ k ≤ d_j − 1`, listed
/// row-major (`i` ascending, then `j`, then `k`).
pub fn template_slots(e: &Staircase) -> Vec<(usize, usize, u32)> {
    let t = e.t();
    let mut out = Vec::new();
    for i in 2..=t + 1 {
        for j in 1..i.min(t + 1) {
            // j < i and j ≤ t.
            let d = e.d(j);
            if d == 0 {
                continue;
            }
            for k in e.v(i, j)..d {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Dimension of the cell: the number of free coefficients in the canonical
/// template (each slot contributes only when `v_{i,j} < d_j`).
pub fn cell_dimension(e: &Staircase) -> u64 {
    template_slots(e).len() as u64
}

/// Free-coefficient slots of the degree-bounded family `N(E)_{<d}`: every
/// position, with `k` running from the order floor to `d_i − 1` (on/above the
/// diagonal) or `d_j − 1` (below).
pub fn lt_d_template_slots(e: &Staircase) -> Vec<(usize, usize, u32)> {
    let t = e.t();
    let mut out = Vec::new();
    for i in 1..=t + 1 {
        for j in 1..=t {
            let (floor, bound) = if i > j {
                (e.v(i, j), e.d(j))
            } else {
                ((e.u(i, j) + 1).max(0) as u32, e.d(i))
            };
            for k in floor..bound {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Free-coefficient slots of `N(E)_{≤s}`: every position, `k` from the order
/// floor up to the socle degree.
pub fn n_le_s_template_slots(e: &Staircase) -> Vec<(usize, usize, u32)> {
    let t = e.t();
    let s = e.socle_degree();
    let mut out = Vec::new();
    for i in 1..=t + 1 {
        for j in 1..=t {
            let floor = if i > j {
                e.v(i, j)
            } else {
                (e.u(i, j) + 1).max(0) as u32
            };
            for k in floor..=s {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Positions whose `N(E)_{<d}` entry is forced to zero by the degree bound
/// although the order bound alone would allow something.
pub fn forced_zero_slots(e: &Staircase) -> Vec<(usize, usize)> {
    let t = e.t();
    let s = e.socle_degree();
    let mut out = Vec::new();
    for i in 1..=t + 1 {
        for j in 1..=t {
            let (floor, bound) = if i > j {
                (e.v(i, j), e.d(j))
            } else {
                ((e.u(i, j) + 1).max(0) as u32, e.d(i))
            };
            if floor >= bound && floor <= s {
                out.push((i, j));
            }
        }
    }
    out
}

/// A point of the affine cell: coordinates along [`template_slots`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPoint {
    staircase: Staircase,
    field: FieldTag,
    coords: Vec<Scalar>,
}

impl CellPoint {
    pub fn origin(staircase: Staircase, field: FieldTag) -> CellPoint {
        let n = template_slots(&staircase).len();
        CellPoint {
            staircase,
            field,
            coords: vec![Scalar::zero(field); n],
        }
    }

    pub fn new(staircase: Staircase, field: FieldTag, coords: Vec<Scalar>) -> Result<CellPoint> {
        let n = template_slots(&staircase).len();
        if coords.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "expected {n} coordinates for {staircase}, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.tag() != field) {
            return Err(Error::ShapeMismatch("coordinate field mismatch".into()));
        }
        Ok(CellPoint {
            staircase,
            field,
            coords,
        })
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Coordinate at slot `(i, j, k)`, if that slot exists.
    pub fn coord(&self, i: usize, j: usize, k: u32) -> Option<&Scalar> {
        template_slots(&self.staircase)
            .iter()
            .position(|&slot| slot == (i, j, k))
            .map(|idx| &self.coords[idx])
    }

    /// Parses a comma-separated coordinate list against the staircase's chart.
    pub fn parse(staircase: Staircase, field: FieldTag, input: &str) -> Result<CellPoint> {
        let coords = input
            .trim()
            .split(',')
            .map(|tok| Scalar::parse(field, tok))
            .collect::<Result<Vec<_>>>()?;
        CellPoint::new(staircase, field, coords)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "field": self.field.to_string(),
            "coords": self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for CellPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (idx, c) in self.coords.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Reads the chart coordinates off a matrix of the canonical family.
pub fn encode_cellpoint(n: &Deformation) -> Result<CellPoint> {
    let e = n.staircase();
    if !e.classify().chart_condition {
        let (i, j) = e.chart_witness().expect("witness exists");
        return Err(Error::Precondition(format!(
            "staircase {e} violates the chart condition at (i,j)=({i},{j})"
        )));
    }
    let flags = n.classify();
    if !flags.in_m {
        return Err(Error::Precondition(
            "matrix is not in the canonical family M(E)".into(),
        ));
    }
    let coords = template_slots(e)
        .iter()
        .map(|&(i, j, k)| n.entry(i, j).coeff(k))
        .collect();
    CellPoint::new(e.clone(), n.field(), coords)
}

/// Builds the canonical-family matrix with the point's coordinates; the
/// entries are exact polynomials (unbounded cap).
pub fn decode_cellpoint(p: &CellPoint) -> Deformation {
    let mut n = Deformation::zero(p.staircase.clone(), p.field, Cap::Unbounded);
    for (&(i, j, k), c) in template_slots(&p.staircase).iter().zip(&p.coords) {
        let mut entry = n.entry(i, j).clone();
        entry.add_assign_term(k, c);
        n.set_entry(i, j, entry).expect("slot indices are in range");
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, OrderKind};

    fn st(m: &[u32]) -> Staircase {
        Staircase::new(m.to_vec()).unwrap()
    }

    fn unit_entry(e: &Staircase, i: usize, j: usize, k: u32) -> Deformation {
        let mut n = Deformation::zero(e.clone(), FieldTag::Q, Cap::Unbounded);
        n.set_entry(
            i,
            j,
            YPoly::term(FieldTag::Q, Cap::Unbounded, k, Scalar::one(FieldTag::Q)),
        )
        .unwrap();
        n
    }

    #[test]
    fn minors_reproduce_running_example() {
        let l = st(&[0, 1, 3, 5]);
        let n = unit_entry(&l, 4, 3, 0);
        let f = n.signed_minors(Cap::Unbounded).unwrap();
        let strs: Vec<String> = f.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x^3-x^2", "x^2y-xy", "xy^3-y^3", "y^5"]);
    }

    #[test]
    fn zero_deformation_minors_are_staircase_generators() {
        for d in 1..=8u32 {
            for e in Staircase::enumerate(d) {
                let n = Deformation::zero(e.clone(), FieldTag::Q, Cap::Unbounded);
                let f = n.signed_minors(Cap::Unbounded).unwrap();
                let expect: Vec<BiPoly> = e
                    .all_generators()
                    .iter()
                    .map(|g| BiPoly::monomial(FieldTag::Q, Cap::Unbounded, *g))
                    .collect();
                assert_eq!(f, expect, "staircase {e}");
            }
        }
    }

    #[test]
    fn minors_leading_terms_in_family() {
        let e = st(&[0, 2, 2, 5]);
        let mut n = Deformation::zero(e.clone(), FieldTag::Q, Cap::Unbounded);
        // Lower entry at (3,1): floor v_{3,1} = max(2-2+3-1, 0) = 2.
        n.set_entry(
            3,
            1,
            YPoly::term(FieldTag::Q, Cap::Unbounded, 2, Scalar::from_int(FieldTag::Q, 3)),
        )
        .unwrap();
        assert!(n.classify().in_n);
        let f = n.signed_minors(Cap::Unbounded).unwrap();
        for (i, fi) in f.iter().enumerate() {
            let (mono, c) = fi.leading_term(OrderKind::LocalDeg).unwrap();
            assert_eq!(mono, Monomial::new((e.t() - i) as u32, e.m(i)));
            assert!(c.is_one());
        }
    }

    #[test]
    fn family_flags() {
        let e = st(&[0, 2, 2, 2, 2]);
        let zero = Deformation::zero(e.clone(), FieldTag::Q, Cap::Unbounded);
        let z = zero.classify();
        assert!(z.in_n && z.in_n_le_s && z.in_t0 && z.in_m && z.in_n_lt_d);

        // Entry of degree 3 ≥ d_1 = 2 at (2,1) keeps N(E) but leaves T_0.
        let deep = unit_entry(&e, 2, 1, 3);
        let f = deep.classify();
        assert!(f.in_n && f.in_n_le_s && !f.in_t0 && !f.in_m && !f.in_n_lt_d);

        // Order bound violation: (3,1) needs ord ≥ u_{3,1} = 2.
        let shallow = unit_entry(&e, 3, 1, 1);
        assert!(!shallow.classify().in_n);
        assert_eq!(shallow.check_in_n(), Err(Error::NotInFamilyN { i: 3, j: 1 }));

        // Upper entry y at (1,3): ord 1 ≥ u_{1,3}+1 = 1, deg < d_1 = 2.
        let upper = unit_entry(&e, 1, 3, 1);
        let uf = upper.classify();
        assert!(uf.in_n && uf.in_n_lt_d && !uf.in_t0);
    }

    #[test]
    fn template_sizes() {
        assert_eq!(cell_dimension(&st(&[0, 1, 3, 5])), 6);
        assert_eq!(
            template_slots(&st(&[0, 1, 3, 5])),
            vec![
                (3, 1, 0),
                (3, 2, 1),
                (4, 1, 0),
                (4, 2, 0),
                (4, 2, 1),
                (4, 3, 1)
            ]
        );
        for d in 2..=12u32 {
            assert_eq!(cell_dimension(&st(&[0, d])), (d - 1) as u64);
        }
        assert_eq!(cell_dimension(&st(&[0, 1])), 0);
        // Degenerate steps force slots empty; the count clamps at zero.  This
        // staircase fails the chart condition and its cell is actually a line,
        // visible in the degree-bounded template below.
        assert_eq!(cell_dimension(&st(&[0, 1, 1, 1])), 0);
        assert_eq!(lt_d_template_slots(&st(&[0, 1, 1, 1])), vec![(1, 3, 0)]);
        let e = st(&[0, 2, 2, 2, 2]);
        assert_eq!(n_le_s_template_slots(&e).len(), 71);
        assert_eq!(
            lt_d_template_slots(&e),
            vec![(1, 3, 1), (1, 4, 0), (1, 4, 1), (2, 1, 1)]
        );
        assert!(!forced_zero_slots(&e).is_empty());
    }

    #[test]
    fn chart_roundtrip() {
        let l = st(&[0, 1, 3, 5]);
        let origin = CellPoint::origin(l.clone(), FieldTag::Q);
        assert_eq!(encode_cellpoint(&decode_cellpoint(&origin)).unwrap(), origin);

        let p = CellPoint::parse(l.clone(), FieldTag::Q, "1,0,0,1,0,0").unwrap();
        let n = decode_cellpoint(&p);
        assert_eq!(n.entry(3, 1).to_string(), "1");
        assert_eq!(n.entry(4, 2).to_string(), "1");
        assert!(n.entry(4, 3).is_zero());
        assert_eq!(encode_cellpoint(&n).unwrap(), p);
        assert_eq!(p.to_string(), "(1,0,0,1,0,0)");
        assert_eq!(p.coord(3, 1, 0), Some(&Scalar::one(FieldTag::Q)));
        assert_eq!(p.coord(9, 9, 9), None);

        assert!(CellPoint::parse(l, FieldTag::Q, "1,2").is_err());
    }

    #[test]
    fn chart_requires_canonical_family() {
        let e = st(&[0, 2, 2, 2, 2]);
        let n = Deformation::zero(e, FieldTag::Q, Cap::Unbounded);
        // Staircase fails the chart condition.
        assert!(matches!(encode_cellpoint(&n), Err(Error::Precondition(_))));

        let l = st(&[0, 1, 3, 5]);
        let bad = unit_entry(&l, 2, 1, 5);
        assert!(matches!(encode_cellpoint(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let l = st(&[0, 1, 3, 5]);
        let n = unit_entry(&l, 4, 3, 1);
        let back = Deformation::from_json(&n.to_json(), FieldTag::Q, Cap::Unbounded).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn capped_minor_guard() {
        let l = st(&[0, 1, 3, 5]);
        let mut n = Deformation::zero(l, FieldTag::Q, Cap::Finite(3));
        n.set_entry(
            4,
            3,
            YPoly::term(FieldTag::Q, Cap::Finite(3), 1, Scalar::one(FieldTag::Q)),
        )
        .unwrap();
        assert!(matches!(
            n.signed_minors(Cap::Finite(6)),
            Err(Error::CapTooSmall { have: 3, need: 6 })
        ));
        assert!(n.signed_minors(Cap::Finite(3)).is_ok());
    }
}
