//! Leading-term ideals under the local degree order, by truncated linear
//! algebra with a Nakayama stopping rule.
//!
//! For a working degree `D`, the span of `{x^a y^b·g : a+b+ord(g) < D}` inside
//! `R/m^D` is row-reduced with pivots chosen greatest under the local order.
//! If every monomial of degree `D−1` is a pivot then `m^{D−1} ⊆ J + m^D`, so
//! by Nakayama `m^{D−1} ⊆ J`; the pivot monomials below degree `D−1` are then
//! exactly the staircase of `Lt(J)` and the fully reduced pivot rows with
//! staircase-generator pivots are the reduced standard basis (they are honest
//! elements of `J` because `m^D ⊆ J`).  Otherwise `D` is doubled.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};
use crate::staircase::Staircase;

use super::IdealPresentation;

/// Hard ceiling on the working degree; beyond this the input is treated as
/// not finite-colength.
pub const DEGREE_LIMIT: u32 = 64;

/// Audit trail of a leading-term computation.
#[derive(Debug, Clone)]
pub struct LtCertificate {
    pub staircase: Staircase,
    /// The accepted working degree `D`.
    pub working_degree: u32,
    /// Pivot monomials of the echelon form, ascending lex.
    pub pivots: Vec<Monomial>,
    /// Reduced rows whose pivots are the staircase generators, in generator
    /// order `x^t, x^{t-1}y^{m_1}, …, y^{m_t}`.
    pub basis_rows: Vec<BiPoly>,
}

impl LtCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "staircase": self.staircase.to_json(),
            "working_degree": self.working_degree,
            "pivot_count": self.pivots.len(),
            "pivots": self.pivots.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "reduced_basis": self.basis_rows.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Computes the exact staircase of `Lt(J)` under the local degree order and
/// the echelon certificate that witnesses it.
pub fn lt_ideal_local(j: &IdealPresentation) -> Result<(Staircase, LtCertificate)> {
    let initial = match j.socle_hint() {
        Some(s) => s + 2,
        None => {
            j.gens()
                .iter()
                .map(|g| g.deg().expect("presentation drops zero generators"))
                .max()
                .expect("nonempty")
                + 2
        }
    }
    .max(2);
    let mut d = initial;
    loop {
        if d > DEGREE_LIMIT {
            return Err(Error::DegreeLimitExceeded(DEGREE_LIMIT));
        }
        if let Cap::Finite(c) = j.cap() {
            if c + 1 < d {
                return Err(Error::CapTooSmall { have: c, need: d - 1 });
            }
        }
        if let Some(result) = attempt(j, d)? {
            return Ok(result);
        }
        d *= 2;
    }
}

/// One working-degree attempt; `None` signals rejection (complement reaches
/// degree `D−1`), prompting a doubled retry.
fn attempt(j: &IdealPresentation, d: u32) -> Result<Option<(Staircase, LtCertificate)>> {
    let field = j.field();
    let ncols = count_below(d);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in j.gens() {
        let o = g.ord().expect("nonzero");
        if o >= d {
            continue;
        }
        for a in 0..(d - o) {
            for b in 0..(d - o - a) {
                let prod = g.mul_monomial(&Monomial::new(a, b)).truncate(d - 1);
                if prod.is_zero() {
                    continue;
                }
                let mut row = vec![Scalar::zero(field); ncols];
                for (m, c) in prod.iter() {
                    row[mono_index(m)] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // All generators have order ≥ D: the complement fills degree D−1.
        return Ok(None);
    }
    let pivots = rref(&mut rows);
    if pivots.contains(&0) {
        return Err(Error::UnitIdeal);
    }
    let top_range = count_below(d - 1)..count_below(d);
    if !top_range.clone().all(|c| pivots.binary_search(&c).is_ok()) {
        return Ok(None);
    }
    let pivot_monos: Vec<Monomial> = pivots.iter().map(|&c| index_mono(c)).collect();
    let staircase = Staircase::from_generators(&pivot_monos)?;
    // The non-pivot monomials must be exactly the staircase complement.
    let mut complement: Vec<usize> = staircase
        .complement()
        .iter()
        .map(mono_index)
        .collect();
    complement.sort_unstable();
    let non_pivots: Vec<usize> =
        (0..ncols).filter(|c| pivots.binary_search(c).is_err()).collect();
    if complement != non_pivots {
        return Err(Error::Internal(
            "echelon complement is not a staircase region".into(),
        ));
    }
    let t = staircase.t();
    let mut basis_rows = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let lead = Monomial::new((t - i) as u32, staircase.m(i));
        let r = pivots
            .binary_search(&mono_index(&lead))
            .map_err(|_| Error::Internal(format!("missing pivot {lead}")))?;
        // Exact element of J: the residual above degree D−1 lies in m^D ⊆ J.
        basis_rows.push(row_to_poly(&rows[r], field, Cap::Unbounded));
    }
    let mut pivot_monos = pivot_monos;
    pivot_monos.sort();
    let cert = LtCertificate {
        staircase: staircase.clone(),
        working_degree: d,
        pivots: pivot_monos,
        basis_rows,
    };
    Ok(Some((staircase, cert)))
}

/// Number of monomials of total degree `< d`.
fn count_below(d: u32) -> usize {
    let d = d as usize;
    d * (d + 1) / 2
}

/// Column index of a monomial: degree ascending, `x`-exponent descending
/// within a degree — the greatest monomial under the local order comes first.
fn mono_index(m: &Monomial) -> usize {
    let d = m.deg() as usize;
    d * (d + 1) / 2 + (d - m.a as usize)
}

fn index_mono(idx: usize) -> Monomial {
    let mut d = 0usize;
    while (d + 1) * (d + 2) / 2 <= idx {
        d += 1;
    }
    let offset = idx - d * (d + 1) / 2;
    Monomial::new((d - offset) as u32, offset as u32)
}

fn row_to_poly(row: &[Scalar], field: FieldTag, cap: Cap) -> BiPoly {
    BiPoly::from_terms(
        field,
        cap,
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (index_mono(i), c.clone())),
    )
}

/// In-place reduced row echelon form; returns the ascending pivot columns.
/// The reduced form of a row space is unique, so the result does not depend
/// on generator order.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            if !rows[rank][c].is_zero() {
                rows[rank][c] = rows[rank][c].mul(&inv);
            }
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                if rows[rank][c].is_zero() {
                    continue;
                }
                let delta = rows[rank][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn ideal(list: &[&str]) -> IdealPresentation {
        IdealPresentation::new(
            list.iter()
                .map(|s| parse_poly(s, FieldTag::Q, Cap::Unbounded).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn lt(list: &[&str]) -> Staircase {
        lt_ideal_local(&ideal(list)).unwrap().0
    }

    #[test]
    fn column_order_is_local_degree_descending() {
        let seq: Vec<Monomial> = (0..10).map(index_mono).collect();
        for w in seq.windows(2) {
            assert_eq!(
                crate::monomial::OrderKind::LocalDeg.cmp(&w[0], &w[1]),
                std::cmp::Ordering::Greater
            );
        }
        for idx in 0..50 {
            assert_eq!(mono_index(&index_mono(idx)), idx);
        }
    }

    #[test]
    fn monomial_ideals_are_fixed_points() {
        for d in 1..=6u32 {
            for e in Staircase::enumerate(d) {
                let j = IdealPresentation::new(
                    e.minimal_generators()
                        .iter()
                        .map(|g| BiPoly::monomial(FieldTag::Q, Cap::Unbounded, *g))
                        .collect(),
                )
                .unwrap();
                let (actual, cert) = lt_ideal_local(&j).unwrap();
                assert_eq!(actual, e);
                assert_eq!(cert.basis_rows.len(), e.t() + 1);
            }
        }
    }

    #[test]
    fn running_example_extension() {
        // The polynomial-ring ideal extends to a smaller-staircase ideal.
        let e = lt(&["x^3-x^2", "x^2y-xy", "xy^3-y^3", "y^5"]);
        assert_eq!(e, Staircase::new(vec![0, 1, 3]).unwrap());
    }

    #[test]
    fn two_generator_example() {
        let e = lt(&["x^4+x^3y", "y^2+x^3+x^2y"]);
        assert_eq!(e, Staircase::new(vec![0, 2, 2, 2, 2]).unwrap());
    }

    #[test]
    fn reduced_basis_of_running_example() {
        let b = super::super::reduced_standard_basis(&ideal(&[
            "x^3-x^2", "x^2y-xy", "xy^3-y^3", "y^5",
        ]))
        .unwrap();
        // E = (x², xy, y³); the reduced tails stay outside E.
        assert_eq!(b.staircase(), &Staircase::new(vec![0, 1, 3]).unwrap());
        for f in b.elements() {
            let lt = f
                .leading_monomial(crate::monomial::OrderKind::LocalDeg)
                .unwrap();
            for (m, _) in f.iter() {
                if *m != lt {
                    assert!(!b.staircase().contains(m), "tail monomial {m} inside E");
                }
            }
        }
    }

    #[test]
    fn unit_and_degenerate_inputs() {
        assert_eq!(
            lt_ideal_local(&ideal(&["1+x"])).unwrap_err(),
            Error::UnitIdeal
        );
        assert_eq!(
            lt_ideal_local(&ideal(&["x"])).unwrap_err(),
            Error::DegreeLimitExceeded(DEGREE_LIMIT)
        );
        assert_eq!(
            lt_ideal_local(&ideal(&["x^2-xy", "y^2x - y^3"])).unwrap_err(),
            Error::DegreeLimitExceeded(DEGREE_LIMIT)
        );
    }

    #[test]
    fn generator_order_and_degree_idempotence() {
        let a = lt_ideal_local(&ideal(&["y^2+x^3+x^2y", "x^4+x^3y"])).unwrap();
        let b = lt_ideal_local(&ideal(&["x^4+x^3y", "y^2+x^3+x^2y"])).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(
            a.1.basis_rows, b.1.basis_rows,
            "echelon certificate depends on generator order"
        );
        // Seeding with a too-small hint still converges to the same answer.
        let c = lt_ideal_local(&ideal(&["x^4+x^3y", "y^2+x^3+x^2y"]).with_socle_hint(0)).unwrap();
        assert_eq!(c.0, a.0);
        assert_eq!(c.1.basis_rows, a.1.basis_rows);
    }

    #[test]
    fn capped_generators_guard() {
        let gens = vec![
            parse_poly("x^2", FieldTag::Q, Cap::Finite(2)).unwrap(),
            parse_poly("y^2", FieldTag::Q, Cap::Finite(2)).unwrap(),
            parse_poly("xy", FieldTag::Q, Cap::Finite(2)).unwrap(),
        ];
        let j = IdealPresentation::new(gens).unwrap();
        // Needs D = 4 > cap+1 = 3.
        assert!(matches!(
            lt_ideal_local(&j),
            Err(Error::CapTooSmall { .. })
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let (_, cert) = lt_ideal_local(&ideal(&["x^2", "xy", "y^2"])).unwrap();
        let v = cert.to_json();
        assert_eq!(v["staircase"]["m"], serde_json::json!([0, 1, 2]));
        assert!(v["working_degree"].as_u64().unwrap() >= 3);
        assert_eq!(v["reduced_basis"].as_array().unwrap().len(), 3);
    }
}
