//! Staircases: zero-dimensional monomial ideals of `k[[x,y]]` in normal form,
//! their numerical invariants, and the canonical bidiagonal matrix `H`.
//!
//! A staircase is written `E = (x^t, x^{t-1}y^{m_1}, …, y^{m_t})` with
//! `0 = m_0 < m_1 ≤ … ≤ m_t`.  Its complement — the monomials outside the
//! ideal — is a finite staircase region whose column heights are the `m_i`.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::parser::parse_poly_list;
use crate::poly::{BiPoly, Cap};
use crate::scalar::FieldTag;

/// A zero-dimensional monomial ideal in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Staircase {
    m: Vec<u32>,
}

/// Structural predicates of a staircase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StairFlags {
    /// All steps strict: `m_0 < m_1 < … < m_t`.
    pub lex_segment: bool,
    /// `m_j − j − 1 ≤ m_i − i` for all `1 ≤ j < i ≤ t`; the condition under
    /// which the cell is an affine space with the canonical chart.
    pub chart_condition: bool,
    /// `u_{i,i−2} ≤ 0` for `3 ≤ i ≤ t+1`: the third diagonal of a deformation
    /// may carry nonzero constant terms, so Gorenstein points can exist.
    pub gorenstein_admissible: bool,
}

impl Staircase {
    /// Builds a staircase from the full exponent sequence `m_0, …, m_t`.
    pub fn new(m: Vec<u32>) -> Result<Staircase> {
        if m.len() < 2 {
            return Err(Error::InvalidStaircase(
                "need at least m_0 and m_1".into(),
            ));
        }
        if m[0] != 0 {
            return Err(Error::InvalidStaircase(format!("m_0 = {} ≠ 0", m[0])));
        }
        if m[1] == 0 {
            return Err(Error::InvalidStaircase(
                "m_1 = 0 contradicts minimality of t".into(),
            ));
        }
        if m.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidStaircase(format!(
                "sequence {m:?} is not nondecreasing"
            )));
        }
        Ok(Staircase { m })
    }

    /// Normalizes an arbitrary generating set of monomials.  Requires a pure
    /// power of `x` and of `y` (zero-dimensionality) and rejects units.
    pub fn from_generators(gens: &[Monomial]) -> Result<Staircase> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.iter().any(|g| *g == Monomial::ONE) {
            return Err(Error::UnitIdeal);
        }
        let t = gens
            .iter()
            .filter(|g| g.b == 0)
            .map(|g| g.a)
            .min()
            .ok_or_else(|| {
                Error::NotZeroDimensional("no pure power of x among the generators".into())
            })? as usize;
        gens.iter()
            .filter(|g| g.a == 0)
            .map(|g| g.b)
            .min()
            .ok_or_else(|| {
                Error::NotZeroDimensional("no pure power of y among the generators".into())
            })?;
        let mut m = vec![u32::MAX; t + 1];
        for i in 0..=t {
            // Least b with x^{t-i} y^b in the ideal.
            m[i] = gens
                .iter()
                .filter(|g| (g.a as usize) <= t - i)
                .map(|g| g.b)
                .min()
                .expect("x^t generator applies to every column");
        }
        Staircase::new(m)
    }

    /// Extracts monomials from polynomial input (each generator must be a
    /// scalar multiple of a single monomial).
    pub fn from_monomial_polys(gens: &[BiPoly]) -> Result<Staircase> {
        let mut monos = Vec::with_capacity(gens.len());
        for g in gens {
            if g.num_terms() != 1 {
                return Err(Error::InvalidStaircase(format!(
                    "generator {g} is not a monomial"
                )));
            }
            monos.push(*g.iter().next().expect("one term").0);
        }
        Staircase::from_generators(&monos)
    }

    pub fn t(&self) -> usize {
        self.m.len() - 1
    }

    /// `m_i` for `0 ≤ i ≤ t`.
    pub fn m(&self, i: usize) -> u32 {
        self.m[i]
    }

    pub fn m_seq(&self) -> &[u32] {
        &self.m
    }

    /// Step size `d_i = m_i − m_{i−1}` for `1 ≤ i ≤ t`.
    pub fn d(&self, i: usize) -> u32 {
        self.m[i] - self.m[i - 1]
    }

    /// Degree matrix entry `u_{i,j} = m_j − m_{i−1} + i − j` for
    /// `1 ≤ i ≤ t+1`, `1 ≤ j ≤ t`.
    pub fn u(&self, i: usize, j: usize) -> i64 {
        self.m[j] as i64 - self.m[i - 1] as i64 + i as i64 - j as i64
    }

    /// `v_{i,j} = max(u_{i,j}, 0)`.
    pub fn v(&self, i: usize, j: usize) -> u32 {
        self.u(i, j).max(0) as u32
    }

    /// The `t+1` staircase generators `x^{t−i} y^{m_i}`, `i = 0..=t`.
    pub fn all_generators(&self) -> Vec<Monomial> {
        let t = self.t();
        (0..=t)
            .map(|i| Monomial::new((t - i) as u32, self.m[i]))
            .collect()
    }

    /// Generators with redundant ones (equal consecutive `m_i`) dropped.
    pub fn minimal_generators(&self) -> Vec<Monomial> {
        let t = self.t();
        self.all_generators()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i == t || self.m[*i] < self.m[*i + 1])
            .map(|(_, g)| g)
            .collect()
    }

    /// Ideal membership for a monomial.
    pub fn contains(&self, mono: &Monomial) -> bool {
        let t = self.t();
        let col = t.saturating_sub(mono.a as usize);
        mono.b >= self.m[col]
    }

    /// Monomials outside the ideal, a basis of the quotient.
    pub fn complement(&self) -> Vec<Monomial> {
        let t = self.t();
        let mut out = Vec::new();
        for a in 0..t {
            for b in 0..self.m[t - a] {
                out.push(Monomial::new(a as u32, b));
            }
        }
        out
    }

    pub fn colength(&self) -> u64 {
        self.m.iter().map(|&v| v as u64).sum()
    }

    /// Largest degree of a monomial outside the ideal.
    pub fn socle_degree(&self) -> u32 {
        let t = self.t();
        (0..t)
            .map(|a| a as u32 + self.m[t - a] - 1)
            .max()
            .expect("t ≥ 1")
    }

    /// `h(i)` = number of complement monomials of total degree `i`.
    pub fn hilbert_function(&self) -> Vec<u32> {
        let mut h = vec![0u32; self.socle_degree() as usize + 1];
        for m in self.complement() {
            h[m.deg() as usize] += 1;
        }
        h
    }

    pub fn classify(&self) -> StairFlags {
        let t = self.t();
        let lex_segment = self.m.windows(2).all(|w| w[0] < w[1]);
        let chart_condition = self.chart_witness().is_none();
        let gorenstein_admissible = (3..=t + 1).all(|i| self.u(i, i - 2) <= 0);
        StairFlags {
            lex_segment,
            chart_condition,
            gorenstein_admissible,
        }
    }

    /// A pair `(i, j)` with `j < i` violating `m_j − j − 1 ≤ m_i − i`, if any.
    /// The first violation found is normalized to the extremes of its equality
    /// blocks (`i` maximal with `m_i` constant, `j` minimal), which keeps the
    /// inequality violated and is the pair the witness construction needs.
    pub fn chart_witness(&self) -> Option<(usize, usize)> {
        let t = self.t();
        for i in 2..=t {
            for j in 1..i {
                if (self.m[j] as i64 - j as i64 - 1) > (self.m[i] as i64 - i as i64) {
                    let mut i = i;
                    let mut j = j;
                    while i < t && self.m[i + 1] == self.m[i] {
                        i += 1;
                    }
                    while j > 1 && self.m[j - 1] == self.m[j] {
                        j -= 1;
                    }
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The canonical bidiagonal matrix: `y^{d_i}` on the diagonal, `−x` just
    /// below it, zero elsewhere; `(t+1) × t`, 1-based shape `(i, j)`.
    pub fn canonical_h(&self, field: FieldTag, cap: Cap) -> Vec<Vec<BiPoly>> {
        let t = self.t();
        let mut h = vec![vec![BiPoly::zero(field, cap); t]; t + 1];
        for i in 1..=t {
            h[i - 1][i - 1] = BiPoly::monomial(field, cap, Monomial::new(0, self.d(i)));
            h[i][i - 1] = BiPoly::monomial(field, cap, Monomial::new(1, 0)).neg();
        }
        h
    }

    /// Row-major degree matrix `u_{i,j}`.
    pub fn degree_matrix(&self) -> Vec<Vec<i64>> {
        let t = self.t();
        (1..=t + 1)
            .map(|i| (1..=t).map(|j| self.u(i, j)).collect())
            .collect()
    }

    /// The unique left-justified staircase with Hilbert function `h`, if any.
    pub fn lex_segment_of(h: &[u32]) -> Result<Staircase> {
        let bad = || Error::InadmissibleHilbertFunction(format!("{h:?}"));
        if h.is_empty() || h[0] != 1 || h.iter().any(|&v| v == 0) {
            return Err(bad());
        }
        // Column a of the complement collects cells at degrees i with h(i) > a;
        // for a staircase region these degrees must form the interval [a, a+height).
        let t = h.iter().map(|&v| v as usize).max().expect("nonempty");
        let mut heights = vec![0u32; t];
        for (a, height) in heights.iter_mut().enumerate() {
            let degs: Vec<usize> = (0..h.len()).filter(|&i| h[i] as usize > a).collect();
            if degs.is_empty()
                || degs[0] != a
                || degs.windows(2).any(|w| w[1] != w[0] + 1)
            {
                return Err(bad());
            }
            *height = degs.len() as u32;
        }
        let mut m = vec![0u32; t + 1];
        for i in 1..=t {
            m[i] = heights[t - i];
        }
        let e = Staircase::new(m).map_err(|_| bad())?;
        if e.hilbert_function() != h {
            return Err(bad());
        }
        Ok(e)
    }

    /// All staircases of the given colength, in ascending `(t, m)` order.
    pub fn enumerate(colength: u32) -> Vec<Staircase> {
        let mut out = Vec::new();
        let mut parts = Vec::new();
        // Nondecreasing positive parts m_1 ≤ … ≤ m_t summing to the colength.
        fn rec(remaining: u32, min_part: u32, parts: &mut Vec<u32>, out: &mut Vec<Staircase>) {
            if remaining == 0 {
                let mut m = vec![0u32];
                m.extend(parts.iter().copied());
                out.push(Staircase::new(m).expect("partition is a valid staircase"));
                return;
            }
            for p in min_part..=remaining {
                parts.push(p);
                rec(remaining - p, p, parts, out);
                parts.pop();
            }
        }
        if colength > 0 {
            rec(colength, 1, &mut parts, &mut out);
        }
        out.sort_by(cmp_staircase);
        out
    }

    /// Accepts `t=3; m=0,1,3,5`, a bare `0,1,3,5`, a generator list
    /// `x^3,x^2*y,x*y^3,y^5`, or the JSON form `{"t":3,"m":[0,1,3,5]}`.
    pub fn parse(input: &str) -> Result<Staircase> {
        let s = input.trim();
        if s.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("bad staircase JSON: {e}"),
            })?;
            return Staircase::from_json(&v);
        }
        if s.contains('x') || s.contains('y') {
            let gens = parse_poly_list(s, ',', FieldTag::Q, Cap::Unbounded)?;
            return Staircase::from_monomial_polys(&gens);
        }
        let (t_part, m_part) = match s.split_once(';') {
            Some((a, b)) => (Some(a.trim()), b.trim()),
            None => (None, s),
        };
        let m_str = m_part.trim().strip_prefix("m=").unwrap_or(m_part.trim());
        let m = m_str
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad staircase exponent `{}`", tok.trim()),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let e = Staircase::new(m)?;
        if let Some(tp) = t_part {
            let t_str = tp.strip_prefix("t=").ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected `t=N`, got `{tp}`"),
            })?;
            let t: usize = t_str.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad t value `{t_str}`"),
            })?;
            if t != e.t() {
                return Err(Error::InvalidStaircase(format!(
                    "t={t} disagrees with {} m-steps",
                    e.t()
                )));
            }
        }
        Ok(e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "t": self.t(), "m": self.m })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Staircase> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: msg.into(),
        };
        let m = v
            .get("m")
            .and_then(|m| m.as_array())
            .ok_or_else(|| bad("staircase JSON needs an `m` array"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| bad("staircase exponents must be small nonnegative integers"))
            })
            .collect::<Result<Vec<u32>>>()?;
        let e = Staircase::new(m)?;
        if let Some(t) = v.get("t").and_then(|t| t.as_u64()) {
            if t as usize != e.t() {
                return Err(Error::InvalidStaircase(format!(
                    "t={t} disagrees with {} m-steps",
                    e.t()
                )));
            }
        }
        Ok(e)
    }

    /// Generator list like `x^3,x^2y,xy^3,y^5` (minimal generators).
    pub fn generators_string(&self) -> String {
        self.minimal_generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Ascending on `(t, m_1, …, m_t)`.
pub fn cmp_staircase(a: &Staircase, b: &Staircase) -> std::cmp::Ordering {
    a.t().cmp(&b.t()).then_with(|| a.m.cmp(&b.m))
}

impl std::fmt::Display for Staircase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = self
            .m
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "t={}; m={}", self.t(), m)
    }
}
