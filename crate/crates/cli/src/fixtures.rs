//! Named corpus of worked examples with frozen expected values, shared by the
//! integration tests and the benchmarks.

use hilburch::parser::parse_poly;
use hilburch::{
    BiPoly, Cap, CellPoint, Deformation, FieldTag, IdealPresentation, Scalar, Staircase,
    StandardBasis, YPoly,
};

fn q(src: &str) -> BiPoly {
    parse_poly(src, FieldTag::Q, Cap::Unbounded).expect("fixture polynomial")
}

fn st(m: &[u32]) -> Staircase {
    Staircase::new(m.to_vec()).expect("fixture staircase")
}

fn ideal(gens: &[&str]) -> IdealPresentation {
    IdealPresentation::new(gens.iter().map(|g| q(g)).collect()).expect("fixture ideal")
}

fn yp(src: &str) -> YPoly {
    YPoly::from_bipoly(&q(src)).expect("fixture pure-y entry")
}

/// A Hilbert–Burch matrix with a unit entry outside the syzygy family: the
/// ideal of its minors is supported away from the origin too, so its lex
/// leading terms and the local leading terms of its extension differ.
pub struct MixedSupportExample {
    pub staircase: Staircase,
    pub unit_slot: (usize, usize),
    pub expected_minors: Vec<BiPoly>,
    pub expected_lt_lex: Staircase,
    pub expected_lt_local: Staircase,
}

impl MixedSupportExample {
    pub fn matrix(&self) -> Deformation {
        let mut n = Deformation::zero(self.staircase.clone(), FieldTag::Q, Cap::Unbounded);
        n.set_entry(self.unit_slot.0, self.unit_slot.1, yp("1"))
            .expect("unit entry");
        n
    }
}

/// Leading-term computation for a two-generator polynomial ideal.
pub struct LeadingTermExample {
    pub gens: IdealPresentation,
    pub expected_lt: Staircase,
}

/// A non-reduced basis whose syzygy matrix has genuine power-series entries.
pub struct SeriesSyzygyExample {
    pub staircase: Staircase,
    pub non_reduced_basis: Vec<BiPoly>,
    pub gens: IdealPresentation,
}

impl SeriesSyzygyExample {
    pub fn nbar(&self) -> Deformation {
        let basis = StandardBasis::new(
            self.staircase.clone(),
            self.non_reduced_basis.clone(),
            false,
        )
        .expect("fixture basis");
        hilburch::syzygy_deformation_from_basis(&basis).expect("fixture syzygy matrix")
    }
}

/// A second deformation presenting the same ideal as [`SeriesSyzygyExample`]:
/// the parametrization of the full syzygy family is not injective.
pub struct NoninjectiveExample {
    pub staircase: Staircase,
    pub gens: IdealPresentation,
}

impl NoninjectiveExample {
    pub fn nprime(&self) -> Deformation {
        let mut n = Deformation::zero(self.staircase.clone(), FieldTag::Q, Cap::Unbounded);
        n.set_entry(1, 4, yp("1")).expect("entry (1,4)");
        n.set_entry(2, 1, yp("-y")).expect("entry (2,1)");
        n
    }
}

/// A power-series ideal whose canonical matrix is reached by reduction moves.
pub struct CanonicalReductionExample {
    pub gens: IdealPresentation,
    pub staircase: Staircase,
    /// The first two positions eliminated by the reduction sweep.
    pub moves: [(usize, usize); 2],
}

impl CanonicalReductionExample {
    pub fn expected_canonical(&self) -> Deformation {
        let mut m0 = Deformation::zero(self.staircase.clone(), FieldTag::Q, Cap::Unbounded);
        m0.set_entry(7, 6, yp("y^3")).expect("entry (7,6)");
        m0
    }
}

/// A lex-segment staircase with known cell dimension.
pub struct CellDimensionExample {
    pub staircase: Staircase,
    pub expected_dimension: u64,
}

/// An ideal whose local leading terms differ from its generic initial ideal.
pub struct GenericInitialExample {
    pub gens: IdealPresentation,
    pub expected_lt_local: Staircase,
    pub expected_gin: Staircase,
}

impl GenericInitialExample {
    /// The family `(y − c⁻¹x², x³)`, inside the same cell for every `c ≠ 0`.
    pub fn family_member(&self, c: i64) -> IdealPresentation {
        let coef = Scalar::parse(FieldTag::Q, &format!("-1/{c}")).expect("nonzero parameter");
        let mut f = q("y");
        f.add_assign_term(&hilburch::Monomial::new(2, 0), &coef);
        IdealPresentation::new(vec![f, q("x^3")]).expect("family member")
    }
}

/// Gorenstein cover search data: target quotient, search cell, the cover
/// point, and the expected cover.
pub struct CoverExample {
    pub target: IdealPresentation,
    pub expected_hf: Vec<u32>,
    pub search_staircase: Staircase,
    pub expected_gap: u64,
    pub expected_cover: IdealPresentation,
}

impl CoverExample {
    pub fn point(&self) -> CellPoint {
        self.point_over(FieldTag::Q)
    }

    pub fn point_over(&self, field: FieldTag) -> CellPoint {
        let coords = [1, 0, 0, 1, 0, 0]
            .iter()
            .map(|&c| Scalar::from_int(field, c))
            .collect();
        CellPoint::new(self.search_staircase.clone(), field, coords).expect("cover point")
    }
}

/// A staircase whose cell contains an ideal whose polynomial part has a
/// different lex staircase: the witness factory builds it.
pub struct LexWitnessExample {
    pub staircase: Staircase,
    pub expected_lt_lex: Staircase,
}

impl LexWitnessExample {
    pub fn witness(&self) -> IdealPresentation {
        hilburch::nonsurj_witness(&self.staircase, FieldTag::Q).expect("witness ideal")
    }
}

/// Exhaustive injectivity probe over small prime fields.
pub struct InjectivityProbeExample {
    pub staircase: Staircase,
    pub primes: [u64; 2],
    pub expected_d_template: usize,
}

/// The monomial ideals of one colength with their Hilbert functions.
pub struct StratificationExample {
    pub colength: u32,
    pub count: usize,
    pub expected: Vec<(Staircase, Vec<u32>)>,
}

/// The full corpus.
pub struct Corpus {
    pub mixed_support: MixedSupportExample,
    pub leading_terms: LeadingTermExample,
    pub series_syzygy: SeriesSyzygyExample,
    pub noninjective: NoninjectiveExample,
    pub canonical_reduction: CanonicalReductionExample,
    pub dimension: CellDimensionExample,
    pub gin: GenericInitialExample,
    pub cover: CoverExample,
    pub lex_witness: LexWitnessExample,
    pub probe: InjectivityProbeExample,
    pub stratification: StratificationExample,
}

pub fn fixtures() -> Corpus {
    Corpus {
        mixed_support: MixedSupportExample {
            staircase: st(&[0, 1, 3, 5]),
            unit_slot: (4, 3),
            expected_minors: vec![
                q("x^3-x^2"),
                q("x^2y-xy"),
                q("xy^3-y^3"),
                q("y^5"),
            ],
            expected_lt_lex: st(&[0, 1, 3, 5]),
            expected_lt_local: st(&[0, 1, 3]),
        },
        leading_terms: LeadingTermExample {
            gens: ideal(&["x^4+x^3y", "y^2+x^3+x^2y"]),
            expected_lt: st(&[0, 2, 2, 2, 2]),
        },
        series_syzygy: SeriesSyzygyExample {
            staircase: st(&[0, 2, 2, 2, 2]),
            non_reduced_basis: vec![
                q("x^4+x^3y"),
                q("x^3y^2+y^5"),
                q("x^2y^2"),
                q("xy^2"),
                q("y^2+x^3+x^2y"),
            ],
            gens: ideal(&["x^4+x^3y", "y^2+x^3+x^2y"]),
        },
        noninjective: NoninjectiveExample {
            staircase: st(&[0, 2, 2, 2, 2]),
            gens: ideal(&["x^4+x^3y", "y^2+x^3+x^2y"]),
        },
        canonical_reduction: CanonicalReductionExample {
            gens: ideal(&["x^6", "xy^2-y^5", "y^8"]),
            staircase: st(&[0, 2, 2, 2, 2, 2, 8]),
            moves: [(6, 5), (7, 5)],
        },
        dimension: CellDimensionExample {
            staircase: st(&[0, 1, 3, 5]),
            expected_dimension: 6,
        },
        gin: GenericInitialExample {
            gens: ideal(&["y-x^2", "x^3"]),
            expected_lt_local: st(&[0, 1, 1, 1]),
            expected_gin: st(&[0, 3]),
        },
        cover: CoverExample {
            target: ideal(&["x^3-2xy^2", "x^2y-2y^3", "y^3"]),
            expected_hf: vec![1, 2, 3, 1],
            search_staircase: st(&[0, 1, 3, 5]),
            expected_gap: 2,
            expected_cover: ideal(&["x^2y-y^3", "x^3-2xy^2"]),
        },
        lex_witness: LexWitnessExample {
            staircase: st(&[0, 2, 2, 2, 2, 2, 8]),
            expected_lt_lex: st(&[0, 1, 2, 2, 2, 3, 8]),
        },
        probe: InjectivityProbeExample {
            staircase: st(&[0, 2, 2, 2, 2]),
            primes: [2, 3],
            expected_d_template: 4,
        },
        stratification: StratificationExample {
            colength: 3,
            count: 3,
            expected: vec![
                (st(&[0, 3]), vec![1, 1, 1]),
                (st(&[0, 1, 2]), vec![1, 2]),
                (st(&[0, 1, 1, 1]), vec![1, 1, 1]),
            ],
        },
    }
}
