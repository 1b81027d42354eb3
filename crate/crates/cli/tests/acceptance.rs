//! Product acceptance suite: eleven scenario checks over the worked-example
//! corpus, each reporting one `criterion NN <name>: pass|FAIL` line (visible
//! with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, UnwindSafe};

use hilburch::{
    canonical_deformation, cell_dimension, conjecture_probe, cover_search, decode_cellpoint,
    gcl_bound, lt_ideal_lex, membership, minimal_generator_count, n_le_s_template_slots,
    reduce_to_canonical, reduced_standard_basis, reduction_move, syzygy_deformation_from_basis,
    template_slots, truncate_deformation, BiPoly, Cap, CellPoint, Deformation, FieldTag,
    IdealPresentation, Monomial, OrderKind, Scalar, SearchStrategy, Staircase, StandardBasis,
};
use hilburch_cli::fixtures::fixtures;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion(n: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {n:02} {name}: pass"),
        Err(cause) => {
            println!("criterion {n:02} {name}: FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn fingerprint(j: &IdealPresentation) -> String {
    reduced_standard_basis(j).unwrap().fingerprint()
}

fn lex_segments_up_to(colength: u32) -> Vec<Staircase> {
    (1..=colength)
        .flat_map(Staircase::enumerate)
        .filter(|e| e.classify().lex_segment)
        .collect()
}

fn point_from_mask(e: &Staircase, field: FieldTag, dim: usize, mask: u64) -> CellPoint {
    let coords = (0..dim)
        .map(|k| {
            if mask >> k & 1 == 1 {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
        .collect();
    CellPoint::new(e.clone(), field, coords).unwrap()
}

#[test]
fn c01_minors_and_both_leading_term_ideals() {
    criterion(1, "signed minors and their two leading-term ideals", || {
        let f = fixtures().mixed_support;
        let minors = f.matrix().signed_minors(Cap::Unbounded).unwrap();
        assert_eq!(minors, f.expected_minors);
        assert_eq!(lt_ideal_lex(&minors).unwrap(), f.expected_lt_lex);
        let extension = IdealPresentation::new(minors).unwrap();
        let rb = reduced_standard_basis(&extension).unwrap();
        assert_eq!(rb.staircase(), &f.expected_lt_local);
        assert_ne!(f.expected_lt_lex, f.expected_lt_local);
    });
}

#[test]
fn c02_canonical_matrix_by_reduction_moves() {
    criterion(2, "canonical matrix of a power-series ideal", || {
        let f = fixtures().canonical_reduction;
        let want = f.expected_canonical();

        let res = canonical_deformation(&f.gens).unwrap();
        assert_eq!(res.staircase, f.staircase);
        assert_eq!(res.matrix, want);
        assert!(res.point.is_none());

        let rb = reduced_standard_basis(&f.gens).unwrap();
        let n = truncate_deformation(&syzygy_deformation_from_basis(&rb).unwrap());
        let mut stepped = n.clone();
        for &(i, j) in &f.moves {
            stepped = reduction_move(&stepped, i, j).unwrap();
        }
        assert_eq!(reduce_to_canonical(&stepped).unwrap(), want);
        assert_eq!(reduce_to_canonical(&n).unwrap(), want);
    });
}

#[test]
fn c03_minor_map_is_not_injective_beyond_the_family() {
    criterion(3, "distinct matrices presenting one ideal", || {
        let c = fixtures();
        let nbar = c.series_syzygy.nbar();
        let nprime = c.noninjective.nprime();
        assert_eq!(nbar.staircase(), nprime.staircase());
        assert_ne!(nbar, nprime);

        let mb = nbar.signed_minors(nbar.min_cap()).unwrap();
        let mp = nprime.signed_minors(nbar.min_cap()).unwrap();
        let cut: Vec<BiPoly> = mb.iter().map(|g| g.truncate(6)).collect();
        let cut_prime: Vec<BiPoly> = mp.iter().map(|g| g.truncate(6)).collect();
        assert_ne!(cut, cut_prime);

        let want = fingerprint(&c.series_syzygy.gens);
        assert_eq!(fingerprint(&IdealPresentation::new(mb).unwrap()), want);
        assert_eq!(fingerprint(&IdealPresentation::new(mp).unwrap()), want);
    });
}

#[test]
fn c04_cell_dimension_oracles() {
    criterion(4, "cell dimension against frozen values and the closed form", || {
        let c = fixtures();
        assert_eq!(cell_dimension(&c.dimension.staircase), c.dimension.expected_dimension);
        for d in 2..=12 {
            let e = Staircase::new(vec![0, d]).unwrap();
            assert_eq!(cell_dimension(&e), u64::from(d) - 1);
        }
        for colength in 1..=10 {
            for e in Staircase::enumerate(colength) {
                if !e.classify().chart_condition {
                    continue;
                }
                let t = e.t();
                let mut closed_form = 0u64;
                for i in 2..=t + 1 {
                    for j in 1..=(i - 1).min(t) {
                        let floor = i64::from(e.v(i, j));
                        closed_form += (i64::from(e.d(j)) - floor).max(0) as u64;
                    }
                }
                assert_eq!(cell_dimension(&e), closed_form, "staircase {e}");
                assert_eq!(template_slots(&e).len() as u64, closed_form);
            }
        }
    });
}

#[test]
fn c05_parametrization_roundtrip() {
    criterion(5, "cell coordinates survive the minors round trip", || {
        let roundtrip = |e: &Staircase, p: CellPoint| {
            let n = decode_cellpoint(&p);
            let minors = n.signed_minors(Cap::Unbounded).unwrap();
            let res = canonical_deformation(&IdealPresentation::new(minors).unwrap()).unwrap();
            assert_eq!(res.staircase, *e, "staircase drifted at {p}");
            assert_eq!(res.point, Some(p));
        };
        let f2 = FieldTag::fp(2).unwrap();
        for e in lex_segments_up_to(8) {
            let dim = cell_dimension(&e) as usize;
            for mask in 0..1u64 << dim {
                roundtrip(&e, point_from_mask(&e, f2, dim, mask));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0xC05 + e.colength());
            for _ in 0..200 {
                let coords = (0..dim)
                    .map(|_| Scalar::from_int(FieldTag::Q, rng.gen_range(-9..=9)))
                    .collect();
                roundtrip(&e, CellPoint::new(e.clone(), FieldTag::Q, coords).unwrap());
            }
        }
    });
}

#[test]
fn c06_distinct_ideals_across_a_finite_cell() {
    criterion(6, "a finite cell presents pairwise distinct ideals", || {
        let f2 = FieldTag::fp(2).unwrap();
        for e in lex_segments_up_to(8) {
            let dim = cell_dimension(&e) as usize;
            assert!(dim <= 12, "cell {e} too large for the census");
            let mut seen = BTreeSet::new();
            for mask in 0..1u64 << dim {
                let n = decode_cellpoint(&point_from_mask(&e, f2, dim, mask));
                let j = IdealPresentation::new(n.signed_minors(Cap::Unbounded).unwrap()).unwrap();
                seen.insert(fingerprint(&j));
            }
            assert_eq!(seen.len() as u64, 1 << dim, "collision inside cell {e}");
        }
    });
}

#[test]
fn c07_local_staircase_without_a_lex_source() {
    criterion(7, "witness staircase unreachable from lex leading terms", || {
        let f = fixtures().lex_witness;
        let w = f.witness();
        let rb = reduced_standard_basis(&w).unwrap();
        assert_eq!(rb.staircase(), &f.staircase);
        assert_eq!(lt_ideal_lex(w.gens()).unwrap(), f.expected_lt_lex);
        assert_ne!(f.expected_lt_lex, f.staircase);
    });
}

#[test]
fn c08_injectivity_probe_over_small_primes() {
    criterion(8, "degree-bounded family probe is injective", || {
        let f = fixtures().probe;
        for &p in &f.primes {
            let r = conjecture_probe(&f.staircase, p, 1_000_000).unwrap();
            assert!(r.pass, "probe failed at p = {p}: {r:?}");
            assert!(r.injective);
            assert_eq!(r.d_template, f.expected_d_template);
            let points = p.pow(f.expected_d_template as u32);
            assert_eq!(r.image_count, points);
            assert_eq!(r.cell_count, points);
        }
    });
}

#[test]
fn c09_gorenstein_cover_and_gcl_of_the_quintic() {
    criterion(9, "minimal Gorenstein cover of a quintic section ring", || {
        let f = fixtures().cover;
        let rb = reduced_standard_basis(&f.target).unwrap();
        assert_eq!(rb.staircase().hilbert_function(), f.expected_hf);

        let seeded = SearchStrategy::RandomQ { samples: 40, bound: 5, seed: 11 };
        let covers =
            cover_search(&f.target, &f.search_staircase, &seeded, &[f.point()]).unwrap();
        assert_eq!(covers.len(), 1);
        let w = &covers[0];
        assert_eq!(w.colength_gap, f.expected_gap);
        assert_eq!(minimal_generator_count(&w.cover_ideal).unwrap(), 2);
        assert_eq!(fingerprint(&w.cover_ideal), fingerprint(&f.expected_cover));

        let sampled = gcl_bound(&f.target, &seeded, &[f.point()]).unwrap();
        assert_eq!(sampled.value, 2);
        assert!(!sampled.exact());

        let f5 = FieldTag::fp(5).unwrap();
        let swept = SearchStrategy::ExhaustiveFp { prime: 5, budget: 200_000 };
        let exact = gcl_bound(&f.target, &swept, &[f.point_over(f5)]).unwrap();
        assert_eq!(exact.value, 2);
        assert_eq!(exact.lower_bound, 2);
        assert!(exact.exact());
    });
}

#[test]
fn c10_stratification_and_family_membership() {
    criterion(10, "colength-three stratification and a pencil of members", || {
        let c = fixtures();
        let f = &c.stratification;
        let cells = Staircase::enumerate(f.colength);
        assert_eq!(cells.len(), f.count);
        for (e, (want, hf)) in cells.iter().zip(&f.expected) {
            assert_eq!(e, want);
            assert_eq!(&e.hilbert_function(), hf);
        }
        assert_eq!(cells[0].generators_string(), "x,y^3");
        assert_eq!(cells[1].generators_string(), "x^2,xy,y^2");
        assert_eq!(cells[2].generators_string(), "x^3,y");

        for denominator in [1, 2, 5] {
            let member = c.gin.family_member(denominator);
            assert!(membership(&member, &c.gin.expected_lt_local).unwrap());
            assert!(!membership(&member, &cells[0]).unwrap());
        }
    });
}

#[test]
fn c11_randomized_property_sweep() {
    criterion(11, "division, order, and parametrization properties", || {
        order_axioms();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC11);
        let pool: Vec<Staircase> = (4..=7).flat_map(Staircase::enumerate).collect();
        for round in 0..500 {
            let e = &pool[rng.gen_range(0..pool.len())];
            let n = random_family_member(e, &mut rng);
            let minors = n.signed_minors(Cap::Finite(e.socle_degree() + 2)).unwrap();
            let j = IdealPresentation::new(minors)
                .unwrap()
                .with_socle_hint(e.socle_degree());
            let rb = reduced_standard_basis(&j).unwrap();
            assert_eq!(rb.staircase(), e, "minors of a family member left cell {e}");

            if round % 4 == 0 {
                division_contract(&rb, &mut rng);
            }
            if round % 5 == 0 {
                leading_terms_are_stable(e, &j, &rb);
            }
        }
    });
}

/// Antisymmetry, discreteness, and multiplicativity of the three term orders
/// on random monomial triples.
fn order_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAA);
    let orders = [OrderKind::Lex, OrderKind::DegLex, OrderKind::LocalDeg];
    for _ in 0..300 {
        let mono = |rng: &mut ChaCha8Rng| Monomial::new(rng.gen_range(0..8), rng.gen_range(0..8));
        let (a, b, c) = (mono(&mut rng), mono(&mut rng), mono(&mut rng));
        for order in orders {
            assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
            assert_eq!(order.cmp(&a, &b) == std::cmp::Ordering::Equal, a == b);
            assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
        }
    }
}

/// A random member of the socle-truncated syzygy family over `Q`.
fn random_family_member(e: &Staircase, rng: &mut ChaCha8Rng) -> Deformation {
    let mut n = Deformation::zero(e.clone(), FieldTag::Q, Cap::Unbounded);
    for (i, j, k) in n_le_s_template_slots(e) {
        if rng.gen_range(0..3) != 0 {
            continue;
        }
        let coeff = Scalar::from_int(FieldTag::Q, rng.gen_range(1..=4) * (rng.gen_range(0..2) * 2 - 1));
        let mut entry = n.entry(i, j).clone();
        entry.add_assign_term(k, &coeff);
        n.set_entry(i, j, entry).unwrap();
    }
    n
}

/// Division identity `f ≡ Σ qᵢ·gᵢ + r` modulo the cap, with every remainder
/// term outside the staircase.
fn division_contract(rb: &StandardBasis, rng: &mut ChaCha8Rng) {
    let e = rb.staircase();
    let cap = e.socle_degree() + 1;
    let mut f = BiPoly::zero(FieldTag::Q, Cap::Unbounded);
    for _ in 0..6 {
        let m = Monomial::new(rng.gen_range(0..=cap), rng.gen_range(0..=cap));
        f.add_assign_term(&m, &Scalar::from_int(FieldTag::Q, rng.gen_range(-5..=5)));
    }
    let div = hilburch::grauert_divide(&f, rb, cap).unwrap();
    let mut recombined = div.remainder.with_cap(Cap::Unbounded);
    for (q, g) in div.quotients.iter().zip(rb.elements()) {
        recombined = recombined.add(&q.with_cap(Cap::Unbounded).mul(g));
    }
    assert_eq!(f.truncate(cap), recombined.truncate(cap));
    for (m, _) in div.remainder.truncate(cap).iter() {
        assert!(!e.contains(m), "remainder term {m:?} inside the staircase");
    }
}

/// Leading terms do not depend on generator order, and are a fixed point on
/// monomial generators.
fn leading_terms_are_stable(e: &Staircase, j: &IdealPresentation, rb: &StandardBasis) {
    let mut reversed = j.gens().to_vec();
    reversed.reverse();
    let shuffled = IdealPresentation::new(reversed)
        .unwrap()
        .with_socle_hint(e.socle_degree());
    let back = reduced_standard_basis(&shuffled).unwrap();
    assert_eq!(back.staircase(), e);
    assert_eq!(back.fingerprint(), rb.fingerprint());

    let monomials: Vec<BiPoly> = e
        .all_generators()
        .iter()
        .map(|m| BiPoly::monomial(FieldTag::Q, Cap::Unbounded, *m))
        .collect();
    let again = reduced_standard_basis(&IdealPresentation::new(monomials).unwrap()).unwrap();
    assert_eq!(again.staircase(), e);
    assert_eq!(
        again.fingerprint(),
        StandardBasis::monomial_basis(e.clone(), FieldTag::Q).fingerprint()
    );
}
