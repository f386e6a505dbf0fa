//! Acceptance suite: the eight exit criteria, exact (tolerance zero), run at
//! the default cutoff 24 over the standard test matrix of deck groups.
//! Each test prints one pass/fail line.

use orbikos::abelian::{enumerate_characters, Character, CoverSpec, FinAbGroup};
use orbikos::clifford::{CliffOp, CliffWord};
use orbikos::cyclotomic::CycNum;
use orbikos::poly::{Mono, Poly};
use orbikos::{amodel, floer, koszul, ks, mf, twisted};

const CUTOFF: i64 = 24;

fn cover(moduli: &[u32], ga: &[u32], gb: &[u32]) -> CoverSpec {
    let (group, map) = FinAbGroup::from_moduli(moduli).unwrap();
    CoverSpec::new(
        group,
        map.convert(ga).unwrap(),
        map.convert(gb).unwrap(),
    )
    .unwrap()
}

/// The standard test matrix.
fn test_matrix() -> Vec<CoverSpec> {
    vec![
        cover(&[2], &[1], &[1]),
        cover(&[3], &[1], &[1]),
        cover(&[4], &[1], &[1]),
        cover(&[2, 2], &[1, 0], &[0, 1]),
        cover(&[2, 4], &[1, 0], &[0, 1]),
        cover(&[3, 3], &[1, 0], &[0, 1]),
    ]
}

fn report(criterion: &str, pass: bool) {
    println!(
        "[acceptance] {}: {}",
        criterion,
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{} failed", criterion);
}

/// An order-2 character acting by (-1, -1, +1), if the cover has one.
fn half_turn_sector(spec: &CoverSpec) -> Option<Character> {
    let minus_one = CycNum::from_int(-1);
    enumerate_characters(&spec.group).into_iter().find(|chi| {
        let v = spec.chi_values(chi);
        v[0] == minus_one && v[1] == minus_one && v[2].is_one()
    })
}

#[test]
fn criterion_1_matrix_factorization_identities() {
    let mut pass = true;
    for spec in test_matrix() {
        let trivial = Character::trivial(&spec.group);
        for chi in enumerate_characters(&spec.group) {
            // d^2 = (x'y'z' - xyz) id, verified inside build_delta.
            if mf::build_delta(&spec, &chi).is_err() {
                pass = false;
            }
            // D^2 = 0 on the hom complex, checked on all 64 basis words.
            for w in CliffWord::all() {
                let phi = mf::HomElement {
                    source: trivial.clone(),
                    target: chi.clone(),
                    parity: w.parity(),
                    op: CliffOp::from_word(w, Poly::one()),
                };
                let dd = mf::hom_diff(&spec, &mf::hom_diff(&spec, &phi).unwrap()).unwrap();
                if !dd.op.is_zero() {
                    pass = false;
                }
            }
        }
    }
    // Closedness of the explicit quasi-inverse images in the half-turn sector.
    let z2 = cover(&[2], &[1], &[1]);
    let chi = half_turn_sector(&z2).expect("order-2 sector");
    let even = mf::explicit_lift_theta_xy(&z2, &chi).unwrap();
    let odd = mf::explicit_lift_theta_xyz(&z2, &chi).unwrap();
    pass &= mf::hom_diff(&z2, &even).unwrap().op.is_zero();
    pass &= mf::hom_diff(&z2, &odd).unwrap().op.is_zero();
    report("criterion 1 (matrix-factorization identities)", pass);
}

#[test]
fn criterion_2_product_table_bit_exact() {
    let z2 = cover(&[2], &[1], &[1]);
    let chi = half_turn_sector(&z2).expect("order-2 sector");
    let product_sector = koszul::build_sector(&z2, &Character::trivial(&z2.group));

    let quarter = CycNum::from_ratio(1, 4);
    let expect_even_even =
        koszul::Cochain::scalar(Poly::monomial(Mono::from_xyz(0, 0, 2), quarter.clone()));
    let mut expect_odd_even =
        koszul::Cochain::word(0b100, Poly::monomial(Mono::from_xyz(0, 0, 2), quarter.clone()));
    expect_odd_even.add_term(0b010, &Poly::monomial(Mono::from_xyz(0, 1, 1), quarter));
    expect_odd_even.add_term(
        0b001,
        &Poly::monomial(Mono::from_xyz(1, 0, 1), CycNum::from_ratio(-1, 2)),
    );

    // Explicit-lift route: the raw projections reproduce the table verbatim.
    let even = mf::explicit_lift_theta_xy(&z2, &chi).unwrap();
    let odd = mf::explicit_lift_theta_xyz(&z2, &chi).unwrap();
    let mut pass = mf::cup_from_lifts_raw(&z2, &even, &even).unwrap() == expect_even_even;
    pass &= mf::cup_from_lifts_raw(&z2, &odd, &even).unwrap() == expect_odd_even;
    pass &= mf::cup_from_lifts(&z2, &odd, &odd).unwrap().is_zero();

    // Solver route: identical canonical class representatives.
    let txy = koszul::Cochain::word(0b011, Poly::one());
    let txyz = koszul::Cochain::word(0b111, Poly::one());
    let p1 = mf::cup_product(&z2, &txy, &chi, &txy, &chi, 12).unwrap();
    let p2 = mf::cup_product(&z2, &txyz, &chi, &txy, &chi, 12).unwrap();
    let p3 = mf::cup_product(&z2, &txyz, &chi, &txyz, &chi, 12).unwrap();
    pass &= p1 == product_sector.reduce_mod_boundaries(&expect_even_even);
    pass &= p2 == product_sector.reduce_mod_boundaries(&expect_odd_even);
    pass &= p3.is_zero();
    report("criterion 2 (product table bit-exact)", pass);
}

#[test]
fn criterion_3_untwisted_koszul_oracle() {
    let trivial = CoverSpec::trivial();
    let chi = Character::trivial(&trivial.group);
    let sector = koszul::build_sector(&trivial, &chi);
    let dims = sector.homology_dims(CUTOFF, false);
    let mut pass = true;
    for d in 0..=CUTOFF {
        if dims[d as usize] != koszul::oracle_dim(koszul::SectorShape::Untwisted, d) {
            pass = false;
        }
    }
    // Even dims 1, 3, 3, ...; odd dims 2, 3, 3, ...
    pass &= dims[0] == 1 && dims[3] == 2;
    pass &= (2..=CUTOFF).step_by(2).all(|d| dims[d as usize] == 3);
    pass &= (5..=CUTOFF).step_by(2).all(|d| dims[d as usize] == 3);
    // No cohomology in exterior degrees -2 and -3 in any slice.
    for d in 0..=CUTOFF {
        pass &= sector.unfolded_homology_dim(2, d) == 0;
        pass &= sector.unfolded_homology_dim(3, d) == 0;
    }
    report("criterion 3 (untwisted Koszul oracle)", pass);
}

#[test]
fn criterion_4_cocycle_lemmas_and_sector_dims() {
    let mut pass = true;
    for spec in test_matrix() {
        let complex = floer::cf_complex(&spec);
        for chi in enumerate_characters(&spec.group) {
            let sector = complex.sector(&chi);
            if !chi.is_trivial() {
                let sc = floer::special_cocycles(&spec, &chi, &sector);
                let [ca, cb, cg] = spec.chi_values(&chi);
                pass &= sc.p_closed && sc.q_closed && sc.r_closed;
                pass &= sc.u_closed == ca.is_one();
                pass &= sc.v_closed == cb.is_one();
                pass &= sc.w_closed == cg.is_one();
            }
            let dims = sector.homology_dims(CUTOFF, false).unwrap();
            let oracle = floer::cf_oracle_dims(&spec, &chi, CUTOFF);
            if dims != oracle {
                eprintln!("dims mismatch {:?} sector {:?}", spec, chi);
                pass = false;
            }
        }
    }
    report("criterion 4 (cocycle lemmas and sector dims)", pass);
}

#[test]
fn criterion_5_averaging_isomorphisms() {
    let mut pass = true;
    for spec in test_matrix() {
        let cf = floer::cf_complex(&spec);
        pass &= twisted::verify_psi(&cf, CUTOFF).is_ok();
        let up = twisted::UpstairsComplex::new(&cf).homology_dims(CUTOFF).unwrap();
        let sum = twisted::invariant_sector_dim_sum(&cf, CUTOFF).unwrap();
        if up != sum {
            eprintln!("Floer sector sum mismatch for {:?}", spec);
            pass = false;
        }
        let n_max = (CUTOFF / 2 + 1) as u32;
        let sc = amodel::sc_complex(&spec, n_max);
        pass &= twisted::verify_psi(&sc, CUTOFF).is_ok();
        let up = twisted::UpstairsComplex::new(&sc).homology_dims(CUTOFF).unwrap();
        let sum = twisted::invariant_sector_dim_sum(&sc, CUTOFF).unwrap();
        if up != sum {
            eprintln!("cochain sector sum mismatch for {:?}", spec);
            pass = false;
        }
    }
    report("criterion 5 (averaging isomorphisms)", pass);
}

#[test]
fn criterion_6_kodaira_spencer() {
    let mut pass = true;
    // The solver recovers the three undetermined constants.
    for n in [2u32, 3, 4] {
        for (cx, cy, cz) in ks::morse_image_constants(n).unwrap() {
            pass &= cx.equals(&CycNum::from_int(-1));
            pass &= cy.equals(&CycNum::from_int(1));
            pass &= cz.is_zero();
        }
    }
    for spec in test_matrix() {
        let mut invariant_sum = vec![0usize; (CUTOFF + 1) as usize];
        for chi in enumerate_characters(&spec.group) {
            let sol = match ks::solve_sector(&spec, &chi, CUTOFF) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("solve failed for {:?} sector {:?}: {}", spec, chi, e);
                    pass = false;
                    continue;
                }
            };
            let rep = ks::verify_sector(&sol, CUTOFF);
            if !(rep.chain_map_ok
                && rep.weights_preserved
                && rep.quasi_iso
                && rep.invariant_quasi_iso)
            {
                eprintln!("sector report failed for {:?} sector {:?}", spec, chi);
                pass = false;
            }
            for (t, c) in invariant_sum.iter_mut().zip(&rep.invariant) {
                *t += c.dim_target;
            }
        }
        // The invariant comparison realizes the graded-module isomorphism
        // with the orbifold Koszul algebra.
        let kos = koszul::orbifold_hilbert(&spec, CUTOFF);
        if invariant_sum != kos {
            eprintln!(
                "module comparison failed for {:?}: {:?} vs {:?}",
                spec, invariant_sum, kos
            );
            pass = false;
        }
    }
    report("criterion 6 (Kodaira-Spencer quasi-isomorphisms)", pass);
}

#[test]
fn criterion_7_worked_examples() {
    let mut pass = true;
    // Order-2 cover: the four-punctured sphere.
    let z2 = cover(&[2], &[1], &[1]);
    let inv = z2.invariants().unwrap();
    pass &= inv.genus == 0 && inv.punctures == 4;
    let chi = &enumerate_characters(&z2.group)[1];
    let sector = koszul::build_sector(&z2, chi);
    pass &= sector.shape == koszul::SectorShape::OneFixed(2);
    // The twisted sector is C[z] tx.ty + C[z] tx.ty.tz with zero
    // differential, entirely weight-invariant.
    for d in 0..=CUTOFF {
        let basis = sector.slice_basis(d, true);
        pass &= basis == sector.slice_basis(d, false);
        for (mono, mask) in &basis {
            pass &= (*mask == 0b011 || *mask == 0b111)
                && mono.0[0] == 0
                && mono.0[1] == 0;
        }
        let expected = usize::from(d >= 2);
        pass &= basis.len() == expected;
        pass &= sector.homology_dims(CUTOFF, false)[d as usize] == expected;
    }

    // Order-3 cover: the thrice-punctured torus with two odd point classes.
    let z3 = cover(&[3], &[1], &[1]);
    let inv = z3.invariants().unwrap();
    pass &= inv.genus == 1 && inv.punctures == 3;
    let chars = enumerate_characters(&z3.group);
    for chi in &chars[1..] {
        let s = koszul::build_sector(&z3, chi);
        pass &= s.shape == koszul::SectorShape::ZeroFixed;
        let dims = s.homology_dims(12, true);
        pass &= dims[3] == 1 && dims.iter().sum::<usize>() == 1;
    }

    // Genus and puncture formula for all standard two-factor covers.
    for m in 2..=6u64 {
        for n in 2..=6u64 {
            let spec = cover(&[m as u32, n as u32], &[1, 0], &[0, 1]);
            let inv = spec.invariants().unwrap();
            let gcd = num_integer::gcd(m, n);
            pass &= inv.punctures == m + n + gcd;
            pass &= inv.genus == ((m - 1) * (n - 1) + 1 - gcd) / 2;
        }
    }
    report("criterion 7 (worked examples)", pass);
}

#[test]
fn criterion_8_untwisted_ring_match() {
    let rep = ks::ring_match(12).unwrap();
    let mut pass = rep.all_ok;
    // Every comparison holds with the same global convention; the odd Morse
    // images carry the recorded signs against the named generators.
    pass &= rep.entries.iter().all(|e| e.matched && e.sign == 1);
    pass &= rep.generator_signs.len() == 2;
    report("criterion 8 (untwisted ring match)", pass);
}

/// Truncation-stability spot check: doubling the cutoff on one twisted
/// sector does not change any dimension in the shared range.
#[test]
fn truncation_stability_spot_check() {
    let z2 = cover(&[2], &[1], &[1]);
    let chi = &enumerate_characters(&z2.group)[1];
    let short = amodel::sh_hilbert(&z2, Some(chi), 12).unwrap();
    let long = amodel::sh_hilbert(&z2, Some(chi), 24).unwrap();
    let pass = short[..] == long[..13];
    report("truncation stability (spot check)", pass);
}
