//! The closed-string A-side: the Morse/log model of the symplectic cochain
//! complex of the pair-of-pants, its twisted sector differentials, the
//! untwisted product table, and Hilbert functions of the invariant parts.
//!
//! Generators: Morse classes e, f1, f2 in the compact part, plus one pair
//! (orbit of degree 2n, orbit of degree 2n+3) per boundary end and winding
//! number n >= 1. The twisted differential pairs each tower with winding
//! weight labels of its end; the towers of end a survive in sector chi
//! exactly when chi kills the end monodromy g_a.

use crate::abelian::{Character, CoverSpec};
use crate::cyclotomic::CycNum;
use crate::poly::{Mono, Poly};
use crate::twisted::{Chain, CurveDatum, GenInfo, TwistedComplex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AModelError {
    #[error("products are only tabulated in the untwisted sector")]
    TwistedProductUnsupported,
    #[error("winding {0} exceeds the complex truncation {1}")]
    WindingOverflow(u32, u32),
}

/// Symbolic description of a generator of the cochain model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScGen {
    E,
    F1,
    F2,
    /// Even orbit class of one end (0 = alpha, 1 = beta, 2 = gamma) and
    /// winding n >= 1; tripled degree 2n.
    ETower(usize, u32),
    /// Odd orbit class; tripled degree 2n + 3.
    FTower(usize, u32),
}

pub const END_NAMES: [&str; 3] = ["a", "b", "g"];

impl ScGen {
    pub fn name(&self) -> String {
        match self {
            ScGen::E => "e".into(),
            ScGen::F1 => "f1".into(),
            ScGen::F2 => "f2".into(),
            ScGen::ETower(a, n) => format!("e{}{}", END_NAMES[*a], n),
            ScGen::FTower(a, n) => format!("f{}{}", END_NAMES[*a], n),
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            ScGen::E => 0,
            ScGen::F1 | ScGen::F2 => 3,
            ScGen::ETower(_, n) => 2 * *n as i64,
            ScGen::FTower(_, n) => 3 + 2 * *n as i64,
        }
    }

    /// Index in the generator table of `sc_complex(_, n_max)`.
    pub fn index(&self, n_max: u32) -> Result<usize, AModelError> {
        match self {
            ScGen::E => Ok(0),
            ScGen::F1 => Ok(1),
            ScGen::F2 => Ok(2),
            ScGen::ETower(a, n) | ScGen::FTower(a, n) => {
                if *n == 0 || *n > n_max {
                    return Err(AModelError::WindingOverflow(*n, n_max));
                }
                let odd = matches!(self, ScGen::FTower(..)) as usize;
                Ok(3 + 6 * (*n as usize - 1) + 2 * a + odd)
            }
        }
    }

    pub fn all(n_max: u32) -> Vec<ScGen> {
        let mut out = vec![ScGen::E, ScGen::F1, ScGen::F2];
        for n in 1..=n_max {
            for a in 0..3 {
                out.push(ScGen::ETower(a, n));
                out.push(ScGen::FTower(a, n));
            }
        }
        out
    }
}

/// Build the twisted symplectic-cochain complex up to winding n_max.
///
/// Differential curve pairs: e -> f1 with labels (gb, ga*gb), e -> f2 with
/// labels (gb, gb*gg), and each tower pair with labels (1, g_end); all other
/// generators are closed.
pub fn sc_complex(cover: &CoverSpec, n_max: u32) -> TwistedComplex {
    let group = &cover.group;
    let gens: Vec<GenInfo> = ScGen::all(n_max)
        .into_iter()
        .map(|g| {
            let weight = match g {
                ScGen::ETower(a, n) | ScGen::FTower(a, n) => {
                    group.mul_int(cover.boundary_images()[a], n as i64)
                }
                _ => group.identity(),
            };
            GenInfo {
                name: g.name(),
                parity: (g.degree() % 2) as u8,
                degree: g.degree(),
                weight,
            }
        })
        .collect();
    let mut curves = Vec::new();
    let idx = |g: ScGen| g.index(n_max).expect("generator in range");
    let gb = cover.g_beta.clone();
    let ga_gb = group.add(&cover.g_alpha, &gb);
    let gb_gg = group.add(&gb, &cover.g_gamma);
    // d(e x chi) = chi(gb)(1 - chi(ga)) f1 + chi(gb)(1 - chi(gg)) f2.
    curves.push(CurveDatum {
        input: idx(ScGen::E),
        output: idx(ScGen::F1),
        sign: 1,
        mono: Mono::one(),
        label: gb.clone(),
    });
    curves.push(CurveDatum {
        input: idx(ScGen::E),
        output: idx(ScGen::F1),
        sign: -1,
        mono: Mono::one(),
        label: ga_gb,
    });
    curves.push(CurveDatum {
        input: idx(ScGen::E),
        output: idx(ScGen::F2),
        sign: 1,
        mono: Mono::one(),
        label: gb,
    });
    curves.push(CurveDatum {
        input: idx(ScGen::E),
        output: idx(ScGen::F2),
        sign: -1,
        mono: Mono::one(),
        label: gb_gg,
    });
    // d(e_a t^n x chi) = (1 - chi(g_a)) f_a t^n.
    for n in 1..=n_max {
        for a in 0..3 {
            curves.push(CurveDatum {
                input: idx(ScGen::ETower(a, n)),
                output: idx(ScGen::FTower(a, n)),
                sign: 1,
                mono: Mono::one(),
                label: group.identity(),
            });
            curves.push(CurveDatum {
                input: idx(ScGen::ETower(a, n)),
                output: idx(ScGen::FTower(a, n)),
                sign: -1,
                mono: Mono::one(),
                label: cover.boundary_images()[a].clone(),
            });
        }
    }
    let complex = TwistedComplex {
        cover: cover.clone(),
        gens,
        curves,
        poly_coeffs: false,
    };
    complex.validate().expect("cochain model is homogeneous");
    complex
}

/// A cochain of the model: a chain over the generator table of
/// `sc_complex(_, n_max)` with constant coefficients.
pub fn gen_chain(g: ScGen, c: CycNum, n_max: u32) -> Result<Chain, AModelError> {
    Ok(Chain::single(g.index(n_max)?, Poly::constant(c)))
}

/// The product of two basis generators in the untwisted cohomology.
fn star_basis(u: ScGen, v: ScGen) -> Vec<(ScGen, i64)> {
    use ScGen::*;
    match (u, v) {
        (E, w) | (w, E) => vec![(w, 1)],
        (ETower(a, m), ETower(b, n)) if a == b => vec![(ETower(a, m + n), 1)],
        (ETower(a, m), FTower(b, n)) | (FTower(b, n), ETower(a, m)) if a == b => {
            vec![(FTower(a, m + n), 1)]
        }
        (F1, ETower(0, n)) | (ETower(0, n), F1) => vec![(FTower(0, n), 1)],
        (F1, ETower(1, n)) | (ETower(1, n), F1) => vec![(FTower(1, n), 1)],
        (F2, ETower(1, n)) | (ETower(1, n), F2) => vec![(FTower(1, n), -1)],
        (F2, ETower(2, n)) | (ETower(2, n), F2) => vec![(FTower(2, n), 1)],
        // The remaining end pairings and all odd * odd products vanish in
        // cohomology.
        _ => vec![],
    }
}

/// Untwisted star product, bilinear over the table. Twisted inputs are
/// rejected rather than guessed.
pub fn star_product(
    u: &Chain,
    chi_u: &Character,
    v: &Chain,
    chi_v: &Character,
    n_max: u32,
) -> Result<Chain, AModelError> {
    if !chi_u.is_trivial() || !chi_v.is_trivial() {
        return Err(AModelError::TwistedProductUnsupported);
    }
    let all = ScGen::all(n_max);
    let mut out = Chain::zero();
    for (gu, pu) in &u.terms {
        for (gv, pv) in &v.terms {
            for (w, s) in star_basis(all[*gu], all[*gv]) {
                let idx = w.index(n_max)?;
                out.add_term(idx, &pu.mul(pv).scale(&CycNum::from_int(s)));
            }
        }
    }
    Ok(out)
}

/// Hilbert function of a sector (or of the full invariant sum when chi is
/// None), as dimensions per degree 0..=cutoff.
pub fn sh_hilbert(
    cover: &CoverSpec,
    chi: Option<&Character>,
    cutoff: i64,
) -> Result<Vec<usize>, crate::twisted::TwistError> {
    let n_max = (cutoff / 2 + 1) as u32;
    let complex = sc_complex(cover, n_max);
    match chi {
        Some(chi) => complex.sector(chi).homology_dims(cutoff, false),
        None => crate::twisted::invariant_sector_dim_sum(&complex, cutoff),
    }
}

/// Per-sector invariant Hilbert function (one summand of SH of the cover).
pub fn sh_sector_invariant_hilbert(
    cover: &CoverSpec,
    chi: &Character,
    cutoff: i64,
) -> Result<Vec<usize>, crate::twisted::TwistError> {
    let n_max = (cutoff / 2 + 1) as u32;
    let complex = sc_complex(cover, n_max);
    complex.sector(chi).homology_dims(cutoff, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{enumerate_characters, FinAbGroup};

    fn z2_cover() -> CoverSpec {
        let (g, _) = FinAbGroup::from_moduli(&[2]).unwrap();
        CoverSpec::new(g, vec![1], vec![1]).unwrap()
    }

    fn z3_cover() -> CoverSpec {
        let (g, _) = FinAbGroup::from_moduli(&[3]).unwrap();
        CoverSpec::new(g, vec![1], vec![1]).unwrap()
    }

    #[test]
    fn complex_is_consistent() {
        for cover in [z2_cover(), z3_cover(), CoverSpec::trivial()] {
            let c = sc_complex(&cover, 6);
            c.validate().unwrap();
            c.d_squared_symbolic().unwrap();
        }
    }

    #[test]
    fn untwisted_hilbert() {
        // Dims 1 at 0; 3 at 2n; 2 at 3; 3 at 3+2n.
        let cover = CoverSpec::trivial();
        let chi = Character::trivial(&cover.group);
        let dims = sh_hilbert(&cover, Some(&chi), 12).unwrap();
        assert_eq!(dims, vec![1, 0, 3, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3]);
    }

    use crate::abelian::Character;

    #[test]
    fn z2_twisted_sector_towers() {
        let cover = z2_cover();
        let chars = enumerate_characters(&cover.group);
        let dims = sh_hilbert(&cover, Some(&chars[1]), 12).unwrap();
        // Morse part: one odd class in degree 3; towers survive only for the
        // gamma end: degree 2n and 3+2n each of dimension 1.
        assert_eq!(dims[0], 0);
        assert_eq!(dims[3], 1);
        assert_eq!(dims[2], 1);
        assert_eq!(dims[4], 1);
        assert_eq!(dims[5], 1);
        assert_eq!(dims[7], 1);
    }

    #[test]
    fn z3_full_twist_single_class() {
        let cover = z3_cover();
        let chars = enumerate_characters(&cover.group);
        for chi in &chars[1..] {
            let dims = sh_hilbert(&cover, Some(chi), 12).unwrap();
            assert_eq!(dims[3], 1);
            assert_eq!(dims.iter().sum::<usize>(), 1, "sector {:?}", chi);
        }
    }

    #[test]
    fn sector_survival_rule() {
        // Towers of end a survive in sector chi iff chi(g_a) = 1; the rule is
        // read off the Hilbert function at degrees 2n.
        let mut specs = vec![z2_cover(), z3_cover()];
        let (g4, _) = FinAbGroup::from_moduli(&[4]).unwrap();
        specs.push(CoverSpec::new(g4, vec![1], vec![1]).unwrap());
        let (g22, m) = FinAbGroup::from_moduli(&[2, 2]).unwrap();
        specs.push(
            CoverSpec::new(g22, m.convert(&[1, 0]).unwrap(), m.convert(&[0, 1]).unwrap()).unwrap(),
        );
        for cover in specs {
            for chi in enumerate_characters(&cover.group).iter().skip(1) {
                let dims = sh_hilbert(&cover, Some(chi), 8).unwrap();
                let survivors = cover
                    .chi_values(chi)
                    .iter()
                    .filter(|v| v.is_one())
                    .count();
                assert_eq!(dims[2], survivors, "cover {:?} chi {:?}", cover, chi);
                assert_eq!(dims[4], survivors);
                assert_eq!(dims[5], survivors);
                // Morse part contributes exactly one odd class.
                assert_eq!(dims[3], 1 + if survivors > 0 { 0 } else { 0 });
            }
        }
    }

    #[test]
    fn twisted_morse_classes_are_colinear() {
        // For chi != 1 the two odd Morse generators give a single class.
        for cover in [z2_cover(), z3_cover()] {
            for chi in enumerate_characters(&cover.group).iter().skip(1) {
                let dims = sh_hilbert(&cover, Some(chi), 4).unwrap();
                let tower_part = cover
                    .chi_values(chi)
                    .iter()
                    .filter(|v| v.is_one())
                    .count();
                // Degree 3 = Morse class (1) and no tower contribution yet.
                assert_eq!(dims[3], 1, "{:?}", chi);
                let _ = tower_part;
            }
        }
    }

    #[test]
    fn star_product_examples() {
        let n_max = 6;
        let one = CycNum::from_int(1);
        let chi = Character::trivial(&CoverSpec::trivial().group);
        let e = gen_chain(ScGen::E, one.clone(), n_max).unwrap();
        let f1 = gen_chain(ScGen::F1, one.clone(), n_max).unwrap();
        // e * f1 = f1.
        assert_eq!(star_product(&e, &chi, &f1, &chi, n_max).unwrap(), f1);
        // f1 * e_alpha t^2 = f_alpha t^2.
        let ea2 = gen_chain(ScGen::ETower(0, 2), one.clone(), n_max).unwrap();
        let fa2 = gen_chain(ScGen::FTower(0, 2), one.clone(), n_max).unwrap();
        assert_eq!(star_product(&f1, &chi, &ea2, &chi, n_max).unwrap(), fa2);
        // e_alpha t * e_beta t = 0.
        let ea1 = gen_chain(ScGen::ETower(0, 1), one.clone(), n_max).unwrap();
        let eb1 = gen_chain(ScGen::ETower(1, 1), one.clone(), n_max).unwrap();
        assert!(star_product(&ea1, &chi, &eb1, &chi, n_max).unwrap().is_zero());
        // f1 * e_beta = -f2 * e_beta.
        let f2 = gen_chain(ScGen::F2, one.clone(), n_max).unwrap();
        let lhs = star_product(&f1, &chi, &eb1, &chi, n_max).unwrap();
        let rhs = star_product(&f2, &chi, &eb1, &chi, n_max).unwrap();
        assert_eq!(lhs, rhs.neg());
        // Twisted inputs are rejected.
        let cover = z2_cover();
        let twisted = &enumerate_characters(&cover.group)[1];
        assert!(matches!(
            star_product(&e, twisted, &f1, &chi, n_max),
            Err(AModelError::TwistedProductUnsupported)
        ));
    }

    #[test]
    fn star_is_unital_and_associative() {
        let n_max = 12;
        let basis = ScGen::all(4);
        let chi = Character::trivial(&CoverSpec::trivial().group);
        let one = CycNum::from_int(1);
        let e = gen_chain(ScGen::E, one.clone(), n_max).unwrap();
        for &u in &basis {
            let cu = gen_chain(u, one.clone(), n_max).unwrap();
            assert_eq!(star_product(&e, &chi, &cu, &chi, n_max).unwrap(), cu);
            for &v in &basis {
                let cv = gen_chain(v, one.clone(), n_max).unwrap();
                for &w in &basis {
                    let cw = gen_chain(w, one.clone(), n_max).unwrap();
                    let uv = star_product(&cu, &chi, &cv, &chi, n_max).unwrap();
                    let vw = star_product(&cv, &chi, &cw, &chi, n_max).unwrap();
                    let left = star_product(&uv, &chi, &cw, &chi, n_max).unwrap();
                    let right = star_product(&cu, &chi, &vw, &chi, n_max).unwrap();
                    assert_eq!(left, right, "({:?} * {:?}) * {:?}", u, v, w);
                }
            }
        }
    }

    #[test]
    fn truncation_stability() {
        let cover = z2_cover();
        for chi in enumerate_characters(&cover.group) {
            let a = sc_complex(&cover, 7)
                .sector(&chi)
                .homology_dims(12, false)
                .unwrap();
            let b = sc_complex(&cover, 10)
                .sector(&chi)
                .homology_dims(12, false)
                .unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unit_dimension_at_degree_zero() {
        for cover in [z2_cover(), z3_cover()] {
            let total = sh_hilbert(&cover, None, 6).unwrap();
            assert_eq!(total[0], 1, "unit of SH for {:?}", cover);
        }
    }
}
