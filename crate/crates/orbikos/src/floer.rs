//! The deformed Floer model of the Seidel Lagrangian: the 8-generator
//! complex with its character-twisted differential, the distinguished
//! cocycles of the twisted sectors, the partial product table of the
//! untwisted sector, and the comparison map to Koszul cochains.

use crate::abelian::{Character, CoverSpec};
use crate::cyclotomic::CycNum;
use crate::koszul::{self, Cochain};
use crate::poly::{Mono, Poly};
use crate::twisted::{Chain, SectorComplex, TwistedComplex};
use std::collections::BTreeMap;

pub const EL: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const Z: usize = 3;
pub const XB: usize = 4;
pub const YB: usize = 5;
pub const ZB: usize = 6;
pub const FL: usize = 7;

pub const CURVE_DATA: &str = include_str!("../data/floer_curves.txt");

/// The twisted Floer complex for a cover, from the shipped curve data.
pub fn cf_complex(cover: &CoverSpec) -> TwistedComplex {
    let complex =
        TwistedComplex::parse(CURVE_DATA, cover, true).expect("shipped curve data is well-formed");
    debug_assert_eq!(complex.gens.len(), 8);
    complex
}

fn gen_chain(g: usize, c: CycNum) -> Chain {
    Chain::single(g, Poly::constant(c))
}

fn var_gen_chain(var: usize, g: usize, c: CycNum) -> Chain {
    Chain::single(g, Poly::monomial(Mono::var(var), c))
}

/// The distinguished odd and even cochains of a twisted sector, with their
/// cocycle statuses computed from the differential.
pub struct SpecialCocycles {
    pub p: Chain,
    pub q: Chain,
    pub r: Chain,
    pub u: Chain,
    pub v: Chain,
    pub w: Chain,
    pub p_closed: bool,
    pub q_closed: bool,
    pub r_closed: bool,
    pub u_closed: bool,
    pub v_closed: bool,
    pub w_closed: bool,
}

/// Build the six distinguished cochains for a nontrivial sector.
///
/// The odd trio is always closed; each even cochain is closed exactly when
/// the matching boundary monodromy is fixed by the character.
pub fn special_cocycles(
    cover: &CoverSpec,
    chi: &Character,
    sector: &SectorComplex,
) -> SpecialCocycles {
    let [ca, cb, cg] = cover.chi_values(chi);
    let one = CycNum::from_int(1);
    let ca_inv = ca.inv().expect("root of unity");
    let cb_inv = cb.inv().expect("root of unity");
    let cg_inv = cg.inv().expect("root of unity");

    let p = gen_chain(FL, one.sub(&ca))
        .add(&var_gen_chain(1, Y, cb_inv.neg()))
        .add(&var_gen_chain(2, Z, one.clone()));
    let q = gen_chain(FL, one.sub(&cb))
        .add(&var_gen_chain(0, X, ca_inv.clone()))
        .add(&var_gen_chain(2, Z, cb.neg()));
    let r = gen_chain(FL, one.sub(&cg))
        .add(&var_gen_chain(0, X, cg.mul(&ca_inv).neg()))
        .add(&var_gen_chain(1, Y, cg.clone()));
    let u = var_gen_chain(0, EL, ca_inv.clone()).add(&gen_chain(XB, ca_inv.sub(&cb)));
    let v = var_gen_chain(1, EL, cg.clone()).add(&gen_chain(YB, cb_inv.sub(&cg)));
    let w = var_gen_chain(2, EL, one).add(&gen_chain(ZB, cg_inv.sub(&ca)));

    SpecialCocycles {
        p_closed: sector.is_cocycle(&p),
        q_closed: sector.is_cocycle(&q),
        r_closed: sector.is_cocycle(&r),
        u_closed: sector.is_cocycle(&u),
        v_closed: sector.is_cocycle(&v),
        w_closed: sector.is_cocycle(&w),
        p,
        q,
        r,
        u,
        v,
        w,
    }
}

/// Closed-form Hilbert oracle for a Floer sector, which coincides with the
/// Koszul sector oracle degree by degree.
pub fn cf_oracle_dims(cover: &CoverSpec, chi: &Character, cutoff: i64) -> Vec<usize> {
    let shape = koszul::build_sector(cover, chi).shape;
    (0..=cutoff).map(|d| koszul::oracle_dim(shape, d)).collect()
}

/// Generator images under the identification with Clifford words:
/// (theta mask, sign).
pub fn eta(gen: usize) -> (u8, i64) {
    match gen {
        EL => (0b000, 1),
        X => (0b001, 1),
        Y => (0b010, 1),
        Z => (0b100, 1),
        XB => (0b110, -1),
        // theta_z theta_x reorders to -theta_x theta_z.
        YB => (0b101, 1),
        ZB => (0b011, -1),
        FL => (0b111, -1),
        _ => panic!("generator index"),
    }
}

/// Map a homogeneous Floer cochain of a sector into the sector's Koszul
/// complex: keep the terms whose generator degree is maximal, restrict
/// coefficients to the fixed locus, and rewrite generators as theta words.
pub fn tau(cover: &CoverSpec, chi: &Character, chain: &Chain) -> Cochain {
    const GEN_DEGREE: [i64; 8] = [0, 1, 1, 1, 2, 2, 2, 3];
    let Some(max_deg) = chain.terms.keys().map(|g| GEN_DEGREE[*g]).max() else {
        return Cochain::zero();
    };
    let sector = koszul::build_sector(cover, chi);
    let mut out = Cochain::zero();
    for (g, p) in &chain.terms {
        if GEN_DEGREE[*g] != max_deg {
            continue;
        }
        let mut restricted = p.clone();
        for i in 0..3 {
            if sector.moved_mask & (1 << i) != 0 {
                restricted = restricted.set_var_zero(i);
            }
        }
        let (mask, sign) = eta(*g);
        out.add_term(mask, &restricted.scale(&CycNum::from_int(sign)));
    }
    out
}

/// The partial product table of the untwisted sector. Pairs outside the
/// table yield None (undefined), never zero.
pub fn m2_partial(u: &Chain, v: &Chain) -> Option<Chain> {
    let mut out = Chain::zero();
    for (g1, p1) in &u.terms {
        for (g2, p2) in &v.terms {
            let product = m2_basis(*g1, *g2)?;
            out = out.add(&product.mul_poly(&p1.mul(p2)));
        }
    }
    Some(out)
}

fn m2_basis(a: usize, b: usize) -> Option<Chain> {
    let one = CycNum::from_int(1);
    if a == EL {
        return Some(gen_chain(b, one));
    }
    if b == EL {
        return Some(gen_chain(a, one));
    }
    match (a, b) {
        (X, X) | (Y, Y) => Some(Chain::zero()),
        (X, Y) => Some(gen_chain(ZB, one.clone()).add(&var_gen_chain(2, EL, one))),
        (Y, X) => Some(gen_chain(ZB, CycNum::from_int(-1))),
        (Z, X) => Some(gen_chain(YB, one)),
        (Z, Y) => Some(gen_chain(XB, CycNum::from_int(-1))),
        _ => None,
    }
}

/// The deformed-intersection differential in matrix form over the six
/// variable ring, input generator -> output chain (primed variables mark the
/// second deformation slot).
pub fn cfkos_matrix() -> BTreeMap<usize, Vec<(usize, Poly)>> {
    let v = |i: usize| Poly::var(i);
    let m = |exps: [u16; 6]| Poly::monomial(Mono(exps), CycNum::from_int(1));
    let mut out: BTreeMap<usize, Vec<(usize, Poly)>> = BTreeMap::new();
    // d(e_L) = (x'-x) X + (y'-y) Y + (z'-z) Z
    out.insert(
        EL,
        vec![
            (X, v(3).sub(&v(0))),
            (Y, v(4).sub(&v(1))),
            (Z, v(5).sub(&v(2))),
        ],
    );
    // d(X) = y'z' e_L + (z-z') Yb + (y'-y) Zb
    out.insert(
        X,
        vec![
            (EL, m([0, 0, 0, 0, 1, 1])),
            (YB, v(2).sub(&v(5))),
            (ZB, v(4).sub(&v(1))),
        ],
    );
    // d(Y) = z'x e_L + (z'-z) Xb + (x-x') Zb
    out.insert(
        Y,
        vec![
            (EL, m([1, 0, 0, 0, 0, 1])),
            (XB, v(5).sub(&v(2))),
            (ZB, v(0).sub(&v(3))),
        ],
    );
    // d(Z) = xy e_L + (y-y') Xb + (x'-x) Yb
    out.insert(
        Z,
        vec![
            (EL, m([1, 1, 0, 0, 0, 0])),
            (XB, v(1).sub(&v(4))),
            (YB, v(3).sub(&v(0))),
        ],
    );
    // d(Xb) = (x'-x) f_L + xy Y - z'x Z
    out.insert(
        XB,
        vec![
            (FL, v(3).sub(&v(0))),
            (Y, m([1, 1, 0, 0, 0, 0])),
            (Z, m([1, 0, 0, 0, 0, 1]).neg()),
        ],
    );
    // d(Yb) = (y'-y) f_L - xy X + y'z' Z
    out.insert(
        YB,
        vec![
            (FL, v(4).sub(&v(1))),
            (X, m([1, 1, 0, 0, 0, 0]).neg()),
            (Z, m([0, 0, 0, 0, 1, 1])),
        ],
    );
    // d(Zb) = (z'-z) f_L + z'x X - y'z' Y
    out.insert(
        ZB,
        vec![
            (FL, v(5).sub(&v(2))),
            (X, m([1, 0, 0, 0, 0, 1])),
            (Y, m([0, 0, 0, 0, 1, 1]).neg()),
        ],
    );
    // d(f_L) = y'z' Xb + z'x Yb + xy Zb
    out.insert(
        FL,
        vec![
            (XB, m([0, 0, 0, 0, 1, 1])),
            (YB, m([1, 0, 0, 0, 0, 1])),
            (ZB, m([1, 1, 0, 0, 0, 0])),
        ],
    );
    out
}

/// Alternative sector differential: substitute the character twist into the
/// deformed-intersection matrix (unprimed variables pick up the inverse
/// character weight; primed variables specialize to unprimed).
pub fn cfkos_substituted_sector(cover: &CoverSpec, chi: &Character) -> SectorComplex {
    let [ca, cb, cg] = cover.chi_values(chi);
    let twists = [ca.inv().unwrap(), cb.inv().unwrap(), cg.inv().unwrap()];
    let base = cf_complex(cover);
    let mut diff: Vec<Chain> = vec![Chain::zero(); base.gens.len()];
    for (input, image) in cfkos_matrix() {
        let mut chain = Chain::zero();
        for (output, entry) in image {
            let mut p = entry;
            for (i, t) in twists.iter().enumerate() {
                p = p.subst_scale(i, t);
            }
            chain.add_term(output, &p.primed_to_unprimed());
        }
        diff[input] = chain;
    }
    SectorComplex {
        cover: cover.clone(),
        gens: base.gens,
        diff,
        poly_coeffs: true,
    }
}

/// One comparison row between the two differential conventions.
pub struct ConventionEntry {
    pub input: String,
    pub output: String,
    pub labeled: String,
    pub substituted: String,
    pub relation: String,
}

/// Tabulate, per (input, output) pair, how the curve-labeled differential and
/// the substituted-matrix differential differ in this sector. Discrepancies
/// are reported, never reconciled.
pub fn compare_conventions(cover: &CoverSpec, chi: &Character) -> Vec<ConventionEntry> {
    let labeled = cf_complex(cover).sector(chi);
    let substituted = cfkos_substituted_sector(cover, chi);
    let names = ["e_L", "X", "Y", "Z", "Xb", "Yb", "Zb", "f_L"];
    let mut rows = Vec::new();
    for input in 0..8 {
        for output in 0..8 {
            let a = labeled.diff[input]
                .terms
                .get(&output)
                .cloned()
                .unwrap_or_else(Poly::zero);
            let b = substituted.diff[input]
                .terms
                .get(&output)
                .cloned()
                .unwrap_or_else(Poly::zero);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let relation = if a == b {
                "equal".to_string()
            } else if a.is_zero() || b.is_zero() {
                "one side vanishes".to_string()
            } else {
                match proportionality(&b, &a) {
                    Some(ratio) => format!("substituted = ({}) * labeled", ratio),
                    None => "mismatch".to_string(),
                }
            };
            rows.push(ConventionEntry {
                input: names[input].to_string(),
                output: names[output].to_string(),
                labeled: format!("{}", a),
                substituted: format!("{}", b),
                relation,
            });
        }
    }
    rows
}

fn proportionality(a: &Poly, b: &Poly) -> Option<CycNum> {
    // a = c * b for a scalar c?
    let (mb, cb) = b.terms.iter().next()?;
    let ca = a.terms.get(mb)?;
    let ratio = ca.mul(&cb.inv().ok()?);
    if a == &b.scale(&ratio) {
        Some(ratio)
    } else {
        None
    }
}
