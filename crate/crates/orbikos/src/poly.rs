//! Sparse multivariate polynomials over cyclotomic fields in the variables
//! x, y, z (deformation coordinates) and x', y', z' (their primed copies used
//! by matrix factorizations of W (-) W).
//!
//! The geometric grading triples the fractional degree of the source
//! conventions: every variable has tripled degree 2.

use crate::abelian::{CoverSpec, GElem};
use crate::cyclotomic::CycNum;
use std::collections::BTreeMap;
use std::fmt;

pub const NVARS: usize = 6;
pub const VAR_NAMES: [&str; NVARS] = ["x", "y", "z", "x'", "y'", "z'"];

/// A monomial in x, y, z, x', y', z' (exponent vector).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NVARS])
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0; NVARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn from_xyz(a: u16, b: u16, c: u16) -> Mono {
        Mono([a, b, c, 0, 0, 0])
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    pub fn poly_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Tripled geometric degree: every variable weighs 2.
    pub fn tripled_degree(&self) -> i64 {
        2 * self.poly_degree() as i64
    }

    pub fn is_unprimed(&self) -> bool {
        self.0[3] == 0 && self.0[4] == 0 && self.0[5] == 0
    }

    /// Deck-group weight of an unprimed monomial: x, y, z carry the boundary
    /// monodromies g_alpha, g_beta, g_gamma.
    pub fn weight(&self, spec: &CoverSpec) -> GElem {
        let g = &spec.group;
        let mut w = g.identity();
        for (i, img) in spec.boundary_images().into_iter().enumerate() {
            let e = self.0[i] as i64 + self.0[i + 3] as i64;
            if e != 0 {
                w = g.add(&w, &g.mul_int(img, e));
            }
        }
        w
    }
}

/// Degree-reverse-lexicographic order with x < y < z < x' < y' < z'.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let da = self.poly_degree();
        let db = other.poly_degree();
        if da != db {
            return da.cmp(&db);
        }
        // degrevlex tie-break: compare the last nonzero difference; the one
        // with the larger exponent there is smaller.
        for i in (0..NVARS).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..NVARS {
            if self.0[i] > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", VAR_NAMES[i])?;
                if self.0[i] > 1 {
                    write!(f, "^{}", self.0[i])?;
                }
            }
        }
        Ok(())
    }
}

/// All monomials in the first `nvars` variables with the given total degree,
/// in ascending monomial order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = [0u16; NVARS];
    fn rec(out: &mut Vec<Mono>, current: &mut [u16; NVARS], var: usize, nvars: usize, left: u32) {
        if var == nvars - 1 {
            current[var] = left as u16;
            out.push(Mono(*current));
            current[var] = 0;
            return;
        }
        for e in 0..=left {
            current[var] = e as u16;
            rec(out, current, var + 1, nvars, left - e);
        }
        current[var] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Mono::one());
        }
        return out;
    }
    rec(&mut out, &mut current, 0, nvars, degree);
    out.sort();
    out
}

/// A sparse polynomial with CycNum coefficients. Zero coefficients are never
/// stored, so structural equality is semantic equality at a fixed field order.
#[derive(Clone, PartialEq)]
pub struct Poly {
    pub terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::monomial(Mono::one(), CycNum::from_int(1))
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Mono::var(i), CycNum::from_int(1))
    }

    pub fn constant(c: CycNum) -> Poly {
        Poly::monomial(Mono::one(), c)
    }

    pub fn monomial(m: Mono, c: CycNum) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, &v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Rescale a variable: substitute var_i -> c * var_i.
    pub fn subst_scale(&self, i: usize, c: &CycNum) -> Poly {
        let mut out = Poly::zero();
        for (m, v) in &self.terms {
            let factor = c.pow(m.0[i] as i64);
            out.add_term(*m, &v.mul(&factor));
        }
        out
    }

    /// Substitute var_i -> 0.
    pub fn set_var_zero(&self, i: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Substitute each primed variable by its unprimed partner.
    pub fn primed_to_unprimed(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let merged = Mono([
                m.0[0] + m.0[3],
                m.0[1] + m.0[4],
                m.0[2] + m.0[5],
                0,
                0,
                0,
            ]);
            out.add_term(merged, c);
        }
        out
    }

    /// Is every term a monomial of the same tripled degree d?
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.tripled_degree()),
                Some(d) if d == m.tripled_degree() => {}
                _ => return None,
            }
        }
        deg
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.poly_degree() == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "({})*{}", c, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration_is_deterministic() {
        let degree2 = monomials_of_degree(3, 2);
        assert_eq!(degree2.len(), 6);
        let again = monomials_of_degree(3, 2);
        assert_eq!(degree2, again);
        // x^2 has the highest last-variable deficiency, so it comes last in
        // degrevlex with x < y < z.
        assert_eq!(*degree2.last().unwrap(), Mono::from_xyz(2, 0, 0));
    }

    #[test]
    fn arithmetic_and_substitution() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = x.add(&y).mul(&x.sub(&y));
        let x2_minus_y2 = Poly::monomial(Mono::from_xyz(2, 0, 0), CycNum::from_int(1))
            .add(&Poly::monomial(Mono::from_xyz(0, 2, 0), CycNum::from_int(-1)));
        assert_eq!(p, x2_minus_y2);
        assert!(p.set_var_zero(0).set_var_zero(1).is_zero());
        let scaled = p.subst_scale(0, &CycNum::from_int(-1));
        assert_eq!(scaled, p); // x appears squared
    }

    #[test]
    fn primed_substitution() {
        let p = Poly::var(3).mul(&Poly::var(4)).mul(&Poly::var(5));
        let q = p.primed_to_unprimed();
        assert_eq!(
            q,
            Poly::monomial(Mono::from_xyz(1, 1, 1), CycNum::from_int(1))
        );
    }
}
