//! The Clifford algebra on theta_x, theta_y, theta_z and their contractions,
//! with normal ordering, plus operators with polynomial coefficients.
//!
//! Relations: theta_i theta_j = -theta_j theta_i, del_i del_j = -del_j del_i,
//! and del_i theta_j = -theta_j del_i + delta_ij. A word is normal ordered
//! when all thetas (ascending index) precede all contractions (ascending
//! index); the 64 normal words form a basis of the operator algebra.

use crate::cyclotomic::CycNum;
use crate::poly::Poly;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// A normal-ordered word theta_I del_J, as bitmasks over {x, y, z}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CliffWord {
    pub theta: u8,
    pub del: u8,
}

impl CliffWord {
    pub fn identity() -> CliffWord {
        CliffWord { theta: 0, del: 0 }
    }

    pub fn thetas(mask: u8) -> CliffWord {
        CliffWord {
            theta: mask,
            del: 0,
        }
    }

    pub fn parity(&self) -> u8 {
        ((self.theta.count_ones() + self.del.count_ones()) % 2) as u8
    }

    /// Tripled degree: +1 per theta, -1 per contraction.
    pub fn degree(&self) -> i64 {
        self.theta.count_ones() as i64 - self.del.count_ones() as i64
    }

    pub fn index(&self) -> usize {
        (self.theta as usize) | ((self.del as usize) << 3)
    }

    pub fn from_index(idx: usize) -> CliffWord {
        CliffWord {
            theta: (idx & 7) as u8,
            del: ((idx >> 3) & 7) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = CliffWord> {
        (0..64).map(CliffWord::from_index)
    }
}

pub const THETA_NAMES: [&str; 3] = ["tx", "ty", "tz"];
pub const DEL_NAMES: [&str; 3] = ["dx", "dy", "dz"];

impl fmt::Display for CliffWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta == 0 && self.del == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..3 {
            if self.theta & (1 << i) != 0 {
                if !first {
                    write!(f, ".")?;
                }
                first = false;
                write!(f, "{}", THETA_NAMES[i])?;
            }
        }
        for i in 0..3 {
            if self.del & (1 << i) != 0 {
                if !first {
                    write!(f, ".")?;
                }
                first = false;
                write!(f, "{}", DEL_NAMES[i])?;
            }
        }
        Ok(())
    }
}

/// One symbol of an unordered word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sym {
    Theta(u8),
    Del(u8),
}

/// Normal-order an arbitrary word, returning the signed sum of basis words.
pub fn normalize(word: &[Sym]) -> Vec<(CliffWord, i64)> {
    let mut acc: BTreeMap<CliffWord, i64> = BTreeMap::new();
    normalize_into(word.to_vec(), 1, &mut acc);
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn normalize_into(mut word: Vec<Sym>, sign: i64, acc: &mut BTreeMap<CliffWord, i64>) {
    // Find the leftmost adjacent pair that violates normal order.
    let mut i = 0;
    while i + 1 < word.len() {
        match (word[i], word[i + 1]) {
            (Sym::Theta(a), Sym::Theta(b)) | (Sym::Del(a), Sym::Del(b)) if a == b => return, // squares vanish
            (Sym::Theta(a), Sym::Theta(b)) if a > b => {
                word.swap(i, i + 1);
                normalize_into(word, -sign, acc);
                return;
            }
            (Sym::Del(a), Sym::Del(b)) if a > b => {
                word.swap(i, i + 1);
                normalize_into(word, -sign, acc);
                return;
            }
            (Sym::Del(a), Sym::Theta(b)) => {
                // del_a theta_b = -theta_b del_a + delta_ab
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                if a == b {
                    let mut contracted = word.clone();
                    contracted.drain(i..i + 2);
                    normalize_into(contracted, sign, acc);
                }
                normalize_into(swapped, -sign, acc);
                return;
            }
            _ => i += 1,
        }
    }
    // Word is normal ordered; read off the masks.
    let mut theta = 0u8;
    let mut del = 0u8;
    for s in &word {
        match s {
            Sym::Theta(a) => theta |= 1 << a,
            Sym::Del(a) => del |= 1 << a,
        }
    }
    *acc.entry(CliffWord { theta, del }).or_insert(0) += sign;
}

fn word_symbols(w: CliffWord) -> Vec<Sym> {
    let mut out = Vec::new();
    for i in 0..3 {
        if w.theta & (1 << i) != 0 {
            out.push(Sym::Theta(i));
        }
    }
    for i in 0..3 {
        if w.del & (1 << i) != 0 {
            out.push(Sym::Del(i));
        }
    }
    out
}

/// Product of two basis words as a signed sum of basis words (cached).
pub fn word_mul(a: CliffWord, b: CliffWord) -> &'static [(CliffWord, i64)] {
    static TABLE: OnceLock<Vec<Vec<(CliffWord, i64)>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(64 * 64);
        for ia in 0..64 {
            for ib in 0..64 {
                let mut sym = word_symbols(CliffWord::from_index(ia));
                sym.extend(word_symbols(CliffWord::from_index(ib)));
                t.push(normalize(&sym));
            }
        }
        t
    });
    &table[a.index() * 64 + b.index()]
}

/// Left action of a basis word on the exterior algebra basis (a theta-subset):
/// returns the resulting subset and sign, or None if it vanishes.
pub fn word_apply(w: CliffWord, subset: u8) -> Option<(u8, i64)> {
    let mut s = subset;
    let mut sign = 1i64;
    // Rightmost symbol acts first: contractions, descending index, then
    // wedges, descending index.
    for i in (0..3).rev() {
        if w.del & (1 << i) != 0 {
            if s & (1 << i) == 0 {
                return None;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            if below % 2 == 1 {
                sign = -sign;
            }
            s &= !(1 << i);
        }
    }
    for i in (0..3).rev() {
        if w.theta & (1 << i) != 0 {
            if s & (1 << i) != 0 {
                return None;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            if below % 2 == 1 {
                sign = -sign;
            }
            s |= 1 << i;
        }
    }
    Some((s, sign))
}

/// An operator: a polynomial-linear combination of normal-ordered words.
/// Coefficients are central (the polynomial variables are even).
#[derive(Clone, PartialEq)]
pub struct CliffOp {
    pub terms: BTreeMap<CliffWord, Poly>,
}

impl CliffOp {
    pub fn zero() -> CliffOp {
        CliffOp {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> CliffOp {
        CliffOp::from_word(CliffWord::identity(), Poly::one())
    }

    pub fn from_word(w: CliffWord, p: Poly) -> CliffOp {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(w, p);
        }
        CliffOp { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: CliffWord, p: &Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = e.get().add(p);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(p.clone());
            }
        }
    }

    pub fn add(&self, other: &CliffOp) -> CliffOp {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(*w, p);
        }
        out
    }

    pub fn sub(&self, other: &CliffOp) -> CliffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CliffOp {
        CliffOp {
            terms: self.terms.iter().map(|(w, p)| (*w, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> CliffOp {
        let mut out = CliffOp::zero();
        for (w, p) in &self.terms {
            out.add_term(*w, &p.scale(c));
        }
        out
    }

    /// Operator composition (self applied after other).
    pub fn compose(&self, other: &CliffOp) -> CliffOp {
        let mut out = CliffOp::zero();
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                let coeff = pa.mul(pb);
                if coeff.is_zero() {
                    continue;
                }
                for &(w, s) in word_mul(*wa, *wb) {
                    out.add_term(w, &coeff.scale(&CycNum::from_int(s)));
                }
            }
        }
        out
    }

    /// Is the operator `c * identity` for a scalar polynomial c?
    pub fn as_scalar(&self) -> Option<Poly> {
        if self.terms.is_empty() {
            return Some(Poly::zero());
        }
        if self.terms.len() == 1 {
            if let Some(p) = self.terms.get(&CliffWord::identity()) {
                return Some(p.clone());
            }
        }
        None
    }

    /// Apply to an exterior-algebra basis vector (theta-subset) with a
    /// polynomial coefficient of 1; returns subset -> polynomial.
    pub fn apply_to_subset(&self, subset: u8) -> BTreeMap<u8, Poly> {
        let mut out: BTreeMap<u8, Poly> = BTreeMap::new();
        for (w, p) in &self.terms {
            if let Some((s, sign)) = word_apply(*w, subset) {
                let v = p.scale(&CycNum::from_int(sign));
                use std::collections::btree_map::Entry;
                match out.entry(s) {
                    Entry::Occupied(mut e) => {
                        let sum = e.get().add(&v);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                    Entry::Vacant(e) => {
                        if !v.is_zero() {
                            e.insert(v);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CliffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", p, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
