//! Finite abelian groups, their characters, and covering data for abelian
//! covers of the pair-of-pants.
//!
//! Groups are stored in invariant-factor form d_1 | d_2 | ... | d_r with
//! elements written additively as tuples. Arbitrary products of cyclic groups
//! are normalized at construction; [`BasisMap`] translates user tuples given
//! in the original moduli into the canonical basis.

use crate::cyclotomic::CycNum;
use num_integer::Integer;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroupError {
    #[error("modulus {0} is not a valid cyclic order")]
    BadModulus(u32),
    #[error("element has wrong rank: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("boundary images do not generate the group (disconnected cover)")]
    NonSurjective,
    #[error("Euler characteristic parity violated")]
    ParityViolation,
}

/// Element of a finite abelian group in the group's canonical basis.
pub type GElem = Vec<u32>;

/// A finite abelian group in invariant-factor form.
#[derive(Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    /// Invariant factors d_1 | d_2 | ... | d_r, each >= 2. Empty = trivial group.
    factors: Vec<u32>,
}

impl FinAbGroup {
    pub fn trivial() -> FinAbGroup {
        FinAbGroup { factors: vec![] }
    }

    /// Build from an arbitrary list of cyclic moduli, normalizing to
    /// invariant factors. Returns the group together with the basis map for
    /// translating tuples in the original moduli.
    pub fn from_moduli(moduli: &[u32]) -> Result<(FinAbGroup, BasisMap), GroupError> {
        for &m in moduli {
            if m == 0 {
                return Err(GroupError::BadModulus(m));
            }
        }
        // Decompose each modulus into prime powers.
        let mut primes: BTreeSet<u64> = BTreeSet::new();
        let mut decomp: Vec<Vec<(u64, u32)>> = Vec::new(); // per user slot: (p^e, p)
        for &m in moduli {
            let mut rest = m as u64;
            let mut parts = Vec::new();
            let mut p = 2u64;
            while p * p <= rest {
                if rest.is_multiple_of(p) {
                    let mut pe = 1u64;
                    while rest.is_multiple_of(p) {
                        rest /= p;
                        pe *= p;
                    }
                    parts.push((pe, p as u32));
                    primes.insert(p);
                }
                p += 1;
            }
            if rest > 1 {
                parts.push((rest, rest as u32));
                primes.insert(rest);
            }
            decomp.push(parts);
        }
        // Bucket prime powers by prime, largest first; invariant factor k is the
        // product of the k-th largest power of each prime (counted from last).
        let mut buckets: std::collections::BTreeMap<u32, Vec<(u64, usize)>> = Default::default();
        for (slot, parts) in decomp.iter().enumerate() {
            for &(pe, p) in parts {
                buckets.entry(p).or_default().push((pe, slot));
            }
        }
        let rank = buckets.values().map(|v| v.len()).max().unwrap_or(0);
        for v in buckets.values_mut() {
            v.sort(); // ascending prime powers
        }
        let mut factors = vec![1u64; rank];
        // Assignment of each (prime power, user slot) to an invariant factor index.
        let mut assignment: Vec<(usize, u64, usize)> = Vec::new(); // (user slot, p^e, factor idx)
        for v in buckets.values() {
            let offset = rank - v.len();
            for (i, &(pe, slot)) in v.iter().enumerate() {
                factors[offset + i] *= pe;
                assignment.push((slot, pe, offset + i));
            }
        }
        let factors: Vec<u32> = factors.into_iter().map(|f| f as u32).collect();
        debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        let group = FinAbGroup { factors };
        let map = BasisMap {
            moduli: moduli.to_vec(),
            assignment,
            target: group.clone(),
        };
        Ok((group, map))
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    /// Exponent of the group: the largest invariant factor (1 for trivial).
    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GElem {
        vec![0; self.factors.len()]
    }

    pub fn is_identity(&self, g: &GElem) -> bool {
        g.iter().all(|&a| a == 0)
    }

    pub fn add(&self, a: &GElem, b: &GElem) -> GElem {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &GElem) -> GElem {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x % d) % d)
            .collect()
    }

    pub fn sub(&self, a: &GElem, b: &GElem) -> GElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul_int(&self, a: &GElem, k: i64) -> GElem {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| {
                let v = (x as i64 * k).rem_euclid(d as i64);
                v as u32
            })
            .collect()
    }

    pub fn element_order(&self, a: &GElem) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| {
                if x == 0 {
                    1
                } else {
                    (d / x.gcd(&d)) as u64
                }
            })
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    pub fn elements(&self) -> Vec<GElem> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for v in 0..d {
                    let mut e2 = e.clone();
                    e2[i] = v;
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    /// Does the set of elements generate the whole group?
    pub fn generates(&self, gens: &[GElem]) -> bool {
        let mut seen: BTreeSet<GElem> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let f = self.add(&e, g);
                if seen.insert(f.clone()) {
                    frontier.push(f);
                }
            }
        }
        seen.len() as u64 == self.order()
    }

    pub fn validate_elem(&self, g: &GElem) -> Result<(), GroupError> {
        if g.len() != self.factors.len() {
            return Err(GroupError::RankMismatch {
                expected: self.factors.len(),
                got: g.len(),
            });
        }
        Ok(())
    }

    pub fn elem_string(&self, g: &GElem) -> String {
        if g.is_empty() {
            "0".to_string()
        } else {
            g.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "1")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{}", d)).collect();
            write!(f, "{}", parts.join("x"))
        }
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Translation from tuples in a user-supplied moduli list into the canonical
/// invariant-factor basis.
#[derive(Clone)]
pub struct BasisMap {
    moduli: Vec<u32>,
    /// (user slot, prime power, canonical factor index)
    assignment: Vec<(usize, u64, usize)>,
    target: FinAbGroup,
}

impl BasisMap {
    pub fn convert(&self, user: &[u32]) -> Result<GElem, GroupError> {
        if user.len() != self.moduli.len() {
            return Err(GroupError::RankMismatch {
                expected: self.moduli.len(),
                got: user.len(),
            });
        }
        let mut out = self.target.identity();
        for &(slot, pe, idx) in &self.assignment {
            let d = self.target.invariant_factors()[idx] as u64;
            let v = (user[slot] as u64) % pe;
            // CRT embedding of Z/pe into Z/d: the unique residue that is v mod pe
            // and 0 mod d/pe.
            let m = d / pe;
            let m_inv = mod_inverse(m % pe, pe);
            let contrib = (v * m_inv % pe) * m % d;
            out[idx] = ((out[idx] as u64 + contrib) % d) as u32;
        }
        Ok(out)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(m as i64) as u64
}

/// A character of a finite abelian group, given by exponents against the
/// invariant factors: chi(g) = zeta_N^(sum_i c_i g_i N/d_i) with N the exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    exps: Vec<u32>,
}

impl Character {
    pub fn trivial(group: &FinAbGroup) -> Character {
        Character {
            exps: vec![0; group.rank()],
        }
    }

    pub fn from_exps(group: &FinAbGroup, exps: Vec<u32>) -> Character {
        assert_eq!(exps.len(), group.rank());
        let exps = exps
            .into_iter()
            .zip(group.invariant_factors())
            .map(|(c, &d)| c % d)
            .collect();
        Character { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    /// chi(g) as an exact root of unity in Q(zeta_N), N the group exponent.
    pub fn eval(&self, group: &FinAbGroup, g: &GElem) -> CycNum {
        let n = group.exponent();
        let mut total: u64 = 0;
        for ((&c, &a), &d) in self.exps.iter().zip(g).zip(group.invariant_factors()) {
            total = (total + (c as u64) * (a as u64) * ((n / d) as u64)) % n as u64;
        }
        CycNum::root_of_unity(n, total as i64)
    }

    pub fn mul(&self, group: &FinAbGroup, other: &Character) -> Character {
        Character {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .zip(group.invariant_factors())
                .map(|((&a, &b), &d)| (a + b) % d)
                .collect(),
        }
    }

    pub fn inv(&self, group: &FinAbGroup) -> Character {
        Character {
            exps: self
                .exps
                .iter()
                .zip(group.invariant_factors())
                .map(|(&a, &d)| (d - a % d) % d)
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        if self.exps.is_empty() {
            "1".to_string()
        } else {
            format!(
                "chi({})",
                self.exps
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All |G| characters, identity first, in lexicographic exponent order.
pub fn enumerate_characters(group: &FinAbGroup) -> Vec<Character> {
    let mut out = vec![Character::trivial(group)];
    for (i, &d) in group.invariant_factors().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for chi in &out {
            for v in 0..d {
                let mut exps = chi.exps.clone();
                exps[i] = v;
                next.push(Character { exps });
            }
        }
        out = next;
    }
    out
}

/// Covering data: images of the three boundary loops in the deck group,
/// subject to g_alpha + g_beta + g_gamma = 0.
#[derive(Clone)]
pub struct CoverSpec {
    pub group: FinAbGroup,
    pub g_alpha: GElem,
    pub g_beta: GElem,
    pub g_gamma: GElem,
}

/// Topological invariants of the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInvariants {
    pub genus: u64,
    pub punctures: u64,
    pub punctures_per_end: [u64; 3],
}

impl CoverSpec {
    /// g_gamma is derived from the relation; the boundary images must generate
    /// the group (connected cover).
    pub fn new(group: FinAbGroup, g_alpha: GElem, g_beta: GElem) -> Result<CoverSpec, GroupError> {
        group.validate_elem(&g_alpha)?;
        group.validate_elem(&g_beta)?;
        if !group.generates(&[g_alpha.clone(), g_beta.clone()]) {
            return Err(GroupError::NonSurjective);
        }
        let g_gamma = group.neg(&group.add(&g_alpha, &g_beta));
        Ok(CoverSpec {
            group,
            g_alpha,
            g_beta,
            g_gamma,
        })
    }

    pub fn trivial() -> CoverSpec {
        let g = FinAbGroup::trivial();
        CoverSpec {
            g_alpha: g.identity(),
            g_beta: g.identity(),
            g_gamma: g.identity(),
            group: g,
        }
    }

    pub fn boundary_images(&self) -> [&GElem; 3] {
        [&self.g_alpha, &self.g_beta, &self.g_gamma]
    }

    /// chi evaluated on (g_alpha, g_beta, g_gamma).
    pub fn chi_values(&self, chi: &Character) -> [CycNum; 3] {
        [
            chi.eval(&self.group, &self.g_alpha),
            chi.eval(&self.group, &self.g_beta),
            chi.eval(&self.group, &self.g_gamma),
        ]
    }

    /// Genus and puncture counts of the total space, from orbit counts of the
    /// boundary monodromies and multiplicativity of the Euler characteristic.
    pub fn invariants(&self) -> Result<CoverInvariants, GroupError> {
        let n = self.group.order();
        let per_end = [
            n / self.group.element_order(&self.g_alpha),
            n / self.group.element_order(&self.g_beta),
            n / self.group.element_order(&self.g_gamma),
        ];
        let punctures = per_end[0] + per_end[1] + per_end[2];
        // chi(X) = |G| * chi(P) = -|G|; genus from chi = 2 - 2g - punctures.
        let two_g = 2 + n;
        if two_g < punctures || !(two_g - punctures).is_multiple_of(2) {
            return Err(GroupError::ParityViolation);
        }
        Ok(CoverInvariants {
            genus: (two_g - punctures) / 2,
            punctures,
            punctures_per_end: per_end,
        })
    }
}

impl fmt::Debug for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} cover (ga={}, gb={}, gg={})",
            self.group,
            self.group.elem_string(&self.g_alpha),
            self.group.elem_string(&self.g_beta),
            self.group.elem_string(&self.g_gamma)
        )
    }
}

/// An element of the integral group algebra Z[G]; used for differential
/// identities that must hold in every character sector simultaneously.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebra {
    pub terms: std::collections::BTreeMap<GElem, i64>,
}

impl GroupAlgebra {
    pub fn single(g: GElem, c: i64) -> GroupAlgebra {
        let mut terms = std::collections::BTreeMap::new();
        if c != 0 {
            terms.insert(g, c);
        }
        GroupAlgebra { terms }
    }

    pub fn add_term(&mut self, g: GElem, c: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|&v| v == 0)
    }
}

/// Parse a group token like "Z2xZ4" or "1" into a moduli list.
pub fn parse_group_token(token: &str) -> Result<Vec<u32>, GroupError> {
    let t = token.trim();
    if t == "1" || t.eq_ignore_ascii_case("trivial") {
        return Ok(vec![]);
    }
    let mut moduli = Vec::new();
    for part in t.split(['x', 'X']) {
        let p = part.trim();
        let digits = p
            .strip_prefix('Z')
            .or_else(|| p.strip_prefix('z'))
            .unwrap_or(p);
        let m: u32 = digits.parse().map_err(|_| GroupError::BadModulus(0))?;
        if m < 2 {
            return Err(GroupError::BadModulus(m));
        }
        moduli.push(m);
    }
    Ok(moduli)
}
