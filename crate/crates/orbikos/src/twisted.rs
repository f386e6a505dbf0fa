//! Character-twisted chain complexes built from deck-group-labeled curve data.
//!
//! A [`TwistedComplex`] stores generators (parity, tripled degree, group
//! weight) and a list of [`CurveDatum`] terms. Each character sector chi gets
//! the differential d_chi(p) = sum sign * chi(label) * monomial * output; the
//! same container serves the symplectic-cochain and Floer models. Degree
//! (+3) and weight preservation are asserted at load time, and d^2 = 0 is
//! checked once and for all over the integral group algebra, which covers
//! every sector simultaneously.

use crate::abelian::{Character, CoverSpec, GElem, GroupAlgebra};
use crate::cyclotomic::CycNum;
use crate::linalg::SliceMatrix;
use crate::poly::{monomials_of_degree, Mono, Poly};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TwistError {
    #[error("curve {0}: {1}")]
    BadCurve(usize, String),
    #[error("d^2 != 0 from generator {0}: offending term {1}")]
    DifferentialSquare(String, String),
    #[error("cutoff {0} too small (need >= 3)")]
    CutoffTooSmall(i64),
    #[error("averaging map does not intertwine differentials at degree {degree}, basis {witness}")]
    IntertwiningFailure { degree: i64, witness: String },
    #[error("parse error at line {0}: {1}")]
    Parse(usize, String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

/// A generator of a twisted complex.
#[derive(Clone, Debug)]
pub struct GenInfo {
    pub name: String,
    pub parity: u8,
    pub degree: i64,
    pub weight: GElem,
}

/// One labeled curve contribution to the differential.
#[derive(Clone, Debug)]
pub struct CurveDatum {
    pub input: usize,
    pub output: usize,
    pub sign: i32,
    pub mono: Mono,
    pub label: GElem,
}

/// A complex over all character sectors at once.
#[derive(Clone)]
pub struct TwistedComplex {
    pub cover: CoverSpec,
    pub gens: Vec<GenInfo>,
    pub curves: Vec<CurveDatum>,
    /// Whether slices take polynomial multiples of generators (Floer model)
    /// or bare generators (symplectic-cochain model).
    pub poly_coeffs: bool,
}

impl TwistedComplex {
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Degree-(+3) and weight homogeneity of every curve.
    pub fn validate(&self) -> Result<(), TwistError> {
        let group = &self.cover.group;
        for (i, c) in self.curves.iter().enumerate() {
            let input = &self.gens[c.input];
            let output = &self.gens[c.output];
            let deg = output.degree + c.mono.tripled_degree();
            if deg != input.degree + 3 {
                return Err(TwistError::BadCurve(
                    i,
                    format!(
                        "degree {} -> {} with monomial {} does not shift by 3",
                        input.degree, output.degree, c.mono
                    ),
                ));
            }
            let w = group.add(&output.weight, &c.mono.weight(&self.cover));
            if w != input.weight {
                return Err(TwistError::BadCurve(
                    i,
                    format!(
                        "weight of {} * {} does not match weight of {}",
                        c.mono, output.name, input.name
                    ),
                ));
            }
            if c.sign == 0 {
                return Err(TwistError::BadCurve(i, "zero sign".into()));
            }
        }
        Ok(())
    }

    /// d^2 = 0 in every sector at once, by expanding over Z[G] coefficients.
    pub fn d_squared_symbolic(&self) -> Result<(), TwistError> {
        let group = &self.cover.group;
        let mut by_input: BTreeMap<usize, Vec<&CurveDatum>> = BTreeMap::new();
        for c in &self.curves {
            by_input.entry(c.input).or_default().push(c);
        }
        for (g, firsts) in &by_input {
            let mut acc: BTreeMap<(usize, Mono), GroupAlgebra> = BTreeMap::new();
            for c1 in firsts {
                if let Some(seconds) = by_input.get(&c1.output) {
                    for c2 in seconds {
                        let label = group.add(&c1.label, &c2.label);
                        acc.entry((c2.output, c1.mono.mul(&c2.mono)))
                            .or_default()
                            .add_term(label, (c1.sign * c2.sign) as i64);
                    }
                }
            }
            for ((out, mono), alg) in acc {
                if !alg.is_zero() {
                    return Err(TwistError::DifferentialSquare(
                        self.gens[*g].name.clone(),
                        format!(
                            "{} {} with labels {:?}",
                            mono, self.gens[out].name, alg.terms
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Instantiate the sector differential for one character.
    pub fn sector(&self, chi: &Character) -> SectorComplex {
        let group = &self.cover.group;
        let mut diff: Vec<Chain> = vec![Chain::zero(); self.gens.len()];
        for c in &self.curves {
            let coeff = chi
                .eval(group, &c.label)
                .mul(&CycNum::from_int(c.sign as i64));
            diff[c.input].add_term(c.output, &Poly::monomial(c.mono, coeff));
        }
        SectorComplex {
            cover: self.cover.clone(),
            gens: self.gens.clone(),
            diff,
            poly_coeffs: self.poly_coeffs,
        }
    }

    /// Serialize in the line-oriented curve-data format.
    pub fn serialize(&self) -> String {
        let group = &self.cover.group;
        let mut out = String::new();
        for g in &self.gens {
            out.push_str(&format!(
                "gen {} {} {} [{}]\n",
                g.name,
                g.parity,
                g.degree,
                group.elem_string(&g.weight)
            ));
        }
        for c in &self.curves {
            let mono = render_mono(&c.mono);
            out.push_str(&format!(
                "curve {} {} {:+} {} [{}]\n",
                self.gens[c.input].name,
                self.gens[c.output].name,
                c.sign,
                mono,
                group.elem_string(&c.label)
            ));
        }
        out
    }

    /// Parse the curve-data format. Labels and weights may be concrete
    /// tuples in brackets or symbolic words in ga, gb, gg.
    pub fn parse(
        text: &str,
        cover: &CoverSpec,
        poly_coeffs: bool,
    ) -> Result<TwistedComplex, TwistError> {
        let mut gens: Vec<GenInfo> = Vec::new();
        let mut curves: Vec<CurveDatum> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "gen" => {
                    if toks.len() != 5 {
                        return Err(TwistError::Parse(ln + 1, "gen needs 4 fields".into()));
                    }
                    let parity: u8 = toks[2]
                        .parse()
                        .map_err(|_| TwistError::Parse(ln + 1, "bad parity".into()))?;
                    let degree: i64 = toks[3]
                        .parse()
                        .map_err(|_| TwistError::Parse(ln + 1, "bad degree".into()))?;
                    let weight = parse_group_word(toks[4], cover)
                        .map_err(|e| TwistError::Parse(ln + 1, e))?;
                    gens.push(GenInfo {
                        name: toks[1].to_string(),
                        parity,
                        degree,
                        weight,
                    });
                }
                "curve" => {
                    if toks.len() < 5 {
                        return Err(TwistError::Parse(ln + 1, "curve needs 5+ fields".into()));
                    }
                    let input = gens
                        .iter()
                        .position(|g| g.name == toks[1])
                        .ok_or_else(|| TwistError::UnknownGenerator(toks[1].to_string()))?;
                    let output = gens
                        .iter()
                        .position(|g| g.name == toks[2])
                        .ok_or_else(|| TwistError::UnknownGenerator(toks[2].to_string()))?;
                    let sign: i32 = toks[3]
                        .parse()
                        .map_err(|_| TwistError::Parse(ln + 1, "bad sign".into()))?;
                    let label = parse_group_word(toks[toks.len() - 1], cover)
                        .map_err(|e| TwistError::Parse(ln + 1, e))?;
                    let mono = parse_mono(&toks[4..toks.len() - 1])
                        .map_err(|e| TwistError::Parse(ln + 1, e))?;
                    curves.push(CurveDatum {
                        input,
                        output,
                        sign,
                        mono,
                        label,
                    });
                }
                other => {
                    return Err(TwistError::Parse(ln + 1, format!("unknown record {}", other)));
                }
            }
        }
        let complex = TwistedComplex {
            cover: cover.clone(),
            gens,
            curves,
            poly_coeffs,
        };
        complex.validate()?;
        Ok(complex)
    }
}

fn render_mono(m: &Mono) -> String {
    if m.poly_degree() == 0 {
        return "1".to_string();
    }
    let names = ["x", "y", "z"];
    let mut parts = Vec::new();
    for i in 0..3 {
        if m.0[i] > 0 {
            if m.0[i] == 1 {
                parts.push(names[i].to_string());
            } else {
                parts.push(format!("{}^{}", names[i], m.0[i]));
            }
        }
    }
    parts.join(" ")
}

fn parse_mono(toks: &[&str]) -> Result<Mono, String> {
    let mut exps = [0u16; 3];
    for tok in toks {
        if *tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<u16>().map_err(|_| "bad exponent".to_string())?),
            None => (*tok, 1),
        };
        let idx = match name {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(format!("unknown variable {}", name)),
        };
        exps[idx] += exp;
    }
    Ok(Mono::from_xyz(exps[0], exps[1], exps[2]))
}

/// Parse "[1,0]" (concrete tuple), "1" (identity), or a word like
/// "ga^-1*gb" in the boundary monodromies.
pub fn parse_group_word(tok: &str, cover: &CoverSpec) -> Result<GElem, String> {
    let group = &cover.group;
    let t = tok.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        if group.rank() == 0 {
            return Ok(group.identity());
        }
        let parts: Result<Vec<u32>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
        let mut e = parts.map_err(|_| format!("bad tuple {}", t))?;
        if e.len() != group.rank() {
            return Err(format!("tuple {} has wrong rank", t));
        }
        for (v, d) in e.iter_mut().zip(group.invariant_factors()) {
            *v %= d;
        }
        return Ok(e);
    }
    if t == "1" {
        return Ok(group.identity());
    }
    let mut acc = group.identity();
    for factor in t.split('*') {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| "bad exponent".to_string())?),
            None => (factor, 1),
        };
        let base = match name {
            "ga" => &cover.g_alpha,
            "gb" => &cover.g_beta,
            "gg" => &cover.g_gamma,
            _ => return Err(format!("unknown group word {}", name)),
        };
        acc = group.add(&acc, &group.mul_int(base, exp));
    }
    Ok(acc)
}

/// A finite linear combination of polynomial multiples of generators.
#[derive(Clone, PartialEq)]
pub struct Chain {
    pub terms: BTreeMap<usize, Poly>,
}

impl Chain {
    pub fn zero() -> Chain {
        Chain {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(gen: usize, p: Poly) -> Chain {
        let mut c = Chain::zero();
        c.add_term(gen, &p);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, gen: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(gen) {
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

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (g, p) in &other.terms {
            out.add_term(*g, p);
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Chain {
        Chain {
            terms: self.terms.iter().map(|(g, p)| (*g, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Chain {
        let mut out = Chain::zero();
        for (g, p) in &self.terms {
            out.add_term(*g, &p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Chain {
        let mut out = Chain::zero();
        for (g, q) in &self.terms {
            out.add_term(*g, &q.mul(p));
        }
        out
    }

    /// Coefficient of a (monomial, generator) basis element.
    pub fn coeff(&self, gen: usize, mono: &Mono) -> CycNum {
        self.terms
            .get(&gen)
            .and_then(|p| p.terms.get(mono))
            .cloned()
            .unwrap_or_else(|| CycNum::zero(1))
    }

    pub fn render(&self, gens: &[GenInfo]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (g, p) in &self.terms {
            parts.push(format!("({})*{}", p, gens[*g].name));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*g{}", p, g)?;
        }
        Ok(())
    }
}

/// One character sector with an explicit per-generator differential.
#[derive(Clone)]
pub struct SectorComplex {
    pub cover: CoverSpec,
    pub gens: Vec<GenInfo>,
    pub diff: Vec<Chain>,
    pub poly_coeffs: bool,
}

impl SectorComplex {
    pub fn d(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero();
        for (g, p) in &chain.terms {
            out = out.add(&self.diff[*g].mul_poly(p));
        }
        out
    }

    pub fn is_cocycle(&self, chain: &Chain) -> bool {
        self.d(chain).is_zero()
    }

    /// Ordered basis of the degree slice: (monomial, generator) pairs with
    /// matching weight if requested. Generator-major, monomials ascending.
    pub fn slice_basis(&self, degree: i64, weight: Option<&GElem>) -> Vec<(Mono, usize)> {
        let group = &self.cover.group;
        let mut out = Vec::new();
        for (gi, gen) in self.gens.iter().enumerate() {
            let rem = degree - gen.degree;
            if rem < 0 {
                continue;
            }
            if self.poly_coeffs {
                if rem % 2 != 0 {
                    continue;
                }
                for m in monomials_of_degree(3, (rem / 2) as u32) {
                    if let Some(w) = weight {
                        let total = group.add(&m.weight(&self.cover), &gen.weight);
                        if &total != w {
                            continue;
                        }
                    }
                    out.push((m, gi));
                }
            } else {
                if rem != 0 {
                    continue;
                }
                if let Some(w) = weight {
                    if &gen.weight != w {
                        continue;
                    }
                }
                out.push((Mono::one(), gi));
            }
        }
        out
    }

    /// The matrix of d from the degree slice to the degree+3 slice.
    pub fn slice_matrix(&self, degree: i64, invariant: bool) -> SliceMatrix {
        let id = self.cover.group.identity();
        let weight = if invariant { Some(&id) } else { None };
        let src = self.slice_basis(degree, weight);
        let dst = self.slice_basis(degree + 3, weight);
        let index: BTreeMap<(Mono, usize), usize> =
            dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = SliceMatrix::new(dst.len(), src.len());
        for (col, (mono, gi)) in src.iter().enumerate() {
            let image = self.diff[*gi].mul_poly(&Poly::monomial(*mono, CycNum::from_int(1)));
            for (og, p) in &image.terms {
                for (om, c) in &p.terms {
                    let row = *index
                        .get(&(*om, *og))
                        .expect("differential leaves the graded slice");
                    m.add_to(row, col, c);
                }
            }
        }
        for (i, (mono, gi)) in src.iter().enumerate() {
            m.col_labels[i] = format!("{}*{}", mono, self.gens[*gi].name);
        }
        for (i, (mono, gi)) in dst.iter().enumerate() {
            m.row_labels[i] = format!("{}*{}", mono, self.gens[*gi].name);
        }
        m
    }

    /// Cohomology dimensions for degrees 0..=cutoff.
    pub fn homology_dims(&self, cutoff: i64, invariant: bool) -> Result<Vec<usize>, TwistError> {
        if cutoff < 3 {
            return Err(TwistError::CutoffTooSmall(cutoff));
        }
        let id = self.cover.group.identity();
        let weight = if invariant { Some(&id) } else { None };
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut dims = Vec::new();
        for d in 0..=cutoff {
            let n = self.slice_basis(d, weight).len();
            let r_out = self.rank_cached(d, invariant, &mut ranks);
            let r_in = self.rank_cached(d - 3, invariant, &mut ranks);
            dims.push(n - r_out - r_in);
        }
        Ok(dims)
    }

    fn rank_cached(&self, d: i64, invariant: bool, ranks: &mut BTreeMap<i64, usize>) -> usize {
        if d < 0 {
            return 0;
        }
        if let Some(r) = ranks.get(&d) {
            return *r;
        }
        let r = self.slice_matrix(d, invariant).rank();
        ranks.insert(d, r);
        r
    }

    /// Is the (homogeneous) cocycle a coboundary at its degree slice?
    pub fn is_coboundary(&self, chain: &Chain) -> Option<bool> {
        if chain.is_zero() {
            return Some(true);
        }
        let degree = self.chain_degree(chain)?;
        let src = self.slice_basis(degree - 3, None);
        let dst = self.slice_basis(degree, None);
        let index: BTreeMap<(Mono, usize), usize> =
            dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = SliceMatrix::new(dst.len(), src.len());
        for (col, (mono, gi)) in src.iter().enumerate() {
            let image = self.diff[*gi].mul_poly(&Poly::monomial(*mono, CycNum::from_int(1)));
            for (og, p) in &image.terms {
                for (om, c) in &p.terms {
                    if let Some(row) = index.get(&(*om, *og)) {
                        m.add_to(*row, col, c);
                    }
                }
            }
        }
        let mut rhs = vec![CycNum::zero(1); dst.len()];
        for (g, p) in &chain.terms {
            for (mono, c) in &p.terms {
                match index.get(&(*mono, *g)) {
                    Some(row) => rhs[*row] = rhs[*row].add(c),
                    None => return Some(false),
                }
            }
        }
        Some(m.solve(&rhs).is_some())
    }

    /// Tripled degree of a homogeneous chain; None for 0 or inhomogeneous.
    pub fn chain_degree(&self, chain: &Chain) -> Option<i64> {
        let mut deg = None;
        for (g, p) in &chain.terms {
            for m in p.terms.keys() {
                let d = self.gens[*g].degree + m.tripled_degree();
                match deg {
                    None => deg = Some(d),
                    Some(x) if x == d => {}
                    _ => return None,
                }
            }
        }
        deg
    }

    /// Total weight of a homogeneous-weight chain.
    pub fn chain_weight(&self, chain: &Chain) -> Option<GElem> {
        let group = &self.cover.group;
        let mut weight: Option<GElem> = None;
        for (g, p) in &chain.terms {
            for m in p.terms.keys() {
                let w = group.add(&m.weight(&self.cover), &self.gens[*g].weight);
                match &weight {
                    None => weight = Some(w),
                    Some(x) if *x == w => {}
                    _ => return None,
                }
            }
        }
        weight
    }
}

/// The lifted complex upstairs: weight-zero polynomial multiples of
/// (generator, sheet) pairs, with the differential jumping sheets by curve
/// labels. The deck group acts freely on the sheet index.
pub struct UpstairsComplex<'a> {
    pub complex: &'a TwistedComplex,
    pub sheets: Vec<GElem>,
}

impl<'a> UpstairsComplex<'a> {
    pub fn new(complex: &'a TwistedComplex) -> UpstairsComplex<'a> {
        UpstairsComplex {
            complex,
            sheets: complex.cover.group.elements(),
        }
    }

    /// Basis of the degree slice: (monomial, generator, sheet) with
    /// weight(monomial * generator) = 0.
    pub fn slice_basis(&self, degree: i64) -> Vec<(Mono, usize, usize)> {
        let cover = &self.complex.cover;
        let group = &cover.group;
        let mut out = Vec::new();
        for (gi, gen) in self.complex.gens.iter().enumerate() {
            let rem = degree - gen.degree;
            if rem < 0 {
                continue;
            }
            let monos = if self.complex.poly_coeffs {
                if rem % 2 != 0 {
                    continue;
                }
                monomials_of_degree(3, (rem / 2) as u32)
            } else {
                if rem != 0 {
                    continue;
                }
                vec![Mono::one()]
            };
            for m in monos {
                let w = group.add(&m.weight(cover), &gen.weight);
                if !group.is_identity(&w) {
                    continue;
                }
                for s in 0..self.sheets.len() {
                    out.push((m, gi, s));
                }
            }
        }
        out
    }

    fn sheet_index(&self, g: &GElem) -> usize {
        self.sheets.iter().position(|s| s == g).expect("sheet")
    }

    /// Matrix of the lifted differential from degree to degree+3.
    pub fn slice_matrix(&self, degree: i64) -> SliceMatrix {
        let group = &self.complex.cover.group;
        let src = self.slice_basis(degree);
        let dst = self.slice_basis(degree + 3);
        let index: BTreeMap<(Mono, usize, usize), usize> =
            dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = SliceMatrix::new(dst.len(), src.len());
        for (col, (mono, gi, sheet)) in src.iter().enumerate() {
            for c in &self.complex.curves {
                if c.input != *gi {
                    continue;
                }
                let target_sheet = group.add(&self.sheets[*sheet], &c.label);
                let key = (mono.mul(&c.mono), c.output, self.sheet_index(&target_sheet));
                let row = *index.get(&key).expect("lifted differential stays in slice");
                m.add_to(row, col, &CycNum::from_int(c.sign as i64));
            }
        }
        m
    }

    pub fn homology_dims(&self, cutoff: i64) -> Result<Vec<usize>, TwistError> {
        if cutoff < 3 {
            return Err(TwistError::CutoffTooSmall(cutoff));
        }
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let rank_at = |d: i64, ranks: &mut BTreeMap<i64, usize>| -> usize {
            if d < 0 {
                return 0;
            }
            if let Some(r) = ranks.get(&d) {
                return *r;
            }
            let r = self.slice_matrix(d).rank();
            ranks.insert(d, r);
            r
        };
        let mut dims = Vec::new();
        for d in 0..=cutoff {
            let n = self.slice_basis(d).len();
            let r_out = rank_at(d, &mut ranks);
            let r_in = rank_at(d - 3, &mut ranks);
            dims.push(n - r_out - r_in);
        }
        Ok(dims)
    }
}

/// Outcome of the averaging-map verification.
pub struct PsiVerification {
    pub checked_degrees: Vec<i64>,
}

/// Verify that the averaging map a_g -> (1/|G^|) sum_chi chi(g) (a (x) chi)
/// intertwines the lifted differential with the sector differentials, and
/// that it is a bijection onto the invariant part (two-sided inverse check),
/// degree by degree up to the cutoff.
pub fn verify_psi(complex: &TwistedComplex, cutoff: i64) -> Result<PsiVerification, TwistError> {
    let cover = &complex.cover;
    let group = &cover.group;
    let chars = crate::abelian::enumerate_characters(group);
    let up = UpstairsComplex::new(complex);
    let sectors: Vec<SectorComplex> = chars.iter().map(|chi| complex.sector(chi)).collect();
    let order_inv = CycNum::from_int(group.order() as i64)
        .inv()
        .expect("group order nonzero");
    let id = group.identity();

    // Collective invariant sector basis at a degree: (sector, mono, gen).
    let collective = |d: i64| -> Vec<(usize, Mono, usize)> {
        let mut out = Vec::new();
        for (si, s) in sectors.iter().enumerate() {
            for (m, g) in s.slice_basis(d, Some(&id)) {
                out.push((si, m, g));
            }
        }
        out
    };

    let psi_matrix = |d: i64| -> (SliceMatrix, Vec<(Mono, usize, usize)>) {
        let src = up.slice_basis(d);
        let dst = collective(d);
        let index: BTreeMap<(usize, Mono, usize), usize> =
            dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut m = SliceMatrix::new(dst.len(), src.len());
        for (col, (mono, gi, sheet)) in src.iter().enumerate() {
            for (si, chi) in chars.iter().enumerate() {
                let c = chi.eval(group, &up.sheets[*sheet]).mul(&order_inv);
                let row = *index
                    .get(&(si, *mono, *gi))
                    .expect("psi image in invariant part");
                m.add_to(row, col, &c);
            }
        }
        (m, src)
    };

    let mut checked = Vec::new();
    for d in 0..=cutoff {
        let (psi_d, src_d) = psi_matrix(d);
        let (psi_d3, _) = psi_matrix(d + 3);

        // Intertwining: psi . d_up = d_sector . psi, as matrices.
        let dup = up.slice_matrix(d);
        let dst_d = collective(d);
        let dst_d3 = collective(d + 3);
        let index3: BTreeMap<(usize, Mono, usize), usize> =
            dst_d3.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut dsec = SliceMatrix::new(dst_d3.len(), dst_d.len());
        for (col, (si, mono, gi)) in dst_d.iter().enumerate() {
            let image =
                sectors[*si].diff[*gi].mul_poly(&Poly::monomial(*mono, CycNum::from_int(1)));
            for (og, p) in &image.terms {
                for (om, c) in &p.terms {
                    let row = *index3
                        .get(&(*si, *om, *og))
                        .expect("sector differential in slice");
                    dsec.add_to(row, col, c);
                }
            }
        }
        let lhs = psi_d3.matmul(&dup);
        let rhs = dsec.matmul(&psi_d);
        if !lhs.same_entries(&rhs) {
            let col = (0..src_d.len())
                .find(|c| {
                    lhs.rows.iter().zip(&rhs.rows).any(|(a, b)| {
                        a.get(c).unwrap_or(&CycNum::zero(1))
                            != b.get(c).unwrap_or(&CycNum::zero(1))
                    })
                })
                .unwrap_or(0);
            let basis_elt = &src_d[col];
            return Err(TwistError::IntertwiningFailure {
                degree: d,
                witness: format!(
                    "{}*{} on sheet {}",
                    basis_elt.0,
                    complex.gens[basis_elt.1].name,
                    group.elem_string(&up.sheets[basis_elt.2])
                ),
            });
        }

        // Bijectivity: psi_inv . psi = id upstairs and psi . psi_inv = id
        // on the invariant part.
        let dst = dst_d;
        let mut psi_inv = SliceMatrix::new(src_d.len(), dst.len());
        let up_index: BTreeMap<(Mono, usize, usize), usize> =
            src_d.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        for (col, (si, mono, gi)) in dst.iter().enumerate() {
            for (sheet_idx, sheet) in up.sheets.iter().enumerate() {
                let c = chars[*si].eval(group, &group.neg(sheet));
                let row = *up_index
                    .get(&(*mono, *gi, sheet_idx))
                    .expect("inverse image");
                psi_inv.add_to(row, col, &c);
            }
        }
        if !psi_inv.matmul(&psi_d).is_identity() {
            return Err(TwistError::IntertwiningFailure {
                degree: d,
                witness: "psi_inv . psi != id".to_string(),
            });
        }
        if !psi_d.matmul(&psi_inv).is_identity() {
            return Err(TwistError::IntertwiningFailure {
                degree: d,
                witness: "psi . psi_inv != id".to_string(),
            });
        }
        checked.push(d);
    }
    Ok(PsiVerification {
        checked_degrees: checked,
    })
}

/// Sum over sectors of invariant cohomology dims, for comparison with the
/// upstairs cohomology.
pub fn invariant_sector_dim_sum(
    complex: &TwistedComplex,
    cutoff: i64,
) -> Result<Vec<usize>, TwistError> {
    let chars = crate::abelian::enumerate_characters(&complex.cover.group);
    let mut total = vec![0usize; (cutoff + 1) as usize];
    for chi in &chars {
        let dims = complex.sector(chi).homology_dims(cutoff, true)?;
        for (t, d) in total.iter_mut().zip(dims) {
            *t += d;
        }
    }
    Ok(total)
}
