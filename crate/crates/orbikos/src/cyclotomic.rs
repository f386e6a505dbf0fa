//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Every scalar in this crate is a [`CycNum`]: a rational polynomial in a
//! primitive N-th root of unity, kept reduced modulo the N-th cyclotomic
//! polynomial Phi_N. Reduction modulo Phi_N (rather than x^N - 1) makes the
//! representative canonical, so equality and the zero test are plain
//! coefficient comparisons. Mixed orders are handled by lifting both operands
//! to the lcm order through zeta_M = zeta_N^(N/M).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FieldError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("orders {0} and {1} have no common lift")]
    OrderMismatch(u32, u32),
}

/// Euler totient.
pub fn phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Coefficients of Phi_n, ascending degree, monic integer polynomial.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = poly_div_exact(&num, &div);
        }
    }
    num
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

struct OrderTable {
    phi: usize,
    /// x^k mod Phi_N for 0 <= k < max(2*phi - 1, N), in the power basis.
    powers: Vec<Vec<BigRational>>,
}

impl OrderTable {
    fn build(n: u32) -> OrderTable {
        let cyc = cyclotomic_poly(n);
        let ph = cyc.len() - 1;
        let count = std::cmp::max(2 * ph.max(1) - 1, n as usize);
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(count);
        for k in 0..count {
            if k < ph {
                let mut v = vec![BigRational::zero(); ph];
                v[k] = BigRational::one();
                powers.push(v);
            } else {
                // x^k = x * x^(k-1), then reduce the top coefficient.
                let prev = &powers[k - 1];
                let mut v = vec![BigRational::zero(); ph + 1];
                for (i, c) in prev.iter().enumerate() {
                    v[i + 1] = c.clone();
                }
                let top = v[ph].clone();
                if !top.is_zero() {
                    for i in 0..ph {
                        v[i] -= &top * BigRational::from(cyc[i].clone());
                    }
                }
                v.truncate(ph);
                powers.push(v);
            }
        }
        OrderTable { phi: ph, powers }
    }
}

fn with_table<R>(n: u32, f: impl FnOnce(&OrderTable) -> R) -> R {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static OrderTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().unwrap();
    let entry = guard
        .entry(n)
        .or_insert_with(|| Box::leak(Box::new(OrderTable::build(n))));
    let table: &'static OrderTable = entry;
    drop(guard);
    f(table)
}

/// An element of Q(zeta_order), reduced modulo Phi_order.
#[derive(Clone)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Semantic equality: elements of different orders are compared in the
/// common lift.
impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            self.equals(other)
        }
    }
}

impl Eq for CycNum {}

impl CycNum {
    pub fn zero(order: u32) -> CycNum {
        let ph = phi(order) as usize;
        CycNum {
            order,
            coeffs: vec![BigRational::zero(); ph],
        }
    }

    pub fn one(order: u32) -> CycNum {
        let mut c = CycNum::zero(order);
        c.coeffs[0] = BigRational::one();
        c
    }

    pub fn from_rational(q: BigRational) -> CycNum {
        CycNum {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum::from_rational(BigRational::from(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> CycNum {
        CycNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// zeta_n^k in canonical form; `root_of_unity(n, 0)` is the unit.
    pub fn root_of_unity(n: u32, k: i64) -> CycNum {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        with_table(n, |t| CycNum {
            order: n,
            coeffs: t.powers[k].clone(),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part if the element is rational, else None.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Embed into Q(zeta_target); requires `self.order | target`.
    pub fn lift_to(&self, target: u32) -> Result<CycNum, FieldError> {
        if target == self.order {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.order) {
            return Err(FieldError::OrderMismatch(self.order, target));
        }
        let step = (target / self.order) as usize;
        with_table(target, |t| {
            let mut out = vec![BigRational::zero(); t.phi];
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, p) in t.powers[i * step].iter().enumerate() {
                    out[j] += c * p;
                }
            }
            Ok(CycNum {
                order: target,
                coeffs: out,
            })
        })
    }

    fn common_order(a: &CycNum, b: &CycNum) -> u32 {
        num_integer::lcm(a.order, b.order)
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let n = CycNum::common_order(self, other);
        let mut a = self.lift_to(n).expect("lcm lift");
        let b = other.lift_to(n).expect("lcm lift");
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(CycNum::common_order(self, other));
        }
        // Rational factors avoid the convolution entirely.
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        let n = CycNum::common_order(self, other);
        let a = self.lift_to(n).expect("lcm lift");
        let b = other.lift_to(n).expect("lcm lift");
        with_table(n, |t| {
            let mut conv = vec![BigRational::zero(); 2 * t.phi - 1];
            for (i, x) in a.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.coeffs.iter().enumerate() {
                    if !y.is_zero() {
                        conv[i + j] += x * y;
                    }
                }
            }
            let mut out = vec![BigRational::zero(); t.phi];
            for (k, c) in conv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k < t.phi {
                    out[k] += c;
                } else {
                    for (j, p) in t.powers[k].iter().enumerate() {
                        if !p.is_zero() {
                            out[j] += c * p;
                        }
                    }
                }
            }
            CycNum {
                order: n,
                coeffs: out,
            }
        })
    }

    fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() {
            return CycNum::zero(self.order);
        }
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    pub fn inv(&self) -> Result<CycNum, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero(self.order));
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum {
                order: self.order,
                coeffs: {
                    let mut v = vec![BigRational::zero(); self.coeffs.len()];
                    v[0] = q.recip();
                    v
                },
            });
        }
        let modulus: Vec<BigRational> = cyclotomic_poly(self.order)
            .into_iter()
            .map(BigRational::from)
            .collect();
        let inv = poly_mod_inverse(&self.coeffs, &modulus);
        with_table(self.order, |t| {
            let mut out = vec![BigRational::zero(); t.phi];
            for (k, c) in inv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, p) in t.powers[k].iter().enumerate() {
                    out[j] += c * p;
                }
            }
            Ok(CycNum {
                order: self.order,
                coeffs: out,
            })
        })
    }

    pub fn pow(&self, k: i64) -> CycNum {
        if k < 0 {
            return self.inv().expect("inverse of zero").pow(-k);
        }
        let mut acc = CycNum::one(self.order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn equals(&self, other: &CycNum) -> bool {
        let n = CycNum::common_order(self, other);
        self.lift_to(n).expect("lcm lift").coeffs == other.lift_to(n).expect("lcm lift").coeffs
    }
}

/// Inverse of `a` modulo the monic polynomial `m` over Q (assumes gcd = 1).
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    // Extended Euclid on (m, a): maintain r = s*m + t*a.
    let trim = |v: &mut Vec<BigRational>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    };
    let mut r0: Vec<BigRational> = m.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut t0: Vec<BigRational> = vec![BigRational::zero()];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, rem) = poly_divmod(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = rem;
        trim(&mut r1);
        t0 = t1;
        t1 = t2;
    }
    // r0 is the gcd, a nonzero constant for field extensions.
    assert!(r0.len() == 1 && !r0[0].is_zero(), "element not invertible");
    let c = r0[0].recip();
    t0.iter().map(|x| x * &c).collect()
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![BigRational::zero()], rem);
    }
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigRational::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = &rem[k + dn] / &lead;
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                let sub = &c * d;
                rem[k + i] -= sub;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dn.max(1));
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "z{}", self.order)?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}
