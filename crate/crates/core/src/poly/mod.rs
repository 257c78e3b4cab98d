//! Integer polynomials, characteristic polynomials, exact real-root counting
//! and Mahler measures.

mod charpoly;
mod mahler;
mod roots;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use charpoly::{char_poly, char_poly_bareiss, char_poly_faddeev, ExtensionTester};
pub use mahler::{
    is_product_of_cyclotomics, large_entry_reject, mahler_measure, mahler_measure_numeric, mahler_of_matrix,
    MahlerResult, GOLDEN_RATIO, TAU0, W3_BOUND,
};
pub use roots::{find_roots, RootApprox};
pub use sturm::{count_roots_in_interval, is_cyclotomic_matrix, is_cyclotomic_matrix_fast, is_cyclotomic_poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error("cannot parse polynomial coefficient {0:?}")]
    Parse(String),
    #[error("characteristic polynomial integrality check failed")]
    NonIntegral,
}

/// Integer polynomial with coefficients in ascending degree order; trailing
/// zeros are trimmed so the last coefficient is the leading one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_i128(coeffs: &[i128]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    pub fn to_i128(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|c| c.to_i128()).collect()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(num/den)` for `den > 0`, computed with integers only.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i32 {
        debug_assert!(den.is_positive());
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pows = Vec::with_capacity(d + 1);
        let mut q = BigInt::one();
        for _ in 0..=d {
            den_pows.push(q.clone());
            q *= den;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pow * &den_pows[d - k];
            num_pow *= num;
        }
        sign(&acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: i64) -> Self {
        let a = BigInt::from(a);
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * &a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `p(−x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_changes(&self) -> usize {
        sign_changes(self.coeffs.iter().map(sign))
    }

    /// Exact division over ℤ; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qq, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qq * c;
            }
            q[k] = qq;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^(deg p − deg d + 1)·p mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        for top in (dd..rem.len()).rev() {
            let t = rem[top].clone();
            for c in rem.iter_mut().take(top + 1) {
                *c *= &dl;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[top - dd + j] -= &t * c;
            }
            debug_assert!(rem[top].is_zero());
        }
        rem.truncate(dd);
        Self::new(rem)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// `p / gcd(p, p′)`, made primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().exact_div(&g).expect("gcd divides p").primitive_part()
    }

    /// Yun's squarefree factorization of the primitive part: pairs `(f_i, i)`
    /// with `p = ±content·Π f_i^i` and each `f_i` squarefree of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let p = self.primitive_part();
        if p.degree() == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.exact_div(&a0).expect("gcd divides p").primitive_part();
        let mut c = dp.exact_div(&a0).expect("gcd divides p′");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides b").primitive_part();
            c = d.exact_div(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Polynomial with the coefficient list reversed, `x^deg·p(1/x)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Human-readable rendering in descending powers of `var`.
    pub fn to_pretty(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                s.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => s.push(var),
                _ => s.push_str(&format!("{var}^{k}")),
            }
        }
        s
    }

    /// Parses a whitespace-separated ascending coefficient list.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let coeffs = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>().map_err(|_| PolyError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

pub(crate) fn sign(c: &BigInt) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `R(z) = z^n·χ(z + 1/z)`, computed in the basis `z^k + z^(−k)`.
pub fn reciprocal_transform(chi: &IntPolynomial) -> IntPolynomial {
    let n = chi.degree();
    if chi.is_zero() {
        return IntPolynomial::zero();
    }
    // t[k][j]: coefficient of z^j (j in −k..=k, offset k) in (z + 1/z)^k,
    // built from (z + 1/z)^k = (z^k + z^−k) + lower terms via the recurrence
    // (z + 1/z)·(z + 1/z)^(k−1).
    let mut out = vec![BigInt::zero(); 2 * n + 1];
    let mut pow: Vec<BigInt> = vec![BigInt::one()]; // (z + 1/z)^0 centered at index 0
    for k in 0..=n {
        let c = chi.coeff(k);
        if !c.is_zero() {
            // pow has length 2k+1 and represents exponents −k..=k
            for (idx, p) in pow.iter().enumerate() {
                if !p.is_zero() {
                    // exponent e = idx − k maps to z^(n + e)
                    out[n + idx - k] += &c * p;
                }
            }
        }
        let mut next = vec![BigInt::zero(); pow.len() + 2];
        for (idx, p) in pow.iter().enumerate() {
            next[idx] += p;
            next[idx + 2] += p;
        }
        pow = next;
    }
    IntPolynomial::new(out)
}

/// Inverse of [`reciprocal_transform`]: for a palindromic `p` of even degree
/// `2n`, the unique `q` of degree `n` with `p(z) = z^n·q(z + 1/z)`.
pub fn inverse_reciprocal_transform(p: &IntPolynomial) -> Option<IntPolynomial> {
    if p.is_zero() || p.degree() % 2 == 1 || !p.is_palindromic() {
        return None;
    }
    let n = p.degree() / 2;
    // peel off the top power of (z + 1/z) repeatedly
    let mut rem: Vec<BigInt> = p.coeffs.clone();
    let mut q = vec![BigInt::zero(); n + 1];
    for k in (0..=n).rev() {
        let c = rem[n + k].clone();
        q[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        // subtract c·(z + 1/z)^k centered at n
        let mut binom = BigInt::one();
        for j in 0..=k {
            let e = 2 * j; // exponent −k + 2j, index n − k + 2j
            rem[n - k + e] -= &c * &binom;
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(IntPolynomial::new(q))
    } else {
        None
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{}]", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
