//! Mahler measures with error bounds, and the exact `M = 1` decision.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::roots::find_roots;
use super::sturm::{is_cyclotomic_poly, real_rooted_in_window};
use super::{char_poly, inverse_reciprocal_transform, reciprocal_transform, IntPolynomial, PolyError};
use crate::graphmat::HermitianMatrix;

/// Lehmer's number, the larger real zero of Lehmer's polynomial.
pub const TAU0: f64 = 1.176_280_818_259_917_5;

/// `(1 + √5)/2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Lower bound on M(R_A) for a non-cyclotomic matrix whose largest
/// off-diagonal entry norm is 3.
pub const W3_BOUND: f64 = 1.556;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MahlerResult {
    pub value: f64,
    pub error_bound: f64,
    pub is_exactly_one: bool,
}

impl MahlerResult {
    /// `value ± error_bound [exact-one: yes|no]`, with nine decimals.
    pub fn display(&self) -> String {
        if self.is_exactly_one {
            format!("{:.9} [exact-one: yes]", self.value)
        } else {
            format!("{:.9} ± {:.1e} [exact-one: no]", self.value, self.error_bound)
        }
    }
}

fn strip_zero_roots(p: &IntPolynomial) -> IntPolynomial {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    IntPolynomial::new(p.coeffs()[k..].to_vec())
}

/// Mahler measure from numerical roots alone; `is_exactly_one` is always false.
pub fn mahler_measure_numeric(p: &IntPolynomial) -> Result<MahlerResult, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = strip_zero_roots(p);
    let content = p.content().to_f64().unwrap_or(f64::INFINITY);
    let mut value = content;
    let mut rel_err = 0.0;
    for (f, mult) in p.squarefree_decomposition() {
        let (m, e) = measure_squarefree(&f);
        value *= m.powi(mult as i32);
        rel_err += mult as f64 * e;
    }
    let rel_err = rel_err + 4.0 * f64::EPSILON * (p.degree() as f64 + 1.0);
    Ok(MahlerResult { value, error_bound: value * rel_err, is_exactly_one: false })
}

/// Measure of a squarefree integer polynomial and its relative error bound.
fn measure_squarefree(f: &IntPolynomial) -> (f64, f64) {
    let coeffs = f.to_f64();
    let lead = coeffs.last().copied().unwrap_or(1.0).abs();
    if f.degree() == 0 {
        return (lead, 0.0);
    }
    let mut m = lead;
    let mut rel = 0.0;
    for r in find_roots(&coeffs) {
        let a = r.z.norm();
        if a + r.radius > 1.0 {
            m *= a.max(1.0);
            // each factor max(1, |z|) moves by at most the radius
            rel += r.radius / (a - r.radius).max(1.0);
        }
    }
    (m, rel)
}

/// `M(p) = |lead|·Π max(1, |α|)`, with the exact-one flag decided exactly.
pub fn mahler_measure(p: &IntPolynomial) -> Result<MahlerResult, PolyError> {
    let num = mahler_measure_numeric(p)?;
    let certainly_above = num.value - num.error_bound > 1.0 + 1e-9;
    if !certainly_above && is_product_of_cyclotomics(p) {
        return Ok(exact_one(num));
    }
    Ok(num)
}

fn exact_one(num: MahlerResult) -> MahlerResult {
    MahlerResult { value: 1.0, error_bound: num.error_bound.max((num.value - 1.0).abs()), is_exactly_one: true }
}

/// True iff `p` is `±z^k` times a product of cyclotomic polynomials, that is,
/// iff `M(p) = 1`. After removing the factors `z`, `z − 1` and `z + 1` the
/// rest must be palindromic of even degree, `z^n·q(z + 1/z)`, with every
/// root of `q` real and in `[−2, 2]`.
pub fn is_product_of_cyclotomics(p: &IntPolynomial) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut r = strip_zero_roots(p);
    if !r.leading().abs().is_one() || !r.coeff(0).abs().is_one() {
        return false;
    }
    for lin in [IntPolynomial::from_i64(&[-1, 1]), IntPolynomial::from_i64(&[1, 1])] {
        while r.degree() > 0 {
            match r.exact_div(&lin) {
                Some(q) => r = q,
                None => break,
            }
        }
    }
    if r.degree() == 0 {
        return true;
    }
    if r.leading().is_negative() {
        r = -&r;
    }
    match inverse_reciprocal_transform(&r) {
        Some(q) => is_cyclotomic_poly(&q),
        None => false,
    }
}

/// `M(R_A)` for `R_A(z) = z^n·χ_A(z + 1/z)`; exact-one iff `A` is cyclotomic.
pub fn mahler_of_matrix(a: &HermitianMatrix) -> MahlerResult {
    let chi = char_poly(a);
    let r = reciprocal_transform(&chi);
    let num = mahler_measure_numeric(&r).expect("reciprocal polynomial is nonzero");
    if real_rooted_in_window(&chi) {
        exact_one(num)
    } else {
        num
    }
}

/// Cheap lower bound on M(R_A) from large entries, without root finding.
///
/// Returns the golden ratio when some entry has modulus above 2, or when `A`
/// is non-cyclotomic and has an entry of modulus 2; returns [`W3_BOUND`] when
/// `A` is non-cyclotomic with an off-diagonal entry of norm 3. Cyclotomic
/// matrices never receive a bound above 1.
pub fn large_entry_reject(a: &HermitianMatrix) -> Option<f64> {
    let max_norm = a.entries().iter().map(|x| x.norm()).max().unwrap_or(0);
    if max_norm > 4 {
        return Some(GOLDEN_RATIO);
    }
    if max_norm < 3 {
        return None;
    }
    if real_rooted_in_window(&char_poly(a)) {
        return None;
    }
    if max_norm == 4 {
        Some(GOLDEN_RATIO)
    } else {
        Some(W3_BOUND)
    }
}
