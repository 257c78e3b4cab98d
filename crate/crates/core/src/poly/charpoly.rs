//! Characteristic polynomials by Faddeev–LeVerrier (fixed width, with the
//! adjugate polynomial kept for bordered extensions) and by fraction-free
//! Bareiss elimination with interpolation (arbitrary precision).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPolynomial, PolyError};
use crate::graphmat::HermitianMatrix;
use crate::ring::{Ring, RingElement};

/// `a + bθ` with 128-bit components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct W {
    a: i128,
    b: i128,
}

impl W {
    const ZERO: W = W { a: 0, b: 0 };

    fn from(x: RingElement) -> W {
        W { a: x.a as i128, b: x.b as i128 }
    }

    fn add(self, o: W) -> Option<W> {
        Some(W { a: self.a.checked_add(o.a)?, b: self.b.checked_add(o.b)? })
    }

    fn mul(self, o: W, ring: Ring) -> Option<W> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(match ring {
            Ring::Rational => W { a: ac, b: 0 },
            Ring::Gaussian => W { a: ac.checked_sub(bd)?, b: ad.checked_add(bc)? },
            Ring::Eisenstein => W { a: ac.checked_sub(bd)?, b: ad.checked_add(bc)?.checked_add(bd)? },
        })
    }

    fn conj(self, ring: Ring) -> W {
        match ring {
            Ring::Rational => self,
            Ring::Gaussian => W { a: self.a, b: -self.b },
            Ring::Eisenstein => W { a: self.a + self.b, b: -self.b },
        }
    }
}

enum FlFailure {
    Overflow,
    NonIntegral,
}

/// χ coefficients (ascending, length n + 1) and the adjugate coefficient
/// matrices `B_0 … B_(n−1)` with `adj(xI − A) = Σ_k B_k x^(n−1−k)`.
fn faddeev_leverrier(a: &HermitianMatrix) -> Result<(Vec<i128>, Vec<Vec<W>>), FlFailure> {
    let n = a.n();
    let ring = a.ring();
    let am: Vec<W> = a.entries().iter().map(|&x| W::from(x)).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut b = vec![W::ZERO; n * n];
    for i in 0..n {
        b[i * n + i] = W { a: 1, b: 0 };
    }
    let mut bs = Vec::with_capacity(n);
    for k in 1..=n {
        let mut ab = vec![W::ZERO; n * n];
        for r in 0..n {
            for m in 0..n {
                let x = am[r * n + m];
                if x == W::ZERO {
                    continue;
                }
                for col in 0..n {
                    let y = b[m * n + col];
                    if y == W::ZERO {
                        continue;
                    }
                    let p = x.mul(y, ring).ok_or(FlFailure::Overflow)?;
                    ab[r * n + col] = ab[r * n + col].add(p).ok_or(FlFailure::Overflow)?;
                }
            }
        }
        let mut tr = W::ZERO;
        for i in 0..n {
            tr = tr.add(ab[i * n + i]).ok_or(FlFailure::Overflow)?;
        }
        if tr.b != 0 || tr.a % k as i128 != 0 {
            return Err(FlFailure::NonIntegral);
        }
        let ck = -(tr.a / k as i128);
        c[n - k] = ck;
        for i in 0..n {
            ab[i * n + i] = ab[i * n + i].add(W { a: ck, b: 0 }).ok_or(FlFailure::Overflow)?;
        }
        bs.push(std::mem::replace(&mut b, ab));
    }
    debug_assert!(b.iter().all(|&x| x == W::ZERO), "Cayley–Hamilton residue is nonzero");
    Ok((c, bs))
}

/// Faddeev–LeVerrier with exact integer traces; overflow falls back to Bareiss.
pub fn char_poly_faddeev(a: &HermitianMatrix) -> Result<IntPolynomial, PolyError> {
    match faddeev_leverrier(a) {
        Ok((c, _)) => Ok(IntPolynomial::from_i128(&c)),
        Err(FlFailure::Overflow) => Ok(char_poly_bareiss(a)),
        Err(FlFailure::NonIntegral) => Err(PolyError::NonIntegral),
    }
}

/// `det(xI − A)`, monic of degree n with integer coefficients.
pub fn char_poly(a: &HermitianMatrix) -> IntPolynomial {
    char_poly_faddeev(a).unwrap_or_else(|e| panic!("{e}"))
}

/// `a + bθ` with arbitrary-precision components.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Big {
    a: BigInt,
    b: BigInt,
}

impl Big {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Big, ring: Ring) -> Big {
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let ad = &self.a * &o.b;
        let bc = &self.b * &o.a;
        match ring {
            Ring::Rational => Big { a: ac, b: BigInt::zero() },
            Ring::Gaussian => Big { a: ac - bd, b: ad + bc },
            Ring::Eisenstein => Big { a: ac - &bd, b: ad + bc + bd },
        }
    }

    fn sub(&self, o: &Big) -> Big {
        Big { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn norm(&self, ring: Ring) -> BigInt {
        match ring {
            Ring::Rational => &self.a * &self.a,
            Ring::Gaussian => &self.a * &self.a + &self.b * &self.b,
            Ring::Eisenstein => &self.a * &self.a + &self.a * &self.b + &self.b * &self.b,
        }
    }

    fn conj(&self, ring: Ring) -> Big {
        match ring {
            Ring::Rational => self.clone(),
            Ring::Gaussian => Big { a: self.a.clone(), b: -&self.b },
            Ring::Eisenstein => Big { a: &self.a + &self.b, b: -&self.b },
        }
    }

    /// Exact quotient; the divisor is known to divide.
    fn div_exact(&self, d: &Big, ring: Ring) -> Big {
        let num = self.mul(&d.conj(ring), ring);
        let nd = d.norm(ring);
        let q = Big { a: &num.a / &nd, b: &num.b / &nd };
        debug_assert_eq!(q.mul(d, ring), *self, "inexact Bareiss division");
        q
    }
}

/// Determinant over the ring by fraction-free elimination.
fn bareiss_det(mut m: Vec<Big>, n: usize, ring: Ring) -> Big {
    let one = Big { a: BigInt::one(), b: BigInt::zero() };
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Big { a: BigInt::zero(), b: BigInt::zero() };
            };
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i * n + j].mul(&m[k * n + k], ring).sub(&m[i * n + k].mul(&m[k * n + j], ring));
                m[i * n + j] = t.div_exact(&prev, ring);
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if negate {
        Big { a: -d.a, b: -d.b }
    } else {
        d
    }
}

/// Characteristic polynomial from `det(tI − A)` at `t = 0..n`, interpolated exactly.
pub fn char_poly_bareiss(a: &HermitianMatrix) -> IntPolynomial {
    let n = a.n();
    let ring = a.ring();
    let mut values = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let mut m = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let x = a.get(r, c);
                let diag = if r == c { t as i64 } else { 0 };
                m.push(Big { a: BigInt::from(diag - x.a), b: BigInt::from(-x.b) });
            }
        }
        let d = bareiss_det(m, n, ring);
        assert!(d.b.is_zero(), "determinant of a Hermitian matrix must be rational");
        values.push(d.a);
    }
    interpolate(&values)
}

/// The polynomial of degree ≤ len − 1 through `(t, values[t])` for `t = 0, 1, …`.
fn interpolate(values: &[BigInt]) -> IntPolynomial {
    // Newton forward differences: p(t) = Σ Δ^k y_0 · C(t, k)
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut newton = Vec::with_capacity(values.len());
    for _ in 0..values.len() {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); values.len()];
    // basis C(t, k) = t(t−1)…(t−k+1)/k!
    let mut basis: Vec<BigRational> = vec![BigRational::one()];
    for (k, dk) in newton.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            acc[j] += b * BigRational::from_integer(dk.clone());
        }
        let shift = BigRational::from_integer(BigInt::from(k));
        let denom = BigRational::from_integer(BigInt::from(k + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] += b / &denom;
            next[j] -= b * &shift / &denom;
        }
        basis = next;
    }
    let coeffs = acc
        .into_iter()
        .map(|r| {
            assert!(r.is_integer(), "interpolated characteristic polynomial is not integral");
            r.to_integer()
        })
        .collect();
    IntPolynomial::new(coeffs)
}

fn shift_by_two(c: &[i128]) -> Option<Vec<i128>> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            c[j] = c[j].checked_add(c[j + 1].checked_mul(2)?)?;
        }
    }
    Some(c)
}

/// For a monic real-rooted χ (ascending coefficients): are all roots in
/// `[−2, 2]`? `None` on 128-bit overflow.
pub(crate) fn window_test_i128(c: &[i128]) -> Option<bool> {
    let upper = shift_by_two(c)?;
    if upper.iter().any(|&x| x < 0) {
        return Some(false);
    }
    let n = c.len() - 1;
    let reflected: Vec<i128> =
        c.iter().enumerate().map(|(k, &x)| if (n - k) % 2 == 1 { -x } else { x }).collect();
    let lower = shift_by_two(&reflected)?;
    Some(lower.iter().all(|&x| x >= 0))
}

/// Precomputed data for testing many single-vertex extensions of one matrix.
///
/// Uses `χ_{A'}(x) = (x − x₀)·χ_A(x) − c*·adj(xI − A)·c` for the bordered
/// matrix `A' = [[A, c], [c*, x₀]]`.
pub struct ExtensionTester {
    ring: Ring,
    n: usize,
    chi: Vec<i128>,
    adj: Vec<Vec<W>>,
    base: HermitianMatrix,
}

impl ExtensionTester {
    pub fn new(a: &HermitianMatrix) -> Option<Self> {
        let (chi, adj) = faddeev_leverrier(a).ok()?;
        Some(ExtensionTester { ring: a.ring(), n: a.n(), chi, adj, base: a.clone() })
    }

    pub fn base(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn base_char_poly(&self) -> IntPolynomial {
        IntPolynomial::from_i128(&self.chi)
    }

    /// χ of the extension by `column` with charge `charge`, ascending; `None` on overflow.
    pub fn extension_coeffs(&self, column: &[RingElement], charge: i64) -> Option<Vec<i128>> {
        let n = self.n;
        let ring = self.ring;
        let c: Vec<W> = column.iter().map(|&x| W::from(x)).collect();
        let cc: Vec<W> = c.iter().map(|x| x.conj(ring)).collect();
        let x0 = charge as i128;
        let mut out = vec![0i128; n + 2];
        for (j, &cj) in self.chi.iter().enumerate() {
            out[j + 1] = out[j + 1].checked_add(cj)?;
            out[j] = out[j].checked_sub(x0.checked_mul(cj)?)?;
        }
        let support: Vec<usize> = (0..n).filter(|&i| c[i] != W::ZERO).collect();
        for (k, bk) in self.adj.iter().enumerate() {
            let mut q = W::ZERO;
            for &i in &support {
                let mut row = W::ZERO;
                for &j in &support {
                    let e = bk[i * n + j];
                    if e != W::ZERO {
                        row = row.add(e.mul(c[j], ring)?)?;
                    }
                }
                q = q.add(cc[i].mul(row, ring)?)?;
            }
            debug_assert_eq!(q.b, 0, "quadratic form of a Hermitian matrix must be rational");
            let idx = n - 1 - k;
            out[idx] = out[idx].checked_sub(q.a)?;
        }
        Some(out)
    }

    pub fn extension_char_poly(&self, column: &[RingElement], charge: i64) -> IntPolynomial {
        match self.extension_coeffs(column, charge) {
            Some(c) => IntPolynomial::from_i128(&c),
            None => char_poly(&self.base.extend_unchecked(column, charge)),
        }
    }

    /// Is the extension cyclotomic (all eigenvalues in `[−2, 2]`)?
    pub fn extension_is_cyclotomic(&self, column: &[RingElement], charge: i64) -> bool {
        if let Some(c) = self.extension_coeffs(column, charge) {
            if let Some(ok) = window_test_i128(&c) {
                return ok;
            }
        }
        super::sturm::real_rooted_in_window(&self.extension_char_poly(column, charge))
    }
}
