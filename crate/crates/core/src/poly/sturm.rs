//! Exact real-root counting with Sturm sequences and the cyclotomicity test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{char_poly, sign_changes, IntPolynomial};
use crate::graphmat::HermitianMatrix;

/// Sturm sequence of a squarefree polynomial, kept primitive with integer
/// coefficients. Each remainder is the negated pseudo-remainder divided by a
/// positive constant, so signs match the rational Sturm sequence.
fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let k = seq.len();
        let (a, b) = (&seq[k - 2], &seq[k - 1]);
        if b.degree() == 0 {
            break;
        }
        let mut r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        let delta = a.degree() - b.degree() + 1;
        // prem multiplies by lc(b)^delta; undo a negative factor
        if b.leading().is_negative() && delta % 2 == 1 {
            r = -&r;
        }
        let g = r.content();
        let r = IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &g)).collect());
        seq.push(r);
    }
    seq
}

fn variations(seq: &[IntPolynomial], x: &BigRational) -> usize {
    let (num, den) = (x.numer(), x.denom());
    sign_changes(seq.iter().map(|q| q.sign_at(num, den)))
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_in_interval(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(!p.is_zero(), "zero polynomial has infinitely many roots");
    if lo > hi || p.degree() == 0 {
        return 0;
    }
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    // for squarefree p, V(a) − V(b) counts roots in (a, b] even when a or b is a root
    let count = variations(&seq, lo) - variations(&seq, hi);
    let at_lo = sf.sign_at(lo.numer(), lo.denom()) == 0;
    count + usize::from(at_lo)
}

/// All roots of the real-rooted polynomial `p` lie in `[−2, 2]`, decided by Sturm counting.
pub fn is_cyclotomic_poly(chi: &IntPolynomial) -> bool {
    if chi.degree() == 0 {
        return true;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let sf = chi.squarefree_part();
    count_roots_in_interval(&sf, &-two.clone(), &two) == sf.degree()
}

/// Every eigenvalue lies in `[−2, 2]`.
pub fn is_cyclotomic_matrix(a: &HermitianMatrix) -> bool {
    is_cyclotomic_poly(&char_poly(a))
}

/// Same decision as [`is_cyclotomic_matrix`], via Descartes' rule: since χ is
/// real-rooted, all roots are ≤ 2 iff χ(x + 2) has no sign changes and all
/// roots are ≥ −2 iff χ(−x − 2) has none.
pub fn is_cyclotomic_matrix_fast(a: &HermitianMatrix) -> bool {
    real_rooted_in_window(&char_poly(a))
}

pub(crate) fn real_rooted_in_window(chi: &IntPolynomial) -> bool {
    if let Some(c) = chi.to_i128() {
        if let Some(ok) = super::charpoly::window_test_i128(&c) {
            return ok;
        }
    }
    chi.taylor_shift(2).sign_changes() == 0 && chi.negate_variable().taylor_shift(2).sign_changes() == 0
}
