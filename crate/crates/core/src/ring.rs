//! Exact arithmetic in the rational integers, the Gaussian integers ℤ[i] and
//! the Eisenstein integers ℤ[ω].
//!
//! Every element is stored as an integer pair `(a, b)` meaning `a + bθ`, with
//! `θ = i` (θ² = −1) for ℤ[i] and `θ = ω = 1/2 + √−3/2` (θ² = θ − 1) for ℤ[ω].
//! Rational integers always have `b = 0`. No floating point is used here.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(Ring, Ring),
    #[error("integer overflow in ring arithmetic")]
    Overflow,
    #[error("element {0} has a θ-component but the ring is rational")]
    NotRational(String),
    #[error("cannot parse ring element {token:?}: {reason}")]
    Parse { token: String, reason: String },
    #[error("unknown ring {0:?} (expected rational, gaussian or eisenstein)")]
    UnknownRing(String),
}

/// The three coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Rational,
    Gaussian,
    Eisenstein,
}

impl Ring {
    pub const ALL: [Ring; 3] = [Ring::Rational, Ring::Gaussian, Ring::Eisenstein];

    pub fn name(self) -> &'static str {
        match self {
            Ring::Rational => "rational",
            Ring::Gaussian => "gaussian",
            Ring::Eisenstein => "eisenstein",
        }
    }

    /// Symbol used for θ in the text notation.
    pub fn theta_symbol(self) -> Option<char> {
        match self {
            Ring::Rational => None,
            Ring::Gaussian => Some('i'),
            Ring::Eisenstein => Some('w'),
        }
    }

    pub fn zero(self) -> RingElement {
        RingElement { a: 0, b: 0, ring: self }
    }

    pub fn one(self) -> RingElement {
        RingElement { a: 1, b: 0, ring: self }
    }

    pub fn integer(self, a: i64) -> RingElement {
        RingElement { a, b: 0, ring: self }
    }

    /// θ itself, absent for the rational integers.
    pub fn theta(self) -> Option<RingElement> {
        match self {
            Ring::Rational => None,
            _ => Some(RingElement { a: 0, b: 1, ring: self }),
        }
    }

    /// Builds `a + bθ`, rejecting a θ-component over ℤ.
    pub fn element(self, a: i64, b: i64) -> Result<RingElement, RingError> {
        if self == Ring::Rational && b != 0 {
            return Err(RingError::NotRational(format!("{a}+{b}θ")));
        }
        Ok(RingElement { a, b, ring: self })
    }

    pub(crate) fn elem(self, a: i64, b: i64) -> RingElement {
        debug_assert!(self != Ring::Rational || b == 0);
        RingElement { a, b, ring: self }
    }

    /// The unit group: exactly the elements of norm 1.
    pub fn units(self) -> Vec<RingElement> {
        self.elements_of_norm(1)
    }

    /// The level set `L_k = { x : x·x̄ = k }`, sorted by the element order.
    pub fn elements_of_norm(self, k: u64) -> Vec<RingElement> {
        if k == 0 {
            return vec![self.zero()];
        }
        // |a|, |b| ≤ ⌈2√k⌉ covers both norm forms.
        let bound = (2.0 * (k as f64).sqrt()).ceil() as i64 + 1;
        let b_range = if self == Ring::Rational { 0..=0 } else { -bound..=bound };
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in b_range.clone() {
                let x = RingElement { a, b, ring: self };
                if x.norm() == k {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" | "z" | "integer" => Ok(Ring::Rational),
            "gaussian" | "zi" | "z[i]" => Ok(Ring::Gaussian),
            "eisenstein" | "zw" | "z[w]" => Ok(Ring::Eisenstein),
            other => Err(RingError::UnknownRing(other.to_string())),
        }
    }
}

/// `a + bθ` in one of the three rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub a: i64,
    pub b: i64,
    pub ring: Ring,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the element is a rational integer (θ-component zero).
    pub fn is_real(&self) -> bool {
        self.b == 0
    }

    /// x·x̄ as a non-negative integer.
    pub fn norm(&self) -> u64 {
        let (a, b) = (self.a as i128, self.b as i128);
        let n = match self.ring {
            Ring::Rational => a * a,
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a + a * b + b * b,
        };
        u64::try_from(n).expect("norm exceeds u64")
    }

    /// Complex conjugation, the nontrivial Galois automorphism.
    pub fn conj(&self) -> RingElement {
        match self.ring {
            Ring::Rational => *self,
            Ring::Gaussian => RingElement { a: self.a, b: -self.b, ..*self },
            // a + b(1 − ω) = (a + b) − bω
            Ring::Eisenstein => RingElement { a: self.a + self.b, b: -self.b, ..*self },
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn checked_add(self, rhs: RingElement) -> Result<RingElement, RingError> {
        same_ring(self, rhs)?;
        Ok(RingElement {
            a: self.a.checked_add(rhs.a).ok_or(RingError::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(RingError::Overflow)?,
            ring: self.ring,
        })
    }

    pub fn checked_sub(self, rhs: RingElement) -> Result<RingElement, RingError> {
        same_ring(self, rhs)?;
        Ok(RingElement {
            a: self.a.checked_sub(rhs.a).ok_or(RingError::Overflow)?,
            b: self.b.checked_sub(rhs.b).ok_or(RingError::Overflow)?,
            ring: self.ring,
        })
    }

    pub fn checked_mul(self, rhs: RingElement) -> Result<RingElement, RingError> {
        same_ring(self, rhs)?;
        let (a, b, c, d) = (self.a as i128, self.b as i128, rhs.a as i128, rhs.b as i128);
        let (re, th) = match self.ring {
            Ring::Rational => (a * c, 0),
            Ring::Gaussian => (a * c - b * d, a * d + b * c),
            // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω − 1)
            Ring::Eisenstein => (a * c - b * d, a * d + b * c + b * d),
        };
        Ok(RingElement {
            a: i64::try_from(re).map_err(|_| RingError::Overflow)?,
            b: i64::try_from(th).map_err(|_| RingError::Overflow)?,
            ring: self.ring,
        })
    }

    /// The element of `{u·self : u a unit}` with lexicographically greatest
    /// `(a, b)`, together with the unit `u` that reaches it. Zero maps to itself.
    pub fn unit_orbit_rep(&self) -> (RingElement, RingElement) {
        let mut best = (*self, self.ring.one());
        if self.is_zero() {
            return best;
        }
        for u in unit_table(self.ring) {
            let y = *u * *self;
            if (y.a, y.b) > (best.0.a, best.0.b) {
                best = (y, *u);
            }
        }
        best
    }

    /// Parses the text notation (`3`, `-1+2w`, `i`, `1-i`, ...).
    pub fn parse(token: &str, ring: Ring) -> Result<RingElement, RingError> {
        let err = |reason: &str| RingError::Parse { token: token.to_string(), reason: reason.to_string() };
        let s = token.trim();
        if s.is_empty() {
            return Err(err("empty token"));
        }
        let bytes = s.as_bytes();
        // split into signed terms at '+'/'-' that are not leading
        let mut terms = Vec::new();
        let mut start = 0;
        for idx in 1..bytes.len() {
            if bytes[idx] == b'+' || bytes[idx] == b'-' {
                terms.push(&s[start..idx]);
                start = idx;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(err("too many terms"));
        }
        let mut re: Option<i64> = None;
        let mut th: Option<i64> = None;
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'+' => (false, &term[1..]),
                b'-' => (true, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let is_theta = body.ends_with(['i', 'w']);
            let digits = if is_theta { &body[..body.len() - 1] } else { body };
            if is_theta {
                let sym = body.chars().last().unwrap();
                if ring.theta_symbol() != Some(sym) {
                    return Err(err(&format!("symbol '{sym}' not valid for the {ring} ring")));
                }
            }
            let mag: i64 = if digits.is_empty() {
                if !is_theta {
                    return Err(err("missing digits"));
                }
                1
            } else {
                if !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(err("invalid digits"));
                }
                digits.parse().map_err(|_| err("integer out of range"))?
            };
            let val = if neg { -mag } else { mag };
            let slot = if is_theta { &mut th } else { &mut re };
            if slot.is_some() {
                return Err(err("repeated component"));
            }
            *slot = Some(val);
        }
        ring.element(re.unwrap_or(0), th.unwrap_or(0))
    }
}

fn same_ring(x: RingElement, y: RingElement) -> Result<(), RingError> {
    if x.ring == y.ring {
        Ok(())
    } else {
        Err(RingError::Mismatch(x.ring, y.ring))
    }
}

/// Cached unit groups, in element order.
pub(crate) fn unit_table(ring: Ring) -> &'static [RingElement] {
    use std::sync::OnceLock;
    static TABLES: OnceLock<[Vec<RingElement>; 3]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Ring::ALL.map(|r| r.units()));
    &tables[ring as usize]
}

impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a, self.b, self.ring).cmp(&(other.a, other.b, other.ring))
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { a: -self.a, b: -self.b, ring: self.ring }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.ring.theta_symbol() {
            Some(c) if self.b != 0 => c,
            _ => return write!(f, "{}", self.a),
        };
        let coef = |b: i64| match b {
            1 => String::new(),
            -1 => "-".to_string(),
            _ => b.to_string(),
        };
        if self.a == 0 {
            write!(f, "{}{}", coef(self.b), sym)
        } else {
            let sign = if self.b < 0 { '-' } else { '+' };
            let mag = self.b.unsigned_abs();
            if mag == 1 {
                write!(f, "{}{}{}", self.a, sign, sym)
            } else {
                write!(f, "{}{}{}{}", self.a, sign, mag, sym)
            }
        }
    }
}
