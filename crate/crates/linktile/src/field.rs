//! Exact scalar fields: arbitrary-precision rationals and a prime field with
//! a runtime modulus.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Largest modulus accepted; products of two residues must fit in an `i64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("zero denominator in scalar `{0}`")]
    ZeroDenominator(String),
    #[error("denominator of `{0}` vanishes modulo {1}")]
    NotInvertible(String, u64),
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    BadModulus(u64),
    #[error("field mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
}

/// Field descriptor as it appears in input files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime { p: u64 },
}

impl FieldKind {
    /// Parses `rational`, `prime` or `prime:<p>` (the `LT_FIELD` syntax).
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        match s {
            "rational" | "q" | "Q" => Ok(FieldKind::Rational),
            "prime" | "fp" => Ok(FieldKind::Prime { p: DEFAULT_PRIME }),
            _ => {
                let rest =
                    s.strip_prefix("prime:").or_else(|| s.strip_prefix("fp:")).ok_or_else(|| FieldError::Malformed(s.to_string()))?;
                let p: u64 = rest.parse().map_err(|_| FieldError::Malformed(s.to_string()))?;
                check_prime(p)?;
                Ok(FieldKind::Prime { p })
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Prime { p } => write!(f, "prime:{p}"),
        }
    }
}

pub fn check_prime(p: u64) -> Result<u64, FieldError> {
    if !(2..=MAX_PRIME).contains(&p) {
        return Err(FieldError::BadModulus(p));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(FieldError::BadModulus(p));
        }
        d += 1;
    }
    Ok(p)
}

/// An exact field. `Ctx` carries whatever runtime data the field needs to
/// embed integers (the modulus for F_p, nothing for Q).
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    type Ctx: Clone + Copy + fmt::Debug + PartialEq + Send + Sync;

    fn ctx_from_kind(kind: FieldKind) -> Result<Self::Ctx, FieldError>;
    fn kind(ctx: Self::Ctx) -> FieldKind;
    fn from_int(ctx: Self::Ctx, n: i64) -> Self;
    fn from_ratio(ctx: Self::Ctx, num: &BigInt, den: &BigInt) -> Result<Self, FieldError>;
    fn inv(&self) -> Option<Self>;

    fn parse(ctx: Self::Ctx, s: &str) -> Result<Self, FieldError> {
        let (num, den) = parse_ratio(s)?;
        Self::from_ratio(ctx, &num, &den)
    }
}

fn parse_ratio(s: &str) -> Result<(BigInt, BigInt), FieldError> {
    let t = s.trim();
    let bad = || FieldError::Malformed(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(FieldError::ZeroDenominator(s.to_string()));
    }
    Ok((num, den))
}

pub type Rational = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn ctx_from_kind(kind: FieldKind) -> Result<(), FieldError> {
        match kind {
            FieldKind::Rational => Ok(()),
            other => Err(FieldError::Mismatch { expected: "rational".into(), found: other.to_string() }),
        }
    }

    fn kind(_: ()) -> FieldKind {
        FieldKind::Rational
    }

    fn from_int(_: (), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(_: (), num: &BigInt, den: &BigInt) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Residue modulo a prime chosen at runtime.
///
/// `Zero::zero()` and `One::one()` cannot know the modulus, so they produce
/// *unbound* constants (`p == 0`) that adopt the modulus of whatever they
/// meet. Unbound values only ever hold small integers.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(p: u64, n: i64) -> Self {
        Fp { v: n.rem_euclid(p as i64), p }
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.p != 0).then_some(self.p)
    }

    /// Canonical residue in `[0, p)`; unbound constants report their integer.
    pub fn residue(&self) -> i64 {
        self.v
    }

    fn pair(self, o: Fp) -> (i64, i64, u64) {
        match (self.p, o.p) {
            (0, 0) => (self.v, o.v, 0),
            (0, p) => (self.v.rem_euclid(p as i64), o.v, p),
            (p, 0) => (self.v, o.v.rem_euclid(p as i64), p),
            (p, q) => {
                debug_assert_eq!(p, q, "mixed moduli");
                (self.v, o.v, p)
            }
        }
    }

    fn pow(mut b: i64, mut e: u64, p: i64) -> i64 {
        let mut acc = 1i64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Fp {
    fn eq(&self, o: &Fp) -> bool {
        let (a, b, _) = self.pair(*o);
        a == b
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let (a, b, p) = self.pair(o);
        if p == 0 {
            return Fp { v: a.checked_add(b).expect("unbound overflow"), p };
        }
        Fp { v: (a + b) % p as i64, p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let (a, b, p) = self.pair(o);
        if p == 0 {
            return Fp { v: a.checked_sub(b).expect("unbound overflow"), p };
        }
        Fp { v: (a - b).rem_euclid(p as i64), p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        let (a, b, p) = self.pair(o);
        if p == 0 {
            return Fp { v: a.checked_mul(b).expect("unbound overflow"), p };
        }
        Fp { v: a * b % p as i64, p }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fp) -> Fp {
        let inv = o.inv().expect("division by zero in F_p");
        self * inv
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            return Fp { v: -self.v, p: 0 };
        }
        Fp { v: (self.p as i64 - self.v) % self.p as i64, p: self.p }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp { v: 1, p: 0 }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx_from_kind(kind: FieldKind) -> Result<u64, FieldError> {
        match kind {
            FieldKind::Prime { p } => check_prime(p),
            FieldKind::Rational => Err(FieldError::Mismatch { expected: "prime".into(), found: "rational".into() }),
        }
    }

    fn kind(p: u64) -> FieldKind {
        FieldKind::Prime { p }
    }

    fn from_int(p: u64, n: i64) -> Self {
        Fp::new(p, n)
    }

    fn from_ratio(p: u64, num: &BigInt, den: &BigInt) -> Result<Self, FieldError> {
        let pb = BigInt::from(p);
        let n = num.mod_floor(&pb).to_i64().expect("residue fits");
        let d = den.mod_floor(&pb).to_i64().expect("residue fits");
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(format!("{num}/{den}")));
        }
        if d == 0 {
            return Err(FieldError::NotInvertible(format!("{num}/{den}"), p));
        }
        Ok(Fp::new(p, n) / Fp::new(p, d))
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        if self.p == 0 {
            // only units of Z are invertible without a modulus
            return match self.v {
                1 | -1 => Some(*self),
                _ => panic!("inverse of unbound F_p constant {}", self.v),
            };
        }
        let p = self.p as i64;
        Some(Fp { v: Fp::pow(self.v, self.p - 2, p), p: self.p })
    }
}

/// Rational value of a scalar when it is an integer, for reporting.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}
