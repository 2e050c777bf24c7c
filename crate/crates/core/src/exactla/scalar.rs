//! Exact scalars: rationals with an `i64` fast path, or residues modulo a prime.
//!
//! Rational values are kept canonical (reduced, positive denominator, small
//! representation whenever both parts fit in `i64`). Residues carry their
//! modulus. A rational value meeting a residue is mapped through
//! `Z_(p) -> F_p` first; this only happens for integer constants produced by
//! the algorithms themselves, since inputs are reduced when a prime field is
//! selected.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Brings a scalar into this field (rationals are reduced modulo `p`).
    pub fn coerce(&self, s: &Scalar) -> Scalar {
        match (self, s) {
            (Field::Rational, _) => s.clone(),
            (Field::Prime(p), Scalar::Mod(r)) => {
                assert_eq!(r.p, *p, "residues modulo different primes mixed");
                s.clone()
            }
            (Field::Prime(p), Scalar::Rat(q)) => Scalar::Mod(q.reduce_mod(*p)),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.coerce(&Scalar::from(v))
    }

    pub fn label(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("F_{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug)]
enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    v: u32,
    p: u32,
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(RatValue),
    Mod(Residue),
}

/// Opaque canonical rational.
#[derive(Clone, Debug)]
pub struct RatValue(Rat);

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn make_small(num: i128, den: i128) -> RatValue {
    debug_assert!(den != 0);
    let (mut n, mut d) = (num, den);
    if d < 0 {
        n = -n;
        d = -d;
    }
    if n == 0 {
        return RatValue(Rat::Small(0, 1));
    }
    if d != 1 {
        let g = gcd_i128(n, d);
        if g != 1 {
            n /= g;
            d /= g;
        }
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => RatValue(Rat::Small(a, b)),
        _ => RatValue(Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
    }
}

fn from_big(b: BigRational) -> RatValue {
    // BigRational arithmetic keeps values reduced.
    match (b.numer().to_i64(), b.denom().to_i64()) {
        (Some(n), Some(d)) => RatValue(Rat::Small(n, d)),
        _ => RatValue(Rat::Big(Box::new(b))),
    }
}

impl RatValue {
    fn to_big(&self) -> BigRational {
        match &self.0 {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Rat::Small(0, _))
    }

    fn add(&self, o: &RatValue) -> RatValue {
        match (&self.0, &o.0) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => RatValue(Rat::Small(s, 1)),
                None => make_small(*a as i128 + *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                make_small(a * d + c * b, b * d)
            }
            _ => from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &RatValue) -> RatValue {
        match (&self.0, &o.0) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_mul(*c) {
                Some(s) => RatValue(Rat::Small(s, 1)),
                None => make_small(*a as i128 * *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                make_small(a * c, b * d)
            }
            _ => from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> RatValue {
        match &self.0 {
            Rat::Small(a, b) => match a.checked_neg() {
                Some(n) => RatValue(Rat::Small(n, *b)),
                None => make_small(-(*a as i128), *b as i128),
            },
            Rat::Big(x) => from_big(-(**x).clone()),
        }
    }

    fn inv(&self) -> RatValue {
        match &self.0 {
            Rat::Small(a, b) => {
                assert!(*a != 0, "division by zero");
                make_small(*b as i128, *a as i128)
            }
            Rat::Big(x) => from_big(x.recip()),
        }
    }

    fn reduce_mod(&self, p: u32) -> Residue {
        let p_big = BigInt::from(p);
        let (n, d) = match &self.0 {
            Rat::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(x) => (x.numer().clone(), x.denom().clone()),
        };
        let nm = n.mod_floor(&p_big).to_u32().unwrap();
        let dm = d.mod_floor(&p_big).to_u32().unwrap();
        assert!(dm != 0, "denominator divisible by the field characteristic {p}");
        let r = Residue { v: nm, p };
        r.mul(Residue { v: dm, p }.inv())
    }

    fn cmp_value(&self, o: &RatValue) -> Ordering {
        match (&self.0, &o.0) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }

    fn numer_denom(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Rat::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(x) => (x.numer().clone(), x.denom().clone()),
        }
    }
}

impl Residue {
    fn add(self, o: Residue) -> Residue {
        debug_assert_eq!(self.p, o.p);
        Residue { v: ((self.v as u64 + o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn mul(self, o: Residue) -> Residue {
        debug_assert_eq!(self.p, o.p);
        Residue { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }
    fn neg(self) -> Residue {
        Residue { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(self) -> Residue {
        assert!(self.v != 0, "division by zero in F_{}", self.p);
        // Fermat
        let mut base = self.v as u64;
        let mut e = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Residue { v: acc as u32, p: self.p }
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(RatValue(Rat::Small(0, 1)))
    }

    pub fn one() -> Scalar {
        Scalar::Rat(RatValue(Rat::Small(1, 1)))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Rat(make_small(n as i128, d as i128))
    }

    pub fn residue(v: i64, p: u32) -> Scalar {
        Scalar::Mod(Residue { v: v.rem_euclid(p as i64) as u32, p })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(r) => r.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => matches!(r.0, Rat::Small(1, 1)),
            Scalar::Mod(r) => r.v == 1,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.inv()),
            Scalar::Mod(r) => Scalar::Mod(r.inv()),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(r) => Field::Prime(r.p),
        }
    }

    /// Integer value, if this is a rational integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(RatValue(Rat::Small(n, 1))) => Some(*n),
            _ => None,
        }
    }

    /// Numerator and denominator of a rational scalar.
    pub fn to_big_ratio(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rat(r) => Some(r.numer_denom()),
            Scalar::Mod(_) => None,
        }
    }

    /// Representative residue in `0..p` for a prime-field scalar.
    pub fn residue_value(&self) -> Option<u32> {
        match self {
            Scalar::Mod(r) => Some(r.v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn from_big(n: BigInt, d: BigInt) -> Scalar {
        assert!(!d.is_zero(), "zero denominator");
        Scalar::Rat(from_big(BigRational::new(n, d)))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(RatValue(Rat::Small(n, _))) => *n < 0,
            Scalar::Rat(RatValue(Rat::Big(b))) => b.is_negative(),
            Scalar::Mod(_) => false,
        }
    }

    /// Total order on rationals; residues compare by representative.
    pub fn cmp_value(&self, o: &Scalar) -> Ordering {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp_value(b),
            (a, b) => {
                let (x, y) = unify(a, b);
                x.residue_value().cmp(&y.residue_value())
            }
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                assert_eq!(a.p, b.p, "residues modulo different primes mixed");
                Scalar::Mod(a.add(*b))
            }
            _ => {
                let (a, b) = unify(self, o);
                a.add_ref(&b)
            }
        }
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                assert_eq!(a.p, b.p, "residues modulo different primes mixed");
                Scalar::Mod(a.mul(*b))
            }
            _ => {
                let (a, b) = unify(self, o);
                a.mul_ref(&b)
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Mod(a) => Scalar::Mod(a.neg()),
        }
    }
}

fn unify(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    match (a, b) {
        (Scalar::Mod(r), Scalar::Rat(_)) => (a.clone(), Field::Prime(r.p).coerce(b)),
        (Scalar::Rat(_), Scalar::Mod(r)) => (Field::Prime(r.p).coerce(a), b.clone()),
        _ => (a.clone(), b.clone()),
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Scalar {
        Scalar::Rat(RatValue(Rat::Small(v, 1)))
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Scalar {
        Scalar::from(v as i64)
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => match (&a.0, &b.0) {
                (Rat::Small(x, y), Rat::Small(z, w)) => x == z && y == w,
                (Rat::Big(x), Rat::Big(y)) => x == y,
                _ => false,
            },
            (Scalar::Mod(a), Scalar::Mod(b)) => a == b,
            _ => {
                let (a, b) = unify(self, o);
                a == b
            }
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(RatValue(Rat::Small(n, 1))) => write!(f, "{n}"),
            Scalar::Rat(RatValue(Rat::Small(n, d))) => write!(f, "{n}/{d}"),
            Scalar::Rat(RatValue(Rat::Big(b))) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
            Scalar::Mod(r) => write!(f, "{}", r.v),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses `n` or `n/d` with arbitrary-size integers.
    fn from_str(s: &str) -> Result<Scalar, ParseScalarError> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Scalar::from_big(n, d))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                self.$imp(o)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

/// `acc += a * b`, skipping the work when either factor vanishes.
#[inline]
pub fn axpy(acc: &mut Scalar, a: &Scalar, b: &Scalar) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    *acc = acc.add_ref(&a.mul_ref(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::ratio(2, -4), Scalar::ratio(-1, 2));
        assert_eq!(Scalar::ratio(0, 5).to_string(), "0");
        assert_eq!(Scalar::ratio(6, 3).to_string(), "2");
        assert_eq!(Scalar::ratio(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from(i64::MAX);
        let sq = &big * &big;
        assert!(sq.to_i64().is_none());
        let back = &sq * &big.inv();
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let m = Scalar::from(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = Scalar::residue(3, 7);
        let b = Scalar::residue(5, 7);
        assert_eq!((&a * &b).residue_value(), Some(1));
        assert_eq!(a.inv(), b);
        // rational constants coerce through Z_(p)
        assert_eq!(&a + &Scalar::ratio(1, 2), Scalar::residue(0, 7));
        assert_eq!(Field::Prime(7).coerce(&Scalar::ratio(-1, 3)), Scalar::residue(2, 7));
    }

    #[test]
    fn parse_literals() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert_eq!(" -7 ".parse::<Scalar>().unwrap(), Scalar::from(-7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }
}
