use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::MathError;

/// An element `u + v*sqrt(d)` of a quadratic field, or of Q when `v = 0`.
///
/// The radicand is carried along with the value. Pure rationals have `d = 0`
/// and mix freely with any field; two irrational values must share `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    u: BigRational,
    v: BigRational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { u: BigRational::zero(), v: BigRational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(u: BigRational) -> Self {
        Scalar { u, v: BigRational::zero(), d: 0 }
    }

    /// `u + v*sqrt(d)`; `d` must be square-free.
    pub fn quadratic(u: BigRational, v: BigRational, d: u32) -> Result<Self, MathError> {
        if !is_square_free(d) {
            return Err(MathError::NotSquareFree(d));
        }
        Ok(Scalar { u, v, d }.normalized())
    }

    pub fn sqrt(d: u32) -> Result<Self, MathError> {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.v.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.v.is_zero() && self.u.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.u
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.v
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.v.is_zero() && self.u.is_integer() {
            self.u.to_integer().to_i64()
        } else {
            None
        }
    }

    fn field(a: &Scalar, b: &Scalar) -> u32 {
        match (a.d, b.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic fields sqrt({x}) and sqrt({y})"),
        }
    }

    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.v.is_zero() {
            return Some(Scalar::rational(self.u.recip()));
        }
        let d = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.u * &self.u - &self.v * &self.v * d;
        Some(
            Scalar { u: &self.u / &norm, v: -(&self.v / &norm), d: self.d }.normalized(),
        )
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign for rational values; irrational values are compared via
    /// `u + v*sqrt(d)` against zero without floating point.
    pub fn signum(&self) -> i32 {
        let su = self.u.signum();
        let sv = self.v.signum();
        let s = |x: &BigRational| -> i32 {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        };
        let (a, b) = (s(&su), s(&sv));
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        let d = BigRational::from_integer(BigInt::from(self.d));
        let uu = &self.u * &self.u;
        let vv = &self.v * &self.v * d;
        if uu > vv {
            a
        } else {
            b
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let d = Scalar::field(self, o);
        Scalar { u: &self.u + &o.u, v: &self.v + &o.v, d }.normalized()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let d = Scalar::field(self, o);
        Scalar { u: &self.u - &o.u, v: &self.v - &o.v, d }.normalized()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let d = Scalar::field(self, o);
        if self.v.is_zero() && o.v.is_zero() {
            return Scalar::rational(&self.u * &o.u);
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        Scalar {
            u: &self.u * &o.u + &self.v * &o.v * dd,
            v: &self.u * &o.v + &self.v * &o.u,
            d,
        }
        .normalized()
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.recip().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { u: -&self.u, v: -&self.v, d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", fmt_rat(&self.u));
        }
        let surd = if self.v.is_one() {
            format!("sqrt({})", self.d)
        } else if (-&self.v).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rat(&self.v), self.d)
        };
        if self.u.is_zero() {
            write!(f, "{surd}")
        } else if self.v.is_negative() {
            write!(f, "{}{}", fmt_rat(&self.u), surd)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.u), surd)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an exact literal: `7`, `-3/2`, `sqrt(19)`, `-5/2+1/2*sqrt(19)`.
/// Decimal points and exponents are rejected.
impl FromStr for Scalar {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, MathError> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(MathError::BadLiteral(s.to_string()));
        }
        if text.contains('.') || text.contains('e') || text.contains('E') {
            return Err(MathError::FloatLiteral(s.to_string()));
        }
        // split into signed summands at top-level + / -
        let bytes: Vec<char> = text.chars().collect();
        let mut parts = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    parts.push(bytes[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        parts.push(bytes[start..].iter().collect::<String>());
        let mut acc = Scalar::zero();
        for p in parts {
            acc = acc + parse_summand(&p).ok_or_else(|| MathError::BadLiteral(s.to_string()))??;
        }
        Ok(acc)
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn parse_summand(p: &str) -> Option<Result<Scalar, MathError>> {
    let (neg, body) = match p.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, p.strip_prefix('+').unwrap_or(p)),
    };
    let (coef, surd) = match body.find("sqrt(") {
        Some(pos) => {
            let head = &body[..pos];
            let tail = body[pos + 5..].strip_suffix(')')?;
            let coef = if head.is_empty() {
                BigRational::one()
            } else {
                parse_rat(head.strip_suffix('*')?)?
            };
            let d: u32 = tail.parse().ok()?;
            (coef, Some(d))
        }
        None => (parse_rat(body)?, None),
    };
    let coef = if neg { -coef } else { coef };
    Some(match surd {
        None => Ok(Scalar::rational(coef)),
        Some(d) => {
            // perfect squares fold back into Q
            let r = d.sqrt();
            if r * r == d {
                return Some(Ok(Scalar::rational(coef * BigRational::from_integer(BigInt::from(r)))));
            }
            Scalar::quadratic(BigRational::zero(), coef, d)
        }
    })
}

/// Generalized binomial: `m(m-1)...(m-s+1)/s!` for `s >= 0`, else 0.
/// Negative `m` is allowed and follows the falling-factorial formula.
pub fn binom(m: i64, s: i64) -> Scalar {
    if s < 0 {
        return Scalar::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..s {
        num *= BigInt::from(m - t);
        den *= BigInt::from(t + 1);
    }
    let g = num.gcd(&den);
    Scalar::rational(BigRational::new(num / &g, den / g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_q_sqrt19() {
        let r = Scalar::sqrt(19).unwrap();
        let b = (&Scalar::int(-5) + &r) / Scalar::int(2);
        // b^2 + 5b + 3/2 = 0
        let z = &(&b * &b) + &(&Scalar::int(5) * &b);
        assert_eq!(z + Scalar::ratio(3, 2), Scalar::zero());
        assert_eq!((&b * &b.recip().unwrap()), Scalar::one());
    }

    #[test]
    fn parse_and_print() {
        for s in ["3/2", "-7", "-5/2+1/2*sqrt(19)", "sqrt(19)", "-sqrt(2)"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(matches!("1.5".parse::<Scalar>(), Err(MathError::FloatLiteral(_))));
        assert!("sqrt(4)".parse::<Scalar>().unwrap() == Scalar::int(2));
        assert!(Scalar::sqrt(12).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(2, 1), Scalar::int(2));
        assert_eq!(binom(1, 2), Scalar::zero());
        assert_eq!(binom(0, 0), Scalar::one());
        assert_eq!(binom(5, -1), Scalar::zero());
        assert_eq!(binom(-1, 2), Scalar::int(1));
    }

    #[test]
    fn sign_of_surds() {
        let x: Scalar = "-5/2+1/2*sqrt(19)".parse().unwrap();
        assert_eq!(x.signum(), -1);
        let y: Scalar = "-4+1*sqrt(19)".parse().unwrap();
        assert_eq!(y.signum(), 1);
    }
}
