//! Exact coefficients: polynomials in the formal genus variable `g` with
//! arbitrary-precision rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in `g` over the rationals, stored densely by degree.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial is the
/// empty list. All arithmetic is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GenusPoly {
    coeffs: Vec<BigRational>,
}

impl GenusPoly {
    pub fn zero() -> Self {
        GenusPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GenusPoly::from_rational(BigRational::one())
    }

    /// The variable `g` itself.
    pub fn g() -> Self {
        GenusPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut p = GenusPoly { coeffs: vec![r] };
        p.normalize();
        p
    }

    pub fn from_int(n: i64) -> Self {
        GenusPoly::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c0 + c1*g`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        let mut p = GenusPoly {
            coeffs: vec![
                BigRational::from_integer(BigInt::from(c0)),
                BigRational::from_integer(BigInt::from(c1)),
            ],
        };
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = GenusPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `g`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, deg: usize) -> BigRational {
        self.coeffs.get(deg).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exact evaluation at `g = g0`.
    pub fn eval(&self, g0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * g0 + c;
        }
        acc
    }

    /// The constant value if the polynomial is free of `g`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return GenusPoly::zero();
        }
        GenusPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

impl Add for GenusPoly {
    type Output = GenusPoly;
    fn add(mut self, rhs: GenusPoly) -> GenusPoly {
        self += rhs;
        self
    }
}

impl AddAssign for GenusPoly {
    fn add_assign(&mut self, rhs: GenusPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (i, c) in rhs.coeffs.into_iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.normalize();
    }
}

impl Sub for GenusPoly {
    type Output = GenusPoly;
    fn sub(mut self, rhs: GenusPoly) -> GenusPoly {
        self -= rhs;
        self
    }
}

impl SubAssign for GenusPoly {
    fn sub_assign(&mut self, rhs: GenusPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (i, c) in rhs.coeffs.into_iter().enumerate() {
            self.coeffs[i] -= c;
        }
        self.normalize();
    }
}

impl Neg for GenusPoly {
    type Output = GenusPoly;
    fn neg(self) -> GenusPoly {
        GenusPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for GenusPoly {
    type Output = GenusPoly;
    fn mul(self, rhs: GenusPoly) -> GenusPoly {
        &self * &rhs
    }
}

impl Mul for &GenusPoly {
    type Output = GenusPoly;
    fn mul(self, rhs: &GenusPoly) -> GenusPoly {
        if self.is_zero() || rhs.is_zero() {
            return GenusPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GenusPoly::from_coeffs(coeffs)
    }
}

impl MulAssign for GenusPoly {
    fn mul_assign(&mut self, rhs: GenusPoly) {
        *self = &*self * &rhs;
    }
}

/// Renders a rational as `a` or `a/b` with positive denominator in lowest terms.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GenusPoly {
    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// True when the polynomial is a single term `c*g^k`.
    pub fn is_single_term(&self) -> bool {
        self.term_count() == 1
    }

    /// The leading sign used when deciding `+`/`-` between printed terms:
    /// sign of the lowest-degree nonzero coefficient.
    pub fn leading_sign_negative(&self) -> bool {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }
}

impl fmt::Display for GenusPoly {
    /// Lowest degree first: `4 - 4*g + g^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag_is_one = mag.is_one();
            match (deg, mag_is_one) {
                (0, _) => write!(f, "{}", rational_to_string(&mag))?,
                (1, true) => write!(f, "g")?,
                (1, false) => write!(f, "{}*g", rational_to_string(&mag))?,
                (_, true) => write!(f, "g^{}", deg)?,
                (_, false) => write!(f, "{}*g^{}", rational_to_string(&mag), deg)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_zero() {
        let p = GenusPoly::from_coeffs(vec![BigRational::zero(), BigRational::zero()]);
        assert!(p.is_zero());
        assert_eq!(p, GenusPoly::zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn arithmetic_is_exact() {
        // (1/3 + g)^2 = 1/9 + 2/3 g + g^2
        let p = GenusPoly::from_rational(rat(1, 3)) + GenusPoly::g();
        let sq = &p * &p;
        assert_eq!(sq.coeff(0), rat(1, 9));
        assert_eq!(sq.coeff(1), rat(2, 3));
        assert_eq!(sq.coeff(2), rat(1, 1));
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn eval_exact() {
        // 4 - 4g at g = 3 is -8
        let p = GenusPoly::linear(4, -4);
        assert_eq!(p.eval(&rat(3, 1)), rat(-8, 1));
        assert_eq!(p.eval(&rat(1, 2)), rat(2, 1));
    }

    #[test]
    fn display_lowest_degree_first() {
        let p = GenusPoly::linear(4, -4);
        assert_eq!(p.to_string(), "4 - 4*g");
        let q = GenusPoly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 1)]);
        assert_eq!(q.to_string(), "-1/2*g + g^2");
        assert_eq!(GenusPoly::g().to_string(), "g");
        assert_eq!(GenusPoly::from_int(-7).to_string(), "-7");
    }

    #[test]
    fn subtraction_cancels() {
        let p = GenusPoly::linear(1, 2);
        let q = GenusPoly::linear(1, 2);
        assert!((p - q).is_zero());
    }
}
