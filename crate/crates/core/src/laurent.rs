//! Integer Laurent polynomials in `v`, with `q = v²`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, exp);
        p
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    pub fn q_inv() -> Self {
        Self::monomial(1, -2)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `v + v⁻¹`.
    pub fn quantum_two() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, exp: i32) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c * k)).collect() }
    }

    /// `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Reads a polynomial in `q` as one in `v`.
    pub fn q_to_v(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (2 * e, c)).collect() }
    }

    /// The bar-invariant polynomial agreeing with `self` in degrees `≥ 0`.
    pub fn symmetrize_nonnegative(&self) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms().filter(|&(e, _)| e >= 0) {
            p.add_term(c, e);
            if e > 0 {
                p.add_term(c, -e);
            }
        }
        p
    }

    /// Whether all terms have degree `≤ -1`.
    pub fn in_negative_part(&self) -> bool {
        self.max_degree().is_none_or(|d| d < 0)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "{a}v")?,
                (_, 1) => write!(f, "v^{e}")?,
                _ => write!(f, "{a}v^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, i64> = self.coeffs.iter().map(|(e, c)| (e.to_string(), *c)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, i64>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in m {
            let e: i32 = e.parse().map_err(D::Error::custom)?;
            p.add_term(c, e);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        self += &o;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (&e, &c) in &o.coeffs {
            self.add_term(c, e);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (&e, &c) in &o.coeffs {
            self.add_term(-c, e);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, o: LaurentPoly) -> LaurentPoly {
        self -= &o;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &o.coeffs {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t = LaurentPoly::quantum_two();
        let sq = &t * &t;
        assert_eq!(sq, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&sq - &sq, LaurentPoly::zero());
        assert!(t.is_bar_invariant());
        assert_eq!(LaurentPoly::q().bar(), LaurentPoly::q_inv());
        assert_eq!(sq.eval_one(), 4);
    }

    #[test]
    fn display_and_json() {
        let p = LaurentPoly::from_terms([(1, 1), (-1, -2), (0, 3)]);
        assert_eq!(p.to_string(), "v + 3 - 2v^-1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":-2,"0":3,"1":1}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn symmetrization() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 3), (-1, 5)]);
        assert_eq!(p.symmetrize_nonnegative(), LaurentPoly::from_terms([(2, 1), (0, 3), (-2, 1)]));
        assert!(LaurentPoly::v_inv().in_negative_part());
        assert!(!LaurentPoly::one().in_negative_part());
    }
}
