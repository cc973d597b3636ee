//! Sparse Laurent polynomials in one variable with arbitrary-precision
//! integer coefficients.
//!
//! Every invariant value produced by this crate lives here: the twin
//! invariant, the skein multiplier `t - t^-1`, and (with the variable
//! renamed to `z`) the Conway polynomial of the classical oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A Laurent polynomial `sum c_e t^e` stored as a map from exponent to
/// nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct PolyParseError {
    pub input: String,
    pub reason: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The default skein multiplier `t - t^-1`.
    pub fn t_minus_t_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        self.mul(&Self::constant(k))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Replaces `t` by `t^2`.
    pub fn substitute_square(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (2 * e, c.clone())).collect(),
        }
    }

    /// Replaces `t` by `t^-1`.
    pub fn invert(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluates this polynomial, read as a polynomial in some other
    /// variable, at the Laurent polynomial `x`. Negative exponents
    /// require `x` to be a monomial.
    pub fn compose(&self, x: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let power = if *e >= 0 {
                x.pow(*e as u32)
            } else {
                x.monomial_inverse()
                    .expect("negative exponent composed with a non-monomial")
                    .pow((-e) as u32)
            };
            out = out.add(&power.mul(&Self::monomial(c.clone(), 0)));
        }
        out
    }

    fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.terms.iter().next()?;
        (self.terms.len() == 1 && c.abs().is_one()).then(|| Self::monomial(c.clone(), -e))
    }

    /// True iff `coefficient(e) == coefficient(-e)` for every `e`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e).is_some_and(|d| d == c))
    }

    /// Renders with a custom variable name, e.g. `z` for Conway polynomials.
    pub fn display_in(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let var_part = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if var_part.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{mag}{var_part}"));
            }
        }
        out
    }

    /// Parses the canonical rendering (and looser variants such as
    /// `t-t^-1` or `2*t^3`) in the given variable.
    pub fn parse_in(input: &str, var: &str) -> Result<Self, PolyParseError> {
        let err = |reason: &str| PolyParseError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // Split into signed terms; a sign directly after '^' belongs to an exponent.
        let mut pieces: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut p = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef_text, var_text) = match body.find(var) {
                Some(idx) => (&body[..idx], Some(&body[idx + var.len()..])),
                None => (body, None),
            };
            let coef_text = coef_text.trim_end_matches('*');
            let coef: BigInt = if coef_text.is_empty() {
                if var_text.is_none() {
                    return Err(err("missing coefficient"));
                }
                BigInt::one()
            } else {
                coef_text.parse().map_err(|_| err("bad coefficient"))?
            };
            let exponent = match var_text {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(|| err("expected '^' after variable"))?
                    .parse::<i64>()
                    .map_err(|_| err("bad exponent"))?,
            };
            p.add_term(exponent, coef * sign);
        }
        Ok(p)
    }

    /// `[exponent, coefficient]` pairs sorted by exponent. Coefficients
    /// that do not fit in an `i64` are emitted as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let coef = match c.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(c.to_string()),
                    };
                    serde_json::Value::Array(vec![serde_json::Value::from(*e), coef])
                })
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let items = value.as_array().ok_or("expected an array of pairs")?;
        let mut p = Self::zero();
        for item in items {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or("expected [e, c]")?;
            let e = pair[0].as_i64().ok_or("exponent must be an integer")?;
            let c: BigInt = match &pair[1] {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or("coefficient must be an integer")?,
                serde_json::Value::String(s) => s.parse().map_err(|_| "bad coefficient string")?,
                _ => return Err("coefficient must be an integer".into()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_in(s, "t")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Self::from_json(&value).map_err(serde::de::Error::custom)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!((&p("t") + &p("-t")).is_zero());
        assert_eq!(&p("t - t^-1") + &p("t^-1"), p("t"));
        assert_eq!(&p("1") + &p("t^2 - 2 + t^-2"), p("t^-2 - 1 + t^2"));
    }

    #[test]
    fn multiplication_examples() {
        let m = LaurentPoly::t_minus_t_inv();
        assert_eq!(&m * &m, p("t^2 - 2 + t^-2"));
        assert_eq!(&m * &LaurentPoly::one(), m);
        assert!((&m * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn negation_examples() {
        assert_eq!(p("t^2 - 1 + t^-2").negate(), p("-t^2 + 1 - t^-2"));
        assert!(LaurentPoly::zero().negate().is_zero());
    }

    #[test]
    fn substitute_square_examples() {
        assert_eq!(p("t - 1 + t^-1").substitute_square(), p("t^2 - 1 + t^-2"));
        assert_eq!(LaurentPoly::one().substitute_square(), LaurentPoly::one());
        assert_eq!(p("t^3").substitute_square(), p("t^6"));
    }

    #[test]
    fn symmetry_examples() {
        assert!(p("t^-2 - 1 + t^2").is_symmetric());
        assert!(!p("1 - 2t").is_symmetric());
        assert!(LaurentPoly::zero().is_symmetric());
        assert!(!LaurentPoly::t_minus_t_inv().is_symmetric());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("t^2 - 1 + t^-2").to_string(), "t^-2 - 1 + t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(p("-t^-1 + t").to_string(), "-t^-1 + t");
        assert_eq!(p("3t^2 - 2t").to_string(), "-2t + 3t^2");
        assert_eq!(
            LaurentPoly::from_terms([(0, 1), (2, -1)]).display_in("z"),
            "1 - z^2"
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("x^2".parse::<LaurentPoly>().is_err());
        assert!("1 -".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_pairs_sorted() {
        let v = p("t^2 - 1 + t^-2").to_json();
        assert_eq!(v.to_string(), "[[-2,1],[0,-1],[2,1]]");
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p("t^-2 - 1 + t^2"));
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = LaurentPoly::monomial(BigInt::from(i64::MAX), 1);
        let sq = &x * &x;
        assert_eq!(
            sq.coefficient(2),
            BigInt::from(i64::MAX) * BigInt::from(i64::MAX)
        );
        let json = sq.to_json();
        assert_eq!(LaurentPoly::from_json(&json).unwrap(), sq);
    }

    #[test]
    fn compose_substitutes_variable() {
        // 1 + z^2 at z = t - t^-1
        let conway = LaurentPoly::from_terms([(0, 1), (2, 1)]);
        assert_eq!(
            conway.compose(&LaurentPoly::t_minus_t_inv()),
            p("t^-2 - 1 + t^2")
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn no_zero_coefficients_stored(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn square_substitution_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(
                (&a * &b).substitute_square(),
                &a.substitute_square() * &b.substitute_square()
            );
        }

        #[test]
        fn symmetry_survives_negation(a in arb_poly()) {
            prop_assert_eq!(a.is_symmetric(), a.negate().is_symmetric());
            prop_assert_eq!(a.negate().negate(), a);
        }

        #[test]
        fn render_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
