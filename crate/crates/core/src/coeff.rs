//! Exact rational coefficients and sparse formal linear combinations.
//!
//! Every algebra in this crate is a free module over ℚ with an ordered basis,
//! so elements are [`LinComb`] values keyed by the basis type.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Renders `p/q`, or `p` when `q = 1`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter accepting integers or `"p/q"` strings; writes canonical strings.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(int(n)),
            Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
        }
    }
}

/// A rational that (de)serializes through [`serde_rational`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct JsonRational(#[serde(with = "serde_rational")] pub Rational);

/// A finite formal sum `Σ c_k · k` with nonzero rational coefficients.
///
/// Keys are unique and kept sorted; the empty combination is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord> LinComb<K> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// The combination `1 · key`.
    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    /// Smallest key with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&K, &Rational)> {
        self.terms.iter().next()
    }

    /// Adds `coeff · key` in place, dropping the key if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, coeff: &Rational, other: &Self)
    where
        K: Clone,
    {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * coeff);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self
    where
        K: Clone,
    {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Relabels keys; colliding images are summed.
    pub fn map_keys<K2: Ord>(self, mut f: impl FnMut(K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Sum of the absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl<K: Ord> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord> AddAssign<LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: LinComb<K>) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

/// Coefficientwise sum.
pub fn lincomb_add<K: Ord + Clone>(a: &LinComb<K>, b: &LinComb<K>) -> LinComb<K> {
    a + b
}

/// Multiplies every coefficient by `c`.
pub fn lincomb_scale<K: Ord + Clone>(c: &Rational, a: &LinComb<K>) -> LinComb<K> {
    a.scale(c)
}

/// Extends a map on basis pairs bilinearly:
/// `Σ_{i,j} a_i b_j f(k_i, k_j)`.
pub fn lincomb_extend_bilinear<A, B, C, F>(mut f: F, a: &LinComb<A>, b: &LinComb<B>) -> LinComb<C>
where
    A: Ord,
    B: Ord,
    C: Ord + Clone,
    F: FnMut(&A, &B) -> LinComb<C>,
{
    let mut out = LinComb::zero();
    for (ka, ca) in a {
        for (kb, cb) in b {
            out.add_scaled(&(ca * cb), &f(ka, kb));
        }
    }
    out
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*<{}>", fmt_rational(c), k)?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, fmt_rational(c))))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lc(items: &[(&'static str, i64, i64)]) -> LinComb<&'static str> {
        items.iter().map(|&(k, p, q)| (k, rat(p, q))).collect()
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!(lincomb_add(&lc(&[("T", 1, 1)]), &lc(&[("T", -1, 1)])).is_zero());
    }

    #[test]
    fn disjoint_keys_are_kept() {
        let s = lincomb_add(&lc(&[("T", 1, 1)]), &lc(&[("U", 2, 1)]));
        assert_eq!(s, lc(&[("T", 1, 1), ("U", 2, 1)]));
    }

    #[test]
    fn rational_addition() {
        let s = lincomb_add(&lc(&[("T", 1, 2)]), &lc(&[("T", 1, 3)]));
        assert_eq!(s.coeff(&"T"), rat(5, 6));
    }

    #[test]
    fn scaling() {
        assert!(lincomb_scale(&int(0), &lc(&[("T", 3, 1)])).is_zero());
        let a = lc(&[("T", 3, 4), ("U", -1, 7)]);
        assert_eq!(lincomb_scale(&int(1), &a), a);
        assert_eq!(
            lincomb_scale(&rat(2, 3), &lc(&[("T", 3, 4)])),
            lc(&[("T", 1, 2)])
        );
    }

    #[test]
    fn bilinear_extension_by_hand() {
        let f = |a: &&str, b: &&str| LinComb::basis(format!("{a}{b}"));
        let single = lincomb_extend_bilinear(f, &lc(&[("T", 1, 1)]), &lc(&[("U", 1, 1)]));
        assert_eq!(single, LinComb::basis("TU".to_string()));
        assert!(lincomb_extend_bilinear(f, &LinComb::zero(), &lc(&[("U", 1, 1)])).is_zero());
        let two = lincomb_extend_bilinear(f, &lc(&[("T", 1, 1), ("V", 1, 1)]), &lc(&[("U", 2, 1)]));
        let expect: LinComb<String> = [("TU".to_string(), int(2)), ("VU".to_string(), int(2))]
            .into_iter()
            .collect();
        assert_eq!(two, expect);
    }

    #[test]
    fn rendering_is_sorted_and_reduced() {
        let a = lc(&[("b", 2, 4), ("a", -3, 1)]);
        assert_eq!(a.to_string(), "-3*<a> + 1/2*<b>");
        assert_eq!(LinComb::<&str>::zero().to_string(), "0");
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(fmt_rational(&parse_rational(" 10/5 ").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_comb() -> impl Strategy<Value = LinComb<u8>> {
        prop::collection::vec((0u8..4, -3i64..4, 1i64..4), 0..5)
            .prop_map(|v| v.into_iter().map(|(k, p, q)| (k, rat(p, q))).collect())
    }

    fn pair_product(a: &u8, b: &u8) -> LinComb<u8> {
        // a deliberately non-commutative bilinear map
        [(a * 4 + b, int(1)), (a + b, int(*a as i64 - 1))]
            .into_iter()
            .collect()
    }

    proptest! {
        #[test]
        fn stays_normalized(a in small_comb(), b in small_comb(), p in -3i64..3, q in 1i64..3) {
            let s = lincomb_scale(&rat(p, q), &lincomb_add(&a, &b));
            for (_, c) in &s {
                prop_assert!(!c.is_zero());
                prop_assert!(c.denom().is_positive());
            }
        }

        #[test]
        fn bilinear_in_each_argument(a in small_comb(), a2 in small_comb(), b in small_comb(), p in -3i64..3) {
            let c = int(p);
            let lhs = lincomb_extend_bilinear(pair_product, &(&a.scale(&c) + &a2), &b);
            let mut rhs = lincomb_extend_bilinear(pair_product, &a, &b).scale(&c);
            rhs += lincomb_extend_bilinear(pair_product, &a2, &b);
            prop_assert_eq!(lhs, rhs);
            let lhs = lincomb_extend_bilinear(pair_product, &b, &(&a.scale(&c) + &a2));
            let mut rhs = lincomb_extend_bilinear(pair_product, &b, &a).scale(&c);
            rhs += lincomb_extend_bilinear(pair_product, &b, &a2);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
