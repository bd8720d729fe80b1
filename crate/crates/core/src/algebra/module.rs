//! Free modules with an indexed basis over a commutative scalar ring.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly;

/// Scalars the free modules in this crate are defined over.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + for<'a> AddAssign<&'a Self> + fmt::Display
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
}

impl Scalar for LaurentPoly {}
impl Scalar for BigInt {}

/// A finitely supported linear combination of basis keys.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModule<K: Ord, C = LaurentPoly> {
    coeffs: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for FreeModule<K, C> {
    fn default() -> Self {
        Self { coeffs: BTreeMap::new() }
    }
}

impl<K, C> FreeModule<K, C>
where
    K: Ord + Clone,
    C: Scalar,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector of `key`.
    pub fn basis(key: K) -> Self {
        Self::term(key, C::one())
    }

    pub fn term(key: K, c: C) -> Self {
        let mut m = Self::zero();
        m.add_term(key, c);
        m
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, C)>) -> Self {
        let mut m = Self::zero();
        for (k, c) in terms {
            m.add_term(k, c);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &K) -> C {
        self.coeffs.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, key: &K) -> Option<&C> {
        self.coeffs.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.coeffs.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.coeffs.keys()
    }

    pub fn add_term(&mut self, key: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, x) in &other.coeffs {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, x)| (k.clone(), x * c)))
    }

    /// Applies a linear map defined on basis keys.
    pub fn map_basis<K2, F>(&self, mut f: F) -> FreeModule<K2, C>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> FreeModule<K2, C>,
    {
        let mut out = FreeModule::zero();
        for (k, c) in &self.coeffs {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible variant of [`FreeModule::map_basis`].
    pub fn try_map_basis<K2, E, F>(&self, mut f: F) -> Result<FreeModule<K2, C>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<FreeModule<K2, C>, E>,
    {
        let mut out = FreeModule::zero();
        for (k, c) in &self.coeffs {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Extends a product of basis keys bilinearly.
    pub fn bilinear<K2, K3, F>(&self, other: &FreeModule<K2, C>, mut product: F) -> FreeModule<K3, C>
    where
        K2: Ord + Clone,
        K3: Ord + Clone,
        F: FnMut(&K, &K2) -> FreeModule<K3, C>,
    {
        let mut out = FreeModule::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in other.iter() {
                out.add_scaled(&product(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Fallible variant of [`FreeModule::bilinear`].
    pub fn try_bilinear<K2, K3, E, F>(
        &self,
        other: &FreeModule<K2, C>,
        mut product: F,
    ) -> Result<FreeModule<K3, C>, E>
    where
        K2: Ord + Clone,
        K3: Ord + Clone,
        F: FnMut(&K, &K2) -> Result<FreeModule<K3, C>, E>,
    {
        let mut out = FreeModule::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in other.iter() {
                out.add_scaled(&product(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<C2, F>(&self, mut f: F) -> FreeModule<K, C2>
    where
        C2: Scalar,
        for<'a> &'a C2: Mul<&'a C2, Output = C2>,
        F: FnMut(&C) -> C2,
    {
        FreeModule::from_terms(self.coeffs.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, C)> {
        self.coeffs.into_iter()
    }
}

impl<K, C> AddAssign<&FreeModule<K, C>> for FreeModule<K, C>
where
    K: Ord + Clone,
    C: Scalar,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    fn add_assign(&mut self, rhs: &FreeModule<K, C>) {
        for (k, c) in &rhs.coeffs {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K, C> std::ops::Add<&FreeModule<K, C>> for &FreeModule<K, C>
where
    K: Ord + Clone,
    C: Scalar,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    type Output = FreeModule<K, C>;
    fn add(self, rhs: &FreeModule<K, C>) -> FreeModule<K, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K, C> std::ops::Sub<&FreeModule<K, C>> for &FreeModule<K, C>
where
    K: Ord + Clone,
    C: Scalar,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    type Output = FreeModule<K, C>;
    fn sub(self, rhs: &FreeModule<K, C>) -> FreeModule<K, C> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-C::one());
        out
    }
}

impl<K, C> Neg for &FreeModule<K, C>
where
    K: Ord + Clone,
    C: Scalar,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    type Output = FreeModule<K, C>;
    fn neg(self) -> FreeModule<K, C> {
        self.scale(&-C::one())
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Display> fmt::Debug for FreeModule<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = FreeModule<u32, LaurentPoly>;

    #[test]
    fn adding_zero() {
        let x = M::from_terms([(1, LaurentPoly::q()), (2, LaurentPoly::from(-3))]);
        assert_eq!(&x + &M::zero(), x);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn bilinear_with_unit_key_is_identity() {
        let x = M::from_terms([(1, LaurentPoly::q()), (2, LaurentPoly::from(5))]);
        let unit = M::basis(0);
        let y = x.bilinear(&unit, |a, b| M::basis(a + b));
        assert_eq!(y, x);
    }

    #[test]
    fn bilinear_scales_coefficients() {
        let a = M::term(1, LaurentPoly::from(2));
        let b = M::term(2, LaurentPoly::from(3));
        let c = a.bilinear(&b, |&x, &y| if (x, y) == (1, 2) { M::basis(3) } else { M::zero() });
        assert_eq!(c, M::term(3, LaurentPoly::from(6)));
    }

    #[test]
    fn cancellation_removes_keys() {
        let mut x = M::basis(7);
        x.add_term(7, LaurentPoly::from(-1));
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
    }
}
