//! Ring and field abstractions.
//!
//! Every coefficient domain in this crate (Q, Q(t), simple extensions of
//! either) is a *context* value implementing [`Field`]; elements are plain
//! data and all arithmetic goes through the context. Contexts are cheap to
//! clone: Q and Q(t) are zero-sized, an extension carries its modulus.

use std::fmt::Debug;

use crate::error::AlgebraError;
use crate::exactalg::Rat;

/// A commutative ring with identity, presented as a context object.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Embed a rational number. Defined for every domain we use, since all
    /// of them are Q-algebras.
    fn from_rat(&self, q: &Rat) -> Self::Elem;

    /// Human-readable rendering used by reports and error messages.
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.zero(), |a, b| self.add(&a, &b))
    }
}

/// A field: every nonzero element is invertible.
///
/// `inv` returns an error rather than panicking because quotient rings
/// detect non-invertible elements here and report the gcd witness.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}
