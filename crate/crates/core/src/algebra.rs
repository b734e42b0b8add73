//! Monoid interfaces used by word evaluation and identity checking.
//!
//! Elements of diagram monoids depend on a size parameter, so the trait
//! lives on a context value that knows how to multiply rather than on the
//! element type itself.

use std::fmt::Debug;

pub trait Monoid {
    type Elem: Clone + PartialEq + Debug;

    fn one(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The involution, if the structure carries one.
    fn star(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn pow(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// Wraps a monoid and swaps in a different involution.
#[derive(Clone, Debug)]
pub struct WithInvolution<M, F> {
    pub inner: M,
    pub involution: F,
}

impl<M, F> Monoid for WithInvolution<M, F>
where
    M: Monoid,
    F: Fn(&M::Elem) -> M::Elem,
{
    type Elem = M::Elem;

    fn one(&self) -> Self::Elem {
        self.inner.one()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.mul(a, b)
    }

    fn star(&self, a: &Self::Elem) -> Option<Self::Elem> {
        Some((self.involution)(a))
    }
}

/// Checks `(ab)* = b*a*` and `a** = a` on the given elements.
pub fn is_involution_on<M: Monoid>(m: &M, elems: &[M::Elem]) -> bool {
    elems.iter().all(|a| {
        let s = m.star(a).expect("monoid has no involution");
        m.star(&s).as_ref() == Some(a)
            && elems.iter().all(|b| {
                let ab = m.star(&m.mul(a, b));
                let rhs = m.mul(&m.star(b).unwrap(), &s);
                ab.as_ref() == Some(&rhs)
            })
    })
}
