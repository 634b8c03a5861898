use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DVector;

use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// A point of the algebra, stored in the algebra's coordinate basis.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    coords: DVector<f64>,
}

impl Element {
    pub(crate) fn from_parts(alg: Algebra, coords: DVector<f64>) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        Element { alg, coords }
    }

    pub fn new(alg: &Algebra, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: coords.len(),
            });
        }
        Ok(Element::from_parts(alg.clone(), coords))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn into_coords(self) -> DVector<f64> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    fn with(&self, coords: DVector<f64>) -> Element {
        Element::from_parts(self.alg.clone(), coords)
    }

    /// Jordan product. Panics if the operands live in different algebras;
    /// use [`Algebra::jordan_product`] for a checked variant.
    pub fn circ(&self, other: &Element) -> Element {
        assert!(self.alg.same(&other.alg), "Jordan product across algebras");
        let mut out = DVector::zeros(self.dim());
        self.alg.kind().product_into(
            self.coords.as_slice(),
            other.coords.as_slice(),
            out.as_mut_slice(),
        );
        self.with(out)
    }

    pub fn square(&self) -> Element {
        self.circ(self)
    }

    /// `U_a(b) = 2a∘(a∘b) − a²∘b`.
    pub fn u_apply(&self, b: &Element) -> Element {
        let ab = self.circ(b);
        let a2b = self.square().circ(b);
        let mut out = self.circ(&ab);
        out.coords *= 2.0;
        out.coords -= &a2b.coords;
        out
    }

    /// `U_{a,b}(z) = a∘(b∘z) + b∘(a∘z) − (a∘b)∘z`.
    pub fn u_bilinear_apply(&self, b: &Element, z: &Element) -> Element {
        let t1 = self.circ(&b.circ(z));
        let t2 = b.circ(&self.circ(z));
        let t3 = self.circ(b).circ(z);
        self.with(t1.coords + t2.coords - t3.coords)
    }

    pub fn scale(&self, s: f64) -> Element {
        self.with(&self.coords * s)
    }

    /// Euclidean norm of the coordinate vector (the trace norm for `sym`, `rn`).
    pub fn coord_norm(&self) -> f64 {
        self.coords.norm()
    }

    /// Norm induced by the trace form.
    pub fn trace_norm(&self) -> f64 {
        self.alg.inner(self, self).max(0.0).sqrt()
    }

    pub fn inner(&self, other: &Element) -> f64 {
        self.alg.inner(self, other)
    }

    pub fn trace(&self) -> f64 {
        self.alg.trace(self)
    }

    pub fn distance(&self, other: &Element) -> f64 {
        (&self.coords - &other.coords).norm()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0.0)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.coords == other.coords
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}](", self.alg)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                assert!(self.alg.same(&rhs.alg), "element arithmetic across algebras");
                self.with(&self.coords $op &rhs.coords)
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                &self $op &rhs
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                &self $op rhs
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.coords += &rhs.coords;
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.coords -= &rhs.coords;
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(mut self, s: f64) -> Element {
        self.coords *= s;
        self
    }
}

impl Mul<&Element> for f64 {
    type Output = Element;
    fn mul(self, e: &Element) -> Element {
        e.scale(self)
    }
}

impl Mul<Element> for f64 {
    type Output = Element;
    fn mul(self, e: Element) -> Element {
        e * self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self * -1.0
    }
}
