use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::util::I;

/// Relative threshold below which coefficients are dropped after a product.
pub const PRUNE_REL: f64 = 1e-14;

/// Monomial basis in the real coordinates `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Xy;

/// Monomial basis in the conjugate pair `z^i zbar^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZZbar;

/// Sparse polynomial in two variables with complex coefficients.
///
/// The marker `B` fixes the meaning of an exponent pair; see [`BivarPoly`]
/// and [`ZBarBasisPoly`]. No zero coefficient is ever stored.
pub struct Poly2<B> {
    terms: BTreeMap<(u32, u32), Complex64>,
    _basis: PhantomData<B>,
}

/// Polynomial in `(x, y)`: key `(a, b)` is `x^a y^b`.
pub type BivarPoly = Poly2<Xy>;

/// Polynomial in `(z, zbar)`: key `(i, j)` is `z^i zbar^j`.
pub type ZBarBasisPoly = Poly2<ZZbar>;

impl<B> Clone for Poly2<B> {
    fn clone(&self) -> Self {
        Self { terms: self.terms.clone(), _basis: PhantomData }
    }
}

impl<B> PartialEq for Poly2<B> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<B> Default for Poly2<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B> fmt::Debug for Poly2<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<B> Poly2<B> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), _basis: PhantomData }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Complex64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// Adds `c` to the coefficient of `(a, b)`, removing the entry if it cancels exactly.
    pub fn add_term(&mut self, a: u32, b: u32, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    /// Drops coefficients with `|c| < rel * max |c|`.
    pub fn pruned(mut self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        self.terms.retain(|_, c| c.norm() >= cut);
        self
    }

    /// Drops coefficients with `|c| <= threshold`.
    pub fn pruned_abs(mut self, threshold: f64) -> Self {
        self.terms.retain(|_, c| c.norm() > threshold);
        self
    }

    /// `max |self - other|` over coefficients.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<B> Add for &Poly2<B> {
    type Output = Poly2<B>;
    fn add(self, rhs: &Poly2<B>) -> Poly2<B> {
        let mut out = self.clone();
        for ((a, b), c) in rhs.terms() {
            out.add_term(a, b, c);
        }
        out
    }
}

impl<B> Sub for &Poly2<B> {
    type Output = Poly2<B>;
    fn sub(self, rhs: &Poly2<B>) -> Poly2<B> {
        let mut out = self.clone();
        for ((a, b), c) in rhs.terms() {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl<B> Neg for &Poly2<B> {
    type Output = Poly2<B>;
    fn neg(self) -> Poly2<B> {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl<B> Mul for &Poly2<B> {
    type Output = Poly2<B>;
    fn mul(self, rhs: &Poly2<B>) -> Poly2<B> {
        let mut out = Poly2::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<B> $tr for Poly2<B> {
            type Output = Poly2<B>;
            fn $m(self, rhs: Poly2<B>) -> Poly2<B> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl BivarPoly {
    /// The coordinate `x`.
    pub fn x() -> Self {
        Self::monomial(1, 0, Complex64::new(1.0, 0.0))
    }

    /// The coordinate `y`.
    pub fn y() -> Self {
        Self::monomial(0, 1, Complex64::new(1.0, 0.0))
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.terms().map(|((a, b), c)| c * x.powi(a as i32) * y.powi(b as i32)).sum()
    }

    /// Complex-conjugate polynomial: conjugates every coefficient.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c.conj())))
    }

    /// `p(x, s y)`.
    pub fn dilate_y(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| ((a, b), c * s.powi(b as i32))))
    }

    /// Rewrite in the `(z, zbar)` basis using `x = (z + zbar)/2`, `y = (z - zbar)/(2i)`.
    pub fn to_zbar(&self) -> ZBarBasisPoly {
        let half = Complex64::new(0.5, 0.0);
        let x = ZBarBasisPoly::from_terms([((1, 0), half), ((0, 1), half)]);
        let y = ZBarBasisPoly::from_terms([((1, 0), -I * half), ((0, 1), I * half)]);
        let (xp, yp) = powers_for(self, &x, &y);
        let mut out = ZBarBasisPoly::zero();
        for ((a, b), c) in self.terms() {
            let m = &xp[a as usize] * &yp[b as usize];
            for ((i, j), d) in m.terms() {
                out.add_term(i, j, c * d);
            }
        }
        out
    }
}

impl ZBarBasisPoly {
    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(1, 0, Complex64::new(1.0, 0.0))
    }

    /// The variable `zbar`.
    pub fn zbar() -> Self {
        Self::monomial(0, 1, Complex64::new(1.0, 0.0))
    }

    /// Value at the point `z` (with `zbar = conj(z)`).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms().map(|((i, j), c)| c * z.powu(i) * zb.powu(j)).sum()
    }

    /// The function `conj(p(z))`, i.e. coefficients conjugated and the roles
    /// of `z` and `zbar` swapped.
    pub fn conj_function(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((j, i), c.conj())))
    }

    /// Rewrite in the `(x, y)` basis using `z = x + i y`, `zbar = x - i y`.
    pub fn to_bivar(&self) -> BivarPoly {
        let one = Complex64::new(1.0, 0.0);
        let z = BivarPoly::from_terms([((1, 0), one), ((0, 1), I)]);
        let zb = BivarPoly::from_terms([((1, 0), one), ((0, 1), -I)]);
        let (zp, zbp) = powers_for(self, &z, &zb);
        let mut out = BivarPoly::zero();
        for ((i, j), c) in self.terms() {
            let m = &zp[i as usize] * &zbp[j as usize];
            for ((a, b), d) in m.terms() {
                out.add_term(a, b, c * d);
            }
        }
        out
    }
}

fn powers_for<S, T>(p: &Poly2<S>, u: &Poly2<T>, v: &Poly2<T>) -> (Vec<Poly2<T>>, Vec<Poly2<T>>) {
    let max_a = p.terms().map(|((a, _), _)| a).max().unwrap_or(0);
    let max_b = p.terms().map(|((_, b), _)| b).max().unwrap_or(0);
    let build = |base: &Poly2<T>, n: u32| {
        let mut v = vec![Poly2::<T>::one()];
        for k in 1..=n as usize {
            let next = &v[k - 1] * base;
            v.push(next);
        }
        v
    };
    (build(u, max_a), build(v, max_b))
}
