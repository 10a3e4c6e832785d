use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::Rational;

/// Variable names shared by a family of polynomials and forms.
///
/// The first `n_coords` variables are ambient coordinates and carry
/// differentials; the remaining ones are scalar parameters such as `t` or
/// `τ` that may appear in coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    names: Vec<String>,
    n_coords: usize,
}

impl Vars {
    pub fn new<S: Into<String>>(coords: impl IntoIterator<Item = S>) -> Vars {
        Vars::with_params(coords, core::iter::empty::<String>())
    }

    pub fn with_params<S: Into<String>, T: Into<String>>(
        coords: impl IntoIterator<Item = S>,
        params: impl IntoIterator<Item = T>,
    ) -> Vars {
        let mut names: Vec<String> = coords.into_iter().map(Into::into).collect();
        let n_coords = names.len();
        names.extend(params.into_iter().map(Into::into));
        Vars { names, n_coords }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn n_coords(&self) -> usize {
        self.n_coords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients in a fixed number of variables.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitutes the given values, leaving `None` variables symbolic.
    pub fn eval_partial(&self, values: &[Option<Rational>]) -> Poly {
        debug_assert_eq!(values.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if m.0[i] > 0 {
                        coeff *= pow(v, m.0[i]);
                        rest.0[i] = 0;
                    }
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        debug_assert_eq!(values.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(values) {
                if *e > 0 {
                    t *= pow(v, *e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn display<'a>(&'a self, vars: &'a Vars) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

#[derive(Debug)]
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a Vars,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars.names[v])?,
                    _ => write!(f, "*{}^{e}", self.vars.names[v])?,
                }
            }
        }
        Ok(())
    }
}
