//! Super-commutative polynomials with exact rational coefficients.
//!
//! Variables are declared once in a [`VariableTable`] with a parity, an
//! integer weight vector and a central degree. Monomials are stored as dense
//! exponent vectors; odd variables have exponent at most one and are
//! implicitly ordered by declaration index. Every product is brought back to
//! that canonical order with the Koszul sign folded into the coefficient, so
//! two polynomials are equal exactly when their term maps are.

mod derivation;
mod graded;

pub use derivation::Superderivation;
pub use graded::{
    count_graded, graded_basis, graded_basis_with_limit, span_membership, Membership,
    DEFAULT_COMPONENT_LIMIT,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of a product.
    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ other.is_odd())
    }

    /// `(−1)^{|a||b|}` as a boolean "negate".
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub parity: Parity,
    pub weight: Vec<i64>,
    pub central_degree: u32,
}

/// Declared generators of a super polynomial ring.
#[derive(Clone, Debug, Default)]
pub struct VariableTable {
    vars: Vec<Variable>,
    weight_len: usize,
    by_name: HashMap<String, usize>,
}

impl VariableTable {
    pub fn new(weight_len: usize) -> Self {
        VariableTable {
            vars: Vec::new(),
            weight_len,
            by_name: HashMap::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        parity: Parity,
        weight: Vec<i64>,
        central_degree: u32,
    ) -> Result<usize> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(Error::Precondition(format!("duplicate variable `{name}`")));
        }
        if weight.len() != self.weight_len {
            return Err(Error::Precondition(format!(
                "weight of `{name}` has length {}, table expects {}",
                weight.len(),
                self.weight_len
            )));
        }
        let idx = self.vars.len();
        self.by_name.insert(name.clone(), idx);
        self.vars.push(Variable {
            name,
            parity,
            weight,
            central_degree,
        });
        Ok(idx)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn weight_len(&self) -> usize {
        self.weight_len
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars[i]
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.vars[i].parity.is_odd()
    }
}

pub type Table = Arc<VariableTable>;

/// A monomial: one exponent per declared variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total number of variable factors.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn central_degree(&self, table: &VariableTable) -> u32 {
        self.0
            .iter()
            .zip(table.vars())
            .map(|(&e, v)| u32::from(e) * v.central_degree)
            .sum()
    }

    pub fn weight(&self, table: &VariableTable) -> Vec<i64> {
        let mut w = vec![0; table.weight_len()];
        for (&e, v) in self.0.iter().zip(table.vars()) {
            if e > 0 {
                for (acc, x) in w.iter_mut().zip(&v.weight) {
                    *acc += i64::from(e) * x;
                }
            }
        }
        w
    }

    pub fn parity(&self, table: &VariableTable) -> Parity {
        let odd = self
            .0
            .iter()
            .zip(table.vars())
            .filter(|(&e, v)| e > 0 && v.parity.is_odd())
            .count();
        Parity::from_bit(odd % 2 == 1)
    }

    /// Odd variables in canonical order.
    pub fn odd_vars(&self, table: &VariableTable) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| self.0[i] > 0 && table.is_odd(i))
            .collect()
    }

    /// `self · other` in canonical form, with `true` when the reordering
    /// contributes a minus sign. `None` when an odd variable repeats.
    pub fn mul_signed(&self, other: &Monomial, table: &VariableTable) -> Option<(bool, Monomial)> {
        let n = self.0.len();
        let mut out = Vec::with_capacity(n);
        let mut negate = false;
        // Odd factors of `self` with larger index than the current one.
        let mut left_above = 0usize;
        for i in (0..n).rev() {
            let (a, b) = (self.0[i], other.0[i]);
            if table.is_odd(i) {
                if a > 0 && b > 0 {
                    return None;
                }
                if b > 0 && left_above % 2 == 1 {
                    negate = !negate;
                }
                if a > 0 {
                    left_above += 1;
                }
            }
            out.push(a + b);
        }
        out.reverse();
        Some((negate, Monomial(out.into_boxed_slice())))
    }

    /// Divides out one copy of variable `i`, if present.
    pub fn without(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.to_vec();
        e[i] -= 1;
        Some(Monomial(e.into_boxed_slice()))
    }

    /// Whether `other` divides `self` (exponent-wise).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn display(&self, table: &VariableTable) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.var(i).name.clone()),
                _ => parts.push(format!("{}^{e}", table.var(i).name)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Exact rational linear combination of canonical super monomials.
#[derive(Clone)]
pub struct SuperPoly {
    table: Table,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for SuperPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for SuperPoly {}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({self})")
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {}", m.display(&self.table))?;
            first = false;
        }
        Ok(())
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SuperPoly {
    pub fn zero(table: &Table) -> Self {
        SuperPoly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Table, c: BigRational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn one(table: &Table) -> Self {
        Self::constant(table, BigRational::one())
    }

    pub fn var(table: &Table, i: usize) -> Self {
        Self::monomial(table, Monomial::var(table.len(), i), BigRational::one())
    }

    pub fn monomial(table: &Table, m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from already-canonical monomials.
    pub fn from_terms(table: &Table, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Ordered product of variables, e.g. `[y12, y11]`, with signs applied.
    pub fn product_of_vars(table: &Table, vars: &[usize]) -> Self {
        vars.iter().fold(Self::one(table), |acc, &v| &acc * &Self::var(table, v))
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
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

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_table(&self, other: &SuperPoly) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Super-commutative product.
    pub fn mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_table(other)?;
        let mut out = SuperPoly::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((negate, m)) = m1.mul_signed(m2, &self.table) {
                    let c = c1 * c2;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(&self.table);
        }
        SuperPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SuperPoly {
        (0..e).fold(SuperPoly::one(&self.table), |acc, _| &acc * self)
    }

    /// The parity when every term shares one, `None` otherwise (or for zero).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.table));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn central_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.central_degree(&self.table));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| m.weight(&self.table));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Evaluates at scalar values of the even variables; every odd variable
    /// is sent to zero (the only scalar value an odd generator can take).
    pub fn evaluate(&self, even_values: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.table.is_odd(i) || even_values[i].is_zero() {
                    continue 'terms;
                }
                v *= num_traits::pow(even_values[i].clone(), usize::from(e));
            }
            total += v;
        }
        total
    }

    /// Homogeneous part of a given central degree.
    pub fn central_part(&self, degree: u32) -> SuperPoly {
        SuperPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.central_degree(&self.table) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates in a growing monomial index, sorted by column.
    pub fn to_sparse(&self, columns: &mut BTreeMap<Monomial, usize>) -> crate::linalg::SparseVec {
        let mut v: crate::linalg::SparseVec = self
            .terms
            .iter()
            .map(|(m, c)| {
                let next = columns.len();
                (*columns.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Largest absolute coefficient, handy in reports.
    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(rhs).expect("variable table mismatch in addition")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(&-rhs).expect("variable table mismatch in subtraction")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        SuperPoly::mul(self, rhs).expect("variable table mismatch in multiplication")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Two even variables `x1, x2` and three odd ones `y1, y2, y3`, each of
    /// central degree 2, with weights in ℤ².
    pub(crate) fn small_table() -> Table {
        let mut t = VariableTable::new(2);
        t.push("x1", Parity::Even, vec![1, 0], 2).unwrap();
        t.push("x2", Parity::Even, vec![0, 1], 2).unwrap();
        t.push("y1", Parity::Odd, vec![2, 0], 2).unwrap();
        t.push("y2", Parity::Odd, vec![1, 1], 2).unwrap();
        t.push("y3", Parity::Odd, vec![0, 2], 2).unwrap();
        Arc::new(t)
    }

    #[test]
    fn odd_square_vanishes_and_swaps_sign() {
        let t = small_table();
        let y1 = SuperPoly::var(&t, 2);
        let y2 = SuperPoly::var(&t, 3);
        let x1 = SuperPoly::var(&t, 0);
        assert!((&y1 * &y1).is_zero());
        assert_eq!(&y2 * &y1, -&(&y1 * &y2));
        assert_eq!(&x1 * &y1, &y1 * &x1);
        assert_eq!((&y2 * &y1).to_string(), "-1 * y1 y2");
    }

    #[test]
    fn mixed_tables_are_rejected() {
        let a = small_table();
        let b = small_table();
        let p = SuperPoly::var(&a, 0);
        let q = SuperPoly::var(&b, 0);
        assert_eq!(p.mul(&q), Err(Error::TableMismatch));
    }

    #[test]
    fn duplicate_names_and_bad_weights_rejected() {
        let mut t = VariableTable::new(1);
        t.push("a", Parity::Even, vec![0], 1).unwrap();
        assert!(t.push("a", Parity::Odd, vec![0], 1).is_err());
        assert!(t.push("b", Parity::Odd, vec![0, 0], 1).is_err());
    }

    #[test]
    fn debug_dump_format() {
        let t = small_table();
        let x1 = SuperPoly::var(&t, 0);
        let y2 = SuperPoly::var(&t, 3);
        let p = &(&x1 * &x1) * &y2;
        assert_eq!(p.to_string(), "1 * x1^2 y2");
    }

    pub(crate) fn arb_poly(t: Table) -> impl Strategy<Value = SuperPoly> {
        let n = t.len();
        prop::collection::vec(
            (prop::collection::vec(0u16..3, n), -3i64..=3),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = SuperPoly::zero(&t);
            for (mut e, c) in terms {
                for (i, x) in e.iter_mut().enumerate() {
                    if t.is_odd(i) {
                        *x = (*x).min(1);
                    }
                }
                p.add_term(Monomial::from_exponents(e), rational(c));
            }
            p
        })
    }

    /// Random polynomial all of whose terms share a parity.
    fn arb_homogeneous(t: Table) -> impl Strategy<Value = SuperPoly> {
        (arb_poly(t.clone()), any::<bool>()).prop_map(|(p, odd)| {
            let table = p.table().clone();
            SuperPoly::from_terms(
                &table,
                p.terms()
                    .iter()
                    .filter(|(m, _)| m.parity(&table).is_odd() == odd)
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
    }

    proptest! {
        #[test]
        fn product_is_associative(
            (a, b, c) in (arb_poly(small_table()), Just(()), Just(()))
                .prop_flat_map(|(a, _, _)| {
                    let t = a.table().clone();
                    (Just(a), arb_poly(t.clone()), arb_poly(t))
                })
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn product_is_super_commutative(
            (a, b) in arb_homogeneous(small_table())
                .prop_flat_map(|a| { let t = a.table().clone(); (Just(a), arb_homogeneous(t)) })
        ) {
            let (Some(pa), Some(pb)) = (a.parity(), b.parity()) else { return Ok(()); };
            let ab = &a * &b;
            let ba = &b * &a;
            if pa.koszul(pb) {
                prop_assert_eq!(ab, -&ba);
            } else {
                prop_assert_eq!(ab, ba);
            }
        }

        #[test]
        fn weight_is_additive(
            (a, b) in arb_poly(small_table())
                .prop_flat_map(|a| { let t = a.table().clone(); (Just(a), arb_poly(t)) })
        ) {
            let t = a.table().clone();
            for m1 in a.terms().keys() {
                for m2 in b.terms().keys() {
                    if let Some((_, m)) = m1.mul_signed(m2, &t) {
                        let w: Vec<i64> = m1.weight(&t).iter().zip(m2.weight(&t)).map(|(x, y)| x + y).collect();
                        prop_assert_eq!(m.weight(&t), w);
                    }
                }
            }
        }
    }
}
