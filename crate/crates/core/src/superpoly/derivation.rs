use std::sync::Arc;

use num_rational::BigRational;

use super::{Monomial, Parity, SuperPoly, Table};
use crate::error::{Error, Result};

/// A superderivation given by its values on the generators, extended by the
/// super Leibniz rule `D(uv) = D(u)v + (−1)^{|D||u|} u D(v)`.
#[derive(Clone, Debug)]
pub struct Superderivation {
    table: Table,
    parity: Parity,
    images: Vec<Option<SuperPoly>>,
}

impl Superderivation {
    /// Variables without an entry in `images` are left undefined; applying
    /// the derivation to a polynomial that mentions them is an error.
    pub fn new(
        table: &Table,
        parity: Parity,
        images: impl IntoIterator<Item = (usize, SuperPoly)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<SuperPoly>> = vec![None; table.len()];
        for (v, img) in images {
            if !Arc::ptr_eq(img.table(), table) {
                return Err(Error::TableMismatch);
            }
            let expected = table.var(v).parity.add(parity);
            if let Some(p) = img.parity() {
                if p != expected {
                    return Err(Error::Precondition(format!(
                        "image of `{}` has parity {p:?}, expected {expected:?}",
                        table.var(v).name
                    )));
                }
            } else if !img.is_zero() {
                return Err(Error::Precondition(format!(
                    "image of `{}` is not parity-homogeneous",
                    table.var(v).name
                )));
            }
            slots[v] = Some(img);
        }
        Ok(Superderivation {
            table: Arc::clone(table),
            parity,
            images: slots,
        })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn image(&self, v: usize) -> Option<&SuperPoly> {
        self.images[v].as_ref()
    }

    fn image_of(&self, v: usize) -> Result<&SuperPoly> {
        self.images[v]
            .as_ref()
            .ok_or_else(|| Error::UndefinedImage(self.table.var(v).name.clone()))
    }

    pub fn apply(&self, p: &SuperPoly) -> Result<SuperPoly> {
        if !Arc::ptr_eq(p.table(), &self.table) {
            return Err(Error::TableMismatch);
        }
        let mut out = SuperPoly::zero(&self.table);
        for (m, c) in p.terms() {
            let dm = self.apply_monomial(m)?;
            for (m2, c2) in dm.into_terms() {
                out.add_term(m2, c2 * c);
            }
        }
        Ok(out)
    }

    /// `D` applied to a single canonical monomial (even factors first, then
    /// odd factors in declaration order).
    pub fn apply_monomial(&self, m: &Monomial) -> Result<SuperPoly> {
        let t = &self.table;
        let mut out = SuperPoly::zero(t);
        let odd = m.odd_vars(t);
        let mut evens = m.clone();
        for &o in &odd {
            evens = evens.without(o).expect("odd factor present");
        }

        for (v, &e) in m.exponents().iter().enumerate() {
            if e == 0 || t.is_odd(v) {
                continue;
            }
            let img = self.image_of(v)?;
            if img.is_zero() {
                continue;
            }
            let rest = SuperPoly::monomial(
                t,
                m.without(v).expect("exponent positive"),
                BigRational::from_integer(e.into()),
            );
            out = &out + &(img * &rest);
        }

        for (pos, &o) in odd.iter().enumerate() {
            let img = self.image_of(o)?;
            if img.is_zero() {
                continue;
            }
            let left = odd[..pos]
                .iter()
                .fold(SuperPoly::monomial(t, evens.clone(), BigRational::from_integer(1.into())), |acc, &u| {
                    &acc * &SuperPoly::var(t, u)
                });
            let right = SuperPoly::product_of_vars(t, &odd[pos + 1..]);
            let mut term = &(&left * img) * &right;
            if self.parity.is_odd() && pos % 2 == 1 {
                term = -&term;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `a·D₁ + b·D₂` for derivations of equal parity over the same table.
    pub fn combine(&self, a: &BigRational, other: &Superderivation, b: &BigRational) -> Result<Self> {
        if !Arc::ptr_eq(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        if self.parity != other.parity {
            return Err(Error::Precondition("combining derivations of different parity".into()));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some(&x.scale(a) + &y.scale(b)),
                _ => None,
            })
            .collect();
        Ok(Superderivation {
            table: Arc::clone(&self.table),
            parity: self.parity,
            images,
        })
    }

    /// Whether the derivation sends every generator to zero.
    pub fn is_zero(&self) -> bool {
        self.images
            .iter()
            .all(|i| i.as_ref().is_none_or(SuperPoly::is_zero))
    }
}

impl PartialEq for Superderivation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
            && self.parity == other.parity
            && self.images == other.images
    }
}
