use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::{Monomial, SuperPoly, Table, VariableTable};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVec};

/// Largest graded component enumerated without an explicit override.
pub const DEFAULT_COMPONENT_LIMIT: u128 = 2_000_000;

/// Number of monomials of central degree `d`, ignoring weights.
pub fn count_graded(table: &VariableTable, d: u32) -> u128 {
    let d = d as usize;
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for v in table.vars() {
        let c = v.central_degree as usize;
        if c == 0 {
            if !v.parity.is_odd() {
                return u128::MAX;
            }
            ways.iter_mut().for_each(|w| *w = w.saturating_mul(2));
            continue;
        }
        if v.parity.is_odd() {
            for k in (c..=d).rev() {
                ways[k] = ways[k].saturating_add(ways[k - c]);
            }
        } else {
            for k in c..=d {
                ways[k] = ways[k].saturating_add(ways[k - c]);
            }
        }
    }
    ways[d]
}

/// All monomials of central degree `d` (and weight `weight`, if given),
/// sorted.
pub fn graded_basis(table: &VariableTable, d: u32, weight: Option<&[i64]>) -> Result<Vec<Monomial>> {
    graded_basis_with_limit(table, d, weight, DEFAULT_COMPONENT_LIMIT)
}

pub fn graded_basis_with_limit(
    table: &VariableTable,
    d: u32,
    weight: Option<&[i64]>,
    limit: u128,
) -> Result<Vec<Monomial>> {
    let estimate = count_graded(table, d);
    if estimate > limit {
        return Err(Error::GuardExceeded {
            what: format!("graded component of central degree {d}"),
            estimate,
            limit,
        });
    }
    let n = table.len();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    enumerate(table, 0, d, &mut exps, &mut out);
    if let Some(w) = weight {
        out.retain(|m| m.weight(table) == w);
    }
    out.sort();
    Ok(out)
}

fn enumerate(table: &VariableTable, i: usize, remaining: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if i == table.len() {
        if remaining == 0 {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        return;
    }
    let v = table.var(i);
    let c = v.central_degree;
    let max = if v.parity.is_odd() {
        1
    } else if c == 0 {
        0
    } else {
        remaining / c
    };
    for e in 0..=max {
        if e * c > remaining {
            break;
        }
        exps[i] = e as u16;
        enumerate(table, i + 1, remaining - e * c, exps, out);
    }
    exps[i] = 0;
}

/// Outcome of a membership query in a graded piece of an ideal.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// When `member`, triples `(multiplier, generator index, coefficient)`
    /// with `target = Σ coefficient · multiplier · generators[index]`.
    pub certificate: Option<Vec<(Monomial, usize, BigRational)>>,
}

/// Decides whether `target` lies in the central-degree-`d` piece of the
/// ideal generated by `generators`, i.e. in the span of `m·g` over
/// generators `g` and monomials `m` of complementary degree. When the target
/// and a generator are weight-homogeneous only multipliers of the matching
/// weight are used, which leaves the answer unchanged.
pub fn span_membership(target: &SuperPoly, generators: &[SuperPoly], d: u32) -> Result<Membership> {
    let table: &Table = target.table();
    if !target.is_zero() && target.central_degree() != Some(d) {
        return Err(Error::Inhomogeneous(d));
    }
    if target.is_zero() {
        return Ok(Membership {
            member: true,
            certificate: Some(Vec::new()),
        });
    }
    let target_weight = if table.weight_len() > 0 { target.weight() } else { None };

    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut to_sparse = |p: &SuperPoly| -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let next = columns.len();
                (*columns.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    };

    let mut basis = EchelonBasis::new();
    let mut provenance: Vec<(Monomial, usize)> = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        if !Arc::ptr_eq(g.table(), table) {
            return Err(Error::TableMismatch);
        }
        if g.is_zero() {
            continue;
        }
        let Some(gd) = g.central_degree() else {
            return Err(Error::Precondition(format!("generator {gi} is not homogeneous")));
        };
        if gd > d {
            continue;
        }
        let want_weight = match (&target_weight, g.weight()) {
            (Some(tw), Some(gw)) => Some(tw.iter().zip(&gw).map(|(a, b)| a - b).collect::<Vec<_>>()),
            _ => None,
        };
        for m in graded_basis(table, d - gd, want_weight.as_deref())? {
            let prod = &SuperPoly::monomial(table, m.clone(), BigRational::from_integer(1.into())) * g;
            if prod.is_zero() {
                continue;
            }
            basis.insert(to_sparse(&prod));
            provenance.push((m, gi));
        }
    }
    let target_vec = to_sparse(target);
    Ok(match basis.express(target_vec) {
        Some(combo) => Membership {
            member: true,
            certificate: Some(
                combo
                    .into_iter()
                    .map(|(k, c)| (provenance[k].0.clone(), provenance[k].1, c))
                    .collect(),
            ),
        },
        None => Membership {
            member: false,
            certificate: None,
        },
    })
}
