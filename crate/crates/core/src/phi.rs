//! The coordinate ring `ℂ[B̄]` of the lower-triangular Borel, its torus
//! weights, and the map `φ: A → ℂ[B̄]^T` on generators
//!
//! ```text
//! X[i,j] = Σ_{k ≤ min(i,j)} (a[k,i] d[k,j] + c[k,i] b[k,j])
//! Y[i,j] = Σ_{k ≤ min(i,j)} (a[k,i] c[k,j] + a[k,j] c[k,i])
//! Z[i,j] = Σ_{k ≤ min(i,j)} (d[k,i] b[k,j] − b[k,i] d[k,j])
//! ```
//!
//! with `b[i,i] = 0`, together with the leading-term order used to prove
//! injectivity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gl::BasisVector;
use crate::linalg::{Matrix, SparseVec, Strategy};
use crate::superpoly::{graded_basis, rational, Monomial, Parity, SuperPoly, Table, VariableTable};
use crate::tca_a::RankContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    // Declaration order is the tie-break order b < a < c < d.
    B,
    A,
    C,
    D,
}

/// `ℂ[B̄]` at rank `n`: `a[i,j]` (`i ≤ j`, even), `b[i,j]` (`i < j`, odd),
/// `c[i,j]` (`i ≤ j`, odd), `d[i,j]` (`i ≤ j`, even). `a`, `b` have torus
/// weight `−αᵢ`; `c`, `d` have `+αᵢ`.
#[derive(Clone, Debug)]
pub struct BbarContext {
    n: usize,
    table: Table,
    index: HashMap<(VarKind, usize, usize), usize>,
    labels: Vec<(VarKind, usize, usize)>,
}

impl BbarContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        let mut t = VariableTable::new(n);
        let mut index = HashMap::new();
        let mut labels = Vec::new();
        for (kind, name, parity, sign, strict) in [
            (VarKind::A, "a", Parity::Even, -1, false),
            (VarKind::B, "b", Parity::Odd, -1, true),
            (VarKind::C, "c", Parity::Odd, 1, false),
            (VarKind::D, "d", Parity::Even, 1, false),
        ] {
            for i in 1..=n {
                for j in (if strict { i + 1 } else { i })..=n {
                    let mut w = vec![0; n];
                    w[i - 1] = sign;
                    let v = t.push(format!("{name}[{i},{j}]"), parity, w, 1)?;
                    index.insert((kind, i, j), v);
                    labels.push((kind, i, j));
                }
            }
        }
        Ok(BbarContext {
            n,
            table: Arc::new(t),
            index,
            labels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn index(&self, kind: VarKind, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(kind, i, j)).copied()
    }

    pub fn label(&self, v: usize) -> (VarKind, usize, usize) {
        self.labels[v]
    }

    /// The variable as a polynomial; `b[i,i]` and out-of-triangle indices
    /// give zero.
    pub fn var(&self, kind: VarKind, i: usize, j: usize) -> SuperPoly {
        match self.index(kind, i, j) {
            Some(v) => SuperPoly::var(&self.table, v),
            None => SuperPoly::zero(&self.table),
        }
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::Precondition(format!("index ({i},{j}) out of range for rank {}", self.n)));
        }
        Ok(())
    }

    fn sum_over_k(&self, i: usize, j: usize, term: impl Fn(usize) -> SuperPoly) -> SuperPoly {
        (1..=i.min(j)).fold(SuperPoly::zero(&self.table), |acc, k| &acc + &term(k))
    }

    pub fn big_x(&self, i: usize, j: usize) -> Result<SuperPoly> {
        use VarKind::*;
        self.check(i, j)?;
        Ok(self.sum_over_k(i, j, |k| {
            &(&self.var(A, k, i) * &self.var(D, k, j)) + &(&self.var(C, k, i) * &self.var(B, k, j))
        }))
    }

    pub fn big_y(&self, i: usize, j: usize) -> Result<SuperPoly> {
        use VarKind::*;
        self.check(i, j)?;
        Ok(self.sum_over_k(i, j, |k| {
            &(&self.var(A, k, i) * &self.var(C, k, j)) + &(&self.var(A, k, j) * &self.var(C, k, i))
        }))
    }

    pub fn big_z(&self, i: usize, j: usize) -> Result<SuperPoly> {
        use VarKind::*;
        self.check(i, j)?;
        Ok(self.sum_over_k(i, j, |k| {
            &(&self.var(D, k, i) * &self.var(B, k, j)) - &(&self.var(B, k, i) * &self.var(D, k, j))
        }))
    }

    /// Values for `ν`: `a[i,i], d[i,i] ↦ 1`, every other variable `↦ 0`.
    pub fn nu_values(&self) -> Vec<BigRational> {
        self.labels
            .iter()
            .map(|&(k, i, j)| {
                if i == j && matches!(k, VarKind::A | VarKind::D) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    }

    // --- monomial order ---

    fn key(&self, v: usize) -> (usize, usize, VarKind) {
        let (k, i, j) = self.labels[v];
        (j, i, k)
    }

    /// Variables from largest to smallest.
    fn descending(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = (0..self.labels.len()).collect();
        vs.sort_by(|&p, &q| self.key(q).cmp(&self.key(p)));
        vs
    }

    /// Graded lexicographic comparison of monomials of `ℂ[B̄]`.
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        m1.degree().cmp(&m2.degree()).then_with(|| {
            for v in self.descending() {
                match m1.exponent(v).cmp(&m2.exponent(v)) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            Ordering::Equal
        })
    }

    /// Coarser order ignoring the variable kind (only `(j, i)` counts).
    pub fn compare_quasi(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        let keys = |m: &Monomial| {
            let mut ks: Vec<(usize, usize)> = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                let (j, i, _) = self.key(v);
                ks.extend(std::iter::repeat_n((j, i), usize::from(e)));
            }
            ks.sort_unstable_by(|a, b| b.cmp(a));
            ks
        };
        m1.degree().cmp(&m2.degree()).then_with(|| keys(m1).cmp(&keys(m2)))
    }

    pub fn leading_term(&self, p: &SuperPoly) -> Result<Monomial> {
        p.terms()
            .keys()
            .max_by(|a, b| self.compare(a, b))
            .cloned()
            .ok_or_else(|| Error::Precondition("leading term of zero".into()))
    }

    pub fn display(&self, m: &Monomial) -> String {
        m.display(&self.table)
    }
}

/// `φ` on generator `v` of `A`.
pub fn phi_image(b: &BbarContext, a: &RankContext, v: usize) -> Result<SuperPoly> {
    if a.n() != b.n() {
        return Err(Error::Precondition("rank mismatch".into()));
    }
    if v >= a.table().len() {
        return Err(Error::Precondition(format!("no generator with index {v}")));
    }
    use BasisVector::{E, F};
    match a.factors_of(v) {
        (E(i), F(j)) => b.big_x(i, j),
        (E(i), E(j)) => b.big_y(i, j),
        (F(i), F(j)) => b.big_z(i, j),
        (F(_), E(_)) => unreachable!("generators store the e-factor first"),
    }
}

/// `φ` extended multiplicatively; the variables of each monomial are
/// multiplied in table order, which is the canonical order of `A`.
pub fn phi_apply(b: &BbarContext, a: &RankContext, p: &SuperPoly) -> Result<SuperPoly> {
    let images: Vec<SuperPoly> = (0..a.table().len())
        .map(|v| phi_image(b, a, v))
        .collect::<Result<_>>()?;
    let mut out = SuperPoly::zero(b.table());
    for (m, c) in p.terms() {
        let mut prod = SuperPoly::one(b.table());
        for (v, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                prod = &prod * &images[v];
            }
        }
        out = &out + &prod.scale(c);
    }
    Ok(out)
}

// --- leading terms and injectivity ---

#[derive(Clone, Debug, Serialize)]
pub struct LeadingTermReport {
    pub n: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// `LT(X[i,j]) = a[i,i]d[i,j]`, `LT(X[j,i]) = a[i,j]d[i,i]`,
/// `LT(Y[i,j]) = a[i,i]c[i,j]`, `LT(Z[i,j]) = d[i,i]b[i,j]` for `i ≤ j`
/// (`i < j` for `Z`).
pub fn leading_term_table(n: usize) -> Result<LeadingTermReport> {
    use VarKind::*;
    let b = BbarContext::new(n)?;
    let mono = |vars: &[(VarKind, usize, usize)]| {
        let mut e = vec![0u16; b.table().len()];
        for &(k, i, j) in vars {
            e[b.index(k, i, j).expect("valid variable")] += 1;
        }
        Monomial::from_exponents(e)
    };
    let mut cases = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            cases.push((format!("X[{i},{j}]"), b.big_x(i, j)?, mono(&[(A, i, i), (D, i, j)])));
            cases.push((format!("X[{j},{i}]"), b.big_x(j, i)?, mono(&[(A, i, j), (D, i, i)])));
            cases.push((format!("Y[{i},{j}]"), b.big_y(i, j)?, mono(&[(A, i, i), (C, i, j)])));
            if i < j {
                cases.push((format!("Z[{i},{j}]"), b.big_z(i, j)?, mono(&[(D, i, i), (B, i, j)])));
            }
        }
    }
    let mut mismatches = Vec::new();
    for (name, p, want) in &cases {
        let got = b.leading_term(p)?;
        if got != *want {
            mismatches.push(format!("LT({name}) = {}, expected {}", b.display(&got), b.display(want)));
        }
    }
    Ok(LeadingTermReport {
        n,
        checked: cases.len(),
        pass: mismatches.is_empty(),
        mismatches,
    })
}

/// Recovers the `X,Y,Z`-monomial whose leading term is `lt`: each `c[i,j]`
/// takes an `a[i,i]` and gives `Y[i,j]`, each `b[i,j]` takes a `d[i,i]`
/// and gives `Z[i,j]`; then `d[i,j]` (`i < j`) with `a[i,i]` gives
/// `X[i,j]`, `a[i,j]` with `d[i,i]` gives `X[j,i]`, and what is left must
/// pair up as `a[i,i]d[i,i] = X[i,i]`.
pub fn reconstruct(b: &BbarContext, a: &RankContext, lt: &Monomial) -> Option<Monomial> {
    use VarKind::*;
    let mut rest: Vec<u16> = lt.exponents().to_vec();
    let mut out = vec![0u16; a.table().len()];
    let take = |rest: &mut Vec<u16>, kind, i, j| -> bool {
        let v = b.index(kind, i, j).expect("valid variable");
        if rest[v] == 0 {
            return false;
        }
        rest[v] -= 1;
        true
    };
    let n = b.n();
    for i in 1..=n {
        for j in i..=n {
            while take(&mut rest, C, i, j) {
                if !take(&mut rest, A, i, i) {
                    return None;
                }
                out[a.y_index(i, j)] += 1;
            }
            if i < j {
                while take(&mut rest, B, i, j) {
                    if !take(&mut rest, D, i, i) {
                        return None;
                    }
                    out[a.z_index(i, j)] += 1;
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            while take(&mut rest, D, i, j) {
                if !take(&mut rest, A, i, i) {
                    return None;
                }
                out[a.x_index(i, j)] += 1;
            }
            while take(&mut rest, A, i, j) {
                if !take(&mut rest, D, i, i) {
                    return None;
                }
                out[a.x_index(j, i)] += 1;
            }
        }
    }
    for i in 1..=n {
        while take(&mut rest, A, i, i) {
            if !take(&mut rest, D, i, i) {
                return None;
            }
            out[a.x_index(i, i)] += 1;
        }
    }
    rest.iter().all(|&e| e == 0).then(|| Monomial::from_exponents(out))
}

/// Pairs of inputs sharing a key.
pub fn find_collisions<K: Ord + Clone, V: Clone>(entries: &[(K, V)]) -> Vec<(V, V)> {
    let mut seen: BTreeMap<K, V> = BTreeMap::new();
    let mut out = Vec::new();
    for (k, v) in entries {
        if let Some(prev) = seen.get(k) {
            out.push((prev.clone(), v.clone()));
        } else {
            seen.insert(k.clone(), v.clone());
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub n: usize,
    pub max_degree: u32,
    pub monomials: usize,
    pub zero_images: Vec<String>,
    pub non_multiplicative: Vec<String>,
    pub collisions: Vec<String>,
    pub reconstruction_failures: Vec<String>,
    pub pass: bool,
}

const INJECTIVITY_LIMIT: usize = 200_000;

/// Every `X,Y,Z`-monomial of degree `1..=max_degree` has a nonzero image
/// whose leading term is the product of the factor leading terms; these
/// leading terms are pairwise distinct and reconstruct the monomial.
pub fn injectivity_scan(n: usize, max_degree: u32) -> Result<InjectivityReport> {
    let a = RankContext::new(n)?;
    let b = BbarContext::new(n)?;
    let mut monomials = Vec::new();
    for d in 1..=max_degree {
        monomials.extend(graded_basis(a.table(), 2 * d, None)?);
        if monomials.len() > INJECTIVITY_LIMIT {
            return Err(Error::GuardExceeded {
                what: format!("injectivity scan at rank {n}, degree {max_degree}"),
                estimate: monomials.len() as u128,
                limit: INJECTIVITY_LIMIT as u128,
            });
        }
    }
    let gen_lt: Vec<Monomial> = (0..a.table().len())
        .map(|v| phi_image(&b, &a, v).and_then(|p| b.leading_term(&p)))
        .collect::<Result<_>>()?;
    let show = |m: &Monomial| m.display(a.table());

    type Row = (Option<Monomial>, Option<String>, Option<String>, Option<String>);
    let rows: Vec<Row> = monomials
        .par_iter()
        .map(|m| -> Result<Row> {
            let image = phi_apply(&b, &a, &SuperPoly::monomial(a.table(), m.clone(), BigRational::one()))?;
            if image.is_zero() {
                return Ok((None, Some(show(m)), None, None));
            }
            let lt = b.leading_term(&image)?;
            let mut expected = Monomial::one(b.table().len());
            let mut defined = true;
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    match expected.mul_signed(&gen_lt[v], b.table()) {
                        Some((_, p)) => expected = p,
                        None => defined = false,
                    }
                }
            }
            let nm = (!defined || expected != lt).then(|| format!("{}: LT {}", show(m), b.display(&lt)));
            let rec = (reconstruct(&b, &a, &lt).as_ref() != Some(m)).then(|| show(m));
            Ok((Some(lt), None, nm, rec))
        })
        .collect::<Result<_>>()?;

    let mut zero_images = Vec::new();
    let mut non_multiplicative = Vec::new();
    let mut reconstruction_failures = Vec::new();
    let mut keyed = Vec::new();
    for (m, (lt, z, nm, rec)) in monomials.iter().zip(rows) {
        zero_images.extend(z);
        non_multiplicative.extend(nm);
        reconstruction_failures.extend(rec);
        if let Some(lt) = lt {
            keyed.push((lt, m.clone()));
        }
    }
    let collisions: Vec<String> = find_collisions(&keyed)
        .into_iter()
        .map(|(m1, m2)| format!("{} and {}", show(&m1), show(&m2)))
        .collect();
    let pass = zero_images.is_empty()
        && non_multiplicative.is_empty()
        && collisions.is_empty()
        && reconstruction_failures.is_empty();
    Ok(InjectivityReport {
        n,
        max_degree,
        monomials: monomials.len(),
        zero_images,
        non_multiplicative,
        collisions,
        reconstruction_failures,
        pass,
    })
}

// --- torus invariance ---

#[derive(Clone, Debug, Serialize)]
pub struct TInvarianceReport {
    pub n: usize,
    pub images_checked: usize,
    pub generator_products_checked: usize,
    pub failures: Vec<String>,
    pub control: String,
    pub control_rejected: bool,
    pub pass: bool,
}

pub fn t_invariance_check(n: usize) -> Result<TInvarianceReport> {
    use VarKind::*;
    let a = RankContext::new(n)?;
    let b = BbarContext::new(n)?;
    let zero = vec![0i64; n];
    let mut failures = Vec::new();
    for v in 0..a.table().len() {
        let p = phi_image(&b, &a, v)?;
        if p.weight().as_deref() != Some(&zero[..]) {
            failures.push(format!("φ({}) has weight {:?}", a.table().var(v).name, p.weight()));
        }
    }
    let mut products = 0;
    for i in 1..=n {
        for (p, q) in [(A, C), (A, D), (B, C), (B, D)] {
            for j in i..=n {
                for k in i..=n {
                    let (Some(u), Some(w)) = (b.index(p, i, j), b.index(q, i, k)) else {
                        continue;
                    };
                    products += 1;
                    let m = SuperPoly::product_of_vars(b.table(), &[u, w]);
                    if m.weight().as_deref() != Some(&zero[..]) {
                        failures.push(b.display(m.terms().keys().next().expect("nonzero")));
                    }
                }
            }
        }
    }
    let (control, control_rejected) = if n >= 2 {
        let m = &b.var(A, 1, 1) * &b.var(C, 2, 2);
        let w = m.weight().unwrap_or_default();
        (format!("a[1,1] c[2,2] has weight {w:?}"), w != zero)
    } else {
        ("none at rank 1".to_string(), true)
    };
    Ok(TInvarianceReport {
        n,
        images_checked: a.table().len(),
        generator_products_checked: products,
        pass: failures.is_empty() && control_rejected,
        failures,
        control,
        control_rejected,
    })
}

// --- localization identities ---

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub n: usize,
    pub identities_checked: usize,
    pub lower_term_checks: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// The cleared-denominator rewriting identities
/// `(a[k,k]d[k,k])·x = p·q` for the four product types with `k < i, j`
/// and the two `k = i < j` identities with `c[i,i]`, plus the claims that
/// `X`, `Y`, `Z` equal their displayed top terms up to terms of the same
/// type that are strictly smaller in the index-only order.
pub fn localization_identities_check(n: usize) -> Result<LocalizationReport> {
    use VarKind::*;
    let b = BbarContext::new(n)?;
    let v = |k, i, j| b.var(k, i, j);
    let mul = |p: &SuperPoly, q: &SuperPoly| p * q;
    let mut failures = Vec::new();
    let mut identities = 0;
    let mut check = |name: String, lhs: SuperPoly, rhs: SuperPoly| {
        identities += 1;
        if lhs != rhs || lhs.is_zero() {
            failures.push(name);
        }
    };
    for k in 1..=n {
        let unit = mul(&v(A, k, k), &v(D, k, k));
        for i in k + 1..=n {
            for j in k + 1..=n {
                check(
                    format!("ad k={k} i={i} j={j}"),
                    mul(&unit, &mul(&v(A, k, i), &v(D, k, j))),
                    mul(&mul(&v(A, k, i), &v(D, k, k)), &mul(&v(A, k, k), &v(D, k, j))),
                );
                check(
                    format!("ac k={k} i={i} j={j}"),
                    mul(&unit, &mul(&v(A, k, i), &v(C, k, j))),
                    mul(&mul(&v(A, k, i), &v(D, k, k)), &mul(&v(A, k, k), &v(C, k, j))),
                );
                check(
                    format!("bc k={k} i={i} j={j}"),
                    mul(&unit, &mul(&v(B, k, i), &v(C, k, j))),
                    mul(&mul(&v(B, k, i), &v(D, k, k)), &mul(&v(A, k, k), &v(C, k, j))),
                );
                check(
                    format!("bd k={k} i={i} j={j}"),
                    mul(&unit, &mul(&v(B, k, i), &v(D, k, j))),
                    mul(&mul(&v(B, k, i), &v(D, k, k)), &mul(&v(A, k, k), &v(D, k, j))),
                );
            }
        }
        for j in k + 1..=n {
            let i = k;
            check(
                format!("bc i={i} j={j}"),
                mul(&unit, &mul(&v(B, i, j), &v(C, i, i))),
                mul(&mul(&v(B, i, j), &v(D, i, i)), &mul(&v(A, i, i), &v(C, i, i))),
            );
            check(
                format!("ac i={i} j={j}"),
                mul(&unit, &mul(&v(A, i, j), &v(C, i, i))),
                mul(&mul(&v(A, i, j), &v(D, i, i)), &mul(&v(A, i, i), &v(C, i, i))),
            );
        }
    }

    // Top terms and the types allowed below them.
    let mut lower_checks = 0;
    let ad_bc = [(A, D), (B, C)];
    let ac_bd = [(A, C), (B, D)];
    let mut claims: Vec<(String, SuperPoly, SuperPoly, &[(VarKind, VarKind)])> = Vec::new();
    for i in 1..=n {
        claims.push((format!("X[{i},{i}]"), b.big_x(i, i)?, mul(&v(A, i, i), &v(D, i, i)), &ad_bc));
        claims.push((
            format!("Y[{i},{i}]"),
            b.big_y(i, i)?,
            mul(&v(A, i, i), &v(C, i, i)).scale(&rational(2)),
            &ac_bd,
        ));
        for j in i + 1..=n {
            claims.push((format!("X[{j},{i}]"), b.big_x(j, i)?, mul(&v(A, i, j), &v(D, i, i)), &ad_bc));
            claims.push((format!("Z[{i},{j}]"), b.big_z(i, j)?, mul(&v(D, i, i), &v(B, i, j)), &ac_bd));
            claims.push((
                format!("X[{i},{j}]"),
                b.big_x(i, j)?,
                &mul(&v(A, i, i), &v(D, i, j)) + &mul(&v(C, i, i), &v(B, i, j)),
                &ad_bc,
            ));
            claims.push((
                format!("Y[{i},{j}]"),
                b.big_y(i, j)?,
                &mul(&v(A, i, i), &v(C, i, j)) + &mul(&v(A, i, j), &v(C, i, i)),
                &ac_bd,
            ));
        }
    }
    for (name, full, top, types) in claims {
        lower_checks += 1;
        let top_lt = b.leading_term(&top)?;
        let rest = &full - &top;
        for m in rest.terms().keys() {
            let kinds: Vec<VarKind> = (0..m.exponents().len())
                .filter(|&x| m.exponent(x) > 0)
                .map(|x| b.label(x).0)
                .collect();
            let typed = kinds.len() == 2 && types.iter().any(|&(p, q)| kinds.contains(&p) && kinds.contains(&q));
            if !typed || b.compare_quasi(m, &top_lt) != Ordering::Less {
                failures.push(format!("{name}: lower term {} is not admissible", b.display(m)));
            }
        }
    }
    Ok(LocalizationReport {
        n,
        identities_checked: identities,
        lower_term_checks: lower_checks,
        pass: failures.is_empty(),
        failures,
    })
}

// --- extension and contraction ---

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub n: usize,
    pub max_central_degree: u32,
    pub monomials: usize,
    pub value_mismatches: Vec<String>,
    pub rank_nu_phi: usize,
    pub rank_residue: usize,
    pub rank_joint: usize,
    pub kernels_equal: bool,
    pub pass: bool,
}

/// `ker(ν∘φ) = 𝔪` on `A` up to central degree `max_central_degree`:
/// both functionals are compared on the monomial basis and their kernels
/// as subspaces.
pub fn extension_contraction_check(n: usize, max_central_degree: u32) -> Result<ExtensionReport> {
    let a = RankContext::new(n)?;
    let b = BbarContext::new(n)?;
    let nu = b.nu_values();
    let mut basis = Vec::new();
    for d in 0..=max_central_degree {
        basis.extend(graded_basis(a.table(), d, None)?);
    }
    let values: Vec<(BigRational, BigRational)> = basis
        .par_iter()
        .map(|m| -> Result<_> {
            let p = SuperPoly::monomial(a.table(), m.clone(), BigRational::one());
            Ok((phi_apply(&b, &a, &p)?.evaluate(&nu), a.residue(&p)))
        })
        .collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for (m, (u, r)) in basis.iter().zip(&values) {
        if u != r && mismatches.len() < 8 {
            mismatches.push(format!("{}: ν∘φ = {u}, residue = {r}", m.display(a.table())));
        }
    }
    // Each functional as a row; equal kernels iff the rows are proportional.
    let row = |pick: fn(&(BigRational, BigRational)) -> &BigRational| -> SparseVec {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| !pick(v).is_zero())
            .map(|(k, v)| (k, pick(v).clone()))
            .collect()
    };
    let (r1, r2) = (row(|v| &v.0), row(|v| &v.1));
    let ncols = basis.len();
    let rank_nu_phi = Matrix::from_rows(ncols, vec![r1.clone()]).rank(Strategy::Auto);
    let rank_residue = Matrix::from_rows(ncols, vec![r2.clone()]).rank(Strategy::Auto);
    let rank_joint = Matrix::from_rows(ncols, vec![r1, r2]).rank(Strategy::Auto);
    let kernels_equal = rank_nu_phi == rank_residue && rank_joint == rank_residue;
    Ok(ExtensionReport {
        n,
        max_central_degree,
        monomials: basis.len(),
        pass: kernels_equal && mismatches.is_empty(),
        value_mismatches: mismatches,
        rank_nu_phi,
        rank_residue,
        rank_joint,
        kernels_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use VarKind::*;

    fn ctx(n: usize) -> (RankContext, BbarContext) {
        (RankContext::new(n).unwrap(), BbarContext::new(n).unwrap())
    }

    #[test]
    fn generator_images() {
        let (a, b) = ctx(2);
        let x11 = phi_image(&b, &a, a.x_index(1, 1)).unwrap();
        assert_eq!(x11, &b.var(A, 1, 1) * &b.var(D, 1, 1));
        let y11 = phi_image(&b, &a, a.y_index(1, 1)).unwrap();
        assert_eq!(y11, (&b.var(A, 1, 1) * &b.var(C, 1, 1)).scale(&rational(2)));
        let z12 = phi_image(&b, &a, a.z_index(1, 2)).unwrap();
        assert_eq!(z12, &b.var(D, 1, 1) * &b.var(B, 1, 2));
    }

    #[test]
    fn hand_expanded_x22() {
        // X[2,2] expanded by hand over k = 1, 2.
        let (_, b) = ctx(2);
        let want = &(&(&b.var(A, 1, 2) * &b.var(D, 1, 2)) + &(&b.var(C, 1, 2) * &b.var(B, 1, 2)))
            + &(&b.var(A, 2, 2) * &b.var(D, 2, 2));
        assert_eq!(b.big_x(2, 2).unwrap(), want);
    }

    #[test]
    fn symmetry_of_images() {
        for n in 1..=3 {
            let b = BbarContext::new(n).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(b.big_y(i, j).unwrap(), b.big_y(j, i).unwrap());
                    assert_eq!(b.big_z(i, j).unwrap(), -&b.big_z(j, i).unwrap());
                }
                assert!(b.big_z(i, i).unwrap().is_zero());
            }
        }
        assert!(BbarContext::new(2).unwrap().big_x(3, 1).is_err());
    }

    #[test]
    fn leading_terms() {
        let b = BbarContext::new(2).unwrap();
        assert_eq!(b.display(&b.leading_term(&b.big_x(1, 2).unwrap()).unwrap()), "a[1,1] d[1,2]");
        assert_eq!(b.display(&b.leading_term(&b.big_y(1, 2).unwrap()).unwrap()), "a[1,1] c[1,2]");
        assert_eq!(b.display(&b.leading_term(&b.big_z(1, 2).unwrap()).unwrap()), "b[1,2] d[1,1]");
        assert!(b.leading_term(&SuperPoly::zero(b.table())).is_err());
        for n in 1..=4 {
            let r = leading_term_table(n).unwrap();
            assert!(r.pass, "{:?}", r.mismatches);
        }
    }

    #[test]
    fn variable_order_tie_break() {
        let b = BbarContext::new(2).unwrap();
        let m = |k, i, j| Monomial::var(b.table().len(), b.index(k, i, j).unwrap());
        assert_eq!(b.compare(&m(D, 1, 2), &m(C, 1, 2)), Ordering::Greater);
        assert_eq!(b.compare(&m(C, 1, 2), &m(A, 1, 2)), Ordering::Greater);
        assert_eq!(b.compare(&m(A, 1, 2), &m(B, 1, 2)), Ordering::Greater);
        // Column first: a[2,2] (key (2,2)) beats d[1,2] (key (2,1)).
        assert_eq!(b.compare(&m(A, 2, 2), &m(D, 1, 2)), Ordering::Greater);
        assert_eq!(b.compare(&m(D, 1, 2), &m(D, 1, 1)), Ordering::Greater);
        assert_eq!(b.compare_quasi(&m(D, 1, 2), &m(B, 1, 2)), Ordering::Equal);
    }

    #[test]
    fn injectivity_rank_one() {
        let r = injectivity_scan(1, 2).unwrap();
        // X11, Y11, X11², X11·Y11.
        assert_eq!(r.monomials, 4);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn injectivity_rank_two() {
        let r = injectivity_scan(2, 3).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn forged_duplicate_is_caught() {
        let (a, b) = ctx(2);
        let lt = b.leading_term(&b.big_x(1, 2).unwrap()).unwrap();
        let entries = vec![
            (lt.clone(), "x[1,2]".to_string()),
            (b.leading_term(&b.big_x(2, 1).unwrap()).unwrap(), "x[2,1]".to_string()),
            (lt, "forged".to_string()),
        ];
        assert_eq!(find_collisions(&entries), vec![("x[1,2]".to_string(), "forged".to_string())]);
        // A leading term with an unpaired c cannot be reconstructed.
        let bad = Monomial::var(b.table().len(), b.index(C, 1, 2).unwrap());
        assert!(reconstruct(&b, &a, &bad).is_none());
    }

    #[test]
    fn torus_weights() {
        for n in 1..=3 {
            let r = t_invariance_check(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let b = BbarContext::new(2).unwrap();
        let ad = &b.var(A, 1, 1) * &b.var(D, 1, 2);
        assert_eq!(ad.weight(), Some(vec![0, 0]));
        let ac = &b.var(A, 1, 1) * &b.var(C, 2, 2);
        assert_eq!(ac.weight(), Some(vec![-1, 1]));
    }

    #[test]
    fn localization_identities() {
        for n in 1..=3 {
            let r = localization_identities_check(n).unwrap();
            assert!(r.pass, "{:?}", r.failures);
        }
        // k=1,i=2,j=3 in bc form, by hand.
        let b = BbarContext::new(3).unwrap();
        let lhs = &(&b.var(A, 1, 1) * &b.var(D, 1, 1)) * &(&b.var(B, 1, 2) * &b.var(C, 1, 3));
        let rhs = &(&b.var(B, 1, 2) * &b.var(D, 1, 1)) * &(&b.var(A, 1, 1) * &b.var(C, 1, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_equals_m() {
        let (a, b) = ctx(2);
        let nu = b.nu_values();
        let img = |v| phi_image(&b, &a, v).unwrap().evaluate(&nu);
        assert_eq!(img(a.x_index(1, 1)), rational(1));
        assert_eq!(img(a.y_index(1, 1)), rational(0));
        assert_eq!(img(a.x_index(1, 2)), rational(0));
        for n in 1..=2 {
            let r = extension_contraction_check(n, 6).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!((r.rank_nu_phi, r.rank_joint), (1, 1));
        }
    }

    fn random_monomial(a: &RankContext, picks: &[usize]) -> SuperPoly {
        let vars: Vec<usize> = picks.iter().map(|p| p % a.table().len()).collect();
        SuperPoly::product_of_vars(a.table(), &vars)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn phi_is_multiplicative(p1 in proptest::collection::vec(0usize..64, 0..3),
                                 p2 in proptest::collection::vec(0usize..64, 0..3)) {
            let (a, b) = ctx(2);
            let m1 = random_monomial(&a, &p1);
            let m2 = random_monomial(&a, &p2);
            let lhs = phi_apply(&b, &a, &(&m1 * &m2)).unwrap();
            let rhs = &phi_apply(&b, &a, &m1).unwrap() * &phi_apply(&b, &a, &m2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn order_is_multiplicative(p1 in proptest::collection::vec(0usize..64, 1..4),
                                   p2 in proptest::collection::vec(0usize..64, 1..4),
                                   p3 in proptest::collection::vec(0usize..64, 0..3)) {
            let b = BbarContext::new(2).unwrap();
            let nv = b.table().len();
            let mono = |ps: &[usize]| {
                let mut e = vec![0u16; nv];
                for p in ps { e[p % nv] += 1; }
                Monomial::from_exponents(e)
            };
            let (m1, m2, w) = (mono(&p1), mono(&p2), mono(&p3));
            // Exponent products only; the order ignores signs.
            let times = |m: &Monomial| Monomial::from_exponents(
                m.exponents().iter().zip(w.exponents()).map(|(x, y)| x + y).collect());
            prop_assert_eq!(b.compare(&m1, &m2), b.compare(&times(&m1), &times(&m2)));
            prop_assert_eq!(b.compare(&m1, &m2), b.compare(&m2, &m1).reverse());
        }
    }
}
