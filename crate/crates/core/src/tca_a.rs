//! The super-commutative algebra `A = Sym(Sym²(V)[1])` at rank `(n|n)`.
//!
//! Generators are `x[i,j] = eᵢfⱼε` (even), `y[i,j] = eᵢeⱼε` for `i ≤ j`
//! and `z[i,j] = fᵢfⱼε` for `i < j` (odd). Each carries central degree 2
//! and a weight in `ℤ^{2n}` (`e`-coordinates first, then `f`-coordinates).
//! `𝔤𝔩(n|n)` acts by superderivations induced from its action on `V`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gl::{BasisVector, GlElement};
use crate::linalg::{EchelonBasis, Matrix, Strategy};
use crate::partition::Partition;
use crate::superpoly::{
    graded_basis, rational, span_membership, Monomial, Parity, SuperPoly, Superderivation, Table, VariableTable,
};

/// Variable table and index bookkeeping for `A(ℂ^{n|n})`.
#[derive(Clone, Debug)]
pub struct RankContext {
    n: usize,
    table: Table,
    y_offset: usize,
    z_offset: usize,
}

fn weight_of(n: usize, u: BasisVector, w: BasisVector) -> Vec<i64> {
    let mut wt = vec![0; 2 * n];
    wt[u.position(n)] += 1;
    wt[w.position(n)] += 1;
    wt
}

/// Index of `(i, j)`, `i ≤ j`, among upper-triangular pairs listed row by
/// row (`strict` skips the diagonal).
fn triangle_index(n: usize, i: usize, j: usize, strict: bool) -> usize {
    let s = usize::from(strict);
    let before: usize = (1..i).map(|r| n + 1 - r - s).sum();
    before + (j - i - s)
}

impl RankContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        let mut t = VariableTable::new(2 * n);
        for i in 1..=n {
            for j in 1..=n {
                t.push(format!("x[{i},{j}]"), Parity::Even, weight_of(n, BasisVector::E(i), BasisVector::F(j)), 2)?;
            }
        }
        let y_offset = t.len();
        for i in 1..=n {
            for j in i..=n {
                t.push(format!("y[{i},{j}]"), Parity::Odd, weight_of(n, BasisVector::E(i), BasisVector::E(j)), 2)?;
            }
        }
        let z_offset = t.len();
        for i in 1..=n {
            for j in i + 1..=n {
                t.push(format!("z[{i},{j}]"), Parity::Odd, weight_of(n, BasisVector::F(i), BasisVector::F(j)), 2)?;
            }
        }
        Ok(RankContext {
            n,
            table: Arc::new(t),
            y_offset,
            z_offset,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::Precondition(format!("index ({i},{j}) out of range for rank {}", self.n)));
        }
        Ok(())
    }

    pub fn x_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    pub fn y_index(&self, i: usize, j: usize) -> usize {
        let (a, b) = (i.min(j), i.max(j));
        self.y_offset + triangle_index(self.n, a, b, false)
    }

    /// Index of `z[i,j]` for `i < j`.
    pub fn z_index(&self, i: usize, j: usize) -> usize {
        self.z_offset + triangle_index(self.n, i, j, true)
    }

    pub fn x(&self, i: usize, j: usize) -> Result<SuperPoly> {
        self.check(i, j)?;
        Ok(SuperPoly::var(&self.table, self.x_index(i, j)))
    }

    /// `y[i,j] = y[j,i]`.
    pub fn y(&self, i: usize, j: usize) -> Result<SuperPoly> {
        self.check(i, j)?;
        Ok(SuperPoly::var(&self.table, self.y_index(i, j)))
    }

    /// `z[i,j] = −z[j,i]`, `z[i,i] = 0`.
    pub fn z(&self, i: usize, j: usize) -> Result<SuperPoly> {
        self.check(i, j)?;
        Ok(match i.cmp(&j) {
            std::cmp::Ordering::Equal => SuperPoly::zero(&self.table),
            std::cmp::Ordering::Less => SuperPoly::var(&self.table, self.z_index(i, j)),
            std::cmp::Ordering::Greater => -&SuperPoly::var(&self.table, self.z_index(j, i)),
        })
    }

    /// The generator `u·w·ε`.
    pub fn generator(&self, u: BasisVector, w: BasisVector) -> Result<SuperPoly> {
        use BasisVector::{E, F};
        match (u, w) {
            (E(i), E(j)) => self.y(i, j),
            (E(i), F(j)) | (F(j), E(i)) => self.x(i, j),
            (F(i), F(j)) => self.z(i, j),
        }
    }

    /// A pair `(u, w)` with `u·w·ε` equal to variable `v`.
    pub fn factors_of(&self, v: usize) -> (BasisVector, BasisVector) {
        let n = self.n;
        if v < self.y_offset {
            (BasisVector::E(v / n + 1), BasisVector::F(v % n + 1))
        } else {
            let strict = v >= self.z_offset;
            let mut k = v - if strict { self.z_offset } else { self.y_offset };
            for i in 1..=n {
                let row = n + 1 - i - usize::from(strict);
                if k < row {
                    let j = i + k + usize::from(strict);
                    return if strict {
                        (BasisVector::F(i), BasisVector::F(j))
                    } else {
                        (BasisVector::E(i), BasisVector::E(j))
                    };
                }
                k -= row;
            }
            unreachable!("variable index {v} out of range")
        }
    }

    /// The superderivation of `A` induced by a homogeneous `X ∈ 𝔤𝔩(n|n)`:
    /// `X(uwε) = (X(u)w + (−1)^{|X||u|} uX(w))ε`.
    pub fn derivation(&self, x: &GlElement) -> Result<Superderivation> {
        if x.n() != self.n {
            return Err(Error::Precondition("matrix rank differs from context rank".into()));
        }
        let parity = x
            .parity()
            .ok_or_else(|| Error::Precondition("gl element is not parity-homogeneous".into()))?;
        let mut images = Vec::with_capacity(self.table.len());
        for v in 0..self.table.len() {
            let (u, w) = self.factors_of(v);
            let mut img = SuperPoly::zero(&self.table);
            for (u2, c) in x.apply(u) {
                img = &img + &self.generator(u2, w)?.scale(&c);
            }
            let sign = if parity.koszul(u.parity()) { -BigRational::one() } else { BigRational::one() };
            for (w2, c) in x.apply(w) {
                img = &img + &self.generator(u, w2)?.scale(&(c * &sign));
            }
            images.push((v, img));
        }
        Superderivation::new(&self.table, parity, images)
    }

    /// Derivation of the matrix unit sending `source` to `target`.
    pub fn elementary(&self, target: BasisVector, source: BasisVector) -> Superderivation {
        self.derivation(&GlElement::unit(self.n, target, source))
            .expect("matrix units are homogeneous")
    }

    /// `∏_{1 ≤ i ≤ j ≤ m} y[i,j]` in canonical order.
    pub fn y_block(&self, m: usize) -> Result<SuperPoly> {
        if m > self.n {
            return Err(Error::Precondition(format!("block size {m} exceeds rank {}", self.n)));
        }
        let vars: Vec<usize> = (1..=m).flat_map(|i| (i..=m).map(move |j| (i, j))).map(|(i, j)| self.y_index(i, j)).collect();
        Ok(SuperPoly::product_of_vars(&self.table, &vars))
    }

    /// `y(n)`.
    pub fn y_product(&self) -> SuperPoly {
        self.y_block(self.n).expect("full block")
    }

    /// Product of the leading principal minors of `(x[i,j])`, the minor of
    /// size `k` raised to `λ_k − λ_{k+1}`.
    pub fn x_lambda(&self, lambda: &Partition) -> Result<SuperPoly> {
        if lambda.len() > self.n {
            return Err(Error::Precondition(format!("{lambda} has more than {} rows", self.n)));
        }
        let mut out = SuperPoly::one(&self.table);
        for k in 1..=lambda.len() {
            let e = lambda.part(k - 1) - lambda.part(k);
            if e > 0 {
                out = &out * &self.leading_minor(k).pow(e as u32);
            }
        }
        Ok(out)
    }

    fn leading_minor(&self, k: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.table);
        for (perm, negative) in permutations(k) {
            let vars: Vec<usize> = perm.iter().enumerate().map(|(i, &j)| self.x_index(i + 1, j + 1)).collect();
            let mut term = SuperPoly::one(&self.table);
            for v in vars {
                term = &term * &SuperPoly::var(&self.table, v);
            }
            out = if negative { &out - &term } else { &out + &term };
        }
        out
    }

    /// The value at `x[i,i] = 1` with every other generator `0`. Its kernel
    /// is the ideal `𝔪`.
    pub fn residue(&self, p: &SuperPoly) -> BigRational {
        let values: Vec<BigRational> = (0..self.table.len())
            .map(|v| {
                if v < self.y_offset && v / self.n == v % self.n {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        p.evaluate(&values)
    }

    /// Generators of `𝔪`: off-diagonal `x`, `x[i,i] − 1`, all `y` and `z`.
    pub fn m_generators(&self) -> Vec<SuperPoly> {
        (0..self.table.len())
            .map(|v| {
                let g = SuperPoly::var(&self.table, v);
                if v < self.y_offset && v / self.n == v % self.n {
                    &g - &SuperPoly::one(&self.table)
                } else {
                    g
                }
            })
            .collect()
    }

    pub fn odd_variables(&self) -> std::ops::Range<usize> {
        self.y_offset..self.table.len()
    }
}

/// All permutations of `0..k` with their sign (`true` when odd).
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, bool)>) {
        let k = used.len();
        if prefix.len() == k {
            let inversions = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| prefix[a] > prefix[b])
                .count();
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for j in 0..k {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                go(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// `y`-variables only: the exterior algebra on `Sym²(ℂⁿ)`.
pub fn y_alphabet(n: usize) -> Table {
    let mut t = VariableTable::new(n);
    for i in 1..=n {
        for j in i..=n {
            let mut w = vec![0; n];
            w[i - 1] += 1;
            w[j - 1] += 1;
            t.push(format!("y[{i},{j}]"), Parity::Odd, w, 2).expect("distinct names");
        }
    }
    Arc::new(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct PnTopReport {
    pub n: usize,
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub spanned_by_y_product: bool,
    pub pass: bool,
}

/// The top `y`-only component at rank `n` is a line spanned by `y(n)`.
pub fn verify_pn_top(n: usize) -> Result<PnTopReport> {
    let t = y_alphabet(n);
    let degree = (n * (n + 1)) as u32;
    let basis = graded_basis(&t, degree, None)?;
    let product: Vec<usize> = (0..t.len()).collect();
    let y = SuperPoly::product_of_vars(&t, &product);
    let spanned = basis.len() == 1 && y.terms().keys().next() == Some(&basis[0]);
    Ok(PnTopReport {
        n,
        degree,
        dimension: basis.len(),
        basis: basis.iter().map(|m| m.display(&t)).collect(),
        spanned_by_y_product: spanned,
        pass: spanned,
    })
}

/// Raising operators of the Borel with `e`'s ordered before `f`'s.
pub fn raising_operators(n: usize) -> Vec<(BasisVector, BasisVector)> {
    use BasisVector::{E, F};
    let mut ops = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            ops.push((E(i), E(j)));
            ops.push((F(i), F(j)));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            ops.push((E(i), F(j)));
        }
    }
    ops
}

/// Highest weight of `S_μ(ℂ^{n|n})` for the even-before-odd Borel: the first
/// `n` rows of `μ`, then the column lengths beyond `n`.
pub fn hook_weight(mu: &Partition, n: usize) -> Vec<i64> {
    let t = mu.transpose();
    (0..n)
        .map(|i| mu.part(i) as i64)
        .chain((0..n).map(|j| t.part(j).saturating_sub(n) as i64))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HwvReport {
    pub n: usize,
    pub lambda: Partition,
    pub target: Partition,
    pub weight: Vec<i64>,
    pub expected_weight: Vec<i64>,
    pub raising_checked: usize,
    pub not_annihilating: Vec<String>,
    pub pass: bool,
}

pub fn hwv_check(n: usize, lambda: &Partition) -> Result<HwvReport> {
    let ctx = RankContext::new(n)?;
    let target = lambda.brace(n)?;
    let v = &ctx.y_product() * &ctx.x_lambda(lambda)?;
    let ops = raising_operators(n);
    let mut bad = Vec::new();
    for &(to, from) in &ops {
        if !ctx.elementary(to, from).apply(&v)?.is_zero() {
            bad.push(format!("{from}->{to}"));
        }
    }
    let weight = v
        .weight()
        .ok_or_else(|| Error::Inconsistent("y(n)x_λ is not a weight vector".into()))?;
    let expected = hook_weight(&target, n);
    let pass = bad.is_empty() && weight == expected && !v.is_zero();
    Ok(HwvReport {
        n,
        lambda: lambda.clone(),
        target,
        weight,
        expected_weight: expected,
        raising_checked: ops.len(),
        not_annihilating: bad,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitIdealReport {
    pub n: usize,
    /// Operators in the order they are written; the last acts first.
    pub operators: Vec<String>,
    pub interpretation: String,
    pub terms: usize,
    pub residue: String,
    pub pass: bool,
}

/// Applies the odd operators `eᵢ ↦ fⱼ` (`i ≤ j`, written by `j` then `i`,
/// rightmost first) to `y(n)` and reduces modulo `𝔪`.
pub fn unit_ideal_element(n: usize) -> Result<(SuperPoly, BigRational, UnitIdealReport)> {
    let ctx = RankContext::new(n)?;
    let order: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..=j).map(move |i| (i, j))).collect();
    let mut v = ctx.y_product();
    for &(i, j) in order.iter().rev() {
        v = ctx.elementary(BasisVector::F(j), BasisVector::E(i)).apply(&v)?;
    }
    let residue = ctx.residue(&v);
    let report = UnitIdealReport {
        n,
        operators: order.iter().map(|(i, j)| format!("e{i}->f{j}")).collect(),
        interpretation: "X_{i,-j} read as the odd operator e_i -> f_j".into(),
        terms: v.len(),
        residue: residue.to_string(),
        pass: !residue.is_zero(),
    };
    Ok((v, residue, report))
}

/// Spanning set of the `𝔤𝔩(n|n)`-submodule generated by `seed`, made of
/// iterated images of `seed` under matrix units (hence weight vectors).
pub fn orbit_span(ctx: &RankContext, seed: &SuperPoly) -> Result<Vec<SuperPoly>> {
    let n = ctx.n();
    let ops: Vec<Superderivation> = BasisVector::all(n)
        .flat_map(|t| BasisVector::all(n).map(move |s| (t, s)))
        .map(|(t, s)| ctx.elementary(t, s))
        .collect();
    let mut columns = BTreeMap::new();
    let mut basis = EchelonBasis::new();
    let mut kept = Vec::new();
    if seed.is_zero() {
        return Ok(kept);
    }
    basis.insert(seed.to_sparse(&mut columns));
    kept.push(seed.clone());
    let mut next = 0;
    while next < kept.len() {
        let v = kept[next].clone();
        next += 1;
        for op in &ops {
            let w = op.apply(&v)?;
            if !w.is_zero() && basis.insert(w.to_sparse(&mut columns)) {
                kept.push(w);
            }
        }
    }
    Ok(kept)
}

#[derive(Clone, Debug, Serialize)]
pub struct EssBoundReport {
    pub lambda: Partition,
    pub n0: usize,
    pub mu: Partition,
    pub rank: usize,
    pub degree: u32,
    pub generator_span: usize,
    pub member: bool,
    pub pass: bool,
}

/// Whether the highest weight vector `y(n′)x_μ` of `S_λ`, `λ = μ{n′}`, lies
/// in the ideal generated by the `𝔤𝔩`-span of `y(n₀)`.
pub fn ess_bound_check(lambda: &Partition, n0: usize) -> Result<EssBoundReport> {
    let (mu, rank) = lambda
        .unbrace()
        .ok_or_else(|| Error::Precondition(format!("{lambda} is not of the form μ{{n}}")))?;
    if rank < n0 || n0 == 0 {
        return Err(Error::Precondition(format!(
            "{lambda} = ({mu}){{{rank}}} does not contain the {n0}×{} rectangle",
            n0 + 1
        )));
    }
    let ctx = RankContext::new(rank)?;
    let target = &ctx.y_product() * &ctx.x_lambda(&mu)?;
    let gens = orbit_span(&ctx, &ctx.y_block(n0)?)?;
    let degree = lambda.size() as u32;
    let m = span_membership(&target, &gens, degree)?;
    Ok(EssBoundReport {
        lambda: lambda.clone(),
        n0,
        mu,
        rank,
        degree,
        generator_span: gens.len(),
        member: m.member,
        pass: m.member,
    })
}

/// Rank of `p ↦ s·p` on monomials of central degree at most `max_degree`,
/// together with the dimension of that space.
pub fn multiplication_rank(ctx: &RankContext, s: &SuperPoly, max_degree: u32) -> Result<(usize, usize)> {
    let mut columns = BTreeMap::new();
    let mut rows = Vec::new();
    for d in (0..=max_degree).step_by(2) {
        for m in graded_basis(ctx.table(), d, None)? {
            let p = SuperPoly::monomial(ctx.table(), m, BigRational::one());
            rows.push((s * &p).to_sparse(&mut columns));
        }
    }
    let dim = rows.len();
    let rank = Matrix::from_rows(columns.len(), rows).rank(Strategy::Auto);
    Ok((dim, rank))
}

/// Random combination of the monomials of central degree `d`.
pub fn random_homogeneous(ctx: &RankContext, d: u32, rng: &mut ChaCha8Rng, density: f64) -> Result<SuperPoly> {
    let mut p = SuperPoly::zero(ctx.table());
    for m in graded_basis(ctx.table(), d, None)? {
        if rng.gen_bool(density) {
            let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p.add_term(m, rational(c));
        }
    }
    Ok(p)
}

fn is_purely_even(ctx: &RankContext, m: &Monomial) -> bool {
    ctx.odd_variables().all(|v| m.exponent(v) == 0)
}

/// Whether `s` lies in the ideal generated by the odd generators, i.e. has
/// no term free of odd variables.
pub fn in_odd_ideal(ctx: &RankContext, s: &SuperPoly) -> bool {
    s.terms().keys().all(|m| !is_purely_even(ctx, m))
}

#[derive(Clone, Debug, Serialize)]
pub struct NzdReport {
    pub n: usize,
    pub degree_bound: u32,
    pub seed: u64,
    pub outside_samples: usize,
    pub injectivity_checks: usize,
    pub inside_samples: usize,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

/// Elements outside the odd ideal are nonzerodivisors (exact rank test on
/// low degrees plus random products); elements inside are killed by the
/// product of all odd generators.
pub fn nzd_check(n: usize, degree_bound: u32, samples: usize, seed: u64) -> Result<NzdReport> {
    let ctx = RankContext::new(n)?;
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let mut injectivity_checks = 0;
    let all_odd = SuperPoly::product_of_vars(ctx.table(), &ctx.odd_variables().collect::<Vec<_>>());

    for _ in 0..samples {
        let ds = 2 * rng.gen_range(0..=degree_bound / 4);
        let mut s = random_homogeneous(&ctx, ds, &mut rng, 0.4)?;
        if !s.terms().keys().any(|m| is_purely_even(&ctx, m)) {
            let evens: Vec<Monomial> = graded_basis(ctx.table(), ds, None)?
                .into_iter()
                .filter(|m| is_purely_even(&ctx, m))
                .collect();
            let m = evens[rng.gen_range(0..evens.len())].clone();
            s.add_term(m, rational(1));
        }
        let room = degree_bound - ds;
        let (dim, rank) = multiplication_rank(&ctx, &s, room)?;
        injectivity_checks += 1;
        if dim != rank {
            witnesses.push(format!("s = {s} is not injective below degree {room}"));
        }
        let dp = 2 * rng.gen_range(0..=room / 2);
        let p = random_homogeneous(&ctx, dp, &mut rng, 0.5)?;
        if !p.is_zero() && (&s * &p).is_zero() {
            witnesses.push(format!("s = {s} kills p = {p}"));
        }
    }

    for _ in 0..samples {
        let ds = 2 * rng.gen_range(1..=degree_bound / 2);
        let mut s = random_homogeneous(&ctx, ds, &mut rng, 0.5)?;
        s = SuperPoly::from_terms(
            ctx.table(),
            s.into_terms().into_iter().filter(|(m, _)| !is_purely_even(&ctx, m)),
        );
        if s.is_zero() {
            s = SuperPoly::var(ctx.table(), ctx.odd_variables().start);
        }
        if !(&s * &all_odd).is_zero() {
            witnesses.push(format!("s = {s} in the odd ideal is not killed by the odd product"));
        }
    }

    Ok(NzdReport {
        n,
        degree_bound,
        seed,
        outside_samples: samples,
        injectivity_checks,
        inside_samples: samples,
        pass: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub d: usize,
    pub monomials: u128,
    pub binomial: u128,
    pub schur_sum: u128,
    pub pass: bool,
}

/// Three counts of `Λ^d(Sym²ℂⁿ)`: monomials in the `y` alphabet, the
/// binomial coefficient, and `Σ_{λ ∈ Q₁, |λ| = 2d} dim S_λ(ℂⁿ)`.
pub fn dimension_consistency(n: usize, d: usize) -> Result<DimensionReport> {
    let t = y_alphabet(n);
    let monomials = graded_basis(&t, 2 * d as u32, None)?.len() as u128;
    let big_n = (n * (n + 1) / 2) as u128;
    let binomial = binomial(big_n, d as u128);
    let schur_sum: u128 = crate::partition::q1_of_size(2 * d)
        .partitions
        .iter()
        .map(|l| u128::from(crate::schur::dim_schur(l, n)))
        .sum();
    Ok(DimensionReport {
        n,
        d,
        monomials,
        binomial,
        schur_sum,
        pass: monomials == binomial && binomial == schur_sum,
    })
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn variable_counts_and_factors() {
        for n in 1..=4 {
            let ctx = RankContext::new(n).unwrap();
            assert_eq!(ctx.table().len(), n * n + n * (n + 1) / 2 + n * (n - 1) / 2);
            for v in 0..ctx.table().len() {
                let (u, w) = ctx.factors_of(v);
                let g = ctx.generator(u, w).unwrap();
                assert_eq!(g, SuperPoly::var(ctx.table(), v), "{}", ctx.table().var(v).name);
            }
        }
    }

    #[test]
    fn generator_symmetries() {
        let ctx = RankContext::new(2).unwrap();
        use BasisVector::{E, F};
        assert_eq!(ctx.generator(E(2), E(1)).unwrap(), ctx.y(1, 2).unwrap());
        assert_eq!(ctx.generator(F(1), E(2)).unwrap(), ctx.x(2, 1).unwrap());
        assert_eq!(ctx.generator(F(2), F(1)).unwrap(), -&ctx.z(1, 2).unwrap());
        assert!(ctx.generator(F(2), F(2)).unwrap().is_zero());
    }

    #[test]
    fn derivation_examples() {
        use BasisVector::{E, F};
        let ctx = RankContext::new(1).unwrap();
        // e1 -> f1 sends y11 to 2 x11.
        let d = ctx.elementary(F(1), E(1));
        assert_eq!(d.apply(&ctx.y(1, 1).unwrap()).unwrap(), ctx.x(1, 1).unwrap().scale(&rational(2)));
        assert!(d.apply(&SuperPoly::one(ctx.table())).unwrap().is_zero());

        let ctx = RankContext::new(2).unwrap();
        let d = ctx.elementary(E(2), E(1));
        assert_eq!(d.apply(&ctx.x(1, 1).unwrap()).unwrap(), ctx.x(2, 1).unwrap());
    }

    #[test]
    fn derivations_respect_brackets() {
        // [D_X, D_Y] = D_[X,Y] on generators, for matrix units.
        use crate::gl::GlElement;
        let n = 2;
        let ctx = RankContext::new(n).unwrap();
        let units: Vec<(BasisVector, BasisVector)> = BasisVector::all(n)
            .flat_map(|t| BasisVector::all(n).map(move |s| (t, s)))
            .collect();
        let bracket = |a: (BasisVector, BasisVector), b: (BasisVector, BasisVector)| {
            let pa = a.0.parity().add(a.1.parity());
            let pb = b.0.parity().add(b.1.parity());
            let mut g = GlElement::zero(n);
            if a.1 == b.0 {
                g.set(a.0, b.1, rational(1));
            }
            if b.1 == a.0 {
                let sign = if pa.koszul(pb) { 1 } else { -1 };
                let cur = g.entry(b.0, a.1).clone();
                g.set(b.0, a.1, cur + rational(sign));
            }
            g
        };
        for &a in &units {
            for &b in &units {
                let (da, db) = (ctx.elementary(a.0, a.1), ctx.elementary(b.0, b.1));
                let sign = if da.parity().koszul(db.parity()) { -1 } else { 1 };
                let g = bracket(a, b);
                let Some(_) = g.parity() else { continue };
                let dg = ctx.derivation(&g).unwrap();
                for v in 0..ctx.table().len() {
                    let t = SuperPoly::var(ctx.table(), v);
                    let lhs = &da.apply(&db.apply(&t).unwrap()).unwrap()
                        - &db.apply(&da.apply(&t).unwrap()).unwrap().scale(&rational(sign));
                    assert_eq!(lhs, dg.apply(&t).unwrap(), "{a:?} {b:?} on {}", ctx.table().var(v).name);
                }
            }
        }
    }

    #[test]
    fn y_product_examples() {
        let ctx = RankContext::new(1).unwrap();
        assert_eq!(ctx.y_product(), ctx.y(1, 1).unwrap());
        let ctx = RankContext::new(2).unwrap();
        let want = &(&ctx.y(1, 1).unwrap() * &ctx.y(1, 2).unwrap()) * &ctx.y(2, 2).unwrap();
        assert_eq!(ctx.y_product(), want);
        for n in 1..=4 {
            let ctx = RankContext::new(n).unwrap();
            assert_eq!(ctx.y_product().central_degree(), Some((n * (n + 1)) as u32));
            assert!(ctx.residue(&ctx.y_product()).is_zero());
        }
    }

    #[test]
    fn pn_top_is_a_line() {
        for n in 1..=4 {
            let r = verify_pn_top(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert_eq!(verify_pn_top(2).unwrap().basis, vec!["y[1,1] y[1,2] y[2,2]"]);
    }

    #[test]
    fn x_lambda_examples() {
        let ctx = RankContext::new(2).unwrap();
        assert_eq!(ctx.x_lambda(&Partition::empty()).unwrap(), SuperPoly::one(ctx.table()));
        assert_eq!(ctx.x_lambda(&p("1")).unwrap(), ctx.x(1, 1).unwrap());
        let det = &(&ctx.x(1, 1).unwrap() * &ctx.x(2, 2).unwrap()) - &(&ctx.x(1, 2).unwrap() * &ctx.x(2, 1).unwrap());
        assert_eq!(ctx.x_lambda(&p("1,1")).unwrap(), det);
        assert!(ctx.x_lambda(&p("1,1,1")).is_err());
    }

    #[test]
    fn highest_weight_vectors() {
        let r = hwv_check(1, &Partition::empty()).unwrap();
        assert_eq!(r.weight, vec![2, 0]);
        let r = hwv_check(1, &p("1")).unwrap();
        assert_eq!(r.weight, vec![3, 1]);
        assert_eq!(r.target, p("3,1"));
        let r = hwv_check(2, &Partition::empty()).unwrap();
        assert_eq!(r.weight, vec![3, 3, 0, 0]);
        for n in 1..=2 {
            for m in 0..=3 {
                for lambda in crate::partition::partitions_of(m).into_iter().filter(|l| l.len() <= n) {
                    let r = hwv_check(n, &lambda).unwrap();
                    assert!(r.pass, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn x_lambda_alone_is_not_highest_for_odd_raising() {
        // Without y(n) the odd raising operators f_j -> e_i act nontrivially.
        let ctx = RankContext::new(1).unwrap();
        let d = ctx.elementary(BasisVector::E(1), BasisVector::F(1));
        assert!(!d.apply(&ctx.x(1, 1).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn unit_ideal_residues() {
        let (v, r, _) = unit_ideal_element(1).unwrap();
        assert_eq!(v.to_string(), "2 * x[1,1]");
        assert_eq!(r, rational(2));
        for n in 2..=3 {
            let (_, r, rep) = unit_ideal_element(n).unwrap();
            assert!(!r.is_zero(), "{rep:?}");
        }
    }

    #[test]
    fn ess_bound_examples() {
        for (l, n0) in [("2", 1), ("3,1", 1), ("3,3", 1), ("3,3", 2), ("4,1,1", 1), ("4,4,2", 1)] {
            let r = ess_bound_check(&p(l), n0).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert!(ess_bound_check(&p("2,1"), 1).is_err());
        assert!(ess_bound_check(&p("2"), 2).is_err());
    }

    #[test]
    fn y_block_is_not_in_smaller_ideal_below_its_degree() {
        // Negative control: y(2) is not in the ideal generated by x[1,1].
        let ctx = RankContext::new(2).unwrap();
        let m = span_membership(&ctx.y_product(), &[ctx.x(1, 1).unwrap()], 6).unwrap();
        assert!(!m.member);
    }

    #[test]
    fn orbit_of_y11_is_all_generators() {
        for n in 1..=3 {
            let ctx = RankContext::new(n).unwrap();
            let span = orbit_span(&ctx, &ctx.y(1, 1).unwrap()).unwrap();
            assert_eq!(span.len(), ctx.table().len());
        }
    }

    #[test]
    fn nonzerodivisors() {
        let ctx = RankContext::new(1).unwrap();
        let (x11, y11) = (ctx.x(1, 1).unwrap(), ctx.y(1, 1).unwrap());
        assert!(!(&x11 * &y11).is_zero());
        assert!((&y11 * &y11).is_zero());
        let s = &SuperPoly::one(ctx.table()) + &y11;
        assert!(!in_odd_ideal(&ctx, &s));
        let (dim, rank) = multiplication_rank(&ctx, &s, 6).unwrap();
        assert_eq!(dim, rank);
        let (dim, rank) = multiplication_rank(&ctx, &y11, 6).unwrap();
        assert!(rank < dim);
        for n in 1..=2 {
            let r = nzd_check(n, 6, 6, 11).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn dimension_counts_agree() {
        for n in 1..=4 {
            for d in 0..=5 {
                let r = dimension_consistency(n, d).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn residue_is_multiplicative(seed in any::<u64>(), d1 in 0u32..=2, d2 in 0u32..=2) {
            let ctx = RankContext::new(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_homogeneous(&ctx, 2 * d1, &mut rng, 0.3).unwrap();
            let b = random_homogeneous(&ctx, 2 * d2, &mut rng, 0.3).unwrap();
            prop_assert_eq!(ctx.residue(&(&a * &b)), ctx.residue(&a) * ctx.residue(&b));
        }
    }

    #[test]
    fn m_generators_have_zero_residue() {
        let ctx = RankContext::new(3).unwrap();
        for g in ctx.m_generators() {
            assert!(ctx.residue(&g).is_zero());
        }
    }
}
