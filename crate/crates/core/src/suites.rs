//! Verification suites shared by the command-line driver and the tests.
//! Each function returns a [`SuiteResult`]; `Err` is reserved for invalid
//! input, everything else (including exceeded guards) becomes a result.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::koszul::{self, Branch, ExtQuery, Side};
use crate::partition::{partitions_of, q1_of_size, Partition};
use crate::periplectic::{self as pe, BrauerMorphism};
use crate::phi;
use crate::report::{SuiteBuilder, SuiteResult};
use crate::schur::{self, lr_coefficient};
use crate::tca_a;

struct Outcome {
    pass: bool,
    witnesses: Vec<String>,
    warnings: Vec<String>,
    summary: Vec<String>,
    details: Value,
}

impl Outcome {
    fn new(pass: bool, details: impl Serialize) -> Self {
        Outcome {
            pass,
            witnesses: Vec::new(),
            warnings: Vec::new(),
            summary: Vec::new(),
            details: serde_json::to_value(details).unwrap_or(Value::Null),
        }
    }

    fn witnesses(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.witnesses.extend(w);
        self
    }

    fn warnings(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(w);
        self
    }

    fn summary(mut self, s: impl IntoIterator<Item = String>) -> Self {
        self.summary.extend(s);
        self
    }
}

fn run(b: SuiteBuilder, f: impl FnOnce() -> Result<Outcome>) -> Result<SuiteResult> {
    match f() {
        Ok(o) => Ok(b.finish(o.pass, o.witnesses, o.warnings, o.summary, o.details)),
        Err(e @ (Error::Precondition(_) | Error::Parse(_))) => Err(e),
        Err(e) => Ok(b.error(&e)),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

// --- partitions and Schur functors ---

pub fn q1(size: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("q1", "Q1: every diagonal box has arm one more than leg").param("size", size), || {
        let listing = q1_of_size(size);
        // Independent membership test straight from arms and legs.
        let direct: Vec<Partition> = partitions_of(size)
            .into_iter()
            .filter(|p| (0..p.durfee()).all(|i| p.arm(i, i) == p.leg(i, i) + 1))
            .collect();
        let pass = direct == listing.partitions;
        let warn = listing.odd_size_warning.then(|| format!("size {size} is odd; Q1 has no members"));
        Ok(Outcome::new(pass, json!({ "partitions": strings(&listing.partitions) }))
            .summary(strings(&listing.partitions))
            .warnings(warn))
    })
}

pub fn lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("lr", "Littlewood-Richardson coefficient")
        .param("lambda", lambda)
        .param("mu", mu)
        .param("nu", nu);
    run(b, || {
        let c = lr_coefficient(lambda, mu, nu);
        let swapped = lr_coefficient(mu, lambda, nu);
        let transposed = lr_coefficient(&lambda.transpose(), &mu.transpose(), &nu.transpose());
        let pass = c == swapped && c == transposed;
        Ok(Outcome::new(pass, json!({ "coefficient": c, "swapped": swapped, "transposed": transposed }))
            .summary([c.to_string()]))
    })
}

pub fn rect(n: usize, k: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("rect", "S_{n×k} ⊂ S_λ ⊗ S_μ iff μ is the complement of λ, with multiplicity one")
        .param("n", n)
        .param("k", k);
    run(b, || {
        let r = schur::rect_lr_scan(n, k);
        let w = r
            .counterexamples
            .iter()
            .map(|(l, m, c, comp)| format!("λ={l} μ={m} c={c} complement={comp:?}"))
            .collect::<Vec<_>>();
        Ok(Outcome::new(r.pass(), &r)
            .witnesses(w)
            .summary([format!("{} pairs, {} nonzero", r.pairs_checked, r.nonzero_pairs)]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecomposeOp {
    Wedge,
    Sym,
}

/// `Λ^d(Sym² ℂⁿ)` is multiplicity free with support the `Q1` partitions of
/// size `2d` and length at most `n`; `Sym^d(Sym² ℂⁿ)` is multiplicity free
/// with support the doubled partitions of `d` with length at most `n`.
pub fn decompose(op: DecomposeOp, d: usize, n: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("decompose", "Schur decomposition of Λ^d(Sym²) and Sym^d(Sym²)")
        .param("op", op)
        .param("d", d)
        .param("n", n);
    run(b, || decompose_outcome(op, d, n))
}

fn decompose_outcome(op: DecomposeOp, d: usize, n: usize) -> Result<Outcome> {
    let (v, expected): (_, Vec<Partition>) = match op {
        DecomposeOp::Wedge => (
            schur::wedge_of_sym2(d, n)?,
            q1_of_size(2 * d).partitions.into_iter().filter(|p| p.len() <= n).collect(),
        ),
        DecomposeOp::Sym => (
            schur::sym_of_sym2(d, n)?,
            partitions_of(d)
                .into_iter()
                .filter(|p| p.len() <= n)
                .map(|p| p.doubled())
                .collect(),
        ),
    };
    let mut support = v.support();
    let mut want = expected;
    support.sort();
    want.sort();
    let pass = support == want && v.max_coeff() <= 1;
    let mut w = Vec::new();
    if !pass {
        w.push(format!("got {v}, expected support {:?}", strings(&want)));
    }
    Ok(Outcome::new(pass, json!({ "expansion": v })).witnesses(w).summary([v.to_string()]))
}

/// The decomposition check over a range of degrees and ranks.
pub fn q1_decomposition(max_two_d: usize, ranks: std::ops::RangeInclusive<usize>) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("q1-decomposition", "Λ^d(Sym²) is multiplicity free with Q1 support")
        .param("max_2d", max_two_d)
        .param("ranks", format!("{}..={}", ranks.start(), ranks.end()));
    let cases: Vec<(usize, usize)> = ranks.flat_map(|n| (0..=max_two_d / 2).map(move |d| (d, n))).collect();
    run(b, || {
        let outcomes: Vec<(usize, usize, Outcome)> = cases
            .par_iter()
            .map(|&(d, n)| decompose_outcome(DecomposeOp::Wedge, d, n).map(|o| (d, n, o)))
            .collect::<Result<_>>()?;
        let mut w = Vec::new();
        for (d, n, o) in &outcomes {
            if !o.pass {
                w.push(format!("d={d} n={n}: {}", o.witnesses.join("; ")));
            }
        }
        Ok(Outcome::new(w.is_empty(), json!({ "cases": outcomes.len() }))
            .summary([format!("{} (d, n) cases", outcomes.len())])
            .witnesses(w))
    })
}

pub fn dimensions(max_n: usize, max_two_d: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("dimensions", "C(n(n+1)/2, d) = Σ_{λ ∈ Q1, |λ| = 2d} dim S_λ(ℂⁿ)")
        .param("max_n", max_n)
        .param("max_2d", max_two_d);
    run(b, || {
        let mut reports = Vec::new();
        for n in 1..=max_n {
            for d in 0..=max_two_d / 2 {
                reports.push(tca_a::dimension_consistency(n, d)?);
            }
        }
        let w: Vec<String> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("n={} d={}: {} / {} / {}", r.n, r.d, r.monomials, r.binomial, r.schur_sum))
            .collect();
        Ok(Outcome::new(w.is_empty(), &reports).witnesses(w))
    })
}

// --- the algebra A ---

pub fn pn_top(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("pn-top", "the top y-only component is spanned by Π y[i,j]").param("n", n), || {
        let r = tca_a::verify_pn_top(n)?;
        Ok(Outcome::new(r.pass, &r).summary([format!("dimension {} in degree {}", r.dimension, r.degree)]))
    })
}

pub fn unit_ideal(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("unit-ideal", "𝔪 + 𝔭ₙ = A: an element of 𝔭ₙ with nonzero residue").param("n", n), || {
        let (_, residue, r) = tca_a::unit_ideal_element(n)?;
        Ok(Outcome::new(r.pass, &r).summary([format!("residue {residue}")]))
    })
}

pub fn hwv(lambda: &Partition, n: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("hwv", "y(n)·x_λ is a highest weight vector of weight λ{n}")
        .param("lambda", lambda)
        .param("n", n);
    run(b, || {
        let r = tca_a::hwv_check(n, lambda)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.not_annihilating.clone())
            .summary([format!("target {}, weight {:?}", r.target, r.weight)]))
    })
}

pub fn hwv_scan(max_n: usize, max_size: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("hwv-scan", "y(n)·x_λ is a highest weight vector of weight λ{n}")
        .param("max_n", max_n)
        .param("max_size", max_size);
    run(b, || {
        let cases: Vec<(usize, Partition)> = (1..=max_n)
            .flat_map(|n| {
                (0..=max_size)
                    .flat_map(partitions_of)
                    .filter(move |l| l.len() <= n)
                    .map(move |l| (n, l))
            })
            .collect();
        let reports: Vec<tca_a::HwvReport> = cases
            .par_iter()
            .map(|(n, l)| tca_a::hwv_check(*n, l))
            .collect::<Result<_>>()?;
        let w: Vec<String> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| format!("n={} λ={}: {:?}", r.n, r.lambda, r.not_annihilating))
            .collect();
        Ok(Outcome::new(w.is_empty(), json!({ "cases": reports.len() }))
            .witnesses(w)
            .summary([format!("{} (n, λ) cases", reports.len())]))
    })
}

pub fn ess_bound(lambda: &Partition, n0: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("ess-bound", "the highest weight vector of S_λ lies in the ideal of the orbit of y(n₀)")
        .param("lambda", lambda)
        .param("n0", n0);
    run(b, || {
        let r = tca_a::ess_bound_check(lambda, n0)?;
        Ok(Outcome::new(r.pass, &r).summary([format!("λ = ({}){{{}}}, member: {}", r.mu, r.rank, r.member)]))
    })
}

pub fn nzd(n: usize, degree_bound: u32, samples: usize, seed: u64) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("nzd", "nonzerodivisors are exactly the elements outside the odd ideal")
        .param("n", n)
        .param("degree_bound", degree_bound)
        .param("samples", samples)
        .param("seed", seed);
    run(b, || {
        let r = tca_a::nzd_check(n, degree_bound, samples, seed)?;
        Ok(Outcome::new(r.pass, &r).witnesses(r.witnesses.clone()))
    })
}

// --- periplectic ---

pub fn iwasawa(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("iwasawa", "dim(𝔟ₙ + 𝔭𝔢ₙ) = 4n², dim(𝔟ₙ ∩ 𝔭𝔢ₙ) = n").param("n", n), || {
        let r = pe::iwasawa_check(n);
        Ok(Outcome::new(r.pass, &r).summary([format!(
            "dim b = {}, dim pe = {}, sum = {}, intersection = {}",
            r.dim_b, r.dim_pe, r.dim_sum, r.dim_intersection
        )]))
    })
}

pub fn brauer_compose(g: &str, f: &str) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("brauer-compose", "composition in the signed Brauer category")
        .param("g", g)
        .param("f", f);
    run(b, || {
        let (sg, g) = pe::parse_diagram(g)?;
        let (sf, f) = pe::parse_diagram(f)?;
        let (s, gf) = BrauerMorphism::compose(&g, &f)?;
        let sign = i64::from(s) * i64::from(sg) * i64::from(sf);
        let shown = if sign < 0 { format!("-({gf})") } else { gf.to_string() };
        Ok(Outcome::new(true, json!({ "sign": sign, "result": gf.to_string() })).summary([shown]))
    })
}

pub fn brauer_homdim(p: usize, q: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("brauer-homdim", "Hom dimensions of the signed Brauer category")
        .param("p", p)
        .param("q", q);
    run(b, || {
        let formula = pe::hom_dim(p, q);
        if formula > 5_000_000 {
            return Err(Error::GuardExceeded {
                what: "morphism enumeration".into(),
                estimate: formula,
                limit: 5_000_000,
            });
        }
        let counted = pe::enumerate_morphisms(p, q).len() as u128;
        Ok(Outcome::new(formula == counted, json!({ "formula": formula, "enumerated": counted }))
            .summary([formula.to_string()]))
    })
}

pub fn brauer_associativity(max_size: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("brauer-associativity", "composition is associative").param("max_size", max_size), || {
        let r = pe::associativity_exhaustive(max_size)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.failures.clone())
            .summary([format!("{} triples", r.triples_checked)]))
    })
}

/// Listing two edges in the opposite order negates a morphism, and
/// contracting them in the opposite order negates its action.
pub fn brauer_orientation(max_size: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("brauer-orientation", "an odd reordering of edges negates the morphism")
        .param("max_size", max_size);
    run(b, || {
        let mut morphisms = 0u64;
        let mut actions = 0u64;
        let mut w = Vec::new();
        for p in 2..=max_size {
            for q in (p % 2..=p - 2).step_by(2) {
                for m in pe::enumerate_morphisms(p, q) {
                    let edges = m.edges().to_vec();
                    if edges.len() < 2 {
                        continue;
                    }
                    let map: Vec<(usize, usize)> =
                        (1..=p).filter_map(|s| m.image(s).map(|t| (s, t))).collect();
                    let mut swapped = edges.clone();
                    swapped.swap(0, 1);
                    morphisms += 1;
                    let (s0, _) = BrauerMorphism::new(p, q, &edges, &map)?;
                    let (s1, m1) = BrauerMorphism::new(p, q, &swapped, &map)?;
                    if s0 != -s1 || m1 != m {
                        w.push(format!("{m}: signs {s0}, {s1}"));
                    }
                    if p <= 4 {
                        for word in basis_words(1, p) {
                            actions += 1;
                            let t = pe::Tensor::basis(word);
                            let a = pe::k_apply_ordered(&m, &edges, &t)?;
                            let b = pe::k_apply_ordered(&m, &swapped, &t)?;
                            if a != b.scale(-1) {
                                w.push(format!("{m}: action not negated"));
                            }
                        }
                    }
                }
            }
        }
        Ok(Outcome::new(w.is_empty(), json!({ "morphisms": morphisms, "actions": actions }))
            .witnesses(w)
            .summary([format!("{morphisms} morphisms, {actions} actions")]))
    })
}

fn basis_words(n: usize, len: usize) -> Vec<Vec<crate::gl::BasisVector>> {
    let letters: Vec<_> = crate::gl::BasisVector::all(n).collect();
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect()
    })
}

pub fn brauer_functor(n: usize, max_size: usize, trials: usize, seed: u64) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("brauer-functor", "the contraction functor respects composition")
        .param("n", n)
        .param("max_size", max_size)
        .param("trials", trials)
        .param("seed", seed);
    run(b, || {
        let r = pe::functor_check(n, max_size, trials, seed)?;
        Ok(Outcome::new(r.pass, &r).witnesses(r.failures.clone()))
    })
}

pub fn brauer_functor_exhaustive(n: usize, max_size: usize) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("brauer-functor-exhaustive", "the contraction functor respects composition")
        .param("n", n)
        .param("max_size", max_size);
    run(b, || {
        let r = pe::functor_check_exhaustive(n, max_size)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.failures.clone())
            .summary([format!("{} checks", r.checks)]))
    })
}

// --- φ ---

pub fn phi_leading(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("phi-leading", "leading terms of X, Y, Z").param("n", n), || {
        let r = phi::leading_term_table(n)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.mismatches.clone())
            .summary([format!("{} leading terms", r.checked)]))
    })
}

pub fn phi_inject(n: usize, max_degree: u32) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("phi-inject", "distinct X,Y,Z-monomials have distinct leading terms")
        .param("n", n)
        .param("max_degree", max_degree);
    run(b, || {
        let r = phi::injectivity_scan(n, max_degree)?;
        let w = r
            .zero_images
            .iter()
            .map(|m| format!("zero image: {m}"))
            .chain(r.non_multiplicative.iter().map(|m| format!("leading term not multiplicative: {m}")))
            .chain(r.collisions.iter().map(|m| format!("collision: {m}")))
            .chain(r.reconstruction_failures.iter().map(|m| format!("not reconstructed: {m}")))
            .collect::<Vec<_>>();
        Ok(Outcome::new(r.pass, &r)
            .witnesses(w)
            .summary([format!("{} monomials", r.monomials)]))
    })
}

pub fn phi_localize(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("phi-localize", "cleared-denominator rewriting identities").param("n", n), || {
        let r = phi::localization_identities_check(n)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.failures.clone())
            .summary([format!("{} identities, {} top-term claims", r.identities_checked, r.lower_term_checks)]))
    })
}

pub fn phi_extend(n: usize, max_central_degree: u32) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("phi-extend", "ker(ν∘φ) = 𝔪")
        .param("n", n)
        .param("max_central_degree", max_central_degree);
    run(b, || {
        let r = phi::extension_contraction_check(n, max_central_degree)?;
        Ok(Outcome::new(r.pass, &r)
            .witnesses(r.value_mismatches.clone())
            .summary([format!("{} monomials", r.monomials)]))
    })
}

pub fn phi_torus(n: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("phi-torus", "images of φ and the generators of A′ are torus invariant").param("n", n), || {
        let r = phi::t_invariance_check(n)?;
        Ok(Outcome::new(r.pass, &r).witnesses(r.failures.clone()))
    })
}

// --- Ext ---

pub fn ext(side: Side, i: usize, lambda: &Partition, mu: &Partition) -> Result<SuiteResult> {
    let b = SuiteBuilder::new("ext", "Ext between simples via the Koszul complex")
        .param("side", side)
        .param("i", i)
        .param("lambda", lambda)
        .param("mu", mu);
    run(b, || {
        let q = ExtQuery {
            side,
            i,
            lambda: lambda.clone(),
            mu: mu.clone(),
        };
        let reports = Branch::BOTH
            .iter()
            .map(|&br| koszul::ext_dim_branch(&q, br))
            .collect::<Result<Vec<_>>>()?;
        let summary = reports
            .iter()
            .map(|r| format!("{:?}: {} ({})", r.branch, r.multiplicity, r.convention))
            .collect::<Vec<_>>();
        Ok(Outcome::new(reports.iter().all(|r| r.stable), &reports).summary(summary))
    })
}

pub fn remark(dmax: usize) -> Result<SuiteResult> {
    run(SuiteBuilder::new("remark", "Sym(Sym²) and Λ(Sym²) have different Ext data at S_∅").param("dmax", dmax), || {
        let r = koszul::remark_report(dmax)?;
        let mut w = Vec::new();
        if !r.sym2_of_sym2_holds {
            w.push(format!("Sym²(Sym²) = {}", r.sym2_of_sym2));
        }
        if !r.counts_hold {
            w.push(format!("counts at ∅: {:?}", r.counts_at_empty));
        }
        w.extend(r.pieri.iter().filter(|l| !l.holds).map(|l| format!("Pieri d={}: {}", l.d, l.product)));
        let summary = r
            .counts_at_empty
            .iter()
            .map(|c| {
                format!(
                    "{:?} {:?}: {} partitions, {} simples",
                    c.side, c.branch, c.partitions, c.simples_with_shifts
                )
            })
            .chain(std::iter::once(format!(
                "Wedge claims with partitions transposed: rows vanish {}, solution counts {}",
                r.transposed_wedge.vanishing_are_rows, r.transposed_wedge.counts_match
            )))
            .collect::<Vec<_>>();
        Ok(Outcome::new(r.pass, &r).witnesses(w).warnings(r.warnings.clone()).summary(summary))
    })
}

// --- aggregation ---

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

type Job = Box<dyn Fn() -> Result<SuiteResult> + Send + Sync>;

fn jobs(profile: Profile, seed: u64) -> Vec<Job> {
    let quick = profile == Profile::Quick;
    let mut v: Vec<Job> = Vec::new();
    let (schur_rank, schur_2d) = if quick { (4, 8) } else { (6, 12) };
    v.push(Box::new(move || q1_decomposition(schur_2d, 2..=schur_rank)));
    let rect_max = if quick { 3 } else { 4 };
    for n in 1..=rect_max {
        for k in 1..=rect_max {
            v.push(Box::new(move || rect(n, k)));
        }
    }
    let (dim_n, dim_2d) = if quick { (3, 8) } else { (4, 10) };
    v.push(Box::new(move || dimensions(dim_n, dim_2d)));
    let algebra_n = if quick { 2 } else { 4 };
    for n in 1..=algebra_n {
        v.push(Box::new(move || pn_top(n)));
    }
    for n in 1..=algebra_n.min(3) {
        v.push(Box::new(move || unit_ideal(n)));
    }
    let hwv_size = if quick { 2 } else { 3 };
    v.push(Box::new(move || hwv_scan(2, hwv_size)));
    let ess: &[(&str, usize)] = if quick {
        &[("2", 1), ("3,1", 1), ("3,3", 1)]
    } else {
        &[("2", 1), ("3,1", 1), ("3,3", 1), ("3,3", 2), ("4,1,1", 1), ("4,4,2", 1)]
    };
    for &(l, n0) in ess {
        let l: Partition = l.parse().expect("literal partition");
        v.push(Box::new(move || ess_bound(&l, n0)));
    }
    let (nzd_deg, nzd_samples) = if quick { (4, 4) } else { (6, 8) };
    for n in 1..=2 {
        v.push(Box::new(move || nzd(n, nzd_deg, nzd_samples, seed)));
    }
    let iw = if quick { 2 } else { 6 };
    for n in 1..=iw {
        v.push(Box::new(move || iwasawa(n)));
    }
    let brauer_max = if quick { 4 } else { 6 };
    v.push(Box::new(move || brauer_associativity(brauer_max)));
    v.push(Box::new(move || brauer_orientation(brauer_max)));
    let trials = if quick { 100 } else { 200 };
    v.push(Box::new(move || brauer_functor(2, 6, trials, seed)));
    v.push(Box::new(move || brauer_functor_exhaustive(1, 4)));
    let phi_n = if quick { 2 } else { 3 };
    for n in 1..=phi_n {
        v.push(Box::new(move || phi_leading(n)));
        v.push(Box::new(move || phi_localize(n)));
        v.push(Box::new(move || phi_torus(n)));
    }
    v.push(Box::new(move || phi_inject(2, if quick { 3 } else { 4 })));
    if !quick {
        v.push(Box::new(|| phi_inject(3, 3)));
    }
    for n in 1..=2 {
        v.push(Box::new(move || phi_extend(n, 6)));
    }
    v.push(Box::new(move || remark(if quick { 4 } else { 6 })));
    v
}

/// Runs every suite of the profile on the current rayon pool; results come
/// back in a fixed order.
pub fn verify_all(profile: Profile, seed: u64, timing: bool) -> Vec<SuiteResult> {
    jobs(profile, seed)
        .par_iter()
        .enumerate()
        .map(|(k, job)| {
            let start = Instant::now();
            let mut r = job().unwrap_or_else(|e| {
                SuiteBuilder::new("internal", "")
                    .param("job", k)
                    .error(&e)
            });
            if timing {
                r.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            r
        })
        .collect()
}
