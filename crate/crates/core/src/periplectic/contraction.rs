use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::brauer::{enumerate_morphisms, BrauerMorphism};
use super::omega_tilde;
use crate::error::{Error, Result};
use crate::gl::BasisVector;

/// Element of `V^{⊗L}` at rank `(n|n)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    slots: usize,
    terms: BTreeMap<Vec<BasisVector>, i64>,
}

impl Tensor {
    pub fn zero(slots: usize) -> Self {
        Tensor {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(word: Vec<BasisVector>) -> Self {
        let mut t = Tensor::zero(word.len());
        t.add_term(word, 1);
        t
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> &BTreeMap<Vec<BasisVector>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Vec<BasisVector>, c: i64) {
        debug_assert_eq!(word.len(), self.slots);
        let sum = self.terms.get(&word).copied().unwrap_or(0) + c;
        if sum == 0 {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, sum);
        }
    }

    pub fn scale(&self, c: i64) -> Tensor {
        let mut t = Tensor::zero(self.slots);
        for (w, v) in &self.terms {
            t.add_term(w.clone(), v * c);
        }
        t
    }
}

fn odd_count(entries: &[(usize, BasisVector)]) -> usize {
    entries.iter().filter(|(_, v)| v.is_odd()).count()
}

/// Contraction of one basis word. Edges are contracted in the order given;
/// for an edge on slots `p < q` the factor in slot `q` is moved left past
/// the factors in between, then the odd form is applied to the adjacent
/// pair after passing the factors in front of it. Survivors are permuted
/// into target order with the Koszul sign.
fn contract_word(
    edges: &[(usize, usize)],
    image: impl Fn(usize) -> Option<usize>,
    target: usize,
    word: &[BasisVector],
) -> Option<(i64, Vec<BasisVector>)> {
    let mut cur: Vec<(usize, BasisVector)> = word.iter().enumerate().map(|(k, &v)| (k + 1, v)).collect();
    let mut sign = 1i64;
    for &(a, b) in edges {
        let ia = cur.iter().position(|e| e.0 == a)?;
        let ib = cur.iter().position(|e| e.0 == b)?;
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        if cur[hi].1.is_odd() && odd_count(&cur[lo + 1..hi]) % 2 == 1 {
            sign = -sign;
        }
        let value = omega_tilde(cur[lo].1, cur[hi].1);
        if value == 0 {
            return None;
        }
        if odd_count(&cur[..lo]) % 2 == 1 {
            sign = -sign;
        }
        sign *= value;
        cur.remove(hi);
        cur.remove(lo);
    }
    let placed: Vec<(usize, BasisVector)> = cur
        .iter()
        .map(|&(s, v)| image(s).map(|t| (t, v)))
        .collect::<Option<_>>()?;
    for i in 0..placed.len() {
        for j in i + 1..placed.len() {
            if placed[i].1.is_odd() && placed[j].1.is_odd() && placed[i].0 > placed[j].0 {
                sign = -sign;
            }
        }
    }
    let mut out = vec![BasisVector::E(0); target];
    for (t, v) in placed {
        out[t - 1] = v;
    }
    Some((sign, out))
}

/// `𝒦` on a normal-form morphism (edges contracted in stored order).
pub fn k_apply(m: &BrauerMorphism, t: &Tensor) -> Result<Tensor> {
    k_apply_ordered(m, m.edges(), t)
}

/// `𝒦` with the edges of `m` contracted in the given orientation order.
pub fn k_apply_ordered(m: &BrauerMorphism, edges: &[(usize, usize)], t: &Tensor) -> Result<Tensor> {
    if t.slots() != m.source() {
        return Err(Error::Precondition(format!(
            "tensor has {} slots, morphism expects {}",
            t.slots(),
            m.source()
        )));
    }
    let mut out = Tensor::zero(m.target());
    for (word, c) in t.terms() {
        if let Some((s, w)) = contract_word(edges, |x| m.image(x), m.target(), word) {
            out.add_term(w, s * c);
        }
    }
    Ok(out)
}

fn words(n: usize, len: usize) -> Vec<Vec<BasisVector>> {
    let letters: Vec<BasisVector> = BasisVector::all(n).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorReport {
    pub n: usize,
    pub mode: String,
    pub max_size: usize,
    pub seed: Option<u64>,
    pub checks: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn check_pair(g: &BrauerMorphism, f: &BrauerMorphism, word: &[BasisVector]) -> Result<Option<String>> {
    let (sign, gf) = BrauerMorphism::compose(g, f)?;
    let t = Tensor::basis(word.to_vec());
    let lhs = k_apply(&gf, &t)?.scale(i64::from(sign));
    let rhs = k_apply(g, &k_apply(f, &t)?)?;
    Ok((lhs != rhs).then(|| {
        let w: Vec<String> = word.iter().map(ToString::to_string).collect();
        format!("f = {f}, g = {g}, t = {}", w.join("⊗"))
    }))
}

/// `𝒦(g∘f) = 𝒦(g)𝒦(f)` on every composable pair with source size at most
/// `max_size` and every basis tensor.
pub fn functor_check_exhaustive(n: usize, max_size: usize) -> Result<FunctorReport> {
    let mut jobs = Vec::new();
    for p in 0..=max_size {
        for q in (p % 2..=p).step_by(2) {
            for r in (q % 2..=q).step_by(2) {
                jobs.push((p, q, r));
            }
        }
    }
    let results: Vec<(u64, Vec<String>)> = jobs
        .par_iter()
        .map(|&(p, q, r)| -> Result<(u64, Vec<String>)> {
            let ws = words(n, p);
            let mut checks = 0u64;
            let mut fails = Vec::new();
            for f in enumerate_morphisms(p, q) {
                for g in enumerate_morphisms(q, r) {
                    for w in &ws {
                        checks += 1;
                        if let Some(msg) = check_pair(&g, &f, w)? {
                            if fails.len() < 4 {
                                fails.push(msg);
                            }
                        }
                    }
                }
            }
            Ok((checks, fails))
        })
        .collect::<Result<_>>()?;
    let checks = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).take(8).collect();
    Ok(FunctorReport {
        n,
        mode: "exhaustive".into(),
        max_size,
        seed: None,
        checks,
        pass: failures.is_empty(),
        failures,
    })
}

/// Seeded random composable pairs and basis tensors; trial `k` uses the
/// stream `seed + k`, so results do not depend on scheduling.
pub fn functor_check(n: usize, max_size: usize, trials: usize, seed: u64) -> Result<FunctorReport> {
    let results: Vec<Option<String>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let p = rng.gen_range(0..=max_size);
            let q = p % 2 + 2 * rng.gen_range(0..=p / 2);
            let r = q % 2 + 2 * rng.gen_range(0..=q / 2);
            let fs = enumerate_morphisms(p, q);
            let gs = enumerate_morphisms(q, r);
            let f = &fs[rng.gen_range(0..fs.len())];
            let g = &gs[rng.gen_range(0..gs.len())];
            let letters: Vec<BasisVector> = BasisVector::all(n).collect();
            let word: Vec<BasisVector> = (0..p).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
            check_pair(g, f, &word)
        })
        .collect::<Result<_>>()?;
    let failures: Vec<String> = results.into_iter().flatten().take(8).collect();
    Ok(FunctorReport {
        n,
        mode: "random".into(),
        max_size,
        seed: Some(seed),
        checks: trials as u64,
        pass: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periplectic::parse_diagram;
    use BasisVector::{E, F};

    #[test]
    fn single_cap_examples() {
        let (_, cap) = parse_diagram("2->0 : (1 2)").unwrap();
        let r = k_apply(&cap, &Tensor::basis(vec![E(1), F(1)])).unwrap();
        assert_eq!(r.terms().values().map(|c| c.abs()).sum::<i64>(), 1);
        let r2 = k_apply(&cap, &Tensor::basis(vec![F(1), E(1)])).unwrap();
        assert_eq!(r2.terms().values().map(|c| c.abs()).sum::<i64>(), 1);
        assert!(k_apply(&cap, &Tensor::basis(vec![E(1), E(2)])).unwrap().is_zero());
        assert!(k_apply(&cap, &Tensor::basis(vec![E(1), F(2)])).unwrap().is_zero());
    }

    #[test]
    fn identity_leaves_tensors_alone() {
        let t = Tensor::basis(vec![F(1), E(2), F(2)]);
        assert_eq!(k_apply(&BrauerMorphism::identity(3), &t).unwrap(), t);
    }

    #[test]
    fn swapping_odd_factors_costs_a_sign() {
        let (_, swap) = parse_diagram("2->2 : map 1:2 2:1").unwrap();
        let t = Tensor::basis(vec![F(1), F(2)]);
        let mut want = Tensor::zero(2);
        want.add_term(vec![F(2), F(1)], -1);
        assert_eq!(k_apply(&swap, &t).unwrap(), want);
        let t = Tensor::basis(vec![E(1), F(2)]);
        assert_eq!(k_apply(&swap, &t).unwrap(), Tensor::basis(vec![F(2), E(1)]));
    }

    #[test]
    fn edge_order_is_an_orientation() {
        // Contracting the same two edges in the opposite order negates.
        let (_, m) = parse_diagram("4->0 : (1 2)(3 4)").unwrap();
        let (_, m2) = parse_diagram("6->2 : (1 4)(2 6)").unwrap();
        for (morph, rev) in [(&m, vec![(3, 4), (1, 2)]), (&m2, vec![(2, 6), (1, 4)])] {
            for w in words(2, morph.source()) {
                let t = Tensor::basis(w);
                let a = k_apply(morph, &t).unwrap();
                let b = k_apply_ordered(morph, &rev, &t).unwrap();
                assert_eq!(a, b.scale(-1));
            }
        }
    }

    #[test]
    fn prefix_free_rule_is_not_orientation_consistent() {
        // Without the sign for passing the form over earlier factors,
        // e1 f1 e1 f1 contracts to the same value in both edge orders.
        let word = [E(1), F(1), E(1), F(1)];
        let naive = |edges: &[(usize, usize)]| {
            let mut cur: Vec<(usize, BasisVector)> = word.iter().enumerate().map(|(k, &v)| (k + 1, v)).collect();
            let mut sign = 1;
            for &(a, b) in edges {
                let ia = cur.iter().position(|e| e.0 == a).unwrap();
                let ib = cur.iter().position(|e| e.0 == b).unwrap();
                if odd_count(&cur[ia + 1..ib]) % 2 == 1 {
                    sign = -sign;
                }
                sign *= omega_tilde(cur[ia].1, cur[ib].1);
                cur.remove(ib);
                cur.remove(ia);
            }
            sign
        };
        assert_eq!(naive(&[(1, 2), (3, 4)]), naive(&[(3, 4), (1, 2)]));
        let (_, m) = parse_diagram("4->0 : (1 2)(3 4)").unwrap();
        let t = Tensor::basis(word.to_vec());
        assert_eq!(k_apply(&m, &t).unwrap(), k_apply_ordered(&m, &[(3, 4), (1, 2)], &t).unwrap().scale(-1));
    }

    #[test]
    fn functoriality_exhaustive_rank_one() {
        let r = functor_check_exhaustive(1, 4).unwrap();
        assert!(r.pass, "{:?}", r.failures);
    }

    #[test]
    fn functoriality_random_rank_two() {
        let r = functor_check(2, 6, 200, 7).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.checks, 200);
    }
}
