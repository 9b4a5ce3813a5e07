use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{kostka, SchurVector};
use crate::error::{Error, Result};
use crate::partition::{partitions_bounded, Partition};

/// Which power of the pair alphabet to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Exterior,
    Symmetric,
}

/// Monomials `xᵢxⱼ` with `i ≤ j` (weights of `Sym²`) or `i < j` (weights
/// of `Λ²`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairAlphabet {
    Symmetric,
    Alternating,
}

/// Polynomial with integer coefficients in `n` commuting variables, keyed by
/// exponent vectors of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, i64>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], 1);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, i64)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Precondition(format!(
                    "exponent vector {e:?} has length {}, expected {nvars}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u16]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u16>, c: i64) {
        if c == 0 {
            return;
        }
        let sum = self.coefficient(&e) + c;
        if sum == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        if self.nvars != other.nvars {
            return Err(Error::Precondition("variable counts differ".into()));
        }
        let mut acc: HashMap<Vec<u16>, i64> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u16> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert(0) += ca * cb;
            }
        }
        Ok(SymPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    /// `e_d` or `h_d` of the pair monomials in `n` variables, i.e. the
    /// character of `Λ^d` or `Sym^d` of `Sym²ℂⁿ` or `Λ²ℂⁿ`.
    pub fn power_of_pairs(kind: PowerKind, alphabet: PairAlphabet, d: usize, n: usize) -> SymPoly {
        let mut levels: Vec<HashMap<Vec<u16>, i64>> = vec![HashMap::new(); d + 1];
        levels[0].insert(vec![0; n], 1);
        for i in 0..n {
            let start = match alphabet {
                PairAlphabet::Symmetric => i,
                PairAlphabet::Alternating => i + 1,
            };
            for j in start..n {
                let step = |level: &HashMap<Vec<u16>, i64>| -> Vec<(Vec<u16>, i64)> {
                    level
                        .iter()
                        .map(|(e, c)| {
                            let mut e = e.clone();
                            e[i] += 1;
                            e[j] += 1;
                            (e, *c)
                        })
                        .collect()
                };
                let ks: Box<dyn Iterator<Item = usize>> = match kind {
                    PowerKind::Exterior => Box::new((1..=d).rev()),
                    PowerKind::Symmetric => Box::new(1..=d),
                };
                for k in ks {
                    for (e, c) in step(&levels[k - 1]) {
                        *levels[k].entry(e).or_insert(0) += c;
                    }
                }
            }
        }
        SymPoly {
            nvars: n,
            terms: levels.pop().unwrap_or_default().into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    /// The Schur polynomial `s_λ(x₁, …, xₙ)`.
    pub fn schur(lambda: &Partition, n: usize) -> SymPoly {
        let mut p = SymPoly::zero(n);
        if lambda.len() > n {
            return p;
        }
        for e in compositions(lambda.size(), n) {
            let c = kostka(lambda, &sorted_content(&e));
            if c != 0 {
                p.add_term(e, c as i64);
            }
        }
        p
    }

    /// `Ok` when invariant under every adjacent transposition; otherwise
    /// names a monomial whose swap has a different coefficient.
    pub fn check_symmetric(&self) -> Result<()> {
        for (e, c) in &self.terms {
            for i in 0..self.nvars.saturating_sub(1) {
                let mut s = e.clone();
                s.swap(i, i + 1);
                let other = self.coefficient(&s);
                if other != *c {
                    return Err(Error::NotSymmetric(format!(
                        "coefficient of {e:?} is {c} but of {s:?} is {other}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn expand(&self) -> Result<SchurVector> {
        schur_expand(self)
    }
}

fn sorted_content(e: &[u16]) -> Vec<usize> {
    let mut v: Vec<usize> = e.iter().map(|&x| x as usize).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Weak compositions of `m` into `n` parts.
fn compositions(m: usize, n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn go(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 >= cur.len() {
            if let Some(last) = cur.last_mut() {
                *last = left as u16;
                out.push(cur.clone());
            } else if left == 0 {
                out.push(Vec::new());
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v as u16;
            go(i + 1, left - v, cur, out);
        }
    }
    go(0, m, &mut cur, &mut out);
    out
}

/// Schur expansion of a symmetric polynomial. Dominant coefficients are
/// peeled off in decreasing lexicographic order using Kostka numbers, then
/// `Σ c_λ s_λ` is rebuilt monomial by monomial and compared with the input.
pub fn schur_expand(p: &SymPoly) -> Result<SchurVector> {
    p.check_symmetric()?;
    let n = p.nvars;
    let mut degrees: Vec<usize> = p
        .terms
        .keys()
        .map(|e| e.iter().map(|&x| x as usize).sum())
        .collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut out = SchurVector::new();
    for &deg in &degrees {
        let shapes = partitions_bounded(deg, deg, n);
        let dominant = |l: &Partition| {
            let mut e: Vec<u16> = l.parts().iter().map(|&x| x as u16).collect();
            e.resize(n, 0);
            e
        };
        let mut remaining: Vec<i64> = shapes.iter().map(|l| p.coefficient(&dominant(l))).collect();
        let mut found: Vec<(usize, i64)> = Vec::new();
        for i in 0..shapes.len() {
            let c = remaining[i];
            if c == 0 {
                continue;
            }
            found.push((i, c));
            for j in i..shapes.len() {
                let k = kostka(&shapes[i], shapes[j].parts()) as i64;
                remaining[j] -= c * k;
            }
        }

        for e in compositions(deg, n) {
            let content = sorted_content(&e);
            let rebuilt: i64 = found
                .iter()
                .map(|&(i, c)| c * kostka(&shapes[i], &content) as i64)
                .sum();
            if rebuilt != p.coefficient(&e) {
                return Err(Error::Inconsistent(format!(
                    "Schur reconstruction differs at monomial {e:?}: {rebuilt} vs {}",
                    p.coefficient(&e)
                )));
            }
        }
        for (i, c) in found {
            out.add(shapes[i].clone(), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn schur_polynomials_expand_to_themselves() {
        for lambda in ["3,1", "2,2", "2,1,1", "4"] {
            let l = p(lambda);
            let got = SymPoly::schur(&l, 3).expand().unwrap();
            if l.len() <= 3 {
                assert_eq!(got, SchurVector::single(l));
            }
        }
    }

    #[test]
    fn products_expand_by_pieri() {
        // s_1 · s_1 = s_2 + s_11 in three variables.
        let s1 = SymPoly::schur(&p("1"), 3);
        let got = s1.mul(&s1).unwrap().expand().unwrap();
        let want: SchurVector = [(p("2"), 1), (p("1,1"), 1)].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let q = SymPoly::from_terms(2, [(vec![2, 0], 1)]).unwrap();
        assert!(matches!(q.expand(), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn mixed_degree_input() {
        let one = SymPoly::one(2);
        let s21 = SymPoly::schur(&p("2,1"), 2);
        let sum = SymPoly::from_terms(
            2,
            one.terms().iter().chain(s21.terms()).map(|(e, c)| (e.clone(), *c)),
        )
        .unwrap();
        let want: SchurVector = [(Partition::empty(), 1), (p("2,1"), 1)].into_iter().collect();
        assert_eq!(sum.expand().unwrap(), want);
    }

    #[test]
    fn pair_power_sizes() {
        // dim Λ²(Sym²ℂ²) = C(3,2) = 3 and dim Sym²(Λ²ℂ⁴) = C(7,2) = 21.
        let total = |q: &SymPoly| q.terms().values().sum::<i64>();
        assert_eq!(total(&SymPoly::power_of_pairs(PowerKind::Exterior, PairAlphabet::Symmetric, 2, 2)), 3);
        assert_eq!(total(&SymPoly::power_of_pairs(PowerKind::Symmetric, PairAlphabet::Alternating, 2, 4)), 21);
    }
}
