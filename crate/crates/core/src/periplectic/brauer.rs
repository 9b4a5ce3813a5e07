use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Normal-form basis morphism `L = {1..source} → L′ = {1..target}`: an
/// oriented matching whose edges are stored sorted (the orientation sign is
/// carried separately) and a bijection from the unmatched points onto `L′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerMorphism {
    source: usize,
    target: usize,
    edges: Vec<(usize, usize)>,
    /// `map[s − 1]` is the image of `s`, or 0 when `s` is matched.
    map: Vec<usize>,
}

/// Sign of the permutation sorting `v`.
fn sort_sign<T: Ord>(v: &[T]) -> i8 {
    let inversions = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] > v[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl BrauerMorphism {
    /// Builds `(sign, normal form)` from edges listed in orientation order
    /// and the map on unmatched points. Endpoints are 1-based.
    pub fn new(
        source: usize,
        target: usize,
        edges: &[(usize, usize)],
        map: &[(usize, usize)],
    ) -> Result<(i8, BrauerMorphism)> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        let mut used = vec![false; source + 1];
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > source {
                    return bad(format!("edge endpoint {x} outside 1..{source}"));
                }
                if used[x] {
                    return bad(format!("point {x} used twice"));
                }
                used[x] = true;
            }
            norm.push((a.min(b), a.max(b)));
        }
        if source < 2 * edges.len() || source - 2 * edges.len() != target {
            return bad(format!("{} edges cannot map {source} points onto {target}", edges.len()));
        }
        let mut images = vec![0usize; source];
        let mut hit = vec![false; target + 1];
        for &(s, t) in map {
            if s == 0 || s > source || used[s] || images[s - 1] != 0 {
                return bad(format!("map entry {s}:{t} has an invalid source"));
            }
            if t == 0 || t > target || hit[t] {
                return bad(format!("map entry {s}:{t} has an invalid target"));
            }
            images[s - 1] = t;
            hit[t] = true;
        }
        if (1..=source).any(|s| !used[s] && images[s - 1] == 0) {
            return bad("map does not cover every unmatched point".into());
        }
        let sign = sort_sign(&norm);
        norm.sort_unstable();
        Ok((
            sign,
            BrauerMorphism {
                source,
                target,
                edges: norm,
                map: images,
            },
        ))
    }

    /// Unmatched points sent to `1..q` in increasing order.
    pub fn with_order_preserving_map(source: usize, edges: &[(usize, usize)]) -> Result<(i8, BrauerMorphism)> {
        let matched: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let map: Vec<(usize, usize)> = (1..=source)
            .filter(|s| !matched.contains(s))
            .enumerate()
            .map(|(k, s)| (s, k + 1))
            .collect();
        let target = map.len();
        Self::new(source, target, edges, &map)
    }

    pub fn identity(n: usize) -> BrauerMorphism {
        BrauerMorphism {
            source: n,
            target: n,
            edges: Vec::new(),
            map: (1..=n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Image of an unmatched point.
    pub fn image(&self, s: usize) -> Option<usize> {
        match self.map[s - 1] {
            0 => None,
            t => Some(t),
        }
    }

    /// Super degree: the number of edges.
    pub fn degree(&self) -> usize {
        self.edges.len()
    }

    /// `g ∘ f`: the edges of `f`, then the edges of `g` pulled back along
    /// `f`, renormalized with the sign of the reordering.
    pub fn compose(g: &BrauerMorphism, f: &BrauerMorphism) -> Result<(i8, BrauerMorphism)> {
        if f.target != g.source {
            return Err(Error::Precondition(format!(
                "cannot compose {}->{} after {}->{}",
                g.source, g.target, f.source, f.target
            )));
        }
        let mut preimage = vec![0usize; f.target + 1];
        for s in 1..=f.source {
            if let Some(t) = f.image(s) {
                preimage[t] = s;
            }
        }
        let edges: Vec<(usize, usize)> = f
            .edges
            .iter()
            .copied()
            .chain(g.edges.iter().map(|&(a, b)| (preimage[a], preimage[b])))
            .collect();
        let map: Vec<(usize, usize)> = (1..=f.source)
            .filter_map(|s| f.image(s).and_then(|t| g.image(t)).map(|u| (s, u)))
            .collect();
        BrauerMorphism::new(f.source, g.target, &edges, &map)
    }
}

impl fmt::Display for BrauerMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} :", self.source, self.target)?;
        for (a, b) in &self.edges {
            write!(f, " ({a} {b})")?;
        }
        if self.target > 0 {
            f.write_str(" map")?;
            for s in 1..=self.source {
                if let Some(t) = self.image(s) {
                    write!(f, " {s}:{t}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for BrauerMorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `P->Q : (a b)(c d) map i:j i:j`. Edges are listed in orientation
/// order; without `map`, unmatched points go to `1..Q` in increasing order.
pub fn parse_diagram(text: &str) -> Result<(i8, BrauerMorphism)> {
    let perr = |m: &str| Error::Parse(format!("diagram `{text}`: {m}"));
    let (head, body) = match text.split_once(':') {
        Some((h, b)) if h.contains("->") => (h, b),
        _ if text.contains("->") && !text.contains(':') => (text, ""),
        _ => return Err(perr("expected `P->Q : ...`")),
    };
    let (p, q) = head.split_once("->").ok_or_else(|| perr("missing `->`"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| perr(&format!("bad number `{}`", s.trim())));
    let (p, q) = (num(p)?, num(q)?);

    let (edge_part, map_part) = match body.find("map") {
        Some(k) => (&body[..k], Some(&body[k + 3..])),
        None => (body, None),
    };
    let mut edges = Vec::new();
    let mut rest = edge_part.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| perr("expected `(`"))?;
        let close = inner.find(')').ok_or_else(|| perr("unclosed `(`"))?;
        let pts: Vec<&str> = inner[..close].split_whitespace().collect();
        if pts.len() != 2 {
            return Err(perr("an edge has exactly two endpoints"));
        }
        edges.push((num(pts[0])?, num(pts[1])?));
        rest = inner[close + 1..].trim_start();
    }
    let out = match map_part {
        None => {
            let (s, m) = BrauerMorphism::with_order_preserving_map(p, &edges)?;
            if m.target() != q {
                return Err(perr("target size does not match the edges"));
            }
            (s, m)
        }
        Some(m) => {
            let pairs = m
                .split_whitespace()
                .map(|tok| {
                    let (a, b) = tok.split_once(':').ok_or_else(|| perr(&format!("bad map entry `{tok}`")))?;
                    Ok((num(a)?, num(b)?))
                })
                .collect::<Result<Vec<_>>>()?;
            BrauerMorphism::new(p, q, &edges, &pairs)?
        }
    };
    Ok(out)
}

/// `|Hom(p, q)| = C(p, 2r)·(2r − 1)!!·q!` with `p − 2r = q`.
pub fn hom_dim(p: usize, q: usize) -> u128 {
    if q > p || (p - q) % 2 == 1 {
        return 0;
    }
    let r = (p - q) / 2;
    let choose = crate::tca_a::binomial(p as u128, 2 * r as u128);
    let double_factorial: u128 = (1..2 * r as u128).step_by(2).product();
    let factorial: u128 = (1..=q as u128).product();
    choose * double_factorial * factorial
}

/// Every normal-form morphism `p → q`, in a fixed order.
pub fn enumerate_morphisms(p: usize, q: usize) -> Vec<BrauerMorphism> {
    if q > p || (p - q) % 2 == 1 {
        return Vec::new();
    }
    let r = (p - q) / 2;
    let mut matchings = Vec::new();
    fn matchings_of(free: &[usize], r: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if r == 0 {
            out.push(cur.clone());
            return;
        }
        // The smallest endpoint of the next edge is after the previous one.
        let after = cur.last().map_or(0, |e| e.0);
        for (k, &a) in free.iter().enumerate() {
            if a <= after {
                continue;
            }
            for (l, &b) in free.iter().enumerate().skip(k + 1) {
                let rest: Vec<usize> = free
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != k && m != l)
                    .map(|(_, &x)| x)
                    .collect();
                cur.push((a, b));
                matchings_of(&rest, r - 1, cur, out);
                cur.pop();
            }
        }
    }
    let points: Vec<usize> = (1..=p).collect();
    matchings_of(&points, r, &mut Vec::new(), &mut matchings);

    let perms = permutations(q);
    let mut out = Vec::with_capacity(matchings.len() * perms.len());
    for m in &matchings {
        let matched: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
        let free: Vec<usize> = (1..=p).filter(|s| !matched.contains(s)).collect();
        for perm in &perms {
            let map: Vec<(usize, usize)> = free.iter().zip(perm).map(|(&s, &t)| (s, t)).collect();
            let (sign, morph) = BrauerMorphism::new(p, q, m, &map).expect("enumerated data is valid");
            debug_assert_eq!(sign, 1);
            out.push(morph);
        }
    }
    out
}

fn permutations(q: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(q - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, q);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Integer combination of basis morphisms with a common source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    source: usize,
    target: usize,
    terms: BTreeMap<BrauerMorphism, i64>,
}

impl HomElement {
    pub fn zero(source: usize, target: usize) -> Self {
        HomElement {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(sign: i8, m: BrauerMorphism) -> Self {
        let mut h = HomElement::zero(m.source, m.target);
        h.add_term(m, i64::from(sign));
        h
    }

    pub fn terms(&self) -> &BTreeMap<BrauerMorphism, i64> {
        &self.terms
    }

    pub fn add_term(&mut self, m: BrauerMorphism, c: i64) {
        let sum = self.terms.get(&m).copied().unwrap_or(0) + c;
        if sum == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self ∘ other`, extended bilinearly.
    pub fn compose(&self, other: &HomElement) -> Result<HomElement> {
        let mut out = HomElement::zero(other.source, self.target);
        for (g, cg) in &self.terms {
            for (f, cf) in &other.terms {
                let (s, m) = BrauerMorphism::compose(g, f)?;
                out.add_term(m, i64::from(s) * cg * cf);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub max_size: usize,
    pub morphisms: usize,
    pub compositions_tabulated: usize,
    pub triples_checked: u64,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Checks `(h∘g)∘f = h∘(g∘f)` with signs on every composable triple with
/// source size at most `max_size`, using precomputed composition tables.
pub fn associativity_exhaustive(max_size: usize) -> Result<AssociativityReport> {
    let mut homs: HashMap<(usize, usize), Vec<BrauerMorphism>> = HashMap::new();
    let mut index: HashMap<(usize, usize), HashMap<BrauerMorphism, u32>> = HashMap::new();
    for p in 0..=max_size {
        for q in (p % 2..=p).step_by(2) {
            let list = enumerate_morphisms(p, q);
            index.insert((p, q), list.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect());
            homs.insert((p, q), list);
        }
    }
    // table[(p,q,r)][f·|H(q,r)| + g] = ±(index of g∘f in H(p,r) + 1).
    let mut tables: HashMap<(usize, usize, usize), Vec<i32>> = HashMap::new();
    let mut tabulated = 0;
    for (&(p, q), fs) in &homs {
        for r in (q % 2..=q).step_by(2) {
            let gs = &homs[&(q, r)];
            let idx = &index[&(p, r)];
            let mut t = Vec::with_capacity(fs.len() * gs.len());
            for f in fs {
                for g in gs {
                    let (s, m) = BrauerMorphism::compose(g, f)?;
                    t.push(i32::from(s) * (idx[&m] as i32 + 1));
                }
            }
            tabulated += t.len();
            tables.insert((p, q, r), t);
        }
    }

    let mut triples = 0u64;
    let mut failures = Vec::new();
    let mut chains = Vec::new();
    for p in 0..=max_size {
        for q in (p % 2..=p).step_by(2) {
            for r in (q % 2..=q).step_by(2) {
                for s in (r % 2..=r).step_by(2) {
                    chains.push((p, q, r, s));
                }
            }
        }
    }
    for (p, q, r, s) in chains {
        let (nf, ng, nh) = (homs[&(p, q)].len(), homs[&(q, r)].len(), homs[&(r, s)].len());
        let nqs = homs[&(q, s)].len();
        let (t_pqr, t_prs, t_qrs, t_pqs) = (&tables[&(p, q, r)], &tables[&(p, r, s)], &tables[&(q, r, s)], &tables[&(p, q, s)]);
        let bad: Vec<(usize, usize, usize)> = (0..nf)
            .into_par_iter()
            .flat_map_iter(|f| {
                let mut local = Vec::new();
                for g in 0..ng {
                    let gf = t_pqr[f * ng + g];
                    let (sg, ig) = (gf.signum(), gf.unsigned_abs() as usize - 1);
                    for h in 0..nh {
                        let left = sg * t_prs[ig * nh + h];
                        let hg = t_qrs[g * nh + h];
                        let right = hg.signum() * t_pqs[f * nqs + hg.unsigned_abs() as usize - 1];
                        if left != right && local.len() < 4 {
                            local.push((f, g, h));
                        }
                    }
                }
                local
            })
            .collect();
        triples += (nf * ng * nh) as u64;
        for (f, g, h) in bad.into_iter().take(8usize.saturating_sub(failures.len())) {
            failures.push(format!(
                "f = {}, g = {}, h = {}",
                homs[&(p, q)][f], homs[&(q, r)][g], homs[&(r, s)][h]
            ));
        }
    }
    Ok(AssociativityReport {
        max_size,
        morphisms: homs.values().map(Vec::len).sum(),
        compositions_tabulated: tabulated,
        triples_checked: triples,
        pass: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        for (p, q) in [(4, 2), (3, 1), (2, 0), (3, 3)] {
            for m in enumerate_morphisms(p, q) {
                assert_eq!(BrauerMorphism::compose(&BrauerMorphism::identity(q), &m).unwrap(), (1, m.clone()));
                assert_eq!(BrauerMorphism::compose(&m, &BrauerMorphism::identity(p)).unwrap(), (1, m.clone()));
            }
        }
    }

    #[test]
    fn composing_two_caps() {
        let (s1, f) = parse_diagram("4->2 : (3 4) map 1:1 2:2").unwrap();
        let (s2, g) = parse_diagram("2->0 : (1 2)").unwrap();
        assert_eq!((s1, s2), (1, 1));
        let (sign, h) = BrauerMorphism::compose(&g, &f).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(h.edges(), &[(1, 2), (3, 4)]);
    }

    #[test]
    fn swapping_edges_flips_sign() {
        let (a, m1) = BrauerMorphism::new(4, 0, &[(1, 2), (3, 4)], &[]).unwrap();
        let (b, m2) = BrauerMorphism::new(4, 0, &[(3, 4), (1, 2)], &[]).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(a, -b);
        // Endpoint order inside an edge carries no sign.
        let (c, _) = BrauerMorphism::new(4, 0, &[(2, 1), (4, 3)], &[]).unwrap();
        assert_eq!(c, a);
        let (d, _) = BrauerMorphism::new(6, 0, &[(5, 6), (3, 4), (1, 2)], &[]).unwrap();
        assert_eq!(d, -1);
    }

    #[test]
    fn invalid_morphisms_are_rejected() {
        assert!(BrauerMorphism::new(3, 1, &[(1, 1)], &[(2, 1)]).is_err());
        assert!(BrauerMorphism::new(3, 1, &[(1, 2)], &[]).is_err());
        assert!(BrauerMorphism::new(2, 2, &[], &[(1, 1), (2, 1)]).is_err());
        assert!(BrauerMorphism::new(2, 0, &[(1, 3)], &[]).is_err());
        let f = BrauerMorphism::identity(2);
        let g = BrauerMorphism::identity(3);
        assert!(BrauerMorphism::compose(&g, &f).is_err());
    }

    #[test]
    fn hom_dim_matches_enumeration() {
        assert_eq!(hom_dim(2, 0), 1);
        assert_eq!(hom_dim(2, 2), 2);
        assert_eq!(hom_dim(3, 2), 0);
        for p in 0..=8 {
            for q in 0..=p {
                let listed = enumerate_morphisms(p, q);
                assert_eq!(listed.len() as u128, hom_dim(p, q), "({p},{q})");
                let mut sorted = listed.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), listed.len());
            }
        }
    }

    #[test]
    fn degrees_add() {
        for f in enumerate_morphisms(4, 2) {
            for g in enumerate_morphisms(2, 0) {
                let (_, h) = BrauerMorphism::compose(&g, &f).unwrap();
                assert_eq!(h.degree(), f.degree() + g.degree());
            }
        }
    }

    #[test]
    fn parser_round_trip() {
        for p in 0..=5 {
            for q in (p % 2..=p).step_by(2) {
                for m in enumerate_morphisms(p, q) {
                    assert_eq!(parse_diagram(&m.to_string()).unwrap(), (1, m.clone()));
                }
            }
        }
        assert!(parse_diagram("4->2 : (1 2").is_err());
        assert!(parse_diagram("4->1 : (1 2)").is_err());
        assert!(parse_diagram("nonsense").is_err());
        assert_eq!(parse_diagram("2->2").unwrap(), (1, BrauerMorphism::identity(2)));
    }

    #[test]
    fn associativity_small() {
        let r = associativity_exhaustive(4).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert!(r.triples_checked > 0);
    }

    #[test]
    fn hom_elements_compose_bilinearly() {
        let (s, f) = parse_diagram("4->2 : (1 2)").unwrap();
        let (t, f2) = parse_diagram("4->2 : (3 4)").unwrap();
        let mut sum = HomElement::basis(s, f);
        sum.add_term(f2, i64::from(t));
        let cap = HomElement::basis(1, parse_diagram("2->0 : (1 2)").unwrap().1);
        let composed = cap.compose(&sum).unwrap();
        // Both terms land on (1 2)(3 4), with signs +1 and −1.
        assert!(composed.is_zero());
    }
}
