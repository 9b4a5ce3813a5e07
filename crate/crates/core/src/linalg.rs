//! Exact linear algebra over `ℚ`.
//!
//! Two elimination routes are provided. The sparse route keeps rows as sorted
//! `(column, value)` lists and eliminates with rational arithmetic; the dense
//! route clears denominators and runs fraction-free Bareiss elimination over
//! `ℤ`. `Strategy::Auto` picks one by density and the test-suite checks that
//! the two agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse vector: strictly increasing column indices, nonzero values.
pub type SparseVec = Vec<(usize, BigRational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Sparse,
    Bareiss,
}

/// Density above which `Auto` switches to fraction-free elimination.
const DENSE_THRESHOLD: f64 = 0.35;
/// Dense elimination is only considered below this many entries.
const DENSE_MAX_ENTRIES: usize = 40_000;

pub fn sparse_from_map(map: &BTreeMap<usize, BigRational>) -> SparseVec {
    map.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(&c, v)| (c, v.clone()))
        .collect()
}

/// `a + factor·b` on sparse vectors.
pub fn axpy(a: &SparseVec, factor: &BigRational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &SparseVec, factor: &BigRational) -> SparseVec {
    v.iter().map(|(c, x)| (*c, x * factor)).collect()
}

/// Row-echelon basis that grows one vector at a time. Each stored row has
/// leading coefficient one, and remembers which combination of the inserted
/// vectors produced it, so membership queries come with a certificate.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns the remainder together with
    /// the combination of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut used: SparseVec = Vec::new();
        loop {
            let Some(&(lead, ref coeff)) = v.first() else {
                break;
            };
            let Some((row, tag)) = self.pivots.get(&lead) else {
                break;
            };
            let factor = -coeff.clone();
            v = axpy(&v, &factor, row);
            used = axpy(&used, &-factor, tag);
        }
        (v, used)
    }

    /// Inserts `v`; returns `true` when it was independent of the basis.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rest, used) = self.reduce(v);
        let Some((lead, coeff)) = rest.first().cloned() else {
            return false;
        };
        let inv = coeff.recip();
        // rest = v - Σ used·inserted, so the new row is (e_id - used)/coeff.
        let tag = scale(&axpy(&vec![(id, BigRational::one())], &-BigRational::one(), &used), &inv);
        self.pivots.insert(lead, (scale(&rest, &inv), tag));
        true
    }

    /// Whether `v` lies in the span; if it does, coefficients `c` with
    /// `v = Σ c_k · inserted_k` are returned.
    pub fn express(&self, v: SparseVec) -> Option<SparseVec> {
        let (rest, used) = self.reduce(v);
        rest.is_empty().then_some(used)
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// A sparse rational matrix stored by rows.
#[derive(Clone, Debug)]
pub struct Matrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.iter().all(|(c, _)| *c < ncols)));
        Matrix { ncols, rows }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[SparseVec]) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        Matrix {
            ncols: columns.len(),
            rows,
        }
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        Matrix { ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn density(&self) -> f64 {
        let cells = self.nrows() * self.ncols;
        if cells == 0 {
            return 0.0;
        }
        self.rows.iter().map(Vec::len).sum::<usize>() as f64 / cells as f64
    }

    fn pick(&self, strategy: Strategy) -> Strategy {
        match strategy {
            Strategy::Auto
                if self.density() > DENSE_THRESHOLD
                    && self.nrows() * self.ncols <= DENSE_MAX_ENTRIES =>
            {
                Strategy::Bareiss
            }
            Strategy::Auto => Strategy::Sparse,
            s => s,
        }
    }

    pub fn rank(&self, strategy: Strategy) -> usize {
        match self.pick(strategy) {
            Strategy::Bareiss => bareiss_echelon(self.to_integer_rows(), self.ncols).pivots.len(),
            _ => {
                let mut basis = EchelonBasis::new();
                for r in &self.rows {
                    basis.insert(r.clone());
                }
                basis.rank()
            }
        }
    }

    /// Solves `A x = b`. Returns `None` when the system is inconsistent;
    /// free variables are set to zero.
    pub fn solve(&self, b: &SparseVec, strategy: Strategy) -> Option<Vec<BigRational>> {
        match self.pick(strategy) {
            Strategy::Bareiss => self.solve_bareiss(b),
            _ => self.solve_sparse(b),
        }
    }

    fn solve_sparse(&self, b: &SparseVec) -> Option<Vec<BigRational>> {
        let mut basis = EchelonBasis::new();
        for col in self.columns() {
            basis.insert(col);
        }
        let combo = basis.express(b.clone())?;
        let mut x = vec![BigRational::zero(); self.ncols];
        for (j, v) in combo {
            x[j] = v;
        }
        Some(x)
    }

    fn solve_bareiss(&self, b: &SparseVec) -> Option<Vec<BigRational>> {
        let mut aug: Vec<SparseVec> = self.rows.clone();
        let bmap: BTreeMap<usize, BigRational> = b.iter().cloned().collect();
        for (i, row) in aug.iter_mut().enumerate() {
            if let Some(v) = bmap.get(&i) {
                row.push((self.ncols, v.clone()));
            }
        }
        if bmap.keys().any(|&i| i >= self.nrows()) {
            return None;
        }
        let aug = Matrix {
            ncols: self.ncols + 1,
            rows: aug,
        };
        let ech = bareiss_echelon(aug.to_integer_rows(), aug.ncols);
        if ech.pivots.iter().any(|&(_, c)| c == self.ncols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.ncols];
        for &(r, c) in ech.pivots.iter().rev() {
            let row = &ech.rows[r];
            let mut acc = BigRational::from_integer(row[self.ncols].clone());
            for (j, xj) in x.iter().enumerate().skip(c + 1).take(self.ncols - c - 1) {
                if !xj.is_zero() && !row[j].is_zero() {
                    acc -= BigRational::from_integer(row[j].clone()) * xj;
                }
            }
            x[c] = acc / BigRational::from_integer(row[c].clone());
        }
        Some(x)
    }

    /// Basis of the right nullspace `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut basis = EchelonBasis::new();
        for r in &self.rows {
            basis.insert(r.clone());
        }
        // Back-substitute to reduced row-echelon form.
        let mut rref: BTreeMap<usize, SparseVec> =
            basis.pivots.into_iter().map(|(c, (r, _))| (c, r)).collect();
        let pivot_cols: Vec<usize> = rref.keys().copied().collect();
        for &p in pivot_cols.iter().rev() {
            let prow = rref[&p].clone();
            for &q in pivot_cols.iter().filter(|&&q| q < p) {
                let row = &rref[&q];
                if let Ok(pos) = row.binary_search_by_key(&p, |e| e.0) {
                    let factor = -row[pos].1.clone();
                    let updated = axpy(row, &factor, &prow);
                    rref.insert(q, updated);
                }
            }
        }
        let free: Vec<usize> = (0..self.ncols).filter(|c| !rref.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (&p, row) in &rref {
                    if let Ok(pos) = row.binary_search_by_key(&f, |e| e.0) {
                        x[p] = -row[pos].1.clone();
                    }
                }
                x
            })
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, v.clone()));
            }
        }
        cols
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| v * &x[*c]).sum())
            .collect()
    }

    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let lcm = r
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let mut dense = vec![BigInt::zero(); self.ncols];
                for (c, v) in r {
                    dense[*c] = v.numer() * (&lcm / v.denom());
                }
                dense
            })
            .collect()
    }
}

struct IntegerEchelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// One-step fraction-free elimination: every division below is exact.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> IntegerEchelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        // Columns left of `c` in rows below `r` are already zero.
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    IntegerEchelon { rows: m, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, fill: f64) -> Matrix {
        let dense: Vec<Vec<BigRational>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(fill) {
                            BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
                        } else {
                            q(0)
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_dense(&dense)
    }

    /// Textbook dense Gauss-Jordan rank, used as an independent oracle.
    fn dense_rank(m: &Matrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = m
            .rows()
            .iter()
            .map(|r| {
                let mut d = vec![q(0); m.ncols()];
                for (c, v) in r {
                    d[*c] = v.clone();
                }
                d
            })
            .collect();
        let mut rank = 0;
        for c in 0..m.ncols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][c].clone();
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = &a[i][c] / &pivot;
                    for j in 0..m.ncols() {
                        let t = &f * &a[rank][j];
                        a[i][j] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_strategies_agree_on_random_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let fill = rng.gen_range(0.1..0.9);
            let m = random_matrix(&mut rng, rows, cols, fill);
            let oracle = dense_rank(&m);
            assert_eq!(m.rank(Strategy::Sparse), oracle);
            assert_eq!(m.rank(Strategy::Bareiss), oracle);
            assert_eq!(m.rank(Strategy::Auto), oracle);
        }
    }

    #[test]
    fn solve_strategies_agree_and_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let m = random_matrix(&mut rng, rows, cols, 0.5);
            let mut b: SparseVec = Vec::new();
            for i in 0..rows {
                let v = rng.gen_range(-3..=3);
                if v != 0 && rng.gen_bool(0.6) {
                    b.push((i, q(v)));
                }
            }
            let sparse = m.solve(&b, Strategy::Sparse);
            let dense = m.solve(&b, Strategy::Bareiss);
            assert_eq!(sparse.is_some(), dense.is_some());
            let mut bd = vec![q(0); rows];
            for (i, v) in &b {
                bd[*i] = v.clone();
            }
            for x in [sparse, dense].into_iter().flatten() {
                assert_eq!(m.mul_vec(&x), bd);
            }
        }
    }

    #[test]
    fn nullspace_dimension_and_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (rows, cols) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m = random_matrix(&mut rng, rows, cols, 0.5);
            let ns = m.nullspace();
            assert_eq!(ns.len() + dense_rank(&m), m.ncols());
            for x in &ns {
                assert!(m.mul_vec(x).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn echelon_certificates_reconstruct() {
        let vs: Vec<SparseVec> = vec![
            vec![(0, q(1)), (2, q(2))],
            vec![(1, q(3))],
            vec![(0, q(2)), (1, q(3)), (2, q(4))],
        ];
        let mut basis = EchelonBasis::new();
        let indep: Vec<bool> = vs.iter().map(|v| basis.insert(v.clone())).collect();
        assert_eq!(indep, [true, true, false]);
        let target = vec![(0, q(1)), (1, q(6)), (2, q(2))];
        let combo = basis.express(target.clone()).unwrap();
        let mut acc: SparseVec = Vec::new();
        for (k, c) in combo {
            acc = axpy(&acc, &c, &vs[k]);
        }
        assert_eq!(acc, target);
        assert!(basis.express(vec![(3, q(1))]).is_none());
    }
}
