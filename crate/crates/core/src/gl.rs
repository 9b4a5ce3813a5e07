//! The super vector space `ℂ^{n|n}` with basis `e₁…eₙ` (even) and
//! `f₁…fₙ` (odd), and exact block matrices acting on it.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::superpoly::Parity;

/// Basis vector of `ℂ^{n|n}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisVector {
    E(usize),
    F(usize),
}

impl BasisVector {
    pub fn parity(self) -> Parity {
        match self {
            BasisVector::E(_) => Parity::Even,
            BasisVector::F(_) => Parity::Odd,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, BasisVector::F(_))
    }

    pub fn label(self) -> usize {
        match self {
            BasisVector::E(i) | BasisVector::F(i) => i,
        }
    }

    /// Position in the ordering `e₁, …, eₙ, f₁, …, fₙ`.
    pub fn position(self, n: usize) -> usize {
        match self {
            BasisVector::E(i) => i - 1,
            BasisVector::F(i) => n + i - 1,
        }
    }

    pub fn from_position(n: usize, k: usize) -> BasisVector {
        if k < n {
            BasisVector::E(k + 1)
        } else {
            BasisVector::F(k - n + 1)
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = BasisVector> {
        (0..2 * n).map(move |k| BasisVector::from_position(n, k))
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisVector::E(i) => write!(f, "e{i}"),
            BasisVector::F(i) => write!(f, "f{i}"),
        }
    }
}

/// A `2n × 2n` matrix `[[a, b], [c, d]]` in the basis `e…, f…`; column `k`
/// is the image of the `k`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlElement {
    n: usize,
    m: Vec<Vec<BigRational>>,
}

impl GlElement {
    pub fn zero(n: usize) -> Self {
        GlElement {
            n,
            m: vec![vec![BigRational::zero(); 2 * n]; 2 * n],
        }
    }

    /// Matrix unit sending `source` to `target` and killing the rest.
    pub fn unit(n: usize, target: BasisVector, source: BasisVector) -> Self {
        let mut g = Self::zero(n);
        g.m[target.position(n)][source.position(n)] = BigRational::one();
        g
    }

    pub fn from_blocks(
        a: &[Vec<BigRational>],
        b: &[Vec<BigRational>],
        c: &[Vec<BigRational>],
        d: &[Vec<BigRational>],
    ) -> Result<Self> {
        let n = a.len();
        let square = |x: &[Vec<BigRational>]| x.len() == n && x.iter().all(|r| r.len() == n);
        if !(square(a) && square(b) && square(c) && square(d)) {
            return Err(Error::Precondition("blocks must all be n×n".into()));
        }
        let mut g = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                g.m[i][j] = a[i][j].clone();
                g.m[i][n + j] = b[i][j].clone();
                g.m[n + i][j] = c[i][j].clone();
                g.m[n + i][n + j] = d[i][j].clone();
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, target: BasisVector, source: BasisVector) -> &BigRational {
        &self.m[target.position(self.n)][source.position(self.n)]
    }

    pub fn set(&mut self, target: BasisVector, source: BasisVector, v: BigRational) {
        let n = self.n;
        self.m[target.position(n)][source.position(n)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Zero::is_zero)
    }

    /// `Even` when only the diagonal blocks are populated, `Odd` when only
    /// the off-diagonal ones are, `None` for mixed elements. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let n = self.n;
        let mut even = false;
        let mut odd = false;
        for (r, row) in self.m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    if (r < n) == (c < n) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    /// `X(v)` as a list of basis vectors with coefficients.
    pub fn apply(&self, v: BasisVector) -> Vec<(BasisVector, BigRational)> {
        let col = v.position(self.n);
        (0..2 * self.n)
            .filter(|&r| !self.m[r][col].is_zero())
            .map(|r| (BasisVector::from_position(self.n, r), self.m[r][col].clone()))
            .collect()
    }

    /// Row-major entries, used to compare subspaces of `𝔤𝔩(n|n)`.
    pub fn flatten(&self) -> Vec<BigRational> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn from_flat(n: usize, flat: &[BigRational]) -> Result<Self> {
        if flat.len() != 4 * n * n {
            return Err(Error::Precondition("wrong number of entries".into()));
        }
        Ok(GlElement {
            n,
            m: flat.chunks(2 * n).map(<[BigRational]>::to_vec).collect(),
        })
    }

    pub fn block_a(&self) -> Vec<Vec<BigRational>> {
        self.block(0, 0)
    }

    pub fn block_b(&self) -> Vec<Vec<BigRational>> {
        self.block(0, self.n)
    }

    pub fn block_c(&self) -> Vec<Vec<BigRational>> {
        self.block(self.n, 0)
    }

    pub fn block_d(&self) -> Vec<Vec<BigRational>> {
        self.block(self.n, self.n)
    }

    fn block(&self, r0: usize, c0: usize) -> Vec<Vec<BigRational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.m[r0 + i][c0 + j].clone()).collect())
            .collect()
    }
}
