//! The periplectic form, the Lie superalgebra `𝔭𝔢ₙ ⊂ 𝔤𝔩(n|n)` and the
//! signed Brauer category of oriented matchings with its contraction
//! functor.

mod brauer;
mod contraction;

pub use brauer::{
    associativity_exhaustive, enumerate_morphisms, hom_dim, parse_diagram, AssociativityReport, BrauerMorphism,
    HomElement,
};
pub use contraction::{
    functor_check, functor_check_exhaustive, k_apply, k_apply_ordered, FunctorReport, Tensor,
};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::gl::{BasisVector, GlElement};
use crate::linalg::{Matrix, SparseVec, Strategy};
use crate::superpoly::rational;
use crate::tca_a::RankContext;

/// `ω` on the generator with index `v`: `δᵢⱼ` on `x[i,j]`, zero on `y`, `z`.
pub fn omega_eval(ctx: &RankContext, v: usize) -> BigRational {
    match ctx.factors_of(v) {
        (BasisVector::E(i), BasisVector::F(j)) if i == j => BigRational::one(),
        _ => BigRational::zero(),
    }
}

/// The odd bilinear form on `V` with `ω̃(eᵢ, fⱼ) = ω̃(fⱼ, eᵢ) = δᵢⱼ`.
pub fn omega_tilde(u: BasisVector, w: BasisVector) -> i64 {
    match (u, w) {
        (BasisVector::E(i), BasisVector::F(j)) | (BasisVector::F(j), BasisVector::E(i)) => i64::from(i == j),
        _ => 0,
    }
}

/// Basis of `𝔭𝔢ₙ = {[[a, b], [c, −aᵀ]] : b = bᵀ, c = −cᵀ}`: the `n²`
/// even elements from `a`, then symmetric `b`, then antisymmetric `c`.
pub fn pe_basis(n: usize) -> Vec<GlElement> {
    use BasisVector::{E, F};
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 1..=n {
        for j in 1..=n {
            let mut g = GlElement::unit(n, E(i), E(j));
            g.set(F(j), F(i), -BigRational::one());
            out.push(g);
        }
    }
    for i in 1..=n {
        for j in i..=n {
            let mut g = GlElement::unit(n, E(i), F(j));
            g.set(E(j), F(i), BigRational::one());
            out.push(g);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let mut g = GlElement::unit(n, F(i), E(j));
            g.set(F(j), E(i), -BigRational::one());
            out.push(g);
        }
    }
    out
}

/// Basis of `𝔟ₙ`: `a`, `c`, `d` upper triangular and `b` strictly upper
/// triangular.
pub fn borel_basis(n: usize) -> Vec<GlElement> {
    use BasisVector::{E, F};
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            out.push(GlElement::unit(n, E(i), E(j)));
            out.push(GlElement::unit(n, F(i), E(j)));
            out.push(GlElement::unit(n, F(i), F(j)));
            if i < j {
                out.push(GlElement::unit(n, E(i), F(j)));
            }
        }
    }
    out
}

fn sparse(g: &GlElement) -> SparseVec {
    g.flatten()
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IwasawaReport {
    pub n: usize,
    pub dim_b: usize,
    pub dim_pe: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
    pub intersection_is_diag_a_minus_a: bool,
    pub pass: bool,
}

/// `dim(𝔟 + 𝔭𝔢) = 4n²`, `dim(𝔟 ∩ 𝔭𝔢) = n`, and the intersection consists
/// of the matrices `diag(a, −a)` with `a` diagonal.
pub fn iwasawa_check(n: usize) -> IwasawaReport {
    let b = borel_basis(n);
    let pe = pe_basis(n);
    let rank_of = |gs: &[&GlElement]| {
        Matrix::from_rows(4 * n * n, gs.iter().map(|g| sparse(g)).collect()).rank(Strategy::Auto)
    };
    let dim_b = rank_of(&b.iter().collect::<Vec<_>>());
    let dim_pe = rank_of(&pe.iter().collect::<Vec<_>>());
    let dim_sum = rank_of(&b.iter().chain(&pe).collect::<Vec<_>>());

    // Σ αₖ bₖ − Σ βₗ pₗ = 0; each null vector yields Σ αₖ bₖ in the intersection.
    let cols: Vec<SparseVec> = b
        .iter()
        .map(sparse)
        .chain(pe.iter().map(|g| {
            sparse(g).into_iter().map(|(i, v)| (i, -v)).collect()
        }))
        .collect();
    let null = Matrix::from_columns(4 * n * n, &cols).nullspace();
    let mut elements = Vec::new();
    for x in &null {
        let mut acc = vec![BigRational::zero(); 4 * n * n];
        for (k, g) in b.iter().enumerate() {
            if !x[k].is_zero() {
                for (i, v) in sparse(g) {
                    acc[i] += &x[k] * v;
                }
            }
        }
        elements.push(GlElement::from_flat(n, &acc).expect("square"));
    }
    let intersection_rows: Vec<SparseVec> = elements.iter().map(sparse).collect();
    let dim_intersection = Matrix::from_rows(4 * n * n, intersection_rows).rank(Strategy::Auto);
    let diag_shape = elements.iter().all(|g| {
        BasisVector::all(n).all(|t| {
            BasisVector::all(n).all(|s| {
                let v = g.entry(t, s);
                match (t, s) {
                    (BasisVector::E(i), BasisVector::E(j)) if i == j => {
                        *g.entry(BasisVector::F(i), BasisVector::F(i)) == -v.clone()
                    }
                    (BasisVector::F(i), BasisVector::F(j)) if i == j => true,
                    _ => v.is_zero(),
                }
            })
        })
    });
    IwasawaReport {
        n,
        dim_b,
        dim_pe,
        dim_sum,
        dim_intersection,
        intersection_is_diag_a_minus_a: diag_shape,
        pass: dim_sum == 4 * n * n && dim_intersection == n && diag_shape,
    }
}

/// `ω̃(Xu, v) + (−1)^{|X||u|} ω̃(u, Xv)` for homogeneous `X`.
pub fn omega_defect(x: &GlElement, u: BasisVector, w: BasisVector) -> BigRational {
    let px = x.parity().expect("homogeneous").is_odd();
    let mut total = BigRational::zero();
    for (u2, c) in x.apply(u) {
        total += c * rational(omega_tilde(u2, w));
    }
    let sign = if px && u.is_odd() { -1 } else { 1 };
    for (w2, c) in x.apply(w) {
        total += c * rational(sign * omega_tilde(u, w2));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::{Parity, SuperPoly};

    #[test]
    fn omega_values() {
        let ctx = RankContext::new(2).unwrap();
        let t = ctx.table();
        assert_eq!(omega_eval(&ctx, ctx.x_index(1, 1)), rational(1));
        assert_eq!(omega_eval(&ctx, ctx.x_index(1, 2)), rational(0));
        assert_eq!(omega_eval(&ctx, ctx.y_index(1, 1)), rational(0));
        // The residue functional restricted to generators is ω.
        for v in 0..t.len() {
            assert_eq!(ctx.residue(&SuperPoly::var(t, v)), omega_eval(&ctx, v));
        }
    }

    #[test]
    fn pe_basis_sizes() {
        let b1 = pe_basis(1);
        assert_eq!(b1.len(), 2);
        assert_eq!(b1[0].parity(), Some(Parity::Even));
        assert_eq!(b1[1].parity(), Some(Parity::Odd));
        assert_eq!(*b1[0].entry(BasisVector::F(1), BasisVector::F(1)), rational(-1));
        for n in 1..=4 {
            let b = pe_basis(n);
            assert_eq!(b.len(), 2 * n * n);
            let odd = b.iter().filter(|g| g.parity() == Some(Parity::Odd)).count();
            assert_eq!(odd, n * n);
            assert_eq!(borel_basis(n).len(), 2 * n * n + n);
        }
    }

    #[test]
    fn pe_preserves_the_form() {
        for n in 1..=3 {
            for x in pe_basis(n) {
                for u in BasisVector::all(n) {
                    for w in BasisVector::all(n) {
                        assert!(omega_defect(&x, u, w).is_zero(), "{x:?} {u} {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn borel_does_not_preserve_the_form() {
        let x = GlElement::unit(2, BasisVector::E(1), BasisVector::E(1));
        let bad = BasisVector::all(2)
            .flat_map(|u| BasisVector::all(2).map(move |w| (u, w)))
            .any(|(u, w)| !omega_defect(&x, u, w).is_zero());
        assert!(bad);
    }

    #[test]
    fn pe_kills_omega_on_generators() {
        // ω(X·s) = 0 for s ∈ Sym²(V)[1], with X acting by derivations.
        for n in 1..=3 {
            let ctx = RankContext::new(n).unwrap();
            for x in pe_basis(n) {
                let d = ctx.derivation(&x).unwrap();
                for v in 0..ctx.table().len() {
                    let img = d.apply(&SuperPoly::var(ctx.table(), v)).unwrap();
                    assert!(ctx.residue(&img).is_zero());
                }
            }
        }
    }

    #[test]
    fn iwasawa_dimensions() {
        for n in 1..=6 {
            let r = iwasawa_check(n);
            assert!(r.pass, "{r:?}");
            assert_eq!(r.dim_b + r.dim_pe - r.dim_intersection, 4 * n * n);
        }
    }
}
