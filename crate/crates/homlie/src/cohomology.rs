//! The coboundary complex of a Hom-Lie algebra with coefficients in a
//! representation (V, β, ρ):
//!
//! (d_ρ f)(x₁,…,x_{k+1}) = Σᵢ (−1)^{i+1} ρ(xᵢ) f(φ⁻¹x₁,…,ω̂ᵢ,…,φ⁻¹x_{k+1})
//!   + Σ_{i<j} (−1)^{i+j} β f([φ⁻²xᵢ, φ⁻²xⱼ], φ⁻¹x₁,…,ω̂ᵢ,…,ω̂ⱼ,…,φ⁻¹x_{k+1}),
//!
//! evaluated exactly in the cochain basis of increasing index tuples.

use crate::error::HomlieError;
use crate::homlie::HomLieAlgebra;
use crate::linmap::{vec_add, vec_scale, LinearMap};
use crate::multilinear::{binomial, tuples, wedge, MultiVector};
use crate::report::CheckReport;
use crate::reps::Representation;
use crate::scalar::Scalar;

/// An element of Hom(∧ᵏg, V), stored as its matrix in the bases of
/// increasing k-tuples (columns) and of V (rows). Degree 0 has one column,
/// the image vector itself.
#[derive(Clone, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub mat: LinearMap,
}

impl Cochain {
    pub fn zero(g_dim: usize, carrier_dim: usize, degree: usize) -> Self {
        Cochain {
            degree,
            mat: LinearMap::zeros(carrier_dim, binomial(g_dim, degree)),
        }
    }

    /// The elementary cochain sending the basis tuple at `col` to the
    /// carrier basis vector at `row`, and all other tuples to zero.
    pub fn elementary(g_dim: usize, carrier_dim: usize, degree: usize, col: usize, row: usize) -> Self {
        let mut c = Cochain::zero(g_dim, carrier_dim, degree);
        c.mat.set(row, col, Scalar::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Multilinear evaluation on a decomposable argument given as a
    /// multivector of matching degree.
    pub fn eval(&self, w: &MultiVector) -> Result<Vec<Scalar>, HomlieError> {
        if w.degree != self.degree {
            return Err(HomlieError::DimensionMismatch(
                "cochain degree does not match argument degree".to_string(),
            ));
        }
        Ok(self.mat.apply(&w.to_coords()))
    }
}

/// Apply the coboundary operator to `f`; the representation axioms are the
/// caller's responsibility (d² = 0 requires them).
pub fn d_rho(
    g: &HomLieAlgebra,
    rep: &Representation,
    f: &Cochain,
) -> Result<Cochain, HomlieError> {
    let n = g.dim;
    let k = f.degree;
    let phi_inv = g.twist_inv()?;
    let phi_inv2 = phi_inv.mul(&phi_inv);
    let out_tuples = tuples(n, k + 1);
    let mut cols = Vec::with_capacity(out_tuples.len());
    for t in &out_tuples {
        let mut value = vec![Scalar::zero(); rep.dim];
        // First sum: drop one argument, twist the rest by φ⁻¹.
        for (pos, &xi) in t.iter().enumerate() {
            let mut rest = MultiVector::scalar(n, Scalar::one());
            for (other, &xj) in t.iter().enumerate() {
                if other != pos {
                    rest = wedge(&rest, &MultiVector::from_vec1(&phi_inv.col(xj)))?;
                }
            }
            let inner = f.eval(&rest)?;
            let term = rep.matrices[xi].apply(&inner);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            value = vec_add(&value, &vec_scale(&term, &Scalar::from_int(sign)));
        }
        // Second sum: bracket a pair through φ⁻², twist the rest by φ⁻¹,
        // and push the whole evaluation through β.
        for i in 0..t.len() {
            for j in (i + 1)..t.len() {
                let xi = MultiVector::from_vec1(&phi_inv2.col(t[i]));
                let xj = MultiVector::from_vec1(&phi_inv2.col(t[j]));
                let bracket = g.extended_bracket(&xi, &xj)?;
                let mut arg = bracket;
                for (other, &xl) in t.iter().enumerate() {
                    if other != i && other != j {
                        arg = wedge(&arg, &MultiVector::from_vec1(&phi_inv.col(xl)))?;
                    }
                }
                let inner = f.eval(&arg)?;
                let term = rep.twist.apply(&inner);
                // 1-based sign (−1)^{i+j} = (−1)^{pos_i + pos_j} with 0-based
                // positions.
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                value = vec_add(&value, &vec_scale(&term, &Scalar::from_int(sign)));
            }
        }
        cols.push(value);
    }
    Ok(Cochain {
        degree: k + 1,
        mat: LinearMap::from_cols(cols),
    })
}

/// Verify d_ρ ∘ d_ρ = 0 on every elementary cochain of degree 0..=k_max.
pub fn check_d_squared(
    g: &HomLieAlgebra,
    rep: &Representation,
    k_max: usize,
) -> Result<CheckReport, HomlieError> {
    let mut report = CheckReport::new();
    for k in 0..=k_max {
        let cols = binomial(g.dim, k);
        let mut witness = None;
        'outer: for col in 0..cols {
            for row in 0..rep.dim {
                let f = Cochain::elementary(g.dim, rep.dim, k, col, row);
                let dd = d_rho(g, rep, &d_rho(g, rep, &f)?)?;
                if !dd.is_zero() {
                    witness = Some(format!(
                        "d²f ≠ 0 for the elementary cochain (tuple {}, coordinate {})",
                        col + 1,
                        row + 1
                    ));
                    break 'outer;
                }
            }
        }
        let name = format!("d-squared-degree-{k}");
        match witness {
            None => report.pass(&name),
            Some(w) => report.fail(&name, w),
        }
    }
    Ok(report)
}

/// Test whether θ: g → ∧²g commuting with φ satisfies
/// [φ⁻²x, θ(φ⁻¹y)] − [φ⁻²y, θ(φ⁻¹x)] − θ([φ⁻¹x, φ⁻¹y]) = 0 on all basis
/// pairs; for such θ this is the 1-cocycle condition d_{ad⁻²}θ = 0, and it
/// says exactly that θ is a (φ⁻¹,φ⁻¹)-derivation.
pub fn is_one_cocycle_derivation(
    g: &HomLieAlgebra,
    theta: &LinearMap,
) -> Result<CheckReport, HomlieError> {
    let n = g.dim;
    if theta.cols != n || theta.rows != binomial(n, 2) {
        return Err(HomlieError::DimensionMismatch(
            "θ must map g into ∧²g".to_string(),
        ));
    }
    let mut report = CheckReport::new();
    let phi2 = crate::multilinear::extend_map(&g.twist, 2)?;
    let mut witness = None;
    for i in 0..n {
        let lhs = theta.apply(&g.twist.col(i));
        let rhs = phi2.apply(&theta.col(i));
        if !crate::linmap::vec_eq(&lhs, &rhs) {
            witness = Some(format!("θ(φe{0}) ≠ φθ(e{0})", i + 1));
            break;
        }
    }
    match witness {
        None => report.pass("twist-commuting"),
        Some(w) => report.fail("twist-commuting", w),
    }
    let phi_inv = g.twist_inv()?;
    let phi_inv2 = phi_inv.mul(&phi_inv);
    let theta_of = |v: &[Scalar]| MultiVector::from_coords(n, 2, &theta.apply(v));
    let mut witness = None;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let x = phi_inv2.col(i);
            let y = phi_inv2.col(j);
            let term1 = g.extended_bracket(
                &MultiVector::from_vec1(&x),
                &theta_of(&phi_inv.col(j)),
            )?;
            let term2 = g.extended_bracket(
                &MultiVector::from_vec1(&y),
                &theta_of(&phi_inv.col(i)),
            )?;
            let inner = g.bracket_vec(&phi_inv.col(i), &phi_inv.col(j));
            let residual = term1.sub(&term2).sub(&theta_of(&inner));
            if !residual.is_zero() {
                witness = Some(format!("fails on the pair (e{}, e{})", i + 1, j + 1));
                break 'outer;
            }
        }
    }
    match witness {
        None => report.pass("cocycle-identity"),
        Some(w) => report.fail("cocycle-identity", w),
    }
    Ok(report)
}

/// The matrix of d_ρ from degree k to k+1, acting on vectorized cochains
/// (columns of the cochain matrix stacked in tuple order).
fn d_matrix(
    g: &HomLieAlgebra,
    rep: &Representation,
    k: usize,
) -> Result<LinearMap, HomlieError> {
    let in_cols = binomial(g.dim, k);
    let out_cols = binomial(g.dim, k + 1);
    let d = rep.dim;
    let mut cols = Vec::with_capacity(in_cols * d);
    for col in 0..in_cols {
        for row in 0..d {
            let f = Cochain::elementary(g.dim, d, k, col, row);
            let df = d_rho(g, rep, &f)?;
            let mut v = Vec::with_capacity(out_cols * d);
            for c in 0..out_cols {
                v.extend(df.mat.col(c));
            }
            cols.push(v);
        }
    }
    Ok(LinearMap::from_cols(cols))
}

/// Exact dimensions (dim Zᵏ, dim Bᵏ, dim Hᵏ) of the cocycles, coboundaries,
/// and cohomology in degree k. Over a function field the ranks are generic:
/// the parameter is treated as transcendental.
pub fn cohomology_ranks(
    g: &HomLieAlgebra,
    rep: &Representation,
    k: usize,
) -> Result<(usize, usize, usize), HomlieError> {
    if k > g.dim {
        return Err(HomlieError::DimensionMismatch(
            "degree exceeds the algebra dimension".to_string(),
        ));
    }
    let dk = d_matrix(g, rep, k)?;
    let z = binomial(g.dim, k) * rep.dim - dk.rank();
    let b = if k == 0 {
        0
    } else {
        d_matrix(g, rep, k - 1)?.rank()
    };
    Ok((z, b, z - b))
}
