//! (σ,τ)-derivations of a finite-dimensional associative algebra, the
//! twisted bracket `[D₁, D₂]_{ml} = σˡ D₁ σ⁻ᵐ D₂ σ⁻ˡ − σˡ D₂ σ⁻ᵐ D₁ σ⁻ˡ`,
//! and the Hom-Lie algebra it induces on Der_{σᵐ,σᵐ}(A) with twist Ad_{σˡ}.

use crate::error::HomlieError;
use crate::homlie::HomLieAlgebra;
use crate::linmap::LinearMap;
use crate::scalar::Scalar;

/// A finite-dimensional associative algebra given by its multiplication
/// table `e_i e_j = Σ_k m^k_{ij} e_k`. Associativity is verified at
/// construction time, never assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociativeAlgebra {
    pub dim: usize,
    /// `mult[i][j]` is the coordinate vector of `e_i e_j`.
    mult: Vec<Vec<Vec<Scalar>>>,
}

impl AssociativeAlgebra {
    pub fn new(dim: usize, mult: Vec<Vec<Vec<Scalar>>>) -> Result<Self, HomlieError> {
        assert_eq!(mult.len(), dim, "multiplication table row count");
        for row in &mult {
            assert_eq!(row.len(), dim, "multiplication table column count");
            for v in row {
                assert_eq!(v.len(), dim, "product coordinate length");
            }
        }
        let a = AssociativeAlgebra { dim, mult };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = a.product_vec(&a.product(i, j), &a.basis_coords(k));
                    let right = a.product_vec(&a.basis_coords(i), &a.product(j, k));
                    if !crate::linmap::vec_eq(&left, &right) {
                        return Err(HomlieError::NotAssociative(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(a)
    }

    fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        crate::linmap::basis_vec(self.dim, i)
    }

    /// The coordinate vector of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult[i][j].clone()
    }

    /// Bilinear extension of the multiplication to coordinate vectors.
    pub fn product_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&c * &self.mult[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// First basis pair on which `f` fails multiplicativity, if any.
    pub fn endomorphism_witness(&self, f: &LinearMap) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.apply(&self.product(i, j));
                let rhs = self.product_vec(&f.col(i), &f.col(j));
                if !crate::linmap::vec_eq(&lhs, &rhs) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis pair on which `d` fails the (σ,τ)-derivation identity
    /// `D(ab) = D(a)τ(b) + σ(a)D(b)`, if any.
    pub fn derivation_witness(
        &self,
        d: &LinearMap,
        sigma: &LinearMap,
        tau: &LinearMap,
    ) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = d.apply(&self.product(i, j));
                let rhs = crate::linmap::vec_add(
                    &self.product_vec(&d.col(i), &tau.col(j)),
                    &self.product_vec(&sigma.col(i), &d.col(j)),
                );
                if !crate::linmap::vec_eq(&lhs, &rhs) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// An exact basis of Der_{σ,τ}(A), kept in the reduced echelon form the
/// nullspace routine produces so runs are reproducible.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub algebra: AssociativeAlgebra,
    pub sigma: LinearMap,
    pub tau: LinearMap,
    pub basis: Vec<LinearMap>,
}

/// Column-major vectorization of an n×n map, matching the unknown ordering
/// used in the derivation linear system.
fn vectorize(m: &LinearMap) -> Vec<Scalar> {
    let n = m.rows;
    let mut v = Vec::with_capacity(n * n);
    for q in 0..n {
        v.extend(m.col(q));
    }
    v
}

fn unvectorize(n: usize, v: &[Scalar]) -> LinearMap {
    LinearMap::from_fn(n, n, |p, q| v[q * n + p].clone())
}

/// Solve `D(e_i e_j) = D(e_i)τ(e_j) + σ(e_i)D(e_j)` for the n² entries of D.
pub fn compute_derivations(
    a: &AssociativeAlgebra,
    sigma: &LinearMap,
    tau: &LinearMap,
) -> Result<DerivationSpace, HomlieError> {
    let n = a.dim;
    if sigma.rows != n || sigma.cols != n || tau.rows != n || tau.cols != n {
        return Err(HomlieError::DimensionMismatch(
            "σ and τ must be n×n for an n-dimensional algebra".to_string(),
        ));
    }
    if let Some((i, j)) = a.endomorphism_witness(sigma) {
        return Err(HomlieError::NotEndomorphism("sigma".to_string(), i + 1, j + 1));
    }
    if let Some((i, j)) = a.endomorphism_witness(tau) {
        return Err(HomlieError::NotEndomorphism("tau".to_string(), i + 1, j + 1));
    }
    // Unknowns: D_{pq} at column-major index q*n + p. One equation per
    // (i, j, k): the e_k-coordinate of D(e_i e_j) − D(e_i)τ(e_j) − σ(e_i)D(e_j).
    let mut system = LinearMap::zeros(n * n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let prod = a.product(i, j);
            for k in 0..n {
                let row = (i * n + j) * n + k;
                // D(e_i e_j) = Σ_r prod_r D(e_r); e_k-coordinate picks D_{kr}.
                for r in 0..n {
                    if !prod[r].is_zero() {
                        let col = r * n + k;
                        let v = system.get(row, col) + &prod[r];
                        system.set(row, col, v);
                    }
                }
                // −D(e_i)τ(e_j): −Σ_{p,q} D_{pi} τ_{qj} m^k_{pq}.
                for p in 0..n {
                    let col = i * n + p;
                    let mut acc = Scalar::zero();
                    for q in 0..n {
                        let t = tau.get(q, j);
                        if !t.is_zero() {
                            acc = &acc + &(t * &a.mult[p][q][k]);
                        }
                    }
                    if !acc.is_zero() {
                        let v = system.get(row, col) - &acc;
                        system.set(row, col, v);
                    }
                }
                // −σ(e_i)D(e_j): −Σ_{p,q} σ_{pi} D_{qj} m^k_{pq}.
                for q in 0..n {
                    let col = j * n + q;
                    let mut acc = Scalar::zero();
                    for p in 0..n {
                        let s = sigma.get(p, i);
                        if !s.is_zero() {
                            acc = &acc + &(s * &a.mult[p][q][k]);
                        }
                    }
                    if !acc.is_zero() {
                        let v = system.get(row, col) - &acc;
                        system.set(row, col, v);
                    }
                }
            }
        }
    }
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| unvectorize(n, &v))
        .collect::<Vec<_>>();
    for d in &basis {
        debug_assert!(a.derivation_witness(d, sigma, tau).is_none());
    }
    Ok(DerivationSpace {
        algebra: a.clone(),
        sigma: sigma.clone(),
        tau: tau.clone(),
        basis,
    })
}

/// `[D₁, D₂]_{ml}` built from the base σ of the space (σ = τ required).
/// Both inputs and the output are verified to satisfy the (σᵐ,σᵐ)-derivation
/// identity.
pub fn derivation_bracket(
    space: &DerivationSpace,
    d1: &LinearMap,
    d2: &LinearMap,
    m: i64,
    l: i64,
) -> Result<LinearMap, HomlieError> {
    if !space.sigma.eq_promoted(&space.tau) {
        return Err(HomlieError::DimensionMismatch(
            "twisted bracket requires σ = τ".to_string(),
        ));
    }
    let sigma_m = space.sigma.pow(m)?;
    for (name, d) in [("D1", d1), ("D2", d2)] {
        if let Some((i, j)) = space.algebra.derivation_witness(d, &sigma_m, &sigma_m) {
            return Err(HomlieError::ClosureFailure(format!(
                "{name} is not a (σ^{m},σ^{m})-derivation; witness pair (e{}, e{})",
                i + 1,
                j + 1
            )));
        }
    }
    let s_l = space.sigma.pow(l)?;
    let s_neg_m = space.sigma.pow(-m)?;
    let s_neg_l = space.sigma.pow(-l)?;
    let term = |a: &LinearMap, b: &LinearMap| s_l.mul(a).mul(&s_neg_m).mul(b).mul(&s_neg_l);
    let out = term(d1, d2).sub(&term(d2, d1));
    if let Some((i, j)) = space.algebra.derivation_witness(&out, &sigma_m, &sigma_m) {
        return Err(HomlieError::ClosureFailure(format!(
            "bracket output fails the (σ^{m},σ^{m})-derivation identity at (e{}, e{})",
            i + 1,
            j + 1
        )));
    }
    Ok(out)
}

/// Express `target` in the given derivation basis; None if outside the span.
fn in_basis(basis: &[LinearMap], target: &LinearMap) -> Option<Vec<Scalar>> {
    let n2 = target.rows * target.cols;
    let mat = LinearMap::from_fn(n2, basis.len(), |r, c| vectorize(&basis[c])[r].clone());
    mat.solve(&vectorize(target))
}

/// The Hom-Lie algebra `(Der_{σᵐ,σᵐ}(A), [·,·]_{ml}, Ad_{σˡ})` expressed in
/// the reduced basis of the derivation space. `space` must carry the base σ
/// with σ = τ; the mᵗʰ-power space is computed internally.
pub fn derivation_homlie(
    space: &DerivationSpace,
    m: i64,
    l: i64,
) -> Result<HomLieAlgebra, HomlieError> {
    if !space.sigma.eq_promoted(&space.tau) {
        return Err(HomlieError::DimensionMismatch(
            "derivation Hom-Lie algebra requires σ = τ".to_string(),
        ));
    }
    let sigma_m = space.sigma.pow(m)?;
    let power_space = if m == 1 {
        space.clone()
    } else {
        let mut s = compute_derivations(&space.algebra, &sigma_m, &sigma_m)?;
        // Keep the base σ so the twisted bracket uses σ, not σᵐ.
        s.sigma = space.sigma.clone();
        s.tau = space.tau.clone();
        s
    };
    let basis = &power_space.basis;
    let d = basis.len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            let b = derivation_bracket(&power_space, &basis[i], &basis[j], m, l)?;
            let coords = in_basis(basis, &b).ok_or_else(|| {
                HomlieError::ClosureFailure(format!(
                    "[D{}, D{}] is outside the computed derivation span",
                    i + 1,
                    j + 1
                ))
            })?;
            brackets.push(((i, j), coords));
        }
    }
    let s_l = space.sigma.pow(l)?;
    let s_neg_l = space.sigma.pow(-l)?;
    let mut twist_cols = Vec::with_capacity(d);
    for (idx, b) in basis.iter().enumerate() {
        let ad = s_l.mul(b).mul(&s_neg_l);
        let coords = in_basis(basis, &ad).ok_or_else(|| {
            HomlieError::ClosureFailure(format!(
                "Ad_σ^{l}(D{}) is outside the computed derivation span",
                idx + 1
            ))
        })?;
        twist_cols.push(coords);
    }
    Ok(HomLieAlgebra::new(
        d,
        brackets,
        LinearMap::from_cols(twist_cols),
    ))
}
