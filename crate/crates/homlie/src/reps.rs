//! Representations of Hom-Lie algebras, the dual representation ρ⋆ (and the
//! family ρ_s⋆), the coadjoint representation, and semidirect products.
//!
//! A representation (V, β, ρ) satisfies ρ(φx)∘β = β∘ρ(x) and
//! ρ([x,y])∘β = ρ(φx)ρ(y) − ρ(φy)ρ(x). Dual maps are realized on the dual
//! basis via transposes; no metric identifications are made.

use crate::error::HomlieError;
use crate::homlie::HomLieAlgebra;
use crate::linmap::LinearMap;
use crate::multilinear::{extend_map, tuples, MultiVector};
use crate::report::CheckReport;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: HomLieAlgebra,
    /// Dimension of the carrier space V.
    pub dim: usize,
    /// `matrices[i]` is ρ(e_i) on V.
    pub matrices: Vec<LinearMap>,
    /// β ∈ GL(V).
    pub twist: LinearMap,
}

impl Representation {
    pub fn new(
        algebra: HomLieAlgebra,
        matrices: Vec<LinearMap>,
        twist: LinearMap,
    ) -> Result<Self, HomlieError> {
        if matrices.len() != algebra.dim {
            return Err(HomlieError::DimensionMismatch(
                "one matrix per algebra basis vector required".to_string(),
            ));
        }
        let d = twist.rows;
        if twist.cols != d || matrices.iter().any(|m| m.rows != d || m.cols != d) {
            return Err(HomlieError::DimensionMismatch(
                "carrier matrices and twist must share a square shape".to_string(),
            ));
        }
        Ok(Representation {
            algebra,
            dim: d,
            matrices,
            twist,
        })
    }

    /// ρ extended linearly to an arbitrary algebra element.
    pub fn rho(&self, x: &[Scalar]) -> LinearMap {
        let mut acc = LinearMap::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.matrices[i].scale(c));
            }
        }
        acc
    }
}

/// Test both representation axioms on all basis elements and pairs; the
/// report carries the lexicographically first failing witness of each kind.
pub fn check_representation(rep: &Representation) -> CheckReport {
    let mut report = CheckReport::new();
    let g = &rep.algebra;
    let mut witness = None;
    for i in 0..g.dim {
        let lhs = rep.rho(&g.twist.col(i)).mul(&rep.twist);
        let rhs = rep.twist.mul(&rep.matrices[i]);
        if !lhs.eq_promoted(&rhs) {
            witness = Some(format!("ρ(φe{0})∘β ≠ β∘ρ(e{0})", i + 1));
            break;
        }
    }
    match witness {
        None => report.pass("twist-compatibility"),
        Some(w) => report.fail("twist-compatibility", w),
    }
    let mut witness = None;
    'outer: for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            let lhs = rep.rho(&g.bracket_basis(i, j)).mul(&rep.twist);
            let a = rep.rho(&g.twist.col(i)).mul(&rep.matrices[j]);
            let b = rep.rho(&g.twist.col(j)).mul(&rep.matrices[i]);
            if !lhs.eq_promoted(&a.sub(&b)) {
                witness = Some(format!("bracket axiom fails on (e{}, e{})", i + 1, j + 1));
                break 'outer;
            }
        }
    }
    match witness {
        None => report.pass("bracket-compatibility"),
        Some(w) => report.fail("bracket-compatibility", w),
    }
    report
}

/// The φˢ-adjoint representation of g on ∧ᵏg: ρ(x)Y = [φˢ(x), Y] with the
/// extended bracket, and carrier twist the kᵗʰ exterior power of φ.
pub fn adjoint_rep(g: &HomLieAlgebra, s: i64, k: usize) -> Result<Representation, HomlieError> {
    let phi_s = g.twist.pow(s)?;
    let basis_tuples = tuples(g.dim, k);
    let d = basis_tuples.len();
    let mut matrices = Vec::with_capacity(g.dim);
    for i in 0..g.dim {
        let x = MultiVector::from_vec1(&phi_s.col(i));
        let mut cols = Vec::with_capacity(d);
        for t in &basis_tuples {
            let y = MultiVector::basis(g.dim, t);
            cols.push(g.extended_bracket(&x, &y)?.to_coords());
        }
        matrices.push(LinearMap::from_cols(cols));
    }
    Representation::new(g.clone(), matrices, extend_map(&g.twist, k)?)
}

/// The dual representation ρ_s⋆ on V* with twist (β⁻¹)*:
/// ρ_s⋆(x)(ξ) = ρ*(φˢ(x))((β⁻²)*(ξ)). On the dual basis this is the matrix
/// −ρ(φˢx)ᵀ·(β⁻²)ᵀ. The default throughout the library is s = 1.
pub fn dual_rep_s(rep: &Representation, s: i64) -> Result<Representation, HomlieError> {
    let beta_inv = rep
        .twist
        .inverse()
        .map_err(|_| HomlieError::SingularMap("β must be invertible".to_string()))?;
    let beta_inv2_t = beta_inv.mul(&beta_inv).transpose();
    let phi_s = rep.algebra.twist.pow(s)?;
    let matrices = (0..rep.algebra.dim)
        .map(|i| rep.rho(&phi_s.col(i)).transpose().neg().mul(&beta_inv2_t))
        .collect();
    Representation::new(rep.algebra.clone(), matrices, beta_inv.transpose())
}

/// ρ⋆ = ρ_1⋆, the dual representation.
pub fn dual_rep(rep: &Representation) -> Result<Representation, HomlieError> {
    dual_rep_s(rep, 1)
}

/// The coadjoint representation ad⋆ on g*: ad⋆_x ξ = ad*_{φ(x)}(φ⁻²)*(ξ),
/// with twist (φ⁻¹)*. Identical to the dual of the ordinary adjoint.
pub fn coadjoint(g: &HomLieAlgebra) -> Result<Representation, HomlieError> {
    dual_rep(&adjoint_rep(g, 0, 1)?)
}

/// The semidirect product g ⋉_ρ W: bracket
/// [x+u, y+w] = [x,y] + ρ(x)w − ρ(y)u, twist φ ⊕ β. The representation
/// axioms are verified first.
pub fn semidirect(g: &HomLieAlgebra, rep: &Representation) -> Result<HomLieAlgebra, HomlieError> {
    if rep.algebra != *g {
        return Err(HomlieError::InvalidRepresentation(
            "representation is over a different algebra".to_string(),
        ));
    }
    let rep_report = check_representation(rep);
    if !rep_report.passed() {
        return Err(HomlieError::InvalidRepresentation(rep_report.to_string()));
    }
    let n = g.dim;
    let d = rep.dim;
    let total = n + d;
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = g.bracket_basis(i, j);
            v.extend(vec![Scalar::zero(); d]);
            brackets.push(((i, j), v));
        }
        for a in 0..d {
            let mut v = vec![Scalar::zero(); n];
            v.extend(rep.matrices[i].col(a));
            brackets.push(((i, n + a), v));
        }
    }
    Ok(HomLieAlgebra::new(
        total,
        brackets,
        g.twist.direct_sum(&rep.twist),
    ))
}
