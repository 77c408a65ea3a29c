//! Quadratic Hom-Lie algebras, Manin triples, purely Hom-Lie bialgebras,
//! and both directions of their equivalence: the double construction
//! [x+ξ, y+η]_⋈ on g ⊕ g* with the standard pairing B(x+ξ, y+η) = ξ(y)+η(x),
//! and the splitting of a Manin triple back into a bialgebra.

use crate::error::HomlieError;
use crate::homlie::{check_hom_lie, HomLieAlgebra};
use crate::linmap::{basis_vec, vec_neg, LinearMap};
use crate::multilinear::{binomial, tuples, MultiVector};
use crate::report::CheckReport;
use crate::reps::{coadjoint, Representation};
use crate::scalar::Scalar;

/// A Hom-Lie algebra with an invariant symmetric bilinear form:
/// B([u,v], φw) = −B(φv, [u,w]) and B(φu, φv) = B(u,v).
#[derive(Clone, Debug)]
pub struct QuadraticHomLie {
    pub algebra: HomLieAlgebra,
    /// Gram matrix b_ij = B(e_i, e_j).
    pub form: LinearMap,
}

impl QuadraticHomLie {
    pub fn b(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let fv = self.form.apply(v);
        let mut acc = Scalar::zero();
        for (a, b) in u.iter().zip(fv.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }
}

/// Test symmetry, nondegeneracy, and both invariance identities, with the
/// lexicographically first witness for each failure.
pub fn check_quadratic(q: &QuadraticHomLie) -> CheckReport {
    let mut report = CheckReport::new();
    let g = &q.algebra;
    let n = g.dim;

    if q.form.eq_promoted(&q.form.transpose()) {
        report.pass("symmetry");
    } else {
        report.fail("symmetry", "Gram matrix is not symmetric".to_string());
    }

    if q.form.rank() == n {
        report.pass("nondegeneracy");
    } else {
        report.fail("nondegeneracy", "Gram matrix is singular".to_string());
    }

    let e = |i: usize| basis_vec(n, i);
    let mut witness = None;
    'inv1: for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let lhs = q.b(&g.bracket_basis(u, v), &g.twist.col(w));
                let rhs = q.b(&g.twist.col(v), &g.bracket_basis(u, w)).neg();
                if !crate::scalar::scalar_eq(&lhs, &rhs) {
                    witness = Some(format!(
                        "B([e{0},e{1}],φe{2}) ≠ −B(φe{1},[e{0},e{2}])",
                        u + 1,
                        v + 1,
                        w + 1
                    ));
                    break 'inv1;
                }
            }
        }
    }
    match witness {
        None => report.pass("bracket-invariance"),
        Some(w) => report.fail("bracket-invariance", w),
    }

    let mut witness = None;
    'inv2: for u in 0..n {
        for v in u..n {
            let lhs = q.b(&g.twist.col(u), &g.twist.col(v));
            let rhs = q.b(&e(u), &e(v));
            if !crate::scalar::scalar_eq(&lhs, &rhs) {
                witness = Some(format!("B(φe{0},φe{1}) ≠ B(e{0},e{1})", u + 1, v + 1));
                break 'inv2;
            }
        }
    }
    match witness {
        None => report.pass("twist-orthogonality"),
        Some(w) => report.fail("twist-orthogonality", w),
    }
    report
}

/// A quadratic Hom-Lie algebra split into two isotropic subalgebras whose
/// bases are the columns of `g_basis` and `gprime_basis`.
#[derive(Clone, Debug)]
pub struct ManinTriple {
    pub ambient: QuadraticHomLie,
    pub g_basis: LinearMap,
    pub gprime_basis: LinearMap,
}

/// Is every twist image and bracket of columns of `sub` again in its span?
fn closure_witness(
    g: &HomLieAlgebra,
    sub: &LinearMap,
    check_twist: bool,
) -> Option<String> {
    let k = sub.cols;
    for i in 0..k {
        if check_twist && sub.solve(&g.twist.apply(&sub.col(i))).is_none() {
            return Some(format!("φ(column {}) leaves the subspace", i + 1));
        }
        for j in (i + 1)..k {
            let b = g.bracket_vec(&sub.col(i), &sub.col(j));
            if sub.solve(&b).is_none() {
                return Some(format!(
                    "[column {}, column {}] leaves the subspace",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    None
}

/// Direct sum, isotropy of both factors, subalgebra closure, and twist
/// splitting, each reported separately after the ambient quadratic axioms.
pub fn check_manin_triple(t: &ManinTriple) -> CheckReport {
    let mut report = CheckReport::new();
    report.merge("ambient", check_quadratic(&t.ambient));
    let g = &t.ambient.algebra;
    let n = g.dim;

    let mut all_cols = Vec::new();
    for c in 0..t.g_basis.cols {
        all_cols.push(t.g_basis.col(c));
    }
    for c in 0..t.gprime_basis.cols {
        all_cols.push(t.gprime_basis.col(c));
    }
    let joint = LinearMap::from_cols(all_cols);
    if joint.rows == n && joint.cols == n && joint.rank() == n {
        report.pass("direct-sum");
    } else {
        report.fail(
            "direct-sum",
            "subspace bases do not decompose the ambient space".to_string(),
        );
    }

    let mut witness = None;
    'iso: for (label, sub) in [("g", &t.g_basis), ("g'", &t.gprime_basis)] {
        for i in 0..sub.cols {
            for j in i..sub.cols {
                let val = t.ambient.b(&sub.col(i), &sub.col(j));
                if !val.is_zero() {
                    witness = Some(format!(
                        "B on {label} columns ({}, {}) equals {val}",
                        i + 1,
                        j + 1
                    ));
                    break 'iso;
                }
            }
        }
    }
    match witness {
        None => report.pass("isotropy"),
        Some(w) => report.fail("isotropy", w),
    }

    match closure_witness(g, &t.g_basis, false).or_else(|| closure_witness(g, &t.gprime_basis, false)) {
        None => report.pass("subalgebra-closure"),
        Some(w) => report.fail("subalgebra-closure", w),
    }

    match closure_witness(g, &t.g_basis, true).or_else(|| closure_witness(g, &t.gprime_basis, true))
    {
        None => report.pass("twist-splitting"),
        Some(w) => report.fail("twist-splitting", w),
    }
    report
}

/// A purely Hom-Lie bialgebra: g together with a Hom-Lie structure on g*
/// whose twist is (φ⁻¹)*. The cobracket Δ is derived from the dual algebra's
/// structure constants and never stored separately.
#[derive(Clone, Debug)]
pub struct HomLieBialgebra {
    pub g: HomLieAlgebra,
    pub dual: HomLieAlgebra,
}

impl HomLieBialgebra {
    pub fn new(g: HomLieAlgebra, dual: HomLieAlgebra) -> Result<Self, HomlieError> {
        if g.dim != dual.dim {
            return Err(HomlieError::DimensionMismatch(
                "g and g* must have equal dimension".to_string(),
            ));
        }
        let expected = g
            .twist
            .inverse()
            .map_err(|_| HomlieError::SingularMap("φ must be invertible".to_string()))?
            .transpose();
        if !dual.twist.eq_promoted(&expected) {
            return Err(HomlieError::TwistMismatch);
        }
        Ok(HomLieBialgebra { g, dual })
    }

    /// Δ: g → ∧²g with ⟨Δ(x), ξ∧η⟩ = ⟨x, [ξ,η]_{g*}⟩. In coordinates
    /// Δ(e_l) = Σ_{i<j} ĉ^l_{ij} e_i∧e_j where ĉ are the dual structure
    /// constants.
    pub fn delta(&self) -> LinearMap {
        dual_cobracket(&self.dual)
    }

    /// Υ: g* → ∧²g*, the mirror-image cobracket derived from [·,·]_g.
    pub fn upsilon(&self) -> LinearMap {
        dual_cobracket(&self.g)
    }
}

/// The cobracket dual to an algebra structure: column l of the result lists,
/// over increasing pairs (i,j), the l-th coordinate of [e_i, e_j].
fn dual_cobracket(alg: &HomLieAlgebra) -> LinearMap {
    let n = alg.dim;
    let pairs = tuples(n, 2);
    LinearMap::from_fn(binomial(n, 2), n, |row, l| {
        let (i, j) = (pairs[row][0], pairs[row][1]);
        alg.bracket_basis(i, j)[l].clone()
    })
}

/// Check Eq-style compatibility: Δ([x,y]) = ad_{φ⁻¹x}Δ(y) − ad_{φ⁻¹y}Δ(x)
/// on all basis pairs, plus the equivalent dual-side identity for Υ, plus
/// the assertion that the two tests agree.
pub fn check_bialgebra(b: &HomLieBialgebra) -> CheckReport {
    let mut report = CheckReport::new();
    report.merge("g", check_hom_lie(&b.g));
    report.merge("g-dual", check_hom_lie(&b.dual));

    let primal = compatibility_witness(&b.g, &b.dual);
    match &primal {
        None => report.pass("cobracket-compatibility"),
        Some(w) => report.fail("cobracket-compatibility", w.clone()),
    }
    // Υ satisfies the mirrored identity over g* with twist ((φ⁻¹)*)⁻¹ = φ*.
    let dual_side = compatibility_witness(&b.dual, &b.g);
    match &dual_side {
        None => report.pass("dual-cobracket-compatibility"),
        Some(w) => report.fail("dual-cobracket-compatibility", w.clone()),
    }
    if primal.is_none() == dual_side.is_none() {
        report.pass("compatibility-agreement");
    } else {
        report.fail(
            "compatibility-agreement",
            "the two equivalent compatibility conditions disagree".to_string(),
        );
    }
    report
}

/// First pair on which Δ([e_i,e_j]) ≠ ad_{φ⁻¹e_i}Δ(e_j) − ad_{φ⁻¹e_j}Δ(e_i),
/// where Δ is derived from `dual` and ad is the extended bracket of `alg`.
fn compatibility_witness(alg: &HomLieAlgebra, dual: &HomLieAlgebra) -> Option<String> {
    let n = alg.dim;
    let delta = dual_cobracket(dual);
    let phi_inv = alg.twist.inverse().ok()?;
    let delta_of = |v: &[Scalar]| MultiVector::from_coords(n, 2, &delta.apply(v));
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = delta_of(&alg.bracket_basis(i, j));
            let t1 = alg
                .extended_bracket(
                    &MultiVector::from_vec1(&phi_inv.col(i)),
                    &delta_of(&basis_vec(n, j)),
                )
                .ok()?;
            let t2 = alg
                .extended_bracket(
                    &MultiVector::from_vec1(&phi_inv.col(j)),
                    &delta_of(&basis_vec(n, i)),
                )
                .ok()?;
            if !lhs.eq_promoted(&t1.sub(&t2)) {
                return Some(format!("fails on the pair (e{}, e{})", i + 1, j + 1));
            }
        }
    }
    None
}

/// The double of a bialgebra: the Manin triple
/// (g ⊕ g*, [·,·]_⋈, φ ⊕ (φ⁻¹)*, B) with B(x+ξ, y+η) = ξ(y) + η(x).
pub fn double(b: &HomLieBialgebra) -> Result<ManinTriple, HomlieError> {
    let report = check_bialgebra(b);
    if !report.passed() {
        return Err(HomlieError::InvalidBialgebra(report.to_string()));
    }
    let n = b.g.dim;
    // ad⋆ of g acting on g*, and 𝔞𝔡⋆ of g* acting on g ≅ g**.
    let co_g: Representation = coadjoint(&b.g)?;
    let co_dual: Representation = coadjoint(&b.dual)?;
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            // [e_i, e_j]_⋈ = [e_i, e_j]_g.
            let mut v = b.g.bracket_basis(i, j);
            v.extend(vec![Scalar::zero(); n]);
            brackets.push(((i, j), v));
            // [ξ_i, ξ_j]_⋈ = [ξ_i, ξ_j]_{g*}.
            let mut v = vec![Scalar::zero(); n];
            v.extend(b.dual.bracket_basis(i, j));
            brackets.push(((n + i, n + j), v));
        }
        for a in 0..n {
            // [e_i, ξ_a]_⋈ = −𝔞𝔡⋆_{ξ_a} e_i + ad⋆_{e_i} ξ_a.
            let mut v = vec_neg(&co_dual.matrices[a].col(i));
            v.extend(co_g.matrices[i].col(a));
            brackets.push(((i, n + a), v));
        }
    }
    let twist = b.g.twist.direct_sum(&b.dual.twist);
    let ambient = HomLieAlgebra::new(2 * n, brackets, twist);
    let mut form = LinearMap::zeros(2 * n, 2 * n);
    for i in 0..n {
        form.set(i, n + i, Scalar::one());
        form.set(n + i, i, Scalar::one());
    }
    let g_basis = LinearMap::from_cols((0..n).map(|i| basis_vec(2 * n, i)).collect());
    let gprime_basis = LinearMap::from_cols((0..n).map(|i| basis_vec(2 * n, n + i)).collect());
    Ok(ManinTriple {
        ambient: QuadraticHomLie {
            algebra: ambient,
            form,
        },
        g_basis,
        gprime_basis,
    })
}

/// Restrict the ambient structure to a subspace basis, solving exactly.
fn restrict(
    g: &HomLieAlgebra,
    sub: &LinearMap,
) -> Result<HomLieAlgebra, HomlieError> {
    let k = sub.cols;
    let mut brackets = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let b = g.bracket_vec(&sub.col(i), &sub.col(j));
            let coords = sub.solve(&b).ok_or_else(|| {
                HomlieError::ClosureFailure(format!(
                    "bracket of columns {} and {} leaves the subspace",
                    i + 1,
                    j + 1
                ))
            })?;
            brackets.push(((i, j), coords));
        }
    }
    let twist_cols = (0..k)
        .map(|i| {
            sub.solve(&g.twist.apply(&sub.col(i))).ok_or_else(|| {
                HomlieError::ClosureFailure(format!("twist image of column {} leaves the subspace", i + 1))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomLieAlgebra::new(k, brackets, LinearMap::from_cols(twist_cols)))
}

/// Split a Manin triple into a purely Hom-Lie bialgebra. The g′ basis is
/// first replaced by the B-dual basis of the g factor so the pairing takes
/// the standard form; a degenerate pairing between the factors is rejected.
pub fn split(t: &ManinTriple) -> Result<HomLieBialgebra, HomlieError> {
    let k = t.g_basis.cols;
    if t.gprime_basis.cols != k {
        return Err(HomlieError::NonstandardPairing(
            "the two factors have different dimensions".to_string(),
        ));
    }
    // Pairing matrix P_ab = B(g_a, g'_b); normalize g'_new = g' · P⁻¹.
    let p = LinearMap::from_fn(k, k, |a, b| {
        t.ambient.b(&t.g_basis.col(a), &t.gprime_basis.col(b))
    });
    let p_inv = p.inverse().map_err(|_| {
        HomlieError::NonstandardPairing(
            "B pairs the two factors degenerately".to_string(),
        )
    })?;
    let gprime = t.gprime_basis.mul(&p_inv);
    let g_alg = restrict(&t.ambient.algebra, &t.g_basis)?;
    let dual_alg = restrict(&t.ambient.algebra, &gprime)?;
    HomLieBialgebra::new(g_alg, dual_alg)
}
