//! Hom-Lie algebras: structure constants with a twist map, axiom checks,
//! and the standing finite-dimensional examples.

use crate::error::HomlieError;
use crate::linmap::{basis_vec, vec_add, vec_is_zero, LinearMap};
use crate::multilinear::{extended_bracket_with, MultiVector};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A finite-dimensional Hom-Lie algebra: structure constants c^k_{ij} stored
/// for i < j (skew-symmetry is structural) and an invertible twist φ.
#[derive(Clone, Debug, PartialEq)]
pub struct HomLieAlgebra {
    pub dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    pub twist: LinearMap,
}

impl HomLieAlgebra {
    /// Build from 0-based bracket data `[e_i, e_j] = vector` with i < j.
    pub fn new(
        dim: usize,
        brackets: Vec<((usize, usize), Vec<Scalar>)>,
        twist: LinearMap,
    ) -> Self {
        assert!(twist.rows == dim && twist.cols == dim, "twist shape mismatch");
        let mut map = BTreeMap::new();
        for ((i, j), v) in brackets {
            assert!(i < j && j < dim, "bracket indices must satisfy i < j < dim");
            assert_eq!(v.len(), dim, "bracket coordinate length mismatch");
            if !vec_is_zero(&v) {
                map.insert((i, j), v);
            }
        }
        HomLieAlgebra {
            dim,
            brackets: map,
            twist,
        }
    }

    pub fn abelian(dim: usize, twist: LinearMap) -> Self {
        HomLieAlgebra::new(dim, vec![], twist)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.brackets.iter()
    }

    /// [e_i, e_j] as a coordinate vector; the i > j case by skew-symmetry.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        if i == j {
            return vec![Scalar::zero(); self.dim];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => vec![Scalar::zero(); self.dim],
            Some(v) => {
                if flip {
                    v.iter().map(|c| c.neg()).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert!(x.len() == self.dim && y.len() == self.dim);
        let mut acc = vec![Scalar::zero(); self.dim];
        for ((i, j), v) in self.brackets.iter() {
            let coeff = &(&x[*i] * &y[*j]) - &(&x[*j] * &y[*i]);
            if coeff.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if !v[k].is_zero() {
                    acc[k] = &acc[k] + &(&coeff * &v[k]);
                }
            }
        }
        acc
    }

    /// Matrix of ad_x = [x, ·] in the fixed basis.
    pub fn ad(&self, x: &[Scalar]) -> LinearMap {
        LinearMap::from_cols(
            (0..self.dim)
                .map(|j| self.bracket_vec(x, &basis_vec(self.dim, j)))
                .collect(),
        )
    }

    /// The extended bracket on ∧•g from the Hom-Gerstenhaber structure.
    pub fn extended_bracket(
        &self,
        a: &MultiVector,
        b: &MultiVector,
    ) -> Result<MultiVector, HomlieError> {
        extended_bracket_with(a, b, &|i, j| self.bracket_basis(i, j), &self.twist)
    }

    pub fn twist_inv(&self) -> Result<LinearMap, HomlieError> {
        self.twist.inverse()
    }
}

/// Verify the Hom-Lie axioms: skew-symmetry (structural by storage),
/// φ an algebra automorphism, and the twisted Jacobi identity on all basis
/// triples. Failures carry the lexicographically first witness.
pub fn check_hom_lie(g: &HomLieAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    report.pass("skew-symmetry");

    match g.twist.inverse() {
        Err(_) => {
            report.fail("twist-automorphism", "twist is singular".into());
        }
        Ok(_) => {
            let mut witness = None;
            'outer: for i in 0..g.dim {
                for j in i + 1..g.dim {
                    let lhs = g.twist.apply(&g.bracket_basis(i, j));
                    let rhs = g.bracket_vec(&g.twist.col(i), &g.twist.col(j));
                    if !vec_is_zero(&crate::linmap::vec_sub(&lhs, &rhs)) {
                        witness = Some(format!("φ[e{},e{}] ≠ [φe{},φe{}]", i + 1, j + 1, i + 1, j + 1));
                        break 'outer;
                    }
                }
            }
            match witness {
                None => report.pass("twist-automorphism"),
                Some(w) => report.fail("twist-automorphism", w),
            }
        }
    }

    let mut witness = None;
    'jac: for i in 0..g.dim {
        for j in i + 1..g.dim {
            for k in j + 1..g.dim {
                if !hom_jacobi_triple(g, i, j, k) {
                    witness = Some(format!("triple (e{},e{},e{})", i + 1, j + 1, k + 1));
                    break 'jac;
                }
            }
        }
    }
    match witness {
        None => report.pass("hom-jacobi"),
        Some(w) => report.fail("hom-jacobi", w),
    }
    report
}

fn hom_jacobi_triple(g: &HomLieAlgebra, i: usize, j: usize, k: usize) -> bool {
    let e = |t: usize| basis_vec(g.dim, t);
    let term = |a: usize, b: usize, c: usize| {
        g.bracket_vec(&g.twist.apply(&e(a)), &g.bracket_vec(&e(b), &e(c)))
    };
    let sum = vec_add(&vec_add(&term(i, j, k), &term(j, k, i)), &term(k, i, j));
    vec_is_zero(&sum)
}

/// The regular Hom-Lie algebra (gl(V), [·,·]_β, Ad_β) on n×n matrices with
/// the elementary-matrix basis E_{pq} ordered lexicographically.
pub fn gl_beta(n: usize, beta: &LinearMap) -> Result<HomLieAlgebra, HomlieError> {
    assert!(beta.rows == n && beta.cols == n);
    let beta_inv = beta
        .inverse()
        .map_err(|_| HomlieError::SingularMap("gl_beta twist β".into()))?;
    let dim = n * n;
    let unit = |p: usize, q: usize| {
        LinearMap::from_fn(n, n, |i, j| {
            if (i, j) == (p, q) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    };
    let flatten = |m: &LinearMap| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(dim);
        for p in 0..n {
            for q in 0..n {
                v.push(m.get(p, q).clone());
            }
        }
        v
    };
    let bracket_mat = |a: &LinearMap, b: &LinearMap| {
        let left = beta.mul(a).mul(&beta_inv).mul(b).mul(&beta_inv);
        let right = beta.mul(b).mul(&beta_inv).mul(a).mul(&beta_inv);
        left.sub(&right)
    };
    let mut brackets = Vec::new();
    for i in 0..dim {
        let ei = unit(i / n, i % n);
        for j in i + 1..dim {
            let ej = unit(j / n, j % n);
            brackets.push(((i, j), flatten(&bracket_mat(&ei, &ej))));
        }
    }
    // Ad_β in the elementary basis: Ad_β(E) = β E β⁻¹
    let twist = LinearMap::from_cols(
        (0..dim)
            .map(|j| flatten(&beta.mul(&unit(j / n, j % n)).mul(&beta_inv)))
            .collect(),
    );
    Ok(HomLieAlgebra::new(dim, brackets, twist))
}

/// A named example together with the data the example comes with.
#[derive(Clone, Debug)]
pub struct NamedExample {
    pub algebra: HomLieAlgebra,
    /// Invariant bilinear form, when the example is quadratic.
    pub bilinear: Option<LinearMap>,
    /// Distinguished r ∈ ∧²g, when the example carries one.
    pub rmatrix: Option<MultiVector>,
}

/// Keys: `dim2`, `manin-g`, `manin-gprime`, `quadratic4`, `dim3a`.
pub fn named_example(key: &str) -> Result<NamedExample, HomlieError> {
    let s = Scalar::from_int;
    match key {
        "dim2" | "manin-g" => {
            // [e1,e2] = e2, φ(e1) = e1 + e2, φ(e2) = e2
            let twist = LinearMap::from_int_rows(&[&[1, 0], &[1, 1]]);
            let g = HomLieAlgebra::new(2, vec![((0, 1), vec![s(0), s(1)])], twist);
            Ok(NamedExample {
                algebra: g,
                bilinear: None,
                rmatrix: Some(MultiVector::basis(2, &[0, 1])),
            })
        }
        "manin-gprime" => {
            // [e1,e2] = e1, φ(e1) = e1, φ(e2) = -e1 + e2
            let twist = LinearMap::from_int_rows(&[&[1, -1], &[0, 1]]);
            let g = HomLieAlgebra::new(2, vec![((0, 1), vec![s(1), s(0)])], twist);
            Ok(NamedExample {
                algebra: g,
                bilinear: None,
                rmatrix: None,
            })
        }
        "quadratic4" => {
            let twist = LinearMap::from_int_rows(&[
                &[1, 0, 0, 0],
                &[1, 1, 0, 0],
                &[0, 0, 1, -1],
                &[0, 0, 0, 1],
            ]);
            let g = HomLieAlgebra::new(
                4,
                vec![
                    ((0, 1), vec![s(0), s(1), s(0), s(0)]),
                    ((0, 2), vec![s(0), s(1), s(0), s(0)]),
                    ((0, 3), vec![s(-1), s(-1), s(1), s(-1)]),
                    ((1, 3), vec![s(0), s(0), s(1), s(0)]),
                    ((2, 3), vec![s(0), s(0), s(1), s(0)]),
                ],
                twist,
            );
            let b = LinearMap::from_int_rows(&[
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
            ]);
            Ok(NamedExample {
                algebra: g,
                bilinear: Some(b),
                rmatrix: None,
            })
        }
        "dim3a" | "dim3(a)" => {
            let a = Scalar::var("a");
            let twist =
                LinearMap::diagonal(vec![a.clone(), Scalar::one(), a.try_inv().unwrap()]);
            let g = HomLieAlgebra::new(3, vec![((0, 2), vec![s(0), s(1), s(0)])], twist);
            Ok(NamedExample {
                algebra: g,
                bilinear: None,
                rmatrix: Some(MultiVector::basis(3, &[0, 2])),
            })
        }
        other => Err(HomlieError::UnknownKey(other.to_string())),
    }
}

/// Change of basis: bracket'(x, y) = P⁻¹[Px, Py], twist' = P⁻¹φP. Transports
/// a Hom-Lie algebra to an isomorphic one.
pub fn change_basis(g: &HomLieAlgebra, p: &LinearMap) -> Result<HomLieAlgebra, HomlieError> {
    let p_inv = p.inverse()?;
    let mut brackets = Vec::new();
    for i in 0..g.dim {
        for j in i + 1..g.dim {
            let v = p_inv.apply(&g.bracket_vec(&p.col(i), &p.col(j)));
            brackets.push(((i, j), v));
        }
    }
    let twist = p_inv.mul(&g.twist).mul(p);
    Ok(HomLieAlgebra::new(g.dim, brackets, twist))
}
