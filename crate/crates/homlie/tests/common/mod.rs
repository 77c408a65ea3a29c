//! Shared deterministic generators for the integration suites. Everything
//! is seeded, so failures reproduce exactly.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homlie::homlie::{change_basis, check_hom_lie, named_example, HomLieAlgebra};
use homlie::linmap::LinearMap;
use homlie::multilinear::{binomial, tuples, MultiVector};
use homlie::reps::{adjoint_rep, check_representation, Representation};
use homlie::scalar::Scalar;
use homlie::yangbaxter::RMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(rng.gen_range(-2..=2))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearMap {
    let mut m = LinearMap::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, small_int(rng));
        }
    }
    m
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> LinearMap {
    loop {
        let m = random_matrix(rng, n, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Heisenberg algebra: [e1,e2] = e3, identity twist.
pub fn heisenberg3() -> HomLieAlgebra {
    let s = Scalar::from_int;
    HomLieAlgebra::new(
        3,
        vec![((0, 1), vec![s(0), s(0), s(1)])],
        LinearMap::identity(3),
    )
}

/// Non-unimodular solvable algebra: [e1,e2] = e2, [e1,e3] = 2e3, identity
/// twist.
pub fn solvable3() -> HomLieAlgebra {
    let s = Scalar::from_int;
    HomLieAlgebra::new(
        3,
        vec![
            ((0, 1), vec![s(0), s(1), s(0)]),
            ((0, 2), vec![s(0), s(0), s(2)]),
        ],
        LinearMap::identity(3),
    )
}

/// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = −2f, [e,f] = h; identity
/// twist.
pub fn sl2() -> HomLieAlgebra {
    let s = Scalar::from_int;
    HomLieAlgebra::new(
        3,
        vec![
            ((0, 1), vec![s(0), s(2), s(0)]),
            ((0, 2), vec![s(0), s(0), s(-2)]),
            ((1, 2), vec![s(1), s(0), s(0)]),
        ],
        LinearMap::identity(3),
    )
}

/// Verified base examples of the requested dimension.
pub fn base_pool(dim: usize) -> Vec<HomLieAlgebra> {
    let mut pool: Vec<HomLieAlgebra> = Vec::new();
    match dim {
        1 => pool.push(HomLieAlgebra::abelian(1, LinearMap::identity(1))),
        2 => {
            pool.push(named_example("dim2").unwrap().algebra);
            pool.push(named_example("manin-gprime").unwrap().algebra);
            pool.push(HomLieAlgebra::abelian(2, LinearMap::identity(2)));
        }
        3 => {
            pool.push(named_example("dim3a").unwrap().algebra);
            pool.push(heisenberg3());
            pool.push(solvable3());
            pool.push(sl2());
        }
        4 => {
            pool.push(named_example("quadratic4").unwrap().algebra);
            pool.push(HomLieAlgebra::abelian(4, LinearMap::identity(4)));
        }
        _ => panic!("no base examples of dimension {dim}"),
    }
    pool
}

/// A random verified Hom-Lie algebra: a base example of the requested
/// dimension transported along a random change of basis. For abelian bases a
/// random invertible twist is attached first (any twist works there).
pub fn random_hom_lie(rng: &mut ChaCha8Rng, dim: usize) -> HomLieAlgebra {
    let pool = base_pool(dim);
    let mut g = pool[rng.gen_range(0..pool.len())].clone();
    if g.is_abelian() {
        g = HomLieAlgebra::abelian(dim, random_invertible(rng, dim));
    }
    let p = random_invertible(rng, dim);
    let out = change_basis(&g, &p).unwrap();
    assert!(check_hom_lie(&out).passed(), "generator produced a bad algebra");
    out
}

/// A random verified representation of g: a twisted adjoint representation
/// conjugated by a random invertible matrix.
pub fn random_rep(rng: &mut ChaCha8Rng, g: &HomLieAlgebra) -> Representation {
    let s = rng.gen_range(-1..=1);
    let k = rng.gen_range(1..=2);
    let base = adjoint_rep(g, s, k).unwrap();
    let q = random_invertible(rng, base.dim);
    let q_inv = q.inverse().unwrap();
    let matrices = base
        .matrices
        .iter()
        .map(|m| q_inv.mul(&m.mul(&q)))
        .collect();
    let twist = q_inv.mul(&base.twist.mul(&q));
    let rep = Representation::new(g.clone(), matrices, twist).unwrap();
    assert!(
        check_representation(&rep).passed(),
        "generator produced a bad representation"
    );
    rep
}

/// The matrix of the linear map r ↦ r♯∘(φ⁻¹)* − φ∘r♯ on wedge coordinates;
/// its kernel is the space of r satisfying the compatibility condition.
fn conr_constraint_matrix(g: &HomLieAlgebra) -> LinearMap {
    let n = g.dim;
    let phi_inv_t = g.twist.inverse().unwrap().transpose();
    let pairs = tuples(n, 2);
    let cols = pairs
        .iter()
        .map(|t| {
            let rm = RMatrix::new(n, MultiVector::basis(n, t)).unwrap();
            let residual = rm.rsharp.mul(&phi_inv_t).sub(&g.twist.mul(&rm.rsharp));
            let mut flat = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    flat.push(residual.get(i, j).clone());
                }
            }
            flat
        })
        .collect();
    LinearMap::from_cols(cols)
}

/// A random r ∈ ∧²g satisfying the compatibility condition, as a random
/// integer combination of a kernel basis.
pub fn random_conr_r(rng: &mut ChaCha8Rng, g: &HomLieAlgebra) -> RMatrix {
    let kernel = conr_constraint_matrix(g).nullspace();
    let n = g.dim;
    let mut coords = vec![Scalar::zero(); binomial(n, 2)];
    for basis in &kernel {
        let c = small_int(rng);
        for (k, v) in basis.iter().enumerate() {
            coords[k] = coords[k].try_add(&v.try_mul(&c).unwrap()).unwrap();
        }
    }
    RMatrix::new(n, MultiVector::from_coords(n, 2, &coords)).unwrap()
}

/// A random T: V → g with T∘β = φ∘T, sampled from the kernel of the
/// vectorized intertwining constraint (unknowns T_{pq}, column-major).
pub fn random_intertwining_t(rng: &mut ChaCha8Rng, rep: &Representation) -> LinearMap {
    let n = rep.algebra.dim;
    let d = rep.dim;
    let phi = &rep.algebra.twist;
    let beta = &rep.twist;
    // (Tβ − φT)_{iq} = Σ_p T_{ip} β_{pq} − Σ_p φ_{ip} T_{pq}
    let mut constraint = LinearMap::zeros(n * d, n * d);
    for i in 0..n {
        for q in 0..d {
            let row = i * d + q;
            for p in 0..d {
                let col = i * d + p;
                let cur = constraint.get(row, col).clone();
                constraint.set(row, col, cur.try_add(beta.get(p, q)).unwrap());
            }
            for p in 0..n {
                let col = p * d + q;
                let cur = constraint.get(row, col).clone();
                constraint.set(row, col, cur.try_sub(phi.get(i, p)).unwrap());
            }
        }
    }
    let kernel = constraint.nullspace();
    let mut flat = vec![Scalar::zero(); n * d];
    for basis in &kernel {
        let c = small_int(rng);
        for (k, v) in basis.iter().enumerate() {
            flat[k] = flat[k].try_add(&v.try_mul(&c).unwrap()).unwrap();
        }
    }
    let mut t = LinearMap::zeros(n, d);
    for i in 0..n {
        for q in 0..d {
            t.set(i, q, flat[i * d + q].clone());
        }
    }
    t
}
