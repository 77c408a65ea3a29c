//! Acceptance suite: one test per acceptance criterion, each printing a
//! single `ACCEPTANCE <n> <name>: pass` line when it holds. Criterion 5 is a
//! documented discrepancy: the test pins down the exact failing identities
//! and the corrected operator, and says so on its line.

mod common;

use common::*;

use homlie::bialgebra::{
    check_bialgebra, check_manin_triple, check_quadratic, double, split, HomLieBialgebra,
    ManinTriple, QuadraticHomLie,
};
use homlie::cohomology::check_d_squared;
use homlie::derivations::{compute_derivations, derivation_homlie, AssociativeAlgebra};
use homlie::format::{serialize, AlgebraFile, Block, FieldDecl};
use homlie::homlie::{check_hom_lie, named_example, HomLieAlgebra};
use homlie::linmap::{basis_vec, vec_eq, LinearMap};
use homlie::multilinear::{tuples, MultiVector};
use homlie::qwitt::{q_witt, witt_bracket, witt_check_jacobi, WittCase};
use homlie::reps::{adjoint_rep, check_representation, coadjoint, dual_rep};
use homlie::scalar::{scalar_eq, Scalar};
use homlie::yangbaxter::{
    check_chybe, check_formu, check_o_operator, coboundary_delta, induced_dual_bracket, lift_t,
    search_chybe, OOperator, RMatrix,
};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn coords(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| s(n)).collect()
}

/// Structural equality up to field promotion (ℚ values vs their images in
/// ℚ(x)): same dimension, same twist, same structure constants.
fn algebras_equal(a: &HomLieAlgebra, b: &HomLieAlgebra) -> bool {
    if a.dim != b.dim || !a.twist.eq_promoted(&b.twist) {
        return false;
    }
    for i in 0..a.dim {
        for j in (i + 1)..a.dim {
            let (x, y) = (a.bracket_basis(i, j), b.bracket_basis(i, j));
            if !x.iter().zip(y.iter()).all(|(p, q)| scalar_eq(p, q)) {
                return false;
            }
        }
    }
    true
}

fn quadratic4() -> QuadraticHomLie {
    let ex = named_example("quadratic4").unwrap();
    QuadraticHomLie {
        algebra: ex.algebra,
        form: ex.bilinear.unwrap(),
    }
}

/// The dim2 bialgebra: [e^1,e^2]_{g*} = e^1 with dual twist (φ⁻¹)*.
fn dim2_bialgebra() -> HomLieBialgebra {
    let g = named_example("dim2").unwrap().algebra;
    let dual_twist = g.twist.inverse().unwrap().transpose();
    let dual = HomLieAlgebra::new(2, vec![((0, 1), vec![s(1), s(0)])], dual_twist);
    HomLieBialgebra::new(g, dual).unwrap()
}

#[test]
fn criterion_01_quadratic_example() {
    let q = quadratic4();
    let hom = check_hom_lie(&q.algebra);
    let quad = check_quadratic(&q);
    // Policy: a failure here is reported with its exact identity, never
    // patched silently.
    assert!(hom.passed(), "hom-Lie axioms failed:\n{hom}");
    assert!(quad.passed(), "quadratic axioms failed:\n{quad}");
    println!("ACCEPTANCE 1 quadratic-example: pass");
}

#[test]
fn criterion_02_manin_triple_example() {
    let q = quadratic4();
    let good = ManinTriple {
        ambient: q.clone(),
        g_basis: LinearMap::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]),
        gprime_basis: LinearMap::from_int_rows(&[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]),
    };
    let report = check_manin_triple(&good);
    assert!(report.passed(), "{report}");

    let swapped = ManinTriple {
        ambient: q.clone(),
        g_basis: LinearMap::from_int_rows(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]),
        gprime_basis: LinearMap::from_int_rows(&[&[0, 0], &[1, 0], &[0, 0], &[0, 1]]),
    };
    let report = check_manin_triple(&swapped);
    let iso = report.item("isotropy").unwrap();
    assert!(!iso.pass);
    // The witness names B(e1, e3) via the column positions (1, 2) of the
    // swapped g factor, and the pairing value is exactly 1.
    assert!(iso.witness.as_deref().unwrap().contains("(1, 2)"));
    assert!(scalar_eq(
        &q.b(&basis_vec(4, 0), &basis_vec(4, 2)),
        &Scalar::one()
    ));
    println!("ACCEPTANCE 2 manin-triple-example: pass");
}

#[test]
fn criterion_03_triangular_dim2_example() {
    let ex = named_example("dim2").unwrap();
    let g = ex.algebra.clone();
    let rm = RMatrix::new(2, ex.rmatrix.unwrap()).unwrap();
    let dual = induced_dual_bracket(&g, &rm).unwrap();
    // [e^1, e^2]_{g*} = e^1 exactly.
    assert!(vec_eq(&dual.bracket_basis(0, 1), &coords(&[1, 0])));
    // Dual twist (φ⁻¹)*: basis images read off as rows [[1,0],[-1,1]].
    assert!(dual
        .twist
        .transpose()
        .eq_promoted(&LinearMap::from_int_rows(&[&[1, 0], &[-1, 1]])));

    let b = HomLieBialgebra::new(g, dual).unwrap();
    let report = check_bialgebra(&b);
    assert!(report.passed(), "{report}");
    assert!(algebras_equal(&b.g, &dim2_bialgebra().g));
    assert!(algebras_equal(&b.dual, &dim2_bialgebra().dual));

    // double ∘ split round-trips bit-exactly: same structures, and the
    // canonical file serialization is byte-identical.
    let b2 = split(&double(&b).unwrap()).unwrap();
    let as_file = |b: &HomLieBialgebra| {
        serialize(&AlgebraFile {
            field: FieldDecl::Rational,
            blocks: vec![
                Block::HomLie {
                    name: "g".to_string(),
                    algebra: b.g.clone(),
                },
                Block::DualAlgebra {
                    name: "g-dual".to_string(),
                    algebra: b.dual.clone(),
                },
            ],
        })
    };
    assert_eq!(as_file(&b), as_file(&b2));
    println!("ACCEPTANCE 3 triangular-dim2-example: pass");
}

#[test]
fn criterion_04_dim3a_example() {
    let ex = named_example("dim3a").unwrap();
    let g = ex.algebra.clone();
    let rm = RMatrix::new(3, ex.rmatrix.unwrap()).unwrap();
    let a = Scalar::var("a");
    let a_inv = a.try_inv().unwrap();

    // Δ over the row order (1,2), (1,3), (2,3):
    // Δ(e1) = (1/a) e1∧e2, Δ(e2) = 0, Δ(e3) = −a e2∧e3.
    let delta = coboundary_delta(&g, &rm).unwrap();
    let expect = LinearMap::from_rows(vec![
        vec![a_inv.clone(), s(0), s(0)],
        vec![s(0), s(0), s(0)],
        vec![s(0), s(0), a.neg()],
    ]);
    assert!(delta.eq_promoted(&expect));

    // [r,r] = −2 e1∧e2∧e3.
    let rr = g.extended_bracket(&rm.r, &rm.r).unwrap();
    assert!(rr.eq_promoted(&MultiVector::basis(3, &[0, 1, 2]).scale(&s(-2))));

    // CHYBE fails but ad_x[r,r] = 0 for all x.
    assert_eq!(check_chybe(&g, &rm).unwrap(), (false, true));

    // Induced dual bracket table in ℚ(a):
    // [e^1,e^2] = (1/a) e^1, [e^1,e^3] = 0, [e^2,e^3] = −a e^3.
    let dual = induced_dual_bracket(&g, &rm).unwrap();
    let rows = [
        (0usize, 1usize, vec![a_inv, s(0), s(0)]),
        (0, 2, vec![s(0), s(0), s(0)]),
        (1, 2, vec![s(0), s(0), a.neg()]),
    ];
    for (i, j, want) in rows {
        let got = dual.bracket_basis(i, j);
        assert!(
            got.iter().zip(want.iter()).all(|(p, q)| scalar_eq(p, q)),
            "dual bracket (e^{}, e^{}) mismatch",
            i + 1,
            j + 1
        );
    }
    println!("ACCEPTANCE 4 dim3a-example: pass");
}

#[test]
fn criterion_05_o_operator_example() {
    let g = named_example("dim2").unwrap().algebra;
    let co = coadjoint(&g).unwrap();

    // The operator matrix as printed, under both orientations (rows as
    // basis images, and columns as basis images). Both fail both
    // conditions, each with an explicit witness.
    for cand in [
        LinearMap::from_int_rows(&[&[-1, 1], &[-1, 0]]),
        LinearMap::from_int_rows(&[&[-1, -1], &[1, 0]]),
    ] {
        let report = check_o_operator(&OOperator::new(co.clone(), cand).unwrap());
        let o1 = report.item("twist-intertwining").unwrap();
        let o2 = report.item("o-operator-identity").unwrap();
        assert!(!o1.pass && !o2.pass);
        assert!(o1.witness.is_some() && o2.witness.is_some());
    }

    // The composition r♯∘(φ⁻¹)* for r = e1∧e2 — the operator the worked
    // example actually constructs — does pass both conditions. Its matrix
    // differs from the printed one by the composition order of the factors.
    let corrected = LinearMap::from_int_rows(&[&[0, -1], &[1, -1]]);
    let rm = RMatrix::new(2, MultiVector::basis(2, &[0, 1])).unwrap();
    let phi_inv_star = g.twist.inverse().unwrap().transpose();
    assert!(corrected.eq_promoted(&rm.rsharp.mul(&phi_inv_star)));
    let report = check_o_operator(&OOperator::new(co, corrected).unwrap());
    assert!(report.passed(), "{report}");

    println!(
        "ACCEPTANCE 5 o-operator-example: pass (documented discrepancy: the \
         stated matrix [[-1,1],[-1,0]] fails both conditions under every \
         orientation; the composition r♯∘(φ⁻¹)* = [[0,-1],[1,-1]] passes)"
    );
}

#[test]
fn criterion_06_q_witt_family() {
    let q = Scalar::var("q");
    let q_pow = |c: i64, e: i64| s(c).try_mul(&q.try_pow(e).unwrap()).unwrap();
    for n in -5..=5i64 {
        for m in -5..=5i64 {
            // Case I: [d_n, d_m] = (m−n) q^{n+m−3} d_{n+m−1}.
            let (idx, c) = witt_bracket(&q_witt(WittCase::I), n, m);
            assert_eq!(idx, n + m - 1);
            assert!(scalar_eq(&c, &q_pow(m - n, n + m - 3)));
            // Case II: [d_n, d_m] = (m−n) q^{n+m+1} d_{−n−m−3}.
            let (idx, c) = witt_bracket(&q_witt(WittCase::II), n, m);
            assert_eq!(idx, -n - m - 3);
            assert!(scalar_eq(&c, &q_pow(m - n, n + m + 1)));
        }
        // Case II twist: Ad_σ(d_n) = −q^{n+1} d_{−n−2}.
        let (idx, c) = q_witt(WittCase::II).twist(n);
        assert_eq!(idx, -n - 2);
        assert!(scalar_eq(&c, &q_pow(-1, n + 1)));
    }
    for case in [WittCase::I, WittCase::II] {
        let fam = q_witt(case);
        for n in -5..=5 {
            for m in -5..=5 {
                for l in -5..=5 {
                    assert!(
                        witt_check_jacobi(&fam, n, m, l),
                        "Jacobi failed for {case:?} on ({n}, {m}, {l})"
                    );
                }
            }
        }
    }
    println!("ACCEPTANCE 6 q-witt-family: pass");
}

#[test]
fn criterion_07_double_dual_identity() {
    let mut rng = rng(0x07);
    for trial in 0..50 {
        let dim = 2 + (trial % 2);
        let g = random_hom_lie(&mut rng, dim);
        let rep = random_rep(&mut rng, &g);
        assert!(rep.dim <= 3);
        let dd = dual_rep(&dual_rep(&rep).unwrap()).unwrap();
        assert!(dd.twist.eq_promoted(&rep.twist), "trial {trial}");
        for (m1, m2) in dd.matrices.iter().zip(rep.matrices.iter()) {
            assert!(m1.eq_promoted(m2), "trial {trial}");
        }
    }
    println!("ACCEPTANCE 7 double-dual-identity: pass");
}

#[test]
fn criterion_08_d_squared_vanishes() {
    let mut rng = rng(0x08);
    let mut pool: Vec<HomLieAlgebra> = ["dim2", "manin-gprime", "quadratic4", "dim3a"]
        .iter()
        .map(|k| named_example(k).unwrap().algebra)
        .collect();
    for trial in 0..20 {
        pool.push(random_hom_lie(&mut rng, 2 + (trial % 3)));
    }
    for (which, g) in pool.iter().enumerate() {
        for sexp in -2..=2 {
            for k in 1..=2 {
                let rep = adjoint_rep(g, sexp, k).unwrap();
                assert!(check_representation(&rep).passed());
                let report = check_d_squared(g, &rep, 2).unwrap();
                assert!(
                    report.passed(),
                    "algebra {which}, s = {sexp}, k = {k}:\n{report}"
                );
            }
        }
    }
    println!("ACCEPTANCE 8 d-squared-vanishes: pass");
}

#[test]
fn criterion_09_triangular_pipeline_round_trip() {
    let grid = [s(-1), s(0), s(1)];
    let inputs: Vec<(HomLieAlgebra, Vec<(usize, usize)>)> = vec![
        (named_example("dim2").unwrap().algebra, vec![(0, 1)]),
        (
            named_example("dim3a").unwrap().algebra,
            vec![(0, 1), (0, 2), (1, 2)],
        ),
        (heisenberg3(), vec![(0, 1), (0, 2), (1, 2)]),
        (solvable3(), vec![(0, 1), (0, 2), (1, 2)]),
    ];
    let mut round_trips = 0;
    for (g, support) in &inputs {
        for rm in search_chybe(g, support, &grid).unwrap() {
            // Keep the solutions whose induced dual is Hom-Lie.
            if !check_chybe(g, &rm).unwrap().1 {
                continue;
            }
            let dual = induced_dual_bracket(g, &rm).unwrap();
            let b = HomLieBialgebra::new(g.clone(), dual).unwrap();
            assert!(check_bialgebra(&b).passed());
            let t = double(&b).unwrap();
            let report = check_manin_triple(&t);
            assert!(report.passed(), "{report}");
            let b2 = split(&t).unwrap();
            assert!(algebras_equal(&b.g, &b2.g));
            assert!(algebras_equal(&b.dual, &b2.dual));
            round_trips += 1;
        }
    }
    assert!(round_trips >= 10, "only {round_trips} pipelines exercised");
    println!("ACCEPTANCE 9 triangular-pipeline-round-trip: pass ({round_trips} round trips)");
}

#[test]
fn criterion_10_coboundary_equivalence() {
    let mut rng = rng(0x10);
    let mut dual_fails = 0;
    let mut dual_passes = 0;
    let mut check = |g: &HomLieAlgebra, rm: &RMatrix| {
        let adr_zero = check_chybe(g, rm).unwrap().1;
        let dual = induced_dual_bracket(g, rm).unwrap();
        let dual_ok = check_hom_lie(&dual).passed();
        assert_eq!(
            dual_ok, adr_zero,
            "equivalence counterexample found on a dim-3 algebra"
        );
        if dual_ok {
            dual_passes += 1;
        } else {
            dual_fails += 1;
        }
    };
    // Deterministic negative seed: a solvable algebra with ad_x[r,r] ≠ 0.
    let g = solvable3();
    let r = MultiVector::basis(3, &[0, 1]).add(&MultiVector::basis(3, &[0, 2]));
    check(&g, &RMatrix::new(3, r).unwrap());
    for _ in 0..50 {
        let g = random_hom_lie(&mut rng, 3);
        let rm = random_conr_r(&mut rng, &g);
        check(&g, &rm);
    }
    assert!(dual_fails >= 1 && dual_passes >= 1);
    println!(
        "ACCEPTANCE 10 coboundary-equivalence: pass ({dual_passes} duals valid, \
         {dual_fails} invalid, zero counterexamples)"
    );
}

#[test]
fn criterion_11_o_operator_lift_biconditional() {
    let mut rng = rng(0x11);
    let mut holds = 0;
    let mut fails = 0;
    let mut check = |op: &OOperator| {
        let lifted = lift_t(op).unwrap();
        let chybe = check_chybe(&lifted.algebra, &lifted.rmatrix).unwrap().0;
        let composed = OOperator::new(op.rep.clone(), op.t.mul(&op.rep.twist)).unwrap();
        let is_o = check_o_operator(&composed).passed();
        assert_eq!(chybe, is_o, "biconditional broke");
        if chybe {
            holds += 1;
        } else {
            fails += 1;
        }
    };

    // Deliberately failing seed: T = id on the adjoint representation of
    // dim2 intertwines the twists but T∘β is not an O-operator.
    let g = named_example("dim2").unwrap().algebra;
    let ad = adjoint_rep(&g, 0, 1).unwrap();
    check(&OOperator::new(ad, LinearMap::identity(2)).unwrap());
    // Passing seed: the corrected coadjoint operator, pulled back by β.
    let co = coadjoint(&g).unwrap();
    let t0 = LinearMap::from_int_rows(&[&[0, -1], &[1, -1]]);
    let t = t0.mul(&co.twist.inverse().unwrap());
    check(&OOperator::new(co, t).unwrap());

    for trial in 0..30 {
        let g = random_hom_lie(&mut rng, 2 + (trial % 2));
        let rep = random_rep(&mut rng, &g);
        let t = random_intertwining_t(&mut rng, &rep);
        check(&OOperator::new(rep, t).unwrap());
    }
    assert!(holds >= 1 && fails >= 1, "both directions must be exercised");
    println!(
        "ACCEPTANCE 11 o-operator-lift-biconditional: pass ({holds} lifts solve \
         the equation, {fails} do not, biconditional exact throughout)"
    );
}

/// ℚ[ε]/(ε²) on the basis (1, ε).
fn dual_numbers() -> AssociativeAlgebra {
    AssociativeAlgebra::new(
        2,
        vec![
            vec![coords(&[1, 0]), coords(&[0, 1])],
            vec![coords(&[0, 1]), coords(&[0, 0])],
        ],
    )
    .unwrap()
}

/// ℚ[t]/(t³) on the basis (1, t, t²).
fn truncated_cubic() -> AssociativeAlgebra {
    AssociativeAlgebra::new(
        3,
        vec![
            vec![coords(&[1, 0, 0]), coords(&[0, 1, 0]), coords(&[0, 0, 1])],
            vec![coords(&[0, 1, 0]), coords(&[0, 0, 1]), coords(&[0, 0, 0])],
            vec![coords(&[0, 0, 1]), coords(&[0, 0, 0]), coords(&[0, 0, 0])],
        ],
    )
    .unwrap()
}

/// ℚ[t]/(t⁴) on the basis (1, t, t², t³).
fn truncated_quartic() -> AssociativeAlgebra {
    let mut mult = vec![vec![coords(&[0, 0, 0, 0]); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i + j < 4 {
                mult[i][j][i + j] = s(1);
            }
        }
    }
    AssociativeAlgebra::new(4, mult).unwrap()
}

/// Upper-triangular 2×2 matrices on (E11, E12, E22).
fn upper_triangular() -> AssociativeAlgebra {
    AssociativeAlgebra::new(
        3,
        vec![
            vec![coords(&[1, 0, 0]), coords(&[0, 1, 0]), coords(&[0, 0, 0])],
            vec![coords(&[0, 0, 0]), coords(&[0, 0, 0]), coords(&[0, 1, 0])],
            vec![coords(&[0, 0, 0]), coords(&[0, 0, 0]), coords(&[0, 0, 1])],
        ],
    )
    .unwrap()
}

/// Full 2×2 matrices on (E11, E12, E21, E22): E_ij E_kl = δ_jk E_il.
fn matrices2() -> AssociativeAlgebra {
    let pairs = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
    let mut mult = vec![vec![coords(&[0, 0, 0, 0]); 4]; 4];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                let target = pairs.iter().position(|&p| p == (i, l)).unwrap();
                mult[a][b][target] = s(1);
            }
        }
    }
    AssociativeAlgebra::new(4, mult).unwrap()
}

/// Independent oracle for dim Der_{σ,σ}(A): assemble the residual of the
/// derivation identity on every elementary matrix E_pq and count
/// n² − rank of the resulting system.
fn derivation_dimension_oracle(a: &AssociativeAlgebra, sigma: &LinearMap) -> usize {
    let n = a.dim;
    let mut cols = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let mut d = LinearMap::zeros(n, n);
            d.set(p, q, Scalar::one());
            let mut flat = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    let ei = basis_vec(n, i);
                    let ej = basis_vec(n, j);
                    let lhs = d.apply(&a.product(i, j));
                    let t1 = a.product_vec(&d.apply(&ei), &sigma.apply(&ej));
                    let t2 = a.product_vec(&sigma.apply(&ei), &d.apply(&ej));
                    for k in 0..n {
                        flat.push(
                            lhs[k]
                                .try_sub(&t1[k])
                                .and_then(|v| v.try_sub(&t2[k]))
                                .unwrap(),
                        );
                    }
                }
            }
            cols.push(flat);
        }
    }
    n * n - LinearMap::from_cols(cols).rank()
}

#[test]
fn criterion_12_derivation_hom_lie_algebras() {
    let half = Scalar::from_frac(1, 2);
    let third = Scalar::from_frac(1, 3);
    let fixtures: Vec<(AssociativeAlgebra, Vec<LinearMap>)> = vec![
        (
            dual_numbers(),
            vec![
                LinearMap::from_int_rows(&[&[1, 0], &[0, 2]]),
                LinearMap::from_int_rows(&[&[1, 0], &[0, 3]]),
            ],
        ),
        (
            truncated_cubic(),
            vec![
                LinearMap::from_int_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]),
                LinearMap::from_int_rows(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 9]]),
            ],
        ),
        (
            truncated_quartic(),
            vec![
                LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 4, 0], &[0, 0, 0, 8]]),
                LinearMap::from_int_rows(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]),
            ],
        ),
        (
            upper_triangular(),
            // Conjugation by diag(1, c) sends E12 to E12/c.
            vec![
                LinearMap::diagonal(vec![Scalar::one(), half.clone(), Scalar::one()]),
                LinearMap::diagonal(vec![Scalar::one(), third.clone(), Scalar::one()]),
            ],
        ),
        (
            matrices2(),
            // Conjugation by diag(1, c) scales E12 by 1/c and E21 by c.
            vec![
                LinearMap::diagonal(vec![Scalar::one(), half, s(2), Scalar::one()]),
                LinearMap::diagonal(vec![Scalar::one(), third, s(3), Scalar::one()]),
            ],
        ),
    ];
    for (which, (a, sigmas)) in fixtures.iter().enumerate() {
        for sigma in sigmas {
            assert!(!sigma.eq_promoted(&LinearMap::identity(a.dim)));
            let space = compute_derivations(a, sigma, sigma).unwrap();
            assert_eq!(
                space.basis.len(),
                derivation_dimension_oracle(a, sigma),
                "basis dimension disagrees with the oracle on fixture {which}"
            );
            let g = derivation_homlie(&space, 1, 1).unwrap();
            let report = check_hom_lie(&g);
            assert!(report.passed(), "fixture {which}:\n{report}");
        }
    }
    println!("ACCEPTANCE 12 derivation-hom-lie-algebras: pass");
}

#[test]
fn criterion_13_contraction_identity() {
    // The worked function-field example, with the rejected twist placement
    // leaving a logged residual.
    let ex = named_example("dim3a").unwrap();
    let rm = RMatrix::new(3, ex.rmatrix.unwrap()).unwrap();
    let report = check_formu(&ex.algebra, &rm).unwrap();
    assert!(report.passed(), "{report}");
    let note = report.item("rejected-pretwisted-variant").unwrap();
    assert!(note.witness.as_deref().unwrap().contains("residual"));

    let mut rng = rng(0x13);
    for trial in 0..20 {
        let g = random_hom_lie(&mut rng, 2 + (trial % 2));
        let rm = random_conr_r(&mut rng, &g);
        let report = check_formu(&g, &rm).unwrap();
        assert!(report.passed(), "trial {trial}:\n{report}");
        assert!(report.item("rejected-pretwisted-variant").is_some());
    }
    println!("ACCEPTANCE 13 contraction-identity: pass (rejected variant residual logged)");
}

/// Unused by the criteria above but kept callable so the shared generator
/// module stays exercised end to end.
#[test]
fn generators_are_deterministic() {
    let mut r1 = rng(42);
    let mut r2 = rng(42);
    let g1 = random_hom_lie(&mut r1, 3);
    let g2 = random_hom_lie(&mut r2, 3);
    assert!(algebras_equal(&g1, &g2));
    let pairs: Vec<Vec<usize>> = tuples(3, 2);
    assert_eq!(pairs.len(), 3);
}
