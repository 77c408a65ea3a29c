//! Two ℤ-graded families of Hom-Lie algebras on the basis {d_n | n ∈ ℤ},
//! with coefficients in the exact function field ℚ(q).
//!
//! Case I comes from the twist t ↦ qt, case II from t ↦ q/t. In both,
//! each bracket `[d_n, d_m]` and twist image `Ad_σ(d_n)` is a single
//! scalar multiple of one basis vector, so the family is represented by
//! closed-form coefficient functions rather than a finite table.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittCase {
    I,
    II,
}

#[derive(Clone, Copy, Debug)]
pub struct GradedHomLieFamily {
    pub case: WittCase,
}

/// `c * q^e` as an element of ℚ(q).
fn q_pow(c: i64, e: i64) -> Scalar {
    Scalar::from_int(c)
        .try_mul(&Scalar::var("q").try_pow(e).expect("q is invertible"))
        .expect("same field")
}

pub fn q_witt(case: WittCase) -> GradedHomLieFamily {
    GradedHomLieFamily { case }
}

impl GradedHomLieFamily {
    /// `[d_n, d_m] = coeff * d_index`; returns `(index, coeff)`.
    pub fn bracket(&self, n: i64, m: i64) -> (i64, Scalar) {
        match self.case {
            WittCase::I => (n + m - 1, q_pow(m - n, n + m - 3)),
            WittCase::II => (-n - m - 3, q_pow(m - n, n + m + 1)),
        }
    }

    /// `Ad_σ(d_n) = coeff * d_index`; returns `(index, coeff)`.
    pub fn twist(&self, n: i64) -> (i64, Scalar) {
        match self.case {
            WittCase::I => (n, q_pow(1, n - 1)),
            WittCase::II => (-n - 2, q_pow(-1, n + 1)),
        }
    }

    /// Evaluate `[Ad_σ(d_n), [d_m, d_l]] + c.p.` symbolically in ℚ(q) and
    /// test whether every graded component vanishes exactly.
    pub fn check_jacobi(&self, n: i64, m: i64, l: i64) -> bool {
        let mut acc: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (a, b, c) in [(n, m, l), (m, l, n), (l, n, m)] {
            let (ti, tc) = self.twist(a);
            let (bi, bc) = self.bracket(b, c);
            let (oi, oc) = self.bracket(ti, bi);
            let coeff = tc
                .try_mul(&bc)
                .and_then(|x| x.try_mul(&oc))
                .expect("same field");
            let entry = acc.entry(oi).or_insert_with(Scalar::zero);
            *entry = entry.try_add(&coeff).expect("same field");
        }
        acc.values().all(|v| v.is_zero())
    }
}

pub fn witt_bracket(fam: &GradedHomLieFamily, n: i64, m: i64) -> (i64, Scalar) {
    fam.bracket(n, m)
}

pub fn witt_check_jacobi(fam: &GradedHomLieFamily, n: i64, m: i64, l: i64) -> bool {
    fam.check_jacobi(n, m, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::scalar_eq;

    /// Independent oracle: a Laurent monomial `c * q^a * t^b` in ℚ(q)[t,t⁻¹],
    /// acted on by the defining operators rather than the printed closed
    /// forms. `d_n(t^k) = k (σ(t))^{k-1} t^n` and `Ad_σ = σ ∘ d_n ∘ σ⁻¹`
    /// where σ substitutes t by qt (case I) or q/t (case II).
    #[derive(Clone, Debug)]
    struct Mono {
        coeff: Scalar,
        t_exp: i64,
    }

    fn sigma(case: WittCase, m: &Mono) -> Mono {
        // Substitute t by qt (I) or q t^{-1} (II); both twists are involutions
        // of the monomial lattice up to the q-power bookkeeping below.
        match case {
            WittCase::I => Mono {
                coeff: m.coeff.try_mul(&q_pow(1, m.t_exp)).unwrap(),
                t_exp: m.t_exp,
            },
            WittCase::II => Mono {
                coeff: m.coeff.try_mul(&q_pow(1, m.t_exp)).unwrap(),
                t_exp: -m.t_exp,
            },
        }
    }

    fn sigma_inv(case: WittCase, m: &Mono) -> Mono {
        match case {
            // σ⁻¹(t) = t/q
            WittCase::I => Mono {
                coeff: m.coeff.try_mul(&q_pow(1, -m.t_exp)).unwrap(),
                t_exp: m.t_exp,
            },
            // σ⁻¹(t) = q/t (σ is an involution)
            WittCase::II => sigma(case, m),
        }
    }

    fn d_action(case: WittCase, n: i64, m: &Mono) -> Mono {
        // d_n(t^k) = k (σ(t))^{k-1} t^n, extended linearly.
        let k = m.t_exp;
        let sigma_t_pow = match case {
            WittCase::I => Mono {
                coeff: q_pow(1, k - 1),
                t_exp: k - 1,
            },
            WittCase::II => Mono {
                coeff: q_pow(1, k - 1),
                t_exp: -(k - 1),
            },
        };
        Mono {
            coeff: m
                .coeff
                .try_mul(&Scalar::from_int(k))
                .unwrap()
                .try_mul(&sigma_t_pow.coeff)
                .unwrap(),
            t_exp: sigma_t_pow.t_exp + n,
        }
    }

    fn tk(k: i64) -> Mono {
        Mono {
            coeff: Scalar::one(),
            t_exp: k,
        }
    }

    fn mono_eq(a: &Mono, b: &Mono) -> bool {
        if a.coeff.is_zero() && b.coeff.is_zero() {
            return true;
        }
        a.t_exp == b.t_exp && scalar_eq(&a.coeff, &b.coeff)
    }

    #[test]
    fn case_i_bracket_printed_value() {
        let fam = q_witt(WittCase::I);
        let (idx, c) = witt_bracket(&fam, 0, 1);
        assert_eq!(idx, 0);
        assert!(scalar_eq(&c, &Scalar::var("q").try_pow(-2).unwrap()));
    }

    #[test]
    fn case_ii_twist_printed_value() {
        let fam = q_witt(WittCase::II);
        let (idx, c) = fam.twist(0);
        assert_eq!(idx, -2);
        assert!(scalar_eq(&c, &Scalar::var("q").neg()));
    }

    #[test]
    fn jacobi_small_triple() {
        let fam = q_witt(WittCase::I);
        assert!(witt_check_jacobi(&fam, 0, 1, 2));
    }

    #[test]
    fn jacobi_all_small_indices_both_cases() {
        for case in [WittCase::I, WittCase::II] {
            let fam = q_witt(case);
            for n in -5..=5 {
                for m in -5..=5 {
                    for l in -5..=5 {
                        assert!(
                            fam.check_jacobi(n, m, l),
                            "jacobi failed: case {:?}, ({}, {}, {})",
                            case,
                            n,
                            m,
                            l
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_antisymmetric() {
        for case in [WittCase::I, WittCase::II] {
            let fam = q_witt(case);
            for n in -4..=4 {
                for m in -4..=4 {
                    let (i, a) = fam.bracket(n, m);
                    let (j, b) = fam.bracket(m, n);
                    assert_eq!(i, j);
                    assert!(scalar_eq(&a, &b.neg()));
                }
            }
        }
    }

    /// Cross-check the closed-form bracket coefficients against the
    /// operator-level commutator `σ D₁ σ⁻¹ D₂ σ⁻¹ − σ D₂ σ⁻¹ D₁ σ⁻¹`
    /// applied to monomials t^k, k ≤ 6.
    #[test]
    fn bracket_matches_operator_oracle() {
        for case in [WittCase::I, WittCase::II] {
            let fam = q_witt(case);
            for n in -3..=3 {
                for m in -3..=3 {
                    for k in -6..=6i64 {
                        let term = |a: i64, b: i64| -> Mono {
                            let s1 = sigma_inv(case, &tk(k));
                            let s2 = d_action(case, b, &s1);
                            let s3 = sigma_inv(case, &s2);
                            let s4 = d_action(case, a, &s3);
                            sigma(case, &s4)
                        };
                        let lhs1 = term(n, m);
                        let lhs2 = term(m, n);
                        assert_eq!(lhs1.t_exp, lhs2.t_exp);
                        let lhs = Mono {
                            coeff: lhs1.coeff.try_sub(&lhs2.coeff).unwrap(),
                            t_exp: lhs1.t_exp,
                        };
                        let (idx, c) = fam.bracket(n, m);
                        let target = d_action(case, idx, &tk(k));
                        let rhs = Mono {
                            coeff: c.try_mul(&target.coeff).unwrap(),
                            t_exp: target.t_exp,
                        };
                        assert!(
                            mono_eq(&lhs, &rhs),
                            "case {:?} [d_{}, d_{}] on t^{}: {:?} vs {:?}",
                            case,
                            n,
                            m,
                            k,
                            lhs,
                            rhs
                        );
                    }
                }
            }
        }
    }

    /// Cross-check the closed-form twist against σ ∘ d_n ∘ σ⁻¹ on monomials.
    #[test]
    fn twist_matches_operator_oracle() {
        for case in [WittCase::I, WittCase::II] {
            let fam = q_witt(case);
            for n in -3..=3 {
                for k in -6..=6i64 {
                    let s1 = sigma_inv(case, &tk(k));
                    let s2 = d_action(case, n, &s1);
                    let lhs = sigma(case, &s2);
                    let (idx, c) = fam.twist(n);
                    let target = d_action(case, idx, &tk(k));
                    let rhs = Mono {
                        coeff: c.try_mul(&target.coeff).unwrap(),
                        t_exp: target.t_exp,
                    };
                    assert!(
                        mono_eq(&lhs, &rhs),
                        "case {:?} twist d_{} on t^{}: {:?} vs {:?}",
                        case,
                        n,
                        k,
                        lhs,
                        rhs
                    );
                }
            }
        }
    }
}
