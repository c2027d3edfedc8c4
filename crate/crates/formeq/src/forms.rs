//! Exact laws of the linear forms under study and the induced functional
//! equations on the dual group.
//!
//! Three independent copies `xi_1, xi_2, xi_3` of a distribution `mu` and a
//! Bernoulli coefficient `alpha` (values 0 and 1, probability one half each,
//! independent of the `xi_i`) give two comparisons:
//!
//! * mode A: `2 xi_1` against `xi_1 + xi_2 + 2 alpha xi_3`, whose laws agree
//!   exactly when `f(2y) = f(y)^2 (f(2y) + 1) / 2` for `f = mu_hat`;
//! * mode B: `2 alpha xi_1` against `xi_1 + xi_2`, whose laws agree exactly
//!   when `f(2y) = 2 f(y)^2 - 1`.
//!
//! The Bernoulli weight one half is fixed; generalized coefficients are out
//! of scope. Laws are always compared on the measure side, mass by mass.

use num::complex::Complex64;
use num::{BigInt, BigRational, One};

use crate::dist::{CfValue, CharFn, Dist};
use crate::group::Character;
use crate::tolerances;

/// Which doubling equation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqMode {
    /// Triple comparison `2 xi_1` vs `xi_1 + xi_2 + 2 alpha xi_3`.
    A,
    /// Pair comparison `2 alpha xi_1` vs `xi_1 + xi_2`.
    B,
}

/// Two form laws with their exact comparison.
#[derive(Debug, Clone)]
pub struct FormLawPair {
    pub law_left: Dist,
    pub law_right: Dist,
    pub equal: bool,
}

impl FormLawPair {
    fn compare(law_left: Dist, law_right: Dist) -> Self {
        let equal = law_left == law_right;
        Self { law_left, law_right, equal }
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Law of `2 xi_1`.
pub fn law_double(mu: &Dist) -> Dist {
    mu.pushforward_double()
}

/// Law of `xi_1 + xi_2 + 2 alpha xi_3`, exact:
/// half `mu * mu`, half `mu * mu * (law of 2 xi_3)`.
pub fn law_triple_bernoulli(mu: &Dist) -> Dist {
    let pair = mu.convolve(mu).expect("same group");
    let with_double = pair.convolve(&mu.pushforward_double()).expect("same group");
    Dist::mix(&half(), &pair, &with_double).expect("same group")
}

/// Mode-A comparison as a law pair.
pub fn triple_form_pair(mu: &Dist) -> FormLawPair {
    FormLawPair::compare(law_double(mu), law_triple_bernoulli(mu))
}

/// Mode-B comparison: left is the law of `2 alpha xi_1`
/// (half a point mass at zero, half the doubled law), right is `mu * mu`.
pub fn law_pair_bernoulli(mu: &Dist) -> FormLawPair {
    let zero = Dist::point(mu.group(), &mu.group().zero());
    let left = Dist::mix(&half(), &zero, &mu.pushforward_double()).expect("same group");
    let right = mu.convolve(mu).expect("same group");
    FormLawPair::compare(left, right)
}

/// Points of the dual where the selected equation fails, with residuals.
///
/// Exact values are compared exactly; any floating comparison uses
/// [`tolerances::CF_RESIDUAL`]. Empty output means the equation holds
/// everywhere on the dual.
pub fn eq_predicate(f: &CharFn, mode: EqMode) -> Vec<(Character, f64)> {
    let g = f.dual();
    let mut failures = Vec::new();
    for yi in 0..g.order() {
        let y2 = g.double_index(yi);
        let residual = match (f.value_at(yi), f.value_at(y2)) {
            (CfValue::Exact(v), CfValue::Exact(v2)) => {
                let lhs = v2.clone();
                let rhs = match mode {
                    EqMode::A => v * v * (v2 + BigRational::one()) * half(),
                    EqMode::B => v * v * BigRational::from(BigInt::from(2)) - BigRational::one(),
                };
                if lhs == rhs {
                    continue;
                }
                num::ToPrimitive::to_f64(&(lhs - rhs)).unwrap_or(f64::INFINITY).abs()
            }
            (v, v2) => {
                let v = v.to_complex();
                let v2 = v2.to_complex();
                let rhs = match mode {
                    EqMode::A => v * v * (v2 + Complex64::new(1.0, 0.0)) * 0.5,
                    EqMode::B => v * v * 2.0 - Complex64::new(1.0, 0.0),
                };
                let r = (v2 - rhs).norm();
                if r <= tolerances::CF_RESIDUAL {
                    continue;
                }
                r
            }
        };
        failures.push((g.character_at(yi), residual));
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteAbelianGroup;
    use crate::group::Subgroup;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn symmetric_pair(g: &FiniteAbelianGroup, a: i64) -> Dist {
        Dist::mix(
            &q(1, 2),
            &Dist::point(g, &g.element(&[a]).unwrap()),
            &Dist::point(g, &g.element(&[-a]).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn law_double_translates_symmetric_pair_on_integer_window() {
        let g = z(16);
        let mu = symmetric_pair(&g, 1);
        assert_eq!(law_double(&mu), symmetric_pair(&g, 2));
    }

    #[test]
    fn law_double_of_order_two_point_is_degenerate() {
        let g = z(2);
        let mu = Dist::point(&g, &g.element(&[1]).unwrap());
        assert_eq!(law_double(&mu), Dist::point(&g, &g.zero()));
    }

    #[test]
    fn law_double_of_uniform_z4_lands_on_even_elements() {
        let g = z(4);
        let law = law_double(&Dist::uniform(&g));
        assert_eq!(law.masses(), &[q(1, 2), q(0, 1), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn triple_form_on_order_two_point_mass() {
        let g = z(2);
        let mu = Dist::point(&g, &g.element(&[1]).unwrap());
        let law = law_triple_bernoulli(&mu);
        assert_eq!(law, Dist::point(&g, &g.zero()));
        assert!(triple_form_pair(&mu).equal);
    }

    #[test]
    fn triple_form_fixes_haar_on_odd_cyclic_group() {
        let g = z(3);
        let mu = Dist::uniform(&g);
        assert_eq!(law_triple_bernoulli(&mu), mu);
        assert!(triple_form_pair(&mu).equal);
    }

    #[test]
    fn triple_form_separates_uniform_on_z4() {
        let g = z(4);
        let mu = Dist::uniform(&g);
        assert_eq!(law_triple_bernoulli(&mu), mu);
        let pair = triple_form_pair(&mu);
        assert!(!pair.equal);
        assert_eq!(pair.law_left.masses(), &[q(1, 2), q(0, 1), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn pair_form_identity_for_symmetric_two_point_law() {
        let g = z(16);
        let mu = symmetric_pair(&g, 1);
        let pair = law_pair_bernoulli(&mu);
        assert!(pair.equal);
        let mut expected = vec![q(0, 1); 16];
        expected[0] = q(1, 2);
        expected[2] = q(1, 4);
        expected[14] = q(1, 4);
        assert_eq!(pair.law_left.masses(), expected.as_slice());
    }

    #[test]
    fn pair_form_identity_for_degenerate_law() {
        let g = z(5);
        let mu = Dist::point(&g, &g.zero());
        assert!(law_pair_bernoulli(&mu).equal);
    }

    #[test]
    fn pair_form_rejects_haar_on_z3() {
        let g = z(3);
        let mu = Dist::uniform(&g);
        let pair = law_pair_bernoulli(&mu);
        assert!(!pair.equal);
        assert_eq!(pair.law_left.masses(), &[q(2, 3), q(1, 6), q(1, 6)]);
        assert_eq!(pair.law_right.masses(), &[q(1, 3), q(1, 3), q(1, 3)]);
    }

    #[test]
    fn predicate_accepts_constant_one() {
        let g = z(6);
        let f = Dist::point(&g, &g.zero()).fourier();
        assert!(eq_predicate(&f, EqMode::A).is_empty());
        assert!(eq_predicate(&f, EqMode::B).is_empty());
    }

    #[test]
    fn predicate_accepts_alternating_cf_on_z4_in_mode_a() {
        let g = z(4);
        let f = Dist::point(&g, &g.element(&[2]).unwrap()).fourier();
        let vals: Vec<_> = f.values().iter().map(|v| v.as_exact().cloned()).collect();
        assert_eq!(vals, vec![Some(q(1, 1)), Some(q(-1, 1)), Some(q(1, 1)), Some(q(-1, 1))]);
        assert!(eq_predicate(&f, EqMode::A).is_empty());
    }

    #[test]
    fn predicate_flags_haar_on_z3_in_mode_b() {
        let g = z(3);
        let f = Dist::uniform(&g).fourier();
        let failures = eq_predicate(&f, EqMode::B);
        // at y = 1: f(2) = 0 but 2 f(1)^2 - 1 = -1
        assert_eq!(failures.len(), 2);
        assert!((failures[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn law_equality_matches_predicate_on_haar_members() {
        for factors in [vec![3], vec![4], vec![6], vec![2, 2]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            for k in crate::group::subgroups(&g) {
                let mu = Dist::haar(&k);
                let equal = triple_form_pair(&mu).equal;
                let empty = eq_predicate(&mu.fourier(), EqMode::A).is_empty();
                assert_eq!(equal, empty);
                assert_eq!(equal, k.is_corwin());
            }
        }
        // non-subgroup sanity case: uniform on a coset
        let g = z(4);
        let k = Subgroup::generate(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let shifted = Dist::haar(&k)
            .convolve(&Dist::point(&g, &g.element(&[1]).unwrap()))
            .unwrap();
        assert_eq!(
            triple_form_pair(&shifted).equal,
            eq_predicate(&shifted.fourier(), EqMode::A).is_empty()
        );
    }
}
