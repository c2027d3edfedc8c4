//! Exact probability calculus on finite abelian groups.
//!
//! Masses are exact rationals throughout; convolution, doubling pushforward,
//! Haar distributions, and law comparisons never touch floating point, so
//! they can serve as oracles. Fourier transforms need roots of unity and
//! live on the floating side, except where the phase structure certifies an
//! exact rational value (see [`Dist::fourier`]).

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{phase_to_complex, rational_to_f64, Character, FiniteAbelianGroup, GroupElement, Subgroup};
use crate::tolerances;

/// A probability distribution with exact rational masses, indexed by the
/// canonical element order of its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dist {
    group: FiniteAbelianGroup,
    mass: Vec<BigRational>,
}

impl Dist {
    pub fn new(group: FiniteAbelianGroup, mass: Vec<BigRational>) -> Result<Self> {
        if mass.len() != group.order() {
            return Err(Error::InvalidMass(format!(
                "expected {} masses, got {}",
                group.order(),
                mass.len()
            )));
        }
        if mass.iter().any(|m| m.is_negative()) {
            return Err(Error::InvalidMass("negative mass".into()));
        }
        let total: BigRational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMass(format!("masses sum to {total}, not 1")));
        }
        Ok(Self { group, mass })
    }

    /// The degenerate distribution `E_x`.
    pub fn point(group: &FiniteAbelianGroup, x: &GroupElement) -> Self {
        let mut mass = vec![BigRational::zero(); group.order()];
        mass[group.index_of(x)] = BigRational::one();
        Self { group: group.clone(), mass }
    }

    /// The Haar distribution `m_K`: uniform mass `1/|K|` on the subgroup.
    pub fn haar(subgroup: &Subgroup) -> Self {
        let group = subgroup.parent().clone();
        let share = BigRational::new(BigInt::one(), BigInt::from(subgroup.len()));
        let mut mass = vec![BigRational::zero(); group.order()];
        for &i in subgroup.member_indices() {
            mass[i] = share.clone();
        }
        Self { group, mass }
    }

    pub fn uniform(group: &FiniteAbelianGroup) -> Self {
        Self::haar(&Subgroup::whole(group))
    }

    /// A seeded random distribution with small-denominator rational masses.
    pub fn random<R: rand::Rng>(group: &FiniteAbelianGroup, rng: &mut R, max_weight: u32) -> Self {
        let mut weights: Vec<u64> = (0..group.order())
            .map(|_| rng.gen_range(0..=max_weight) as u64)
            .collect();
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: u64 = weights.iter().sum();
        let mass = weights
            .into_iter()
            .map(|w| BigRational::new(BigInt::from(w), BigInt::from(total)))
            .collect();
        Self { group: group.clone(), mass }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.mass
    }

    pub fn mass_at(&self, x: &GroupElement) -> &BigRational {
        &self.mass[self.group.index_of(x)]
    }

    pub fn support(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(move |(i, _)| self.group.element_at(i))
    }

    /// `(mu * nu)(x) = sum_z mu(x - z) nu(z)`, exact.
    pub fn convolve(&self, other: &Dist) -> Result<Dist> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let mut mass = vec![BigRational::zero(); g.order()];
        for (zi, nz) in other.mass.iter().enumerate() {
            if nz.is_zero() {
                continue;
            }
            let z = g.element_at(zi);
            for (wi, mw) in self.mass.iter().enumerate() {
                if mw.is_zero() {
                    continue;
                }
                let w = g.element_at(wi);
                let x = g.add(&w, &z);
                mass[g.index_of(&x)] += mw * nz;
            }
        }
        Ok(Dist { group: g.clone(), mass })
    }

    /// Law of `2 xi` for `xi ~ mu`: fiber sums of the doubling map.
    pub fn pushforward_double(&self) -> Dist {
        let g = &self.group;
        let mut mass = vec![BigRational::zero(); g.order()];
        for (i, m) in self.mass.iter().enumerate() {
            if !m.is_zero() {
                mass[g.double_index(i)] += m;
            }
        }
        Dist { group: g.clone(), mass }
    }

    /// Law of `-xi`.
    pub fn reflect(&self) -> Dist {
        let g = &self.group;
        let mut mass = vec![BigRational::zero(); g.order()];
        for (i, m) in self.mass.iter().enumerate() {
            mass[g.neg_index(i)] = m.clone();
        }
        Dist { group: g.clone(), mass }
    }

    /// Convex mixture `w a + (1 - w) b`, exact.
    pub fn mix(weight_on_first: &BigRational, a: &Dist, b: &Dist) -> Result<Dist> {
        if a.group != b.group {
            return Err(Error::GroupMismatch);
        }
        if weight_on_first.is_negative() || weight_on_first > &BigRational::one() {
            return Err(Error::InvalidMass(format!(
                "mixture weight {weight_on_first} outside [0, 1]"
            )));
        }
        let w = weight_on_first;
        let cw = BigRational::one() - w;
        let mass = a
            .mass
            .iter()
            .zip(&b.mass)
            .map(|(ma, mb)| ma * w + mb * &cw)
            .collect();
        Ok(Dist { group: a.group.clone(), mass })
    }

    /// `mu(B) = mu(-B)` elementwise.
    pub fn is_symmetric(&self) -> bool {
        self.mass
            .iter()
            .enumerate()
            .all(|(i, m)| *m == self.mass[self.group.neg_index(i)])
    }

    /// The characteristic function `mu_hat(y) = sum_x mu(x) (x, y)`.
    ///
    /// Each value is returned exactly whenever the pairing phases of the
    /// support fill complete coprime residue classes with equal mass; the sum
    /// of the primitive q-th roots of unity is the Moebius value of q, so the
    /// total is a certified rational. Otherwise the value is floating.
    pub fn fourier(&self) -> CharFn {
        let g = &self.group;
        let values = (0..g.order())
            .map(|yi| {
                let y = g.character_at(yi);
                let mut by_phase: BTreeMap<BigRational, BigRational> = BTreeMap::new();
                for (xi, m) in self.mass.iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    let x = g.element_at(xi);
                    let phase = g.pair_phase(&x, &y).expect("same-group pairing");
                    *by_phase.entry(phase).or_insert_with(BigRational::zero) += m;
                }
                phase_sum_value(&by_phase)
            })
            .collect();
        CharFn { dual: g.dual(), values }
    }

    /// The set `{y : mu_hat(y) = 1}`, detected exactly through the pairing
    /// phases and returned as a verified subgroup of the dual.
    pub fn cf_one_subgroup(&self) -> Result<Subgroup> {
        let g = &self.group;
        let mut indices = Vec::new();
        for yi in 0..g.order() {
            let y = g.character_at(yi);
            let all_zero_phase = self
                .mass
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .all(|(xi, _)| {
                    g.pair_phase(&g.element_at(xi), &y)
                        .expect("same-group pairing")
                        .is_zero()
                });
            if all_zero_phase {
                indices.push(yi);
            }
        }
        Subgroup::from_member_indices(&g.dual(), &indices)
    }
}

/// One characteristic-function value: exact where certified, floating
/// otherwise.
#[derive(Debug, Clone)]
pub enum CfValue {
    Exact(BigRational),
    Approx(Complex64),
}

impl CfValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CfValue::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            CfValue::Approx(c) => *c,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            CfValue::Exact(r) => Some(r),
            CfValue::Approx(_) => None,
        }
    }
}

/// A function on a dual group, usually a Fourier transform or a solver
/// candidate for one.
#[derive(Debug, Clone)]
pub struct CharFn {
    dual: FiniteAbelianGroup,
    values: Vec<CfValue>,
}

impl CharFn {
    pub fn from_values(dual: FiniteAbelianGroup, values: Vec<CfValue>) -> Result<Self> {
        if values.len() != dual.order() {
            return Err(Error::ShapeMismatch { expected: dual.order(), got: values.len() });
        }
        Ok(Self { dual, values })
    }

    pub fn dual(&self) -> &FiniteAbelianGroup {
        &self.dual
    }

    pub fn values(&self) -> &[CfValue] {
        &self.values
    }

    pub fn value_at(&self, index: usize) -> &CfValue {
        &self.values[index]
    }

    pub fn value(&self, y: &Character) -> &CfValue {
        &self.values[self.dual.index_of_character(y)]
    }

    /// Hermitian symmetry `f(-y) = conj f(y)`, exact on exact values and
    /// within [`tolerances::CF_RESIDUAL`] on floating ones.
    pub fn is_hermitian(&self) -> bool {
        (0..self.dual.order()).all(|i| {
            let j = self.dual.neg_index(i);
            match (&self.values[i], &self.values[j]) {
                (CfValue::Exact(a), CfValue::Exact(b)) => a == b,
                (a, b) => {
                    (b.to_complex() - a.to_complex().conj()).norm() <= tolerances::CF_RESIDUAL
                }
            }
        })
    }

    /// Inverse transform `mu(x) = |Y|^-1 sum_y f(y) conj (x, y)`.
    pub fn inverse_fourier(&self) -> Vec<Complex64> {
        let g = &self.dual;
        let n = g.order() as f64;
        (0..g.order())
            .map(|xi| {
                let x = g.element_at(xi);
                let mut acc = Complex64::new(0.0, 0.0);
                for (yi, v) in self.values.iter().enumerate() {
                    let y = g.character_at(yi);
                    let pair = g.pair(&x, &y).expect("same-group pairing");
                    acc += v.to_complex() * pair.conj();
                }
                acc / n
            })
            .collect()
    }

    /// Bochner-side test: `f` is the transform of a probability distribution
    /// iff its inverse transform is a nonnegative mass vector. Inverse masses
    /// in `[-PD_SLACK, 0)` count as zero.
    ///
    /// Requires `f(0) = 1` and hermitian symmetry; violations are structural
    /// errors rather than a `false` verdict.
    pub fn is_positive_definite(&self) -> Result<bool> {
        let at_zero = self.values[0].to_complex();
        if (at_zero - Complex64::new(1.0, 0.0)).norm() > tolerances::CF_RESIDUAL {
            return Err(Error::NotHermitian);
        }
        if !self.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(self
            .inverse_fourier()
            .iter()
            .all(|m| m.re >= -tolerances::PD_SLACK))
    }

    /// Structural equality with every value exact.
    pub fn exact_eq(&self, other: &CharFn) -> bool {
        self.dual == other.dual
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| match (a, b) {
                    (CfValue::Exact(x), CfValue::Exact(y)) => x == y,
                    _ => false,
                })
    }

    pub fn approx_eq(&self, other: &CharFn, tol: f64) -> bool {
        self.dual == other.dual
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a.to_complex() - b.to_complex()).norm() <= tol)
    }
}

/// Evaluates `sum_phase mass(phase) exp(2 pi i phase)` exactly when every
/// reduced denominator class is a full coprime residue system with uniform
/// mass, and as a floating complex number otherwise.
fn phase_sum_value(by_phase: &BTreeMap<BigRational, BigRational>) -> CfValue {
    let mut by_den: BTreeMap<u64, Vec<&BigRational>> = BTreeMap::new();
    let mut dens_ok = true;
    for phase in by_phase.keys() {
        match phase.denom().to_u64() {
            Some(d) => by_den.entry(d).or_default().push(phase),
            None => {
                dens_ok = false;
                break;
            }
        }
    }
    if dens_ok {
        let mut total = BigRational::zero();
        let mut exact = true;
        for (&d, phases) in &by_den {
            if phases.len() as u64 != euler_phi(d) {
                exact = false;
                break;
            }
            let first_mass = &by_phase[phases[0]];
            if phases.iter().any(|p| &by_phase[*p] != first_mass) {
                exact = false;
                break;
            }
            total += first_mass * BigRational::from(BigInt::from(moebius(d)));
        }
        if exact {
            return CfValue::Exact(total);
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (phase, mass) in by_phase {
        acc += phase_to_complex(phase) * rational_to_f64(mass);
    }
    CfValue::Approx(acc)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn moebius(mut n: u64) -> i64 {
    let mut sign = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn masses_must_sum_to_one() {
        let g = z(2);
        assert!(Dist::new(g.clone(), vec![q(1, 2), q(1, 3)]).is_err());
        assert!(Dist::new(g.clone(), vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(Dist::new(g, vec![q(1, 2), q(1, 2)]).is_ok());
    }

    #[test]
    fn point_convolution_translates() {
        let g = z(6);
        let a = Dist::point(&g, &g.element(&[2]).unwrap());
        let b = Dist::point(&g, &g.element(&[5]).unwrap());
        let c = a.convolve(&b).unwrap();
        assert_eq!(c, Dist::point(&g, &g.element(&[1]).unwrap()));
    }

    #[test]
    fn haar_is_idempotent_under_convolution() {
        let g = z(4);
        let k = Subgroup::generate(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let m = Dist::haar(&k);
        assert_eq!(m.convolve(&m).unwrap(), m);
        assert_eq!(m.masses(), &[q(1, 2), q(0, 1), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn haar_absorbs_translations() {
        let g = z(3);
        let u = Dist::uniform(&g);
        let e1 = Dist::point(&g, &g.element(&[1]).unwrap());
        assert_eq!(u.convolve(&e1).unwrap(), u);
    }

    #[test]
    fn convolution_rejects_group_mismatch() {
        let a = Dist::uniform(&z(3));
        let b = Dist::uniform(&z(4));
        assert_eq!(a.convolve(&b), Err(Error::GroupMismatch));
    }

    #[test]
    fn pushforward_double_point_mass() {
        let g = z(6);
        let e = Dist::point(&g, &g.element(&[4]).unwrap());
        assert_eq!(e.pushforward_double(), Dist::point(&g, &g.element(&[2]).unwrap()));
    }

    #[test]
    fn pushforward_double_on_z4_collapses_fibers() {
        let g = z(4);
        let mu = Dist::new(g.clone(), vec![q(1, 10), q(2, 10), q(3, 10), q(4, 10)]).unwrap();
        let law = mu.pushforward_double();
        assert_eq!(law.masses(), &[q(4, 10), q(0, 1), q(6, 10), q(0, 1)]);
    }

    #[test]
    fn pushforward_double_on_z3_permutes() {
        let g = z(3);
        let mu = Dist::new(g.clone(), vec![q(1, 6), q(2, 6), q(3, 6)]).unwrap();
        let law = mu.pushforward_double();
        assert_eq!(law.masses(), &[q(1, 6), q(3, 6), q(2, 6)]);
    }

    #[test]
    fn fourier_of_point_at_zero_is_constant_one() {
        let g = z(5);
        let f = Dist::point(&g, &g.zero()).fourier();
        for v in f.values() {
            assert_eq!(v.as_exact(), Some(&BigRational::one()));
        }
    }

    #[test]
    fn fourier_of_haar_on_z2_is_indicator_of_zero() {
        let g = z(2);
        let f = Dist::uniform(&g).fourier();
        assert_eq!(f.value_at(0).as_exact(), Some(&BigRational::one()));
        assert_eq!(f.value_at(1).as_exact(), Some(&BigRational::zero()));
    }

    #[test]
    fn fourier_of_symmetric_two_point_on_z4_is_exact_cosine() {
        let g = z(4);
        let mu = Dist::mix(
            &q(1, 2),
            &Dist::point(&g, &g.element(&[1]).unwrap()),
            &Dist::point(&g, &g.element(&[3]).unwrap()),
        )
        .unwrap();
        let f = mu.fourier();
        let expected = [q(1, 1), q(0, 1), q(-1, 1), q(0, 1)];
        for (v, e) in f.values().iter().zip(&expected) {
            assert_eq!(v.as_exact(), Some(e));
        }
    }

    #[test]
    fn fourier_of_haar_is_annihilator_indicator() {
        let g = z(4);
        let k = Subgroup::generate(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let f = Dist::haar(&k).fourier();
        let ann = k.annihilator();
        for yi in 0..g.order() {
            let expected = if ann.contains_index(yi) { BigRational::one() } else { BigRational::zero() };
            assert_eq!(f.value_at(yi).as_exact(), Some(&expected), "at {yi}");
        }
    }

    #[test]
    fn haar_on_trivial_subgroup_is_point_mass() {
        let g = z(3);
        assert_eq!(Dist::haar(&Subgroup::trivial(&g)), Dist::point(&g, &g.zero()));
        let whole = Dist::haar(&Subgroup::whole(&g));
        assert_eq!(whole.masses(), &[q(1, 3), q(1, 3), q(1, 3)]);
    }

    #[test]
    fn positive_definiteness_examples() {
        let g = z(3);
        let ones = Dist::point(&g, &g.zero()).fourier();
        assert_eq!(ones.is_positive_definite(), Ok(true));

        let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let f = CharFn::from_values(
            klein,
            vec![
                CfValue::Exact(q(1, 1)),
                CfValue::Exact(q(-1, 1)),
                CfValue::Exact(q(-1, 1)),
                CfValue::Exact(q(-1, 1)),
            ],
        )
        .unwrap();
        // inverse mass at zero is (1 - 3) / 4 = -1/2
        assert!((f.inverse_fourier()[0].re + 0.5).abs() < 1e-12);
        assert_eq!(f.is_positive_definite(), Ok(false));

        let g4 = z(4);
        let alt = CharFn::from_values(
            g4,
            vec![
                CfValue::Exact(q(1, 1)),
                CfValue::Exact(q(-1, 1)),
                CfValue::Exact(q(1, 1)),
                CfValue::Exact(q(-1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(alt.is_positive_definite(), Ok(true));
    }

    #[test]
    fn positive_definiteness_rejects_non_hermitian_input() {
        let g = z(4);
        let f = CharFn::from_values(
            g,
            vec![
                CfValue::Exact(q(1, 1)),
                CfValue::Exact(q(1, 2)),
                CfValue::Exact(q(0, 1)),
                CfValue::Exact(q(-1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(f.is_positive_definite(), Err(Error::NotHermitian));
    }

    #[test]
    fn inverse_fourier_round_trip() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        use rand::SeedableRng;
        let mu = Dist::random(&g, &mut rng, 12);
        let back = mu.fourier().inverse_fourier();
        for (i, m) in mu.masses().iter().enumerate() {
            assert!((back[i].re - rational_to_f64(m)).abs() < 1e-12);
            assert!(back[i].im.abs() < 1e-12);
        }
    }

    #[test]
    fn cf_one_subgroup_matches_support_annihilator() {
        let g = z(6);
        let k = Subgroup::generate(&g, &[g.element(&[3]).unwrap()]).unwrap();
        let mu = Dist::haar(&k);
        let e = mu.cf_one_subgroup().unwrap();
        assert_eq!(e.member_indices(), k.annihilator().member_indices());
    }

    #[test]
    fn degenerate_group_has_only_the_point_mass() {
        let g = FiniteAbelianGroup::trivial();
        let mu = Dist::uniform(&g);
        assert_eq!(mu, Dist::point(&g, &g.zero()));
        assert_eq!(mu.convolve(&mu).unwrap(), mu);
        assert_eq!(mu.pushforward_double(), mu);
        assert_eq!(mu.fourier().value_at(0).as_exact(), Some(&BigRational::one()));
    }

    #[test]
    fn symmetry_detection() {
        let g = z(4);
        let sym = Dist::mix(
            &q(1, 2),
            &Dist::point(&g, &g.element(&[1]).unwrap()),
            &Dist::point(&g, &g.element(&[3]).unwrap()),
        )
        .unwrap();
        assert!(sym.is_symmetric());
        let asym = Dist::point(&g, &g.element(&[1]).unwrap());
        assert!(!asym.is_symmetric());
        assert!(asym.reflect() == Dist::point(&g, &g.element(&[3]).unwrap()));
    }
}
