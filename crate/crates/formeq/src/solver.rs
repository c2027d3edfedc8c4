//! Machinery around the doubling functional equations on finite dual groups.
//!
//! Mode A uses the solved forward map `t -> t^2 / (2 - t^2)`; on `[-1, 1]`
//! the equation `f(2y) = f(y)^2 (f(2y) + 1) / 2` pins `f(2y)` to that image
//! because the denominator `2 - f(y)^2` never vanishes. Mode B uses
//! `t -> 2 t^2 - 1`. Candidate solutions are built on the doubling graph:
//! cycle values must be fixed points of the iterated forward map, and tree
//! values branch through preimages, pruned where none exist. Survivors of
//! the hermitian and positive-definiteness filters are classified against
//! the structured solution families.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigRational, One, Signed, Zero};

use crate::dist::{CfValue, CharFn, Dist};
use crate::error::{Error, Result};
use crate::forms::EqMode;
use crate::group::{doubling_graph, rational_to_f64, subgroups, FiniteAbelianGroup, GroupElement, Subgroup};
use crate::tolerances;

/// `t^2 / (2 - t^2)` on `[-1, 1]`; its only fixed points there are 0 and 1.
pub fn forward_value(t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain { what: "forward_value", value: t });
    }
    Ok(t * t / (2.0 - t * t))
}

/// Exact-rational version of [`forward_value`].
pub fn forward_value_exact(t: &BigRational) -> Result<BigRational> {
    if t.abs() > BigRational::one() {
        return Err(Error::Domain { what: "forward_value", value: rational_to_f64(t) });
    }
    let sq = t * t;
    Ok(&sq / (BigRational::from_integer(2.into()) - &sq))
}

/// Positive inverse branch of [`forward_value`] on `[0, 1]`:
/// `sqrt(2t / (1 + t))`.
pub fn halve_value(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain { what: "halve_value", value: t });
    }
    Ok((2.0 * t / (1.0 + t)).sqrt())
}

/// Mode-B forward map `2 t^2 - 1` on `[-1, 1]`.
pub fn forward_value_b(t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain { what: "forward_value_b", value: t });
    }
    Ok(2.0 * t * t - 1.0)
}

/// Positive inverse branch of the mode-B map: the cosine half-angle
/// `sqrt((1 + t) / 2)`.
pub fn halve_value_b(t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain { what: "halve_value_b", value: t });
    }
    Ok(((1.0 + t) / 2.0).sqrt())
}

/// A real scalar that is exact when it came from rational arithmetic.
#[derive(Debug, Clone)]
pub enum RealValue {
    Exact(BigRational),
    Approx(f64),
}

impl RealValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact(r) => rational_to_f64(r),
            RealValue::Approx(v) => *v,
        }
    }

    fn to_cf_value(&self) -> CfValue {
        match self {
            RealValue::Exact(r) => CfValue::Exact(r.clone()),
            RealValue::Approx(v) => CfValue::Approx(Complex64::new(*v, 0.0)),
        }
    }
}

/// Default root grid: `{-1, -0.9, ..., 0.9, 1}` plus `+-sech(k/4)` for
/// `k = 1..8`. The rational points cover the values that can actually occur
/// at chain roots of a finite dual; the sech points probe near-solutions
/// that the positive-definiteness filter must reject.
pub fn default_root_grid() -> Vec<RealValue> {
    let mut grid: Vec<RealValue> = (-10..=10)
        .map(|k| RealValue::Exact(BigRational::new(k.into(), 10.into())))
        .collect();
    for k in 1..=8 {
        let s = crate::realline::sech(k as f64 / 4.0);
        grid.push(RealValue::Approx(s));
        grid.push(RealValue::Approx(-s));
    }
    grid
}

/// Classification of an equation solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionTag {
    /// Transform of a Haar distribution on a Corwin subgroup.
    HaarCorwin,
    /// Transform of a Haar distribution shifted by an order-2 element.
    HaarTimesOrder2,
    /// Transform of a symmetric two-point distribution (mode B only).
    TwoPoint,
    /// Satisfies the equation but is not a characteristic function.
    NotPositiveDefinite,
}

#[derive(Debug, Clone)]
pub struct ClassifiedSolution {
    pub cf: CharFn,
    pub tag: SolutionTag,
    /// Description of the matched family member, for positive-definite
    /// solutions.
    pub matched: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub dual: FiniteAbelianGroup,
    pub mode: EqMode,
    pub solutions: Vec<ClassifiedSolution>,
}

impl SolutionSet {
    pub fn positive_definite(&self) -> impl Iterator<Item = &ClassifiedSolution> {
        self.solutions
            .iter()
            .filter(|s| s.tag != SolutionTag::NotPositiveDefinite)
    }
}

/// A structured solution distribution: a Haar distribution on a Corwin
/// subgroup, optionally shifted by an element of order 2 outside it.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub dist: Dist,
    pub subgroup: Subgroup,
    pub shift: Option<GroupElement>,
}

impl FamilyMember {
    pub fn describe(&self) -> String {
        let k = format!(
            "m_K, |K|={}, K={:?}",
            self.subgroup.len(),
            self.subgroup.member_indices()
        );
        match &self.shift {
            None => k,
            Some(x) => format!("{k} * E_{:?}", x.coords()),
        }
    }
}

/// All distributions `m_K` and `m_K * E_x` over Corwin subgroups `K` and
/// order-2 shifts `x` outside `K`, deduplicated, in canonical order.
pub fn haar_corwin_family_members(x_group: &FiniteAbelianGroup) -> Vec<FamilyMember> {
    let mut members: Vec<FamilyMember> = Vec::new();
    let mut seen: Vec<Dist> = Vec::new();
    for k in subgroups(x_group).into_iter().filter(Subgroup::is_corwin) {
        let base = Dist::haar(&k);
        let mut push = |dist: Dist, shift: Option<GroupElement>, k: &Subgroup| {
            if !seen.contains(&dist) {
                seen.push(dist.clone());
                members.push(FamilyMember { dist, subgroup: k.clone(), shift });
            }
        };
        push(base.clone(), None, &k);
        for t in x_group.elements() {
            if t != x_group.zero() && x_group.has_order_dividing_two(&t) && !k.contains(&t) {
                let shifted = base
                    .convolve(&Dist::point(x_group, &t))
                    .expect("same group");
                push(shifted, Some(t), &k);
            }
        }
    }
    members
}

/// The family as plain distributions.
pub fn haar_corwin_family(x_group: &FiniteAbelianGroup) -> Vec<Dist> {
    haar_corwin_family_members(x_group)
        .into_iter()
        .map(|m| m.dist)
        .collect()
}

/// All symmetric two-point distributions `(E_x + E_{-x}) / 2`, deduplicated.
pub fn two_point_family_members(x_group: &FiniteAbelianGroup) -> Vec<(GroupElement, Dist)> {
    let half = BigRational::new(1.into(), 2.into());
    let mut members: Vec<(GroupElement, Dist)> = Vec::new();
    for x in x_group.elements() {
        let dist = Dist::mix(
            &half,
            &Dist::point(x_group, &x),
            &Dist::point(x_group, &x_group.neg(&x)),
        )
        .expect("same group");
        if !members.iter().any(|(_, d)| *d == dist) {
            members.push((x, dist));
        }
    }
    members
}

pub fn two_point_family(x_group: &FiniteAbelianGroup) -> Vec<Dist> {
    two_point_family_members(x_group)
        .into_iter()
        .map(|(_, d)| d)
        .collect()
}

/// Enumerates every solution of the selected doubling equation on a finite
/// dual group, with chain-root values drawn from `root_grid` in mode A, and
/// classifies the survivors of the hermitian and positive-definiteness
/// filters against the structured families.
///
/// Cycle values are solved in closed form. In mode A the fixed points of the
/// iterated forward map on `[-1, 1]` are exactly 0 and 1, so every finite
/// tree value lies in `{0, +-1}`; the grid precondition (it must contain
/// those three points) keeps the enumeration complete. Mode-B cycles carry
/// the fixed points of the iterated `2t^2 - 1`, which are cosines of
/// rational angles; tree values branch through the half-angle preimages and
/// are not restricted to the grid, because the positive-definite solutions
/// take irrational root values in general.
pub fn enumerate_solutions(
    dual: &FiniteAbelianGroup,
    mode: EqMode,
    root_grid: &[RealValue],
) -> SolutionSet {
    assert!(
        grid_contains(root_grid, 0.0) && grid_contains(root_grid, 1.0) && grid_contains(root_grid, -1.0),
        "root grid must contain -1, 0, and 1"
    );
    assert!(
        root_grid.iter().all(|v| (-1.0..=1.0).contains(&v.to_f64())),
        "root grid must lie in [-1, 1]"
    );

    let graph = doubling_graph(dual);
    let zero_index = dual.index_of(&dual.zero());

    // Per-cycle alternatives, then tree nodes breadth-first away from the
    // cycles so a node's image is always assigned before the node itself.
    let mut cycle_alternatives: Vec<Vec<Vec<(usize, RealValue)>>> = Vec::new();
    for cycle in graph.cycles() {
        cycle_alternatives.push(cycle_assignments(mode, cycle, zero_index));
    }
    let mut tree_order: Vec<usize> = Vec::new();
    let mut queue: VecDeque<usize> = graph.cycles().iter().flatten().copied().collect();
    while let Some(node) = queue.pop_front() {
        for &child in graph.preimages(node) {
            if !graph.is_on_cycle(child) {
                tree_order.push(child);
                queue.push_back(child);
            }
        }
    }

    let mut assignments: Vec<Vec<Option<RealValue>>> = vec![vec![None; dual.order()]];
    for alternatives in &cycle_alternatives {
        let mut grown = Vec::new();
        for partial in &assignments {
            for alt in alternatives {
                let mut next = partial.clone();
                for (node, value) in alt {
                    next[*node] = Some(value.clone());
                }
                grown.push(next);
            }
        }
        assignments = grown;
    }
    for &node in &tree_order {
        let parent = graph.next(node);
        let is_root = graph.preimages(node).is_empty();
        let mut grown = Vec::new();
        for partial in &assignments {
            let parent_value = partial[parent].as_ref().expect("parent assigned first");
            for value in preimage_values(mode, parent_value) {
                if mode == EqMode::A && is_root && !grid_contains_value(root_grid, &value) {
                    continue;
                }
                let mut next = partial.clone();
                next[node] = Some(value);
                grown.push(next);
            }
        }
        assignments = grown;
    }

    let candidates: Vec<CharFn> = assignments
        .into_iter()
        .map(|values| {
            let cf_values = values
                .into_iter()
                .map(|v| v.expect("complete assignment").to_cf_value())
                .collect();
            CharFn::from_values(dual.clone(), cf_values).expect("shape by construction")
        })
        .collect();

    let mut solutions: Vec<ClassifiedSolution> = Vec::new();
    let family = match mode {
        EqMode::A => haar_corwin_family_members(dual)
            .into_iter()
            .map(|m| {
                let tag = if m.shift.is_none() {
                    SolutionTag::HaarCorwin
                } else {
                    SolutionTag::HaarTimesOrder2
                };
                (m.dist.fourier(), tag, m.describe())
            })
            .collect::<Vec<_>>(),
        EqMode::B => two_point_family_members(dual)
            .into_iter()
            .map(|(x, d)| {
                (d.fourier(), SolutionTag::TwoPoint, format!("(E_x + E_-x)/2, x={:?}", x.coords()))
            })
            .collect(),
    };

    for cf in candidates {
        if !cf.is_hermitian() {
            continue;
        }
        if !cf.is_positive_definite().expect("hermitian checked") {
            if !solutions
                .iter()
                .any(|s| s.tag == SolutionTag::NotPositiveDefinite && same_values(&s.cf, &cf))
            {
                solutions.push(ClassifiedSolution {
                    cf,
                    tag: SolutionTag::NotPositiveDefinite,
                    matched: None,
                });
            }
            continue;
        }
        let matched = family.iter().find(|(fam_cf, _, _)| match mode {
            EqMode::A => cf.exact_eq(fam_cf),
            EqMode::B => cf.approx_eq(fam_cf, tolerances::CF_RESIDUAL),
        });
        let (tag, desc) = match matched {
            Some((_, tag, desc)) => (*tag, desc.clone()),
            None => panic!(
                "positive-definite solution on {:?} matches no family member; \
                 this contradicts the structure of the solution set",
                dual.factors()
            ),
        };
        if !solutions.iter().any(|s| s.tag == tag && same_values(&s.cf, &cf)) {
            solutions.push(ClassifiedSolution { cf, tag, matched: Some(desc) });
        }
    }

    solutions.sort_by(|a, b| value_key(&a.cf).partial_cmp(&value_key(&b.cf)).unwrap());
    SolutionSet { dual: dual.clone(), mode, solutions }
}

fn value_key(cf: &CharFn) -> Vec<f64> {
    cf.values().iter().map(|v| v.to_complex().re).collect()
}

fn same_values(a: &CharFn, b: &CharFn) -> bool {
    a.approx_eq(b, 1e-12)
}

fn grid_contains(grid: &[RealValue], v: f64) -> bool {
    grid.iter().any(|g| (g.to_f64() - v).abs() <= 1e-12)
}

fn grid_contains_value(grid: &[RealValue], v: &RealValue) -> bool {
    match v {
        RealValue::Exact(r) => grid.iter().any(|g| match g {
            RealValue::Exact(gr) => gr == r,
            RealValue::Approx(gv) => (gv - rational_to_f64(r)).abs() <= 1e-12,
        }),
        RealValue::Approx(v) => grid_contains(grid, *v),
    }
}

/// Values consistent around one cycle. The first cycle node takes a fixed
/// point of the m-fold forward map and the rest follow by iteration.
fn cycle_assignments(mode: EqMode, cycle: &[usize], zero_index: usize) -> Vec<Vec<(usize, RealValue)>> {
    if cycle.contains(&zero_index) {
        // 0 is a fixed point of doubling, so its cycle is the singleton {0},
        // and a characteristic function is 1 there.
        debug_assert_eq!(cycle, [zero_index]);
        let value = match mode {
            EqMode::A => RealValue::Exact(BigRational::one()),
            EqMode::B => RealValue::Approx(1.0),
        };
        return vec![vec![(zero_index, value)]];
    }
    match mode {
        EqMode::A => [BigRational::zero(), BigRational::one()]
            .into_iter()
            .map(|t| {
                // both fixed points of the forward map itself, so the value
                // is constant around the cycle
                cycle.iter().map(|&n| (n, RealValue::Exact(t.clone()))).collect()
            })
            .collect(),
        EqMode::B => {
            let m = cycle.len() as u32;
            let pow = 2u64.pow(m);
            let mut starts: Vec<f64> = Vec::new();
            for d in [pow - 1, pow + 1] {
                for k in 0..=(d / 2) {
                    let t = (2.0 * std::f64::consts::PI * k as f64 / d as f64).cos();
                    if !starts.iter().any(|s| (s - t).abs() <= 1e-10) {
                        starts.push(t);
                    }
                }
            }
            let mut assignments: Vec<Vec<(usize, RealValue)>> = Vec::new();
            for t in starts {
                let mut values = Vec::with_capacity(cycle.len());
                let mut v = t;
                for &node in cycle {
                    values.push((node, RealValue::Approx(v)));
                    v = 2.0 * v * v - 1.0;
                }
                let dup = assignments.iter().any(|existing| {
                    existing
                        .iter()
                        .zip(&values)
                        .all(|((_, a), (_, b))| (a.to_f64() - b.to_f64()).abs() <= 1e-10)
                });
                if !dup {
                    assignments.push(values);
                }
            }
            assignments
        }
    }
}

/// Solutions of `forward(v) = parent` for a tree node below `parent`.
fn preimage_values(mode: EqMode, parent: &RealValue) -> Vec<RealValue> {
    match mode {
        EqMode::A => match parent {
            RealValue::Exact(r) => {
                if r.is_one() {
                    vec![
                        RealValue::Exact(BigRational::one()),
                        RealValue::Exact(-BigRational::one()),
                    ]
                } else if r.is_zero() {
                    vec![RealValue::Exact(BigRational::zero())]
                } else if r.is_negative() {
                    // the forward map is nonnegative
                    Vec::new()
                } else {
                    approx_preimages_a(rational_to_f64(r))
                }
            }
            RealValue::Approx(v) => {
                if *v < 0.0 {
                    Vec::new()
                } else {
                    approx_preimages_a(*v)
                }
            }
        },
        EqMode::B => {
            let v = parent.to_f64();
            let s = ((1.0 + v) / 2.0).sqrt();
            if s == 0.0 {
                vec![RealValue::Approx(0.0)]
            } else {
                vec![RealValue::Approx(s), RealValue::Approx(-s)]
            }
        }
    }
}

fn approx_preimages_a(v: f64) -> Vec<RealValue> {
    let s = (2.0 * v / (1.0 + v)).sqrt();
    if s == 0.0 {
        vec![RealValue::Approx(0.0)]
    } else {
        vec![RealValue::Approx(s), RealValue::Approx(-s)]
    }
}

/// Maximum residual of `h(u+v) + h(u-v) - 2 h(u) h(v)` over the given pairs.
pub fn dalembert_check<H: Fn(f64) -> f64>(h: H, pairs: &[(f64, f64)]) -> f64 {
    pairs
        .iter()
        .map(|&(u, v)| (h(u + v) + h(u - v) - 2.0 * h(u) * h(v)).abs())
        .fold(0.0, f64::max)
}

/// Minimum eigenvalue of the `n x n` Toeplitz section `[f(i - j)]`.
///
/// For an even `f` with `f(0) = 1` a value at or above `-GRAM_SLACK`
/// certifies positive definiteness at this window size.
pub fn toeplitz_pd_sections<F: Fn(i64) -> f64>(f: F, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain { what: "toeplitz_pd_sections", value: n as f64 });
    }
    let m = DMatrix::from_fn(n, n, |i, j| f(i as i64 - j as i64));
    let eigen = m.symmetric_eigenvalues();
    Ok(eigen.iter().copied().fold(f64::INFINITY, f64::min))
}
