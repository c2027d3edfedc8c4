//! Finite abelian groups as products of cyclic groups.
//!
//! A group is an ordered list of cyclic orders `n_j >= 2`; elements are
//! coordinate vectors reduced mod `n_j`. The character group is identified
//! with the same factor list through the pairing
//! `(x, y) = exp(2 pi i * sum_j x_j y_j / n_j)`, so annihilators and duals
//! never need a second representation. Elements are enumerated in
//! lexicographic coordinate order and every set-valued result is sorted in
//! that order, which keeps reports reproducible.

use std::collections::{BTreeSet, VecDeque};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A product of cyclic groups `Z(n_1) x ... x Z(n_k)`.
///
/// The empty product is the trivial group of order 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        for &n in &factors {
            if n < 2 {
                return Err(Error::InvalidFactor(n));
            }
        }
        let mut order: usize = 1;
        for &n in &factors {
            order = order
                .checked_mul(n as usize)
                .ok_or(Error::InvalidFactor(n))?;
        }
        let mut strides = vec![1usize; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1] as usize;
        }
        Ok(Self { factors, strides, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The trivial group (empty factor list, order 1).
    pub fn trivial() -> Self {
        Self { factors: Vec::new(), strides: Vec::new(), order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The character group under the fixed self-dual identification.
    pub fn dual(&self) -> FiniteAbelianGroup {
        self.clone()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.factors.len()] }
    }

    /// Builds an element from signed coordinates, reducing mod each factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::ShapeMismatch { expected: self.factors.len(), got: coords.len() });
        }
        let reduced = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { coords: reduced })
    }

    pub fn character(&self, coords: &[i64]) -> Result<Character> {
        self.element(coords).map(|e| Character { coords: e.coords })
    }

    /// Canonical index of an element in lexicographic coordinate order.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert_eq!(x.coords.len(), self.factors.len());
        x.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn index_of_character(&self, y: &Character) -> usize {
        self.index_of(&GroupElement { coords: y.coords.clone() })
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "element index {index} out of range");
        let mut coords = Vec::with_capacity(self.factors.len());
        let mut rem = index;
        for &s in &self.strides {
            coords.push((rem / s) as u64);
            rem %= s;
        }
        GroupElement { coords }
    }

    pub fn character_at(&self, index: usize) -> Character {
        Character { coords: self.element_at(index).coords }
    }

    /// Total enumeration in canonical lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn double(&self, a: &GroupElement) -> GroupElement {
        self.add(a, a)
    }

    /// Index-level doubling, used by the functional-equation machinery.
    pub fn double_index(&self, index: usize) -> usize {
        let x = self.element_at(index);
        self.index_of(&self.double(&x))
    }

    pub fn neg_index(&self, index: usize) -> usize {
        let x = self.element_at(index);
        self.index_of(&self.neg(&x))
    }

    pub fn has_order_dividing_two(&self, a: &GroupElement) -> bool {
        self.double(a) == self.zero()
    }

    fn check_shape(&self, len: usize) -> Result<()> {
        if len != self.factors.len() {
            return Err(Error::ShapeMismatch { expected: self.factors.len(), got: len });
        }
        Ok(())
    }

    /// Exact pairing phase: `sum_j x_j y_j / n_j` reduced to `[0, 1)`.
    ///
    /// The pairing value is `exp(2 pi i * phase)`; keeping the phase rational
    /// is what lets Haar and shifted-Haar transforms be evaluated exactly.
    pub fn pair_phase(&self, x: &GroupElement, y: &Character) -> Result<BigRational> {
        self.check_shape(x.coords.len())?;
        self.check_shape(y.coords.len())?;
        let mut sum = BigRational::zero();
        for ((&a, &b), &n) in x.coords.iter().zip(&y.coords).zip(&self.factors) {
            sum += BigRational::new(BigInt::from(a) * BigInt::from(b), BigInt::from(n));
        }
        let mut frac = sum.fract();
        if frac.is_negative() {
            frac += BigRational::one();
        }
        Ok(frac)
    }

    /// The value `(x, y)` of the character `y` at `x`, a unit-modulus complex
    /// number.
    pub fn pair(&self, x: &GroupElement, y: &Character) -> Result<Complex64> {
        let phase = self.pair_phase(x, y)?;
        Ok(phase_to_complex(&phase))
    }

    /// Whether the whole group equals its own set of doubles.
    pub fn is_corwin(&self) -> bool {
        Subgroup::whole(self).is_corwin()
    }

    pub(crate) fn factor_lcm(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &n| num::integer::lcm(acc, n))
    }
}

pub(crate) fn phase_to_complex(phase: &BigRational) -> Complex64 {
    let p = rational_to_f64(phase);
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * p)
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational representable as f64")
}

/// An element of a [`FiniteAbelianGroup`]; coordinates are always reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// A character of the group, identified with a coordinate vector of the same
/// shape through the fixed pairing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    coords: Vec<u64>,
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn as_element(&self) -> GroupElement {
        GroupElement { coords: self.coords.clone() }
    }
}

impl From<GroupElement> for Character {
    fn from(e: GroupElement) -> Self {
        Character { coords: e.coords }
    }
}

/// A fully enumerated subgroup, stored as a sorted set of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    generators: Vec<GroupElement>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Closure of a generating set.
    pub fn generate(parent: &FiniteAbelianGroup, generators: &[GroupElement]) -> Result<Self> {
        for g in generators {
            if g.coords.len() != parent.factors.len() {
                return Err(Error::ShapeMismatch {
                    expected: parent.factors.len(),
                    got: g.coords.len(),
                });
            }
        }
        let seed: Vec<usize> = generators.iter().map(|g| parent.index_of(g)).collect();
        let members = close_under_addition(parent, &seed);
        Ok(Self::from_sorted(parent.clone(), generators.to_vec(), members))
    }

    pub fn trivial(parent: &FiniteAbelianGroup) -> Self {
        Self::from_sorted(parent.clone(), Vec::new(), vec![0])
    }

    pub fn whole(parent: &FiniteAbelianGroup) -> Self {
        let members: Vec<usize> = (0..parent.order()).collect();
        let generators = parent.elements().collect();
        Self::from_sorted(parent.clone(), generators, members)
    }

    /// Builds a subgroup from an explicit member set, verifying closure.
    pub fn from_member_indices(parent: &FiniteAbelianGroup, indices: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::InvalidSubgroup("missing the zero element".into()));
        }
        for &i in &set {
            if i >= parent.order() {
                return Err(Error::InvalidSubgroup(format!("index {i} out of range")));
            }
        }
        for &i in &set {
            let x = parent.element_at(i);
            if !set.contains(&parent.index_of(&parent.neg(&x))) {
                return Err(Error::InvalidSubgroup("not closed under negation".into()));
            }
            for &j in &set {
                let y = parent.element_at(j);
                if !set.contains(&parent.index_of(&parent.add(&x, &y))) {
                    return Err(Error::InvalidSubgroup("not closed under addition".into()));
                }
            }
        }
        let members: Vec<usize> = set.into_iter().collect();
        let generators = members.iter().map(|&i| parent.element_at(i)).collect();
        Ok(Self::from_sorted(parent.clone(), generators, members))
    }

    fn from_sorted(parent: FiniteAbelianGroup, generators: Vec<GroupElement>, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent.order()];
        for &i in &members {
            mask[i] = true;
        }
        Self { parent, generators, members, mask }
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.iter().map(move |&i| self.parent.element_at(i))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.mask[self.parent.index_of(x)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.mask[index]
    }

    /// The image `{2x : x in K}` as a subgroup.
    pub fn doubled(&self) -> Subgroup {
        let set: BTreeSet<usize> = self
            .members
            .iter()
            .map(|&i| self.parent.double_index(i))
            .collect();
        let members: Vec<usize> = set.into_iter().collect();
        let generators = members.iter().map(|&i| self.parent.element_at(i)).collect();
        Self::from_sorted(self.parent.clone(), generators, members)
    }

    /// Whether doubling maps the subgroup onto itself.
    pub fn is_corwin(&self) -> bool {
        self.doubled().members == self.members
    }

    /// The annihilator `A(Y, K) = {y : (x, y) = 1 for all x in K}` in the
    /// character group, computed with exact integer arithmetic.
    pub fn annihilator(&self) -> Subgroup {
        let g = &self.parent;
        let l = g.factor_lcm();
        let weights: Vec<u64> = g.factors.iter().map(|&n| l / n).collect();
        let mut members = Vec::new();
        for yi in 0..g.order() {
            let y = g.element_at(yi);
            let annihilates = self.members.iter().all(|&xi| {
                let x = g.element_at(xi);
                let s: u64 = x
                    .coords
                    .iter()
                    .zip(&y.coords)
                    .zip(&weights)
                    .map(|((&a, &b), &w)| (a * b % l) * w % l)
                    .fold(0u64, |acc, t| (acc + t) % l);
                s == 0
            });
            if annihilates {
                members.push(yi);
            }
        }
        let generators = members.iter().map(|&i| g.element_at(i)).collect();
        Self::from_sorted(g.clone(), generators, members)
    }
}

fn close_under_addition(parent: &FiniteAbelianGroup, seed: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; parent.order()];
    let zero = parent.index_of(&parent.zero());
    mask[zero] = true;
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(zero);
    for &s in seed {
        if !mask[s] {
            mask[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(i) = queue.pop_front() {
        let x = parent.element_at(i);
        for &s in seed {
            let sum = parent.add(&x, &parent.element_at(s));
            let j = parent.index_of(&sum);
            if !mask[j] {
                mask[j] = true;
                queue.push_back(j);
            }
        }
    }
    (0..parent.order()).filter(|&i| mask[i]).collect()
}

/// Every subgroup of the group, in canonical order (by size, then member
/// list). Closure-based breadth-first search over the subgroup lattice;
/// intended for the desk-scale orders this crate works at.
pub fn subgroups(g: &FiniteAbelianGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.members.clone());
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    queue.push_back(trivial.members.clone());
    while let Some(members) = queue.pop_front() {
        for add in 0..g.order() {
            if members.binary_search(&add).is_ok() {
                continue;
            }
            let mut seed = members.clone();
            seed.push(add);
            let closed = close_under_addition(g, &seed);
            if seen.insert(closed.clone()) {
                queue.push_back(closed);
            }
        }
    }
    let mut result: Vec<Subgroup> = seen
        .into_iter()
        .map(|members| {
            let generators = members.iter().map(|&i| g.element_at(i)).collect();
            Subgroup::from_sorted(g.clone(), generators, members)
        })
        .collect();
    result.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    result
}

/// The functional graph of `y -> 2y` on a dual group, split into chains that
/// feed cycles. Drives value propagation in the functional-equation solver.
#[derive(Debug, Clone)]
pub struct DoublingGraph {
    group: FiniteAbelianGroup,
    next: Vec<usize>,
    preimages: Vec<Vec<usize>>,
    roots: Vec<usize>,
    chains: Vec<Vec<usize>>,
    cycles: Vec<Vec<usize>>,
    on_cycle: Vec<bool>,
}

impl DoublingGraph {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Image of a node under doubling.
    pub fn next(&self, index: usize) -> usize {
        self.next[index]
    }

    /// Nodes mapping onto `index` under doubling.
    pub fn preimages(&self, index: usize) -> &[usize] {
        &self.preimages[index]
    }

    /// Nodes with no preimage.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Non-cycle nodes grouped into paths; together with the cycles these
    /// partition the group.
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn is_on_cycle(&self, index: usize) -> bool {
        self.on_cycle[index]
    }
}

pub fn doubling_graph(dual: &FiniteAbelianGroup) -> DoublingGraph {
    let n = dual.order();
    let next: Vec<usize> = (0..n).map(|i| dual.double_index(i)).collect();
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &t) in next.iter().enumerate() {
        preimages[t].push(i);
    }
    let roots: Vec<usize> = (0..n).filter(|&i| preimages[i].is_empty()).collect();

    // Peel chain nodes by repeatedly removing indegree-zero nodes; what
    // remains lies on cycles.
    let mut indegree: Vec<usize> = preimages.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    let mut on_cycle = vec![true; n];
    while let Some(i) = queue.pop_front() {
        on_cycle[i] = false;
        let t = next[i];
        indegree[t] -= 1;
        if indegree[t] == 0 {
            queue.push_back(t);
        }
    }

    let mut cycles = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if !on_cycle[start] || seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            seen[cur] = true;
            cycle.push(cur);
            cur = next[cur];
            if cur == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles.sort_by_key(|c| c[0]);

    let mut claimed = vec![false; n];
    let mut chains = Vec::new();
    for &r in &roots {
        let mut chain = Vec::new();
        let mut cur = r;
        while !on_cycle[cur] && !claimed[cur] {
            claimed[cur] = true;
            chain.push(cur);
            cur = next[cur];
        }
        if !chain.is_empty() {
            chains.push(chain);
        }
    }

    DoublingGraph { group: dual.clone(), next, preimages, roots, chains, cycles, on_cycle }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn rejects_degenerate_factor() {
        assert_eq!(FiniteAbelianGroup::new(vec![1]), Err(Error::InvalidFactor(1)));
        assert_eq!(FiniteAbelianGroup::new(vec![4, 0]), Err(Error::InvalidFactor(0)));
    }

    #[test]
    fn element_reduction_wraps_negatives() {
        let g = z(4);
        let x = g.element(&[-1]).unwrap();
        assert_eq!(x.coords(), &[3]);
        assert_eq!(g.neg(&x).coords(), &[1]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_total() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let all: Vec<Vec<u64>> = g.elements().map(|e| e.coords().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0], vec![0, 1], vec![0, 2],
                vec![1, 0], vec![1, 1], vec![1, 2],
            ]
        );
        for (i, e) in g.elements().enumerate() {
            assert_eq!(g.index_of(&e), i);
        }
    }

    #[test]
    fn pair_at_zero_character_is_one() {
        let g = z(4);
        let x = g.element(&[1]).unwrap();
        let y = g.character(&[0]).unwrap();
        let v = g.pair(&x, &y).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pair_on_z4_gives_fourth_root_of_unity() {
        let g = z(4);
        let x = g.element(&[1]).unwrap();
        let y = g.character(&[1]).unwrap();
        let v = g.pair(&x, &y).unwrap();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn pair_on_z2_z3_product() {
        // phase 1/2 + 2/3 = 7/6, so the value is exp(pi i / 3)
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let x = g.element(&[1, 1]).unwrap();
        let y = g.character(&[1, 2]).unwrap();
        let phase = g.pair_phase(&x, &y).unwrap();
        assert_eq!(phase, BigRational::new(1.into(), 6.into()));
        let v = g.pair(&x, &y).unwrap();
        assert!((v - Complex64::new(0.5, 0.75f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn pair_rejects_shape_mismatch() {
        let g = z(4);
        let x = g.element(&[1]).unwrap();
        let other = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let y = other.character(&[1, 0]).unwrap();
        assert!(matches!(g.pair(&x, &y), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn pairing_is_multiplicative_in_the_character() {
        for factors in [vec![4], vec![2, 3], vec![2, 2], vec![6]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            for x in g.elements() {
                for y1 in g.elements() {
                    for y2 in g.elements() {
                        let sum = Character::from(g.add(&y1, &y2));
                        let lhs = g.pair(&x, &sum.clone()).unwrap();
                        let rhs = g.pair(&x, &y1.clone().into()).unwrap()
                            * g.pair(&x, &y2.clone().into()).unwrap();
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_of_index_two_subgroup_in_z4() {
        let g = z(4);
        let k = Subgroup::generate(&g, &[g.element(&[2]).unwrap()]).unwrap();
        assert_eq!(k.member_indices(), &[0, 2]);
        let ann = k.annihilator();
        assert_eq!(ann.member_indices(), &[0, 2]);
        // independent check against the raw pairing
        for yi in 0..4 {
            let y = g.character_at(yi);
            let all_one = k.elements().all(|x| {
                (g.pair(&x, &y).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12
            });
            assert_eq!(all_one, ann.contains_index(yi));
        }
    }

    #[test]
    fn annihilator_extremes() {
        let g = z(4);
        let trivial = Subgroup::trivial(&g);
        assert_eq!(trivial.annihilator().len(), 4);
        let whole = Subgroup::whole(&g);
        assert_eq!(whole.annihilator().member_indices(), &[0]);
    }

    #[test]
    fn corwin_test_matches_parity_of_factors() {
        assert!(z(3).is_corwin());
        assert!(!z(2).is_corwin());
        assert!(!FiniteAbelianGroup::new(vec![2, 3]).unwrap().is_corwin());
        assert!(z(9).is_corwin());
        assert!(FiniteAbelianGroup::new(vec![3, 5]).unwrap().is_corwin());
    }

    #[test]
    fn doubling_image_of_z2_z3() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let doubled = Subgroup::whole(&g).doubled();
        let expected: Vec<usize> = g
            .elements()
            .filter(|e| e.coords()[0] == 0)
            .map(|e| g.index_of(&e))
            .collect();
        assert_eq!(doubled.member_indices(), expected.as_slice());
    }

    #[test]
    fn doubling_graph_on_z4() {
        let g = z(4);
        let dg = doubling_graph(&g);
        assert_eq!(dg.next(1), 2);
        assert_eq!(dg.next(3), 2);
        assert_eq!(dg.next(2), 0);
        assert_eq!(dg.next(0), 0);
        assert_eq!(dg.roots(), &[1, 3]);
        assert_eq!(dg.cycles(), &[vec![0]]);
        let mut covered: Vec<usize> = dg.chains().iter().flatten().copied().collect();
        covered.extend(dg.cycles().iter().flatten().copied());
        covered.sort_unstable();
        assert_eq!(covered, vec![0, 1, 2, 3]);
    }

    #[test]
    fn doubling_graph_on_z3_is_a_pure_cycle() {
        let g = z(3);
        let dg = doubling_graph(&g);
        assert!(dg.roots().is_empty());
        assert_eq!(dg.cycles(), &[vec![0], vec![1, 2]]);
        assert!(dg.chains().is_empty());
    }

    #[test]
    fn doubling_graph_on_z2() {
        let dg = doubling_graph(&z(2));
        assert_eq!(dg.roots(), &[1]);
        assert_eq!(dg.cycles(), &[vec![0]]);
        assert_eq!(dg.chains(), &[vec![1]]);
    }

    #[test]
    fn zero_is_always_a_fixed_point() {
        for factors in [vec![2], vec![5], vec![2, 4], vec![3, 3]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let dg = doubling_graph(&g);
            assert_eq!(dg.next(0), 0);
            assert!(dg.is_on_cycle(0));
        }
    }

    #[test]
    fn subgroup_counts_on_small_groups() {
        assert_eq!(subgroups(&z(12)).len(), 6);
        let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(subgroups(&klein).len(), 5);
        assert_eq!(subgroups(&z(8)).len(), 4);
    }

    #[test]
    fn generated_subgroup_closure() {
        let g = z(6);
        let k = Subgroup::generate(&g, &[g.element(&[2]).unwrap()]).unwrap();
        assert_eq!(k.member_indices(), &[0, 2, 4]);
        assert!(k.is_corwin());
    }

    #[test]
    fn from_member_indices_validates_closure() {
        let g = z(4);
        assert!(Subgroup::from_member_indices(&g, &[0, 2]).is_ok());
        assert!(Subgroup::from_member_indices(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_member_indices(&g, &[1]).is_err());
    }

    #[test]
    fn trivial_group_is_well_behaved() {
        let g = FiniteAbelianGroup::trivial();
        assert_eq!(g.order(), 1);
        let all: Vec<GroupElement> = g.elements().collect();
        assert_eq!(all.len(), 1);
        assert!(g.is_corwin());
        let dg = doubling_graph(&g);
        assert_eq!(dg.cycles(), &[vec![0]]);
    }

    #[test]
    fn phase_is_always_in_unit_interval() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let p = g.pair_phase(&x, &y.clone().into()).unwrap();
                let v = p.to_f64().unwrap();
                assert!((0.0..1.0).contains(&v));
            }
        }
    }
}
