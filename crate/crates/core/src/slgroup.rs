//! Deterministic enumeration of SL(n,2) with subgroup, orbit, normalizer,
//! and hyperplane-stabilizer machinery, and the projection from certified
//! free-group automorphisms.
//!
//! Elements are bit-packed matrices indexed by BFS discovery order from the
//! elementary transvection matrices, so indices are stable across runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::autos::{AutoError, Automorphism};
use crate::gf2::{Gf2Error, Gf2Matrix};
use crate::hyperplanes::{complete_basis_with, Hyperplane, HyperplaneError, Indicator};
use crate::words::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SlError {
    #[error("dimension {0} is outside the supported range 2..=5")]
    UnsupportedDimension(usize),
    #[error("dimension 5 enumerates ~10^7 matrices; pass the explicit opt-in")]
    NeedsOptIn,
    #[error("projection requires a special automorphism (determinant +1)")]
    NotSpecial,
    #[error("element index {0} is not in the table")]
    ElementNotInTable(u32),
    #[error("matrix is not an element of the enumerated group")]
    MatrixNotInTable,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("set is not closed under multiplication")]
    NotClosed,
    #[error("generator-level and matrix-level subgroup computations disagree")]
    RouteDisagreement,
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
    #[error(transparent)]
    Hyperplane(#[from] HyperplaneError),
}

/// |SL(n,2)| = prod_{k=0}^{n-1} (2^n - 2^k).
pub fn sl_order(n: usize) -> u64 {
    (0..n).map(|k| (1u64 << n) - (1u64 << k)).product()
}

fn packed_mul(n: usize, a: u64, b: u64) -> u64 {
    let mask = (1u64 << n) - 1;
    let mut out = 0u64;
    for i in 0..n {
        let mut bits = a >> (i * n) & mask;
        let mut row = 0u64;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            row ^= b >> (j * n) & mask;
            bits &= bits - 1;
        }
        out |= row << (i * n);
    }
    out
}

/// A deterministically indexed enumeration of SL(n,2).
#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    elems: Vec<u64>,
    index: HashMap<u64, u32>,
    generators: Vec<u32>,
}

impl GroupTable {
    /// BFS closure from the elementary matrices I + e_{ij} in (i,j)-lex
    /// order. Supports n in 2..=4; n = 5 only with `allow_n5`.
    pub fn enumerate_sl(n: usize, allow_n5: bool) -> Result<GroupTable, SlError> {
        if !(2..=5).contains(&n) {
            return Err(SlError::UnsupportedDimension(n));
        }
        if n == 5 && !allow_n5 {
            return Err(SlError::NeedsOptIn);
        }
        let gen_matrices: Vec<u64> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| Gf2Matrix::elementary(n, i, j).pack())
            .collect();
        let identity = Gf2Matrix::identity(n).pack();
        let mut elems = vec![identity];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut cursor = 0usize;
        while cursor < elems.len() {
            let e = elems[cursor];
            cursor += 1;
            for &g in &gen_matrices {
                let p = packed_mul(n, e, g);
                if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(p) {
                    slot.insert(elems.len() as u32);
                    elems.push(p);
                }
            }
        }
        let generators = gen_matrices.iter().map(|g| index[g]).collect();
        Ok(GroupTable {
            n,
            elems,
            index,
            generators,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    /// Indices of the elementary generator matrices, in construction order.
    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    pub fn element(&self, idx: u32) -> Gf2Matrix {
        Gf2Matrix::unpack(self.n, self.elems[idx as usize])
    }

    pub fn index_of(&self, m: &Gf2Matrix) -> Result<u32, SlError> {
        if m.n() != self.n {
            return Err(SlError::DimensionMismatch {
                expected: self.n,
                got: m.n(),
            });
        }
        self.index
            .get(&m.pack())
            .copied()
            .ok_or(SlError::MatrixNotInTable)
    }

    pub fn contains_index(&self, idx: u32) -> bool {
        (idx as usize) < self.elems.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = packed_mul(self.n, self.elems[a as usize], self.elems[b as usize]);
        self.index[&p]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let m = self.element(a).inverse().expect("group elements are invertible");
        self.index[&m.pack()]
    }

    fn check_index(&self, idx: u32) -> Result<(), SlError> {
        if self.contains_index(idx) {
            Ok(())
        } else {
            Err(SlError::ElementNotInTable(idx))
        }
    }
}

/// Mod-2 reduction of the abelianization matrix of a special automorphism;
/// the composite projection out of the automorphism group.
pub fn pi(auto: &Automorphism) -> Result<Gf2Matrix, SlError> {
    if !auto.is_special()? {
        return Err(SlError::NotSpecial);
    }
    Ok(Gf2Matrix::from_int(&auto.abelianization_matrix())?)
}

/// A subgroup of an enumerated table, canonically the sorted list of member
/// indices plus a small generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    n: usize,
    generators: Vec<u32>,
    members: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Sorted member indices; the canonical form.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    /// FNV-1a over the packed member matrices, in sorted index order.
    pub fn content_hash(&self, table: &GroupTable) -> u64 {
        let mut hash = 0xcbf29ce484222325u64;
        for &idx in &self.members {
            let packed = table.elems[idx as usize];
            for byte in packed.to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(0x100000001b3);
            }
        }
        hash
    }

    /// Report form: order, generator indices, and the content hash.
    pub fn describe(&self, table: &GroupTable) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "generators": self.generators.clone(),
            "content_hash": format!("{:016x}", self.content_hash(table)),
        })
    }
}

/// Closure of a generator list by BFS; the empty list yields the trivial
/// subgroup.
pub fn subgroup_closure(table: &GroupTable, generators: &[u32]) -> Result<Subgroup, SlError> {
    for &g in generators {
        table.check_index(g)?;
    }
    let mut seen = vec![table.identity_index()];
    let mut member_set: std::collections::HashSet<u32> = seen.iter().copied().collect();
    let mut cursor = 0;
    while cursor < seen.len() {
        let e = seen[cursor];
        cursor += 1;
        for &g in generators {
            let p = table.mul(e, g);
            if member_set.insert(p) {
                seen.push(p);
            }
        }
    }
    seen.sort_unstable();
    Ok(Subgroup {
        n: table.n,
        generators: generators.to_vec(),
        members: seen,
    })
}

/// Builds a subgroup from an explicit member set, verifying closure and
/// extracting a small generating set greedily.
pub fn subgroup_from_members(table: &GroupTable, members: Vec<u32>) -> Result<Subgroup, SlError> {
    let mut members = members;
    members.sort_unstable();
    members.dedup();
    for &m in &members {
        table.check_index(m)?;
    }
    if members.binary_search(&table.identity_index()).is_err() {
        return Err(SlError::NotClosed);
    }
    let mut generators: Vec<u32> = Vec::new();
    let mut span = subgroup_closure(table, &generators)?;
    for &m in &members {
        if !span.contains(m) {
            generators.push(m);
            span = subgroup_closure(table, &generators)?;
        }
    }
    if span.members != members {
        return Err(SlError::NotClosed);
    }
    Ok(Subgroup {
        n: table.n,
        generators,
        members,
    })
}

/// g^-1 H g, re-canonicalized.
pub fn conjugate_subgroup(table: &GroupTable, g: u32, h: &Subgroup) -> Result<Subgroup, SlError> {
    table.check_index(g)?;
    let ginv = table.inv(g);
    let conj = |m: u32| table.mul(table.mul(ginv, m), g);
    let mut members: Vec<u32> = h.members.iter().map(|&m| conj(m)).collect();
    members.sort_unstable();
    Ok(Subgroup {
        n: h.n,
        generators: h.generators.iter().map(|&m| conj(m)).collect(),
        members,
    })
}

/// The conjugation orbit of a subgroup, BFS over the table's generators,
/// deduplicated by canonical member set. Discovery order is deterministic.
pub fn orbit_of_subgroup(table: &GroupTable, h: &Subgroup) -> Result<Vec<Subgroup>, SlError> {
    let mut orbit = vec![h.clone()];
    let mut seen: std::collections::HashSet<Vec<u32>> =
        std::iter::once(h.members.clone()).collect();
    let mut cursor = 0;
    while cursor < orbit.len() {
        let current = orbit[cursor].clone();
        cursor += 1;
        for &g in table.generator_indices() {
            let conj = conjugate_subgroup(table, g, &current)?;
            if seen.insert(conj.members.clone()) {
                orbit.push(conj);
            }
        }
    }
    Ok(orbit)
}

/// N(H) = { g : g^-1 H g = H }, computed by testing the generators of H
/// against membership (sufficient in a finite group).
pub fn normalizer(table: &GroupTable, h: &Subgroup) -> Result<Subgroup, SlError> {
    let mut members = Vec::new();
    for idx in 0..table.order() as u32 {
        let ginv = table.inv(idx);
        let normalizes = h
            .generators
            .iter()
            .all(|&m| h.contains(table.mul(table.mul(ginv, m), idx)));
        if normalizes {
            members.push(idx);
        }
    }
    subgroup_from_members(table, members)
}

/// All elements whose row action maps the hyperplane onto itself (setwise).
pub fn hyperplane_stabilizer(
    table: &GroupTable,
    plane: &Hyperplane,
) -> Result<Subgroup, SlError> {
    if plane.n() != table.n {
        return Err(SlError::DimensionMismatch {
            expected: table.n,
            got: plane.n(),
        });
    }
    let mut members = Vec::new();
    for idx in 0..table.order() as u32 {
        let m = table.element(idx);
        if plane.basis().iter().all(|&v| plane.contains(m.act_on_row(v))) {
            members.push(idx);
        }
    }
    subgroup_from_members(table, members)
}

/// phi_{v,w}: the last generator maps to v * x_rank * w^-1, the others are
/// fixed. `v` and `w` must not mention the last generator.
pub fn phi_pair(v: &Word, w: &Word) -> Result<Automorphism, SlError> {
    let rank = v.rank();
    if rank != w.rank() {
        return Err(SlError::DimensionMismatch {
            expected: rank,
            got: w.rank(),
        });
    }
    let last = rank;
    if v.letters().iter().chain(w.letters()).any(|l| l.index == last) {
        return Err(SlError::DimensionMismatch {
            expected: last - 1,
            got: last,
        });
    }
    let mut auto = Automorphism::identity(rank)?;
    for letter in v.letters() {
        // phi_{x_j,1}: x_last -> x_j x_last, the inverse of a left
        // transvection; phi factors letterwise since phi_{a,1} phi_{b,1}
        // = phi_{ab,1}.
        let step = match letter.sign {
            crate::words::Sign::Plus => {
                Automorphism::left_transvection(rank, last, letter.index)?.inverse()?
            }
            crate::words::Sign::Minus => {
                Automorphism::left_transvection(rank, last, letter.index)?
            }
        };
        auto = auto.compose(&step)?;
    }
    for letter in w.letters() {
        let step = match letter.sign {
            crate::words::Sign::Plus => {
                Automorphism::right_transvection(rank, last, letter.index)?.inverse()?
            }
            crate::words::Sign::Minus => {
                Automorphism::right_transvection(rank, last, letter.index)?
            }
        };
        auto = auto.compose(&step)?;
    }
    Ok(auto)
}

/// Generator set of the subgroup built on the completed basis of I: all
/// transvections among the first n basis words, plus the maps multiplying
/// the appended word by a basis word on either side.
fn c_generators(indicator: &Indicator, appended: usize) -> Result<Vec<Automorphism>, SlError> {
    let rank = indicator.n();
    let n = rank - 1;
    let mut change = complete_basis_with(indicator, appended)?;
    if !change.is_special()? {
        // Flip one basis word to make the change special; the subgroup
        // generated below is insensitive to replacing y_1 by its inverse.
        change = Automorphism::inversion(rank, 1)?.compose(&change)?;
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            gens.push(Automorphism::right_transvection(rank, i, j)?.conjugated_by(&change)?);
            gens.push(Automorphism::left_transvection(rank, i, j)?.conjugated_by(&change)?);
        }
    }
    let identity_word = Word::identity(rank)?;
    for j in 1..=n {
        let yj = Word::generator(rank, j)?;
        gens.push(phi_pair(&yj, &identity_word)?.conjugated_by(&change)?);
        gens.push(phi_pair(&identity_word, &yj)?.conjugated_by(&change)?);
    }
    Ok(gens)
}

/// Image under `pi` of the subgroup attached to an indicator of length
/// table.n: closure of the projected generators, cross-checked against the
/// matrix-level conjugate of the standard stabilizer. The basis of S_I is
/// completed by the generator at the smallest zero position.
pub fn c_subgroup_image(table: &GroupTable, indicator: &Indicator) -> Result<Subgroup, SlError> {
    let smallest_zero = indicator.zeros()[0];
    c_subgroup_image_with(table, indicator, smallest_zero)
}

/// Like [`c_subgroup_image`] with an explicit choice of appended zero
/// position; the result does not depend on the choice.
pub fn c_subgroup_image_with(
    table: &GroupTable,
    indicator: &Indicator,
    appended: usize,
) -> Result<Subgroup, SlError> {
    if indicator.n() != table.n {
        return Err(SlError::DimensionMismatch {
            expected: table.n,
            got: indicator.n(),
        });
    }
    let gens = c_generators(indicator, appended)?;
    let gen_indices: Vec<u32> = gens
        .iter()
        .map(|a| table.index_of(&pi(a)?))
        .collect::<Result<_, _>>()?;
    let by_generators = subgroup_closure(table, &gen_indices)?;

    // Independent route: conjugate the standard stabilizer by the basis
    // change at the matrix level.
    let standard = standard_c_subgroup(table)?;
    let change = complete_basis_with(indicator, appended)?;
    let m = Gf2Matrix::from_int(&change.abelianization_matrix())?;
    let m_idx = table.index_of(&m)?;
    let by_matrices = conjugate_subgroup(table, m_idx, &standard)?;
    if by_generators.members != by_matrices.members {
        return Err(SlError::RouteDisagreement);
    }
    subgroup_from_members(table, by_generators.members)
}

/// The standard subgroup: stabilizer of the hyperplane spanned by the first
/// n-1 coordinates, i.e. the image for the indicator (1,...,1,0).
pub fn standard_c_subgroup(table: &GroupTable) -> Result<Subgroup, SlError> {
    let n = table.n;
    let basis: Vec<u32> = (0..n - 1).map(|k| 1 << k).collect();
    hyperplane_stabilizer(table, &Hyperplane::new(n, basis)?)
}

/// The 2^n projected products R_1^{p_1} ... R_n^{p_n} of the transvections
/// R_j = E_{x_{n+1}, x_j}, built at the automorphism level.
pub fn b_images(table: &GroupTable) -> Result<Vec<Gf2Matrix>, SlError> {
    let rank = table.n;
    let n = rank - 1;
    let transvections: Vec<Automorphism> = (1..=n)
        .map(|j| Automorphism::right_transvection(rank, rank, j))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(1 << n);
    for p in 0u32..1 << n {
        let mut auto = Automorphism::identity(rank)?;
        for (j, r) in transvections.iter().enumerate() {
            if p >> j & 1 == 1 {
                auto = auto.compose(r)?;
            }
        }
        out.push(pi(&auto)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::Automorphism;

    fn table(n: usize) -> GroupTable {
        GroupTable::enumerate_sl(n, false).unwrap()
    }

    #[test]
    fn order_formula() {
        assert_eq!(sl_order(2), 6);
        assert_eq!(sl_order(3), 168);
        assert_eq!(sl_order(4), 20160);
        assert_eq!(sl_order(5), 9_999_360);
    }

    #[test]
    fn enumerate_matches_formula_small() {
        for n in 2..=3 {
            let t = table(n);
            assert_eq!(t.order(), sl_order(n));
            assert_eq!(t.element(0), Gf2Matrix::identity(n));
        }
    }

    #[test]
    fn enumerate_rejects_out_of_range_and_unflagged_n5() {
        assert_eq!(
            GroupTable::enumerate_sl(1, false).unwrap_err(),
            SlError::UnsupportedDimension(1)
        );
        assert_eq!(
            GroupTable::enumerate_sl(6, true).unwrap_err(),
            SlError::UnsupportedDimension(6)
        );
        assert_eq!(
            GroupTable::enumerate_sl(5, false).unwrap_err(),
            SlError::NeedsOptIn
        );
    }

    #[test]
    fn indices_are_deterministic() {
        let a = table(3);
        let b = table(3);
        assert_eq!(a.elems, b.elems);
    }

    #[test]
    fn mul_and_inv_round_trip() {
        let t = table(3);
        for idx in [0u32, 1, 17, 100] {
            assert_eq!(t.mul(idx, t.inv(idx)), t.identity_index());
        }
    }

    #[test]
    fn pi_of_transvection_is_elementary() {
        let t = table(3);
        let e12 = Automorphism::right_transvection(3, 1, 2).unwrap();
        assert_eq!(pi(&e12).unwrap(), Gf2Matrix::elementary(3, 0, 1));
        let left = Automorphism::left_transvection(3, 1, 2).unwrap();
        assert_eq!(pi(&left).unwrap(), pi(&e12).unwrap());
        assert!(t.index_of(&pi(&e12).unwrap()).is_ok());
    }

    #[test]
    fn pi_of_magnus_generator_is_identity() {
        let m = Automorphism::magnus_generator(4).unwrap();
        assert_eq!(pi(&m).unwrap(), Gf2Matrix::identity(4));
    }

    #[test]
    fn pi_refuses_non_special() {
        let swap = Automorphism::swap(3, 1, 2).unwrap();
        assert_eq!(pi(&swap).unwrap_err(), SlError::NotSpecial);
    }

    #[test]
    fn pi_is_homomorphic_on_samples() {
        let f = Automorphism::right_transvection(3, 1, 2).unwrap();
        let g = Automorphism::left_transvection(3, 2, 3).unwrap();
        let lhs = pi(&f.compose(&g).unwrap()).unwrap();
        let rhs = pi(&f).unwrap().mul(&pi(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn closure_of_empty_set_is_trivial() {
        let t = table(2);
        let h = subgroup_closure(&t, &[]).unwrap();
        assert_eq!(h.members(), &[0]);
    }

    #[test]
    fn closure_of_generators_is_whole_group() {
        let t = table(3);
        let h = subgroup_closure(&t, t.generator_indices()).unwrap();
        assert_eq!(h.order(), t.order());
    }

    #[test]
    fn conjugate_preserves_order() {
        let t = table(3);
        let h = subgroup_closure(&t, &[t.generator_indices()[0]]).unwrap();
        let c = conjugate_subgroup(&t, 5, &h).unwrap();
        assert_eq!(c.order(), h.order());
    }

    #[test]
    fn orbit_of_whole_group_is_itself() {
        let t = table(2);
        let whole = subgroup_closure(&t, t.generator_indices()).unwrap();
        let orbit = orbit_of_subgroup(&t, &whole).unwrap();
        assert_eq!(orbit.len(), 1);
        let norm = normalizer(&t, &whole).unwrap();
        assert_eq!(norm.order(), t.order());
    }

    #[test]
    fn orbit_of_trivial_subgroup_is_itself() {
        let t = table(3);
        let trivial = subgroup_closure(&t, &[]).unwrap();
        assert_eq!(orbit_of_subgroup(&t, &trivial).unwrap().len(), 1);
        assert_eq!(normalizer(&t, &trivial).unwrap().order(), t.order());
    }

    #[test]
    fn standard_stabilizer_in_sl3() {
        let t = table(3);
        let stab = standard_c_subgroup(&t).unwrap();
        // |SL(2,2)| * 2^2 = 6 * 4
        assert_eq!(stab.order(), 24);
        let orbit = orbit_of_subgroup(&t, &stab).unwrap();
        assert_eq!(orbit.len(), 7);
        let norm = normalizer(&t, &stab).unwrap();
        assert_eq!(norm.order(), 24);
        assert_eq!(orbit.len() as u64 * norm.order(), t.order());
        assert_eq!(norm.members(), stab.members());
    }

    #[test]
    fn stabilizers_of_distinct_hyperplanes_differ_in_sl3() {
        let t = table(3);
        let mut seen = std::collections::HashSet::new();
        for indicator in Indicator::all(3) {
            let plane = crate::hyperplanes::hyperplane_basis(&indicator);
            let stab = hyperplane_stabilizer(&t, &plane).unwrap();
            assert_eq!(stab.order(), 24);
            assert!(seen.insert(stab.members().to_vec()));
        }
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn phi_pair_images() {
        let v = Word::parse("x1*x2", 3).unwrap();
        let one = Word::identity(3).unwrap();
        let phi = phi_pair(&v, &one).unwrap();
        assert_eq!(phi.image_of(3), &Word::parse("x1*x2*x3", 3).unwrap());
        let psi = phi_pair(&one, &v).unwrap();
        assert_eq!(psi.image_of(3), &Word::parse("x3*x2^-1*x1^-1", 3).unwrap());
        assert_eq!(phi.image_of(1), &Word::parse("x1", 3).unwrap());
    }

    #[test]
    fn phi_pair_is_a_pair_homomorphism() {
        let a = Word::parse("x1", 3).unwrap();
        let b = Word::parse("x2*x1^-1", 3).unwrap();
        let one = Word::identity(3).unwrap();
        let lhs = phi_pair(&a, &one)
            .unwrap()
            .compose(&phi_pair(&b, &one).unwrap())
            .unwrap();
        let rhs = phi_pair(&a.concat(&b).unwrap(), &one).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_pair_rejects_last_generator() {
        let v = Word::parse("x3", 3).unwrap();
        let one = Word::identity(3).unwrap();
        assert!(phi_pair(&v, &one).is_err());
    }

    #[test]
    fn b_images_small() {
        let t = table(3);
        let images = b_images(&t).unwrap();
        assert_eq!(images.len(), 4);
        assert_eq!(images[0], Gf2Matrix::identity(3));
        let distinct: std::collections::HashSet<u64> = images.iter().map(Gf2Matrix::pack).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn c_subgroup_image_for_standard_indicator() {
        let t = table(3);
        let standard: Indicator = "110".parse().unwrap();
        let c = c_subgroup_image(&t, &standard).unwrap();
        assert_eq!(c.members(), standard_c_subgroup(&t).unwrap().members());
    }

    #[test]
    fn subgroup_describe_is_stable() {
        let t = table(3);
        let stab = standard_c_subgroup(&t).unwrap();
        let description = stab.describe(&t);
        assert_eq!(description["order"], 24);
        assert_eq!(description, standard_c_subgroup(&t).unwrap().describe(&t));
        assert!(description["content_hash"].as_str().unwrap().len() == 16);
        let conj = conjugate_subgroup(&t, 5, &stab).unwrap();
        if conj.members() != stab.members() {
            assert_ne!(
                description["content_hash"],
                subgroup_from_members(&t, conj.members().to_vec())
                    .unwrap()
                    .describe(&t)["content_hash"]
            );
        }
    }

    #[test]
    fn c_subgroups_distinct_and_match_stabilizers_in_sl3() {
        let t = table(3);
        let mut seen = std::collections::HashSet::new();
        for indicator in Indicator::all(3) {
            let c = c_subgroup_image(&t, &indicator).unwrap();
            let plane = crate::hyperplanes::hyperplane_basis(&indicator);
            let stab = hyperplane_stabilizer(&t, &plane).unwrap();
            assert_eq!(c.members(), stab.members());
            assert!(seen.insert(c.members().to_vec()));
        }
        assert_eq!(seen.len(), 7);
    }
}
