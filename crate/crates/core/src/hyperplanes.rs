//! The dictionary between binary indicator vectors, hyperplanes of Z_2^n,
//! and free-group subgroups S_I, plus the two-indicator basis-change
//! algorithm.
//!
//! An indicator vector I (not all ones) determines the hyperplane P_I cut
//! out by the equation: the coordinates at the zero positions of I sum to
//! zero. The subgroup S_I of F_n mirrors a basis of P_I with words replacing
//! vectors, and extends to a full basis of F_n by appending one generator
//! from a zero position.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::autos::{AutoBuilder, AutoError, Automorphism};
use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Span};
use crate::words::{Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HyperplaneError {
    #[error("indicator must have at least one entry")]
    Empty,
    #[error("the all-ones vector does not determine a hyperplane")]
    AllOnes,
    #[error("indicator entries must be 0 or 1, found {0:?}")]
    BadCharacter(char),
    #[error("indicators have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("indicators must be distinct")]
    EqualIndicators,
    #[error("position {0} is not a zero of the indicator")]
    NotAZeroPosition(usize),
    #[error("basis change must carry a certificate")]
    Uncertified,
    #[error("constructed basis change failed its own verification")]
    VerificationFailed,
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Binary vector of length n, never all ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Indicator {
    bits: Vec<bool>,
}

impl Indicator {
    pub fn new(bits: Vec<bool>) -> Result<Indicator, HyperplaneError> {
        if bits.is_empty() {
            return Err(HyperplaneError::Empty);
        }
        if bits.iter().all(|&b| b) {
            return Err(HyperplaneError::AllOnes);
        }
        Ok(Indicator { bits })
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    /// 1-based lookup.
    pub fn bit(&self, j: usize) -> bool {
        self.bits[j - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Positions j (1-based, increasing) with bit 0.
    pub fn zeros(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| !self.bit(j)).collect()
    }

    /// Positions j (1-based, increasing) with bit 1.
    pub fn ones(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.bit(j)).collect()
    }

    /// GF(2) mask with bit j-1 set iff entry j is 1.
    pub fn mask(&self) -> u32 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    /// The defining equation of P_I: coordinates at zero positions sum to 0.
    pub fn defining_equation_holds(&self, v: u32) -> bool {
        let zero_mask = !self.mask() & ((1u32 << self.n()) - 1);
        (v & zero_mask).count_ones().is_multiple_of(2)
    }

    /// All 2^n - 1 indicators of length n in bitstring-lexicographic order.
    pub fn all(n: usize) -> Vec<Indicator> {
        assert!((1..31).contains(&n));
        (0..(1u32 << n) - 1)
            .map(|v| Indicator {
                bits: (0..n).map(|j| v >> (n - 1 - j) & 1 == 1).collect(),
            })
            .collect()
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Indicator {
    type Err = HyperplaneError;

    fn from_str(s: &str) -> Result<Indicator, HyperplaneError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(HyperplaneError::BadCharacter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Indicator::new(bits)
    }
}

/// A codimension-1 subspace of Z_2^n given by n-1 independent row vectors.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    n: usize,
    basis: Vec<u32>,
    span: Gf2Span,
}

impl Hyperplane {
    pub fn new(n: usize, basis: Vec<u32>) -> Result<Hyperplane, HyperplaneError> {
        let span = Gf2Span::from_vectors(n, &basis);
        if basis.len() != n - 1 || span.rank() != n - 1 {
            return Err(HyperplaneError::Gf2(Gf2Error::RankDeficient {
                expected: n - 1,
                got: span.rank(),
            }));
        }
        Ok(Hyperplane { n, basis, span })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, v: u32) -> bool {
        self.span.contains(v)
    }
}

/// Basis of P_I: sums of consecutive zero-position vectors, then the
/// one-position vectors.
pub fn hyperplane_basis(indicator: &Indicator) -> Hyperplane {
    let n = indicator.n();
    let zeros = indicator.zeros();
    let mut basis = Vec::with_capacity(n - 1);
    for pair in zeros.windows(2) {
        basis.push(1 << (pair[0] - 1) | 1 << (pair[1] - 1));
    }
    for o in indicator.ones() {
        basis.push(1 << (o - 1));
    }
    let plane = Hyperplane::new(n, basis).expect("the construction has rank n-1");
    debug_assert!(plane
        .basis()
        .iter()
        .all(|&v| indicator.defining_equation_holds(v)));
    plane
}

/// Recovers the indicator: bit j is 1 iff the j-th standard vector lies in
/// the plane.
pub fn indicator_of(plane: &Hyperplane) -> Indicator {
    let bits = (0..plane.n()).map(|k| plane.contains(1 << k)).collect();
    Indicator::new(bits).expect("a proper hyperplane misses some standard vector")
}

/// Free basis of the subgroup S_I, mirroring `hyperplane_basis` with words.
pub fn s_basis(indicator: &Indicator) -> Vec<Word> {
    let n = indicator.n();
    let zeros = indicator.zeros();
    let mut words = Vec::with_capacity(n - 1);
    for pair in zeros.windows(2) {
        let w = Word::generator(n, pair[0])
            .and_then(|u| u.concat(&Word::generator(n, pair[1])?.inverse()))
            .expect("indices are within rank");
        words.push(w);
    }
    for o in indicator.ones() {
        words.push(Word::generator(n, o).expect("index within rank"));
    }
    words
}

/// Extends S_I to a basis of F_n by appending the generator at the smallest
/// zero position, and returns the certified automorphism carrying
/// (x_1, ..., x_n) to that basis.
pub fn complete_basis(indicator: &Indicator) -> Result<Automorphism, HyperplaneError> {
    let smallest_zero = indicator.zeros()[0];
    complete_basis_with(indicator, smallest_zero)
}

/// Like [`complete_basis`] but appending the generator at a chosen zero
/// position.
pub fn complete_basis_with(
    indicator: &Indicator,
    appended: usize,
) -> Result<Automorphism, HyperplaneError> {
    let n = indicator.n();
    let zeros = indicator.zeros();
    let ones = indicator.ones();
    let Some(i_pos) = zeros.iter().position(|&z| z == appended).map(|p| p + 1) else {
        return Err(HyperplaneError::NotAZeroPosition(appended));
    };
    let l = zeros.len();

    // Row layout: chain rows 1..l-1 each hold the zero-position generator
    // they do not share with an earlier chain; the appended generator sits
    // at row n and is referenced, never edited.
    let mut layout = Vec::with_capacity(n);
    layout.extend(zeros[..i_pos - 1].iter().copied());
    layout.extend(zeros[i_pos..].iter().copied());
    layout.extend(ones.iter().copied());
    layout.push(appended);

    let mut b = AutoBuilder::new(n)?;
    b.place_generators(&layout)?;
    for k in 1..i_pos {
        let home = if k + 1 == i_pos { n } else { k + 1 };
        b.mul_right_inv(k, home)?;
    }
    for k in (i_pos..l).rev() {
        let home = if k == i_pos { n } else { k - 1 };
        b.invert_row(k)?;
        b.mul_left(k, home)?;
    }
    let auto = b.finish()?;

    let mut expected = s_basis(indicator);
    expected.push(Word::generator(n, appended)?);
    assert_eq!(auto.images(), expected.as_slice(), "basis completion mismatch");
    Ok(auto)
}

/// The two target indicators (1,0,1,...,1) and (0,1,1,...,1).
pub fn lemma_a_targets(n: usize) -> (Indicator, Indicator) {
    assert!(n >= 2, "target indicators need at least two entries");
    let mut first = vec![true; n];
    first[1] = false;
    let mut second = vec![true; n];
    second[0] = false;
    (
        Indicator::new(first).expect("has a zero"),
        Indicator::new(second).expect("has a zero"),
    )
}

/// Produces a certified basis change under which the hyperplanes of `ind`
/// and `ind_prime` acquire the indicators (1,0,1,...,1) and (0,1,1,...,1).
///
/// Positions are first sorted stably into the blocks (1,0), (0,1), (1,1),
/// (0,0) of disagreement pattern; chain words are then built inside each
/// block, with one anchor word per indicator that separates the two planes.
pub fn lemma_a_change(
    ind: &Indicator,
    ind_prime: &Indicator,
) -> Result<Automorphism, HyperplaneError> {
    let n = ind.n();
    if n != ind_prime.n() {
        return Err(HyperplaneError::LengthMismatch {
            left: n,
            right: ind_prime.n(),
        });
    }
    if ind == ind_prime {
        return Err(HyperplaneError::EqualIndicators);
    }

    let mut d10 = Vec::new();
    let mut d01 = Vec::new();
    let mut b11 = Vec::new();
    let mut b00 = Vec::new();
    for j in 1..=n {
        match (ind.bit(j), ind_prime.bit(j)) {
            (true, false) => d10.push(j),
            (false, true) => d01.push(j),
            (true, true) => b11.push(j),
            (false, false) => b00.push(j),
        }
    }
    let (k, kp, m, z) = (d10.len(), d01.len(), b11.len(), b00.len());
    let d = k + kp;
    let b0 = d + m + 1;
    // sigma[t-1]: original position at reordered position t
    let sigma: Vec<usize> = d10
        .iter()
        .chain(&d01)
        .chain(&b11)
        .chain(&b00)
        .copied()
        .collect();
    let x = |t: usize| sigma[t - 1];

    let mut builder = AutoBuilder::new(n)?;
    let mut layout: Vec<usize> = Vec::with_capacity(n);

    if k >= 1 && kp >= 1 {
        layout.push(x(1));
        layout.push(x(k + 1));
        layout.extend((2..=k).map(x));
        layout.extend((k + 2..=d).map(x));
        layout.extend((d + 1..=d + m).map(x));
        layout.extend((b0 + 1..b0 + z).map(x));
        if z >= 1 {
            layout.push(x(b0));
        }
        builder.place_generators(&layout)?;
        for j in (1..k).rev() {
            let row = 2 + j;
            builder.invert_row(row)?;
            builder.mul_left(row, if j == 1 { 1 } else { j + 1 })?;
        }
        for j in (k + 1..d).rev() {
            let row = 1 + j;
            builder.invert_row(row)?;
            builder.mul_left(row, if j == k + 1 { 2 } else { j })?;
        }
        for l in (1..z).rev() {
            let row = d + m + l;
            builder.invert_row(row)?;
            builder.mul_left(row, if l == 1 { n } else { row - 1 })?;
        }
        if z >= 1 {
            builder.invert_row(n)?;
            builder.mul_left(n, 1)?;
            builder.mul_right(n, 2)?;
        }
    } else if kp == 0 {
        // One side has no private ones; anchor the second row on the first
        // both-zero position instead (z >= 1 because ind_prime is not all
        // ones).
        layout.push(x(1));
        layout.push(x(b0));
        layout.extend((2..=k).map(x));
        layout.extend((k + 1..=k + m).map(x));
        layout.extend((b0 + 1..b0 + z).map(x));
        builder.place_generators(&layout)?;
        for j in (1..k).rev() {
            let row = 2 + j;
            builder.invert_row(row)?;
            builder.mul_left(row, if j == 1 { 1 } else { j + 1 })?;
        }
        for l in (1..z).rev() {
            let row = k + 1 + m + l;
            builder.invert_row(row)?;
            builder.mul_left(row, if l == 1 { 2 } else { row - 1 })?;
        }
        builder.invert_row(2)?;
        builder.mul_left(2, 1)?;
    } else {
        // k == 0, mirror image of the previous case (z >= 1 because ind is
        // not all ones).
        layout.push(x(b0));
        layout.push(x(1));
        layout.extend((2..=kp).map(x));
        layout.extend((kp + 1..=kp + m).map(x));
        layout.extend((b0 + 1..b0 + z).map(x));
        builder.place_generators(&layout)?;
        for j in (1..kp).rev() {
            let row = 2 + j;
            builder.invert_row(row)?;
            builder.mul_left(row, if j == 1 { 2 } else { j + 1 })?;
        }
        for l in (1..z).rev() {
            let row = kp + 1 + m + l;
            builder.invert_row(row)?;
            builder.mul_left(row, if l == 1 { 1 } else { row - 1 })?;
        }
        builder.invert_row(1)?;
        builder.mul_left(1, 2)?;
    }

    let auto = builder.finish()?;
    if !verify_lemma_a(ind, ind_prime, &auto)? {
        return Err(HyperplaneError::VerificationFailed);
    }
    Ok(auto)
}

/// Soundness oracle: expresses both hyperplanes in the coordinates induced
/// by the mod-2 matrix of `change` and checks their indicators are exactly
/// (1,0,1,...,1) and (0,1,1,...,1).
pub fn verify_lemma_a(
    ind: &Indicator,
    ind_prime: &Indicator,
    change: &Automorphism,
) -> Result<bool, HyperplaneError> {
    let n = ind.n();
    if n != ind_prime.n() {
        return Err(HyperplaneError::LengthMismatch {
            left: n,
            right: ind_prime.n(),
        });
    }
    if change.rank() != n {
        return Err(HyperplaneError::LengthMismatch {
            left: n,
            right: change.rank(),
        });
    }
    if !change.is_certified() {
        return Err(HyperplaneError::Uncertified);
    }
    if n < 2 {
        return Ok(false);
    }
    let matrix = Gf2Matrix::from_int(&change.abelianization_matrix())?;
    let inverse = matrix.inverse()?;
    let (target_first, target_second) = lemma_a_targets(n);
    for (indicator, target) in [(ind, &target_first), (ind_prime, &target_second)] {
        let plane = hyperplane_basis(indicator);
        let transformed: Vec<u32> = plane.basis().iter().map(|&b| inverse.act_on_row(b)).collect();
        let in_new_coords = Hyperplane::new(n, transformed)?;
        if &indicator_of(&in_new_coords) != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hand-picked rank-5 basis change taking the indicator pair 11000 / 00011
/// to target form: y1 = x1, y2 = x2 x3^-1, y3 = x1 x2^-1, y4 = x1 x3^-1 x4,
/// y5 = x4 x5^-1.
pub fn reference_basis_change_rank5() -> Automorphism {
    let mut b = AutoBuilder::new(5).expect("rank 5");
    let build = |b: &mut AutoBuilder| -> Result<(), AutoError> {
        b.swap_rows(3, 4)?;
        b.mul_right_inv(2, 4)?;
        b.invert_row(5)?;
        b.mul_left(5, 3)?;
        b.invert_row(4)?;
        b.mul_right(4, 3)?;
        b.mul_left(4, 1)?;
        b.mul_right_inv(3, 4)?;
        b.invert_row(3)?;
        b.mul_right_inv(3, 2)?;
        Ok(())
    };
    build(&mut b).expect("indices are in range");
    b.finish().expect("certificate replays")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(s: &str) -> Indicator {
        s.parse().unwrap()
    }

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn indicator_rejects_all_ones_and_empty() {
        assert_eq!("111".parse::<Indicator>().unwrap_err(), HyperplaneError::AllOnes);
        assert_eq!("".parse::<Indicator>().unwrap_err(), HyperplaneError::Empty);
        assert_eq!(
            "1x0".parse::<Indicator>().unwrap_err(),
            HyperplaneError::BadCharacter('x')
        );
    }

    #[test]
    fn indicator_display_round_trip() {
        assert_eq!(ind("11000").to_string(), "11000");
    }

    #[test]
    fn hyperplane_basis_examples() {
        assert_eq!(hyperplane_basis(&ind("001")).basis(), &[0b011, 0b100]);
        assert_eq!(hyperplane_basis(&ind("101")).basis(), &[0b001, 0b100]);
        assert_eq!(hyperplane_basis(&ind("000")).basis(), &[0b011, 0b110]);
    }

    #[test]
    fn basis_vectors_satisfy_defining_equation() {
        for n in 1..=6 {
            for indicator in Indicator::all(n) {
                for &v in hyperplane_basis(&indicator).basis() {
                    assert!(indicator.defining_equation_holds(v));
                }
            }
        }
    }

    #[test]
    fn indicator_of_examples() {
        let p = Hyperplane::new(3, vec![0b011, 0b100]).unwrap();
        assert_eq!(indicator_of(&p), ind("001"));
        let q = Hyperplane::new(3, vec![0b001, 0b100]).unwrap();
        assert_eq!(indicator_of(&q), ind("101"));
    }

    #[test]
    fn hyperplane_rejects_rank_deficient_basis() {
        assert!(matches!(
            Hyperplane::new(3, vec![0b011, 0b011]),
            Err(HyperplaneError::Gf2(Gf2Error::RankDeficient { .. }))
        ));
    }

    #[test]
    fn roundtrip_all_indicators_up_to_n6() {
        for n in 1..=6 {
            let all = Indicator::all(n);
            assert_eq!(all.len(), (1 << n) - 1);
            for indicator in all {
                assert_eq!(indicator_of(&hyperplane_basis(&indicator)), indicator);
            }
        }
    }

    #[test]
    fn s_basis_examples() {
        assert_eq!(s_basis(&ind("001")), vec![w("x1*x2^-1", 3), w("x3", 3)]);
        assert_eq!(
            s_basis(&ind("11000")),
            vec![w("x3*x4^-1", 5), w("x4*x5^-1", 5), w("x1", 5), w("x2", 5)]
        );
    }

    #[test]
    fn s_basis_projects_into_hyperplane() {
        for n in 1..=6 {
            for indicator in Indicator::all(n) {
                let plane = hyperplane_basis(&indicator);
                let vectors: Vec<u32> =
                    s_basis(&indicator).iter().map(Word::abelianize_mod2).collect();
                for &v in &vectors {
                    assert!(plane.contains(v));
                }
                assert_eq!(Gf2Span::from_vectors(n, &vectors).rank(), n - 1);
            }
        }
    }

    #[test]
    fn complete_basis_examples() {
        let auto = complete_basis(&ind("001")).unwrap();
        assert_eq!(
            auto.images(),
            &[w("x1*x2^-1", 3), w("x3", 3), w("x1", 3)]
        );
        let auto = complete_basis(&ind("101")).unwrap();
        assert_eq!(auto.images(), &[w("x1", 3), w("x3", 3), w("x2", 3)]);
    }

    #[test]
    fn complete_basis_certified_for_all_indicators() {
        for n in 1..=6 {
            for indicator in Indicator::all(n) {
                let auto = complete_basis(&indicator).unwrap();
                assert!(auto.is_certified());
                assert_eq!(auto.abelianization_matrix().det().unwrap().abs(), 1);
            }
        }
    }

    #[test]
    fn complete_basis_with_rejects_one_position() {
        assert_eq!(
            complete_basis_with(&ind("101"), 1).unwrap_err(),
            HyperplaneError::NotAZeroPosition(1)
        );
    }

    #[test]
    fn complete_basis_with_any_zero_is_certified() {
        for n in 2..=5 {
            for indicator in Indicator::all(n) {
                for z in indicator.zeros() {
                    let auto = complete_basis_with(&indicator, z).unwrap();
                    assert_eq!(auto.image_of(n), &Word::generator(n, z).unwrap());
                    assert_eq!(&auto.images()[..n - 1], s_basis(&indicator).as_slice());
                }
            }
        }
    }

    #[test]
    fn lemma_a_identity_accepted_in_target_form() {
        let (first, second) = lemma_a_targets(4);
        let id = Automorphism::identity(4).unwrap();
        assert!(verify_lemma_a(&first, &second, &id).unwrap());
        // indicators are ordered: the swapped roles must fail
        assert!(!verify_lemma_a(&second, &first, &id).unwrap());
    }

    #[test]
    fn lemma_a_change_on_target_pair_is_identity() {
        let (first, second) = lemma_a_targets(5);
        let auto = lemma_a_change(&first, &second).unwrap();
        assert!(auto.is_identity());
    }

    #[test]
    fn lemma_a_change_exhaustive_small_ranks() {
        for n in 2..=4 {
            let all = Indicator::all(n);
            for a in &all {
                for b in &all {
                    if a == b {
                        continue;
                    }
                    let auto = lemma_a_change(a, b).unwrap();
                    assert!(
                        verify_lemma_a(a, b, &auto).unwrap(),
                        "lemma change failed for {a} / {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn lemma_a_change_example_pair() {
        let auto = lemma_a_change(&ind("11000"), &ind("00011")).unwrap();
        assert!(verify_lemma_a(&ind("11000"), &ind("00011"), &auto).unwrap());
    }

    #[test]
    fn reference_rank5_basis_passes_verbatim() {
        let auto = reference_basis_change_rank5();
        assert_eq!(
            auto.images(),
            &[
                w("x1", 5),
                w("x2*x3^-1", 5),
                w("x1*x2^-1", 5),
                w("x1*x3^-1*x4", 5),
                w("x4*x5^-1", 5),
            ]
        );
        assert!(verify_lemma_a(&ind("11000"), &ind("00011"), &auto).unwrap());
    }

    #[test]
    fn verify_rejects_uncertified() {
        let (first, second) = lemma_a_targets(3);
        let raw = Automorphism::from_images(
            3,
            vec![w("x1", 3), w("x2", 3), w("x3", 3)],
        )
        .unwrap();
        assert_eq!(
            verify_lemma_a(&first, &second, &raw).unwrap_err(),
            HyperplaneError::Uncertified
        );
    }

    #[test]
    fn lemma_a_change_rejects_equal_indicators() {
        assert_eq!(
            lemma_a_change(&ind("10"), &ind("10")).unwrap_err(),
            HyperplaneError::EqualIndicators
        );
    }
}
