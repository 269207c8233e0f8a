//! Automorphisms of F_n as generator-image maps with invertibility
//! certificates.
//!
//! Composition is left to right: `compose(f, g)` applies `f` first. An
//! automorphism built from elementary moves carries those moves as a
//! certificate; replaying the certificate from the identity must reproduce
//! the stored images, and this is re-checked on every construction.
//! Operations that need invertibility (`inverse`, `commutator`) refuse
//! uncertified inputs rather than deciding invertibility of a raw
//! endomorphism.

use std::fmt;

use thiserror::Error;

use crate::intmat::{IntMatrix, IntMatrixError};
use crate::words::{Letter, Sign, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutoError {
    #[error("rank must be at least {required}, got {got}")]
    RankTooSmall { required: usize, got: usize },
    #[error("indices must differ, both were {0}")]
    EqualIndices(usize),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("operation requires a certified automorphism")]
    Uncertified,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Matrix(#[from] IntMatrixError),
}

/// An elementary Nielsen move. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementaryAuto {
    /// E_{x_i, x_j}: x_i -> x_i x_j, all other generators fixed.
    RightTransvection { i: usize, j: usize },
    /// E_{x_i^-1, x_j}: x_i -> x_j^-1 x_i, all other generators fixed.
    LeftTransvection { i: usize, j: usize },
    /// x_i -> x_i^-1.
    Inversion { i: usize },
    /// x_i <-> x_j.
    Swap { i: usize, j: usize },
}

impl ElementaryAuto {
    fn validate(&self, rank: usize) -> Result<(), AutoError> {
        let check = |index: usize| {
            if index == 0 || index > rank {
                Err(AutoError::IndexOutOfRange { index, rank })
            } else {
                Ok(())
            }
        };
        match *self {
            ElementaryAuto::RightTransvection { i, j }
            | ElementaryAuto::LeftTransvection { i, j }
            | ElementaryAuto::Swap { i, j } => {
                check(i)?;
                check(j)?;
                if i == j {
                    return Err(AutoError::EqualIndices(i));
                }
                Ok(())
            }
            ElementaryAuto::Inversion { i } => check(i),
        }
    }

    /// Substitutes this move into a word (the move applied after the word's
    /// letters are interpreted as images).
    fn substitute(&self, word: &Word) -> Word {
        let rank = word.rank();
        let mut letters: Vec<Letter> = Vec::with_capacity(word.len() * 2);
        for &letter in word.letters() {
            match *self {
                ElementaryAuto::RightTransvection { i, j } if letter.index == i => {
                    match letter.sign {
                        Sign::Plus => {
                            letters.push(Letter::positive(i));
                            letters.push(Letter::positive(j));
                        }
                        Sign::Minus => {
                            letters.push(Letter::negative(j));
                            letters.push(Letter::negative(i));
                        }
                    }
                }
                ElementaryAuto::LeftTransvection { i, j } if letter.index == i => {
                    match letter.sign {
                        Sign::Plus => {
                            letters.push(Letter::negative(j));
                            letters.push(Letter::positive(i));
                        }
                        Sign::Minus => {
                            letters.push(Letter::negative(i));
                            letters.push(Letter::positive(j));
                        }
                    }
                }
                ElementaryAuto::Inversion { i } if letter.index == i => {
                    letters.push(letter.inverse());
                }
                ElementaryAuto::Swap { i, j } if letter.index == i => {
                    letters.push(Letter::new(j, letter.sign));
                }
                ElementaryAuto::Swap { i, j } if letter.index == j => {
                    letters.push(Letter::new(i, letter.sign));
                }
                _ => letters.push(letter),
            }
        }
        Word::reduce(rank, letters).expect("substitution preserves rank bounds")
    }

    /// The inverse expressed in elementary moves (possibly a 3-move
    /// composite: E_{x_i,x_j}^-1 = Inv(j) E_{x_i,x_j} Inv(j)).
    fn inverse_moves(&self) -> Vec<ElementaryAuto> {
        match *self {
            ElementaryAuto::RightTransvection { i, j } => vec![
                ElementaryAuto::Inversion { i: j },
                ElementaryAuto::RightTransvection { i, j },
                ElementaryAuto::Inversion { i: j },
            ],
            ElementaryAuto::LeftTransvection { i, j } => vec![
                ElementaryAuto::Inversion { i: j },
                ElementaryAuto::LeftTransvection { i, j },
                ElementaryAuto::Inversion { i: j },
            ],
            ElementaryAuto::Inversion { i } => vec![ElementaryAuto::Inversion { i }],
            ElementaryAuto::Swap { i, j } => vec![ElementaryAuto::Swap { i, j }],
        }
    }
}

impl fmt::Display for ElementaryAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementaryAuto::RightTransvection { i, j } => write!(f, "R({i},{j})"),
            ElementaryAuto::LeftTransvection { i, j } => write!(f, "L({i},{j})"),
            ElementaryAuto::Inversion { i } => write!(f, "Inv({i})"),
            ElementaryAuto::Swap { i, j } => write!(f, "Swap({i},{j})"),
        }
    }
}

/// Which transvection form to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransvectionSide {
    /// x_i -> x_i x_j
    Right,
    /// x_i -> x_j^-1 x_i
    Left,
}

/// An endomorphism of F_rank given by generator images, optionally certified
/// invertible by a sequence of elementary moves.
#[derive(Debug, Clone)]
pub struct Automorphism {
    rank: usize,
    images: Vec<Word>,
    certificate: Option<Vec<ElementaryAuto>>,
}

/// Equality compares generator images only; certificates are witnesses, not
/// identity.
impl PartialEq for Automorphism {
    fn eq(&self, other: &Automorphism) -> bool {
        self.rank == other.rank && self.images == other.images
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    pub fn identity(rank: usize) -> Result<Automorphism, AutoError> {
        Automorphism::from_moves(rank, Vec::new())
    }

    /// Replays elementary moves left to right from the identity. The moves
    /// become the certificate.
    pub fn from_moves(rank: usize, moves: Vec<ElementaryAuto>) -> Result<Automorphism, AutoError> {
        if rank == 0 {
            return Err(AutoError::RankTooSmall { required: 1, got: 0 });
        }
        for m in &moves {
            m.validate(rank)?;
        }
        let images = replay(rank, &moves)?;
        Ok(Automorphism {
            rank,
            images,
            certificate: Some(moves),
        })
    }

    /// An uncertified endomorphism. Representable, but `inverse` and
    /// `commutator` will refuse it.
    pub fn from_images(rank: usize, images: Vec<Word>) -> Result<Automorphism, AutoError> {
        if images.len() != rank {
            return Err(AutoError::RankMismatch {
                left: rank,
                right: images.len(),
            });
        }
        for w in &images {
            if w.rank() != rank {
                return Err(AutoError::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
        }
        Ok(Automorphism {
            rank,
            images,
            certificate: None,
        })
    }

    pub fn transvection(
        side: TransvectionSide,
        i: usize,
        j: usize,
        rank: usize,
    ) -> Result<Automorphism, AutoError> {
        let m = match side {
            TransvectionSide::Right => ElementaryAuto::RightTransvection { i, j },
            TransvectionSide::Left => ElementaryAuto::LeftTransvection { i, j },
        };
        Automorphism::from_moves(rank, vec![m])
    }

    pub fn right_transvection(rank: usize, i: usize, j: usize) -> Result<Automorphism, AutoError> {
        Automorphism::transvection(TransvectionSide::Right, i, j, rank)
    }

    pub fn left_transvection(rank: usize, i: usize, j: usize) -> Result<Automorphism, AutoError> {
        Automorphism::transvection(TransvectionSide::Left, i, j, rank)
    }

    pub fn inversion(rank: usize, i: usize) -> Result<Automorphism, AutoError> {
        Automorphism::from_moves(rank, vec![ElementaryAuto::Inversion { i }])
    }

    pub fn swap(rank: usize, i: usize, j: usize) -> Result<Automorphism, AutoError> {
        Automorphism::from_moves(rank, vec![ElementaryAuto::Swap { i, j }])
    }

    /// E_{x_1,x_2} E_{x_1^-1,x_2}: maps x_1 -> x_2^-1 x_1 x_2, fixes the
    /// rest, and normally generates the kernel of the abelianization map.
    pub fn magnus_generator(rank: usize) -> Result<Automorphism, AutoError> {
        if rank < 2 {
            return Err(AutoError::RankTooSmall { required: 2, got: rank });
        }
        Automorphism::from_moves(
            rank,
            vec![
                ElementaryAuto::RightTransvection { i: 1, j: 2 },
                ElementaryAuto::LeftTransvection { i: 1, j: 2 },
            ],
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, generator: usize) -> &Word {
        &self.images[generator - 1]
    }

    pub fn certificate(&self) -> Option<&[ElementaryAuto]> {
        self.certificate.as_deref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.letters() == [Letter::positive(k + 1)])
    }

    /// Substitution realizing the action on words: each letter is replaced
    /// by the image (or inverse image) of its generator.
    pub fn apply(&self, word: &Word) -> Result<Word, AutoError> {
        if word.rank() != self.rank {
            return Err(AutoError::RankMismatch {
                left: self.rank,
                right: word.rank(),
            });
        }
        let mut letters = Vec::new();
        for &letter in word.letters() {
            let image = &self.images[letter.index - 1];
            match letter.sign {
                Sign::Plus => letters.extend_from_slice(image.letters()),
                Sign::Minus => letters.extend(image.letters().iter().rev().map(|l| l.inverse())),
            }
        }
        Ok(Word::reduce(self.rank, letters)?)
    }

    /// Left-to-right composition: the result applies `self` first, then
    /// `other`. Certificates concatenate when both are present.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, AutoError> {
        if self.rank != other.rank {
            return Err(AutoError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let images = self
            .images
            .iter()
            .map(|w| other.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        let certificate = match (&self.certificate, &other.certificate) {
            (Some(a), Some(b)) => {
                let mut moves = a.clone();
                moves.extend_from_slice(b);
                verify_certificate(self.rank, &moves, &images)?;
                Some(moves)
            }
            _ => None,
        };
        Ok(Automorphism {
            rank: self.rank,
            images,
            certificate,
        })
    }

    /// Inverse of a certified automorphism: the certificate is reversed and
    /// each elementary move replaced by its inverse moves.
    pub fn inverse(&self) -> Result<Automorphism, AutoError> {
        let cert = self.certificate.as_ref().ok_or(AutoError::Uncertified)?;
        let moves: Vec<ElementaryAuto> = cert
            .iter()
            .rev()
            .flat_map(|m| m.inverse_moves())
            .collect();
        Automorphism::from_moves(self.rank, moves)
    }

    /// [a, b] = a b a^-1 b^-1 under left-to-right application.
    pub fn commutator(&self, other: &Automorphism) -> Result<Automorphism, AutoError> {
        self.compose(other)?
            .compose(&self.inverse()?)?
            .compose(&other.inverse()?)
    }

    /// by^-1 * self * by.
    pub fn conjugated_by(&self, by: &Automorphism) -> Result<Automorphism, AutoError> {
        by.inverse()?.compose(self)?.compose(by)
    }

    /// Row k is the exponent-sum vector of the image of x_{k+1}, so that
    /// the matrix of a composition is the product of the matrices in the
    /// same order.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.images.iter().map(|w| w.abelianize()).collect())
            .expect("images all have length rank")
    }

    /// True iff the induced integer matrix has determinant +1.
    pub fn is_special(&self) -> Result<bool, AutoError> {
        Ok(self.abelianization_matrix().det()? == 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "images": self.images.iter().map(Word::render).collect::<Vec<_>>(),
            "certificate": self
                .certificate
                .as_ref()
                .map(|moves| moves.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", k + 1, if w.is_identity() { "1".into() } else { w.render() })?;
        }
        write!(f, "]")
    }
}

fn replay(rank: usize, moves: &[ElementaryAuto]) -> Result<Vec<Word>, AutoError> {
    let mut images: Vec<Word> = (1..=rank)
        .map(|k| Word::generator(rank, k))
        .collect::<Result<_, _>>()?;
    for m in moves {
        for w in &mut images {
            *w = m.substitute(w);
        }
    }
    Ok(images)
}

fn verify_certificate(
    rank: usize,
    moves: &[ElementaryAuto],
    images: &[Word],
) -> Result<(), AutoError> {
    let replayed = replay(rank, moves)?;
    assert_eq!(
        replayed, images,
        "certificate replay does not reproduce images"
    );
    Ok(())
}

/// Builds a certified automorphism by row operations on the image list,
/// starting from the identity. Each operation prepends elementary moves, so
/// `w_a <- w_a * w_b` style edits act on whole current rows.
#[derive(Debug, Clone)]
pub struct AutoBuilder {
    rank: usize,
    rows: Vec<Word>,
    prepended: Vec<ElementaryAuto>,
}

impl AutoBuilder {
    pub fn new(rank: usize) -> Result<AutoBuilder, AutoError> {
        if rank == 0 {
            return Err(AutoError::RankTooSmall { required: 1, got: 0 });
        }
        Ok(AutoBuilder {
            rank,
            rows: (1..=rank)
                .map(|k| Word::generator(rank, k))
                .collect::<Result<_, _>>()?,
            prepended: Vec::new(),
        })
    }

    pub fn row(&self, a: usize) -> &Word {
        &self.rows[a - 1]
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    fn prepend(&mut self, m: ElementaryAuto) -> Result<(), AutoError> {
        m.validate(self.rank)?;
        match m {
            ElementaryAuto::RightTransvection { i, j } => {
                self.rows[i - 1] = self.rows[i - 1].concat(&self.rows[j - 1])?;
            }
            ElementaryAuto::LeftTransvection { i, j } => {
                self.rows[i - 1] = self.rows[j - 1].inverse().concat(&self.rows[i - 1])?;
            }
            ElementaryAuto::Inversion { i } => {
                self.rows[i - 1] = self.rows[i - 1].inverse();
            }
            ElementaryAuto::Swap { i, j } => {
                self.rows.swap(i - 1, j - 1);
            }
        }
        self.prepended.push(m);
        Ok(())
    }

    /// w_a <- w_a * w_b
    pub fn mul_right(&mut self, a: usize, b: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::RightTransvection { i: a, j: b })?;
        Ok(self)
    }

    /// w_a <- w_a * w_b^-1
    pub fn mul_right_inv(&mut self, a: usize, b: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::Inversion { i: b })?;
        self.prepend(ElementaryAuto::RightTransvection { i: a, j: b })?;
        self.prepend(ElementaryAuto::Inversion { i: b })?;
        Ok(self)
    }

    /// w_a <- w_b * w_a
    pub fn mul_left(&mut self, a: usize, b: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::Inversion { i: b })?;
        self.prepend(ElementaryAuto::LeftTransvection { i: a, j: b })?;
        self.prepend(ElementaryAuto::Inversion { i: b })?;
        Ok(self)
    }

    /// w_a <- w_b^-1 * w_a
    pub fn mul_left_inv(&mut self, a: usize, b: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::LeftTransvection { i: a, j: b })?;
        Ok(self)
    }

    /// w_a <- w_a^-1
    pub fn invert_row(&mut self, a: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::Inversion { i: a })?;
        Ok(self)
    }

    /// w_a <-> w_b
    pub fn swap_rows(&mut self, a: usize, b: usize) -> Result<&mut Self, AutoError> {
        self.prepend(ElementaryAuto::Swap { i: a, j: b })?;
        Ok(self)
    }

    /// Emits swaps so that afterwards row t holds x_{target[t-1]}. Only
    /// valid before any non-swap edits (rows must still be single
    /// generators).
    pub fn place_generators(&mut self, target: &[usize]) -> Result<&mut Self, AutoError> {
        assert_eq!(target.len(), self.rank, "target must assign every row");
        for t in 1..=self.rank {
            let want = Word::generator(self.rank, target[t - 1])?;
            if *self.row(t) == want {
                continue;
            }
            let s = (t + 1..=self.rank)
                .find(|&s| *self.row(s) == want)
                .expect("target must be a permutation of pristine rows");
            self.swap_rows(t, s)?;
        }
        Ok(self)
    }

    /// Finishes the build. The certificate is the prepended moves in
    /// reverse, and its replay is checked against the built rows.
    pub fn finish(self) -> Result<Automorphism, AutoError> {
        let moves: Vec<ElementaryAuto> = self.prepended.into_iter().rev().collect();
        let auto = Automorphism::from_moves(self.rank, moves)?;
        assert_eq!(
            auto.images(),
            self.rows.as_slice(),
            "builder rows disagree with certificate replay"
        );
        Ok(auto)
    }
}
