//! Freely reduced words in the free group F_n.
//!
//! A [`Word`] is stored in reduced form: construction is the single point
//! where cancellation happens, so equality of words is plain sequence
//! equality. Generator indices are 1-based, matching the external grammar
//! `x1`, `x2^-1`, ...

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("letter index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// Sign of a generator occurrence: `x_i` or `x_i^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One signed generator occurrence. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Letter {
        Letter { index, sign }
    }

    pub fn positive(index: usize) -> Letter {
        Letter::new(index, Sign::Plus)
    }

    pub fn negative(index: usize) -> Letter {
        Letter::new(index, Sign::Minus)
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.index, self.sign.flip())
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A freely reduced word in F_rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word (group identity) of the given rank.
    pub fn identity(rank: usize) -> Result<Word, WordError> {
        if rank == 0 {
            return Err(WordError::InvalidRank);
        }
        Ok(Word {
            rank,
            letters: Vec::new(),
        })
    }

    /// The single-letter word `x_index`.
    pub fn generator(rank: usize, index: usize) -> Result<Word, WordError> {
        Word::reduce(rank, [Letter::positive(index)])
    }

    /// Freely reduces a letter sequence. Idempotent; the only reduction point.
    pub fn reduce<I>(rank: usize, letters: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        if rank == 0 {
            return Err(WordError::InvalidRank);
        }
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            if letter.index == 0 || letter.index > rank {
                return Err(WordError::IndexOutOfRange {
                    index: letter.index,
                    rank,
                });
            }
            if stack.last().is_some_and(|top| top.cancels(letter)) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Ok(Word {
            rank,
            letters: stack,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Word::reduce(
            self.rank,
            self.letters.iter().chain(other.letters.iter()).copied(),
        )
    }

    /// Group inverse: reverse the letters and flip every sign.
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Signed exponent sums, entry k-1 for generator x_k.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for letter in &self.letters {
            sums[letter.index - 1] += letter.sign.exponent();
        }
        sums
    }

    /// Exponent sums reduced mod 2, packed as a bitmask (bit k-1 for x_k).
    pub fn abelianize_mod2(&self) -> u32 {
        let mut mask = 0u32;
        for letter in &self.letters {
            mask ^= 1 << (letter.index - 1);
        }
        mask
    }

    /// Parses the grammar: terms `x<k>` or `x<k>^-1` separated by `*`.
    /// The empty (or all-whitespace) string is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Word, WordError> {
        let letters = parse_letters(text)?;
        Word::reduce(rank, letters)
    }

    /// Renders in the same grammar `parse` accepts. Identity renders as "".
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match letter.sign {
                Sign::Plus => write!(f, "x{}", letter.index)?,
                Sign::Minus => write!(f, "x{}^-1", letter.index)?,
            }
        }
        Ok(())
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Ok(letters);
    }
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() || bytes[pos] != b'x' {
            return Err(WordError::Syntax {
                position: pos,
                message: "expected generator term `x<k>`".into(),
            });
        }
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits_start {
            return Err(WordError::Syntax {
                position: pos,
                message: "expected generator number after `x`".into(),
            });
        }
        let index: usize = text[digits_start..pos].parse().map_err(|_| WordError::Syntax {
            position: digits_start,
            message: "generator number too large".into(),
        })?;
        if index == 0 {
            return Err(WordError::Syntax {
                position: digits_start,
                message: "generator numbers start at 1".into(),
            });
        }
        let sign = if bytes[pos..].starts_with(b"^-1") {
            pos += 3;
            Sign::Minus
        } else if pos < bytes.len() && bytes[pos] == b'^' {
            return Err(WordError::Syntax {
                position: pos,
                message: "only the exponent `^-1` is allowed".into(),
            });
        } else {
            Sign::Plus
        };
        letters.push(Letter::new(index, sign));
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(letters);
        }
        if bytes[pos] != b'*' {
            return Err(WordError::Syntax {
                position: pos,
                message: "expected `*` between terms".into(),
            });
        }
        pos += 1;
    }
}
