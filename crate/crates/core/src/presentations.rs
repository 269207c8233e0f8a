//! Finite presentations: parsing, Smith-normal-form abelianization,
//! relation-pruned homomorphism enumeration into small groups, and
//! classification of surjections up to automorphisms of the target.

use std::fmt;

use thiserror::Error;

use crate::autos::{AutoError, Automorphism};
use crate::gf2::Gf2Matrix;
use crate::intmat::{smith_normal_form, IntMatrix, IntMatrixError};
use crate::slgroup::{pi, SlError};
use crate::smallgroups::{FiniteGroup, GroupTableError};

/// Default ceiling for `enumerate_homs`, in elementary steps.
pub const DEFAULT_HOM_WORK_LIMIT: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("presentation declares no generators")]
    NoGenerators,
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {name:?} at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("hom search needs ~{required} steps, over the ceiling {limit}")]
    WorkBoundExceeded { required: u128, limit: u128 },
    #[error(transparent)]
    Group(#[from] GroupTableError),
    #[error(transparent)]
    IntMat(#[from] IntMatrixError),
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Sl(#[from] SlError),
    #[error(transparent)]
    Gf2(#[from] crate::gf2::Gf2Error),
}

/// A relator as a list of (generator index, nonzero exponent) terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    terms: Vec<(usize, i64)>,
}

impl Relator {
    pub fn terms(&self) -> &[(usize, i64)] {
        &self.terms
    }

    fn max_generator(&self) -> usize {
        self.terms.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }
}

/// A finitely presented group: named generators and relators over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let cols = self.generators.len();
        let mut m = IntMatrix::zero(self.relators.len(), cols);
        for (r, relator) in self.relators.iter().enumerate() {
            for &(g, e) in &relator.terms {
                m[(r, g)] += e;
            }
        }
        m
    }

    /// Invariant factors of the abelianization, via Smith normal form:
    /// torsion orders (excluding 1) followed by a 0 per free rank.
    pub fn abelianization_invariants(&self) -> Result<Vec<i64>, PresentationError> {
        Ok(smith_normal_form(&self.exponent_matrix())?.invariant_factors())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} ; ", self.generators.join(","))?;
        for (r, relator) in self.relators.iter().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            for (t, &(g, e)) in relator.terms.iter().enumerate() {
                if t > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.generators[g])?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        write!(f, ">")
    }
}

/// Grammar: `<gens ; relator, relator, ...>` with relators as `*`-separated
/// terms `g` or `g^k` (k a nonzero integer). `<a ; >` has no relators.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Parser::new(text).parse()
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> PresentationError {
        PresentationError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == byte {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", byte as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphabetic())
        {
            self.pos += 1;
            while self
                .bytes
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                self.pos += 1;
            }
            Ok(self.text[start..self.pos].to_string())
        } else {
            Err(self.error("expected a generator name"))
        }
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected an integer exponent"))
    }

    fn relator(&mut self, generators: &[String]) -> Result<Relator, PresentationError> {
        let mut terms = Vec::new();
        loop {
            let at = self.pos;
            let name = self.ident()?;
            let Some(g) = generators.iter().position(|n| n == &name) else {
                return Err(PresentationError::UnknownGenerator { name, position: at });
            };
            let exponent = if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.integer()?;
                if e == 0 {
                    return Err(self.error("exponent must be nonzero"));
                }
                e
            } else {
                1
            };
            terms.push((g, exponent));
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(Relator { terms });
            }
        }
    }

    fn parse(mut self) -> Result<Presentation, PresentationError> {
        self.eat(b'<')?;
        let mut generators = vec![self.ident()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            generators.push(self.ident()?);
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        self.eat(b';')?;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            relators.push(self.relator(&generators)?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                relators.push(self.relator(&generators)?);
            }
        }
        self.eat(b'>')?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.error("trailing input after presentation"));
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }
}

/// The amalgam presentation <a,b ; a^4, a^2*b^-3> with abelianization Z_12.
pub fn sl2z_presentation() -> Presentation {
    parse_presentation("<a,b ; a^4, a^2*b^-3>").expect("fixed presentation parses")
}

/// A homomorphism given by one target element per generator, in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hom {
    pub images: Vec<usize>,
}

impl Hom {
    pub fn evaluate_relator(&self, target: &FiniteGroup, relator: &Relator) -> usize {
        relator.terms().iter().fold(target.identity(), |acc, &(g, e)| {
            target.mul(acc, target.pow(self.images[g], e))
        })
    }

    pub fn satisfies(&self, source: &Presentation, target: &FiniteGroup) -> bool {
        source
            .relators()
            .iter()
            .all(|r| self.evaluate_relator(target, r) == target.identity())
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        target.closure(&self.images).len() == target.order()
    }

    /// The subgroup of the target generated by the images.
    pub fn image(&self, target: &FiniteGroup) -> Vec<usize> {
        target.closure(&self.images)
    }
}

/// Backtracking enumeration of all homomorphisms, assigning generators in
/// declaration order and checking each relator as soon as all of its
/// generators are assigned. Refuses (never truncates) when the estimated
/// work `#gens * |G|^#gens` exceeds the ceiling.
pub fn enumerate_homs(
    source: &Presentation,
    target: &FiniteGroup,
    work_limit: u128,
) -> Result<Vec<Hom>, PresentationError> {
    let gens = source.generators().len();
    let order = target.order() as u128;
    let required = order
        .checked_pow(gens as u32)
        .and_then(|p| p.checked_mul(gens as u128))
        .unwrap_or(u128::MAX);
    if required > work_limit {
        return Err(PresentationError::WorkBoundExceeded {
            required,
            limit: work_limit,
        });
    }

    let mut by_last_gen: Vec<Vec<&Relator>> = vec![Vec::new(); gens];
    for relator in source.relators() {
        by_last_gen[relator.max_generator()].push(relator);
    }

    let mut images = Vec::with_capacity(gens);
    let mut found = Vec::new();
    search(target, &by_last_gen, &mut images, &mut found);
    debug_assert!(found.iter().all(|h: &Hom| h.satisfies(source, target)));
    Ok(found)
}

fn search(
    target: &FiniteGroup,
    by_last_gen: &[Vec<&Relator>],
    images: &mut Vec<usize>,
    found: &mut Vec<Hom>,
) {
    let depth = images.len();
    if depth == by_last_gen.len() {
        found.push(Hom {
            images: images.clone(),
        });
        return;
    }
    for img in 0..target.order() {
        images.push(img);
        let candidate = Hom {
            images: images.clone(),
        };
        let consistent = by_last_gen[depth]
            .iter()
            .all(|r| candidate.evaluate_relator(target, r) == target.identity());
        if consistent {
            search(target, by_last_gen, images, found);
        }
        images.pop();
    }
}

/// Groups the surjective homs under post-composition by the subgroup of
/// Aut(target) generated by inner automorphisms and the supplied outer
/// representatives. Classes are ordered by their lexicographically smallest
/// member, so the result does not depend on the input order.
pub fn classify_surjections(
    homs: &[Hom],
    target: &FiniteGroup,
    outer_reps: &[Vec<usize>],
) -> Result<Vec<Vec<Hom>>, PresentationError> {
    let automorphisms = target.automorphism_group(outer_reps)?;
    let mut classes: std::collections::BTreeMap<Vec<usize>, Vec<Hom>> = Default::default();
    for hom in homs {
        if !hom.is_surjective(target) {
            continue;
        }
        let key = automorphisms
            .iter()
            .map(|a| hom.images.iter().map(|&x| a[x]).collect::<Vec<usize>>())
            .min()
            .expect("automorphism group contains the identity");
        classes.entry(key).or_default().push(hom.clone());
    }
    Ok(classes
        .into_values()
        .map(|mut class| {
            class.sort();
            class.dedup();
            class
        })
        .collect())
}

/// Which transvection relation family a report entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFamily {
    /// [E_{ij}, E_{kl}] = 1 for distinct i, j, k, l.
    Disjoint,
    /// [E_{ij}, E_{jk}] = E_{ik} for distinct i, j, k.
    Overlapping,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationLevel {
    Automorphism,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    pub family: RelationFamily,
    pub level: RelationLevel,
    pub indices: Vec<usize>,
}

/// Exhaustive evaluation of both transvection relation families over index
/// tuples, at the automorphism level and at the matrix level under the
/// projection.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub rank: usize,
    pub disjoint_tuples: usize,
    pub overlapping_tuples: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn gersten_relation_report(rank: usize) -> Result<RelationReport, PresentationError> {
    if !(3..=4).contains(&rank) {
        return Err(PresentationError::Syntax {
            position: 0,
            message: format!("relation report supports ranks 3..=4, got {rank}"),
        });
    }
    let e = |i: usize, j: usize| Automorphism::right_transvection(rank, i, j);
    let mat = |a: &Automorphism| -> Result<Gf2Matrix, SlError> { pi(a) };
    let mut report = RelationReport {
        rank,
        disjoint_tuples: 0,
        overlapping_tuples: 0,
        violations: Vec::new(),
    };
    let identity_matrix = Gf2Matrix::identity(rank);

    for i in 1..=rank {
        for j in 1..=rank {
            for k in 1..=rank {
                for l in 1..=rank {
                    let distinct = [i, j, k, l]
                        .iter()
                        .collect::<std::collections::HashSet<_>>()
                        .len()
                        == 4;
                    if !distinct {
                        continue;
                    }
                    report.disjoint_tuples += 1;
                    let commutator = e(i, j)?.commutator(&e(k, l)?)?;
                    if !commutator.is_identity() {
                        report.violations.push(RelationViolation {
                            family: RelationFamily::Disjoint,
                            level: RelationLevel::Automorphism,
                            indices: vec![i, j, k, l],
                        });
                    }
                    let (a, b) = (mat(&e(i, j)?)?, mat(&e(k, l)?)?);
                    let matrix_comm = a
                        .mul(&b)?
                        .mul(&a.inverse()?)?
                        .mul(&b.inverse()?)?;
                    if matrix_comm != identity_matrix {
                        report.violations.push(RelationViolation {
                            family: RelationFamily::Disjoint,
                            level: RelationLevel::Matrix,
                            indices: vec![i, j, k, l],
                        });
                    }
                }
            }
        }
    }

    for i in 1..=rank {
        for j in 1..=rank {
            for k in 1..=rank {
                if i == j || j == k || i == k {
                    continue;
                }
                report.overlapping_tuples += 1;
                let commutator = e(i, j)?.commutator(&e(j, k)?)?;
                if commutator != e(i, k)? {
                    report.violations.push(RelationViolation {
                        family: RelationFamily::Overlapping,
                        level: RelationLevel::Automorphism,
                        indices: vec![i, j, k],
                    });
                }
                let (a, b) = (mat(&e(i, j)?)?, mat(&e(j, k)?)?);
                let matrix_comm = a.mul(&b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)?;
                if matrix_comm != mat(&e(i, k)?)? {
                    report.violations.push(RelationViolation {
                        family: RelationFamily::Overlapping,
                        level: RelationLevel::Matrix,
                        indices: vec![i, j, k],
                    });
                }
            }
        }
    }
    Ok(report)
}
