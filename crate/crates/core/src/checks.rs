//! Named verification campaigns over the other modules, each emitting a
//! machine-readable report.
//!
//! Reports are deterministic: parameters and counts live in ordered maps,
//! and `elapsed_ms` stays 0 unless timings are explicitly requested, so a
//! rerun with identical parameters is byte-identical.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::autos::Automorphism;
use crate::gf2::Gf2Matrix;
use crate::hyperplanes::{
    self, hyperplane_basis, indicator_of, lemma_a_change, s_basis, verify_lemma_a, Indicator,
};
use crate::intmat::IntMatrix;
use crate::presentations::{
    classify_surjections, enumerate_homs, gersten_relation_report, sl2z_presentation,
    DEFAULT_HOM_WORK_LIMIT,
};
use crate::slgroup::{
    b_images, c_subgroup_image, conjugate_subgroup, hyperplane_stabilizer, normalizer,
    orbit_of_subgroup, pi, sl_order, standard_c_subgroup, subgroup_closure, GroupTable,
};
use crate::smallgroups::small_groups_catalog;
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Refused,
}

/// One check's machine-readable result. Serializes as a single JSON object
/// with a fixed field order.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: CheckStatus,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub elapsed_ms: u64,
    pub paper_ref: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn refused(&self) -> bool {
        self.status == CheckStatus::Refused
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Tunable inputs shared by all checks; `n` is interpreted per check (the
/// largest rank or dimension to cover).
#[derive(Debug, Clone)]
pub struct CheckParams {
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub allow_n5: bool,
    pub timings: bool,
    pub hom_work_limit: u128,
}

impl Default for CheckParams {
    fn default() -> CheckParams {
        CheckParams {
            n: None,
            seed: 0,
            samples: 20,
            allow_n5: false,
            timings: false,
            hom_work_limit: DEFAULT_HOM_WORK_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn parse(text: &str) -> Option<Profile> {
        match text {
            "quick" => Some(Profile::Quick),
            "full" => Some(Profile::Full),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckId {
    GerstenRelations,
    Torelli,
    HyperplaneBijection,
    SBasisProjection,
    LemmaA,
    SlOrder,
    CountingIdentity,
    ImageBSize,
    CSubgroups,
    BaseCase,
    Abelianization,
    ConjugationStability,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::GerstenRelations,
        CheckId::Torelli,
        CheckId::HyperplaneBijection,
        CheckId::SBasisProjection,
        CheckId::LemmaA,
        CheckId::SlOrder,
        CheckId::CountingIdentity,
        CheckId::ImageBSize,
        CheckId::CSubgroups,
        CheckId::BaseCase,
        CheckId::Abelianization,
        CheckId::ConjugationStability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::GerstenRelations => "gersten-relations",
            CheckId::Torelli => "torelli",
            CheckId::HyperplaneBijection => "hyperplane-bijection",
            CheckId::SBasisProjection => "s-basis-projection",
            CheckId::LemmaA => "lemma-a",
            CheckId::SlOrder => "sl-order",
            CheckId::CountingIdentity => "counting-identity",
            CheckId::ImageBSize => "image-b-size",
            CheckId::CSubgroups => "c-subgroups",
            CheckId::BaseCase => "base-case",
            CheckId::Abelianization => "abelianization",
            CheckId::ConjugationStability => "conjugation-stability",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.name() == name)
    }

    /// The single mathematical statement the check exercises.
    pub fn paper_ref(self) -> &'static str {
        match self {
            CheckId::GerstenRelations => {
                "transvection commutator identities: disjoint pairs commute and [E_ij, E_jk] = E_ik"
            }
            CheckId::Torelli => {
                "the Magnus element E_{x1,x2} E_{x1^-1,x2} abelianizes to the identity matrix"
            }
            CheckId::HyperplaneBijection => {
                "indicator vectors (except all-ones) biject with hyperplanes of Z_2^n"
            }
            CheckId::SBasisProjection => {
                "the free basis of S_I projects mod 2 onto a basis of the hyperplane P_I"
            }
            CheckId::LemmaA => {
                "a certified basis change carries any two distinct indicators to (1,0,1,...,1) and (0,1,1,...,1)"
            }
            CheckId::SlOrder => "|SL(n,2)| = prod_{k<n} (2^n - 2^k), by exhaustive enumeration",
            CheckId::CountingIdentity => {
                "(2^{n+1}-1) * 2^n * |SL(n,2)| = |SL(n+1,2)|, the orbit-stabilizer product"
            }
            CheckId::ImageBSize => {
                "the 2^n transvection products R_1^{p1}...R_n^{pn} project to distinct matrices forming (Z_2)^n"
            }
            CheckId::CSubgroups => {
                "the subgroups C_I are distinct, pairwise conjugate, self-normalizing hyperplane stabilizers"
            }
            CheckId::BaseCase => {
                "homomorphic images of SL(2,Z) in groups of order <= 6 are cyclic except S_3, with one surjection class"
            }
            CheckId::Abelianization => {
                "the presentation <a,b ; a^4, a^2*b^-3> has abelianization Z_12"
            }
            CheckId::ConjugationStability => {
                "automorphisms fixing the last generator normalize the projected image of B"
            }
        }
    }

    fn default_n(self, profile: Profile) -> Option<usize> {
        let quick = profile == Profile::Quick;
        match self {
            CheckId::GerstenRelations => Some(if quick { 3 } else { 4 }),
            CheckId::Torelli => Some(6),
            CheckId::HyperplaneBijection | CheckId::SBasisProjection => Some(6),
            CheckId::LemmaA => Some(if quick { 4 } else { 5 }),
            CheckId::SlOrder => Some(if quick { 3 } else { 4 }),
            CheckId::CountingIdentity => Some(if quick { 2 } else { 3 }),
            CheckId::ImageBSize => Some(if quick { 2 } else { 3 }),
            CheckId::CSubgroups => Some(if quick { 3 } else { 4 }),
            CheckId::BaseCase | CheckId::Abelianization => None,
            CheckId::ConjugationStability => Some(if quick { 2 } else { 3 }),
        }
    }
}

enum Outcome {
    Pass(BTreeMap<String, u64>),
    Fail(BTreeMap<String, u64>, serde_json::Value),
    Refused(String),
}

fn pass(counts: BTreeMap<String, u64>) -> Outcome {
    Outcome::Pass(counts)
}

fn fail(counts: BTreeMap<String, u64>, witness: serde_json::Value) -> Outcome {
    Outcome::Fail(counts, witness)
}

fn refuse(reason: impl Into<String>) -> Outcome {
    Outcome::Refused(reason.into())
}

/// Runs one registered check and assembles its report.
pub fn run_check(id: CheckId, params: &CheckParams) -> CheckReport {
    let start = Instant::now();
    let mut recorded: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    let outcome = dispatch(id, params, &mut recorded);
    let elapsed_ms = if params.timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let (status, counts, witness) = match outcome {
        Outcome::Pass(counts) => (CheckStatus::Pass, counts, None),
        Outcome::Fail(counts, witness) => (CheckStatus::Fail, counts, Some(witness)),
        Outcome::Refused(reason) => (
            CheckStatus::Refused,
            BTreeMap::new(),
            Some(serde_json::json!({ "reason": reason })),
        ),
    };
    CheckReport {
        check: id.name().to_string(),
        params: recorded,
        status,
        counts,
        witness,
        elapsed_ms,
        paper_ref: id.paper_ref().to_string(),
    }
}

/// Runs the complete registered suite in registration order.
pub fn run_all(profile: Profile, base: &CheckParams) -> Vec<CheckReport> {
    CheckId::ALL
        .into_iter()
        .map(|id| {
            let mut params = base.clone();
            params.n = id.default_n(profile);
            run_check(id, &params)
        })
        .collect()
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

fn dispatch(
    id: CheckId,
    params: &CheckParams,
    recorded: &mut BTreeMap<String, serde_json::Value>,
) -> Outcome {
    match id {
        CheckId::GerstenRelations => {
            let n = params.n.unwrap_or(3);
            recorded.insert("n".into(), n.into());
            check_gersten(n)
        }
        CheckId::Torelli => {
            let n = params.n.unwrap_or(6);
            recorded.insert("n".into(), n.into());
            check_torelli(n)
        }
        CheckId::HyperplaneBijection => {
            let n = params.n.unwrap_or(6);
            recorded.insert("n".into(), n.into());
            check_hyperplane_bijection(n)
        }
        CheckId::SBasisProjection => {
            let n = params.n.unwrap_or(6);
            recorded.insert("n".into(), n.into());
            check_s_basis_projection(n)
        }
        CheckId::LemmaA => {
            let n = params.n.unwrap_or(5);
            recorded.insert("n".into(), n.into());
            check_lemma_a(n)
        }
        CheckId::SlOrder => {
            let n = params.n.unwrap_or(4);
            recorded.insert("n".into(), n.into());
            if n == 5 {
                recorded.insert("allow_n5".into(), params.allow_n5.into());
            }
            check_sl_order(n, params.allow_n5)
        }
        CheckId::CountingIdentity => {
            let n = params.n.unwrap_or(3);
            recorded.insert("n".into(), n.into());
            check_counting_identity(n)
        }
        CheckId::ImageBSize => {
            let n = params.n.unwrap_or(3);
            recorded.insert("n".into(), n.into());
            check_image_b_size(n)
        }
        CheckId::CSubgroups => {
            let n_plus_1 = params.n.unwrap_or(4);
            recorded.insert("n_plus_1".into(), n_plus_1.into());
            check_c_subgroups(n_plus_1)
        }
        CheckId::BaseCase => {
            recorded.insert("max_order".into(), 6.into());
            check_base_case(params.hom_work_limit)
        }
        CheckId::Abelianization => check_abelianization(),
        CheckId::ConjugationStability => {
            let n = params.n.unwrap_or(3);
            recorded.insert("n".into(), n.into());
            recorded.insert("samples".into(), params.samples.into());
            recorded.insert("seed".into(), params.seed.into());
            check_conjugation_stability(n, params.samples, params.seed)
        }
    }
}

fn check_gersten(n: usize) -> Outcome {
    if !(3..=4).contains(&n) {
        return refuse(format!("supported ranks are 3..=4, got {n}"));
    }
    let mut counts = BTreeMap::new();
    let mut disjoint = 0u64;
    let mut overlapping = 0u64;
    for rank in 3..=n {
        match gersten_relation_report(rank) {
            Ok(report) => {
                disjoint += report.disjoint_tuples as u64;
                overlapping += report.overlapping_tuples as u64;
                if !report.passed() {
                    let witness: Vec<String> = report
                        .violations
                        .iter()
                        .map(|v| format!("{:?} {:?} at {:?}", v.family, v.level, v.indices))
                        .collect();
                    counts.insert("violations".into(), report.violations.len() as u64);
                    return fail(counts, serde_json::json!({ "rank": rank, "violations": witness }));
                }
            }
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        }
    }
    counts.insert("disjoint_tuples".into(), disjoint);
    counts.insert("overlapping_tuples".into(), overlapping);
    pass(counts)
}

fn check_torelli(n: usize) -> Outcome {
    if !(2..=6).contains(&n) {
        return refuse(format!("supported ranks are 2..=6, got {n}"));
    }
    let mut counts = BTreeMap::new();
    for rank in 2..=n {
        let magnus = match Automorphism::magnus_generator(rank) {
            Ok(m) => m,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        if magnus.abelianization_matrix() != IntMatrix::identity(rank) {
            return fail(
                counts,
                serde_json::json!({
                    "rank": rank,
                    "matrix": magnus.abelianization_matrix().to_string(),
                }),
            );
        }
    }
    counts.insert("ranks_checked".into(), (n - 1) as u64);
    pass(counts)
}

fn check_hyperplane_bijection(n: usize) -> Outcome {
    if !(1..=6).contains(&n) {
        return refuse(format!("supported ranks are 1..=6, got {n}"));
    }
    let mut total = 0u64;
    for rank in 1..=n {
        for indicator in Indicator::all(rank) {
            total += 1;
            let recovered = indicator_of(&hyperplane_basis(&indicator));
            if recovered != indicator {
                let mut counts = BTreeMap::new();
                counts.insert("indicators_checked".into(), total);
                return fail(
                    counts,
                    serde_json::json!({
                        "indicator": indicator.to_string(),
                        "recovered": recovered.to_string(),
                    }),
                );
            }
        }
    }
    let mut counts = BTreeMap::new();
    counts.insert("indicators_checked".into(), total);
    pass(counts)
}

fn check_s_basis_projection(n: usize) -> Outcome {
    if !(1..=6).contains(&n) {
        return refuse(format!("supported ranks are 1..=6, got {n}"));
    }
    let mut indicators = 0u64;
    let mut words = 0u64;
    for rank in 1..=n {
        for indicator in Indicator::all(rank) {
            indicators += 1;
            let plane = hyperplane_basis(&indicator);
            let vectors: Vec<u32> = s_basis(&indicator)
                .iter()
                .map(Word::abelianize_mod2)
                .collect();
            words += vectors.len() as u64;
            let all_inside = vectors.iter().all(|&v| plane.contains(v));
            let full_rank =
                crate::gf2::Gf2Span::from_vectors(rank, &vectors).rank() == rank - 1;
            if !all_inside || !full_rank {
                let mut counts = BTreeMap::new();
                counts.insert("indicators_checked".into(), indicators);
                return fail(
                    counts,
                    serde_json::json!({ "indicator": indicator.to_string() }),
                );
            }
        }
    }
    let mut counts = BTreeMap::new();
    counts.insert("indicators_checked".into(), indicators);
    counts.insert("basis_words_checked".into(), words);
    pass(counts)
}

fn check_lemma_a(n: usize) -> Outcome {
    if !(2..=5).contains(&n) {
        return refuse(format!("supported ranks are 2..=5, got {n}"));
    }
    let mut pairs = 0u64;
    let mut counts = BTreeMap::new();
    for rank in 2..=n {
        let all = Indicator::all(rank);
        for a in &all {
            for b in &all {
                if a == b {
                    continue;
                }
                pairs += 1;
                let verdict = lemma_a_change(a, b)
                    .and_then(|change| verify_lemma_a(a, b, &change));
                match verdict {
                    Ok(true) => {}
                    Ok(false) => {
                        counts.insert("pairs_checked".into(), pairs);
                        return fail(
                            counts,
                            serde_json::json!({
                                "indicator": a.to_string(),
                                "indicator_prime": b.to_string(),
                            }),
                        );
                    }
                    Err(e) => {
                        counts.insert("pairs_checked".into(), pairs);
                        return fail(
                            counts,
                            serde_json::json!({
                                "indicator": a.to_string(),
                                "indicator_prime": b.to_string(),
                                "error": e.to_string(),
                            }),
                        );
                    }
                }
            }
        }
    }
    counts.insert("pairs_checked".into(), pairs);
    if n >= 5 {
        let reference = hyperplanes::reference_basis_change_rank5();
        let i: Indicator = "11000".parse().expect("valid indicator");
        let i_prime: Indicator = "00011".parse().expect("valid indicator");
        match verify_lemma_a(&i, &i_prime, &reference) {
            Ok(true) => {
                counts.insert("reference_basis_checked".into(), 1);
            }
            verdict => {
                return fail(
                    counts,
                    serde_json::json!({ "reference_basis": format!("{verdict:?}") }),
                );
            }
        }
    }
    pass(counts)
}

fn check_sl_order(n: usize, allow_n5: bool) -> Outcome {
    if !(2..=5).contains(&n) {
        return refuse(format!("supported dimensions are 2..=5, got {n}"));
    }
    if n == 5 && !allow_n5 {
        return refuse("dimension 5 needs the explicit opt-in flag");
    }
    let mut counts = BTreeMap::new();
    for dim in 2..=n {
        let table = match GroupTable::enumerate_sl(dim, allow_n5) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        counts.insert(format!("order_n{dim}"), table.order());
        if table.order() != sl_order(dim) {
            return fail(
                counts,
                serde_json::json!({
                    "dimension": dim,
                    "enumerated": table.order(),
                    "formula": sl_order(dim),
                }),
            );
        }
    }
    pass(counts)
}

fn check_counting_identity(n: usize) -> Outcome {
    if !(2..=3).contains(&n) {
        return refuse(format!("supported base dimensions are 2..=3, got {n}"));
    }
    let mut counts = BTreeMap::new();
    for base in 2..=n {
        let small = match GroupTable::enumerate_sl(base, false) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let big = match GroupTable::enumerate_sl(base + 1, false) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let hyperplanes = (1u64 << (base + 1)) - 1;
        let translations = 1u64 << base;
        let product = hyperplanes * translations * small.order();
        counts.insert(format!("product_n{base}"), product);
        if product != big.order() {
            return fail(
                counts,
                serde_json::json!({
                    "base": base,
                    "product": product,
                    "enumerated": big.order(),
                }),
            );
        }
    }
    pass(counts)
}

fn check_image_b_size(n: usize) -> Outcome {
    if !(2..=3).contains(&n) {
        return refuse(format!("supported base ranks are 2..=3, got {n}"));
    }
    let mut counts = BTreeMap::new();
    for base in 2..=n {
        let table = match GroupTable::enumerate_sl(base + 1, false) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let images = match b_images(&table) {
            Ok(i) => i,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let expected = 1usize << base;
        let distinct: std::collections::HashSet<u64> =
            images.iter().map(Gf2Matrix::pack).collect();
        counts.insert(format!("distinct_n{base}"), distinct.len() as u64);
        if images.len() != expected || distinct.len() != expected {
            return fail(
                counts,
                serde_json::json!({ "base": base, "distinct": distinct.len() }),
            );
        }
        let indices: Vec<u32> = images
            .iter()
            .map(|m| table.index_of(m).expect("projected images lie in the table"))
            .collect();
        let closure = match subgroup_closure(&table, &indices) {
            Ok(c) => c,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let exponent_two = closure
            .members()
            .iter()
            .all(|&m| table.mul(m, m) == table.identity_index());
        let abelian = closure.members().iter().all(|&a| {
            closure
                .members()
                .iter()
                .all(|&b| table.mul(a, b) == table.mul(b, a))
        });
        if closure.order() != expected as u64 || !exponent_two || !abelian {
            return fail(
                counts,
                serde_json::json!({
                    "base": base,
                    "closure_order": closure.order(),
                    "exponent_two": exponent_two,
                    "abelian": abelian,
                }),
            );
        }
    }
    pass(counts)
}

fn check_c_subgroups(n_plus_1: usize) -> Outcome {
    if !(3..=4).contains(&n_plus_1) {
        return refuse(format!("supported dimensions are 3..=4, got {n_plus_1}"));
    }
    let mut counts = BTreeMap::new();
    for dim in 3..=n_plus_1 {
        let table = match GroupTable::enumerate_sl(dim, false) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let standard = match standard_c_subgroup(&table) {
            Ok(s) => s,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let orbit = match orbit_of_subgroup(&table, &standard) {
            Ok(o) => o,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let expected = (1u64 << dim) - 1;
        counts.insert(format!("orbit_size_n{dim}"), orbit.len() as u64);
        if orbit.len() as u64 != expected {
            return fail(
                counts,
                serde_json::json!({ "dimension": dim, "orbit": orbit.len() }),
            );
        }
        let orbit_members: std::collections::HashSet<Vec<u32>> =
            orbit.iter().map(|s| s.members().to_vec()).collect();
        let mut seen: std::collections::HashSet<Vec<u32>> = Default::default();
        for indicator in Indicator::all(dim) {
            let witness = |reason: &str| {
                serde_json::json!({
                    "dimension": dim,
                    "indicator": indicator.to_string(),
                    "reason": reason,
                })
            };
            let c = match c_subgroup_image(&table, &indicator) {
                Ok(c) => c,
                Err(e) => return fail(counts, witness(&e.to_string())),
            };
            let stab = match hyperplane_stabilizer(&table, &hyperplane_basis(&indicator)) {
                Ok(s) => s,
                Err(e) => return fail(counts, witness(&e.to_string())),
            };
            if c.members() != stab.members() {
                return fail(counts, witness("subgroup differs from hyperplane stabilizer"));
            }
            if !seen.insert(c.members().to_vec()) {
                return fail(counts, witness("subgroup coincides with an earlier one"));
            }
            if !orbit_members.contains(c.members()) {
                return fail(counts, witness("subgroup is not conjugate to the standard one"));
            }
            let norm = match normalizer(&table, &c) {
                Ok(s) => s,
                Err(e) => return fail(counts, witness(&e.to_string())),
            };
            if norm.members() != c.members() {
                return fail(counts, witness("subgroup is not self-normalizing"));
            }
            if expected * norm.order() != table.order() {
                return fail(counts, witness("orbit-stabilizer identity fails"));
            }
        }
        counts.insert(format!("subgroups_n{dim}"), seen.len() as u64);
        counts.insert(
            format!("stabilizer_order_n{dim}"),
            table.order() / expected,
        );
        counts.insert(
            format!("standard_subgroup_hash_n{dim}"),
            standard.content_hash(&table),
        );
    }
    pass(counts)
}

fn check_base_case(hom_work_limit: u128) -> Outcome {
    let mut counts = BTreeMap::new();
    let groups = match small_groups_catalog(6) {
        Ok(g) => g,
        Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
    };
    counts.insert("groups".into(), groups.len() as u64);
    let source = sl2z_presentation();
    let mut total_homs = 0u64;
    for group in &groups {
        let homs = match enumerate_homs(&source, group, hom_work_limit) {
            Ok(h) => h,
            Err(e) => {
                return fail(
                    counts,
                    serde_json::json!({ "group": group.name(), "error": e.to_string() }),
                )
            }
        };
        total_homs += homs.len() as u64;
        for hom in &homs {
            let image = hom.image(group);
            let cyclic = group.is_cyclic_subgroup(&image);
            let allowed_noncyclic = group.name() == "S3" && hom.is_surjective(group);
            if !cyclic && !allowed_noncyclic {
                return fail(
                    counts,
                    serde_json::json!({
                        "group": group.name(),
                        "images": hom.images.clone(),
                    }),
                );
            }
        }
        if group.name() == "S3" {
            let surjections = homs.iter().filter(|h| h.is_surjective(group)).count() as u64;
            counts.insert("s3_surjections".into(), surjections);
            if surjections == 0 {
                return fail(counts, serde_json::json!({ "reason": "no surjections onto S3" }));
            }
            let classes = match classify_surjections(&homs, group, &[]) {
                Ok(c) => c,
                Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
            };
            counts.insert("s3_surjection_classes".into(), classes.len() as u64);
            if classes.len() != 1 {
                return fail(
                    counts,
                    serde_json::json!({ "reason": "surjections split into several classes" }),
                );
            }
        }
    }
    counts.insert("homs_total".into(), total_homs);
    pass(counts)
}

fn check_abelianization() -> Outcome {
    let mut counts = BTreeMap::new();
    match sl2z_presentation().abelianization_invariants() {
        Ok(factors) if factors == vec![12] => {
            counts.insert("invariant_factors".into(), 1);
            pass(counts)
        }
        Ok(factors) => fail(counts, serde_json::json!({ "factors": factors })),
        Err(e) => fail(counts, serde_json::json!({ "error": e.to_string() })),
    }
}

/// Deterministic 64-bit stream used by the sampled check.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

fn check_conjugation_stability(n: usize, samples: usize, seed: u64) -> Outcome {
    if !(2..=3).contains(&n) {
        return refuse(format!("supported base ranks are 2..=3, got {n}"));
    }
    let mut rng = SplitMix64(seed);
    let mut counts = BTreeMap::new();
    let mut total = 0u64;
    for base in 2..=n {
        let rank = base + 1;
        let table = match GroupTable::enumerate_sl(rank, false) {
            Ok(t) => t,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let images = match b_images(&table) {
            Ok(i) => i,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        let indices: Vec<u32> = images
            .iter()
            .map(|m| table.index_of(m).expect("projected images lie in the table"))
            .collect();
        let subgroup_b = match subgroup_closure(&table, &indices) {
            Ok(b) => b,
            Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
        };
        for sample in 0..samples {
            total += 1;
            // random special automorphism fixing the last generator
            let mut fixing = Automorphism::identity(rank).expect("rank is positive");
            for _ in 0..6 {
                let i = rng.below(base as u64) as usize + 1;
                let mut j = rng.below(base as u64 - 1) as usize + 1;
                if j >= i {
                    j += 1;
                }
                let step = if rng.below(2) == 0 {
                    Automorphism::right_transvection(rank, i, j)
                } else {
                    Automorphism::left_transvection(rank, i, j)
                };
                fixing = fixing
                    .compose(&step.expect("indices are distinct and in range"))
                    .expect("ranks match");
            }
            let image = match pi(&fixing) {
                Ok(m) => m,
                Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
            };
            let idx = table.index_of(&image).expect("projection lands in the table");
            let conjugated = match conjugate_subgroup(&table, idx, &subgroup_b) {
                Ok(c) => c,
                Err(e) => return fail(counts, serde_json::json!({ "error": e.to_string() })),
            };
            if conjugated.members() != subgroup_b.members() {
                return fail(
                    counts,
                    serde_json::json!({
                        "base": base,
                        "sample": sample,
                        "automorphism": fixing.to_json(),
                    }),
                );
            }
        }
    }
    counts.insert("samples_checked".into(), total);
    pass(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::from_name(id.name()), Some(id));
        }
        assert_eq!(CheckId::from_name("nope"), None);
    }

    #[test]
    fn counting_identity_passes_for_n2() {
        let report = run_check(
            CheckId::CountingIdentity,
            &CheckParams {
                n: Some(2),
                ..Default::default()
            },
        );
        assert!(report.passed());
        assert_eq!(report.counts["product_n2"], 168);
    }

    #[test]
    fn torelli_passes_to_rank_six() {
        let report = run_check(CheckId::Torelli, &CheckParams::default());
        assert!(report.passed());
        assert_eq!(report.counts["ranks_checked"], 5);
    }

    #[test]
    fn c_subgroups_pass_for_dimension_3() {
        let report = run_check(
            CheckId::CSubgroups,
            &CheckParams {
                n: Some(3),
                ..Default::default()
            },
        );
        assert!(report.passed(), "witness: {:?}", report.witness);
        assert_eq!(report.counts["subgroups_n3"], 7);
        assert_eq!(report.counts["stabilizer_order_n3"], 24);
    }

    #[test]
    fn unsupported_params_are_refused() {
        let report = run_check(
            CheckId::SlOrder,
            &CheckParams {
                n: Some(9),
                ..Default::default()
            },
        );
        assert!(report.refused());
        let report = run_check(
            CheckId::SlOrder,
            &CheckParams {
                n: Some(5),
                allow_n5: false,
                ..Default::default()
            },
        );
        assert!(report.refused());
    }

    #[test]
    fn failing_reports_carry_witnesses() {
        let report = run_check(
            CheckId::GerstenRelations,
            &CheckParams {
                n: Some(7),
                ..Default::default()
            },
        );
        assert!(report.refused());
        assert!(report.witness.is_some());
    }

    #[test]
    fn quick_suite_is_deterministic() {
        let params = CheckParams::default();
        let first: Vec<String> = run_all(Profile::Quick, &params)
            .iter()
            .map(CheckReport::to_json_line)
            .collect();
        let second: Vec<String> = run_all(Profile::Quick, &params)
            .iter()
            .map(CheckReport::to_json_line)
            .collect();
        assert_eq!(first, second);
        assert_eq!(first.len(), CheckId::ALL.len());
    }

    #[test]
    fn quick_suite_passes() {
        let reports = run_all(Profile::Quick, &CheckParams::default());
        for report in &reports {
            assert!(report.passed(), "{}: {:?}", report.check, report.witness);
        }
        assert!(all_passed(&reports));
    }

    #[test]
    fn report_serialization_shape() {
        let report = run_check(
            CheckId::Abelianization,
            &CheckParams::default(),
        );
        let line = report.to_json_line();
        let value: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["check"], "abelianization");
        assert_eq!(value["status"], "pass");
        assert_eq!(value["elapsed_ms"], 0);
        assert!(value.get("witness").is_none());
        assert!(value["paper_ref"].is_string());
    }

    #[test]
    fn conjugation_stability_records_seed() {
        let report = run_check(
            CheckId::ConjugationStability,
            &CheckParams {
                n: Some(2),
                samples: 5,
                seed: 42,
                ..Default::default()
            },
        );
        assert!(report.passed(), "witness: {:?}", report.witness);
        assert_eq!(report.params["seed"], 42);
        assert_eq!(report.counts["samples_checked"], 5);
    }
}
