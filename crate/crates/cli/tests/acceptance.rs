//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test -p sautlab-cli --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use sautlab::autos::Automorphism;
use sautlab::gf2::Gf2Matrix;
use sautlab::hyperplanes::{
    hyperplane_basis, indicator_of, lemma_a_change, reference_basis_change_rank5, s_basis,
    verify_lemma_a, Indicator,
};
use sautlab::intmat::{smith_normal_form, IntMatrix};
use sautlab::presentations::{
    classify_surjections, enumerate_homs, gersten_relation_report, parse_presentation,
    sl2z_presentation, Hom, DEFAULT_HOM_WORK_LIMIT,
};
use sautlab::slgroup::{
    b_images, c_subgroup_image, hyperplane_stabilizer, normalizer, orbit_of_subgroup,
    standard_c_subgroup, subgroup_closure, GroupTable,
};
use sautlab::smallgroups::small_groups_catalog;
use sautlab::words::Word;

fn report(criterion: &str, detail: &str) {
    println!("acceptance {criterion}: PASS ({detail})");
}

#[test]
fn criterion_01_group_orders() {
    for (n, expected) in [(2usize, 6u64), (3, 168)] {
        let table = GroupTable::enumerate_sl(n, false).unwrap();
        let formula: u64 = (0..n).map(|k| (1u64 << n) - (1u64 << k)).product();
        assert_eq!(table.order(), expected);
        assert_eq!(table.order(), formula);
    }
    let start = Instant::now();
    let table = GroupTable::enumerate_sl(4, false).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(table.order(), 20160);
    let formula_n4: u64 = (0..4).map(|k| (1u64 << 4) - (1u64 << k)).product();
    assert_eq!(table.order(), formula_n4);
    assert!(
        elapsed.as_secs() < 60,
        "dimension 4 enumeration took {elapsed:?}"
    );
    report(
        "01 group-orders",
        &format!("6, 168, 20160 enumerated; n=4 in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_counting_identity() {
    let orders: Vec<u64> = (2..=4)
        .map(|n| GroupTable::enumerate_sl(n, false).unwrap().order())
        .collect();
    assert_eq!(7 * 4 * orders[0], orders[1]);
    assert_eq!(7 * 4 * 6, 168);
    assert_eq!(15 * 8 * orders[1], orders[2]);
    assert_eq!(15 * 8 * 168, 20160);
    report("02 counting-identity", "7*4*6 = 168 and 15*8*168 = 20160, exact");
}

#[test]
fn criterion_03_c_subgroups() {
    for dim in [3usize, 4] {
        let table = GroupTable::enumerate_sl(dim, false).unwrap();
        let expected = (1u64 << dim) - 1;
        let standard = standard_c_subgroup(&table).unwrap();
        let orbit = orbit_of_subgroup(&table, &standard).unwrap();
        assert_eq!(orbit.len() as u64, expected);
        let orbit_sets: HashSet<Vec<u32>> =
            orbit.iter().map(|s| s.members().to_vec()).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for indicator in Indicator::all(dim) {
            let c = c_subgroup_image(&table, &indicator).unwrap();
            let stab = hyperplane_stabilizer(&table, &hyperplane_basis(&indicator)).unwrap();
            assert_eq!(c.members(), stab.members(), "indicator {indicator}");
            assert!(seen.insert(c.members().to_vec()), "duplicate at {indicator}");
            assert!(orbit_sets.contains(c.members()), "not conjugate at {indicator}");
            let norm = normalizer(&table, &c).unwrap();
            assert_eq!(norm.members(), c.members(), "not self-normalizing at {indicator}");
            assert_eq!(expected * norm.order(), table.order());
        }
        assert_eq!(seen.len() as u64, expected);
    }
    report(
        "03 c-subgroups",
        "7 and 15 distinct conjugate self-normalizing stabilizers; orbit*normalizer = |G|",
    );
}

#[test]
fn criterion_04_b_image_size() {
    for n in [2usize, 3] {
        let table = GroupTable::enumerate_sl(n + 1, false).unwrap();
        let images = b_images(&table).unwrap();
        assert_eq!(images.len(), 1 << n);
        let distinct: HashSet<u64> = images.iter().map(Gf2Matrix::pack).collect();
        assert_eq!(distinct.len(), 1 << n);
        let indices: Vec<u32> = images
            .iter()
            .map(|m| table.index_of(m).unwrap())
            .collect();
        let closure = subgroup_closure(&table, &indices).unwrap();
        assert_eq!(closure.order(), 1u64 << n);
        for &a in closure.members() {
            assert_eq!(table.mul(a, a), table.identity_index());
            for &b in closure.members() {
                assert_eq!(table.mul(a, b), table.mul(b, a));
            }
        }
    }
    report(
        "04 b-image-size",
        "2^n distinct projected products; closure elementary abelian of order 2^n",
    );
}

#[test]
fn criterion_05_basis_change() {
    let mut pairs = 0u64;
    for n in [3usize, 4, 5] {
        let all = Indicator::all(n);
        for a in &all {
            for b in &all {
                if a == b {
                    continue;
                }
                pairs += 1;
                let change = lemma_a_change(a, b).unwrap();
                assert!(
                    verify_lemma_a(a, b, &change).unwrap(),
                    "failed for {a} / {b}"
                );
            }
        }
    }
    assert_eq!(pairs, 42 + 210 + 930);
    let reference = reference_basis_change_rank5();
    let expected: Vec<Word> = ["x1", "x2*x3^-1", "x1*x2^-1", "x1*x3^-1*x4", "x4*x5^-1"]
        .iter()
        .map(|t| Word::parse(t, 5).unwrap())
        .collect();
    assert_eq!(reference.images(), expected.as_slice());
    let i: Indicator = "11000".parse().unwrap();
    let i_prime: Indicator = "00011".parse().unwrap();
    assert!(verify_lemma_a(&i, &i_prime, &reference).unwrap());
    report(
        "05 basis-change",
        &format!("{pairs} ordered pairs verified at n = 3, 4, 5; reference basis verbatim"),
    );
}

#[test]
fn criterion_06_hyperplane_dictionary() {
    let mut indicators = 0u64;
    for n in 1..=6usize {
        for indicator in Indicator::all(n) {
            indicators += 1;
            assert_eq!(indicator_of(&hyperplane_basis(&indicator)), indicator);
            let plane = hyperplane_basis(&indicator);
            let vectors: Vec<u32> = s_basis(&indicator)
                .iter()
                .map(Word::abelianize_mod2)
                .collect();
            assert!(vectors.iter().all(|&v| plane.contains(v)));
            assert_eq!(
                sautlab::gf2::Gf2Span::from_vectors(n, &vectors).rank(),
                n - 1
            );
        }
    }
    report(
        "06 hyperplane-dictionary",
        &format!("{indicators} indicators: roundtrip and rank n-1 projection"),
    );
}

#[test]
fn criterion_07_relation_families() {
    for rank in [3usize, 4] {
        let rep = gersten_relation_report(rank).unwrap();
        assert!(rep.passed(), "violations: {:?}", rep.violations);
        let expected_overlap = rank * (rank - 1) * (rank - 2);
        assert_eq!(rep.overlapping_tuples, expected_overlap);
        if rank == 4 {
            assert_eq!(rep.disjoint_tuples, 24);
        }
    }
    report(
        "07 relation-families",
        "both transvection families hold exhaustively at ranks 3 and 4, zero violations",
    );
}

#[test]
fn criterion_08_torelli_shadow() {
    for rank in 2..=6usize {
        let magnus = Automorphism::magnus_generator(rank).unwrap();
        assert_eq!(magnus.abelianization_matrix(), IntMatrix::identity(rank));
    }
    report(
        "08 torelli-shadow",
        "E_{x1,x2} E_{x1^-1,x2} abelianizes to the integer identity for n = 2..6",
    );
}

#[test]
fn criterion_09_base_case() {
    let start = Instant::now();
    let source = sl2z_presentation();
    assert_eq!(source.abelianization_invariants().unwrap(), vec![12]);
    for group in small_groups_catalog(6).unwrap() {
        let homs = enumerate_homs(&source, &group, DEFAULT_HOM_WORK_LIMIT).unwrap();
        for hom in &homs {
            let image = hom.image(&group);
            let cyclic = group.is_cyclic_subgroup(&image);
            if group.name() == "S3" {
                assert!(cyclic || hom.is_surjective(&group));
            } else {
                assert!(cyclic, "non-cyclic image in {}", group.name());
            }
        }
        if group.name() == "S3" {
            let surjections = homs.iter().filter(|h| h.is_surjective(&group)).count();
            assert_eq!(surjections, 6);
            let classes = classify_surjections(&homs, &group, &[]).unwrap();
            assert_eq!(classes.len(), 1);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "base case took {elapsed:?}");
    report(
        "09 base-case",
        &format!("cyclic except S3; one surjection class; Z_12 abelianization; {elapsed:?}"),
    );
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

/// gcd of all k x k minors; the k-th diagonal entry is g_k / g_{k-1}.
fn minor_gcd_diagonal(m: &IntMatrix) -> Vec<i64> {
    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if k > n {
            return vec![];
        }
        let mut out = Vec::new();
        for first in 0..=n - k {
            for rest in combinations(n - first - 1, k - 1) {
                let mut c = vec![first];
                c.extend(rest.iter().map(|x| x + first + 1));
                out.push(c);
            }
        }
        out
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let kmax = m.nrows().min(m.ncols());
    let mut diag = Vec::new();
    let mut prev = 1i64;
    for k in 1..=kmax {
        let mut g = 0i64;
        for rows in combinations(m.nrows(), k) {
            for cols in combinations(m.ncols(), k) {
                let sub = IntMatrix::from_rows(
                    rows.iter()
                        .map(|&i| cols.iter().map(|&j| m[(i, j)]).collect())
                        .collect(),
                )
                .unwrap();
                g = gcd(g, sub.det().unwrap());
            }
        }
        if g == 0 {
            diag.push(0);
        } else {
            diag.push(g / prev);
            prev = g;
        }
    }
    diag
}

#[test]
fn criterion_10_oracle_equivalences() {
    // pruned hom search against unpruned brute force
    let presentations = [
        "<a ; a^2>",
        "<a ; a^3>",
        "<a ; >",
        "<a,b ; >",
        "<a,b ; a^4, a^2*b^-3>",
        "<a,b ; a^2, b^2, a*b*a^-1*b^-1>",
        "<a,b ; a^2, b^3>",
    ];
    let mut instances = 0u64;
    for text in presentations {
        let p = parse_presentation(text).unwrap();
        for group in small_groups_catalog(8).unwrap() {
            instances += 1;
            let pruned = enumerate_homs(&p, &group, DEFAULT_HOM_WORK_LIMIT).unwrap();
            let gens = p.generators().len();
            let mut brute = Vec::new();
            let total = group.order().pow(gens as u32);
            for code in 0..total {
                let mut rem = code;
                let images: Vec<usize> = (0..gens)
                    .map(|_| {
                        let img = rem % group.order();
                        rem /= group.order();
                        img
                    })
                    .collect();
                let hom = Hom { images };
                if hom.satisfies(&p, &group) {
                    brute.push(hom);
                }
            }
            brute.sort();
            let mut sorted = pruned;
            sorted.sort();
            assert_eq!(sorted, brute, "{text} into {}", group.name());
        }
    }

    // Smith normal form against the minor-gcd oracle
    const SEED: u64 = 0x5eed_0001;
    let mut rng = SplitMix64(SEED);
    for _ in 0..1000 {
        let rows = rng.range(1, 4) as usize;
        let cols = rng.range(1, 4) as usize;
        let m = IntMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.range(-5, 5)).collect())
                .collect(),
        )
        .unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.diagonal(), minor_gcd_diagonal(&m), "matrix:\n{m}");
        assert_eq!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap(), snf.d);
        assert_eq!(snf.u.det().unwrap().abs(), 1);
        assert_eq!(snf.v.det().unwrap().abs(), 1);
    }
    report(
        "10 oracle-equivalences",
        &format!("{instances} hom instances match brute force; 1000 SNF samples (seed {SEED:#x}) match minor gcds"),
    );
}

#[test]
fn criterion_11_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sautlab"))
            .args(["all", "--profile", "full", "--json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
    report(
        "11 determinism",
        "two full-profile runs produced byte-identical reports",
    );
}
