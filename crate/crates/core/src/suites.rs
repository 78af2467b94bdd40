//! Exhaustive verification suites.
//!
//! Each suite sweeps every instance within its bounds and reports all
//! failures (up to a cap) as human-readable witnesses. Instances are checked
//! in parallel but collected in a fixed order, so results are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::circular::{
    avg_count, avg_count_by_class, binary_closed_form, canonicalize, circular_inverse_alternate_check, circular_parikh_matrix,
    circular_parikh_matrix_by_class, circular_power_check, product_identity_check, shift_average,
    slender_partition_check, weak_ratio, CircularWord,
};
use crate::enumerate::enumerate_necklaces;
use crate::error::{Error, Result};
use crate::matrix::UnitriangularMatrix;
use crate::rewriting::{apply_e1, apply_e2, ce1_condition, ce2_condition, naive_rule_failure_examples, swap_pair};
use crate::words::{
    count_subword, inverse_identity_check, mirror, parikh_matrix, parikh_vector, permutation_identity_check,
    Alphabet, Symbol, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    BinaryClosedForm,
    Power,
    InverseAlternate,
    ProductIdentity,
    SlenderPartition,
    Ce1Iff,
    Ce2Iff,
    LinearRules,
    NaiveFailures,
    BinaryMequiv,
    DistinctCount,
    PermutationIdentity,
    ShiftAverage,
    WeakRatio,
    OracleCount,
    SlenderLemma,
    CountingDelta,
    InverseIdentity,
    Morphism,
}

impl Suite {
    pub const ALL: [Suite; 19] = [
        Suite::BinaryClosedForm,
        Suite::Power,
        Suite::InverseAlternate,
        Suite::ProductIdentity,
        Suite::SlenderPartition,
        Suite::Ce1Iff,
        Suite::Ce2Iff,
        Suite::LinearRules,
        Suite::NaiveFailures,
        Suite::BinaryMequiv,
        Suite::DistinctCount,
        Suite::PermutationIdentity,
        Suite::ShiftAverage,
        Suite::WeakRatio,
        Suite::OracleCount,
        Suite::SlenderLemma,
        Suite::CountingDelta,
        Suite::InverseIdentity,
        Suite::Morphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BinaryClosedForm => "binary-closed-form",
            Suite::Power => "power",
            Suite::InverseAlternate => "inverse-alternate",
            Suite::ProductIdentity => "product-identity",
            Suite::SlenderPartition => "slender-partition",
            Suite::Ce1Iff => "ce1-iff",
            Suite::Ce2Iff => "ce2-iff",
            Suite::LinearRules => "linear-rules",
            Suite::NaiveFailures => "naive-failures",
            Suite::BinaryMequiv => "binary-mequiv",
            Suite::DistinctCount => "distinct-count",
            Suite::PermutationIdentity => "permutation-identity",
            Suite::ShiftAverage => "shift-average",
            Suite::WeakRatio => "weak-ratio",
            Suite::OracleCount => "oracle-count",
            Suite::SlenderLemma => "slender-lemma",
            Suite::CountingDelta => "counting-delta",
            Suite::InverseIdentity => "inverse-identity",
            Suite::Morphism => "morphism",
        }
    }

    /// Word length bound, or `|x|+|y|` (`|x|+|y|+|z|` for counting-delta)
    /// for the split-based suites.
    pub fn default_bound(self) -> usize {
        match self {
            Suite::BinaryClosedForm | Suite::BinaryMequiv | Suite::DistinctCount => 12,
            Suite::Ce1Iff | Suite::Ce2Iff | Suite::SlenderLemma => 5,
            Suite::CountingDelta => 4,
            Suite::WeakRatio => 6,
            Suite::OracleCount => 7,
            Suite::Morphism => 4,
            Suite::NaiveFailures => 0,
            _ => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Overrides the suite's [`Suite::default_bound`].
    pub bound: Option<usize>,
    /// Largest exponent for the power suite.
    pub max_power: u32,
    pub failure_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { bound: None, max_power: 4, failure_cap: 10 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub bound: usize,
    pub instances: u64,
    pub failure_count: u64,
    /// At most `failure_cap` witnesses, in sweep order.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn elapsed(&self) -> Duration {
        Duration::from_millis(self.elapsed_ms as u64)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {} (bound {}): {} instances, {} failures, {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.bound,
            self.instances,
            self.failure_count,
            self.elapsed_ms
        )
    }
}

struct Tally {
    instances: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { instances: 0, failures: Vec::new() }
    }

    fn sweep<T: Sync>(&mut self, items: &[T], check: impl Fn(&T) -> Option<String> + Sync + Send) {
        self.instances += items.len() as u64;
        let found: Vec<String> = items.par_iter().filter_map(check).collect();
        self.failures.extend(found);
    }
}

fn words_up_to(alphabet: &Alphabet, max: usize) -> Vec<Word> {
    (0..=max).flat_map(|n| alphabet.words(n)).collect()
}

fn necklaces_up_to(alphabet: &Alphabet, max: usize) -> Vec<CircularWord> {
    (0..=max).flat_map(|n| enumerate_necklaces(alphabet, n)).collect()
}

/// `(x, y)` with `|x| + |y| <= max`.
fn splits(alphabet: &Alphabet, max: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for total in 0..=max {
        for lx in 0..=total {
            for x in alphabet.words(lx) {
                for y in alphabet.words(total - lx) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

fn small_alphabets() -> [Alphabet; 2] {
    [Alphabet::latin(2), Alphabet::latin(3)]
}

pub fn run_suite_named(name: &str, limits: Limits) -> Result<SuiteResult> {
    Ok(run_suite(name.parse()?, limits))
}

pub fn run_suite(suite: Suite, limits: Limits) -> SuiteResult {
    let bound = limits.bound.unwrap_or_else(|| suite.default_bound());
    let start = Instant::now();
    let mut t = Tally::new();
    let sigma3 = Alphabet::latin(3);
    let sigma2 = Alphabet::latin(2);
    let r2 = |c: &CircularWord| sigma2.render_circular(c);
    let r3 = |c: &CircularWord| sigma3.render_circular(c);

    match suite {
        Suite::BinaryClosedForm => {
            let items: Vec<Word> = (1..=bound).flat_map(|n| sigma2.words(n)).collect();
            t.sweep(&items, |w| {
                let c = canonicalize(w);
                let expected = binary_closed_form(w.letter_count(0), w.letter_count(1));
                let got = circular_parikh_matrix(&sigma2, &c);
                (got != expected).then(|| format!("{}: {:?} != {:?}", r2(&c), got, expected))
            });
        }
        Suite::Power => {
            for a in small_alphabets() {
                let items = necklaces_up_to(&a, bound);
                let ps: Vec<u32> = (1..=limits.max_power).collect();
                let cases: Vec<(CircularWord, u32)> =
                    items.iter().flat_map(|c| ps.iter().map(move |&p| (c.clone(), p))).collect();
                t.sweep(&cases, |(c, p)| {
                    (!circular_power_check(&a, c, *p).expect("at most ternary"))
                        .then(|| format!("{} p={p}", a.render_circular(c)))
                });
            }
        }
        Suite::InverseAlternate => {
            for a in small_alphabets() {
                let items = necklaces_up_to(&a, bound);
                t.sweep(&items, |c| {
                    (!circular_inverse_alternate_check(&a, c).expect("at most ternary"))
                        .then(|| a.render_circular(c))
                });
            }
        }
        Suite::ProductIdentity => {
            for a in small_alphabets() {
                let items = necklaces_up_to(&a, bound);
                t.sweep(&items, |c| (!product_identity_check(&a, c)).then(|| a.render_circular(c)));
            }
        }
        Suite::SlenderPartition => {
            for a in small_alphabets() {
                let items = necklaces_up_to(&a, bound);
                t.sweep(&items, |c| (!slender_partition_check(&a, c)).then(|| a.render_circular(c)));
            }
        }
        Suite::PermutationIdentity => {
            for a in small_alphabets() {
                let items = words_up_to(&a, bound);
                t.sweep(&items, |w| (!permutation_identity_check(&a, w)).then(|| a.render(w)));
            }
        }
        Suite::Ce1Iff => {
            let items = splits(&sigma3, bound);
            t.sweep(&items, |(x, y)| {
                let (l, r) = swap_pair(x, y, 0, 2);
                let equivalent = circular_parikh_matrix(&sigma3, &l) == circular_parikh_matrix(&sigma3, &r);
                let (lhs, rhs) = ce1_condition(x.symbols(), y.symbols());
                (equivalent != (lhs == rhs)).then(|| {
                    format!("x={} y={}: condition {lhs} vs {rhs}, M-equivalent={equivalent}", sigma3.render(x), sigma3.render(y))
                })
            });
        }
        Suite::Ce2Iff => {
            let items = splits(&sigma3, bound);
            for alpha in [0, 2] {
                t.sweep(&items, |(x, y)| {
                    let (l, r) = swap_pair(x, y, alpha, 1);
                    let equivalent = circular_parikh_matrix(&sigma3, &l) == circular_parikh_matrix(&sigma3, &r);
                    let (lhs, rhs) = ce2_condition(x.symbols(), y.symbols(), alpha);
                    (equivalent != (lhs == rhs)).then(|| {
                        format!(
                            "alpha={} x={} y={}: condition {lhs} vs {rhs}, M-equivalent={equivalent}",
                            sigma3.name(alpha),
                            sigma3.render(x),
                            sigma3.render(y)
                        )
                    })
                });
            }
        }
        Suite::SlenderLemma => {
            let items = splits(&sigma3, bound);
            let slender: Vec<Word> = words_up_to(&sigma3, 2)
                .into_iter()
                .filter(|u| u.len() < 2 || u[0] != u[1])
                .collect();
            for alpha in 0..3 {
                for beta in (0..3).filter(|&b| b != alpha) {
                    t.sweep(&items, |(x, y)| {
                        let (l, r) = swap_pair(x, y, alpha, beta);
                        let bad = slender.iter().find(|u| {
                            avg_count(&l, u) != avg_count(&r, u)
                        })?;
                        Some(format!("{} vs {} differ on {}", r3(&l), r3(&r), sigma3.render(bad)))
                    });
                }
            }
        }
        Suite::CountingDelta => {
            let mut triples = Vec::new();
            for total in 0..=bound {
                for lx in 0..=total {
                    for ly in 0..=total - lx {
                        for x in sigma3.words(lx) {
                            for y in sigma3.words(ly) {
                                for z in sigma3.words(total - lx - ly) {
                                    triples.push((x.clone(), y.clone(), z));
                                }
                            }
                        }
                    }
                }
            }
            let abc = Word::new(vec![0, 1, 2]);
            for alpha in [0 as Symbol, 2] {
                let other = 2 - alpha;
                t.sweep(&triples, |(x, y, z)| {
                    let l = Word::new([x.symbols(), &[alpha, 1], y.symbols(), &[1, alpha], z.symbols()].concat());
                    let r = Word::new([x.symbols(), &[1, alpha], y.symbols(), &[alpha, 1], z.symbols()].concat());
                    let delta = BigInt::from(count_subword(&l, &abc)) - BigInt::from(count_subword(&r, &abc));
                    (delta != BigInt::from(y.letter_count(other)))
                        .then(|| format!("{} vs {}: delta {delta}", sigma3.render(&l), sigma3.render(&r)))
                });
            }
        }
        Suite::LinearRules => {
            let items = words_up_to(&sigma3, bound);
            t.sweep(&items, |w| {
                let pm = parikh_matrix(&sigma3, w);
                let e1 = apply_e1(&sigma3, w).expect("ternary");
                let e2 = apply_e2(&sigma3, w).expect("ternary");
                let bad = e1.iter().chain(e2.iter()).find(|v| parikh_matrix(&sigma3, v) != pm)?;
                Some(format!("{} -> {}", sigma3.render(w), sigma3.render(bad)))
            });
        }
        Suite::NaiveFailures => {
            let report = naive_rule_failure_examples();
            t.instances = report.len() as u64;
            let expected = [("1/3", "2/3", false), ("2/5", "1", false)];
            for (case, (l, r, eq)) in report.iter().zip(expected) {
                if case.left_count.to_string() != l || case.right_count.to_string() != r || case.m_equivalent != eq {
                    t.failures.push(format!(
                        "{} vs {}: {} vs {}",
                        r3(&case.left),
                        r3(&case.right),
                        case.left_count,
                        case.right_count
                    ));
                }
            }
            if let Some(control) = report.get(2) {
                if !control.m_equivalent {
                    t.failures.push(format!("reflexivity control {} failed", r3(&control.left)));
                }
            }
        }
        Suite::BinaryMequiv => {
            for n in 0..=bound {
                let items = enumerate_necklaces(&sigma2, n);
                t.instances += items.len() as u64;
                let keyed: Vec<(String, Vec<usize>, CircularWord)> = items
                    .par_iter()
                    .map(|c| {
                        (circular_parikh_matrix(&sigma2, c).key(), parikh_vector(&sigma2, c.canonical()).0, c.clone())
                    })
                    .collect();
                let mut by_key: BTreeMap<&str, BTreeSet<&Vec<usize>>> = BTreeMap::new();
                let mut by_vec: BTreeMap<&Vec<usize>, BTreeSet<&str>> = BTreeMap::new();
                for (k, v, _) in &keyed {
                    by_key.entry(k).or_default().insert(v);
                    by_vec.entry(v).or_default().insert(k);
                }
                for (k, vs) in by_key.iter().filter(|(_, vs)| vs.len() > 1) {
                    t.failures.push(format!("n={n}: matrix {k} shared by Parikh vectors {vs:?}"));
                }
                for (v, ks) in by_vec.iter().filter(|(_, ks)| ks.len() > 1) {
                    t.failures.push(format!("n={n}: Parikh vector {v:?} split across matrices {ks:?}"));
                }
            }
        }
        Suite::DistinctCount => {
            for n in 0..=bound {
                let items = enumerate_necklaces(&sigma2, n);
                t.instances += items.len() as u64;
                let keys: BTreeSet<String> =
                    items.par_iter().map(|c| circular_parikh_matrix(&sigma2, c).key()).collect();
                if keys.len() != n + 1 {
                    t.failures.push(format!("n={n}: {} distinct matrices, expected {}", keys.len(), n + 1));
                }
            }
        }
        Suite::ShiftAverage => {
            for a in small_alphabets() {
                let items = words_up_to(&a, bound);
                let patterns = words_up_to(&a, 3);
                t.sweep(&items, |w| {
                    let c = canonicalize(w);
                    let bad = patterns.iter().find(|v| shift_average(w, v) != avg_count_by_class(&c, v))?;
                    Some(format!("{} on {}", a.render(w), a.render(bad)))
                });
            }
        }
        Suite::WeakRatio => {
            let items = words_up_to(&sigma2, bound);
            let mats: Vec<UnitriangularMatrix> =
                items.par_iter().map(|w| circular_parikh_matrix(&sigma2, &canonicalize(w))).collect();
            let pairs: Vec<(usize, usize)> =
                (0..items.len()).flat_map(|i| (0..items.len()).map(move |j| (i, j))).collect();
            t.sweep(&pairs, |&(i, j)| {
                let (u, v) = (&items[i], &items[j]);
                let ratio = weak_ratio(&sigma2, u, v).expect("binary");
                let uv = circular_parikh_matrix(&sigma2, &canonicalize(&u.concat(v)));
                let prod = mats[i].multiply(&mats[j]).expect("same dim");
                let morphism = uv == prod;
                let commute = prod == mats[j].multiply(&mats[i]).expect("same dim");
                (morphism != ratio || commute != ratio).then(|| {
                    format!(
                        "u={} v={}: weak ratio {ratio}, morphism {morphism}, commute {commute}",
                        sigma2.render(u),
                        sigma2.render(v)
                    )
                })
            });
        }
        Suite::OracleCount => {
            let items = words_up_to(&sigma3, bound);
            let patterns = words_up_to(&sigma3, 3);
            t.sweep(&items, |w| {
                let bad = patterns.iter().find(|v| count_subword(w, v) != brute_force_count(w, v).into())?;
                Some(format!("|{}|_{}", sigma3.render(w), sigma3.render(bad)))
            });
            for a in small_alphabets() {
                let necklaces = necklaces_up_to(&a, bound);
                t.sweep(&necklaces, |c| {
                    (circular_parikh_matrix(&a, c) != circular_parikh_matrix_by_class(&a, c))
                        .then(|| format!("class-sum vs shift-sum at {}", a.render_circular(c)))
                });
            }
        }
        Suite::InverseIdentity => {
            let items = words_up_to(&sigma3, bound);
            t.sweep(&items, |w| {
                let ok = inverse_identity_check(&sigma3, w).expect("ternary")
                    && parikh_matrix(&sigma3, w)
                        .multiply(&parikh_matrix(&sigma3, &mirror(w)).alternate())
                        .expect("same dim")
                        .is_identity();
                (!ok).then(|| sigma3.render(w))
            });
        }
        Suite::Morphism => {
            let items = words_up_to(&sigma3, bound);
            let mats: Vec<UnitriangularMatrix> = items.iter().map(|w| parikh_matrix(&sigma3, w)).collect();
            let pairs: Vec<(usize, usize)> =
                (0..items.len()).flat_map(|i| (0..items.len()).map(move |j| (i, j))).collect();
            t.sweep(&pairs, |&(i, j)| {
                let uv = parikh_matrix(&sigma3, &items[i].concat(&items[j]));
                (uv != mats[i].multiply(&mats[j]).expect("same dim"))
                    .then(|| format!("u={} v={}", sigma3.render(&items[i]), sigma3.render(&items[j])))
            });
        }
    }

    let failure_count = t.failures.len() as u64;
    t.failures.truncate(limits.failure_cap);
    SuiteResult {
        suite: suite.name().to_string(),
        bound,
        instances: t.instances,
        failure_count,
        failures: t.failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Occurrences of `v` in `w` by enumerating increasing index tuples; kept
/// independent of the dynamic-programming counter it checks.
pub fn brute_force_count(w: &Word, v: &Word) -> u64 {
    fn go(w: &[Symbol], v: &[Symbol], start: usize) -> u64 {
        if v.is_empty() {
            return 1;
        }
        (start..w.len()).filter(|&i| w[i] == v[0]).map(|i| go(w, &v[1..], i + 1)).sum()
    }
    go(w.symbols(), v.symbols(), 0)
}
