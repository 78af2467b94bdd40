//! Exhaustive necklace enumeration, partition into M-equivalence classes,
//! and the search for negative minors of circular Parikh matrices.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::circular::{canonicalize, circular_parikh_matrix, CircularWord};
use crate::matrix::UnitriangularMatrix;
use crate::rational::Rational;
use crate::words::{Alphabet, Word};

/// One canonical circular word per conjugacy class of `Σ^n`, in
/// lexicographic order.
pub fn enumerate_necklaces(alphabet: &Alphabet, n: usize) -> Vec<CircularWord> {
    let words: Vec<Word> = alphabet.words(n).collect();
    words
        .into_par_iter()
        .filter_map(|w| {
            let c = canonicalize(&w);
            (c.canonical() == &w).then_some(c)
        })
        .collect()
}

/// `(1/n) Σ_{d | n} φ(d) s^{n/d}`, the number of necklaces of length `n ≥ 1`.
pub fn necklace_count(s: u64, n: u32) -> u64 {
    fn phi(mut d: u64) -> u64 {
        let mut result = d;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                while d % p == 0 {
                    d /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if d > 1 {
            result -= result / d;
        }
        result
    }
    if n == 0 {
        return 1;
    }
    let n64 = n as u64;
    (1..=n64).filter(|d| n64 % d == 0).map(|d| phi(d) * s.pow((n64 / d) as u32)).sum::<u64>() / n64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecklaceRow {
    pub word: String,
    pub class_size: usize,
    pub matrix_key: String,
}

/// Necklaces of one length grouped by circular Parikh matrix.
#[derive(Clone, Debug, Serialize)]
pub struct MEquivClassReport {
    pub alphabet: Vec<String>,
    pub length: usize,
    pub necklace_count: usize,
    pub class_count: usize,
    pub largest_class: usize,
    pub singleton_count: usize,
    /// matrix key -> canonical members, sorted
    pub classes: BTreeMap<String, Vec<String>>,
    #[serde(skip)]
    pub rows: Vec<NecklaceRow>,
    #[serde(skip)]
    members: BTreeMap<String, Vec<CircularWord>>,
}

impl MEquivClassReport {
    pub fn class_of(&self, cw: &CircularWord) -> Option<&[CircularWord]> {
        self.members.values().find(|m| m.contains(cw)).map(Vec::as_slice)
    }

    pub fn member_classes(&self) -> impl Iterator<Item = (&String, &Vec<CircularWord>)> {
        self.members.iter()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// `word,class_size,matrix_key`, one row per necklace.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("word,class_size,matrix_key\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},\"{}\"\n", r.word, r.class_size, r.matrix_key));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "alphabet {{{}}} length {}: {} necklaces, {} classes, largest {}, {} singletons\n",
            self.alphabet.join("<"),
            self.length,
            self.necklace_count,
            self.class_count,
            self.largest_class,
            self.singleton_count
        );
        for (key, members) in &self.classes {
            out.push_str(&format!("{key}: {}\n", members.join(" ")));
        }
        out
    }
}

pub fn partition_by_matrix(alphabet: &Alphabet, n: usize) -> MEquivClassReport {
    let necklaces = enumerate_necklaces(alphabet, n);
    let keyed: Vec<(CircularWord, String)> = necklaces
        .into_par_iter()
        .map(|c| {
            let key = circular_parikh_matrix(alphabet, &c).key();
            (c, key)
        })
        .collect();
    let mut members: BTreeMap<String, Vec<CircularWord>> = BTreeMap::new();
    let mut rows = Vec::with_capacity(keyed.len());
    for (c, key) in keyed {
        rows.push(NecklaceRow {
            word: alphabet.render_circular(&c),
            class_size: c.class_size(),
            matrix_key: key.clone(),
        });
        members.entry(key).or_default().push(c);
    }
    let classes: BTreeMap<String, Vec<String>> = members
        .iter()
        .map(|(k, v)| (k.clone(), v.iter().map(|c| alphabet.render_circular(c)).collect()))
        .collect();
    MEquivClassReport {
        alphabet: alphabet.symbols().to_vec(),
        length: n,
        necklace_count: rows.len(),
        class_count: members.len(),
        largest_class: members.values().map(Vec::len).max().unwrap_or(0),
        singleton_count: members.values().filter(|v| v.len() == 1).count(),
        classes,
        rows,
        members,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub word: CircularWord,
    /// zero-based row and column indices of the minor
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Rational,
}

#[derive(Clone, Debug)]
pub struct MinorSearch {
    pub necklaces_checked: usize,
    pub minors_checked: u64,
    pub witness: Option<MinorWitness>,
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// First negative square minor of `m`, scanning by size, then row subset,
/// then column subset; also returns how many minors were evaluated.
pub fn first_negative_minor(m: &UnitriangularMatrix) -> (u64, Option<(Vec<usize>, Vec<usize>, Rational)>) {
    let mut checked = 0;
    for k in 1..=m.dim() {
        let sets = subsets(m.dim(), k);
        for rows in &sets {
            for cols in &sets {
                checked += 1;
                let v = m.minor(rows, cols);
                if v.is_negative() {
                    return (checked, Some((rows.clone(), cols.clone(), v)));
                }
            }
        }
    }
    (checked, None)
}

/// Scans circular Parikh matrices of every necklace of length `0..=max_n`
/// for a minor with negative value. The first witness in (length, word)
/// order is returned.
pub fn search_negative_minor(alphabet: &Alphabet, max_n: usize) -> MinorSearch {
    let mut result = MinorSearch { necklaces_checked: 0, minors_checked: 0, witness: None };
    for n in 0..=max_n {
        let necklaces = enumerate_necklaces(alphabet, n);
        let outcomes: Vec<_> = necklaces
            .par_iter()
            .map(|c| first_negative_minor(&circular_parikh_matrix(alphabet, c)))
            .collect();
        for (c, (checked, hit)) in necklaces.iter().zip(outcomes) {
            result.necklaces_checked += 1;
            result.minors_checked += checked;
            if let Some((rows, cols, value)) = hit {
                result.witness = Some(MinorWitness { word: c.clone(), rows, cols, value });
                return result;
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn binary_length_four() {
        let ab = Alphabet::latin(2);
        let got: Vec<String> = enumerate_necklaces(&ab, 4).iter().map(|c| ab.render_circular(c)).collect();
        assert_eq!(got, ["[aaaa]", "[aaab]", "[aabb]", "[abab]", "[abbb]", "[bbbb]"]);
        // brute-force dedup of all 16 words
        let dedup: BTreeSet<CircularWord> = ab.words(4).map(|w| canonicalize(&w)).collect();
        assert_eq!(dedup.len(), 6);
    }

    #[test]
    fn empty_length() {
        let got = enumerate_necklaces(&Alphabet::latin(3), 0);
        assert_eq!(got.len(), 1);
        assert!(got[0].is_empty());
    }

    #[test]
    fn counts_match_formula() {
        assert_eq!(necklace_count(3, 3), 11);
        assert_eq!(enumerate_necklaces(&Alphabet::latin(3), 3).len(), 11);
        for s in 1..=3 {
            let a = Alphabet::latin(s);
            for n in 1..=8u32 {
                let brute: BTreeSet<CircularWord> = a.words(n as usize).map(|w| canonicalize(&w)).collect();
                let listed = enumerate_necklaces(&a, n as usize);
                assert_eq!(listed.len(), brute.len());
                assert_eq!(listed.len() as u64, necklace_count(s as u64, n));
                assert!(listed.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn binary_partition_length_four() {
        let ab = Alphabet::latin(2);
        let report = partition_by_matrix(&ab, 4);
        assert_eq!(report.class_count, 5);
        let two_a = ab.parse_circular("aabb").unwrap();
        let class = report.class_of(&two_a).unwrap();
        assert_eq!(class, &[ab.parse_circular("aabb").unwrap(), ab.parse_circular("abab").unwrap()]);
        assert_eq!(report.classes["2,2,2"], ["[aabb]", "[abab]"]);
        assert!(report.to_csv().starts_with("word,class_size,matrix_key\n[aaaa],1,\"4,0,0\"\n"));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["class_count"], 5);
    }

    #[test]
    fn ternary_length_eight_groups_the_rule_resistant_pair() {
        let a = Alphabet::latin(3);
        let report = partition_by_matrix(&a, 8);
        let x = a.parse_circular("aaaacbbc").unwrap();
        let y = a.parse_circular("aaacbabc").unwrap();
        assert!(report.class_of(&x).unwrap().contains(&y));
    }

    #[test]
    fn subsets_and_minors() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        let (checked, hit) = first_negative_minor(&UnitriangularMatrix::identity(4));
        assert_eq!(checked, 16 + 36 + 16 + 1);
        assert!(hit.is_none());
    }

    #[test]
    fn binary_minor_search_finds_nothing() {
        let r = search_negative_minor(&Alphabet::latin(2), 12);
        assert!(r.witness.is_none());
        assert_eq!(r.minors_checked, r.necklaces_checked as u64 * (9 + 9 + 1));
    }
}
