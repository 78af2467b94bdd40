//! Position-swap rewriting rules over `{a < b < c}`.
//!
//! E1 and E2 preserve the Parikh matrix of linear words unconditionally.
//! Their circular counterparts CE1 and CE2 preserve the circular Parikh
//! matrix exactly when an integer side condition on the split holds.
//!
//! Inside this module `a`, `b`, `c` are the symbols 0, 1, 2 of the ternary
//! alphabet, whatever their printed names.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::circular::{avg_count, canonicalize, cyclic_shift, m_equivalent, CircularWord};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::words::{parikh_vector, Alphabet, Symbol, Word};

const A: Symbol = 0;
const B: Symbol = 1;
const C: Symbol = 2;

/// Default node budget for [`rewrite_closure`].
pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    E1,
    E2,
    CE1,
    CE2,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::E1 => "E1",
            Rule::E2 => "E2",
            Rule::CE1 => "CE1",
            Rule::CE2 => "CE2",
        };
        f.write_str(s)
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rule> {
        match s.to_ascii_uppercase().as_str() {
            "E1" => Ok(Rule::E1),
            "E2" => Ok(Rule::E2),
            "CE1" => Ok(Rule::CE1),
            "CE2" => Ok(Rule::CE2),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

/// One site where CE1 or CE2 matches a rotation of a circular word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    /// Rotation of the canonical representative that carries the match.
    pub rotation: usize,
    pub x_len: usize,
    pub y_len: usize,
    /// The swapped letter for CE2 (`a` or `c`); `None` for CE1.
    pub alpha: Option<Symbol>,
    pub condition_lhs: i64,
    pub condition_rhs: i64,
    pub source: CircularWord,
    pub result: CircularWord,
}

impl RuleApplication {
    pub fn is_valid(&self) -> bool {
        self.condition_lhs == self.condition_rhs
    }

    /// Edge label used in DOT output.
    pub fn label(&self, alphabet: &Alphabet) -> String {
        match self.alpha {
            Some(a) => format!("{}@r={},α={}", self.rule, self.rotation, alphabet.name(a)),
            None => format!("{}@r={},|x|={}", self.rule, self.rotation, self.x_len),
        }
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let alpha = self.alpha.map(|a| format!(" alpha={}", alphabet.name(a))).unwrap_or_default();
        format!(
            "{} rotation={} |x|={} |y|={}{} condition {} {} {} -> {} {}",
            self.rule,
            self.rotation,
            self.x_len,
            self.y_len,
            alpha,
            self.condition_lhs,
            if self.is_valid() { "=" } else { "!=" },
            self.condition_rhs,
            alphabet.render_circular(&self.result),
            if self.is_valid() { "valid" } else { "invalid" },
        )
    }
}

fn count(w: &[Symbol], a: Symbol) -> i64 {
    w.iter().filter(|&&s| s == a).count() as i64
}

fn splice(parts: &[&[Symbol]]) -> Word {
    Word::new(parts.concat())
}

/// All words `x·ca·y` from `x·ac·y` and `x·ac·y` from `x·ca·y`.
pub fn apply_e1(alphabet: &Alphabet, w: &Word) -> Result<BTreeSet<Word>> {
    alphabet.require_size(3)?;
    alphabet.check(w)?;
    let s = w.symbols();
    let mut out = BTreeSet::new();
    for i in 0..s.len().saturating_sub(1) {
        if (s[i], s[i + 1]) == (A, C) || (s[i], s[i + 1]) == (C, A) {
            let mut v = s.to_vec();
            v.swap(i, i + 1);
            out.insert(Word::new(v));
        }
    }
    Ok(out)
}

/// All words `x·bα·y·αb·z` from `x·αb·y·bα·z` (and back) with `α ∈ {a, c}`
/// and `y ∈ {α, b}*`.
pub fn apply_e2(alphabet: &Alphabet, w: &Word) -> Result<BTreeSet<Word>> {
    alphabet.require_size(3)?;
    alphabet.check(w)?;
    let s = w.symbols();
    let n = s.len();
    let mut out = BTreeSet::new();
    for alpha in [A, C] {
        for (first, second) in [(alpha, B), (B, alpha)] {
            for i in 0..n.saturating_sub(3) {
                if (s[i], s[i + 1]) != (first, second) {
                    continue;
                }
                for j in i + 2..n - 1 {
                    let y = &s[i + 2..j];
                    if y.iter().any(|&l| l != alpha && l != B) {
                        break;
                    }
                    if (s[j], s[j + 1]) == (second, first) {
                        out.insert(splice(&[&s[..i], &[second, first], y, &[first, second], &s[j + 2..]]));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `|y|_b(|x|_a - |x|_c)` and `|x|_b(|y|_a - |y|_c)`.
pub fn ce1_condition(x: &[Symbol], y: &[Symbol]) -> (i64, i64) {
    (count(y, B) * (count(x, A) - count(x, C)), count(x, B) * (count(y, A) - count(y, C)))
}

/// `|x|_ᾱ(|y| + |y|_b + 3)` and `|y|_ᾱ(|x| + |x|_b + 3)`, `ᾱ` the letter of
/// `{a, c}` other than `alpha`.
pub fn ce2_condition(x: &[Symbol], y: &[Symbol], alpha: Symbol) -> (i64, i64) {
    let other = if alpha == A { C } else { A };
    (
        count(x, other) * (y.len() as i64 + count(y, B) + 3),
        count(y, other) * (x.len() as i64 + count(x, B) + 3),
    )
}

fn rotations(cw: &CircularWord) -> impl Iterator<Item = (usize, Word)> + '_ {
    let n = if cw.is_empty() { 0 } else { cw.class_size() };
    (0..n).map(move |r| (r, cyclic_shift(cw.canonical(), r)))
}

/// Every CE1 site `x·ac·y·ca` over the distinct rotations of `cw`, valid or
/// not.
pub fn find_ce1(alphabet: &Alphabet, cw: &CircularWord) -> Result<Vec<RuleApplication>> {
    alphabet.require_size(3)?;
    alphabet.check(cw.canonical())?;
    let mut out = Vec::new();
    for (rotation, r) in rotations(cw) {
        let s = r.symbols();
        let n = s.len();
        if n < 4 || (s[n - 2], s[n - 1]) != (C, A) {
            continue;
        }
        for i in 0..=n - 4 {
            if (s[i], s[i + 1]) != (A, C) {
                continue;
            }
            let (x, y) = (&s[..i], &s[i + 2..n - 2]);
            let (lhs, rhs) = ce1_condition(x, y);
            out.push(RuleApplication {
                rule: Rule::CE1,
                rotation,
                x_len: x.len(),
                y_len: y.len(),
                alpha: None,
                condition_lhs: lhs,
                condition_rhs: rhs,
                source: cw.clone(),
                result: canonicalize(&splice(&[x, &[C, A], y, &[A, C]])),
            });
        }
    }
    Ok(out)
}

/// Every CE2 site `x·αb·y·bα` (`α ∈ {a, c}`, `y` unrestricted) over the
/// distinct rotations of `cw`, valid or not.
pub fn find_ce2(alphabet: &Alphabet, cw: &CircularWord) -> Result<Vec<RuleApplication>> {
    alphabet.require_size(3)?;
    alphabet.check(cw.canonical())?;
    let mut out = Vec::new();
    for (rotation, r) in rotations(cw) {
        let s = r.symbols();
        let n = s.len();
        if n < 4 {
            continue;
        }
        for alpha in [A, C] {
            if (s[n - 2], s[n - 1]) != (B, alpha) {
                continue;
            }
            for i in 0..=n - 4 {
                if (s[i], s[i + 1]) != (alpha, B) {
                    continue;
                }
                let (x, y) = (&s[..i], &s[i + 2..n - 2]);
                let (lhs, rhs) = ce2_condition(x, y, alpha);
                out.push(RuleApplication {
                    rule: Rule::CE2,
                    rotation,
                    x_len: x.len(),
                    y_len: y.len(),
                    alpha: Some(alpha),
                    condition_lhs: lhs,
                    condition_rhs: rhs,
                    source: cw.clone(),
                    result: canonicalize(&splice(&[x, &[B, alpha], y, &[alpha, B]])),
                });
            }
        }
    }
    Ok(out)
}

/// Applications of the selected circular rules, in rule order.
pub fn find_applications(alphabet: &Alphabet, cw: &CircularWord, rules: &[Rule]) -> Result<Vec<RuleApplication>> {
    let mut out = Vec::new();
    for rule in rules {
        match rule {
            Rule::CE1 => out.extend(find_ce1(alphabet, cw)?),
            Rule::CE2 => out.extend(find_ce2(alphabet, cw)?),
            other => return Err(Error::InvalidArgument(format!("{other} is not a circular rule"))),
        }
    }
    Ok(out)
}

/// A naive use of a linear rule on circular words, with the witnessing
/// average counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveFailure {
    pub rule: Rule,
    pub left: CircularWord,
    pub right: CircularWord,
    pub pattern: Word,
    pub left_count: Rational,
    pub right_count: Rational,
    pub m_equivalent: bool,
}

/// Rewriting `[acb]` to `[cab]` by E1 and `[abbac]` to `[baabc]` by E2
/// breaks M-equivalence; `[abab]` against itself is the reflexive control.
pub fn naive_rule_failure_examples() -> Vec<NaiveFailure> {
    let sigma = Alphabet::latin(3);
    let p = |s: &str| sigma.parse_word(s).expect("fixed words");
    [(Rule::E1, "acb", "cab", "ab"), (Rule::E2, "abbac", "baabc", "abc"), (Rule::E1, "abab", "abab", "ab")]
        .into_iter()
        .map(|(rule, l, r, pat)| {
            let left = canonicalize(&p(l));
            let right = canonicalize(&p(r));
            let pattern = p(pat);
            NaiveFailure {
                rule,
                left_count: avg_count(&left, &pattern),
                right_count: avg_count(&right, &pattern),
                m_equivalent: m_equivalent(&sigma, &left, &right).expect("ternary words"),
                left,
                right,
                pattern,
            }
        })
        .collect()
}

/// Nodes are canonical circular words in discovery order; each undirected
/// pair of distinct nodes carries at most one edge.
#[derive(Clone, Debug)]
pub struct RewriteGraph {
    pub nodes: Vec<CircularWord>,
    pub edges: Vec<(usize, usize, RuleApplication)>,
    /// False when the node budget stopped the search early.
    pub complete: bool,
}

impl RewriteGraph {
    pub fn contains(&self, cw: &CircularWord) -> bool {
        self.nodes.contains(cw)
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("graph rewrite {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", alphabet.render_circular(n)));
        }
        for (a, b, app) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b} [label=\"{}\"];\n", app.label(alphabet)));
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `cw` under the valid applications of `rules`.
pub fn rewrite_closure(alphabet: &Alphabet, cw: &CircularWord, rules: &[Rule], max_nodes: usize) -> Result<RewriteGraph> {
    alphabet.require_size(3)?;
    let mut index: BTreeMap<CircularWord, usize> = BTreeMap::from([(cw.clone(), 0)]);
    let mut graph = RewriteGraph { nodes: vec![cw.clone()], edges: Vec::new(), complete: true };
    let mut seen_edges = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(from) = queue.pop_front() {
        let node = graph.nodes[from].clone();
        for app in find_applications(alphabet, &node, rules)? {
            if !app.is_valid() || app.result == node {
                continue;
            }
            let to = match index.get(&app.result) {
                Some(&i) => i,
                None => {
                    if graph.nodes.len() >= max_nodes {
                        graph.complete = false;
                        continue;
                    }
                    let i = graph.nodes.len();
                    index.insert(app.result.clone(), i);
                    graph.nodes.push(app.result.clone());
                    queue.push_back(i);
                    i
                }
            };
            if seen_edges.insert((from.min(to), from.max(to))) {
                graph.edges.push((from, to, app));
            }
        }
    }
    Ok(graph)
}

/// `[x·αβ·y·βα]` and `[x·βα·y·αβ]`.
pub fn swap_pair(x: &Word, y: &Word, alpha: Symbol, beta: Symbol) -> (CircularWord, CircularWord) {
    let (x, y) = (x.symbols(), y.symbols());
    (
        canonicalize(&splice(&[x, &[alpha, beta], y, &[beta, alpha]])),
        canonicalize(&splice(&[x, &[beta, alpha], y, &[alpha, beta]])),
    )
}

/// Whether `Ψ(x) = Ψ(y)`, which guarantees `[xαβyβα] ≡_M [xβαyαβ]`.
pub fn parikh_vector_sufficiency(alphabet: &Alphabet, x: &Word, y: &Word, alpha: Symbol, beta: Symbol) -> Result<bool> {
    alphabet.require_size(3)?;
    alphabet.check(x)?;
    alphabet.check(y)?;
    if alpha == beta || alpha > C || beta > C {
        return Err(Error::InvalidArgument("need two distinct letters of the alphabet".into()));
    }
    Ok(parikh_vector(alphabet, x) == parikh_vector(alphabet, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{count_subword, parikh_matrix};

    fn abc() -> Alphabet {
        Alphabet::latin(3)
    }

    fn w(s: &str) -> Word {
        abc().parse_word(s).unwrap()
    }

    fn cw(s: &str) -> CircularWord {
        canonicalize(&w(s))
    }

    #[test]
    fn e1_examples() {
        let out = apply_e1(&abc(), &w("bacbc")).unwrap();
        assert!(out.contains(&w("bcabc")));
        for v in &out {
            assert_eq!(parikh_matrix(&abc(), v), parikh_matrix(&abc(), &w("bacbc")));
        }
        assert!(apply_e1(&abc(), &w("abab")).unwrap().is_empty());
        assert!(apply_e1(&abc(), &Word::empty()).unwrap().is_empty());
        assert!(apply_e1(&Alphabet::latin(2), &Word::empty()).is_err());
    }

    #[test]
    fn e2_examples() {
        assert_eq!(apply_e2(&abc(), &w("abba")).unwrap(), BTreeSet::from([w("baab")]));
        assert_eq!(parikh_matrix(&abc(), &w("abba")), parikh_matrix(&abc(), &w("baab")));
        assert!(apply_e2(&abc(), &w("abca")).unwrap().is_empty());
        assert!(apply_e2(&abc(), &Word::empty()).unwrap().is_empty());
        // y = "c" is forbidden for α = a
        assert!(apply_e2(&abc(), &w("abcba")).unwrap().is_empty());
        assert!(apply_e2(&abc(), &w("cbabc")).unwrap().is_empty());
        assert_eq!(apply_e2(&abc(), &w("cbbbc")).unwrap(), BTreeSet::from([w("bcbcb")]));
        assert_eq!(apply_e2(&abc(), &w("baab")).unwrap(), BTreeSet::from([w("abba")]));
    }

    #[test]
    fn ce1_valid_site() {
        let c = cw("abacca");
        let rot = (0..6).find(|&r| cyclic_shift(c.canonical(), r) == w("abacca")).unwrap();
        let apps = find_ce1(&abc(), &c).unwrap();
        let hit = apps.iter().find(|a| a.x_len == 2 && a.y_len == 0 && a.rotation == rot).unwrap();
        assert_eq!((hit.condition_lhs, hit.condition_rhs), (0, 0));
        assert!(hit.is_valid());
        assert_eq!(hit.result, cw("abcaac"));
        assert!(m_equivalent(&abc(), &c, &hit.result).unwrap());
    }

    #[test]
    fn ce1_invalid_site() {
        let c = cw("bacaca");
        let apps = find_ce1(&abc(), &c).unwrap();
        let rot = (0..6).find(|&r| cyclic_shift(c.canonical(), r) == w("bacaca")).unwrap();
        let hit = apps.iter().find(|a| a.rotation == rot && a.x_len == 1).unwrap();
        assert_eq!((hit.condition_lhs, hit.condition_rhs), (0, 1));
        assert!(!hit.is_valid());
        assert_eq!(hit.result, cw("bcaaac"));
        assert!(!m_equivalent(&abc(), &c, &cw("bcaaac")).unwrap());
        assert!(find_ce1(&abc(), &cw("abab")).unwrap().is_empty());
    }

    #[test]
    fn ce2_sites() {
        let c = cw("cbabbcba");
        let rot = (0..8).find(|&r| cyclic_shift(c.canonical(), r) == w("cbabbcba")).unwrap();
        let apps = find_ce2(&abc(), &c).unwrap();
        let hit = apps.iter().find(|a| a.rotation == rot && a.x_len == 2 && a.alpha == Some(0)).unwrap();
        assert_eq!((hit.condition_lhs, hit.condition_rhs), (6, 6));
        assert_eq!(hit.result, cw("cbbabcab"));
        assert_ne!(hit.result, c);
        assert!(m_equivalent(&abc(), &c, &hit.result).unwrap());

        let c = cw("ccabcba");
        let rot = (0..7).find(|&r| cyclic_shift(c.canonical(), r) == w("ccabcba")).unwrap();
        let apps = find_ce2(&abc(), &c).unwrap();
        let hit = apps.iter().find(|a| a.rotation == rot && a.x_len == 2).unwrap();
        assert_eq!((hit.condition_lhs, hit.condition_rhs), (8, 5));
        assert!(!m_equivalent(&abc(), &c, &hit.result).unwrap());

        let apps = find_ce2(&abc(), &cw("abba")).unwrap();
        let hit = apps.iter().find(|a| a.x_len == 0 && a.y_len == 0).unwrap();
        assert!(hit.is_valid());
        assert_eq!(hit.result, cw("baab"));
        assert_eq!(hit.result, cw("abba"));
    }

    #[test]
    fn naive_failures() {
        let report = naive_rule_failure_examples();
        let q = |s: &str| s.parse::<Rational>().unwrap();
        assert_eq!((report[0].left_count.clone(), report[0].right_count.clone()), (q("1/3"), q("2/3")));
        assert!(!report[0].m_equivalent);
        assert_eq!((report[1].left_count.clone(), report[1].right_count.clone()), (q("2/5"), q("1")));
        assert!(!report[1].m_equivalent);
        assert!(report[2].m_equivalent);
    }

    #[test]
    fn closures() {
        let all = [Rule::CE1, Rule::CE2];
        let g = rewrite_closure(&abc(), &cw("aaaacbbc"), &all, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(g.nodes, vec![cw("aaaacbbc")]);
        assert!(g.edges.is_empty());
        assert!(m_equivalent(&abc(), &cw("aaaacbbc"), &cw("aaacbabc")).unwrap());
        let g = rewrite_closure(&abc(), &cw("aaacbabc"), &all, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(g.nodes.len(), 1);

        let g = rewrite_closure(&abc(), &cw("abacca"), &all, DEFAULT_MAX_NODES).unwrap();
        assert!(g.contains(&cw("abcaac")));
        assert!(g.complete);
        for (a, b, _) in &g.edges {
            assert!(m_equivalent(&abc(), &g.nodes[*a], &g.nodes[*b]).unwrap());
        }
        let dot = g.to_dot(&abc());
        assert!(dot.starts_with("graph rewrite {"));
        assert!(dot.contains("[aabacc]"));
        assert!(dot.contains("CE1@r="));

        let g = rewrite_closure(&abc(), &cw("abab"), &all, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(g.nodes.len(), 1);

        let g = rewrite_closure(&abc(), &cw("abacca"), &all, 1).unwrap();
        assert!(!g.complete);
        assert!(rewrite_closure(&abc(), &cw("abacca"), &[Rule::E1], 10).is_err());
    }

    #[test]
    fn sufficiency() {
        let a = abc();
        assert!(parikh_vector_sufficiency(&a, &w("ab"), &w("ba"), A, C).unwrap());
        let (l, r) = swap_pair(&w("ab"), &w("ba"), A, C);
        assert_eq!(l, cw("abacbaca"));
        assert!(m_equivalent(&a, &l, &r).unwrap());
        assert!(parikh_vector_sufficiency(&a, &Word::empty(), &Word::empty(), A, B).unwrap());
        let (l, r) = swap_pair(&Word::empty(), &Word::empty(), A, B);
        assert_eq!(l, r);
        assert!(!parikh_vector_sufficiency(&a, &w("a"), &w("b"), A, C).unwrap());
        assert!(parikh_vector_sufficiency(&a, &w("a"), &w("b"), A, A).is_err());
    }

    #[test]
    fn counting_delta_small() {
        // |xαbybαz|_abc - |xbαyαbz|_abc = |y|_ᾱ
        for (x, alpha, y, z) in [("c", A, "cc", "a"), ("", C, "aab", "b"), ("bca", A, "", "c")] {
            let (x, y, z) = (w(x), w(y), w(z));
            let other = if alpha == A { C } else { A };
            let l = splice(&[x.symbols(), &[alpha, B], y.symbols(), &[B, alpha], z.symbols()]);
            let r = splice(&[x.symbols(), &[B, alpha], y.symbols(), &[alpha, B], z.symbols()]);
            let d = num_bigint::BigInt::from(count_subword(&l, &w("abc")))
                - num_bigint::BigInt::from(count_subword(&r, &w("abc")));
            assert_eq!(d, num_bigint::BigInt::from(y.letter_count(other)));
        }
    }
}
