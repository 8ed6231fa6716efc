//! Free nonassociative words stored as prefix (Polish) token strings.
//!
//! Token encoding: `0` is a product node, `1` is the context hole used by the
//! oracle, generator `x_k` is `2k` and formal variable `v_k` is `2k + 1`.
//! Structural equality of trees is then plain slice equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) const MUL: u32 = 0;
pub(crate) const HOLE: u32 = 1;

/// A leaf symbol. Generators and identity variables share the index space
/// but never compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    Gen(u32),
    Var(u32),
}

impl Letter {
    pub(crate) fn token(self) -> u32 {
        match self {
            Letter::Gen(k) => 2 * k,
            Letter::Var(k) => 2 * k + 1,
        }
    }

    pub(crate) fn from_token(t: u32) -> Option<Letter> {
        match t {
            MUL | HOLE => None,
            t if t % 2 == 0 => Some(Letter::Gen(t / 2)),
            t => Some(Letter::Var(t / 2)),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Letter::Gen(k) | Letter::Var(k) => k,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(k) => write!(f, "x{k}"),
            Letter::Var(k) => write!(f, "v{k}"),
        }
    }
}

/// Borrowed view of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WordRef<'a>(pub(crate) &'a [u32]);

impl<'a> WordRef<'a> {
    pub fn degree(self) -> usize {
        self.0.len().div_ceil(2)
    }

    pub fn letter(self) -> Option<Letter> {
        if self.0.len() == 1 {
            Letter::from_token(self.0[0])
        } else {
            None
        }
    }

    pub fn is_leaf(self) -> bool {
        self.0.len() == 1
    }

    /// Left and right factors of a product node.
    pub fn split(self) -> Option<(WordRef<'a>, WordRef<'a>)> {
        if self.0.len() < 3 {
            return None;
        }
        let end = subtree_end(self.0, 1);
        Some((WordRef(&self.0[1..end]), WordRef(&self.0[end..])))
    }

    pub fn to_word(self) -> Word {
        Word { code: self.0.into() }
    }
}

/// Index one past the subtree starting at `start`.
pub(crate) fn subtree_end(code: &[u32], start: usize) -> usize {
    let mut need = 1usize;
    let mut i = start;
    while need > 0 {
        if code[i] == MUL {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

/// A bracketed word in the free magma.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    code: Box<[u32]>,
}

impl Word {
    pub fn leaf(letter: Letter) -> Word {
        Word {
            code: vec![letter.token()].into(),
        }
    }

    pub fn gen(k: u32) -> Word {
        Word::leaf(Letter::Gen(k))
    }

    pub fn var(k: u32) -> Word {
        Word::leaf(Letter::Var(k))
    }

    pub(crate) fn from_code(code: Vec<u32>) -> Word {
        debug_assert!(!code.is_empty() && subtree_end(&code, 0) == code.len());
        Word { code: code.into() }
    }

    pub(crate) fn code(&self) -> &[u32] {
        &self.code
    }

    /// The tree join `(self * other)`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut code = Vec::with_capacity(1 + self.code.len() + other.code.len());
        code.push(MUL);
        code.extend_from_slice(&self.code);
        code.extend_from_slice(&other.code);
        Word { code: code.into() }
    }

    pub fn as_ref(&self) -> WordRef<'_> {
        WordRef(&self.code)
    }

    pub fn degree(&self) -> usize {
        self.as_ref().degree()
    }

    pub fn is_leaf(&self) -> bool {
        self.code.len() == 1
    }

    pub fn letter(&self) -> Option<Letter> {
        self.as_ref().letter()
    }

    pub fn split(&self) -> Option<(Word, Word)> {
        self.as_ref().split().map(|(l, r)| (l.to_word(), r.to_word()))
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> impl Iterator<Item = Letter> + '_ {
        self.code.iter().filter_map(|&t| Letter::from_token(t))
    }

    pub fn letter_counts(&self) -> BTreeMap<Letter, u32> {
        let mut m = BTreeMap::new();
        for l in self.leaves() {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    /// Left-normed product `w1(w2(...(w_{k-1} w_k)...))`.
    pub fn left_normed(factors: &[Word]) -> Option<Word> {
        let (last, rest) = factors.split_last()?;
        Some(rest.iter().rev().fold(last.clone(), |acc, w| w.mul(&acc)))
    }

    /// Right-normed product `((w1 w2) w3) ... w_k`.
    pub fn right_normed(factors: &[Word]) -> Option<Word> {
        let (first, rest) = factors.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, w| acc.mul(w)))
    }
}

impl Ord for Word {
    /// Degree, then shape in preorder (node before leaf), then leaf sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.code
            .len()
            .cmp(&other.code.len())
            .then_with(|| {
                let a = self.code.iter().map(|&t| t != MUL);
                let b = other.code.iter().map(|&t| t != MUL);
                a.cmp(b)
            })
            .then_with(|| {
                let a = self.code.iter().filter(|&&t| t != MUL);
                let b = other.code.iter().filter(|&&t| t != MUL);
                a.cmp(b)
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_code(code: &[u32], top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let w = WordRef(code);
    match w.split() {
        None => match Letter::from_token(code[0]) {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "_"),
        },
        Some((l, r)) => {
            if !top {
                write!(f, "(")?;
            }
            fmt_code(l.0, false, f)?;
            write!(f, "*")?;
            fmt_code(r.0, false, f)?;
            if !top {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Word {
    /// Products print as `a*b`; nested products are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_code(&self.code, true, f)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Multiplicity of each generator in a homogeneous component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multidegree {
    counts: BTreeMap<u32, u32>,
}

impl Multidegree {
    /// `[a, b, c]` means `x1` with multiplicity `a`, `x2` with `b`, ...
    /// Zero entries are skipped.
    pub fn from_multiplicities(m: &[u32]) -> Multidegree {
        let counts = m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as u32 + 1, c))
            .collect();
        Multidegree { counts }
    }

    pub fn multilinear(n: u32) -> Multidegree {
        Multidegree::from_multiplicities(&vec![1; n as usize])
    }

    pub fn from_counts(counts: BTreeMap<u32, u32>) -> Multidegree {
        Multidegree {
            counts: counts.into_iter().filter(|&(g, c)| g > 0 && c > 0).collect(),
        }
    }

    pub fn of_word(w: &Word) -> (Multidegree, BTreeMap<u32, u32>) {
        let mut gens = BTreeMap::new();
        let mut vars = BTreeMap::new();
        for l in w.leaves() {
            match l {
                Letter::Gen(k) => *gens.entry(k).or_insert(0) += 1,
                Letter::Var(k) => *vars.entry(k).or_insert(0) += 1,
            }
        }
        (Multidegree { counts: gens }, vars)
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }

    pub fn counts(&self) -> &BTreeMap<u32, u32> {
        &self.counts
    }

    pub fn get(&self, g: u32) -> u32 {
        self.counts.get(&g).copied().unwrap_or(0)
    }

    /// Sorted generator tokens with repetition.
    pub(crate) fn tokens(&self) -> Vec<u32> {
        self.counts
            .iter()
            .flat_map(|(&g, &c)| std::iter::repeat_n(Letter::Gen(g).token(), c as usize))
            .collect()
    }

    /// Sorted generator indices with repetition.
    pub fn letters(&self) -> Vec<u32> {
        self.counts.iter().flat_map(|(&g, &c)| std::iter::repeat_n(g, c as usize)).collect()
    }

    /// All multidegrees of the given total degree up to relabelling of
    /// generators: one per integer partition, largest part first.
    pub fn partitions(n: u32) -> Vec<Multidegree> {
        fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=max.min(n)).rev() {
                cur.push(part);
                go(n - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.iter().map(|p| Multidegree::from_multiplicities(p)).collect()
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(g, c)| format!("x{g}^{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Prefix shape codes (MUL / leaf placeholder `u32::MAX`) of all binary
/// trees with `n` leaves.
pub(crate) fn shapes(n: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![u32::MAX]];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let left = shapes(k);
        let right = shapes(n - k);
        for l in &left {
            for r in &right {
                let mut s = Vec::with_capacity(2 * n - 1);
                s.push(MUL);
                s.extend_from_slice(l);
                s.extend_from_slice(r);
                out.push(s);
            }
        }
    }
    out
}

/// All distinct orderings of a multiset, in lexicographic order.
pub(crate) fn distinct_permutations(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = sorted.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next_permutation
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Every word whose leaves are exactly the multiset `tokens`, sorted.
pub(crate) fn words_over_tokens(tokens: &[u32]) -> Vec<Word> {
    if tokens.is_empty() {
        return Vec::new();
    }
    let perms = distinct_permutations(tokens);
    let mut out = Vec::new();
    for shape in shapes(tokens.len()) {
        for p in &perms {
            let mut leaves = p.iter();
            let code: Vec<u32> = shape
                .iter()
                .map(|&s| if s == MUL { MUL } else { *leaves.next().unwrap() })
                .collect();
            out.push(Word::from_code(code));
        }
    }
    out.sort();
    out
}

/// All bracketed words of multidegree `md`: Catalan(n-1) shapes times every
/// distinct arrangement of the letters, in the canonical word order.
pub fn enumerate_words(md: &Multidegree) -> Vec<Word> {
    words_over_tokens(&md.tokens())
}

pub fn catalan(n: u64) -> u64 {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_display() {
        let w = Word::gen(1).mul(&Word::gen(2).mul(&Word::gen(3)));
        assert_eq!(w.to_string(), "x1*(x2*x3)");
        let (l, r) = w.split().unwrap();
        assert_eq!(l, Word::gen(1));
        assert_eq!(r.to_string(), "x2*x3");
        assert_eq!(w.degree(), 3);
    }

    #[test]
    fn small_enumerations() {
        let md = Multidegree::multilinear(2);
        let ws = enumerate_words(&md);
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].to_string(), "x1*x2");
        assert_eq!(ws[1].to_string(), "x2*x1");
        assert_eq!(enumerate_words(&Multidegree::multilinear(3)).len(), 12);
        assert_eq!(enumerate_words(&Multidegree::multilinear(4)).len(), 120);
        assert_eq!(enumerate_words(&Multidegree::from_multiplicities(&[2, 1])).len(), 6);
    }

    #[test]
    fn order_is_degree_then_shape_then_leaves() {
        let a = Word::gen(2).mul(&Word::gen(1)).mul(&Word::gen(3)); // (x2x1)x3
        let b = Word::gen(1).mul(&Word::gen(2).mul(&Word::gen(3))); // x1(x2x3)
        assert!(a < b);
        assert!(Word::gen(9) < Word::gen(1).mul(&Word::gen(1)));
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn contexts_contain_one_hole() {
        let mut tokens = Multidegree::multilinear(1).tokens();
        tokens.push(HOLE);
        tokens.sort_unstable();
        let cs = words_over_tokens(&tokens);
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.code().iter().filter(|&&t| t == HOLE).count() == 1));
        assert_eq!(words_over_tokens(&[HOLE]).len(), 1);
    }

    #[test]
    fn partitions_of_five() {
        let ps = Multidegree::partitions(5);
        assert_eq!(ps.len(), 7);
        assert_eq!(ps[0], Multidegree::from_multiplicities(&[5]));
        assert_eq!(ps[6], Multidegree::multilinear(5));
    }
}
