//! Monomial basis and multiplication table of the free metabelian algebra
//! satisfying `x(y,z,t) = (y,z,xt)` (no right symmetry).
//!
//! A basis monomial `x_i L_{j1}...L_{jn} R_{k1}...R_{kt}` is read left to
//! right as operators applied to `x_i`, so `x_i L_j = x_j x_i` and
//! `x_i L_j R_k = (x_j x_i) x_k`. For `n >= 4` the L-indices are only
//! defined up to even permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::element::{Element, TableAlgebra};
use crate::poly::{MagmaPoly, PolyError};
use crate::scalar::Field;
use crate::word::{distinct_permutations, Multidegree, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WlcMonomial {
    base: u32,
    lpart: Vec<u32>,
    rpart: Vec<u32>,
}

pub type WlcElement = Element<WlcMonomial>;

/// Canonical representative of the orbit of `seq` under even permutations.
///
/// Sequences shorter than 4 are returned unchanged. Otherwise the sorted
/// sequence is the representative of the even coset (and of the single coset
/// when an index repeats), and the sorted sequence with its last two entries
/// swapped represents the odd coset.
pub fn canonicalize_l(seq: &[u32]) -> Vec<u32> {
    if seq.len() < 4 {
        return seq.to_vec();
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
    if repeated || is_even(seq) {
        return sorted;
    }
    let n = sorted.len();
    sorted.swap(n - 2, n - 1);
    sorted
}

/// Parity of a sequence of distinct values relative to its sorted order.
fn is_even(seq: &[u32]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

impl WlcMonomial {
    pub fn generator(base: u32) -> WlcMonomial {
        WlcMonomial {
            base,
            lpart: Vec::new(),
            rpart: Vec::new(),
        }
    }

    /// Builds a canonical monomial. Monomials of degree at least 2 need a
    /// nonempty L-part; `None` otherwise.
    pub fn new(base: u32, lpart: &[u32], rpart: &[u32]) -> Option<WlcMonomial> {
        if lpart.is_empty() && !rpart.is_empty() {
            return None;
        }
        Some(WlcMonomial {
            base,
            lpart: canonicalize_l(lpart),
            rpart: rpart.to_vec(),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn lpart(&self) -> &[u32] {
        &self.lpart
    }

    pub fn rpart(&self) -> &[u32] {
        &self.rpart
    }

    pub fn degree(&self) -> usize {
        1 + self.lpart.len() + self.rpart.len()
    }

    fn with_l(&self, q: u32) -> WlcMonomial {
        let mut l = self.lpart.clone();
        l.push(q);
        WlcMonomial {
            base: self.base,
            lpart: canonicalize_l(&l),
            rpart: self.rpart.clone(),
        }
    }

    fn with_r(&self, q: u32) -> WlcMonomial {
        let mut r = self.rpart.clone();
        r.push(q);
        WlcMonomial {
            base: self.base,
            lpart: self.lpart.clone(),
            rpart: r,
        }
    }

    fn sort_key(&self) -> (usize, usize, u32, &[u32], &[u32]) {
        (self.degree(), self.rpart.len(), self.base, &self.lpart, &self.rpart)
    }
}

impl Ord for WlcMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for WlcMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn index_list(ix: &[u32]) -> String {
    ix.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for WlcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.base)?;
        if !self.lpart.is_empty() {
            write!(f, " L[{}]", index_list(&self.lpart))?;
        }
        if !self.rpart.is_empty() {
            write!(f, " R[{}]", index_list(&self.rpart))?;
        }
        Ok(())
    }
}

/// The multiplication table on canonical monomials.
pub fn wlc_mul(a: &WlcMonomial, b: &WlcMonomial) -> WlcElement {
    Element::from_terms(Field::Rational, Wlc::mul_basis(a, b))
}

/// Evaluates a polynomial on generators into canonical coordinates.
pub fn wlc_eval(p: &MagmaPoly) -> Result<WlcElement, PolyError> {
    crate::element::eval::<Wlc>(p)
}

pub fn wlc_basis(md: &Multidegree) -> Vec<WlcMonomial> {
    Wlc::basis(md)
}

/// Marker type for the table algebra.
#[derive(Clone, Copy, Debug)]
pub struct Wlc;

impl TableAlgebra for Wlc {
    type Basis = WlcMonomial;

    const NAME: &'static str = "wlc";

    fn generator(index: u32) -> WlcMonomial {
        WlcMonomial::generator(index)
    }

    fn degree(b: &WlcMonomial) -> usize {
        b.degree()
    }

    fn mul_basis(a: &WlcMonomial, b: &WlcMonomial) -> Vec<(WlcMonomial, i64)> {
        match (a.degree(), b.degree()) {
            (1, 1) => vec![(b.with_l(a.base), 1)],
            (1, _) if b.rpart.is_empty() => vec![(b.with_l(a.base), 1)],
            (1, _) if b.lpart.len() == 1 && b.rpart.len() == 1 => {
                // x_q . x_i L_j R_k = x_k L_i L_j L_q - x_k L_q L_i L_j
                let (q, i, j, k) = (a.base, b.base, b.lpart[0], b.rpart[0]);
                let first = WlcMonomial {
                    base: k,
                    lpart: vec![i, j, q],
                    rpart: Vec::new(),
                };
                let second = WlcMonomial {
                    base: k,
                    lpart: vec![q, i, j],
                    rpart: Vec::new(),
                };
                if first == second {
                    Vec::new()
                } else {
                    vec![(first, 1), (second, -1)]
                }
            }
            (d, 1) if d >= 2 => vec![(a.with_r(b.base), 1)],
            _ => Vec::new(),
        }
    }

    fn basis(md: &Multidegree) -> Vec<WlcMonomial> {
        let letters = md.letters();
        if letters.is_empty() {
            return Vec::new();
        }
        if letters.len() == 1 {
            return vec![WlcMonomial::generator(letters[0])];
        }
        let mut out = BTreeSet::new();
        let bases: BTreeSet<u32> = letters.iter().copied().collect();
        for base in bases {
            let mut rest = letters.clone();
            let pos = rest.iter().position(|&g| g == base).unwrap();
            rest.remove(pos);
            for seq in distinct_permutations(&rest) {
                for n in 1..=seq.len() {
                    out.insert(WlcMonomial::new(base, &seq[..n], &seq[n..]).unwrap());
                }
            }
        }
        out.into_iter().collect()
    }

    fn multidegree(b: &WlcMonomial) -> Multidegree {
        let mut m = BTreeMap::new();
        for g in std::iter::once(&b.base).chain(&b.lpart).chain(&b.rpart) {
            *m.entry(*g).or_insert(0) += 1;
        }
        Multidegree::from_counts(m)
    }

    fn representative(b: &WlcMonomial) -> MagmaPoly {
        let mut w = Word::gen(b.base);
        for &l in &b.lpart {
            w = Word::gen(l).mul(&w);
        }
        for &r in &b.rpart {
            w = w.mul(&Word::gen(r));
        }
        MagmaPoly::word(w, Field::Rational)
    }
}
