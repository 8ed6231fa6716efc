//! Base and multiplication table of the free metabelian algebra satisfying
//! right symmetry `(x,y,z) = (x,z,y)` and `x(y,z,t) = (y,z,xt)`.
//!
//! Base elements of degree at least 3 come in five kinds:
//!
//! | kind | denotes                         | symmetric in     |
//! |------|---------------------------------|------------------|
//! | T1   | `x(yz)`                         | nothing          |
//! | T2   | `(x, t1, t2)`                   | t1, t2           |
//! | T3   | `(x, y t1, t2)`                 | t1, t2           |
//! | T4   | `Tch(x, t1, t2, t3)`            | t1, t2, t3       |
//! | T5   | `(x t1) R_{t2} ... R_{tk}`, k>=4 | t1, ..., tk      |
//!
//! where `Tch(x,y,z,t) = (xy,z,t) - (y,xz,t) - 2(x,yz,t)`. T3 spans the
//! annihilator.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::element::{Element, TableAlgebra};
use crate::poly::{expand_sugar, MagmaPoly, PolyError, Sugar};
use crate::scalar::Field;
use crate::word::{distinct_permutations, Multidegree, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WnError {
    #[error("an R-word base element needs at least 4 symmetric indices, got {0}")]
    ShortRWord(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WnBasisElement {
    Gen(u32),
    /// `xy`; no symmetry.
    Pair(u32, u32),
    /// `x(yz)`
    T1(u32, u32, u32),
    /// `(x, t1, t2)`
    T2(u32, [u32; 2]),
    /// `(x, y t1, t2)`
    T3(u32, u32, [u32; 2]),
    /// `Tch(x, t1, t2, t3)`
    T4(u32, [u32; 3]),
    /// `(x t1) R_{t2} ... R_{tk}`
    T5(u32, Vec<u32>),
}

pub type WnElement = Element<WnBasisElement>;

use WnBasisElement::*;

impl WnBasisElement {
    /// Sorts the symmetric index groups. Idempotent.
    pub fn canonical(self) -> Result<WnBasisElement, WnError> {
        Ok(match self {
            T2(x, mut t) => {
                t.sort_unstable();
                T2(x, t)
            }
            T3(x, y, mut t) => {
                t.sort_unstable();
                T3(x, y, t)
            }
            T4(x, mut t) => {
                t.sort_unstable();
                T4(x, t)
            }
            T5(x, mut ts) => {
                if ts.len() < 4 {
                    return Err(WnError::ShortRWord(ts.len()));
                }
                ts.sort_unstable();
                T5(x, ts)
            }
            other => other,
        })
    }

    pub fn t2(x: u32, t1: u32, t2: u32) -> Self {
        T2(x, [t1, t2]).canonical().unwrap()
    }

    pub fn t3(x: u32, y: u32, t1: u32, t2: u32) -> Self {
        T3(x, y, [t1, t2]).canonical().unwrap()
    }

    pub fn t4(x: u32, t1: u32, t2: u32, t3: u32) -> Self {
        T4(x, [t1, t2, t3]).canonical().unwrap()
    }

    pub fn t5(x: u32, ts: &[u32]) -> Result<Self, WnError> {
        T5(x, ts.to_vec()).canonical()
    }

    pub fn degree(&self) -> usize {
        match self {
            Gen(_) => 1,
            Pair(..) => 2,
            T1(..) | T2(..) => 3,
            T3(..) | T4(..) => 4,
            T5(_, ts) => ts.len() + 1,
        }
    }

    fn tag(&self) -> u8 {
        match self {
            Gen(_) => 0,
            Pair(..) => 1,
            T1(..) => 2,
            T2(..) => 3,
            T3(..) => 4,
            T4(..) => 5,
            T5(..) => 6,
        }
    }

    /// All indices in positional order.
    pub fn indices(&self) -> Vec<u32> {
        match self {
            Gen(x) => vec![*x],
            Pair(x, y) => vec![*x, *y],
            T1(x, y, z) => vec![*x, *y, *z],
            T2(x, t) => vec![*x, t[0], t[1]],
            T3(x, y, t) => vec![*x, *y, t[0], t[1]],
            T4(x, t) => vec![*x, t[0], t[1], t[2]],
            T5(x, ts) => std::iter::once(*x).chain(ts.iter().copied()).collect(),
        }
    }

    pub fn is_annihilator(&self) -> bool {
        matches!(self, T3(..))
    }
}

impl Ord for WnBasisElement {
    /// Degree, then kind (Gen < Pair < T1 < ... < T5), then indices.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.tag())
            .cmp(&(other.degree(), other.tag()))
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for WnBasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WnBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen(x) => write!(f, "x{x}"),
            Pair(x, y) => write!(f, "x{x}*x{y}"),
            T1(x, y, z) => write!(f, "x{x}*(x{y}*x{z})"),
            T2(x, t) => write!(f, "A(x{x}, x{}, x{})", t[0], t[1]),
            T3(x, y, t) => write!(f, "A(x{x}, x{y}*x{}, x{})", t[0], t[1]),
            T4(x, t) => write!(f, "T(x{x},x{},x{},x{})", t[0], t[1], t[2]),
            T5(x, ts) => {
                let rest: Vec<String> = ts[1..].iter().map(|t| format!("x{t}")).collect();
                write!(f, "(x{x}*x{}) R[{}]", ts[0], rest.join(","))
            }
        }
    }
}

/// The multiplication table on canonical base elements.
pub fn wn_mul(a: &WnBasisElement, b: &WnBasisElement) -> WnElement {
    Element::from_terms(Field::Rational, Wn::mul_basis(a, b))
}

pub fn wn_eval(p: &MagmaPoly) -> Result<WnElement, PolyError> {
    crate::element::eval::<Wn>(p)
}

pub fn wn_basis(md: &Multidegree) -> Vec<WnBasisElement> {
    Wn::basis(md)
}

/// True iff every term lies in the span of the T3 elements.
pub fn is_annihilator(e: &WnElement) -> bool {
    e.terms().all(|(b, _)| b.is_annihilator())
}

#[derive(Clone, Copy, Debug)]
pub struct Wn;

impl TableAlgebra for Wn {
    type Basis = WnBasisElement;

    const NAME: &'static str = "wnov";

    fn generator(index: u32) -> WnBasisElement {
        Gen(index)
    }

    fn degree(b: &WnBasisElement) -> usize {
        b.degree()
    }

    fn mul_basis(a: &WnBasisElement, b: &WnBasisElement) -> Vec<(WnBasisElement, i64)> {
        type B = WnBasisElement;
        match (a, b) {
            // left actions of a generator q
            (Gen(q), Gen(x)) => vec![(Pair(*q, *x), 1)],
            (Gen(q), Pair(y, z)) => vec![(T1(*q, *y, *z), 1)],
            // q . x(yz) = -(q, y x, z)
            (Gen(q), T1(x, y, z)) => vec![(B::t3(*q, *y, *x, *z), -1)],
            // q . (x, t1, t2) = (x, q t1, t2)
            (Gen(q), T2(x, t)) => vec![(B::t3(*x, *q, t[0], t[1]), 1)],
            // right actions of a generator y
            (Pair(x, z), Gen(y)) => vec![(B::t2(*x, *z, *y), 1), (T1(*x, *z, *y), 1)],
            // x(zt) . y = (x, [z,t], y) + (z, xt, y)
            (T1(x, z, t), Gen(y)) => vec![(B::t3(*x, *z, *t, *y), 1), (B::t3(*x, *t, *z, *y), -1), (B::t3(*z, *x, *t, *y), 1)],
            // (x, t1, t2) . y = Tch(x, t1, t2, y) + (x, t1 o t2, y)
            (T2(x, t), Gen(y)) => vec![
                (B::t4(*x, t[0], t[1], *y), 1),
                (B::t3(*x, t[0], t[1], *y), 1),
                (B::t3(*x, t[1], t[0], *y), 1),
            ],
            (T4(x, t), Gen(y)) => vec![(B::t5(*x, &[t[0], t[1], t[2], *y]).unwrap(), 1)],
            (T5(x, ts), Gen(y)) => {
                let mut all = ts.clone();
                all.push(*y);
                vec![(B::t5(*x, &all).unwrap(), 1)]
            }
            _ => Vec::new(),
        }
        .into_iter()
        .fold(Vec::<(WnBasisElement, i64)>::new(), |mut acc, (e, k)| {
            // collapse coincident terms that appear when indices repeat
            match acc.iter_mut().find(|(f, _)| *f == e) {
                Some(slot) => slot.1 += k,
                None => acc.push((e, k)),
            }
            acc.retain(|(_, k)| *k != 0);
            acc
        })
    }

    fn basis(md: &Multidegree) -> Vec<WnBasisElement> {
        let letters = md.letters();
        let mut out = BTreeSet::new();
        let distinct: BTreeSet<u32> = letters.iter().copied().collect();
        let rest_without = |x: u32| {
            let mut r = letters.clone();
            let p = r.iter().position(|&g| g == x).unwrap();
            r.remove(p);
            r
        };
        match letters.len() {
            0 => {}
            1 => {
                out.insert(Gen(letters[0]));
            }
            2 => {
                for p in distinct_permutations(&letters) {
                    out.insert(Pair(p[0], p[1]));
                }
            }
            3 => {
                for p in distinct_permutations(&letters) {
                    out.insert(T1(p[0], p[1], p[2]));
                    out.insert(Self::Basis::t2(p[0], p[1], p[2]));
                }
            }
            4 => {
                for p in distinct_permutations(&letters) {
                    out.insert(Self::Basis::t3(p[0], p[1], p[2], p[3]));
                }
                for &x in &distinct {
                    let r = rest_without(x);
                    out.insert(Self::Basis::t4(x, r[0], r[1], r[2]));
                }
            }
            _ => {
                for &x in &distinct {
                    out.insert(Self::Basis::t5(x, &rest_without(x)).unwrap());
                }
            }
        }
        out.into_iter().collect()
    }

    fn multidegree(b: &WnBasisElement) -> Multidegree {
        let mut m = std::collections::BTreeMap::new();
        for g in b.indices() {
            *m.entry(g).or_insert(0) += 1;
        }
        Multidegree::from_counts(m)
    }

    fn representative(b: &WnBasisElement) -> MagmaPoly {
        let g = |k: u32| MagmaPoly::gen(k);
        let w = |k: u32| Word::gen(k);
        let word = |x: Word| MagmaPoly::word(x, Field::Rational);
        match b {
            Gen(x) => g(*x),
            Pair(x, y) => word(w(*x).mul(&w(*y))),
            T1(x, y, z) => word(w(*x).mul(&w(*y).mul(&w(*z)))),
            T2(x, t) => expand_sugar(Sugar::Associator, &[g(*x), g(t[0]), g(t[1])]).unwrap(),
            T3(x, y, t) => {
                let yt = word(w(*y).mul(&w(t[0])));
                expand_sugar(Sugar::Associator, &[g(*x), yt, g(t[1])]).unwrap()
            }
            T4(x, t) => expand_sugar(Sugar::Tch, &[g(*x), g(t[0]), g(t[1]), g(t[2])]).unwrap(),
            T5(x, ts) => {
                let factors: Vec<Word> = std::iter::once(*x).chain(ts.iter().copied()).map(w).collect();
                word(Word::right_normed(&factors).unwrap())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_expr;

    fn eval_str(s: &str) -> String {
        wn_eval(&parse_expr(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn canonicalization() {
        assert_eq!(T3(1, 2, [5, 3]).canonical().unwrap(), T3(1, 2, [3, 5]));
        assert_eq!(T4(1, [4, 2, 3]).canonical().unwrap(), T4(1, [2, 3, 4]));
        let t5 = T5(3, vec![5, 1, 4, 2]).canonical().unwrap();
        assert_eq!(t5, T5(3, vec![1, 2, 4, 5]));
        assert_eq!(t5.to_string(), "(x3*x1) R[x2,x4,x5]");
        assert_eq!(T5(1, vec![2, 3, 4]).canonical(), Err(WnError::ShortRWord(3)));
        let c = T4(1, [4, 2, 3]).canonical().unwrap();
        assert_eq!(c.clone().canonical().unwrap(), c);
    }

    #[test]
    fn table_examples() {
        assert_eq!(wn_mul(&Gen(1), &T1(2, 3, 4)).to_string(), "-1 A(x1, x3*x2, x4)");
        assert_eq!(
            wn_mul(&WnBasisElement::t2(1, 2, 3), &Gen(4)).to_string(),
            "A(x1, x2*x3, x4) + A(x1, x3*x2, x4) + T(x1,x2,x3,x4)"
        );
        assert_eq!(wn_mul(&WnBasisElement::t4(1, 2, 3, 4), &Gen(5)).to_string(), "(x1*x2) R[x3,x4,x5]");
        assert!(wn_mul(&Pair(1, 2), &Pair(3, 4)).is_zero());
        assert!(wn_mul(&WnBasisElement::t3(1, 2, 3, 4), &Gen(5)).is_zero());
        assert!(wn_mul(&Gen(5), &WnBasisElement::t3(1, 2, 3, 4)).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval_str("(x1*x2)*(x3*x4)"), "0");
        assert_eq!(eval_str("x1*(x2*(x3*x4))"), "-1 A(x1, x3*x2, x4)");
        assert_eq!(
            eval_str("((x1*x2)*x3)*x4"),
            "2 A(x1, x2*x3, x4) + A(x2, x1*x3, x4) + T(x1,x2,x3,x4)"
        );
    }

    #[test]
    fn basis_counts() {
        let c = |v: &[u32]| wn_basis(&Multidegree::from_multiplicities(v)).len();
        assert_eq!(c(&[1, 1]), 2);
        assert_eq!(c(&[1, 1, 1]), 9);
        assert_eq!(c(&[1, 1, 1, 1]), 16);
        assert_eq!(c(&[1, 1, 1, 1, 1]), 5);
        // (x, t, t) is a base element
        assert_eq!(c(&[1, 2]), 5);
        let four = wn_basis(&Multidegree::multilinear(4));
        assert_eq!(four.iter().filter(|b| matches!(b, T3(..))).count(), 12);
    }

    #[test]
    fn annihilator_predicate() {
        let e = Element::basis(WnBasisElement::t3(1, 2, 3, 4), Field::Rational);
        assert!(is_annihilator(&e));
        assert!(!is_annihilator(&Element::basis(Pair(1, 2), Field::Rational)));
        assert!(is_annihilator(&WnElement::zero(Field::Rational)));
    }

    #[test]
    fn representatives_evaluate_to_themselves() {
        for n in 1..=6 {
            for b in wn_basis(&Multidegree::multilinear(n)) {
                let v = wn_eval(&Wn::representative(&b)).unwrap();
                assert_eq!(v, Element::basis(b.clone(), Field::Rational), "{b}");
            }
        }
        for b in wn_basis(&Multidegree::from_multiplicities(&[2, 2])) {
            assert_eq!(
                wn_eval(&Wn::representative(&b)).unwrap(),
                Element::basis(b.clone(), Field::Rational)
            );
        }
    }
}
