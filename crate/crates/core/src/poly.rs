//! Linear combinations of free-magma words with exact coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::{Field, Scalar, ScalarError};
use crate::word::{Letter, Multidegree, Word, WordRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("variable v{0} has no assignment")]
    Unassigned(u32),
    #[error("{name} takes {expected} arguments, got {got}")]
    Arity { name: &'static str, expected: usize, got: usize },
    #[error("polynomial is not multihomogeneous")]
    NotHomogeneous,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MagmaPoly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl MagmaPoly {
    pub fn zero(field: Field) -> MagmaPoly {
        MagmaPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: Word, field: Field) -> MagmaPoly {
        MagmaPoly::monomial(w, Scalar::one(field))
    }

    pub fn monomial(w: Word, c: Scalar) -> MagmaPoly {
        let mut p = MagmaPoly::zero(c.field());
        p.add_term(w, c);
        p
    }

    pub fn gen(k: u32) -> MagmaPoly {
        MagmaPoly::word(Word::gen(k), Field::Rational)
    }

    pub fn var(k: u32) -> MagmaPoly {
        MagmaPoly::word(Word::var(k), Field::Rational)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Adds `c * w` in place. Panics if `c` lives in a different field.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_field(&self, other: &MagmaPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field).into());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MagmaPoly) -> Result<MagmaPoly, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MagmaPoly) -> Result<MagmaPoly, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> MagmaPoly {
        MagmaPoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> MagmaPoly {
        let mut out = MagmaPoly::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Bilinear extension of the tree join.
    pub fn magma_mul(&self, other: &MagmaPoly) -> Result<MagmaPoly, PolyError> {
        self.check_field(other)?;
        let mut out = MagmaPoly::zero(self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Maps every coefficient into `field` (rationals reduce mod p).
    pub fn to_field(&self, field: Field) -> Result<MagmaPoly, PolyError> {
        let mut out = MagmaPoly::zero(field);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), Scalar::from_rational(field, &c.to_rational())?);
        }
        Ok(out)
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.letters()
            .into_iter()
            .filter_map(|l| match l {
                Letter::Var(k) => Some(k),
                Letter::Gen(_) => None,
            })
            .collect()
    }

    pub fn generators(&self) -> BTreeSet<u32> {
        self.letters()
            .into_iter()
            .filter_map(|l| match l {
                Letter::Gen(k) => Some(k),
                Letter::Var(_) => None,
            })
            .collect()
    }

    fn letters(&self) -> BTreeSet<Letter> {
        self.terms.keys().flat_map(|w| w.leaves()).collect()
    }

    /// Letter counts shared by every term, or `NotHomogeneous`.
    pub fn letter_degree(&self) -> Result<BTreeMap<Letter, u32>, PolyError> {
        let mut it = self.terms.keys().map(|w| w.letter_counts());
        let first = it.next().unwrap_or_default();
        if it.all(|m| m == first) {
            Ok(first)
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    /// Generator multidegree; every term must agree and contain no variables.
    pub fn multidegree(&self) -> Result<Multidegree, PolyError> {
        let counts = self.letter_degree()?;
        if counts.keys().any(|l| matches!(l, Letter::Var(_))) {
            return Err(PolyError::NotHomogeneous);
        }
        Ok(Multidegree::from_counts(counts.into_iter().map(|(l, c)| (l.index(), c)).collect()))
    }

    pub fn is_multilinear(&self) -> bool {
        matches!(self.letter_degree(), Ok(m) if m.values().all(|&c| c == 1))
    }

    /// Simultaneous substitution of every variable, expanded and collected.
    /// Generators are left in place.
    pub fn substitute(&self, assignment: &BTreeMap<u32, MagmaPoly>) -> Result<MagmaPoly, PolyError> {
        for p in assignment.values() {
            self.check_field(p)?;
        }
        let mut out = MagmaPoly::zero(self.field);
        for (w, c) in &self.terms {
            let v = subst_word(w.as_ref(), assignment, self.field)?;
            out = out.checked_add(&v.scale(c))?;
        }
        Ok(out)
    }

    /// Replaces every `Var(k)` leaf by `Gen(k)`, turning an identity into a
    /// concrete polynomial on generators, or the reverse.
    pub fn rename_letters(&self, f: impl Fn(Letter) -> Letter) -> MagmaPoly {
        let mut out = MagmaPoly::zero(self.field);
        for (w, c) in &self.terms {
            let code: Vec<u32> = w
                .code()
                .iter()
                .map(|&t| Letter::from_token(t).map_or(t, |l| f(l).token()))
                .collect();
            out.add_term(Word::from_code(code), c.clone());
        }
        out
    }

    /// Full linearization in the variables. The input must be homogeneous in
    /// each variable; a variable of degree `d` is replaced by `d` fresh
    /// variables and the result summed over all placements. Equivalent to
    /// the original identity when the characteristic is 0 or exceeds every
    /// variable degree.
    pub fn linearize(&self) -> Result<MagmaPoly, PolyError> {
        let deg = self.letter_degree()?;
        if deg.iter().all(|(l, &c)| matches!(l, Letter::Gen(_)) || c == 1) {
            return Ok(self.clone());
        }
        // Fresh variable blocks, numbered consecutively from 1.
        let mut blocks: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut next = 1u32;
        for (l, &c) in &deg {
            if let Letter::Var(k) = l {
                blocks.insert(*k, (next..next + c).collect());
                next += c;
            }
        }
        let mut out = MagmaPoly::zero(self.field);
        for (w, c) in &self.terms {
            let code = w.code().to_vec();
            // positions of each variable's occurrences
            let mut positions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (i, &t) in code.iter().enumerate() {
                if let Some(Letter::Var(k)) = Letter::from_token(t) {
                    positions.entry(k).or_default().push(i);
                }
            }
            let vars: Vec<u32> = positions.keys().copied().collect();
            let mut acc = vec![code];
            for k in vars {
                let pos = &positions[&k];
                let fresh = &blocks[&k];
                let mut next_acc = Vec::new();
                for base in &acc {
                    for perm in permutations(fresh.len()) {
                        let mut cw = base.clone();
                        for (slot, &pi) in pos.iter().zip(&perm) {
                            cw[*slot] = Letter::Var(fresh[pi]).token();
                        }
                        next_acc.push(cw);
                    }
                }
                acc = next_acc;
            }
            for cw in acc {
                out.add_term(Word::from_code(cw), c.clone());
            }
        }
        Ok(out)
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let idx: Vec<u32> = (0..n as u32).collect();
    crate::word::distinct_permutations(&idx)
        .into_iter()
        .map(|p| p.into_iter().map(|i| i as usize).collect())
        .collect()
}

fn subst_word(w: WordRef<'_>, asg: &BTreeMap<u32, MagmaPoly>, field: Field) -> Result<MagmaPoly, PolyError> {
    match w.split() {
        None => match w.letter() {
            Some(Letter::Var(k)) => asg.get(&k).cloned().ok_or(PolyError::Unassigned(k)),
            _ => Ok(MagmaPoly::word(w.to_word(), field)),
        },
        Some((l, r)) => subst_word(l, asg, field)?.magma_mul(&subst_word(r, asg, field)?),
    }
}

impl fmt::Debug for MagmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MagmaPoly[{}]({})", self.field, crate::frontend::render_poly(self))
    }
}

/// Derived operations expanded into the free magma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sugar {
    /// `A(a,b,c) = (ab)c - a(bc)`
    Associator,
    /// `C(a,b) = ab - ba`
    Commutator,
    /// `O(a,b) = ab + ba`
    Circle,
    /// `T(x,y,z,t) = A(xy,z,t) - A(y,xz,t) - 2 A(x,yz,t)`
    Tch,
}

impl Sugar {
    pub fn arity(self) -> usize {
        match self {
            Sugar::Associator => 3,
            Sugar::Commutator | Sugar::Circle => 2,
            Sugar::Tch => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sugar::Associator => "A",
            Sugar::Commutator => "C",
            Sugar::Circle => "O",
            Sugar::Tch => "T",
        }
    }
}

pub fn associator(a: &MagmaPoly, b: &MagmaPoly, c: &MagmaPoly) -> Result<MagmaPoly, PolyError> {
    a.magma_mul(b)?.magma_mul(c)?.checked_sub(&a.magma_mul(&b.magma_mul(c)?)?)
}

pub fn expand_sugar(kind: Sugar, args: &[MagmaPoly]) -> Result<MagmaPoly, PolyError> {
    if args.len() != kind.arity() {
        return Err(PolyError::Arity {
            name: kind.name(),
            expected: kind.arity(),
            got: args.len(),
        });
    }
    match kind {
        Sugar::Associator => associator(&args[0], &args[1], &args[2]),
        Sugar::Commutator => args[0].magma_mul(&args[1])?.checked_sub(&args[1].magma_mul(&args[0])?),
        Sugar::Circle => args[0].magma_mul(&args[1])?.checked_add(&args[1].magma_mul(&args[0])?),
        Sugar::Tch => {
            let (x, y, z, t) = (&args[0], &args[1], &args[2], &args[3]);
            let two = Scalar::from_int(x.field(), 2);
            associator(&x.magma_mul(y)?, z, t)?
                .checked_sub(&associator(y, &x.magma_mul(z)?, t)?)?
                .checked_sub(&associator(x, &y.magma_mul(z)?, t)?.scale(&two))
        }
    }
}

/// Rational constant as a scalar of `field`.
pub fn rational_scalar(field: Field, num: i64, den: i64) -> Result<Scalar, PolyError> {
    if den == 0 {
        return Err(ScalarError::DivisionByZero.into());
    }
    Ok(Scalar::from_rational(field, &BigRational::new(num.into(), den.into()))?)
}
