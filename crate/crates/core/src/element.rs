//! Elements of an algebra given by a basis and an integer multiplication
//! table, plus bottom-up evaluation of magma polynomials in such an algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{MagmaPoly, PolyError};
use crate::scalar::{Field, Scalar, ScalarError};
use crate::word::{Letter, Multidegree, WordRef};

/// A multiplication table on a monomial basis with integer structure
/// constants.
pub trait TableAlgebra {
    type Basis: Ord + Clone + fmt::Debug + fmt::Display;

    const NAME: &'static str;

    fn generator(index: u32) -> Self::Basis;

    fn degree(b: &Self::Basis) -> usize;

    /// Product of two canonical basis elements.
    fn mul_basis(a: &Self::Basis, b: &Self::Basis) -> Vec<(Self::Basis, i64)>;

    /// Canonical basis of one multihomogeneous component, deterministic order.
    fn basis(md: &Multidegree) -> Vec<Self::Basis>;

    /// Generator multidegree of a basis element.
    fn multidegree(b: &Self::Basis) -> Multidegree;

    /// A magma polynomial that evaluates to `b`.
    fn representative(b: &Self::Basis) -> MagmaPoly;
}

/// Finite linear combination of basis elements; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<B: Ord> {
    field: Field,
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord + Clone> Element<B> {
    pub fn zero(field: Field) -> Self {
        Element {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: B, field: Field) -> Self {
        let mut e = Element::zero(field);
        e.add_term(b, Scalar::one(field));
        e
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (B, i64)>) -> Self {
        let mut e = Element::zero(field);
        for (b, k) in terms {
            e.add_term(b, Scalar::from_int(field, k));
        }
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &B) -> Option<&Scalar> {
        self.terms.get(b)
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
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

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field));
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element {
            field: self.field,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Element::zero(self.field);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * k);
        }
        out
    }
}

/// Bilinear product through the table.
pub fn mul<A: TableAlgebra>(a: &Element<A::Basis>, b: &Element<A::Basis>) -> Result<Element<A::Basis>, ScalarError> {
    if a.field != b.field {
        return Err(ScalarError::FieldMismatch(a.field, b.field));
    }
    let mut out = Element::zero(a.field);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let prod = A::mul_basis(x, y);
            if prod.is_empty() {
                continue;
            }
            let c = cx * cy;
            for (z, k) in prod {
                out.add_term(z, c.scale_int(k));
            }
        }
    }
    Ok(out)
}

/// Evaluates a polynomial on generators. Variables must be assigned through
/// [`eval_with`].
pub fn eval<A: TableAlgebra>(p: &MagmaPoly) -> Result<Element<A::Basis>, PolyError> {
    eval_with::<A>(p, &BTreeMap::new())
}

/// Evaluates `p` with each `Var(k)` replaced by `assignment[k]`.
pub fn eval_with<A: TableAlgebra>(p: &MagmaPoly, assignment: &BTreeMap<u32, Element<A::Basis>>) -> Result<Element<A::Basis>, PolyError> {
    let field = p.field();
    let mut out = Element::zero(field);
    for (w, c) in p.terms() {
        let v = eval_word::<A>(w.as_ref(), assignment, field)?;
        out = out.checked_add(&v.scale(c))?;
    }
    Ok(out)
}

fn eval_word<A: TableAlgebra>(
    w: WordRef<'_>,
    asg: &BTreeMap<u32, Element<A::Basis>>,
    field: Field,
) -> Result<Element<A::Basis>, PolyError> {
    match w.split() {
        None => match w.letter() {
            Some(Letter::Gen(k)) => Ok(Element::basis(A::generator(k), field)),
            Some(Letter::Var(k)) => {
                let e = asg.get(&k).ok_or(PolyError::Unassigned(k))?;
                if e.field != field {
                    return Err(ScalarError::FieldMismatch(field, e.field).into());
                }
                Ok(e.clone())
            }
            None => unreachable!("hole token outside the oracle"),
        },
        Some((l, r)) => {
            let a = eval_word::<A>(l, asg, field)?;
            if a.is_zero() {
                return Ok(a);
            }
            let b = eval_word::<A>(r, asg, field)?;
            Ok(mul::<A>(&a, &b)?)
        }
    }
}

/// All basis elements of total degree `degree` whose generators come from
/// `1..=pool`.
pub fn basis_of_degree<A: TableAlgebra>(degree: u32, pool: u32) -> Vec<A::Basis> {
    let mut out = Vec::new();
    for md in multidegrees(degree, pool) {
        out.extend(A::basis(&md));
    }
    out.sort();
    out
}

/// Every multidegree of the given total over generators `1..=pool`.
pub fn multidegrees(total: u32, pool: u32) -> Vec<Multidegree> {
    fn go(i: u32, pool: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
        if i == pool {
            if left == 0 {
                out.push(Multidegree::from_multiplicities(cur));
            }
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(i + 1, pool, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, pool, total, &mut Vec::new(), &mut out);
    out
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<(String, &Scalar)> = self.terms.iter().map(|(b, c)| (b.to_string(), c)).collect();
        f.write_str(&crate::frontend::render_terms(&items))
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Debug for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
