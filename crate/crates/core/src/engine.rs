//! Identity checks in the table algebras, left nilpotency, nilpotency of
//! subvarieties and the classification of multilinear subvariety identities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::element::{basis_of_degree, eval, eval_with, mul, Element, TableAlgebra};
use crate::frontend::{gens_to_vars, render_poly, render_terms};
use crate::oracle::{IdentitySet, Oracle, OracleError};
use crate::poly::{MagmaPoly, PolyError};
use crate::scalar::{Field, Scalar};
use crate::wlc::Wlc;
use crate::wn::{wn_eval, Wn, WnBasisElement, WnElement};
use crate::word::{Letter, Multidegree, Word, WordRef};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("expected a multilinear polynomial: {0}")]
    NotMultilinear(String),
    #[error("the input is zero")]
    ZeroInput,
    #[error("{0} vanishes in the free metabelian weakly Novikov algebra, so it defines no proper subvariety")]
    HoldsInVariety(String),
    #[error("degree {0} is below 2")]
    DegreeTooSmall(u32),
    #[error("cap {cap} exceeds the supported maximum {max}")]
    CapTooLarge { cap: u32, max: u32 },
    #[error("unknown algebra '{0}' (expected wlc or wnov)")]
    UnknownAlgebra(String),
    #[error("bad operator word: {0}")]
    BadOperator(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// The two table algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Wlc,
    Wnov,
}

impl FromStr for AlgebraKind {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wlc" => Ok(AlgebraKind::Wlc),
            "wnov" => Ok(AlgebraKind::Wnov),
            other => Err(EngineError::UnknownAlgebra(other.to_string())),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Wlc => Wlc::NAME,
            AlgebraKind::Wnov => Wn::NAME,
        })
    }
}

impl AlgebraKind {
    /// Normal form of a polynomial on generators, rendered.
    pub fn normalize(self, p: &MagmaPoly) -> Result<String, PolyError> {
        Ok(match self {
            AlgebraKind::Wlc => eval::<Wlc>(p)?.to_string(),
            AlgebraKind::Wnov => eval::<Wn>(p)?.to_string(),
        })
    }
}

/// Substitution domain of [`check_identity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Generators `x1..=x{pool}` may occur in substituted basis elements.
    pub pool: u32,
    /// Bound on the degree of the substituted result.
    pub max_degree: u32,
    /// Optional bound on the degree of each substituted basis element.
    pub slot_cap: Option<u32>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            pool: 5,
            max_degree: 7,
            slot_cap: None,
        }
    }
}

/// A failing substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// `(variable, basis element as text, a polynomial evaluating to it)`.
    pub assignment: Vec<(u32, String, MagmaPoly)>,
    /// Normal form of the identity under the assignment; never `0`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Holds,
    Counterexample(Counterexample),
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub identity: MagmaPoly,
    pub algebra: AlgebraKind,
    pub options: CheckOptions,
    pub verdict: CheckVerdict,
    /// Substitutions evaluated before the verdict.
    pub tuples: u64,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == CheckVerdict::Holds
    }

    /// Substitutes the counterexample again; `Some(nonzero normal form)`.
    pub fn recheck(&self) -> Result<Option<String>, PolyError> {
        let CheckVerdict::Counterexample(c) = &self.verdict else {
            return Ok(None);
        };
        let asg: BTreeMap<u32, MagmaPoly> = c.assignment.iter().map(|(v, _, p)| (*v, p.clone())).collect();
        let p = self.identity.substitute(&asg)?;
        Ok(Some(self.algebra.normalize(&p)?))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "identity": render_poly(&self.identity),
            "algebra": self.algebra.to_string(),
            "domain": {
                "pool": self.options.pool,
                "max_degree": self.options.max_degree,
                "slot_cap": self.options.slot_cap,
            },
            "tuples": self.tuples,
            "holds": self.holds(),
        });
        if let CheckVerdict::Counterexample(c) = &self.verdict {
            let asg: serde_json::Map<String, Value> = c.assignment.iter().map(|(k, s, _)| (format!("v{k}"), json!(s))).collect();
            v["counterexample"] = json!({ "assignment": asg, "value": c.value });
        }
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}: ", render_poly(&self.identity), self.algebra)?;
        match &self.verdict {
            CheckVerdict::Holds => write!(
                f,
                "holds ({} substitutions, generators x1..x{}, degree <= {})",
                self.tuples, self.options.pool, self.options.max_degree
            ),
            CheckVerdict::Counterexample(c) => {
                let asg: Vec<String> = c.assignment.iter().map(|(k, s, _)| format!("v{k} = {s}")).collect();
                write!(f, "fails at {}: {}", asg.join(", "), c.value)
            }
        }
    }
}

/// Variables of `f`, provided each occurs exactly once per term.
fn multilinear_variables(f: &MagmaPoly) -> Result<Vec<u32>, EngineError> {
    let bad = || EngineError::NotMultilinear(render_poly(f));
    if f.is_zero() {
        return Err(EngineError::ZeroInput);
    }
    if !f.generators().is_empty() {
        return Err(bad());
    }
    let deg = f.letter_degree().map_err(|_| bad())?;
    if deg.values().any(|&c| c != 1) {
        return Err(bad());
    }
    Ok(deg.keys().map(|l| l.index()).collect())
}

/// Substitutes every tuple of basis elements into `f` and evaluates, in
/// order of result degree; within a degree, substitutions using pairwise
/// distinct generators come first.
pub fn check_identity(algebra: AlgebraKind, f: &MagmaPoly, opts: CheckOptions) -> Result<CheckReport, EngineError> {
    match algebra {
        AlgebraKind::Wlc => check_in::<Wlc>(algebra, f, opts),
        AlgebraKind::Wnov => check_in::<Wn>(algebra, f, opts),
    }
}

fn check_in<A: TableAlgebra>(algebra: AlgebraKind, f: &MagmaPoly, opts: CheckOptions) -> Result<CheckReport, EngineError> {
    let vars = multilinear_variables(f)?;
    let f = f.to_field(Field::Rational)?;
    let m = vars.len() as u32;
    let mut report = CheckReport {
        identity: f.clone(),
        algebra,
        options: opts,
        verdict: CheckVerdict::Holds,
        tuples: 0,
    };
    if m > opts.max_degree {
        return Ok(report);
    }
    let scaled = integer_terms(&f);
    let top = opts.max_degree - (m - 1);
    let top = opts.slot_cap.map_or(top, |c| c.min(top));
    let by_degree: Vec<Vec<(A::Basis, Vec<u32>)>> = (0..=top)
        .map(|d| {
            if d == 0 {
                return Vec::new();
            }
            basis_of_degree::<A>(d, opts.pool)
                .into_iter()
                .map(|b| {
                    let letters = A::multidegree(&b).letters();
                    (b, letters)
                })
                .collect()
        })
        .collect();
    for total in m..=opts.max_degree {
        for distinct_pass in [true, false] {
            for comp in compositions(total, m, top) {
                let lists: Vec<&[(A::Basis, Vec<u32>)]> = comp.iter().map(|&d| by_degree[d as usize].as_slice()).collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                let mut choice = vec![0usize; m as usize];
                loop {
                    let mut letters: Vec<u32> = choice.iter().zip(&lists).flat_map(|(&i, l)| l[i].1.iter().copied()).collect();
                    letters.sort_unstable();
                    let distinct = letters.windows(2).all(|w| w[0] != w[1]);
                    if distinct == distinct_pass {
                        report.tuples += 1;
                        let slots: Vec<&A::Basis> = choice.iter().zip(&lists).map(|(&i, l)| &l[i].0).collect();
                        if let Some(terms) = &scaled {
                            if let Some(true) = vanishes_int::<A>(terms, &vars, &slots) {
                                if !advance(&mut choice, &lists) {
                                    break;
                                }
                                continue;
                            }
                        }
                        let asg: BTreeMap<u32, Element<A::Basis>> = vars
                            .iter()
                            .zip(choice.iter().zip(&lists))
                            .map(|(&v, (&i, l))| (v, Element::basis(l[i].0.clone(), Field::Rational)))
                            .collect();
                        let value = eval_with::<A>(&f, &asg)?;
                        if !value.is_zero() {
                            let assignment = vars
                                .iter()
                                .zip(choice.iter().zip(&lists))
                                .map(|(&v, (&i, l))| (v, l[i].0.to_string(), A::representative(&l[i].0)))
                                .collect();
                            report.verdict = CheckVerdict::Counterexample(Counterexample {
                                assignment,
                                value: value.to_string(),
                            });
                            return Ok(report);
                        }
                    }
                    if !advance(&mut choice, &lists) {
                        break;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Terms of a rational polynomial scaled to coprime integer coefficients.
fn integer_terms(f: &MagmaPoly) -> Option<Vec<(Word, i64)>> {
    let mut den = BigInt::from(1);
    for (_, c) in f.terms() {
        if let Scalar::Rational(r) = c {
            den = den.lcm(r.denom());
        }
    }
    f.terms()
        .map(|(w, c)| match c {
            Scalar::Rational(r) => (r.numer() * (&den / r.denom())).to_i64().map(|k| (w.clone(), k)),
            Scalar::Residue { .. } => None,
        })
        .collect()
}

type IntVector<B> = Vec<(B, i64)>;

/// Whether `f` vanishes when each variable takes a single basis element,
/// using machine integers. `None` on overflow.
fn vanishes_int<A: TableAlgebra>(terms: &[(Word, i64)], vars: &[u32], slots: &[&A::Basis]) -> Option<bool> {
    let mut acc: IntVector<A::Basis> = Vec::new();
    for (w, k) in terms {
        for (b, c) in eval_word_int::<A>(w.as_ref(), vars, slots)? {
            acc.push((b, c.checked_mul(*k)?));
        }
    }
    Some(merge_int(acc)?.is_empty())
}

fn eval_word_int<A: TableAlgebra>(w: WordRef<'_>, vars: &[u32], slots: &[&A::Basis]) -> Option<IntVector<A::Basis>> {
    match w.split() {
        None => match w.letter() {
            Some(Letter::Gen(k)) => Some(vec![(A::generator(k), 1)]),
            Some(Letter::Var(k)) => Some(vec![(slots[vars.binary_search(&k).ok()?].clone(), 1)]),
            None => None,
        },
        Some((l, r)) => {
            let a = eval_word_int::<A>(l, vars, slots)?;
            if a.is_empty() {
                return Some(a);
            }
            let b = eval_word_int::<A>(r, vars, slots)?;
            let mut out = Vec::new();
            for (x, cx) in &a {
                for (y, cy) in &b {
                    let c = cx.checked_mul(*cy)?;
                    for (z, k) in A::mul_basis(x, y) {
                        out.push((z, c.checked_mul(k)?));
                    }
                }
            }
            merge_int(out)
        }
    }
}

fn merge_int<B: Ord>(mut v: IntVector<B>) -> Option<IntVector<B>> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: IntVector<B> = Vec::with_capacity(v.len());
    for (b, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == b => last.1 = last.1.checked_add(c)?,
            _ => out.push((b, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    Some(out)
}

fn advance<T>(choice: &mut [usize], lists: &[&[T]]) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < lists[i].len() {
            return true;
        }
        choice[i] = 0;
    }
    false
}

/// Ordered ways to write `total` as `parts` summands in `1..=max`.
fn compositions(total: u32, parts: u32, max: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 1..=max.min(left) {
            cur.push(d);
            go(left - d, parts - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::new(), &mut out);
    out
}

/// Outcome of [`left_nilpotency_index`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeftNilpotency {
    /// Every product `u1(u2(...(u_{k-1} u_k)...))` vanishes; the witness has
    /// `k - 1` factors and a nonzero value.
    Index { index: u32, witness: Word, value: String },
    /// The longest product tried is still nonzero.
    ExceedsCap { cap: u32, witness: Word, value: String },
}

impl LeftNilpotency {
    pub fn index(&self) -> Option<u32> {
        match self {
            LeftNilpotency::Index { index, .. } => Some(*index),
            LeftNilpotency::ExceedsCap { .. } => None,
        }
    }

    pub fn witness(&self) -> &Word {
        match self {
            LeftNilpotency::Index { witness, .. } | LeftNilpotency::ExceedsCap { witness, .. } => witness,
        }
    }
}

impl fmt::Display for LeftNilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeftNilpotency::Index { index, witness, value } => write!(f, "left nilpotent of index {index}; {witness} = {value}"),
            LeftNilpotency::ExceedsCap { cap, witness, value } => write!(f, "not left nilpotent of index <= {cap}; {witness} = {value}"),
        }
    }
}

pub const MAX_LEFT_CAP: u32 = 7;

/// Smallest `k <= cap` with `x1(x2(...(x_{k-1} x_k)...)) = 0`.
///
/// Both algebras are relatively free, so the multilinear product on distinct
/// generators vanishes iff the corresponding identity holds, i.e. iff every
/// such product of arbitrary elements vanishes.
pub fn left_nilpotency_index(algebra: AlgebraKind, cap: u32) -> Result<LeftNilpotency, EngineError> {
    match algebra {
        AlgebraKind::Wlc => left_index_in::<Wlc>(cap),
        AlgebraKind::Wnov => left_index_in::<Wn>(cap),
    }
}

fn left_index_in<A: TableAlgebra>(cap: u32) -> Result<LeftNilpotency, EngineError> {
    if cap > MAX_LEFT_CAP {
        return Err(EngineError::CapTooLarge { cap, max: MAX_LEFT_CAP });
    }
    if cap < 2 {
        return Err(EngineError::DegreeTooSmall(cap));
    }
    let mut witness = Word::gen(1);
    let mut value = Element::basis(A::generator(1), Field::Rational);
    for k in 2..=cap {
        let factors: Vec<Word> = (1..=k).map(Word::gen).collect();
        let w = Word::left_normed(&factors).expect("nonempty");
        let v = eval::<A>(&MagmaPoly::word(w.clone(), Field::Rational))?;
        if v.is_zero() {
            return Ok(LeftNilpotency::Index {
                index: k,
                witness,
                value: value.to_string(),
            });
        }
        witness = w;
        value = v;
    }
    Ok(LeftNilpotency::ExceedsCap {
        cap,
        witness,
        value: value.to_string(),
    })
}

/// Dimensions of every component of one total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyProfile {
    pub degree: u32,
    /// One entry per multidegree up to relabelling, until the first nonzero
    /// component.
    pub components: Vec<(Multidegree, usize)>,
}

impl NilpotencyProfile {
    pub fn all_zero(&self) -> bool {
        self.components.iter().all(|(_, d)| *d == 0)
    }
}

/// Whether every component of total degree `n` of the relatively free
/// algebra vanishes. Zero in degree `n` forces zero in all higher degrees,
/// since each word of degree `n + 1` is a substitution instance of one of
/// degree `n`.
pub fn nilpotency_profile(ids: &IdentitySet, n: u32, oracle: &Oracle) -> Result<NilpotencyProfile, EngineError> {
    let mut components = Vec::new();
    // the multilinear component is the most likely to be nonzero
    for md in Multidegree::partitions(n).into_iter().rev() {
        let d = oracle.quotient_dimension(ids, &md)?;
        components.push((md, d));
        if d != 0 {
            break;
        }
    }
    Ok(NilpotencyProfile { degree: n, components })
}

/// Orbit groups of the non-nilpotent candidate forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitGroup {
    /// Alternating group on 4 letters; terms `A(x_d1, x_d2*x_d3, x_d4)`.
    A4,
    /// Symmetric group on 3 letters; terms `x_s1*(x_s2*x_s3)`.
    S3,
}

impl fmt::Display for OrbitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitGroup::A4 => "A4",
            OrbitGroup::S3 => "S3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    NilpotentBound(u32),
    NonNilpotentCandidate {
        group: OrbitGroup,
        /// `(permutation of the letters, coefficient)`.
        form: Vec<(Vec<u32>, Scalar)>,
    },
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub input: MagmaPoly,
    pub degree: u32,
    /// `f` in base coordinates of its multilinear component.
    pub coordinates: WnElement,
    pub verdict: ClassVerdict,
}

impl Classification {
    pub fn bound(&self) -> Option<u32> {
        match self.verdict {
            ClassVerdict::NilpotentBound(k) => Some(k),
            ClassVerdict::NonNilpotentCandidate { .. } => None,
        }
    }

    /// The candidate normal form as a polynomial-like string.
    pub fn form_text(&self) -> Option<String> {
        let ClassVerdict::NonNilpotentCandidate { group, form } = &self.verdict else {
            return None;
        };
        let items: Vec<(String, &Scalar)> = form
            .iter()
            .map(|(p, c)| {
                let name = match group {
                    OrbitGroup::S3 => format!("x{}*(x{}*x{})", p[0], p[1], p[2]),
                    OrbitGroup::A4 => format!("A(x{}, x{}*x{}, x{})", p[0], p[1], p[2], p[3]),
                };
                (name, c)
            })
            .collect();
        Some(render_terms(&items))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "input": render_poly(&self.input),
            "degree": self.degree,
            "normal_form": self.coordinates.to_string(),
        });
        match &self.verdict {
            ClassVerdict::NilpotentBound(k) => {
                v["verdict"] = json!("nilpotent-bound");
                v["bound"] = json!(k);
            }
            ClassVerdict::NonNilpotentCandidate { group, .. } => {
                v["verdict"] = json!("non-nilpotent-candidate");
                v["group"] = json!(group.to_string());
                v["form"] = json!(self.form_text());
            }
        }
        v
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            ClassVerdict::NilpotentBound(k) => write!(f, "nilpotent of index at most {k}"),
            ClassVerdict::NonNilpotentCandidate { group, .. } => {
                write!(f, "non-nilpotent candidate over {group}: {}", self.form_text().unwrap_or_default())
            }
        }
    }
}

fn is_even(seq: &[u32]) -> bool {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// Case analysis of a multilinear identity `f` on generators by its degree
/// and its base coordinates in the free weakly Novikov metabelian algebra.
pub fn classify_multilinear(f: &MagmaPoly) -> Result<Classification, EngineError> {
    if f.is_zero() {
        return Err(EngineError::ZeroInput);
    }
    let md = f.multidegree().map_err(|_| EngineError::NotMultilinear(render_poly(f)))?;
    if !md.is_multilinear() {
        return Err(EngineError::NotMultilinear(render_poly(f)));
    }
    let n = md.total();
    if n < 2 {
        return Err(EngineError::DegreeTooSmall(n));
    }
    let f = f.to_field(Field::Rational)?;
    let coordinates = wn_eval(&f)?;
    if coordinates.is_zero() {
        return Err(EngineError::HoldsInVariety(render_poly(&f)));
    }
    let verdict = match n {
        2 => ClassVerdict::NilpotentBound(5),
        3 => {
            if coordinates.terms().any(|(b, _)| matches!(b, WnBasisElement::T2(..))) {
                ClassVerdict::NilpotentBound(5)
            } else {
                let form = coordinates
                    .terms()
                    .map(|(b, c)| match b {
                        WnBasisElement::T1(x, y, z) => (vec![*x, *y, *z], c.clone()),
                        other => unreachable!("degree-3 base element {other}"),
                    })
                    .collect();
                ClassVerdict::NonNilpotentCandidate {
                    group: OrbitGroup::S3,
                    form,
                }
            }
        }
        4 => {
            if coordinates.terms().any(|(b, _)| matches!(b, WnBasisElement::T4(..))) {
                ClassVerdict::NilpotentBound(5)
            } else {
                let mut form: Vec<(Vec<u32>, Scalar)> = coordinates
                    .terms()
                    .map(|(b, c)| match b {
                        WnBasisElement::T3(x, y, [t1, t2]) => {
                            let p = vec![*x, *y, *t1, *t2];
                            let p = if is_even(&p) { p } else { vec![*x, *y, *t2, *t1] };
                            (p, c.clone())
                        }
                        other => unreachable!("degree-4 base element {other}"),
                    })
                    .collect();
                form.sort_by(|a, b| a.0.cmp(&b.0));
                ClassVerdict::NonNilpotentCandidate {
                    group: OrbitGroup::A4,
                    form,
                }
            }
        }
        n => ClassVerdict::NilpotentBound(n + 1),
    };
    Ok(Classification {
        input: f,
        degree: n,
        coordinates,
        verdict,
    })
}

/// Confirms a nilpotency bound with the oracle: every component of degree
/// `k` of the subvariety defined by `f` must vanish. `None` when there is no
/// bound or it exceeds the oracle cap.
pub fn verify_bound(c: &Classification, oracle: &Oracle) -> Result<Option<NilpotencyProfile>, EngineError> {
    let Some(k) = c.bound() else {
        return Ok(None);
    };
    if k > oracle.cap {
        return Ok(None);
    }
    let ids = IdentitySet::preset("wnov2")?.with_identity("f", gens_to_vars(&c.input))?;
    Ok(Some(nilpotency_profile(&ids, k, oracle)?))
}

/// Right (`e -> e x`), left (`e -> x e`) and the combinations
/// `H = R - L`, `Theta = R + L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    L,
    R,
    H,
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Op {
    pub kind: OpKind,
    pub gen: u32,
}

/// Operators applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperatorWord(pub Vec<Op>);

impl OperatorWord {
    pub fn new(ops: impl IntoIterator<Item = (OpKind, u32)>) -> OperatorWord {
        OperatorWord(ops.into_iter().map(|(kind, gen)| Op { kind, gen }).collect())
    }
}

impl FromStr for OperatorWord {
    type Err = EngineError;

    /// Whitespace-separated operators such as `R3 Rx4 L_x5 H2 Th1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ops = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || EngineError::BadOperator(tok.to_string());
            let (kind, rest) = if let Some(r) = tok.strip_prefix("Th") {
                (OpKind::Theta, r)
            } else {
                let mut cs = tok.chars();
                let kind = match cs.next() {
                    Some('L') => OpKind::L,
                    Some('R') => OpKind::R,
                    Some('H') => OpKind::H,
                    _ => return Err(bad()),
                };
                (kind, cs.as_str())
            };
            let rest = rest.trim_start_matches('_').trim_start_matches('x');
            let gen: u32 = rest.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            ops.push(Op { kind, gen });
        }
        Ok(OperatorWord(ops))
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|op| {
                let k = match op.kind {
                    OpKind::L => "L",
                    OpKind::R => "R",
                    OpKind::H => "H",
                    OpKind::Theta => "Th",
                };
                format!("{k}x{}", op.gen)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn operator_word_apply<A: TableAlgebra>(e: &Element<A::Basis>, ops: &OperatorWord) -> Element<A::Basis> {
    let field = e.field();
    let mut cur = e.clone();
    for op in &ops.0 {
        if cur.is_zero() {
            break;
        }
        let x = Element::basis(A::generator(op.gen), field);
        let right = || mul::<A>(&cur, &x).expect("same field");
        let left = || mul::<A>(&x, &cur).expect("same field");
        cur = match op.kind {
            OpKind::R => right(),
            OpKind::L => left(),
            OpKind::H => right().checked_sub(&left()).expect("same field"),
            OpKind::Theta => right().checked_add(&left()).expect("same field"),
        };
    }
    cur
}

/// The eight words in `{L, R}^3`, `RRR` last.
pub fn triple_patterns() -> Vec<[OpKind; 3]> {
    let s = [OpKind::L, OpKind::R];
    let mut out = Vec::new();
    for a in s {
        for b in s {
            for c in s {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// First degree-2 base element and generator triple from `1..=pool` on
/// which the pattern gives a nonzero result, if any.
pub fn triple_pattern_witness(pattern: [OpKind; 3], pool: u32) -> Option<(WnBasisElement, OperatorWord, WnElement)> {
    for a in 1..=pool {
        for b in 1..=pool {
            let pair = WnBasisElement::Pair(a, b);
            let e = Element::basis(pair.clone(), Field::Rational);
            for x in 1..=pool {
                for y in 1..=pool {
                    for z in 1..=pool {
                        let ops = OperatorWord::new([(pattern[0], x), (pattern[1], y), (pattern[2], z)]);
                        let v = operator_word_apply::<Wn>(&e, &ops);
                        if !v.is_zero() {
                            return Some((pair, ops, v));
                        }
                    }
                }
            }
        }
    }
    None
}
