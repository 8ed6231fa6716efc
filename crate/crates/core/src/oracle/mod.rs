//! Brute-force multihomogeneous components of relatively free algebras.
//!
//! For an identity set and a multidegree the oracle builds every consequence
//! `C[f(w1, ..., wm)]` of each (fully linearized) identity `f`, with the
//! `wi` bracketed words on a split of the letters and `C` a one-hole context
//! on the remaining letters, and eliminates. Columns are the bracketed words
//! in canonical order; the quotient basis is the set of non-pivot words.

mod elim;
mod rows;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use log::{debug, info};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::frontend::{parse_identity, parse_identity_file, ParseError};
use crate::poly::{MagmaPoly, PolyError};
use crate::scalar::{Field, Scalar};
use crate::word::{enumerate_words, shapes, Letter, Multidegree, Word, MUL};

use elim::Echelon;
use rows::{ColumnIndex, Prepared, RowStore};

pub const DEFAULT_CAP: u32 = 6;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("total degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("identity {0} is not multihomogeneous in its variables")]
    NotHomogeneous(String),
    #[error("identity {0} is zero")]
    ZeroIdentity(String),
    #[error("input is not a multihomogeneous polynomial on generators")]
    InhomogeneousInput,
    #[error("characteristic {p} must exceed the total degree {degree}")]
    SmallPrime { p: u64, degree: u32 },
    #[error("unknown identity preset '{0}'")]
    UnknownPreset(String),
    #[error("{path}:{line}: {err}")]
    File { path: String, line: usize, err: ParseError },
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A named list of identities over the formal variables, each meaning `= 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct IdentitySet {
    name: String,
    identities: Vec<MagmaPoly>,
}

impl fmt::Debug for IdentitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdentitySet({}: {:?})", self.name, self.identities)
    }
}

const RS: &str = "A(v1,v2,v3) - A(v1,v3,v2)";
const WN: &str = "v1*A(v2,v3,v4) - A(v2,v3,v1*v4)";
const LC: &str = "v1*(v2*v3) - v2*(v1*v3)";
const MET: &str = "(v1*v2)*(v3*v4)";
const FLEX: &str = "A(v1,v2,v1)";
const ANTIFLEX: &str = "A(v1,v2,v3) - A(v3,v2,v1)";

impl IdentitySet {
    /// Validates that every identity is a nonzero polynomial in variables
    /// only, homogeneous in each variable.
    pub fn new(name: impl Into<String>, identities: Vec<MagmaPoly>) -> Result<IdentitySet, OracleError> {
        for f in &identities {
            let text = crate::frontend::render_poly(f);
            if f.is_zero() {
                return Err(OracleError::ZeroIdentity(text));
            }
            if !f.generators().is_empty() {
                return Err(ParseError::MixedLetters(text).into());
            }
            if f.letter_degree().is_err() {
                return Err(OracleError::NotHomogeneous(text));
            }
        }
        Ok(IdentitySet {
            name: name.into(),
            identities,
        })
    }

    fn from_texts(name: &str, texts: &[&str]) -> IdentitySet {
        let ids = texts.iter().map(|t| parse_identity(t).expect("preset parses")).collect();
        IdentitySet::new(name, ids).expect("preset is valid")
    }

    /// Built-in identity sets: `rs`, `wn`, `lc`, `met`, `wlc2`, `wnov2`,
    /// `nov2`, `flex`, `antiflex`, `lie-nilp:<n>`, `jordan-nilp:<n>` and
    /// `weak-flex:<+|->[:<n>]`.
    pub fn preset(name: &str) -> Result<IdentitySet, OracleError> {
        let unknown = || OracleError::UnknownPreset(name.to_string());
        let set = match name {
            "rs" => Self::from_texts(name, &[RS]),
            "wn" => Self::from_texts(name, &[WN]),
            "lc" => Self::from_texts(name, &[LC]),
            "met" => Self::from_texts(name, &[MET]),
            "wlc2" => Self::from_texts(name, &[WN, MET]),
            "wnov2" => Self::from_texts(name, &[RS, WN, MET]),
            "nov2" => Self::from_texts(name, &[RS, WN, LC, MET]),
            "flex" => Self::from_texts(name, &[FLEX]),
            "antiflex" => Self::from_texts(name, &[ANTIFLEX]),
            _ => {
                let mut parts = name.split(':');
                let head = parts.next().unwrap_or("");
                let args: Vec<&str> = parts.collect();
                match (head, args.as_slice()) {
                    ("lie-nilp", [n]) => Self::nilpotent_products(name, "C", n.parse().map_err(|_| unknown())?)?,
                    ("jordan-nilp", [n]) => Self::nilpotent_products(name, "O", n.parse().map_err(|_| unknown())?)?,
                    ("weak-flex", [sign]) => Self::weak_flex(name, sign, 2)?,
                    ("weak-flex", [sign, n]) => Self::weak_flex(name, sign, n.parse().map_err(|_| unknown())?)?,
                    _ => return Err(unknown()),
                }
            }
        };
        Ok(set)
    }

    /// The left-normed product `op(...op(op(v1, v2), v3)..., vn)`.
    fn nilpotent_products(name: &str, op: &str, n: u32) -> Result<IdentitySet, OracleError> {
        if n < 2 {
            return Err(OracleError::UnknownPreset(name.to_string()));
        }
        let mut text = "v1".to_string();
        for k in 2..=n {
            text = format!("{op}({text},v{k})");
        }
        IdentitySet::new(name, vec![parse_identity(&text)?])
    }

    /// `(w, x, y) = +-(y, x, w)` for every bracketing `w` of `n` letters.
    fn weak_flex(name: &str, sign: &str, n: u32) -> Result<IdentitySet, OracleError> {
        let op = match sign {
            "+" => "-",
            "-" => "+",
            _ => return Err(OracleError::UnknownPreset(name.to_string())),
        };
        if n == 0 {
            return Err(OracleError::UnknownPreset(name.to_string()));
        }
        let (x, y) = (format!("v{}", n + 1), format!("v{}", n + 2));
        let mut ids = Vec::new();
        for shape in shapes(n as usize) {
            let mut k = 0;
            let code: Vec<u32> = shape
                .iter()
                .map(|&s| {
                    if s == MUL {
                        MUL
                    } else {
                        k += 1;
                        Letter::Var(k).token()
                    }
                })
                .collect();
            let w = Word::from_code(code);
            let w = if w.is_leaf() { w.to_string() } else { format!("({w})") };
            ids.push(parse_identity(&format!("A({w},{x},{y}) {op} A({y},{x},{w})"))?);
        }
        IdentitySet::new(name, ids)
    }

    /// Reads an identity file: one identity per line, `#` comments.
    pub fn from_file(path: &Path) -> Result<IdentitySet, OracleError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|err| OracleError::Io { path: shown.clone(), err })?;
        let ids = parse_identity_file(&text).map_err(|(line, err)| OracleError::File {
            path: shown.clone(),
            line,
            err,
        })?;
        IdentitySet::new(shown, ids)
    }

    /// A `+`-separated list of presets or file paths, e.g. `wlc2+flex`.
    pub fn resolve(list: &str) -> Result<IdentitySet, OracleError> {
        let mut out: Option<IdentitySet> = None;
        for part in split_union(list) {
            let set = match IdentitySet::preset(part) {
                Ok(s) => s,
                Err(OracleError::UnknownPreset(_)) if Path::new(part).exists() => IdentitySet::from_file(Path::new(part))?,
                Err(e) => return Err(e),
            };
            out = Some(match out {
                None => set,
                Some(acc) => acc.union(&set),
            });
        }
        out.ok_or_else(|| OracleError::UnknownPreset(list.to_string()))
    }

    pub fn union(&self, other: &IdentitySet) -> IdentitySet {
        let mut identities = self.identities.clone();
        for f in &other.identities {
            if !identities.contains(f) {
                identities.push(f.clone());
            }
        }
        IdentitySet {
            name: format!("{}+{}", self.name, other.name),
            identities,
        }
    }

    pub fn with_identity(&self, name: &str, f: MagmaPoly) -> Result<IdentitySet, OracleError> {
        Ok(self.union(&IdentitySet::new(name, vec![f])?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identities(&self) -> &[MagmaPoly] {
        &self.identities
    }

    fn prepared(&self) -> Result<Vec<Prepared>, OracleError> {
        self.identities
            .iter()
            .map(|f| Prepared::new(&f.to_field(Field::Rational)?).map_err(OracleError::from))
            .collect()
    }
}

/// Splits on `+`, except where the `+` is a sign argument (`weak-flex:+`).
fn split_union(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = list.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' && !(i > 0 && bytes[i - 1] == b':') {
            out.push(list[start..i].trim());
            start = i + 1;
        }
    }
    out.push(list[start..].trim());
    out.retain(|p| !p.is_empty());
    out
}

/// The relation matrix of one component, columns in word order.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub columns: Vec<Word>,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl RelationMatrix {
    pub fn rank(&self, field: Field) -> usize {
        let mut e = Echelon::new(self.columns.len(), modulus(field));
        for r in &self.rows {
            e.insert(r);
        }
        e.rank()
    }
}

fn modulus(field: Field) -> Option<u64> {
    match field {
        Field::Rational => None,
        Field::Prime(p) => Some(p),
    }
}

/// Elimination settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub field: Field,
    pub cap: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            field: Field::Rational,
            cap: DEFAULT_CAP,
        }
    }
}

/// An eliminated component, kept for dimension, basis and membership queries.
pub struct Component {
    md: Multidegree,
    field: Field,
    columns: Vec<Word>,
    index: ColumnIndex,
    /// Columns removed by unit rows before elimination.
    killed: Vec<bool>,
    /// Compressed index of each surviving column.
    compressed: Vec<u32>,
    echelon: Echelon,
    relation_count: usize,
}

impl Oracle {
    pub fn over(field: Field) -> Oracle {
        Oracle {
            field,
            ..Oracle::default()
        }
    }

    fn check(&self, md: &Multidegree) -> Result<(), OracleError> {
        let degree = md.total();
        if degree > self.cap {
            return Err(OracleError::CapExceeded { degree, cap: self.cap });
        }
        if let Field::Prime(p) = self.field {
            if p <= degree as u64 {
                return Err(OracleError::SmallPrime { p, degree });
            }
        }
        Ok(())
    }

    fn rows(&self, ids: &IdentitySet, md: &Multidegree) -> Result<(Vec<Word>, ColumnIndex, RowStore), OracleError> {
        self.check(md)?;
        let prepared = ids.prepared()?;
        let columns = enumerate_words(md);
        let index: ColumnIndex = columns.iter().enumerate().map(|(i, w)| (w.code().into(), i as u32)).collect();
        let mut store = RowStore::new();
        rows::generate(&prepared, md, &index, |r| {
            store.push(r);
        });
        Ok((columns, index, store))
    }

    pub fn relation_rows(&self, ids: &IdentitySet, md: &Multidegree) -> Result<RelationMatrix, OracleError> {
        let (columns, _, store) = self.rows(ids, md)?;
        Ok(RelationMatrix {
            columns,
            rows: store.iter().map(<[_]>::to_vec).collect(),
        })
    }

    pub fn component(&self, ids: &IdentitySet, md: &Multidegree) -> Result<Component, OracleError> {
        let start = Instant::now();
        let (columns, index, store) = self.rows(ids, md)?;
        let ncols = columns.len();
        debug!("{md}: {} rows over {ncols} words in {:?}", store.len(), start.elapsed());

        // Unit rows kill their column outright; iterate to a fixpoint since
        // killing columns shortens other rows.
        let p = modulus(self.field);
        let live = |c: u32, v: i64, killed: &[bool]| !killed[c as usize] && p.is_none_or(|p| v.rem_euclid(p as i64) != 0);
        let mut killed = vec![false; ncols];
        let mut pending: Vec<usize> = (0..store.len()).collect();
        loop {
            let mut changed = false;
            pending.retain(|&i| {
                let mut it = store.row(i).iter().filter(|e| live(e.0, e.1, &killed));
                match (it.next(), it.next()) {
                    (None, _) => false,
                    (Some(&(c, _)), None) => {
                        killed[c as usize] = true;
                        changed = true;
                        false
                    }
                    _ => true,
                }
            });
            if !changed {
                break;
            }
        }
        let mut compressed = vec![u32::MAX; ncols];
        let mut next = 0u32;
        for (c, k) in killed.iter().enumerate() {
            if !*k {
                compressed[c] = next;
                next += 1;
            }
        }
        let survivors = next as usize;
        let mut reduced: Vec<Vec<(u32, i64)>> = pending
            .iter()
            .map(|&i| {
                store
                    .row(i)
                    .iter()
                    .filter(|e| live(e.0, e.1, &killed))
                    .map(|&(c, v)| (compressed[c as usize], v))
                    .collect()
            })
            .collect();
        reduced.sort_by_key(|r| r.len());
        let nkilled = ncols - survivors;
        debug!("{md}: {nkilled} unit kills, {} rows over {survivors} columns remain", reduced.len());

        let mut echelon = Echelon::new(survivors, p);
        for r in &reduced {
            if echelon.rank() == survivors {
                break;
            }
            echelon.insert(r);
        }
        info!(
            "{} {md} over {}: dimension {} ({} rows, {} words) in {:?}",
            ids.name(),
            self.field,
            survivors - echelon.rank(),
            store.len(),
            ncols,
            start.elapsed()
        );
        debug!("{md}: echelon holds {} entries", echelon.stored_entries());
        Ok(Component {
            md: md.clone(),
            field: self.field,
            columns,
            index,
            killed,
            compressed,
            echelon,
            relation_count: store.len(),
        })
    }

    pub fn quotient_dimension(&self, ids: &IdentitySet, md: &Multidegree) -> Result<usize, OracleError> {
        Ok(self.component(ids, md)?.dimension())
    }

    pub fn quotient_basis(&self, ids: &IdentitySet, md: &Multidegree) -> Result<Vec<Word>, OracleError> {
        Ok(self.component(ids, md)?.basis())
    }

    /// Whether `f` vanishes in the relatively free algebra.
    pub fn membership(&self, f: &MagmaPoly, ids: &IdentitySet) -> Result<bool, OracleError> {
        if f.is_zero() {
            return Ok(true);
        }
        let md = f.multidegree().map_err(|_| OracleError::InhomogeneousInput)?;
        self.component(ids, &md)?.contains(f)
    }

    /// Dimensions over Q and over GF(p). A disagreement means `p` is unlucky
    /// for this component and is logged.
    pub fn cross_check(&self, ids: &IdentitySet, md: &Multidegree, p: u64) -> Result<(usize, usize), OracleError> {
        let q = Oracle {
            field: Field::Rational,
            ..*self
        }
        .quotient_dimension(ids, md)?;
        let fp = Oracle {
            field: Field::prime(p).map_err(PolyError::from)?,
            ..*self
        }
        .quotient_dimension(ids, md)?;
        if q != fp {
            log::warn!("{} {md}: dimension {q} over Q but {fp} over GF({p})", ids.name());
        }
        Ok((q, fp))
    }
}

impl Component {
    pub fn multidegree(&self) -> &Multidegree {
        &self.md
    }

    pub fn word_count(&self) -> usize {
        self.columns.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn rank(&self) -> usize {
        self.killed.iter().filter(|k| **k).count() + self.echelon.rank()
    }

    pub fn dimension(&self) -> usize {
        self.columns.len() - self.rank()
    }

    /// Words whose columns carry no pivot, in word order.
    pub fn basis(&self) -> Vec<Word> {
        (0..self.columns.len())
            .filter(|&c| !self.killed[c] && !self.echelon.is_pivot(self.compressed[c] as usize))
            .map(|c| self.columns[c].clone())
            .collect()
    }

    pub fn contains(&mut self, f: &MagmaPoly) -> Result<bool, OracleError> {
        if f.is_zero() {
            return Ok(true);
        }
        if f.multidegree().ok().as_ref() != Some(&self.md) {
            return Err(OracleError::InhomogeneousInput);
        }
        let f = f.to_field(self.field)?;
        // clear denominators over Q
        let den = f.terms().fold(BigInt::from(1), |d, (_, c)| match c {
            Scalar::Rational(r) => d.lcm(r.denom()),
            Scalar::Residue { .. } => d,
        });
        let mut v: Vec<(u32, BigInt)> = Vec::new();
        for (w, c) in f.terms() {
            let col = self.index[w.code()] as usize;
            if self.killed[col] {
                continue;
            }
            let k = match c {
                Scalar::Rational(r) => r.numer() * (&den / r.denom()),
                Scalar::Residue { value, .. } => BigInt::from(*value),
            };
            if !k.is_zero() {
                v.push((self.compressed[col], k));
            }
        }
        if v.is_empty() {
            return Ok(true);
        }
        Ok(self.echelon.is_in_span(&v))
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Convenience wrappers over the default oracle (Q, cap 6).
pub fn relation_rows(ids: &IdentitySet, md: &Multidegree) -> Result<RelationMatrix, OracleError> {
    Oracle::default().relation_rows(ids, md)
}

pub fn quotient_dimension(ids: &IdentitySet, md: &Multidegree) -> Result<usize, OracleError> {
    Oracle::default().quotient_dimension(ids, md)
}

pub fn quotient_basis(ids: &IdentitySet, md: &Multidegree) -> Result<Vec<Word>, OracleError> {
    Oracle::default().quotient_basis(ids, md)
}

pub fn membership(f: &MagmaPoly, ids: &IdentitySet) -> Result<bool, OracleError> {
    Oracle::default().membership(f, ids)
}
