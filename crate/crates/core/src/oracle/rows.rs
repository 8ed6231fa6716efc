//! Generation of the consequence rows `C[f(w1, ..., wm)]` of one
//! multihomogeneous component.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::{MagmaPoly, PolyError};
use crate::scalar::Scalar;
use crate::word::{words_over_tokens, Letter, Multidegree, Word, HOLE, MUL};

/// Leaf tokens at or above this value stand for identity argument slots.
const SLOT_BASE: u32 = u32::MAX - 256;

/// A multilinear identity with integer coefficients whose variables have been
/// renamed to argument slots `0..arity`.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    pub arity: usize,
    pub terms: Vec<(Box<[u32]>, i64)>,
}

impl Prepared {
    pub fn new(f: &MagmaPoly) -> Result<Prepared, PolyError> {
        let lin = f.linearize()?;
        let vars: Vec<u32> = lin.variables().into_iter().collect();
        let mut den = num_bigint::BigInt::from(1);
        for (_, c) in lin.terms() {
            if let Scalar::Rational(r) = c {
                den = den.lcm(r.denom());
            }
        }
        let mut terms = Vec::new();
        for (w, c) in lin.terms() {
            let k = match c {
                Scalar::Rational(r) => (r.numer() * (&den / r.denom())).to_i64(),
                other => other.to_i64(),
            };
            let k = k.ok_or(PolyError::NotHomogeneous)?;
            let code: Box<[u32]> = w
                .code()
                .iter()
                .map(|&t| match Letter::from_token(t) {
                    Some(Letter::Var(v)) => SLOT_BASE + vars.binary_search(&v).unwrap() as u32,
                    _ => t,
                })
                .collect();
            terms.push((code, k));
        }
        let g = terms.iter().fold(0i64, |g, (_, k)| g.gcd(k));
        if g > 1 {
            for t in terms.iter_mut() {
                t.1 /= g;
            }
        }
        Ok(Prepared { arity: vars.len(), terms })
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(c, _)| c.len().div_ceil(2))
    }
}

/// Deduplicated rows in compressed sparse row layout.
#[derive(Default)]
pub(crate) struct RowStore {
    offsets: Vec<usize>,
    entries: Vec<(u32, i64)>,
    seen: HashMap<u64, Vec<u32>>,
}

impl RowStore {
    pub fn new() -> RowStore {
        RowStore {
            offsets: vec![0],
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[(u32, i64)]> {
        (0..self.len()).map(|i| self.row(i))
    }

    /// Stores a sorted, primitive, leading-positive row unless already present.
    pub fn push(&mut self, row: &[(u32, i64)]) -> bool {
        let mut h = DefaultHasher::new();
        row.hash(&mut h);
        let key = h.finish();
        if let Some(ids) = self.seen.get(&key) {
            if ids.iter().any(|&i| self.row(i as usize) == row) {
                return false;
            }
        }
        let id = self.len() as u32;
        self.seen.entry(key).or_default().push(id);
        self.entries.extend_from_slice(row);
        self.offsets.push(self.entries.len());
        true
    }
}

/// Merges duplicate columns, drops zeros, divides by the content and makes
/// the leading entry positive.
pub(crate) fn normalize_row(row: &mut Vec<(u32, i64)>) {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(row.len());
    for &(c, v) in row.iter() {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    if let Some(first) = out.first() {
        let mut g = out.iter().fold(0i64, |g, e| g.gcd(&e.1));
        if first.1.is_negative() {
            g = -g;
        }
        if g != 1 {
            for e in out.iter_mut() {
                e.1 /= g;
            }
        }
    }
    *row = out;
}

/// Column index of each word of a component, keyed by prefix code.
pub(crate) type ColumnIndex = HashMap<Box<[u32]>, u32>;

struct WordCache {
    words: HashMap<Vec<u32>, Rc<Vec<Word>>>,
}

impl WordCache {
    fn get(&mut self, tokens: &[u32]) -> Rc<Vec<Word>> {
        let mut key = tokens.to_vec();
        key.sort_unstable();
        self.words.entry(key).or_insert_with_key(|k| Rc::new(words_over_tokens(k))).clone()
    }
}

/// Calls `sink` with every normalized nonzero row `C[f(w1..wm)]` in the
/// component `md`.
pub(crate) fn generate(ids: &[Prepared], md: &Multidegree, index: &ColumnIndex, mut sink: impl FnMut(&[(u32, i64)])) {
    let letters: Vec<(u32, u32)> = md.counts().iter().map(|(&g, &c)| (Letter::Gen(g).token(), c)).collect();
    let n = md.total() as usize;
    let mut cache = WordCache { words: HashMap::new() };
    for f in ids {
        let m = f.arity;
        if m == 0 || f.degree() > n || m > n {
            continue;
        }
        // slot 0 is the context, slots 1..=m the identity arguments
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
        for_each_split(&letters, 0, &mut parts, &mut |parts| {
            if parts[1..].iter().any(|p| p.is_empty()) {
                return;
            }
            let mut ctx_tokens = parts[0].clone();
            ctx_tokens.push(HOLE);
            let contexts = cache.get(&ctx_tokens);
            let args: Vec<Rc<Vec<Word>>> = parts[1..].iter().map(|p| cache.get(p)).collect();
            substitute_all(f, &args, &contexts, index, &mut sink);
        });
    }
}

/// Distributes the multiset of letters over the parts in every possible way.
fn for_each_split(letters: &[(u32, u32)], i: usize, parts: &mut [Vec<u32>], visit: &mut dyn FnMut(&[Vec<u32>])) {
    if i == letters.len() {
        visit(parts);
        return;
    }
    let (tok, count) = letters[i];
    distribute(tok, count, 0, parts, &mut |parts| for_each_split(letters, i + 1, parts, visit));
}

fn distribute(tok: u32, left: u32, slot: usize, parts: &mut [Vec<u32>], next: &mut dyn FnMut(&mut [Vec<u32>])) {
    if slot + 1 == parts.len() {
        let before = parts[slot].len();
        parts[slot].extend(std::iter::repeat_n(tok, left as usize));
        next(parts);
        parts[slot].truncate(before);
        return;
    }
    for k in 0..=left {
        let before = parts[slot].len();
        parts[slot].extend(std::iter::repeat_n(tok, k as usize));
        distribute(tok, left - k, slot + 1, parts, next);
        parts[slot].truncate(before);
    }
}

fn substitute_all(f: &Prepared, args: &[Rc<Vec<Word>>], contexts: &[Word], index: &ColumnIndex, sink: &mut impl FnMut(&[(u32, i64)])) {
    let m = args.len();
    let mut choice = vec![0usize; m];
    let mut inner: Vec<(Vec<u32>, i64)> = Vec::with_capacity(f.terms.len());
    let mut code = Vec::new();
    let mut row: Vec<(u32, i64)> = Vec::new();
    loop {
        inner.clear();
        for (t, k) in &f.terms {
            let mut c = Vec::new();
            for &tok in t.iter() {
                if tok >= SLOT_BASE {
                    c.extend_from_slice(args[(tok - SLOT_BASE) as usize][choice[(tok - SLOT_BASE) as usize]].code());
                } else {
                    c.push(tok);
                }
            }
            inner.push((c, *k));
        }
        for ctx in contexts {
            row.clear();
            let hole = ctx.code().iter().position(|&t| t == HOLE).unwrap();
            for (c, k) in &inner {
                code.clear();
                code.extend_from_slice(&ctx.code()[..hole]);
                code.extend_from_slice(c);
                code.extend_from_slice(&ctx.code()[hole + 1..]);
                debug_assert!(code.iter().all(|&t| t == MUL || t > HOLE));
                row.push((index[code.as_slice()], *k));
            }
            normalize_row(&mut row);
            if !row.is_empty() {
                sink(&row);
            }
        }
        // odometer over argument word choices
        let mut i = 0;
        loop {
            if i == m {
                return;
            }
            choice[i] += 1;
            if choice[i] < args[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_identity;
    use crate::word::enumerate_words;

    fn rows_for(ids: &[&str], md: &Multidegree) -> (usize, RowStore) {
        let prepared: Vec<Prepared> = ids.iter().map(|s| Prepared::new(&parse_identity(s).unwrap()).unwrap()).collect();
        let words = enumerate_words(md);
        let index: ColumnIndex = words.iter().enumerate().map(|(i, w)| (w.code().into(), i as u32)).collect();
        let mut store = RowStore::new();
        generate(&prepared, md, &index, |r| {
            store.push(r);
        });
        (words.len(), store)
    }

    #[test]
    fn metabelian_rows_are_unit_vectors() {
        let (ncols, store) = rows_for(&["(v1*v2)*(v3*v4)"], &Multidegree::multilinear(4));
        assert_eq!(ncols, 120);
        assert_eq!(store.len(), 24);
        assert!(store.iter().all(|r| r.len() == 1 && r[0].1 == 1));
        let (_, none) = rows_for(&["(v1*v2)*(v3*v4)"], &Multidegree::multilinear(3));
        assert_eq!(none.len(), 0);
    }

    #[test]
    fn right_symmetry_rows_in_degree_three() {
        let (_, store) = rows_for(&["A(v1,v2,v3) - A(v1,v3,v2)"], &Multidegree::multilinear(3));
        assert_eq!(store.len(), 3);
        assert!(store.iter().all(|r| r.len() == 4));
    }

    #[test]
    fn repeated_letters() {
        // x1 x1 x2: words (x1x1)x2, (x1x2)x1, (x2x1)x1, x1(x1x2), x1(x2x1), x2(x1x1)
        let (ncols, store) = rows_for(&["v1*(v2*v3) - v2*(v1*v3)"], &Multidegree::from_multiplicities(&[2, 1]));
        assert_eq!(ncols, 6);
        // x1(x1x2) - x1(x1x2) vanishes; x1(x2x1) - x2(x1x1) survives
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn normalization() {
        let mut r = vec![(3, -4), (1, 2), (3, 2), (5, 0)];
        normalize_row(&mut r);
        assert_eq!(r, vec![(1, 1), (3, -1)]);
    }
}
