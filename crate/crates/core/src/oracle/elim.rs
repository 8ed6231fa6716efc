//! Sparse row echelon forms over GF(p) and fraction-free over Z.
//!
//! Both keep one pivot row per leading column, with the leading column being
//! the smallest column index present. Rows are only reduced at their leading
//! entries, which is enough for rank, membership and the set of pivot
//! columns. That set is an invariant of the row space, so it does not
//! depend on insertion order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::inv_mod;

pub(crate) enum Echelon {
    Modular(ModpEchelon),
    Integer(IntEchelon),
}

impl Echelon {
    pub fn new(ncols: usize, modulus: Option<u64>) -> Echelon {
        match modulus {
            Some(p) => Echelon::Modular(ModpEchelon::new(ncols, p)),
            None => Echelon::Integer(IntEchelon::new(ncols)),
        }
    }

    pub fn insert(&mut self, row: &[(u32, i64)]) -> bool {
        match self {
            Echelon::Modular(e) => e.insert(row),
            Echelon::Integer(e) => e.insert(row),
        }
    }

    pub fn is_in_span(&mut self, row: &[(u32, BigInt)]) -> bool {
        match self {
            Echelon::Modular(e) => {
                let p = BigInt::from(e.p);
                let r: Vec<(u32, u64)> = row
                    .iter()
                    .map(|(c, v)| (*c, v.mod_floor(&p).try_into().unwrap()))
                    .filter(|(_, v)| *v != 0)
                    .collect();
                e.reduce(&r).is_none()
            }
            Echelon::Integer(e) => e.reduce(row.to_vec()).is_empty(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Echelon::Modular(e) => e.rank,
            Echelon::Integer(e) => e.rank,
        }
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        match self {
            Echelon::Modular(e) => e.pivots[col].is_some(),
            Echelon::Integer(e) => e.pivots[col].is_some(),
        }
    }

    pub fn stored_entries(&self) -> usize {
        match self {
            Echelon::Modular(e) => e.pivots.iter().flatten().map(|r| r.len()).sum(),
            Echelon::Integer(e) => e.pivots.iter().flatten().map(|r| r.len()).sum(),
        }
    }
}

/// Sparse row of residues, sorted by column.
type ModpRow = Box<[(u32, u32)]>;

pub(crate) struct ModpEchelon {
    p: u64,
    /// Pivot row per leading column; leading coefficient normalized to 1.
    pivots: Vec<Option<ModpRow>>,
    rank: usize,
    dense: Vec<u64>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl ModpEchelon {
    pub fn new(ncols: usize, p: u64) -> ModpEchelon {
        ModpEchelon {
            p,
            pivots: vec![None; ncols],
            rank: 0,
            dense: vec![0; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn insert(&mut self, row: &[(u32, i64)]) -> bool {
        let p = self.p as i64;
        let r: Vec<(u32, u64)> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        match self.reduce(&r) {
            None => false,
            Some(mut rem) => {
                let lead = rem[0].0 as usize;
                let inv = inv_mod(rem[0].1, self.p);
                for e in rem.iter_mut() {
                    e.1 = e.1 * inv % self.p;
                }
                self.pivots[lead] = Some(rem.into_iter().map(|(c, v)| (c, v as u32)).collect());
                self.rank += 1;
                true
            }
        }
    }

    /// Reduces `row` (entries already in `[1, p)`) against the pivots.
    /// Returns the nonzero remainder, sorted, or `None` if it vanishes.
    fn reduce(&mut self, row: &[(u32, u64)]) -> Option<Vec<(u32, u64)>> {
        let p = self.p;
        for &(c, v) in row {
            let d = &mut self.dense[c as usize];
            if *d == 0 {
                self.heap.push(Reverse(c));
            }
            *d = (*d + v) % p;
        }
        while let Some(Reverse(c)) = self.heap.pop() {
            let factor = self.dense[c as usize];
            if factor == 0 {
                continue;
            }
            match &self.pivots[c as usize] {
                Some(piv) => {
                    let neg = p - factor;
                    for &(j, v) in piv.iter() {
                        let d = &mut self.dense[j as usize];
                        let was_zero = *d == 0;
                        *d = (*d + neg * v as u64) % p;
                        if was_zero && *d != 0 {
                            self.heap.push(Reverse(j));
                        }
                    }
                    debug_assert_eq!(self.dense[c as usize], 0);
                }
                None => {
                    let mut out = vec![(c, factor)];
                    self.dense[c as usize] = 0;
                    while let Some(Reverse(j)) = self.heap.pop() {
                        let v = self.dense[j as usize];
                        if v != 0 {
                            out.push((j, v));
                            self.dense[j as usize] = 0;
                        }
                    }
                    out.sort_unstable_by_key(|e| e.0);
                    return Some(out);
                }
            }
        }
        None
    }
}

pub(crate) struct IntEchelon {
    /// Primitive pivot rows with positive leading coefficient.
    pivots: Vec<Option<Vec<(u32, BigInt)>>>,
    rank: usize,
}

impl IntEchelon {
    pub fn new(ncols: usize) -> IntEchelon {
        IntEchelon {
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn insert(&mut self, row: &[(u32, i64)]) -> bool {
        let r: Vec<(u32, BigInt)> = row.iter().filter(|e| e.1 != 0).map(|&(c, v)| (c, BigInt::from(v))).collect();
        let rem = self.reduce(r);
        if rem.is_empty() {
            return false;
        }
        let lead = rem[0].0 as usize;
        self.pivots[lead] = Some(rem);
        self.rank += 1;
        true
    }

    fn reduce(&self, mut row: Vec<(u32, BigInt)>) -> Vec<(u32, BigInt)> {
        row.sort_by_key(|e| e.0);
        make_primitive(&mut row);
        while let Some((lead, a)) = row.first().map(|(c, v)| (*c, v.clone())) {
            let Some(piv) = &self.pivots[lead as usize] else {
                break;
            };
            let b = &piv[0].1;
            let g = a.gcd(b);
            let (sa, sb) = (b / &g, &a / &g);
            // row <- sa*row - sb*piv, which cancels the leading entry
            row = combine(&row, &sa, piv, &sb);
            make_primitive(&mut row);
        }
        row
    }
}

fn combine(x: &[(u32, BigInt)], sx: &BigInt, y: &[(u32, BigInt)], sy: &BigInt) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, &x[i].1 * sx));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(&y[j].1 * sy)));
            j += 1;
        } else {
            let v = &x[i].1 * sx - &y[j].1 * sy;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides by the content and makes the leading coefficient positive.
fn make_primitive(row: &mut [(u32, BigInt)]) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_of(rows: &[Vec<(u32, i64)>], ncols: usize, p: Option<u64>) -> usize {
        let mut e = Echelon::new(ncols, p);
        for r in rows {
            e.insert(r);
        }
        e.rank()
    }

    #[test]
    fn ranks_agree_on_small_systems() {
        let rows = vec![
            vec![(0, 1), (1, 2), (2, 3)],
            vec![(0, 2), (1, 4), (2, 6)],
            vec![(1, 1), (2, -1)],
            vec![(0, 1), (1, 3), (2, 2)],
            vec![(2, 5)],
        ];
        assert_eq!(rank_of(&rows[..2], 3, None), 1);
        assert_eq!(rank_of(&rows[..4], 3, None), 2);
        assert_eq!(rank_of(&rows, 3, None), 3);
        assert_eq!(rank_of(&rows[..4], 3, Some(101)), 2);
        // 5 vanishes mod 5
        assert_eq!(rank_of(&rows[4..], 3, Some(5)), 0);
    }

    #[test]
    fn membership_and_pivots() {
        let mut e = Echelon::new(4, None);
        e.insert(&[(1, 2), (3, 2)]);
        e.insert(&[(0, 1), (1, 1)]);
        assert!(e.is_pivot(0) && e.is_pivot(1) && !e.is_pivot(2) && !e.is_pivot(3));
        let v = [(0, BigInt::from(3)), (1, BigInt::from(1)), (3, BigInt::from(-2))];
        assert!(e.is_in_span(&v));
        assert!(!e.is_in_span(&[(2, BigInt::from(1))]));
    }

    /// Dense Gaussian elimination over Q as an independent rank oracle.
    fn dense_rank(rows: &[Vec<(u32, i64)>], ncols: usize) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![BigRational::zero(); ncols];
                for &(c, v) in r {
                    d[c as usize] += BigRational::from_integer(v.into());
                }
                d
            })
            .collect();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pr) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            for i in 0..m.len() {
                if i != rank && !m[i][col].is_zero() {
                    let f = &m[i][col] / &m[rank][col];
                    let pivot = m[rank].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= y * &f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest::proptest! {
        #[test]
        fn sparse_rank_matches_dense(rows in proptest::collection::vec(
            proptest::collection::btree_map(0u32..7, -3i64..4, 0..5), 0..9)) {
            let rows: Vec<Vec<(u32, i64)>> = rows.into_iter().map(|m| m.into_iter().collect()).collect();
            let d = dense_rank(&rows, 7);
            proptest::prop_assert_eq!(rank_of(&rows, 7, None), d);
            // 1009 exceeds every minor of these tiny matrices
            proptest::prop_assert_eq!(rank_of(&rows, 7, Some(1009)), d);
        }
    }
}
