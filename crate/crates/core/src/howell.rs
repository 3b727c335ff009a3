//! Submodules of (Z/2^m)^d in Howell normal form.
//!
//! Rows are echelonized column by column. The pivot of each row is a power of two,
//! entries above a pivot 2^v are reduced into [0, 2^v), and for every pivot row p
//! of valuation v the row 2^(m-v) p (which vanishes in the pivot column) is fed
//! back into the remaining rows. The last step gives the Howell property, so
//! membership can be decided by straightforward reduction.

use crate::witt::{inv_odd_u64, mask};

#[derive(Clone, Debug)]
struct Row {
    v: Vec<u64>,
    combo: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    dim: usize,
    bits: u32,
    rows: Vec<Vec<u64>>,
    /// (pivot column, valuation of the pivot)
    pivots: Vec<(usize, u32)>,
}

fn val(x: u64) -> u32 {
    x.trailing_zeros()
}

fn axpy(dst: &mut [u64], f: u64, src: &[u64], m: u64) {
    if f == 0 {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_sub(f.wrapping_mul(*s)) & m;
    }
}

fn scale_row(row: &mut [u64], f: u64, m: u64) {
    for x in row.iter_mut() {
        *x = x.wrapping_mul(f) & m;
    }
}

/// Howell form of the given rows. Combination vectors are carried along when present.
fn howell(mut work: Vec<Row>, dim: usize, bits: u32) -> (Vec<Row>, Vec<(usize, u32)>) {
    let m = mask(bits);
    let mut out: Vec<Row> = Vec::new();
    let mut pivots = Vec::new();
    for row in work.iter_mut() {
        for x in row.v.iter_mut() {
            *x &= m;
        }
    }
    for col in 0..dim {
        work.retain(|r| r.v[col..].iter().any(|&x| x != 0));
        let mut best: Option<(usize, u32)> = None;
        for (i, r) in work.iter().enumerate() {
            let x = r.v[col];
            if x != 0 {
                let v = val(x);
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                    if v == 0 {
                        break;
                    }
                }
            }
        }
        let Some((bi, v)) = best else { continue };
        let mut p = work.remove(bi);
        let unit = inv_odd_u64(p.v[col] >> v);
        scale_row(&mut p.v[col..], unit, m);
        scale_row(&mut p.combo, unit, m);
        for r in work.iter_mut() {
            let x = r.v[col];
            if x != 0 {
                let f = x >> v;
                axpy(&mut r.v[col..], f, &p.v[col..], m);
                axpy(&mut r.combo, f, &p.combo, m);
            }
        }
        if v > 0 {
            let f = 1u64 << (bits - v);
            let mut ann = p.clone();
            scale_row(&mut ann.v[col..], f, m);
            scale_row(&mut ann.combo, f, m);
            if ann.v.iter().any(|&x| x != 0) {
                work.push(ann);
            }
        }
        pivots.push((col, v));
        out.push(p);
    }
    // reduce entries above each pivot into [0, 2^v)
    for i in 0..out.len() {
        let (col, v) = pivots[i];
        let (head, tail) = out.split_at_mut(i);
        let p = &tail[0];
        for r in head.iter_mut() {
            let f = r.v[col] >> v;
            if f != 0 {
                axpy(&mut r.v[col..], f, &p.v[col..], m);
                axpy(&mut r.combo, f, &p.combo, m);
            }
        }
    }
    (out, pivots)
}

impl Submodule {
    pub fn zero(dim: usize, bits: u32) -> Submodule {
        Submodule { dim, bits, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole of (Z/2^m)^d.
    pub fn full(dim: usize, bits: u32) -> Submodule {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![0; dim];
                r[i] = 1;
                r
            })
            .collect();
        Submodule { dim, bits, rows, pivots: (0..dim).map(|i| (i, 0)).collect() }
    }

    /// Howell form of the span of `gens`, built incrementally: generators already in
    /// the current span are skipped, and the form is recomputed in batches.
    pub fn span<I: IntoIterator<Item = Vec<u64>>>(dim: usize, bits: u32, gens: I) -> Submodule {
        let mut b = SpanBuilder::new(dim, bits);
        for g in gens {
            b.push(g);
        }
        b.finish()
    }

    fn from_rows(rows: Vec<Vec<u64>>, dim: usize, bits: u32) -> Submodule {
        let work = rows.into_iter().map(|v| Row { v, combo: Vec::new() }).collect();
        let (out, pivots) = howell(work, dim, bits);
        Submodule { dim, bits, rows: out.into_iter().map(|r| r.v).collect(), pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// log2 of the number of elements.
    pub fn log2_size(&self) -> u64 {
        self.pivots.iter().map(|(_, v)| (self.bits - v) as u64).sum()
    }

    /// Number of pivots with unit leading entry.
    pub fn free_rank(&self) -> usize {
        self.pivots.iter().filter(|(_, v)| *v == 0).count()
    }

    /// Reduce v against the basis; the result is zero exactly when v is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = mask(self.bits);
        let mut w: Vec<u64> = v.iter().map(|x| x & m).collect();
        for (row, &(col, pv)) in self.rows.iter().zip(&self.pivots) {
            let f = w[col] >> pv;
            axpy(&mut w[col..], f, &row[col..], m);
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, other: &Submodule) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Incremental span computation.
pub struct SpanBuilder {
    dim: usize,
    bits: u32,
    basis: Submodule,
    pending: Vec<Vec<u64>>,
}

impl SpanBuilder {
    pub fn new(dim: usize, bits: u32) -> SpanBuilder {
        SpanBuilder { dim, bits, basis: Submodule::zero(dim, bits), pending: Vec::new() }
    }

    pub fn push(&mut self, v: Vec<u64>) {
        assert_eq!(v.len(), self.dim);
        let r = self.basis.reduce(&v);
        if r.iter().all(|&x| x == 0) {
            return;
        }
        self.pending.push(r);
        if self.pending.len() >= (self.dim / 4).max(16) {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let mut rows = std::mem::take(&mut self.basis.rows);
        rows.append(&mut self.pending);
        self.basis = Submodule::from_rows(rows, self.dim, self.bits);
    }

    pub fn finish(mut self) -> Submodule {
        self.flush();
        self.basis
    }
}

/// Find x with sum_j x_j columns[j] = target, or None when target is outside the span.
/// The solution is the one produced by the fixed pivot rule (smallest valuation,
/// earliest row), so it is deterministic.
pub fn solve(columns: &[Vec<u64>], target: &[u64], dim: usize, bits: u32) -> Option<Vec<u64>> {
    let m = mask(bits);
    let n = columns.len();
    if target.iter().all(|&x| x & m == 0) {
        return Some(vec![0; n]);
    }
    let work = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut combo = vec![0; n];
            combo[j] = 1;
            Row { v: c.clone(), combo }
        })
        .collect();
    let (rows, pivots) = howell(work, dim, bits);
    let mut t: Vec<u64> = target.iter().map(|x| x & m).collect();
    let mut x = vec![0u64; n];
    for (row, &(col, v)) in rows.iter().zip(&pivots) {
        if t[col] & mask(v) != 0 {
            return None;
        }
        let f = t[col] >> v;
        axpy(&mut t[col..], f, &row.v[col..], m);
        axpy(&mut x, f.wrapping_neg(), &row.combo, m);
    }
    if t.iter().any(|&c| c != 0) {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Oracle: enumerate every Z/2^m-combination of the generators (tiny cases only).
    fn brute_span(gens: &[Vec<u64>], dim: usize, bits: u32) -> std::collections::BTreeSet<Vec<u64>> {
        let m = mask(bits);
        let mut out = std::collections::BTreeSet::from([vec![0u64; dim]]);
        for g in gens {
            let snapshot: Vec<_> = out.iter().cloned().collect();
            for s in snapshot {
                for c in 1..=m {
                    let v: Vec<u64> = s.iter().zip(g).map(|(a, b)| a.wrapping_add(c.wrapping_mul(*b)) & m).collect();
                    out.insert(v);
                }
            }
        }
        out
    }

    #[test]
    fn howell_property_example() {
        // span{(2, 1)} over Z/4 contains (0, 2) = 2*(2, 1)
        let s = Submodule::span(2, 2, vec![vec![2, 1]]);
        assert!(s.contains(&[0, 2]));
        assert!(!s.contains(&[0, 1]));
        assert_eq!(s.log2_size(), 2);
    }

    #[test]
    fn solve_finds_combination() {
        let cols = vec![vec![2, 0, 1], vec![0, 4, 1], vec![1, 1, 1]];
        let target = vec![3, 5, 3];
        let x = solve(&cols, &target, 3, 3).unwrap();
        let mut acc = [0u64; 3];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..3 {
                acc[i] = (acc[i] + x[j] * c[i]) & 7;
            }
        }
        assert_eq!(acc.to_vec(), target);
        assert!(solve(&[vec![2, 0]], &[1, 0], 2, 3).is_none());
    }

    fn vec_strategy(dim: usize, bits: u32) -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..(1 << bits), dim)
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force(gens in proptest::collection::vec(vec_strategy(3, 2), 0..3),
                                          probe in vec_strategy(3, 2)) {
            let s = Submodule::span(3, 2, gens.clone());
            let all = brute_span(&gens, 3, 2);
            prop_assert_eq!(s.contains(&probe), all.contains(&probe));
            prop_assert_eq!(1u64 << s.log2_size(), all.len() as u64);
        }

        #[test]
        fn howell_form_is_canonical(gens in proptest::collection::vec(vec_strategy(4, 3), 1..5), seed in any::<u64>()) {
            let a = Submodule::span(4, 3, gens.clone());
            let mut shuffled = gens.clone();
            shuffled.rotate_left((seed as usize) % gens.len());
            let extra: Vec<u64> = gens[0].iter().zip(&gens[gens.len() - 1]).map(|(x, y)| (x + 3 * y) & 7).collect();
            shuffled.push(extra);
            let b = Submodule::span(4, 3, shuffled);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn solve_agrees_with_membership(gens in proptest::collection::vec(vec_strategy(4, 3), 1..5), probe in vec_strategy(4, 3)) {
            let s = Submodule::span(4, 3, gens.clone());
            let x = solve(&gens, &probe, 4, 3);
            prop_assert_eq!(x.is_some(), s.contains(&probe));
            if let Some(x) = x {
                let mut acc = vec![0u64; 4];
                for (j, g) in gens.iter().enumerate() {
                    for i in 0..4 {
                        acc[i] = (acc[i] + x[j] * g[i]) & 7;
                    }
                }
                prop_assert_eq!(acc, probe);
            }
        }
    }
}
