//! Dense linear algebra over GF(2).

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

/// Row-major packed bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        BitMatrix { cols, rows }
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        BitMatrix::from_rows(cols, rows.iter().map(|r| BitVec::from_bools(r)).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `x · M`: XOR of the rows selected by `x`.
    pub fn left_mul(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.rows.len());
        let mut out = BitVec::zeros(self.cols);
        for r in x.iter_ones() {
            out.xor_assign(&self.rows[r]);
        }
        out
    }

    /// `M · x`.
    pub fn mul(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        BitVec::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(i, _)| i),
        )
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).rank()
    }

    /// Solves `x · M = target`; see [`Echelon::solve`].
    pub fn solve(&self, target: &BitVec) -> Option<Solution> {
        Echelon::new(self).solve(target)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            let s: String = (0..self.cols)
                .map(|i| if r.get(i) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// Affine solution set `particular + span(nullspace)` of `x · M = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: BitVec,
    /// Basis of the left nullspace `{x : x · M = 0}`.
    pub nullspace: Vec<BitVec>,
}

/// Reduced row echelon form of a matrix together with the row operations
/// that produced it, so repeated solves against one matrix are cheap.
#[derive(Debug, Clone)]
pub struct Echelon {
    reduced: Vec<BitVec>,
    transform: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let n = m.row_count();
        let mut reduced = m.rows.clone();
        let mut transform = BitMatrix::identity(n).rows;
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            let r = pivots.len();
            // pivot: first remaining row with the bit set
            let Some(p) = (r..n).find(|&i| reduced[i].get(col)) else {
                continue;
            };
            reduced.swap(r, p);
            transform.swap(r, p);
            for i in 0..n {
                if i != r && reduced[i].get(col) {
                    let (pr, pt) = (reduced[r].clone(), transform[r].clone());
                    reduced[i].xor_assign(&pr);
                    transform[i].xor_assign(&pt);
                }
            }
            pivots.push(col);
        }
        Echelon {
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the left nullspace.
    pub fn nullspace(&self) -> Vec<BitVec> {
        self.transform[self.rank()..].to_vec()
    }

    /// Finds some `x` with `x · M = target`, or `None` when `target` is not in
    /// the row space.
    pub fn solve(&self, target: &BitVec) -> Option<Solution> {
        let rows = self.transform.len();
        let mut residual = target.clone();
        let mut x = BitVec::zeros(rows);
        for (r, &col) in self.pivots.iter().enumerate() {
            if residual.get(col) {
                residual.xor_assign(&self.reduced[r]);
                x.xor_assign(&self.transform[r]);
            }
        }
        if !residual.is_zero() {
            return None;
        }
        Some(Solution {
            particular: x,
            nullspace: self.nullspace(),
        })
    }

    /// Whether `target` lies in the row space.
    pub fn contains(&self, target: &BitVec) -> bool {
        let mut residual = target.clone();
        for (r, &col) in self.pivots.iter().enumerate() {
            if residual.get(col) {
                residual.xor_assign(&self.reduced[r]);
            }
        }
        residual.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hopf() -> BitMatrix {
        BitMatrix::from_bools(&vec![vec![true, true]; 4])
    }

    #[test]
    fn rank_basics() {
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(BitMatrix::identity(7).rank(), 7);
        assert_eq!(hopf().rank(), 1);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn hopf_solves() {
        let m = hopf();
        let sol = m.solve(&BitVec::from_bools(&[true, true])).unwrap();
        assert_eq!(m.left_mul(&sol.particular), BitVec::from_bools(&[true, true]));
        assert_eq!(sol.nullspace.len(), 3);
        assert!(m.solve(&BitVec::from_bools(&[true, false])).is_none());
    }

    #[test]
    fn zero_target() {
        let m = hopf();
        let sol = m.solve(&BitVec::zeros(2)).unwrap();
        assert!(sol.particular.is_zero());
        for v in &sol.nullspace {
            assert!(m.left_mul(v).is_zero());
        }
    }

    #[test]
    fn bitvec_ops() {
        let mut v = BitVec::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(v.to_indices(), [0, 63, 64, 129]);
        v.toggle(63);
        assert_eq!(v.count_ones(), 3);
        let w = BitVec::from_indices(130, [0, 100]);
        assert!(v.dot(&w));
        v.xor_assign(&w);
        assert_eq!(v.to_indices(), [64, 100, 129]);
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows)
            .prop_map(move |r| {
                if r.is_empty() {
                    BitMatrix::zeros(0, cols)
                } else {
                    BitMatrix::from_bools(&r)
                }
            })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in (1usize..9, 1usize..9).prop_flat_map(|(r, c)| matrix(r, c))) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_substitutes_back(
            (m, x) in (1usize..10, 1usize..10)
                .prop_flat_map(|(r, c)| (matrix(r, c), proptest::collection::vec(any::<bool>(), r)))
        ) {
            // targets built as row combinations are always solvable
            let target = m.left_mul(&BitVec::from_bools(&x));
            let sol = m.solve(&target).expect("target is in the row space");
            prop_assert_eq!(m.left_mul(&sol.particular), target);
            prop_assert_eq!(sol.nullspace.len(), m.row_count() - m.rank());
            for v in &sol.nullspace {
                prop_assert!(m.left_mul(v).is_zero());
            }
            // nullspace basis is independent
            let ns = BitMatrix::from_rows(m.row_count(), sol.nullspace.clone());
            prop_assert_eq!(ns.rank(), sol.nullspace.len());
        }

        #[test]
        fn unsolvable_iff_outside_row_space(
            (m, t) in (1usize..7, 1usize..7)
                .prop_flat_map(|(r, c)| (matrix(r, c), proptest::collection::vec(any::<bool>(), c)))
        ) {
            let target = BitVec::from_bools(&t);
            // exhaustive membership over all 2^r row combinations
            let r = m.row_count();
            let reachable = (0u32..1 << r).any(|mask| {
                m.left_mul(&BitVec::from_indices(r, (0..r).filter(|i| mask >> i & 1 == 1))) == target
            });
            prop_assert_eq!(m.solve(&target).is_some(), reachable);
        }
    }

    #[test]
    fn random_invertible_six() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut found = 0;
        while found < 20 {
            let rows: Vec<Vec<bool>> = (0..6)
                .map(|_| (0..6).map(|_| rng.gen()).collect())
                .collect();
            let m = BitMatrix::from_bools(&rows);
            if m.rank() != 6 {
                continue;
            }
            found += 1;
            let t = BitVec::from_bools(&(0..6).map(|_| rng.gen()).collect::<Vec<bool>>());
            let sol = m.solve(&t).unwrap();
            assert!(sol.nullspace.is_empty());
            assert_eq!(m.left_mul(&sol.particular), t);
        }
    }
}
