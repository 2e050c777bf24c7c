//! Projective modules `⊕ e_p A(-s)` and their degreewise coordinates.

use super::ModuleError;
use crate::algebra::TabulatedAlgebra;
use crate::exactla::{axpy, Scalar};

/// One summand `e_idem A(-shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub shift: i32,
    pub idem: usize,
}

#[derive(Clone, Debug)]
struct DegreeLayout {
    offsets: Vec<usize>,
    /// Algebra basis indices (in degree `d - shift`) spanning `e_p A`.
    idx: Vec<Vec<usize>>,
    total: usize,
}

/// Coordinates of a projective module inside a degree window: the degree-`d`
/// basis is the concatenation, over summands, of the basis elements of
/// `A_{d-shift}` with left idempotent `idem`.
#[derive(Clone, Debug)]
pub struct FreeLayout {
    summands: Vec<Summand>,
    lo: i32,
    hi: i32,
    degs: Vec<DegreeLayout>,
}

impl FreeLayout {
    pub fn new(alg: &TabulatedAlgebra, summands: Vec<Summand>, lo: i32, hi: i32) -> Result<FreeLayout, ModuleError> {
        if let Some(min) = summands.iter().map(|s| s.shift).min() {
            if hi - min > alg.truncation() as i32 {
                return Err(ModuleError::WindowTooLarge { top: hi, lowest_shift: min, truncation: alg.truncation() });
            }
        }
        let degs = (lo..=hi)
            .map(|d| {
                let mut offsets = Vec::new();
                let mut idx = Vec::new();
                let mut total = 0;
                for s in &summands {
                    offsets.push(total);
                    let e = d - s.shift;
                    let list: Vec<usize> = if e < 0 {
                        Vec::new()
                    } else {
                        (0..alg.dim(e as u32)).filter(|&k| alg.tag(e as u32, k).0 == s.idem).collect()
                    };
                    total += list.len();
                    idx.push(list);
                }
                DegreeLayout { offsets, idx, total }
            })
            .collect();
        Ok(FreeLayout { summands, lo, hi, degs })
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    fn layout(&self, d: i32) -> Option<&DegreeLayout> {
        if d < self.lo || d > self.hi {
            None
        } else {
            Some(&self.degs[(d - self.lo) as usize])
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.layout(d).map_or(0, |l| l.total)
    }

    /// Algebra basis indices of summand `j` in degree `d`.
    pub fn indices(&self, d: i32, j: usize) -> &[usize] {
        self.layout(d).map_or(&[], |l| &l.idx[j][..])
    }

    pub fn offset(&self, d: i32, j: usize) -> usize {
        self.layout(d).map_or(0, |l| l.offsets[j])
    }

    /// Component of `v ∈ F_d` in summand `j`, expanded to algebra coordinates.
    pub fn component(&self, alg: &TabulatedAlgebra, d: i32, v: &[Scalar], j: usize) -> Option<(u32, Vec<Scalar>)> {
        let e = d - self.summands[j].shift;
        if e < 0 || e > alg.truncation() as i32 {
            return None;
        }
        let l = self.layout(d)?;
        let mut full = vec![Scalar::zero(); alg.dim(e as u32)];
        for (t, &k) in l.idx[j].iter().enumerate() {
            full[k] = v[l.offsets[j] + t].clone();
        }
        Some((e as u32, full))
    }

    /// Places an algebra element (assumed inside `e_p A`) into summand `j`.
    pub fn embed(&self, d: i32, j: usize, a: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim(d)];
        if let Some(l) = self.layout(d) {
            for (t, &k) in l.idx[j].iter().enumerate() {
                v[l.offsets[j] + t] = a[k].clone();
            }
        }
        v
    }

    /// `(summand, algebra basis index)` of the `pos`-th basis element of `F_d`.
    pub fn locate(&self, d: i32, pos: usize) -> (usize, usize) {
        let l = self.layout(d).expect("degree inside window");
        let j = l.offsets.partition_point(|&o| o <= pos) - 1;
        // skip empty summands sharing the same offset
        let mut j = j;
        while l.idx[j].len() <= pos - l.offsets[j] {
            j += 1;
        }
        (j, l.idx[j][pos - l.offsets[j]])
    }

    /// `v · a` for `v ∈ F_d`, `a ∈ A_e`.
    pub fn mul(&self, alg: &TabulatedAlgebra, d: i32, v: &[Scalar], e: u32, a: &[Scalar]) -> Vec<Scalar> {
        let t = d + e as i32;
        let mut out = vec![Scalar::zero(); self.dim(t)];
        let Some(l) = self.layout(d) else {
            return out;
        };
        let lt = self.layout(t).expect("product inside window");
        for j in 0..self.summands.len() {
            let comp = &v[l.offsets[j]..l.offsets[j] + l.idx[j].len()];
            if comp.iter().all(Scalar::is_zero) {
                continue;
            }
            let base = (d - self.summands[j].shift) as u32;
            for (ti, x) in comp.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let k = l.idx[j][ti];
                for (lidx, y) in a.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let xy = x * y;
                    for (r, c) in alg.basis_mult(base, k, e, lidx) {
                        // products stay inside e_p A
                        let pos = lt.idx[j].binary_search(r).expect("left idempotent preserved");
                        axpy(&mut out[lt.offsets[j] + pos], &xy, c);
                    }
                }
            }
        }
        out
    }

    /// Layout with the same summands on another window.
    pub fn rewindow(&self, alg: &TabulatedAlgebra, lo: i32, hi: i32) -> Result<FreeLayout, ModuleError> {
        FreeLayout::new(alg, self.summands.clone(), lo, hi)
    }

    pub fn shifted(&self, alg: &TabulatedAlgebra, n: i32) -> FreeLayout {
        let summands = self.summands.iter().map(|s| Summand { shift: s.shift - n, idem: s.idem }).collect();
        FreeLayout::new(alg, summands, self.lo - n, self.hi - n).expect("same window length")
    }
}
