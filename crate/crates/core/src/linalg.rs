//! Linear algebra over `F_p`, `F_q` and `F_{q^m}`.
//!
//! `F_q`-linear questions about elements of `F_{q^m}` are answered over `F_p`:
//! the `F_q`-span of a set equals the `F_p`-span of all products with an
//! `F_p`-basis of the embedded `F_q`, so `F_q`-dimensions are `F_p`-dimensions
//! divided by `ell`.

use crate::galois::{fp_poly, Fe, FieldTower, GaloisField};

/// Incremental row echelon form over `F_p` for digit vectors of one field level.
#[derive(Clone, Debug)]
pub struct FpSpan {
    p: u32,
    width: usize,
    // p = 2: vectors packed as bits, keyed by their highest set bit.
    binary: Vec<u64>,
    // odd p: rows with a unit pivot, paired with pivot column.
    rows: Vec<(usize, Vec<u32>)>,
}

impl FpSpan {
    pub fn new(p: u32, width: usize) -> Self {
        FpSpan { p, width, binary: Vec::new(), rows: Vec::new() }
    }

    pub fn for_field(field: &GaloisField) -> Self {
        Self::new(field.p(), field.degree())
    }

    pub fn dim(&self) -> usize {
        if self.p == 2 {
            self.binary.len()
        } else {
            self.rows.len()
        }
    }

    fn reduce_bits(&self, mut v: u64) -> u64 {
        for &b in &self.binary {
            let top = 63 - b.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    fn reduce_digits(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + p as u64 - (c as u64 * r as u64) % p as u64) % p as u64) as u32;
                }
            }
        }
        v
    }

    /// Inserts a field element (by encoding); returns whether the span grew.
    pub fn insert_element(&mut self, field: &GaloisField, x: Fe) -> bool {
        if self.p == 2 {
            self.insert_bits(x.0 as u64)
        } else {
            self.insert_digits(field.digits(x))
        }
    }

    pub fn contains_element(&self, field: &GaloisField, x: Fe) -> bool {
        if self.p == 2 {
            self.reduce_bits(x.0 as u64) == 0
        } else {
            self.reduce_digits(field.digits(x)).iter().all(|&c| c == 0)
        }
    }

    pub fn insert_bits(&mut self, v: u64) -> bool {
        let r = self.reduce_bits(v);
        if r == 0 {
            return false;
        }
        let top = 63 - r.leading_zeros();
        for b in self.binary.iter_mut() {
            if (*b >> top) & 1 == 1 {
                *b ^= r;
            }
        }
        self.binary.push(r);
        self.binary.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn insert_digits(&mut self, v: Vec<u32>) -> bool {
        if self.p == 2 {
            let bits = v.iter().enumerate().fold(0u64, |acc, (i, &d)| acc | ((d as u64 & 1) << i));
            return self.insert_bits(bits);
        }
        debug_assert_eq!(v.len(), self.width);
        let p = self.p;
        let mut r = self.reduce_digits(v);
        let Some(piv) = r.iter().position(|&c| c != 0) else { return false };
        let inv = fp_poly::inv_mod_p(r[piv], p);
        for x in r.iter_mut() {
            *x = ((*x as u64 * inv as u64) % p as u64) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = ((*x as u64 + p as u64 - (c as u64 * y as u64) % p as u64) % p as u64) as u32;
                }
            }
        }
        self.rows.push((piv, r));
        true
    }
}

/// Incremental `F_q`-span of elements of `F_{q^m}`.
#[derive(Clone, Debug)]
pub struct FqSpan<'a> {
    tower: &'a FieldTower,
    inner: FpSpan,
    basis: Vec<Fe>,
}

impl<'a> FqSpan<'a> {
    pub fn new(tower: &'a FieldTower) -> Self {
        FqSpan { tower, inner: FpSpan::for_field(tower.top()), basis: Vec::new() }
    }

    /// Adds `x`; returns whether the `F_q`-dimension grew.
    pub fn insert(&mut self, x: Fe) -> bool {
        let top = self.tower.top();
        if self.inner.contains_element(top, x) {
            return false;
        }
        for &g in self.tower.fq_basis() {
            self.inner.insert_element(top, top.mul(g, x));
        }
        self.basis.push(x);
        true
    }

    pub fn contains(&self, x: Fe) -> bool {
        self.inner.contains_element(self.tower.top(), x)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The inserted elements that grew the span, in insertion order.
    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }
}

/// `F_q`-dimension of the span of `elems` inside `F_{q^m}`.
pub fn fq_rank(tower: &FieldTower, elems: &[Fe]) -> usize {
    if tower.ell() == 1 {
        let mut span = FpSpan::for_field(tower.top());
        return elems.iter().filter(|&&x| span.insert_element(tower.top(), x)).count();
    }
    let mut span = FqSpan::new(tower);
    for &x in elems {
        span.insert(x);
    }
    span.dim()
}

/// Null space over `F_p` of the matrix whose columns are `cols` (each of length `rows`).
///
/// Returns a basis of coefficient vectors `c` with `Σ c_j cols[j] = 0`.
pub fn fp_nullspace(p: u32, cols: &[Vec<u32>], rows: usize) -> Vec<Vec<u32>> {
    let ncols = cols.len();
    let mut a: Vec<Vec<u32>> = (0..rows).map(|i| cols.iter().map(|c| c[i] % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = fp_poly::inv_mod_p(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = ((*x as u64 * inv as u64) % p as u64) as u32;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, &y) in dst.iter_mut().zip(src.iter()) {
                    *x = ((*x as u64 + p as u64 - (f as u64 * y as u64) % p as u64) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Solves the square system `a · x = b` over a Galois field; `None` if singular.
pub fn solve(field: &GaloisField, mut a: Vec<Vec<Fe>>, mut b: Vec<Fe>) -> Option<Vec<Fe>> {
    let n = a.len();
    for col in 0..n {
        let pr = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pr);
        b.swap(col, pr);
        let inv = field.inv(a[col][col]).ok()?;
        for x in a[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        b[col] = field.mul(b[col], inv);
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in col..n {
                    let t = field.mul(f, a[col][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
                b[i] = field.sub(b[i], field.mul(f, b[col]));
            }
        }
    }
    Some(b)
}

/// Determinant by elimination.
pub fn determinant(field: &GaloisField, mut a: Vec<Vec<Fe>>) -> Fe {
    let n = a.len();
    let mut det = Fe::ONE;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| !a[i][col].is_zero()) else { return Fe::ZERO };
        if pr != col {
            a.swap(col, pr);
            det = field.neg(det);
        }
        let piv = a[col][col];
        det = field.mul(det, piv);
        let inv = field.inv(piv).expect("nonzero pivot");
        for i in col + 1..n {
            let f = field.mul(a[i][col], inv);
            if !f.is_zero() {
                for j in col..n {
                    let t = field.mul(f, a[col][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
    }
    det
}
