//! Exact integer linear algebra: streaming row-echelon rank, kernel
//! certificates, and column-span membership. No floating point anywhere;
//! rows are reduced fraction-free over big integers and kept primitive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A row-echelon basis accumulated from a stream of integer rows.
pub struct RowBasis {
    cols: usize,
    /// (pivot column, reduced primitive row, index of the source row).
    rows: Vec<(usize, Vec<BigInt>, usize)>,
    fed: usize,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        RowBasis {
            cols,
            rows: Vec::new(),
            fed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.cols
    }

    /// Row indices at which the rank increased; the corresponding original
    /// rows form an invertible rank×rank system together with the pivot
    /// columns.
    pub fn pivot_row_indices(&self) -> Vec<usize> {
        self.rows.iter().map(|&(_, _, src)| src).collect()
    }

    /// Columns holding a pivot; they form a maximal independent subset of
    /// the columns fed so far.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|&(c, _, _)| c).collect()
    }

    /// Feeds one row; returns true when it increased the rank.
    pub fn feed(&mut self, row: &[i64]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let src = self.fed;
        self.fed += 1;
        let mut v: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        for (pc, prow, _) in &self.rows {
            if !v[*pc].is_zero() {
                let a = prow[*pc].clone();
                let b = v[*pc].clone();
                for j in 0..self.cols {
                    v[j] = &v[j] * &a - &prow[j] * &b;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pc) => {
                make_primitive(&mut v);
                self.rows.push((pc, v, src));
                self.rows.sort_by_key(|&(c, _, _)| c);
                true
            }
        }
    }

    /// A nonzero integer vector annihilated by every row fed so far, if the
    /// columns are dependent. The vector is primitive (content 1).
    pub fn kernel_vector(&self) -> Option<Vec<BigInt>> {
        if self.is_full_rank() {
            return None;
        }
        let pivot_cols: Vec<usize> = self.rows.iter().map(|&(c, _, _)| c).collect();
        let free = (0..self.cols).find(|c| !pivot_cols.contains(c))?;
        let mut x: Vec<BigRational> = vec![BigRational::zero(); self.cols];
        x[free] = BigRational::one();
        for (pc, prow, _) in self.rows.iter().rev() {
            let mut acc = BigRational::zero();
            for j in pc + 1..self.cols {
                if !prow[j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from(prow[j].clone()) * &x[j];
                }
            }
            x[*pc] = -acc / BigRational::from(prow[*pc].clone());
        }
        Some(clear_denominators(&x))
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = gcd(g, x.abs());
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in x {
        let d = r.denom().abs();
        let g = gcd(lcm.clone(), d.clone());
        lcm = lcm / g * d;
    }
    let mut out: Vec<BigInt> = x
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

/// Exact rank of the matrix whose rows are produced by the iterator,
/// together with a primitive kernel vector of the columns when they are
/// dependent. The kernel vector is re-verified against every row.
pub fn rank_with_kernel<'a, I>(rows: I, cols: usize) -> (usize, Option<Vec<BigInt>>)
where
    I: Iterator<Item = &'a [i64]> + Clone,
{
    let mut basis = RowBasis::new(cols);
    for row in rows.clone() {
        basis.feed(row);
        if basis.is_full_rank() {
            return (cols, None);
        }
    }
    let kernel = basis.kernel_vector();
    if let Some(ref k) = kernel {
        for row in rows {
            let dot: BigInt = row
                .iter()
                .zip(k)
                .map(|(&a, b)| BigInt::from(a) * b)
                .sum();
            assert!(dot.is_zero(), "kernel certificate failed to annihilate a row");
        }
    }
    (basis.rank(), kernel)
}

/// Decides membership of extra columns in the column span of a fixed
/// matrix: a maximal independent set of base columns is located once, a
/// candidate is solved against the pivot rows, and the claimed combination
/// is verified on every row.
pub struct SpanTester {
    /// all rows of the base matrix, restricted to the pivot columns
    rows: Vec<Vec<i64>>,
    pivot_rows: Vec<usize>,
    rank: usize,
}

impl SpanTester {
    pub fn new(rows: Vec<Vec<i64>>) -> SpanTester {
        let cols = rows.first().map_or(0, Vec::len);
        let mut basis = RowBasis::new(cols);
        for row in &rows {
            if basis.is_full_rank() {
                break;
            }
            basis.feed(row);
        }
        let pivot_cols = basis.pivot_cols();
        let rows: Vec<Vec<i64>> = rows
            .into_iter()
            .map(|row| pivot_cols.iter().map(|&c| row[c]).collect())
            .collect();
        SpanTester {
            pivot_rows: basis.pivot_row_indices(),
            rank: pivot_cols.len(),
            rows,
        }
    }

    /// Rank of the base columns.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Is `v` (one entry per row of the base matrix) a rational linear
    /// combination of the base columns?
    #[allow(clippy::needless_range_loop)] // 2-D elimination reads clearest indexed
    pub fn spans(&self, v: &[i64]) -> bool {
        debug_assert_eq!(v.len(), self.rows.len());
        // solve the pivot-row subsystem for the coefficients
        let k = self.rank;
        let mut aug: Vec<Vec<BigRational>> = self
            .pivot_rows
            .iter()
            .map(|&r| {
                let mut row: Vec<BigRational> = self.rows[r]
                    .iter()
                    .map(|&x| BigRational::from(BigInt::from(x)))
                    .collect();
                row.push(BigRational::from(BigInt::from(v[r])));
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k).find(|&r| !aug[r][col].is_zero());
            let Some(pr) = pivot else { return false };
            aug.swap(col, pr);
            let lead = aug[col][col].clone();
            for j in col..=k {
                let val = aug[col][j].clone() / &lead;
                aug[col][j] = val;
            }
            for r in 0..k {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for j in col..=k {
                        let delta = &factor * &aug[col][j];
                        aug[r][j] -= delta;
                    }
                }
            }
        }
        let x: Vec<BigRational> = (0..k).map(|r| aug[r][k].clone()).collect();
        // verify the combination on every row with cleared denominators
        let mut lcm = BigInt::one();
        for r in &x {
            let d = r.denom().abs();
            let g = gcd(lcm.clone(), d.clone());
            lcm = lcm / g * d;
        }
        let xi: Vec<BigInt> = x.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        for (row, &target) in self.rows.iter().zip(v) {
            let dot: BigInt = row
                .iter()
                .zip(&xi)
                .map(|(&a, b)| BigInt::from(a) * b)
                .sum();
            if dot != BigInt::from(target) * &lcm {
                return false;
            }
        }
        true
    }
}
