//! Tensor realizations at matrix size `n`, Gram matrices of pairings and
//! exact ranks.
//!
//! A diagram `D: α → β` with partition `π = unfatten(D)` is realized as the
//! 0/1 map `δ_π` whose coefficient at an index assignment (one index per leg)
//! is 1 exactly when the indices are constant on every block of `π`.
//! Coefficients are stored row-major: lower-leg indices form the row (most
//! significant leg first), upper-leg indices the column.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::partition::unfatten;

/// Largest `n` accepted for dense realizations.
pub const MAX_DENSE_N: u32 = 4;
/// Largest coefficient count of a dense realization.
pub const MAX_DENSE_ENTRIES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Guard("dimension must be at least 1".into()));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Dense integer map from `n^upper_legs` inputs to `n^lower_legs` outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorMap {
    n: u32,
    upper_legs: usize,
    lower_legs: usize,
    coeffs: Vec<i64>,
}

fn dense_size(n: u32, legs: usize) -> Result<usize> {
    if n > MAX_DENSE_N {
        return Err(Error::Guard(format!("dense realization needs n ≤ {MAX_DENSE_N}, got {n}")));
    }
    (n as usize)
        .checked_pow(legs as u32)
        .filter(|&s| s <= MAX_DENSE_ENTRIES)
        .ok_or_else(|| Error::Guard(format!("{n}^{legs} coefficients exceed {MAX_DENSE_ENTRIES}")))
}

impl TensorMap {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn upper_legs(&self) -> usize {
        self.upper_legs
    }

    pub fn lower_legs(&self) -> usize {
        self.lower_legs
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn rows(&self) -> usize {
        (self.n as usize).pow(self.lower_legs as u32)
    }

    fn cols(&self) -> usize {
        (self.n as usize).pow(self.upper_legs as u32)
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.coeffs[row * self.cols() + col]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &TensorMap) -> Result<TensorMap> {
        if self.n != first.n || self.upper_legs != first.lower_legs {
            return Err(Error::Guard("tensor maps are not composable".into()));
        }
        let (r, m, c) = (self.rows(), self.cols(), first.cols());
        let mut coeffs = vec![0i64; r * c];
        for i in 0..r {
            for k in 0..m {
                let a = self.coeffs[i * m + k];
                if a == 0 {
                    continue;
                }
                for j in 0..c {
                    coeffs[i * c + j] += a * first.coeffs[k * c + j];
                }
            }
        }
        Ok(TensorMap { n: self.n, upper_legs: first.upper_legs, lower_legs: self.lower_legs, coeffs })
    }

    pub fn scaled(&self, factor: i64) -> TensorMap {
        TensorMap { coeffs: self.coeffs.iter().map(|x| x * factor).collect(), ..self.clone() }
    }

    /// Kronecker product, matching the diagram tensor product.
    pub fn kron(&self, other: &TensorMap) -> Result<TensorMap> {
        if self.n != other.n {
            return Err(Error::Guard("tensor maps over different n".into()));
        }
        dense_size(self.n, self.upper_legs + self.lower_legs + other.upper_legs + other.lower_legs)?;
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), other.rows(), other.cols());
        let cols = c1 * c2;
        let mut coeffs = vec![0i64; r1 * r2 * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.coeffs[i1 * c1 + j1];
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        coeffs[(i1 * r2 + i2) * cols + j1 * c2 + j2] = a * other.coeffs[i2 * c2 + j2];
                    }
                }
            }
        }
        Ok(TensorMap {
            n: self.n,
            upper_legs: self.upper_legs + other.upper_legs,
            lower_legs: self.lower_legs + other.lower_legs,
            coeffs,
        })
    }

    pub fn transpose(&self) -> TensorMap {
        let (r, c) = (self.rows(), self.cols());
        let mut coeffs = vec![0i64; r * c];
        for i in 0..r {
            for j in 0..c {
                coeffs[j * r + i] = self.coeffs[i * c + j];
            }
        }
        TensorMap { n: self.n, upper_legs: self.lower_legs, lower_legs: self.upper_legs, coeffs }
    }
}

/// The `δ_π` realization of a diagram.
pub fn realize(d: &Diagram, n: Dimension) -> Result<TensorMap> {
    let n = n.get();
    let (k, l) = (d.upper().len(), d.lower().len());
    let size = dense_size(n, k + l)?;
    let part = unfatten(d);
    let labels = part.labels();
    // digit order: lower legs, then upper legs
    let order: Vec<usize> = (k..k + l).chain(0..k).collect();
    let blocks = part.num_blocks();
    let mut coeffs = vec![0i64; size];
    let mut values = vec![0usize; blocks];
    loop {
        let idx = order.iter().fold(0usize, |acc, &leg| acc * n as usize + values[labels[leg]]);
        coeffs[idx] = 1;
        // next assignment of block values
        let mut b = 0;
        while b < blocks {
            values[b] += 1;
            if values[b] < n as usize {
                break;
            }
            values[b] = 0;
            b += 1;
        }
        if b == blocks {
            break;
        }
    }
    Ok(TensorMap { n, upper_legs: k, lower_legs: l, coeffs })
}

/// Whether `realize(E) ∘ realize(D) = n^rc · realize(E ∘ D)` holds exactly.
pub fn check_functorial(d: &Diagram, e: &Diagram, n: Dimension) -> Result<bool> {
    let (comp, rc) = d.compose(e)?;
    let lhs = realize(e, n)?.after(&realize(d, n)?)?;
    let rhs = realize(&comp, n)?.scaled((n.get() as i64).pow(rc as u32));
    Ok(lhs == rhs)
}

/// Pairings `n^rc(bend(D) ∘ involute(bend(E)))` over one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub n: u32,
    pub basis: Vec<Diagram>,
    pub entries: Vec<Vec<u64>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

pub fn gram(cell: &[Diagram], n: Dimension) -> Result<GramMatrix> {
    if let Some(first) = cell.first() {
        if let Some(d) = cell.iter().find(|d| d.upper() != first.upper() || d.lower() != first.lower()) {
            return Err(Error::WordMismatch { lower: first.lower().clone(), upper: d.lower().clone() });
        }
    }
    let bent: Vec<Diagram> = cell.iter().map(Diagram::bend).collect();
    let flipped: Vec<Diagram> = bent.iter().map(Diagram::involute).collect();
    let entries = bent
        .par_iter()
        .map(|d| {
            flipped
                .iter()
                .map(|e| {
                    let (_, rc) = d.compose(e)?;
                    (n.get() as u64)
                        .checked_pow(rc as u32)
                        .ok_or_else(|| Error::Guard(format!("{}^{rc} overflows", n.get())))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GramMatrix { n: n.get(), basis: cell.to_vec(), entries })
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn rank_of_rows(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let p = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..cols {
                let v = (&p[col] * &row[j] - &row[col] * &p[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = p[col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank_exact(g: &GramMatrix) -> usize {
    rank_of_rows(g.entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

/// Dimension of the span of the realized diagrams, from their coefficients
/// alone.
pub fn span_dim_oracle(cell: &[Diagram], n: Dimension) -> Result<usize> {
    let rows = cell
        .iter()
        .map(|d| Ok(realize(d, n)?.coeffs.iter().map(|&x| BigInt::from(x)).collect()))
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    Ok(rank_of_rows(rows))
}

#[derive(Debug, Clone, Serialize)]
pub struct Stabilization {
    pub diagrams: usize,
    /// `(n, rank)` for every `n` tried.
    pub ranks: Vec<(u32, usize)>,
    /// Smallest `n` from which the rank equals the diagram count on the
    /// whole tested range.
    pub threshold: Option<u32>,
}

/// Gram ranks for `n = 1..=max_n`.
pub fn stabilization(cell: &[Diagram], max_n: u32) -> Result<Stabilization> {
    let ranks = (1..=max_n)
        .map(|n| Ok((n, rank_exact(&gram(cell, Dimension::new(n)?)?))))
        .collect::<Result<Vec<_>>>()?;
    let threshold = ranks
        .iter()
        .rposition(|&(_, r)| r != cell.len())
        .map_or(Some(1), |i| ranks.get(i + 1).map(|&(n, _)| n));
    Ok(Stabilization { diagrams: cell.len(), ranks, threshold })
}
