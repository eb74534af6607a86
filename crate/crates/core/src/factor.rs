//! Witness trifactorizations `A = B·C·Bᵀ` with 0/1 factors.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::cover::{canonical_form, cover_graph, Cover, CoverBuilder};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense nonnegative integer matrix with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major rows of equal length. An empty list is the 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::arg(format!(
                "row {i} has {} entries, expected {cols}",
                rows[i].len()
            )));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// A matrix with `rows` rows and no columns keeps its row count here,
    /// unlike [`IntMatrix::from_rows`] on empty rows.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::arg("entry count does not match the shape"));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::arg(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or_else(|| Error::Overflow("matrix product entry".into()))?;
                    out.set(i, j, add);
                }
            }
        }
        Ok(out)
    }

    /// Nonzero column indices of row `i`.
    pub fn row_support(&self, i: usize) -> VertexSet {
        VertexSet::from_iter_width(self.cols, (0..self.cols).filter(|&j| self.get(i, j) != 0))
    }

    /// Nonzero row indices of column `j`.
    pub fn col_support(&self, j: usize) -> VertexSet {
        VertexSet::from_iter_width(self.rows, (0..self.rows).filter(|&i| self.get(i, j) != 0))
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl TryFrom<Vec<Vec<u64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self> {
        IntMatrix::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<u64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

/// Row supports `ℛ_i` of `B`, as subsets of the column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportList {
    pub supports: Vec<VertexSet>,
}

impl SupportList {
    pub fn of(b: &IntMatrix) -> Self {
        SupportList {
            supports: (0..b.rows()).map(|i| b.row_support(i)).collect(),
        }
    }
}

/// `B` has one row per vertex and one column per component (canonical
/// order), with `b_ij = 1` iff vertex `i` lies in component `j`; `C` is the
/// adjacency matrix of the cover graph.
pub fn cover_to_factors(cover: &Cover) -> (IntMatrix, IntMatrix) {
    let c = canonical_form(cover);
    let (n, k) = (c.ground_n(), c.order());
    let mut b = IntMatrix::zeros(n, k);
    for (j, comp) in c.components().iter().enumerate() {
        for i in comp.set().iter() {
            b.set(i, j, 1);
        }
    }
    let g = cover_graph(&c);
    let mut cm = IntMatrix::zeros(k, k);
    for (x, y) in g.edges0() {
        cm.set(x, y, 1);
        cm.set(y, x, 1);
    }
    (b, cm)
}

/// The cover read off a factorization: column supports of `B` joined
/// wherever `C` is positive. Columns with empty support are skipped.
pub fn factors_to_cover(b: &IntMatrix, c: &IntMatrix) -> Result<Cover> {
    if c.rows() != b.cols() || !c.is_square() {
        return Err(Error::arg("C must be square with one row per column of B"));
    }
    let mut builder = CoverBuilder::new(b.rows());
    let supports: Vec<VertexSet> = (0..b.cols()).map(|j| b.col_support(j)).collect();
    for x in 0..c.rows() {
        for y in x..c.cols() {
            if (c.get(x, y) != 0 || c.get(y, x) != 0)
                && !supports[x].is_empty()
                && !supports[y].is_empty()
            {
                builder.join_sets(supports[x].clone(), supports[y].clone())?;
            }
        }
    }
    Ok(builder.build())
}

/// `B · C · Bᵀ` in exact integer arithmetic.
pub fn triproduct(b: &IntMatrix, c: &IntMatrix) -> Result<IntMatrix> {
    if !c.is_square() || c.rows() != b.cols() {
        return Err(Error::arg(format!(
            "B is {}x{} but C is {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    if !c.is_symmetric() {
        return Err(Error::arg("C must be symmetric"));
    }
    b.mul(c)?.mul(&b.transpose())
}

/// `G(A)`: an edge wherever `a_ij > 0`, a loop wherever `a_ii > 0`.
pub fn pattern_of(a: &IntMatrix) -> Result<Graph> {
    if !a.is_symmetric() {
        return Err(Error::arg("pattern_of needs a symmetric matrix"));
    }
    let mut g = Graph::new(a.rows());
    for i in 0..a.rows() {
        for j in i..a.cols() {
            if a.get(i, j) > 0 {
                g.set0(i, j);
            }
        }
    }
    Ok(g)
}

/// Whether `B·C·Bᵀ` has exactly the pattern `G`, loops included.
pub fn verify_realization(g: &Graph, b: &IntMatrix, c: &IntMatrix) -> bool {
    b.rows() == g.order()
        && triproduct(b, c)
            .and_then(|a| pattern_of(&a))
            .is_ok_and(|p| &p == g)
}

/// Checks that `C[ℛ_i, ℛ_j]` is zero exactly when `a_ij = 0`.
pub fn support_condition_check(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix) -> Result<bool> {
    if &triproduct(b, c)? != a {
        return Err(Error::arg("A is not B·C·Bᵀ"));
    }
    let supp = SupportList::of(b).supports;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let block_zero = supp[i]
                .iter()
                .all(|x| supp[j].iter().all(|y| c.get(x, y) == 0));
            if block_zero != (a.get(i, j) == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
