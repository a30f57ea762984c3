//! Involutive double-coset data `W₂[M]` for a standard Levi `M_(m_1,…,m_t)`.
//!
//! An element is a refinement `L ⊆ M` of every block together with an
//! involution ε on the cells of `L`. Cells keep their size under ε, and the
//! cells of one block are sent to strictly increasing blocks. Because of the
//! second condition each block sends at most one cell to any given block,
//! so an element is the same thing as a symmetric matrix `N` of non-negative
//! integers with row sums `m_i`. Block `i` is refined by the non-zero
//! entries of row `i` in column order, and ε swaps cell `(i,k)` with `(k,i)`.
//! The enumeration walks these matrices.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    /// Parts must be positive.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.iter().all(|&m| m > 0),
            "composition parts must be ≥ 1"
        );
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cell `(block, pos)` of a refinement, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub block: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetInvolution {
    base: Composition,
    refinement: Vec<Vec<usize>>,
    cells: Vec<Cell>,
    /// ε on flat cell indices (lexicographic order of cells).
    eps: Vec<usize>,
}

impl CosetInvolution {
    /// Builds an element from a refinement and ε, checking the involution,
    /// size and ordering conditions. Returns `None` if any fails.
    pub fn from_parts(
        base: Composition,
        refinement: Vec<Vec<usize>>,
        eps: Vec<usize>,
    ) -> Option<Self> {
        if refinement.len() != base.len()
            || refinement
                .iter()
                .zip(base.parts())
                .any(|(r, &m)| r.iter().sum::<usize>() != m || r.contains(&0))
        {
            return None;
        }
        let cells: Vec<Cell> = refinement
            .iter()
            .enumerate()
            .flat_map(|(block, r)| (0..r.len()).map(move |pos| Cell { block, pos }))
            .collect();
        if eps.len() != cells.len() || eps.iter().any(|&e| e >= cells.len()) {
            return None;
        }
        let w = CosetInvolution {
            base,
            refinement,
            cells,
            eps,
        };
        (w.is_involution() && w.preserves_sizes() && w.satisfies_ordering()).then_some(w)
    }

    pub fn base(&self) -> &Composition {
        &self.base
    }

    /// `M(w)` as per-block compositions.
    pub fn refinement(&self) -> &[Vec<usize>] {
        &self.refinement
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_size(&self, flat: usize) -> usize {
        let c = self.cells[flat];
        self.refinement[c.block][c.pos]
    }

    pub fn eps(&self, flat: usize) -> usize {
        self.eps[flat]
    }

    pub fn eps_map(&self) -> &[usize] {
        &self.eps
    }

    pub fn flat_index(&self, cell: Cell) -> Option<usize> {
        self.cells.iter().position(|&c| c == cell)
    }

    /// `w ∈ W^M`: no block is refined.
    pub fn is_admissible(&self) -> bool {
        self.refinement.iter().all(|r| r.len() == 1)
    }

    pub fn is_identity(&self) -> bool {
        self.eps.iter().enumerate().all(|(i, &e)| i == e)
    }

    /// Lexicographically least cell of every ε-orbit.
    pub fn orbit_representatives(&self) -> Vec<Cell> {
        self.eps
            .iter()
            .enumerate()
            .filter(|(i, &e)| e >= *i)
            .map(|(i, _)| self.cells[i])
            .collect()
    }

    pub fn fixed_cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.eps
            .iter()
            .enumerate()
            .filter(|(i, &e)| *i == e)
            .map(|(i, _)| i)
    }

    pub fn is_involution(&self) -> bool {
        self.eps.iter().enumerate().all(|(i, &e)| self.eps[e] == i)
    }

    pub fn preserves_sizes(&self) -> bool {
        (0..self.cells.len()).all(|i| self.cell_size(i) == self.cell_size(self.eps[i]))
    }

    /// Cells of one block go to strictly increasing blocks.
    pub fn satisfies_ordering(&self) -> bool {
        (0..self.cells.len()).all(|i| {
            let next = i + 1;
            next >= self.cells.len()
                || self.cells[next].block != self.cells[i].block
                || self.cells[self.eps[i]].block < self.cells[self.eps[next]].block
        })
    }

    /// No two adjacent cells of a block map onto two adjacent cells (in order)
    /// of one block; such a pair would come from a coarser refinement.
    pub fn is_merge_free(&self) -> bool {
        (0..self.cells.len().saturating_sub(1)).all(|i| {
            let (c, d) = (self.cells[i], self.cells[i + 1]);
            if c.block != d.block {
                return true;
            }
            let (x, y) = (self.cells[self.eps[i]], self.cells[self.eps[i + 1]]);
            !(x.block == y.block && y.pos == x.pos + 1)
        })
    }

    /// The symmetric block-intersection matrix of the element.
    pub fn matrix(&self) -> Vec<Vec<usize>> {
        let t = self.base.len();
        let mut n = vec![vec![0; t]; t];
        for (i, c) in self.cells.iter().enumerate() {
            n[c.block][self.cells[self.eps[i]].block] += self.cell_size(i);
        }
        n
    }

    fn from_matrix(base: &Composition, n: &[Vec<usize>]) -> Self {
        let t = base.len();
        let refinement: Vec<Vec<usize>> = n
            .iter()
            .map(|row| row.iter().copied().filter(|&x| x > 0).collect())
            .collect();
        // flat index of the cell in row i, column k
        let mut at = vec![vec![usize::MAX; t]; t];
        let mut cells = Vec::new();
        for i in 0..t {
            let mut pos = 0;
            for k in 0..t {
                if n[i][k] > 0 {
                    at[i][k] = cells.len();
                    cells.push(Cell { block: i, pos });
                    pos += 1;
                }
            }
        }
        let mut eps = vec![0; cells.len()];
        for i in 0..t {
            for k in 0..t {
                if n[i][k] > 0 {
                    eps[at[i][k]] = at[k][i];
                }
            }
        }
        CosetInvolution {
            base: base.clone(),
            refinement,
            cells,
            eps,
        }
    }
}

impl fmt::Display for CosetInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let refs: Vec<String> = self
            .refinement
            .iter()
            .map(|r| {
                let p: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({})", p.join(","))
            })
            .collect();
        let mut orbits = Vec::new();
        for (i, &e) in self.eps.iter().enumerate() {
            let c = self.cells[i];
            if e == i {
                orbits.push(format!("({},{})", c.block + 1, c.pos + 1));
            } else if e > i {
                let d = self.cells[e];
                orbits.push(format!(
                    "({},{})<->({},{})",
                    c.block + 1,
                    c.pos + 1,
                    d.block + 1,
                    d.pos + 1
                ));
            }
        }
        write!(f, "L=[{}] eps={{{}}}", refs.join(" "), orbits.join(" "))
    }
}

/// All elements of `W₂[M]`. With `divisor_filter = Some(d)` only refinements
/// whose cells are multiples of `d` are produced.
pub fn enumerate_w2(m: &Composition, divisor_filter: Option<usize>) -> Vec<CosetInvolution> {
    let step = divisor_filter.unwrap_or(1).max(1);
    let t = m.len();
    let mut n = vec![vec![0usize; t]; t];
    let mut rem: Vec<usize> = m.parts().to_vec();
    let mut out = Vec::new();
    if m.parts().iter().any(|p| !p.is_multiple_of(&step)) {
        return out;
    }
    fill(m, step, 0, 0, &mut n, &mut rem, &mut out);
    out
}

// Fills the upper triangle row by row; `rem[j]` is what row j still needs.
fn fill(
    m: &Composition,
    step: usize,
    i: usize,
    k: usize,
    n: &mut Vec<Vec<usize>>,
    rem: &mut Vec<usize>,
    out: &mut Vec<CosetInvolution>,
) {
    let t = m.len();
    if i == t {
        out.push(CosetInvolution::from_matrix(m, n));
        return;
    }
    if k == t {
        if rem[i] == 0 {
            fill(m, step, i + 1, i + 1, n, rem, out);
        }
        return;
    }
    let cap = if k == i { rem[i] } else { rem[i].min(rem[k]) };
    let mut x = 0;
    while x <= cap {
        n[i][k] = x;
        n[k][i] = x;
        rem[i] -= x;
        if k != i {
            rem[k] -= x;
        }
        fill(m, step, i, k + 1, n, rem, out);
        rem[i] += x;
        if k != i {
            rem[k] += x;
        }
        x += step;
    }
    n[i][k] = 0;
    n[k][i] = 0;
}
