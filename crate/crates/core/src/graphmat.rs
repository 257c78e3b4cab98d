//! Hermitian matrices over the three rings, viewed as charged weighted graphs.
//!
//! Vertex `v` carries the charge `A[v][v]` and the edge from `u` to `v` has
//! weight `A[u][v]`. Storage is dense and row-major.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ring::{Ring, RingElement, RingError};

/// Largest matrix any search or canonicalization handles.
pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("charge at vertex {0} is not a rational integer")]
    IrrationalCharge(usize),
    #[error("row {row} has {len} entries, expected {n}")]
    Ragged { row: usize, len: usize, n: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {0} out of range for a {1}-vertex matrix")]
    VertexOutOfRange(usize, usize),
    #[error("duplicate vertex {0} in subset")]
    DuplicateVertex(usize),
    #[error("added column is zero")]
    ZeroColumn,
    #[error("column has length {got}, expected {expected}")]
    ColumnLength { got: usize, expected: usize },
    #[error("{0}-vertex matrix exceeds the capacity of {MAX_VERTICES}")]
    Capacity(usize),
    #[error("matrix file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A vertex addition: the new column `c` and the charge `x` of the new vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexAddition {
    pub column: Vec<RingElement>,
    pub charge: i64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermitianMatrix {
    ring: Ring,
    n: usize,
    entries: Vec<RingElement>,
}

impl HermitianMatrix {
    /// Builds a matrix from rows, checking shape, ring and the Hermitian property.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<RingElement>>) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::Ragged { row: r, len: row.len(), n });
            }
            for x in row {
                if x.ring != ring {
                    return Err(RingError::Mismatch(ring, x.ring).into());
                }
                entries.push(x);
            }
        }
        let m = HermitianMatrix { ring, n, entries };
        m.validate()?;
        Ok(m)
    }

    /// Builds a matrix from `(a, b)` pairs; convenient for tests and tables.
    pub fn from_pairs(ring: Ring, rows: &[Vec<(i64, i64)>]) -> Result<Self, GraphError> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&(a, b)| ring.element(a, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(ring, rows)
    }

    /// Builds a matrix over ℤ from integer rows.
    pub fn from_integers(ring: Ring, rows: &[Vec<i64>]) -> Result<Self, GraphError> {
        let rows = rows.iter().map(|row| row.iter().map(|&a| ring.integer(a)).collect()).collect();
        Self::from_rows(ring, rows)
    }

    pub fn zero(ring: Ring, n: usize) -> Self {
        HermitianMatrix { ring, n, entries: vec![ring.zero(); n * n] }
    }

    fn validate(&self) -> Result<(), GraphError> {
        for j in 0..self.n {
            if !self.get(j, j).is_real() {
                return Err(GraphError::IrrationalCharge(j));
            }
            for k in j + 1..self.n {
                if self.get(k, j) != self.get(j, k).conj() {
                    return Err(GraphError::NotHermitian(j, k));
                }
            }
        }
        Ok(())
    }

    fn debug_check(self) -> Self {
        debug_assert!(self.validate().is_ok(), "constructed a non-Hermitian matrix");
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> RingElement {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    /// Sets `A[u][v] = w` and `A[v][u] = w̄`; for `u == v` the value must be rational.
    pub fn set_edge(&mut self, u: usize, v: usize, w: RingElement) -> Result<(), GraphError> {
        if w.ring != self.ring {
            return Err(RingError::Mismatch(self.ring, w.ring).into());
        }
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange(u.max(v), self.n));
        }
        if u == v && !w.is_real() {
            return Err(GraphError::IrrationalCharge(u));
        }
        self.entries[u * self.n + v] = w;
        self.entries[v * self.n + u] = w.conj();
        Ok(())
    }

    pub fn charge(&self, v: usize) -> i64 {
        self.get(v, v).a
    }

    pub fn is_charged(&self, v: usize) -> bool {
        self.charge(v) != 0
    }

    pub fn has_charges(&self) -> bool {
        (0..self.n).any(|v| self.is_charged(v))
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        u != v && !self.get(u, v).is_zero()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.is_edge(u, v))
    }

    /// `d_v = Σ_u |w(u, v)|²`, the diagonal term included.
    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n).map(|u| self.get(u, v).norm()).sum()
    }

    /// The degree with the charge term left out.
    pub fn degree_without_charge(&self, v: usize) -> u64 {
        self.degree(v) - self.get(v, v).norm()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// w_max, the largest off-diagonal entry norm (0 for a single vertex).
    pub fn max_offdiag_norm(&self) -> u64 {
        let mut best = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                best = best.max(self.get(u, v).norm());
            }
        }
        best
    }

    /// x_max, the largest absolute charge.
    pub fn max_charge_abs(&self) -> u64 {
        (0..self.n).map(|v| self.charge(v).unsigned_abs()).max().unwrap_or(0)
    }

    /// True when some entry has a nonzero θ-component.
    pub fn has_complex_entry(&self) -> bool {
        self.entries.iter().any(|x| !x.is_real())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && self.is_edge(u, v) {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Connected components, each sorted, ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for u in 0..self.n {
                    if comp[u] == usize::MAX && self.is_edge(u, v) {
                        comp[u] = id;
                        members.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Restriction to `keep`, in the given order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self, GraphError> {
        if keep.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut seen = vec![false; self.n];
        for &v in keep {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
            if seen[v] {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen[v] = true;
        }
        Ok(self.submatrix_unchecked(keep))
    }

    pub(crate) fn submatrix_unchecked(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut entries = Vec::with_capacity(m * m);
        for &r in keep {
            for &c in keep {
                entries.push(self.get(r, c));
            }
        }
        HermitianMatrix { ring: self.ring, n: m, entries }
    }

    /// The matrix with vertex `v` deleted.
    pub fn delete_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.submatrix_unchecked(&keep)
    }

    /// The supermatrix with the addition's column and charge appended as vertex `n`.
    pub fn extend(&self, add: &VertexAddition) -> Result<Self, GraphError> {
        if add.column.len() != self.n {
            return Err(GraphError::ColumnLength { got: add.column.len(), expected: self.n });
        }
        if let Some(x) = add.column.iter().find(|x| x.ring != self.ring) {
            return Err(RingError::Mismatch(self.ring, x.ring).into());
        }
        if add.column.iter().all(|x| x.is_zero()) {
            return Err(GraphError::ZeroColumn);
        }
        Ok(self.extend_unchecked(&add.column, add.charge))
    }

    pub(crate) fn extend_unchecked(&self, column: &[RingElement], charge: i64) -> Self {
        let n = self.n;
        let m = n + 1;
        let mut entries = Vec::with_capacity(m * m);
        for r in 0..n {
            entries.extend_from_slice(&self.entries[r * n..(r + 1) * n]);
            entries.push(column[r]);
        }
        entries.extend(column.iter().map(|x| x.conj()));
        entries.push(self.ring.integer(charge));
        HermitianMatrix { ring: self.ring, n: m, entries }.debug_check()
    }

    /// `B[i][j] = A[perm[i]][perm[j]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        self.submatrix_unchecked(perm)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, GraphError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(self.ring, other.ring).into());
        }
        let m = self.n + other.n;
        let mut out = HermitianMatrix::zero(self.ring, m);
        for r in 0..self.n {
            for c in 0..self.n {
                out.entries[r * m + c] = self.get(r, c);
            }
        }
        for r in 0..other.n {
            for c in 0..other.n {
                out.entries[(r + self.n) * m + c + self.n] = other.get(r, c);
            }
        }
        Ok(out)
    }

    /// A² computed exactly.
    pub fn square(&self) -> Vec<RingElement> {
        let n = self.n;
        let mut out = vec![self.ring.zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = self.ring.zero();
                for k in 0..n {
                    acc = acc + self.get(r, k) * self.get(k, c);
                }
                out[r * n + c] = acc;
            }
        }
        out
    }

    /// Same matrix reinterpreted over another ring; only valid when all entries are rational.
    pub fn to_ring(&self, ring: Ring) -> Result<Self, GraphError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for x in &self.entries {
            if !x.is_real() {
                return Err(RingError::NotRational(x.to_string()).into());
            }
            entries.push(ring.integer(x.a));
        }
        Ok(HermitianMatrix { ring, n: self.n, entries })
    }

    pub(crate) fn from_entries_unchecked(ring: Ring, n: usize, entries: Vec<RingElement>) -> Self {
        HermitianMatrix { ring, n, entries }.debug_check()
    }

    /// The matrix file format: a `ring:` line, an `n:` line, then one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("ring: {}\nn: {}\n", self.ring, self.n);
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, reason: String| GraphError::Parse { line, reason };
        let (ln, first) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
        let ring_name = first
            .strip_prefix("ring:")
            .ok_or_else(|| perr(ln, "expected `ring: <name>`".into()))?;
        let ring: Ring = ring_name.parse().map_err(|e: RingError| perr(ln, e.to_string()))?;
        let (ln, second) = lines.next().ok_or_else(|| perr(ln + 1, "missing `n:` line".into()))?;
        let n: usize = second
            .strip_prefix("n:")
            .ok_or_else(|| perr(ln, "expected `n: <int>`".into()))?
            .trim()
            .parse()
            .map_err(|_| perr(ln, "invalid vertex count".into()))?;
        let mut rows = Vec::with_capacity(n);
        for (ln, line) in lines {
            if rows.len() == n {
                return Err(perr(ln, "more rows than declared".into()));
            }
            let row = line
                .split_whitespace()
                .map(|t| RingElement::parse(t, ring))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| perr(ln, e.to_string()))?;
            if row.len() != n {
                return Err(perr(ln, format!("row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(perr(0, format!("found {} rows, expected {n}", rows.len())));
        }
        Self::from_rows(ring, rows)
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianMatrix(")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, " over {})", self.ring)
    }
}

impl fmt::Display for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for HermitianMatrix {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::parse_text(&s).map_err(serde::de::Error::custom)
    }
}
