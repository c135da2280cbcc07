//! Graph isomorphism as a group-action discrete logarithm: `S_n` acts on
//! adjacency matrices by `M^g = P_g M P_g⁻¹`, i.e. vertex `i` is relabeled `i^g`.

use std::fmt::Write as _;
use std::time::Duration;

use rand::Rng;

use super::{AppError, Budget};
use crate::perm::Permutation;
use crate::solver::{solve, verify, GroupAction, SolveReport, Verdict};
use crate::splitting::SplitPlan;

/// Simple undirected graph on `n` vertices: symmetric 0/1 matrix with zero
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjacencyMatrix {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![false; n * n],
        }
    }

    /// Builds from 0-based edges; repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, AppError> {
        let mut m = Self::empty(n);
        for &(u, v) in edges {
            m.add_edge(u, v)?;
        }
        Ok(m)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut m = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                m.set(u, v, true);
            }
        }
        m
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut m = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    m.set(u, v, true);
                }
            }
        }
        m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), AppError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(AppError::VertexOutOfRange {
                    vertex: x + 1,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(AppError::SelfLoop(u + 1));
        }
        self.set(u, v, true);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        self.bits[u * self.n + v] = on;
        self.bits[v * self.n + u] = on;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    /// 0-based edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n)
            .map(|u| (0..self.n).filter(|&v| self.has_edge(u, v)).count())
            .collect();
        d.sort_unstable();
        d
    }

    pub fn triangle_count(&self) -> usize {
        let n = self.n;
        let mut t = 0;
        for a in 0..n {
            for b in a + 1..n {
                if !self.has_edge(a, b) {
                    continue;
                }
                t += (b + 1..n)
                    .filter(|&c| self.has_edge(a, c) && self.has_edge(b, c))
                    .count();
            }
        }
        t
    }

    /// Parses the edge-list format: first non-comment line `n`, then `u v`
    /// lines with 1-based vertices. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, AppError> {
        let mut graph: Option<Self> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| AppError::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    if fields.len() != 1 {
                        return Err(parse_err(format!("expected vertex count, got {line:?}")));
                    }
                    let n = fields[0]
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad vertex count {:?}", fields[0])))?;
                    if n == 0 {
                        return Err(parse_err("vertex count must be >= 1".into()));
                    }
                    graph = Some(Self::empty(n));
                }
                Some(g) => {
                    if fields.len() != 2 {
                        return Err(parse_err(format!("expected \"u v\", got {line:?}")));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, tok) in ends.iter_mut().zip(&fields) {
                        let v = tok
                            .parse::<usize>()
                            .map_err(|_| parse_err(format!("bad vertex {tok:?}")))?;
                        if v == 0 || v > g.n {
                            return Err(parse_err(format!("vertex {v} out of range 1..={}", g.n)));
                        }
                        *slot = v - 1;
                    }
                    if ends[0] == ends[1] {
                        return Err(parse_err(format!("self-loop at vertex {}", ends[0] + 1)));
                    }
                    g.set(ends[0], ends[1], true);
                }
            }
        }
        graph.ok_or(AppError::Parse {
            line: text.lines().count().max(1),
            message: "missing vertex count".into(),
        })
    }

    /// Writes the edge-list format read by [`parse`](Self::parse).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }
}

/// Conjugation action on adjacency matrices of a fixed order.
#[derive(Debug, Clone, Copy)]
pub struct ConjugationAction {
    n: usize,
}

impl ConjugationAction {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl GroupAction for ConjugationAction {
    type State = AdjacencyMatrix;

    fn degree(&self) -> usize {
        self.n
    }

    /// `apply(g, M)[i^g][j^g] = M[i][j]`.
    fn apply(&self, g: &Permutation, m: &AdjacencyMatrix) -> AdjacencyMatrix {
        assert_eq!(m.n, self.n, "matrix order must match the action degree");
        let n = self.n;
        let mut out = AdjacencyMatrix::empty(n);
        for i in 0..n {
            let gi = g.apply(i);
            for j in 0..n {
                out.bits[gi * n + g.apply(j)] = m.bits[i * n + j];
            }
        }
        out
    }

    /// Row-major bit string, packed little-endian into bytes.
    fn encode(&self, m: &AdjacencyMatrix) -> Vec<u8> {
        let mut out = vec![0u8; m.bits.len().div_ceil(8)];
        for (i, &b) in m.bits.iter().enumerate() {
            if b {
                out[i / 8] |= 1 << (i % 8);
            }
        }
        out
    }
}

/// Isomorphism search result.
#[derive(Debug, Clone)]
pub struct GiResult {
    pub verdict: Verdict,
    pub stored: u64,
    pub scanned: u64,
    pub elapsed: Duration,
}

impl GiResult {
    fn from_report(r: SolveReport) -> Self {
        Self {
            verdict: r.verdict,
            stored: r.stored,
            scanned: r.scanned,
            elapsed: r.elapsed,
        }
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match &self.verdict {
            Verdict::Found(g) => Some(g),
            _ => None,
        }
    }
}

/// Finds `g` with `M^g = N`, or proves none exists.
pub fn graph_iso(
    m: &AdjacencyMatrix,
    n: &AdjacencyMatrix,
    budget: &Budget,
) -> Result<GiResult, AppError> {
    if m.n() != n.n() {
        return Ok(GiResult {
            verdict: Verdict::NoneProved,
            stored: 0,
            scanned: 0,
            elapsed: Duration::ZERO,
        });
    }
    let action = ConjugationAction::new(m.n());
    let report = budget.run(&action, m, n)?;
    if let Some(g) = report.witness() {
        debug_assert!(verify(&action, m, n, g));
    }
    Ok(GiResult::from_report(report))
}

/// As [`graph_iso`], but over an explicit plan (e.g. a randomized split).
pub fn graph_iso_with_plan(
    m: &AdjacencyMatrix,
    n: &AdjacencyMatrix,
    plan: &SplitPlan,
    budget: &Budget,
) -> Result<GiResult, AppError> {
    if m.n() != n.n() {
        return graph_iso(m, n, budget);
    }
    let report = solve(
        &ConjugationAction::new(m.n()),
        m,
        n,
        plan,
        &budget.options(),
    )?;
    Ok(GiResult::from_report(report))
}
