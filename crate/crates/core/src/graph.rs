//! Directed multigraphs stored as adjacency matrices.
//!
//! Vertices are 0-based in the API and 1-based in text formats and
//! messages. Multiplicities are arbitrary precision.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::ColumnHermite;
use crate::vector::PeriodVector;

/// A weakly connected loopless directed multigraph.
#[derive(Clone)]
pub struct Digraph {
    n: usize,
    // row-major, adj[u * n + v] = multiplicity of u -> v
    adj: Vec<BigInt>,
    out_deg: Vec<BigInt>,
    in_deg: Vec<BigInt>,
    scc: OnceLock<SccDecomposition>,
    sink_periods: OnceLock<Vec<(usize, PeriodVector)>>,
    hermite: OnceLock<ColumnHermite>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("adj", &self.rows())
            .finish()
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Digraph {}

impl Digraph {
    /// Builds a graph from a square matrix of multiplicities.
    pub fn from_matrix<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Validation("graph must have at least one vertex".into()));
        }
        let mut adj = Vec::with_capacity(n * n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {} has {} entries, expected {}",
                    u + 1,
                    row.len(),
                    n
                )));
            }
            for (v, m) in row.iter().enumerate() {
                let m: BigInt = m.clone().into();
                if m.is_negative() {
                    return Err(Error::Validation(format!(
                        "negative multiplicity on edge v{} -> v{}",
                        u + 1,
                        v + 1
                    )));
                }
                if u == v && !m.is_zero() {
                    return Err(Error::Validation(format!("loop at v{}", u + 1)));
                }
                adj.push(m);
            }
        }
        let g = Self::assemble(n, adj);
        if !g.is_weakly_connected() {
            return Err(Error::Validation("graph is not weakly connected".into()));
        }
        Ok(g)
    }

    /// Builds a graph on `n` vertices from `(from, to, multiplicity)` triples.
    /// Repeated pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut rows = vec![vec![0u64; n]; n];
        for &(u, v, m) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    u + 1,
                    v + 1,
                    n
                )));
            }
            rows[u][v] += m;
        }
        Self::from_matrix(&rows)
    }

    fn assemble(n: usize, adj: Vec<BigInt>) -> Self {
        let mut out_deg = vec![BigInt::zero(); n];
        let mut in_deg = vec![BigInt::zero(); n];
        for u in 0..n {
            for v in 0..n {
                let m = &adj[u * n + v];
                if !m.is_zero() {
                    out_deg[u] += m;
                    in_deg[v] += m;
                }
            }
        }
        Self {
            n,
            adj,
            out_deg,
            in_deg,
            scc: OnceLock::new(),
            sink_periods: OnceLock::new(),
            hermite: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Multiplicity of the edge `u -> v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> &BigInt {
        &self.adj[u * self.n + v]
    }

    pub fn out_degree(&self, v: usize) -> &BigInt {
        &self.out_deg[v]
    }

    pub fn in_degree(&self, v: usize) -> &BigInt {
        &self.in_deg[v]
    }

    pub fn out_degrees(&self) -> &[BigInt] {
        &self.out_deg
    }

    /// Sum of all edge multiplicities.
    pub fn edge_count(&self) -> BigInt {
        self.out_deg.iter().sum()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.adj.chunks(self.n).map(<[BigInt]>::to_vec).collect()
    }

    /// Out-neighbours of `u` with multiplicities.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        let row = &self.adj[u * self.n..(u + 1) * self.n];
        row.iter().enumerate().filter(|(_, m)| !m.is_zero())
    }

    /// In-neighbours of `v` with multiplicities.
    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        (0..self.n)
            .map(move |u| (u, &self.adj[u * self.n + v]))
            .filter(|(_, m)| !m.is_zero())
    }

    fn is_weakly_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in 0..self.n {
                if !seen[w] && (!self.multiplicity(u, w).is_zero() || !self.multiplicity(w, u).is_zero())
                {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `true` iff every vertex has equal in- and out-degree.
    pub fn is_eulerian(&self) -> bool {
        self.out_deg == self.in_deg
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.scc().len() == 1
    }

    /// Strongly connected components in topological order.
    pub fn scc(&self) -> &SccDecomposition {
        self.scc.get_or_init(|| SccDecomposition::compute(self))
    }

    pub(crate) fn sink_periods_cache(&self) -> &OnceLock<Vec<(usize, PeriodVector)>> {
        &self.sink_periods
    }

    pub(crate) fn hermite_cache(&self) -> &OnceLock<ColumnHermite> {
        &self.hermite
    }

    pub fn laplacian(&self) -> Laplacian {
        Laplacian::new(self)
    }

    /// Computes `L * f` without materialising the Laplacian.
    pub fn apply_laplacian(&self, f: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(f.len(), self.n, "vector length does not match vertex count");
        let mut out: Vec<BigInt> = (0..self.n).map(|v| -(&self.out_deg[v] * &f[v])).collect();
        for u in 0..self.n {
            if f[u].is_zero() {
                continue;
            }
            for (v, m) in self.successors(u) {
                out[v] += m * &f[u];
            }
        }
        out
    }

    /// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the given order. Fails when the induced subgraph is disconnected.
    pub fn induced(&self, vertices: &[usize]) -> Result<Digraph> {
        let rows: Vec<Vec<BigInt>> = vertices
            .iter()
            .map(|&u| vertices.iter().map(|&v| self.multiplicity(u, v).clone()).collect())
            .collect();
        Digraph::from_matrix(&rows)
    }

    /// Whether the subgraph induced by `vertices` is strongly connected.
    pub fn is_strongly_connected_subset(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return false;
            }
            inside[v] = true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; self.n];
            let mut stack = vec![vertices[0]];
            seen[vertices[0]] = true;
            while let Some(u) = stack.pop() {
                for w in 0..self.n {
                    let m = if forward { self.multiplicity(u, w) } else { self.multiplicity(w, u) };
                    if inside[w] && !seen[w] && !m.is_zero() {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            vertices.iter().all(|&v| seen[v])
        };
        reach(true) && reach(false)
    }

    /// Parses the graph text format: optional `#` comment lines, the vertex
    /// count, then one row of multiplicities per vertex.
    pub fn parse(text: &str) -> Result<Digraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("expected vertex count, found {header:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (line_no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("expected integer, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Validation(format!(
                "expected {} matrix rows, found {}",
                n,
                rows.len()
            )));
        }
        Digraph::from_matrix(&rows)
    }

    /// Renders the graph in the text format accepted by [`Digraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.adj.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Strongly connected components in topological order: no edge leads from
/// a later component to an earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    is_sink: Vec<bool>,
}

impl SccDecomposition {
    fn compute(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let raw = tarjan(g);

        // Condensation, then Kahn's algorithm preferring the component
        // holding the smallest vertex.
        let k = raw.len();
        let mut comp_of_raw = vec![0; n];
        for (c, members) in raw.iter().enumerate() {
            for &v in members {
                comp_of_raw[v] = c;
            }
        }
        let mut succ = vec![Vec::new(); k];
        let mut indeg = vec![0usize; k];
        for u in 0..n {
            for (v, _) in g.successors(u) {
                let (a, b) = (comp_of_raw[u], comp_of_raw[v]);
                if a != b && !succ[a].contains(&b) {
                    succ[a].push(b);
                    indeg[b] += 1;
                }
            }
        }
        let min_vertex: Vec<usize> = raw.iter().map(|c| c[0]).collect();
        let mut ready: std::collections::BTreeSet<(usize, usize)> = (0..k)
            .filter(|&c| indeg[c] == 0)
            .map(|c| (min_vertex[c], c))
            .collect();
        let mut components = Vec::with_capacity(k);
        let mut is_sink = Vec::with_capacity(k);
        let mut component_of = vec![0; n];
        while let Some((_, c)) = ready.pop_first() {
            let idx = components.len();
            for &v in &raw[c] {
                component_of[v] = idx;
            }
            components.push(raw[c].clone());
            is_sink.push(succ[c].is_empty());
            for &d in &succ[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.insert((min_vertex[d], d));
                }
            }
        }
        Self {
            components,
            component_of,
            is_sink,
        }
    }

    /// Components, each sorted ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn is_sink(&self, component: usize) -> bool {
        self.is_sink[component]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Indices of the sink components.
    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&c| self.is_sink[c])
    }
}

// Iterative Tarjan; each returned component is sorted ascending.
fn tarjan(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|u| g.successors(u).map(|(v, _)| v).collect()).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// The Laplacian `L(u,v) = -d+(v)` if `u = v`, else the multiplicity of
/// `v -> u`. Firing `v` adds column `v` to the distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    n: usize,
    entries: Vec<BigInt>,
}

impl Laplacian {
    fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let mut entries = vec![BigInt::zero(); n * n];
        for u in 0..n {
            for v in 0..n {
                entries[u * n + v] = if u == v {
                    -g.out_degree(v).clone()
                } else {
                    g.multiplicity(v, u).clone()
                };
            }
        }
        Self { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.n).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(<[BigInt]>::to_vec).collect()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n);
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}
