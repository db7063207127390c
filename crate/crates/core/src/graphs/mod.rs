//! Graphs through their cut space.
//!
//! Edge `i` is coordinate `i` of `F₂^E`; vertex `v` contributes the cut
//! vector `δ(v)`, and those vectors span the cut space. An edge set `T` is
//! `α`-thin exactly when `E ∖ T` is a `(1-α)`-sparsifier of the cut space,
//! which is how thinness is counted and searched for here.

mod hitting;

pub use hitting::{
    disjoint_hitting_sets, is_hitting_set, proper_sparsifier_search, HittingSetReport, ProperSearch,
};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, LinearCode};
use crate::sparsify::bounds::{c_const, gamma};
use crate::sparsify::{
    count_sparsifiers, iterated_sparsifier, verify, Alpha, CensusOptions, CensusReport,
    IterationTrace, SearchOptions,
};

/// Largest vertex count for the direct vertex-subset thinness check.
pub const VERTEX_ORACLE_MAX: usize = 16;

/// Undirected multigraph without self-loops; vertices are `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    component_count: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns true when the two were in different sets.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::Domain(format!(
                    "edge {i} ({u}, {v}) has an endpoint outside 0..{num_vertices}"
                )));
            }
            if u == v {
                return Err(Error::Domain(format!(
                    "edge {i} is a self-loop at vertex {u}"
                )));
            }
        }
        let mut uf = UnionFind::new(num_vertices);
        let merges = edges.iter().filter(|&&(u, v)| uf.union(u, v)).count();
        Ok(Self {
            num_vertices,
            component_count: num_vertices - merges,
            edges,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(n, edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v)).collect()).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)).collect()).expect("valid edges")
    }

    /// A random spanning tree on `num_vertices` plus `extra` random non-loop
    /// edges (parallel edges allowed).
    pub fn random_connected<R: Rng + ?Sized>(
        num_vertices: usize,
        extra: usize,
        rng: &mut R,
    ) -> Self {
        let mut edges = Vec::new();
        for v in 1..num_vertices {
            edges.push((rng.gen_range(0..v), v));
        }
        if num_vertices >= 2 {
            for _ in 0..extra {
                let u = rng.gen_range(0..num_vertices);
                let mut v = rng.gen_range(0..num_vertices - 1);
                if v >= u {
                    v += 1;
                }
                edges.push((u, v));
            }
        }
        Self::new(num_vertices, edges).expect("valid edges")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    /// Whether the spanning subgraph `(V, edges)` is connected.
    pub fn spans_connected(&self, subset: &BitVector) -> bool {
        let mut uf = UnionFind::new(self.num_vertices);
        let merges = subset
            .ones_iter()
            .filter(|&e| {
                let (u, v) = self.edges[e];
                uf.union(u, v)
            })
            .count();
        self.num_vertices <= 1 || merges == self.num_vertices - 1
    }

    /// `δ(S)`: edges with exactly one endpoint in `side`.
    pub fn cut_of(&self, side: &[bool]) -> BitVector {
        BitVector::from_indices(
            self.edges.len(),
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| side[u] != side[v])
                .map(|(i, _)| i),
        )
    }

    /// A vertex side `S` with `δ(S) = cut`, found by 2-colouring each
    /// component along edges outside the cut. `None` if `cut` is not a cut.
    pub fn side_of_cut(&self, cut: &BitVector) -> Option<Vec<bool>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        let mut colour: Vec<Option<bool>> = vec![None; self.num_vertices];
        for root in 0..self.num_vertices {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let cu = colour[u].expect("coloured before push");
                for &(v, e) in &adj[u] {
                    let want = cu ^ cut.get(e);
                    match colour[v] {
                        None => {
                            colour[v] = Some(want);
                            stack.push(v);
                        }
                        Some(cv) if cv != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }
}

/// The code in `F₂^E` spanned by the vertex cuts `δ(v)`; its dimension is
/// `|V|` minus the number of connected components.
pub fn cut_space(g: &Graph) -> LinearCode {
    let m = g.num_edges();
    let mut rows = vec![BitVector::zeros(m); g.num_vertices()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        rows[u].set(i);
        rows[v].set(i);
    }
    let code = LinearCode::from_rows(m, rows).expect("rows have length |E|");
    assert_eq!(
        code.dimension(),
        g.num_vertices() - g.component_count(),
        "cut space rank must be |V| - components"
    );
    code
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinReport {
    pub alpha: Alpha,
    #[serde(serialize_with = "crate::serde_set")]
    pub edges: BitVector,
    pub thin: bool,
    /// Vertices (0-indexed) on one side of a cut that `edges` overloads.
    pub witness_cut: Option<Vec<usize>>,
    pub witness_cut_size: Option<usize>,
    pub witness_edges_in_cut: Option<usize>,
}

fn check_edges(g: &Graph, t: &BitVector) -> Result<()> {
    if t.len() != g.num_edges() {
        return Err(Error::LengthMismatch {
            expected: g.num_edges(),
            found: t.len(),
        });
    }
    Ok(())
}

/// Checks `|T ∩ δ(S)| ≤ α·|δ(S)|` over every cut, both directly on the cut
/// space and through the complement sparsifier; the two must agree.
pub fn is_thin(g: &Graph, t: &BitVector, alpha: Alpha) -> Result<ThinReport> {
    check_edges(g, t)?;
    let code = cut_space(g);
    thin_on(g, &code, t, alpha)
}

fn thin_on(g: &Graph, code: &LinearCode, t: &BitVector, alpha: Alpha) -> Result<ThinReport> {
    let direct = code
        .codewords()?
        .find(|c| !alpha.caps(c.and_weight(t), c.weight()));
    let dual = verify(code, &t.complement(), alpha.complement())?;
    if direct.is_none() != dual.pass {
        return Err(Error::violation(
            "thinness and complement sparsification disagree",
            format!("{{\"edges\":\"{t}\",\"alpha\":\"{alpha}\"}}"),
        ));
    }
    let mut report = ThinReport {
        alpha,
        edges: t.clone(),
        thin: direct.is_none(),
        witness_cut: None,
        witness_cut_size: None,
        witness_edges_in_cut: None,
    };
    if let Some(cut) = direct {
        let side = g.side_of_cut(&cut).expect("cut-space codewords are cuts");
        report.witness_cut = Some((0..side.len()).filter(|&v| side[v]).collect());
        report.witness_cut_size = Some(cut.weight());
        report.witness_edges_in_cut = Some(cut.and_weight(t));
    }
    Ok(report)
}

/// Thinness by enumerating every nonempty proper vertex subset. Only a
/// cross-check for the cut-space path; limited to 16 vertices.
pub fn is_thin_by_vertex_cuts(g: &Graph, t: &BitVector, alpha: Alpha) -> Result<bool> {
    check_edges(g, t)?;
    let nv = g.num_vertices();
    if nv > VERTEX_ORACLE_MAX {
        return Err(Error::LengthTooLarge {
            n: nv,
            cap: VERTEX_ORACLE_MAX,
        });
    }
    for mask in 1..(1u32 << nv).saturating_sub(1) {
        let side: Vec<bool> = (0..nv).map(|v| (mask >> v) & 1 == 1).collect();
        let cut = g.cut_of(&side);
        if !alpha.caps(cut.and_weight(t), cut.weight()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of `α`-thin edge sets, counted as `(1-α)`-sparsifiers of the cut
/// space. The histogram is keyed by thin-set size.
pub fn count_thin(g: &Graph, alpha: Alpha, opts: &CensusOptions) -> Result<CensusReport> {
    let code = cut_space(g);
    let m = g.num_edges();
    let mut report = count_sparsifiers(&code, alpha.complement(), opts)?;
    report.alpha = alpha;
    report.size_histogram = report
        .size_histogram
        .iter()
        .map(|(&s, &c)| (m - s, c))
        .collect();
    report.min_size = report.size_histogram.keys().next().copied();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FoundThin {
    #[serde(serialize_with = "crate::serde_set")]
    pub edges: BitVector,
    pub size: usize,
    /// `|E|/2^ℓ - c·√(|E|(|V|-1))`; only enforced when positive.
    pub size_bound: f64,
    pub check: ThinReport,
    pub trace: IterationTrace,
}

/// A `2^{-ℓ}`-thin edge set: the complement of an iterated sparsifier of the
/// cut space.
pub fn find_thin(g: &Graph, ell: u32, opts: &SearchOptions) -> Result<FoundThin> {
    let code = cut_space(g);
    let trace = iterated_sparsifier(&code, ell, opts)?;
    let edges = trace.final_set.complement();
    let alpha = Alpha::pow2_inverse(ell)?;
    let check = thin_on(g, &code, &edges, alpha)?;
    if !check.thin {
        return Err(Error::violation(
            format!("complement of the iterated sparsifier is not {alpha}-thin"),
            format!("{{\"edges\":\"{edges}\"}}"),
        ));
    }
    let m = g.num_edges() as f64;
    let span = (m * g.num_vertices().saturating_sub(1) as f64).sqrt();
    let size_bound = m / f64::from(1u32 << ell) - c_const() * span;
    let mut required = size_bound;
    if ell == 1 {
        required = required.max(m / 2.0 - gamma() * span);
    }
    let size = edges.weight();
    if required > 0.0 && (size as f64) < required.ceil() {
        return Err(Error::violation(
            format!("thin set has {size} edges, fewer than the guaranteed {required:.4}"),
            format!("{{\"edges\":\"{edges}\"}}"),
        ));
    }
    Ok(FoundThin {
        edges,
        size,
        size_bound,
        check,
        trace,
    })
}

/// Minimum cut size over the cut space; 0 for a disconnected graph or one
/// with fewer than two vertices.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    if !g.is_connected() || g.num_vertices() < 2 {
        return Ok(0);
    }
    let code = cut_space(g);
    Ok(code
        .codewords()?
        .filter(|c| !c.is_zero())
        .map(|c| c.weight())
        .min()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn edges(m: usize, idx: &[usize]) -> BitVector {
        BitVector::from_indices(m, idx.iter().copied())
    }

    #[test]
    fn construction_checks() {
        assert!(Graph::new(2, vec![(0, 0)]).is_err());
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
        let g = Graph::new(5, vec![(0, 1), (2, 3), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 3);
        assert_eq!(Graph::new(0, vec![]).unwrap().component_count(), 0);
    }

    #[test]
    fn cut_space_examples() {
        let p2 = cut_space(&Graph::path(2));
        assert_eq!(p2.dimension(), 1);
        assert_eq!(p2.codeword_list().unwrap().len(), 2);

        let k3 = cut_space(&Graph::complete(3));
        let words: HashSet<String> = k3.codewords().unwrap().map(|c| c.to_string()).collect();
        let expect: HashSet<String> = ["000", "110", "101", "011"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(words, expect);
    }

    #[test]
    fn cut_space_rank_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let nv = rng.gen_range(1..12);
            let m = rng.gen_range(0..20);
            let es = (0..m)
                .filter_map(|_| {
                    let u = rng.gen_range(0..nv);
                    let v = rng.gen_range(0..nv);
                    (u != v).then_some((u, v))
                })
                .collect();
            let g = Graph::new(nv, es).unwrap();
            assert_eq!(cut_space(&g).dimension(), nv - g.component_count());
        }
    }

    #[test]
    fn thin_examples_on_triangle() {
        let k3 = Graph::complete(3);
        assert!(is_thin(&k3, &edges(3, &[0]), Alpha::HALF).unwrap().thin);
        let r = is_thin(&k3, &edges(3, &[0, 1]), Alpha::HALF).unwrap();
        assert!(!r.thin);
        // edges 0=(0,1), 1=(0,2): the overloaded cut separates vertex 0
        let side = r.witness_cut.unwrap();
        assert!(side == vec![0] || side == vec![1, 2]);
        assert_eq!(
            (r.witness_cut_size, r.witness_edges_in_cut),
            (Some(2), Some(2))
        );
        for a in ["0", "1/3", "1"] {
            assert!(
                is_thin(&k3, &BitVector::zeros(3), a.parse().unwrap())
                    .unwrap()
                    .thin
            );
        }
    }

    #[test]
    fn vertex_oracle_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let g = Graph::random_connected(rng.gen_range(2..8), rng.gen_range(0..6), &mut rng);
            let m = g.num_edges();
            for _ in 0..10 {
                let t = BitVector::from_indices(m, (0..m).filter(|_| rng.gen::<bool>()));
                for alpha in [Alpha::HALF, Alpha::new(1, 3).unwrap()] {
                    assert_eq!(
                        is_thin(&g, &t, alpha).unwrap().thin,
                        is_thin_by_vertex_cuts(&g, &t, alpha).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn thin_counts() {
        let opts = CensusOptions::default();
        let r = count_thin(&Graph::complete(3), Alpha::HALF, &opts).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.size_histogram.get(&0), Some(&1));
        assert_eq!(r.size_histogram.get(&1), Some(&3));
        let r = count_thin(&Graph::new(4, vec![]).unwrap(), Alpha::HALF, &opts).unwrap();
        assert_eq!(r.count, 1);
    }

    #[test]
    fn find_thin_examples() {
        let k4 = Graph::complete(4);
        let f = find_thin(&k4, 1, &SearchOptions::default()).unwrap();
        assert!(is_thin(&k4, &f.edges, Alpha::HALF).unwrap().thin);
        assert!(f.size <= 2);

        let tree = Graph::path(6);
        let f = find_thin(&tree, 1, &SearchOptions::default()).unwrap();
        assert!(is_thin(&tree, &f.edges, Alpha::HALF).unwrap().thin);

        let k3 = Graph::complete(3);
        let f = find_thin(&k3, 2, &SearchOptions::default()).unwrap();
        assert!(f.edges.is_zero());
    }

    #[test]
    fn connectivity() {
        assert_eq!(edge_connectivity(&Graph::complete(4)).unwrap(), 3);
        assert_eq!(edge_connectivity(&Graph::path(5)).unwrap(), 1);
        assert_eq!(edge_connectivity(&Graph::cycle(6)).unwrap(), 2);
        let two_triangles =
            Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(edge_connectivity(&two_triangles).unwrap(), 0);
    }

    #[test]
    fn side_of_cut_rejects_non_cuts() {
        let k3 = Graph::complete(3);
        assert!(k3.side_of_cut(&edges(3, &[0])).is_none());
        let side = k3.side_of_cut(&edges(3, &[0, 2])).unwrap();
        assert_eq!(k3.cut_of(&side), edges(3, &[0, 2]));
    }
}
