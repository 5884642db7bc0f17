//! Pseudomanifold recognition, orientations, the incidence graph of oriented
//! facets, and the codimension-one Hilbert basis read off its directed cycles.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::chain::IntChain;
use crate::chain_space::ChainSpace;
use crate::complex::{face_label, Face, FaceRef, SimplicialComplex};
use crate::cone::{is_extreme_ray, sort_canonical, HilbertBasisSet};
use crate::error::{Error, Result};
use crate::homology::{group_json, homology, HomologyVariant};
use crate::linalg::AbelianGroupStructure;

/// Cap on the number of simple cycles enumerated.
pub const CYCLE_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudomanifoldInfo {
    pub dim: i32,
    pub is_pure: bool,
    pub is_nonbranching: bool,
    pub is_strongly_connected: bool,
    /// Ridges lying in exactly one facet.
    pub boundary_faces: Vec<FaceRef>,
    pub orientable: bool,
    /// One sign per facet in lex order; the lex-last facet gets `+1`.
    pub gamma: Option<Vec<i8>>,
    pub predicted_crit: Option<AbelianGroupStructure>,
}

impl PseudomanifoldInfo {
    pub fn is_pseudomanifold(&self) -> bool {
        self.is_pure && self.is_nonbranching && self.is_strongly_connected
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "is_pure": self.is_pure,
            "is_nonbranching": self.is_nonbranching,
            "is_strongly_connected": self.is_strongly_connected,
            "is_pseudomanifold": self.is_pseudomanifold(),
            "boundary_faces": self.boundary_faces.iter().map(|f| &f.vertices).collect::<Vec<_>>(),
            "orientable": self.orientable,
            "gamma": self.gamma,
            "predicted_crit": self.predicted_crit.as_ref().map(group_json),
        })
    }
}

/// Union-find whose links carry the parity between a node and its parent.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Records `p(a) xor p(b) = rel`; false on contradiction.
    fn join(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ rel;
        true
    }
}

/// For each ridge, the `(facet index, incidence sign)` pairs containing it.
fn ridge_incidences(delta: &SimplicialComplex) -> Vec<Vec<(usize, i32)>> {
    let d = delta.dim();
    let mut out = vec![Vec::new(); delta.f(d - 1)];
    for (j, face) in delta.faces(d).iter().enumerate() {
        for (r, s) in delta.boundary_of(face) {
            out[r].push((j, s));
        }
    }
    out
}

pub fn analyze(delta: &SimplicialComplex) -> PseudomanifoldInfo {
    let d = delta.dim();
    let m = delta.f(d);
    let ridges = ridge_incidences(delta);
    let is_pure = delta.is_pure();
    let is_nonbranching = ridges.iter().all(|r| r.len() <= 2);
    let boundary_faces: Vec<FaceRef> = ridges
        .iter()
        .enumerate()
        .filter(|(_, r)| r.len() == 1)
        .map(|(k, _)| delta.face_ref(d - 1, k).expect("ridge index"))
        .collect();

    let mut links = ParityForest::new(m);
    let mut consistent = true;
    for r in ridges.iter().filter(|r| r.len() == 2) {
        let ((a, sa), (b, sb)) = (r[0], r[1]);
        // orientations must cancel on shared ridges: g_a s_a + g_b s_b = 0
        consistent &= links.join(a, b, u8::from(sa == sb));
    }
    let root = links.find(0).0;
    let is_strongly_connected = (0..m).all(|j| links.find(j).0 == root);

    let mut info = PseudomanifoldInfo {
        dim: d,
        is_pure,
        is_nonbranching,
        is_strongly_connected,
        boundary_faces,
        orientable: false,
        gamma: None,
        predicted_crit: None,
    };
    if !info.is_pseudomanifold() || !consistent {
        return info;
    }
    let last = links.find(m - 1).1;
    let gamma: Vec<i8> = (0..m)
        .map(|j| if links.find(j).1 == last { 1 } else { -1 })
        .collect();
    let reduced = homology(delta, d - 1, &HomologyVariant::Reduced)
        .expect("dimension in range")
        .group;
    info.predicted_crit = Some(if info.is_closed() {
        AbelianGroupStructure::from_cyclic(0, &[BigInt::from(m)]).direct_sum(&reduced)
    } else {
        reduced
    });
    info.orientable = true;
    info.gamma = Some(gamma);
    info
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    /// `None` for the node standing for the zero chain.
    pub facet: Option<Face>,
    pub sign: i8,
}

impl GraphNode {
    /// The facet's vertices as an oriented tuple: the last two are swapped
    /// when the sign is negative.
    pub fn label(&self) -> String {
        match &self.facet {
            None => "*".into(),
            Some(f) if self.sign > 0 => face_label(f),
            Some(f) if f.len() >= 2 => {
                let mut g = f.clone();
                let n = g.len();
                g.swap(n - 2, n - 1);
                face_label(&g)
            }
            Some(f) => format!("-{}", face_label(f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub face: FaceRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub nodes: Vec<GraphNode>,
    /// One edge per ridge, in lex order of ridges.
    pub edges: Vec<GraphEdge>,
}

impl IncidenceGraph {
    pub fn star(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.facet.is_none())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(GraphNode::label).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": self.nodes[e.from].label(),
                "to": self.nodes[e.to].label(),
                "label": e.face.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Simple directed cycles as lists of edge indices, ordered by length and
    /// then by the sorted edge indices.
    pub fn simple_cycles(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.nodes.len();
        let mut out_edges = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            out_edges[e.from].push(k);
        }
        let mut cycles = Vec::new();
        let mut on_path = vec![false; n];
        let mut path = Vec::new();
        for start in 0..n {
            on_path[start] = true;
            self.extend(start, start, &out_edges, &mut on_path, &mut path, &mut cycles, limit)?;
            on_path[start] = false;
        }
        for c in cycles.iter_mut() {
            c.sort_unstable();
        }
        cycles.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(cycles)
    }

    // cycles are rooted at their smallest node, so each is found once
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        start: usize,
        at: usize,
        out_edges: &[Vec<usize>],
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        cycles: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        for &k in &out_edges[at] {
            let to = self.edges[k].to;
            if to < start {
                continue;
            }
            path.push(k);
            if to == start {
                if cycles.len() >= limit {
                    return Err(Error::EnumerationLimit {
                        what: "simple cycles",
                        limit: limit as u128,
                    });
                }
                cycles.push(path.clone());
            } else if !on_path[to] {
                on_path[to] = true;
                self.extend(start, to, out_edges, on_path, path, cycles, limit)?;
                on_path[to] = false;
            }
            path.pop();
        }
        Ok(())
    }
}

pub fn incidence_graph(delta: &SimplicialComplex, gamma: &[i8]) -> Result<IncidenceGraph> {
    let d = delta.dim();
    let m = delta.f(d);
    if gamma.len() != m || gamma.iter().any(|&g| g != 1 && g != -1) {
        return Err(Error::InvalidOrientation(format!(
            "expected {m} signs of +1 or -1"
        )));
    }
    let ridges = ridge_incidences(delta);
    if ridges.iter().any(|r| r.len() > 2) {
        return Err(Error::NotPseudomanifold);
    }
    let has_star = ridges.iter().any(|r| r.len() == 1);
    let mut nodes: Vec<GraphNode> = delta
        .faces(d)
        .iter()
        .zip(gamma)
        .map(|(f, &sign)| GraphNode {
            facet: Some(f.clone()),
            sign,
        })
        .collect();
    if has_star {
        nodes.push(GraphNode {
            facet: None,
            sign: 0,
        });
    }
    let mut edges = Vec::with_capacity(ridges.len());
    for (k, r) in ridges.iter().enumerate() {
        let face = delta.face_ref(d - 1, k).expect("ridge index");
        // coefficient of the oriented facet in the coboundary of the ridge
        let signed: Vec<(usize, i32)> = r
            .iter()
            .map(|&(j, s)| (j, s * i32::from(gamma[j])))
            .collect();
        let (from, to) = match signed.as_slice() {
            [(a, sa), (b, sb)] => {
                if sa == sb {
                    return Err(Error::InvalidOrientation(format!(
                        "boundary of the orientation does not vanish on {face}"
                    )));
                }
                if *sa < 0 {
                    (*a, *b)
                } else {
                    (*b, *a)
                }
            }
            [(a, sa)] => {
                if *sa < 0 {
                    (*a, m)
                } else {
                    (m, *a)
                }
            }
            _ => unreachable!("every ridge of a pure complex lies in a facet"),
        };
        edges.push(GraphEdge { from, to, face });
    }
    Ok(IncidenceGraph { nodes, edges })
}

/// Hilbert basis of the nonnegative kernel of `L_{d-1}` from the directed
/// cycles of the incidence graph, in canonical order.
pub fn cycle_hilbert_basis(delta: &SimplicialComplex) -> Result<HilbertBasisSet> {
    let info = analyze(delta);
    if !info.is_pseudomanifold() {
        return Err(Error::NotPseudomanifold);
    }
    let gamma = info.gamma.ok_or(Error::NotOrientable)?;
    let graph = incidence_graph(delta, &gamma)?;
    let n = graph.edges.len();
    let mut rows: Vec<Vec<BigInt>> = graph
        .simple_cycles(CYCLE_LIMIT)?
        .into_iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); n];
            for k in c {
                v[k] = BigInt::one();
            }
            v
        })
        .collect();
    sort_canonical(&mut rows);
    let eqs = delta.boundary_matrix(delta.dim()).transpose();
    let ray_flags = rows.iter().map(|h| is_extreme_ray(&eqs, h)).collect();
    let dim = delta.dim() - 1;
    Ok(HilbertBasisSet {
        dim,
        elements: rows.into_iter().map(|r| IntChain::new(dim, r)).collect(),
        ray_flags,
    })
}

/// `d_d` of the oriented facet `j`, as a `(d-1)`-chain.
pub fn oriented_facet_boundary(space: &ChainSpace, gamma: &[i8], j: usize) -> IntChain {
    let m = space.up_boundary();
    IntChain::new(
        space.dim(),
        (0..m.rows())
            .map(|r| &m[(r, j)] * BigInt::from(gamma[j]))
            .collect(),
    )
}
