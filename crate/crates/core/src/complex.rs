use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bigjson;
use crate::chain::IntChain;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A face as its strictly increasing vertex tuple.
pub type Face = Vec<u32>;

/// A face together with its dimension and position in the lex order of its
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub dim: i32,
    pub index: usize,
    pub vertices: Face,
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", face_label(&self.vertices))
    }
}

/// Compact label: `123` for small labels, `1.12.3` when some label has more
/// than one digit, `{}` for the empty face.
pub fn face_label(face: &[u32]) -> String {
    if face.is_empty() {
        return "{}".into();
    }
    let sep = if face.iter().any(|&v| v > 9) { "." } else { "" };
    face.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// A finite simplicial complex on positive integer vertex labels.
///
/// Faces of each dimension are kept in lexicographic order and every vector
/// or matrix in the crate is indexed by that order. Orientation is always the
/// one induced by the natural order of the labels, which are never renumbered.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    // faces[k] holds the faces of dimension k - 1
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facets)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    /// Downward closure of the given facets. Vertex tuples may be unsorted;
    /// they are sorted, so any orientation implied by the input order is
    /// discarded.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let mut seen = BTreeSet::new();
        let mut listed = Vec::new();
        for raw in facets {
            let raw = raw.as_ref();
            if raw.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if raw.contains(&0) {
                return Err(Error::InvalidComplex(format!(
                    "facet {raw:?} has a non-positive vertex label"
                )));
            }
            let mut f = raw.to_vec();
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "facet {raw:?} repeats a vertex"
                )));
            }
            if !seen.insert(f.clone()) {
                return Err(Error::InvalidComplex(format!("duplicate facet {f:?}")));
            }
            listed.push(f);
        }
        if listed.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let top = listed.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); top + 1];
        for f in &listed {
            let k = f.len();
            for mask in 0u64..(1u64 << k) {
                let sub: Face = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| f[b])
                    .collect();
                by_dim[sub.len()].insert(sub);
            }
        }
        let faces: Vec<Vec<Face>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Self::from_face_lists(faces))
    }

    fn from_face_lists(faces: Vec<Vec<Face>>) -> Self {
        let index = faces
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i))
                    .collect()
            })
            .collect();
        let mut c = SimplicialComplex {
            faces,
            index,
            facets: Vec::new(),
        };
        c.facets = c.compute_facets();
        c
    }

    fn compute_facets(&self) -> Vec<Face> {
        let mut covered: BTreeSet<Face> = BTreeSet::new();
        for k in (1..self.faces.len()).rev() {
            for f in &self.faces[k] {
                for j in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(j);
                    covered.insert(g);
                }
            }
        }
        let mut out: Vec<Face> = self
            .faces
            .iter()
            .flatten()
            .filter(|f| !f.is_empty() && !covered.contains(*f))
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Dimension of the complex (largest facet dimension).
    pub fn dim(&self) -> i32 {
        self.faces.len() as i32 - 2
    }

    /// Number of faces of dimension `i`; zero outside `-1..=dim`.
    pub fn f(&self, i: i32) -> usize {
        self.faces(i).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Faces of dimension `i` in lex order (empty outside `-1..=dim`).
    pub fn faces(&self, i: i32) -> &[Face] {
        let k = i + 1;
        if k < 0 || k as usize >= self.faces.len() {
            return &[];
        }
        &self.faces[k as usize]
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces(0).iter().map(|f| f[0]).collect()
    }

    /// Index of `face` among the faces of its dimension.
    pub fn face_index(&self, face: &[u32]) -> Option<usize> {
        let k = face.len();
        self.index.get(k)?.get(face).copied()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.face_index(face).is_some()
    }

    pub fn face_ref(&self, i: i32, index: usize) -> Option<FaceRef> {
        self.faces(i).get(index).map(|v| FaceRef {
            dim: i,
            index,
            vertices: v.clone(),
        })
    }

    /// Looks up a face given in any vertex order.
    pub fn lookup(&self, face: &[u32]) -> Result<FaceRef> {
        let mut v = face.to_vec();
        v.sort_unstable();
        match self.face_index(&v) {
            Some(index) => Ok(FaceRef {
                dim: v.len() as i32 - 1,
                index,
                vertices: v,
            }),
            None => Err(Error::UnknownFace(face.to_vec())),
        }
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim() as usize + 1;
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(f))
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: i32) -> SimplicialComplex {
        let keep = (i + 2).clamp(1, self.faces.len() as i32) as usize;
        Self::from_face_lists(self.faces[..keep].to_vec())
    }

    pub fn check_dim(&self, i: i32, min: i32, max: i32) -> Result<()> {
        if i < min || i > max {
            return Err(Error::DimensionOutOfRange { dim: i, min, max });
        }
        Ok(())
    }

    /// Reduced boundary map `C_i -> C_{i-1}` as an `f(i-1) x f(i)` matrix.
    pub fn boundary_matrix(&self, i: i32) -> IntMatrix {
        self.boundary_matrix_with(i, true)
    }

    /// Boundary map; with `reduced = false` the map out of dimension 0 is zero.
    pub fn boundary_matrix_with(&self, i: i32, reduced: bool) -> IntMatrix {
        let rows = self.f(i - 1);
        let cols = self.f(i);
        let mut m = IntMatrix::zeros(rows, cols);
        if i == 0 && !reduced {
            return m;
        }
        for (c, face) in self.faces(i).iter().enumerate() {
            for (j, r) in self.facet_rows(face) {
                m[(r, c)] = if j % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
            }
        }
        m
    }

    /// `(j, row)` pairs: the face with vertex `j` omitted and its index.
    fn facet_rows<'a>(&'a self, face: &'a [u32]) -> impl Iterator<Item = (usize, usize)> + 'a {
        (0..face.len()).map(move |j| {
            let mut g = face.to_vec();
            g.remove(j);
            (j, self.face_index(&g).expect("complex is closed under subsets"))
        })
    }

    /// Signed incidences of an `i`-face: `(row, sign)` over its codimension-one
    /// faces, where sign is the coefficient in the boundary.
    pub fn boundary_of(&self, face: &[u32]) -> Vec<(usize, i32)> {
        self.facet_rows(face)
            .map(|(j, r)| (r, if j % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// `L_i = d_{i+1} d_{i+1}^t`, an `f(i) x f(i)` matrix.
    pub fn laplacian(&self, i: i32) -> Result<IntMatrix> {
        self.check_dim(i, 0, self.dim())?;
        let b = self.boundary_matrix(i + 1);
        b.mul(&b.transpose())
    }

    pub fn zero_chain(&self, i: i32) -> IntChain {
        IntChain::zero(i, self.f(i))
    }

    pub fn chain(&self, i: i32, coeffs: Vec<BigInt>) -> Result<IntChain> {
        if coeffs.len() != self.f(i) {
            return Err(Error::ChainLength {
                dim: i,
                expected: self.f(i),
                found: coeffs.len(),
            });
        }
        Ok(IntChain::new(i, coeffs))
    }

    /// Chain from `(face, coefficient)` terms with faces in any vertex order
    /// (reordering does not change signs).
    pub fn chain_from_terms(&self, i: i32, terms: &[(&[u32], i64)]) -> Result<IntChain> {
        let mut c = self.zero_chain(i);
        for (face, k) in terms {
            let r = self.lookup(face)?;
            if r.dim != i {
                return Err(Error::ChainDimension {
                    expected: i,
                    found: r.dim,
                });
            }
            c.coeffs[r.index] += *k;
        }
        Ok(c)
    }

    /// Canonical JSON form `{"facets": [...]}` with facets in lex order.
    pub fn to_json(&self) -> Value {
        json!({ "facets": self.facets })
    }
}

/// A complex file: facets plus an optional embedded chain and layout hints.
#[derive(Clone, Debug)]
pub struct ComplexDocument {
    pub complex: SimplicialComplex,
    pub chain: Option<IntChain>,
    pub layout: Option<BTreeMap<u32, [f64; 2]>>,
}

impl ComplexDocument {
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("facets".into(), json!(self.complex.facets()));
        if let Some(c) = &self.chain {
            obj.insert("chain".into(), c.to_json());
        }
        if let Some(l) = &self.layout {
            let m: serde_json::Map<String, Value> = l
                .iter()
                .map(|(v, p)| (v.to_string(), json!(p)))
                .collect();
            obj.insert("layout".into(), Value::Object(m));
        }
        Value::Object(obj)
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_json().to_string()
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexDocument> {
    let v: Value = serde_json::from_str(text)?;
    complex_from_json(&v)
}

fn label(v: &Value) -> Result<u32> {
    let n = bigjson::int_from_json(v)
        .map_err(|_| Error::InvalidComplex(format!("vertex label {v} is not an integer")))?;
    if n <= BigInt::from(0) {
        return Err(Error::InvalidComplex(format!(
            "vertex label {n} is not positive"
        )));
    }
    u32::try_from(&n).map_err(|_| Error::InvalidComplex(format!("vertex label {n} is too large")))
}

pub fn complex_from_json(v: &Value) -> Result<ComplexDocument> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidComplex("expected a JSON object".into()))?;
    let facets = obj
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidComplex("missing \"facets\" array".into()))?;
    let mut lists = Vec::with_capacity(facets.len());
    for f in facets {
        let arr = f
            .as_array()
            .ok_or_else(|| Error::InvalidComplex(format!("facet {f} is not an array")))?;
        lists.push(arr.iter().map(label).collect::<Result<Vec<u32>>>()?);
    }
    let complex = SimplicialComplex::from_facets(&lists)?;
    let chain = match obj.get("chain") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let dim = c
                .get("dim")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::InvalidComplex("chain needs an integer \"dim\"".into()))?;
            let coeffs = c
                .get("coeffs")
                .ok_or_else(|| Error::InvalidComplex("chain needs \"coeffs\"".into()))?;
            let coeffs = bigjson::int_vec_from_json(coeffs)?;
            Some(complex.chain(dim as i32, coeffs)?)
        }
    };
    let layout = match obj.get("layout") {
        None | Some(Value::Null) => None,
        Some(Value::Object(m)) => {
            let mut out = BTreeMap::new();
            for (k, p) in m {
                let vtx: u32 = k
                    .parse()
                    .map_err(|_| Error::InvalidComplex(format!("layout key {k:?}")))?;
                let xy = p
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some([a[0].as_f64()?, a[1].as_f64()?]))
                    .ok_or_else(|| Error::InvalidComplex(format!("layout entry for {k}")))?;
                out.insert(vtx, xy);
            }
            Some(out)
        }
        Some(other) => {
            return Err(Error::InvalidComplex(format!(
                "layout must be an object, got {other}"
            )))
        }
    };
    Ok(ComplexDocument {
        complex,
        chain,
        layout,
    })
}
