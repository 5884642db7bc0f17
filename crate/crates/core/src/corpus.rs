//! Named complexes used in tests, benchmarks, and the bundled example files.

use crate::complex::SimplicialComplex;

fn build(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets).expect("corpus complexes are valid")
}

/// Two triangles glued along the edge 23.
pub fn diamond() -> SimplicialComplex {
    build(&[&[1, 2, 3], &[2, 3, 4]])
}

/// A single filled triangle.
pub fn triangle() -> SimplicialComplex {
    build(&[&[1, 2, 3]])
}

/// The boundary of the tetrahedron, a 2-sphere.
pub fn hollow_tetrahedron() -> SimplicialComplex {
    build(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
}

/// A solid tetrahedron.
pub fn solid_tetrahedron() -> SimplicialComplex {
    build(&[&[1, 2, 3, 4]])
}

/// The graph made of two disjoint 3-cycles.
pub fn two_triangle_graph() -> SimplicialComplex {
    build(&[&[1, 2], &[1, 3], &[2, 3], &[4, 5], &[4, 6], &[5, 6]])
}

/// The 3-cycle as a graph.
pub fn triangle_graph() -> SimplicialComplex {
    build(&[&[1, 2], &[1, 3], &[2, 3]])
}

/// The path 1 - 2 - 3.
pub fn path_graph() -> SimplicialComplex {
    build(&[&[1, 2], &[2, 3]])
}

/// A six-triangle annulus with boundary circles 123 and 456.
pub fn annulus() -> SimplicialComplex {
    build(&[
        &[1, 2, 5],
        &[1, 3, 4],
        &[1, 4, 5],
        &[2, 3, 6],
        &[2, 5, 6],
        &[3, 4, 6],
    ])
}

/// A 16-triangle Klein bottle on 8 vertices.
pub fn klein_bottle() -> SimplicialComplex {
    build(&[
        &[1, 2, 5],
        &[2, 5, 6],
        &[2, 3, 6],
        &[3, 4, 6],
        &[1, 3, 4],
        &[5, 6, 7],
        &[4, 5, 7],
        &[1, 2, 4],
        &[2, 4, 7],
        &[2, 3, 7],
        &[3, 7, 8],
        &[6, 7, 8],
        &[4, 6, 8],
        &[4, 5, 8],
        &[3, 5, 8],
        &[1, 3, 5],
    ])
}

/// The six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    build(&[
        &[1, 2, 3],
        &[1, 2, 6],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 5, 6],
        &[2, 3, 5],
        &[2, 4, 5],
        &[2, 4, 6],
        &[3, 4, 6],
        &[3, 5, 6],
    ])
}

/// The full simplex on six vertices.
pub fn six_vertex_simplex() -> SimplicialComplex {
    build(&[&[1, 2, 3, 4, 5, 6]])
}

/// A 3-dimensional complex on 7 vertices with 17 facets.
pub fn seventeen_facet() -> SimplicialComplex {
    build(&[
        &[1, 2, 3, 4],
        &[1, 2, 3, 6],
        &[1, 2, 3, 7],
        &[1, 2, 4, 6],
        &[1, 2, 5, 7],
        &[1, 3, 4, 7],
        &[1, 3, 5, 7],
        &[1, 4, 5, 6],
        &[1, 4, 5, 7],
        &[1, 4, 6, 7],
        &[2, 3, 4, 7],
        &[2, 3, 5, 6],
        &[2, 3, 5, 7],
        &[2, 4, 5, 6],
        &[3, 4, 5, 7],
        &[3, 5, 6, 7],
        &[4, 5, 6, 7],
    ])
}

/// Two triangles sharing the edge 12, plus the edge 34.
pub fn staco() -> SimplicialComplex {
    build(&[&[1, 2, 3], &[1, 2, 4], &[3, 4]])
}

/// Every named complex with a short file-friendly name.
pub fn all() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("diamond", diamond()),
        ("triangle", triangle()),
        ("tetra", hollow_tetrahedron()),
        ("simplex3", solid_tetrahedron()),
        ("two-triangles", two_triangle_graph()),
        ("triangle-graph", triangle_graph()),
        ("path", path_graph()),
        ("annulus", annulus()),
        ("klein", klein_bottle()),
        ("rp2", projective_plane()),
        ("simplex6", six_vertex_simplex()),
        ("seventeen", seventeen_facet()),
        ("staco", staco()),
    ]
}
