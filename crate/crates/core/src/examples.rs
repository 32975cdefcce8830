//! Canonical triangulations used throughout the test suite and bundled with
//! the command-line tool.

use crate::perm::{Perm3, Perm4};
use crate::surface::{SurfaceEdgeGluing, SurfaceTriangulation};
use crate::triangulation::{build, FaceGluing, Triangulation};

/// The boundary of the 4-simplex: five tetrahedra, all ten faces paired by
/// their shared vertex triples. Facet `i` carries the global vertices
/// {0..4} minus i in ascending order.
pub fn boundary_of_4_simplex() -> Triangulation {
    let verts: Vec<Vec<usize>> = (0..5)
        .map(|i| (0..5).filter(|&v| v != i).collect())
        .collect();
    let mut gluings = Vec::new();
    for i in 0..5 {
        for j in 0..4 {
            let m = verts[i][j];
            let local = |facet: usize, global: usize| -> usize {
                verts[facet].iter().position(|&v| v == global).unwrap()
            };
            let mut image = [0u8; 4];
            for k in 0..4 {
                image[k] = if k == j {
                    local(m, i) as u8
                } else {
                    local(m, verts[i][k]) as u8
                };
            }
            let map = Perm4::new(image).unwrap();
            gluings.push(FaceGluing {
                source: (i, j),
                target: (m, local(m, i)),
                map,
            });
        }
    }
    build(5, &gluings).expect("boundary of the 4-simplex is valid")
}

/// The boundary of the tetrahedron as a surface: four triangles, all six
/// edges paired. Triangle `i` carries the global vertices {0..3} minus i in
/// ascending order.
pub fn tetrahedron_boundary_surface() -> SurfaceTriangulation {
    let verts: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).filter(|&v| v != i).collect())
        .collect();
    let mut gluings = Vec::new();
    for i in 0..4 {
        for j in 0..3 {
            let m = verts[i][j];
            let local = |tri: usize, global: usize| -> usize {
                verts[tri].iter().position(|&v| v == global).unwrap()
            };
            let mut image = [0u8; 3];
            for k in 0..3 {
                image[k] = if k == j {
                    local(m, i) as u8
                } else {
                    local(m, verts[i][k]) as u8
                };
            }
            let map = Perm3::new(image).unwrap();
            gluings.push(SurfaceEdgeGluing {
                source: (i, j),
                target: (m, local(m, i)),
                map,
            });
        }
    }
    SurfaceTriangulation::build(4, &gluings).expect("tetrahedron boundary is valid")
}

/// Build a triangulation from a compact description: one `[target tet,
/// permutation word]` entry per face, `None` for boundary faces.
pub fn from_table(entries: &[[Option<(usize, &str)>; 4]]) -> Triangulation {
    let mut gluings = Vec::new();
    for (tet, faces) in entries.iter().enumerate() {
        for (face, entry) in faces.iter().enumerate() {
            if let Some((target_tet, word)) = entry {
                let map = Perm4::from_word(word).expect("valid permutation word");
                gluings.push(FaceGluing {
                    source: (tet, face),
                    target: (*target_tet, map.apply(face)),
                    map,
                });
            }
        }
    }
    build(entries.len(), &gluings).expect("bundled table is valid")
}

/// A two-tetrahedron lens space with first homology Z/3.
pub fn lens_3_1() -> Triangulation {
    from_table(&LENS_3_1_TABLE)
}

/// A two-tetrahedron triangulation of a sphere bundle over the circle with
/// first homology Z (orientable).
pub fn s2_cross_s1() -> Triangulation {
    from_table(&S2XS1_TABLE)
}

/// A one-tetrahedron triangulation of the 3-sphere.
pub fn one_tet_sphere() -> Triangulation {
    from_table(&ONE_TET_S3_TABLE)
}

/// A two-tetrahedron pseudo-manifold: all faces glued and all edges valid,
/// but some vertex link is not a 2-sphere.
pub fn bad_vertex_link_example() -> Triangulation {
    from_table(&BAD_LINK_TABLE)
}

/// A closed non-orientable two-tetrahedron triangulation (all vertex links
/// are still 2-spheres).
pub fn nonorientable_example() -> Triangulation {
    from_table(&NONORIENTABLE_TABLE)
}

// Tables below are fixed small census-style triangulations. Each is
// validated by the derived checks in this module's tests (homology, vertex
// links, orientability), not trusted blindly.

pub(crate) const LENS_3_1_TABLE: [[Option<(usize, &str)>; 4]; 2] = [
    [
        Some((0, "1023")),
        Some((0, "1023")),
        Some((1, "2301")),
        Some((1, "2301")),
    ],
    [
        Some((0, "2301")),
        Some((0, "2301")),
        Some((1, "1230")),
        Some((1, "3012")),
    ],
];

pub(crate) const S2XS1_TABLE: [[Option<(usize, &str)>; 4]; 2] = [
    [
        Some((0, "1230")),
        Some((0, "3012")),
        Some((1, "2301")),
        Some((1, "2301")),
    ],
    [
        Some((0, "2301")),
        Some((0, "2301")),
        Some((1, "1230")),
        Some((1, "3012")),
    ],
];

pub(crate) const ONE_TET_S3_TABLE: [[Option<(usize, &str)>; 4]; 1] = [[
    Some((0, "3201")),
    Some((0, "0213")),
    Some((0, "0213")),
    Some((0, "2310")),
]];

pub(crate) const BAD_LINK_TABLE: [[Option<(usize, &str)>; 4]; 2] = [
    [
        Some((0, "1023")),
        Some((0, "1023")),
        Some((1, "1203")),
        Some((1, "0231")),
    ],
    [
        Some((0, "2013")),
        Some((0, "0312")),
        Some((1, "1230")),
        Some((1, "3012")),
    ],
];

pub(crate) const NONORIENTABLE_TABLE: [[Option<(usize, &str)>; 4]; 2] = [
    [
        Some((1, "0132")),
        Some((1, "0132")),
        Some((1, "1320")),
        Some((1, "2013")),
    ],
    [
        Some((0, "0132")),
        Some((0, "0132")),
        Some((0, "3021")),
        Some((0, "1203")),
    ],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::triangulation::ManifoldIssue;

    #[test]
    fn lens_3_1_is_a_homology_lens_space() {
        let t = lens_3_1();
        assert!(t.is_closed_3_manifold());
        assert!(t.is_orientable());
        assert!(t.is_connected());
        let h = homology(&t).unwrap();
        assert_eq!(h.ranks, [1, 0, 0, 1]);
        assert_eq!(h.torsion[1], vec!["3".to_string()]);
    }

    #[test]
    fn s2_cross_s1_has_circle_homology() {
        let t = s2_cross_s1();
        assert!(t.is_closed_3_manifold());
        assert!(t.is_orientable());
        assert!(t.is_connected());
        let h = homology(&t).unwrap();
        assert_eq!(h.ranks, [1, 1, 1, 1]);
        assert!(h.torsion.iter().all(|v| v.is_empty()));
    }

    #[test]
    fn one_tet_sphere_is_a_homology_sphere() {
        let t = one_tet_sphere();
        assert!(t.is_closed_3_manifold());
        assert!(t.is_orientable());
        let h = homology(&t).unwrap();
        assert!(h.is_sphere_like());
        assert_eq!(t.vertex_class_count(), 1);
    }

    #[test]
    fn bad_link_example_has_a_torus_link() {
        let t = bad_vertex_link_example();
        assert!(t.is_connected());
        assert!(t.is_closed());
        match t.check_closed_3_manifold() {
            Err(ManifoldIssue::BadVertexLink {
                euler, connected, ..
            }) => {
                assert_eq!(euler, 0);
                assert!(connected);
            }
            other => panic!("expected BadVertexLink, got {other:?}"),
        }
    }

    #[test]
    fn nonorientable_example_is_a_manifold_but_not_orientable() {
        let t = nonorientable_example();
        assert!(t.is_closed_3_manifold());
        assert!(!t.is_orientable());
    }
}
