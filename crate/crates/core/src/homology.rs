//! Exact integer simplicial homology of the class-level chain complex of a
//! triangulation. Boundary maps use incidence with signed multiplicity so
//! that self-gluings (a face appearing twice on one tetrahedron's boundary)
//! are handled correctly.

use crate::matrix::IntegerMatrix;
use crate::snf::{smith_normal_form, SmithDecomposition};
use crate::triangulation::{Triangulation, EDGE_VERTS};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("triangulation is not closed")]
    NotClosed,
    #[error("triangulation is not orientable")]
    NotOrientable,
}

/// Free rank and torsion coefficients (each dividing the next) for each
/// dimension 0..=3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroups {
    pub ranks: [usize; 4],
    pub torsion: [Vec<String>; 4],
}

impl HomologyGroups {
    pub fn is_sphere_like(&self) -> bool {
        self.ranks == [1, 0, 0, 1] && self.torsion.iter().all(|t| t.is_empty())
    }
}

/// The chain complex boundary matrices of a triangulation: d1 (edges to
/// vertices), d2 (faces to edges), d3 (tetrahedra to faces).
pub fn boundary_matrices(t: &Triangulation) -> [IntegerMatrix; 3] {
    let nv = t.vertex_class_count();
    let ne = t.edge_class_count();
    let nf = t.face_class_count();
    let nt = t.tet_count();

    let mut d1 = IntegerMatrix::zero(nv, ne);
    for e in 0..ne {
        let (tet, ei) = t.edge_class_members(e)[0];
        let (lo, hi) = EDGE_VERTS[ei];
        // The representative's low-to-high direction is the class direction.
        let head = t.vertex_class(tet, hi);
        let tail = t.vertex_class(tet, lo);
        d1.add_assign_entry(head, e, &BigInt::from(1));
        d1.add_assign_entry(tail, e, &BigInt::from(-1));
    }

    let mut d2 = IntegerMatrix::zero(ne, nf);
    for f in 0..nf {
        let (tet, fi) = t.face_class_rep(f);
        let verts: Vec<usize> = (0..4).filter(|&v| v != fi).collect();
        // boundary of [abc] = [bc] - [ac] + [ab], all pairs ascending.
        let terms = [
            ((verts[1], verts[2]), 1i64),
            ((verts[0], verts[2]), -1i64),
            ((verts[0], verts[1]), 1i64),
        ];
        for ((a, b), coeff) in terms {
            let ei = crate::triangulation::edge_index(a, b);
            let class = t.edge_class(tet, ei);
            let dir = if t.edge_instance_direction(tet, ei) {
                1
            } else {
                -1
            };
            d2.add_assign_entry(class, f, &BigInt::from(coeff * dir));
        }
    }

    let mut d3 = IntegerMatrix::zero(nf, nt);
    for tet in 0..nt {
        for fi in 0..4 {
            let class = t.face_class(tet, fi);
            let sign = if fi % 2 == 0 { 1i64 } else { -1i64 };
            let rel = t.face_instance_sign(tet, fi) as i64;
            d3.add_assign_entry(class, tet, &BigInt::from(sign * rel));
        }
    }

    [d1, d2, d3]
}

/// Homology of the class-level chain complex. Requires a closed
/// triangulation.
pub fn homology(t: &Triangulation) -> Result<HomologyGroups, HomologyError> {
    if !t.is_closed() {
        return Err(HomologyError::NotClosed);
    }
    let [d1, d2, d3] = boundary_matrices(t);
    let s1 = smith_normal_form(&d1);
    let s2 = smith_normal_form(&d2);
    let s3 = smith_normal_form(&d3);
    let dims = [
        t.vertex_class_count(),
        t.edge_class_count(),
        t.face_class_count(),
        t.tet_count(),
    ];
    let ranks_d = [0usize, s1.rank(), s2.rank(), s3.rank(), 0usize];
    let mut ranks = [0usize; 4];
    let mut torsion: [Vec<String>; 4] = Default::default();
    for k in 0..4 {
        ranks[k] = dims[k] - ranks_d[k] - ranks_d[k + 1];
        let tors: &SmithDecomposition = match k {
            0 => &s1,
            1 => &s2,
            2 => &s3,
            _ => {
                torsion[k] = Vec::new();
                continue;
            }
        };
        torsion[k] = tors.torsion().iter().map(|v| v.to_string()).collect();
    }
    Ok(HomologyGroups { ranks, torsion })
}

/// True iff the homology is (Z, 0, 0, Z). Requires closed and orientable.
pub fn is_homology_sphere(t: &Triangulation) -> Result<bool, HomologyError> {
    if !t.is_closed() {
        return Err(HomologyError::NotClosed);
    }
    if !t.is_orientable() {
        return Err(HomologyError::NotOrientable);
    }
    Ok(homology(t)?.is_sphere_like())
}

/// Exactly-zero check of d(k) * d(k+1) for the whole complex.
pub fn boundary_squares_to_zero(t: &Triangulation) -> bool {
    let [d1, d2, d3] = boundary_matrices(t);
    d1.mul(&d2).is_zero() && d2.mul(&d3).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn boundary_of_4_simplex_has_sphere_homology() {
        let t = examples::boundary_of_4_simplex();
        assert!(boundary_squares_to_zero(&t));
        let h = homology(&t).unwrap();
        assert_eq!(h.ranks, [1, 0, 0, 1]);
        assert!(h.torsion.iter().all(|v| v.is_empty()));
        assert!(is_homology_sphere(&t).unwrap());
    }

    #[test]
    fn open_tetrahedron_is_not_closed() {
        let t = crate::triangulation::build(1, &[]).unwrap();
        assert_eq!(homology(&t), Err(HomologyError::NotClosed));
    }

    #[test]
    fn rank_alternating_sum_matches_euler() {
        let t = examples::boundary_of_4_simplex();
        let h = homology(&t).unwrap();
        let alt: i64 = (0..4)
            .map(|k| {
                let sign = if k % 2 == 0 { 1i64 } else { -1 };
                sign * h.ranks[k] as i64
            })
            .sum();
        assert_eq!(alt, t.euler_characteristic());
        assert_eq!(alt, 0);
    }

    #[test]
    fn homology_invariant_under_relabelling() {
        let t = examples::boundary_of_4_simplex();
        let h = homology(&t).unwrap();
        let r = t.relabelled(&[4, 2, 0, 1, 3]);
        assert_eq!(homology(&r).unwrap(), h);
    }
}
