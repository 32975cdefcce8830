//! Instantiate an admissible coordinate vector as an embedded surface:
//! parallel copies of each disk kind are placed in their tetrahedra, arcs
//! are matched across glued faces in nesting order, and components, Euler
//! characteristics and weights are read off the result.
//!
//! Copy ordering convention: triangle copies of corner c are ordered by
//! distance from vertex c; quadrilateral copies are ordered toward the
//! pairing edge containing vertex 0 (the lower-indexed of the two edges the
//! kind separates). Arc matching pairs the k-th arc of a type on one side
//! of a face with the k-th on the other side, counting from the cut-off
//! vertex; this is forced by embeddedness of normal disk families.

use crate::normal_coords::{
    check_admissible, edge_class_crossings, same_side, DiskKind, NormalMode, NormalVector,
};
use crate::triangulation::{edge_index, Triangulation, EDGE_VERTS};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("vector is not admissible")]
    NotAdmissible,
    #[error("vector length does not match the triangulation")]
    LengthMismatch,
    #[error("coordinates do not satisfy the matching equations at face class {face_class}")]
    MatchingViolation { face_class: usize },
    #[error("coordinate too large to instantiate")]
    TooLarge,
}

/// One elementary disk copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Disk {
    pub tet: usize,
    pub kind: DiskKind,
    pub copy: u64,
}

impl Disk {
    /// Arc types carried by this disk, as (face, cut vertex) pairs.
    pub fn arc_types(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for face in 0..4 {
            for cut in 0..4 {
                if cut == face {
                    continue;
                }
                if self.kind.arc_count(face, cut) == 1 {
                    out.push((face, cut));
                }
            }
        }
        out
    }
}

/// A corner of a disk on an edge of its tetrahedron: the edge instance and
/// the crossing position counted from the low endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiskCorner {
    pub edge: usize,
    pub position: u64,
}

/// An instantiated surface: the disk set, the arc matching across interior
/// faces, and the derived component structure.
#[derive(Clone, Debug)]
pub struct EmbeddedSurface {
    mode: NormalMode,
    tet_count: usize,
    vector: NormalVector,
    disks: Vec<Disk>,
    /// (disk, face, cut) arcs flattened; parallel arrays below.
    arcs: Vec<(usize, usize, usize)>,
    /// partner arc index, or None for an arc on a boundary face.
    arc_match: Vec<Option<usize>>,
    component_of_disk: Vec<usize>,
    component_count: usize,
}

struct PerTetCounts {
    tri: [u64; 4],
    quad_kind: Option<usize>,
    quads: u64,
    oct_kind: Option<usize>,
}

fn per_tet_counts(v: &NormalVector, tet: usize) -> Result<PerTetCounts, InstantiateError> {
    let big_to_u64 = |b: &BigInt| b.to_u64().ok_or(InstantiateError::TooLarge);
    let mut tri = [0u64; 4];
    for c in 0..4 {
        tri[c] = big_to_u64(v.get(tet, DiskKind::Triangle(c)))?;
    }
    let mut quad_kind = None;
    let mut quads = 0;
    for q in 0..3 {
        let n = big_to_u64(v.get(tet, DiskKind::Quad(q)))?;
        if n > 0 {
            quad_kind = Some(q);
            quads = n;
        }
    }
    let mut oct_kind = None;
    if v.mode() == NormalMode::AlmostNormal {
        for o in 0..3 {
            let n = big_to_u64(v.get(tet, DiskKind::Octagon(o)))?;
            if n > 0 {
                oct_kind = Some(o);
            }
        }
    }
    Ok(PerTetCounts {
        tri,
        quad_kind,
        quads,
        oct_kind,
    })
}

/// Crossing position of a disk corner on edge {u, w}, counted from `u`.
/// Along the edge from u: first the triangles at u (innermost copy first),
/// then the quadrilateral or octagon crossings, then the triangles at w.
fn position_from(counts: &PerTetCounts, disk: &Disk, u: usize, w: usize, near: usize) -> u64 {
    let n_u = counts.tri[u];
    let total = edge_total(counts, u, w);
    match disk.kind {
        DiskKind::Triangle(c) => {
            if c == u {
                disk.copy
            } else {
                debug_assert_eq!(c, w);
                total - 1 - disk.copy
            }
        }
        DiskKind::Quad(q) => {
            // u and w are on opposite sides of the pairing; copies are
            // ordered toward the edge containing vertex 0.
            debug_assert!(!same_side(q, u, w));
            let u_on_zero_side = u == 0 || u == q + 1;
            if u_on_zero_side {
                n_u + disk.copy
            } else {
                n_u + (counts.quads - 1 - disk.copy)
            }
        }
        DiskKind::Octagon(o) => {
            if same_side(o, u, w) {
                // Two crossings; the one where the cut-`near` arcs meet is
                // nearer `near`.
                if near == u {
                    n_u
                } else {
                    debug_assert_eq!(near, w);
                    n_u + 1
                }
            } else {
                n_u
            }
        }
    }
}

/// Total crossings of edge {u, w} within one tetrahedron.
fn edge_total(counts: &PerTetCounts, u: usize, w: usize) -> u64 {
    let mut total = counts.tri[u] + counts.tri[w];
    if let Some(q) = counts.quad_kind {
        if !same_side(q, u, w) {
            total += counts.quads;
        }
    }
    if let Some(o) = counts.oct_kind {
        total += if same_side(o, u, w) { 2 } else { 1 };
    }
    total
}

/// Corners of a disk: one per crossed edge, two on doubled octagon edges.
/// Returns (edge index, position-from-low-endpoint) pairs.
fn disk_corners(counts: &PerTetCounts, disk: &Disk) -> Vec<DiskCorner> {
    let mut out = Vec::new();
    for (ei, &(a, b)) in EDGE_VERTS.iter().enumerate() {
        let crossings = disk.kind.edge_crossings(a, b);
        match crossings {
            0 => {}
            1 => {
                // `near` is irrelevant for single crossings.
                out.push(DiskCorner {
                    edge: ei,
                    position: position_from(counts, disk, a, b, a),
                });
            }
            2 => {
                out.push(DiskCorner {
                    edge: ei,
                    position: position_from(counts, disk, a, b, a),
                });
                out.push(DiskCorner {
                    edge: ei,
                    position: position_from(counts, disk, a, b, b),
                });
            }
            _ => unreachable!(),
        }
    }
    out
}

/// Endpoints of the arc (face, cut) of a disk: the two corners on the edges
/// {cut, x} for the face's other vertices x.
fn arc_endpoints(counts: &PerTetCounts, disk: &Disk, face: usize, cut: usize) -> [DiskCorner; 2] {
    let others: Vec<usize> = (0..4).filter(|&x| x != face && x != cut).collect();
    let mut out = [DiskCorner {
        edge: 0,
        position: 0,
    }; 2];
    for (i, &x) in others.iter().enumerate() {
        let (lo, hi) = if cut < x { (cut, x) } else { (x, cut) };
        out[i] = DiskCorner {
            edge: edge_index(lo, hi),
            position: position_from(counts, disk, lo, hi, cut),
        };
    }
    out
}

pub fn instantiate(t: &Triangulation, v: &NormalVector) -> Result<EmbeddedSurface, InstantiateError> {
    match check_admissible(t, v) {
        Ok(true) => {}
        Ok(false) => return Err(InstantiateError::NotAdmissible),
        Err(_) => return Err(InstantiateError::LengthMismatch),
    }

    let per_tet: Vec<PerTetCounts> = (0..t.tet_count())
        .map(|tet| per_tet_counts(v, tet))
        .collect::<Result<_, _>>()?;

    // Disk list, tetrahedron-major, kind-minor, copies innermost-first.
    let mut disks = Vec::new();
    for tet in 0..t.tet_count() {
        for k in 0..v.mode().coords_per_tet() {
            let kind = DiskKind::from_index(k);
            let n = v
                .get(tet, kind)
                .to_u64()
                .ok_or(InstantiateError::TooLarge)?;
            for copy in 0..n {
                disks.push(Disk { tet, kind, copy });
            }
        }
    }

    // Ordered arc lists per (tet, face, cut): disk indices sorted by
    // distance from the cut vertex.
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    let mut arc_id: std::collections::HashMap<(usize, usize, usize), usize> =
        std::collections::HashMap::new();
    for (di, disk) in disks.iter().enumerate() {
        for (face, cut) in disk.arc_types() {
            arc_id.insert((di, face, cut), arcs.len());
            arcs.push((di, face, cut));
        }
    }

    let ordered_arcs = |tet: usize, face: usize, cut: usize| -> Vec<usize> {
        // All disks in `tet` with an arc of type (face, cut), ordered from
        // the cut vertex outward: triangles by copy, then quads/octagon.
        let counts = &per_tet[tet];
        let mut list: Vec<(u64, usize)> = Vec::new();
        for (di, disk) in disks.iter().enumerate() {
            if disk.tet != tet || disk.kind.arc_count(face, cut) == 0 {
                continue;
            }
            let rank = match disk.kind {
                DiskKind::Triangle(_) => disk.copy,
                DiskKind::Quad(q) => {
                    let face_on_zero_side = face == 0 || face == q + 1;
                    let offset = counts.tri[cut];
                    if face_on_zero_side {
                        offset + disk.copy
                    } else {
                        offset + (counts.quads - 1 - disk.copy)
                    }
                }
                DiskKind::Octagon(_) => counts.tri[cut],
            };
            list.push((rank, arc_id[&(di, face, cut)]));
        }
        list.sort();
        list.into_iter().map(|(_, a)| a).collect()
    };

    // Match arcs across interior faces, k-th to k-th from the cut vertex.
    let mut arc_match: Vec<Option<usize>> = vec![None; arcs.len()];
    for fc in t.interior_face_classes() {
        let (tet_a, face_a) = t.face_class_rep(fc);
        let (tet_b, face_b, perm) = t.gluing(tet_a, face_a).unwrap();
        for w in 0..4 {
            if w == face_a {
                continue;
            }
            let list_a = ordered_arcs(tet_a, face_a, w);
            let list_b = ordered_arcs(tet_b, face_b, perm.apply(w));
            if list_a.len() != list_b.len() {
                return Err(InstantiateError::MatchingViolation { face_class: fc });
            }
            for (x, y) in list_a.iter().zip(list_b.iter()) {
                arc_match[*x] = Some(*y);
                arc_match[*y] = Some(*x);
            }
        }
    }

    // Edge-class crossing totals must agree across wedge instances.
    for e in 0..t.edge_class_count() {
        let first = edge_class_crossings(t, v, e, 0);
        for i in 1..t.edge_class_members(e).len() {
            if edge_class_crossings(t, v, e, i) != first {
                // Pick any face class touching the edge for the report.
                return Err(InstantiateError::MatchingViolation { face_class: 0 });
            }
        }
    }

    // Components: union-find over disks through matched arcs.
    let mut parent: Vec<usize> = (0..disks.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (ai, m) in arc_match.iter().enumerate() {
        if let Some(bi) = m {
            let (da, _, _) = arcs[ai];
            let (db, _, _) = arcs[*bi];
            let (ra, rb) = (find(&mut parent, da), find(&mut parent, db));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
    }
    let mut component_of_disk = vec![usize::MAX; disks.len()];
    let mut component_count = 0;
    for di in 0..disks.len() {
        let root = find(&mut parent, di);
        if component_of_disk[root] == usize::MAX {
            component_of_disk[root] = component_count;
            component_count += 1;
        }
        component_of_disk[di] = component_of_disk[root];
    }

    Ok(EmbeddedSurface {
        mode: v.mode(),
        tet_count: t.tet_count(),
        vector: v.clone(),
        disks,
        arcs,
        arc_match,
        component_of_disk,
        component_count,
    })
}

impl EmbeddedSurface {
    pub fn disk_count(&self) -> usize {
        self.disks.len()
    }
    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }
    pub fn component_count(&self) -> usize {
        self.component_count
    }
    pub fn component_of_disk(&self, disk: usize) -> usize {
        self.component_of_disk[disk]
    }
    pub fn vector(&self) -> &NormalVector {
        &self.vector
    }

    /// The vector recovered from the disk multiset; equals the input.
    pub fn recovered_vector(&self) -> NormalVector {
        let mut v = NormalVector::zero(self.mode, self.tet_count);
        for d in &self.disks {
            let cur = v.get(d.tet, d.kind).clone();
            v.set(d.tet, d.kind, cur + 1);
        }
        v
    }

    /// Per-component coordinate vectors, in component order.
    pub fn component_vectors(&self) -> Vec<NormalVector> {
        let mut out = vec![NormalVector::zero(self.mode, self.tet_count); self.component_count];
        for (di, d) in self.disks.iter().enumerate() {
            let c = self.component_of_disk[di];
            let cur = out[c].get(d.tet, d.kind).clone();
            out[c].set(d.tet, d.kind, cur + 1);
        }
        out
    }

    /// Whether any arc lies on a boundary face (the surface has boundary).
    pub fn component_has_boundary(&self, component: usize) -> bool {
        self.arcs.iter().enumerate().any(|(ai, &(di, _, _))| {
            self.component_of_disk[di] == component && self.arc_match[ai].is_none()
        })
    }

    /// Euler characteristic of one component: corner points minus arc
    /// classes plus disks.
    pub fn component_euler(&self, t: &Triangulation, component: usize) -> i64 {
        let mut faces = 0i64;
        let mut corner_points: BTreeSet<(usize, u64)> = BTreeSet::new();
        let per_tet: Vec<PerTetCounts> = (0..t.tet_count())
            .map(|tet| per_tet_counts(&self.vector, tet).unwrap())
            .collect();
        for (di, d) in self.disks.iter().enumerate() {
            if self.component_of_disk[di] != component {
                continue;
            }
            faces += 1;
            for corner in disk_corners(&per_tet[d.tet], d) {
                // Canonicalize the instance position to the class direction.
                let class = t.edge_class(d.tet, corner.edge);
                let total = edge_class_crossings(t, &self.vector, class, 0)
                    .to_u64()
                    .unwrap();
                let pos = if t.edge_instance_direction(d.tet, corner.edge) {
                    corner.position
                } else {
                    total - 1 - corner.position
                };
                corner_points.insert((class, pos));
            }
        }
        let mut edges = 0i64;
        for (ai, &(di, _, _)) in self.arcs.iter().enumerate() {
            if self.component_of_disk[di] != component {
                continue;
            }
            match self.arc_match[ai] {
                None => edges += 1,
                Some(bi) => {
                    if bi > ai {
                        edges += 1;
                    }
                }
            }
        }
        corner_points.len() as i64 - edges + faces
    }

    /// Total geometric edge crossings (the weight) of one component.
    pub fn component_weight(&self, t: &Triangulation, component: usize) -> u64 {
        let mut corner_points: BTreeSet<(usize, u64)> = BTreeSet::new();
        let per_tet: Vec<PerTetCounts> = (0..t.tet_count())
            .map(|tet| per_tet_counts(&self.vector, tet).unwrap())
            .collect();
        for (di, d) in self.disks.iter().enumerate() {
            if self.component_of_disk[di] != component {
                continue;
            }
            for corner in disk_corners(&per_tet[d.tet], d) {
                let class = t.edge_class(d.tet, corner.edge);
                let total = edge_class_crossings(t, &self.vector, class, 0)
                    .to_u64()
                    .unwrap();
                let pos = if t.edge_instance_direction(d.tet, corner.edge) {
                    corner.position
                } else {
                    total - 1 - corner.position
                };
                corner_points.insert((class, pos));
            }
        }
        corner_points.len() as u64
    }

    /// Copies of a disk kind in a tetrahedron with their components,
    /// ordered by copy index.
    pub fn copies_with_components(&self, tet: usize, kind: DiskKind) -> Vec<(u64, usize)> {
        let mut list: Vec<(u64, usize)> = self
            .disks
            .iter()
            .enumerate()
            .filter(|(_, d)| d.tet == tet && d.kind == kind)
            .map(|(di, d)| (d.copy, self.component_of_disk[di]))
            .collect();
        list.sort();
        list
    }
}

/// Connected component vectors of an admissible vector; they sum to the
/// input and each is admissible.
pub fn components(t: &Triangulation, v: &NormalVector) -> Result<Vec<NormalVector>, InstantiateError> {
    Ok(instantiate(t, v)?.component_vectors())
}

/// True iff the instantiated surface is a closed connected surface of Euler
/// characteristic 2.
pub fn is_normal_two_sphere(t: &Triangulation, v: &NormalVector) -> Result<bool, InstantiateError> {
    if v.is_zero() {
        return Ok(false);
    }
    let s = instantiate(t, v)?;
    Ok(s.component_count() == 1 && !s.component_has_boundary(0) && s.component_euler(t, 0) == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::normal_coords::{matching_matrix, vertex_linking_vector, weight};

    #[test]
    fn zero_vector_is_the_empty_surface() {
        let t = examples::boundary_of_4_simplex();
        let v = NormalVector::zero(NormalMode::Normal, 5);
        let s = instantiate(&t, &v).unwrap();
        assert_eq!(s.component_count(), 0);
        assert_eq!(s.disk_count(), 0);
        assert!(!is_normal_two_sphere(&t, &v).unwrap());
    }

    #[test]
    fn vertex_link_is_a_sphere() {
        let t = examples::boundary_of_4_simplex();
        for class in 0..5 {
            let v = vertex_linking_vector(&t, class, NormalMode::Normal);
            let s = instantiate(&t, &v).unwrap();
            assert_eq!(s.component_count(), 1);
            assert_eq!(s.component_euler(&t, 0), 2);
            assert!(!s.component_has_boundary(0));
            assert!(is_normal_two_sphere(&t, &v).unwrap());
            assert_eq!(s.recovered_vector(), v);
            assert_eq!(
                BigInt::from(s.component_weight(&t, 0)),
                weight(&t, &v)
            );
        }
    }

    #[test]
    fn doubled_link_has_two_components() {
        let t = examples::boundary_of_4_simplex();
        let v = vertex_linking_vector(&t, 0, NormalMode::Normal);
        let double = v.add(&v);
        let comps = components(&t, &double).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], v);
        assert_eq!(comps[1], v);
        assert!(!is_normal_two_sphere(&t, &double).unwrap());
    }

    #[test]
    fn sum_of_all_links_has_five_components() {
        let t = examples::boundary_of_4_simplex();
        let mut sum = NormalVector::zero(NormalMode::Normal, 5);
        for class in 0..5 {
            sum = sum.add(&vertex_linking_vector(&t, class, NormalMode::Normal));
        }
        let s = instantiate(&t, &sum).unwrap();
        assert_eq!(s.component_count(), 5);
        let mut comps = s.component_vectors();
        comps.sort();
        let mut expected: Vec<_> = (0..5)
            .map(|c| vertex_linking_vector(&t, c, NormalMode::Normal))
            .collect();
        expected.sort();
        assert_eq!(comps, expected);
    }

    #[test]
    fn non_solution_is_rejected() {
        let t = examples::boundary_of_4_simplex();
        let mut v = NormalVector::zero(NormalMode::Normal, 5);
        v.set(0, DiskKind::Triangle(0), BigInt::from(1));
        match instantiate(&t, &v) {
            Err(InstantiateError::MatchingViolation { .. }) => {}
            other => panic!("expected MatchingViolation, got {other:?}"),
        }
    }

    #[test]
    fn octagon_disk_in_open_tetrahedron() {
        let t = crate::triangulation::build(1, &[]).unwrap();
        let mut v = NormalVector::zero(NormalMode::AlmostNormal, 1);
        v.set(0, DiskKind::Octagon(0), BigInt::from(1));
        let s = instantiate(&t, &v).unwrap();
        assert_eq!(s.component_count(), 1);
        assert!(s.component_has_boundary(0));
        assert_eq!(s.component_euler(&t, 0), 1);
        assert_eq!(s.component_weight(&t, 0), 8);
    }

    #[test]
    fn euler_formula_matches_instantiation_on_kernel_vectors() {
        // Cross-check the linear Euler characteristic against the
        // instantiated count for every vertex link of every bundled table.
        for t in [
            examples::boundary_of_4_simplex(),
            examples::lens_3_1(),
            examples::s2_cross_s1(),
            examples::one_tet_sphere(),
        ] {
            let sys = matching_matrix(&t, NormalMode::Normal);
            for class in 0..t.vertex_class_count() {
                let v = vertex_linking_vector(&t, class, NormalMode::Normal);
                assert!(sys.in_kernel(&v));
                let s = instantiate(&t, &v).unwrap();
                let total: i64 = (0..s.component_count())
                    .map(|c| s.component_euler(&t, c))
                    .sum();
                assert_eq!(
                    BigInt::from(total),
                    crate::normal_coords::euler_characteristic(&t, &v)
                );
            }
        }
    }
}
