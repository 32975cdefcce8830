//! Normal coordinates: 7t entries per triangulation (four triangle types and
//! three quadrilateral types per tetrahedron), extended to 10t almost normal
//! coordinates by three octagon types per tetrahedron. Provides the matching
//! equations, admissibility, weight and the combinatorial Euler
//! characteristic.

use crate::matrix::IntegerMatrix;
use crate::triangulation::{Triangulation, EDGE_VERTS};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coordinate mode: plain normal surfaces or almost normal surfaces with
/// octagon pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalMode {
    Normal,
    AlmostNormal,
}

impl NormalMode {
    pub fn coords_per_tet(self) -> usize {
        match self {
            NormalMode::Normal => 7,
            NormalMode::AlmostNormal => 10,
        }
    }
}

/// One elementary disk kind within a tetrahedron. Quadrilaterals and
/// octagons are indexed by the vertex pairing they separate: pairing `q`
/// separates {0, q+1} from the remaining two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiskKind {
    Triangle(usize),
    Quad(usize),
    Octagon(usize),
}

impl DiskKind {
    pub fn index(self) -> usize {
        match self {
            DiskKind::Triangle(c) => c,
            DiskKind::Quad(q) => 4 + q,
            DiskKind::Octagon(o) => 7 + o,
        }
    }

    pub fn from_index(i: usize) -> DiskKind {
        match i {
            0..=3 => DiskKind::Triangle(i),
            4..=6 => DiskKind::Quad(i - 4),
            7..=9 => DiskKind::Octagon(i - 7),
            _ => panic!("disk kind index out of range"),
        }
    }

    /// Corners contributed to an edge of the tetrahedron.
    pub fn edge_crossings(self, a: usize, b: usize) -> usize {
        debug_assert!(a != b && a < 4 && b < 4);
        match self {
            DiskKind::Triangle(c) => usize::from(a == c || b == c),
            DiskKind::Quad(q) => usize::from(!same_side(q, a, b)),
            DiskKind::Octagon(o) => {
                if same_side(o, a, b) {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// Number of arcs cutting off `cut` induced on face `face`.
    pub fn arc_count(self, face: usize, cut: usize) -> usize {
        debug_assert!(face != cut && face < 4 && cut < 4);
        match self {
            DiskKind::Triangle(c) => usize::from(cut == c && face != c),
            DiskKind::Quad(q) => usize::from(cut == pairing_partner(q, face)),
            DiskKind::Octagon(o) => usize::from(!same_side(o, cut, face)),
        }
    }

    /// Total arcs on one face (3 arc types summed).
    pub fn arcs_on_face(self, face: usize) -> usize {
        (0..4)
            .filter(|&w| w != face)
            .map(|w| self.arc_count(face, w))
            .sum()
    }
}

/// Whether vertices a and b are on the same side of pairing q.
pub fn same_side(q: usize, a: usize, b: usize) -> bool {
    let in_first = |v: usize| v == 0 || v == q + 1;
    in_first(a) == in_first(b)
}

/// The vertex paired with `v` by pairing `q`.
pub fn pairing_partner(q: usize, v: usize) -> usize {
    if v == 0 {
        return q + 1;
    }
    if v == q + 1 {
        return 0;
    }
    // The other vertex of the complementary pair.
    (1..4)
        .filter(|&w| w != q + 1 && w != v)
        .next()
        .expect("pairing partner exists")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordError {
    #[error("vector length {got} does not match {expected} for this mode")]
    LengthMismatch { got: usize, expected: usize },
    #[error("coordinates must be nonnegative")]
    NegativeCoordinate,
}

/// A vector of 7t (normal) or 10t (almost normal) nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    mode: NormalMode,
    coords: Vec<BigInt>,
}

impl NormalVector {
    pub fn zero(mode: NormalMode, tet_count: usize) -> NormalVector {
        NormalVector {
            mode,
            coords: vec![BigInt::zero(); mode.coords_per_tet() * tet_count],
        }
    }

    pub fn from_coords(
        mode: NormalMode,
        tet_count: usize,
        coords: Vec<BigInt>,
    ) -> Result<NormalVector, CoordError> {
        let expected = mode.coords_per_tet() * tet_count;
        if coords.len() != expected {
            return Err(CoordError::LengthMismatch {
                got: coords.len(),
                expected,
            });
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Err(CoordError::NegativeCoordinate);
        }
        Ok(NormalVector { mode, coords })
    }

    pub fn from_i64(
        mode: NormalMode,
        tet_count: usize,
        coords: &[i64],
    ) -> Result<NormalVector, CoordError> {
        Self::from_coords(
            mode,
            tet_count,
            coords.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn mode(&self) -> NormalMode {
        self.mode
    }

    pub fn tet_count(&self) -> usize {
        self.coords.len() / self.mode.coords_per_tet()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn get(&self, tet: usize, kind: DiskKind) -> &BigInt {
        &self.coords[tet * self.mode.coords_per_tet() + kind.index()]
    }

    pub fn set(&mut self, tet: usize, kind: DiskKind, v: BigInt) {
        assert!(!v.is_negative());
        self.coords[tet * self.mode.coords_per_tet() + kind.index()] = v;
    }

    pub fn get_u64(&self, tet: usize, kind: DiskKind) -> u64 {
        self.get(tet, kind)
            .to_u64()
            .expect("coordinate exceeds u64 in an instantiation context")
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &NormalVector) -> NormalVector {
        assert_eq!(self.mode, other.mode);
        assert_eq!(self.coords.len(), other.coords.len());
        NormalVector {
            mode: self.mode,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Reinterpret a normal vector in almost normal coordinates (all octagon
    /// entries zero).
    pub fn widen_to_almost(&self) -> NormalVector {
        match self.mode {
            NormalMode::AlmostNormal => self.clone(),
            NormalMode::Normal => {
                let t = self.tet_count();
                let mut out = NormalVector::zero(NormalMode::AlmostNormal, t);
                for tet in 0..t {
                    for k in 0..7 {
                        out.set(
                            tet,
                            DiskKind::from_index(k),
                            self.get(tet, DiskKind::from_index(k)).clone(),
                        );
                    }
                }
                out
            }
        }
    }

    /// Total octagon count across all tetrahedra (zero in normal mode).
    pub fn octagon_total(&self) -> BigInt {
        match self.mode {
            NormalMode::Normal => BigInt::zero(),
            NormalMode::AlmostNormal => {
                let mut acc = BigInt::zero();
                for tet in 0..self.tet_count() {
                    for o in 0..3 {
                        acc += self.get(tet, DiskKind::Octagon(o));
                    }
                }
                acc
            }
        }
    }

    /// Decimal serialization, tetrahedron-major, kind-minor.
    pub fn to_display_string(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::fmt::Debug for NormalVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NormalVector({:?}, [{}])", self.mode, self.to_display_string())
    }
}

/// At most one quadrilateral kind per tetrahedron; in almost normal mode
/// additionally exactly one octagon coordinate equal to one, in a
/// quad-free tetrahedron.
pub fn is_admissible(v: &NormalVector) -> bool {
    let t = v.tet_count();
    for tet in 0..t {
        let quads_used = (0..3)
            .filter(|&q| !v.get(tet, DiskKind::Quad(q)).is_zero())
            .count();
        if quads_used > 1 {
            return false;
        }
    }
    if v.mode() == NormalMode::AlmostNormal {
        let mut oct_positions = Vec::new();
        for tet in 0..t {
            for o in 0..3 {
                let c = v.get(tet, DiskKind::Octagon(o));
                if !c.is_zero() {
                    if *c != BigInt::from(1) {
                        return false;
                    }
                    oct_positions.push(tet);
                }
            }
        }
        if oct_positions.len() != 1 {
            return false;
        }
        let tet = oct_positions[0];
        if (0..3).any(|q| !v.get(tet, DiskKind::Quad(q)).is_zero()) {
            return false;
        }
    }
    true
}

/// Checked admissibility, rejecting vectors of the wrong length for the
/// triangulation.
pub fn check_admissible(t: &Triangulation, v: &NormalVector) -> Result<bool, CoordError> {
    let expected = v.mode().coords_per_tet() * t.tet_count();
    if v.coords().len() != expected {
        return Err(CoordError::LengthMismatch {
            got: v.coords().len(),
            expected,
        });
    }
    Ok(is_admissible(v))
}

/// The matching equations of a triangulation: one row per interior face
/// class and normal arc type, one column per disk coordinate.
#[derive(Clone, Debug)]
pub struct MatchingSystem {
    pub mode: NormalMode,
    pub tet_count: usize,
    pub matrix: IntegerMatrix,
    /// (face class, arc slot 0..3) labels for the rows.
    pub row_labels: Vec<(usize, usize)>,
    pub provenance: u64,
}

impl MatchingSystem {
    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// Exact kernel membership.
    pub fn in_kernel(&self, v: &NormalVector) -> bool {
        if v.mode() != self.mode || v.coords().len() != self.cols() {
            return false;
        }
        self.matrix.mul_vec(v.coords()).iter().all(|x| x.is_zero())
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.matrix.rows_i64()
    }
}

fn fnv1a(data: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in data {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Build the matching equations. For each glued face pair and each of the
/// three normal arc types on that face, the disks inducing the arc type on
/// one side must balance those on the other side; octagons contribute two
/// arcs to their doubled types in almost normal mode.
pub fn matching_matrix(t: &Triangulation, mode: NormalMode) -> MatchingSystem {
    let per = mode.coords_per_tet();
    let cols = per * t.tet_count();
    let interior = t.interior_face_classes();
    let mut matrix = IntegerMatrix::zero(3 * interior.len(), cols);
    let mut row_labels = Vec::with_capacity(3 * interior.len());

    for (row_block, &fc) in interior.iter().enumerate() {
        let (tet_a, face_a) = t.face_class_rep(fc);
        let (tet_b, face_b, perm) = t
            .gluing(tet_a, face_a)
            .expect("interior face class has a gluing");
        let verts: Vec<usize> = (0..4).filter(|&v| v != face_a).collect();
        for (slot, &w) in verts.iter().enumerate() {
            let row = row_block * 3 + slot;
            row_labels.push((fc, slot));
            let w_b = perm.apply(w);
            for k in 0..per {
                let kind = DiskKind::from_index(k);
                let plus = kind.arc_count(face_a, w) as i64;
                if plus != 0 {
                    matrix.add_assign_entry(row, tet_a * per + k, &BigInt::from(plus));
                }
                let minus = kind.arc_count(face_b, w_b) as i64;
                if minus != 0 {
                    matrix.add_assign_entry(row, tet_b * per + k, &BigInt::from(-minus));
                }
            }
        }
    }

    let mut bytes = Vec::new();
    bytes.extend_from_slice(&(t.tet_count() as u64).to_le_bytes());
    bytes.push(match mode {
        NormalMode::Normal => 0,
        NormalMode::AlmostNormal => 1,
    });
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            bytes.extend_from_slice(
                matrix.get(i, j).to_i64().unwrap_or(i64::MAX).to_le_bytes().as_ref(),
            );
        }
    }
    let provenance = fnv1a(&bytes);

    MatchingSystem {
        mode,
        tet_count: t.tet_count(),
        matrix,
        row_labels,
        provenance,
    }
}

/// One triangle coordinate per corner in the vertex class, all quads zero.
pub fn vertex_linking_vector(t: &Triangulation, class: usize, mode: NormalMode) -> NormalVector {
    let mut v = NormalVector::zero(mode, t.tet_count());
    for &(tet, corner) in t.vertex_class_members(class) {
        let cur = v.get(tet, DiskKind::Triangle(corner)).clone();
        v.set(tet, DiskKind::Triangle(corner), cur + 1);
    }
    v
}

/// Whether the vector equals a vertex-linking vector; returns the class.
pub fn vertex_linking_class(t: &Triangulation, v: &NormalVector) -> Option<usize> {
    for class in 0..t.vertex_class_count() {
        if vertex_linking_vector(t, class, v.mode()) == *v {
            return Some(class);
        }
    }
    None
}

/// Crossings of one edge class counted from a single wedge instance. On a
/// matching solution every instance of the class gives the same count.
pub fn edge_class_crossings(
    t: &Triangulation,
    v: &NormalVector,
    edge_class: usize,
    instance: usize,
) -> BigInt {
    let (tet, ei) = t.edge_class_members(edge_class)[instance];
    let (a, b) = EDGE_VERTS[ei];
    let mut acc = BigInt::zero();
    for k in 0..v.mode().coords_per_tet() {
        let kind = DiskKind::from_index(k);
        let c = kind.edge_crossings(a, b);
        if c != 0 {
            acc += v.get(tet, kind) * BigInt::from(c as u64);
        }
    }
    acc
}

/// Total intersections with the edges of the triangulation. Each edge class
/// is counted once; instances of a class agree on matching solutions, and
/// the maximum over instances keeps the count meaningful (in particular
/// positive for any nonzero disk set) on arbitrary admissible vectors.
pub fn weight(t: &Triangulation, v: &NormalVector) -> BigInt {
    let mut acc = BigInt::zero();
    for e in 0..t.edge_class_count() {
        let best = (0..t.edge_class_members(e).len())
            .map(|i| edge_class_crossings(t, v, e, i))
            .max()
            .unwrap_or_else(BigInt::zero);
        acc += best;
    }
    acc
}

/// Combinatorial Euler characteristic: vertices are edge-class intersection
/// points, edges are arc classes (interior arcs pair across glued faces),
/// faces are the disks themselves. Linear in the coordinates.
pub fn euler_characteristic(t: &Triangulation, v: &NormalVector) -> BigInt {
    let per = v.mode().coords_per_tet();
    // V: one surface vertex per crossing point on each edge class.
    let vertices = weight(t, v);
    // E: arcs on each face class (for glued faces the two sides' arcs pair
    // into single surface edges, so one side's count is the edge count; the
    // sides agree on matching solutions).
    let mut edges = BigInt::zero();
    for fc in 0..t.face_class_count() {
        let (tet, face) = t.face_class_rep(fc);
        let count_on = |tet: usize, face: usize| {
            let mut acc = BigInt::zero();
            for k in 0..per {
                let kind = DiskKind::from_index(k);
                let c = kind.arcs_on_face(face);
                if c != 0 {
                    acc += v.get(tet, kind) * BigInt::from(c as u64);
                }
            }
            acc
        };
        let a = count_on(tet, face);
        let b = match t.gluing(tet, face) {
            Some((tt, tf, _)) => count_on(tt, tf),
            None => a.clone(),
        };
        edges += a.max(b);
    }
    // F: total disks.
    let mut faces = BigInt::zero();
    for c in v.coords() {
        faces += c;
    }
    vertices - edges + faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::triangulation::build;

    #[test]
    fn disk_kind_indexing_round_trips() {
        for i in 0..10 {
            assert_eq!(DiskKind::from_index(i).index(), i);
        }
    }

    #[test]
    fn quad_crossings_and_arcs() {
        // Quad 0 separates {0,1} | {2,3}: it crosses the four mixed edges
        // once and avoids edges 01 and 23.
        let q = DiskKind::Quad(0);
        assert_eq!(q.edge_crossings(0, 1), 0);
        assert_eq!(q.edge_crossings(2, 3), 0);
        assert_eq!(q.edge_crossings(0, 2), 1);
        assert_eq!(q.edge_crossings(1, 3), 1);
        // On face 0 (vertices 1,2,3) its arc cuts off the partner of 0.
        assert_eq!(pairing_partner(0, 0), 1);
        assert_eq!(q.arc_count(0, 1), 1);
        assert_eq!(q.arc_count(0, 2), 0);
        assert_eq!(q.arcs_on_face(0), 1);
    }

    #[test]
    fn octagon_crossings_and_arcs() {
        // Octagon 0 doubles the two pairing edges 01 and 23.
        let o = DiskKind::Octagon(0);
        assert_eq!(o.edge_crossings(0, 1), 2);
        assert_eq!(o.edge_crossings(2, 3), 2);
        assert_eq!(o.edge_crossings(0, 3), 1);
        // Total corners = 8.
        let total: usize = EDGE_VERTS.iter().map(|&(a, b)| o.edge_crossings(a, b)).sum();
        assert_eq!(total, 8);
        // Two arcs per face, of the two types on the far side of the pairing.
        assert_eq!(o.arcs_on_face(0), 2);
        assert_eq!(o.arc_count(0, 2), 1);
        assert_eq!(o.arc_count(0, 3), 1);
        assert_eq!(o.arc_count(0, 1), 0);
        let total_arcs: usize = (0..4).map(|f| o.arcs_on_face(f)).sum();
        assert_eq!(total_arcs, 8);
    }

    #[test]
    fn matching_matrix_shape_on_closed_triangulations() {
        // Closed T with t tetrahedra: 2t face gluings, 6t rows, 7t columns.
        let t = examples::boundary_of_4_simplex();
        let sys = matching_matrix(&t, NormalMode::Normal);
        assert_eq!(sys.rows(), 30);
        assert_eq!(sys.cols(), 35);
        let sys_a = matching_matrix(&t, NormalMode::AlmostNormal);
        assert_eq!(sys_a.rows(), 30);
        assert_eq!(sys_a.cols(), 50);
    }

    #[test]
    fn single_tetrahedron_has_no_equations() {
        let t = build(1, &[]).unwrap();
        let sys = matching_matrix(&t, NormalMode::Normal);
        assert_eq!(sys.rows(), 0);
        assert_eq!(sys.cols(), 7);
    }

    #[test]
    fn vertex_links_lie_in_the_kernel() {
        for t in [
            examples::boundary_of_4_simplex(),
            examples::lens_3_1(),
            examples::s2_cross_s1(),
            examples::one_tet_sphere(),
        ] {
            let sys = matching_matrix(&t, NormalMode::Normal);
            let sys_a = matching_matrix(&t, NormalMode::AlmostNormal);
            for class in 0..t.vertex_class_count() {
                let v = vertex_linking_vector(&t, class, NormalMode::Normal);
                assert!(sys.in_kernel(&v), "link of class {class} not in kernel");
                assert!(is_admissible(&v));
                let va = vertex_linking_vector(&t, class, NormalMode::AlmostNormal);
                assert!(sys_a.in_kernel(&va));
            }
        }
    }

    #[test]
    fn vertex_link_weight_and_euler_on_boundary_4_simplex() {
        let t = examples::boundary_of_4_simplex();
        let v = vertex_linking_vector(&t, 0, NormalMode::Normal);
        // Four triangles, each of the four incident edges crossed once.
        assert_eq!(weight(&t, &v), BigInt::from(4));
        assert_eq!(euler_characteristic(&t, &v), BigInt::from(2));
        // Doubling the link gives two parallel spheres.
        let double = v.add(&v);
        assert_eq!(euler_characteristic(&t, &double), BigInt::from(4));
        assert_eq!(weight(&t, &double), BigInt::from(8));
        // Sum over all five links stays admissible.
        let mut sum = NormalVector::zero(NormalMode::Normal, 5);
        for class in 0..5 {
            sum = sum.add(&vertex_linking_vector(&t, class, NormalMode::Normal));
        }
        assert!(is_admissible(&sum));
        let ones = sum.coords().iter().filter(|c| **c == BigInt::from(1)).count();
        assert_eq!(ones, 20);
    }

    #[test]
    fn octagon_alone_weight_and_euler() {
        let t = build(1, &[]).unwrap();
        let mut v = NormalVector::zero(NormalMode::AlmostNormal, 1);
        v.set(0, DiskKind::Octagon(1), BigInt::from(1));
        assert!(is_admissible(&v));
        assert_eq!(weight(&t, &v), BigInt::from(8));
        // A single octagon in an unglued tetrahedron is a disk.
        assert_eq!(euler_characteristic(&t, &v), BigInt::from(1));
    }

    #[test]
    fn admissibility_edge_cases() {
        let zero = NormalVector::zero(NormalMode::Normal, 2);
        assert!(is_admissible(&zero));
        let mut two_quads = NormalVector::zero(NormalMode::Normal, 2);
        two_quads.set(0, DiskKind::Quad(0), BigInt::from(1));
        two_quads.set(0, DiskKind::Quad(2), BigInt::from(1));
        assert!(!is_admissible(&two_quads));
        let mut oct2 = NormalVector::zero(NormalMode::AlmostNormal, 1);
        oct2.set(0, DiskKind::Octagon(0), BigInt::from(2));
        assert!(!is_admissible(&oct2));
        let mut no_oct = NormalVector::zero(NormalMode::AlmostNormal, 1);
        assert!(!is_admissible(&no_oct));
        no_oct.set(0, DiskKind::Octagon(2), BigInt::from(1));
        assert!(is_admissible(&no_oct));
        // Octagon and quad in the same tetrahedron is not admissible.
        no_oct.set(0, DiskKind::Quad(0), BigInt::from(1));
        assert!(!is_admissible(&no_oct));
    }

    #[test]
    fn weight_zero_only_for_zero_vector() {
        let t = examples::lens_3_1();
        let per = 7;
        for k in 0..per * 2 {
            let mut coords = vec![0i64; per * 2];
            coords[k] = 1;
            let v = NormalVector::from_i64(NormalMode::Normal, 2, &coords).unwrap();
            assert!(weight(&t, &v) > BigInt::zero());
        }
    }
}
