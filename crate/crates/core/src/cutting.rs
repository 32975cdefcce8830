//! Cut a triangulation open along an embedded normal surface. Each
//! tetrahedron is decomposed by its disks into cells: corner cells, product
//! blocks between parallel disks and central cells. Every cell is
//! triangulated by coning from an interior point over its triangulated
//! boundary, cells are glued along the original face gluings restricted to
//! sub-faces, and the two sides of each disk become boundary triangles.

use crate::normal_coords::{same_side, vertex_linking_class, DiskKind, NormalMode, NormalVector};
use crate::perm::Perm4;
use crate::surface::{SurfaceEdgeGluing, SurfaceTriangulation};
use crate::surface_builder::{instantiate, EmbeddedSurface, InstantiateError};
use crate::triangulation::{build, edge_index, FaceGluing, Triangulation, EDGE_VERTS};
use crate::perm::Perm3;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("vector does not describe a normal 2-sphere")]
    NotASphere,
    #[error("vector describes a disconnected surface")]
    NotConnectedSurface,
    #[error("triangulation must be closed")]
    NotClosed,
    #[error("cutting requires a normal (octagon-free) surface")]
    HasOctagons,
    #[error("surface instantiation failed: {0}")]
    Instantiate(#[from] InstantiateError),
    #[error("internal cut assembly error: {0}")]
    Internal(String),
}

/// How a component of the cut result arose.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ComponentTag {
    VertexStar(usize),
    Generic,
}

/// Which side of a cut surface a boundary sphere came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CutSide {
    Near,
    Far,
}

/// One boundary sphere of a piece: the surface component it copies and the
/// side it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySphere {
    pub surface_component: usize,
    pub side: CutSide,
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub components: Vec<Triangulation>,
    pub tags: Vec<ComponentTag>,
    /// Per component, the boundary spheres with their sides.
    pub boundary_map: Vec<Vec<BoundarySphere>>,
    /// Pairs of boundary faces to identify to undo the cut:
    /// ((piece, tet, face), (piece, tet, face), vertex map).
    reglue_pairs: Vec<((usize, usize, usize), (usize, usize, usize), Perm4)>,
    /// Piece containing the portion of each tetrahedron cell; used to locate
    /// disjoint surfaces relative to the cut.
    cell_piece: HashMap<(usize, Cell), usize>,
    /// Per vertex class of the original triangulation, the piece containing
    /// the vertex.
    vertex_piece: Vec<usize>,
}

/// Cells of one tetrahedron cut by its disks: `Stack(c, k)` lies between
/// triangle copies k-1 and k at corner c; `Mid(m)` lies between quad copies
/// m-1 and m (covering the whole middle when there are no quads).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Cell {
    Stack { corner: usize, gap: u64 },
    Mid { gap: u64 },
}

#[derive(Clone, Copy, Debug)]
struct TetCounts {
    tri: [u64; 4],
    quad_kind: Option<usize>,
    quads: u64,
}

impl TetCounts {
    fn of(v: &NormalVector, tet: usize) -> Result<TetCounts, CutError> {
        let mut tri = [0u64; 4];
        for c in 0..4 {
            tri[c] = v
                .get(tet, DiskKind::Triangle(c))
                .to_u64()
                .ok_or_else(|| CutError::Internal("coordinate too large".into()))?;
        }
        let mut quad_kind = None;
        let mut quads = 0;
        for q in 0..3 {
            let n = v
                .get(tet, DiskKind::Quad(q))
                .to_u64()
                .ok_or_else(|| CutError::Internal("coordinate too large".into()))?;
            if n > 0 {
                quad_kind = Some(q);
                quads = n;
            }
        }
        if v.mode() == NormalMode::AlmostNormal {
            for o in 0..3 {
                if !num_traits::Zero::is_zero(v.get(tet, DiskKind::Octagon(o))) {
                    return Err(CutError::HasOctagons);
                }
            }
        }
        Ok(TetCounts {
            tri,
            quad_kind,
            quads,
        })
    }

    /// Whether a vertex is on the pairing side containing vertex 0 (used to
    /// orient the quad stack; meaningless without quads).
    fn on_zero_side(&self, v: usize) -> bool {
        match self.quad_kind {
            Some(q) => v == 0 || v == q + 1,
            None => true,
        }
    }

    /// The mid cell adjacent to the corner direction `c`.
    fn mid_for_corner(&self, c: usize) -> Cell {
        if self.quads == 0 {
            Cell::Mid { gap: 0 }
        } else if self.on_zero_side(c) {
            Cell::Mid { gap: 0 }
        } else {
            Cell::Mid { gap: self.quads }
        }
    }

    /// The cell at gap `k` of the triangle stack at corner `c`
    /// (k = tri[c] means beyond the whole stack).
    fn stack_gap_cell(&self, c: usize, k: u64) -> Cell {
        if k < self.tri[c] {
            Cell::Stack { corner: c, gap: k }
        } else {
            self.mid_for_corner(c)
        }
    }

    fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for c in 0..4 {
            for k in 0..self.tri[c] {
                out.push(Cell::Stack { corner: c, gap: k });
            }
        }
        for m in 0..=self.quads {
            out.push(Cell::Mid { gap: m });
        }
        out
    }

    /// Crossings of edge {u, w} of this tetrahedron.
    fn edge_total(&self, u: usize, w: usize) -> u64 {
        let mut total = self.tri[u] + self.tri[w];
        if let Some(q) = self.quad_kind {
            if !same_side(q, u, w) {
                total += self.quads;
            }
        }
        total
    }

    /// Position (from vertex u) of the crossing of family arc depth d at
    /// corner u: depth equals distance from the corner for the combined
    /// triangle-then-quad family.
    fn family_depth_position(&self, _u: usize, d: u64) -> u64 {
        d
    }

    /// Arc family size at corner `w` of face `f`: triangles at w plus the
    /// quads when the quad arcs on this face cut off w.
    fn family_size(&self, face: usize, w: usize) -> u64 {
        let mut m = self.tri[w];
        if let Some(q) = self.quad_kind {
            if crate::normal_coords::pairing_partner(q, face) == w {
                m += self.quads;
            }
        }
        m
    }
}

/// Global points of the cut complex. Crossing points carry the side flag
/// along the edge-class direction because the cut separates them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Pt {
    /// Vertex class of the original triangulation.
    V(usize),
    /// Crossing `pos` on an edge class, on the `plus` (increasing) side.
    X { edge: usize, pos: u64, plus: bool },
    /// Interior point of a face-class region.
    FC { face_class: usize, region: usize },
    /// Interior point of one side of a disk.
    DC { disk: usize, far: bool },
    /// Interior point of a cell.
    CC { tet: usize, cell: Cell },
}

/// Instance-level identity of a polygon side, used to pair polygon sides
/// within one cell of one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum SideKey {
    /// Arc `depth` of the family at corner `cut` on local face `face`,
    /// approached from the cut vertex (`toward` = true) or from beyond.
    Arc {
        face: usize,
        cut: usize,
        depth: u64,
        toward: bool,
    },
    /// Segment `gap` (counted from the low endpoint) of local edge `edge`.
    EdgePiece { edge: usize, gap: u64 },
}

#[derive(Clone, Debug)]
struct Polygon {
    points: Vec<Pt>,
    center: Pt,
    /// Side k joins points[k] to points[k+1 mod len].
    coned: bool,
}

impl Polygon {
    fn new(points: Vec<Pt>, center: Pt) -> Polygon {
        let coned = points.len() > 3;
        Polygon {
            points,
            center,
            coned,
        }
    }

    fn side_count(&self) -> usize {
        self.points.len()
    }

    /// Triangles of the polygon's fixed triangulation.
    fn triangles(&self) -> Vec<[Pt; 3]> {
        if !self.coned {
            vec![[self.points[0], self.points[1], self.points[2]]]
        } else {
            (0..self.points.len())
                .map(|k| {
                    [
                        self.center,
                        self.points[k],
                        self.points[(k + 1) % self.points.len()],
                    ]
                })
                .collect()
        }
    }

    /// Index of the triangle containing side k.
    fn triangle_of_side(&self, k: usize) -> usize {
        if self.coned {
            k
        } else {
            0
        }
    }

    /// The two endpoints of side k.
    fn side_points(&self, k: usize) -> (Pt, Pt) {
        (self.points[k], self.points[(k + 1) % self.points.len()])
    }
}

/// A polygon placed on the boundary of a cell, with the side keys expressed
/// in that cell's tetrahedron frame.
#[derive(Clone, Debug)]
struct PlacedPolygon {
    poly: usize,
    keys: Vec<SideKey>,
}

struct Assembly<'a> {
    t: &'a Triangulation,
    counts: Vec<TetCounts>,
    surface: &'a EmbeddedSurface,
    /// Crossing totals per edge class.
    class_totals: Vec<u64>,
    polygons: Vec<Polygon>,
    /// Per (tet, cell): polygons on its boundary.
    cell_polys: HashMap<(usize, Cell), Vec<PlacedPolygon>>,
    /// Face-class region polygons: (face class, region) -> polygon id, plus
    /// the per-instance cell assignment later.
    region_poly: HashMap<(usize, usize), usize>,
    /// Disk side polygons: (disk, far) -> polygon id.
    disk_poly: HashMap<(usize, bool), usize>,
}

/// Crossing point on an edge instance, canonicalized to the class frame.
fn class_point(
    t: &Triangulation,
    class_totals: &[u64],
    tet: usize,
    edge: usize,
    pos_from_lo: u64,
    plus_from_lo: bool,
) -> Pt {
    let class = t.edge_class(tet, edge);
    let total = class_totals[class];
    debug_assert!(pos_from_lo < total);
    if t.edge_instance_direction(tet, edge) {
        Pt::X {
            edge: class,
            pos: pos_from_lo,
            plus: plus_from_lo,
        }
    } else {
        Pt::X {
            edge: class,
            pos: total - 1 - pos_from_lo,
            plus: !plus_from_lo,
        }
    }
}

impl<'a> Assembly<'a> {
    /// Crossing on edge {u, w} at position `pos_from_u`, on the side facing
    /// `toward` (one of u, w).
    fn crossing(&self, tet: usize, u: usize, w: usize, pos_from_u: u64, toward: usize) -> Pt {
        let (lo, hi) = if u < w { (u, w) } else { (w, u) };
        let e = edge_index(lo, hi);
        let total = self.counts[tet].edge_total(u, w);
        let pos_from_lo = if u == lo { pos_from_u } else { total - 1 - pos_from_u };
        // The side flag points from the crossing toward `toward`.
        let plus_from_lo = toward == hi;
        class_point(self.t, &self.class_totals, tet, e, pos_from_lo, plus_from_lo)
    }

    /// Gap `g` counted from vertex u on edge {u, w}, as an instance-level
    /// side key (gaps are numbered from the low endpoint).
    fn edge_piece_key(&self, tet: usize, u: usize, w: usize, gap_from_u: u64) -> SideKey {
        let (lo, hi) = if u < w { (u, w) } else { (w, u) };
        let e = edge_index(lo, hi);
        let total = self.counts[tet].edge_total(u, w);
        let gap = if u == lo { gap_from_u } else { total - gap_from_u };
        SideKey::EdgePiece { edge: e, gap }
    }
}

/// Region polygons of one face instance together with side keys and the
/// adjacent cell for each region, in canonical region order (corner strips
/// by ascending vertex then depth, then the central region).
fn face_regions(
    asm: &Assembly,
    tet: usize,
    face: usize,
) -> Vec<(Vec<Pt>, Vec<SideKey>, Cell)> {
    let counts = &asm.counts[tet];
    let verts: Vec<usize> = (0..4).filter(|&v| v != face).collect();
    let m: Vec<u64> = verts.iter().map(|&w| counts.family_size(face, w)).collect();
    let mut out = Vec::new();

    // The cell beyond family gap d at corner w of this face.
    let strip_cell = |w: usize, d: u64| -> Cell {
        let n = counts.tri[w];
        if d < n {
            Cell::Stack { corner: w, gap: d }
        } else {
            // Quad gaps: ascending from the zero side of the pairing.
            let s = d - n;
            if counts.on_zero_side(face) {
                Cell::Mid { gap: s }
            } else {
                Cell::Mid {
                    gap: counts.quads - s,
                }
            }
        }
    };

    for (wi, &w) in verts.iter().enumerate() {
        let others: Vec<usize> = verts.iter().copied().filter(|&x| x != w).collect();
        let (a, b) = (others[0], others[1]);
        for d in 0..m[wi] {
            let mut points = Vec::new();
            let mut keys = Vec::new();
            if d == 0 {
                // Triangle at the corner: vertex, then the two innermost
                // crossings.
                points.push(Pt::V(asm.t.vertex_class(tet, w)));
                keys.push(asm.edge_piece_key(tet, w, a, 0));
                points.push(asm.crossing(tet, w, a, 0, w));
                keys.push(SideKey::Arc {
                    face,
                    cut: w,
                    depth: 0,
                    toward: true,
                });
                points.push(asm.crossing(tet, w, b, 0, w));
                keys.push(asm.edge_piece_key(tet, w, b, 0));
            } else {
                // Strip between arcs d-1 and d.
                points.push(asm.crossing(tet, w, a, d - 1, a));
                keys.push(asm.edge_piece_key(tet, w, a, d));
                points.push(asm.crossing(tet, w, a, d, w));
                keys.push(SideKey::Arc {
                    face,
                    cut: w,
                    depth: d,
                    toward: true,
                });
                points.push(asm.crossing(tet, w, b, d, w));
                keys.push(asm.edge_piece_key(tet, w, b, d));
                points.push(asm.crossing(tet, w, b, d - 1, b));
                keys.push(SideKey::Arc {
                    face,
                    cut: w,
                    depth: d - 1,
                    toward: false,
                });
            }
            out.push((points, keys, strip_cell(w, d)));
        }
    }

    // Central region: walk the face corners in ascending cyclic order.
    let mut points = Vec::new();
    let mut keys = Vec::new();
    for wi in 0..3 {
        let w = verts[wi];
        let w_next = verts[(wi + 1) % 3];
        let w_prev = verts[(wi + 2) % 3];
        if m[wi] >= 1 {
            points.push(asm.crossing(tet, w, w_prev, m[wi] - 1, w_prev));
            keys.push(SideKey::Arc {
                face,
                cut: w,
                depth: m[wi] - 1,
                toward: false,
            });
            points.push(asm.crossing(tet, w, w_next, m[wi] - 1, w_next));
        } else {
            points.push(Pt::V(asm.t.vertex_class(tet, w)));
        }
        keys.push(asm.edge_piece_key(tet, w, w_next, m[wi]));
    }
    let central_cell = if counts.quads == 0 {
        Cell::Mid { gap: 0 }
    } else if counts.on_zero_side(face) {
        Cell::Mid { gap: counts.quads }
    } else {
        Cell::Mid { gap: 0 }
    };
    out.push((points, keys, central_cell));
    out
}

/// Polygon of one side of a disk: the corner-point cycle with the side
/// flags facing the given cell side, plus arc side keys.
fn disk_polygon(
    asm: &Assembly,
    disk_index: usize,
    far: bool,
) -> (Vec<Pt>, Vec<SideKey>, Cell) {
    let d = asm.surface.disks()[disk_index];
    let counts = &asm.counts[d.tet];
    match d.kind {
        DiskKind::Triangle(c) => {
            let others: Vec<usize> = (0..4).filter(|&x| x != c).collect();
            let (x, y, z) = (others[0], others[1], others[2]);
            // Near side faces the corner; far side faces away.
            let toward = |other: usize| if far { other } else { c };
            let points = vec![
                asm.crossing(d.tet, c, x, d.copy, toward(x)),
                asm.crossing(d.tet, c, y, d.copy, toward(y)),
                asm.crossing(d.tet, c, z, d.copy, toward(z)),
            ];
            // Side k joins the corners on edges (c, other[k]) and
            // (c, other[k+1]); it lies on the face missing the third.
            let keys = vec![
                SideKey::Arc {
                    face: z,
                    cut: c,
                    depth: d.copy,
                    toward: !far,
                },
                SideKey::Arc {
                    face: x,
                    cut: c,
                    depth: d.copy,
                    toward: !far,
                },
                SideKey::Arc {
                    face: y,
                    cut: c,
                    depth: d.copy,
                    toward: !far,
                },
            ];
            let cell = if far {
                counts.stack_gap_cell(c, d.copy + 1)
            } else {
                Cell::Stack {
                    corner: c,
                    gap: d.copy,
                }
            };
            (points, keys, cell)
        }
        DiskKind::Quad(q) => {
            // Pairing sides: {a1, a2} contains vertex 0.
            let a1 = 0usize;
            let a2 = q + 1;
            let bs: Vec<usize> = (1..4).filter(|&v| v != a2).collect();
            let (b1, b2) = (bs[0], bs[1]);
            // far = true means the side away from the zero-side edge.
            let toward = |av: usize, bv: usize| if far { bv } else { av };
            let pos = |av: usize, _bv: usize| counts.tri[av] + d.copy;
            // Position of this copy's crossing from the A endpoint is
            // tri[a] + copy; corner cycle alternates faces a2, b1, a1, b2.
            let corner =
                |av: usize, bv: usize| asm.crossing(d.tet, av, bv, pos(av, bv), toward(av, bv));
            let points = vec![
                corner(a1, b1),
                corner(a1, b2),
                corner(a2, b2),
                corner(a2, b1),
            ];
            // Arc depth on face f with cut w: family position tri[w] + rank,
            // ascending when f is on the zero side.
            let depth_on = |f: usize, w: usize| {
                let rank = if counts.on_zero_side(f) {
                    d.copy
                } else {
                    counts.quads - 1 - d.copy
                };
                counts.tri[w] + rank
            };
            let toward_flag = |f: usize| {
                // On a zero-side face the quad's zero side faces the cut
                // vertex; on the other faces it faces away.
                if counts.on_zero_side(f) {
                    !far
                } else {
                    far
                }
            };
            let keys = vec![
                SideKey::Arc {
                    face: a2,
                    cut: a1,
                    depth: depth_on(a2, a1),
                    toward: toward_flag(a2),
                },
                SideKey::Arc {
                    face: b1,
                    cut: b2,
                    depth: depth_on(b1, b2),
                    toward: toward_flag(b1),
                },
                SideKey::Arc {
                    face: a1,
                    cut: a2,
                    depth: depth_on(a1, a2),
                    toward: toward_flag(a1),
                },
                SideKey::Arc {
                    face: b2,
                    cut: b1,
                    depth: depth_on(b2, b1),
                    toward: toward_flag(b2),
                },
            ];
            let cell = if far {
                Cell::Mid { gap: d.copy + 1 }
            } else {
                Cell::Mid { gap: d.copy }
            };
            (points, keys, cell)
        }
        DiskKind::Octagon(_) => unreachable!("octagons rejected before assembly"),
    }
}

/// Translate the side keys of a face-class polygon from the representative
/// instance's frame to the partner instance's frame.
fn translate_keys(
    asm: &Assembly,
    keys: &[SideKey],
    rep: (usize, usize),
    partner: (usize, usize),
    perm: &Perm4,
) -> Vec<SideKey> {
    let (rep_tet, _): (usize, usize) = rep;
    let (par_tet, _) = partner;
    keys.iter()
        .map(|k| match *k {
            SideKey::Arc {
                face,
                cut,
                depth,
                toward,
            } => SideKey::Arc {
                face: perm.apply(face),
                cut: perm.apply(cut),
                depth,
                toward,
            },
            SideKey::EdgePiece { edge, gap } => {
                let (lo, hi) = EDGE_VERTS[edge];
                let (lo2, hi2) = (perm.apply(lo), perm.apply(hi));
                let e2 = edge_index(lo2, hi2);
                let total = asm.counts[rep_tet].edge_total(lo, hi);
                debug_assert_eq!(total, asm.counts[par_tet].edge_total(lo2, hi2));
                let gap2 = if lo2 < hi2 { gap } else { total - gap };
                SideKey::EdgePiece { edge: e2, gap: gap2 }
            }
        })
        .collect()
}

/// The result of cutting along a whole disjoint surface system.
#[derive(Clone, Debug)]
pub(crate) struct SystemCut {
    pub pieces: Vec<Triangulation>,
    /// Per piece, the (surface component, side) boundary groups.
    pub boundary_groups: Vec<Vec<BoundarySphere>>,
    /// Piece of each vertex class of the original triangulation.
    pub vertex_piece: Vec<usize>,
    /// Surface component vectors in surface component order.
    pub component_vectors: Vec<NormalVector>,
    cell_piece: HashMap<(usize, Cell), usize>,
    reglue_pairs: Vec<((usize, usize, usize), (usize, usize, usize), Perm4)>,
    counts: Vec<TetCounts>,
}

impl SystemCut {
    /// Piece containing gap `k` of the triangle stack at a corner.
    pub fn piece_of_stack_gap(&self, tet: usize, corner: usize, gap: u64) -> usize {
        let cell = self.counts[tet].stack_gap_cell(corner, gap);
        self.cell_piece[&(tet, cell)]
    }

    /// Piece containing gap `m` of the quad stack of a tetrahedron.
    pub fn piece_of_quad_gap(&self, tet: usize, gap: u64) -> usize {
        self.cell_piece[&(tet, Cell::Mid { gap })]
    }
}

pub(crate) fn cut_along_system(t: &Triangulation, w: &NormalVector) -> Result<SystemCut, CutError> {
    if !t.is_closed() {
        return Err(CutError::NotClosed);
    }
    let surface = instantiate(t, w)?;
    let counts: Vec<TetCounts> = (0..t.tet_count())
        .map(|tet| TetCounts::of(w, tet))
        .collect::<Result<_, _>>()?;

    let class_totals: Vec<u64> = (0..t.edge_class_count())
        .map(|e| {
            crate::normal_coords::edge_class_crossings(t, w, e, 0)
                .to_u64()
                .unwrap_or(0)
        })
        .collect();

    let mut asm = Assembly {
        t,
        counts,
        surface: &surface,
        class_totals,
        polygons: Vec::new(),
        cell_polys: HashMap::new(),
        region_poly: HashMap::new(),
        disk_poly: HashMap::new(),
    };

    // Region polygons per face class, built on the representative instance,
    // shared across the gluing (one subdivision of the common 2-cell).
    for fc in 0..t.face_class_count() {
        let (rep_tet, rep_face) = t.face_class_rep(fc);
        let regions = face_regions(&asm, rep_tet, rep_face);
        for (region_idx, (points, keys, cell)) in regions.iter().enumerate() {
            let center = Pt::FC {
                face_class: fc,
                region: region_idx,
            };
            let poly_id = asm.polygons.len();
            asm.polygons.push(Polygon::new(points.clone(), center));
            asm.region_poly.insert((fc, region_idx), poly_id);
            asm.cell_polys
                .entry((rep_tet, *cell))
                .or_default()
                .push(PlacedPolygon {
                    poly: poly_id,
                    keys: keys.clone(),
                });
        }
        // Partner instance: same polygons viewed in the partner frame.
        if let Some((par_tet, par_face, perm)) = t.gluing(rep_tet, rep_face) {
            let par_regions = face_regions(&asm, par_tet, par_face);
            // Correspondence: corner strips map through the gluing
            // permutation; the central region maps to the central region.
            let rep_regions = face_regions(&asm, rep_tet, rep_face);
            for (region_idx, (rep_points, rep_keys, _)) in rep_regions.iter().enumerate() {
                let keys2 = translate_keys(
                    &asm,
                    rep_keys,
                    (rep_tet, rep_face),
                    (par_tet, par_face),
                    &perm,
                );
                // Find the partner-side region with the same translated key
                // multiset to learn its adjacent cell; the geometric region
                // is the same, so the point cycles must agree.
                let mut found = None;
                for (points2, keys_b, cell2) in &par_regions {
                    if keys_match(&keys2, keys_b) {
                        if !cycles_match(rep_points, points2) {
                            return Err(CutError::Internal(format!(
                                "region cycles disagree across face class {fc}"
                            )));
                        }
                        found = Some(*cell2);
                        break;
                    }
                }
                let cell2 = found.ok_or_else(|| {
                    CutError::Internal(format!(
                        "no matching partner region for face class {fc}"
                    ))
                })?;
                let poly_id = asm.region_poly[&(fc, region_idx)];
                asm.cell_polys
                    .entry((par_tet, cell2))
                    .or_default()
                    .push(PlacedPolygon {
                        poly: poly_id,
                        keys: keys2,
                    });
            }
        }
    }

    // Disk polygons, one per side.
    for disk_index in 0..surface.disk_count() {
        let tet = surface.disks()[disk_index].tet;
        for far in [false, true] {
            let (points, keys, cell) = disk_polygon(&asm, disk_index, far);
            let center = Pt::DC {
                disk: disk_index,
                far,
            };
            let poly_id = asm.polygons.len();
            asm.polygons.push(Polygon::new(points, center));
            asm.disk_poly.insert((disk_index, far), poly_id);
            asm.cell_polys
                .entry((tet, cell))
                .or_default()
                .push(PlacedPolygon {
                    poly: poly_id,
                    keys,
                });
        }
    }

    assemble(t, &surface, asm)
}

fn keys_match(a: &[SideKey], b: &[SideKey]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut aa = a.to_vec();
    let mut bb = b.to_vec();
    let sort_key = |k: &SideKey| format!("{k:?}");
    aa.sort_by_key(sort_key);
    bb.sort_by_key(sort_key);
    aa == bb
}

fn cycles_match(a: &[Pt], b: &[Pt]) -> bool {
    let mut aa = a.to_vec();
    let mut bb = b.to_vec();
    aa.sort();
    bb.sort();
    aa == bb
}

/// Build the output tetrahedra and gluings from the assembled cells.
fn assemble(
    t: &Triangulation,
    surface: &EmbeddedSurface,
    asm: Assembly,
) -> Result<SystemCut, CutError> {
    // Output tets: [cell center, three triangle points].
    let mut tets: Vec<[Pt; 4]> = Vec::new();
    // (cell key, polygon id, triangle index) -> output tet.
    let mut tet_of: HashMap<((usize, Cell), usize, usize), usize> = HashMap::new();
    let mut gluing_records: Vec<FaceGluing> = Vec::new();

    let all_cells: Vec<(usize, Cell)> = {
        let mut cells: Vec<(usize, Cell)> = Vec::new();
        for tet in 0..t.tet_count() {
            for cell in asm.counts[tet].cells() {
                cells.push((tet, cell));
            }
        }
        cells
    };

    for &(tet, cell) in &all_cells {
        let cc = Pt::CC { tet, cell };
        let placed = asm
            .cell_polys
            .get(&(tet, cell))
            .ok_or_else(|| CutError::Internal(format!("cell ({tet}, {cell:?}) has no boundary")))?;
        for pp in placed {
            let poly = &asm.polygons[pp.poly];
            for (k, tri) in poly.triangles().iter().enumerate() {
                let tet_id = tets.len();
                let t4 = [cc, tri[0], tri[1], tri[2]];
                let mut distinct = true;
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        if t4[i] == t4[j] {
                            distinct = false;
                        }
                    }
                }
                if !distinct {
                    return Err(CutError::Internal(
                        "degenerate output tetrahedron (coincident points)".into(),
                    ));
                }
                tets.push(t4);
                tet_of.insert(((tet, cell), pp.poly, k), tet_id);
            }
        }
    }

    // Gluing between two output tets across a shared triangle of points,
    // with one off-face vertex mapped to the other.
    let add_gluing = |tets: &Vec<[Pt; 4]>,
                          records: &mut Vec<FaceGluing>,
                          a: usize,
                          b: usize,
                          shared: [Pt; 3],
                          off_a: Pt,
                          off_b: Pt|
     -> Result<(), CutError> {
        let pos = |tet: &[Pt; 4], p: Pt| -> Result<usize, CutError> {
            tet.iter()
                .position(|&x| x == p)
                .ok_or_else(|| CutError::Internal("point not in tetrahedron".into()))
        };
        let mut image = [0u8; 4];
        for &p in shared.iter() {
            image[pos(&tets[a], p)?] = pos(&tets[b], p)? as u8;
        }
        image[pos(&tets[a], off_a)?] = pos(&tets[b], off_b)? as u8;
        let map = Perm4::new(image)
            .ok_or_else(|| CutError::Internal("gluing map is not a permutation".into()))?;
        let face_a = pos(&tets[a], off_a)?;
        let face_b = pos(&tets[b], off_b)?;
        records.push(FaceGluing {
            source: (a, face_a),
            target: (b, face_b),
            map,
        });
        records.push(FaceGluing {
            source: (b, face_b),
            target: (a, face_a),
            map: map.inverse(),
        });
        Ok(())
    };

    // 1. Within each coned polygon placement: consecutive triangles share
    //    the spoke (center, points[k+1]).
    // 2. Within each cell: polygon sides pair by instance-level side keys.
    for &(tet, cell) in &all_cells {
        let cc = Pt::CC { tet, cell };
        let placed = &asm.cell_polys[&(tet, cell)];
        for pp in placed {
            let poly = &asm.polygons[pp.poly];
            if poly.coned {
                let s = poly.side_count();
                for k in 0..s {
                    let k2 = (k + 1) % s;
                    let a = tet_of[&((tet, cell), pp.poly, k)];
                    let b = tet_of[&((tet, cell), pp.poly, k2)];
                    let spoke = poly.points[k2];
                    add_gluing(
                        &tets,
                        &mut gluing_records,
                        a,
                        b,
                        [cc, poly.center, spoke],
                        poly.points[k],
                        poly.points[(k2 + 1) % s],
                    )?;
                }
            }
        }
        // Side-key pairing.
        let mut by_key: HashMap<SideKey, Vec<(usize, usize)>> = HashMap::new();
        for pp in placed {
            for (k, key) in pp.keys.iter().enumerate() {
                by_key.entry(*key).or_default().push((pp.poly, k));
            }
        }
        for (key, sides) in by_key {
            if sides.len() != 2 {
                return Err(CutError::Internal(format!(
                    "side key {key:?} of cell ({tet}, {cell:?}) occurs {} times",
                    sides.len()
                )));
            }
            let (poly_a, side_a) = sides[0];
            let (poly_b, side_b) = sides[1];
            let pa = &asm.polygons[poly_a];
            let pb = &asm.polygons[poly_b];
            let (u1, v1) = pa.side_points(side_a);
            let (u2, v2) = pb.side_points(side_b);
            if !(u1 == u2 && v1 == v2 || u1 == v2 && v1 == u2) {
                return Err(CutError::Internal(format!(
                    "side endpoints disagree for key {key:?} in cell ({tet}, {cell:?})"
                )));
            }
            let ta = tet_of[&((tet, cell), poly_a, pa.triangle_of_side(side_a))];
            let tb = tet_of[&((tet, cell), poly_b, pb.triangle_of_side(side_b))];
            let off = |poly: &Polygon, side: usize, tet4: &[Pt; 4]| -> Pt {
                // The vertex of the tet not in {cc, u, v}.
                let (u, v) = poly.side_points(side);
                *tet4
                    .iter()
                    .find(|&&p| p != cc && p != u && p != v)
                    .expect("tetrahedron has an off-face vertex")
            };
            let off_a = off(pa, side_a, &tets[ta]);
            let off_b = off(pb, side_b, &tets[tb]);
            add_gluing(&tets, &mut gluing_records, ta, tb, [cc, u1, v1], off_a, off_b)?;
        }
    }

    // 3. Across each interior face class: the shared region polygons are
    //    coned from both cell sides; glue triangle by triangle.
    for fc in t.interior_face_classes() {
        let (rep_tet, rep_face) = t.face_class_rep(fc);
        let (par_tet, _par_face, _) = t.gluing(rep_tet, rep_face).unwrap();
        let region_count = asm
            .region_poly
            .keys()
            .filter(|(f, _)| *f == fc)
            .count();
        for region in 0..region_count {
            let poly_id = asm.region_poly[&(fc, region)];
            let poly = &asm.polygons[poly_id];
            // Locate the two placements of this polygon.
            let mut placements: Vec<(usize, Cell)> = Vec::new();
            for &(tet, cell) in &all_cells {
                if tet != rep_tet && tet != par_tet {
                    continue;
                }
                if let Some(pl) = asm.cell_polys.get(&(tet, cell)) {
                    for pp in pl {
                        if pp.poly == poly_id {
                            placements.push((tet, cell));
                        }
                    }
                }
            }
            if placements.len() != 2 {
                return Err(CutError::Internal(format!(
                    "face class {fc} region {region} has {} placements",
                    placements.len()
                )));
            }
            let (ka, kb) = (placements[0], placements[1]);
            for (k, _tri) in poly.triangles().iter().enumerate() {
                let a = tet_of[&(ka, poly_id, k)];
                let b = tet_of[&(kb, poly_id, k)];
                let tri = poly.triangles()[k];
                add_gluing(
                    &tets,
                    &mut gluing_records,
                    a,
                    b,
                    tri,
                    Pt::CC {
                        tet: ka.0,
                        cell: ka.1,
                    },
                    Pt::CC {
                        tet: kb.0,
                        cell: kb.1,
                    },
                )?;
            }
        }
    }

    // Split into connected pieces.
    let mut parent: Vec<usize> = (0..tets.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for g in &gluing_records {
        let (a, b) = (g.source.0, g.target.0);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut piece_of: Vec<usize> = vec![usize::MAX; tets.len()];
    let mut piece_sizes: Vec<usize> = Vec::new();
    let mut local_index: Vec<usize> = vec![usize::MAX; tets.len()];
    for i in 0..tets.len() {
        let root = find(&mut parent, i);
        if piece_of[root] == usize::MAX {
            piece_of[root] = piece_sizes.len();
            piece_sizes.push(0);
        }
        piece_of[i] = piece_of[root];
        local_index[i] = piece_sizes[piece_of[i]];
        piece_sizes[piece_of[i]] += 1;
    }

    let mut piece_gluings: Vec<Vec<FaceGluing>> = vec![Vec::new(); piece_sizes.len()];
    for g in &gluing_records {
        let p = piece_of[g.source.0];
        piece_gluings[p].push(FaceGluing {
            source: (local_index[g.source.0], g.source.1),
            target: (local_index[g.target.0], g.target.1),
            map: g.map,
        });
    }
    let mut pieces = Vec::new();
    for (p, gl) in piece_gluings.iter().enumerate() {
        let tri = build(piece_sizes[p], gl)
            .map_err(|e| CutError::Internal(format!("piece {p} failed validation: {e}")))?;
        pieces.push(tri);
    }

    // Boundary groups: disk-side cone triangles land in pieces.
    let mut boundary_groups: Vec<Vec<BoundarySphere>> = vec![Vec::new(); pieces.len()];
    let mut reglue_pairs = Vec::new();
    for disk_index in 0..surface.disk_count() {
        let comp = surface.component_of_disk(disk_index);
        let near_poly = asm.disk_poly[&(disk_index, false)];
        let far_poly = asm.disk_poly[&(disk_index, true)];
        let tet = surface.disks()[disk_index].tet;
        let near_cell = cell_of_disk_placement(&asm, tet, near_poly);
        let far_cell = cell_of_disk_placement(&asm, tet, far_poly);
        let near_tri0 = tet_of[&((tet, near_cell), near_poly, 0)];
        let far_tri0 = tet_of[&((tet, far_cell), far_poly, 0)];
        let near_piece = piece_of[near_tri0];
        let far_piece = piece_of[far_tri0];
        let near_group = BoundarySphere {
            surface_component: comp,
            side: CutSide::Near,
        };
        let far_group = BoundarySphere {
            surface_component: comp,
            side: CutSide::Far,
        };
        if !boundary_groups[near_piece].contains(&near_group) {
            boundary_groups[near_piece].push(near_group);
        }
        if !boundary_groups[far_piece].contains(&far_group) {
            boundary_groups[far_piece].push(far_group);
        }
        // Reglue pairs: triangle k of the near side matches triangle k of
        // the far side; the outer faces are the cut copies.
        let poly = &asm.polygons[near_poly];
        for k in 0..poly.triangles().len() {
            let a = tet_of[&((tet, near_cell), near_poly, k)];
            let b = tet_of[&((tet, far_cell), far_poly, k)];
            // Outer face of a = face opposite the cell center (slot 0).
            let map = reglue_map(&tets[a], &tets[b])?;
            reglue_pairs.push((
                (piece_of[a], local_index[a], 0usize),
                (piece_of[b], local_index[b], 0usize),
                map,
            ));
        }
    }
    for groups in &mut boundary_groups {
        groups.sort_by_key(|g| (g.surface_component, g.side as u8));
    }

    // Vertex pieces: the cell at stack gap 0 of any corner of the class.
    let mut vertex_piece = vec![usize::MAX; t.vertex_class_count()];
    let mut cell_piece: HashMap<(usize, Cell), usize> = HashMap::new();
    for &(tet, cell) in &all_cells {
        // any triangle of any placed polygon identifies the piece
        let pp = &asm.cell_polys[&(tet, cell)][0];
        let t0 = tet_of[&((tet, cell), pp.poly, 0)];
        cell_piece.insert((tet, cell), piece_of[t0]);
    }
    for class in 0..t.vertex_class_count() {
        let (tet, corner) = t.vertex_class_members(class)[0];
        let cell = asm.counts[tet].stack_gap_cell(corner, 0);
        vertex_piece[class] = cell_piece[&(tet, cell)];
    }

    Ok(SystemCut {
        pieces,
        boundary_groups,
        vertex_piece,
        component_vectors: surface.component_vectors(),
        cell_piece,
        reglue_pairs,
        counts: asm.counts,
    })
}

fn cell_of_disk_placement(asm: &Assembly, tet: usize, poly_id: usize) -> Cell {
    for (&(ptet, cell), placed) in &asm.cell_polys {
        if ptet != tet {
            continue;
        }
        if placed.iter().any(|pp| pp.poly == poly_id) {
            return cell;
        }
    }
    unreachable!("disk polygon placed in some cell");
}

/// Vertex map from a near-side cut tetrahedron to its far-side twin: flip
/// the side flags of crossing points and the disk-center side.
fn reglue_map(a: &[Pt; 4], b: &[Pt; 4]) -> Result<Perm4, CutError> {
    let flip = |p: Pt| -> Pt {
        match p {
            Pt::X { edge, pos, plus } => Pt::X {
                edge,
                pos,
                plus: !plus,
            },
            Pt::DC { disk, far } => Pt::DC { disk, far: !far },
            Pt::CC { .. } => p,
            other => other,
        }
    };
    let mut image = [0u8; 4];
    for i in 0..4 {
        let target = if i == 0 {
            // cell centers map to each other
            b[0]
        } else {
            flip(a[i])
        };
        let j = b
            .iter()
            .position(|&x| x == target)
            .ok_or_else(|| CutError::Internal("reglue correspondence failed".into()))?;
        image[i] = j as u8;
    }
    Perm4::new(image).ok_or_else(|| CutError::Internal("reglue map not a permutation".into()))
}

/// Cut along a connected normal 2-sphere. The component between a
/// vertex-linking sphere and its vertex is tagged as the vertex star.
pub fn cut_along(t: &Triangulation, v: &NormalVector) -> Result<CutResult, CutError> {
    if !t.is_closed() {
        return Err(CutError::NotClosed);
    }
    if v.is_zero() {
        return Err(CutError::NotASphere);
    }
    let surface = instantiate(t, v)?;
    if surface.component_count() != 1 {
        return Err(CutError::NotConnectedSurface);
    }
    if surface.component_has_boundary(0) || surface.component_euler(t, 0) != 2 {
        return Err(CutError::NotASphere);
    }

    let cut = cut_along_system(t, v)?;
    let link_class = vertex_linking_class(t, v);
    let mut tags = Vec::new();
    for piece in 0..cut.pieces.len() {
        let tag = match link_class {
            Some(class)
                if cut.vertex_piece[class] == piece
                    && cut.boundary_groups[piece].len() == 1 =>
            {
                ComponentTag::VertexStar(class)
            }
            _ => ComponentTag::Generic,
        };
        tags.push(tag);
    }
    Ok(CutResult {
        components: cut.pieces,
        tags,
        boundary_map: cut.boundary_groups,
        reglue_pairs: cut.reglue_pairs,
        cell_piece: cut.cell_piece,
        vertex_piece: cut.vertex_piece,
    })
}

impl CutResult {
    /// Piece containing a given vertex class of the original triangulation.
    pub fn piece_of_vertex(&self, class: usize) -> usize {
        self.vertex_piece[class]
    }

    pub(crate) fn cell_piece_count(&self) -> usize {
        self.cell_piece.len()
    }
}

/// Undo a cut: identify the two copies of each cut disk. The result has the
/// same homology as the original triangulation.
pub fn reglue(cut: &CutResult) -> Triangulation {
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for piece in &cut.components {
        offsets.push(total);
        total += piece.tet_count();
    }
    let mut gluings = Vec::new();
    for (p, piece) in cut.components.iter().enumerate() {
        for g in piece.gluing_list() {
            gluings.push(FaceGluing {
                source: (offsets[p] + g.source.0, g.source.1),
                target: (offsets[p] + g.target.0, g.target.1),
                map: g.map,
            });
        }
    }
    for ((pa, ta, fa), (pb, tb, fb), map) in &cut.reglue_pairs {
        gluings.push(FaceGluing {
            source: (offsets[*pa] + ta, *fa),
            target: (offsets[*pb] + tb, *fb),
            map: *map,
        });
        gluings.push(FaceGluing {
            source: (offsets[*pb] + tb, *fb),
            target: (offsets[*pa] + ta, *fa),
            map: map.inverse(),
        });
    }
    build(total, &gluings).expect("reglued triangulation is valid")
}

/// Connected components of the boundary of a bounded triangulation, as
/// surface triangulations. Boundary triangles are glued by walking around
/// each boundary edge through the interior.
pub fn boundary_surfaces(t: &Triangulation) -> Vec<SurfaceTriangulation> {
    let boundary: Vec<(usize, usize)> = t.boundary_faces().to_vec();
    if boundary.is_empty() {
        return Vec::new();
    }
    let index_of: HashMap<(usize, usize), usize> = boundary
        .iter()
        .enumerate()
        .map(|(i, &bf)| (bf, i))
        .collect();
    let relabel = |face: usize, w: usize| -> usize {
        (0..4).filter(|&x| x != face).position(|x| x == w).unwrap()
    };

    let mut gluings: Vec<SurfaceEdgeGluing> = Vec::new();
    for (i, &(tet, face)) in boundary.iter().enumerate() {
        let verts: Vec<usize> = (0..4).filter(|&v| v != face).collect();
        for &other in &verts {
            // The boundary edge opposite `other` within this face, with
            // endpoints verts \ {other}. Walk around it through the
            // manifold to the next boundary face.
            let ends: Vec<usize> = verts.iter().copied().filter(|&v| v != other).collect();
            let (mut a, mut b) = (ends[0], ends[1]);
            let mut cur_tet = tet;
            // The wedge face we exit through starts as the boundary face's
            // opposite face at this edge.
            let mut exit_face = other;
            let mut guard = 0;
            let (final_tet, final_face) = loop {
                guard += 1;
                if guard > 24 * t.tet_count() + 8 {
                    panic!("edge walk failed to terminate");
                }
                match t.gluing(cur_tet, exit_face) {
                    None => break (cur_tet, exit_face),
                    Some((nt, nf, p)) => {
                        a = p.apply(a);
                        b = p.apply(b);
                        let entered = nf;
                        // The other face of the new tetrahedron containing
                        // the edge {a, b}.
                        let next_exit = (0..4)
                            .find(|&f| f != entered && f != a && f != b)
                            .expect("wedge has two faces");
                        cur_tet = nt;
                        exit_face = next_exit;
                    }
                }
            };
            let j = index_of[&(final_tet, final_face)];
            // Vertex map: a -> a', b -> b', other -> the vertex of the
            // final face not on the edge.
            let third = (0..4)
                .find(|&v| v != final_face && v != a && v != b)
                .unwrap();
            let side_i = relabel(face, other);
            let side_j = relabel(final_face, third);
            let mut image = [0u8; 3];
            let orig_ends: Vec<usize> = verts.iter().copied().filter(|&v| v != other).collect();
            image[relabel(face, orig_ends[0])] = relabel(final_face, a) as u8;
            image[relabel(face, orig_ends[1])] = relabel(final_face, b) as u8;
            image[side_i] = side_j as u8;
            let map = Perm3::new(image).expect("boundary gluing map is a permutation");
            gluings.push(SurfaceEdgeGluing {
                source: (i, side_i),
                target: (j, side_j),
                map,
            });
        }
    }
    let all = SurfaceTriangulation::build(boundary.len(), &gluings)
        .expect("boundary of a valid triangulation is a valid surface");

    // Split into connected components.
    let n = all.triangle_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(tri) = stack.pop() {
            for side in 0..3 {
                if let Some((tt, _, _)) = all.gluing(tri, side) {
                    if comp[tt] == usize::MAX {
                        comp[tt] = count;
                        stack.push(tt);
                    }
                }
            }
        }
        count += 1;
    }
    let mut out = Vec::new();
    for c in 0..count {
        let members: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
        let local: HashMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut sub = Vec::new();
        for &m in &members {
            for side in 0..3 {
                if let Some((tt, ts, p)) = all.gluing(m, side) {
                    sub.push(SurfaceEdgeGluing {
                        source: (local[&m], side),
                        target: (local[&tt], ts),
                        map: p,
                    });
                }
            }
        }
        out.push(
            SurfaceTriangulation::build(members.len(), &sub)
                .expect("boundary component is a valid surface"),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::homology::homology;
    use crate::normal_coords::vertex_linking_vector;

    #[test]
    fn boundary_of_open_tetrahedron_is_a_sphere() {
        let t = build(1, &[]).unwrap();
        let surfaces = boundary_surfaces(&t);
        assert_eq!(surfaces.len(), 1);
        assert_eq!(surfaces[0].triangle_count(), 4);
        assert!(surfaces[0].is_sphere());
    }

    #[test]
    fn closed_triangulation_has_no_boundary_surfaces() {
        let t = examples::boundary_of_4_simplex();
        assert!(boundary_surfaces(&t).is_empty());
    }

    #[test]
    fn cut_boundary_4_simplex_along_a_vertex_link() {
        let t = examples::boundary_of_4_simplex();
        let v = vertex_linking_vector(&t, 0, NormalMode::Normal);
        let cut = cut_along(&t, &v).unwrap();
        assert_eq!(cut.components.len(), 2);
        // One piece is the vertex star.
        let star = cut
            .tags
            .iter()
            .position(|tag| matches!(tag, ComponentTag::VertexStar(0)))
            .expect("a vertex star piece");
        let other = 1 - star;
        assert_eq!(cut.tags[other], ComponentTag::Generic);
        for piece in 0..2 {
            assert_eq!(cut.boundary_map[piece].len(), 1);
            let b = boundary_surfaces(&cut.components[piece]);
            assert_eq!(b.len(), 1, "piece {piece} boundary components");
            assert!(b[0].is_sphere(), "piece {piece} boundary is a sphere");
        }
    }

    #[test]
    fn cutting_along_the_empty_vector_fails() {
        let t = examples::boundary_of_4_simplex();
        let zero = NormalVector::zero(NormalMode::Normal, 5);
        assert!(matches!(cut_along(&t, &zero), Err(CutError::NotASphere)));
    }

    #[test]
    fn cutting_along_a_disconnected_surface_fails() {
        let t = examples::boundary_of_4_simplex();
        let v = vertex_linking_vector(&t, 0, NormalMode::Normal);
        let double = v.add(&v);
        assert!(matches!(
            cut_along(&t, &double),
            Err(CutError::NotConnectedSurface)
        ));
    }

    #[test]
    fn reglue_restores_homology() {
        let t = examples::boundary_of_4_simplex();
        let original = homology(&t).unwrap();
        let v = vertex_linking_vector(&t, 2, NormalMode::Normal);
        let cut = cut_along(&t, &v).unwrap();
        let glued = reglue(&cut);
        assert!(glued.is_closed());
        assert_eq!(homology(&glued).unwrap(), original);
    }
}
