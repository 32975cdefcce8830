//! Triangulated surfaces: the one-dimension-down analog of the tetrahedral
//! kernel. Houses vertex links of 3-manifold triangulations and the inputs
//! of the normal-curve machinery.

use crate::perm::Perm3;
use thiserror::Error;

/// One edge identification between surface triangles. The map permutes the
/// three vertex labels and must carry the source side onto the target side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceEdgeGluing {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub map: Perm3,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceBuildError {
    #[error("triangle or side index out of range in gluing {0:?} -> {1:?}")]
    IndexOutOfRange((usize, usize), (usize, usize)),
    #[error("gluing map {map:?} does not carry side {from:?} onto side {to:?}")]
    InvalidGluingMap {
        from: (usize, usize),
        to: (usize, usize),
        map: Perm3,
    },
    #[error("edge {0:?} is glued to itself")]
    SelfGluedEdge((usize, usize)),
    #[error("edge {0:?} is glued twice or asymmetrically")]
    NonInvolutiveGluing((usize, usize)),
}

/// An immutable triangulated surface (possibly with boundary). Side `s` of a
/// triangle is the edge opposite its vertex `s`.
#[derive(Clone, Debug)]
pub struct SurfaceTriangulation {
    tri_count: usize,
    gluings: Vec<[Option<(usize, usize, Perm3)>; 3]>,
    vertex_class: Vec<[usize; 3]>,
    vertex_members: Vec<Vec<(usize, usize)>>,
    edge_class: Vec<[usize; 3]>,
    edge_members: Vec<Vec<(usize, usize)>>,
    /// Whether the instance's low-to-high direction agrees with its class
    /// representative's direction.
    edge_direction: Vec<[bool; 3]>,
    boundary_edges: Vec<(usize, usize)>,
}

/// One step of the walk around a vertex: a triangle corner together with the
/// edge instance crossed after it (for interior vertices the steps close up
/// into a cycle).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoronaStep {
    pub triangle: usize,
    pub corner: usize,
    /// The side instance separating this corner from the next.
    pub exit_side: (usize, usize),
}

impl SurfaceTriangulation {
    pub fn build(
        tri_count: usize,
        gluings: &[SurfaceEdgeGluing],
    ) -> Result<SurfaceTriangulation, SurfaceBuildError> {
        let mut table: Vec<[Option<(usize, usize, Perm3)>; 3]> = vec![[None; 3]; tri_count];
        for g in gluings {
            let (st, ss) = g.source;
            let (tt, ts) = g.target;
            if st >= tri_count || tt >= tri_count || ss > 2 || ts > 2 {
                return Err(SurfaceBuildError::IndexOutOfRange(g.source, g.target));
            }
            if g.map.apply(ss) != ts {
                return Err(SurfaceBuildError::InvalidGluingMap {
                    from: g.source,
                    to: g.target,
                    map: g.map,
                });
            }
            if g.source == g.target {
                return Err(SurfaceBuildError::SelfGluedEdge(g.source));
            }
            if table[st][ss].is_some() && table[st][ss] != Some((tt, ts, g.map)) {
                return Err(SurfaceBuildError::NonInvolutiveGluing(g.source));
            }
            table[st][ss] = Some((tt, ts, g.map));
        }
        for tri in 0..tri_count {
            for side in 0..3 {
                if let Some((tt, ts, p)) = table[tri][side] {
                    match table[tt][ts] {
                        Some((bt, bs, q)) if (bt, bs) == (tri, side) && q == p.inverse() => {}
                        _ => return Err(SurfaceBuildError::NonInvolutiveGluing((tri, side))),
                    }
                }
            }
        }

        // Vertex classes over the 3n corners.
        let mut parent: Vec<usize> = (0..3 * tri_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for tri in 0..tri_count {
            for side in 0..3 {
                if let Some((tt, _ts, p)) = table[tri][side] {
                    for v in 0..3 {
                        if v == side {
                            continue;
                        }
                        let a = find(&mut parent, tri * 3 + v);
                        let b = find(&mut parent, tt * 3 + p.apply(v));
                        if a != b {
                            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                            parent[hi] = lo;
                        }
                    }
                }
            }
        }
        let mut vertex_class = vec![[usize::MAX; 3]; tri_count];
        let mut vertex_members: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut root_to_class = std::collections::HashMap::new();
        for tri in 0..tri_count {
            for v in 0..3 {
                let root = find(&mut parent, tri * 3 + v);
                let class = *root_to_class.entry(root).or_insert_with(|| {
                    vertex_members.push(Vec::new());
                    vertex_members.len() - 1
                });
                vertex_class[tri][v] = class;
                vertex_members[class].push((tri, v));
            }
        }

        // Edge classes: singletons (boundary) or glued pairs.
        let mut edge_class = vec![[usize::MAX; 3]; tri_count];
        let mut edge_members: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut edge_direction = vec![[true; 3]; tri_count];
        let mut boundary_edges = Vec::new();
        for tri in 0..tri_count {
            for side in 0..3 {
                if edge_class[tri][side] != usize::MAX {
                    continue;
                }
                let class = edge_members.len();
                edge_class[tri][side] = class;
                edge_direction[tri][side] = true;
                match table[tri][side] {
                    None => {
                        edge_members.push(vec![(tri, side)]);
                        boundary_edges.push((tri, side));
                    }
                    Some((tt, ts, p)) => {
                        edge_class[tt][ts] = class;
                        // Endpoints of side s are the two labels other than s;
                        // the partner direction flag records whether the map
                        // preserves the low-to-high order.
                        let (a, b) = side_endpoints(side);
                        let (a2, b2) = (p.apply(a), p.apply(b));
                        edge_direction[tt][ts] = a2 < b2;
                        edge_members.push(vec![(tri, side), (tt, ts)]);
                    }
                }
            }
        }

        Ok(SurfaceTriangulation {
            tri_count,
            gluings: table,
            vertex_class,
            vertex_members,
            edge_class,
            edge_members,
            edge_direction,
            boundary_edges,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.tri_count
    }
    pub fn gluing(&self, tri: usize, side: usize) -> Option<(usize, usize, Perm3)> {
        self.gluings[tri][side]
    }
    pub fn gluing_list(&self) -> Vec<SurfaceEdgeGluing> {
        let mut out = Vec::new();
        for tri in 0..self.tri_count {
            for side in 0..3 {
                if let Some((tt, ts, p)) = self.gluings[tri][side] {
                    out.push(SurfaceEdgeGluing {
                        source: (tri, side),
                        target: (tt, ts),
                        map: p,
                    });
                }
            }
        }
        out
    }
    pub fn vertex_class_count(&self) -> usize {
        self.vertex_members.len()
    }
    pub fn vertex_class(&self, tri: usize, v: usize) -> usize {
        self.vertex_class[tri][v]
    }
    pub fn vertex_class_members(&self, class: usize) -> &[(usize, usize)] {
        &self.vertex_members[class]
    }
    pub fn edge_class_count(&self) -> usize {
        self.edge_members.len()
    }
    pub fn edge_class(&self, tri: usize, side: usize) -> usize {
        self.edge_class[tri][side]
    }
    pub fn edge_class_members(&self, class: usize) -> &[(usize, usize)] {
        &self.edge_members[class]
    }
    pub fn edge_instance_direction(&self, tri: usize, side: usize) -> bool {
        self.edge_direction[tri][side]
    }
    pub fn boundary_edges(&self) -> &[(usize, usize)] {
        &self.boundary_edges
    }
    pub fn is_closed(&self) -> bool {
        self.boundary_edges.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_class_count() as i64 - self.edge_class_count() as i64 + self.tri_count as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.tri_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.tri_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(tri) = stack.pop() {
            for side in 0..3 {
                if let Some((tt, _, _)) = self.gluings[tri][side] {
                    if !seen[tt] {
                        seen[tt] = true;
                        count += 1;
                        stack.push(tt);
                    }
                }
            }
        }
        count == self.tri_count
    }

    /// A closed connected surface of Euler characteristic 2 is a 2-sphere.
    pub fn is_sphere(&self) -> bool {
        self.tri_count > 0
            && self.is_closed()
            && self.is_connected()
            && self.euler_characteristic() == 2
    }

    /// Walk the corners around a vertex class in cyclic order. Returns None
    /// if the vertex meets the boundary (the walk does not close up).
    pub fn vertex_corona(&self, class: usize) -> Option<Vec<CoronaStep>> {
        let members = &self.vertex_members[class];
        let (tri0, c0) = members[0];
        let sides_at = |c: usize| -> [usize; 2] {
            let mut it = (0..3).filter(|&s| s != c);
            [it.next().unwrap(), it.next().unwrap()]
        };
        // Start by exiting through the larger side at the first corner.
        let mut steps = Vec::new();
        let (mut tri, mut corner) = (tri0, c0);
        let mut exit = sides_at(c0)[1];
        loop {
            steps.push(CoronaStep {
                triangle: tri,
                corner,
                exit_side: (tri, exit),
            });
            let (tt, ts, p) = self.gluings[tri][exit]?;
            let next_corner = p.apply(corner);
            let [sa, sb] = sides_at(next_corner);
            let entered = ts;
            let next_exit = if sa == entered { sb } else { sa };
            tri = tt;
            corner = next_corner;
            exit = next_exit;
            if (tri, corner) == (tri0, c0) && exit == sides_at(c0)[1] {
                break;
            }
            if steps.len() > members.len() {
                panic!("corona walk failed to close");
            }
        }
        debug_assert_eq!(steps.len(), members.len());
        Some(steps)
    }

    /// Endpoint labels (ascending) of a side.
    pub fn side_endpoints(side: usize) -> (usize, usize) {
        side_endpoints(side)
    }
}

/// The two vertex labels of side `s` in ascending order.
pub fn side_endpoints(side: usize) -> (usize, usize) {
    match side {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("side out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn tetrahedron_boundary_surface() {
        let s = examples::tetrahedron_boundary_surface();
        assert_eq!(s.triangle_count(), 4);
        assert!(s.is_closed());
        assert!(s.is_connected());
        assert_eq!(s.vertex_class_count(), 4);
        assert_eq!(s.edge_class_count(), 6);
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_sphere());
    }

    #[test]
    fn corona_walk_visits_every_corner_once() {
        let s = examples::tetrahedron_boundary_surface();
        for class in 0..s.vertex_class_count() {
            let steps = s.vertex_corona(class).expect("closed surface");
            assert_eq!(steps.len(), s.vertex_class_members(class).len());
            for step in &steps {
                assert_eq!(s.vertex_class(step.triangle, step.corner), class);
            }
        }
    }

    #[test]
    fn open_triangle_has_boundary() {
        let s = SurfaceTriangulation::build(1, &[]).unwrap();
        assert!(!s.is_closed());
        assert_eq!(s.boundary_edges().len(), 3);
        assert_eq!(s.euler_characteristic(), 1);
        assert!(s.vertex_corona(0).is_none());
    }
}
