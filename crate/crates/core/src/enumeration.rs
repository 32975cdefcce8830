//! Exact enumeration of the solution cone of the matching equations:
//! admissible vertex solutions (extremal rays, double description method)
//! and fundamental solutions (Hilbert basis, incremental saturation per
//! equation). Admissibility is enforced per cell: one enumeration per
//! choice of at most one quadrilateral kind per tetrahedron (and, in almost
//! normal mode, one octagon slot), with results deduplicated across cells.

use crate::normal_coords::{MatchingSystem, NormalMode, NormalVector};
use crate::surface_builder::{instantiate, is_normal_two_sphere};
use crate::triangulation::Triangulation;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("intermediate solution set exceeded the budget of {limit} vectors")]
    ResourceBudgetExceeded { limit: usize },
    #[error("integer overflow during enumeration")]
    ArithmeticOverflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_intermediate: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_intermediate: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SolutionKind {
    VertexSolutions,
    HilbertBasis,
}

/// A set of admissible solutions of a matching system: extremal rays or a
/// Hilbert basis, with the system hash recorded as provenance.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub kind: SolutionKind,
    pub mode: NormalMode,
    pub basis: Vec<NormalVector>,
    pub provenance: u64,
}

/// One admissibility cell: the allowed coordinate columns.
#[derive(Clone, Debug)]
struct Cell {
    allowed: Vec<usize>,
}

fn cells(tet_count: usize, mode: NormalMode) -> Vec<Cell> {
    let per = mode.coords_per_tet();
    let mut out = Vec::new();
    // Quad choices: 0 = none, 1..=3 = quad kind q-1.
    let mut choice = vec![0usize; tet_count];
    loop {
        match mode {
            NormalMode::Normal => {
                let mut allowed = Vec::new();
                for tet in 0..tet_count {
                    for c in 0..4 {
                        allowed.push(tet * per + c);
                    }
                    if choice[tet] > 0 {
                        allowed.push(tet * per + 4 + (choice[tet] - 1));
                    }
                }
                out.push(Cell { allowed });
            }
            NormalMode::AlmostNormal => {
                // One octagon slot in a quad-free tetrahedron.
                for oct_tet in 0..tet_count {
                    if choice[oct_tet] != 0 {
                        continue;
                    }
                    for oct_kind in 0..3 {
                        let mut allowed = Vec::new();
                        for tet in 0..tet_count {
                            for c in 0..4 {
                                allowed.push(tet * per + c);
                            }
                            if choice[tet] > 0 {
                                allowed.push(tet * per + 4 + (choice[tet] - 1));
                            }
                        }
                        allowed.push(oct_tet * per + 7 + oct_kind);
                        allowed.sort_unstable();
                        out.push(Cell { allowed });
                    }
                }
            }
        }
        // Increment the mixed-radix choice vector.
        let mut k = 0;
        loop {
            if k == tet_count {
                return out;
            }
            choice[k] += 1;
            if choice[k] < 4 {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn checked_add_vec(a: &[i64], b: &[i64]) -> Result<Vec<i64>, EnumerationError> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).ok_or(EnumerationError::ArithmeticOverflow))
        .collect()
}

fn dot(row: &[i64], v: &[i64]) -> Result<i64, EnumerationError> {
    let mut acc: i64 = 0;
    for (&a, &x) in row.iter().zip(v) {
        if a != 0 && x != 0 {
            let p = a
                .checked_mul(x)
                .ok_or(EnumerationError::ArithmeticOverflow)?;
            acc = acc
                .checked_add(p)
                .ok_or(EnumerationError::ArithmeticOverflow)?;
        }
    }
    Ok(acc)
}

fn dominates(small: &[i64], big: &[i64]) -> bool {
    small.iter().zip(big).all(|(&s, &b)| s <= b)
}

/// Hilbert basis of {x >= 0 integer, rows . x = 0} restricted to the given
/// columns, by saturation one equation at a time. Generators start as unit
/// vectors; each equation's solutions are closed under opposite-sign pair
/// sums with domination pruning, then reduced to minimal elements.
pub fn hilbert_basis_kernel(
    rows: &[Vec<i64>],
    ncols: usize,
    allowed: &[usize],
    budget: &EnumerationBudget,
) -> Result<Vec<Vec<i64>>, EnumerationError> {
    let mut gens: Vec<Vec<i64>> = allowed
        .iter()
        .map(|&c| {
            let mut v = vec![0i64; ncols];
            v[c] = 1;
            v
        })
        .collect();

    // Restrict rows to the allowed support and order by sparsity.
    let mut active_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut out = vec![0i64; ncols];
            for &c in allowed {
                out[c] = r[c];
            }
            out
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    active_rows.sort_by_key(|r| r.iter().filter(|&&x| x != 0).count());
    active_rows.dedup();

    for row in &active_rows {
        gens = saturate_one_equation(gens, row, budget)?;
        if gens.is_empty() {
            return Ok(gens);
        }
    }
    gens.sort();
    Ok(gens)
}

fn saturate_one_equation(
    gens: Vec<Vec<i64>>,
    row: &[i64],
    budget: &EnumerationBudget,
) -> Result<Vec<Vec<i64>>, EnumerationError> {
    let mut items: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut solutions: Vec<Vec<i64>> = Vec::new();

    for g in gens {
        let s = dot(row, &g)?;
        if s == 0 {
            if seen.insert(g.clone()) {
                solutions.push(g);
            }
        } else if seen.insert(g.clone()) {
            items.push((g, s));
        }
    }

    // Worklist of indices into `items` still to be paired.
    let mut frontier: Vec<usize> = (0..items.len()).collect();
    while let Some(i) = frontier.pop() {
        let (vi, si) = items[i].clone();
        // Pair with every stored item of opposite sign.
        let mut new_items = Vec::new();
        for (vj, sj) in items.iter() {
            if si > 0 && *sj >= 0 {
                continue;
            }
            if si < 0 && *sj <= 0 {
                continue;
            }
            let w = checked_add_vec(&vi, vj)?;
            if seen.contains(&w) {
                continue;
            }
            // Prune anything dominated by a known solution.
            if solutions.iter().any(|s| dominates(s, &w)) {
                continue;
            }
            let sw = si + sj;
            seen.insert(w.clone());
            if sw == 0 {
                solutions.push(w);
            } else {
                new_items.push((w, sw));
            }
        }
        for item in new_items {
            if items.len() >= budget.max_intermediate {
                return Err(EnumerationError::ResourceBudgetExceeded {
                    limit: budget.max_intermediate,
                });
            }
            frontier.push(items.len());
            items.push(item);
        }
        if solutions.len() + items.len() > budget.max_intermediate {
            return Err(EnumerationError::ResourceBudgetExceeded {
                limit: budget.max_intermediate,
            });
        }
    }

    // Reduce to minimal elements.
    solutions.sort_by_key(|s| s.iter().map(|&x| x as i128).sum::<i128>());
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    'outer: for s in solutions {
        for m in &minimal {
            if dominates(m, &s) {
                continue 'outer;
            }
        }
        minimal.push(s);
    }
    Ok(minimal)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extremal rays of {x >= 0, rows . x = 0} restricted to the given columns,
/// by the double description method with the combinatorial adjacency test.
/// Rays are scaled to coprime coordinates.
pub fn extreme_rays_kernel(
    rows: &[Vec<i64>],
    ncols: usize,
    allowed: &[usize],
) -> Result<Vec<Vec<i64>>, EnumerationError> {
    let support = |v: &[i64]| -> u128 {
        let mut s = 0u128;
        for &c in allowed {
            if v[c] != 0 {
                s |= 1u128 << (allowed.iter().position(|&x| x == c).unwrap());
            }
        }
        s
    };
    assert!(allowed.len() <= 128, "support bitmask limited to 128 columns");

    let mut rays: Vec<Vec<i64>> = allowed
        .iter()
        .map(|&c| {
            let mut v = vec![0i64; ncols];
            v[c] = 1;
            v
        })
        .collect();

    let mut active_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut out = vec![0i64; ncols];
            for &c in allowed {
                out[c] = r[c];
            }
            out
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    active_rows.sort_by_key(|r| r.iter().filter(|&&x| x != 0).count());
    active_rows.dedup();

    for row in &active_rows {
        let vals: Vec<i64> = rays
            .iter()
            .map(|r| dot(row, r))
            .collect::<Result<_, _>>()?;
        let mut next: Vec<Vec<i64>> = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v == 0 {
                next.push(r.clone());
            }
        }
        let supports: Vec<u128> = rays.iter().map(|r| support(r)).collect();
        for i in 0..rays.len() {
            if vals[i] <= 0 {
                continue;
            }
            for j in 0..rays.len() {
                if vals[j] >= 0 {
                    continue;
                }
                // Combinatorial adjacency: no third ray's support inside
                // the union of this pair's supports.
                let union = supports[i] | supports[j];
                let adjacent = (0..rays.len())
                    .all(|k| k == i || k == j || (supports[k] & !union) != 0);
                if !adjacent {
                    continue;
                }
                let (a, b) = (vals[i], -vals[j]);
                let mut w = vec![0i64; ncols];
                for &c in allowed {
                    let term1 = b
                        .checked_mul(rays[i][c])
                        .ok_or(EnumerationError::ArithmeticOverflow)?;
                    let term2 = a
                        .checked_mul(rays[j][c])
                        .ok_or(EnumerationError::ArithmeticOverflow)?;
                    w[c] = term1
                        .checked_add(term2)
                        .ok_or(EnumerationError::ArithmeticOverflow)?;
                }
                let mut g = 0i64;
                for &c in allowed {
                    g = gcd(g, w[c]);
                }
                if g > 1 {
                    for &c in allowed {
                        w[c] /= g;
                    }
                }
                next.push(w);
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        if rays.is_empty() {
            break;
        }
    }

    // Scale to coprime (already done on combination; units are coprime).
    rays.sort();
    rays.dedup();
    Ok(rays)
}

fn to_vectors(
    sys: &MatchingSystem,
    raw: Vec<Vec<i64>>,
    kind: SolutionKind,
) -> SolutionSet {
    let mut basis: Vec<NormalVector> = raw
        .into_iter()
        .map(|v| {
            NormalVector::from_i64(sys.mode, sys.tet_count, &v)
                .expect("enumerated solutions are nonnegative of the right length")
        })
        .collect();
    basis.sort();
    basis.dedup();
    SolutionSet {
        kind,
        mode: sys.mode,
        basis,
        provenance: sys.provenance,
    }
}

/// In almost normal mode only vectors with exactly one octagon are
/// almost-normal-admissible; enumeration cells fix the octagon slot, so the
/// filter keeps members whose single octagon coordinate is one.
fn almost_filter(mode: NormalMode, raw: Vec<Vec<i64>>, per: usize) -> Vec<Vec<i64>> {
    match mode {
        NormalMode::Normal => raw,
        NormalMode::AlmostNormal => raw
            .into_iter()
            .filter(|v| {
                let total: i64 = v
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i % per >= 7)
                    .map(|(_, &x)| x)
                    .sum();
                total == 1
            })
            .collect(),
    }
}

/// All admissible extremal rays of the matching cone, deduplicated across
/// admissibility cells and scaled to coprime integers.
pub fn vertex_solutions(
    sys: &MatchingSystem,
    budget: &EnumerationBudget,
) -> Result<SolutionSet, EnumerationError> {
    let _ = budget;
    let rows = sys.rows_i64();
    let ncols = sys.cols();
    let per = sys.mode.coords_per_tet();
    let cell_list = cells(sys.tet_count, sys.mode);
    let results: Result<Vec<Vec<Vec<i64>>>, EnumerationError> = cell_list
        .par_iter()
        .map(|cell| extreme_rays_kernel(&rows, ncols, &cell.allowed))
        .collect();
    let mut merged: Vec<Vec<i64>> = results?.into_iter().flatten().collect();
    merged.sort();
    merged.dedup();
    let merged = almost_filter(sys.mode, merged, per);
    Ok(to_vectors(sys, merged, SolutionKind::VertexSolutions))
}

/// The fundamental solutions: union over admissibility cells of the cell's
/// Hilbert basis (minimal generating set of the cell's solution monoid),
/// deduplicated. In almost normal mode members are filtered to exactly one
/// octagon.
pub fn hilbert_basis(
    sys: &MatchingSystem,
    budget: &EnumerationBudget,
) -> Result<SolutionSet, EnumerationError> {
    let rows = sys.rows_i64();
    let ncols = sys.cols();
    let per = sys.mode.coords_per_tet();
    let cell_list = cells(sys.tet_count, sys.mode);
    let results: Result<Vec<Vec<Vec<i64>>>, EnumerationError> = cell_list
        .par_iter()
        .map(|cell| hilbert_basis_kernel(&rows, ncols, &cell.allowed, budget))
        .collect();
    let mut merged: Vec<Vec<i64>> = results?.into_iter().flatten().collect();
    merged.sort();
    merged.dedup();
    let merged = almost_filter(sys.mode, merged, per);
    Ok(to_vectors(sys, merged, SolutionKind::HilbertBasis))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereKind {
    Normal,
    OctagonalAlmostNormal,
}

/// Members (and, for the normal kind, connected components of members) of a
/// solution set that are 2-spheres.
pub fn find_spheres(
    t: &Triangulation,
    set: &SolutionSet,
    kind: SphereKind,
) -> Vec<NormalVector> {
    let mut out: Vec<NormalVector> = Vec::new();
    for v in &set.basis {
        match kind {
            SphereKind::Normal => {
                if is_normal_two_sphere(t, v).unwrap_or(false) {
                    out.push(v.clone());
                } else if let Ok(surface) = instantiate(t, v) {
                    for cv in surface.component_vectors() {
                        if is_normal_two_sphere(t, &cv).unwrap_or(false) {
                            out.push(cv);
                        }
                    }
                }
            }
            SphereKind::OctagonalAlmostNormal => {
                if v.octagon_total() != BigInt::from(1) {
                    continue;
                }
                if let Ok(surface) = instantiate(t, v) {
                    if surface.component_count() == 1
                        && !surface.component_has_boundary(0)
                        && surface.component_euler(t, 0) == 2
                    {
                        out.push(v.clone());
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::normal_coords::{matching_matrix, vertex_linking_vector, is_admissible};

    fn free_cell(ncols: usize) -> Vec<usize> {
        (0..ncols).collect()
    }

    #[test]
    fn single_equation_basis() {
        // {x1 - x2 = 0}: basis {(1,1)}.
        let rows = vec![vec![1, -1]];
        let b = hilbert_basis_kernel(&rows, 2, &free_cell(2), &EnumerationBudget::default())
            .unwrap();
        assert_eq!(b, vec![vec![1, 1]]);
        let r = extreme_rays_kernel(&rows, 2, &free_cell(2)).unwrap();
        assert_eq!(r, vec![vec![1, 1]]);
    }

    #[test]
    fn textbook_three_variable_basis() {
        // {x1 + x2 - 2 x3 = 0}: basis {(2,0,1),(0,2,1),(1,1,1)}, verified by
        // brute force in the acceptance suite.
        let rows = vec![vec![1, 1, -2]];
        let mut b = hilbert_basis_kernel(&rows, 3, &free_cell(3), &EnumerationBudget::default())
            .unwrap();
        b.sort();
        assert_eq!(b, vec![vec![0, 2, 1], vec![1, 1, 1], vec![2, 0, 1]]);
        // Extremal rays: only the two support-minimal solutions.
        let mut r = extreme_rays_kernel(&rows, 3, &free_cell(3)).unwrap();
        r.sort();
        assert_eq!(r, vec![vec![0, 2, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn unglued_tetrahedron_unit_vectors() {
        let t = crate::triangulation::build(1, &[]).unwrap();
        let sys = matching_matrix(&t, NormalMode::Normal);
        let vs = vertex_solutions(&sys, &EnumerationBudget::default()).unwrap();
        assert_eq!(vs.basis.len(), 7);
        for v in &vs.basis {
            assert!(is_admissible(v));
            let nonzero = v.coords().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
            assert_eq!(nonzero, 1);
        }
        let hb = hilbert_basis(&sys, &EnumerationBudget::default()).unwrap();
        assert_eq!(hb.basis.len(), 7);
    }

    #[test]
    fn boundary_4_simplex_contains_all_vertex_links() {
        let t = examples::boundary_of_4_simplex();
        let sys = matching_matrix(&t, NormalMode::Normal);
        let hb = hilbert_basis(&sys, &EnumerationBudget::default()).unwrap();
        let vs = vertex_solutions(&sys, &EnumerationBudget::default()).unwrap();
        for class in 0..5 {
            let link = vertex_linking_vector(&t, class, NormalMode::Normal);
            assert!(
                hb.basis.contains(&link),
                "link {class} missing from Hilbert basis"
            );
            assert!(
                vs.basis.contains(&link),
                "link {class} missing from vertex solutions"
            );
        }
        // Every member solves the equations exactly and is admissible.
        for v in hb.basis.iter().chain(vs.basis.iter()) {
            assert!(sys.in_kernel(v));
            assert!(is_admissible(v));
        }
        // Vertex solutions embed into the Hilbert basis (coprime scaling).
        for v in &vs.basis {
            assert!(hb.basis.contains(v), "ray not in Hilbert basis: {v:?}");
        }
    }

    #[test]
    fn sphere_search_finds_the_vertex_links() {
        let t = examples::boundary_of_4_simplex();
        let sys = matching_matrix(&t, NormalMode::Normal);
        let hb = hilbert_basis(&sys, &EnumerationBudget::default()).unwrap();
        let spheres = find_spheres(&t, &hb, SphereKind::Normal);
        for class in 0..5 {
            let link = vertex_linking_vector(&t, class, NormalMode::Normal);
            assert!(spheres.contains(&link));
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let t = examples::boundary_of_4_simplex();
        let sys = matching_matrix(&t, NormalMode::Normal);
        let tiny = EnumerationBudget {
            max_intermediate: 3,
        };
        match hilbert_basis(&sys, &tiny) {
            Err(EnumerationError::ResourceBudgetExceeded { limit: 3 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn empty_basis_gives_empty_sphere_list() {
        let t = examples::lens_3_1();
        let sys = matching_matrix(&t, NormalMode::Normal);
        let empty = SolutionSet {
            kind: SolutionKind::HilbertBasis,
            mode: NormalMode::Normal,
            basis: Vec::new(),
            provenance: sys.provenance,
        };
        assert!(find_spheres(&t, &empty, SphereKind::Normal).is_empty());
    }
}
