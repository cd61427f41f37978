//! Non-dominated sorting: partition a point set in R^K into successive
//! Pareto fronts.
//!
//! Three interchangeable routines are provided:
//!
//! * [`nds_general`] — domination-count bookkeeping with explicit
//!   dominated-lists; O(K n^2) comparisons, O(n^2) worst-case memory.
//! * [`nds_peel`] — domination counts with on-the-fly re-scanning instead
//!   of stored lists; same comparison bound, O(n) memory. Preferred for
//!   large inputs where the dominated-lists become the bottleneck.
//! * [`nds_fast_2d`] — two-criteria sweep over a presorted list;
//!   O(n^(3/2)) time on average and O(n) memory.
//!
//! All three produce the identical front partition.

use std::io::Write;

use rayon::prelude::*;

use crate::dominance::{classify, strictly_dominates, DomRelation};
use crate::dyad::DyadSet;
use crate::error::{usage, Result};

/// Borrowed view of `n` points in R^dim, stored flat point-major. This is
/// the common currency of the sorting routines: dyad sets, raw sample
/// clouds, and test fixtures all lower to it.
#[derive(Debug, Clone, Copy)]
pub struct PointSet<'a> {
    values: &'a [f64],
    dim: usize,
}

impl<'a> PointSet<'a> {
    pub fn new(values: &'a [f64], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(usage("point dimension must be at least 1"));
        }
        if values.len() % dim != 0 {
            return Err(usage(format!(
                "value buffer length {} is not a multiple of dim {dim}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(usage("points must have finite coordinates"));
        }
        Ok(Self { values, dim })
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &'a [f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }
}

impl DyadSet {
    /// Views the dyad values as a bare point set.
    pub fn points(&self) -> PointSet<'_> {
        // DyadSet enforces finiteness at construction.
        PointSet { values: self.flat_values(), dim: self.criteria() }
    }
}

/// A complete partition into Pareto fronts, plus the per-point depth map.
/// Front indices are 1-based. For two criteria each front is stored
/// sorted ascending in criterion 1 (hence non-increasing in criterion 2).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FrontAssignment {
    depth_of: Vec<u32>,
    offsets: Vec<usize>,
    members: Vec<u32>,
}

impl FrontAssignment {
    fn from_front_lists(n: usize, fronts: Vec<Vec<u32>>) -> Self {
        let mut depth_of = vec![0u32; n];
        let mut offsets = Vec::with_capacity(fronts.len() + 1);
        let mut members = Vec::with_capacity(n);
        offsets.push(0);
        for (d, front) in fronts.iter().enumerate() {
            for &i in front {
                depth_of[i as usize] = (d + 1) as u32;
            }
            members.extend_from_slice(front);
            offsets.push(members.len());
        }
        debug_assert_eq!(members.len(), n);
        Self { depth_of, offsets, members }
    }

    /// Number of fronts M.
    pub fn num_fronts(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of points covered.
    pub fn len(&self) -> usize {
        self.depth_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth_of.is_empty()
    }

    /// Members of front `l` (1-based).
    pub fn front(&self, l: usize) -> &[u32] {
        &self.members[self.offsets[l - 1]..self.offsets[l]]
    }

    /// 1-based front index of point `idx`.
    pub fn depth_of(&self, idx: usize) -> u32 {
        self.depth_of[idx]
    }

    pub fn depth_map(&self) -> &[u32] {
        &self.depth_of
    }

    pub fn fronts(&self) -> impl Iterator<Item = &[u32]> {
        self.offsets.windows(2).map(|w| &self.members[w[0]..w[1]])
    }
}

/// Sorts points lexicographically by coordinates, breaking exact ties by
/// index; dominators always precede the points they dominate.
fn lex_order(points: PointSet) -> Vec<u32> {
    let mut order: Vec<u32> = (0..points.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let pa = points.point(a as usize);
        let pb = points.point(b as usize);
        pa.partial_cmp(pb).unwrap().then(a.cmp(&b))
    });
    order
}

fn sort_front_members(points: PointSet, front: &mut [u32]) {
    if points.dim() == 2 {
        front.sort_unstable_by(|&a, &b| {
            let pa = points.point(a as usize);
            let pb = points.point(b as usize);
            pa.partial_cmp(pb).unwrap().then(a.cmp(&b))
        });
    } else {
        front.sort_unstable();
    }
}

/// Non-dominated sort for any number of criteria, using domination counts
/// plus dominated-lists. Deterministic for any input.
pub fn nds_general(points: PointSet) -> Result<FrontAssignment> {
    if points.is_empty() {
        return Err(usage("non-dominated sort requires a nonempty point set"));
    }
    let n = points.len();
    let mut dominated: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut count = vec![0u32; n];
    for i in 0..n {
        let pi = points.point(i);
        for j in (i + 1)..n {
            match classify(pi, points.point(j)) {
                DomRelation::Dominates => {
                    dominated[i].push(j as u32);
                    count[j] += 1;
                }
                DomRelation::DominatedBy => {
                    dominated[j].push(i as u32);
                    count[i] += 1;
                }
                DomRelation::Incomparable => {}
            }
        }
    }

    let mut fronts: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = (0..n as u32).filter(|&i| count[i as usize] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated[p as usize] {
                count[q as usize] -= 1;
                if count[q as usize] == 0 {
                    next.push(q);
                }
            }
        }
        sort_front_members(points, &mut current);
        fronts.push(std::mem::replace(&mut current, next));
    }
    Ok(FrontAssignment::from_front_lists(n, fronts))
}

/// Non-dominated sort with O(n) working memory, for inputs where
/// [`nds_general`]'s dominated-lists would dominate the footprint.
/// Output is identical.
///
/// A point's front index is one plus the deepest front index among the
/// points dominating it. Sorting by coordinate sum puts every dominator
/// before the points it dominates (a dominator's sum is never larger), so
/// one triangular sweep in that order computes all depths. Pairs with
/// strictly increasing sums need only a branchless all-coordinates
/// comparison; sum ties (where rounding may hide a strict dominance, or
/// the points are equal) fall back to the full strict test and are
/// ordered lexicographically so dominators still come first.
pub fn nds_peel(points: PointSet) -> Result<FrontAssignment> {
    if points.is_empty() {
        return Err(usage("non-dominated sort requires a nonempty point set"));
    }
    let n = points.len();
    let k = points.dim();

    let sums: Vec<f64> = (0..n).map(|i| points.point(i).iter().sum()).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        sums[a as usize]
            .partial_cmp(&sums[b as usize])
            .unwrap()
            .then_with(|| {
                points
                    .point(a as usize)
                    .partial_cmp(points.point(b as usize))
                    .unwrap()
            })
            .then(a.cmp(&b))
    });

    // Flat copy in sweep order, for locality in the quadratic pass.
    let mut vals = Vec::with_capacity(n * k);
    for &i in &order {
        vals.extend_from_slice(points.point(i as usize));
    }
    let ssums: Vec<f64> = order.iter().map(|&i| sums[i as usize]).collect();
    let mut group_start = vec![0u32; n];
    for pos in 1..n {
        group_start[pos] =
            if ssums[pos] == ssums[pos - 1] { group_start[pos - 1] } else { pos as u32 };
    }

    // Blocked sweep: depths of everything before the block are final, so
    // the dominant cross-block scan parallelizes; the small within-block
    // triangle runs sequentially. `prefix_max[p]` (deepest depth in
    // positions 0..=p) lets a scan stop once no deeper dominator can
    // exist.
    const BLOCK: usize = 2048;
    let mut depth = vec![0u32; n];
    let mut prefix_max = vec![0u32; n];
    let mut start = 0usize;
    while start < n {
        let end = (start + BLOCK).min(n);
        let partial: Vec<u32> = (start..end)
            .into_par_iter()
            .map(|q| max_dominator_depth(&vals, &depth, &prefix_max, &group_start, k, q, 0, start))
            .collect();
        for q in start..end {
            let d = max_dominator_depth(&vals, &depth, &prefix_max, &group_start, k, q, start, q)
                .max(partial[q - start]);
            depth[q] = d + 1;
            prefix_max[q] = if q == 0 { d + 1 } else { prefix_max[q - 1].max(d + 1) };
        }
        start = end;
    }

    let mut fronts: Vec<Vec<u32>> =
        vec![Vec::new(); depth.iter().copied().max().unwrap_or(0) as usize];
    for (pos, &d) in depth.iter().enumerate() {
        fronts[d as usize - 1].push(order[pos]);
    }
    for front in &mut fronts {
        sort_front_members(points, front);
    }
    Ok(FrontAssignment::from_front_lists(n, fronts))
}

/// Deepest depth among points in sweep positions [lo, hi) that dominate
/// the point at position q.
fn max_dominator_depth(
    vals: &[f64],
    depth: &[u32],
    prefix_max: &[u32],
    group_start: &[u32],
    k: usize,
    q: usize,
    lo: usize,
    hi: usize,
) -> u32 {
    let qv = &vals[q * k..q * k + k];
    let cut = (group_start[q] as usize).clamp(lo, hi);
    let mut acc = 0u32;
    // Sum ties first (the region is tiny): the all-<= shortcut would
    // misread equal points as dominating, and rounding can collapse a
    // genuinely smaller sum onto q's, so test strictly.
    for p in cut..hi {
        if strictly_dominates(&vals[p * k..p * k + k], qv) {
            acc = acc.max(depth[p]);
        }
    }
    // Strictly-smaller-sum region, scanned nearest-first in chunks so the
    // prefix-depth bound can cut the scan short.
    let mut end = cut;
    while end > lo && prefix_max[end - 1] > acc {
        let begin = end.saturating_sub(512).max(lo);
        acc = match k {
            2 => max_depth_le::<2>(vals, depth, begin, end, qv, acc),
            3 => max_depth_le::<3>(vals, depth, begin, end, qv, acc),
            4 => max_depth_le::<4>(vals, depth, begin, end, qv, acc),
            _ => {
                let mut acc = acc;
                for p in begin..end {
                    if vals[p * k..p * k + k].iter().zip(qv).all(|(a, b)| a <= b) {
                        acc = acc.max(depth[p]);
                    }
                }
                acc
            }
        };
        end = begin;
    }
    acc
}

fn max_depth_le<const K: usize>(
    vals: &[f64],
    depth: &[u32],
    lo: usize,
    hi: usize,
    qv: &[f64],
    mut acc: u32,
) -> u32 {
    let block = &vals[lo * K..hi * K];
    for (off, pv) in block.chunks_exact(K).enumerate() {
        let mut le = true;
        for c in 0..K {
            le &= pv[c] <= qv[c];
        }
        if le {
            acc = acc.max(depth[lo + off]);
        }
    }
    acc
}

/// Fast non-dominated sort for exactly two criteria.
///
/// Points are presorted by (criterion 1, criterion 2) ascending. Each pass
/// sweeps the remaining points in order, collecting a point when its
/// second coordinate drops below the running minimum — or exactly equals
/// it with an identical first coordinate, so duplicates share a front
/// while dominated ties are deferred to a later front. Each sweep peels
/// one complete front.
pub fn nds_fast_2d(points: PointSet) -> Result<FrontAssignment> {
    if points.dim() != 2 {
        return Err(usage(format!(
            "two-criteria sort called with {} criteria",
            points.dim()
        )));
    }
    if points.is_empty() {
        return Err(usage("non-dominated sort requires a nonempty point set"));
    }
    let n = points.len();
    let mut remaining = lex_order(points);
    let mut fronts: Vec<Vec<u32>> = Vec::new();
    let mut deferred: Vec<u32> = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let mut front: Vec<u32> = Vec::new();
        deferred.clear();
        let mut last_x = f64::NEG_INFINITY;
        let mut last_y = f64::INFINITY;
        let mut first = true;
        for &i in &remaining {
            let p = points.point(i as usize);
            let (x, y) = (p[0], p[1]);
            if first || y < last_y || (y == last_y && x == last_x) {
                front.push(i);
                last_x = x;
                last_y = y;
                first = false;
            } else {
                deferred.push(i);
            }
        }
        std::mem::swap(&mut remaining, &mut deferred);
        fronts.push(front);
    }
    Ok(FrontAssignment::from_front_lists(n, fronts))
}

/// Indices of the maximal set of non-dominated points, ascending.
pub fn first_front(points: PointSet) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(usage("first front of an empty point set is undefined"));
    }
    let order = lex_order(points);
    let mut front: Vec<u32> = Vec::new();
    if points.dim() == 2 {
        let mut last_x = f64::NEG_INFINITY;
        let mut last_y = f64::INFINITY;
        let mut first = true;
        for &i in &order {
            let p = points.point(i as usize);
            if first || p[1] < last_y || (p[1] == last_y && p[0] == last_x) {
                front.push(i);
                last_x = p[0];
                last_y = p[1];
                first = false;
            }
        }
    } else {
        // In lex order a dominator precedes everything it dominates, and
        // transitivity lets us test against the running front only.
        for &i in &order {
            let p = points.point(i as usize);
            if !front
                .iter()
                .any(|&m| strictly_dominates(points.point(m as usize), p))
            {
                front.push(i);
            }
        }
    }
    let mut out: Vec<usize> = front.into_iter().map(|i| i as usize).collect();
    out.sort_unstable();
    Ok(out)
}

/// Dumps a front assignment next to its dyads as CSV with columns
/// `dyad_index,i,j,value_1..value_K,front`.
pub fn write_front_csv(
    mut w: impl Write,
    dyads: &DyadSet,
    fronts: &FrontAssignment,
) -> Result<()> {
    let k = dyads.criteria();
    write!(w, "dyad_index,i,j")?;
    for l in 1..=k {
        write!(w, ",value_{l}")?;
    }
    writeln!(w, ",front")?;
    for idx in 0..dyads.len() {
        let (i, j) = dyads.pair(idx);
        write!(w, "{idx},{i},{j}")?;
        for v in dyads.values(idx) {
            write!(w, ",{v}")?;
        }
        writeln!(w, ",{}", fronts.depth_of(idx))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(values: &[f64], dim: usize) -> PointSet<'_> {
        PointSet::new(values, dim).unwrap()
    }

    fn front_sets(fa: &FrontAssignment) -> Vec<Vec<u32>> {
        fa.fronts()
            .map(|f| {
                let mut v = f.to_vec();
                v.sort_unstable();
                v
            })
            .collect()
    }

    #[test]
    fn five_point_example() {
        // {(1,4),(2,2),(4,1),(3,3),(5,5)} -> F1={(1,4),(2,2),(4,1)},
        // F2={(3,3)}, F3={(5,5)} (hand peeling).
        let values = [1.0, 4.0, 2.0, 2.0, 4.0, 1.0, 3.0, 3.0, 5.0, 5.0];
        for fa in [
            nds_general(pts(&values, 2)).unwrap(),
            nds_fast_2d(pts(&values, 2)).unwrap(),
            nds_peel(pts(&values, 2)).unwrap(),
        ] {
            assert_eq!(front_sets(&fa), vec![vec![0, 1, 2], vec![3], vec![4]]);
        }
    }

    #[test]
    fn strictly_increasing_chain_gives_singletons() {
        let values = [1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        let fa = nds_general(pts(&values, 2)).unwrap();
        assert_eq!(fa.num_fronts(), 3);
        assert_eq!(fa.depth_map(), &[1, 2, 3]);
    }

    #[test]
    fn single_point() {
        let fa = nds_general(pts(&[7.0, 7.0, 7.0], 3)).unwrap();
        assert_eq!(fa.num_fronts(), 1);
        assert_eq!(fa.front(1), &[0]);
    }

    #[test]
    fn all_equal_points_share_first_front() {
        let values: Vec<f64> = std::iter::repeat([2.0, 3.0]).take(6).flatten().collect();
        let fa = nds_fast_2d(pts(&values, 2)).unwrap();
        assert_eq!(fa.num_fronts(), 1);
        assert_eq!(fa.front(1).len(), 6);
    }

    #[test]
    fn decreasing_staircase_is_one_front() {
        let values = [0.0, 5.0, 1.0, 4.0, 2.0, 3.0, 3.0, 2.0, 4.0, 1.0];
        let fa = nds_fast_2d(pts(&values, 2)).unwrap();
        assert_eq!(fa.num_fronts(), 1);
    }

    #[test]
    fn criterion_one_ties_do_not_share_a_front_when_dominated() {
        // (0,3) dominates (0,5); (0,3) also dominates (1,3).
        let values = [0.0, 5.0, 0.0, 3.0, 1.0, 3.0];
        let fa = nds_fast_2d(pts(&values, 2)).unwrap();
        assert_eq!(fa.depth_of(1), 1);
        assert_eq!(fa.depth_of(0), 2);
        assert_eq!(fa.depth_of(2), 2);
        let fa2 = nds_general(pts(&values, 2)).unwrap();
        assert_eq!(fa.depth_map(), fa2.depth_map());
    }

    #[test]
    fn fast_2d_rejects_other_dims() {
        assert!(nds_fast_2d(pts(&[1.0, 2.0, 3.0], 3)).is_err());
    }

    #[test]
    fn empty_input_is_usage_error() {
        assert!(nds_general(pts(&[], 2)).is_err());
        assert!(nds_fast_2d(pts(&[], 2)).is_err());
        assert!(nds_peel(pts(&[], 2)).is_err());
        assert!(first_front(pts(&[], 2)).is_err());
    }

    #[test]
    fn first_front_basic() {
        // {(0,1),(1,0),(1,1)} -> {(0,1),(1,0)}.
        let values = [0.0, 1.0, 1.0, 0.0, 1.0, 1.0];
        assert_eq!(first_front(pts(&values, 2)).unwrap(), vec![0, 1]);
        // Singleton.
        assert_eq!(first_front(pts(&[3.0, 1.0], 2)).unwrap(), vec![0]);
    }

    #[test]
    fn k2_fronts_are_staircase_ordered() {
        let values = [0.3, 0.7, 0.1, 0.9, 0.5, 0.5, 0.6, 0.6, 0.2, 0.8, 0.9, 0.1];
        for fa in [
            nds_fast_2d(pts(&values, 2)).unwrap(),
            nds_general(pts(&values, 2)).unwrap(),
            nds_peel(pts(&values, 2)).unwrap(),
        ] {
            for front in fa.fronts() {
                for w in front.windows(2) {
                    let a = &values[w[0] as usize * 2..w[0] as usize * 2 + 2];
                    let b = &values[w[1] as usize * 2..w[1] as usize * 2 + 2];
                    assert!(a[0] <= b[0]);
                    assert!(a[1] >= b[1]);
                }
            }
        }
    }

    #[test]
    fn front_csv_dump() {
        use crate::data::DissimMatrix;
        let m = DissimMatrix::from_fn(3, "c", |i, j| (i + j) as f64).unwrap();
        let dyads = DyadSet::build(&[m]).unwrap();
        let fa = nds_general(dyads.points()).unwrap();
        let mut buf = Vec::new();
        write_front_csv(&mut buf, &dyads, &fa).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "dyad_index,i,j,value_1,front");
        assert_eq!(lines.next().unwrap(), "0,0,1,1,1");
    }
}
