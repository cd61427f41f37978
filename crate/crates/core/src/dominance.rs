//! The strict-dominance relation on real vectors.

/// Relative position of two vectors under strict dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomRelation {
    /// `a` strictly dominates `b`.
    Dominates,
    /// `b` strictly dominates `a`.
    DominatedBy,
    /// Neither dominates (includes equal vectors).
    Incomparable,
}

/// Returns true iff `a_i <= b_i` for every coordinate and `a_i < b_i` for
/// at least one. Equal vectors never dominate each other.
///
/// Panics if the lengths differ; entries are assumed finite (enforced at
/// ingestion boundaries).
pub fn strictly_dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "dominance requires equal-length vectors");
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// Classifies a pair in a single pass; used by the sorting routines where
/// both directions are needed.
pub fn classify(a: &[f64], b: &[f64]) -> DomRelation {
    debug_assert_eq!(a.len(), b.len());
    let mut a_le = true;
    let mut b_le = true;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            a_le = false;
        } else if x < y {
            b_le = false;
        }
        if !a_le && !b_le {
            return DomRelation::Incomparable;
        }
    }
    match (a_le, b_le) {
        (true, false) => DomRelation::Dominates,
        (false, true) => DomRelation::DominatedBy,
        // (true, true) is the equal-vectors case.
        _ => DomRelation::Incomparable,
    }
}
