//! Abelianized polygonal groups.
//!
//! The group presented by t₁⋯t_r = 1 = tᵢ^{mᵢ} abelianizes to
//! Zʳ / ⟨(1,…,1), m₁e₁, …, m_re_r⟩; the invariant factors come from the Smith
//! normal form of the (r+1) × r relation matrix. These matrices are at most
//! 9 × 8, so exact i64 arithmetic with pivoting on the smallest nonzero entry
//! is both overflow-safe and deterministic. The factors are the pruning
//! invariant of the group searches: a finite group with a spherical system of
//! type A is a quotient of the polygonal group of A, so its abelianization
//! must be a quotient of the one computed here.

use crate::tuples::TupleType;

/// Pivot scan order for [`smith_invariant_factors`]. Both rules pivot on an
/// entry of smallest nonzero magnitude (which is what makes the elimination
/// terminate: remainders are strictly smaller and get promoted to pivots);
/// they differ in scan direction and in whether rows or columns are cleared
/// first, giving a genuinely different elimination path for cross-checking.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PivotRule {
    SmallestForward,
    SmallestReverse,
}

/// Invariant factors (diagonal of the Smith normal form, 1s dropped) of an
/// integer matrix, in divisibility order d₁ | d₂ | ….
pub fn smith_invariant_factors(mat: &[Vec<i64>], rule: PivotRule) -> Vec<u64> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<i64>> = mat.to_vec();
    let mut diag: Vec<i64> = Vec::new();
    let mut top = 0usize;

    while top < rows.min(cols) {
        // smallest-magnitude nonzero entry of a[top..][top..]
        let mut best: Option<(i64, usize, usize)> = None;
        let scan: Vec<(usize, usize)> = match rule {
            PivotRule::SmallestForward => (top..rows)
                .flat_map(|i| (top..cols).map(move |j| (i, j)))
                .collect(),
            PivotRule::SmallestReverse => (top..rows)
                .rev()
                .flat_map(|i| (top..cols).rev().map(move |j| (i, j)))
                .collect(),
        };
        for (i, j) in scan {
            let v = a[i][j].abs();
            if v != 0 && best.map_or(true, |(bv, _, _)| v < bv) {
                best = Some((v, i, j));
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }

        // clear the pivot row and column; leftover remainders are strictly
        // smaller than the pivot and win the next pivot scan
        let mut clean = true;
        let mut clear_rows = |a: &mut Vec<Vec<i64>>, clean: &mut bool| {
            for i in top + 1..rows {
                let q = a[i][top] / a[top][top];
                if q != 0 {
                    for j in top..cols {
                        a[i][j] -= q * a[top][j];
                    }
                }
                if a[i][top] != 0 {
                    *clean = false;
                }
            }
        };
        let mut clear_cols = |a: &mut Vec<Vec<i64>>, clean: &mut bool| {
            for j in top + 1..cols {
                let q = a[top][j] / a[top][top];
                if q != 0 {
                    for i in top..rows {
                        a[i][j] -= q * a[i][top];
                    }
                }
                if a[top][j] != 0 {
                    *clean = false;
                }
            }
        };
        match rule {
            PivotRule::SmallestForward => {
                clear_rows(&mut a, &mut clean);
                clear_cols(&mut a, &mut clean);
            }
            PivotRule::SmallestReverse => {
                clear_cols(&mut a, &mut clean);
                clear_rows(&mut a, &mut clean);
            }
        }
        if !clean {
            continue; // remainders became new, smaller pivot candidates
        }

        // pivot must divide every remaining entry for the divisibility chain
        let mut fixed = false;
        'scan: for i in top + 1..rows {
            for j in top + 1..cols {
                if a[i][j] % a[top][top] != 0 {
                    // fold the offending row in and restart this pivot
                    for jj in top..cols {
                        a[top][jj] += a[i][jj];
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(a[top][top].abs());
        top += 1;
    }

    diag.into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect()
}

/// Relation matrix of the abelianized polygonal presentation.
fn relation_matrix(orders: &[u16]) -> Vec<Vec<i64>> {
    let r = orders.len();
    let mut mat = vec![vec![1i64; r]];
    for (i, &m) in orders.iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = i64::from(m);
        mat.push(row);
    }
    mat
}

/// Invariant factors of the abelianized polygonal group of the given type.
pub fn polygonal_abelianization(ty: &TupleType) -> Vec<u64> {
    smith_invariant_factors(&relation_matrix(ty.entries()), PivotRule::SmallestForward)
}

/// Same computation under the alternative pivot ordering; used as the
/// independent cross-check.
pub fn polygonal_abelianization_alt(ty: &TupleType) -> Vec<u64> {
    smith_invariant_factors(&relation_matrix(ty.entries()), PivotRule::SmallestReverse)
}

/// Is `candidate` (an invariant-factor chain) a quotient of `ambient`?
/// Aligning both chains at the largest factor, each candidate factor must
/// divide its counterpart.
pub fn is_quotient_chain(candidate: &[u64], ambient: &[u64]) -> bool {
    if candidate.len() > ambient.len() {
        return false;
    }
    let offset = ambient.len() - candidate.len();
    candidate
        .iter()
        .zip(&ambient[offset..])
        .all(|(&c, &a)| a % c == 0)
}

/// The necessary-condition filter for "G is a quotient of the polygonal group
/// of type p": G's abelianization must be a quotient of the polygonal one.
pub fn quotient_admissible(g: &crate::group::GroupTable, p: &TupleType) -> bool {
    is_quotient_chain(&g.abelianization(), &polygonal_abelianization(p))
}

/// Formats an invariant-factor chain as `Z2xZ4`; the trivial group is `1`.
pub fn format_factors(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(entries: &[u16]) -> Vec<u64> {
        polygonal_abelianization(&TupleType::new(entries.to_vec()).unwrap())
    }

    #[test]
    fn triangle_group_abelianizations() {
        assert_eq!(ab(&[2, 3, 8]), vec![2]);
        assert_eq!(ab(&[2, 5, 5]), vec![5]);
        assert_eq!(ab(&[4, 4, 4]), vec![4, 4]);
        assert_eq!(ab(&[2, 4, 8]), vec![2, 4]);
        assert_eq!(ab(&[3, 3, 4]), vec![3]);
        assert_eq!(ab(&[2, 4, 5]), vec![2]);
        assert_eq!(ab(&[2, 3, 9]), vec![3]);
    }

    #[test]
    fn longer_presentations() {
        assert_eq!(ab(&[2, 2, 2, 3]), vec![2, 2]);
        assert_eq!(ab(&[5, 5, 5]), vec![5, 5]);
        assert_eq!(ab(&[2, 2, 2, 2, 2]), vec![2, 2, 2, 2]);
    }

    #[test]
    fn two_elimination_orderings_agree() {
        for entries in [
            vec![2u16, 3, 8],
            vec![2, 5, 5],
            vec![4, 4, 4],
            vec![2, 2, 2, 4],
            vec![2, 2, 2, 2, 2, 2],
            vec![3, 3, 3, 3],
            vec![2, 3, 30],
        ] {
            let ty = TupleType::new(entries).unwrap();
            assert_eq!(
                polygonal_abelianization(&ty),
                polygonal_abelianization_alt(&ty)
            );
        }
    }

    #[test]
    fn quotient_chain_rules() {
        assert!(is_quotient_chain(&[], &[2, 4]));
        assert!(is_quotient_chain(&[2, 2], &[2, 4]));
        assert!(!is_quotient_chain(&[4, 4], &[2, 4]));
        assert!(!is_quotient_chain(&[3], &[2, 4]));
        assert!(is_quotient_chain(&[5, 5], &[5, 5]));
    }

    #[test]
    fn group_admissibility_filter() {
        use crate::group::{cyclic, direct_product, DEFAULT_ORDER_BOUND};
        let z5 = cyclic(5, DEFAULT_ORDER_BOUND).unwrap();
        let z5sq = direct_product(&z5, &z5, DEFAULT_ORDER_BOUND).unwrap();
        let t555 = TupleType::new(vec![5, 5, 5]).unwrap();
        assert!(quotient_admissible(&z5sq, &t555));

        let z3 = cyclic(3, DEFAULT_ORDER_BOUND).unwrap();
        let t248 = TupleType::new(vec![2, 4, 8]).unwrap();
        assert!(!quotient_admissible(&z3, &t248));

        let triv = cyclic(1, DEFAULT_ORDER_BOUND).unwrap();
        assert!(quotient_admissible(&triv, &t248));
    }

    #[test]
    fn format_chain() {
        assert_eq!(format_factors(&[2]), "Z2");
        assert_eq!(format_factors(&[2, 4]), "Z2xZ4");
        assert_eq!(format_factors(&[]), "1");
    }
}
