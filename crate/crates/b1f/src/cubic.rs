//! 3-balanced 1-factorisations of the cubic circulants `Circ(2n, {1, n})`
//! and `Circ(2n, {2, n})`.
//!
//! Both families are built from explicit edge schemas split on the residue
//! of `n`. A cubic factorisation has three factor pairs, so the only
//! balanced options are 1 and 3 types; these constructions realise three.

use thiserror::Error;

use crate::graph::{CirculantGraph, CycleType, OneFactorisation, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicError {
    #[error("no 3-balanced 1-factorisation of Circ({order},{{1,{n}}}): order too small", order = 2 * n)]
    Infeasible { n: usize },
    #[error("Circ(14,{{1,7}}) and Circ(14,{{2,7}}) have no 3-balanced 1-factorisation (proven nonexistent by exhaustive search)")]
    ProvenNonexistent { n: usize },
    #[error("Circ({order},{{2,{n}}}) is disconnected for even n", order = 2 * n)]
    DisconnectedParameter { n: usize },
}

/// Which cubic family a construction or type formula refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubicFamily {
    /// `Circ(2n, {1, n})`
    OneN,
    /// `Circ(2n, {2, n})`
    TwoN,
}

fn pairs(order: usize, it: impl IntoIterator<Item = (usize, usize)>) -> Vec<(Vertex, Vertex)> {
    it.into_iter()
        .map(|(a, b)| (a % order, b % order))
        .collect()
}

/// Builds a 3-balanced 1-factorisation of `Circ(2n, {1, n})`.
///
/// Supported for even `n >= 6` and odd `n >= 9`; the graph for `n = 7` has
/// none at all, and `n <= 5` is too small for three distinct pair types.
pub fn construct_one_n(n: usize) -> Result<(CirculantGraph, OneFactorisation), CubicError> {
    if n == 7 {
        return Err(CubicError::ProvenNonexistent { n });
    }
    if n < 6 || n == 7 {
        return Err(CubicError::Infeasible { n });
    }
    let order = 2 * n;
    let lists = if n.is_multiple_of(2) {
        // even n: perimeter split with two diameter stitches
        let f1 = pairs(order, (0..order - 1).step_by(2).map(|x| (x, x + 1)));
        let f2 = pairs(
            order,
            (1..order - 2)
                .step_by(2)
                .filter(|&x| x != n - 1)
                .map(|x| (x, x + 1))
                .chain([(0, n), (n - 1, order - 1)]),
        );
        let f3 = pairs(
            order,
            [(n - 1, n), (order - 1, 0)]
                .into_iter()
                .chain((1..n - 1).map(|x| (x, x + n))),
        );
        vec![f1, f2, f3]
    } else {
        // odd n: the diameter edges concentrate in the third factor
        let fa = pairs(
            order,
            (0..n - 2)
                .step_by(2)
                .map(|x| (x, x + 1))
                .chain((n..order - 2).filter(|x| x % 2 == 1).map(|x| (x, x + 1)))
                .chain([(n - 1, order - 1)]),
        );
        let fb = pairs(
            order,
            (1..n - 1)
                .step_by(2)
                .filter(|&x| x != n - 4)
                .map(|x| (x, x + 1))
                .chain(
                    (n + 1..order - 1)
                        .filter(|&x| x % 2 == 0 && x != order - 4)
                        .map(|x| (x, x + 1)),
                )
                .chain([(0, n), (n - 4, order - 4), (n - 3, order - 3)]),
        );
        let fc = pairs(
            order,
            [
                (n - 4, n - 3),
                (n - 1, n),
                (order - 4, order - 3),
                (order - 1, 0),
            ]
            .into_iter()
            .chain(
                (1..n - 1)
                    .filter(|&x| x != n - 4 && x != n - 3)
                    .map(|x| (x, x + n)),
            ),
        );
        vec![fa, fb, fc]
    };
    let graph = CirculantGraph::new(order, &[1, n]).expect("parameters already checked");
    let of = OneFactorisation::from_edge_lists(order, &lists).expect("schema yields matchings");
    Ok((graph, of))
}

/// Builds a 3-balanced 1-factorisation of `Circ(2n, {2, n})`.
///
/// The graph is connected only for odd `n`; supported for odd `n >= 9`
/// (`n = 7` has none, smaller odd `n` is infeasible).
pub fn construct_two_n(n: usize) -> Result<(CirculantGraph, OneFactorisation), CubicError> {
    if n.is_multiple_of(2) {
        return Err(CubicError::DisconnectedParameter { n });
    }
    if n == 7 {
        return Err(CubicError::ProvenNonexistent { n });
    }
    if n < 9 {
        return Err(CubicError::Infeasible { n });
    }
    let order = 2 * n;
    let lists = if n % 4 == 1 {
        let f1 = pairs(
            order,
            (0..n - 3)
                .filter(|&x| x % 4 <= 1)
                .map(|x| (x, x + 2))
                .chain(
                    (n..order - 3)
                        .filter(|&x| x % 4 == 1 || x % 4 == 2)
                        .map(|x| (x, x + 2)),
                )
                .chain([(n - 1, order - 1)]),
        );
        let f2 = pairs(
            order,
            [n - 7, n - 3, order - 7, order - 3]
                .into_iter()
                .map(|x| (x, x + 2))
                .chain((0..n - 7).map(|x| (x, x + n)))
                .chain([n - 6, n - 4, n - 2].into_iter().map(|x| (x, x + n))),
        );
        let f3 = pairs(
            order,
            (0..n.saturating_sub(9))
                .filter(|&x| x % 4 == 2 || x % 4 == 3)
                .map(|x| (x, x + 2))
                .chain(
                    (n..order.saturating_sub(9))
                        .filter(|&x| x % 4 == 0 || x % 4 == 3)
                        .map(|x| (x, x + 2)),
                )
                .chain(
                    [n - 6, n - 2, n - 1, order - 6, order - 2, order - 1]
                        .into_iter()
                        .map(|x| (x, x + 2)),
                )
                .chain([n - 7, n - 5, n - 3].into_iter().map(|x| (x, x + n))),
        );
        vec![f1, f2, f3]
    } else {
        // n ≡ 3 (mod 4)
        let fa = pairs(
            order,
            (0..n - 5)
                .filter(|&x| x % 4 <= 1)
                .map(|x| (x, x + 2))
                .chain(
                    (n..order - 5)
                        .filter(|&x| x % 4 == 0 || x % 4 == 3)
                        .map(|x| (x, x + 2)),
                )
                .chain([n - 3, order - 3].into_iter().map(|x| (x, x + 2)))
                .chain([(n - 2, order - 2)]),
        );
        let fb = pairs(
            order,
            [n - 8, n - 4, order - 8, order - 4]
                .into_iter()
                .map(|x| (x, x + 2))
                .chain((0..n - 8).map(|x| (x, x + n)))
                .chain([n - 7, n - 5, n - 3, n - 1].into_iter().map(|x| (x, x + n))),
        );
        let fc = pairs(
            order,
            (0..n.saturating_sub(11))
                .filter(|&x| x % 4 == 2 || x % 4 == 3)
                .map(|x| (x, x + 2))
                .chain(
                    (n..order.saturating_sub(11))
                        .filter(|&x| x % 4 == 1 || x % 4 == 2)
                        .map(|x| (x, x + 2)),
                )
                .chain(
                    [
                        n - 9,
                        n - 5,
                        n - 2,
                        n - 1,
                        order - 9,
                        order - 5,
                        order - 2,
                        order - 1,
                    ]
                    .into_iter()
                    .map(|x| (x, x + 2)),
                )
                .chain([n - 8, n - 6, n - 4].into_iter().map(|x| (x, x + n))),
        );
        vec![fa, fb, fc]
    };
    let graph = CirculantGraph::new(order, &[2, n]).expect("parameters already checked");
    let of = OneFactorisation::from_edge_lists(order, &lists).expect("schema yields matchings");
    Ok((graph, of))
}

/// Closed-form pair-type triple each cubic construction realises, descending.
pub fn expected_types_cubic(family: CubicFamily, n: usize) -> Result<Vec<CycleType>, CubicError> {
    let order = 2 * n;
    let mut types = match family {
        CubicFamily::OneN if n.is_multiple_of(2) && n >= 6 => vec![
            CycleType::new(vec![order]),
            CycleType::new(vec![4; order / 4]),
            CycleType::new([vec![8], vec![4; (order - 8) / 4]].concat()),
        ],
        CubicFamily::OneN if n % 2 == 1 && n >= 9 => vec![
            CycleType::new(vec![order - 6, 6]),
            CycleType::new([vec![6], vec![4; (order - 6) / 4]].concat()),
            CycleType::new([vec![8, 6], vec![4; (order - 14) / 4]].concat()),
        ],
        CubicFamily::TwoN if n % 2 == 1 && n >= 9 => vec![
            CycleType::new([vec![10], vec![4; (order - 10) / 4]].concat()),
            CycleType::new(vec![order - 4, 4]),
            CycleType::new([vec![6], vec![4; (order - 6) / 4]].concat()),
        ],
        CubicFamily::OneN if n == 7 => return Err(CubicError::ProvenNonexistent { n }),
        CubicFamily::OneN => return Err(CubicError::Infeasible { n }),
        CubicFamily::TwoN if n.is_multiple_of(2) => {
            return Err(CubicError::DisconnectedParameter { n })
        }
        CubicFamily::TwoN if n == 7 => return Err(CubicError::ProvenNonexistent { n }),
        CubicFamily::TwoN => return Err(CubicError::Infeasible { n }),
    };
    types.sort_by(|a, b| b.cmp(a));
    Ok(types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{classify_balance, BalanceVerdict};

    #[test]
    fn smallest_even_case_validates() {
        let (g, of) = construct_one_n(6).unwrap();
        of.validate(&g).unwrap();
        let report = classify_balance(&of).unwrap();
        assert_eq!(report.verdict, BalanceVerdict::MBalanced(3));
    }

    #[test]
    fn smallest_odd_case_validates() {
        let (g, of) = construct_one_n(9).unwrap();
        of.validate(&g).unwrap();
        assert_eq!(classify_balance(&of).unwrap().balance(), Some(3));
    }

    #[test]
    fn two_n_both_residues_validate() {
        for n in [9, 11] {
            let (g, of) = construct_two_n(n).unwrap();
            of.validate(&g).unwrap();
            assert_eq!(classify_balance(&of).unwrap().balance(), Some(3));
        }
    }

    #[test]
    fn rejections() {
        assert_eq!(
            construct_one_n(7).unwrap_err(),
            CubicError::ProvenNonexistent { n: 7 }
        );
        assert_eq!(
            construct_one_n(5).unwrap_err(),
            CubicError::Infeasible { n: 5 }
        );
        assert_eq!(
            construct_one_n(4).unwrap_err(),
            CubicError::Infeasible { n: 4 }
        );
        assert_eq!(
            construct_two_n(10).unwrap_err(),
            CubicError::DisconnectedParameter { n: 10 }
        );
        assert_eq!(
            construct_two_n(7).unwrap_err(),
            CubicError::ProvenNonexistent { n: 7 }
        );
        assert_eq!(
            construct_two_n(5).unwrap_err(),
            CubicError::Infeasible { n: 5 }
        );
    }

    #[test]
    fn printed_types_match_recomputation_at_small_orders() {
        for n in [6, 8, 9, 10, 11, 12] {
            let Ok((_, of)) = construct_one_n(n) else {
                continue;
            };
            let mut got: Vec<_> = crate::balance::pair_profile(&of)
                .unwrap()
                .into_iter()
                .map(|(t, _)| t)
                .collect();
            got.sort_by(|a, b| b.cmp(a));
            let family = CubicFamily::OneN;
            assert_eq!(got, expected_types_cubic(family, n).unwrap(), "n={n}");
        }
    }
}
