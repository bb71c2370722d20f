//! Rotation-built 2-balanced 1-factorisations of `Circ(3ℓa, {1, ℓ})` and
//! `Circ(3ℓa, {1, 2ℓ})` for even spans ℓ.
//!
//! One factor F1 is laid out explicitly inside windows of 3ℓ consecutive
//! vertices; F2 and F3 are its images under the rotation `v -> v + ℓ`, and F4
//! collects the odd 1-edges, which that rotation fixes setwise. The
//! equivariance forces the six pair unions into two type classes of three
//! pairs each, so the result is always 2-balanced with types
//! `[a(ℓ+4), 4^(a(ℓ/2-1))]` and `[6^(ℓa/2)]`.

use thiserror::Error;

use crate::graph::{CirculantGraph, CycleType, FactorisationError, OneFactorisation, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RotationVariant {
    /// Connection set `{1, ℓ}`; chords of F1 span one window third.
    Span,
    /// Connection set `{1, 2ℓ}`; chords of F1 span two window thirds.
    DoubleSpan,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RotationParams {
    pub ell: usize,
    pub a: usize,
    pub variant: RotationVariant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotationError {
    #[error("span {0} must be even and at least 2")]
    InvalidSpan(usize),
    #[error("window count must be positive")]
    ZeroWindows,
    #[error("order {order} too small: the host graph must have more than 6 vertices", order = 3 * ell * a)]
    OrderTooSmall { ell: usize, a: usize },
    #[error("double span needs at least two windows, got a={a}")]
    DoubleSpanNeedsTwoWindows { a: usize },
    #[error("connection distance {distance} reaches the diameter of the order-{order} graph")]
    DegenerateConnectionSet { distance: usize, order: usize },
    #[error(transparent)]
    Invalid(#[from] FactorisationError),
}

impl RotationParams {
    fn checked(self) -> Result<(usize, usize), RotationError> {
        let RotationParams { ell, a, variant } = self;
        if ell < 2 || ell % 2 != 0 {
            return Err(RotationError::InvalidSpan(ell));
        }
        if a == 0 {
            return Err(RotationError::ZeroWindows);
        }
        let order = 3 * ell * a;
        match variant {
            RotationVariant::Span => {
                if ell * a <= 2 {
                    return Err(RotationError::OrderTooSmall { ell, a });
                }
            }
            RotationVariant::DoubleSpan => {
                if a < 2 {
                    return Err(RotationError::DoubleSpanNeedsTwoWindows { a });
                }
                // unreachable for integer a >= 2; kept as an explicit guard
                if 2 * ell >= order / 2 {
                    return Err(RotationError::DegenerateConnectionSet {
                        distance: 2 * ell,
                        order,
                    });
                }
            }
        }
        let chord = match variant {
            RotationVariant::Span => ell,
            RotationVariant::DoubleSpan => 2 * ell,
        };
        Ok((order, chord))
    }
}

/// Builds the rotation factorisation for `p`, returning the host graph with
/// connection set `{1, ℓ}` (Span) or `{1, 2ℓ}` (DoubleSpan).
pub fn construct_general(
    p: RotationParams,
) -> Result<(CirculantGraph, OneFactorisation), RotationError> {
    let (order, chord) = p.checked()?;
    let ell = p.ell;
    let window = 3 * ell;
    let m = |x: usize| x % order;

    let mut f1: Vec<(Vertex, Vertex)> = Vec::with_capacity(order / 2);
    for x in 0..order {
        let w = x % window;
        match p.variant {
            RotationVariant::Span => {
                if w < ell {
                    f1.push((x, m(x + chord)));
                } else if w >= 2 * ell && x % 2 == 0 {
                    f1.push((x, m(x + 1)));
                }
            }
            RotationVariant::DoubleSpan => {
                if w < ell {
                    f1.push((x, m(x + chord)));
                } else if (ell..2 * ell - 1).contains(&w) && x % 2 == 0 {
                    f1.push((x, m(x + 1)));
                }
            }
        }
    }
    let rot = |edges: &[(Vertex, Vertex)]| -> Vec<(Vertex, Vertex)> {
        edges
            .iter()
            .map(|&(u, v)| (m(u + ell), m(v + ell)))
            .collect()
    };
    let f2 = rot(&f1);
    let f3 = rot(&f2);
    let f4: Vec<(Vertex, Vertex)> = (1..order).step_by(2).map(|x| (x, m(x + 1))).collect();

    let graph = CirculantGraph::new(order, &[1, chord])
        .expect("order is even and both distances are below the diameter");
    let of = OneFactorisation::from_edge_lists(order, &[f1, f2, f3, f4])?;
    of.validate(&graph)?;
    Ok((graph, of))
}

/// The two cycle types every rotation factorisation realises:
/// `[a(ℓ+4), 4^(a(ℓ/2-1))]` for pairs inside {F1,F2,F3} joined with F4, and
/// `[6^(ℓa/2)]` for pairs among {F1,F2,F3}.
pub fn expected_types_rotation(p: RotationParams) -> Result<(CycleType, CycleType), RotationError> {
    p.checked()?;
    let (ell, a) = (p.ell, p.a);
    let mut chordal = vec![a * (ell + 4)];
    chordal.extend(std::iter::repeat_n(4, a * (ell / 2 - 1)));
    let sixes = vec![6; ell * a / 2];
    Ok((CycleType::new(chordal), CycleType::new(sixes)))
}
