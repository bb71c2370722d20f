//! Balanced 1-factorisations of 3- and 4-regular circulant graphs.
//!
//! A 1-factorisation partitions the edges of a graph into perfect matchings.
//! The union of any two matchings is a disjoint set of even cycles, and the
//! descending list of their lengths is the pair's type. A factorisation is
//! m-balanced when exactly m distinct types occur, each on the same number
//! of factor pairs.
//!
//! The crate provides:
//! - the graph model, factorisation validation, pair-union cycle types and
//!   connection-set isomorphism ([`graph`]);
//! - balance classification ([`balance`]);
//! - explicit constructions for the two connected cubic circulants
//!   ([`cubic`]), for `Circ(2n,{1,2})` ([`onetwo`]), for `Circ(2n,{1,3})`
//!   with the 4-vertex extension engine ([`onethree`]), and the rotation
//!   family on `Circ(3ℓa,{1,ℓ})` / `Circ(3ℓa,{1,2ℓ})` ([`rotation`]);
//! - exhaustive search over all 1-factorisations of small circulants with
//!   existence queries and table generation ([`search`]);
//! - a canonical JSON document format ([`doc`]).
//!
//! # Example
//!
//! ```
//! use b1f::balance::classify_balance;
//! use b1f::onethree::construct_13;
//!
//! let (graph, factorisation) = construct_13(6, 11)?;
//! assert_eq!(graph.order(), 22);
//!
//! let report = classify_balance(&factorisation)?;
//! assert_eq!(report.balance(), Some(6));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod balance;
pub mod cubic;
pub mod doc;
pub mod graph;
pub mod onethree;
pub mod onetwo;
pub mod rotation;
pub mod search;
