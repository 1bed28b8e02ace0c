//! The algebra generated by the modes of `L±(z)` with the RLL relations,
//! normal-ordered by insertion rewriting.

pub mod elem;
pub mod engine;
pub mod gen;
pub mod lmat;
pub mod mixed;
pub mod rules;
pub mod series;

pub use engine::{Budget, Engine};
pub use elem::{fmt_word, minus_degree, plus_depth, word_degree, word_weight, AlgElem, Word};
pub use gen::{Gen, OrderingKind, Sign};
pub use series::ZSeries;
pub use lmat::{constant, inversions, permutations, ASeries, LCalc, SeriesMat, SeriesOp, TruncPolicy};
