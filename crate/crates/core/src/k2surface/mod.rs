//! Symbols on the plane: valuations along prime divisors of P^2, tame symbols,
//! the boundary ∂{a, b} with its Gersten cancellation, the local boundary tables of
//! two test families, and the two-term symbol μ_{π,f}.

mod boundary;
mod branch;
mod claims;
mod curve;
mod cycle;
mod mu;

pub use boundary::{boundary, gersten_check, gersten_cycle, FormalIdeleElem, IdeleTerm, LocalUnit, BOUNDARY_PREC};
pub use branch::{parametrize, Jet};
pub use claims::{claim1_table, claim2_table, ClaimReport, ClaimRow, RowJson};
pub use curve::{divisor_of, ord_along, tame_symbol, unit_part, CurveFunction, PrimeDivisor, P2, R2};
pub use cycle::{intersection_cycle, intersection_multiplicity, ClosedPoint, Pt, ZeroCycle};
pub use mu::{mu_symbol, mu_transformation_check, nu_shape_check, MuSymbol, MuTransformReport};

#[cfg(test)]
mod tests;
