//! Every polynomial family: generalized Umemura polynomials by subset sum and
//! by determinant, the Toda-recurrence `T_n`, the closed form `U_n`,
//! parameterized and gauge-rescaled variants, and the closed-form right-hand
//! sides of the factorization and specialization identities.

mod cache;
mod closed;
mod generalized;
mod key;
mod ladder;
mod noou;
mod param;
mod toda;

pub use cache::{CacheStats, PolyCache, CACHE_ENV};
pub use closed::{closed_form, ClosedForm};
pub use generalized::{gen_umemura, gen_umemura_det, gen_umemura_det_with, gen_umemura_with, DetSign, Orientation};
pub use key::{BuildRoute, Family, FamilyKey, FamilyValue};
pub use ladder::{ladder_t, ladder_x, ladder_x_with, y_bar, z_bar, LadderIndexing, RationalFunction};
pub use noou::{noou_u, umemura_scale, umemura_u};
pub use param::{bridge_to_x, param_at, param_u, to_toda_vars};
pub use toda::{toda_t, toda_sequence};
