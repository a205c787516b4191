//! Constructive pieces of the value-distribution argument: genus-one
//! products and their growth bound, the difference-quotient operator Λ,
//! Cartan's exclusion disks, and almost-periodic recurrence certified by
//! Rouché's theorem.

pub mod almost_periodic;
pub mod cartan;
pub mod lambda;
pub mod weierstrass;

pub use almost_periodic::{
    confirm_by_counting, rouche_recurrence, translation_bound, translation_numbers, RecurrenceReport, RecurrenceRow,
    TranslationNumberSet, TranslationScan,
};
pub use cartan::{
    annulus_point_for, cartan_cover, select_annulus_point, verify_cover, AnnulusPoint, CoverCheck, DiskCover,
};
pub use lambda::{lambda_apply, lambda_iterate, tau_admissible, DEFAULT_TAU};
pub use weierstrass::{growth_bound_check, weierstrass_oracle, GrowthBound};
