//! Catalan numbers, Dyck words, attack-cycle words and random-walk descents.

pub mod catalan;
pub mod cycle;
pub mod dyck;
pub mod walk;

pub use catalan::{catalan, catalan_partial_sum, catalan_series, Horizon, Truncated};
pub use cycle::{
    attacker_win_cdf, attacker_win_total, attacker_won_within, cycle_length_pmf,
    cycle_length_total, expected_cycle_length, pi_k, validate_cycle_word, CycleCheck, CycleShape,
    CycleWord, Letter,
};
pub use dyck::{
    dyck_bounded_mass, dyck_first_h_bounded_mass, dyck_trailing_h_prob, dyck_word_measure,
    is_dyck_word,
};
pub use walk::{rw_expected_descents, rw_expected_weighted_descents};
