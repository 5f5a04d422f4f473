//! Generators, product maps, the direct factorization algorithms and
//! parameter recovery through twisted quasiminors.

pub mod generators;
pub mod maximal;
pub mod recover;
pub mod standard;

pub use generators::{
    commute_negative_positive, generator_matrix, h_gen, product_map, product_of_letters, sample_params, sample_torus, x_gen, x_neg, y_gen,
    Generator, GeneratorKind,
};
pub use standard::{
    solve_standard_unipotent, stage_entry, stage_entry_as_displayed, standard_unipotent_product,
    standard_unipotent_word, upper_factorize, upper_param, UpperFactorization,
};
pub use recover::{param_forms, recover_and_verify, recover_params, torus_part, FactorizationOutput};
pub use maximal::{
    factor_u_w0, factor_w0_v, verify_double_ratios, DoubleRatioReport, IdentityCheck, IdentityFamily,
    NegativeStandard, PositiveStandard, DOUBLE_RATIO_FAMILIES, TENTATIVE_FAMILIES,
};
