//! Published SLEM reference values for the two petal families, five
//! decimals each: (n, m, k, slem).

pub const SINGLE_HUB_TABLE: [(usize, usize, usize, f64); 14] = [
    (2, 2, 1, 0.80901),
    (2, 2, 2, 0.80473),
    (2, 2, 3, 0.82569),
    (2, 3, 1, 0.90096),
    (2, 3, 2, 0.89987),
    (2, 3, 3, 0.91143),
    (2, 3, 4, 0.92278),
    (3, 2, 1, 0.83851),
    (3, 2, 2, 0.84824),
    (3, 2, 3, 0.87040),
    (3, 3, 1, 0.91294),
    (3, 3, 2, 0.91935),
    (3, 3, 3, 0.93210),
    (4, 3, 5, 0.96107),
];

pub const COMPLETE_CORE_TABLE: [(usize, usize, usize, f64); 14] = [
    (2, 2, 1, 0.86602),
    (2, 2, 2, 0.88191),
    (2, 2, 3, 0.90138),
    (2, 3, 1, 0.92387),
    (2, 3, 2, 0.93417),
    (2, 3, 3, 0.94619),
    (2, 3, 4, 0.95514),
    (3, 2, 1, 0.86602),
    (3, 2, 2, 0.88191),
    (3, 2, 3, 0.90138),
    (3, 3, 1, 0.92387),
    (3, 3, 2, 0.93417),
    (3, 3, 3, 0.94619),
    (4, 3, 5, 0.96172),
];

/// Tolerance for reproducing the five-decimal published values.
pub const TABLE_TOL: f64 = 5e-5;
