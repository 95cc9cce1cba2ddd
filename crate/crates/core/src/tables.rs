//! Published reference values used by `validate` and the acceptance suite.

/// `(n, ell, d, parts, S)` for every parameter list with `1 <= n <= 6`.
pub const S_TABLE: &[(usize, usize, usize, &[usize], u64)] = &[
    (1, 0, 1, &[], 1),
    (2, 0, 2, &[], 1),
    (2, 1, 0, &[0], 1),
    (3, 0, 3, &[], 1),
    (3, 1, 0, &[1], 1),
    (3, 1, 1, &[0], 3),
    (4, 0, 4, &[], 1),
    (4, 1, 0, &[2], 1),
    (4, 1, 1, &[1], 2),
    (4, 1, 2, &[0], 4),
    (4, 2, 0, &[0, 0], 3),
    (5, 0, 5, &[], 1),
    (5, 1, 0, &[3], 1),
    (5, 1, 1, &[2], 5),
    (5, 1, 2, &[1], 5),
    (5, 1, 3, &[0], 5),
    (5, 2, 0, &[0, 1], 6),
    (5, 2, 1, &[0, 0], 10),
    (6, 0, 6, &[], 1),
    (6, 1, 0, &[4], 1),
    (6, 1, 1, &[3], 4),
    (6, 1, 2, &[2], 11),
    (6, 1, 3, &[1], 9),
    (6, 1, 4, &[0], 6),
    (6, 2, 0, &[0, 2], 10),
    (6, 2, 0, &[1, 1], 5),
    (6, 2, 1, &[0, 1], 15),
    (6, 2, 2, &[0, 0], 15),
    (6, 3, 0, &[0, 0, 0], 10),
];

/// `q^(n)(0)` of `q = 1 - 2 sech^2 x` for even `n = 0, 2, .., 20`.
pub const SECH_POTENTIAL_DERIVATIVES: [i64; 11] =
    [-1, 4, -32, 544, -15872, 707584, -44736512, 3807514624, -419730685952, 58177770225664, -9902996106248192];

/// Odd `n = 1, 3, .., 21`.
pub const DERIVATIVE_ORDERS: [usize; 11] = [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21];

/// `2^{n+1} d_t^n K_cosh(0, 0)` at [`DERIVATIVE_ORDERS`].
pub const COSH_SCALED_DERIVATIVES: [i64; 11] = [1, -3, 10, -35, 126, -462, 1716, -6435, 24310, -92378, 352716];

/// `2^{n+1} d_t^n K_sech(0, 0)` at [`DERIVATIVE_ORDERS`].
pub const SECH_SCALED_DERIVATIVES: [i64; 11] = [-1, 1, -2, 5, -14, 42, -132, 429, -1430, 4862, -16796];

/// Numerators `x_n` of the sech kernel coefficients `x_n / (2^{n+1} n!)` at [`DERIVATIVE_ORDERS`].
pub const SECH_B_NUMERATORS: [i64; 11] = [-1, 1, -2, 5, -14, 42, -132, 429, -1430, 4862, -16796];
pub const SECH_C_NUMERATORS: [i64; 11] = [-1, 3, -10, 35, -126, 462, -1716, 6435, -24310, 92378, -352716];

/// Taylor-method mesh errors of `K_cosh` on `b = 2`, `(N, error)`.
pub const TAYLOR_COSH_B2: &[(usize, f64)] = &[
    (1, 1.7878),
    (3, 1.088),
    (5, 0.33724),
    (7, 0.063779),
    (9, 0.0081416),
    (11, 0.00074903),
    (13, 5.2024e-5),
    (15, 2.8243e-6),
    (17, 1.2312e-7),
    (19, 4.4042e-9),
    (21, 1.316e-10),
    (23, 3.3386e-12),
    (25, 7.5051e-14),
    (27, 6.9944e-15),
    (29, 6.6613e-15),
];

/// Taylor-method mesh errors of `K_sech`, `(b, N, error)`.
pub const TAYLOR_SECH: &[(f64, usize, f64)] = &[
    (1.0, 1, 0.12833),
    (1.0, 3, 0.021458),
    (1.0, 5, 0.0017866),
    (1.0, 7, 8.9155e-5),
    (1.0, 9, 2.9655e-6),
    (1.0, 11, 7.0469e-8),
    (1.0, 13, 1.2562e-9),
    (1.0, 15, 7.3683e-11),
    (2.0, 5, 0.21204),
    (2.0, 7, 0.043909),
    (2.0, 9, 0.0059553),
    (2.0, 11, 0.00057228),
    (2.0, 13, 4.1076e-5),
    (2.0, 15, 2.288e-6),
    (2.0, 17, 1.0182e-7),
    (2.0, 19, 3.7047e-9),
];

/// Minimax Goursat-fit mesh errors, `(kernel, b, N, error)`.
pub const GOURSAT_REMEZ: &[(&str, f64, usize, f64)] = &[
    ("sech", 2.0, 5, 0.0045993),
    ("sech", 2.0, 9, 9.3687e-6),
    ("sech", 2.0, 13, 4.1549e-9),
    ("sech", 2.0, 17, 3.3354e-10),
    ("cosh", 2.0, 5, 0.0052907),
    ("cosh", 2.0, 9, 1.2563e-5),
    ("cosh", 2.0, 13, 6.6227e-9),
    ("cosh", 2.0, 17, 1.1813e-12),
    ("cosh", 2.0, 19, 1.0325e-14),
];

/// Dirichlet eigenvalues `omega_n^2` of `-u'' + e^x u` on `[0, pi]` computed with `N = 30`.
pub const EXP_EIGENVALUES: &[(usize, f64)] = &[
    (1, 4.89666937996891),
    (2, 10.0451898932577),
    (3, 16.0192672505157),
    (5, 32.2637070458132),
    (10, 107.116676138236),
    (20, 407.065235267218),
    (50, 2507.05043440902),
    (100, 10007.0483099952),
    (200, 40007.0477785361),
    (500, 250007.047629702),
    (1000, 1000007.04760844),
];
