//! Reference values reproduced by the library, with their tolerances.
//!
//! Integer-valued cells are exact. Cells quoted in scientific notation
//! carry the tolerance of their printed precision. The tables are consumed
//! by the `table` subcommand of the command-line tool and by the
//! acceptance tests.

/// How closely a computed value must match a quoted one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tol {
    /// Absolute difference bound (integer cells, short decimals).
    Abs(f64),
    /// Relative difference bound (values quoted to few significant digits).
    Rel(f64),
}

impl Tol {
    pub fn check(&self, got: f64, want: f64) -> bool {
        match *self {
            Tol::Abs(a) => (got - want).abs() <= a,
            Tol::Rel(r) => (got - want).abs() <= r * want.abs(),
        }
    }
}

/// Minimum-cycle-length floor for P(1,3,2,2): `(log10(x0), floor)`.
pub const FLOOR_1322: [(u32, u64); 8] = [
    (3, 5),
    (4, 17),
    (5, 22),
    (6, 127),
    (7, 276),
    (8, 276),
    (9, 6475),
    (10, 13226),
];

/// Minimum-cycle-length floor for P(2,4,3,3): `(log10(x0), floor)`.
pub const FLOOR_2433: [(u32, u64); 8] = [
    (3, 2),
    (4, 2),
    (5, 9),
    (6, 52),
    (7, 52),
    (8, 113),
    (9, 113),
    (10, 2651),
];

/// Crossing of the transcendence bound with the cycle-bound envelope for
/// P(1,3,2,2): `(m, x3, tolerance)`.
pub const X3_1322: [(u32, f64, Tol); 9] = [
    (1, 126.0, Tol::Abs(1.0)),
    (2, 1241.0, Tol::Abs(1.0)),
    (3, 8171.0, Tol::Abs(1.0)),
    (4, 45588.0, Tol::Abs(1.0)),
    (5, 2.3201e5, Tol::Abs(10.0)),
    (10, 4.2643e8, Tol::Rel(5e-3)),
    (20, 4.9668e14, Tol::Rel(5e-3)),
    (50, 1.1449e32, Tol::Rel(5e-3)),
    (100, 2.2665e60, Tol::Rel(5e-3)),
];

/// Same crossing for P(2,4,3,3).
pub const X3_2433: [(u32, f64, Tol); 9] = [
    (1, 88.0, Tol::Abs(1.0)),
    (2, 754.0, Tol::Abs(1.0)),
    (3, 4422.0, Tol::Abs(1.0)),
    (4, 22142.0, Tol::Abs(1.0)),
    (5, 1.0150e5, Tol::Abs(10.0)),
    (10, 1.1314e8, Tol::Rel(5e-3)),
    (20, 5.0142e13, Tol::Rel(5e-3)),
    (50, 6.6686e29, Tol::Rel(5e-3)),
    (100, 1.1640e56, Tol::Rel(5e-3)),
];

/// Envelope crossings with the convergent-gap bounds for P(1,3,2,2):
/// `(m, l1, l2, tolerance)`.
pub const L1L2_1322: [(u32, f64, f64, Tol); 7] = [
    (1, 10.0, 16.0, Tol::Abs(1.0)),
    (2, 122.0, 162.0, Tol::Abs(1.0)),
    (3, 875.0, 1085.0, Tol::Abs(1.0)),
    (4, 5120.0, 6103.0, Tol::Abs(1.0)),
    (5, 26893.0, 31240.0, Tol::Abs(1.0)),
    (10, 5.3270e7, 5.8249e7, Tol::Rel(5e-3)),
    (20, 6.5093e13, 6.8249e13, Tol::Rel(5e-3)),
];

/// Same crossings for P(2,4,3,3).
pub const L1L2_2433: [(u32, f64, f64, Tol); 7] = [
    (1, 9.0, 12.0, Tol::Abs(1.0)),
    (2, 84.0, 107.0, Tol::Abs(1.0)),
    (3, 517.0, 625.0, Tol::Abs(1.0)),
    (4, 2661.0, 3124.0, Tol::Abs(1.0)),
    (5, 12437.0, 14307.0, Tol::Abs(1.0)),
    (10, 1.4561e7, 1.5903e7, Tol::Rel(5e-3)),
    (20, 6.676e12, 7.034e12, Tol::Rel(5e-3)),
];

/// Nonzero cycles of P(2,4,3,3) below 10^6: `(min, max, length, m)`.
pub const CYCLES_2433: [(u64, u64, usize, usize); 12] = [
    (1, 1, 1, 0),
    (2, 2, 1, 0),
    (3, 4, 2, 1),
    (5, 5, 1, 0),
    (6, 8, 3, 1),
    (9, 16, 7, 1),
    (15, 32, 14, 3),
    (27, 176, 51, 10),
    (33, 52, 7, 2),
    (90, 1972, 93, 19),
    (213, 700, 31, 7),
    (645, 1612, 31, 8),
];

/// Nonzero cycles of the unique proper simple generalization of the
/// Collatz permutation, below 10^5.
pub const CYCLES_COLLATZ_SIMPLE: [(u64, u64, usize, usize); 8] = [
    (1, 3, 3, 1),
    (4, 27, 11, 2),
    (5, 5, 1, 0),
    (10, 15, 2, 1),
    (14, 21, 3, 1),
    (16, 261, 34, 8),
    (20, 45, 5, 1),
    (220, 555, 12, 4),
];

/// One extended-generalization inventory: the target order paired with its
/// cycles as `(min, max, length)` triples.
pub type OrderCycles = (&'static [usize; 3], &'static [(u64, u64, usize)]);

/// Cycles of the four proper extended generalizations of the Collatz
/// permutation below 10^5, keyed by target order, as `(min, max, length)`.
pub const CYCLES_COLLATZ_EXTENDED: [OrderCycles; 4] = [
    (&[1, 0, 2], &[(0, 1, 2), (2, 7, 5), (42, 109, 12)]),
    (
        &[1, 2, 0],
        &[
            (0, 7, 6),
            (5, 5, 1),
            (12, 19, 2),
            (26, 61, 5),
            (140, 5215, 94),
            (306, 775, 12),
        ],
    ),
    (&[2, 0, 1], &[(0, 5, 5), (40, 107, 12)]),
    (
        &[2, 1, 0],
        &[
            (0, 23, 11),
            (1, 1, 1),
            (6, 11, 2),
            (10, 17, 3),
            (12, 257, 34),
            (16, 41, 5),
            (216, 551, 12),
        ],
    ),
];

/// Leading continued-fraction convergents `(p, q)` of ln(3/2)/ln(4/3),
/// the step ratio of P(1,3,2,2).
pub const CONVERGENTS_1322: [(u64, u64); 9] = [
    (1, 1),
    (3, 2),
    (7, 5),
    (24, 17),
    (31, 22),
    (179, 127),
    (389, 276),
    (9126, 6475),
    (18641, 13226),
];

/// Leading convergents of ln(4/3)/ln(9/8), the step ratio of P(2,4,3,3).
pub const CONVERGENTS_2433: [(u64, u64); 8] = [
    (2, 1),
    (5, 2),
    (17, 7),
    (22, 9),
    (127, 52),
    (276, 113),
    (6475, 2651),
    (13226, 5415),
];

/// Largest partial quotient of either ratio over the denominator window
/// used by the second crossing.
pub const MAX_PARTIAL_QUOTIENT: u64 = 55;

/// First candidate `(k, l)` pairs passing the one-sided linear-form test
/// for P(1,3,2,2) at x0 = 10^6.
pub const CANDIDATES_1322: [(u64, u64); 8] = [
    (389, 276),
    (778, 552),
    (957, 679),
    (1167, 828),
    (1346, 955),
    (1377, 977),
    (1556, 1104),
    (1735, 1231),
];

/// Minima of the apparently divergent classes of the Collatz permutation
/// below 100.
pub const COLLATZ_DIVERGENT_MINIMA_100: [u64; 6] = [8, 14, 40, 64, 80, 82];

/// Divergence-ratio targets at x0 = 10^5: `(ratio, half-width)`.
pub const DIVERGENCE_TARGET_COLLATZ: (f64, f64) = (0.05, 0.02);
pub const DIVERGENCE_TARGET_2433: (f64, f64) = (0.12, 0.03);

/// Short cycles of the prime-composite permutation (canonical rotation,
/// minimum first).
pub const PRIMECOMP_SHORT_CYCLES: [&[u64]; 9] = [
    &[1],
    &[2],
    &[3, 4],
    &[5, 6],
    &[7, 8],
    &[9],
    &[10, 11],
    &[12, 13],
    &[14, 17, 15],
];

/// Longer prime-composite cycles identified by a member seed: `(seed,
/// cycle length)`.
pub const PRIMECOMP_CYCLE_LENGTHS: [(u64, usize); 4] = [(18, 22), (62, 3), (84, 3), (92, 6)];
