//! Published per-class and per-word duration statistics, as (mean, std) pairs.

use crate::corpus::{ConsonantClass, Form};

/// Column order: V1d, Cd, C1d, C2d, V2d, Utd, Cd/V1d, C1d/V1d, C2d/V1d.
/// `None` marks a column the class does not have.
pub(super) type ClassRow = [Option<(f64, f64)>; 9];

const fn p(mean: f64, std: f64) -> Option<(f64, f64)> {
    Some((mean, std))
}

pub(super) const CLASS_TABLE: [(ConsonantClass, Form, ClassRow); 10] = {
    use ConsonantClass::*;
    use Form::*;
    [
        (
            Affricate,
            Singleton,
            [
                p(149.51, 33.28),
                p(177.06, 43.20),
                p(81.79, 25.02),
                p(95.28, 40.47),
                p(128.41, 27.08),
                p(454.99, 41.61),
                p(1.30, 0.64),
                p(0.59, 0.27),
                p(0.71, 0.46),
            ],
        ),
        (
            Affricate,
            Geminate,
            [
                p(111.44, 22.48),
                p(254.83, 42.67),
                p(133.29, 33.03),
                p(121.54, 47.44),
                p(125.31, 24.12),
                p(491.58, 49.02),
                p(2.42, 0.77),
                p(1.25, 0.43),
                p(1.17, 0.59),
            ],
        ),
        (
            Fricative,
            Singleton,
            [
                p(175.66, 25.87),
                p(134.91, 37.60),
                None,
                None,
                p(118.90, 25.29),
                p(429.46, 45.57),
                p(0.80, 0.33),
                None,
                None,
            ],
        ),
        (
            Fricative,
            Geminate,
            [
                p(126.58, 27.14),
                p(233.25, 45.07),
                None,
                None,
                p(114.12, 24.29),
                p(473.96, 48.50),
                p(1.97, 0.70),
                None,
                None,
            ],
        ),
        (
            Nasal,
            Singleton,
            [
                p(183.52, 27.45),
                p(90.64, 14.14),
                None,
                None,
                p(130.05, 25.43),
                p(404.20, 45.07),
                p(0.51, 0.12),
                None,
                None,
            ],
        ),
        (
            Nasal,
            Geminate,
            [
                p(124.56, 20.95),
                p(211.75, 33.33),
                None,
                None,
                p(124.25, 25.43),
                p(460.57, 43.02),
                p(1.77, 0.56),
                None,
                None,
            ],
        ),
        (
            Liquid,
            Singleton,
            [
                p(171.92, 25.75),
                p(60.56, 15.33),
                None,
                None,
                p(100.21, 22.1),
                p(384.1, 40.53),
                p(0.36, 0.11),
                None,
                None,
            ],
        ),
        (
            Liquid,
            Geminate,
            [
                p(121.81, 27.54),
                p(174.2, 28.69),
                None,
                None,
                p(87.74, 21.45),
                p(443.86, 42.87),
                p(1.52, 0.51),
                None,
                None,
            ],
        ),
        (
            Stop,
            Singleton,
            [
                p(168.33, 28.4),
                p(99.8, 22.77),
                p(90.79, 19.97),
                None,
                p(145.16, 27.9),
                p(413.3, 40.61),
                p(0.62, 0.24),
                p(0.57, 0.20),
                None,
            ],
        ),
        (
            Stop,
            Geminate,
            [
                p(124.4, 25.43),
                p(191.46, 46.35),
                p(182.05, 36.33),
                None,
                p(137.34, 38.5),
                p(453.2, 42.82),
                p(1.64, 0.62),
                p(1.55, 0.55),
                None,
            ],
        ),
    ]
};

/// Affricate words by vowel, then consonant `[tʃ, dʒ, ts, dz]`, singleton
/// before geminate. Columns: V1d, C1d, C2d, Cd, V2d, Utd as mean, std.
pub(super) const AFFRICATE_CONSONANTS: [&str; 4] = ["tʃ", "dʒ", "ts", "dz"];

#[rustfmt::skip]
pub(super) const AFFRICATE_WORDS: [[f64; 12]; 24] = [
    [160.0, 27.6, 73.1, 34.7, 100.9, 20.5, 174.0, 31.8, 112.3, 19.6, 446.3, 43.8],
    [113.2, 19.2, 137.8, 13.9, 128.7, 28.1, 266.5, 30.4, 107.5, 12.2, 487.2, 29.3],
    [169.0, 20.6, 92.0, 18.9, 49.1, 13.6, 141.0, 27.0, 142.3, 26.1, 452.3, 47.4],
    [127.3, 16.0, 156.1, 17.7, 61.5, 11.0, 217.6, 24.1, 125.9, 15.9, 470.9, 42.2],
    [121.3, 23.3, 89.6, 11.0, 129.8, 34.0, 219.4, 36.0, 109.9, 23.1, 450.6, 37.0],
    [106.0, 18.7, 112.2, 18.8, 167.0, 22.0, 279.2, 32.7, 117.4, 20.6, 502.6, 43.5],
    [163.4, 24.7, 89.9, 13.5, 78.6, 19.3, 168.5, 22.5, 139.7, 18.9, 471.7, 42.9],
    [127.8, 24.5, 139.8, 35.3, 102.3, 23.0, 242.1, 34.0, 136.3, 29.0, 506.2, 57.4],
    [137.4, 20.8, 64.0, 29.2, 122.4, 16.2, 186.4, 35.3, 104.6, 17.9, 428.4, 29.8],
    [99.3, 17.9, 122.8, 20.4, 158.4, 26.1, 281.2, 31.9, 110.7, 21.0, 491.3, 37.5],
    [166.7, 28.3, 95.9, 17.5, 52.6, 15.7, 148.5, 25.1, 141.6, 30.6, 456.8, 53.4],
    [111.7, 21.3, 162.1, 28.2, 74.1, 25.5, 236.2, 41.2, 129.4, 30.6, 477.3, 56.6],
    [106.7, 25.9, 84.4, 20.2, 149.6, 31.3, 234.0, 39.6, 109.7, 18.1, 450.4, 32.2],
    [94.5, 17.9, 114.0, 31.4, 171.0, 34.7, 285.0, 37.6, 123.2, 22.8, 502.7, 48.0],
    [148.4, 37.5, 85.9, 16.5, 90.9, 21.6, 176.8, 30.9, 148.1, 20.7, 473.4, 35.7],
    [104.7, 23.9, 136.5, 36.4, 120.2, 38.1, 256.7, 42.3, 139.7, 19.0, 501.1, 53.0],
    [163.6, 27.4, 66.0, 37.9, 103.7, 24.0, 169.8, 34.4, 131.7, 23.7, 465.0, 32.0],
    [110.9, 25.4, 151.1, 39.4, 123.0, 24.7, 274.1, 48.1, 125.0, 22.4, 509.9, 51.7],
    [173.5, 32.1, 85.7, 21.1, 44.1, 16.5, 129.9, 27.2, 146.1, 26.5, 449.5, 45.0],
    [120.2, 21.6, 154.0, 21.3, 61.3, 20.8, 215.3, 32.0, 137.3, 29.9, 472.8, 67.7],
    [133.2, 30.6, 73.3, 26.9, 140.7, 22.4, 214.0, 32.6, 115.3, 16.3, 462.5, 41.1],
    [103.8, 21.9, 96.3, 20.4, 178.8, 19.4, 275.0, 23.6, 115.1, 15.8, 493.9, 40.4],
    [150.8, 23.7, 81.6, 18.8, 80.9, 18.1, 162.5, 29.2, 139.7, 23.8, 453.0, 44.8],
    [117.7, 17.1, 116.8, 26.9, 112.3, 29.4, 229.0, 42.7, 136.4, 20.0, 483.1, 43.1],
];

/// Fricative words by vowel, then consonant `[f, v, s]`, singleton before
/// geminate. Columns: V1d, Cd, V2d, Utd as mean, std.
pub(super) const FRICATIVE_CONSONANTS: [&str; 3] = ["f", "v", "s"];

#[rustfmt::skip]
pub(super) const FRICATIVE_WORDS: [[f64; 8]; 18] = [
    [165.8, 18.8, 151.7, 21.4, 111.6, 28.6, 429.0, 37.0],
    [123.2, 18.1, 248.3, 30.3, 109.1, 22.4, 480.7, 45.6],
    [188.7, 21.4, 83.3, 13.5, 123.0, 26.0, 395.0, 45.0],
    [126.5, 20.7, 205.8, 27.0, 108.0, 16.2, 440.3, 36.6],
    [175.9, 17.0, 147.2, 13.9, 122.6, 27.3, 445.8, 37.1],
    [125.3, 20.4, 250.1, 35.6, 113.7, 24.3, 489.2, 41.0],
    [164.3, 23.1, 153.0, 30.7, 109.9, 22.9, 427.3, 36.4],
    [115.1, 27.8, 253.5, 37.4, 112.1, 27.0, 480.7, 49.2],
    [185.0, 26.6, 90.3, 13.1, 118.8, 23.6, 394.1, 48.7],
    [122.4, 28.8, 202.1, 29.6, 117.5, 29.3, 442.0, 61.5],
    [175.5, 21.6, 164.2, 29.2, 115.1, 23.8, 454.8, 34.6],
    [124.7, 27.3, 260.0, 36.1, 113.6, 20.0, 498.3, 44.9],
    [163.8, 34.7, 163.7, 26.2, 118.4, 21.6, 446.0, 43.1],
    [120.3, 28.8, 253.2, 38.1, 109.8, 18.4, 483.2, 37.1],
    [188.2, 34.0, 105.4, 19.1, 135.2, 23.4, 428.8, 49.1],
    [156.4, 29.0, 171.3, 34.3, 134.7, 27.2, 462.4, 48.1],
    [173.8, 18.7, 155.3, 25.8, 115.4, 25.5, 444.5, 40.7],
    [125.2, 25.2, 255.0, 39.6, 108.6, 24.2, 488.8, 39.5],
];
