//! Fixed inputs shared by tests, benches and the acceptance suite.

/// Monic-in-`y` curves of degree at most 6.
pub const PUISEUX_CORPUS: [&str; 20] = [
    "y^2 - x^3",
    "x + y^2",
    "y^3 - 3*x*y - x^3",
    "y^2 - x^2",
    "y^2 - x*y - 1",
    "y^3 - x^2",
    "y^3 + x*y + x^2",
    "y^4 - x^3",
    "y^4 + x*y + x^3",
    "y^5 - y - x^2",
    "y^6 + x*y^2 - x^5",
    "y - x^2",
    "y^2 - 2*x*y + x^2 - x",
    "y^3 - x*y^2 + x^2 + 1",
    "y^4 - 2*x^2*y^2 + x^4 - x^3",
    "(x + y^2)^3 + y",
    "y^2 + x^3 + x",
    "y^3 - x^2*y - x",
    "y^5 + x^4",
    "y^4 + 2*x^2*y - x",
];
