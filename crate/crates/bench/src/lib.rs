//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use twistvo::lattice::Cocycle;
use twistvo::vertex::FockWindow;
use twistvo::Scalar;

/// A window with room for modes up to `window` on columns of degree `depth`.
pub fn window(nu: usize, depth: u32, window: u32) -> Arc<FockWindow> {
    FockWindow::new(nu, depth, window, Cocycle::standard())
}

/// The scalar pairs `(a, b)` used for the commutator formula.
pub fn regimes() -> Vec<(&'static str, Scalar, Scalar)> {
    vec![
        ("unit", Scalar::one(), Scalar::one()),
        ("zeta3", Scalar::zeta(3, 1), Scalar::zeta(3, 2)),
        ("formal", Scalar::param("a"), Scalar::param("b")),
    ]
}
