//! Kernels and propagators on a periodic lattice, where the kernel is a
//! phase (Minkowski) or decay (Euclidean) multiplier in momentum space.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::{FourVector, Signature};
use crate::lattice::{ComplexField, LatticeSpec, Representation};

/// Momentum-space factor of `K(·; λ)`: `e^{−iλ(p²+m²)}` or `e^{−λ(p²+m²)}`.
pub fn lattice_multiplier(signature: Signature, mass: f64, lambda: f64, p: &FourVector) -> Complex64 {
    let omega = p.dot(p, signature).expect("self product") + mass * mass;
    match signature {
        Signature::Minkowski => Complex64::from_polar(1.0, -lambda * omega),
        Signature::Euclidean => Complex64::new((-lambda * omega).exp(), 0.0),
    }
}

/// Applies `K(·; λ)` to a field, returning it in its original representation.
pub fn propagate_lattice(field: &ComplexField, mass: f64, lambda: f64) -> ComplexField {
    let sig = field.spec().signature();
    let mut mom = field.to_momentum();
    mom.multiply_by(|p| lattice_multiplier(sig, mass, lambda, p));
    match field.representation() {
        Representation::Momentum => mom,
        Representation::Position => mom.to_position(),
    }
}

/// `K(x; λ) = (2π)^{−D} Σ_p Δpᴰ e^{ip·x} × multiplier`, in position space.
pub fn lattice_kernel(spec: &LatticeSpec, mass: f64, lambda: f64) -> ComplexField {
    let sig = spec.signature();
    let scale = (2.0 * PI).powf(-(spec.dim() as f64) / 2.0);
    ComplexField::from_fn(spec.clone(), Representation::Momentum, |p| {
        lattice_multiplier(sig, mass, lambda, p) * scale
    })
    .to_position()
}

/// Lattice propagator in position space: `−i/(p²+m²−iε)` on a Minkowski
/// lattice, `1/(p²+m²+ε)` on a Euclidean one.
pub fn lattice_propagator(spec: &LatticeSpec, mass: f64, epsilon: f64) -> ComplexField {
    let sig = spec.signature();
    let scale = (2.0 * PI).powf(-(spec.dim() as f64) / 2.0);
    ComplexField::from_fn(spec.clone(), Representation::Momentum, |p| {
        let p2 = p.dot(p, sig).expect("self product");
        let value = match sig {
            Signature::Minkowski => Complex64::new(0.0, -1.0) / Complex64::new(p2 + mass * mass, -epsilon),
            Signature::Euclidean => Complex64::new(1.0 / (p2 + mass * mass + epsilon), 0.0),
        };
        value * scale
    })
    .to_position()
}
