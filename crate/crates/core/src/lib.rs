//! Exact volume polynomials of type-`A_n` permutohedra.
//!
//! The volume of the convex hull of all coordinate permutations of a
//! dominant weight `x_1*w_1 + ... + x_n*w_n` is a homogeneous polynomial of
//! degree `n` in the `x_i`. This crate computes it exactly as a sum over
//! Dyck paths and, independently, by the facet recursion, and checks both
//! against geometric oracles.
//!
//! ```
//! use permvol::{volume_dyck, Format};
//!
//! let v3 = volume_dyck(3).unwrap();
//! assert_eq!(v3.value.radicand(), 1);
//! assert!(v3.value.render(Format::Plain).starts_with("1/3*x1^3 + 2*x1^2*x2"));
//! ```

pub mod dyck;
pub mod error;
pub mod oracle;
pub mod ratpoly;
pub mod type_a;
pub mod volume;

pub use dyck::{
    decompose, enumerate, from_binary_tree, north_step_labels, to_binary_tree, BinaryTree,
    DyckPath, NorthStepLabel, Step,
};
pub use error::{Error, Result};
pub use oracle::{
    area_2d, contains, monte_carlo_volume, orbit_vertices, verify, Budget, VerificationReport,
    VertexSet, VolumeEstimate,
};
pub use ratpoly::{parse_rational, Evaluation, Format, Monomial, Rational, RationalPoly, ScaledPoly};
pub use type_a::{
    connected_components, dominant_representative, fundamental_weight_ambient,
    inverse_cartan_entry, stabilizer, to_ambient, to_weight_coords, AmbientPoint, Interval,
    SimpleSubset, WeightVector,
};
pub use volume::{
    face_volume, gamma, gamma_path, path_constant, pyramid_eval, volume, volume_dyck,
    volume_dyck_via, volume_recursive, GammaKind, Method, VolumePolynomial,
};
