//! Definite quaternion algebras of prime discriminant, their maximal orders
//! and left ideal classes.

pub mod algebra;
pub mod classes;
pub mod ideal;
pub mod order;

pub use algebra::{algebra_for_level, auxiliary_presentations, AlgebraPresentation};
pub use classes::{classes_of_order, eichler_class_number, left_ideal_classes, ClassSet};
pub use ideal::{ideal_equivalent, two_sided_prime_ideal, LeftIdeal};
pub use order::{alternative_order, maximal_order, MaximalOrder};
