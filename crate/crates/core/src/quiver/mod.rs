pub mod center;
pub mod graph;
pub mod path;
pub mod truncated;

pub use center::{center_bruteforce, center_closed_form, closed_paths, CenterFactor, ClosedFormCenter, GradedCenter};
pub use graph::{Arrow, Growth, Quiver, Shape, ShapeReport};
pub use path::{central_cycle, paths_of_length, Path, PathElement};
pub use truncated::truncated_path_algebra;
