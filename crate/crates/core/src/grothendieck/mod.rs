//! Diagrams over a finite category and their Grothendieck constructions.

pub mod adjoints;
pub mod diagram;
pub mod fiber;
pub mod gerbe;
pub mod iso;
pub mod relnerve;
pub mod total;

pub use adjoints::{
    cotensor_over, left_adjoint_map, left_adjoint_slice, right_adjoint_map, right_adjoint_value, slice_nerve, unit_map, Cotensor,
    LeftSlice, RightValue, SliceNerve, UnitMap,
};
pub use diagram::Diagram;
pub use fiber::{fiber, relative_fiber_check, total_fiber_check, FiberCheck};
pub use gerbe::{Gerbe, GerbeCell, GerbeTower};
pub use iso::{canonical_iso, IsoCheck};
pub use relnerve::{marked_relative_nerve, relative_nerve, RelKey, RelativeNerve};
pub use total::{check_total_remarks, grothendieck_space, grothendieck_total, grothendieck_total_with, GrothendieckSpace, Total};
