//! Enumerated matrix groups `SL_n(F_q)` and `GL_n(F_q)`: elements,
//! conjugacy classes, centralizers and semisimple class data.

mod group;
mod matrix;
mod semisimple;

use serde::{Deserialize, Serialize};

pub use group::{
    centralizer_order, group_build, group_build_with_budget, group_order_formula,
    semisimple_class_from_charpoly, ConjugacyClassInfo, FactorMultiplicity, GroupContext,
    GroupDescriptor, GroupSnapshot, DEFAULT_MAX_ORDER,
};
pub(crate) use matrix::rank_of_rows;
pub use matrix::Matrix;
pub use semisimple::{semisimple_centralizer_order, semisimple_class_types, SemisimpleType};

/// Index of an element in a group's canonical enumeration.
pub type ElementId = u32;

/// Index of a conjugacy class in a group's class list.
pub type ClassId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    SL,
    GL,
}

impl std::str::FromStr for GroupKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SL" => Ok(GroupKind::SL),
            "GL" => Ok(GroupKind::GL),
            _ => Err(crate::Error::Parse(format!("unknown group kind {s:?}"))),
        }
    }
}
