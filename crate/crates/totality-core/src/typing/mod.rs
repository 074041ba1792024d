//! Type inference and priority assignment.

mod env;
mod infer;
mod priority;
mod types;
mod unify;

pub use env::{ctor_argument, TypeEnv, TypeInfo};
pub use infer::{annotate_group, FunEnv, TClause, TDefinition, TExpr, TGroup, TPattern, TypeError};
pub use priority::{
    annotate_priorities, assign_instances, assign_priorities, group_instances, PClause, PDefinition, PExpr, PPattern,
    PriorityError, PriorityMap,
};
pub use types::TypeExpr;
pub use unify::{resolve, unify, unify_in, Subst, UnifyError};
