//! A small object-oriented program IR and renderers that turn it into
//! idiomatic Python, Java, C# and C++.
//!
//! Build programs with the constructors in [`build`] and [`patterns`], then
//! render them with [`render::render_target`].

pub mod auxfiles;
pub mod build;
pub mod error;
pub mod gallery;
pub mod interp;
pub mod ir;
pub mod json;
pub mod layout;
pub mod patterns;
pub mod render;
pub mod validate;

pub use error::{BuildError, RenderError};
pub use render::{render_expression, render_target, FileSet, FileType, RenderedFile, TargetId};
