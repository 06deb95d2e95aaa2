//! Extract Method: legality, signature synthesis and the source rewrite.

mod dataflow;
mod plan;
mod rewrite;

pub use dataflow::{dataflow, DataFlow};
pub use plan::{default_name, is_legal, plan, CallForm, MethodSignature, Plan};
pub use rewrite::{apply_extract_method, inline_back, RewriteResult};
