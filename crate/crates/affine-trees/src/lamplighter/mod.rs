//! Principal example group.
