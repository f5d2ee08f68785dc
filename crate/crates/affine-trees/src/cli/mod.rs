//! CLI surface.
