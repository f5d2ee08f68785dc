//! Affine automorphisms of the tree boundary.
