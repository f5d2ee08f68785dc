//! Virtual endomorphism representations.
