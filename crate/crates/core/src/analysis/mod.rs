//! Composite verifications (under construction).
