//! Enumeration and search limits.
//!
//! Everything in this crate is exact and total, so runaway loops can only come
//! from enumerating an infinite group too far. Every enumeration takes a cap
//! and errors (rather than truncating silently) when it is hit.

#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest group/quotient enumeration allowed (element count).
    pub max_group_size: usize,
    /// Longest element length any table will compute with.
    pub max_length: u32,
    /// Longest minimal coset representative tried in the witness search.
    pub max_y_length: u32,
    /// Largest symmetric power degree for reflection representation actions.
    pub max_sym_degree: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_size: 20_000,
            max_length: 48,
            max_y_length: 24,
            max_sym_degree: 16,
        }
    }
}
