//! Deliberate corruptions used by mutation tests.
//!
//! Only compiled in with the `mutation-hook` feature. A mutation is scoped to
//! the calling thread, so suites run their trials sequentially while one is
//! active.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Dorfman bracket computed with `+ι_Y dξ` instead of `−ι_Y dξ`.
    FlipContraction,
    /// Connection formula with the sign of its last bracket term flipped.
    FlipConnectionTerm,
}

#[cfg(feature = "mutation-hook")]
mod imp {
    use super::Mutation;
    use std::cell::Cell;

    thread_local! {
        static ACTIVE: Cell<Option<Mutation>> = const { Cell::new(None) };
    }

    /// Runs `f` with `mutation` in effect on this thread.
    pub fn with_mutation<R>(mutation: Mutation, f: impl FnOnce() -> R) -> R {
        struct Restore(Option<Mutation>);
        impl Drop for Restore {
            fn drop(&mut self) {
                ACTIVE.with(|a| a.set(self.0));
            }
        }
        let _restore = Restore(ACTIVE.with(|a| a.replace(Some(mutation))));
        f()
    }

    pub(crate) fn is_active(m: Mutation) -> bool {
        ACTIVE.with(|a| a.get() == Some(m))
    }

    pub(crate) fn any_active() -> bool {
        ACTIVE.with(|a| a.get().is_some())
    }
}

#[cfg(feature = "mutation-hook")]
pub use imp::with_mutation;
#[cfg(feature = "mutation-hook")]
pub(crate) use imp::{any_active, is_active};

#[cfg(not(feature = "mutation-hook"))]
pub(crate) fn is_active(_: Mutation) -> bool {
    false
}

#[cfg(not(feature = "mutation-hook"))]
pub(crate) fn any_active() -> bool {
    false
}
