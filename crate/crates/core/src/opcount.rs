//! Per-call arithmetic operation counter.
//!
//! Counting is only active inside [`measure`]; the counter lives in a
//! thread-local so concurrent measurements never interfere.

use std::cell::Cell;

thread_local! {
    static COUNTER: Cell<Option<u64>> = const { Cell::new(None) };
}

/// Runs `f` and returns its result together with the number of big-integer
/// operations it performed. Nested calls are counted by the outermost one.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let outer = COUNTER.with(|c| c.replace(Some(0)));
    let out = f();
    let n = COUNTER.with(|c| c.get().unwrap_or(0));
    COUNTER.with(|c| c.set(outer.map(|o| o + n)));
    (out, n)
}

#[inline]
pub(crate) fn tick(n: u64) {
    COUNTER.with(|c| {
        if let Some(v) = c.get() {
            c.set(Some(v + n));
        }
    });
}
