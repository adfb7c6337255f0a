//! Per-thread memo tables for the recursive operations.
//!
//! Every table is private to its thread, and memoized results are identical to
//! recomputed ones. Disabling the memo only changes running time.

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn is_enabled() -> bool {
    ENABLED.load(Ordering::Relaxed)
}

/// Drops every table of the calling thread.
pub fn clear() {
    crate::normalize::clear_memo();
    crate::steenrod::clear_memo();
    crate::hopf::clear_memo();
}

pub(crate) struct Table<K, V>(RefCell<HashMap<K, V>>);

impl<K: Hash + Eq, V: Clone> Table<K, V> {
    pub(crate) fn new() -> Self {
        Table(RefCell::new(HashMap::new()))
    }

    /// Looks `key` up, computing and storing it on a miss. The borrow is
    /// released while `compute` runs, so recursive lookups are fine.
    pub(crate) fn get_or(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if !is_enabled() {
            return compute();
        }
        if let Some(v) = self.0.borrow().get(&key) {
            return v.clone();
        }
        let v = compute();
        self.0.borrow_mut().insert(key, v.clone());
        v
    }

    pub(crate) fn clear(&self) {
        self.0.borrow_mut().clear();
    }
}
