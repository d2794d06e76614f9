//! The candidate edge list `L_e` and its scene-degree cache.

use std::collections::HashMap;

/// Commitment level of an `L_e` entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    /// `(v, u)`: a guess inherited from mapping or a previous round.
    NonSync,
    /// `[v, u]`: committed by reconstruction, removable only by undo.
    Sync,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEntry {
    pub u: usize,
    pub v: usize,
    pub status: EdgeStatus,
    pub visited: bool,
}

impl EdgeEntry {
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn key(&self) -> (usize, usize) {
        key(self.u, self.v)
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EdgeListError {
    #[error("edge ({0}, {1}) is synchronized and can only be removed by undo")]
    SyncRemoval(usize, usize),
    #[error("edge ({0}, {1}) is not in the list")]
    Missing(usize, usize),
}

/// Ordered set of candidate edges.
///
/// Entries live in slots so that a removal can be undone in place; iteration
/// order is slot order, which is insertion order. `degree(v)` is the scene
/// degree `d*(v)`: the number of live entries incident to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    slots: Vec<Option<EdgeEntry>>,
    index: HashMap<(usize, usize), usize>,
    incident: Vec<Vec<usize>>,
    live: usize,
}

impl EdgeList {
    pub fn new(n: usize) -> Self {
        Self { slots: Vec::new(), index: HashMap::new(), incident: vec![Vec::new(); n], live: 0 }
    }

    /// All pairs become non-synchronized, non-visited entries. Repeated pairs
    /// are kept once.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut le = Self::new(n);
        for (u, v) in pairs {
            if !le.contains(u, v) {
                le.insert(u, v, EdgeStatus::NonSync);
            }
        }
        le
    }

    pub fn vertex_count(&self) -> usize {
        self.incident.len()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&key(u, v))
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&EdgeEntry> {
        self.index.get(&key(u, v)).and_then(|&s| self.slots[s].as_ref())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Live entries in slot order.
    pub fn iter(&self) -> impl Iterator<Item = &EdgeEntry> + '_ {
        self.slots.iter().flatten()
    }

    /// Live entries incident to `v`, in slot order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = &EdgeEntry> + '_ {
        self.incident[v].iter().map(move |&s| self.slots[s].as_ref().unwrap())
    }

    /// Unordered pairs `(min, max)` of all live entries, in slot order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.iter().map(EdgeEntry::key).collect()
    }

    pub(crate) fn slot_of(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&key(u, v)).copied()
    }

    pub(crate) fn slot(&self, slot: usize) -> Option<&EdgeEntry> {
        self.slots[slot].as_ref()
    }

    /// Appends a new entry; returns its slot. The pair must not be present.
    pub(crate) fn insert(&mut self, u: usize, v: usize, status: EdgeStatus) -> usize {
        debug_assert!(!self.contains(u, v));
        let slot = self.slots.len();
        self.slots.push(Some(EdgeEntry { u, v, status, visited: status == EdgeStatus::Sync }));
        self.attach(slot);
        slot
    }

    /// Removes a non-synchronized entry, returning it with its slot.
    pub(crate) fn remove(&mut self, u: usize, v: usize) -> Result<(usize, EdgeEntry), EdgeListError> {
        let slot = self.slot_of(u, v).ok_or(EdgeListError::Missing(u, v))?;
        let entry = self.slots[slot].unwrap();
        if entry.status == EdgeStatus::Sync {
            return Err(EdgeListError::SyncRemoval(u, v));
        }
        self.detach(slot);
        self.slots[slot] = None;
        Ok((slot, entry))
    }

    pub(crate) fn set_entry(&mut self, slot: usize, entry: EdgeEntry) {
        let cur = self.slots[slot].as_mut().expect("live slot");
        debug_assert_eq!(cur.key(), entry.key());
        *cur = entry;
    }

    /// Undo of [`EdgeList::insert`]: the slot must be the last one.
    pub(crate) fn pop_slot(&mut self, slot: usize) {
        assert_eq!(slot + 1, self.slots.len(), "inserts are undone in LIFO order");
        if self.slots[slot].is_some() {
            self.detach(slot);
        }
        self.slots.pop();
    }

    /// Undo of [`EdgeList::remove`].
    pub(crate) fn restore_slot(&mut self, slot: usize, entry: EdgeEntry) {
        debug_assert!(self.slots[slot].is_none());
        self.slots[slot] = Some(entry);
        self.attach(slot);
    }

    fn attach(&mut self, slot: usize) {
        let e = self.slots[slot].unwrap();
        self.index.insert(e.key(), slot);
        for w in [e.u, e.v] {
            let inc = &mut self.incident[w];
            let pos = inc.partition_point(|&s| s < slot);
            inc.insert(pos, slot);
        }
        self.live += 1;
    }

    fn detach(&mut self, slot: usize) {
        let e = self.slots[slot].unwrap();
        self.index.remove(&e.key());
        for w in [e.u, e.v] {
            self.incident[w].retain(|&s| s != slot);
        }
        self.live -= 1;
    }

    /// Scene degrees recomputed from scratch, for checking the cache.
    pub fn recount_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in self.iter() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Synchronized entries form a subgraph of maximum degree 2.
    pub fn sync_degree_ok(&self) -> bool {
        let mut deg = vec![0u8; self.vertex_count()];
        for e in self.iter().filter(|e| e.status == EdgeStatus::Sync) {
            deg[e.u] += 1;
            deg[e.v] += 1;
            if deg[e.u] > 2 || deg[e.v] > 2 {
                return false;
            }
        }
        true
    }

    /// A compact copy with no dead slots, every entry reset to non-synchronized.
    pub fn fresh_copy(&self) -> EdgeList {
        EdgeList::from_pairs(self.vertex_count(), self.pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_follow_inserts_and_removals() {
        let mut le = EdgeList::from_pairs(4, [(0, 1), (1, 2)]);
        assert_eq!((le.degree(0), le.degree(1), le.degree(3)), (1, 2, 0));
        le.remove(1, 0).unwrap();
        assert_eq!(le.degree(1), 1);
        assert_eq!(le.recount_degrees(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn sync_entries_cannot_be_removed() {
        let mut le = EdgeList::new(3);
        le.insert(0, 1, EdgeStatus::Sync);
        assert_eq!(le.remove(1, 0), Err(EdgeListError::SyncRemoval(1, 0)));
        assert_eq!(le.remove(1, 2), Err(EdgeListError::Missing(1, 2)));
    }

    #[test]
    fn slot_restore_is_exact() {
        let mut le = EdgeList::from_pairs(5, [(0, 1), (1, 2), (2, 3)]);
        let before = le.clone();
        let (slot, entry) = le.remove(1, 2).unwrap();
        let s2 = le.insert(3, 4, EdgeStatus::NonSync);
        le.pop_slot(s2);
        le.restore_slot(slot, entry);
        assert_eq!(le, before);
    }

    #[test]
    fn duplicate_pairs_are_merged() {
        let le = EdgeList::from_pairs(3, [(0, 1), (1, 0), (1, 2)]);
        assert_eq!(le.len(), 2);
        assert_eq!(le.pairs(), vec![(0, 1), (1, 2)]);
    }
}
