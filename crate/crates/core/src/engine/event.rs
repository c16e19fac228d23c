use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::Wall;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Disks `i < j` touch.
    Pair(usize, usize),
    /// Disk touches a wall.
    Wall(usize, Wall),
    /// Disk leaves its grid cell.
    Rebin(usize),
}

impl EventKind {
    fn rank(&self) -> u8 {
        match self {
            EventKind::Pair(..) => 0,
            EventKind::Wall(..) => 1,
            EventKind::Rebin(..) => 2,
        }
    }

    fn indices(&self) -> (usize, usize) {
        match *self {
            EventKind::Pair(i, j) => (i, j),
            EventKind::Wall(i, w) => (i, w.index()),
            EventKind::Rebin(i) => (i, 0),
        }
    }
}

/// A scheduled event. It is stale once any involved disk's stamp has moved on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
    pub stamps: (u64, u64),
}

impl Event {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.kind.rank().cmp(&other.kind.rank()))
            .then(self.kind.indices().cmp(&other.kind.indices()))
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    // Reversed so the max-heap pops the earliest event.
    fn cmp(&self, other: &Self) -> Ordering {
        other.key_cmp(self)
    }
}

/// Min-queue of events ordered by (time, kind, lowest index).
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<Event>,
}

impl EventQueue {
    pub fn push(&mut self, ev: Event) {
        self.heap.push(ev);
    }

    pub fn pop(&mut self) -> Option<Event> {
        self.heap.pop()
    }

    pub fn peek_time(&self) -> Option<f64> {
        self.heap.peek().map(|e| e.time)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn clear(&mut self) {
        self.heap.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_in_time_then_kind_then_index_order() {
        let mut q = EventQueue::default();
        let mk = |time, kind| Event { time, kind, stamps: (0, 0) };
        q.push(mk(2.0, EventKind::Pair(0, 1)));
        q.push(mk(1.0, EventKind::Rebin(3)));
        q.push(mk(1.0, EventKind::Wall(5, Wall::Left)));
        q.push(mk(1.0, EventKind::Pair(2, 4)));
        q.push(mk(1.0, EventKind::Pair(1, 7)));
        let order: Vec<EventKind> = std::iter::from_fn(|| q.pop()).map(|e| e.kind).collect();
        assert_eq!(
            order,
            vec![
                EventKind::Pair(1, 7),
                EventKind::Pair(2, 4),
                EventKind::Wall(5, Wall::Left),
                EventKind::Rebin(3),
                EventKind::Pair(0, 1),
            ]
        );
    }
}
