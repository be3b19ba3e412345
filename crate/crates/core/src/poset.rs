//! Finite posets stored as Hasse diagrams.

use alloc::string::String;
use alloc::vec::Vec;

/// Labelled elements plus the cover relation `(lower, upper)`, which is the
/// transitive reduction of the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDiagram {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
}

impl PosetDiagram {
    /// Builds the Hasse diagram of the order `le` (must be reflexive,
    /// antisymmetric and transitive on `0..elements.len()`).
    pub fn from_order(elements: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let lt = |a: usize, b: usize| a != b && le(a, b);
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        Self { elements, covers }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_labels(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.covers.iter().map(|&(a, b)| (self.elements[a].as_str(), self.elements[b].as_str()))
    }

    /// Cover pairs with orientation forgotten: each pair sorted, list sorted.
    pub fn undirected_covers(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .cover_labels()
            .map(|(a, b)| if a <= b { (a.into(), b.into()) } else { (b.into(), a.into()) })
            .collect();
        out.sort();
        out
    }

    /// Elements covering nothing.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&x| !self.covers.iter().any(|&(_, b)| b == x)).collect()
    }

    /// Elements covered by nothing.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&x| !self.covers.iter().any(|&(a, _)| a == x)).collect()
    }

    /// Whether no cover is implied by a chain of two or more other covers.
    pub fn is_transitively_reduced(&self) -> bool {
        let n = self.elements.len();
        self.covers.iter().all(|&(a, b)| {
            // search for a path a → … → b avoiding the direct edge
            let mut seen = alloc::vec![false; n];
            let mut stack: Vec<usize> =
                self.covers.iter().filter(|&&(x, y)| x == a && y != b).map(|&(_, y)| y).collect();
            while let Some(v) = stack.pop() {
                if v == b {
                    return false;
                }
                if core::mem::replace(&mut seen[v], true) {
                    continue;
                }
                stack.extend(self.covers.iter().filter(|&&(x, _)| x == v).map(|&(_, y)| y));
            }
            true
        })
    }
}
