use super::unionfind::DisplacedUnionFind;
use crate::digitset::DigitSet;

/// Digit-level sufficient conditions for a fractal cube to be a dendrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendriteReport {
    /// Every face of the big cube meets exactly one digit cube.
    pub one_contact_per_face: bool,
    /// No digit cube meets an edge of the big cube.
    pub avoids_edges: bool,
    /// The face-adjacency graph of the digit cubes is a tree.
    pub intersection_graph_is_tree: bool,
    pub max_graph_degree: usize,
    /// Digit cubes meeting the faces x-low, x-high, y-low, y-high, z-low, z-high.
    pub face_contacts: [usize; 6],
    pub graph_edges: usize,
    pub graph_connected: bool,
}

impl DendriteReport {
    pub fn all_hold(&self) -> bool {
        self.one_contact_per_face && self.avoids_edges && self.intersection_graph_is_tree
    }
}

pub fn dendrite_conditions(d: &DigitSet) -> DendriteReport {
    let base = d.base();
    let digits = d.digits();

    let mut face_contacts = [0usize; 6];
    for digit in digits {
        for (axis, &c) in digit.coords().iter().enumerate() {
            if c == 0 {
                face_contacts[2 * axis] += 1;
            }
            if c == base - 1 {
                face_contacts[2 * axis + 1] += 1;
            }
        }
    }

    let avoids_edges = digits.iter().all(|digit| digit.extreme_count(base) < 2);

    let mut degree = vec![0usize; digits.len()];
    let mut uf = DisplacedUnionFind::new(digits.len());
    let mut edges = 0;
    for (i, a) in digits.iter().enumerate() {
        for (j, b) in digits.iter().enumerate().skip(i + 1) {
            let diff: u32 = a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(&p, q)| p.abs_diff(q))
                .sum();
            if diff == 1 {
                edges += 1;
                degree[i] += 1;
                degree[j] += 1;
                uf.union(i, j, [0; 3]);
            }
        }
    }
    let graph_connected = (1..digits.len()).all(|i| uf.connected(0, i));

    DendriteReport {
        one_contact_per_face: face_contacts.iter().all(|&c| c == 1),
        avoids_edges,
        intersection_graph_is_tree: graph_connected && edges + 1 == digits.len(),
        max_graph_degree: degree.into_iter().max().unwrap_or(0),
        face_contacts,
        graph_edges: edges,
        graph_connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::{make_cross, make_frame, Digit};

    #[test]
    fn cross_satisfies_all_three() {
        let r = dendrite_conditions(&make_cross());
        assert!(r.one_contact_per_face && r.avoids_edges && r.intersection_graph_is_tree);
        assert_eq!(r.max_graph_degree, 6);
        assert_eq!(r.graph_edges, 12);
    }

    #[test]
    fn frame_fails() {
        let r = dendrite_conditions(&make_frame());
        assert!(!r.one_contact_per_face);
        assert!(!r.avoids_edges);
        assert!(!r.intersection_graph_is_tree);
        assert!(r.graph_connected);
    }

    #[test]
    fn stacked_pair_is_a_path() {
        let d = DigitSet::new(5, [Digit::new(0, 0, 0), Digit::new(0, 0, 1)]).unwrap();
        let r = dendrite_conditions(&d);
        assert!(!r.one_contact_per_face);
        assert_eq!(r.face_contacts, [2, 0, 2, 0, 1, 0]);
        assert!(r.intersection_graph_is_tree);
        assert_eq!(r.max_graph_degree, 1);
    }
}
