//! The doubled quiver attached to a symmetric generalized Cartan matrix:
//! |a_ij| arrows in each direction between distinct vertices i, j, an arrow
//! reversal involution `bar`, and a sign function taking +1 on a chosen
//! orientation and -1 on its reversal.

use crate::cartan::CartanDatum;
use serde::{Deserialize, Serialize};

/// One arrow of the doubled quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub out: usize,
    pub inn: usize,
    /// Which of the |a_ij| parallel copies this is.
    pub copy: usize,
    /// +1 if the arrow lies in the chosen orientation, -1 otherwise.
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct DoubledQuiver {
    pub n: usize,
    /// All arrows; `arrows[k]` and `arrows[bar[k]]` are each other's reversal.
    pub arrows: Vec<Arrow>,
    pub bar: Vec<usize>,
}

impl DoubledQuiver {
    /// Builds the doubled quiver with the lexicographic orientation: the copy
    /// from the smaller vertex to the larger one carries sign +1.
    pub fn from_cartan(cartan: &CartanDatum) -> Self {
        let n = cartan.rank();
        let mut arrows = Vec::new();
        let mut bar = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mult = (-cartan.entry(i, j)) as usize;
                for copy in 0..mult {
                    let fwd = arrows.len();
                    arrows.push(Arrow {
                        out: i,
                        inn: j,
                        copy,
                        sign: 1,
                    });
                    arrows.push(Arrow {
                        out: j,
                        inn: i,
                        copy,
                        sign: -1,
                    });
                    bar.push(fwd + 1);
                    bar.push(fwd);
                }
            }
        }
        DoubledQuiver { n, arrows, bar }
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Indices of arrows whose head is `i`.
    pub fn arrows_into(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.inn == i)
            .map(|(k, _)| k)
    }

    /// Indices of arrows whose tail is `i`.
    pub fn arrows_out_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.out == i)
            .map(|(k, _)| k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_doubled_quiver() {
        let cartan = CartanDatum::preset("A2").unwrap();
        let q = DoubledQuiver::from_cartan(&cartan);
        assert_eq!(q.arrow_count(), 2);
        for (k, a) in q.arrows.iter().enumerate() {
            let b = &q.arrows[q.bar[k]];
            assert_eq!((a.out, a.inn, a.copy), (b.inn, b.out, b.copy));
            assert_eq!(a.sign, -b.sign);
            assert_eq!(q.bar[q.bar[k]], k);
        }
    }

    #[test]
    fn d4_arrow_count() {
        let cartan = CartanDatum::preset("D4").unwrap();
        let q = DoubledQuiver::from_cartan(&cartan);
        // D4 has 3 undoubled edges, so 6 arrows in the double.
        assert_eq!(q.arrow_count(), 6);
        // Vertex 1 is the trivalent node in this labelling.
        assert_eq!(q.arrows_into(1).count(), 3);
        assert_eq!(q.arrows_out_of(1).count(), 3);
        assert_eq!(q.arrows_into(3).count(), 1);
    }
}
