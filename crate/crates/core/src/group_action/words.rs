use std::collections::HashSet;

use super::mapping::Map;
use crate::error::{Error, Result};
use crate::model::MetricModel;

/// Default cap on the number of map evaluations during word enumeration.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Quantization step for identifying orbit points across words.
const KEY_STEP: f64 = 1e-9;

/// Orbit of a point under all words of bounded length.
#[derive(Debug, Clone, PartialEq)]
pub struct WordBall<P> {
    /// `levels[k]` holds the points first reached by a word of length `k`.
    pub levels: Vec<Vec<P>>,
    /// `diameters[k]` is the diameter of all points reached by words of
    /// length at most `k`.
    pub diameters: Vec<f64>,
    pub evaluations: usize,
}

impl<P: Clone> WordBall<P> {
    /// Points reachable with words of length at most `k`.
    pub fn ball(&self, k: usize) -> Vec<P> {
        self.levels[..=k.min(self.levels.len() - 1)]
            .iter()
            .flatten()
            .cloned()
            .collect()
    }
}

fn key(coords: &[f64]) -> Vec<i64> {
    coords.iter().map(|c| (c / KEY_STEP).round() as i64).collect()
}

/// Breadth-first exploration of `{w x : |w| ≤ max_len}` over the generators
/// and their inverses.
///
/// The image of a word only depends on the point it is applied to, so the
/// search expands each distinct point once, at the length of its shortest
/// word. Fails with [`Error::WordCapExceeded`] once more than `cap` map
/// evaluations would be needed.
pub fn word_ball_orbit<M: MetricModel>(
    model: &M,
    generators: &[M::Map],
    max_len: usize,
    x: &M::Point,
    cap: usize,
) -> Result<WordBall<M::Point>> {
    let mut letters = Vec::with_capacity(2 * generators.len());
    for (i, g) in generators.iter().enumerate() {
        let inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidMapping(format!("generator {i} is not invertible")))?;
        letters.push(g.clone());
        letters.push(inv);
    }

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(key(&model.coords(x)));
    let mut all = vec![x.clone()];
    let mut levels = vec![vec![x.clone()]];
    let mut diameters: Vec<f64> = vec![0.0];
    let mut evaluations = 0usize;

    for _ in 0..max_len {
        let frontier = levels.last().expect("at least the root level");
        if evaluations + frontier.len() * letters.len() > cap {
            return Err(Error::WordCapExceeded { cap });
        }
        let mut next = Vec::new();
        for p in frontier {
            for letter in &letters {
                evaluations += 1;
                let q = letter.apply(p);
                if seen.insert(key(&model.coords(&q))) {
                    next.push(q);
                }
            }
        }
        let mut diameter = *diameters.last().expect("nonempty");
        for (i, q) in next.iter().enumerate() {
            for p in all.iter().chain(&next[..i]) {
                diameter = diameter.max(model.dist(p, q));
            }
        }
        all.extend(next.iter().cloned());
        diameters.push(diameter);
        levels.push(next);
    }

    Ok(WordBall {
        levels,
        diameters,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::box_space::Point;
    use crate::group_action::mapping::BoxMap;
    use crate::model::BoxSpace;

    fn plane() -> BoxSpace {
        BoxSpace::cube(2, -1.0, 1.0).unwrap()
    }

    #[test]
    fn two_rotations_generate_unbounded_orbits() {
        let gens = vec![BoxMap::rotation2d([0.0, 0.0], 1), BoxMap::rotation2d([1.0, 0.0], 1)];
        let wb = word_ball_orbit(&plane(), &gens, 16, &Point::from([0.0, 0.0]), DEFAULT_WORD_CAP).unwrap();
        assert_eq!(wb.diameters.len(), 17);
        for k in 1..=8 {
            assert!(wb.diameters[2 * k] >= k as f64, "k = {k}: {}", wb.diameters[2 * k]);
        }
        assert!(wb.diameters.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity_generator_stays_put() {
        let wb = word_ball_orbit(&plane(), &[BoxMap::identity()], 5, &Point::from([0.3, 0.2]), 100).unwrap();
        assert!(wb.diameters.iter().all(|d| *d == 0.0));
        assert_eq!(wb.ball(5).len(), 1);
    }

    #[test]
    fn single_rotation_saturates() {
        let gens = vec![BoxMap::rotation2d([0.0, 0.0], 1)];
        let wb = word_ball_orbit(&plane(), &gens, 6, &Point::from([1.0, 0.0]), 100).unwrap();
        assert_eq!(wb.diameters[6], 2.0);
        assert_eq!(wb.ball(6).len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![BoxMap::rotation2d([0.0, 0.0], 1), BoxMap::rotation2d([1.0, 0.0], 1)];
        let err = word_ball_orbit(&plane(), &gens, 16, &Point::from([0.0, 0.0]), 50).unwrap_err();
        assert_eq!(err, Error::WordCapExceeded { cap: 50 });
    }
}
