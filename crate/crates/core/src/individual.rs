//! Candidate solutions and Pareto dominance.

/// One candidate solution: a decision vector, its objective vector, and the
/// annotations written by environmental selection. Annotations are cleared
/// whenever a fresh individual is built and are only meaningful for the
/// candidate set of the selection step that produced them.
#[derive(Clone, Debug)]
pub struct Individual {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    /// Objectives mapped through the adaptive ideal/intercept normalization.
    pub normalized: Option<Vec<f64>>,
    /// Index of the associated reference point.
    pub assoc: Option<usize>,
    /// Non-domination front index (0 = best).
    pub front: Option<usize>,
    /// Place of this individual in its niche's ranking (0 = niche best).
    pub cod_rank: Option<usize>,
}

impl Individual {
    pub fn new(decision: Vec<f64>, objectives: Vec<f64>) -> Self {
        Self {
            decision,
            objectives,
            normalized: None,
            assoc: None,
            front: None,
            cod_rank: None,
        }
    }

    /// The normalized objectives; panics if selection has not stamped them.
    pub fn normalized(&self) -> &[f64] {
        self.normalized
            .as_deref()
            .expect("individual has no normalized objectives yet")
    }
}

/// Pareto dominance for minimization: `a` dominates `b` iff `a[j] <= b[j]`
/// for all `j` and `a[j] < b[j]` for at least one `j`. Equal vectors do not
/// dominate each other.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective length mismatch");
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use proptest::prelude::*;

    #[test]
    fn strict_and_weak_components() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]));
        assert!(dominates(&[1.0, 2.0], &[1.0, 3.0]));
        assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0]));
        assert!(!dominates(&[2.0, 3.0], &[1.0, 2.0]));
    }

    #[test]
    fn equal_vectors_do_not_dominate() {
        let v = [0.3, 0.3, 0.4];
        assert!(!dominates(&v, &v));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn length_mismatch_panics() {
        dominates(&[1.0], &[1.0, 2.0]);
    }

    #[test]
    fn transitive_on_random_triples() {
        // Dominance is a strict partial order; check transitivity
        // exhaustively over triples from a random pool.
        let mut rng = RngStream::new(23);
        let pool: Vec<Vec<f64>> = (0..24)
            .map(|_| (0..3).map(|_| (rng.below(4)) as f64).collect())
            .collect();
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    if dominates(a, b) && dominates(b, c) {
                        assert!(dominates(a, c));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn irreflexive(v in proptest::collection::vec(-1e6..1e6f64, 1..6)) {
            prop_assert!(!dominates(&v, &v));
        }

        #[test]
        fn antisymmetric(
            a in proptest::collection::vec(-1e3..1e3f64, 3),
            b in proptest::collection::vec(-1e3..1e3f64, 3),
        ) {
            prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        }

        #[test]
        fn translation_invariant(
            a in proptest::collection::vec(-1e3..1e3f64, 3),
            b in proptest::collection::vec(-1e3..1e3f64, 3),
            c in -1e3..1e3f64,
        ) {
            let at: Vec<f64> = a.iter().map(|x| x + c).collect();
            let bt: Vec<f64> = b.iter().map(|x| x + c).collect();
            // Shifting both vectors by the same constant preserves every
            // componentwise comparison exactly when the shift is exact;
            // with arbitrary f64 shifts the comparisons can only change
            // where components are within rounding of each other, so test
            // with a safely separated pair.
            prop_assume!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() > 1e-6));
            prop_assert_eq!(dominates(&a, &b), dominates(&at, &bt));
        }
    }
}
