//! Compensated (Neumaier) summation.

/// Running sum with a Neumaier correction term.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum in, keeping both correction terms.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        // Naive summation returns 0 here.
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(CompensatedSum::sum_iter(xs), 2.0);
    }

    #[test]
    fn merge_matches_single_pass_on_exact_data() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let whole = CompensatedSum::sum_iter(xs.iter().copied());
        let mut left = CompensatedSum::new();
        let mut right = CompensatedSum::new();
        for &x in &xs[..500] {
            left.add(x);
        }
        for &x in &xs[500..] {
            right.add(x);
        }
        left.merge(&right);
        assert!((left.value() - whole).abs() < 1e-15);
    }
}
