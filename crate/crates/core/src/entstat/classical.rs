//! Guessing probabilities and non-uniformity for purely classical side
//! information, given joint tables `table[observation][value]`.

/// `Σ_e max_x P(x, e)`
pub fn guess_prob_table(table: &[Vec<f64>]) -> f64 {
    table
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum()
}

/// Same quantity by enumerating every deterministic guessing strategy
/// `g: observations → values`. Exponential; meant for tiny alphabets.
pub fn guess_prob_exhaustive(table: &[Vec<f64>]) -> f64 {
    let n_obs = table.len();
    let n_val = table.first().map_or(0, Vec::len);
    if n_obs == 0 || n_val == 0 {
        return 0.0;
    }
    let mut strategy = vec![0usize; n_obs];
    let mut best = f64::NEG_INFINITY;
    loop {
        let success: f64 = strategy.iter().enumerate().map(|(e, &g)| table[e][g]).sum();
        best = best.max(success);
        // odometer increment
        let mut i = 0;
        loop {
            if i == n_obs {
                return best;
            }
            strategy[i] += 1;
            if strategy[i] < n_val {
                break;
            }
            strategy[i] = 0;
            i += 1;
        }
    }
}

/// `d(X|E) = ½ Σ_e Σ_x |P(x,e) − P(e)/|X||`
pub fn non_uniformity_table(table: &[Vec<f64>]) -> f64 {
    let n_val = table.first().map_or(1, Vec::len) as f64;
    0.5 * table
        .iter()
        .map(|row| {
            let pe: f64 = row.iter().sum();
            row.iter().map(|&p| (p - pe / n_val).abs()).sum::<f64>()
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_enumeration() {
        let t = vec![
            vec![0.1, 0.2, 0.05],
            vec![0.3, 0.0, 0.1],
            vec![0.05, 0.1, 0.1],
        ];
        assert!((guess_prob_table(&t) - 0.6).abs() < 1e-15);
        assert!((guess_prob_exhaustive(&t) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn nonuniformity_of_constant() {
        let t = vec![vec![1.0, 0.0]];
        assert!((non_uniformity_table(&t) - 0.5).abs() < 1e-15);
        let u = vec![vec![0.25, 0.25], vec![0.25, 0.25]];
        assert_eq!(non_uniformity_table(&u), 0.0);
    }
}
