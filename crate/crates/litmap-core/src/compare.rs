//! Partition agreement scores against planted ground truth.

use std::collections::HashMap;

type Contingency = (HashMap<(usize, usize), f64>, Vec<f64>, Vec<f64>);

fn contingency(a: &[usize], b: &[usize]) -> Contingency {
    assert_eq!(a.len(), b.len(), "partitions must cover the same nodes");
    let ka = a.iter().copied().max().map_or(0, |m| m + 1);
    let kb = b.iter().copied().max().map_or(0, |m| m + 1);
    let mut table: HashMap<(usize, usize), f64> = HashMap::new();
    let mut row = vec![0.0; ka];
    let mut col = vec![0.0; kb];
    for (&x, &y) in a.iter().zip(b) {
        *table.entry((x, y)).or_insert(0.0) += 1.0;
        row[x] += 1.0;
        col[y] += 1.0;
    }
    (table, row, col)
}

/// Normalized mutual information, arithmetic normalization 2I/(H_a + H_b).
/// Two trivial single-cluster partitions score 1; a trivial partition against
/// a structured one scores 0.
pub fn nmi(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    if a.is_empty() {
        return 1.0;
    }
    let (table, row, col) = contingency(a, b);
    let entropy = |counts: &[f64]| -> f64 {
        counts
            .iter()
            .filter(|&&c| c > 0.0)
            .map(|&c| {
                let p = c / n;
                -p * p.ln()
            })
            .sum()
    };
    let ha = entropy(&row);
    let hb = entropy(&col);
    if ha == 0.0 && hb == 0.0 {
        return 1.0;
    }
    if ha == 0.0 || hb == 0.0 {
        return 0.0;
    }
    let mut mi = 0.0;
    for (&(x, y), &nxy) in &table {
        if nxy > 0.0 {
            mi += (nxy / n) * ((n * nxy) / (row[x] * col[y])).ln();
        }
    }
    (2.0 * mi / (ha + hb)).clamp(0.0, 1.0)
}

/// Adjusted Rand index. 1 for identical partitions, ~0 for independent ones.
pub fn ari(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    if a.len() < 2 {
        return 1.0;
    }
    let (table, row, col) = contingency(a, b);
    let choose2 = |x: f64| x * (x - 1.0) / 2.0;
    let sum_table: f64 = table.values().map(|&c| choose2(c)).sum();
    let sum_row: f64 = row.iter().map(|&c| choose2(c)).sum();
    let sum_col: f64 = col.iter().map(|&c| choose2(c)).sum();
    let total = choose2(n);
    let expected = sum_row * sum_col / total;
    let max_index = 0.5 * (sum_row + sum_col);
    if (max_index - expected).abs() < 1e-15 {
        // Both partitions trivial in the same way.
        return 1.0;
    }
    (sum_table - expected) / (max_index - expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_partitions_score_one() {
        let a = vec![0, 0, 1, 1, 2, 2];
        assert!((nmi(&a, &a) - 1.0).abs() < 1e-12);
        assert!((ari(&a, &a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relabeling_is_invisible() {
        let a = vec![0, 0, 1, 1, 2, 2];
        let b = vec![2, 2, 0, 0, 1, 1];
        assert!((nmi(&a, &b) - 1.0).abs() < 1e-12);
        assert!((ari(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_vs_structured() {
        let a = vec![0, 0, 0, 0];
        let b = vec![0, 0, 1, 1];
        assert_eq!(nmi(&a, &b), 0.0);
    }

    #[test]
    fn half_agreement_lands_between() {
        let a = vec![0, 0, 0, 0, 1, 1, 1, 1];
        let b = vec![0, 0, 1, 1, 1, 1, 0, 0];
        let score = ari(&a, &b);
        assert!(score < 0.2, "ari = {score}");
        let score = nmi(&a, &b);
        assert!(score < 0.2, "nmi = {score}");
    }
}
