//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

/// The general correlation form
/// `Σ a_ij b_ij / sqrt(Σ a_ij² · Σ b_ij²)` with
/// `a_ij = sqrt(w_i w_j) g(a_j − a_i)`, evaluated as a plain double sum.
pub fn general_gamma(a: &[f64], b: &[f64], w: &[f64], g: impl Fn(f64) -> f64) -> f64 {
    let n = a.len();
    let (mut num, mut da, mut db) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let s = (w[i] * w[j]).sqrt();
            let aij = s * g(a[j] - a[i]);
            let bij = s * g(b[j] - b[i]);
            num += aij * bij;
            da += aij * aij;
            db += bij * bij;
        }
    }
    num / (da * db).sqrt()
}

pub fn brute_spearman(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    general_gamma(a, b, w, |d| d)
}

pub fn brute_kendall(a: &[f64], b: &[f64], w: &[f64]) -> f64 {
    general_gamma(a, b, w, |d| {
        if d > 0.0 {
            1.0
        } else if d < 0.0 {
            -1.0
        } else {
            0.0
        }
    })
}

/// Average ranks by sorting and scanning, without the library routine.
pub fn naive_ranks(scores: &[f64]) -> Vec<f64> {
    scores
        .iter()
        .map(|&s| {
            let better = scores.iter().filter(|&&t| t > s).count() as f64;
            let equal = scores.iter().filter(|&&t| t == s).count() as f64;
            better + (equal + 1.0) / 2.0
        })
        .collect()
}

/// A synthetic "embedding" similarity sample: cosines between a reference
/// vector and `n` random vectors pulled towards it by a Beta(2,5) amount.
pub fn sampled_cosines(n: usize, dim: usize, seed: u64) -> Vec<f64> {
    use rand::SeedableRng;
    use rand_distr::{Beta, Distribution, StandardNormal};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let unit = |rng: &mut rand_chacha::ChaCha8Rng| {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / norm).collect::<Vec<_>>()
    };
    let reference = unit(&mut rng);
    let beta = Beta::new(2.0, 5.0).unwrap();
    (0..n)
        .map(|_| {
            let lambda: f64 = beta.sample(&mut rng);
            let noise = unit(&mut rng);
            let v: Vec<f64> = reference
                .iter()
                .zip(&noise)
                .map(|(r, e)| lambda * r + (1.0 - lambda) * e)
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let cos = v.iter().zip(&reference).map(|(a, b)| a * b).sum::<f64>() / norm;
            cos.clamp(-1.0, 1.0)
        })
        .collect()
}

/// Writes one value per line with a comment header.
pub fn write_similarity_file(path: &std::path::Path, values: &[f64]) {
    use std::io::Write;
    let mut f = std::fs::File::create(path).unwrap();
    writeln!(f, "# sampled cosine similarities").unwrap();
    for v in values {
        writeln!(f, "{v}").unwrap();
    }
}
