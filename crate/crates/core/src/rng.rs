//! Seeded per-sample random streams.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

/// The stream for sample `index` under `seed`. Each sample owns its stream,
/// so raising a budget never changes earlier samples.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform direction on the unit sphere.
pub fn unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let n = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}
