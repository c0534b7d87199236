//! Seeded simulation of the walk on a semaphore code, compared with the
//! exact stationary distribution and the exact expected time to reset.
//!
//!     cargo run --release --example monte_carlo -- [steps] [seed]

use resetwalk::walks::{simulate, stationary};
use resetwalk::{Alphabet, LetterDistribution, ResetProfile, Result, SemaphoreCode};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let steps: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);

    let ab = Alphabet::new(2)?;
    let pi = LetterDistribution::uniform(&ab);
    for code in [&["b", "ba", "baa", "aaa"][..], &["a", "ab", "abb", "bbb"]] {
        let code = SemaphoreCode::new(ab.clone(), code.iter().map(|w| ab.parse_word(w)).collect::<Result<_>>()?)?;
        let exact = stationary(&code, &pi)?;
        let sim = simulate(&code, &pi, steps, seed)?;
        let t = ResetProfile::of_words(code.words(), &pi, code.max_len()).hitting_time;
        println!("{code}");
        println!("  exact I    {:?}", exact.vector.render());
        println!("  empirical  {:?}", sim.frequencies);
        println!("  TV distance {:.5}", sim.total_variation(&exact.vector.values));
        println!("  mean reset time {:.4} over {} episodes (exact {t})", sim.mean_reset_time, sim.reset_times.len());
    }
    Ok(())
}
