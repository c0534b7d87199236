//! Exact stationary distributions: the closed form on a semaphore code, an
//! independent linear solve, and the lumped walk on congruence classes.

use resetwalk::json::rationals;
use resetwalk::walks::{debruijn_stationary, lumped, solve_stationary, stationary};
use resetwalk::{Alphabet, LetterDistribution, Result, RightCongruence, SemaphoreCode, Word};

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;
    let pi = LetterDistribution::parse(&ab, "a=1/3,b=2/3")?;

    let code = SemaphoreCode::new(ab.clone(), ["b", "ba", "baa", "aaa"].iter().map(|w| ab.parse_word(w)).collect::<Result<_>>()?)?;
    let report = stationary(&code, &pi)?;
    println!("states   {:?}", report.vector.labels);
    for (label, row) in report.vector.labels.iter().zip(report.matrix.render()) {
        println!("  T[{label}] = {row:?}");
    }
    println!("I        {:?}", report.vector.render());
    println!("solve    {:?}", solve_stationary(&report.matrix).map(|v| rationals(&v)));
    println!("irreducible {}, positive π {}", report.irreducible, report.positive);

    println!("de Bruijn, k=2: {:?}", debruijn_stationary(&pi, 2)?.render());

    let blocks: Vec<Vec<Word>> = [&["aaa", "aba", "baa"][..], &["bab", "aab"], &["abb"], &["bba"], &["bbb"]]
        .iter()
        .map(|b| b.iter().map(|w| ab.parse_word(w)).collect())
        .collect::<Result<_>>()?;
    let rho = RightCongruence::from_blocks(&ab, 3, &blocks)?;
    let l = lumped(&rho, &pi)?;
    for (block, p) in l.stationary.labels.iter().zip(l.stationary.render()) {
        println!("  I^ρ{block} = {p}");
    }
    Ok(())
}
