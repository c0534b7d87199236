//! Probability of having reset after ℓ letters and the expected time to
//! reset, plus the polynomial-identity check on the reset code.

use resetwalk::walks::{check_polynomial_identity, reset_profile, sums_to_one_identically};
use resetwalk::{Alphabet, LetterDistribution, ResetProfile, Result, RightCongruence, Word};

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;
    let blocks: Vec<Vec<Word>> = [&["aaa", "aba", "baa"][..], &["bab", "aab"], &["abb"], &["bba"], &["bbb"]]
        .iter()
        .map(|b| b.iter().map(|w| ab.parse_word(w)).collect())
        .collect::<Result<_>>()?;
    let rho = RightCongruence::from_blocks(&ab, 3, &blocks)?;

    for pi in ["a=1/2,b=1/2", "a=1/3,b=2/3"] {
        let pi = LetterDistribution::parse(&ab, pi)?;
        let (p, t) = reset_profile(&rho, &pi)?.render();
        println!("π = {:?}: P = {p:?}, t = {t}", pi.to_map());
    }
    println!("P(k) = 1 identically: {}", check_polynomial_identity(&rho)?);

    // The same quantities for an explicit code.
    let code: Vec<Word> = ["a", "ab", "abb", "bbb"].iter().map(|w| ab.parse_word(w)).collect::<Result<_>>()?;
    let p = ResetProfile::of_words(&code, &LetterDistribution::uniform(&ab), 3);
    println!("{{a,ab,abb,bbb}}: {:?}", p.render());
    println!("dropping ab breaks the identity: {}", !sums_to_one_identically(&ab, &[code[0].clone(), code[2].clone(), code[3].clone()], 3)?);
    Ok(())
}
