//! Special right congruences: Λ, the test for being special, and the best
//! special approximations from below (via reset words) and above (via Λ).

use resetwalk::code::{is_special, lambda_of, lower_approx, tau_of, upper_approx};
use resetwalk::{Alphabet, IdealRep, Result, RightCongruence, Word};

fn congruence(ab: &Alphabet, spec: &str) -> Result<RightCongruence> {
    let blocks: Vec<Vec<Word>> = spec
        .split(' ')
        .map(|b| b.split(',').map(|w| ab.parse_word(w)).collect())
        .collect::<Result<_>>()?;
    RightCongruence::from_blocks(ab, 3, &blocks)
}

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;
    let rho = congruence(&ab, "aaa,aba,baa bab,aab abb bba bbb")?;
    let rho2 = congruence(&ab, "aaa,bba,baa bab,aab abb aba bbb")?;

    for (name, r) in [("ρ", &rho), ("ρ'", &rho2)] {
        let l = lambda_of(r)?;
        let shown: Vec<String> = l.lambda.iter().map(|w| w.to_string()).collect();
        println!("{name} = {r}");
        println!("  special: {}", is_special(r)?);
        println!("  Λ = {{{}}}", shown.join(","));
        let (low, res) = lower_approx(r)?;
        let (up, lam) = upper_approx(r)?;
        println!("  lower: {low}   code {}", res.code());
        println!("  upper: {up}   code {}", lam.code());
    }

    // An SRC strictly between the two approximations.
    let i = IdealRep::generated_by(&ab, 3, &[ab.parse_word("aa")?, ab.parse_word("ab")?, ab.parse_word("ba")?])?;
    println!("τ_I for the ideal with code {}: {}", i.code(), tau_of(&i));
    Ok(())
}
