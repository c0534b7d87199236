//! Semaphore codes: the check with its witness, codes generated by a set of
//! words, restriction to A^k, and the right action.

use resetwalk::code::{from_generators, is_semaphore, restrict_k, tau_of};
use resetwalk::{Alphabet, Result, SemaphoreCode, Word};

fn words(ab: &Alphabet, s: &str) -> Result<Vec<Word>> {
    s.split(',').map(|w| ab.parse_word(w)).collect()
}

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;

    let d = is_semaphore(&ab, &words(&ab, "a,bb")?);
    println!("{{a,bb}}: {}", d.describe(&ab));

    let g = from_generators(&ab, &words(&ab, "aa,ab,bb")?, 6);
    let shown: Vec<String> = g.words.iter().map(|w| w.to_string()).collect();
    println!("code generated by {{aa,ab,bb}}: {{{}}} (infinite: {})", shown.join(","), g.infinite_tail);

    // ba* is infinite; enumerate it far enough, then cut it down to A^3.
    let ba = from_generators(&ab, &words(&ab, "b")?, 5);
    println!("ba* up to length 5: {} words, infinite tail: {}", ba.words.len(), ba.infinite_tail);
    let s3 = ba.restrict_k(3)?;
    println!("restricted to A^3: {}", s3.code());
    println!("τ of that ideal: {}", tau_of(&s3));

    let code = SemaphoreCode::new(ab.clone(), words(&ab, "a,ab,abb,bbb")?)?;
    for s in code.words() {
        let moves: Vec<String> = (0..2u8)
            .map(|a| Ok(format!("{}→{}", ab.letter(a), code.action(s, a)?)))
            .collect::<Result<_>>()?;
        println!("  {s}: {}", moves.join(" "));
    }
    println!("S_2 = {}", restrict_k(&code, 2)?.code());
    Ok(())
}
