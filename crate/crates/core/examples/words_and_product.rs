//! Words of A^k, the truncated product `u ∘ v`, and the suffix/prefix/factor
//! orders.

use resetwalk::words::{lcs, product, words_of_length};
use resetwalk::{Alphabet, Result};

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;
    let w = |s: &str| ab.parse_word(s);

    // u ∘ v keeps the last k letters of uv.
    for (u, v) in [("ab", "b"), ("a", "bab"), ("bb", "a")] {
        let p = product(&w(u)?, &w(v)?, 3)?;
        println!("{u} ∘ {v} = {p}   (k = 3)");
    }

    let (x, y) = (w("abab")?, w("bab")?);
    println!("{y} suffix of {x}: {}", y.is_suffix_of(&x));
    println!("{y} prefix of {x}: {}", y.is_prefix_of(&x));
    println!("ba factor of {x}: {}", w("ba")?.is_factor_of(&x));
    println!("lcs(aab, bab) = {}", lcs(&w("aab")?, &w("bab")?));

    let all: Vec<String> = words_of_length(&ab, 3)?.iter().map(|w| w.to_string()).collect();
    println!("A^3 = {}", all.join(" "));
    Ok(())
}
