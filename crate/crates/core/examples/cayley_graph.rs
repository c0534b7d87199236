//! The Cayley graph of a right congruence, its reset words, the round trip
//! through ζ, and a Graphviz export.
//!
//!     cargo run --example cayley_graph > eq1.dot

use resetwalk::{resets, AGraph, Alphabet, Result, RightCongruence, Word};

fn main() -> Result<()> {
    let ab = Alphabet::new(2)?;
    let blocks: Vec<Vec<Word>> = [
        &["aaa", "aba", "baa"][..],
        &["bab", "aab"],
        &["abb"],
        &["bba"],
        &["bbb"],
    ]
    .iter()
    .map(|b| b.iter().map(|w| ab.parse_word(w)).collect())
    .collect::<Result<_>>()?;
    let rho = RightCongruence::from_blocks(&ab, 3, &blocks)?;

    let cay = AGraph::cayley(&rho);
    eprintln!("{} vertices, 3-reset: {}", cay.num_vertices(), cay.is_k_reset(3)?);
    eprintln!("ζ(Cay(ρ)) = ρ: {}", cay.zeta(3)? == rho);
    eprintln!("ab resets: {}, b resets: {}", cay.is_reset(&ab.parse_word("ab")?), cay.is_reset(&ab.parse_word("b")?));
    eprintln!("Res(ρ) generators: {}", resets(&rho).code());

    // Cay(ρ) is the quotient of the de Bruijn graph.
    let debruijn = AGraph::de_bruijn(&ab, 3)?;
    eprintln!("de Bruijn → Cay(ρ) morphism: {:?}", debruijn.morphism_to(&cay)?);

    print!("{}", cay.to_dot());
    Ok(())
}
