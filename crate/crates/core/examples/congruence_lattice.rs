//! Enumerate RC(A^k) for small alphabets and report the lattice properties,
//! with a witness for every property that fails.
//!
//!     cargo run --release --example congruence_lattice -- [g k [max_carrier]]

use resetwalk::congruence::{enumerate_all_bounded, Lattice, DEFAULT_ENUMERATION_CARRIER};
use resetwalk::{Alphabet, Result};

fn census(g: usize, k: usize, max_carrier: usize) -> Result<()> {
    let alphabet = Alphabet::new(g)?;
    let lattice = Lattice::new(enumerate_all_bounded(&alphabet, k, max_carrier)?)?;
    let r = lattice.report();
    println!(
        "|A|={g} k={k}: {} congruences, {} atoms, semimodular={} modular={} atomistic={} jordan-dedekind={}",
        r.size,
        r.atoms.len(),
        r.semimodular,
        r.modular,
        r.atomistic,
        r.jordan_dedekind
    );
    let show = |i: usize| lattice.elements()[i].to_string();
    if let Some(p) = r.witnesses.modular {
        println!("  pentagon: bottom {}", show(p.bottom));
        println!("            lower  {}", show(p.lower));
        println!("            upper  {}", show(p.upper));
        println!("            side   {}", show(p.side));
        println!("            top    {}", show(p.top));
    }
    if let Some(x) = r.witnesses.atomistic {
        println!("  not a join of atoms: {}", show(x));
    }
    Ok(())
}

fn main() -> Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    match args[..] {
        [g, k] => census(g, k, DEFAULT_ENUMERATION_CARRIER),
        [g, k, max] => census(g, k, max),
        _ => {
            for (g, k) in [(2, 1), (3, 1), (4, 1), (2, 2), (2, 3)] {
                census(g, k, DEFAULT_ENUMERATION_CARRIER)?;
            }
            Ok(())
        }
    }
}
