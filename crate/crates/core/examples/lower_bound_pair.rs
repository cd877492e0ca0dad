//! Two clique unions of different sizes sharing 2p cards.

use deckrecon::adversary::bbf_pair;

fn main() -> deckrecon::Result<()> {
    println!(" p   n  e(G)  e(H)  common  2p");
    for p in 2..=10 {
        let b = bbf_pair(p)?;
        println!("{p:>2} {:>3} {:>5} {:>5} {:>7} {:>3}", b.n, b.edges_g, b.edges_h, b.common, 2 * p);
    }
    Ok(())
}
