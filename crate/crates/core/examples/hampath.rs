//! Hamiltonian paths in directed graphs, and graphs as numbers.
//!
//!     cargo run --example hampath

use primrec::np::{self, Digraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let line = Digraph::new(3, [(1, 2), (2, 3)], 1, 3)?;
    let x = np::encode_graph(&line);
    println!("s -> m -> t: number {x}, H = {}, {:?}", np::hampath_fn(&x)?, np::hampath_brute(&line)?);
    assert_eq!(np::decode_graph(&x)?, line);

    let complete: Vec<(usize, usize)> = (1..=4).flat_map(|u| (1..=4).filter(move |&w| w != u).map(move |w| (u, w))).collect();
    let k4 = Digraph::new(4, complete, 2, 3)?;
    println!("complete on 4 nodes: {:?}", np::hampath_brute(&k4)?);

    let apart = Digraph::new(2, [], 1, 2)?;
    println!("two nodes, no edges: {:?}", np::hampath_brute(&apart)?);

    let g = np::parse_graph("nodes: 4\ns: 1\nt: 4\nedge: 1 3\nedge: 3 2\nedge: 2 4\nedge: 1 2\n")?;
    print!("{}", np::render_graph(&g));
    println!("{:?}", np::hampath_brute(&g)?);
    Ok(())
}
