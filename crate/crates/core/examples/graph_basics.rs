//! Build graphs, encode them as graph6 and compare canonical forms.

use deckrecon::graph::graph6;
use deckrecon::{canonical_form, gen_graph, Graph, Model};

fn main() -> deckrecon::Result<()> {
    let petersen = {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.set_edge(i, (i + 1) % 5, true);
            g.set_edge(5 + i, 5 + (i + 2) % 5, true);
            g.set_edge(i, 5 + i, true);
        }
        g
    };
    println!("petersen: {} edges, graph6 {}", petersen.edge_count(), graph6::encode(&petersen));
    println!("degree spectrum: {:?}", petersen.degree_spectrum().counts());

    let relabelled = petersen.permuted(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]);
    let same = canonical_form(&petersen)? == canonical_form(&relabelled)?;
    println!("relabelled copy has the same canonical form: {same}");

    let cubic = gen_graph(&Model::Regular(3), 10, 4)?;
    println!("a random cubic graph on 10 vertices: {}", graph6::encode(&cubic));
    println!("isomorphic to petersen: {}", canonical_form(&cubic)? == canonical_form(&petersen)?);
    println!("complement has {} edges", petersen.complement().edge_count());
    Ok(())
}
