//! Articulation points of a partially deactivated graph and the components
//! left after removing them.

use sfcm::articulation::{articulation_points, components_minus_vh};
use sfcm::Graph;

fn main() {
    // two triangles joined through vertex 2, with a pendant path 5-6-7
    let g = Graph::from_edges("bowtie", 8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 6), (6, 7)])
        .unwrap();
    let mut active = vec![true; g.n()];
    for round in 0..2 {
        let vh = articulation_points(&g, &active);
        println!("active {:?}", (0..g.n()).filter(|&v| active[v]).collect::<Vec<_>>());
        println!("  cut vertices {vh:?}");
        for c in components_minus_vh(&g, &active, &vh) {
            println!(
                "  component {:?}  |H^n| = {}  boundary {:?}  attachments {:?}{}",
                c.members,
                c.hn_value,
                c.hn_boundary,
                c.attachments,
                if c.is_detached() { "  (detached)" } else { "" }
            );
        }
        if round == 0 {
            active[7] = false;
            active[3] = false;
        }
    }
}
