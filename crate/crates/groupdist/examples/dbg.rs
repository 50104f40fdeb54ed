use groupdist::rainbow::mu_compute;
use std::time::Instant;

fn main() {
    for v in 2..=10 {
        let t0 = Instant::now();
        let c = mu_compute(1, v).unwrap();
        println!("mu(1,{v}) = {} ({:?})", c.value, t0.elapsed());
    }
    for v in 4..=10 {
        let t0 = Instant::now();
        let c = mu_compute(2, v).unwrap();
        println!("mu(2,{v}) = {} ({:?})", c.value, t0.elapsed());
    }
    for v in [6usize, 7, 8] {
        let t0 = Instant::now();
        let c = mu_compute(3, v).unwrap();
        println!("mu(3,{v}) = {} max_edges {} witnesses {} ({:?})", c.value, c.max_edges, c.witnesses.len(), t0.elapsed());
    }
}
