use std::time::Instant;
use tubeknot::enumerate::{pattern_census, CensusOptions};
use tubeknot::knots::{PrimeKnot, TREFOIL};
use tubeknot::lattice::Tube;

#[test]
#[ignore]
fn census_timing() {
    let targets = Some(vec![TREFOIL, PrimeKnot::new(4, 1), PrimeKnot::new(5, 1), PrimeKnot::new(5, 2)]);
    for (l, m, span) in [(2, 1, 6), (2, 1, 7), (3, 1, 4)] {
        let t = Tube::new(l, m);
        let opts = CensusOptions { targets: targets.clone(), ..Default::default() };
        let t0 = Instant::now();
        let c = pattern_census(&t, span, &opts).unwrap();
        println!("T{}x{} span {}: nodes={} secs={:.2}", l, m, span, c.nodes, t0.elapsed().as_secs_f64());
        for ((k, cl), n) in &c.counts {
            println!("  {} {:?}: all={} ham={}", k, cl, n.all, n.hamiltonian);
        }
    }
}
