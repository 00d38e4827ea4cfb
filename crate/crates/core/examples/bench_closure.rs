use std::time::Instant;
use tautcalc::relations::{check_w, Bidegree};

fn main() {
    for (genus, bound) in [(2u32, 5u32), (3, 7), (4, 8), (5, 9)] {
        let t = Instant::now();
        let (v, span) = check_w(genus, bound).unwrap();
        println!(
            "genus {genus} bound {bound}: {} dim(2,2)={} derivations={} in {:?}",
            v.flag,
            span.dimension(Bidegree::new(2, 2)),
            span.derivations().len(),
            t.elapsed()
        );
    }
}
