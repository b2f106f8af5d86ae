// Adem consistency as an obstruction to realizability: the mod-3
// cohomology that a cone with cells in dimensions 0, 12, 24, 36 attached
// by β_1 would need cannot satisfy (P^3)^3 = (P^7 P^1 - P^8) P^1.

use torsion_bench::modules::{consistency_check, hypothetical_cb_module, moore_module, violation_classes};
use torsion_bench::Prime;

fn main() {
    let m = hypothetical_cb_module();
    println!("dims: {:?}", m.dims());
    let violations = consistency_check(&m, 40);
    for class in violation_classes(&violations) {
        println!("degree {} → {}:", class.source_degree, class.target_degree);
        for v in &class.violations {
            println!("  {} = {}   ({:?} vs {:?})", v.relation.0, v.relation.1, v.left_image, v.right_image);
        }
    }
    for p in [2, 3, 5] {
        let ok = consistency_check(&moore_module(Prime::new(p).unwrap()), 40).is_empty();
        println!("mod-{p} Moore module consistent: {ok}");
    }
}
