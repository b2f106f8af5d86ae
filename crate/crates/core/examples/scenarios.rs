// Every verification scenario, printed as text.

use torsion_bench::exotic::DEFAULT_MAX_RANK;
use torsion_bench::scenario::run_all;
use torsion_bench::stems::StemsTable;

fn main() {
    let reports = run_all(&StemsTable::reference(), DEFAULT_MAX_RANK, true);
    for r in &reports {
        println!("{}", r.to_text());
    }
    let passed = reports.iter().filter(|r| r.passes()).count();
    println!("{passed}/{} scenarios passed", reports.len());
}
