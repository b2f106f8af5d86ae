// Homotopy of Moore spectra from the long exact sequence, with the
// built-in stems and with a literature file.

use torsion_bench::stems::{
    associator_obstruction, moore_endomorphisms, moore_homotopy, mult_by_n, AbelianGroup, StemsTable,
};
use torsion_bench::Result;

fn main() -> Result<()> {
    let t = StemsTable::reference();
    for k in 0..=3 {
        let row: Vec<String> =
            [2, 3, 5].iter().map(|&n| format!("π_{k}(S/{n}) = {}", moore_homotopy(&t, n, k))).collect();
        println!("{}", row.join("   "));
    }
    println!("π_22(S/3) = {}", moore_homotopy(&t, 3, 22));
    println!("multiplication by 3 on Z/24: {:?}", mult_by_n(&AbelianGroup::cyclic(24), 3));

    for n in [2, 3, 4, 5, 9, 15] {
        let e = moore_endomorphisms(&t, n);
        println!("[S/{n}, S/{n}] = {}  (identity order {:?})", e.group, e.identity_order);
    }
    for n in [2, 3, 5, 7, 25, 35] {
        println!("associativity obstruction for S/{n}: {}", associator_obstruction(&t, n));
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/stems_literature.json");
    let lit = StemsTable::with_file(path)?;
    for k in [7, 8, 11] {
        println!(
            "with literature values: π_{k}(S/2) = {}, π_{k}(S/3) = {}",
            moore_homotopy(&lit, 2, k),
            moore_homotopy(&lit, 3, k)
        );
    }
    Ok(())
}
