// The triangulated category of free Z/4-modules: enumerate the
// distinguished triangles at rank ≤ 2 and check axiom instances.

use torsion_bench::exotic::{check_tr1_cone, distinguished_class, two_order_zero_certificate, verify, Z4Matrix};
use torsion_bench::Result;

fn main() -> Result<()> {
    let class = distinguished_class(2)?;
    for f in [Z4Matrix::scalar(1, 2), Z4Matrix::identity(1), Z4Matrix::zero(1, 1)] {
        match check_tr1_cone(&class, &f) {
            Some(t) => println!("cone of {f}: {t}"),
            None => println!("cone of {f}: rank above 2"),
        }
    }
    let report = verify(2)?;
    println!("{report:#?}");
    assert!(report.passes());
    let cert = two_order_zero_certificate()?;
    println!("{cert:#?}");
    Ok(())
}
