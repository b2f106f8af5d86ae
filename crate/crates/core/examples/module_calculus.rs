// Moore modules, Cartan tensor products and direct-sum decompositions.

use torsion_bench::adem::{parse_expression, Generator};
use torsion_bench::modules::{direct_sum, is_decomposable, moore_module, shift, tensor, ModuleFile};
use torsion_bench::{Prime, Result};

fn main() -> Result<()> {
    let p = Prime::TWO;
    let m = moore_module(p);
    let square = tensor(&m, &m)?;
    println!("H*(S/2 ∧ S/2): dims {:?}, labels {:?}", square.dims(), square.labels(1));
    println!("Sq^1 from degree 0: {:?}", square.generator_matrix(Generator::Sq(1), 0).to_rows());
    let sq2 = parse_expression("Sq^2", p)?;
    println!("Sq^2 from degree 0: {:?}", square.act_element(&sq2, 0)?.to_rows());
    println!("decomposable: {}", is_decomposable(&square)?.is_decomposable());

    let split = direct_sum(&m, &shift(&m, 1))?;
    let d = is_decomposable(&split)?;
    let s = d.splitting().expect("a direct sum splits");
    println!("H*(S/2) ⊕ H*(S/2)[1] splits into {:?} and {:?}", s.image.dims(), s.kernel.dims());

    // the same module through the JSON file format
    let text = ModuleFile::to_json(&square);
    assert_eq!(ModuleFile::from_json(&text)?, square);
    println!("{text}");
    Ok(())
}
