// Parse expressions in the Steenrod algebra and reduce them to the
// admissible basis.

use torsion_bench::adem::{admissible_basis, normalize, parse_expression};
use torsion_bench::{Prime, Result};

fn main() -> Result<()> {
    let two = Prime::TWO;
    for text in ["Sq^1 Sq^1", "Sq^2 Sq^2", "Sq^3 Sq^2", "Sq^2 Sq^4 + Sq^6"] {
        let e = parse_expression(text, two)?;
        println!("p=2  {text:<18} = {}", normalize(&e));
    }

    let three = Prime::THREE;
    let cube = normalize(&parse_expression("(P^3)^3", three)?);
    let other = normalize(&parse_expression("(P^7 P^1 - P^8) P^1", three)?);
    println!("p=3  (P^3)^3            = {cube}");
    println!("p=3  (P^7 P^1 - P^8)P^1 = {other}");
    assert_eq!(cube, other);

    for text in ["P^1 P^1", "P^1 b P^1", "b b"] {
        println!("p=3  {text:<18} = {}", normalize(&parse_expression(text, three)?));
    }

    for (p, d) in [(two, 9), (three, 13), (Prime::FIVE, 17)] {
        let basis: Vec<String> = admissible_basis(p, d).iter().map(ToString::to_string).collect();
        println!("admissible basis p={p} degree {d}: {}", basis.join(", "));
    }
    Ok(())
}
