use std::collections::BTreeMap;

use super::FiniteModule;
use crate::adem::Generator;
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::prime::Prime;

/// Cohomology of the mod-p Moore spectrum: classes in degrees 0 and 1
/// joined by the Bockstein.
pub fn moore_module(p: Prime) -> FiniteModule {
    let mut m = FiniteModule::with_dims(p, [(0, 1), (1, 1)]);
    m.set_action(Generator::bockstein(p), 0, FpMatrix::identity(p, 1)).expect("valid shape");
    m
}

/// One class in degree d, all actions zero.
pub fn sphere_module(p: Prime, d: i64) -> FiniteModule {
    FiniteModule::with_dims(p, [(d, 1)])
}

pub fn shift(m: &FiniteModule, k: i64) -> FiniteModule {
    FiniteModule {
        prime: m.prime,
        dims: m.dims.iter().map(|(&d, &n)| (d + k, n)).collect(),
        actions: m.actions.iter().map(|(&(g, d), a)| ((g, d + k), a.clone())).collect(),
        labels: m.labels.iter().map(|(&d, l)| (d + k, l.clone())).collect(),
    }
}

pub fn direct_sum(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    let p = a.prime;
    let degrees: Vec<i64> = a.degrees().chain(b.degrees()).collect();
    let mut out = FiniteModule::with_dims(p, degrees.iter().map(|&d| (d, a.dim(d) + b.dim(d))));
    for (&d, n) in &out.dims.clone() {
        let mut labels: Vec<String> = a.labels(d).iter().map(|l| format!("{l}'")).collect();
        labels.extend(b.labels(d).iter().map(|l| format!("{l}''")));
        if labels.len() == *n {
            out.labels.insert(d, labels);
        }
    }
    let keys: std::collections::BTreeSet<(Generator, i64)> =
        a.actions.keys().chain(b.actions.keys()).copied().collect();
    for (g, d) in keys {
        let m = a.generator_matrix(g, d).block_diag(&b.generator_matrix(g, d));
        out.set_action(g, d, m)?;
    }
    Ok(out)
}

/// Basis of (A ⊗ B)_n: pairs (i, a, n - i, b) ordered by i, then a, then b.
pub fn tensor_basis(a: &FiniteModule, b: &FiniteModule, n: i64) -> Vec<(i64, usize, i64, usize)> {
    let mut out = Vec::new();
    for (&i, &da) in &a.dims {
        let db = b.dim(n - i);
        for x in 0..da {
            for y in 0..db {
                out.push((i, x, n - i, y));
            }
        }
    }
    out
}

/// Coproduct of a generator as (left, right) pairs; `None` is the unit.
fn coproduct(g: Generator) -> Vec<(Option<Generator>, Option<Generator>)> {
    let nz = |f: fn(u32) -> Generator, i: u32| (i > 0).then(|| f(i));
    match g {
        Generator::Sq(n) => (0..=n).map(|i| (nz(Generator::Sq, i), nz(Generator::Sq, n - i))).collect(),
        Generator::P(n) => (0..=n).map(|i| (nz(Generator::P, i), nz(Generator::P, n - i))).collect(),
        Generator::Bockstein => vec![(Some(Generator::Bockstein), None), (None, Some(Generator::Bockstein))],
    }
}

fn component(m: &FiniteModule, g: Option<Generator>, d: i64) -> FpMatrix {
    match g {
        None => FpMatrix::identity(m.prime, m.dim(d)),
        Some(g) => m.generator_matrix(g, d),
    }
}

/// Tensor product with the Cartan formula. At odd p the Bockstein is
/// primitive with the Koszul sign: β(x ⊗ y) = βx ⊗ y + (-1)^|x| x ⊗ βy;
/// reduced powers have no Bockstein component in their coproduct.
pub fn tensor(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    let p = a.prime;
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (&i, &da) in &a.dims {
        for (&j, &db) in &b.dims {
            *dims.entry(i + j).or_insert(0) += da * db;
        }
    }
    let mut out = FiniteModule::with_dims(p, dims.clone());
    for &n in dims.keys() {
        let labels = tensor_basis(a, b, n)
            .into_iter()
            .map(|(i, x, j, y)| format!("{}⊗{}", a.labels(i)[x], b.labels(j)[y]))
            .collect();
        out.set_labels(n, labels)?;
    }

    let span = out.span();
    let gens = Generator::up_to_degree(p, span);
    // offsets of the (i, j) blocks inside each total degree
    let offsets = |n: i64| -> BTreeMap<i64, usize> {
        let mut acc = 0;
        let mut map = BTreeMap::new();
        for (&i, &da) in &a.dims {
            let db = b.dim(n - i);
            if db > 0 {
                map.insert(i, acc);
                acc += da * db;
            }
        }
        map
    };
    for &n in dims.keys() {
        let src_off = offsets(n);
        for &g in &gens {
            let t = n + g.degree(p);
            if out.dim(t) == 0 {
                continue;
            }
            let tgt_off = offsets(t);
            let mut mat = FpMatrix::zero(p, out.dim(t), out.dim(n));
            for (&i, &so) in &src_off {
                let j = n - i;
                for (left, right) in coproduct(g) {
                    let dl = left.map_or(0, |h| h.degree(p));
                    let dr = right.map_or(0, |h| h.degree(p));
                    let (ti, tj) = (i + dl, j + dr);
                    let Some(&to) = tgt_off.get(&ti) else { continue };
                    if b.dim(tj) == 0 {
                        continue;
                    }
                    let ma = component(a, left, i);
                    let mb = component(b, right, j);
                    if ma.is_zero() || mb.is_zero() {
                        continue;
                    }
                    let mut block = ma.kronecker(&mb);
                    if (dr * i).rem_euclid(2) == 1 {
                        block = block.scale(p.value() - 1);
                    }
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            let v = p.add(mat.get(to + r, so + c), block.get(r, c));
                            mat.set(to + r, so + c, v);
                        }
                    }
                }
            }
            out.set_action(g, n, mat)?;
        }
    }
    Ok(out)
}

/// Mod-3 cohomology of the mapping cone built from three shifted Moore
/// spectra and one sphere, as it would have to look if the extension
/// existed.
///
/// Classes sit in degrees 0, 1, 12, 13, 24, 25 and 36. β links 0→1,
/// 12→13, 24→25 and P^3 links 0→12→24→36. The lower six classes form
/// H*(S/3) ⊗ N where N has classes n0, n12, n24 with P^3 n0 = n12,
/// P^3 n12 = n24; the Adem relation P^3 P^3 = P^5 P^1 - P^6 together with
/// P^1 = 0 forces P^6 = -P^3 P^3 wherever P^3 P^3 is defined, including
/// 12→36. P^1 is zero everywhere because no two occupied degrees differ
/// by 4.
pub fn hypothetical_cb_module() -> FiniteModule {
    let p = Prime::THREE;
    let mut n = FiniteModule::with_dims(p, [(0, 1), (12, 1), (24, 1)]);
    n.set_action_rows(Generator::P(3), 0, &[vec![1]]).unwrap();
    n.set_action_rows(Generator::P(3), 12, &[vec![1]]).unwrap();
    n.set_action_rows(Generator::P(6), 0, &[vec![-1]]).unwrap();
    let low = tensor(&moore_module(p), &n).expect("same prime");

    let mut m = FiniteModule::with_dims(p, low.dims.iter().map(|(&d, &k)| (d, k)).chain([(36, 1)]));
    m.actions = low.actions.clone();
    m.set_action_rows(Generator::P(3), 24, &[vec![1]]).unwrap();
    m.set_action_rows(Generator::P(6), 12, &[vec![-1]]).unwrap();
    for (d, labels) in [(0, "x0"), (1, "x1"), (12, "x12"), (13, "x13"), (24, "x24"), (25, "x25"), (36, "x36")] {
        m.set_labels(d, vec![labels.to_string()]).unwrap();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adem::parse_expression;

    #[test]
    fn moore_modules() {
        let m = moore_module(Prime::TWO);
        assert_eq!(m.dims().clone(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(m.generator_matrix(Generator::Sq(1), 0).get(0, 0), 1);
        let m3 = moore_module(Prime::THREE);
        assert_eq!(m3.generator_matrix(Generator::Bockstein, 0).get(0, 0), 1);
        assert!(m3.generator_matrix(Generator::P(1), 0).is_zero());
        let s = shift(&m, 5);
        assert_eq!(s.degrees().collect::<Vec<_>>(), vec![5, 6]);
        assert_eq!(shift(&moore_module(Prime::THREE), 11).degrees().collect::<Vec<_>>(), vec![11, 12]);
    }

    #[test]
    fn shift_round_trip() {
        let m = hypothetical_cb_module();
        assert_eq!(shift(&m, 0), m);
        assert_eq!(shift(&shift(&m, 3), -3), m);
    }

    #[test]
    fn sphere_modules() {
        let s = sphere_module(Prime::THREE, 36);
        assert_eq!(s.dims().clone(), BTreeMap::from([(36, 1)]));
        assert_eq!(sphere_module(Prime::TWO, 0).total_dim(), 1);
    }

    #[test]
    fn sums() {
        let m = moore_module(Prime::TWO);
        assert_eq!(direct_sum(&m, &FiniteModule::zero(Prime::TWO)).unwrap().dims(), m.dims());
        let s = direct_sum(&m, &shift(&m, 1)).unwrap();
        assert_eq!(s.dims().clone(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(direct_sum(&m, &moore_module(Prime::THREE)).is_err());
    }

    #[test]
    fn tensor_of_mod_two_moore_modules() {
        let m = moore_module(Prime::TWO);
        let t = tensor(&m, &m).unwrap();
        assert_eq!(t.dims().clone(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(t.total_dim(), 4);
        // Sq^1(a⊗a) = b⊗a + a⊗b, Sq^1 on either degree-1 class hits b⊗b
        assert_eq!(t.generator_matrix(Generator::Sq(1), 0).to_rows(), vec![vec![1], vec![1]]);
        assert_eq!(t.generator_matrix(Generator::Sq(1), 1).to_rows(), vec![vec![1, 1]]);
        let sq2 = parse_expression("Sq^2", Prime::TWO).unwrap();
        assert!(!t.act_element(&sq2, 0).unwrap().is_zero());
    }

    #[test]
    fn tensor_unit() {
        let m = hypothetical_cb_module();
        let t = tensor(&m, &sphere_module(Prime::THREE, 0)).unwrap();
        assert_eq!(t.dims(), m.dims());
        for (g, d, a) in m.actions() {
            assert_eq!(&t.generator_matrix(g, d), a);
        }
        assert_eq!(t.actions().count(), m.actions().count());
    }

    #[test]
    fn cb_module_shape() {
        let m = hypothetical_cb_module();
        assert_eq!(m.total_dim(), 7);
        assert_eq!(m.degrees().collect::<Vec<_>>(), vec![0, 1, 12, 13, 24, 25, 36]);
        let p = Prime::THREE;
        let cube = parse_expression("(P^3)^3", p).unwrap();
        assert_eq!(m.act_element(&cube, 0).unwrap().to_rows(), vec![vec![1]]);
        for d in m.degrees().collect::<Vec<_>>() {
            assert!(m.generator_matrix(Generator::P(1), d).is_zero());
        }
        for (d, t) in [(0, 1), (12, 13), (24, 25)] {
            assert_eq!(m.generator_matrix(Generator::Bockstein, d).to_rows(), vec![vec![1]], "β {d}→{t}");
        }
        for d in [0, 12, 24] {
            assert_eq!(m.generator_matrix(Generator::P(3), d).to_rows(), vec![vec![1]], "P^3 from {d}");
        }
    }
}
