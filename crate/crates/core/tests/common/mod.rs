//! Helpers shared by the invariant and acceptance suites.

use torsion_bench::adem::Generator;
use torsion_bench::modules::FiniteModule;

/// Fresh labels without separators, so tensor labels identify basis triples.
pub fn relabel(m: &FiniteModule, tag: &str) -> FiniteModule {
    let mut out = m.clone();
    for d in m.degrees().collect::<Vec<_>>() {
        out.set_labels(d, (0..m.dim(d)).map(|i| format!("{tag}{d}_{i}")).collect()).unwrap();
    }
    out
}

/// Whether two modules agree after permuting each degree's basis by label.
pub fn same_up_to_label_permutation(a: &FiniteModule, b: &FiniteModule) -> bool {
    if a.dims() != b.dims() {
        return false;
    }
    let perm = |d: i64| -> Option<Vec<usize>> {
        a.labels(d).iter().map(|l| b.labels(d).iter().position(|x| x == l)).collect()
    };
    let gens = Generator::up_to_degree(a.prime(), a.span());
    for s in a.degrees() {
        let Some(ps) = perm(s) else { return false };
        for &g in &gens {
            let t = s + g.degree(a.prime());
            if a.dim(t) == 0 {
                continue;
            }
            let Some(pt) = perm(t) else { return false };
            let (ma, mb) = (a.generator_matrix(g, s), b.generator_matrix(g, s));
            for (r, &pr) in pt.iter().enumerate() {
                for (c, &pc) in ps.iter().enumerate() {
                    if ma.get(r, c) != mb.get(pr, pc) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
