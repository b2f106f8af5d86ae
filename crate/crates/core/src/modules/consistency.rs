//! Necessary condition for realizability: every Adem relation must hold
//! as an identity of matrices on the module.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::FiniteModule;
use crate::adem::{normalize, parse_expression, Degree, Generator, Monomial, SteenrodElement};
use crate::linalg::FpMatrix;
use crate::prime::Prime;

/// A relation `left = right` of the Steenrod algebra that fails on the
/// module: acting on `witness` (a vector in `source_degree`) the two sides
/// give `left_image` and `right_image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: (SteenrodElement, SteenrodElement),
    pub source_degree: i64,
    pub target_degree: i64,
    pub witness: Vec<u32>,
    pub left_image: Vec<u32>,
    pub right_image: Vec<u32>,
}

/// Violations sharing a source and target degree. All relations in a class
/// fail for the same reason: the matrices between those two degrees cannot
/// be made to satisfy the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationClass {
    pub source_degree: i64,
    pub target_degree: i64,
    pub violations: Vec<RelationViolation>,
}

impl ViolationClass {
    /// True if some violation in the class has `left` as its left side,
    /// compared after normalization.
    pub fn contains_relation(&self, left: &SteenrodElement) -> bool {
        let target = normalize(left);
        self.violations.iter().any(|v| normalize(&v.relation.0) == target)
    }
}

/// Identities quoted verbatim in addition to the rewrites of inadmissible
/// words. Both sides are kept unnormalized.
fn listed_identities(p: Prime) -> Vec<(SteenrodElement, SteenrodElement)> {
    if p.value() != 3 {
        return Vec::new();
    }
    let lhs = parse_expression("(P^3)^3", p).expect("valid");
    let rhs = parse_expression("(P^7 P^1 - P^8) P^1", p).expect("valid");
    vec![(lhs, rhs)]
}

/// Inadmissible words of length 2 and 3 whose degree is in `degrees`.
fn inadmissible_words(p: Prime, degrees: &BTreeSet<i64>) -> Vec<Vec<Generator>> {
    let Some(&max) = degrees.iter().next_back() else {
        return Vec::new();
    };
    let gens = Generator::up_to_degree(p, max);
    let deg = |w: &[Generator]| w.iter().map(|g| g.degree(p)).sum::<i64>();
    let mut out = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let w2 = [a, b];
            let d2 = deg(&w2);
            if d2 > max {
                continue;
            }
            if degrees.contains(&d2) && !Monomial::new(w2.to_vec()).is_admissible(p) {
                out.push(w2.to_vec());
            }
            for &c in &gens {
                let w3 = [a, b, c];
                let d3 = deg(&w3);
                if degrees.contains(&d3) && !Monomial::new(w3.to_vec()).is_admissible(p) {
                    out.push(w3.to_vec());
                }
            }
        }
    }
    out
}

/// Checks every Adem rewrite of an inadmissible word of length 2 or 3 with
/// degree at most `max_relation_degree`, plus the listed identities, on
/// every occupied source degree. Words whose degree does not connect two
/// occupied degrees act as zero on both sides and are skipped.
///
/// The result is sorted by (source, target, relation) and lists one
/// witness basis vector per failing relation and source degree.
pub fn consistency_check(m: &FiniteModule, max_relation_degree: i64) -> Vec<RelationViolation> {
    let p = m.prime();
    let occupied: Vec<i64> = m.degrees().collect();
    let gaps: BTreeSet<i64> = occupied
        .iter()
        .flat_map(|&s| occupied.iter().map(move |&t| t - s))
        .filter(|&g| g > 0 && g <= max_relation_degree)
        .collect();

    let mut relations: Vec<(SteenrodElement, SteenrodElement)> = inadmissible_words(p, &gaps)
        .into_par_iter()
        .map(|w| {
            let lhs = SteenrodElement::word(p, &w).expect("generators match the prime");
            let rhs = normalize(&lhs);
            (lhs, rhs)
        })
        .collect();
    relations.extend(listed_identities(p).into_iter().filter(|(l, _)| match l.degree() {
        Degree::Homogeneous(d) => d <= max_relation_degree,
        _ => true,
    }));

    let jobs: Vec<(usize, i64)> = (0..relations.len()).flat_map(|r| occupied.iter().map(move |&d| (r, d))).collect();
    let mut found: Vec<RelationViolation> = jobs
        .into_par_iter()
        .filter_map(|(r, d)| {
            let (lhs, rhs) = &relations[r];
            let shift = match lhs.degree() {
                Degree::Homogeneous(s) => s,
                _ => return None,
            };
            if m.dim(d + shift) == 0 {
                return None;
            }
            let a = m.act_element(lhs, d).ok()?;
            let b = if rhs.is_zero() { FpMatrix::zero(p, a.rows(), a.cols()) } else { m.act_element(rhs, d).ok()? };
            first_difference(&a, &b).map(|j| {
                let mut witness = vec![0; m.dim(d)];
                witness[j] = 1;
                RelationViolation {
                    relation: (lhs.clone(), rhs.clone()),
                    source_degree: d,
                    target_degree: d + shift,
                    left_image: a.column(j),
                    right_image: b.column(j),
                    witness,
                }
            })
        })
        .collect();
    found.sort_by(|x, y| {
        (x.source_degree, x.target_degree, x.relation.0.to_string(), x.relation.1.to_string()).cmp(&(
            y.source_degree,
            y.target_degree,
            y.relation.0.to_string(),
            y.relation.1.to_string(),
        ))
    });
    found
}

fn first_difference(a: &FpMatrix, b: &FpMatrix) -> Option<usize> {
    (0..a.cols()).find(|&j| a.column(j) != b.column(j))
}

/// Groups violations by (source degree, target degree).
pub fn violation_classes(violations: &[RelationViolation]) -> Vec<ViolationClass> {
    let mut map: BTreeMap<(i64, i64), Vec<RelationViolation>> = BTreeMap::new();
    for v in violations {
        map.entry((v.source_degree, v.target_degree)).or_default().push(v.clone());
    }
    map.into_iter()
        .map(|((s, t), violations)| ViolationClass { source_degree: s, target_degree: t, violations })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{direct_sum, hypothetical_cb_module, moore_module, shift, tensor};

    #[test]
    fn moore_modules_are_consistent() {
        for p in [2, 3, 5] {
            let p = Prime::new(p).unwrap();
            assert!(consistency_check(&moore_module(p), 40).is_empty());
        }
    }

    #[test]
    fn tensor_of_consistent_modules_is_consistent() {
        let m = moore_module(Prime::TWO);
        let t = tensor(&m, &tensor(&m, &m).unwrap()).unwrap();
        assert!(consistency_check(&t, 20).is_empty());
        let m3 = moore_module(Prime::THREE);
        assert!(consistency_check(&tensor(&m3, &shift(&m3, 4)).unwrap(), 20).is_empty());
    }

    #[test]
    fn cb_module_fails_only_between_zero_and_thirty_six() {
        let v = consistency_check(&hypothetical_cb_module(), 40);
        assert!(!v.is_empty());
        let classes = violation_classes(&v);
        assert_eq!(classes.len(), 1, "{classes:#?}");
        assert_eq!((classes[0].source_degree, classes[0].target_degree), (0, 36));
        let cube = parse_expression("(P^3)^3", Prime::THREE).unwrap();
        assert!(classes[0].contains_relation(&cube));
        let rhs = parse_expression("(P^7 P^1 - P^8) P^1", Prime::THREE).unwrap();
        assert!(v.iter().any(|x| x.relation == (cube.clone(), rhs.clone())));
        for x in &v {
            assert_ne!(x.left_image, x.right_image);
        }
    }

    #[test]
    fn cb_module_below_the_top_is_consistent() {
        assert!(consistency_check(&hypothetical_cb_module(), 35).iter().all(|v| v.target_degree == 36));
        assert!(consistency_check(&hypothetical_cb_module(), 24).is_empty());
    }

    #[test]
    fn sums_fail_blockwise() {
        let cb = hypothetical_cb_module();
        let m = moore_module(Prime::THREE);
        let sum = direct_sum(&cb, &m).unwrap();
        let a = violation_classes(&consistency_check(&cb, 40));
        let b = violation_classes(&consistency_check(&sum, 40));
        assert_eq!(a.len(), b.len());
        assert!(consistency_check(&direct_sum(&m, &shift(&m, 8)).unwrap(), 40).is_empty());
    }
}
