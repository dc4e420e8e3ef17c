use std::time::Instant;

use num_rational::BigRational;
use serde_json::json;

use super::{Character, FWord, HighestWeightModule, VermaError};
use crate::algebra::{defining_relations, AlgElement, GenSymbol, Relation};
use crate::cartan::AlgebraData;
use crate::lincomb::LinComb;
use crate::report::VerificationReport;
use crate::scalars::QParam;

/// A module over the algebra given by its action on a basis and a test
/// for vanishing in the module.
pub trait Representation {
    type Basis: Ord + Clone;

    fn algebra(&self) -> &AlgebraData;

    fn act_symbol(&mut self, s: GenSymbol, b: &Self::Basis) -> Result<LinComb<Self::Basis>, VermaError>;

    /// Whether a combination of basis elements is zero in the module.
    fn is_null(&mut self, v: &LinComb<Self::Basis>) -> Result<bool, VermaError>;

    fn describe(&self, b: &Self::Basis) -> String;

    fn act(&mut self, s: GenSymbol, v: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>, VermaError> {
        let mut out = LinComb::zero();
        for (b, c) in v.iter() {
            out.add_scaled(&self.act_symbol(s, b)?, c);
        }
        Ok(out)
    }

    /// Applies each word right to left.
    fn act_element(&mut self, x: &AlgElement, v: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>, VermaError> {
        let mut out = LinComb::zero();
        for (w, c) in x.iter() {
            let mut y = v.clone();
            for &s in w.0.iter().rev() {
                if y.is_zero() {
                    break;
                }
                y = self.act(s, &y)?;
            }
            out.add_scaled(&y, c);
        }
        Ok(out)
    }
}

impl Representation for HighestWeightModule {
    type Basis = FWord;

    fn algebra(&self) -> &AlgebraData {
        self.data()
    }

    fn act_symbol(&mut self, s: GenSymbol, b: &FWord) -> Result<LinComb<FWord>, VermaError> {
        let v = LinComb::basis(b.clone());
        match s {
            GenSymbol::D => Ok(self.act_d(&v)),
            GenSymbol::K(i) => Ok(self.act_k(i, false, &v)),
            GenSymbol::KInv(i) => Ok(self.act_k(i, true, &v)),
            GenSymbol::E(i) => self.act_e_word(i, b),
            GenSymbol::F(i) => Ok(self.act_f(i, &v)),
            GenSymbol::S(_) | GenSymbol::C(_) => Err(VermaError::Unsupported(s.to_string())),
        }
    }

    fn is_null(&mut self, v: &LinComb<FWord>) -> Result<bool, VermaError> {
        HighestWeightModule::is_null(self, v)
    }

    fn describe(&self, b: &FWord) -> String {
        b.to_string()
    }
}

/// Every content vector of height at most `depth`, graded lexicographically.
pub fn contents_to_depth(size: usize, depth: usize) -> Vec<Vec<usize>> {
    fn rec(size: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in (0..=left).rev() {
            cur.push(x);
            rec(size, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for h in 0..=depth {
        let mut layer = Vec::new();
        rec(size, h, &mut Vec::new(), &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

/// Every word of length at most `depth`, by length then lexicographically.
pub fn words_to_depth(size: usize, depth: usize) -> Vec<FWord> {
    let mut out = vec![FWord::top()];
    let mut layer = vec![FWord::top()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * size);
        for w in &layer {
            for i in 0..size {
                let mut x = w.0.clone();
                x.push(i);
                next.push(FWord(x));
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks each relation on each vector, stopping at the first violation.
pub fn verify_relations<R: Representation>(
    rep: &mut R,
    relations: &[Relation],
    vectors: &[R::Basis],
    report: &mut VerificationReport,
) -> Result<(), VermaError> {
    for rel in relations {
        for b in vectors {
            let out = rep.act_element(&rel.element, &LinComb::basis(b.clone()))?;
            if !out.is_zero() && !rep.is_null(&out)? {
                report.fail(json!({
                    "relation": rel.name,
                    "i": rel.i,
                    "j": rel.j,
                    "vector": rep.describe(b),
                }));
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Every defining relation, including both Serre families, on every word
/// of length at most `depth` in the irreducible quotient.
pub fn verify_module_relations(
    data: &AlgebraData,
    labels: &[BigRational],
    lambda0: Option<&BigRational>,
    param: QParam,
    depth: usize,
) -> Result<VerificationReport, VermaError> {
    let start = Instant::now();
    let mut module = HighestWeightModule::new(data, labels, lambda0, param.clone())?;
    let relations = defining_relations(data, &param)?;
    let vectors = words_to_depth(data.size(), depth);
    let mut report = VerificationReport::new("serre", &data.name).with_labels(labels).with_depth(depth);
    verify_relations(&mut module, &relations, &vectors, &mut report)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// First content where two characters disagree.
pub fn character_difference(a: &Character, b: &Character) -> Option<(Vec<usize>, usize, usize)> {
    let mut contents: Vec<&Vec<usize>> = a.entries.iter().chain(&b.entries).map(|(c, _)| c).collect();
    contents.sort_by(|x, y| (x.iter().sum::<usize>(), *x).cmp(&(y.iter().sum::<usize>(), *y)));
    contents.dedup();
    contents
        .into_iter()
        .map(|c| (c.clone(), a.multiplicity(c), b.multiplicity(c)))
        .find(|(_, x, y)| x != y)
}

/// Characters at generic `v` and with every coefficient taken at `v = 1`.
pub fn classical_action_check(
    data: &AlgebraData,
    labels: &[BigRational],
    lambda0: Option<&BigRational>,
    depth: usize,
) -> Result<VerificationReport, VermaError> {
    let start = Instant::now();
    let mut generic = HighestWeightModule::new(data, labels, lambda0, QParam::generic())?;
    let mut classical = HighestWeightModule::new(data, labels, lambda0, QParam::classical())?;
    let a = generic.character(depth);
    let b = classical.character(depth);
    let mut report = VerificationReport::new("classical", &data.name).with_labels(labels).with_depth(depth);
    if !a.complete || !b.complete {
        report.fail(json!({ "error": "resource limit reached" }));
    } else if let Some((content, x, y)) = character_difference(&a, &b) {
        report.fail(json!({ "alpha_coords": content, "generic": x, "classical": y }));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{symbol, word};
    use crate::cartan::{catalog_by_name, labels_from_ints};
    use crate::scalars::Scalar;
    use GenSymbol::*;

    #[test]
    fn enumerations() {
        assert_eq!(contents_to_depth(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(words_to_depth(2, 2).len(), 7);
        assert_eq!(words_to_depth(3, 0), vec![FWord::top()]);
    }

    #[test]
    fn commutator_on_top_vector() {
        let data = catalog_by_name("B1_0_1").unwrap();
        let q = QParam::generic();
        let mut m = HighestWeightModule::new(&data, &labels_from_ints(&[1, 2]), None, q.clone()).unwrap();
        let top = LinComb::basis(FWord::top());
        for i in 0..2 {
            for j in 0..2 {
                let sign = if data.is_odd(i) && data.is_odd(j) { -1 } else { 1 };
                let x = word(&[E(i), F(j)]).minus(&word(&[F(j), E(i)]).scaled(&Scalar::from_int(sign)));
                let out = m.act_element(&x, &top).unwrap();
                let expect = if i == j {
                    top.scaled(&q.qbracket(&m.pairing(&[0, 0], i), data.eps[i]).unwrap())
                } else {
                    LinComb::zero()
                };
                assert_eq!(out, expect);
            }
        }
        let kk = word(&[K(1), KInv(1)]);
        let w = LinComb::basis(FWord(vec![0, 1, 1]));
        assert_eq!(m.act_element(&kk, &w).unwrap(), w);
        assert!(m.act_element(&symbol(S(0)), &w).is_err());
    }

    #[test]
    fn relations_hold_on_small_module() {
        let data = catalog_by_name("B1_0_1").unwrap();
        let r = verify_module_relations(&data, &labels_from_ints(&[1, 0]), None, QParam::generic(), 3).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
    }

    #[test]
    fn classical_characters_match_at_small_depth() {
        let data = catalog_by_name("B1_0_1").unwrap();
        let r = classical_action_check(&data, &labels_from_ints(&[1, 0]), None, 4).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
    }
}
