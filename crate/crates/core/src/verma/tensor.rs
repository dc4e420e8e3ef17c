use std::collections::HashMap;

use super::{FWord, HighestWeightModule, ModuleVector, Representation, VermaError};
use crate::algebra::GenSymbol;
use crate::cartan::AlgebraData;
use crate::lincomb::LinComb;
use crate::scalars::{Field, Scalar};

type Block = Vec<Vec<Scalar>>;

/// Which formula drives `f_i` on a tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coproduct {
    /// `Δ(f_i) = f_i ⊗ 1 + k_i^{-1} ⊗ f_i`.
    Corrected,
    /// `Δ(f_i) = f_i ⊗ 1 + k_i^{-1} ⊗ h_i` with `h_i` acting by `(α_i, ω)`.
    Uncorrected,
}

/// `V ⊗ W` acted on through the co-multiplication, with the graded sign
/// rule `(x ⊗ y)(a ⊗ b) = (-1)^{[y][a]} xa ⊗ yb`.
pub struct TensorModule {
    left: HighestWeightModule,
    right: HighestWeightModule,
    coproduct: Coproduct,
}

type Pair = (FWord, FWord);

impl TensorModule {
    pub fn new(left: HighestWeightModule, right: HighestWeightModule, coproduct: Coproduct) -> Result<Self, VermaError> {
        if left.data() != right.data() || left.param() != right.param() {
            return Err(VermaError::Incompatible);
        }
        Ok(TensorModule { left, right, coproduct })
    }

    /// All pairs whose total length is at most `depth`.
    pub fn pairs_to_depth(&self, depth: usize) -> Vec<Pair> {
        let size = self.left.size();
        let words = super::words_to_depth(size, depth);
        let mut out = Vec::new();
        for a in &words {
            for b in &words {
                if a.depth() + b.depth() <= depth {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn sign(&self, odd_symbol: bool, a: &FWord) -> Scalar {
        let odd = odd_symbol && a.parity(self.left.data()) == 1;
        Scalar::from_int(if odd { -1 } else { 1 })
    }
}

fn tensor(x: &ModuleVector, y: &ModuleVector, c: &Scalar) -> LinComb<Pair> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term((a.clone(), b.clone()), ca.times(cb).times(c));
        }
    }
    out
}

impl Representation for TensorModule {
    type Basis = Pair;

    fn algebra(&self) -> &AlgebraData {
        self.left.data()
    }

    fn act_symbol(&mut self, s: GenSymbol, p: &Pair) -> Result<LinComb<Pair>, VermaError> {
        let (a, b) = p;
        let va = ModuleVector::basis(a.clone());
        let vb = ModuleVector::basis(b.clone());
        let one = Scalar::one();
        let size = self.left.size();
        let odd = |i: usize| self.left.data().is_odd(i);
        Ok(match s {
            GenSymbol::D => tensor(&self.left.act_d(&va), &vb, &one).plus(&tensor(&va, &self.right.act_d(&vb), &one)),
            GenSymbol::K(i) => tensor(&self.left.act_k(i, false, &va), &self.right.act_k(i, false, &vb), &one),
            GenSymbol::KInv(i) => tensor(&self.left.act_k(i, true, &va), &self.right.act_k(i, true, &vb), &one),
            GenSymbol::E(i) => {
                let first = tensor(&self.left.act_e(i, &va)?, &self.right.act_k(i, false, &vb), &one);
                let second = tensor(&va, &self.right.act_e(i, &vb)?, &self.sign(odd(i), a));
                first.plus(&second)
            }
            GenSymbol::F(i) => {
                let first = tensor(&self.left.act_f(i, &va), &vb, &one);
                let kinv_a = self.left.act_k(i, true, &va);
                let second = match self.coproduct {
                    Coproduct::Corrected => tensor(&kinv_a, &self.right.act_f(i, &vb), &self.sign(odd(i), a)),
                    Coproduct::Uncorrected => {
                        let h = self.right.pairing(&b.content(size), i);
                        tensor(&kinv_a, &vb, &Scalar::from_rational(h))
                    }
                };
                first.plus(&second)
            }
            GenSymbol::S(_) | GenSymbol::C(_) => return Err(VermaError::Unsupported(s.to_string())),
        })
    }

    fn is_null(&mut self, v: &LinComb<Pair>) -> Result<bool, VermaError> {
        let size = self.left.size();
        let mut blocks: HashMap<(Vec<usize>, Vec<usize>), Block> = HashMap::new();
        for ((a, b), c) in v.iter() {
            let x = self.left.coords(a)?;
            let y = self.right.coords(b)?;
            if x.is_empty() || y.is_empty() {
                continue;
            }
            let block = blocks
                .entry((a.content(size), b.content(size)))
                .or_insert_with(|| vec![vec![Scalar::zero(); y.len()]; x.len()]);
            for (r, xr) in x.iter().enumerate() {
                if xr.is_zero() {
                    continue;
                }
                let xc = xr.times(c);
                for (s, ys) in y.iter().enumerate() {
                    if !ys.is_zero() {
                        block[r][s] = block[r][s].plus(&xc.times(ys));
                    }
                }
            }
        }
        Ok(blocks.values().all(|m| m.iter().flatten().all(Field::is_zero)))
    }

    fn describe(&self, p: &Pair) -> String {
        format!("{}⊗{}", p.0, p.1)
    }
}
