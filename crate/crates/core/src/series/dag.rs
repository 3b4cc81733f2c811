//! Incremental evaluation of Laurent polynomials along series whose
//! coefficients become known one order at a time.
//!
//! Every monomial is a node in a product DAG over the leaves `x_i` and
//! `x_i^{-1}`; coefficient `k` of every node depends only on coefficients
//! `0..=k` of the leaves, so a recursion can alternate between producing the
//! next leaf coefficient and advancing all nodes by one order.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::convolve;
use crate::algebra::{ExponentVector, LaurentPolynomial};
use crate::num::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Node {
    One,
    Var(usize),
    Inv(usize),
    Mul(usize, usize),
}

pub(crate) struct Evaluator {
    nodes: Vec<Node>,
    polys: Vec<Vec<(usize, Rational)>>,
    /// `values[node][k]`.
    values: Vec<Vec<Rational>>,
}

impl Evaluator {
    pub fn new(dim: usize, polys: &[&LaurentPolynomial]) -> Self {
        let mut nodes = vec![Node::One];
        let mut index: HashMap<ExponentVector, usize> = HashMap::new();
        index.insert(ExponentVector::zero(dim), 0);
        let mut compiled = Vec::with_capacity(polys.len());
        for p in polys {
            let terms = p
                .terms()
                .map(|(e, c)| (node_for(&mut nodes, &mut index, e), c.clone()))
                .collect();
            compiled.push(terms);
        }
        let n = nodes.len();
        Evaluator {
            nodes,
            polys: compiled,
            values: vec![Vec::new(); n],
        }
    }

    /// Computes (or recomputes) coefficient `k` of every node. `vars[i]` must
    /// hold coefficients `0..=k` of leaf `i`, and nodes must hold `0..k`.
    pub fn advance(&mut self, vars: &[Vec<Rational>], k: usize) -> Result<()> {
        for id in 0..self.nodes.len() {
            let v = match self.nodes[id] {
                Node::One => {
                    if k == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }
                Node::Var(i) => vars[i][k].clone(),
                Node::Inv(i) => {
                    let x = &vars[i];
                    if x[0].is_zero() {
                        return Err(Error::NonInvertible { index: i });
                    }
                    if k == 0 {
                        x[0].recip()
                    } else {
                        let inv = &self.values[id];
                        let mut acc = Rational::zero();
                        for j in 1..=k {
                            if !x[j].is_zero() {
                                acc += &x[j] * &inv[k - j];
                            }
                        }
                        -acc / &x[0]
                    }
                }
                Node::Mul(a, b) => convolve(&self.values[a], &self.values[b], k),
            };
            let col = &mut self.values[id];
            if col.len() == k {
                col.push(v);
            } else {
                col[k] = v;
            }
        }
        Ok(())
    }

    /// Coefficient `k` of polynomial `p`; nodes must be advanced through `k`.
    pub fn poly_coeff(&self, p: usize, k: usize) -> Rational {
        self.polys[p]
            .iter()
            .filter(|(id, _)| !self.values[*id][k].is_zero())
            .map(|(id, c)| c * &self.values[*id][k])
            .fold(Rational::zero(), |a, b| a + b)
    }
}

fn node_for(
    nodes: &mut Vec<Node>,
    index: &mut HashMap<ExponentVector, usize>,
    e: &ExponentVector,
) -> usize {
    if let Some(&id) = index.get(e) {
        return id;
    }
    let j = e.iter().position(|&a| a != 0).expect("nonzero exponent");
    let step = if e[j] > 0 { 1 } else { -1 };
    let mut rest = e.clone();
    rest.as_mut_slice()[j] -= step;
    let leaf = if rest.iter().all(|&a| a == 0) {
        None
    } else {
        Some(node_for(nodes, index, &rest))
    };
    let unit = {
        let mut u = ExponentVector::zero(e.dim());
        u.as_mut_slice()[j] = step;
        match index.get(&u) {
            Some(&id) => id,
            None => {
                nodes.push(if step > 0 { Node::Var(j) } else { Node::Inv(j) });
                let id = nodes.len() - 1;
                index.insert(u, id);
                id
            }
        }
    };
    let id = match leaf {
        None => unit,
        Some(r) => {
            nodes.push(Node::Mul(r, unit));
            nodes.len() - 1
        }
    };
    index.insert(e.clone(), id);
    id
}
