use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::LocalAlgebraModel;
use crate::error::{Error, Result};
use crate::groebner::{groebner, linear_basis_engine, maximal_ideal_power};
use crate::kernel::{DenseMatrix, Field, FieldElement};
use crate::poly::{Ideal, MonomialOrder, Ring};

/// Hilbert function `h_i = dim m^i / m^(i+1)` of a local algebra, trailing
/// zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<u32>);

impl HilbertFunction {
    pub fn new(mut h: Vec<u32>) -> Self {
        while h.last() == Some(&0) {
            h.pop();
        }
        HilbertFunction(h)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `sum h_i`.
    pub fn colength(&self) -> usize {
        self.0.iter().map(|&h| h as usize).sum()
    }

    /// Embedding dimension `h_1`.
    pub fn embedding_dimension(&self) -> u32 {
        self.get(1)
    }

    /// Socle degree: largest `i` with `h_i > 0`.
    pub fn top_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for HilbertFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let h = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: 1,
                col: 1,
                msg: format!("bad Hilbert function `{s}`: {e}"),
            })?;
        Ok(HilbertFunction::new(h))
    }
}

/// Row-reduced basis of the span of `vectors`.
fn span(field: Field, len: usize, vectors: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() || len == 0 {
        return Vec::new();
    }
    let m = DenseMatrix::from_rows(field, vectors).expect("equal lengths");
    let ech = m.rref();
    (0..ech.pivots.len())
        .map(|r| ech.matrix.row(r).to_vec())
        .collect()
}

/// `m^i (S/I)` for `i = 0, 1, ...` until it vanishes.
fn power_filtration(model: &LocalAlgebraModel) -> Vec<Vec<Vec<FieldElement>>> {
    let field = model.gb().ring().field();
    let n = model.colength();
    let mut out = vec![span(field, n, DenseMatrix::identity(field, n).to_rows())];
    while !out.last().unwrap().is_empty() {
        let prev = out.last().unwrap();
        let next: Vec<Vec<FieldElement>> = model
            .operators()
            .iter()
            .flat_map(|x| prev.iter().map(move |v| x.mul_vec(v)))
            .collect();
        out.push(span(field, n, next));
    }
    out
}

/// Hilbert function of an algebra primary to the origin, read off from the
/// powers of the maximal ideal inside `S/I`.
pub fn local_hilbert_function_of(model: &LocalAlgebraModel) -> Result<HilbertFunction> {
    if !model.is_primary_at_origin() {
        return Err(Error::NotPrimaryAtOrigin);
    }
    let dims: Vec<usize> = power_filtration(model).iter().map(|w| w.len()).collect();
    let h = dims.windows(2).map(|w| (w[0] - w[1]) as u32).collect();
    Ok(HilbertFunction::new(h))
}

pub fn local_hilbert_function(ideal: &Ideal) -> Result<HilbertFunction> {
    local_hilbert_function_of(&LocalAlgebraModel::from_ideal(ideal)?)
}

/// Whether some power of `(x_1, ..., x_d)` lies in `I`.
pub fn is_primary_at_origin(ideal: &Ideal) -> Result<bool> {
    Ok(maximal_ideal_power(&groebner(ideal))?.is_some())
}

/// Presents `S/I` with the minimal number `h_1` of variables.
///
/// Keeps the variables whose classes are independent in `m/m^2` and computes
/// the kernel of the induced surjection from the smaller polynomial ring.
pub fn embedding_reduction(ideal: &Ideal) -> Result<Ideal> {
    let model = LocalAlgebraModel::from_ideal(ideal)?;
    if !model.is_primary_at_origin() {
        return Err(Error::NotPrimaryAtOrigin);
    }
    let ring = ideal.ring();
    let field = ring.field();
    let n = model.colength();
    let filtration = power_filtration(&model);
    let one = model.unit_vector();
    let mut acc: Vec<Vec<FieldElement>> = filtration.get(2).cloned().unwrap_or_default();
    let mut rank = acc.len();
    let mut chosen = Vec::new();
    for (i, x) in model.operators().iter().enumerate() {
        let mut trial = acc.clone();
        trial.push(x.mul_vec(&one));
        let trial = span(field, n, trial);
        if trial.len() > rank {
            rank = trial.len();
            acc = trial;
            chosen.push(i);
        }
    }
    if chosen.is_empty() {
        return Err(Error::Precondition(
            "the algebra is the ground field; embedding dimension is 0".into(),
        ));
    }
    let names: Vec<&str> = chosen.iter().map(|&i| ring.names()[i].as_str()).collect();
    let small = Ring::new(field, &names)?;
    let ops: Vec<&DenseMatrix> = chosen.iter().map(|&i| model.operator(i)).collect();
    let (gb, _) = linear_basis_engine(&small, &MonomialOrder::Grevlex, one, |v, i| {
        ops[i].mul_vec(v)
    });
    Ok(gb.ideal())
}
