//! Text and JSON formats for monomials and ideals.
//!
//! Monomials are written `x1^2*x3`, the identity as `1`, and ideals as
//! comma-separated monomials. In bipartite contexts the variables are
//! `x1..xm` followed by `y1..yn`. The structured form is
//! `{"n": 4, "generators": [[2,0,0,0],[1,1,0,0]]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{Monomial, MonomialError, MonomialIdeal};

/// How variable indices map to names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x1, x2, ...` for every variable.
    Plain,
    /// `x1..xm` for the first `m` variables, then `y1..yn`.
    Bipartite { m: usize, n: usize },
}

impl VarNames {
    pub fn name(&self, index: usize) -> String {
        match *self {
            VarNames::Bipartite { m, .. } if index >= m => format!("y{}", index - m + 1),
            _ => format!("x{}", index + 1),
        }
    }

    fn index(&self, letter: char, number: usize) -> Option<usize> {
        if number == 0 {
            return None;
        }
        match (*self, letter) {
            (VarNames::Plain, 'x') => Some(number - 1),
            (VarNames::Bipartite { m, .. }, 'x') if number <= m => Some(number - 1),
            (VarNames::Bipartite { m, n }, 'y') if number <= n => Some(m + number - 1),
            _ => None,
        }
    }

    /// Number of variables, when the naming fixes it.
    pub fn ambient(&self) -> Option<usize> {
        match *self {
            VarNames::Plain => None,
            VarNames::Bipartite { m, n } => Some(m + n),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty monomial")]
    Empty,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("variable `{name}` exceeds the ambient ring of {n} variables")]
    OutOfRange { name: String, n: usize },
    #[error("invalid JSON ideal: {0}")]
    Json(String),
    #[error(transparent)]
    Ideal(#[from] MonomialError),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson { n: ideal.n(), generators: ideal.generators().iter().map(|g| g.exponents().to_vec()).collect() }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = MonomialError;

    fn try_from(value: IdealJson) -> Result<Self, Self::Error> {
        MonomialIdeal::from_exponents(value.n, value.generators)
    }
}

pub fn format_monomial(m: &Monomial, names: &VarNames) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names.name(i) } else { format!("{}^{}", names.name(i), e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Comma-separated generators; the zero ideal prints as `0`.
pub fn format_ideal(ideal: &MonomialIdeal, names: &VarNames) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    ideal.generators().iter().map(|g| format_monomial(g, names)).collect::<Vec<_>>().join(", ")
}

/// Parses factors into (variable index, exponent) pairs.
fn parse_factors(s: &str, names: &VarNames) -> Result<Vec<(usize, u32)>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| ParseError::BadExponent(factor.to_string()))?;
                    (v.trim(), e)
                }
                None => (factor, 1),
            };
            let mut chars = var.chars();
            let letter = chars.next().ok_or(ParseError::Empty)?;
            let index = chars
                .as_str()
                .parse::<usize>()
                .ok()
                .and_then(|num| names.index(letter, num))
                .ok_or_else(|| ParseError::UnknownVariable(var.to_string()))?;
            Ok((index, exp))
        })
        .collect()
}

fn build(factors: &[(usize, u32)], n: usize, names: &VarNames) -> Result<Monomial, ParseError> {
    let mut exps = vec![0; n];
    for &(index, e) in factors {
        if index >= n {
            return Err(ParseError::OutOfRange { name: names.name(index), n });
        }
        exps[index] += e;
    }
    Ok(Monomial::new(exps))
}

pub fn parse_monomial(s: &str, n: usize, names: &VarNames) -> Result<Monomial, ParseError> {
    build(&parse_factors(s, names)?, n, names)
}

/// Parses a text or JSON ideal. For text input the ambient size is `n` if
/// given, else fixed by `names`, else the largest variable index used.
pub fn parse_ideal(s: &str, n: Option<usize>, names: &VarNames) -> Result<MonomialIdeal, ParseError> {
    let trimmed = s.trim();
    if trimmed.starts_with('{') {
        let json: IdealJson = serde_json::from_str(trimmed).map_err(|e| ParseError::Json(e.to_string()))?;
        return Ok(MonomialIdeal::try_from(json)?);
    }
    let parts: Vec<Vec<(usize, u32)>> = if trimmed == "0" {
        Vec::new()
    } else {
        trimmed.split(',').map(|p| parse_factors(p, names)).collect::<Result<_, _>>()?
    };
    let used = parts.iter().flatten().map(|&(i, _)| i + 1).max().unwrap_or(1);
    let n = n.or(names.ambient()).unwrap_or(used);
    let gens = parts.iter().map(|f| build(f, n, names)).collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialIdeal::new(n, gens)?)
}
