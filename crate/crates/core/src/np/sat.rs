use super::{decode_gn, BoolExpr, NpError};
use crate::codec::Nat;

/// Truth tables are refused above this many variables.
pub const MAX_VARIABLES: usize = 20;

/// All rows of the truth table. Row `m` gives the `j`-th variable (in
/// ascending index order) the value of bit `k − 1 − j` of `m`, so the first
/// row is all false and the rows count up in binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub variables: Vec<u32>,
    pub rows: Vec<(Vec<bool>, bool)>,
}

impl TruthTable {
    pub fn satisfiable(&self) -> bool {
        self.rows.iter().any(|r| r.1)
    }

    pub fn true_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.1).count()
    }
}

fn row(vars: &[u32], m: u64) -> Vec<bool> {
    let k = vars.len();
    (0..k).map(|j| (m >> (k - 1 - j)) & 1 == 1).collect()
}

fn eval_row(e: &BoolExpr, vars: &[u32], values: &[bool]) -> bool {
    e.eval(&|i| values[vars.binary_search(&i).expect("variable occurs in the expression")])
}

fn guarded_vars(e: &BoolExpr) -> Result<Vec<u32>, NpError> {
    let vars = e.variables();
    if vars.len() > MAX_VARIABLES {
        return Err(NpError::TooManyVariables(vars.len()));
    }
    Ok(vars)
}

pub fn truth_table(e: &BoolExpr) -> Result<TruthTable, NpError> {
    let vars = guarded_vars(e)?;
    let rows = (0..1u64 << vars.len())
        .map(|m| {
            let values = row(&vars, m);
            let out = eval_row(e, &vars, &values);
            (values, out)
        })
        .collect();
    Ok(TruthTable { variables: vars, rows })
}

/// Satisfiability by exhausting the truth table, with the first satisfying
/// row as `(variable, value)` pairs.
pub fn truth_table_sat(e: &BoolExpr) -> Result<(bool, Option<Vec<(u32, bool)>>), NpError> {
    let vars = guarded_vars(e)?;
    for m in 0..1u64 << vars.len() {
        let values = row(&vars, m);
        if eval_row(e, &vars, &values) {
            return Ok((true, Some(vars.iter().copied().zip(values).collect())));
        }
    }
    Ok((false, None))
}

/// 1 when `x` is the Gödel number of a satisfiable expression, else 0.
pub fn sat_fn(x: &Nat) -> Result<u8, NpError> {
    match decode_gn(x) {
        Ok(e) => Ok(truth_table_sat(&e)?.0 as u8),
        Err(_) => Ok(0),
    }
}
