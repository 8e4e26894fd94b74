//! Presets reproducing the published tables.

use anyhow::Result;
use primepair::{three_primes_below, ConstantEngine, PairCounter, PairFamily};

use crate::output::{fixed, Table};

/// Constant used for the predicted column of table 1.
pub const TABLE1_CONSTANT: f64 = 1.6916;
pub const TABLE1_XS: [u64; 8] =
    [10, 100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000, 100_000_000];

/// Table 3 rows, in published order, one row per `q`.
pub const TABLE3_QS: [i64; 14] = [2, 4, 8, 16, 3, 9, 24, 6, 10, 12, 18, 14, 20, 22];
pub const TABLE3_BOUND: u64 = 500;

/// Table 4 rows, in published order, one row per `q = 2r`.
pub const TABLE4_QS: [i64; 12] = [2, 4, 16, 6, 8, 10, 12, 18, 14, 20, 22, 24];

/// Counts of `(p, p^2 - 2)` against `1.6916 li_2(x)`, for `x <= max_x`.
pub fn table1(max_x: u64) -> Result<Table> {
    let xs: Vec<u64> = TABLE1_XS.iter().copied().filter(|&x| x <= max_x).collect();
    let counter = PairCounter::new(PairFamily::new(2, -2)?);
    let mut t = Table::new(["x", "pi^2_{-2}(x)", "L_2(x)", "rho(x)"]);
    for r in counter.table(&xs, TABLE1_CONSTANT)? {
        t.push(vec![
            r.x.to_string(),
            r.pair_count.to_string(),
            format!("{}", r.predicted),
            r.ratio.map_or_else(String::new, |v| format!("{v:.3}")),
        ]);
    }
    Ok(t)
}

/// `γ^2_{±2r}` and `C^2_{±2r}` for `2r = 2, 4, ..., 30`.
pub fn table2(engine: &ConstantEngine) -> Result<Table> {
    let pos: Vec<i64> = (1..=15).map(|r| 2 * r).collect();
    let neg: Vec<i64> = pos.iter().map(|t| -t).collect();
    let gp = engine.gamma_batch(2, &pos)?;
    let cp = engine.c_batch(2, &pos)?;
    let gn = engine.gamma_batch(2, &neg)?;
    let cn = engine.c_batch(2, &neg)?;
    let mut t = Table::new(["2r", "gamma^2_{2r}", "C^2_{2r}", "gamma^2_{-2r}", "C^2_{-2r}"]);
    for i in 0..pos.len() {
        t.push(vec![
            pos[i].to_string(),
            fixed(gp[i].value, 2),
            fixed(cp[i].value, 3),
            fixed(gn[i].value, 2),
            fixed(cn[i].value, 3),
        ]);
    }
    Ok(t)
}

pub fn table3() -> Result<Table> {
    let mut t = Table::new(["q", "3-primes p<500"]);
    for q in TABLE3_QS {
        let ps = three_primes_below(q, TABLE3_BOUND)?;
        t.push(vec![q.to_string(), join(&ps, ",")]);
    }
    Ok(t)
}

/// `γ^3_q` and `C^3_{2r}` for the published offsets.
pub fn table4(engine: &ConstantEngine) -> Result<Table> {
    let gs = engine.gamma_batch(3, &TABLE4_QS)?;
    let cs = engine.c_batch(3, &TABLE4_QS)?;
    let mut t = Table::new(["q=2r", "gamma^3_q", "C^3_{2r}"]);
    for ((q, g), c) in TABLE4_QS.iter().zip(&gs).zip(&cs) {
        t.push(vec![q.to_string(), fixed(g.value, 3), fixed(c.value, 3)]);
    }
    Ok(t)
}

pub fn join(xs: &[u64], sep: &str) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}
