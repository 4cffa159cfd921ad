//! `icover bench`: fixed suites of seeded instances, timed per solver.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, ValueEnum};
use icover::generate::{instance_rng, random_istring, InstanceParams};
use icover::oracle::brute_shortest_cover;
use icover::{fpt_solve_general, fpt_solve_partial, simple_solve, LcpIndex};

use crate::{Budgets, CmdResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// n from 10^3 to 10^5 at fixed k.
    Scaling,
    /// Tiny instances where the oracle is affordable.
    Small,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Suite::Scaling)]
    suite: Suite,
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also time the brute-force oracle.
    #[arg(long)]
    with_oracle: bool,
    #[command(flatten)]
    budgets: Budgets,
}

const SCALING_N: [usize; 5] = [1_000, 3_000, 10_000, 30_000, 100_000];
const SMALL_N: [usize; 3] = [8, 12, 16];

pub fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let limits = args.budgets.limits();
    let sizes: &[usize] = match args.suite {
        Suite::Scaling => &SCALING_N,
        Suite::Small => &SMALL_N,
    };
    let mut out = io::stdout().lock();
    writeln!(out, "n,k,sigma,algo,micros,length")?;
    for (row, &n) in sizes.iter().enumerate() {
        let params = InstanceParams {
            period: Some(5),
            ..InstanceParams::new(n, args.k.min(n), args.sigma, true)
        };
        let t = random_istring(&params, &mut instance_rng(args.seed, row as u64))?;
        let mut emit = |algo: &str, f: &mut dyn FnMut() -> Result<usize, icover::Error>| -> CmdResult {
            let start = Instant::now();
            match f() {
                Ok(length) => {
                    writeln!(out, "{n},{},{},{algo},{},{length}", t.k(), t.sigma(), start.elapsed().as_micros())?;
                }
                Err(e) if e.is_resource_refusal() => eprintln!("{algo} at n={n}: {e}"),
                Err(e) => return Err(e.into()),
            }
            Ok(())
        };
        emit("simple", &mut || Ok(simple_solve(&LcpIndex::build(&t), limits.max_prefixes)?.length))?;
        emit("fpt", &mut || Ok(fpt_solve_general(&LcpIndex::build(&t), &limits)?.length))?;
        emit("partial", &mut || Ok(fpt_solve_partial(&LcpIndex::build(&t), &limits)?.length))?;
        if args.with_oracle {
            emit("oracle", &mut || Ok(brute_shortest_cover(&t, limits.oracle_budget)?.shortest.length))?;
        }
    }
    Ok(())
}
