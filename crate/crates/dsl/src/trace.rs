//! Explains an evaluation: the value of every subterm on the interval it was
//! consulted at, the split that decided each chop, and the table of every
//! fixed point.

use std::fmt::Write;

use ivdr_core::pred::eval;
use ivdr_core::{Carrier, Interval, IntvPred, Result, Stream};

pub fn trace(g: &IntvPred, iv: Interval, s: &Stream, carrier: &Carrier) -> Result<String> {
    let mut out = String::new();
    node(g, iv, s, carrier, 0, &mut out)?;
    Ok(out)
}

fn line(out: &mut String, depth: usize, text: impl std::fmt::Display) {
    let _ = writeln!(out, "{:width$}{text}", "", width = 2 * depth);
}

fn node(
    g: &IntvPred,
    iv: Interval,
    s: &Stream,
    carrier: &Carrier,
    depth: usize,
    out: &mut String,
) -> Result<()> {
    let v = eval(g, iv, s, carrier)?;
    line(out, depth, format_args!("{v:<5} {g} on {iv}"));
    let d = depth + 1;
    match g {
        IntvPred::And(a, b) | IntvPred::Or(a, b) => {
            node(a, iv, s, carrier, d, out)?;
            node(b, iv, s, carrier, d, out)?;
        }
        IntvPred::Not(a) | IntvPred::NonEmpty(a) => node(a, iv, s, carrier, d, out)?,
        IntvPred::Possibly(_) | IntvPred::Definitely(_) => {
            let states: Vec<String> = s
                .apparent(iv)
                .iter()
                .map(|st| s.universe().display_state(st.as_slice()))
                .collect();
            line(out, d, format_args!("apparent states: {}", states.join(" ")));
        }
        IntvPred::Chop(a, b) => {
            let mut decided = false;
            for (d1, d2) in iv.splits() {
                if eval(a, d1, s, carrier)? && eval(b, d2, s, carrier)? {
                    line(out, d, format_args!("split {d1} | {d2}"));
                    node(a, d1, s, carrier, d + 1, out)?;
                    node(b, d2, s, carrier, d + 1, out)?;
                    decided = true;
                    break;
                }
            }
            if !decided {
                if carrier.is_infinite(iv) && eval(a, iv, s, carrier)? {
                    line(out, d, "infinite interval: left operand holds throughout");
                    node(a, iv, s, carrier, d + 1, out)?;
                } else {
                    line(out, d, "no split satisfies both operands");
                }
            }
        }
        IntvPred::Omega(a) => {
            let mut holds = Vec::new();
            for x in carrier.all_intervals() {
                if eval(g, x, s, carrier)? {
                    holds.push(x.to_string());
                }
            }
            line(out, d, format_args!("fixed point holds on: {}", holds.join(" ")));
            if !iv.is_empty() {
                node(a, iv, s, carrier, d, out)?;
            }
        }
        _ => {}
    }
    Ok(())
}
