use crate::error::Result;
use crate::expr::{CmpOp, Operand, StatePred};
use crate::pred::IntvPred;
use crate::state::Stream;
use crate::time::{adjoins, Carrier, Interval};

/// Reference evaluator following the definitions clause by clause, with no
/// sharing. `ω` is unfolded coinductively: meeting an interval that is
/// already being unfolded counts as success.
pub fn eval_naive(g: &IntvPred, iv: Interval, s: &Stream, carrier: &Carrier) -> Result<bool> {
    carrier.check(iv)?;
    s.check_carrier(carrier)?;
    Naive { s, carrier }.eval(g, iv)
}

struct Naive<'a> {
    s: &'a Stream,
    carrier: &'a Carrier,
}

impl Naive<'_> {
    fn state(&self, c: &StatePred, t: usize) -> Result<bool> {
        c.eval(self.s.universe(), self.s.at(t))
    }

    fn eval(&self, g: &IntvPred, iv: Interval) -> Result<bool> {
        let s = self.s;
        Ok(match g {
            IntvPred::Always(c) => {
                for t in iv.points() {
                    if !self.state(c, t)? {
                        return Ok(false);
                    }
                }
                true
            }
            IntvPred::Sometime(c) => {
                for t in iv.points() {
                    if self.state(c, t)? {
                        return Ok(true);
                    }
                }
                false
            }
            IntvPred::Definitely(c) => {
                for st in s.apparent(iv) {
                    if !c.eval(s.universe(), &st.0)? {
                        return Ok(false);
                    }
                }
                true
            }
            IntvPred::Possibly(c) => {
                for st in s.apparent(iv) {
                    if c.eval(s.universe(), &st.0)? {
                        return Ok(true);
                    }
                }
                false
            }
            IntvPred::Empty => iv.is_empty(),
            IntvPred::Infinite => self.carrier.is_infinite(iv),
            IntvPred::Finite => !iv.is_empty() && !self.carrier.is_infinite(iv),
            IntvPred::Lit(b) => *b,
            IntvPred::NonEmpty(a) => !iv.is_empty() && self.eval(a, iv)?,
            IntvPred::Not(a) => !self.eval(a, iv)?,
            IntvPred::And(a, b) => self.eval(a, iv)? && self.eval(b, iv)?,
            IntvPred::Or(a, b) => self.eval(a, iv)? || self.eval(b, iv)?,
            IntvPred::Chop(a, b) => {
                for (d1, d2) in iv.splits() {
                    if self.eval(a, d1)? && self.eval(b, d2)? {
                        return Ok(true);
                    }
                }
                self.carrier.is_infinite(iv) && self.eval(a, iv)?
            }
            IntvPred::Omega(a) => self.omega(a, iv, &mut Vec::new())?,
            IntvPred::Prev(a) => {
                for d0 in self.all_before(iv) {
                    if self.eval(a, d0)? {
                        return Ok(true);
                    }
                }
                false
            }
            IntvPred::PrevHolds(c) => {
                let ne_always = IntvPred::ne(IntvPred::Always(c.clone()));
                for d0 in self.all_before(iv) {
                    if self.eval(&ne_always, d0)? {
                        return Ok(true);
                    }
                }
                false
            }
            IntvPred::Stable(v) => {
                let i = s.universe().resolve(v)?;
                for &k in s.universe().domain(i).values() {
                    let eq = StatePred::cmp(Operand::Var(v.clone()), CmpOp::Eq, Operand::Const(k));
                    let here = IntvPred::and(IntvPred::PrevHolds(eq.clone()), IntvPred::Always(eq));
                    if self.eval(&here, iv)? {
                        return Ok(true);
                    }
                }
                false
            }
            IntvPred::StableSet(vs) => {
                for v in vs {
                    if !self.eval(&IntvPred::Stable(v.clone()), iv)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    fn all_before(&self, iv: Interval) -> Vec<Interval> {
        self.carrier
            .all_intervals()
            .into_iter()
            .filter(|&d0| adjoins(d0, iv))
            .collect()
    }

    fn omega(&self, g: &IntvPred, iv: Interval, stack: &mut Vec<Interval>) -> Result<bool> {
        if stack.contains(&iv) || iv.is_empty() {
            return Ok(true);
        }
        if self.carrier.is_infinite(iv) && self.eval(g, iv)? {
            return Ok(true);
        }
        stack.push(iv);
        let mut found = false;
        for (d1, d2) in iv.splits() {
            if self.eval(g, d1)? && self.omega(g, d2, stack)? {
                found = true;
                break;
            }
        }
        stack.pop();
        Ok(found)
    }
}
