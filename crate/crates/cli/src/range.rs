//! Parameter grids such as `m=1,n=2..6,t=1..n`.
//!
//! Each variable takes a single value `a` or an inclusive range `a..b`, and a
//! bound may name a variable that comes earlier in the order `m, n, t`.
//! Missing variables default to `m=1` and `t=1..n`; `n` is required.

use std::collections::HashMap;

use nclab::Params;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Bound {
    Lit(usize),
    Var(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Span {
    lo: Bound,
    hi: Bound,
}

/// A parsed grid; expand it with [`Grid::params`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    m: Span,
    n: Span,
    t: Span,
}

const ORDER: [char; 3] = ['m', 'n', 't'];

fn parse_bound(s: &str) -> Result<Bound, String> {
    let s = s.trim();
    match s {
        "m" | "n" | "t" => Ok(Bound::Var(s.chars().next().unwrap_or('n'))),
        _ => s
            .parse::<usize>()
            .map(Bound::Lit)
            .map_err(|_| format!("'{s}' is neither a number nor one of m, n, t")),
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    match s.split_once("..") {
        Some((lo, hi)) => Ok(Span {
            lo: parse_bound(lo)?,
            hi: parse_bound(hi.trim_start_matches('='))?,
        }),
        None => {
            let b = parse_bound(s)?;
            Ok(Span { lo: b.clone(), hi: b })
        }
    }
}

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut spans: HashMap<char, Span> = HashMap::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (name, spec) = item
                .split_once('=')
                .ok_or_else(|| format!("'{item}' is not of the form var=spec"))?;
            let var = match name.trim() {
                "m" => 'm',
                "n" => 'n',
                "t" => 't',
                other => return Err(format!("unknown variable '{other}'")),
            };
            let span = parse_span(spec)?;
            let pos = ORDER.iter().position(|&c| c == var).unwrap_or(0);
            for b in [&span.lo, &span.hi] {
                if let Bound::Var(c) = b {
                    let cpos = ORDER.iter().position(|x| x == c).unwrap_or(0);
                    if cpos >= pos {
                        return Err(format!("bound of {var} may only refer to variables before it"));
                    }
                }
            }
            if spans.insert(var, span).is_some() {
                return Err(format!("variable {var} given twice"));
            }
        }
        let n = spans.remove(&'n').ok_or("the range must fix n")?;
        let m = spans.remove(&'m').unwrap_or(Span {
            lo: Bound::Lit(1),
            hi: Bound::Lit(1),
        });
        let t = spans.remove(&'t').unwrap_or(Span {
            lo: Bound::Lit(1),
            hi: Bound::Var('n'),
        });
        Ok(Grid { m, n, t })
    }
}

fn resolve(b: &Bound, env: &HashMap<char, usize>) -> usize {
    match b {
        Bound::Lit(v) => *v,
        Bound::Var(c) => env[c],
    }
}

impl Grid {
    /// All valid triples in the order `m`, then `n`, then `t`.
    /// Triples that fail validation (e.g. `t > n`) are skipped.
    pub fn params(&self) -> Vec<Params> {
        let mut out = Vec::new();
        let mut env = HashMap::new();
        for m in resolve(&self.m.lo, &env)..=resolve(&self.m.hi, &env) {
            env.insert('m', m);
            for n in resolve(&self.n.lo, &env)..=resolve(&self.n.hi, &env) {
                env.insert('n', n);
                for t in resolve(&self.t.lo, &env)..=resolve(&self.t.hi, &env) {
                    if let Ok(p) = Params::new(m, n, t) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}
