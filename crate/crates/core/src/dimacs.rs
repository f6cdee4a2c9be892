//! Shortest-path `.gr` files: `c` comments, one `p sp <n> <m>` line and
//! `a <u> <v> <w>` arcs with 1-based node ids.

use std::io::{BufRead, Write};

use crate::graph::{Graph, GraphError};

fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

/// Reads a graph, converting ids to 0-based. Parallel arcs are collapsed
/// by [`Graph::build`], so `E` may be below the declared arc count.
pub fn load_dimacs<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs: Vec<(usize, usize, i64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "duplicate problem line".into(),
                    });
                }
                match toks.next() {
                    Some("sp") => {}
                    other => {
                        return Err(GraphError::Parse {
                            line: lineno,
                            msg: format!("expected `sp` problem type, got {other:?}"),
                        })
                    }
                }
                let n = parse_field(toks.next(), lineno, "node count")?;
                let m = parse_field(toks.next(), lineno, "arc count")?;
                arcs.reserve(m);
                header = Some((n, m));
            }
            Some("a") => {
                let (n, _) = header.ok_or(GraphError::MissingHeader)?;
                let u: usize = parse_field(toks.next(), lineno, "tail")?;
                let v: usize = parse_field(toks.next(), lineno, "head")?;
                let w: i64 = parse_field(toks.next(), lineno, "weight")?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(GraphError::Parse {
                            line: lineno,
                            msg: format!("node id {id} outside 1..={n}"),
                        });
                    }
                }
                arcs.push((u - 1, v - 1, w));
            }
            Some(other) => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                })
            }
        }
        if toks.next().is_some() && !line.starts_with('c') {
            return Err(GraphError::Parse {
                line: lineno,
                msg: "trailing tokens".into(),
            });
        }
    }
    let (n, m) = header.ok_or(GraphError::MissingHeader)?;
    if arcs.len() != m {
        return Err(GraphError::HeaderMismatch {
            declared: m,
            found: arcs.len(),
        });
    }
    Graph::build(n, arcs)
}

/// Writes `g` in root-major stored order, so `load_dimacs(save_dimacs(g)) == g`.
pub fn save_dimacs<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "p sp {} {}", g.node_count(), g.arc_count())?;
    for (u, v, w) in g.arcs() {
        writeln!(out, "a {} {} {}", u.0 + 1, v.0 + 1, w)?;
    }
    out.flush()
}
