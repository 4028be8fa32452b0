use std::collections::HashSet;

use super::{Color, RotationSystem, TilingEdge, TilingError, TilingVertex};
use crate::words::alphabet_name_ok;

fn err(line: usize, message: impl Into<String>) -> TilingError {
    TilingError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format: `genus: g`, `vertex <id> <black|white> : <darts ccw>`,
/// `edge <id> : <dart> <dart>`. Blank lines and `#` comments are ignored.
pub(super) fn parse(text: &str) -> Result<RotationSystem, TilingError> {
    let mut genus = None;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut vertex_darts = HashSet::new();
    let mut edge_darts = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `:`"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let body: Vec<&str> = body.split_whitespace().collect();
        match head.as_slice() {
            ["genus"] => {
                if genus.is_some() {
                    return Err(err(line_no, "genus declared twice"));
                }
                let [g] = body.as_slice() else {
                    return Err(err(line_no, "expected one genus value"));
                };
                genus = Some(
                    g.parse::<usize>()
                        .map_err(|_| err(line_no, format!("bad genus `{g}`")))?,
                );
            }
            ["vertex", id, color] => {
                let color = match *color {
                    "black" => Color::Black,
                    "white" => Color::White,
                    other => return Err(err(line_no, format!("unknown color `{other}`"))),
                };
                check_name(line_no, id)?;
                let mut darts = Vec::new();
                for d in body {
                    check_name(line_no, d)?;
                    if !vertex_darts.insert(d.to_string()) {
                        return Err(err(line_no, format!("duplicate dart `{d}`")));
                    }
                    darts.push(d.to_string());
                }
                vertices.push(TilingVertex {
                    id: id.to_string(),
                    color,
                    darts,
                });
            }
            ["edge", id] => {
                check_name(line_no, id)?;
                let [d1, d2] = body.as_slice() else {
                    return Err(err(line_no, "an edge has exactly two darts"));
                };
                for d in [d1, d2] {
                    check_name(line_no, d)?;
                    if !edge_darts.insert(d.to_string()) {
                        return Err(err(line_no, format!("duplicate dart `{d}`")));
                    }
                }
                edges.push(TilingEdge {
                    id: id.to_string(),
                    darts: [d1.to_string(), d2.to_string()],
                });
            }
            _ => return Err(err(line_no, format!("unrecognized line `{line}`"))),
        }
    }
    Ok(RotationSystem::new(genus, vertices, edges))
}

fn check_name(line: usize, name: &str) -> Result<(), TilingError> {
    if alphabet_name_ok(name) {
        Ok(())
    } else {
        Err(err(line, format!("invalid identifier `{name}`")))
    }
}

pub(super) fn render(t: &RotationSystem) -> String {
    let mut s = String::new();
    if let Some(g) = t.declared_genus {
        s.push_str(&format!("genus: {g}\n"));
    }
    for v in &t.vertices {
        s.push_str(&format!(
            "vertex {} {} : {}\n",
            v.id,
            v.color.as_str(),
            v.darts.join(" ")
        ));
    }
    for e in &t.edges {
        s.push_str(&format!("edge {} : {} {}\n", e.id, e.darts[0], e.darts[1]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_dart_rejected_with_line() {
        let text = "vertex u white : x y\nvertex v black : x z\n";
        assert_eq!(
            parse(text).unwrap_err(),
            TilingError::Parse {
                line: 2,
                message: "duplicate dart `x`".into()
            }
        );
    }

    #[test]
    fn render_round_trip() {
        let t = RotationSystem::genus2_fixture();
        assert_eq!(parse(&render(&t)).unwrap(), t);
    }
}
