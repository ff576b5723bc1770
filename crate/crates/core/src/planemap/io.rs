//! PMAP text format.
//!
//! ```text
//! # comments run to end of line
//! pmap <V> <E>
//! v <vertex-id> : <half-edge-id> <half-edge-id> ...
//! ```
//!
//! One `v` line per vertex, ids dense from 0, listing the clockwise rotation.
//! Half-edge ids lie in `[0, 2E)`; edge id is `h / 2` and the twin is `h ^ 1`.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{HalfEdge, MapError, PlaneMap};

fn syntax(line: usize, message: impl Into<String>) -> MapError {
    MapError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, token: &str) -> Result<T, MapError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected a number, found `{token}`")))
}

impl PlaneMap {
    pub fn parse_pmap(text: &str) -> Result<Self, MapError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "missing `pmap` header"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let [keyword, v, e] = tokens.as_slice() else {
            return Err(syntax(hline, "header must be `pmap <V> <E>`"));
        };
        if *keyword != "pmap" {
            return Err(syntax(hline, "header must start with `pmap`"));
        }
        let vertex_count: usize = number(hline, v)?;
        let edge_count: usize = number(hline, e)?;
        let limit = 2 * edge_count;

        let mut rotations: Vec<Option<Vec<HalfEdge>>> = vec![None; vertex_count];
        let mut seen = vec![false; limit];
        for (ln, line) in lines {
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(ln, "vertex line must be `v <id> : <half-edges>`"))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            let ["v", id] = head.as_slice() else {
                return Err(syntax(ln, "vertex line must start with `v <id>`"));
            };
            let id: usize = number(ln, id)?;
            if id >= vertex_count {
                return Err(syntax(ln, format!("vertex id {id} out of range")));
            }
            if rotations[id].is_some() {
                return Err(syntax(ln, format!("vertex {id} listed twice")));
            }
            let mut rot = Vec::new();
            for token in rest.split_whitespace() {
                let h: usize = number(ln, token)?;
                if h >= limit {
                    return Err(MapError::HalfEdgeOutOfRange {
                        half_edge: h,
                        limit,
                    });
                }
                if seen[h] {
                    return Err(MapError::DuplicateHalfEdge(h));
                }
                seen[h] = true;
                rot.push(h);
            }
            rotations[id] = Some(rot);
        }
        if let Some(v) = rotations.iter().position(Option::is_none) {
            return Err(syntax(0, format!("vertex {v} has no `v` line")));
        }
        if let Some(h) = seen.iter().position(|&s| !s) {
            return Err(MapError::MissingHalfEdge(h));
        }
        PlaneMap::from_rotations(rotations.into_iter().flatten().collect())
    }

    pub fn to_pmap(&self) -> String {
        let mut out = format!("pmap {} {}\n", self.vertex_count(), self.edge_count());
        for (v, rot) in self.rotations.iter().enumerate() {
            let _ = write!(out, "v {v} :");
            for h in rot {
                let _ = write!(out, " {h}");
            }
            out.push('\n');
        }
        out
    }
}
