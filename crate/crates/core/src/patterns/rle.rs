//! Run-length encoded pattern text.

use thiserror::Error;

use crate::engine::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RleError {
    #[error("line {line}, column {column}: malformed header: {reason}")]
    MalformedHeader {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("line {line}, column {column}: unexpected character `{found}`")]
    UnexpectedCharacter {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("line {line}, column {column}: missing `!` terminator")]
    MissingTerminator { line: usize, column: usize },
    #[error("line {line}, column {column}: unsupported rule `{rule}` (only B3/S23)")]
    UnsupportedRule {
        line: usize,
        column: usize,
        rule: String,
    },
    #[error("pattern has no live cells")]
    Empty,
}

/// Decoded body plus the declared header size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RleBody {
    pub width: i32,
    pub height: i32,
    pub cells: Vec<Cell>,
    pub comments: Vec<String>,
}

fn check_rule(rule: &str, line: usize, column: usize) -> Result<(), RleError> {
    let norm: String = rule
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_uppercase();
    if norm == "B3/S23" {
        Ok(())
    } else {
        Err(RleError::UnsupportedRule {
            line,
            column,
            rule: rule.trim().to_string(),
        })
    }
}

fn parse_header(text: &str, line: usize) -> Result<(i32, i32, bool), RleError> {
    let mut width = None;
    let mut height = None;
    let mut saw_rule = false;
    let mut column = 1;
    for part in text.split(',') {
        let col = column + (part.len() - part.trim_start().len());
        column += part.len() + 1;
        let Some((key, value)) = part.split_once('=') else {
            return Err(RleError::MalformedHeader {
                line,
                column: col,
                reason: format!("expected `key = value`, got `{}`", part.trim()),
            });
        };
        match key.trim() {
            "x" | "y" => {
                let v: i32 = value
                    .trim()
                    .parse()
                    .map_err(|_| RleError::MalformedHeader {
                        line,
                        column: col,
                        reason: format!("bad size `{}`", value.trim()),
                    })?;
                if key.trim() == "x" {
                    width = Some(v)
                } else {
                    height = Some(v)
                }
            }
            "rule" => {
                check_rule(value, line, col)?;
                saw_rule = true;
            }
            other => {
                return Err(RleError::MalformedHeader {
                    line,
                    column: col,
                    reason: format!("unknown key `{other}`"),
                })
            }
        }
    }
    match (width, height) {
        (Some(w), Some(h)) if w >= 0 && h >= 0 => Ok((w, h, saw_rule)),
        _ => Err(RleError::MalformedHeader {
            line,
            column: 1,
            reason: "header needs `x` and `y`".into(),
        }),
    }
}

pub fn parse(text: &str) -> Result<RleBody, RleError> {
    let mut comments = Vec::new();
    let mut header = None;
    let mut cells = Vec::new();
    let (mut x, mut y) = (0i32, 0i32);
    let mut count: Option<i32> = None;
    let mut last = (1, 1);

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if header.is_none() {
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                comments.push(
                    c.trim_start_matches(|ch: char| ch.is_ascii_alphabetic())
                        .trim()
                        .to_string(),
                );
                continue;
            }
            header = Some(parse_header(trimmed, line)?);
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with("rule") {
            let Some((_, value)) = trimmed.split_once('=') else {
                return Err(RleError::MalformedHeader {
                    line,
                    column: 1,
                    reason: "expected `rule = ...`".into(),
                });
            };
            check_rule(value, line, raw.find('=').unwrap() + 2)?;
            continue;
        }
        for (cidx, ch) in raw.chars().enumerate() {
            let column = cidx + 1;
            last = (line, column + 1);
            match ch {
                '0'..='9' => {
                    let d = ch.to_digit(10).unwrap() as i32;
                    count = Some(count.unwrap_or(0).saturating_mul(10).saturating_add(d));
                }
                'b' | '.' => {
                    x += count.take().unwrap_or(1);
                }
                'o' | 'A' => {
                    let n = count.take().unwrap_or(1);
                    cells.extend((0..n).map(|i| Cell::new(x + i, y)));
                    x += n;
                }
                '$' => {
                    y += count.take().unwrap_or(1);
                    x = 0;
                }
                '!' => {
                    return finish(header.unwrap(), cells, comments);
                }
                c if c.is_whitespace() => {}
                found => {
                    return Err(RleError::UnexpectedCharacter {
                        line,
                        column,
                        found,
                    })
                }
            }
        }
    }
    match header {
        None => Err(RleError::MalformedHeader {
            line: 1,
            column: 1,
            reason: "missing `x = .., y = ..` header".into(),
        }),
        Some(_) => Err(RleError::MissingTerminator {
            line: last.0,
            column: last.1,
        }),
    }
}

fn finish(
    header: (i32, i32, bool),
    cells: Vec<Cell>,
    comments: Vec<String>,
) -> Result<RleBody, RleError> {
    if cells.is_empty() {
        return Err(RleError::Empty);
    }
    Ok(RleBody {
        width: header.0,
        height: header.1,
        cells,
        comments,
    })
}

const LINE_WIDTH: usize = 70;

fn push_run(out: &mut Vec<String>, n: usize, tag: char) {
    // Short runs are spelled out; the count only pays off from four on.
    if n <= 3 {
        out.push(std::iter::repeat_n(tag, n).collect());
    } else {
        out.push(format!("{n}{tag}"));
    }
}

/// Encodes cells already normalised so that the minimum offset is `(0, 0)`.
pub fn emit(cells: &[Cell], comments: &[String]) -> String {
    let width = cells.iter().map(|c| c.x).max().map_or(0, |m| m + 1);
    let height = cells.iter().map(|c| c.y).max().map_or(0, |m| m + 1);
    let mut sorted = cells.to_vec();
    sorted.sort_by_key(|c| (c.y, c.x));
    sorted.dedup();

    let mut tokens: Vec<String> = Vec::new();
    let mut row = 0;
    let mut i = 0;
    let mut pending_rows = 0usize;
    while i < sorted.len() {
        let y = sorted[i].y;
        pending_rows += (y - row) as usize;
        if pending_rows > 0 {
            push_run(&mut tokens, pending_rows, '$');
            pending_rows = 0;
        }
        row = y;
        let mut x = 0;
        while i < sorted.len() && sorted[i].y == y {
            let start = sorted[i].x;
            let mut end = start;
            i += 1;
            while i < sorted.len() && sorted[i].y == y && sorted[i].x == end + 1 {
                end += 1;
                i += 1;
            }
            if start > x {
                push_run(&mut tokens, (start - x) as usize, 'b');
            }
            push_run(&mut tokens, (end - start + 1) as usize, 'o');
            x = end + 1;
        }
    }
    tokens.push("!".into());

    let mut out = String::new();
    for c in comments {
        out.push_str("#C ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("x = {width}, y = {height}\n"));
    let mut line_len = 0;
    for t in tokens {
        if line_len + t.len() > LINE_WIDTH {
            out.push('\n');
            line_len = 0;
        }
        line_len += t.len();
        out.push_str(&t);
    }
    out
}
