use std::fmt;

/// Collected command output: `key=value` lines, or aligned text with `--pretty`.
pub struct Output {
    pretty: bool,
    blocks: Vec<Block>,
}

enum Block {
    /// One value per line.
    Record(Vec<(&'static str, String)>),
    /// Consecutive rows with the same keys form a table.
    Row(Vec<(&'static str, String)>),
}

impl Output {
    pub fn new(pretty: bool) -> Output {
        Output {
            pretty,
            blocks: Vec::new(),
        }
    }

    pub fn record(&mut self, fields: Vec<(&'static str, String)>) {
        self.blocks.push(Block::Record(fields));
    }

    pub fn row(&mut self, fields: Vec<(&'static str, String)>) {
        self.blocks.push(Block::Row(fields));
    }
}

fn keys(r: &[(&'static str, String)]) -> Vec<&'static str> {
    r.iter().map(|(k, _)| *k).collect()
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.blocks.len() {
            match &self.blocks[i] {
                Block::Record(fields) => {
                    let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in fields {
                        if self.pretty {
                            writeln!(f, "{k:<w$}  {v}")?;
                        } else {
                            writeln!(f, "{k}={v}")?;
                        }
                    }
                    i += 1;
                }
                Block::Row(first) => {
                    let mut table = vec![first];
                    while let Some(Block::Row(next)) = self.blocks.get(i + table.len()) {
                        if keys(next) != keys(first) {
                            break;
                        }
                        table.push(next);
                    }
                    i += table.len();
                    if !self.pretty {
                        for r in &table {
                            let line: Vec<String> =
                                r.iter().map(|(k, v)| format!("{k}={v}")).collect();
                            writeln!(f, "{}", line.join(" "))?;
                        }
                        continue;
                    }
                    let widths: Vec<usize> = (0..first.len())
                        .map(|c| {
                            table
                                .iter()
                                .map(|r| r[c].1.len())
                                .chain([first[c].0.len()])
                                .max()
                                .unwrap()
                        })
                        .collect();
                    let line = |cells: Vec<&str>| -> String {
                        let padded: Vec<String> = cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, &w)| format!("{c:>w$}"))
                            .collect();
                        padded.join("  ")
                    };
                    writeln!(f, "{}", line(keys(first)))?;
                    for r in &table {
                        writeln!(f, "{}", line(r.iter().map(|(_, v)| v.as_str()).collect()))?;
                    }
                }
            }
        }
        Ok(())
    }
}
