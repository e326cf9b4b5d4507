//! Line tokenizer and statement parser.

use crate::engine::SpinBasis;

use super::{ExperimentAst, Located, ParseDiagnostic, Statement};

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    // A `#` starts a comment anywhere in the line.
    let code = match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start = None;
    for (idx, ch) in code.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token { text: &code[s..idx], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        tokens.push(Token { text: &code[s..], col: s + 1 });
    }
    tokens
}

fn is_mode_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase() || c == '_')
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).copied();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.col + t.text.len())
            .unwrap_or(1)
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::error(self.line, col, msg)
    }

    fn expect_int(&mut self, what: &str) -> Result<usize, ParseDiagnostic> {
        let col = self.peek().map(|t| t.col).unwrap_or_else(|| self.end_col());
        match self.next() {
            Some(t) => t
                .text
                .parse::<usize>()
                .map_err(|_| ParseDiagnostic::error(self.line, t.col, format!("integer expected for {what}"))),
            None => Err(self.err(col, format!("integer expected for {what}"))),
        }
    }

    fn expect_mode(&mut self, what: &str) -> Result<String, ParseDiagnostic> {
        let col = self.peek().map(|t| t.col).unwrap_or_else(|| self.end_col());
        match self.next() {
            Some(t) if is_mode_name(t.text) => Ok(t.text.to_string()),
            Some(t) => Err(ParseDiagnostic::error(
                self.line,
                t.col,
                format!("mode name expected for {what}"),
            )),
            None => Err(self.err(col, format!("mode name expected for {what}"))),
        }
    }

    fn expect_arrow(&mut self) -> Result<(), ParseDiagnostic> {
        let col = self.peek().map(|t| t.col).unwrap_or_else(|| self.end_col());
        match self.next() {
            Some(t) if t.text == "->" => Ok(()),
            Some(t) => Err(ParseDiagnostic::error(self.line, t.col, "`->` expected")),
            None => Err(self.err(col, "`->` expected")),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseDiagnostic> {
        match self.next() {
            None => Ok(()),
            Some(t) => Err(ParseDiagnostic::error(
                self.line,
                t.col,
                format!("unexpected trailing token `{}`", t.text),
            )),
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseDiagnostic> {
        let keyword = self.next().expect("caller checked non-empty");
        let statement = match keyword.text {
            "atoms" => Statement::Atoms { n: self.expect_int("the atom count")? },
            "split" => {
                let input = self.expect_mode("the splitter input")?;
                self.expect_arrow()?;
                let out1 = self.expect_mode("the reflected output")?;
                let out2 = self.expect_mode("the transmitted output")?;
                Statement::Split { input, out1, out2 }
            }
            "cross" => {
                let mode = self.expect_mode("the crossed mode")?;
                let atom = self.expect_int("the atom index")?;
                Statement::Cross { mode, atom }
            }
            "block" => Statement::Block { mode: self.expect_mode("the blocked mode")? },
            "merge" => {
                let in1 = self.expect_mode("the first merge input")?;
                let in2 = self.expect_mode("the second merge input")?;
                self.expect_arrow()?;
                let out1 = self.expect_mode("the first merge output")?;
                let out2 = self.expect_mode("the second merge output")?;
                Statement::Merge { in1, in2, out1, out2 }
            }
            "postselect" => Statement::Postselect { mode: self.expect_mode("the kept mode")? },
            "measure" => {
                let atom = self.expect_int("the atom index")?;
                let basis = match self.next() {
                    Some(t) if t.text == "z" => SpinBasis::Z,
                    Some(t) if t.text == "x" => SpinBasis::X,
                    Some(t) => {
                        return Err(ParseDiagnostic::error(
                            self.line,
                            t.col,
                            "measurement basis must be `z` or `x`",
                        ))
                    }
                    None => {
                        return Err(self.err(self.end_col(), "measurement basis must be `z` or `x`"))
                    }
                };
                let keep = match self.peek() {
                    Some(t) if t.text == "keep" => {
                        self.next();
                        match self.next() {
                            Some(t) if t.text == "+" => Some(true),
                            Some(t) if t.text == "-" => Some(false),
                            Some(t) => {
                                return Err(ParseDiagnostic::error(
                                    self.line,
                                    t.col,
                                    "keep value must be `+` or `-`",
                                ))
                            }
                            None => {
                                return Err(
                                    self.err(self.end_col(), "keep value must be `+` or `-`")
                                )
                            }
                        }
                    }
                    _ => None,
                };
                Statement::Measure { atom, basis, keep }
            }
            "reverse" => Statement::Reverse { atom: self.expect_int("the atom index")? },
            other => {
                return Err(ParseDiagnostic::error(
                    self.line,
                    keyword.col,
                    format!("unknown keyword `{other}`"),
                ))
            }
        };
        self.expect_end()?;
        Ok(statement)
    }
}

/// Parses a program: one statement per line, `#` comments, ASCII encoding.
/// Any problem yields the full diagnostic list and no AST.
pub fn parse(source: &str) -> Result<ExperimentAst, Vec<ParseDiagnostic>> {
    let mut statements = Vec::new();
    let mut diagnostics = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        if let Some(bad) = raw.chars().find(|c| !c.is_ascii()) {
            let col = raw.chars().take_while(|c| c.is_ascii()).count() + 1;
            diagnostics.push(ParseDiagnostic::error(
                line,
                col,
                format!("non-ASCII character {bad:?}"),
            ));
            continue;
        }
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let mut parser = LineParser { line, tokens, pos: 0 };
        match parser.statement() {
            Ok(statement) => statements.push(Located { statement, line }),
            Err(d) => diagnostics.push(d),
        }
    }
    if diagnostics.is_empty() {
        Ok(ExperimentAst { statements })
    } else {
        Err(diagnostics)
    }
}
