//! Recursive-descent parser for Penman notation.
//!
//! Two passes: the first builds a node tree and records every atom with its
//! position, the second resolves atoms against the set of instantiated
//! variables. Resolution is needed because Penman allows forward references
//! (`:ARG0 b` before `(b / boy)` appears).

use std::collections::HashMap;

use super::{AmrGraph, Metadata, PenmanError, Pos, INTRINSIC_OF_ROLES};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Slash,
    Role(String),
    Atom(String),
    Str(String),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Token, Pos)>, PenmanError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let pos = self.pos();
            let Some(&c) = self.chars.peek() else { break };
            match c {
                '(' => {
                    self.bump();
                    out.push((Token::Open, pos));
                }
                ')' => {
                    self.bump();
                    out.push((Token::Close, pos));
                }
                '/' => {
                    self.bump();
                    out.push((Token::Slash, pos));
                }
                '"' => {
                    self.bump();
                    let mut s = String::from("\"");
                    loop {
                        match self.bump() {
                            Some('"') => {
                                s.push('"');
                                break;
                            }
                            Some(c) => s.push(c),
                            None => return Err(PenmanError::UnterminatedString { pos }),
                        }
                    }
                    out.push((Token::Str(s), pos));
                }
                ':' => {
                    self.bump();
                    let label = self.take_symbol();
                    if label.is_empty() {
                        return Err(PenmanError::UnexpectedToken {
                            expected: "role label after `:`",
                            found: self.peek_desc(),
                            pos,
                        });
                    }
                    out.push((Token::Role(label), pos));
                }
                _ => {
                    let sym = self.take_symbol();
                    if sym.is_empty() {
                        return Err(PenmanError::UnexpectedToken {
                            expected: "token",
                            found: c.to_string(),
                            pos,
                        });
                    }
                    out.push((Token::Atom(sym), pos));
                }
            }
        }
        Ok(out)
    }

    fn take_symbol(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | '/' | ':' | '"') {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn peek_desc(&mut self) -> String {
        match self.chars.peek() {
            Some(c) => c.to_string(),
            None => "end of input".into(),
        }
    }
}

/// A raw edge target before variable resolution.
enum RawTarget {
    Node(usize), // index into nodes
    Atom { text: String, quoted: bool, pos: Pos },
}

struct RawNode {
    var: String,
    var_pos: Pos,
    concept: String,
    edges: Vec<(String, Pos, RawTarget)>,
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    cursor: usize,
    nodes: Vec<RawNode>,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&(Token, Pos)> {
        self.tokens.get(self.cursor)
    }

    fn next(&mut self) -> Option<(Token, Pos)> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn here(&self) -> Pos {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    /// Parses `( var / concept (:role target)* )`, returns the node index.
    fn node(&mut self) -> Result<usize, PenmanError> {
        let open_pos = match self.next() {
            Some((Token::Open, p)) => p,
            Some((Token::Close, pos)) => return Err(PenmanError::UnbalancedParens { pos }),
            Some((tok, pos)) => {
                return Err(PenmanError::UnexpectedToken {
                    expected: "`(`",
                    found: describe(&tok),
                    pos,
                })
            }
            None => return Err(PenmanError::UnbalancedParens { pos: self.end }),
        };
        let (var, var_pos) = match self.next() {
            Some((Token::Atom(v), p)) => (v, p),
            Some((Token::Close, pos)) => return Err(PenmanError::EmptyGraph { pos }),
            Some((tok, pos)) => {
                return Err(PenmanError::UnexpectedToken {
                    expected: "variable",
                    found: describe(&tok),
                    pos,
                })
            }
            None => return Err(PenmanError::UnbalancedParens { pos: open_pos }),
        };
        match self.next() {
            Some((Token::Slash, _)) => {}
            Some((tok, pos)) => {
                return Err(PenmanError::UnexpectedToken {
                    expected: "`/`",
                    found: describe(&tok),
                    pos,
                })
            }
            None => return Err(PenmanError::UnbalancedParens { pos: open_pos }),
        }
        let concept = match self.next() {
            Some((Token::Atom(c), _)) => c,
            Some((tok, pos)) => {
                return Err(PenmanError::UnexpectedToken {
                    expected: "concept label",
                    found: describe(&tok),
                    pos,
                })
            }
            None => return Err(PenmanError::UnbalancedParens { pos: open_pos }),
        };
        let idx = self.nodes.len();
        self.nodes.push(RawNode {
            var,
            var_pos,
            concept,
            edges: Vec::new(),
        });
        loop {
            match self.peek() {
                Some((Token::Close, _)) => {
                    self.next();
                    return Ok(idx);
                }
                Some((Token::Role(_), _)) => {
                    let (role, role_pos) = match self.next() {
                        Some((Token::Role(r), p)) => (r, p),
                        _ => unreachable!(),
                    };
                    let target = match self.peek() {
                        Some((Token::Open, _)) => RawTarget::Node(self.node()?),
                        Some((Token::Atom(_), _)) => match self.next() {
                            Some((Token::Atom(a), p)) => RawTarget::Atom {
                                text: a,
                                quoted: false,
                                pos: p,
                            },
                            _ => unreachable!(),
                        },
                        Some((Token::Str(_), _)) => match self.next() {
                            Some((Token::Str(s), p)) => RawTarget::Atom {
                                text: s,
                                quoted: true,
                                pos: p,
                            },
                            _ => unreachable!(),
                        },
                        Some((tok, pos)) => {
                            return Err(PenmanError::UnexpectedToken {
                                expected: "edge target",
                                found: describe(tok),
                                pos: *pos,
                            })
                        }
                        None => return Err(PenmanError::UnbalancedParens { pos: role_pos }),
                    };
                    self.nodes[idx].edges.push((role, role_pos, target));
                }
                Some((tok, pos)) => {
                    return Err(PenmanError::UnexpectedToken {
                        expected: "role or `)`",
                        found: describe(tok),
                        pos: *pos,
                    })
                }
                None => return Err(PenmanError::UnbalancedParens { pos: open_pos }),
            }
        }
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Open => "(".into(),
        Token::Close => ")".into(),
        Token::Slash => "/".into(),
        Token::Role(r) => format!(":{r}"),
        Token::Atom(a) => a.clone(),
        Token::Str(s) => s.clone(),
    }
}

/// Bare (unquoted) symbols that are legal attribute constants even though
/// they are not numbers. Anything else unquoted in target position must
/// reference an instantiated variable.
fn is_constant_symbol(text: &str) -> bool {
    matches!(text, "-" | "+" | "imperative" | "expressive" | "interrogative")
        || text.starts_with(|c: char| c.is_ascii_digit())
        || (text.len() > 1
            && text.starts_with(['-', '+'])
            && text[1..].starts_with(|c: char| c.is_ascii_digit()))
}

/// Parses a single Penman expression into an [`AmrGraph`].
///
/// Inverse roles (`:ARG0-of` etc.) are canonicalized by stripping the
/// suffix and swapping the endpoints, except for the roles listed in
/// [`INTRINSIC_OF_ROLES`]. A bare atom in target position resolves to a
/// variable when one of that name is instantiated anywhere in the graph;
/// numbers, quoted strings, and the symbolic constants (`-`, `+`, the mode
/// values) become attribute constants; any other bare atom is an
/// [`PenmanError::UndefinedVariable`] error.
pub fn parse_penman(text: &str, metadata: Option<Metadata>) -> Result<AmrGraph, PenmanError> {
    let mut end = Pos { line: 1, col: 1 };
    for c in text.chars() {
        if c == '\n' {
            end.line += 1;
            end.col = 1;
        } else {
            end.col += 1;
        }
    }
    let tokens = Lexer::new(text).tokens()?;
    if tokens.is_empty() {
        return Err(PenmanError::EmptyGraph {
            pos: Pos { line: 1, col: 1 },
        });
    }
    let mut parser = Parser {
        tokens,
        cursor: 0,
        nodes: Vec::new(),
        end,
    };
    let root_node = parser.node()?;
    if let Some((tok, pos)) = parser.peek() {
        // A stray `)` is an imbalance rather than generic trailing junk.
        if *tok == Token::Close {
            return Err(PenmanError::UnbalancedParens { pos: *pos });
        }
        return Err(PenmanError::TrailingContent { pos: *pos });
    }

    // Pass 2: instances, then edge resolution.
    let mut variables: Vec<String> = Vec::new();
    let mut concepts: Vec<String> = Vec::new();
    let mut var_index: HashMap<String, usize> = HashMap::new();
    for node in &parser.nodes {
        if var_index.contains_key(&node.var) {
            return Err(PenmanError::DuplicateVariable {
                var: node.var.clone(),
                pos: node.var_pos,
            });
        }
        var_index.insert(node.var.clone(), variables.len());
        variables.push(node.var.clone());
        concepts.push(node.concept.clone());
    }

    let mut relations: Vec<(usize, String, usize)> = Vec::new();
    let mut attributes: Vec<(usize, String, String)> = Vec::new();
    // Walk nodes in appearance order; edges within a node keep their order.
    for (src, node) in parser.nodes.iter().enumerate() {
        for (role, role_pos, target) in &node.edges {
            match target {
                RawTarget::Node(t) => {
                    push_relation(&mut relations, src, role, *t);
                }
                RawTarget::Atom { text, quoted, pos } => {
                    if !quoted {
                        if let Some(&t) = var_index.get(text.as_str()) {
                            push_relation(&mut relations, src, role, t);
                            continue;
                        }
                        if !is_constant_symbol(text) {
                            return Err(PenmanError::UndefinedVariable {
                                var: text.clone(),
                                pos: *pos,
                            });
                        }
                    }
                    // Inverse roles cannot be swapped onto a constant; kept
                    // verbatim as attribute roles.
                    let _ = role_pos;
                    attributes.push((src, role.clone(), text.clone()));
                }
            }
        }
    }

    Ok(AmrGraph::from_indexed(
        root_node,
        variables,
        concepts,
        relations,
        attributes,
        metadata.unwrap_or_default(),
    ))
}

fn push_relation(relations: &mut Vec<(usize, String, usize)>, src: usize, role: &str, tgt: usize) {
    if let Some(base) = role.strip_suffix("-of") {
        if !base.is_empty() && !INTRINSIC_OF_ROLES.contains(&role) {
            relations.push((tgt, base.to_string(), src));
            return;
        }
    }
    relations.push((src, role.to_string(), tgt));
}
