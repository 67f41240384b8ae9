//! The textual DSL.
//!
//! ```text
//! doc   := decl*
//! decl  := "signature" NAME "{" ("rel" NAME ":" INT ";")* "}"
//!        | "structure" NAME "over" NAME "{" "vertices" INT ";" (NAME "=" tuples ";")* "}"
//!        | "formula" NAME "(" vars ")" "over" NAME ":=" fexpr ";"
//!        | "definition" NAME ":" NAME "<-" NAME "{" (NAME "(" vars ")" ":=" fexpr ";")+ "}"
//!        | "class" NAME "over" NAME "{" ( "bound" NAME ";"
//!                                      | "axiom" "forall" vars ":" fexpr ";"
//!                                      | "hint" ("linear" | "circular") NAME ";" )* "}"
//!        | "expression" NAME "{" "target" NAME ";" "carrier" NAME ";" "definition" NAME ";"
//!                               "base" NAME ";" "forbid" "{" NAME* "}" ";"? "}"
//! tuples := "{" ("(" INT ("," INT)* ")" ","?)* "}"
//! fexpr := fexpr "<->" fexpr | fexpr "->" fexpr | fexpr "|" fexpr | fexpr "&" fexpr
//!        | "!" fexpr | "(" fexpr ")" | "true" | "false"
//!        | NAME "(" vars ")" | var "=" var | var "!=" var
//! ```
//!
//! Binding from loose to tight: `<->`, `->` (right associative), `|`, `&`,
//! `!`. `a -> b` is read as `!a | b` and `a <-> b` as
//! `(a & b) | (!a & !b)`. Comments run from `#` or `//` to the end of the
//! line.

use std::fmt;

use crate::classes::{LocalClass, OrderHint};
use crate::expressions::{LocalExpression, SnpSentence};
use crate::logic::{Formula, Node, QfDefinition, UniversalSentence};
use crate::structures::{Signature, Structure};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 18] =
    ["<->", ":=", "<-", "->", "!=", "{", "}", "(", ")", ",", ";", ":", "=", "!", "&", "|", "/", "."];

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[i..j].iter().collect()), line, col });
            col += j - i;
            i = j;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let v = s
                .parse()
                .map_err(|_| Error::Parse { line, col, msg: format!("integer {s} out of range") })?;
            out.push(Token { tok: Tok::Int(v), line, col });
            col += j - i;
            i = j;
            continue;
        }
        let sym = SYMBOLS.iter().find(|s| {
            let s: Vec<char> = s.chars().collect();
            chars[i..].starts_with(&s)
        });
        match sym {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), line: start.0, col: start.1 });
                i += s.len();
                col += s.len();
            }
            None => return Err(Error::Parse { line, col, msg: format!("unexpected character {c:?}") }),
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Position of a declaration in the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Signature { name: String, signature: Signature },
    Structure { name: String, over: String, structure: Structure },
    Formula { name: String, over: String, formula: Formula },
    Definition { name: String, target: String, carrier: String, definition: QfDefinition },
    Class { name: String, over: String, bounds: Vec<String>, class: LocalClass },
    Expression {
        name: String,
        target: String,
        carrier: String,
        definition: String,
        base: String,
        forbid: Vec<String>,
        expression: LocalExpression,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Signature { name, .. }
            | Decl::Structure { name, .. }
            | Decl::Formula { name, .. }
            | Decl::Definition { name, .. }
            | Decl::Class { name, .. }
            | Decl::Expression { name, .. } => name,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Decl::Signature { .. } => "signature",
            Decl::Structure { .. } => "structure",
            Decl::Formula { .. } => "formula",
            Decl::Definition { .. } => "definition",
            Decl::Class { .. } => "class",
            Decl::Expression { .. } => "expression",
        }
    }
}

/// Parsed declarations in source order. Equality ignores spans.
#[derive(Clone, Debug, Default)]
pub struct DslDocument {
    decls: Vec<Decl>,
    spans: Vec<Span>,
}

impl PartialEq for DslDocument {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for DslDocument {}

impl DslDocument {
    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn span(&self, i: usize) -> Span {
        self.spans[i]
    }

    fn find(&self, kind: &str, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.kind() == kind && d.name() == name)
    }

    /// Appends a declaration, resolving nothing: the caller guarantees that
    /// references name earlier declarations.
    pub fn push(&mut self, d: Decl) -> Result<()> {
        if self.find(d.kind(), d.name()).is_some() {
            return Err(Error::input(format!("duplicate {} {}", d.kind(), d.name())));
        }
        self.decls.push(d);
        self.spans.push(Span { line: 0, col: 0 });
        Ok(())
    }

    pub fn signature(&self, name: &str) -> Option<&Signature> {
        match self.find("signature", name)? {
            Decl::Signature { signature, .. } => Some(signature),
            _ => None,
        }
    }

    pub fn structure(&self, name: &str) -> Option<&Structure> {
        match self.find("structure", name)? {
            Decl::Structure { structure, .. } => Some(structure),
            _ => None,
        }
    }

    pub fn formula(&self, name: &str) -> Option<&Formula> {
        match self.find("formula", name)? {
            Decl::Formula { formula, .. } => Some(formula),
            _ => None,
        }
    }

    pub fn definition(&self, name: &str) -> Option<&QfDefinition> {
        match self.find("definition", name)? {
            Decl::Definition { definition, .. } => Some(definition),
            _ => None,
        }
    }

    pub fn class(&self, name: &str) -> Option<&LocalClass> {
        match self.find("class", name)? {
            Decl::Class { class, .. } => Some(class),
            _ => None,
        }
    }

    pub fn expression(&self, name: &str) -> Option<&LocalExpression> {
        match self.find("expression", name)? {
            Decl::Expression { expression, .. } => Some(expression),
            _ => None,
        }
    }

    /// Structures in source order.
    pub fn structures(&self) -> Vec<(&str, &Structure)> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Structure { name, structure, .. } => Some((name.as_str(), structure)),
                _ => None,
            })
            .collect()
    }

    /// Expressions in source order.
    pub fn expressions(&self) -> Vec<(&str, &LocalExpression)> {
        self.decls
            .iter()
            .filter_map(|d| match d {
                Decl::Expression { name, expression, .. } => Some((name.as_str(), expression)),
                _ => None,
            })
            .collect()
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(t: &Token, msg: impl Into<String>) -> Error {
        Error::Parse { line: t.line, col: t.col, msg: msg.into() }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            let t = self.peek();
            Err(Self::err_at(t, format!("expected `{s}`, found {}", Self::describe(&t.tok))))
        }
    }

    fn word(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            let t = self.peek();
            Err(Self::err_at(t, format!("expected `{w}`, found {}", Self::describe(&t.tok))))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            other => Err(Self::err_at(&t, format!("expected a name, found {}", Self::describe(other)))),
        }
    }

    fn int(&mut self) -> Result<(usize, Token)> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(v) => Ok((*v, t)),
            other => Err(Self::err_at(&t, format!("expected an integer, found {}", Self::describe(other)))),
        }
    }

    fn eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn vars(&mut self, close: &str) -> Result<Vec<String>> {
        let mut vs = Vec::new();
        if self.is_sym(close) {
            return Ok(vs);
        }
        loop {
            let (v, t) = self.ident()?;
            if vs.contains(&v) {
                return Err(Self::err_at(&t, format!("variable {v} listed twice")));
            }
            vs.push(v);
            if !self.eat_sym(",") {
                return Ok(vs);
            }
        }
    }

    fn var(&mut self, vars: &[String]) -> Result<usize> {
        let (v, t) = self.ident()?;
        vars.iter()
            .position(|x| *x == v)
            .ok_or_else(|| Self::err_at(&t, format!("unknown variable {v}")))
    }

    fn fexpr(&mut self, sig: &Signature, vars: &[String]) -> Result<Node> {
        let a = self.implication(sig, vars)?;
        if self.eat_sym("<->") {
            let b = self.fexpr(sig, vars)?;
            return Ok(a.iff(b));
        }
        Ok(a)
    }

    fn implication(&mut self, sig: &Signature, vars: &[String]) -> Result<Node> {
        let a = self.disjunction(sig, vars)?;
        if self.eat_sym("->") {
            let b = self.implication(sig, vars)?;
            return Ok(a.implies(b));
        }
        Ok(a)
    }

    fn disjunction(&mut self, sig: &Signature, vars: &[String]) -> Result<Node> {
        let mut xs = vec![self.conjunction(sig, vars)?];
        while self.eat_sym("|") {
            xs.push(self.conjunction(sig, vars)?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Node::Or(xs) })
    }

    fn conjunction(&mut self, sig: &Signature, vars: &[String]) -> Result<Node> {
        let mut xs = vec![self.unary(sig, vars)?];
        while self.eat_sym("&") {
            xs.push(self.unary(sig, vars)?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Node::And(xs) })
    }

    fn unary(&mut self, sig: &Signature, vars: &[String]) -> Result<Node> {
        if self.eat_sym("!") {
            return Ok(self.unary(sig, vars)?.not());
        }
        if self.eat_sym("(") {
            let f = self.fexpr(sig, vars)?;
            self.sym(")")?;
            return Ok(f);
        }
        if self.is_word("true") {
            self.bump();
            return Ok(Node::True);
        }
        if self.is_word("false") {
            self.bump();
            return Ok(Node::False);
        }
        if self.peek_at(1) == &Tok::Sym("(") {
            let (name, t) = self.ident()?;
            let sym = sig
                .index_of(&name)
                .ok_or_else(|| Self::err_at(&t, format!("unknown symbol {name} in {sig}")))?;
            self.sym("(")?;
            let mut args = Vec::new();
            if !self.is_sym(")") {
                loop {
                    args.push(self.var(vars)?);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            }
            self.sym(")")?;
            if args.len() != sig.arity(sym) {
                return Err(Self::err_at(
                    &t,
                    format!("{name} has arity {}, used with {} arguments", sig.arity(sym), args.len()),
                ));
            }
            return Ok(Node::Atom(sym, args));
        }
        let i = self.var(vars)?;
        if self.eat_sym("=") {
            return Ok(Node::Eq(i, self.var(vars)?));
        }
        if self.eat_sym("!=") {
            return Ok(Node::neq(i, self.var(vars)?));
        }
        let t = self.peek();
        Err(Self::err_at(t, format!("expected `=` after a variable, found {}", Self::describe(&t.tok))))
    }
}

struct Resolver {
    doc: DslDocument,
}

impl Resolver {
    fn lookup<'a>(&'a self, kind: &str, name: &str, at: &Token) -> Result<&'a Decl> {
        self.doc.find(kind, name).ok_or_else(|| Parser::err_at(at, format!("unknown {kind} {name}")))
    }

    fn signature(&self, name: &str, at: &Token) -> Result<Signature> {
        match self.lookup("signature", name, at)? {
            Decl::Signature { signature, .. } => Ok(signature.clone()),
            _ => unreachable!(),
        }
    }

    fn structure(&self, name: &str, at: &Token) -> Result<Structure> {
        match self.lookup("structure", name, at)? {
            Decl::Structure { structure, .. } => Ok(structure.clone()),
            _ => unreachable!(),
        }
    }

    fn add(&mut self, d: Decl, at: &Token) -> Result<()> {
        if self.doc.find(d.kind(), d.name()).is_some() {
            return Err(Parser::err_at(at, format!("duplicate {} {}", d.kind(), d.name())));
        }
        self.doc.decls.push(d);
        self.doc.spans.push(Span { line: at.line, col: at.col });
        Ok(())
    }
}

fn located(at: &Token, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Parser::err_at(at, other.to_string()),
    }
}

/// Parses and resolves a document.
pub fn parse(text: &str) -> Result<DslDocument> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut r = Resolver { doc: DslDocument::default() };
    while !p.eof() {
        let (kw, at) = p.ident()?;
        match kw.as_str() {
            "signature" => parse_signature(&mut p, &mut r, &at)?,
            "structure" => parse_structure(&mut p, &mut r, &at)?,
            "formula" => parse_formula_decl(&mut p, &mut r, &at)?,
            "definition" => parse_definition(&mut p, &mut r, &at)?,
            "class" => parse_class(&mut p, &mut r, &at)?,
            "expression" => parse_expression(&mut p, &mut r, &at)?,
            other => return Err(Parser::err_at(&at, format!("expected a declaration, found `{other}`"))),
        }
    }
    Ok(r.doc)
}

fn parse_signature(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.sym("{")?;
    let mut syms: Vec<(String, usize)> = Vec::new();
    while !p.eat_sym("}") {
        p.word("rel")?;
        let (s, t) = p.ident()?;
        p.sym(":")?;
        let (k, kt) = p.int()?;
        p.sym(";")?;
        if k == 0 {
            return Err(Parser::err_at(&kt, format!("symbol {s} has arity 0")));
        }
        if syms.iter().any(|x| x.0 == s) {
            return Err(Parser::err_at(&t, format!("duplicate symbol {s}")));
        }
        syms.push((s, k));
    }
    let signature = Signature::new(syms).map_err(|e| located(at, e))?;
    r.add(Decl::Signature { name, signature }, at)
}

fn parse_structure(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.word("over")?;
    let (over, ot) = p.ident()?;
    let sig = r.signature(&over, &ot)?;
    p.sym("{")?;
    p.word("vertices")?;
    let (n, _) = p.int()?;
    p.sym(";")?;
    let mut s = Structure::try_new(&sig, n).map_err(|e| located(at, e))?;
    while !p.eat_sym("}") {
        let (rel, rt) = p.ident()?;
        let sym = sig.index_of(&rel).ok_or_else(|| Parser::err_at(&rt, format!("unknown symbol {rel} in {sig}")))?;
        p.sym("=")?;
        p.sym("{")?;
        while !p.eat_sym("}") {
            let open = p.peek().clone();
            p.sym("(")?;
            let mut t = vec![p.int()?.0];
            while p.eat_sym(",") {
                t.push(p.int()?.0);
            }
            p.sym(")")?;
            p.eat_sym(",");
            if t.len() != sig.arity(sym) {
                return Err(Parser::err_at(
                    &open,
                    format!("{rel} has arity {}, tuple has {} entries", sig.arity(sym), t.len()),
                ));
            }
            if let Some(v) = t.iter().find(|&&v| v >= n) {
                return Err(Parser::err_at(&open, format!("vertex {v} out of range 0..{n}")));
            }
            s.insert(sym, &t);
        }
        p.sym(";")?;
    }
    r.add(Decl::Structure { name, over, structure: s }, at)
}

fn parse_formula_decl(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.sym("(")?;
    let vars = p.vars(")")?;
    p.sym(")")?;
    p.word("over")?;
    let (over, ot) = p.ident()?;
    let sig = r.signature(&over, &ot)?;
    p.sym(":=")?;
    let body = p.fexpr(&sig, &vars)?;
    p.sym(";")?;
    let formula = Formula::new(&sig, vars.len(), body).map_err(|e| located(at, e))?;
    r.add(Decl::Formula { name, over, formula }, at)
}

fn parse_definition(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.sym(":")?;
    let (target, tt) = p.ident()?;
    p.sym("<-")?;
    let (carrier, ct) = p.ident()?;
    let tau = r.signature(&target, &tt)?;
    let sigma = r.signature(&carrier, &ct)?;
    let mut bodies: Vec<Option<Node>> = vec![None; tau.len()];
    p.sym("{")?;
    while !p.eat_sym("}") {
        let (rel, rt) = p.ident()?;
        let sym = tau.index_of(&rel).ok_or_else(|| Parser::err_at(&rt, format!("unknown symbol {rel} in {tau}")))?;
        p.sym("(")?;
        let vars = p.vars(")")?;
        p.sym(")")?;
        if vars.len() != tau.arity(sym) {
            return Err(Parser::err_at(&rt, format!("{rel} has arity {}, defined with {}", tau.arity(sym), vars.len())));
        }
        p.sym(":=")?;
        let body = p.fexpr(&sigma, &vars)?;
        p.sym(";")?;
        if bodies[sym].replace(body).is_some() {
            return Err(Parser::err_at(&rt, format!("{rel} defined twice")));
        }
    }
    if let Some(missing) = bodies.iter().position(Option::is_none) {
        return Err(Parser::err_at(at, format!("no formula for {}", tau.name(missing))));
    }
    let definition = QfDefinition::from_nodes(&tau, &sigma, bodies.into_iter().map(Option::unwrap).collect())
        .map_err(|e| located(at, e))?;
    r.add(Decl::Definition { name, target, carrier, definition }, at)
}

fn parse_class(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.word("over")?;
    let (over, ot) = p.ident()?;
    let sig = r.signature(&over, &ot)?;
    let mut bounds = Vec::new();
    let mut bound_names = Vec::new();
    let mut axioms = Vec::new();
    let mut hints = Vec::new();
    p.sym("{")?;
    while !p.eat_sym("}") {
        let (kw, kt) = p.ident()?;
        match kw.as_str() {
            "bound" => {
                let (b, bt) = p.ident()?;
                let s = r.structure(&b, &bt)?;
                sig.expect_eq(s.signature(), "bound").map_err(|e| located(&bt, e))?;
                bounds.push(s);
                bound_names.push(b);
            }
            "axiom" => {
                p.word("forall")?;
                let vars = p.vars(":")?;
                p.sym(":")?;
                let body = p.fexpr(&sig, &vars)?;
                let f = Formula::new(&sig, vars.len(), body).map_err(|e| located(&kt, e))?;
                axioms.push(UniversalSentence::new(f));
            }
            "hint" => {
                let (kind, _) = p.ident()?;
                let (s, st) = p.ident()?;
                let sym = sig.index_of(&s).ok_or_else(|| Parser::err_at(&st, format!("unknown symbol {s} in {sig}")))?;
                hints.push(match kind.as_str() {
                    "linear" => OrderHint::Linear(sym),
                    "circular" => OrderHint::Circular(sym),
                    other => return Err(Parser::err_at(&st, format!("unknown hint kind {other}"))),
                });
            }
            other => return Err(Parser::err_at(&kt, format!("expected `bound`, `axiom` or `hint`, found `{other}`"))),
        }
        p.sym(";")?;
    }
    let mut class = match (bounds.is_empty(), axioms.is_empty()) {
        (_, true) => LocalClass::from_bounds(&sig, bounds),
        (true, false) => LocalClass::from_axioms(&sig, axioms),
        (false, false) => LocalClass::new(&sig, bounds, axioms),
    }
    .map_err(|e| located(at, e))?;
    for h in hints {
        class = class.with_hint(h).map_err(|e| located(at, e))?;
    }
    r.add(Decl::Class { name, over, bounds: bound_names, class }, at)
}

fn parse_expression(p: &mut Parser, r: &mut Resolver, at: &Token) -> Result<()> {
    let (name, _) = p.ident()?;
    p.sym("{")?;
    p.word("target")?;
    let (target, tt) = p.ident()?;
    p.sym(";")?;
    p.word("carrier")?;
    let (carrier, ct) = p.ident()?;
    p.sym(";")?;
    p.word("definition")?;
    let (definition, dt) = p.ident()?;
    p.sym(";")?;
    p.word("base")?;
    let (base, bt) = p.ident()?;
    p.sym(";")?;
    p.word("forbid")?;
    p.sym("{")?;
    let mut forbid = Vec::new();
    let mut structures = Vec::new();
    while !p.eat_sym("}") {
        let (f, ft) = p.ident()?;
        structures.push(r.structure(&f, &ft)?);
        forbid.push(f);
        p.eat_sym(",");
    }
    p.eat_sym(";");
    p.sym("}")?;
    let tau = r.signature(&target, &tt)?;
    let sigma = r.signature(&carrier, &ct)?;
    let def = match r.lookup("definition", &definition, &dt)? {
        Decl::Definition { definition, .. } => definition.clone(),
        _ => unreachable!(),
    };
    let class = match r.lookup("class", &base, &bt)? {
        Decl::Class { class, .. } => class.clone(),
        _ => unreachable!(),
    };
    tau.expect_eq(def.source(), "definition target").map_err(|e| located(&dt, e))?;
    sigma.expect_eq(def.carrier(), "definition carrier").map_err(|e| located(&dt, e))?;
    sigma.expect_eq(class.signature(), "base").map_err(|e| located(&bt, e))?;
    let expression = LocalExpression::new(def, class, structures).map_err(|e| located(at, e))?;
    r.add(Decl::Expression { name, target, carrier, definition, base, forbid, expression }, at)
}

/// A formula over `sig` in the variables `x1..xk`.
pub fn parse_formula(text: &str, sig: &Signature, arity: usize) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let vars: Vec<String> = (1..=arity).map(|i| format!("x{i}")).collect();
    let at = p.peek().clone();
    let body = p.fexpr(sig, &vars)?;
    if !p.eof() {
        let t = p.peek();
        return Err(Parser::err_at(t, format!("unexpected {}", Parser::describe(&t.tok))));
    }
    Formula::new(sig, arity, body).map_err(|e| located(&at, e))
}

/// Reads the text printed by [`SnpSentence`]'s `Display`.
pub fn parse_snp(text: &str, input: &Signature) -> Result<SnpSentence> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut ex: Vec<(String, usize)> = Vec::new();
    if p.is_word("exists") {
        p.bump();
        loop {
            let (s, _) = p.ident()?;
            p.sym("/")?;
            ex.push((s, p.int()?.0));
            if !p.eat_sym(",") {
                break;
            }
        }
        p.sym(".")?;
    }
    let at = p.peek().clone();
    let existential = Signature::new(ex).map_err(|e| located(&at, e))?;
    let all = input.concat(&existential).map_err(|e| located(&at, e))?;
    p.word("forall")?;
    let vars = p.vars(":")?;
    p.sym(":")?;
    let body = p.fexpr(&all, &vars)?;
    if !p.eof() {
        let t = p.peek();
        return Err(Parser::err_at(t, format!("unexpected {}", Parser::describe(&t.tok))));
    }
    SnpSentence::new(input, &existential, vars.len(), body).map_err(|e| located(&at, e))
}

fn vars(k: usize) -> String {
    (1..=k).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
}

/// One structure declaration.
pub fn structure_text(name: &str, over: &str, s: &Structure) -> String {
    let sig = s.signature();
    let mut out = format!("structure {name} over {over} {{\n  vertices {};\n", s.n());
    for sym in 0..sig.len() {
        let ts = s.tuples(sym);
        if ts.is_empty() {
            continue;
        }
        let ts: Vec<String> = ts
            .iter()
            .map(|t| format!("({})", t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        out.push_str(&format!("  {} = {{{}}};\n", sig.name(sym), ts.join(" ")));
    }
    out.push_str("}\n");
    out
}

pub fn signature_text(name: &str, sig: &Signature) -> String {
    let mut out = format!("signature {name} {{");
    for s in sig.symbols() {
        out.push_str(&format!(" rel {}: {};", s.name, s.arity));
    }
    out.push_str(" }\n");
    out
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Signature { name, signature } => write!(f, "{}", signature_text(name, signature)),
            Decl::Structure { name, over, structure } => write!(f, "{}", structure_text(name, over, structure)),
            Decl::Formula { name, over, formula } => {
                writeln!(f, "formula {name}({}) over {over} := {formula};", vars(formula.arity()))
            }
            Decl::Definition { name, target, carrier, definition } => {
                writeln!(f, "definition {name} : {target} <- {carrier} {{")?;
                for (i, phi) in definition.formulas().iter().enumerate() {
                    writeln!(f, "  {}({}) := {phi};", definition.source().name(i), vars(phi.arity()))?;
                }
                writeln!(f, "}}")
            }
            Decl::Class { name, over, bounds, class } => {
                writeln!(f, "class {name} over {over} {{")?;
                for b in bounds {
                    writeln!(f, "  bound {b};")?;
                }
                for ax in class.axioms().unwrap_or_default() {
                    writeln!(f, "  axiom {};", ax)?;
                }
                for h in class.hints() {
                    let (kind, s) = match h {
                        OrderHint::Linear(s) => ("linear", *s),
                        OrderHint::Circular(s) => ("circular", *s),
                    };
                    writeln!(f, "  hint {kind} {};", class.signature().name(s))?;
                }
                writeln!(f, "}}")
            }
            Decl::Expression { name, target, carrier, definition, base, forbid, .. } => {
                writeln!(f, "expression {name} {{")?;
                writeln!(f, "  target {target};")?;
                writeln!(f, "  carrier {carrier};")?;
                writeln!(f, "  definition {definition};")?;
                writeln!(f, "  base {base};")?;
                writeln!(f, "  forbid {{ {} }}", forbid.join(" "))?;
                writeln!(f, "}}")
            }
        }
    }
}

/// Declarations separated by blank lines; parses back to an equal document.
impl fmt::Display for DslDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.decls.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A self-contained document for `e`: signatures, base class (with its
/// bounds), definition, forbidden structures `F1..Fk`, and the expression.
/// The carrier signature and the base class are both called `carrier`.
pub fn expression_document(name: &str, carrier: &str, e: &LocalExpression) -> Result<DslDocument> {
    let mut doc = DslDocument::default();
    let target = if e.target() == e.carrier() {
        carrier.to_string()
    } else if *e.target() == Signature::graph() {
        "Graph".to_string()
    } else {
        "Target".to_string()
    };
    if target != carrier {
        doc.push(Decl::Signature { name: target.clone(), signature: e.target().clone() })?;
    }
    doc.push(Decl::Signature { name: carrier.to_string(), signature: e.carrier().clone() })?;
    let mut bound_names = Vec::new();
    for (i, b) in e.base().bounds().unwrap_or_default().iter().enumerate() {
        let b_name = format!("{carrier}_bound{}", i + 1);
        doc.push(Decl::Structure { name: b_name.clone(), over: carrier.to_string(), structure: b.clone() })?;
        bound_names.push(b_name);
    }
    doc.push(Decl::Class {
        name: carrier.to_string(),
        over: carrier.to_string(),
        bounds: bound_names,
        class: e.base().clone(),
    })?;
    doc.push(Decl::Definition {
        name: "Delta".to_string(),
        target: target.clone(),
        carrier: carrier.to_string(),
        definition: e.definition().clone(),
    })?;
    let mut forbid = Vec::new();
    for (i, x) in e.forbidden().iter().enumerate() {
        let f_name = format!("F{}", i + 1);
        doc.push(Decl::Structure { name: f_name.clone(), over: carrier.to_string(), structure: x.clone() })?;
        forbid.push(f_name);
    }
    doc.push(Decl::Expression {
        name: name.to_string(),
        target,
        carrier: carrier.to_string(),
        definition: "Delta".to_string(),
        base: carrier.to_string(),
        forbid,
        expression: e.clone(),
    })?;
    Ok(doc)
}

/// The DSL text of a certificate: its signature and one structure.
pub fn certificate_text(carrier: &Signature, x: &Structure) -> String {
    format!("{}\n{}", signature_text("Carrier", carrier), structure_text("certificate", "Carrier", x))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S_TEXT: &str = "
        signature G { rel E: 2; }
        definition S : G <- G {
          E(x, y) := E(x, y) | E(y, x);
        }
    ";

    #[test]
    fn symmetric_closure_text_matches_builtin() {
        let doc = parse(S_TEXT).unwrap();
        let g = Signature::graph();
        let want = crate::catalog::bases::symmetric_closure(&g, 0);
        assert_eq!(doc.definition("S").unwrap(), &want);
    }

    #[test]
    fn arity_error_points_at_the_atom() {
        let text = "signature G { rel E: 2; }\nformula f(x) over G :=\n  E(x);";
        match parse(text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (3, 3));
                assert!(msg.contains("arity"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_names_are_reported_with_positions() {
        let text = "signature G { rel E: 2; }\nstructure A over H { vertices 1; }";
        match parse(text) {
            Err(Error::Parse { line: 2, col: 18, msg }) => assert!(msg.contains("unknown signature H")),
            other => panic!("{other:?}"),
        }
        let text = "signature G { rel E: 2; }\nsignature G { rel F: 1; }";
        assert!(matches!(parse(text), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn sugar_and_precedence() {
        let g = Signature::graph();
        let f = parse_formula("E(x1,x2) & E(x2,x1) -> x1 = x2", &g, 2).unwrap();
        let want = Node::And(vec![Node::Atom(0, vec![0, 1]), Node::Atom(0, vec![1, 0])]).implies(Node::Eq(0, 1));
        assert_eq!(f.body(), &want);
        let f = parse_formula("!E(x1,x1) <-> x1 != x2", &g, 2).unwrap();
        assert_eq!(f.body(), &Node::Atom(0, vec![0, 0]).not().iff(Node::neq(0, 1)));
    }

    #[test]
    fn printed_formulas_parse_back() {
        let g = Signature::graph();
        let e = |a, b| Node::Atom(0, vec![a, b]);
        let cases = vec![
            Node::Or(vec![Node::And(vec![e(0, 1), Node::neq(0, 1)]), e(1, 0).not()]),
            Node::And(vec![Node::And(vec![e(0, 1), e(1, 0)]), Node::Or(vec![e(0, 0), Node::Or(vec![e(1, 1), Node::Eq(0, 1)])])]),
            Node::Not(Box::new(Node::Not(Box::new(Node::Eq(0, 1))))),
            Node::And(vec![Node::Or(vec![e(0, 1), Node::True]), Node::False]),
        ];
        for body in cases {
            let f = Formula::new(&g, 2, body).unwrap();
            let back = parse_formula(&f.to_string(), &g, 2).unwrap();
            assert_eq!(back, f, "{f}");
        }
    }

    #[test]
    fn documents_round_trip() {
        let text = "
            signature G { rel E: 2; }
            signature O { rel E: 2; rel LT: 2; }
            structure loop over O { vertices 1; E = {(0,0)}; }
            structure P over O { vertices 3; E = {(0,1), (1,0) (0,2) (2,0)}; LT = {(0,1) (0,2) (1,2)}; }
            class C over O {
              axiom forall x, y: E(x,y) -> E(y,x);
              axiom forall x,y: !LT(x,x) & (x = y | LT(x,y) | LT(y,x));
              axiom forall x,y,z: LT(x,y) & LT(y,z) -> LT(x,z);
              hint linear LT;
            }
            definition D : G <- O { E(a,b) := E(a,b); }
            formula f(x) over O := !E(x,x);
            expression peo { target G; carrier O; definition D; base C; forbid { P } }
        ";
        let doc = parse(text).unwrap();
        let printed = doc.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(doc, again, "{printed}");
        assert_eq!(again.to_string(), printed);
        let e = doc.expression("peo").unwrap();
        assert_eq!(e.base().hints(), &[OrderHint::Linear(1)]);
        assert_eq!(e.forbidden()[0].count(0), 4);
    }

    #[test]
    fn structure_errors() {
        let head = "signature G { rel E: 2; }\n";
        let bad_arity = format!("{head}structure A over G {{ vertices 2; E = {{(0,1,1)}}; }}");
        let err = parse(&bad_arity).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 39, .. }), "{err:?}");
        let bad_vertex = format!("{head}structure A over G {{ vertices 2; E = {{(0,2)}}; }}");
        assert!(parse(&bad_vertex).unwrap_err().to_string().contains("out of range"));
    }

    #[test]
    fn snp_text_round_trips() {
        let g = Signature::graph();
        let lt = Signature::new([("LT", 2)]).unwrap();
        let all = g.concat(&lt).unwrap();
        let body = Node::And(vec![Node::Atom(1, vec![0, 1]).not(), Node::Atom(0, vec![0, 0]).not()]);
        let s = SnpSentence::new(&g, &lt, 2, body).unwrap();
        let back = parse_snp(&s.to_string(), &g).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.signature(), &all);
    }
}
