//! The textual session format: rings, ideals, module presentations, and
//! complexes, plus the polynomial term grammar used everywhere.

use crate::complex::ChainComplex;
use crate::error::EngineError;
use crate::module::{Module, RMatrix};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyCtx, Polynomial};
use crate::ring::{make_ring, IdealHandle, RingHandle};
use std::collections::BTreeMap;

/// Parse `c*x^a*y^b +/- ...` with the given variable names.
pub fn parse_poly_str(
    ctx: &PolyCtx,
    vars: &[String],
    text: &str,
) -> Result<Polynomial, EngineError> {
    let mut terms: Vec<(Monomial, u64)> = Vec::new();
    let s: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let err = |msg: &str| EngineError::Malformed(format!("bad polynomial `{}`: {}", text, msg));
    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == s.len() {
        return Err(err("empty"));
    }
    let mut sign_neg = false;
    if s[i] == '-' {
        sign_neg = true;
        i += 1;
    } else if s[i] == '+' {
        i += 1;
    }
    loop {
        skip_ws(&mut i);
        // one term: factors joined by '*'
        let mut coef: i64 = if sign_neg { -1 } else { 1 };
        let mut exps = vec![0u32; ctx.nvars];
        loop {
            skip_ws(&mut i);
            if i < s.len() && s[i].is_ascii_digit() {
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = s[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("coefficient overflow"))?;
                coef = coef.checked_mul(n).ok_or_else(|| err("coefficient overflow"))?;
                coef %= ctx.fp.p as i64;
            } else if i < s.len() && (s[i].is_alphabetic() || s[i] == '_') {
                let start = i;
                while i < s.len() && (s[i].is_alphanumeric() || s[i] == '_') {
                    i += 1;
                }
                let name: String = s[start..i].iter().collect();
                let vi = vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| err(&format!("unknown variable `{}`", name)))?;
                let mut exp = 1u32;
                skip_ws(&mut i);
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    let estart = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    if estart == i {
                        return Err(err("missing exponent after ^"));
                    }
                    exp = s[estart..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err("exponent overflow"))?;
                }
                exps[vi] += exp;
            } else {
                return Err(err("expected coefficient or variable"));
            }
            skip_ws(&mut i);
            if i < s.len() && s[i] == '*' {
                i += 1;
                continue;
            }
            break;
        }
        let c = ctx.fp.reduce_i64(coef);
        if c != 0 {
            terms.push((Monomial { exps }, c));
        }
        skip_ws(&mut i);
        if i == s.len() {
            break;
        }
        match s[i] {
            '+' => {
                sign_neg = false;
                i += 1;
            }
            '-' => {
                sign_neg = true;
                i += 1;
            }
            c => return Err(err(&format!("unexpected character `{}`", c))),
        }
    }
    Ok(Polynomial::from_terms(ctx, terms))
}

pub fn order_from_name(name: &str) -> Result<MonomialOrder, EngineError> {
    match name {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(EngineError::Malformed(format!(
            "unknown monomial order `{}`",
            other
        ))),
    }
}

/// One top-level declaration, kept in parsed-but-symbolic form so the
/// session can be re-serialized canonically.
#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Ring {
        name: String,
        p: u64,
        vars: Vec<String>,
        order: MonomialOrder,
        relations: Vec<Polynomial>,
    },
    Ideal {
        name: String,
        ring: String,
        gens: Vec<Polynomial>,
    },
    Module {
        name: String,
        ring: String,
        presentation: Vec<Vec<Polynomial>>,
        twists: Vec<i64>,
    },
    Complex {
        name: String,
        ring: String,
        lo: i64,
        hi: i64,
        twists: BTreeMap<i64, Vec<i64>>,
        diffs: BTreeMap<i64, Vec<Vec<Polynomial>>>,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring { name, .. }
            | Decl::Ideal { name, .. }
            | Decl::Module { name, .. }
            | Decl::Complex { name, .. } => name,
        }
    }
}

#[derive(Debug)]
pub struct Session {
    pub decls: Vec<Decl>,
    pub rings: BTreeMap<String, RingHandle>,
    pub ideals: BTreeMap<String, IdealHandle>,
    pub modules: BTreeMap<String, Module>,
    pub complexes: BTreeMap<String, ChainComplex>,
}

impl Session {
    pub fn ring(&self, name: &str) -> Result<&RingHandle, EngineError> {
        self.rings
            .get(name)
            .ok_or_else(|| EngineError::UnknownObject(name.to_string()))
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle, EngineError> {
        self.ideals
            .get(name)
            .ok_or_else(|| EngineError::UnknownObject(name.to_string()))
    }

    pub fn module(&self, name: &str) -> Result<&Module, EngineError> {
        self.modules
            .get(name)
            .ok_or_else(|| EngineError::UnknownObject(name.to_string()))
    }

    pub fn complex(&self, name: &str) -> Result<&ChainComplex, EngineError> {
        self.complexes
            .get(name)
            .ok_or_else(|| EngineError::UnknownObject(name.to_string()))
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> EngineError {
        EngineError::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), EngineError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected `{}`, found `{}`", c, got))),
            None => Err(self.err(format!("expected `{}`, found end of input", c))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, EngineError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return Err(self.err("expected an identifier")),
        }
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<i64, EngineError> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        let n: i64 = digits
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    /// Raw text of one polynomial, up to a delimiter at top level.
    fn poly_text(&mut self) -> Result<String, EngineError> {
        self.skip_ws();
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if matches!(c, ',' | ';' | ']' | '}' | '#') {
                break;
            }
            out.push(c);
            self.bump();
        }
        if out.trim().is_empty() {
            return Err(self.err("expected a polynomial"));
        }
        Ok(out.trim().to_string())
    }

    /// Comma-separated polynomial texts ending at `;` or `}` (both left
    /// in place); empty list allowed.
    fn poly_list(&mut self) -> Result<Vec<String>, EngineError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(';') | Some('}') | None => break,
                _ => {}
            }
            out.push(self.poly_text()?);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }

    /// `[[poly, ...], ...]` rows of polynomial texts.
    fn poly_matrix(&mut self) -> Result<Vec<Vec<String>>, EngineError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.skip_ws();
            if self.eat(']') {
                break;
            }
            self.expect('[')?;
            let mut row = Vec::new();
            loop {
                self.skip_ws();
                if self.eat(']') {
                    break;
                }
                row.push(self.poly_text()?);
                if !self.eat(',') {
                    self.expect(']')?;
                    break;
                }
            }
            rows.push(row);
            self.eat(',');
        }
        Ok(rows)
    }

    fn int_list(&mut self) -> Result<Vec<i64>, EngineError> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.eat(']') {
                break;
            }
            out.push(self.integer()?);
            if !self.eat(',') {
                self.expect(']')?;
                break;
            }
        }
        Ok(out)
    }

    fn end_field(&mut self) -> Result<(), EngineError> {
        self.skip_ws();
        if self.eat(';') {
            return Ok(());
        }
        match self.peek() {
            Some('}') => Ok(()),
            _ => Err(self.err("expected `;` or `}` after a field")),
        }
    }
}

/// Parse the block grammar into declarations and fully validated objects.
pub fn parse_session(text: &str) -> Result<Session, EngineError> {
    parse_session_with_prime(text, None)
}

pub fn parse_session_with_prime(
    text: &str,
    prime_override: Option<u64>,
) -> Result<Session, EngineError> {
    let mut cur = Cursor::new(text);
    let mut session = Session {
        decls: Vec::new(),
        rings: BTreeMap::new(),
        ideals: BTreeMap::new(),
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
    };
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let kw = cur.ident()?;
        let name = cur.ident()?;
        if session.decls.iter().any(|d| d.name() == name) {
            return Err(cur.err(format!("duplicate name `{}`", name)));
        }
        match kw.as_str() {
            "ring" => parse_ring_block(&mut cur, &mut session, name, prime_override)?,
            "ideal" => {
                let kw2 = cur.ident()?;
                if kw2 != "in" {
                    return Err(cur.err("expected `in` after the ideal name"));
                }
                let ring_name = cur.ident()?;
                parse_ideal_block(&mut cur, &mut session, name, ring_name)?;
            }
            "module" => {
                let kw2 = cur.ident()?;
                if kw2 != "over" {
                    return Err(cur.err("expected `over` after the module name"));
                }
                let ring_name = cur.ident()?;
                parse_module_block(&mut cur, &mut session, name, ring_name)?;
            }
            "complex" => {
                let kw2 = cur.ident()?;
                if kw2 != "over" {
                    return Err(cur.err("expected `over` after the complex name"));
                }
                let ring_name = cur.ident()?;
                parse_complex_block(&mut cur, &mut session, name, ring_name)?;
            }
            other => return Err(cur.err(format!("unknown block kind `{}`", other))),
        }
    }
    Ok(session)
}

fn parse_ring_block(
    cur: &mut Cursor,
    session: &mut Session,
    name: String,
    prime_override: Option<u64>,
) -> Result<(), EngineError> {
    cur.expect('{')?;
    let mut p: Option<u64> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order: Option<MonomialOrder> = None;
    let mut relation_texts: Vec<String> = Vec::new();
    loop {
        cur.skip_ws();
        if cur.eat('}') {
            break;
        }
        let key = cur.ident()?;
        cur.expect('=')?;
        match key.as_str() {
            "p" => {
                let v = cur.integer()?;
                if v <= 0 {
                    return Err(cur.err("the prime must be positive"));
                }
                p = Some(v as u64);
            }
            "vars" => {
                let mut list = vec![cur.ident()?];
                while cur.eat(',') {
                    list.push(cur.ident()?);
                }
                vars = Some(list);
            }
            "order" => {
                let id = cur.ident()?;
                order = Some(order_from_name(&id).map_err(|e| cur.err(e.to_string()))?);
            }
            "relations" => {
                relation_texts = cur.poly_list()?;
            }
            other => return Err(cur.err(format!("unknown ring field `{}`", other))),
        }
        cur.end_field()?;
    }
    let p = prime_override.or(p).ok_or_else(|| cur.err("missing `p`"))?;
    let vars = vars.ok_or_else(|| cur.err("missing `vars`"))?;
    let order = order.unwrap_or(MonomialOrder::Grevlex);
    let ctx = PolyCtx {
        fp: crate::arith::Fp::new(p).map_err(|e| cur.err(e.to_string()))?,
        nvars: vars.len(),
        order,
    };
    let mut relations = Vec::new();
    for t in &relation_texts {
        relations.push(parse_poly_str(&ctx, &vars, t).map_err(|e| cur.err(e.to_string()))?);
    }
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let handle = make_ring(p, &var_refs, order, relations.clone())
        .map_err(|e| cur.err(e.to_string()))?;
    session.decls.push(Decl::Ring {
        name: name.clone(),
        p,
        vars,
        order,
        relations,
    });
    session.rings.insert(name, handle);
    Ok(())
}

fn parse_ideal_block(
    cur: &mut Cursor,
    session: &mut Session,
    name: String,
    ring_name: String,
) -> Result<(), EngineError> {
    let ring = session
        .rings
        .get(&ring_name)
        .cloned()
        .ok_or_else(|| cur.err(format!("unknown ring `{}`", ring_name)))?;
    cur.expect('{')?;
    let mut gens = Vec::new();
    loop {
        cur.skip_ws();
        if cur.eat('}') {
            break;
        }
        let key = cur.ident()?;
        cur.expect('=')?;
        match key.as_str() {
            "gens" => {
                for t in cur.poly_list()? {
                    gens.push(
                        parse_poly_str(&ring.ctx, &ring.vars, &t)
                            .map_err(|e| cur.err(e.to_string()))?,
                    );
                }
            }
            other => return Err(cur.err(format!("unknown ideal field `{}`", other))),
        }
        cur.end_field()?;
    }
    let handle =
        IdealHandle::new(ring, gens.clone()).map_err(|e| cur.err(e.to_string()))?;
    session.decls.push(Decl::Ideal {
        name: name.clone(),
        ring: ring_name,
        gens,
    });
    session.ideals.insert(name, handle);
    Ok(())
}

fn parse_module_block(
    cur: &mut Cursor,
    session: &mut Session,
    name: String,
    ring_name: String,
) -> Result<(), EngineError> {
    let ring = session
        .rings
        .get(&ring_name)
        .cloned()
        .ok_or_else(|| cur.err(format!("unknown ring `{}`", ring_name)))?;
    cur.expect('{')?;
    let mut presentation: Vec<Vec<Polynomial>> = Vec::new();
    let mut twists: Option<Vec<i64>> = None;
    loop {
        cur.skip_ws();
        if cur.eat('}') {
            break;
        }
        let key = cur.ident()?;
        cur.expect('=')?;
        match key.as_str() {
            "presentation" => {
                let rows = cur.poly_matrix()?;
                presentation = rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|t| parse_poly_str(&ring.ctx, &ring.vars, &t))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| cur.err(e.to_string()))?;
            }
            "twists" => {
                twists = Some(cur.int_list()?);
            }
            other => return Err(cur.err(format!("unknown module field `{}`", other))),
        }
        cur.end_field()?;
    }
    let twists = twists.ok_or_else(|| cur.err("missing `twists`"))?;
    let rank = twists.len();
    let ncols = presentation.iter().map(|r| r.len()).max().unwrap_or(0);
    if presentation.len() > rank {
        return Err(cur.err("presentation has more rows than twists"));
    }
    let mut relations: Vec<Vec<Polynomial>> = Vec::new();
    for c in 0..ncols {
        let mut col = Vec::new();
        for r in 0..rank {
            col.push(
                presentation
                    .get(r)
                    .and_then(|row| row.get(c))
                    .cloned()
                    .unwrap_or_else(Polynomial::zero),
            );
        }
        relations.push(col);
    }
    let module = Module::presented(ring, twists.clone(), relations);
    for r in &module.relations {
        if !module.elem_is_homogeneous(r) {
            return Err(cur.err("inhomogeneous presentation column"));
        }
    }
    session.decls.push(Decl::Module {
        name: name.clone(),
        ring: ring_name,
        presentation,
        twists,
    });
    session.modules.insert(name, module);
    Ok(())
}

fn parse_complex_block(
    cur: &mut Cursor,
    session: &mut Session,
    name: String,
    ring_name: String,
) -> Result<(), EngineError> {
    let ring = session
        .rings
        .get(&ring_name)
        .cloned()
        .ok_or_else(|| cur.err(format!("unknown ring `{}`", ring_name)))?;
    cur.expect('{')?;
    let mut range: Option<(i64, i64)> = None;
    let mut twists: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, Vec<Vec<Polynomial>>> = BTreeMap::new();
    loop {
        cur.skip_ws();
        if cur.eat('}') {
            break;
        }
        let key = cur.ident()?;
        match key.as_str() {
            "range" => {
                cur.expect('=')?;
                let lo = cur.integer()?;
                cur.expect('.')?;
                cur.expect('.')?;
                let hi = cur.integer()?;
                if hi < lo {
                    return Err(cur.err("empty range"));
                }
                range = Some((lo, hi));
            }
            "twists" => {
                let i = cur.integer()?;
                cur.expect('=')?;
                twists.insert(i, cur.int_list()?);
            }
            "d" => {
                let i = cur.integer()?;
                cur.expect('=')?;
                let rows = cur.poly_matrix()?;
                let parsed = rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|t| parse_poly_str(&ring.ctx, &ring.vars, &t))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| cur.err(e.to_string()))?;
                diffs.insert(i, parsed);
            }
            other => return Err(cur.err(format!("unknown complex field `{}`", other))),
        }
        cur.end_field()?;
    }
    let (lo, hi) = range.ok_or_else(|| cur.err("missing `range`"))?;
    let mut modules = Vec::new();
    for i in lo..=hi {
        let tw = twists.get(&i).cloned().unwrap_or_default();
        modules.push(Module::free(ring.clone(), tw));
    }
    let mut dmats = Vec::new();
    for i in (lo + 1)..=hi {
        let src_rank = modules[(i - lo) as usize].rank();
        let tgt_rank = modules[(i - lo - 1) as usize].rank();
        let mat = match diffs.get(&i) {
            Some(rows) => {
                if rows.len() != tgt_rank || rows.iter().any(|r| r.len() != src_rank) {
                    return Err(cur.err(format!(
                        "differential {} has the wrong shape (want {}x{})",
                        i, tgt_rank, src_rank
                    )));
                }
                RMatrix::from_rows(rows.clone(), src_rank)
            }
            None => RMatrix::zero(tgt_rank, src_rank),
        };
        dmats.push(mat);
    }
    let complex = ChainComplex::new(ring, lo, modules, dmats)
        .map_err(|e| cur.err(e.to_string()))?;
    session.decls.push(Decl::Complex {
        name: name.clone(),
        ring: ring_name,
        lo,
        hi,
        twists,
        diffs,
    });
    session.complexes.insert(name, complex);
    Ok(())
}

/// Canonical text for a session; parsing it back gives the same
/// declarations.
pub fn serialize_session(session: &Session) -> String {
    let mut out = String::new();
    for decl in &session.decls {
        match decl {
            Decl::Ring {
                name,
                p,
                vars,
                order,
                relations,
            } => {
                out.push_str(&format!("ring {} {{\n", name));
                out.push_str(&format!("  p = {};\n", p));
                out.push_str(&format!("  vars = {};\n", vars.join(", ")));
                out.push_str(&format!("  order = {};\n", order.name()));
                let rel: Vec<String> = relations.iter().map(|r| r.display(vars)).collect();
                out.push_str(&format!("  relations = {};\n", rel.join(", ")));
                out.push_str("}\n");
            }
            Decl::Ideal { name, ring, gens } => {
                let vars = ring_vars(session, ring);
                out.push_str(&format!("ideal {} in {} {{\n", name, ring));
                let g: Vec<String> = gens.iter().map(|r| r.display(&vars)).collect();
                out.push_str(&format!("  gens = {};\n", g.join(", ")));
                out.push_str("}\n");
            }
            Decl::Module {
                name,
                ring,
                presentation,
                twists,
            } => {
                let vars = ring_vars(session, ring);
                out.push_str(&format!("module {} over {} {{\n", name, ring));
                out.push_str(&format!(
                    "  presentation = {};\n",
                    matrix_text(presentation, &vars)
                ));
                out.push_str(&format!("  twists = {};\n", int_list_text(twists)));
                out.push_str("}\n");
            }
            Decl::Complex {
                name,
                ring,
                lo,
                hi,
                twists,
                diffs,
            } => {
                let vars = ring_vars(session, ring);
                out.push_str(&format!("complex {} over {} {{\n", name, ring));
                out.push_str(&format!("  range = {}..{};\n", lo, hi));
                for (i, tw) in twists {
                    out.push_str(&format!("  twists {} = {};\n", i, int_list_text(tw)));
                }
                for (i, rows) in diffs {
                    out.push_str(&format!("  d {} = {};\n", i, matrix_text(rows, &vars)));
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

fn ring_vars(session: &Session, ring: &str) -> Vec<String> {
    session
        .rings
        .get(ring)
        .map(|r| r.vars.clone())
        .unwrap_or_default()
}

fn matrix_text(rows: &[Vec<Polynomial>], vars: &[String]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|p| p.display(vars)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", body.join(", "))
}

fn int_list_text(v: &[i64]) -> String {
    let cells: Vec<String> = v.iter().map(|n| n.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;

    fn ctx() -> PolyCtx {
        PolyCtx {
            fp: Fp::new(101).unwrap(),
            nvars: 2,
            order: MonomialOrder::Grevlex,
        }
    }

    #[test]
    fn parse_roundtrip() {
        let c = ctx();
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = parse_poly_str(&c, &vars, "3*x^2*y - y + 1").unwrap();
        assert_eq!(f.terms.len(), 3);
        let txt = f.display(&vars);
        let g = parse_poly_str(&c, &vars, &txt).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_cancellation() {
        let c = ctx();
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = parse_poly_str(&c, &vars, "x - x").unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn parse_rejects_unknown_var() {
        let c = ctx();
        let vars = vec!["x".to_string(), "y".to_string()];
        assert!(parse_poly_str(&c, &vars, "z").is_err());
    }

    const SESSION_TEXT: &str = r#"
# a hypersurface quotient with a Koszul-type complex on it
ring R {
  p = 101;
  vars = x, y;
  order = grevlex;
  relations = x*y;
}

ideal I in R {
  gens = x + y;
}

module M over R {
  presentation = [[x]];
  twists = [0];
}

complex F over R {
  range = 0..1;
  twists 0 = [0];
  twists 1 = [1];
  d 1 = [[x + y]];
}
"#;

    #[test]
    fn parses_all_block_kinds() {
        let session = parse_session(SESSION_TEXT).unwrap();
        let r = session.ring("R").unwrap();
        assert_eq!(r.ctx.fp.p, 101);
        assert_eq!(r.vars, vec!["x", "y"]);
        assert_eq!(r.relations_gb.elems.len(), 1);
        let i = session.ideal("I").unwrap();
        assert_eq!(i.generators.len(), 1);
        let m = session.module("M").unwrap();
        assert_eq!(m.twists, vec![0]);
        let f = session.complex("F").unwrap();
        assert_eq!(f.lo, 0);
        assert_eq!(f.hi(), 1);
        assert!(session.ring("missing").is_err());
    }

    #[test]
    fn serializer_round_trips() {
        let session = parse_session(SESSION_TEXT).unwrap();
        let text = serialize_session(&session);
        let again = parse_session(&text).unwrap();
        assert_eq!(session.decls, again.decls);
    }

    #[test]
    fn prime_override_applies_everywhere() {
        let session = parse_session_with_prime(SESSION_TEXT, Some(7)).unwrap();
        assert_eq!(session.ring("R").unwrap().ctx.fp.p, 7);
    }

    #[test]
    fn rejects_duplicate_names() {
        let text = "ring R { p = 101; vars = x; order = grevlex; }\nring R { p = 101; vars = x; order = grevlex; }";
        assert!(parse_session(text).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let text = r#"
ring R { p = 101; vars = x; order = grevlex; }
complex F over R {
  range = 0..2;
  twists 0 = [0];
  twists 1 = [1];
  twists 2 = [1];
  d 1 = [[x]];
  d 2 = [[1]];
}
"#;
        let err = parse_session(text).unwrap_err();
        // the block parser tags validation failures with the source position
        assert!(err.to_string().contains("d-squared nonzero at degree 2"));
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_session("ring R { p = ; }").unwrap_err();
        assert!(matches!(err, EngineError::Parse { line: 1, .. }));
    }
}
