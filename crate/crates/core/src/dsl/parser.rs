use std::collections::HashSet;

use super::lexer::{tokenize, Token, TokenKind};
use super::ParseResult;
use crate::diagnostic::{codes, has_errors, Diagnostic, SourceSpan};
use crate::model::{
    validate_model_located, Channel, Entity, EntityKind, ExposureFact, Form, GroupSchemeDecl, IoiAttachment,
    Persistence, PiiItem, Resolvability, ServiceModel, Subject, Trigger, OUTSIDE, PUBLIC,
};

type PResult<T> = Result<T, Diagnostic>;

const STATEMENT_STARTS: &[&str] = &["entity", "pii", "observes", "attach", "group_scheme"];

/// A name as written in the source, with where it was written.
#[derive(Debug, Clone)]
struct Name {
    text: String,
    span: SourceSpan,
}

#[derive(Default)]
struct SourceMap {
    header: Option<SourceSpan>,
    entities: Vec<SourceSpan>,
    pii: Vec<PiiRefs>,
    exposures: Vec<ExposureRefs>,
    attachments: Vec<(SourceSpan, Name)>,
    group: Option<(SourceSpan, Option<Name>)>,
}

struct PiiRefs {
    decl: SourceSpan,
    subject: Name,
    holders: Vec<Name>,
}

struct ExposureRefs {
    decl: SourceSpan,
    observer: Name,
    pii: Name,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diagnostics: Vec<Diagnostic>,
    model: ServiceModel,
    group: Option<GroupSchemeDecl>,
    map: SourceMap,
}

pub(crate) fn parse(text: &str) -> ParseResult {
    let (tokens, lexical) = tokenize(text);
    let mut parser = Parser {
        tokens,
        pos: 0,
        diagnostics: lexical,
        model: ServiceModel::new(""),
        group: None,
        map: SourceMap::default(),
    };
    parser.parse_model();
    if !has_errors(&parser.diagnostics) {
        parser.resolve_names();
    }
    if !has_errors(&parser.diagnostics) {
        parser.validate();
    }
    let model = (!has_errors(&parser.diagnostics)).then_some(parser.model);
    ParseResult {
        model,
        diagnostics: parser.diagnostics,
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let token = self.peek().clone();
        if token.kind != TokenKind::Eof {
            self.pos += 1;
        }
        token
    }

    fn at_keyword(&self, keyword: &str) -> bool {
        matches!(self.peek().kind, TokenKind::Keyword(k) if k == keyword)
    }

    /// A statement cut short at the end of a line is reported right after its
    /// last token rather than at the start of the next line.
    fn unexpected(&self, expected: &str) -> Diagnostic {
        let token = self.peek();
        let previous = self.pos.checked_sub(1).and_then(|i| self.tokens.get(i));
        let span = match previous {
            Some(prev) if prev.span.line < token.span.line => {
                SourceSpan::new(prev.span.line, prev.span.column + prev.span.length, 1)
            }
            _ => token.span,
        };
        Diagnostic::error(
            codes::SYNTAX,
            format!("expected {expected}, found {}", token.kind.describe()),
        )
        .at(span)
    }

    fn expect_keyword(&mut self, keyword: &str) -> PResult<SourceSpan> {
        if self.at_keyword(keyword) {
            Ok(self.advance().span)
        } else {
            Err(self.unexpected(&format!("'{keyword}'")))
        }
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<SourceSpan> {
        if self.peek().kind == kind {
            Ok(self.advance().span)
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<Name> {
        match &self.peek().kind {
            TokenKind::Ident(text) => {
                let text = text.clone();
                let span = self.advance().span;
                Ok(Name { text, span })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// `key = VALUE` where VALUE is one of the keywords accepted by `from_keyword`.
    fn expect_setting<T>(&mut self, key: &str, what: &str, from_keyword: fn(&str) -> Option<T>) -> PResult<T> {
        self.expect_keyword(key)?;
        self.expect(TokenKind::Equals)?;
        self.expect_value(what, from_keyword)
    }

    fn expect_value<T>(&mut self, what: &str, from_keyword: fn(&str) -> Option<T>) -> PResult<T> {
        if let TokenKind::Keyword(k) = self.peek().kind {
            if let Some(value) = from_keyword(k) {
                self.advance();
                return Ok(value);
            }
        }
        Err(self.unexpected(what))
    }

    fn expect_bool(&mut self, key: &str) -> PResult<bool> {
        self.expect_keyword(key)?;
        self.expect(TokenKind::Equals)?;
        self.expect_value("'true' or 'false'", |k| match k {
            "true" => Some(true),
            "false" => Some(false),
            _ => None,
        })
    }

    /// Skips to the start of the next statement, the closing brace, or end of input.
    fn synchronize(&mut self) {
        loop {
            match self.peek().kind {
                TokenKind::Eof | TokenKind::RBrace => return,
                TokenKind::Keyword(k) if STATEMENT_STARTS.contains(&k) => return,
                _ => {
                    self.advance();
                }
            }
        }
    }

    fn parse_model(&mut self) {
        if let Err(d) = self.parse_header() {
            self.diagnostics.push(d);
            return;
        }
        loop {
            let result = match self.peek().kind {
                TokenKind::RBrace => {
                    self.advance();
                    break;
                }
                TokenKind::Eof => {
                    let d = self.unexpected("'}' closing the service");
                    self.diagnostics.push(d);
                    return;
                }
                TokenKind::Keyword("entity") => self.parse_entity(),
                TokenKind::Keyword("pii") => self.parse_pii(),
                TokenKind::Keyword("observes") => self.parse_observes(),
                TokenKind::Keyword("attach") => self.parse_attach(),
                TokenKind::Keyword("group_scheme") => self.parse_group(),
                _ => Err(self.unexpected("a declaration ('entity', 'pii', 'observes', 'attach', 'group_scheme')")),
            };
            if let Err(d) = result {
                self.diagnostics.push(d);
                self.synchronize();
            }
        }
        if self.peek().kind != TokenKind::Eof {
            let d = self.unexpected("end of input after the service");
            self.diagnostics.push(d);
        }
    }

    fn parse_header(&mut self) -> PResult<()> {
        let span = self.expect_keyword("service")?;
        let name = match &self.peek().kind {
            TokenKind::Str(s) => s.clone(),
            _ => return Err(self.unexpected("service name string")),
        };
        self.advance();
        self.expect(TokenKind::LBrace)?;
        self.model.name = name;
        self.map.header = Some(span);
        Ok(())
    }

    fn parse_entity(&mut self) -> PResult<()> {
        self.advance();
        let token = self.peek().clone();
        let reserved = match &token.kind {
            TokenKind::Builtin(name) if name == PUBLIC || name == OUTSIDE => Some(name.clone()),
            TokenKind::Keyword("public") => Some(PUBLIC.to_owned()),
            TokenKind::Keyword("outside") => Some(OUTSIDE.to_owned()),
            _ => None,
        };
        if let Some(name) = reserved {
            return Err(Diagnostic::error(
                codes::DUPLICATE_NAME,
                format!("'{name}' is a built-in entity and cannot be declared"),
            )
            .at(token.span));
        }
        let name = self.expect_ident("entity name")?;
        let kind = self.expect_setting("kind", "'participant', 'ttp' or 'dtp'", |k| match k {
            "participant" => Some(EntityKind::Participant),
            "ttp" => Some(EntityKind::Ttp),
            "dtp" => Some(EntityKind::Dtp),
            _ => None,
        })?;
        let is_role = self.at_keyword("role");
        if is_role {
            self.advance();
        }
        self.model.entities.push(Entity {
            is_role,
            ..Entity::new(name.text, kind)
        });
        self.map.entities.push(name.span);
        Ok(())
    }

    fn parse_pii(&mut self) -> PResult<()> {
        self.advance();
        let name = self.expect_ident("PII name")?;
        self.expect_keyword("of")?;
        let subject = self.expect_ident("subject role")?;
        let resolvability =
            self.expect_setting("resolvability", "'direct', 'indirect' or 'unresolvable'", Resolvability::from_keyword)?;
        let mut pii = PiiItem::new(name.text, subject.text.clone(), resolvability);
        let mut holders = Vec::new();
        let mut seen = HashSet::new();
        while let TokenKind::Keyword(clause @ ("persistence" | "record_holder" | "authority_managed")) = self.peek().kind {
            if !seen.insert(clause) {
                return Err(Diagnostic::error(codes::SYNTAX, format!("duplicate '{clause}' clause"))
                    .at(self.peek().span));
            }
            match clause {
                "persistence" => {
                    pii.persistence = self.expect_setting(
                        "persistence",
                        "'persistent', 'mutable' or 'transaction'",
                        Persistence::from_keyword,
                    )?;
                }
                "record_holder" => {
                    self.advance();
                    self.expect(TokenKind::Equals)?;
                    holders.push(self.expect_ident("record holder")?);
                    while self.peek().kind == TokenKind::Comma {
                        self.advance();
                        holders.push(self.expect_ident("record holder")?);
                    }
                }
                _ => {
                    self.advance();
                    pii.authority_managed = true;
                }
            }
        }
        pii.record_holders = holders.iter().map(|h| h.text.clone()).collect();
        self.model.pii_items.push(pii);
        self.map.pii.push(PiiRefs {
            decl: name.span,
            subject,
            holders,
        });
        Ok(())
    }

    fn parse_observes(&mut self) -> PResult<()> {
        let decl = self.advance().span;
        let observer = match self.peek().kind {
            TokenKind::Keyword(k @ ("public" | "outside")) => {
                let span = self.advance().span;
                let text = if k == "public" { PUBLIC } else { OUTSIDE };
                Name { text: text.to_owned(), span }
            }
            _ => self.expect_ident("observer ('public', 'outside' or an entity name)")?,
        };
        let pii = self.expect_ident("PII name")?;
        let form = self.expect_setting("form", "a form", Form::from_keyword)?;
        let mut exposure = ExposureFact::new(observer.text.clone(), pii.text.clone(), form);
        let mut seen = HashSet::new();
        while let TokenKind::Keyword(clause @ ("when" | "via")) = self.peek().kind {
            if !seen.insert(clause) {
                return Err(Diagnostic::error(codes::SYNTAX, format!("duplicate '{clause}' clause"))
                    .at(self.peek().span));
            }
            if clause == "when" {
                exposure.when = self.expect_setting("when", "a trigger", Trigger::from_keyword)?;
            } else {
                exposure.via = self.expect_setting("via", "'data' or 'context'", Channel::from_keyword)?;
            }
        }
        self.model.exposures.push(exposure);
        self.map.exposures.push(ExposureRefs { decl, observer, pii });
        Ok(())
    }

    fn parse_attach(&mut self) -> PResult<()> {
        let decl = self.advance().span;
        let pii = self.expect_ident("PII name")?;
        self.expect_keyword("to_ioi")?;
        let form = self.expect_setting("form", "a form", Form::from_keyword)?;
        let trigger = self.expect_setting("recoverable_on", "a trigger", Trigger::from_keyword)?;
        self.model
            .attachments
            .push(IoiAttachment::new(pii.text.clone(), form, trigger));
        self.map.attachments.push((decl, pii));
        Ok(())
    }

    fn parse_group(&mut self) -> PResult<()> {
        let decl = self.advance().span;
        if self.map.group.is_some() {
            return Err(Diagnostic::error(codes::SYNTAX, "only one group_scheme may be declared").at(decl));
        }
        let result = self.parse_group_body();
        if result.is_err() {
            // Recover past the group's own closing brace so it is not taken for the service's.
            while !matches!(self.peek().kind, TokenKind::Eof | TokenKind::RBrace)
                && !matches!(self.peek().kind, TokenKind::Keyword(k) if STATEMENT_STARTS.contains(&k))
            {
                self.advance();
            }
            if self.peek().kind == TokenKind::RBrace {
                self.advance();
            }
            self.map.group = Some((decl, None));
            return result.map(|_| ());
        }
        let (scheme, manager) = result?;
        self.group = Some(scheme);
        self.map.group = Some((decl, manager));
        Ok(())
    }

    fn parse_group_body(&mut self) -> PResult<(GroupSchemeDecl, Option<Name>)> {
        self.expect(TokenKind::LBrace)?;
        let operates_on_groups = self.expect_bool("operates_on_groups")?;
        let group_authentication = self.expect_bool("group_authentication")?;
        let acts_on_behalf = self.expect_bool("acts_on_behalf")?;
        let manager = if self.at_keyword("manager") {
            self.advance();
            self.expect(TokenKind::Equals)?;
            Some(self.expect_ident("group manager")?)
        } else {
            None
        };
        self.expect(TokenKind::RBrace)?;
        let scheme = GroupSchemeDecl {
            operates_on_groups,
            group_authentication,
            acts_on_behalf,
            manager: manager.as_ref().map(|m| m.text.clone()),
        };
        Ok((scheme, manager))
    }

    /// Reports duplicate declarations and references to undeclared names.
    fn resolve_names(&mut self) {
        let mut entities: HashSet<&str> = HashSet::from([PUBLIC, OUTSIDE]);
        let mut found = Vec::new();
        for (entity, span) in self.model.declared_entities().zip(&self.map.entities) {
            if !entities.insert(entity.name.as_str()) {
                found.push(
                    Diagnostic::error(codes::DUPLICATE_NAME, format!("entity '{}' is declared twice", entity.name))
                        .at(*span),
                );
            }
        }
        let mut pii_names = HashSet::new();
        for (pii, refs) in self.model.pii_items.iter().zip(&self.map.pii) {
            if !pii_names.insert(pii.name.as_str()) {
                found.push(
                    Diagnostic::error(codes::DUPLICATE_NAME, format!("PII '{}' is declared twice", pii.name))
                        .at(refs.decl),
                );
            }
        }
        let unknown = |what: &str, name: &Name| {
            Diagnostic::error(codes::UNKNOWN_REFERENCE, format!("unknown {what} '{}'", name.text)).at(name.span)
        };
        for refs in &self.map.pii {
            if !entities.contains(refs.subject.text.as_str()) {
                found.push(unknown("subject", &refs.subject));
            }
            for holder in &refs.holders {
                if !entities.contains(holder.text.as_str()) {
                    found.push(unknown("record holder", holder));
                }
            }
        }
        for refs in &self.map.exposures {
            if !entities.contains(refs.observer.text.as_str()) {
                found.push(unknown("observer", &refs.observer));
            }
            if !pii_names.contains(refs.pii.text.as_str()) {
                found.push(unknown("PII", &refs.pii));
            }
        }
        for (_, pii) in &self.map.attachments {
            if !pii_names.contains(pii.text.as_str()) {
                found.push(unknown("PII", pii));
            }
        }
        if let Some((_, Some(manager))) = &self.map.group {
            if !entities.contains(manager.text.as_str()) {
                found.push(unknown("group manager", manager));
            }
        }
        self.diagnostics.extend(found);
    }

    fn validate(&mut self) {
        if let Some(scheme) = self.group.take() {
            let model = std::mem::replace(&mut self.model, ServiceModel::new(""));
            self.model = model.with_group_scheme(scheme);
        }
        let header = self.map.header.unwrap_or(SourceSpan::new(1, 1, 1));
        for (diagnostic, subject) in validate_model_located(&self.model) {
            let span = match subject {
                Subject::Model => header,
                // The two built-ins are injected first and have no declaration of their own.
                Subject::Entity(i) => i.checked_sub(2).and_then(|i| self.map.entities.get(i).copied()).unwrap_or(header),
                Subject::Pii(i) => self.map.pii[i].decl,
                Subject::Exposure(i) => self.map.exposures[i].decl,
                Subject::Attachment(i) => self.map.attachments[i].0,
                Subject::GroupScheme => self.map.group.as_ref().map_or(header, |(span, _)| *span),
            };
            self.diagnostics.push(diagnostic.at(span));
        }
    }
}
