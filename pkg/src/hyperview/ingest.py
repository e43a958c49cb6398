"""Corpus parsing, boolean keyword search and attribute extraction.

A corpus is UTF-8 line-delimited JSON, one publication per line::

    {"id": "p1", "title": "...", "abstract": "...",
     "attributes": {"organisation": ["CERN", "UniGe"], "keyword": ["bgo"]}}

Unknown fields are ignored.  Attribute values are trimmed and deduplicated
per attribute type; blank values are dropped.
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Union


class CorpusError(ValueError):
    """A corpus line could not be turned into a record."""


class QueryError(ValueError):
    """A search query string is malformed."""


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    title: str = ""
    abstract: str = ""
    attributes: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id.strip():
            raise CorpusError("record id must be a nonempty string")
        clean = {}
        for attr_type, values in self.attributes.items():
            clean[attr_type] = frozenset(v.strip() for v in values if v.strip())
        object.__setattr__(self, "attributes", clean)

    def attribute_set(self, attr_type: str) -> frozenset[str]:
        return self.attributes.get(attr_type, frozenset())

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "abstract": self.abstract,
            "attributes": {k: sorted(v) for k, v in sorted(self.attributes.items())},
        }


def _record_from_obj(obj, lineno: int) -> PublicationRecord:
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid.strip():
        raise CorpusError(f"line {lineno}: missing or empty 'id'")
    title = obj.get("title", "")
    abstract = obj.get("abstract", "")
    if not isinstance(title, str) or not isinstance(abstract, str):
        raise CorpusError(f"line {lineno}: 'title' and 'abstract' must be strings")
    raw_attrs = obj.get("attributes", {})
    if not isinstance(raw_attrs, dict):
        raise CorpusError(f"line {lineno}: 'attributes' must be an object")
    attrs = {}
    for attr_type, values in raw_attrs.items():
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise CorpusError(
                f"line {lineno}: attribute {attr_type!r} must be an array of strings"
            )
        attrs[attr_type] = values
    return PublicationRecord(rid, title, abstract, attrs)


def parse_corpus(source: Union[bytes, str, Iterable[str], io.IOBase]) -> list[PublicationRecord]:
    """Parse line-delimited JSON records, keeping input order.

    ``source`` may be raw bytes, a string, a binary/text stream or any
    iterable of lines.  Blank lines are skipped.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source

    records = []
    seen = set()
    for lineno, line in enumerate(lines, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
        record = _record_from_obj(obj, lineno)
        if record.id in seen:
            raise CorpusError(f"line {lineno}: duplicate record id {record.id!r}")
        seen.add(record.id)
        records.append(record)
    return records


def read_corpus(path) -> list[PublicationRecord]:
    with open(path, "rb") as fh:
        return parse_corpus(fh)


def write_corpus(records: Iterable[PublicationRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


# -- query language -----------------------------------------------------------

SCOPES = ("title", "abstract", "any")
_TOKEN = re.compile(r"\s*(?:(?P<lp>\()|(?P<rp>\))|(?P<scope>(?:title|abstract|any):)|(?P<word>[^\s()]+))")
_WORD_CHARS = re.compile(r"\w+")


@dataclass(frozen=True)
class Term:
    text: str
    wildcard: bool = False
    scope: str = "any"

    def matches(self, record: PublicationRecord) -> bool:
        fields = []
        if self.scope in ("title", "any"):
            fields.append(record.title.lower())
        if self.scope in ("abstract", "any"):
            fields.append(record.abstract.lower())
        needle = self.text.lower()
        if self.wildcard:
            return any(w.startswith(needle) for f in fields for w in _WORD_CHARS.findall(f))
        return any(needle in f for f in fields)


@dataclass(frozen=True)
class Not:
    child: object

    def matches(self, record):
        return not self.child.matches(record)


@dataclass(frozen=True)
class And:
    children: tuple

    def matches(self, record):
        return all(c.matches(record) for c in self.children)


@dataclass(frozen=True)
class Or:
    children: tuple

    def matches(self, record):
        return any(c.matches(record) for c in self.children)


@dataclass(frozen=True)
class SearchQuery:
    """A parsed boolean query; build one with :meth:`parse`."""

    expression: object
    source: str = ""

    @classmethod
    def parse(cls, text: str) -> "SearchQuery":
        return cls(_Parser(text).parse(), text)

    def matches(self, record: PublicationRecord) -> bool:
        return self.expression.matches(record)

    def __str__(self):
        return self.source


class _Parser:
    """Recursive descent over ``OR < AND < NOT < primary``.

    Juxtaposed clauses (``title:(a) abstract:(a)``) combine with OR.
    """

    def __init__(self, text):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise QueryError(f"cannot tokenize query at offset {pos}: {text[pos:]!r}")
            kind = m.lastgroup
            value = m.group(kind)
            if kind == "word" and value in ("AND", "OR", "NOT"):
                kind = value
            tokens.append((kind, value))
            pos = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise QueryError(f"unexpected end of query {self.text!r}")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise QueryError(f"expected {kind} but found {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise QueryError("empty query")
        clauses = [self.or_expr("any")]
        while self.peek() in ("lp", "scope", "word", "NOT"):
            clauses.append(self.or_expr("any"))
        if self.pos != len(self.tokens):
            raise QueryError(f"unexpected {self.tokens[self.pos][1]!r} in {self.text!r}")
        return clauses[0] if len(clauses) == 1 else Or(tuple(clauses))

    def or_expr(self, scope):
        children = [self.and_expr(scope)]
        while self.peek() == "OR":
            self.take()
            children.append(self.and_expr(scope))
        return children[0] if len(children) == 1 else Or(tuple(children))

    def and_expr(self, scope):
        children = [self.not_expr(scope)]
        while self.peek() == "AND":
            self.take()
            children.append(self.not_expr(scope))
        return children[0] if len(children) == 1 else And(tuple(children))

    def not_expr(self, scope):
        if self.peek() == "NOT":
            self.take()
            return Not(self.not_expr(scope))
        return self.primary(scope)

    def primary(self, scope):
        kind = self.peek()
        if kind == "lp":
            self.take()
            inner = self.or_expr(scope)
            self.take("rp")
            return inner
        if kind == "scope":
            _, value = self.take()
            inner_scope = value[:-1]
            if self.peek() == "lp":
                self.take()
                inner = self.or_expr(inner_scope)
                self.take("rp")
                return inner
            return self.term(inner_scope)
        if kind == "word":
            return self.term(scope)
        found = self.tokens[self.pos][1] if self.pos < len(self.tokens) else "end of query"
        raise QueryError(f"expected a term but found {found!r} in {self.text!r}")

    def term(self, scope):
        _, word = self.take("word")
        wildcard = word.endswith("*")
        stem = word[:-1] if wildcard else word
        if not stem or "*" in stem:
            raise QueryError(f"wildcard allowed only in trailing position: {word!r}")
        return Term(stem, wildcard, scope)


def filter_records(records: list[PublicationRecord], query) -> list[PublicationRecord]:
    """Return the records matching ``query`` (a string or SearchQuery), in order."""
    if isinstance(query, str):
        query = SearchQuery.parse(query)
    return [r for r in records if query.matches(r)]


def extract_attribute_sets(
    records: list[PublicationRecord], attr_type: str
) -> list[tuple[str, frozenset[str]]]:
    """Pair each record id with its nonempty ``attr_type`` set.

    Records without the attribute, or with an empty set, contribute no
    hyperedge and are left out.
    """
    out = []
    for rec in records:
        values = rec.attribute_set(attr_type)
        if values:
            out.append((rec.id, values))
    return out
