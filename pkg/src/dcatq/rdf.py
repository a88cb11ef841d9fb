"""RDF triple data: terms, graphs, N-Triples/Turtle reading, indexing, slicing.

The pipeline exchanges data as N-Triples (one statement per line). A small
Turtle subset is supported read-only because fixtures are far more pleasant
to write with prefixes. Graphs are immutable sets of triples; the
:class:`TripleIndex` provides pattern lookups over the three statement
positions and is the basis for splitting a crawl graph into per-dataset
slices.
"""

from __future__ import annotations

import hashlib
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union


class RdfError(Exception):
    """Base class for RDF handling errors."""


class ParseError(RdfError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotFoundError(RdfError):
    """A requested resource does not occur in the data."""


# --- Terms ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value or ":" not in self.value:
            raise ValueError(f"not an absolute IRI: {self.value!r}")


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    language: Optional[str] = None
    datatype: Optional[Iri] = None

    def __post_init__(self):
        if self.language is not None and self.datatype is not None:
            raise ValueError("literal cannot carry both language and datatype")
        if self.language is not None:
            object.__setattr__(self, "language", self.language.lower())


Term = Union[Iri, BlankNode, Literal]
Node = Union[Iri, BlankNode]


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Node
    predicate: Iri
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("literal subject")
        if not isinstance(self.predicate, Iri):
            raise ValueError("predicate must be an IRI")


_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape_literal(text: str) -> str:
    return "".join(_LITERAL_ESCAPES.get(c, c) for c in text)


def term_key(term: Term) -> str:
    """Canonical N-Triples spelling of a term (used as index key)."""
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    out = f'"{_escape_literal(term.lexical)}"'
    if term.language:
        out += f"@{term.language}"
    elif term.datatype:
        out += f"^^<{term.datatype.value}>"
    return out


# --- Graph ----------------------------------------------------------------


class Graph:
    """An immutable set of triples."""

    __slots__ = ("_triples",)

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples = frozenset(triples)

    @property
    def triples(self) -> frozenset[Triple]:
        return self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def union(self, other: "Graph | Iterable[Triple]") -> "Graph":
        return Graph(self._triples | frozenset(other))

    def difference(self, other: "Graph | Iterable[Triple]") -> "Graph":
        return Graph(self._triples - frozenset(other))

    def subjects(self) -> set[Node]:
        return {t.subject for t in self._triples}


def serialize_ntriples(graph: Graph) -> str:
    """Deterministic N-Triples text: one statement per line, sorted."""
    lines = sorted(
        f"{term_key(t.subject)} {term_key(t.predicate)} {term_key(t.object)} ."
        for t in graph
    )
    return "".join(line + "\n" for line in lines)


# --- N-Triples parsing ----------------------------------------------------

_ECHARS = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_LANGTAG_RE = re.compile(r"[a-zA-Z]+(?:-[a-zA-Z0-9]+)*")
_BNODE_LABEL_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*")


def _document_id(text: str) -> str:
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:8]


class _Cursor:
    """Single-statement scanner with position/line error reporting."""

    def __init__(self, line: str, lineno: int):
        self.s = line
        self.i = 0
        self.lineno = lineno

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} (at column {self.i + 1})", self.lineno)

    def eof(self) -> bool:
        return self.i >= len(self.s)

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def _unescape_uchar(self) -> str:
        # positioned after the backslash
        kind = self.s[self.i]
        self.i += 1
        width = 4 if kind == "u" else 8
        hexpart = self.s[self.i : self.i + width]
        if len(hexpart) != width:
            raise self.error("truncated unicode escape")
        try:
            code = int(hexpart, 16)
        except ValueError:
            raise self.error(f"bad unicode escape \\{kind}{hexpart}")
        self.i += width
        return chr(code)

    def parse_iri(self) -> Iri:
        if self.peek() != "<":
            raise self.error("expected '<'")
        self.i += 1
        out = []
        while True:
            if self.eof():
                raise self.error("unterminated IRI")
            c = self.s[self.i]
            if c == ">":
                self.i += 1
                break
            if c == "\\":
                self.i += 1
                if self.peek() in ("u", "U"):
                    out.append(self._unescape_uchar())
                else:
                    raise self.error("invalid escape in IRI")
                continue
            if c in ' <"{}|^`':
                raise self.error(f"invalid character {c!r} in IRI")
            out.append(c)
            self.i += 1
        try:
            return Iri("".join(out))
        except ValueError as exc:
            raise self.error(str(exc))

    def parse_bnode(self) -> BlankNode:
        if not self.s.startswith("_:", self.i):
            raise self.error("expected blank node")
        self.i += 2
        m = _BNODE_LABEL_RE.match(self.s, self.i)
        if not m:
            raise self.error("invalid blank node label")
        label = m.group(0)
        # a trailing '.' belongs to the statement terminator, not the label
        while label.endswith("."):
            label = label[:-1]
        if not label:
            raise self.error("invalid blank node label")
        self.i += len(label)
        return BlankNode(label)

    def parse_string(self) -> str:
        if self.peek() != '"':
            raise self.error("expected '\"'")
        self.i += 1
        out = []
        while True:
            if self.eof():
                raise self.error("unterminated string literal")
            c = self.s[self.i]
            if c == '"':
                self.i += 1
                return "".join(out)
            if c == "\\":
                self.i += 1
                if self.eof():
                    raise self.error("dangling escape")
                e = self.s[self.i]
                if e in ("u", "U"):
                    out.append(self._unescape_uchar())
                elif e in _ECHARS:
                    out.append(_ECHARS[e])
                    self.i += 1
                else:
                    raise self.error(f"invalid escape \\{e}")
                continue
            out.append(c)
            self.i += 1

    def parse_literal(self) -> Literal:
        lexical = self.parse_string()
        if self.peek() == "@":
            self.i += 1
            m = _LANGTAG_RE.match(self.s, self.i)
            if not m:
                raise self.error("invalid language tag")
            self.i += len(m.group(0))
            return Literal(lexical, language=m.group(0))
        if self.s.startswith("^^", self.i):
            self.i += 2
            return Literal(lexical, datatype=self.parse_iri())
        return Literal(lexical)

    def parse_term(self) -> Term:
        c = self.peek()
        if c == "<":
            return self.parse_iri()
        if c == "_":
            return self.parse_bnode()
        if c == '"':
            return self.parse_literal()
        raise self.error(f"unexpected character {c!r}")


def parse_ntriples(text: str, document_id: Optional[str] = None) -> Graph:
    """Parse N-Triples text into a :class:`Graph`.

    Blank node labels are skolemized to ``<document id>-<local label>`` so
    that nodes stay stable and joinable when slices from the same document
    are recombined. When no document id is given, a digest of the input
    text is used.
    """
    if document_id is None:
        document_id = _document_id(text)
    triples = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cur = _Cursor(line, lineno)
        subject = cur.parse_term()
        if isinstance(subject, Literal):
            raise cur.error("literal subject")
        cur.skip_ws()
        predicate = cur.parse_iri()
        cur.skip_ws()
        obj = cur.parse_term()
        cur.skip_ws()
        if cur.peek() != ".":
            raise cur.error("expected '.' terminating the statement")
        cur.i += 1
        cur.skip_ws()
        if not cur.eof() and cur.peek() != "#":
            raise cur.error("trailing content after '.'")
        subject = _skolemize(subject, document_id)
        obj = _skolemize(obj, document_id)
        triples.add(Triple(subject, predicate, obj))
    return Graph(triples)


def _skolemize(term: Term, document_id: str) -> Term:
    if isinstance(term, BlankNode):
        return BlankNode(f"{document_id}-{term.label}")
    return term


# --- Turtle subset (read-only, for fixtures) --------------------------------

_XSD_INTEGER = Iri("http://www.w3.org/2001/XMLSchema#integer")
_XSD_DECIMAL = Iri("http://www.w3.org/2001/XMLSchema#decimal")
_XSD_DOUBLE = Iri("http://www.w3.org/2001/XMLSchema#double")
_XSD_BOOLEAN = Iri("http://www.w3.org/2001/XMLSchema#boolean")
_RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")

_TURTLE_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<iri><(?:[^<>"{}|^`\\\x00-\x20]|\\u[0-9a-fA-F]{4}|\\U[0-9a-fA-F]{8})*>)
    | (?P<string>"(?:[^"\\\n]|\\.)*")
    | (?P<prefix_kw>@prefix|PREFIX)
    | (?P<langtag>@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)
    | (?P<dtype>\^\^)
    | (?P<bnode>_:[A-Za-z0-9_][A-Za-z0-9_.\-]*)
    | (?P<number>[+-]?(?:\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+))
    | (?P<pname>(?:[A-Za-z][A-Za-z0-9_\-]*)?:[A-Za-z0-9_][A-Za-z0-9_.\-]*|(?:[A-Za-z][A-Za-z0-9_\-]*)?:)
    | (?P<kw_a>\ba\b)
    | (?P<boolean>\btrue\b|\bfalse\b)
    | (?P<punct>[.;,])
    """,
    re.VERBOSE,
)


class _TurtleParser:
    def __init__(self, text: str, document_id: str):
        self.tokens: list[tuple[str, str, int]] = []
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.document_id = document_id
        line = 1
        i = 0
        while i < len(text):
            m = _TURTLE_TOKEN.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {text[i]!r}", line)
            kind = m.lastgroup
            value = m.group(0)
            line += value.count("\n")
            if kind not in ("ws", "comment"):
                self.tokens.append((kind, value, line))
            i = m.end()

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expected: Optional[str] = None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.tokens[-1][2] if self.tokens else 1)
        if expected is not None and tok[0] != expected:
            raise ParseError(f"expected {expected}, got {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def _iri_from_token(self, value: str, line: int) -> Iri:
        body = value[1:-1]
        body = re.sub(
            r"\\u([0-9a-fA-F]{4})|\\U([0-9a-fA-F]{8})",
            lambda m: chr(int(m.group(1) or m.group(2), 16)),
            body,
        )
        try:
            return Iri(body)
        except ValueError as exc:
            raise ParseError(str(exc), line)

    def _resolve_pname(self, value: str, line: int) -> Iri:
        prefix, _, local = value.partition(":")
        if prefix not in self.prefixes:
            raise ParseError(f"unknown prefix {prefix!r}", line)
        return Iri(self.prefixes[prefix] + local)

    def parse_directive(self):
        kind, value, line = self.next()
        tok = self.next("pname")
        prefix = tok[1].rstrip(":")
        iri_tok = self.next("iri")
        self.prefixes[prefix] = self._iri_from_token(iri_tok[1], iri_tok[2]).value
        if value == "@prefix":
            self.next("punct")

    def parse_node(self) -> Node:
        kind, value, line = self.next()
        if kind == "iri":
            return self._iri_from_token(value, line)
        if kind == "pname":
            return self._resolve_pname(value, line)
        if kind == "bnode":
            return BlankNode(f"{self.document_id}-{value[2:]}")
        raise ParseError(f"expected subject, got {value!r}", line)

    def parse_predicate(self) -> Iri:
        kind, value, line = self.next()
        if kind == "kw_a":
            return _RDF_TYPE
        if kind == "iri":
            return self._iri_from_token(value, line)
        if kind == "pname":
            return self._resolve_pname(value, line)
        raise ParseError(f"expected predicate, got {value!r}", line)

    def parse_object(self) -> Term:
        kind, value, line = self.next()
        if kind == "iri":
            return self._iri_from_token(value, line)
        if kind == "pname":
            return self._resolve_pname(value, line)
        if kind == "bnode":
            return BlankNode(f"{self.document_id}-{value[2:]}")
        if kind == "boolean":
            return Literal(value, datatype=_XSD_BOOLEAN)
        if kind == "number":
            if "." in value or "e" in value or "E" in value:
                dt = _XSD_DOUBLE if ("e" in value or "E" in value) else _XSD_DECIMAL
                return Literal(value, datatype=dt)
            return Literal(value, datatype=_XSD_INTEGER)
        if kind == "string":
            cur = _Cursor(value, line)
            lexical = cur.parse_string()
            nxt = self.peek()
            if nxt and nxt[0] == "langtag":
                self.next()
                return Literal(lexical, language=nxt[1][1:])
            if nxt and nxt[0] == "dtype":
                self.next()
                dkind, dvalue, dline = self.next()
                if dkind == "iri":
                    return Literal(lexical, datatype=self._iri_from_token(dvalue, dline))
                if dkind == "pname":
                    return Literal(lexical, datatype=self._resolve_pname(dvalue, dline))
                raise ParseError("expected datatype IRI", dline)
            return Literal(lexical)
        raise ParseError(f"expected object, got {value!r}", line)

    def parse(self) -> set[Triple]:
        triples = set()
        while self.peek() is not None:
            if self.peek()[0] == "prefix_kw":
                self.parse_directive()
                continue
            subject = self.parse_node()
            while True:
                predicate = self.parse_predicate()
                while True:
                    obj = self.parse_object()
                    triples.add(Triple(subject, predicate, obj))
                    tok = self.next("punct")
                    if tok[1] == ",":
                        continue
                    break
                if tok[1] == ";":
                    # allow "; ." style dangling separators
                    nxt = self.peek()
                    if nxt and nxt[0] == "punct" and nxt[1] == ".":
                        self.next()
                        break
                    continue
                if tok[1] == ".":
                    break
                raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return triples


def parse_turtle(text: str, document_id: Optional[str] = None) -> Graph:
    """Parse the supported Turtle subset (prefixes, ``a``, ``;``/``,`` lists)."""
    if document_id is None:
        document_id = _document_id(text)
    return Graph(_TurtleParser(text, document_id).parse())


def parse_file(path, document_id: Optional[str] = None) -> Graph:
    """Parse a file by extension: ``.ttl`` as Turtle, anything else as N-Triples."""
    from pathlib import Path

    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if document_id is None:
        document_id = p.name
    if p.suffix == ".ttl":
        return parse_turtle(text, document_id)
    return parse_ntriples(text, document_id)


# --- TripleIndex -----------------------------------------------------------


class TripleIndex:
    """Three-field lookup over a graph: by subject, predicate and object.

    Each triple is stored once; the maps key the serialized term of the
    respective position to triple ids. ``query_count`` tracks how many
    pattern lookups were issued, which the slicing code keeps linear in
    the number of visited nodes.
    """

    def __init__(self, graph: Graph):
        self._triples = sorted(
            graph,
            key=lambda t: (term_key(t.subject), term_key(t.predicate), term_key(t.object)),
        )
        self._by_subject: dict[str, list[int]] = {}
        self._by_predicate: dict[str, list[int]] = {}
        self._by_object: dict[str, list[int]] = {}
        for idx, t in enumerate(self._triples):
            self._by_subject.setdefault(term_key(t.subject), []).append(idx)
            self._by_predicate.setdefault(term_key(t.predicate), []).append(idx)
            self._by_object.setdefault(term_key(t.object), []).append(idx)
        self.query_count = 0

    def __len__(self) -> int:
        return len(self._triples)

    def graph(self) -> Graph:
        return Graph(self._triples)

    def query(
        self,
        subject: Optional[Node] = None,
        predicate: Optional[Iri] = None,
        object: Optional[Term] = None,
    ) -> set[Triple]:
        """Triples matching all bound positions; all unbound returns everything."""
        self.query_count += 1
        candidate_lists = []
        if subject is not None:
            candidate_lists.append(self._by_subject.get(term_key(subject), []))
        if predicate is not None:
            candidate_lists.append(self._by_predicate.get(term_key(predicate), []))
        if object is not None:
            candidate_lists.append(self._by_object.get(term_key(object), []))
        if not candidate_lists:
            return set(self._triples)
        ids = set(candidate_lists[0])
        for lst in candidate_lists[1:]:
            ids &= set(lst)
        return {self._triples[i] for i in ids}


# --- Dataset slicing --------------------------------------------------------


def slice_dataset(index: TripleIndex, dataset: Iri) -> Graph:
    """Subgraph describing one dataset, by breadth-first expansion.

    Starting from the dataset node, all outgoing triples of visited nodes
    are emitted and every IRI/blank object is enqueued — except nodes typed
    ``dcat:Dataset`` or ``dcat:Catalog`` other than the root, which cut the
    frontier so shared agents and licenses stay in every slice without
    absorbing the whole corpus.
    """
    from . import vocab

    stop: set[Node] = set()
    for t in index.query(predicate=vocab.RDF_TYPE, object=vocab.DCAT_DATASET):
        stop.add(t.subject)
    for t in index.query(predicate=vocab.RDF_TYPE, object=vocab.DCAT_CATALOG):
        stop.add(t.subject)
    stop.discard(dataset)

    visited: set[Node] = {dataset}
    queue: deque[Node] = deque([dataset])
    triples: set[Triple] = set()
    first = True
    while queue:
        node = queue.popleft()
        outgoing = index.query(subject=node)
        if first:
            if not outgoing:
                raise NotFoundError(f"dataset not in index: {dataset.value}")
            first = False
        for t in outgoing:
            triples.add(t)
            o = t.object
            if isinstance(o, (Iri, BlankNode)) and o not in visited and o not in stop:
                visited.add(o)
                queue.append(o)
    return Graph(triples)


def split_dataset_graphs(graph: Graph) -> list[tuple[Iri, Graph]]:
    """One (dataset IRI, slice) pair per ``dcat:Dataset`` subject, IRI-sorted."""
    from . import vocab

    index = TripleIndex(graph)
    datasets = sorted(
        {
            t.subject.value
            for t in index.query(predicate=vocab.RDF_TYPE, object=vocab.DCAT_DATASET)
            if isinstance(t.subject, Iri)
        }
    )
    return [(Iri(d), slice_dataset(index, Iri(d))) for d in datasets]
