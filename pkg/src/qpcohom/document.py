"""Text input format and JSON reports.

An input file is split into ``[section]`` blocks; ``#`` starts a comment.

    [quiver]
    vertices = 1..4
    arrow a : 1 -> 2
    arrow x : 3 -> 1 new
    [new-arrows]
    x
    [relations]
    rho = a.b - 1/2 c.d
    [potential]
    potential W = x.a.b
    [assert]
    type = cyclically-oriented
    [surface]
    boundary = 4
    punctures = p
    [triangulation]
    arc r1 : 1 - p
    triangle t1 = r1 b(1,2) r2
    selffolded s1 = l1 r1

Relation lines may be written with or without the leading ``relation`` keyword.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Arc, SelfFolded, Triangle, Triangulation, TriangulationError
from .potential import QP, Potential, PotentialError, Relation, relation_extension
from .quiver import Arrow, Quiver, QuiverError
from .theorems import DECLARED_TYPES

SECTIONS = ("quiver", "relations", "potential", "new-arrows", "assert", "surface", "triangulation")

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_ID = r"[A-Za-z0-9_']+"
_TOKEN = re.compile(rf"\s*(?:(?P<sign>[+-])|(?P<coef>\d+(?:/\d+)?)\s*\*?|(?P<path>{_NAME}(?:\.{_NAME})*))")


class ParseError(ValueError):
    def __init__(self, message, line=None, token=None):
        self.line = line
        self.token = token
        where = f"line {line}: " if line is not None else ""
        what = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{what}")


def _vertex(tok: str):
    return int(tok) if tok.isdigit() else tok


def parse_terms(text: str, line=None) -> list[tuple[Fraction, tuple]]:
    """``[COEF] PATH { (+|-) [COEF] PATH }`` into ``[(coef, arrows)]``."""
    out = []
    pos, sign, coef, expect_term, signed = 0, 1, None, True, False
    text = text.rstrip()
    if not text.strip():
        raise ParseError("empty linear combination", line)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            raise ParseError("unexpected token", line, rest.split()[0] if rest else rest)
        pos = m.end()
        if m.group("sign"):
            if (expect_term and out) or signed or coef is not None:
                raise ParseError("misplaced sign", line, m.group("sign"))
            sign = 1 if m.group("sign") == "+" else -1
            expect_term, signed = True, True
        elif m.group("coef"):
            if not expect_term or coef is not None:
                raise ParseError("coefficient without a path", line, m.group("coef"))
            coef = Fraction(m.group("coef"))
            if coef == 0:
                raise ParseError("zero coefficient", line, m.group("coef"))
        else:
            if not expect_term:
                raise ParseError("missing + or - between terms", line, m.group("path"))
            out.append((sign * (coef if coef is not None else Fraction(1)), tuple(m.group("path").split("."))))
            sign, coef, expect_term, signed = 1, None, False, False
    if expect_term:
        raise ParseError("linear combination ends without a path", line)
    return out


@dataclass
class InputDocument:
    vertices: list = field(default_factory=list)
    arrows: list = field(default_factory=list)  # (name, source, target, new)
    relations: list = field(default_factory=list)  # (name, [(coef, path)])
    potentials: list = field(default_factory=list)  # (name, [(coef, path)])
    new_arrows: list = field(default_factory=list)
    declared_type: str = "none"
    boundary: int | None = None
    punctures: list = field(default_factory=list)
    arcs: list = field(default_factory=list)  # (name, end, end)
    triangles: list = field(default_factory=list)  # (name, sides)
    selffolded: list = field(default_factory=list)  # (name, loop, radius)
    sections: list = field(default_factory=list)
    lines: dict = field(default_factory=dict, compare=False)  # (kind, name) -> line number

    # -- interpretation -----------------------------------------------
    @property
    def is_geometry(self) -> bool:
        return "surface" in self.sections

    def quiver(self) -> Quiver:
        if self.is_geometry:
            raise ParseError("a surface document has no explicit quiver")
        new = set(self.new_arrows) | {a[0] for a in self.arrows if a[3]}
        names = {a[0] for a in self.arrows}
        for n in sorted(new - names):
            raise ParseError("new-arrows lists an undeclared arrow", self.lines.get(("new", n)), n)
        vs = set(self.vertices)
        for name, s, t, _ in self.arrows:
            for v in (s, t):
                if v not in vs:
                    raise ParseError("arrow uses an undeclared vertex", self.lines.get(("arrow", name)), str(v))
        try:
            return Quiver(tuple(self.vertices), tuple(Arrow(n, s, t, n in new) for n, s, t, _ in self.arrows))
        except QuiverError as e:
            raise ParseError(str(e)) from e

    def _relation(self, q: Quiver, kind: str, name: str, terms) -> Relation:
        line = self.lines.get((kind, name))
        for _, p in terms:
            for a in p:
                if a not in q.arrow_names:
                    raise ParseError("undeclared arrow", line, a)
            try:
                q.path(p)
            except QuiverError as e:
                raise ParseError(f"non-composable path: {e}", line, ".".join(p)) from e
        try:
            return Relation.from_terms(q, terms, name)
        except (PotentialError, QuiverError) as e:
            raise ParseError(str(e), line, name) from e

    def relation_list(self, q: Quiver | None = None) -> list[Relation]:
        q = q or self.quiver()
        rels = [self._relation(q, "relation", n, t) for n, t in self.relations]
        for r in rels:
            try:
                r.validate(q, min_len=2)
            except (PotentialError, QuiverError) as e:
                raise ParseError(str(e), self.lines.get(("relation", r.name)), r.name) from e
        return rels

    def potential(self, q: Quiver | None = None) -> Potential:
        q = q or self.quiver()
        W = Potential()
        for name, terms in self.potentials:
            line = self.lines.get(("potential", name))
            for c, p in terms:
                path = self._relation(q, "potential", name, [(c, p)])
                if path.source != path.target:
                    raise ParseError("potential term is not a cycle", line, ".".join(p))
                W.add(p, c)
        return W

    def qp(self) -> QP:
        """The quiver with potential described by the document.

        With a ``[potential]`` section the quiver is taken as given (its new
        arrows marked by ``new``); otherwise the relations are extended.
        """
        q = self.quiver()
        try:
            if self.potentials:
                return QP(q, self.potential(q), self.relation_list(q) if self.relations else [])
            return relation_extension(q, self.relation_list(q))
        except (PotentialError, QuiverError) as e:
            raise ParseError(str(e)) from e

    def triangulation(self) -> Triangulation:
        if not self.is_geometry:
            raise ParseError("document has no [surface] section")
        if self.boundary is None:
            raise ParseError("surface needs 'boundary = N'")
        if not self.punctures:
            raise ParseError("surface needs 'punctures = p [q]'")
        pset = set(self.punctures)
        arcs = {}
        for name, a, b in self.arcs:
            for e in (a, b):
                if not (isinstance(e, int) and 1 <= e <= self.boundary) and e not in pset:
                    raise ParseError("arc end is neither a boundary index nor a puncture", self.lines.get(("arc", name)), str(e))
            arcs[name] = Arc(name, (a, b))
        for name, sides in self.triangles:
            for s in sides:
                if s not in arcs and not re.fullmatch(r"b\(\d+,\d+\)", s):
                    raise ParseError("undeclared arc", self.lines.get(("triangle", name)), s)
        for name, lp, r in self.selffolded:
            for s in (lp, r):
                if s not in arcs:
                    raise ParseError("undeclared arc", self.lines.get(("selffolded", name)), s)
        try:
            return Triangulation(
                self.boundary,
                tuple(self.punctures),
                arcs,
                [Triangle(n, tuple(s)) for n, s in self.triangles],
                [SelfFolded(n, lp, r) for n, lp, r in self.selffolded],
            )
        except TriangulationError as e:
            raise ParseError(str(e)) from e


# ---------------------------------------------------------------------------
# parsing


def _split_eq(body: str, line: int):
    if "=" not in body:
        raise ParseError("expected '='", line, body)
    lhs, rhs = body.split("=", 1)
    return lhs.strip(), rhs.strip()


def _check_name(tok: str, line: int, pattern=_NAME):
    if not re.fullmatch(pattern, tok):
        raise ParseError("invalid identifier", line, tok)
    return tok


def _parse_vertices(rhs: str, line: int) -> list:
    m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", rhs)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ParseError("empty vertex range", line, rhs)
        return list(range(lo, hi + 1))
    toks = rhs.split()
    if not toks:
        raise ParseError("no vertices given", line)
    for t in toks:
        _check_name(t, line, _ID)
    vs = [_vertex(t) for t in toks]
    if len(set(vs)) != len(vs):
        raise ParseError("repeated vertex", line, rhs)
    return vs


def parse(text: str) -> InputDocument:
    doc = InputDocument()
    section = None
    seen_names: dict = {}

    def claim(kind, name, line):
        key = (kind if kind not in ("relation", "potential") else "term", name)
        if key in seen_names:
            raise ParseError(f"duplicate {kind} name", line, name)
        seen_names[key] = line
        doc.lines[(kind, name)] = line

    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = re.fullmatch(r"\[([^\]]*)\]", body)
        if m:
            section = m.group(1).strip()
            if section not in SECTIONS:
                raise ParseError("unknown section", ln, section)
            if section in doc.sections:
                raise ParseError("repeated section", ln, section)
            doc.sections.append(section)
            continue
        if section is None:
            raise ParseError("statement outside any section", ln, body.split()[0])
        words = body.split()
        if section == "quiver":
            if words[0] == "vertices":
                _, rhs = _split_eq(body, ln)
                if doc.vertices:
                    raise ParseError("vertices declared twice", ln, "vertices")
                doc.vertices = _parse_vertices(rhs, ln)
            elif words[0] == "arrow":
                m = re.fullmatch(r"arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+?)(\s+new)?", body)
                if not m:
                    raise ParseError("expected 'arrow NAME : SRC -> TGT [new]'", ln, body)
                name = _check_name(m.group(1), ln)
                s, t = (_vertex(_check_name(x, ln, _ID)) for x in (m.group(2), m.group(3)))
                claim("arrow", name, ln)
                doc.arrows.append((name, s, t, bool(m.group(4))))
            else:
                raise ParseError("unknown quiver statement", ln, words[0])
        elif section in ("relations", "potential"):
            kind = "relation" if section == "relations" else "potential"
            lhs, rhs = _split_eq(body, ln)
            lw = lhs.split()
            if len(lw) == 2 and lw[0] == kind:
                lw = lw[1:]
            if len(lw) != 1:
                raise ParseError(f"expected '{kind} NAME = TERMS'", ln, lhs)
            name = _check_name(lw[0], ln)
            claim(kind, name, ln)
            terms = parse_terms(rhs, ln)
            (doc.relations if kind == "relation" else doc.potentials).append((name, terms))
        elif section == "new-arrows":
            for w in words:
                _check_name(w, ln)
                if w in doc.new_arrows:
                    raise ParseError("arrow listed twice", ln, w)
                doc.new_arrows.append(w)
                doc.lines[("new", w)] = ln
        elif section == "assert":
            lhs, rhs = _split_eq(body, ln)
            if lhs not in ("type", "assert type"):
                raise ParseError("expected 'type = ...'", ln, lhs)
            if rhs not in DECLARED_TYPES:
                raise ParseError(f"type must be one of {', '.join(DECLARED_TYPES)}", ln, rhs)
            doc.declared_type = rhs
        elif section == "surface":
            lhs, rhs = _split_eq(body, ln)
            if lhs == "boundary":
                if not re.fullmatch(r"\d+", rhs) or int(rhs) < 1:
                    raise ParseError("boundary must be a positive integer", ln, rhs)
                doc.boundary = int(rhs)
            elif lhs == "punctures":
                ps = rhs.split()
                if not 1 <= len(ps) <= 2 or len(set(ps)) != len(ps):
                    raise ParseError("one or two distinct punctures expected", ln, rhs)
                for p in ps:
                    _check_name(p, ln)
                doc.punctures = ps
            else:
                raise ParseError("unknown surface statement", ln, lhs)
        elif section == "triangulation":
            kw = words[0]
            if kw == "arc":
                m = re.fullmatch(r"arc\s+(\S+)\s*:\s*(\S+)\s+-\s+(\S+)", body)
                if not m:
                    raise ParseError("expected 'arc NAME : END - END'", ln, body)
                name = _check_name(m.group(1), ln)
                claim("arc", name, ln)
                ends = tuple(_vertex(_check_name(e, ln, _ID)) for e in (m.group(2), m.group(3)))
                doc.arcs.append((name,) + ends)
            elif kw in ("triangle", "selffolded"):
                lhs, rhs = _split_eq(body, ln)
                lw = lhs.split()
                if len(lw) != 2 or lw[0] != kw:
                    raise ParseError(f"expected '{kw} NAME = ...'", ln, lhs)
                name = _check_name(lw[1], ln)
                claim(kw, name, ln)
                sides = rhs.split()
                if kw == "triangle":
                    if len(sides) != 3:
                        raise ParseError("a triangle has three sides", ln, rhs)
                    for s in sides:
                        if not re.fullmatch(r"b\(\d+,\d+\)", s):
                            _check_name(s, ln)
                    doc.triangles.append((name, tuple(sides)))
                else:
                    if len(sides) != 2:
                        raise ParseError("selffolded needs LOOP RADIUS", ln, rhs)
                    for s in sides:
                        _check_name(s, ln)
                    doc.selffolded.append((name, sides[0], sides[1]))
            else:
                raise ParseError("unknown triangulation statement", ln, kw)
    geo = {"surface", "triangulation"} & set(doc.sections)
    alg = {"quiver", "relations", "potential", "new-arrows"} & set(doc.sections)
    if geo and alg:
        raise ParseError("a document describes either a quiver or a surface, not both")
    if geo and "surface" not in geo:
        raise ParseError("[triangulation] needs a [surface] section")
    if alg and "quiver" not in alg:
        raise ParseError("[quiver] section missing")
    if not geo and not alg:
        raise ParseError("empty document")
    if alg and not doc.vertices:
        raise ParseError("quiver has no vertices")
    return doc


def parse_file(path) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not UTF-8: {e}") from e
    return parse(text)


# ---------------------------------------------------------------------------
# canonical text


def _fmt_terms(terms) -> str:
    parts = []
    for c, p in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {'' if mag == 1 else str(mag) + ' '}{'.'.join(p)}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def dump(doc: InputDocument) -> str:
    """Canonical text with ``parse(dump(d)) == d``."""
    out = []
    for sec in doc.sections:
        out.append(f"[{sec}]")
        if sec == "quiver":
            out.append("vertices = " + " ".join(str(v) for v in doc.vertices))
            for n, s, t, new in doc.arrows:
                out.append(f"arrow {n} : {s} -> {t}" + (" new" if new else ""))
        elif sec == "relations":
            out += [f"relation {n} = {_fmt_terms(t)}" for n, t in doc.relations]
        elif sec == "potential":
            out += [f"potential {n} = {_fmt_terms(t)}" for n, t in doc.potentials]
        elif sec == "new-arrows":
            if doc.new_arrows:
                out.append(" ".join(doc.new_arrows))
        elif sec == "assert":
            out.append(f"type = {doc.declared_type}")
        elif sec == "surface":
            if doc.boundary is not None:
                out.append(f"boundary = {doc.boundary}")
            if doc.punctures:
                out.append("punctures = " + " ".join(doc.punctures))
        elif sec == "triangulation":
            out += [f"arc {n} : {a} - {b}" for n, a, b in doc.arcs]
            out += [f"triangle {n} = {' '.join(s)}" for n, s in doc.triangles]
            out += [f"selffolded {n} = {lp} {r}" for n, lp, r in doc.selffolded]
    return "\n".join(out) + "\n"


def document_from_triangulation(T: Triangulation) -> InputDocument:
    doc = InputDocument(sections=["surface", "triangulation"], boundary=T.n, punctures=list(T.punctures))
    doc.arcs = [(a.name,) + tuple(a.ends) for a in T.arcs.values()]
    doc.triangles = [(t.name, tuple(t.sides)) for t in T.triangles]
    doc.selffolded = [(s.name, s.loop, s.radius) for s in T.selffolded]
    return doc


# ---------------------------------------------------------------------------
# reports


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def report_to_json(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True)


def report_from_json(text: str) -> dict:
    return json.loads(text)
