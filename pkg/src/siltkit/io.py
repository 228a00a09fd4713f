"""Text formats for algebras and complexes, JSON reports and DOT export.

Algebra files::

    field 101
    vertices 4
    arrow x: 1 -> 2        # repeating a name declares a family; instances
    arrow x: 2 -> 3        # become x_1, x_2, ... (indexed by source vertex)
    relations
    x*x = 0
    x*y - y*x = 0

Complex files (vertices and entries 1-based, entry (r, c) of d[t] goes from
summand c of degree t to summand r of degree t+1)::

    degree 0: [3]
    degree 1: [2]
    d[0]: (1,1) = y
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from . import gf
from .algebra import (
    Algebra,
    AlgebraError,
    Arrow,
    InhomogeneousRelation,
    Quiver,
    Relation,
    expand_relation,
    path_algebra,
)
from .complexes import ComplexError, ProjComplex


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, column {col}: {message}" if line else message)


class SemanticError(ParseError):
    """Well-formed input describing an invalid object (unknown arrow, bad endpoint, ...)."""


class InhomogeneousRelationError(SemanticError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<dual>D\([^()]*\))|(?P<name>[A-Za-z][A-Za-z0-9_']*)|(?P<op>[-+*·=]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(s: str, line: int, col0: int) -> list[_Tok]:
    out, pos = [], 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos]!r}", line, col0 + pos + 1)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_linear(toks: list[_Tok], line: int) -> list[tuple[int, list[_Tok]]]:
    """sum of [sign] [coefficient [*]] atom * atom * ...; returns (coefficient, atoms)."""
    terms, k = [], 0
    if not toks:
        raise ParseError("empty expression", line, 1)
    while k < len(toks):
        sign = 1
        while k < len(toks) and toks[k].text in "+-" and toks[k].kind == "op":
            if toks[k].text == "-":
                sign = -sign
            k += 1
        coeff = 1
        if k < len(toks) and toks[k].kind == "num":
            coeff = int(toks[k].text)
            k += 1
            if k < len(toks) and toks[k].text in ("*", "·"):
                k += 1
        atoms = []
        while k < len(toks) and toks[k].kind in ("name", "dual"):
            atoms.append(toks[k])
            k += 1
            if k < len(toks) and toks[k].text in ("*", "·"):
                k += 1
                if k >= len(toks) or toks[k].kind not in ("name", "dual"):
                    col = toks[k].col if k < len(toks) else toks[-1].col + 1
                    raise ParseError("expected an arrow name after '*'", line, col)
        if not atoms and coeff == 0:
            pass
        elif not atoms:
            col = toks[k].col if k < len(toks) else toks[-1].col + 1
            raise ParseError("expected a path", line, col)
        terms.append((sign * coeff, atoms))
        if k < len(toks) and toks[k].text not in "+-":
            raise ParseError(f"unexpected {toks[k].text!r}", line, toks[k].col)
    return terms


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, body


# ---------------------------------------------------------------------------
# algebras


@dataclass
class AlgebraSpec:
    p: int
    quiver: Quiver
    relations: list[Relation]
    name: str = ""

    def build(self, max_len: int = 64) -> Algebra:
        return path_algebra(self.quiver, self.relations, self.p, max_len=max_len, name=self.name)


_IDEMPOTENT = re.compile(r"^e_?(\d+)$")


def parse_algebra(text: str, name: str = "") -> AlgebraSpec:
    p = gf.DEFAULT_PRIME
    n = None
    decls: list[tuple[str, int, int, int]] = []
    rel_lines: list[tuple[int, str]] = []
    in_rels = False
    for no, body in _lines(text):
        stripped = body.strip()
        col = body.index(stripped[0]) + 1
        word = stripped.split()[0]
        if word == "relations" and stripped == "relations":
            in_rels = True
            continue
        if in_rels and word not in ("field", "vertices", "arrow"):
            rel_lines.append((no, body))
            continue
        in_rels = False
        if word == "field":
            m = re.fullmatch(r"field\s+(\d+)", stripped)
            if not m:
                raise ParseError("expected 'field <prime>'", no, col)
            p = int(m.group(1))
            if not gf.is_prime(p):
                raise SemanticError(f"field size {p} is not prime", no, col + 6)
        elif word == "vertices":
            m = re.fullmatch(r"vertices\s+(\d+)", stripped)
            if not m:
                raise ParseError("expected 'vertices <count>'", no, col)
            n = int(m.group(1))
        elif word == "arrow":
            m = re.fullmatch(r"arrow\s+([A-Za-z][A-Za-z0-9_']*)\s*:\s*(\d+)\s*->\s*(\d+)", stripped)
            if not m:
                raise ParseError("expected 'arrow <name>: <i> -> <j>'", no, col)
            if _IDEMPOTENT.match(m.group(1)):
                raise SemanticError(f"arrow name {m.group(1)!r} is reserved for idempotents", no, col + 6)
            decls.append((m.group(1), int(m.group(2)), int(m.group(3)), no))
        else:
            raise ParseError(f"unknown directive {word!r}", no, col)
    if n is None:
        raise ParseError("missing 'vertices' declaration")
    counts: dict[str, int] = {}
    for nm, *_ in decls:
        counts[nm] = counts.get(nm, 0) + 1
    arrows, seen = [], set()
    for nm, s, t, no in decls:
        for v in (s, t):
            if not 1 <= v <= n:
                raise SemanticError(f"arrow {nm}: endpoint {v} outside 1..{n}", no, 1)
        concrete = nm if counts[nm] == 1 else f"{nm}_{s}"
        if concrete in seen:
            raise SemanticError(f"arrow family {nm!r} has two arrows leaving vertex {s}", no, 1)
        seen.add(concrete)
        arrows.append(Arrow(concrete, s - 1, t - 1, nm))
    try:
        quiver = Quiver(n, arrows)
    except AlgebraError as exc:
        raise SemanticError(str(exc)) from exc
    relations = []
    for no, body in rel_lines:
        relations.extend(_parse_relation(quiver, body, no))
    return AlgebraSpec(p, quiver, relations, name)


def _parse_relation(quiver: Quiver, body: str, no: int) -> list[Relation]:
    toks = _tokenize(body, no, 0)
    eq = [k for k, t in enumerate(toks) if t.text == "="]
    if len(eq) != 1:
        raise ParseError("a relation needs exactly one '='", no, toks[eq[1]].col if len(eq) > 1 else 1)
    lhs = _parse_linear(toks[: eq[0]], no)
    rhs_toks = toks[eq[0] + 1 :]
    if not rhs_toks:
        raise ParseError("missing right-hand side", no, toks[eq[0]].col + 1)
    rhs = _parse_linear(rhs_toks, no)
    terms = [(c, a) for c, a in lhs if a] + [(-c, a) for c, a in rhs if a]
    if not terms:
        raise ParseError("relation has no paths", no, 1)
    for c, atoms in terms:
        for a in atoms:
            if not quiver.knows(a.text):
                raise SemanticError(f"unknown arrow {a.text!r}", no, a.col)
    lengths = {len(a) for _, a in terms}
    if len(lengths) > 1:
        raise InhomogeneousRelationError(f"inhomogeneous relation: path lengths {sorted(lengths)}", no, terms[0][1][0].col)
    words = [(c, tuple(a.text for a in atoms)) for c, atoms in terms]
    if all(tok in quiver.by_name for _, w in words for tok in w):
        return [Relation(tuple(words))]
    try:
        return expand_relation(quiver, words)
    except AlgebraError as exc:
        raise SemanticError(str(exc), no, 1) from exc


def load_algebra(text: str, name: str = "", max_len: int = 64) -> Algebra:
    spec = parse_algebra(text, name)
    try:
        return spec.build(max_len)
    except InhomogeneousRelation as exc:
        raise InhomogeneousRelationError(str(exc)) from exc
    except AlgebraError as exc:
        raise SemanticError(str(exc)) from exc


def _word_text(word) -> str:
    return "*".join(word)


def _coeff_text(c: int, p: int, first: bool) -> str:
    c %= p
    neg = c > p // 2
    mag = p - c if neg else c
    sign = ("-" if neg else "") if first else (" - " if neg else " + ")
    return sign + ("" if mag == 1 else f"{mag}*")


def _printed_names(q: Quiver) -> tuple[dict[str, str], dict[str, str]]:
    """Declared name and reparsed concrete name for every arrow.

    A label shared by several arrows with distinct sources is printed as a
    family, whose instances come back as ``label_source``.
    """
    fams: dict[str, list[Arrow]] = {}
    for a in q.arrows:
        fams.setdefault(a.label, []).append(a)
    declared, concrete = {}, {}
    taken = {a.name for a in q.arrows}
    for lab, members in fams.items():
        family = (
            len(members) > 1
            and len({a.source for a in members}) == len(members)
            and not _IDEMPOTENT.match(lab)
            and all(f"{lab}_{a.source + 1}" not in taken or f"{lab}_{a.source + 1}" == a.name for a in members)
        )
        for a in members:
            if family:
                declared[a.name], concrete[a.name] = lab, f"{lab}_{a.source + 1}"
            else:
                declared[a.name] = concrete[a.name] = a.name
    return declared, concrete


def print_algebra(alg: Algebra) -> str:
    q = alg.quiver
    if q is None:
        raise ValueError("algebra has no quiver presentation")
    declared, concrete = _printed_names(q)
    lines = [f"field {alg.p}", f"vertices {q.vertices}"]
    for a in q.arrows:
        lines.append(f"arrow {declared[a.name]}: {a.source + 1} -> {a.target + 1}")
    lines.append("relations")
    for rel in alg.relations:
        parts = []
        for k, (c, w) in enumerate(rel.terms):
            parts.append(_coeff_text(c, alg.p, k == 0) + _word_text(concrete[a] for a in w))
        lines.append("".join(parts) + " = 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# complexes


def _atom_value(alg: Algebra, atoms: list[_Tok], start: int, no: int) -> np.ndarray:
    """Value of a product of atoms: basis labels, idempotents, arrows or family labels."""
    out = None
    cur = start
    pending: list[_Tok] = []

    def flush():
        nonlocal out, cur, pending
        if not pending:
            return
        toks = [t.text for t in pending]
        q = alg.quiver
        word = q.resolve(toks, cur) if q is not None else None
        if word is None:
            raise SemanticError(f"no path {'*'.join(toks)} from vertex {cur + 1}", no, pending[0].col)
        val = alg.path(word)
        cur = q.by_name[word[-1]].target
        out = val if out is None else alg.mul(out, val)
        pending = []

    for a in atoms:
        m = _IDEMPOTENT.match(a.text)
        if a.kind == "dual" or (m is None and a.text in alg.labels and (alg.quiver is None or not alg.quiver.knows(a.text))):
            flush()
            if a.text not in alg.labels:
                raise SemanticError(f"unknown basis element {a.text!r}", no, a.col)
            k = alg.index(a.text)
            val = alg.basis_vector(k)
            if alg.corners is not None:
                cur = alg.corners[k][1]
            out = val if out is None else alg.mul(out, val)
        elif m is not None:
            flush()
            v = int(m.group(1)) - 1
            if not 0 <= v < alg.n:
                raise SemanticError(f"no vertex {v + 1}", no, a.col)
            val = alg.idempotent(v)
            cur = v
            out = val if out is None else alg.mul(out, val)
        else:
            if alg.quiver is None or not alg.quiver.knows(a.text):
                raise SemanticError(f"unknown arrow {a.text!r}", no, a.col)
            pending.append(a)
    flush()
    return out


def parse_complex(text: str, alg: Algebra, name: str = "") -> ProjComplex:
    terms: dict[int, tuple[int, ...]] = {}
    entries: list[tuple[int, int, int, list, int]] = []
    for no, body in _lines(text):
        stripped = body.strip()
        col = body.index(stripped[0]) + 1
        m = re.fullmatch(r"degree\s+(-?\d+)\s*:\s*\[(.*)\]", stripped)
        if m:
            t = int(m.group(1))
            if t in terms:
                raise ParseError(f"degree {t} declared twice", no, col)
            items = [s.strip() for s in m.group(2).split(",") if s.strip()]
            vs = []
            for s in items:
                if not s.isdigit():
                    raise ParseError(f"vertex {s!r} is not a number", no, body.index(s) + 1)
                v = int(s)
                if not 1 <= v <= alg.n:
                    raise SemanticError(f"no vertex {v}", no, body.index(s) + 1)
                vs.append(v - 1)
            terms[t] = tuple(vs)
            continue
        m = re.fullmatch(r"d\[\s*(-?\d+)\s*\]\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*=(.*)", stripped)
        if m:
            expr_col = body.index(stripped) + m.start(4)
            toks = _tokenize(m.group(4), no, expr_col)
            entries.append((int(m.group(1)), int(m.group(2)), int(m.group(3)), _parse_linear(toks, no), no))
            continue
        raise ParseError("expected 'degree t: [...]' or 'd[t]: (r,c) = ...'", no, col)
    d = alg.dim
    diffs: dict[int, np.ndarray] = {}
    for t, r, c, lin, no in entries:
        rows, cols = terms.get(t + 1, ()), terms.get(t, ())
        if not (1 <= r <= len(rows) and 1 <= c <= len(cols)):
            raise SemanticError(f"entry ({r},{c}) outside d[{t}] of size {len(rows)}x{len(cols)}", no, 1)
        val = np.zeros(d, dtype=np.int64)
        for coeff, atoms in lin:
            if atoms:
                val = (val + coeff * _atom_value(alg, atoms, rows[r - 1], no)) % alg.p
        m = diffs.setdefault(t, np.zeros((len(rows), len(cols), d), dtype=np.int64))
        m[r - 1, c - 1] = (m[r - 1, c - 1] + val) % alg.p
    try:
        return ProjComplex(alg, terms, diffs, name=name)
    except ComplexError as exc:
        raise SemanticError(str(exc)) from exc


def element_text(alg: Algebra, v: np.ndarray) -> str:
    parts = []
    for k in np.flatnonzero(np.asarray(v) % alg.p):
        parts.append(_coeff_text(int(v[k]), alg.p, not parts) + alg.labels[k])
    return "".join(parts) if parts else "0"


def print_complex(X: ProjComplex) -> str:
    lines = []
    for t, vs in sorted(X.terms.items()):
        lines.append(f"degree {t}: [{', '.join(str(v + 1) for v in vs)}]")
    for t, m in sorted(X.diffs.items()):
        for r, c in np.argwhere(np.any(m, axis=2)):
            lines.append(f"d[{t}]: ({r + 1},{c + 1}) = {element_text(X.algebra, m[r, c])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports and graphs


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit_report(report: dict) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2) + "\n"


def emit_dot(graph, name: str = "exchange") -> str:
    lines = [f"digraph {name} {{", "  node [shape=box, fontname=monospace];"]
    for k, node in enumerate(graph.nodes):
        label = "\\n".join("(" + ",".join(str(x) for x in g) + ")" for g in node.g_vectors)
        style = ', style=filled, fillcolor="#c8e6c9", peripheries=2' if node.tilting else ""
        lines.append(f'  n{k} [label="{label}"{style}];')
    for u, v, i in graph.edges:
        lines.append(f'  n{u} -> n{v} [label="{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
