"""Text format for quivers with zero-relations, and element expressions.

::

    quiver intro
    vertices 1 2 3 4 5
    param l = 3
    arrows
      a: 1 -> 1
      c: 5 -> 5
    relations
      a*a
      c^l
    model kind=mixed char=3 s=p,t L=20 D=20

Relation words are written left arrow first (``x*y`` applies ``y``
first).  A factor may carry a power ``^3`` or ``^name`` of a declared
parameter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraElement
from .coefficients import Coefficient, CoefficientModel
from .quiver import Path, Quiver
from .relations import ZSet

KEYWORDS = ("quiver", "vertices", "arrows", "relations", "param", "model")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|[0-9]+")
_ARROW_LINE = re.compile(r"^(\s*)(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")


class SpecError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class ModelSpec:
    kind: str = "equal"
    characteristic: int = 0
    names: tuple[str, ...] = ()
    L: Optional[int] = None
    D: Optional[int] = None


@dataclass(frozen=True)
class SpecFile:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[str, ...], ...]
    params: tuple[tuple[str, int], ...] = ()
    model: Optional[ModelSpec] = None

    def quiver(self) -> Quiver:
        return Quiver.from_names(self.vertices, self.arrows)

    def zset(self, q: Optional[Quiver] = None) -> ZSet:
        q = q or self.quiver()
        return ZSet(q, [q.path([q.arrow(a) for a in word]) for word in self.relations])


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _expand_word(text: str, params: dict, names_ok, lineno: int, col0: int,
                 what: str = "arrow") -> tuple[str, ...]:
    """Expand ``x*y^2*c^l`` into a flat tuple of names."""
    out: list[str] = []
    pos = 0
    for piece in text.split("*"):
        stripped = piece.strip()
        col = col0 + pos + (len(piece) - len(piece.lstrip())) + 1
        pos += len(piece) + 1
        if not stripped:
            raise SpecError(f"empty factor in {text.strip()!r}", lineno, col)
        base, _, exp = stripped.partition("^")
        base = base.strip()
        if not names_ok(base):
            raise SpecError(f"unknown {what} {base!r}", lineno, col)
        k = 1
        if exp:
            exp = exp.strip()
            if exp.isdigit():
                k = int(exp)
            elif exp in params:
                k = params[exp]
            else:
                raise SpecError(f"unknown parameter {exp!r}", lineno, col + len(base) + 1)
            if k < 1:
                raise SpecError("powers must be positive", lineno, col)
        out.extend([base] * k)
    return tuple(out)


def parse_spec(text: str) -> SpecFile:
    name = None
    vertices: list[str] = []
    vcol: dict[str, tuple[int, int]] = {}
    arrows: list[tuple[str, str, str]] = []
    arrow_ends: dict[str, tuple[str, str]] = {}
    relations: list[tuple[str, ...]] = []
    params: dict[str, int] = {}
    model = None
    section = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        head = line.split()[0]
        if head in KEYWORDS and not (section == "arrows" and ":" in line):
            section = None
            rest = line.strip()[len(head):]
            rest_col = indent + len(head) + 1
            if head == "quiver":
                if name is not None:
                    raise SpecError("duplicate quiver line", lineno, indent + 1)
                parts = rest.split()
                if len(parts) != 1:
                    raise SpecError("expected 'quiver <name>'", lineno, indent + 1)
                name = parts[0]
            elif head == "vertices":
                for m in re.finditer(r"\S+", rest):
                    v = m.group()
                    if v in vcol:
                        raise SpecError(f"duplicate vertex {v!r}", lineno, rest_col + m.start())
                    vcol[v] = (lineno, rest_col + m.start())
                    vertices.append(v)
            elif head in ("arrows", "relations"):
                if rest.strip():
                    raise SpecError(f"'{head}' takes its entries on the following lines",
                                    lineno, rest_col + len(rest) - len(rest.lstrip()))
                section = head
            elif head == "param":
                m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(-?[0-9]+)\s*", rest)
                if not m:
                    raise SpecError("expected 'param <name> = <int>'", lineno, indent + 1)
                if m.group(1) in params:
                    raise SpecError(f"duplicate parameter {m.group(1)!r}", lineno, rest_col + m.start(1))
                params[m.group(1)] = int(m.group(2))
            elif head == "model":
                if model is not None:
                    raise SpecError("duplicate model line", lineno, indent + 1)
                model = _parse_model(rest, lineno, rest_col)
            continue

        if section == "arrows":
            m = _ARROW_LINE.match(line)
            if not m:
                raise SpecError("expected '<arrow>: <tail> -> <head>'", lineno, indent + 1)
            a, t, h = m.group(2), m.group(3), m.group(4)
            if a in arrow_ends:
                raise SpecError(f"duplicate arrow {a!r}", lineno, m.start(2) + 1)
            for v, grp in ((t, 3), (h, 4)):
                if v not in vcol:
                    raise SpecError(f"unknown vertex {v!r}", lineno, m.start(grp) + 1)
            arrow_ends[a] = (t, h)
            arrows.append((a, t, h))
        elif section == "relations":
            word = _expand_word(line, params, arrow_ends.__contains__, lineno, 0)
            _check_consecutive(word, arrow_ends, line, lineno)
            relations.append(word)
        else:
            raise SpecError(f"unexpected {head!r}", lineno, indent + 1)

    if name is None:
        raise SpecError("missing 'quiver <name>' line", 1, 1)
    spec = SpecFile(name, tuple(vertices), tuple(arrows), tuple(relations),
                    tuple(params.items()), model)
    return spec


def _check_consecutive(word, arrow_ends, line: str, lineno: int):
    for i, (left, right) in enumerate(zip(word, word[1:])):
        if arrow_ends[left][0] != arrow_ends[right][1]:
            # point at the right factor of the offending pair
            col = _factor_column(line, i + 1)
            raise SpecError(f"{left}*{right} is not a path: tail of {left} is "
                            f"{arrow_ends[left][0]} but head of {right} is {arrow_ends[right][1]}",
                            lineno, col)


def _factor_column(line: str, index: int) -> int:
    # best effort once powers are expanded: clamp to the last written factor
    starts = [0] + [m.end() for m in re.finditer(r"\*", line)]
    i = min(index, len(starts) - 1)
    s = starts[i]
    while s < len(line) and line[s] == " ":
        s += 1
    return s + 1


def _parse_model(rest: str, lineno: int, col0: int) -> ModelSpec:
    fields: dict[str, str] = {}
    for m in re.finditer(r"\S+", rest):
        key, eq, value = m.group().partition("=")
        if not eq or key not in ("kind", "char", "s", "L", "D"):
            raise SpecError(f"bad model field {m.group()!r}", lineno, col0 + m.start())
        if key in fields:
            raise SpecError(f"duplicate model field {key!r}", lineno, col0 + m.start())
        fields[key] = value
    try:
        kind = fields.get("kind", "equal")
        char = int(fields.get("char", "0"))
        names = tuple(n for n in fields.get("s", "").split(",") if n)
        L = int(fields["L"]) if "L" in fields else None
        D = int(fields["D"]) if "D" in fields else None
        # validate through the model itself
        CoefficientModel(kind, char, names, D if D is not None else 0)
    except ValueError as exc:
        raise SpecError(f"bad model: {exc}", lineno, col0 + len(rest) - len(rest.lstrip())) from None
    return ModelSpec(kind, char, names, L, D)


def serialize(spec: SpecFile) -> str:
    lines = [f"quiver {spec.name}", "vertices " + " ".join(spec.vertices)]
    for k, v in spec.params:
        lines.append(f"param {k} = {v}")
    lines.append("arrows")
    for a, t, h in spec.arrows:
        lines.append(f"  {a}: {t} -> {h}")
    lines.append("relations")
    for word in spec.relations:
        lines.append("  " + "*".join(word))
    if spec.model is not None:
        m = spec.model
        parts = [f"kind={m.kind}", f"char={m.characteristic}", "s=" + ",".join(m.names)]
        if m.L is not None:
            parts.append(f"L={m.L}")
        if m.D is not None:
            parts.append(f"D={m.D}")
        lines.append("model " + " ".join(parts))
    return "\n".join(lines) + "\n"


# -- element expressions -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<call>e|path)\s*\(|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
                    r"|(?P<op>[-+*^()]))")


class _ExprParser:
    def __init__(self, text: str, quiver: Quiver, model: CoefficientModel, length_cap: int):
        self.text = text
        self.q = quiver
        self.model = model
        self.cap = length_cap
        self.pos = 0

    def error(self, msg: str, pos: Optional[int] = None):
        raise SpecError(msg, 1, (self.pos if pos is None else pos) + 1)

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos:]
            if rest.strip():
                self.error(f"unexpected character {rest.strip()[0]!r}",
                           self.pos + len(rest) - len(rest.lstrip()))
            return None
        return m

    def take(self):
        m = self.peek()
        if m is None:
            self.error("unexpected end of expression", len(self.text))
        self.pos = m.end()
        return m

    def at_op(self, op: str) -> bool:
        m = self.peek()
        return m is not None and m.group("op") == op

    def parse(self) -> AlgebraElement:
        value = self.expr()
        if self.peek() is not None:
            m = self.peek()
            self.error(f"unexpected {m.group().strip()!r}", m.start() + len(m.group()) - len(m.group().lstrip()))
        return self.as_element(value)

    def expr(self):
        neg = False
        if self.at_op("-"):
            self.take()
            neg = True
        value = self.term()
        if neg:
            value = -value
        while self.at_op("+") or self.at_op("-"):
            op = self.take().group("op")
            rhs = self.term()
            value = self.add(value, -rhs if op == "-" else rhs)
        return value

    def term(self):
        value = self.factor()
        while self.at_op("*"):
            self.take()
            value = self.mul(value, self.factor())
        return value

    def factor(self):
        m = self.take()
        start = m.start() + len(m.group()) - len(m.group().lstrip())
        if m.group("int"):
            value = self.model.const(int(m.group("int")))
        elif m.group("call") == "e":
            value = self.call_body(start, vertex=True)
        elif m.group("call") == "path":
            value = self.call_body(start, vertex=False)
        elif m.group("name"):
            name = m.group("name")
            if name in self.model.names:
                value = self.model.var(self.model.var_index(name))
            elif self.q.has_arrow(name):
                value = AlgebraElement.from_path(self.q, self.model, self.cap,
                                                 self.q.arrow_path(self.q.arrow(name)))
            else:
                self.error(f"unknown name {name!r}", start)
        elif m.group("op") == "(":
            value = self.expr()
            if not self.at_op(")"):
                self.error("expected ')'")
            self.take()
        elif m.group("op") == "-":
            value = -self.factor()
        else:
            self.error(f"unexpected {m.group().strip()!r}", start)
        if self.at_op("^"):
            self.take()
            e = self.take()
            if not e.group("int"):
                self.error("exponent must be an integer", e.start())
            k = int(e.group("int"))
            if isinstance(value, Coefficient):
                value = value ** k
            else:
                out = self.as_element(self.model.one())
                for _ in range(k):
                    out = out * value
                value = out
        return value

    def call_body(self, start: int, vertex: bool):
        close = self.text.find(")", self.pos)
        if close < 0:
            self.error("missing ')'", start)
        inner = self.text[self.pos:close]
        inner_col = self.pos
        self.pos = close + 1
        if vertex:
            v = inner.strip()
            if not self.q.has_vertex(v):
                self.error(f"unknown vertex {v!r}", inner_col)
            return AlgebraElement.idempotent(self.q, self.model, self.cap, self.q.vertex(v))
        try:
            word = _expand_word(inner, {}, self.q.has_arrow, 1, inner_col)
        except SpecError as exc:
            raise SpecError(exc.message, 1, exc.col) from None
        ids = [self.q.arrow(a) for a in word]
        for i, (x, y) in enumerate(zip(ids, ids[1:])):
            if self.q.tails[x] != self.q.heads[y]:
                self.error(f"{word[i]}*{word[i + 1]} is not a path", inner_col)
        return AlgebraElement.from_path(self.q, self.model, self.cap, self.q.path(ids))

    def as_element(self, value) -> AlgebraElement:
        if isinstance(value, Coefficient):
            return AlgebraElement.identity(self.q, self.model, self.cap).scale(value)
        return value

    def add(self, x, y):
        if isinstance(x, Coefficient) and isinstance(y, Coefficient):
            return x + y
        return self.as_element(x) + self.as_element(y)

    def mul(self, x, y):
        if isinstance(x, Coefficient) and isinstance(y, Coefficient):
            return x * y
        if isinstance(x, Coefficient):
            return y.scale(x)
        if isinstance(y, Coefficient):
            return x.scale(y)
        return x * y


def parse_element(text: str, quiver: Quiver, model: CoefficientModel, length_cap: int) -> AlgebraElement:
    """Parse ``s1*e(1) - path(a*y*x)``; a bare scalar means scalar times the identity."""
    if not text.strip():
        raise SpecError("empty expression", 1, 1)
    return _ExprParser(text, quiver, model, length_cap).parse()
