"""Finite quivers and paths.

Paths are written right to left: the word ``(a_n, ..., a_1)`` is the path
that applies ``a_1`` first.  ``compose(p, q)`` is ``pq`` and applies ``q``
first, so ``compose(x, a)`` is the word ``x*a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class QuiverError(ValueError):
    """Raised for malformed quivers or ill-formed paths."""


class CompositionError(QuiverError):
    """Raised when two paths are not composable."""


@dataclass(frozen=True)
class Path:
    """A trivial path ``e_v`` (empty word) or a consecutive arrow word.

    ``word[0]`` is the left arrow (applied last) and ``word[-1]`` the right
    arrow (applied first).  Vertices and arrows are dense integer ids of
    the owning :class:`Quiver`.
    """

    head: int
    tail: int
    word: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.word)

    @property
    def is_trivial(self) -> bool:
        return not self.word

    @property
    def is_cycle(self) -> bool:
        return bool(self.word) and self.head == self.tail

    @property
    def left_arrow(self) -> int:
        return self.word[0]

    @property
    def right_arrow(self) -> int:
        return self.word[-1]

    def sort_key(self) -> tuple:
        return (len(self.word), self.head, self.tail, self.word)


@dataclass(frozen=True)
class Quiver:
    vertex_names: tuple[str, ...]
    arrow_names: tuple[str, ...]
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    _vertex_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _arrow_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: tuple = field(init=False, repr=False, compare=False, hash=False)
    _in: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertex_names)) != len(self.vertex_names):
            raise QuiverError("duplicate vertex names")
        if len(set(self.arrow_names)) != len(self.arrow_names):
            raise QuiverError("duplicate arrow names")
        if not (len(self.arrow_names) == len(self.tails) == len(self.heads)):
            raise QuiverError("arrow tables have different lengths")
        nv = len(self.vertex_names)
        for a, (t, h) in enumerate(zip(self.tails, self.heads)):
            if not (0 <= t < nv and 0 <= h < nv):
                raise QuiverError(f"arrow {self.arrow_names[a]!r} has an undeclared endpoint")
        out: list[list[int]] = [[] for _ in range(nv)]
        inc: list[list[int]] = [[] for _ in range(nv)]
        for a, (t, h) in enumerate(zip(self.tails, self.heads)):
            out[t].append(a)
            inc[h].append(a)
        object.__setattr__(self, "_vertex_index", {n: i for i, n in enumerate(self.vertex_names)})
        object.__setattr__(self, "_arrow_index", {n: i for i, n in enumerate(self.arrow_names)})
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))
        object.__setattr__(self, "_in", tuple(tuple(x) for x in inc))

    @classmethod
    def from_names(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        """Build from vertex names and ``(arrow, tail, head)`` name triples."""
        vertices = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(vertices)}
        names, tails, heads = [], [], []
        for name, t, h in arrows:
            if t not in index or h not in index:
                raise QuiverError(f"arrow {name!r} has an undeclared endpoint")
            names.append(name)
            tails.append(index[t])
            heads.append(index[h])
        return cls(vertices, tuple(names), tuple(tails), tuple(heads))

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def num_arrows(self) -> int:
        return len(self.arrow_names)

    def vertex(self, name: str) -> int:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def arrow(self, name: str) -> int:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def out_arrows(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_arrows(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    # -- path construction -------------------------------------------------

    def trivial(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow_path(self, a: int) -> Path:
        return Path(self.heads[a], self.tails[a], (a,))

    def path(self, word: Sequence[int]) -> Path:
        """Path from a word of arrow ids in composition order (left arrow first)."""
        word = tuple(word)
        if not word:
            raise QuiverError("use trivial() for length-0 paths")
        for left, right in zip(word, word[1:]):
            if self.tails[left] != self.heads[right]:
                raise QuiverError(
                    f"{self.arrow_names[left]}*{self.arrow_names[right]} is not consecutive"
                )
        return Path(self.heads[word[0]], self.tails[word[-1]], word)

    def parse_path(self, text: str) -> Path:
        """Parse ``"x*a*y"`` or ``"e(1)"``."""
        text = text.strip()
        if text.startswith("e(") and text.endswith(")"):
            return self.trivial(self.vertex(text[2:-1].strip()))
        return self.path([self.arrow(tok.strip()) for tok in text.split("*")])

    def format_path(self, p: Path) -> str:
        if p.is_trivial:
            return f"e({self.vertex_names[p.head]})"
        return "*".join(self.arrow_names[a] for a in p.word)

    def vertices_along(self, p: Path) -> list[int]:
        """Vertices at word positions 0..n (head first, tail last)."""
        if p.is_trivial:
            return [p.head]
        return [self.heads[p.word[0]]] + [self.tails[a] for a in p.word]


def compose(p: Path, q: Path) -> Path:
    """The product ``pq`` (``q`` applied first)."""
    if p.tail != q.head:
        raise CompositionError("paths are not composable: t(p) != h(q)")
    if not q.word:
        return p
    if not p.word:
        return q
    return Path(p.head, q.tail, p.word + q.word)


def power(c: Path, k: int) -> Path:
    if not c.is_cycle:
        raise QuiverError("only cycles have powers")
    if k < 1:
        raise QuiverError("power exponent must be positive")
    return Path(c.head, c.tail, c.word * k)


def occurrences(z: Path, p: Path, quiver: Optional[Quiver] = None) -> list[int]:
    """Offsets ``i`` with ``p = q z r`` and ``z`` starting at word position ``i``.

    A trivial ``z = e_v`` occurs at every position where ``p`` sits at ``v``;
    that case needs the quiver to know the intermediate vertices.
    """
    if z.is_trivial:
        if p.is_trivial:
            return [0] if p.head == z.head else []
        if quiver is None:
            raise QuiverError("trivial subpath search needs the quiver")
        return [i for i, v in enumerate(quiver.vertices_along(p)) if v == z.head]
    n, m = len(p.word), len(z.word)
    return [i for i in range(n - m + 1) if p.word[i:i + m] == z.word]


def is_subpath(z: Path, p: Path, quiver: Optional[Quiver] = None) -> list[int]:
    return occurrences(z, p, quiver)


def rotations(quiver: Quiver, c: Path) -> frozenset[Path]:
    """The rotations ``c_i...c_1 c_n...c_{i+1}`` of a cycle, ``c`` included."""
    return frozenset(rotation_list(quiver, c))


def rotation_list(quiver: Quiver, c: Path) -> list[Path]:
    if not c.is_cycle:
        raise QuiverError("rotations are defined for cycles only")
    seen: dict[tuple[int, ...], Path] = {}
    for i in range(len(c.word)):
        word = c.word[i:] + c.word[:i]
        if word not in seen:
            seen[word] = quiver.path(word)
    return list(seen.values())


def traversed_vertices(quiver: Quiver, p: Path) -> frozenset[int]:
    if p.is_trivial:
        raise QuiverError("V(p) is only defined for non-trivial paths")
    return frozenset(quiver.vertices_along(p))


def has_distinct_arrows(p: Path) -> bool:
    return len(set(p.word)) == len(p.word)


def proper_power_root(c: Path) -> Optional[tuple[Path, int]]:
    """Return ``(d, k)`` with ``c = d^k``, ``k >= 2`` and ``d`` shortest, else None."""
    if not c.is_cycle:
        raise QuiverError("proper_power_root expects a cycle")
    n = len(c.word)
    for m in range(1, n // 2 + 1):
        if n % m == 0 and c.word[:m] * (n // m) == c.word:
            return Path(c.head, c.tail, c.word[:m]), n // m
    return None


def iter_paths(quiver: Quiver, max_length: int) -> Iterator[Path]:
    """Every path of length ``< max_length`` (trivial paths included)."""
    if max_length <= 0:
        return
    frontier = [quiver.trivial(v) for v in range(quiver.num_vertices)]
    yield from frontier
    for _ in range(1, max_length):
        nxt = []
        for p in frontier:
            for a in quiver.in_arrows(p.tail):
                nxt.append(Path(p.head, quiver.tails[a], p.word + (a,)))
        frontier = nxt
        yield from frontier
