"""Z-primitive cycles and the primitive-nerve partition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .quiver import (Path, Quiver, has_distinct_arrows, power, proper_power_root,
                     rotation_list, traversed_vertices)
from .relations import ZSet, check_special_pair


class NonSpecialError(ValueError):
    """The pair (Q, Z) is not special; run check_special_pair for a witness."""


def power_admissible(c: Path, z: ZSet) -> bool:
    """True iff every power of the cycle ``c`` is Z-admissible.

    A relation of length l fits inside some power of c iff it fits inside
    c^M with M = ceil(l / |c|) + 1, so testing that single power suffices.
    """
    if not c.is_cycle:
        raise ValueError("power_admissible expects a cycle")
    n = len(c)
    m = -(-z.max_length // n) + 1 if z.max_length else 1
    return z.is_admissible(power(c, m))


class DisjointSet:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller id wins so roots are canonical
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [sorted(g) for g in out.values()]


@dataclass(frozen=True)
class PrimitiveCycleSet:
    quiver: Quiver
    cycles: frozenset[Path]
    by_vertex: dict
    rotation_classes: tuple[tuple[Path, ...], ...]

    def at(self, v: int) -> tuple[Path, ...]:
        return self.by_vertex.get(v, ())

    def max_length(self) -> int:
        return max((len(c) for c in self.cycles), default=0)

    def with_left_arrow(self, v: int, a: int):
        for c in self.at(v):
            if c.left_arrow == a:
                return c
        return None

    def with_right_arrow(self, v: int, a: int):
        for c in self.at(v):
            if c.right_arrow == a:
                return c
        return None


def _make_pcs(q: Quiver, cycles: Iterable[Path]) -> PrimitiveCycleSet:
    cycles = frozenset(cycles)
    by_vertex: dict[int, list[Path]] = {}
    for c in sorted(cycles, key=Path.sort_key):
        by_vertex.setdefault(c.head, []).append(c)
    classes = []
    seen = set()
    for c in sorted(cycles, key=Path.sort_key):
        if c in seen:
            continue
        orbit = tuple(sorted(rotation_list(q, c), key=Path.sort_key))
        seen.update(orbit)
        classes.append(orbit)
    return PrimitiveCycleSet(q, cycles, {v: tuple(cs) for v, cs in by_vertex.items()},
                             tuple(classes))


def enumerate_primitive_cycles(q: Quiver, z: ZSet) -> PrimitiveCycleSet:
    """All Z-primitive cycles of a special pair.

    Primitive cycles of a special pair have distinct arrows, so a depth-first
    walk over arrow-distinct admissible words from each starting arrow finds
    all of them.
    """
    if not check_special_pair(q, z).special:
        raise NonSpecialError("(Q, Z) is not special; see check_special_pair for a witness")
    found = []
    for start in range(q.num_arrows):
        if z.contains_word((start,)):
            continue
        origin = q.tails[start]
        stack = [((start,), q.heads[start])]
        while stack:
            # words grow on the left: the new arrow is applied last
            word, head = stack.pop()
            if head == origin:
                c = Path(origin, origin, word)
                if power_admissible(c, z) and proper_power_root(c) is None:
                    found.append(c)
            for a in q.out_arrows(head):
                if a in word:
                    continue
                new = (a,) + word
                if z.starts_admissibly(new):
                    stack.append((new, q.heads[a]))
    return _make_pcs(q, found)


def primitive_cycles_by_brute_force(q: Quiver, z: ZSet) -> PrimitiveCycleSet:
    """Reference enumeration over all admissible cycles of length <= |Q1|."""
    from .relations import admissible_paths

    found = [p for p in admissible_paths(q, z, q.num_arrows + 1)
             if p.is_cycle and power_admissible(p, z) and proper_power_root(p) is None]
    return _make_pcs(q, found)


def primitive_cycles_at(v: int, pcs: PrimitiveCycleSet) -> tuple[Path, ...]:
    return pcs.at(v)


@dataclass(frozen=True)
class NervePartition:
    primitive_vertices: frozenset[int]
    blocks: tuple[frozenset[int], ...]
    block_of: dict

    @property
    def n(self) -> int:
        return len(self.blocks)


def nerve_partition(pcs: PrimitiveCycleSet) -> NervePartition:
    ds = DisjointSet()
    for c in pcs.cycles:
        vs = sorted(traversed_vertices(pcs.quiver, c))
        for v in vs:
            ds.add(v)
        for v in vs[1:]:
            ds.union(vs[0], v)
    groups = sorted(ds.groups(), key=lambda g: g[0])
    blocks = tuple(frozenset(g) for g in groups)
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    return NervePartition(frozenset(block_of), blocks, block_of)


def check_primitive_invariants(pcs: PrimitiveCycleSet) -> list[str]:
    """Violations of the structural facts primitive cycles of a special pair obey."""
    q = pcs.quiver
    problems = []
    for c in pcs.cycles:
        if not has_distinct_arrows(c):
            problems.append(f"{q.format_path(c)} repeats an arrow")
        for r in rotation_list(q, c):
            if r not in pcs.cycles:
                problems.append(f"rotation {q.format_path(r)} of {q.format_path(c)} missing")
    for v in range(q.num_vertices):
        bound = min(len(q.in_arrows(v)), len(q.out_arrows(v)))
        at = pcs.at(v)
        if len(at) > bound:
            problems.append(f"{len(at)} primitive cycles at {q.vertex_names[v]} exceed {bound}")
        if len({c.left_arrow for c in at}) != len(at) or len({c.right_arrow for c in at}) != len(at):
            problems.append(f"primitive cycles at {q.vertex_names[v]} share an end arrow")
    cycles = sorted(pcs.cycles, key=Path.sort_key)
    for i, c in enumerate(cycles):
        rots = set(rotation_list(q, c))
        for d in cycles[i + 1:]:
            if set(c.word) & set(d.word) and d not in rots:
                problems.append(f"{q.format_path(c)} and {q.format_path(d)} share an arrow")
    return problems
