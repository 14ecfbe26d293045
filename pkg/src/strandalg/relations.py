"""Zero-relation sets, admissibility and the special/biserial conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .quiver import Path, Quiver, QuiverError


class ZSet:
    """A finite set of non-trivial paths of a fixed quiver.

    Relations are indexed by their right arrow so that admissibility of a
    path only inspects relations that can end at each position.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Path]):
        rels = []
        for z in relations:
            if z.is_trivial:
                raise QuiverError("zero-relations must be non-trivial paths")
            quiver.path(z.word)  # validates consecutiveness
            rels.append(z)
        self.quiver = quiver
        self.relations = frozenset(rels)
        self._words = frozenset(z.word for z in self.relations)
        self.min_length = min((len(z) for z in self.relations), default=0)
        self.max_length = max((len(z) for z in self.relations), default=0)
        by_right: dict[int, list[tuple[int, ...]]] = {}
        for z in sorted(self.relations, key=Path.sort_key):
            by_right.setdefault(z.right_arrow, []).append(z.word)
        self._by_right = by_right

    def __contains__(self, p: Path) -> bool:
        return p.word in self._words

    def contains_word(self, word: tuple[int, ...]) -> bool:
        return word in self._words

    def __iter__(self):
        return iter(sorted(self.relations, key=Path.sort_key))

    def __len__(self) -> int:
        return len(self.relations)

    def first_violation(self, p: Path) -> Optional[Path]:
        """The first relation (scanning from the right) that is a subpath of ``p``."""
        w = p.word
        for j in range(len(w) - 1, -1, -1):
            for zw in self._by_right.get(w[j], ()):
                m = len(zw)
                if m <= j + 1 and w[j - m + 1:j + 1] == zw:
                    return self.quiver.path(zw)
        return None

    def is_admissible(self, p: Path) -> bool:
        return self.first_violation(p) is None

    def ends_admissibly(self, word: tuple[int, ...]) -> bool:
        """True iff no relation ends at the right end of ``word``.

        Used when a word is grown one arrow at a time on the right.
        """
        if not word:
            return True
        for zw in self._by_right.get(word[-1], ()):
            m = len(zw)
            if m <= len(word) and word[-m:] == zw:
                return False
        return True

    def starts_admissibly(self, word: tuple[int, ...]) -> bool:
        """True iff no relation starts at the left end of ``word``."""
        if not word:
            return True
        for m in range(1, min(len(word), self.max_length) + 1):
            if word[:m] in self._words:
                return False
        return True


def is_z_admissible(p: Path, z: ZSet) -> bool:
    return z.first_violation(p) is None


def first_violation(p: Path, z: ZSet) -> Optional[Path]:
    return z.first_violation(p)


@dataclass(frozen=True)
class SpecialPairData:
    quiver: Quiver
    z: ZSet
    special: bool
    # (condition, b, first, second): two distinct arrows extending b through
    # the same side without hitting Z
    witnesses: tuple[tuple[str, int, int, int], ...] = field(default=())

    def describe_witness(self) -> Optional[str]:
        if not self.witnesses:
            return None
        cond, b, a1, a2 = self.witnesses[0]
        names = self.quiver.arrow_names
        if cond == "SP1":
            return (f"SP1 fails at arrow {names[b]}: {names[a1]}*{names[b]} and "
                    f"{names[a2]}*{names[b]} are both outside Z")
        return (f"SP2 fails at arrow {names[b]}: {names[b]}*{names[a1]} and "
                f"{names[b]}*{names[a2]} are both outside Z")


def check_special_pair(q: Quiver, z: ZSet) -> SpecialPairData:
    witnesses = []
    for b in range(q.num_arrows):
        left = [a for a in q.out_arrows(q.heads[b]) if not z.contains_word((a, b))]
        if len(left) > 1:
            witnesses.append(("SP1", b, left[0], left[1]))
        right = [c for c in q.in_arrows(q.tails[b]) if not z.contains_word((b, c))]
        if len(right) > 1:
            witnesses.append(("SP2", b, right[0], right[1]))
    return SpecialPairData(q, z, not witnesses, tuple(witnesses))


def check_biserial(q: Quiver) -> tuple[bool, Optional[int]]:
    """``(True, None)`` or ``(False, v)`` for a vertex heading or tailing 3+ arrows."""
    for v in range(q.num_vertices):
        if len(q.in_arrows(v)) > 2 or len(q.out_arrows(v)) > 2:
            return False, v
    return True, None


def admissible_paths(q: Quiver, z: ZSet, max_length: int):
    """Yield every Z-admissible path of length ``< max_length``, shortest first."""
    if max_length <= 0:
        return
    frontier = [q.trivial(v) for v in range(q.num_vertices)]
    yield from frontier
    for _ in range(1, max_length):
        nxt = []
        for p in frontier:
            for a in q.in_arrows(p.tail):
                word = p.word + (a,)
                if z.ends_admissibly(word):
                    nxt.append(Path(p.head, q.tails[a], word))
        if not nxt:
            return
        frontier = nxt
        yield from frontier
