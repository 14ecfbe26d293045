"""Peirce components ``e_u Λ e_w`` as k-bases with the induced s-action."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraElement, IdealPresentation, reduce
from .coefficients import format_coefficient
from .quiver import Path, proper_power_root
from .relations import admissible_paths


@dataclass(frozen=True)
class PeircePair:
    head: int
    tail: int
    basis: tuple[Path, ...]
    # (s index, from basis idx, to basis idx, coefficient text)
    action: tuple[tuple[int, int, int, str], ...]


@dataclass(frozen=True)
class LocalRing:
    """Shape of ``e_v Λ e_v``: just k, powers of one cycle, or something larger."""

    vertex: int
    shape: str  # "field", "cycle" or "general"
    cycle: Optional[Path]
    top_power: int
    periodic: bool
    acting: tuple[int, ...]

    def describe(self, ideal: IdealPresentation) -> str:
        q = ideal.quiver
        names = ideal.model.names
        if self.shape == "field":
            shape = "k"
        elif self.shape == "cycle":
            c = q.format_path(self.cycle)
            shape = (f"k[[{c}]] (periodic, cut at the length cap)" if self.periodic
                     else f"k[{c}]/({c}^{self.top_power + 1})")
        else:
            shape = "several cycles (see basis)"
        if self.acting:
            act = ", ".join(f"{names[i]} acts as sigma_{q.vertex_names[self.vertex]}" for i in self.acting)
        else:
            act = "every s acts as 0"
        return f"{shape}; {act}"


@dataclass(frozen=True)
class PeirceReport:
    ideal: IdealPresentation
    length_cap: int
    pairs: tuple[PeircePair, ...]
    local_rings: tuple[LocalRing, ...]

    def pair(self, head: int, tail: int) -> PeircePair:
        for p in self.pairs:
            if p.head == head and p.tail == tail:
                return p
        raise KeyError((head, tail))

    def to_json(self) -> dict:
        q, names = self.ideal.quiver, self.ideal.model.names
        return {
            "caps": {"L": self.length_cap, "D": self.ideal.model.degree_cap},
            "pairs": [{
                "from": q.vertex_names[p.tail],
                "to": q.vertex_names[p.head],
                "basis": [q.format_path(b) for b in p.basis],
                "s_action": [{"s": names[i], "from_basis_idx": j, "to_basis_idx": k, "coefficient": c}
                             for i, j, k, c in p.action],
            } for p in self.pairs],
            "local_rings": [{
                "vertex": q.vertex_names[r.vertex],
                "description": r.describe(self.ideal),
            } for r in self.local_rings],
        }

    def format(self) -> str:
        q, names = self.ideal.quiver, self.ideal.model.names
        lines = []
        for p in self.pairs:
            if not p.basis:
                continue
            head = f"e({q.vertex_names[p.head]}) A e({q.vertex_names[p.tail]})"
            lines.append(f"{head}: " + ", ".join(q.format_path(b) for b in p.basis))
            for i, j, k, c in p.action:
                coef = "" if c == "1" else f"{c}*"
                lines.append(f"  {names[i]} * {q.format_path(p.basis[j])} = "
                             f"{coef}{q.format_path(p.basis[k])}")
        lines.append("local rings:")
        for r in self.local_rings:
            lines.append(f"  e({q.vertex_names[r.vertex]}): {r.describe(self.ideal)}")
        return "\n".join(lines)


def peirce_report(ideal: IdealPresentation, length_cap: int) -> PeirceReport:
    """Bases of admissible paths ``w -> u`` shorter than ``L`` and the matrices of each ``s_i``."""
    q, model = ideal.quiver, ideal.model
    nv = q.num_vertices
    by_pair: dict[tuple[int, int], list[Path]] = {(u, w): [] for u in range(nv) for w in range(nv)}
    for p in admissible_paths(q, ideal.z, length_cap):
        by_pair[(p.head, p.tail)].append(p)
    pairs = []
    for (u, w), basis in sorted(by_pair.items()):
        basis.sort(key=Path.sort_key)
        index = {b: i for i, b in enumerate(basis)}
        action = []
        for i in range(model.n):
            s = model.var(i)
            for j, b in enumerate(basis):
                nf = reduce(AlgebraElement.from_path(q, model, length_cap, b, s), ideal)
                for r in sorted(nf.terms, key=Path.sort_key):
                    action.append((i, j, index[r], format_coefficient(nf.terms[r])))
        pairs.append(PeircePair(u, w, tuple(basis), tuple(action)))
    rings = [_local_ring(ideal, v, by_pair[(v, v)], length_cap) for v in range(nv)]
    return PeirceReport(ideal, length_cap, tuple(pairs), tuple(rings))


def _local_ring(ideal: IdealPresentation, v: int, basis: list[Path], length_cap: int) -> LocalRing:
    acting = tuple(i for i in range(ideal.model.n) if ideal.action(i, v) == "absorb")
    nontrivial = [b for b in basis if not b.is_trivial]
    if not nontrivial:
        return LocalRing(v, "field", None, 0, False, acting)
    c = nontrivial[0]
    for b in nontrivial[1:]:
        root = proper_power_root(b)
        if root is None or root[0] != c:
            return LocalRing(v, "general", None, 0, False, acting)
    top = max(len(b) for b in nontrivial) // len(c)
    periodic = (top + 1) * len(c) >= length_cap
    return LocalRing(v, "cycle", c, top, periodic, acting)
