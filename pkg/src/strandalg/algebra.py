"""Path-algebra arithmetic over a truncated coefficient model, the ideal
``I = <Z> + I_V + I_notV`` and normal forms modulo it.

Elements live in ``RQ / (A^L + m^(D+1) Q)`` where ``L`` is the length cap
of the element and ``D`` the degree cap of its coefficient model.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .coefficients import Coefficient, CoefficientModel, Scalar, format_coefficient
from .primitives import NervePartition, NonSpecialError, PrimitiveCycleSet
from .quiver import Path, Quiver, power
from .relations import ZSet, check_special_pair


class DimensionMismatch(ValueError):
    """The ring dimension differs from the number of nerve blocks."""


class TransportMismatch(AssertionError):
    pass


class AlgebraElement:
    """Finite R-combination of paths; immutable by convention."""

    __slots__ = ("quiver", "model", "length_cap", "terms")

    def __init__(self, quiver: Quiver, model: CoefficientModel, length_cap: int,
                 terms: Optional[Mapping[Path, Coefficient]] = None):
        self.quiver = quiver
        self.model = model
        self.length_cap = length_cap
        clean = {}
        for p, c in (terms or {}).items():
            if len(p) < length_cap and c:
                clean[p] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, quiver, model, length_cap):
        return cls(quiver, model, length_cap)

    @classmethod
    def from_path(cls, quiver, model, length_cap, p: Path, coef=1):
        if not isinstance(coef, Coefficient):
            coef = model.const(coef)
        return cls(quiver, model, length_cap, {p: coef})

    @classmethod
    def idempotent(cls, quiver, model, length_cap, v: int, coef=1):
        return cls.from_path(quiver, model, length_cap, quiver.trivial(v), coef)

    @classmethod
    def identity(cls, quiver, model, length_cap):
        one = model.one()
        return cls(quiver, model, length_cap,
                   {quiver.trivial(v): one for v in range(quiver.num_vertices)})

    def like(self, terms: Mapping[Path, Coefficient]) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.model, self.length_cap, terms)

    def with_length_cap(self, length_cap: int) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.model, length_cap, self.terms)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if other.model != self.model or other.quiver is not self.quiver and other.quiver != self.quiver:
            raise ValueError("elements over different quivers or models")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc = dict(self.terms)
        for p, c in other.terms.items():
            acc[p] = acc[p] + c if p in acc else c
        return AlgebraElement(self.quiver, self.model, min(self.length_cap, other.length_cap), acc)

    def __neg__(self):
        return self.like({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coef) -> "AlgebraElement":
        if not isinstance(coef, Coefficient):
            coef = self.model.const(coef)
        return self.like({p: coef * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms and self.model == other.model

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, p: Path) -> Coefficient:
        return self.terms.get(p, self.model.zero())

    def support(self) -> list[Path]:
        return sorted(self.terms, key=Path.sort_key)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p in self.support():
            c = self.terms[p]
            ps = self.quiver.format_path(p)
            cs = format_coefficient(c)
            if cs == "1":
                parts.append(ps)
            elif cs == "-1":
                parts.append("-" + ps)
            elif len(c.terms) == 1:
                parts.append(f"{cs}*{ps}")
            else:
                parts.append(f"({cs})*{ps}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"AlgebraElement({self.format()})"

    def to_json(self) -> list[dict]:
        return [{"path": self.quiver.format_path(p), "coefficient": format_coefficient(self.terms[p])}
                for p in self.support()]


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of path composition; non-composable pairs give 0."""
    x._check(y)
    cap = min(x.length_cap, y.length_cap)
    acc: dict[Path, Coefficient] = {}
    for p, cp in x.terms.items():
        for q, cq in y.terms.items():
            if p.tail != q.head or len(p) + len(q) >= cap:
                continue
            pq = Path(p.head, q.tail, p.word + q.word)
            c = cp * cq
            acc[pq] = acc[pq] + c if pq in acc else c
    return AlgebraElement(x.quiver, x.model, cap, acc)


def sigma(v: int, pcs: PrimitiveCycleSet, model: CoefficientModel, length_cap: int) -> AlgebraElement:
    """Sum of the Z-primitive cycles at ``v`` (the empty sum is 0)."""
    one = model.one()
    return AlgebraElement(pcs.quiver, model, length_cap, {c: one for c in pcs.at(v)})


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of ``<Z> + sum_i <s_i e_v - sigma_v : v in V[i]> + <s_i e_v : v not in V[i]>``.

    ``v_generators`` holds ``(i, v, cycles)`` and ``notv_generators`` holds
    ``(i, v)`` with ``i`` the index of ``s_i`` in the model.  A presentation
    with both lists empty is ``<Z>`` alone.
    """

    quiver: Quiver
    z: ZSet
    pcs: PrimitiveCycleSet
    model: CoefficientModel
    z_generators: tuple[Path, ...]
    v_generators: tuple[tuple[int, int, tuple[Path, ...]], ...]
    notv_generators: tuple[tuple[int, int], ...]

    def __post_init__(self):
        actions: dict[int, dict[int, str]] = {v: {} for v in range(self.quiver.num_vertices)}
        for i, v, _ in self.v_generators:
            actions[v][i] = "absorb"
        for i, v in self.notv_generators:
            if actions[v].get(i) == "absorb":
                raise ValueError("s_i e_v cannot be both absorbed and killed")
            actions[v][i] = "drop"
        for v, acts in actions.items():
            if sum(1 for a in acts.values() if a == "absorb") > 1:
                raise ValueError(f"vertex {self.quiver.vertex_names[v]} absorbs two s-variables")
        object.__setattr__(self, "_actions", actions)

    @property
    def is_z_only(self) -> bool:
        return not self.v_generators and not self.notv_generators

    def action(self, i: int, v: int) -> str:
        return self._actions[v].get(i, "keep")

    def absorbing_variable(self, v: int) -> Optional[int]:
        for i, a in self._actions[v].items():
            if a == "absorb":
                return i
        return None

    def generators(self, length_cap: int) -> list[AlgebraElement]:
        q, m = self.quiver, self.model
        out = [AlgebraElement.from_path(q, m, length_cap, z) for z in self.z_generators]
        for i, v, cycles in self.v_generators:
            g = {q.trivial(v): m.var(i)}
            for c in cycles:
                g[c] = -m.one()
            out.append(AlgebraElement(q, m, length_cap, g))
        for i, v in self.notv_generators:
            out.append(AlgebraElement.idempotent(q, m, length_cap, v, m.var(i)))
        return out

    def generator_strings(self) -> dict:
        q, names = self.quiver, self.model.names
        return {
            "relations": sorted(q.format_path(z) for z in self.z_generators),
            "v_generators": sorted(
                (names[i], q.vertex_names[v], tuple(sorted(q.format_path(c) for c in cs)))
                for i, v, cs in self.v_generators),
            "notv_generators": sorted((names[i], q.vertex_names[v]) for i, v in self.notv_generators),
        }

    def to_json(self) -> dict:
        g = self.generator_strings()
        return {
            "relations": g["relations"],
            "v_generators": [{"s": s, "vertex": v, "sigma": list(cs)} for s, v, cs in g["v_generators"]],
            "notv_generators": [{"s": s, "vertex": v} for s, v in g["notv_generators"]],
        }

    def format_lines(self) -> list[str]:
        q, names = self.quiver, self.model.names
        lines = [q.format_path(z) for z in sorted(self.z_generators, key=Path.sort_key)]
        for i, v, cs in self.v_generators:
            tail = "".join(" - " + q.format_path(c) for c in cs)
            lines.append(f"{names[i]}*e({q.vertex_names[v]}){tail}")
        for i, v in self.notv_generators:
            lines.append(f"{names[i]}*e({q.vertex_names[v]})")
        return lines


def ideal_generators(q: Quiver, z: ZSet, pcs: PrimitiveCycleSet, partition: NervePartition,
                     model: CoefficientModel) -> IdealPresentation:
    if not check_special_pair(q, z).special:
        raise NonSpecialError("(Q, Z) is not special; see check_special_pair for a witness")
    if model.n != partition.n:
        raise DimensionMismatch(
            f"the ring has dimension {model.n} but the nerve partition has {partition.n} blocks")
    vgens, notv = [], []
    for i, block in enumerate(partition.blocks):
        for v in sorted(block):
            vgens.append((i, v, pcs.at(v)))
        for v in range(q.num_vertices):
            if v not in block:
                notv.append((i, v))
    return IdealPresentation(q, z, pcs, model, tuple(z), tuple(vgens), tuple(notv))


def z_only_ideal(q: Quiver, z: ZSet, pcs: PrimitiveCycleSet, model: CoefficientModel) -> IdealPresentation:
    """The presentation of ``<Z>`` alone (no coefficient rewriting)."""
    return IdealPresentation(q, z, pcs, model, tuple(z), (), ())


# -- normal forms ------------------------------------------------------------


class _Reducer:
    def __init__(self, ideal: IdealPresentation, length_cap: int, orientation: str):
        if orientation not in ("left", "right"):
            raise ValueError("orientation must be 'left' or 'right'")
        self.ideal = ideal
        self.q = ideal.quiver
        self.z = ideal.z
        self.model = ideal.model
        self.cap = length_cap
        self.left = orientation == "left"
        self.absorb = {v: ideal.absorbing_variable(v) for v in range(self.q.num_vertices)}

    def anchor(self, p: Path) -> int:
        return p.head if self.left else p.tail

    def depth(self, p: Path, v: int) -> tuple[int, bool]:
        """Primitive cycles at ``v`` peeled off the anchored end of ``p``, and whether nothing is left."""
        cycles = self.ideal.pcs.at(v)
        k = 0
        w = p.word
        while w:
            for c in cycles:
                n = len(c.word)
                if self.left and w[:n] == c.word:
                    w = w[n:]
                    break
                if not self.left and len(w) >= n and w[len(w) - n:] == c.word:
                    w = w[:len(w) - n]
                    break
            else:
                return k, False
            k += 1
        return k, k > 0

    def power_of_least(self, v: int, k: int) -> Path:
        return power(self.ideal.pcs.at(v)[0], k)

    def split(self, coef: Coefficient, v: int):
        """Split into the normal part at ``v`` and ``(e, c)`` pieces meaning ``c * sigma_v^e``."""
        model = self.model
        n = model.n
        normal: dict = {}
        absorbed: dict[int, dict] = {}
        for exps, val in coef.terms:
            if model.is_mixed:
                act0 = self.ideal.action(0, v)
                if act0 == "keep":
                    pieces = [(0, val)]
                elif act0 == "drop":
                    pieces = [(0, val % model.characteristic)]
                else:
                    pieces = model.digits(val, exps)
                first = 1
            else:
                pieces = [(0, val)]
                first = 0
            kept = list(exps)
            e = 0
            dead = False
            for j in range(first, n):
                if not exps[j]:
                    continue
                act = self.ideal.action(j, v)
                if act == "drop":
                    dead = True
                    break
                if act == "absorb":
                    e += exps[j]
                    kept[j] = 0
            if dead:
                continue
            kept_t = tuple(kept)
            for m, d in pieces:
                if not d:
                    continue
                total = e + m
                bucket = normal if total == 0 else absorbed.setdefault(total, {})
                bucket[kept_t] = bucket.get(kept_t, 0) + d
        return normal, [(e, model.element(t)) for e, t in sorted(absorbed.items())]

    def times_sigma_power(self, p: Path, v: int, e: int) -> dict[Path, int]:
        """``sigma_v^e p`` (left) or ``p sigma_v^e`` (right) with Z-multiples and long paths dropped."""
        cycles = self.ideal.pcs.at(v)
        cur = {p: 1}
        for _ in range(e):
            nxt: dict[Path, int] = {}
            for r, mult in cur.items():
                for c in cycles:
                    if len(r) + len(c) >= self.cap:
                        continue
                    if self.left:
                        s = Path(c.head, r.tail, c.word + r.word)
                    else:
                        s = Path(r.head, c.tail, r.word + c.word)
                    if self.z.is_admissible(s):
                        nxt[s] = nxt.get(s, 0) + mult
            cur = nxt
            if not cur:
                break
        return cur

    def run(self, x: AlgebraElement, order: str, rng: Optional[random.Random]) -> AlgebraElement:
        model = self.model
        pending: dict[Path, Coefficient] = {}
        heap: list = []

        def push(p: Path, c: Coefficient):
            if not c or len(p) >= self.cap:
                return
            if p in pending:
                pending[p] = pending[p] + c
            else:
                pending[p] = c
                heapq.heappush(heap, (p.sort_key(), p))

        for p, c in x.terms.items():
            push(p, c)
        output: dict[Path, Coefficient] = {}
        while pending:
            if order == "random":
                p = rng.choice(sorted(pending, key=Path.sort_key))
            else:
                while True:
                    _, p = heapq.heappop(heap)
                    if p in pending:
                        break
            c = pending.pop(p)
            # R1: multiples of Z vanish
            if not self.z.is_admissible(p):
                continue
            v = self.anchor(p)
            depth, whole = self.depth(p, v) if self.absorb[v] is not None else (0, False)
            cycles = self.ideal.pcs.at(v)
            if whole and len(cycles) > 1:
                # c^k alone is s^(k-1) c, since s^k e_v is the sum of every d^k
                depth -= 1
            if depth > model.degree_cap:
                # p = c^depth p' is congruent to s^depth p', which is past the degree cap
                continue
            if p in output:
                c = c + output.pop(p)
            normal, absorbed = self.split(c, v)
            if normal:
                coef = model.element(normal)
                keep = {e: val for e, val in coef.terms if sum(e) + depth <= model.degree_cap}
                if whole and len(cycles) > 1 and p == self.power_of_least(v, depth + 1):
                    # at the cap r c^k = r s^k e_v - sum r d^k with r s^k gone, so write
                    # the least cycle through the others to keep normal forms unique
                    edge = {e: val for e, val in keep.items() if sum(e) + depth == model.degree_cap}
                    keep = {e: val for e, val in keep.items() if e not in edge}
                    if edge:
                        r = model.element(edge)
                        for d in cycles[1:]:
                            push(power(d, depth + 1), -r)
                coef = model.element(keep)
                if coef:
                    output[p] = coef
            for e, piece in absorbed:
                # R2: s_i^e on a path anchored in V[i] becomes sigma^e on that path
                for r, mult in self.times_sigma_power(p, v, e).items():
                    push(r, piece * mult)
        return AlgebraElement(self.q, model, self.cap, output)


def reduce(x: AlgebraElement, ideal: IdealPresentation, *, orientation: str = "left",
           order: str = "length", rng: Optional[random.Random] = None) -> AlgebraElement:
    """Normal form of ``x`` modulo ``ideal + A^L + m^(D+1) Q``.

    Terms through Z vanish; on a path anchored at ``u`` in block ``V[i]`` the
    ``s_i``-divisible part of a coefficient is traded for left (or right)
    multiplication by ``sigma_u``; ``s_j`` with ``u`` outside ``V[j]`` kills
    the term.  Output coefficients are residue representatives on
    Z-admissible paths shorter than ``L``.
    """
    if x.model != ideal.model:
        raise ValueError("element and ideal use different coefficient models")
    if order not in ("length", "random"):
        raise ValueError("order must be 'length' or 'random'")
    if order == "random" and rng is None:
        rng = random.Random()
    return _Reducer(ideal, x.length_cap, orientation).run(x, order, rng)


def ideal_membership(x: AlgebraElement, ideal: IdealPresentation) -> bool:
    """Membership in ``ideal + A^L + m^(D+1) Q`` at the caps carried by ``x``."""
    return reduce(x, ideal).is_zero()


def one_sided_transport(s: Coefficient, v: int, p: Path, q: Path, ideal: IdealPresentation,
                        length_cap: int) -> AlgebraElement:
    """Check ``(s e - sigma) pq = p (s e - sigma) q = pq (s e - sigma)`` modulo ``<Z>``.

    Returns the common normal form and raises :class:`TransportMismatch`
    when the three expressions disagree.
    """
    quiver, model, z = ideal.quiver, ideal.model, ideal.z
    if p.tail != v or q.head != v:
        raise ValueError("need t(p) = v = h(q)")
    if not (z.is_admissible(p) and z.is_admissible(q)):
        raise ValueError("p and q must be Z-admissible")
    zonly = z_only_ideal(quiver, z, ideal.pcs, model)

    def gen(u):
        return (AlgebraElement.idempotent(quiver, model, length_cap, u, s)
                - sigma(u, ideal.pcs, model, length_cap))

    P = AlgebraElement.from_path(quiver, model, length_cap, p)
    Qe = AlgebraElement.from_path(quiver, model, length_cap, q)
    forms = [reduce(gen(p.head) * P * Qe, zonly),
             reduce(P * gen(v) * Qe, zonly),
             reduce(P * Qe * gen(q.tail), zonly)]
    if not (forms[0] == forms[1] == forms[2]):
        raise TransportMismatch("one-sided forms disagree: " + " | ".join(f.format() for f in forms))
    return forms[0]


def default_caps(q: Quiver, z: ZSet) -> tuple[int, int]:
    """``L = 2 (|Q1| + longest relation)`` and ``D = L``."""
    L = 2 * (q.num_arrows + z.max_length)
    return max(L, 1), max(L, 1)
