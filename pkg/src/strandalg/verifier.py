"""Checks of the string-algebra conditions for ``RQ / I`` at finite caps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraElement, IdealPresentation, reduce
from .coefficients import CoefficientModel
from .primitives import NonSpecialError, PrimitiveCycleSet
from .quiver import Path, Quiver, iter_paths
from .relations import ZSet, admissible_paths, check_biserial, check_special_pair

PASS, FAIL, NA = "pass", "fail", "not applicable"


@dataclass
class ConditionResult:
    verdict: str
    kind: str
    witness: Optional[dict] = None
    constants: Optional[dict] = None
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "kind": self.kind}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.constants is not None:
            out["constants"] = self.constants
        if self.note is not None:
            out["note"] = self.note
        return out


# -- bounded below -------------------------------------------------------------


@dataclass(frozen=True)
class BoundedBelow:
    h: int
    search_bound: int
    # (path, side) for the longest admissible path that does not wrap a
    # primitive cycle on that side; None when every path qualifies
    last_failure: Optional[tuple[Path, str]] = None


def _chain_length(q: Quiver, z: ZSet, a: int, right: bool, limit: int) -> int:
    """Length of the longest admissible path with right (or left) arrow ``a``, capped at ``limit``."""
    frontier = [q.arrow_path(a)]
    n = 1
    while frontier and n < limit:
        nxt = []
        for p in frontier:
            if right:
                for b in q.out_arrows(p.head):
                    w = (b,) + p.word
                    if z.starts_admissibly(w):
                        nxt.append(Path(q.heads[b], p.tail, w))
            else:
                for b in q.in_arrows(p.tail):
                    w = p.word + (b,)
                    if z.ends_admissibly(w):
                        nxt.append(Path(p.head, q.tails[b], w))
        if not nxt:
            return n
        frontier = nxt
        n += 1
    return n


def _wraps(p: Path, pcs: PrimitiveCycleSet) -> Optional[str]:
    """None if p = c*q and p = q'*d with c, d primitive and q, q' non-trivial, else the failing side."""
    if not any(len(c) < len(p) and p.word[:len(c)] == c.word for c in pcs.at(p.head)):
        return "head"
    if not any(len(d) < len(p) and p.word[len(p) - len(d):] == d.word for d in pcs.at(p.tail)):
        return "tail"
    return None


def bounded_below_constant(q: Quiver, z: ZSet, pcs: PrimitiveCycleSet) -> BoundedBelow:
    if not check_special_pair(q, z).special:
        raise NonSpecialError("bounded_below_constant needs a special pair")
    on_cycle = {a for c in pcs.cycles for a in c.word}
    g = q.num_arrows
    bound = g + 1
    for a in range(q.num_arrows):
        if a in on_cycle:
            continue
        # finite for arrows off primitive cycles; the cap only guards bad input
        cap = 4 * (q.num_arrows + z.max_length) + 8
        bound += _chain_length(q, z, a, True, cap) + _chain_length(q, z, a, False, cap)
    bound = max(bound, 2 * pcs.max_length() + 1)
    h = 1
    last = None
    for p in admissible_paths(q, z, bound + 1):
        if p.is_trivial:
            continue
        side = _wraps(p, pcs)
        if side is not None:
            h = len(p) + 1
            last = (p, side)
    return BoundedBelow(h, bound, last)


def check_bounded_below(ideal: IdealPresentation, length_cap: int) -> ConditionResult:
    """Find h, then confirm ``p - s_i q`` and ``p - q' s_i`` reduce to 0 for paths just past h."""
    q, z, pcs, model = ideal.quiver, ideal.z, ideal.pcs, ideal.model
    bb = bounded_below_constant(q, z, pcs)
    top = min(bb.h + 2 * max(pcs.max_length(), 1), length_cap)
    checked = 0
    for p in admissible_paths(q, z, top):
        if len(p) < bb.h:
            continue
        for c in pcs.at(p.head):
            if len(c) < len(p) and p.word[:len(c)] == c.word:
                rest = Path(c.tail, p.tail, p.word[len(c):])
                i = ideal.absorbing_variable(p.head)
                x = (AlgebraElement.from_path(q, model, length_cap, p)
                     - AlgebraElement.from_path(q, model, length_cap, rest, model.var(i)))
                if reduce(x, ideal):
                    return ConditionResult(FAIL, "structural",
                                           witness={"path": q.format_path(p), "side": "head"},
                                           constants={"h": bb.h, "m": bb.h})
                checked += 1
                break
        for d in pcs.at(p.tail):
            if len(d) < len(p) and p.word[len(p) - len(d):] == d.word:
                rest = Path(p.head, d.head, p.word[:len(p) - len(d)])
                i = ideal.absorbing_variable(p.tail)
                x = (AlgebraElement.from_path(q, model, length_cap, p)
                     - AlgebraElement.from_path(q, model, length_cap, rest, model.var(i)))
                if reduce(x, ideal):
                    return ConditionResult(FAIL, "structural",
                                           witness={"path": q.format_path(p), "side": "tail"},
                                           constants={"h": bb.h, "m": bb.h})
                checked += 1
                break
    return ConditionResult(PASS, "structural",
                           constants={"h": bb.h, "m": bb.h, "search_bound": bb.search_bound,
                                      "reductions_checked": checked})


# -- bounded above / arrow-direct ---------------------------------------------


def check_bounded_above(z: ZSet, ideal: Optional[IdealPresentation], length_cap: int) -> ConditionResult:
    """Relations of length >= 2 and no arrow in the ideal (arrow-distinct plus permissible)."""
    q = z.quiver
    for rel in z:
        if len(rel) < 2:
            return ConditionResult(FAIL, "precision", witness={"relation": q.format_path(rel),
                                                                "reason": "relation of length < 2"})
    if ideal is None:
        return ConditionResult(NA, "precision", note="needs a special pair")
    for a in range(q.num_arrows):
        x = AlgebraElement.from_path(q, ideal.model, length_cap, q.arrow_path(a))
        if not reduce(x, ideal):
            return ConditionResult(FAIL, "precision", witness={"arrow": q.arrow_names[a],
                                                                "reason": "arrow lies in the ideal"})
    return ConditionResult(PASS, "precision")


def _monomials(model: CoefficientModel, max_degree: int):
    for total in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(model.n), total):
            exps = [0] * model.n
            for i in combo:
                exps[i] += 1
            yield model.element({tuple(exps): 1})


def check_arrow_direct(ideal: IdealPresentation, length_cap: int, *, trials: int = 40,
                       seed: int = 0, max_degree: int = 2) -> ConditionResult:
    """Normal forms of ``RQ a`` sit on paths with right arrow ``a`` (and dually for ``a RQ``).

    Paths with different right arrows are distinct basis elements, so the
    intersections in the arrow-direct conditions vanish.  A randomized pass also
    reduces random ``x_a a`` and ``sum x_b b`` and compares supports.
    """
    q, z, model = ideal.quiver, ideal.z, ideal.model
    monos = list(_monomials(model, min(max_degree, model.degree_cap)))
    paths = [p for p in admissible_paths(q, z, length_cap)]
    for a in range(q.num_arrows):
        A = AlgebraElement.from_path(q, model, length_cap, q.arrow_path(a))
        for p in paths:
            for mono in monos:
                if p.tail == q.heads[a]:
                    nf = reduce(AlgebraElement.from_path(q, model, length_cap, p, mono) * A, ideal)
                    bad = [r for r in nf.terms if r.is_trivial or r.right_arrow != a]
                    if bad:
                        return ConditionResult(FAIL, "precision", witness={
                            "condition": 5, "arrow": q.arrow_names[a], "multiplier": q.format_path(p),
                            "path": q.format_path(bad[0])})
                if p.head == q.tails[a]:
                    nf = reduce(A * AlgebraElement.from_path(q, model, length_cap, p, mono), ideal)
                    bad = [r for r in nf.terms if r.is_trivial or r.left_arrow != a]
                    if bad:
                        return ConditionResult(FAIL, "precision", witness={
                            "condition": 6, "arrow": q.arrow_names[a], "multiplier": q.format_path(p),
                            "path": q.format_path(bad[0])})
    rng = random.Random(seed)
    for _ in range(trials):
        for a in range(q.num_arrows):
            for right in (True, False):
                w = q.tails[a] if right else q.heads[a]
                rivals = [b for b in range(q.num_arrows)
                          if b != a and (q.tails[b] == w if right else q.heads[b] == w)]
                if not rivals:
                    continue
                lhs = _times(_random_element(q, model, length_cap, paths, rng), a, q, length_cap, right)
                rhs = AlgebraElement.zero(q, model, length_cap)
                for b in rivals:
                    rhs = rhs + _times(_random_element(q, model, length_cap, paths, rng), b, q,
                                       length_cap, right)
                s1, s2 = set(reduce(lhs, ideal).terms), set(reduce(rhs, ideal).terms)
                if s1 & s2:
                    return ConditionResult(FAIL, "precision", witness={
                        "condition": 5 if right else 6, "arrow": q.arrow_names[a],
                        "shared": q.format_path(min(s1 & s2, key=Path.sort_key))})
    return ConditionResult(PASS, "precision")


def _times(x: AlgebraElement, a: int, q: Quiver, cap: int, right: bool) -> AlgebraElement:
    A = AlgebraElement.from_path(q, x.model, cap, q.arrow_path(a))
    return x * A if right else A * x


def random_coefficient(model: CoefficientModel, rng: random.Random, terms: int = 2):
    base = model.characteristic or 7
    acc = {}
    for _ in range(terms):
        exps = [0] * model.n
        for _ in range(rng.randint(0, 2)):
            if model.n:
                exps[rng.randrange(model.n)] += 1
        acc[tuple(exps)] = rng.randrange(-base, base + 1)
    return model.element(acc)


def _random_element(q, model, cap, paths, rng, size: int = 3) -> AlgebraElement:
    terms = {}
    for _ in range(size):
        p = rng.choice(paths)
        terms[p] = random_coefficient(model, rng)
    return AlgebraElement(q, model, cap, terms)


# -- nonvanishing and truncation ---------------------------------------------


def nonvanishing_sweep(ideal: IdealPresentation, length_cap: int) -> tuple[int, list[Path]]:
    """Reduce every admissible path shorter than ``L - longest primitive cycle``; return (bound, failures)."""
    q, model = ideal.quiver, ideal.model
    bound = max(length_cap - ideal.pcs.max_length(), 0)
    failures = []
    for p in admissible_paths(q, ideal.z, bound):
        if not reduce(AlgebraElement.from_path(q, model, length_cap, p), ideal):
            failures.append(p)
    return bound, failures


def _rank(rows: list[dict], characteristic: int) -> int:
    """Rank over F_p (or Q for characteristic 0) of sparse rows keyed by column."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                inv = (pow(row[col], -1, characteristic) if characteristic
                       else 1 / Fraction(row[col]))
                row = {k: (v * inv) % characteristic if characteristic else v * inv
                       for k, v in row.items()}
                pivots[col] = row
                rank += 1
                break
            piv = pivots[col]
            f = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if characteristic:
                    nv %= characteristic
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


@dataclass(frozen=True)
class TruncationCheck:
    d: int
    lhs_dim: Optional[int]
    rhs_dim: Optional[int]
    applicable: bool = True

    @property
    def equal(self) -> bool:
        return self.applicable and self.lhs_dim == self.rhs_dim

    def to_json(self) -> dict:
        if not self.applicable:
            return {"d": self.d, "verdict": NA}
        return {"d": self.d, "lhs_dim": self.lhs_dim, "rhs_dim": self.rhs_dim, "equal": self.equal}


def truncation_dimension_check(q: Quiver, z: ZSet, ideal: IdealPresentation, d: int) -> TruncationCheck:
    """Compare dim_k kQ/(<Z> + B^d) with dim_k of the normal-form space of RQ/(I + A^d)."""
    model = ideal.model
    if model.is_mixed:
        return TruncationCheck(d, None, None, applicable=False)
    if d < 0:
        raise ValueError("d must be non-negative")
    lhs = sum(1 for _ in admissible_paths(q, z, d))
    # every s-variable either lengthens a path or kills it, so degree >= d lands in A^d
    monos = list(_monomials(model, min(model.degree_cap, max(d - 1, 0))))
    index: dict = {}
    rows = []
    for p in iter_paths(q, d):
        for mono in monos:
            nf = reduce(AlgebraElement.from_path(q, model, d, p, mono), ideal)
            row = {}
            for path, coef in nf.terms.items():
                for exps, val in coef.terms:
                    col = index.setdefault((path, exps), len(index))
                    row[col] = val
            if row:
                rows.append(row)
    rhs = _rank(rows, model.characteristic)
    return TruncationCheck(d, lhs, rhs)


# -- the whole report ------------------------------------------------------------


@dataclass
class VerificationReport:
    conditions: dict = field(default_factory=dict)
    caps_used: tuple[int, int] = (0, 0)
    nonvanishing_checked_up_to: int = 0

    ORDER = ("biserial", "special", "bounded_above", "bounded_below", "arrow_direct", "nonvanishing")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def failures(self) -> list[str]:
        return [k for k in self.ORDER if k in self.conditions and not self.conditions[k].passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "caps_used": {"L": self.caps_used[0], "D": self.caps_used[1]},
            "nonvanishing_checked_up_to": self.nonvanishing_checked_up_to,
            "conditions": {k: self.conditions[k].to_json() for k in self.ORDER if k in self.conditions},
        }

    def format(self) -> str:
        lines = []
        for k in self.ORDER:
            if k not in self.conditions:
                continue
            c = self.conditions[k]
            extra = []
            if c.constants:
                extra.append(", ".join(f"{a}={b}" for a, b in c.constants.items()))
            if c.witness:
                extra.append("witness: " + ", ".join(f"{a}={b}" for a, b in c.witness.items()))
            if c.note:
                extra.append(c.note)
            tail = f" ({'; '.join(extra)})" if extra else ""
            lines.append(f"{k}: {c.verdict} [{c.kind}]{tail}")
        lines.append(f"caps: L={self.caps_used[0]} D={self.caps_used[1]}; "
                     f"nonvanishing checked below length {self.nonvanishing_checked_up_to}")
        lines.append("string algebra: " + ("yes" if self.passed else "no"))
        return "\n".join(lines)


def verify_string_algebra(q: Quiver, z: ZSet, model: Optional[CoefficientModel], caps: tuple[int, int],
                          ideal: Optional[IdealPresentation] = None) -> VerificationReport:
    from .algebra import ideal_generators
    from .primitives import enumerate_primitive_cycles, nerve_partition

    L, D = caps
    report = VerificationReport(caps_used=(L, D))
    ok, v = check_biserial(q)
    report.conditions["biserial"] = ConditionResult(
        PASS if ok else FAIL, "structural",
        witness=None if ok else {"vertex": q.vertex_names[v], "in": len(q.in_arrows(v)),
                                 "out": len(q.out_arrows(v))})
    sp = check_special_pair(q, z)
    if sp.special:
        report.conditions["special"] = ConditionResult(PASS, "structural")
    else:
        cond, b, a1, a2 = sp.witnesses[0]
        names = q.arrow_names
        report.conditions["special"] = ConditionResult(
            FAIL, "structural",
            witness={"condition": cond, "arrow": names[b], "extensions": [names[a1], names[a2]]},
            note=sp.describe_witness())
    if ideal is None and sp.special and model is not None:
        pcs = enumerate_primitive_cycles(q, z)
        ideal = ideal_generators(q, z, pcs, nerve_partition(pcs), model.with_degree_cap(D))
    report.conditions["bounded_above"] = check_bounded_above(z, ideal, L)
    if ideal is None:
        for k in ("bounded_below", "arrow_direct", "nonvanishing"):
            report.conditions[k] = ConditionResult(NA, "structural" if k == "bounded_below" else "precision",
                                                   note="needs a special pair")
        return report
    report.conditions["bounded_below"] = check_bounded_below(ideal, L)
    report.conditions["arrow_direct"] = check_arrow_direct(ideal, L)
    bound, failures = nonvanishing_sweep(ideal, L)
    report.nonvanishing_checked_up_to = bound
    report.conditions["nonvanishing"] = ConditionResult(
        FAIL if failures else PASS, "precision",
        witness={"path": q.format_path(failures[0])} if failures else None,
        constants={"checked_below_length": bound})
    return report
