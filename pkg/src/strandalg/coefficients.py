"""Truncated models of a regular local ring ``(R, m, k)``.

Two models are provided, both presented as ``R / m^(D+1)``:

* ``equal``: ``k[s_1, ..., s_n]`` truncated at total degree ``D`` with
  ``k = F_p`` or ``k = Q`` (characteristic 0).
* ``mixed``: ``s_1 = p`` and the remaining ``s_2, ..., s_n`` are variables
  over ``Z``; a monomial ``p^a s^b`` survives iff ``a + |b| <= D``, so the
  integer part of a monomial of degree ``|b|`` lives in ``Z / p^(D+1-|b|)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class CoefficientModel:
    def __init__(self, kind: str, characteristic: int, names: Iterable[str], degree_cap: int):
        names = tuple(names)
        if kind not in ("equal", "mixed"):
            raise ValueError(f"unknown coefficient model kind {kind!r}")
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError("characteristic must be 0 or a prime")
        if kind == "mixed":
            if characteristic == 0:
                raise ValueError("the mixed model needs a prime p (s_1 = p)")
            if not names:
                raise ValueError("the mixed model needs s_1 = p, so n >= 1")
        if len(set(names)) != len(names):
            raise ValueError("duplicate s-variable names")
        if degree_cap < 0:
            raise ValueError("degree cap must be non-negative")
        self.kind = kind
        self.characteristic = characteristic
        self.names = names
        self.degree_cap = degree_cap

    def __repr__(self):
        return (f"CoefficientModel({self.kind!r}, {self.characteristic}, "
                f"{self.names!r}, degree_cap={self.degree_cap})")

    def __eq__(self, other):
        return (isinstance(other, CoefficientModel) and self.kind == other.kind
                and self.characteristic == other.characteristic
                and self.names == other.names and self.degree_cap == other.degree_cap)

    def __hash__(self):
        return hash((self.kind, self.characteristic, self.names, self.degree_cap))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def is_mixed(self) -> bool:
        return self.kind == "mixed"

    def with_degree_cap(self, degree_cap: int) -> "CoefficientModel":
        return CoefficientModel(self.kind, self.characteristic, self.names, degree_cap)

    def describe(self) -> str:
        if self.is_mixed:
            rest = ",".join(self.names[1:])
            return f"Z_{self.characteristic}[[{rest}]] with s1={self.names[0]}" if rest else \
                f"Z_{self.characteristic} with s1={self.names[0]}"
        field = "Q" if self.characteristic == 0 else f"F_{self.characteristic}"
        return f"{field}[[{','.join(self.names)}]]" if self.names else field

    # -- scalar arithmetic ------------------------------------------------

    def _modulus(self, exps: tuple[int, ...]):
        """Modulus for the scalar of a monomial, or None when the field is Q."""
        if self.is_mixed:
            return self.characteristic ** (self.degree_cap + 1 - sum(exps))
        return self.characteristic or None

    def _degree(self, exps: tuple[int, ...]) -> int:
        return sum(exps)

    def _norm_scalar(self, value: Scalar, exps: tuple[int, ...]) -> Scalar:
        mod = self._modulus(exps)
        if mod is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % (self.characteristic or 1) == 0 and value.denominator != 1:
                raise ZeroDivisionError(f"{value} is not defined in characteristic {self.characteristic}")
            return value.numerator * pow(value.denominator, -1, mod) % mod
        return value % mod

    def element(self, terms: dict) -> "Coefficient":
        out = {}
        for exps, value in terms.items():
            exps = tuple(exps)
            if len(exps) != self.n:
                raise ValueError("monomial has the wrong number of variables")
            if self._degree(exps) > self.degree_cap:
                continue
            if self.is_mixed and exps[0]:
                value = value * self.characteristic ** exps[0]
                exps = (0,) + exps[1:]
                if self._degree(exps) > self.degree_cap:
                    continue
            value = self._norm_scalar(value, exps)
            if exps in out:
                value = self._norm_scalar(out[exps] + value, exps)
            if value:
                out[exps] = value
            else:
                out.pop(exps, None)
        return Coefficient(self, tuple(sorted(out.items())))

    def zero(self) -> "Coefficient":
        return Coefficient(self, ())

    def const(self, value: Scalar) -> "Coefficient":
        return self.element({(0,) * self.n: value})

    def one(self) -> "Coefficient":
        return self.const(1)

    def var(self, i: int, exponent: int = 1) -> "Coefficient":
        exps = [0] * self.n
        exps[i] = exponent
        return self.element({tuple(exps): 1})

    def var_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown s-variable {name!r}") from None

    def digits(self, value: int, exps: tuple[int, ...]) -> list[tuple[int, int]]:
        """p-adic digits ``(m, d)`` of a mixed-model scalar, ``d`` in ``0..p-1``."""
        p = self.characteristic
        out = []
        m = 0
        limit = self.degree_cap - sum(exps)
        while value and m <= limit:
            value, d = divmod(value, p)
            if d:
                out.append((m, d))
            m += 1
        return out

    def residue_scalar(self, value: Scalar) -> Scalar:
        """Representative of a scalar in the residue field k."""
        if self.characteristic == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return self._norm_scalar(value, (0,) * self.n) % self.characteristic
        return value % self.characteristic


class Coefficient:
    """An element of a truncated model; terms are sorted and zero-free."""

    __slots__ = ("model", "terms", "_hash")

    def __init__(self, model: CoefficientModel, terms: tuple):
        self.model = model
        self.terms = terms
        self._hash = None

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.terms == other.terms and self.model == other.model
        if isinstance(other, (int, Fraction)):
            return self == self.model.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Coefficient":
        if isinstance(other, Coefficient):
            if other.model != self.model:
                raise ValueError("coefficients from different models")
            return other
        return self.model.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc: dict = dict(self.terms)
        for exps, v in other.terms:
            acc[exps] = acc.get(exps, 0) + v
        return self.model.element(acc)

    __radd__ = __add__

    def __neg__(self):
        return self.model.element({e: -v for e, v in self.terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = {}
        cap = self.model.degree_cap
        for e1, v1 in self.terms:
            d1 = sum(e1)
            for e2, v2 in other.terms:
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + v1 * v2
        return self.model.element(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.model.one()
        for _ in range(k):
            out = out * self
        return out

    def constant_term(self) -> Scalar:
        for exps, v in self.terms:
            if not any(exps):
                return v
        return 0

    def order(self) -> int:
        """m-adic order; ``degree_cap + 1`` for zero."""
        if not self.terms:
            return self.model.degree_cap + 1
        best = self.model.degree_cap + 1
        for exps, v in self.terms:
            d = sum(exps)
            if self.model.is_mixed:
                while v % self.model.characteristic == 0 and v:
                    v //= self.model.characteristic
                    d += 1
            best = min(best, d)
        return best

    def __repr__(self):
        return f"Coefficient({format_coefficient(self)})"

    def __str__(self):
        return format_coefficient(self)


def _format_scalar(model: CoefficientModel, v: Scalar, exps) -> str:
    if model.characteristic == 0:
        return str(v)
    mod = model._modulus(exps)
    # symmetric representative reads better for -1 and friends
    if v > mod // 2:
        return str(v - mod)
    return str(v)


def format_coefficient(c: Coefficient) -> str:
    if not c.terms:
        return "0"
    parts = []
    for exps, v in c.terms:
        mono = "*".join(n if e == 1 else f"{n}^{e}"
                        for n, e in zip(c.model.names, exps) if e)
        s = _format_scalar(c.model, v, exps)
        if not mono:
            parts.append(s)
        elif s == "1":
            parts.append(mono)
        elif s == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{s}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
