"""Assemble a quiver, its relations, coefficient model and ideal from a spec file."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .algebra import IdealPresentation, default_caps, ideal_generators
from .coefficients import CoefficientModel
from .dsl import SpecFile, parse_spec
from .primitives import NervePartition, PrimitiveCycleSet, enumerate_primitive_cycles, nerve_partition
from .quiver import Quiver
from .relations import SpecialPairData, ZSet, check_special_pair

CAPS_ENV = "STRANDALG_CAPS"


def parse_caps(text: str) -> tuple[int, int]:
    try:
        L, D = (int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"caps must look like 'L,D', got {text!r}") from None
    if L < 1 or D < 0:
        raise ValueError("caps need L >= 1 and D >= 0")
    return L, D


@dataclass
class Instance:
    spec: SpecFile
    quiver: Quiver
    z: ZSet
    special: SpecialPairData
    pcs: Optional[PrimitiveCycleSet]
    partition: Optional[NervePartition]
    model: Optional[CoefficientModel]
    L: int
    D: int

    def ideal(self) -> IdealPresentation:
        if self.pcs is None:
            from .primitives import NonSpecialError
            raise NonSpecialError("(Q, Z) is not special: " + (self.special.describe_witness() or ""))
        return ideal_generators(self.quiver, self.z, self.pcs, self.partition, self.model)


def resolve_caps(spec: SpecFile, q: Quiver, z: ZSet, override: Optional[tuple[int, int]] = None):
    """Explicit override, then the environment, then the spec file, then the defaults."""
    if override is not None:
        return override
    env = os.environ.get(CAPS_ENV)
    if env:
        return parse_caps(env)
    L, D = default_caps(q, z)
    if spec.model is not None:
        L = spec.model.L if spec.model.L is not None else L
        D = spec.model.D if spec.model.D is not None else D
    return L, D


def build(spec: SpecFile, caps: Optional[tuple[int, int]] = None) -> Instance:
    q = spec.quiver()
    z = spec.zset(q)
    special = check_special_pair(q, z)
    L, D = resolve_caps(spec, q, z, caps)
    pcs = partition = model = None
    if special.special:
        pcs = enumerate_primitive_cycles(q, z)
        partition = nerve_partition(pcs)
        m = spec.model
        if m is None or not m.names:
            kind = m.kind if m else "equal"
            char = m.characteristic if m else 0
            names = tuple(f"s{i + 1}" for i in range(partition.n))
            if kind == "mixed" and names:
                names = ("p",) + names[1:]
            model = CoefficientModel(kind, char, names, D)
        else:
            model = CoefficientModel(m.kind, m.characteristic, m.names, D)
    return Instance(spec, q, z, special, pcs, partition, model, L, D)


def load(text: str, caps: Optional[tuple[int, int]] = None) -> Instance:
    return build(parse_spec(text), caps)
