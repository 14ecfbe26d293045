"""Shared builders for the tests: fixture instances and random special pairs."""

from __future__ import annotations

import random
from functools import lru_cache

from strandalg import load
from strandalg.fixtures import EXAMPLE_FIXTURES, fixture_text
from strandalg.quiver import Path, Quiver
from strandalg.relations import ZSet

EQUAL_FIXTURES = ("intro_equal", "running_equal", "dvr1", "dvr2", "dvr3", "dvr4", "dvr5")


@lru_cache(maxsize=None)
def fixture(name: str, caps=None):
    return load(fixture_text(name), caps)


def paths_by_name(q: Quiver, names) -> set[Path]:
    return {q.parse_path(n) for n in names}


def random_biserial_quiver(rng: random.Random, max_vertices: int = 5, max_arrows: int = 9) -> Quiver:
    nv = rng.randint(1, max_vertices)
    outdeg = [0] * nv
    indeg = [0] * nv
    arrows = []
    for i in range(rng.randint(1, max_arrows)):
        t, h = rng.randrange(nv), rng.randrange(nv)
        if outdeg[t] < 2 and indeg[h] < 2:
            outdeg[t] += 1
            indeg[h] += 1
            arrows.append((f"a{i}", str(t), str(h)))
    return Quiver.from_names([str(v) for v in range(nv)], arrows)


def random_special_pair(rng: random.Random, max_vertices: int = 5, max_arrows: int = 9,
                        extra_relations: bool = True) -> tuple[Quiver, ZSet]:
    """Start from all length-2 paths and free a random partial matching of arrow pairs.

    A pair ``(a, b)`` with ``t(a) = h(b)`` is freed (``ab`` leaves Z) only when
    ``b`` has no freed successor and ``a`` no freed predecessor yet, which is
    exactly what SP1 and SP2 ask for.  Longer relations may be added on top.
    """
    q = random_biserial_quiver(rng, max_vertices, max_arrows)
    pairs = [(a, b) for b in range(q.num_arrows) for a in q.out_arrows(q.heads[b])]
    rng.shuffle(pairs)
    has_left: set[int] = set()
    has_right: set[int] = set()
    freed = set()
    for a, b in pairs:
        if rng.random() < 0.8 and b not in has_left and a not in has_right:
            freed.add((a, b))
            has_left.add(b)
            has_right.add(a)
    rels = [q.path((a, b)) for a, b in pairs if (a, b) not in freed]
    if extra_relations and freed:
        succ = {b: a for a, b in freed}
        for _ in range(rng.randint(0, 2)):
            b = rng.choice(sorted(succ))
            word = [b]
            for _ in range(rng.randint(2, 5)):
                nxt = succ.get(word[0])
                if nxt is None:
                    break
                word.insert(0, nxt)
            if len(word) >= 3:
                rels.append(q.path(word))
    return q, ZSet(q, rels)
