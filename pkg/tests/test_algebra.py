import random

import pytest
from hypothesis import given, settings, strategies as st

from strandalg.algebra import (AlgebraElement, DimensionMismatch, TransportMismatch, ideal_generators,
                               ideal_membership, multiply, one_sided_transport, reduce, sigma, z_only_ideal)
from strandalg.coefficients import CoefficientModel
from strandalg.fixtures import EXAMPLE_FIXTURES
from strandalg.primitives import enumerate_primitive_cycles, nerve_partition
from strandalg.quiver import Quiver
from strandalg.relations import ZSet, admissible_paths
from support import fixture


def elem(inst, text, L=None):
    from strandalg.dsl import parse_element
    return parse_element(text, inst.quiver, inst.model, L or inst.L)


def terms(x):
    return {x.quiver.format_path(p): str(c) for p, c in x.terms.items()}


def test_sigma_examples():
    inst = fixture("intro")
    q = inst.quiver
    assert terms(sigma(q.vertex("2"), inst.pcs, inst.model, 10)) == {"x*a*y": "1", "z*w": "1"}
    assert terms(sigma(q.vertex("4"), inst.pcs, inst.model, 10)) == {"b": "1"}
    assert sigma(q.vertex("5"), inst.pcs, inst.model, 10).is_zero()


def generator_strings(ideal):
    return ideal.generator_strings()


def test_ideal_generators_intro():
    inst = fixture("intro")
    g = inst.ideal().generator_strings()
    assert g["relations"] == sorted(["a*a", "x*y", "w*x", "y*z", "z*f", "f*b", "b*g", "g*c", "c*c*c"])
    assert set(g["v_generators"]) == {("p", "1", ("a*y*x", "y*x*a")), ("p", "2", ("x*a*y", "z*w")),
                                      ("p", "3", ("w*z",)), ("t", "4", ("b",))}
    assert set(g["notv_generators"]) == {("t", "1"), ("t", "2"), ("t", "3"), ("t", "5"),
                                         ("p", "4"), ("p", "5")}


def test_ideal_generators_running():
    g = fixture("running").ideal().generator_strings()
    assert ("p", "1", ("a5*b1", "x")) in g["v_generators"]
    assert ("t", "4", ("a2*b2",)) in g["v_generators"]


def test_ideal_generators_without_primitive_cycles():
    q = Quiver.from_names(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    z = ZSet(q, [q.parse_path("a*b"), q.parse_path("b*a")])
    pcs = enumerate_primitive_cycles(q, z)
    model = CoefficientModel("equal", 0, [], 4)
    ideal = ideal_generators(q, z, pcs, nerve_partition(pcs), model)
    assert ideal.v_generators == () and ideal.notv_generators == ()
    # with n = 0 the not-V list is empty because there is no s_i at all


def test_dimension_mismatch():
    inst = fixture("intro")
    with pytest.raises(DimensionMismatch):
        ideal_generators(inst.quiver, inst.z, inst.pcs, inst.partition,
                         CoefficientModel("equal", 3, ["s"], 4))


def test_multiply_examples():
    inst = fixture("intro_equal")
    q = inst.quiver
    e1 = AlgebraElement.idempotent(q, inst.model, 10, q.vertex("1"))
    e2 = AlgebraElement.idempotent(q, inst.model, 10, q.vertex("2"))
    assert multiply(e1, e2).is_zero()
    assert terms(elem(inst, "x") * elem(inst, "a")) == {"x*a": "1"}


def test_multiply_difference_of_squares():
    inst = fixture("intro_equal", (7, 2))
    q, m = inst.quiver, inst.model
    s = m.var(0)
    e1 = AlgebraElement.idempotent(q, m, 7, q.vertex("1"), s)
    sig = sigma(q.vertex("1"), inst.pcs, m, 7)
    lhs = multiply(e1 - sig, e1 + sig)
    rhs = AlgebraElement.idempotent(q, m, 7, q.vertex("1"), s * s) - multiply(sig, sig)
    assert lhs == rhs
    assert len(multiply(sig, sig).terms) == 4


def test_reduce_examples():
    inst = fixture("intro")
    ideal = inst.ideal()
    assert terms(reduce(elem(inst, "p*e(1)"), ideal)) == {"a*y*x": "1", "y*x*a": "1"}
    assert reduce(elem(inst, "t*e(5)"), ideal).is_zero()
    for k in range(1, 8):
        assert terms(reduce(elem(inst, f"t^{k}*e(4)"), ideal)) == {"*".join("b" * k): "1"}
    for r in inst.z:
        assert reduce(AlgebraElement.from_path(inst.quiver, inst.model, inst.L, r), ideal).is_zero()


def test_reduce_mixed_digits():
    inst = fixture("intro")
    ideal = inst.ideal()
    # 5 = 2 + 1*3 so 5*e(1) = 2*e(1) + sigma_1
    assert terms(reduce(elem(inst, "5*e(1)"), ideal)) == {"e(1)": "2", "a*y*x": "1", "y*x*a": "1"}
    # p at vertex 4 lies in the ideal, so only the residue of -1 survives
    assert terms(reduce(elem(inst, "-e(4)"), ideal)) == {"e(4)": "2"}


def test_reduce_respects_degree_cap_on_cycle_depth():
    inst = fixture("intro", (20, 2))
    ideal = inst.ideal()
    # b^3 = t^3 e(4), which is past D = 2
    assert reduce(elem(inst, "path(b^3)"), ideal).is_zero()
    assert not reduce(elem(inst, "path(b^2)"), ideal).is_zero()


def test_reduce_cycle_powers_with_two_cycles_at_a_vertex():
    # at vertex 1 of dvr2 both loops a and b are primitive, so a^4 = pi^3 a, not pi^4 e(1)
    inst = fixture("dvr2", (6, 3))
    ideal = inst.ideal()
    assert terms(reduce(elem(inst, "path(a^4)"), ideal)) == {"b*b*b*b": "-1"}
    assert reduce(elem(inst, "path(a^4) + path(b^4)"), ideal).is_zero()
    assert not reduce(elem(inst, "path(b^4)"), ideal).is_zero()
    assert reduce(elem(inst, "path(a^5)"), ideal).is_zero()
    # in dvr5 the partner power (b*c)^4 is past the length cap, so a^4 vanishes outright
    inst = fixture("dvr5", (6, 3))
    assert reduce(elem(inst, "path(a^4)"), inst.ideal()).is_zero()
    assert reduce(elem(inst, "path(a^4)"), inst.ideal(), orientation="right").is_zero()


def test_membership_examples():
    for name in EXAMPLE_FIXTURES:
        inst = fixture(name)
        ideal = inst.ideal()
        for p in admissible_paths(inst.quiver, inst.z, inst.L):
            assert not ideal_membership(AlgebraElement.from_path(inst.quiver, inst.model, inst.L, p), ideal)
        for g in ideal.generators(inst.L):
            assert ideal_membership(g, ideal)


def test_one_sided_transport():
    inst = fixture("intro")
    q, ideal = inst.quiver, inst.ideal()
    s = inst.model.var(0)
    v = q.vertex("1")
    e = q.trivial(v)
    nf = one_sided_transport(s, v, e, e, ideal, 12)
    assert nf == reduce(AlgebraElement.idempotent(q, inst.model, 12, v, s)
                        - sigma(v, inst.pcs, inst.model, 12), z_only_ideal(q, inst.z, inst.pcs, inst.model))
    one_sided_transport(s, v, q.parse_path("x"), e, ideal, 12)
    run = fixture("running")
    rq = run.quiver
    one_sided_transport(run.model.var(0), rq.vertex("1"), rq.parse_path("b1"), rq.trivial(rq.vertex("1")),
                        run.ideal(), 12)
    with pytest.raises(ValueError):
        one_sided_transport(s, v, q.parse_path("y"), e, ideal, 12)


def test_transport_mismatch_is_detected():
    # sigma_2 with one cycle dropped breaks the identity
    inst = fixture("intro")
    ideal = inst.ideal()
    from strandalg.primitives import _make_pcs
    q = inst.quiver
    broken = _make_pcs(q, [c for c in inst.pcs.cycles if q.format_path(c) != "z*w"])
    import dataclasses
    bad = dataclasses.replace(ideal, pcs=broken)
    with pytest.raises(TransportMismatch):
        one_sided_transport(inst.model.var(0), q.vertex("2"), q.parse_path("w"), q.trivial(q.vertex("2")),
                            bad, 12)


# -- properties over every fixture ------------------------------------------

def random_element(inst, rng, L, size=4):
    q, m = inst.quiver, inst.model
    paths = list(admissible_paths(q, inst.z, L)) + list(inst.z)
    out = {}
    for _ in range(size):
        exps = [0] * m.n
        for _ in range(rng.randint(0, 2)):
            exps[rng.randrange(m.n)] += 1
        out[rng.choice(paths)] = m.element({tuple(exps): rng.randint(-9, 9)})
    return AlgebraElement(q, m, L, out)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(EXAMPLE_FIXTURES), st.integers(0, 10 ** 6))
def test_reduce_properties(name, seed):
    inst = fixture(name)
    ideal = inst.ideal()
    rng = random.Random(seed)
    L = min(inst.L, 14)
    x, y = random_element(inst, rng, L), random_element(inst, rng, L)
    nx = reduce(x, ideal)
    assert all(inst.z.is_admissible(p) for p in nx.terms)
    assert reduce(nx, ideal) == nx
    if inst.model.is_mixed:
        assert reduce(nx + reduce(y, ideal), ideal) == reduce(x + y, ideal)
    else:
        assert nx + reduce(y, ideal) == reduce(x + y, ideal)
    assert reduce(x, ideal, orientation="right") == nx
    assert reduce(x, ideal, order="random", rng=rng) == nx
    # normal-form coefficients are residue-field representatives
    for coef in nx.terms.values():
        for exps, val in coef.terms:
            assert not any(exps)
            if inst.model.characteristic:
                assert 0 < val < inst.model.characteristic


@pytest.mark.parametrize("name", EXAMPLE_FIXTURES)
def test_swap_lemma(name):
    inst = fixture(name)
    q = inst.quiver
    zonly = z_only_ideal(q, inst.z, inst.pcs, inst.model)
    L = 2 * inst.pcs.max_length() + 2
    for c in inst.pcs.cycles:
        a = AlgebraElement.from_path(q, inst.model, L, q.arrow_path(c.left_arrow))
        C = AlgebraElement.from_path(q, inst.model, L, c)
        hits = [d for d in inst.pcs.cycles
                if reduce(C * a - a * AlgebraElement.from_path(q, inst.model, L, d), zonly).is_zero()]
        assert len(hits) == 1


@pytest.mark.parametrize("name", EXAMPLE_FIXTURES)
def test_sigma_commutes_modulo_z(name):
    inst = fixture(name)
    q, m = inst.quiver, inst.model
    zonly = z_only_ideal(q, inst.z, inst.pcs, m)
    L = inst.L
    for p in admissible_paths(q, inst.z, 8):
        P = AlgebraElement.from_path(q, m, L, p)
        x = P * sigma(p.tail, inst.pcs, m, L) - sigma(p.head, inst.pcs, m, L) * P
        assert ideal_membership(x, zonly)
