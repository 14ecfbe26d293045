import pytest

from strandalg.fixtures import EXAMPLE_FIXTURES
from strandalg.quiver import iter_paths
from strandalg.report import peirce_report
from support import fixture


@pytest.fixture(scope="module")
def intro_report():
    inst = fixture("intro", (10, 10))
    return inst, peirce_report(inst.ideal(), 10)


def test_truncated_cycle_at_five(intro_report):
    inst, rep = intro_report
    q = inst.quiver
    v = q.vertex("5")
    pair = rep.pair(v, v)
    assert [q.format_path(b) for b in pair.basis] == ["e(5)", "c", "c*c"]
    assert pair.action == ()
    ring = rep.local_rings[v]
    assert ring.shape == "cycle" and not ring.periodic and ring.top_power == 2
    assert "k[c]/(c^3)" in ring.describe(inst.ideal())


def test_power_series_at_four(intro_report):
    inst, rep = intro_report
    q = inst.quiver
    v = q.vertex("4")
    pair = rep.pair(v, v)
    assert [q.format_path(b) for b in pair.basis[:3]] == ["e(4)", "b", "b*b"]
    t = inst.model.var_index("t")
    assert (t, 0, 1, "1") in pair.action
    assert rep.local_rings[v].periodic


def test_empty_pair(intro_report):
    inst, rep = intro_report
    q = inst.quiver
    assert rep.pair(q.vertex("5"), q.vertex("1")).basis == ()


@pytest.mark.parametrize("name", EXAMPLE_FIXTURES)
def test_basis_counts_match_brute_force(name):
    inst = fixture(name)
    L = min(inst.L, 9)
    rep = peirce_report(inst.ideal(), L)
    q = inst.quiver
    for pair in rep.pairs:
        count = sum(1 for p in iter_paths(q, L)
                    if p.head == pair.head and p.tail == pair.tail and inst.z.is_admissible(p))
        assert len(pair.basis) == count
    for v in range(q.num_vertices):
        if v not in inst.partition.primitive_vertices:
            assert rep.pair(v, v).action == ()


def test_json_schema(intro_report):
    inst, rep = intro_report
    data = rep.to_json()
    pair = data["pairs"][0]
    assert set(pair) >= {"from", "to", "basis", "s_action"}
    for act in (a for p in data["pairs"] for a in p["s_action"]):
        assert set(act) >= {"s", "from_basis_idx", "to_basis_idx"}
