import pytest
from hypothesis import given, strategies as st

from strandalg.quiver import (CompositionError, Path, Quiver, QuiverError, compose, is_subpath, iter_paths,
                              power, proper_power_root, rotations, traversed_vertices)
from support import fixture


@pytest.fixture(scope="module")
def intro():
    return fixture("intro").quiver


@pytest.fixture(scope="module")
def running():
    return fixture("running").quiver


def test_compose_trivial_identity(intro):
    e = intro.trivial(intro.vertex("1"))
    assert compose(e, e) == e


def test_compose_concatenates_right_to_left(intro):
    x, a = intro.parse_path("x"), intro.parse_path("a")
    xa = compose(x, a)
    assert intro.format_path(xa) == "x*a"
    assert (xa.head, xa.tail) == (intro.vertex("2"), intro.vertex("1"))
    assert len(xa) == 2


def test_compose_builds_cycle(intro):
    xy = compose(intro.parse_path("x"), intro.parse_path("y"))
    assert xy.is_cycle and xy.head == intro.vertex("2")


def test_compose_rejects_non_composable(intro):
    with pytest.raises(CompositionError):
        compose(intro.parse_path("a"), intro.parse_path("x*a"))


def test_parse_path_rejects_non_consecutive(intro):
    with pytest.raises(QuiverError):
        intro.parse_path("x*w")


def test_is_subpath(intro):
    assert is_subpath(intro.parse_path("a*a"), intro.parse_path("a*y*x")) == []
    assert is_subpath(intro.parse_path("x*y"), intro.parse_path("x*a*y")) == []
    assert is_subpath(intro.parse_path("x*y"), intro.parse_path("x*y")) == [0]


def test_is_subpath_loop_windows():
    q = Quiver.from_names(["1"], [("c", "1", "1")])
    c = q.parse_path("c")
    assert is_subpath(c, power(c, 3)) == [0, 1, 2]


def test_is_subpath_trivial_needs_vertices(intro):
    p = intro.parse_path("x*a")
    assert is_subpath(intro.trivial(intro.vertex("1")), p, intro) == [1, 2]


def test_rotations(intro):
    got = {intro.format_path(r) for r in rotations(intro, intro.parse_path("a*y*x"))}
    assert got == {"a*y*x", "y*x*a", "x*a*y"}
    assert rotations(intro, intro.parse_path("b")) == {intro.parse_path("b")}


def test_rotations_of_square():
    q = Quiver.from_names(["1", "2"], [("a", "2", "1"), ("b", "1", "2")])
    got = {q.format_path(r) for r in rotations(q, q.parse_path("a*b*a*b"))}
    assert got == {"a*b*a*b", "b*a*b*a"}


def test_traversed_vertices(running):
    def names(s):
        return {running.vertex_names[v] for v in traversed_vertices(running, running.parse_path(s))}
    assert names("a5*b1") == {"1", "2"}
    assert names("b3*a1*z") == {"5", "6"}
    assert names("x") == {"1"}
    with pytest.raises(QuiverError):
        traversed_vertices(running, running.trivial(0))


def test_proper_power_root(intro):
    assert proper_power_root(intro.parse_path("b")) is None
    assert proper_power_root(intro.parse_path("a*y*x")) is None
    q = Quiver.from_names(["1", "2"], [("a", "2", "1"), ("b", "1", "2")])
    root, k = proper_power_root(q.parse_path("a*b*a*b"))
    assert (q.format_path(root), k) == ("a*b", 2)


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver.from_names(["1"], [("a", "1", "2")])
    with pytest.raises(QuiverError):
        Quiver.from_names(["1", "1"], [])
    with pytest.raises(QuiverError):
        Quiver.from_names(["1"], [("a", "1", "1"), ("a", "1", "1")])
    empty = Quiver.from_names([], [])
    assert list(iter_paths(empty, 5)) == []


# -- properties -------------------------------------------------------------

_paths = [p for p in iter_paths(fixture("running").quiver, 5) if not p.is_trivial]


@given(st.sampled_from(_paths), st.sampled_from(_paths), st.sampled_from(_paths))
def test_composition_is_associative(p, q, r):
    if p.tail == q.head and q.tail == r.head:
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(st.sampled_from(_paths), st.sampled_from(_paths))
def test_traversed_vertices_of_product(p, q):
    quiver = fixture("running").quiver
    if p.tail == q.head:
        assert traversed_vertices(quiver, compose(p, q)) == (traversed_vertices(quiver, p)
                                                             | traversed_vertices(quiver, q))


_cycles = [p for p in iter_paths(fixture("running").quiver, 7) if p.is_cycle]


@given(st.sampled_from(_cycles))
def test_rotation_closure(c):
    quiver = fixture("running").quiver
    rots = rotations(quiver, c)
    assert len(c) % len(rots) == 0
    for r in rots:
        assert rotations(quiver, r) == rots
        assert sorted(r.word) == sorted(c.word)


@given(st.sampled_from(_cycles), st.integers(2, 4))
def test_proper_power_root_recovers_root(c, k):
    root = proper_power_root(c)
    d, m = (c, 1) if root is None else root
    got = proper_power_root(power(c, k))
    assert got == (d, m * k)
