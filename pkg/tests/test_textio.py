import pytest
from hypothesis import given
from hypothesis import strategies as st

from primfix.digraph import Digraph
from primfix.families import johnson
from primfix.jset import JSet
from primfix.permgroup import Permutation, PermutationGroup, symmetric_group
from primfix.textio import (FormatError, format_digraph, format_group, format_jset,
                            parse_digraph, parse_group, parse_jset, read_digraph, write_atomic)


def test_digraph_round_trip():
    g = johnson(6, 2, 1)
    text = format_digraph(g, "J(6,2,1)")
    assert text.startswith("# J(6,2,1)\ndigraph 15\n")
    assert len(text.strip().splitlines()) == 2 + 120
    assert parse_digraph(text) == g


@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_digraph_round_trip_random(data):
    n, arcs = data
    g = Digraph.from_arcs(n, arcs)
    assert parse_digraph(format_digraph(g)) == g


def test_comments_and_blank_lines():
    text = "# header\n\ndigraph 3  # three vertices\n0 1\n\n# arc\n2 0\n"
    assert parse_digraph(text).arcs() == [(0, 1), (2, 0)]


@pytest.mark.parametrize("text", [
    "graph 3\n", "digraph\n", "digraph 2\n0 2\n", "digraph 2\n0\n", "digraph x\n", "",
])
def test_bad_digraph(text):
    with pytest.raises(FormatError):
        parse_digraph(text)


def test_group_round_trip():
    g = symmetric_group(4)
    parsed = parse_group(format_group(g))
    assert parsed.generators == g.generators
    assert parsed.order == 24


def test_bad_group():
    with pytest.raises(FormatError):
        parse_group("permgroup 3 2\n1 2 0\n")
    with pytest.raises(FormatError):
        parse_group("permgroup 3 1\n1 1 0\n")
    with pytest.raises(FormatError):
        parse_group("permgroup 3 1\n1 0\n")


def test_jset_round_trip():
    j = JSet.of(2, 2, [(2, 0), (0, 1)])
    text = format_jset(j)
    assert text == "jset 2 2\n0 1\n2 0\n"
    assert parse_jset(text) == j
    with pytest.raises(FormatError):
        parse_jset("jset 2 1\n0 2\n")


def test_write_atomic(tmp_path):
    path = tmp_path / "g.dg"
    write_atomic(str(path), format_digraph(johnson(5, 2, 1)))
    assert read_digraph(str(path)) == johnson(5, 2, 1)
    assert [p.name for p in tmp_path.iterdir()] == ["g.dg"]


def test_group_with_identity_generator():
    g = PermutationGroup(3, [Permutation([1, 2, 0])])
    assert parse_group(format_group(g)).order == 3
