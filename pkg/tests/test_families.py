import math

import pytest

from primfix.autsearch import automorphism_group
from primfix.digraph import (complete_graph, is_connected, loop_graph, out_valency,
                             srg_parameters)
from primfix.errors import NotHomogeneous
from primfix.families import (Family, FamilyDescriptor, construct, generalized_hamming,
                              half_partitions, hamming_descriptor, hamming_graph, johnson,
                              johnson_descriptor, johnson_family, k_subsets,
                              merged_product_action, orbital_digraphs, orbital_digraphs_wreath,
                              orbitals_match, squashed_descriptor, squashed_family,
                              squashed_johnson, sym_on_half_partitions, sym_on_subsets, vertex_count)
from primfix.jset import JSet
from primfix.permgroup import (cyclic_group, symmetric_group, trivial_group,
                               wreath_product_action)


def test_k_subsets_colex():
    assert k_subsets(4, 2) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    assert len(half_partitions(4)) == 35
    assert all(s[0] == 1 for s in half_partitions(3))


@pytest.mark.parametrize("m, k, i, valency", [
    (6, 2, 1, 8), (6, 2, 2, 6), (7, 3, 1, 12), (7, 3, 3, 4), (5, 2, 0, 1),
])
def test_johnson_valency(m, k, i, valency):
    g = johnson(m, k, i)
    assert g.n == math.comb(m, k)
    assert out_valency(g) == valency


def test_johnson_partition():
    fam = johnson_family(6, 2)
    assert fam[0] == loop_graph(15)
    total = sum(g.arc_count for g in fam)
    assert total == 15 * 15


def test_johnson_srg():
    assert srg_parameters(johnson(6, 2, 1)) == (15, 8, 4, 4)
    assert srg_parameters(johnson(5, 2, 2)) == (10, 3, 0, 1)


def test_squashed():
    g = squashed_johnson(8, 4, 1)
    assert g.n == 35 and out_valency(g) == 16
    assert squashed_johnson(8, 4, 1) == squashed_johnson(8, 4, 3)
    assert out_valency(squashed_johnson(8, 4, 2)) == 18
    fam = squashed_family(4)
    assert len(fam) == 3 and sum(g.arc_count for g in fam) == 35 * 35


def test_squashed_aut_is_sym8():
    assert automorphism_group(squashed_johnson(8, 4, 1)).order == math.factorial(8)


def test_induced_actions_are_automorphisms():
    g = johnson(6, 2, 1)
    grp = sym_on_subsets(6, 2)
    assert grp.order == 720
    assert all(g.is_automorphism(h) for h in grp.generators)
    q = squashed_johnson(8, 4, 1)
    assert all(q.is_automorphism(h) for h in sym_on_half_partitions(4).generators)


def test_hamming_graph():
    g = hamming_graph(2, 4)
    assert g.n == 16 and out_valency(g) == 6
    assert srg_parameters(g) == (16, 6, 2, 2)
    assert hamming_graph(1, 5) == complete_graph(5)


def test_generalized_hamming_requires_homogeneous():
    with pytest.raises(NotHomogeneous):
        generalized_hamming(2, 3, JSet.of(2, 1, [(1, 0)]))


def test_generalized_hamming_direct_product():
    g = generalized_hamming(2, 3, JSet.of(2, 1, [(1, 1)]))
    assert out_valency(g) == 4


def test_merged_product_validation():
    k3 = complete_graph(3)
    with pytest.raises(ValueError):
        merged_product_action(1, [k3, k3], JSet.of(1, 1, [(1,)]))
    with pytest.raises(ValueError):
        merged_product_action(2, [loop_graph(3), k3], JSet.of(1, 1, [(1,)]))
    with pytest.raises(IndexError):
        merged_product_action(1, [loop_graph(3), k3], JSet.of(1, 2, [(2,)]))


def test_orbital_digraphs_wreath_sym4_sym2():
    ks = [loop_graph(4), complete_graph(4)]
    predicted = orbital_digraphs_wreath(ks, symmetric_group(2))
    assert [g.arc_count for g in predicted] == [16, 96, 144]
    w = wreath_product_action(symmetric_group(4), symmetric_group(2))
    assert orbitals_match(w.group, ks, symmetric_group(2))


def test_orbitals_match_with_trivial_top():
    ks = [loop_graph(3), complete_graph(3)]
    w = wreath_product_action(symmetric_group(3), trivial_group(2))
    assert orbitals_match(w.group, ks, trivial_group(2))
    # the wrong top group predicts a coarser partition
    assert not orbitals_match(w.group, ks, symmetric_group(2))


def test_orbitals_match_cyclic_inner():
    c5 = cyclic_group(5)
    ks = orbital_digraphs(c5)
    w = wreath_product_action(c5, cyclic_group(2))
    assert orbitals_match(w.group, ks, cyclic_group(2))


def test_descriptor_validation_and_construct():
    d = johnson_descriptor(6, 2, [1])
    assert construct(d) == johnson(6, 2, 1)
    assert vertex_count(d) == 15
    assert d.in_theorem_range()
    assert not hamming_descriptor(2, 3).in_theorem_range()
    with pytest.raises(ValueError):
        FamilyDescriptor(Family.JOHNSON, 1, 6, JSet.of(1, 1, [(1,)]), k=2)
    q = squashed_descriptor(4, [1])
    assert construct(q) == squashed_johnson(8, 4, 1)


def test_johnson_product_r2():
    d = johnson_descriptor(5, 2, jset=JSet.of(2, 2, [(1, 0), (0, 1)]), r=2)
    g = construct(d)
    assert g.n == 100 and out_valency(g) == 12
    assert is_connected(g)
