from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hypermaps import maps
from hypermaps.peeling import peel
from hypermaps.spectral import HypermapWeights

from oracle_helpers import bipartite_mismatches, eulerian_T_mismatches, mixed_eulerian_mismatches, \
    semi_simple_B_mismatches


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- permutation encodings ----------------------------------------------------------

def test_cycles_and_composition():
    assert maps.cycles([1, 2, 0, 3]) == [(0, 1, 2), (3,)]
    assert maps.compose_perm([1, 0, 2], [0, 2, 1]) in ([1, 2, 0], [2, 0, 1])
    assert maps.is_transitive([1, 0, 3, 2], [0, 2, 1, 3])
    assert not maps.is_transitive([1, 0, 3, 2], [1, 0, 3, 2])


@pytest.mark.parametrize("E,expected", [(1, (2, 2)), (2, (18, 9)), (3, (432, 54))])
def test_rotation_systems(E, expected):
    assert maps.rooted_maps_by_rotations(E) == expected


@pytest.mark.parametrize("E,expected", [(1, (2, 2)), (2, (54, 9))])
def test_permutation_pairs(E, expected):
    assert maps.rooted_maps_by_pairs(E) == expected


@pytest.mark.parametrize("E,expected", [(1, 2), (2, 9), (3, 54), (4, 378)])
def test_plain_rooted_maps_gluing(E, expected):
    # 2 * 3^E * (2E)! / (E! (E+2)!)
    assert maps.plain_rooted_maps(E) == expected == 2 * 3 ** E * comb(2 * E, E) // ((E + 1) * (E + 2))


# -- Eulerian triangulations ----------------------------------------------------------

@pytest.mark.parametrize("r", [1, 2, 3])
def test_no_inner_faces_gives_trees(r):
    assert maps.eulerian_triangulation_count(0, r) == catalan(r)
    assert maps.eulerian_triangulation_count(0, r, semi_simple=True) == 1


def test_frozen_counts():
    assert maps.eulerian_triangulation_count(3, 2) == 68
    assert maps.eulerian_triangulation_count(3, 2, semi_simple=True) == 38


def test_oracle_matches_T_and_B():
    assert eulerian_T_mismatches(3, 2) == []
    assert semi_simple_B_mismatches(3, 2) == []


def test_oracle_matches_mixed_peeling():
    table = peel(HypermapWeights.constellation(3, (1,)), 8, 2, p_max=3)
    assert mixed_eulerian_mismatches(table) == []


def test_bipartite_oracle():
    bad, checked = bipartite_mismatches(3, 2, 5)
    assert bad == [] and checked >= 8


# -- contract ---------------------------------------------------------------------------

def test_edge_cap():
    with pytest.raises(maps.OracleLimitError):
        maps.enumerate_maps(maps.BoundaryWord("wb"), maps.FaceConstraint.any_degree(), 7)


def test_profile_cap():
    with pytest.raises(maps.OracleLimitError):
        maps.count_with_profile(maps.BoundaryWord("wb"), maps.FaceConstraint.eulerian_triangulation(),
                                {("b", 3): 5, ("w", 3): 5})


def test_bad_word():
    with pytest.raises(ValueError):
        maps.BoundaryWord("wxb")


def test_word_symbols():
    assert maps.BoundaryWord("∘•∘•").letters == "wbwb"
    assert maps.BoundaryWord.alternating(2).is_alternating()
    assert not maps.BoundaryWord.mixed(1, 1).is_alternating()


# -- properties ---------------------------------------------------------------------------

@given(st.integers(1, 3), st.integers(0, 2))
@settings(max_examples=12, deadline=None)
def test_semi_simple_is_a_subset(r, n):
    assert 0 <= maps.eulerian_triangulation_count(n, r, True) <= maps.eulerian_triangulation_count(n, r)


@given(st.text(alphabet="wb", min_size=1, max_size=5), st.integers(3, 4))
@settings(max_examples=25, deadline=None)
def test_orientation_potential(word, m):
    constraint = maps.FaceConstraint.constellation(m, max_white=2 * m)
    for g in maps.iter_glued_maps(maps.BoundaryWord(word), constraint, 5):
        assert g.rooted_map().is_planar()
        assert maps.check_orientation_potential(g, m)
        assert maps.boundary_turning(g) % m == 0


def rooted_code(g):
    """Relabel darts in BFS order from the root; equal codes mean isomorphic rooted maps."""
    rm = g.rooted_map()
    order, index = [0], {0: 0}
    for d in order:
        for nxt in (rm.sigma[d], rm.alpha[d]):
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
    return (tuple(index[rm.sigma[d]] for d in order), tuple(index[rm.alpha[d]] for d in order),
            tuple(g.dart_class[d] for d in order))


@given(st.text(alphabet="wb", min_size=1, max_size=6))
@settings(max_examples=25, deadline=None)
def test_glued_maps_are_planar_and_counted_once(word):
    seen = set()
    for g in maps.iter_glued_maps(maps.BoundaryWord(word), maps.FaceConstraint.eulerian_triangulation(), 5):
        assert g.rooted_map().is_planar()
        assert g.num_edges <= 5
        code = rooted_code(g)
        assert code not in seen
        seen.add(code)
