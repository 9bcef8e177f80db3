import itertools
import random

import pytest

from idealgames import hypergraph as hg
from idealgames.ideals import SearchBoundExceeded


def build_22():
    return hg.build_rado(2, 2, 2)


def test_base_case_n2_k2():
    t = build_22()
    assert t.color({0, 1}) == 0
    assert t.color({0, 2}) == 1
    assert t.stage_sizes[0] == 1 and t.stage_sizes[1] == 3


def test_base_case_n2_k3():
    t = hg.build_rado(2, 3, 1)
    assert [t.color({0, i}) for i in (1, 2, 3)] == [0, 1, 2]


def test_base_case_conformance_small_arities():
    # Base assignment c({0..n-2, n-1+i}) = i for every small (n, k).
    for n in range(2, 6):
        for k in range(2, 8 - n):
            t = hg.build_rado(n, k, 1)
            root = set(range(n - 1))
            for i in range(k):
                assert t.color(root | {n - 1 + i}) == i


def test_build_deterministic():
    a, b = build_22(), build_22()
    assert a.table == b.table
    assert a.witness_log == b.witness_log
    assert a.vertex_count == b.vertex_count


def test_build_guards():
    with pytest.raises(SearchBoundExceeded):
        hg.build_rado(2, 2, 4)
    with pytest.raises(SearchBoundExceeded):
        hg.build_rado(2, 2, 3)  # stage 3 needs 3^C(27,1) systems
    with pytest.raises(ValueError):
        hg.RadoTable(1, 2)


def test_family_system_validation():
    with pytest.raises(ValueError):
        hg.FamilySystem.of([], [])
    with pytest.raises(ValueError):
        hg.FamilySystem.of([[0]], [[0]])


def test_star_witness_examples():
    t = build_22()
    j = hg.star_witness(t, hg.FamilySystem.of([[0]], []))
    assert j is not None and t.color({j, 0}) == 0
    j2 = hg.star_witness(t, hg.FamilySystem.of([[0]], [[1]]))
    assert j2 is not None
    assert t.color({j2, 0}) == 0 and t.color({j2, 1}) == 1
    empty = hg.RadoTable(2, 2)
    assert hg.star_witness(empty, hg.FamilySystem.of([[0]], [])) is None


def test_star_check_exhaustive():
    t = build_22()
    assert hg.star_check_exhaustive(t, 2) == []
    assert hg.star_check_exhaustive(hg.build_rado(2, 3, 1), 2) == []
    truncated = hg.RadoTable(2, 2)
    assert len(hg.star_check_exhaustive(truncated, 1)) == 2
    assert hg.star_check_exhaustive(t, 0) == []
    # Over the larger stage the full table still answers everything small.
    assert hg.star_check_exhaustive(t, 1, vertices=range(3)) == []


def test_embed_self_restriction():
    t = build_22()
    c = hg.Coloring.from_function(2, 2, 3, lambda e: t.color(e))
    # The identity verifies as a self-embedding ...
    assert hg.verify_embedding(c, t, {0: 0, 1: 1, 2: 2})
    # ... and the recursion returns some verified embedding without extending.
    before = t.vertex_count
    f = hg.embed_coloring(c, t, extend=False)
    assert hg.verify_embedding(c, t, f)
    assert t.vertex_count == before


def test_embed_base_pair():
    t = build_22()
    c = hg.Coloring.from_function(2, 2, 2, lambda e: 0)
    assert hg.embed_coloring(c, t, extend=False) == {0: 0, 1: 1}


def test_embed_random_colorings_universality():
    rng = random.Random(20240824)
    for _ in range(50):
        c = hg.Coloring.from_function(2, 3, 7, lambda e: rng.randrange(3))
        t = hg.build_rado(2, 3, 1)
        f = hg.embed_coloring(c, t)
        assert hg.verify_embedding(c, t, f)


def test_embed_frozen_table_error_carries_family():
    t = build_22()
    c = hg.Coloring.from_function(2, 2, 5,
                                  lambda e: (e[0] + e[1]) % 2)
    with pytest.raises(hg.EmbeddingError) as exc:
        hg.embed_coloring(c, t, extend=False)
    assert isinstance(exc.value.family, hg.FamilySystem)


def test_embed_arity_mismatch():
    t = build_22()
    c = hg.Coloring.from_function(2, 3, 3, lambda e: 0)
    with pytest.raises(ValueError):
        hg.embed_coloring(c, t)


def test_phi_rnkl_examples():
    t = build_22()
    assert t.color({1, 2}) == 0  # unset pair reads as 0 after totalization
    assert hg.phi_rnkl(t, [], 1) == 0
    assert hg.phi_rnkl(t, [0, 1], 1) == 1
    # c(01)=0, c(02)=1, c(12)=0: no single part spans one color.
    assert hg.phi_rnkl(t, [0, 1, 2], 1) == 2
    t3 = hg.build_rado(2, 3, 1)
    assert hg.phi_rnkl(t3, [0, 1, 2, 3], 2) == 2
    # {1,2,3} is all color 0 after totalization, so {0} splits off alone.
    assert hg.phi_rnkl(t3, [0, 1, 2, 3], 1) == 2


def test_phi_rnkl_monotone_and_antitone():
    t = hg.build_rado(2, 3, 1)
    pts = list(range(5))
    for size in range(len(pts)):
        for sub in itertools.combinations(pts, size):
            assert hg.phi_rnkl(t, sub, 1) <= hg.phi_rnkl(t, pts, 1)
    assert hg.phi_rnkl(t, pts, 2) <= hg.phi_rnkl(t, pts, 1)


def test_phi_rnkl_guards():
    t = build_22()
    with pytest.raises(ValueError):
        hg.phi_rnkl(t, [0, 1], 0)
    with pytest.raises(ValueError):
        hg.phi_rnkl(t, [0, 1], 2)
    with pytest.raises(SearchBoundExceeded):
        hg.phi_rnkl(t, range(15), 1)


def test_edm_coloring_examples():
    assert hg.edm_coloring(0, (0, 1)) == 0
    assert hg.edm_coloring(0, (0, 2)) == 1
    assert hg.edm_coloring(1, (0, 20)) == 2
    assert hg.edm_coloring(3, (0, 20)) == 3
    with pytest.raises(ValueError):
        hg.edm_coloring(0, (4, 4))


def test_edm_monochromatic_sets_are_cheap():
    from idealgames.ideals import phi_edm
    m = 1
    window = 200
    by_color = {}
    for a, b in itertools.combinations(range(window), 2):
        by_color.setdefault(hg.edm_coloring(m, (a, b)), []).append((a, b))
    for color, pairs in by_color.items():
        # Greedy monochromatic set within the window.
        chosen = []
        for x in range(window):
            if all(hg.edm_coloring(m, (x, y)) == color for y in chosen):
                chosen.append(x)
            if len(chosen) == 6:
                break
        if len(chosen) >= 2:
            assert phi_edm(m, chosen) <= 1, (color, chosen)


def test_find_homogeneous_examples():
    const = hg.Coloring.from_function(2, 2, 5, lambda e: 1)
    assert hg.find_homogeneous(const, 5, 1) == [0, 1, 2, 3, 4]
    rainbow = hg.Coloring.from_function(2, 3, 3,
                                        lambda e: [0, 1, 2][e[0] + e[1] - 1])
    assert hg.find_homogeneous(rainbow, 3, 1) is None
    big = hg.Coloring.from_function(2, 2, 40, lambda e: 0)
    with pytest.raises(SearchBoundExceeded):
        hg.find_homogeneous(big, 20, 1)


def test_ramsey_r33_on_six_vertices():
    # Every 2-coloring of the pairs on 6 vertices has a monochromatic
    # triangle; verified over all 2^15 colorings.
    edges = list(itertools.combinations(range(6), 2))
    for bits in range(1 << len(edges)):
        table = {frozenset(e): (bits >> i) & 1 for i, e in enumerate(edges)}
        c = hg.Coloring(2, 2, 6, table)
        assert hg.find_homogeneous(c, 3, 1) is not None


def test_ramsey_five_vertices_has_counterexample():
    # The 5-cycle coloring shows the bound 6 is tight.
    def pentagon(e):
        a, b = sorted(e)
        return 0 if (b - a) in (1, 4) else 1
    c = hg.Coloring.from_function(2, 2, 5, pentagon)
    assert hg.find_homogeneous(c, 3, 1) is None


def test_coloring_validation():
    with pytest.raises(ValueError):
        hg.Coloring(2, 2, 3, {frozenset({0, 1}): 0})
    with pytest.raises(ValueError):
        hg.Coloring.from_function(2, 2, 3, lambda e: 5)
