import itertools
from fractions import Fraction

import pytest

from idealgames import clopen, hypergraph as hg, katetov as kt
from idealgames.ideals import IdealDescriptor, NATURALS, phi_edm, resolve_ideal


def test_conv_to_somega_map_examples():
    r = kt.conv_to_somega()
    assert r.mapping(clopen.ClopenSet.of({"0"})) == Fraction(1, 2)
    assert r.mapping(clopen.ClopenSet.of({"1"})) == Fraction(3, 4)
    assert r.mapping(clopen.ClopenSet.of({"01", "10"})) == Fraction(3, 8)


def test_identity_reduction_never_grows():
    for name in ("ed", "rado", "pc", "conv"):
        d = resolve_ideal(name)
        r = kt.ReductionSpec("identity", d, d, lambda x: x)
        gens = kt.sample_generators(d, seed=0, window=64)
        # Windows large enough that every sampled generator is fully visible.
        report = kt.check_reduction(r, gens, [64, 256, 512])
        for g in report.generators:
            assert g.verdict == "bounded", (name, g.to_json())
            assert g.trajectory == sorted(g.trajectory)
            assert g.trajectory[-1] <= 1


def test_constant_map_grows():
    d = resolve_ideal("rado")
    r = kt.ReductionSpec("const", d, d, lambda x: 0)
    report = kt.check_reduction(r, [frozenset({0, 1, 2})], [16, 32, 64])
    g = report.generators[0]
    assert g.verdict == "growing"
    assert g.trajectory[-1] > g.trajectory[0]


def test_conv_generator_trajectory_bounded():
    r = kt.conv_to_somega()
    near_half = lambda q: abs(q - Fraction(1, 2)) <= Fraction(1, 16)
    report = kt.check_reduction(r, [near_half], [16, 32, 64, 78])
    g = report.generators[0]
    assert g.verdict == "bounded"
    assert g.trajectory[-1] <= 2


def test_grading_cap_reported_per_generator():
    source = resolve_ideal("conv")
    target = resolve_ideal("somega", n=0)  # default grading cap of 20
    r = kt.ReductionSpec("tight", source, target, clopen.y_u,
                         ground=kt.conv_to_somega().ground)
    fat = lambda q: True
    thin = lambda q: q == Fraction(1, 4)
    report = kt.check_reduction(r, [fat, thin], [16, 32, 64])
    assert report.generators[0].verdict == "error"
    assert report.generators[0].error is not None
    assert report.generators[1].verdict == "bounded"


def test_window_validation():
    d = resolve_ideal("rado")
    r = kt.ReductionSpec("identity", d, d, lambda x: x)
    with pytest.raises(ValueError):
        kt.check_reduction(r, [], [64])
    with pytest.raises(ValueError):
        kt.check_reduction(r, [], [64, 32])


def test_empty_generator_sample():
    d = resolve_ideal("rado")
    r = kt.ReductionSpec("identity", d, d, lambda x: x)
    report = kt.check_reduction(r, [], [16, 32])
    assert report.generators == []
    assert report.to_json()["windows"] == [16, 32]


def test_coloring_reduction_self_restriction():
    t = hg.build_rado(2, 2, 2)
    c = hg.Coloring.from_function(2, 2, 3, lambda e: t.color(e))
    spec = kt.coloring_reduction(c, t)
    report = kt.check_reduction(spec, [frozenset(range(t.vertex_count))],
                                [2, 3])
    assert report.generators[0].trajectory == [2, 3]


def test_coloring_reduction_edm_generators_cheap():
    m = 1
    t = hg.build_rado(2, m + 2, 1)
    window = 8
    c = hg.Coloring.from_function(2, m + 2, window,
                                  lambda e: hg.edm_coloring(m, e))
    target = IdealDescriptor("edm", NATURALS, lambda a: phi_edm(m, a))
    spec = kt.coloring_reduction(c, t, target=target, l=1)
    # Generators: preimages of each color class pulled through the embedding.
    gens = []
    for color in range(m + 2):

        def gen(v, color=color, f={x: spec.mapping(x) for x in range(window)}):
            return any(t.color({v, w}) == color for w in f.values() if w != v)
        gens.append(gen)
    report = kt.check_reduction(spec, gens, [4, 6, 8])
    for g in report.generators:
        assert g.error is None
    # Monochromatic sets under the edm coloring are cheap in ED~_m.
    for color in range(m + 2):
        mono = [v for v in range(window)
                if all(hg.edm_coloring(m, (v, w)) == color
                       for w in range(window)
                       if w != v and hg.edm_coloring(m, (v, w)) == color)]
        chosen = []
        for v in range(window):
            if all(hg.edm_coloring(m, (v, w)) == color for w in chosen):
                chosen.append(v)
        if len(chosen) >= 2:
            assert phi_edm(m, chosen) <= 1


def test_coloring_reduction_consistency_reverified():
    t = hg.build_rado(2, 2, 2)
    c = hg.Coloring.from_function(2, 2, 4, lambda e: t.color(e))
    spec = kt.coloring_reduction(c, t)
    # Tamper with the map after construction: the per-window check trips.
    spec.mapping = lambda v: 0
    with pytest.raises(ValueError):
        kt.check_reduction(spec, [frozenset({0})], [3, 4])


def test_coloring_reduction_window_bound():
    t = hg.build_rado(2, 2, 2)
    c = hg.Coloring.from_function(2, 2, 3, lambda e: t.color(e))
    spec = kt.coloring_reduction(c, t)
    with pytest.raises(ValueError):
        kt.check_reduction(spec, [frozenset({0})], [3, 10])


def test_k_blocks_shape():
    edges = kt.k_blocks(3)
    assert frozenset({1, 2}) in edges
    assert set(itertools.chain.from_iterable(edges)) == {1, 2, 3, 4, 5}
    assert len(edges) == 0 + 1 + 3


def test_k_uniform_witness_identity_blocks():
    x = kt.k_blocks(4)
    blocks = kt.k_uniform_witness(x, 4, vertices=[0])
    assert blocks == [[0], [1, 2], [3, 4, 5], [6, 7, 8, 9]]


def test_k_uniform_witness_k5_plus_edge():
    x = [frozenset(e) for e in itertools.combinations(range(5), 2)]
    x.append(frozenset({10, 11}))
    blocks = kt.k_uniform_witness(x, 2)
    flat = list(itertools.chain.from_iterable(blocks))
    assert len(blocks[0]) == 1 and len(blocks[1]) == 2
    assert len(set(flat)) == len(flat)
    edges = {frozenset(e) for e in x}
    assert frozenset(blocks[1]) in edges


def test_k_uniform_witness_disjoint_cliques():
    x = kt.k_blocks(4)
    blocks = kt.k_uniform_witness(x, 3)
    flat = list(itertools.chain.from_iterable(blocks))
    assert len(set(flat)) == len(flat)
    edges = {frozenset(e) for e in x}
    for block in blocks:
        for pair in itertools.combinations(block, 2):
            assert frozenset(pair) in edges


def test_k_uniform_witness_insufficient():
    x = [frozenset({0, 1}), frozenset({2, 3})]
    with pytest.raises(ValueError):
        kt.k_uniform_witness(x, 3)
    with pytest.raises(ValueError):
        kt.k_uniform_witness([frozenset({0, 1, 2})], 1)
