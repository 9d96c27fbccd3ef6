import random

import pytest

from btfas import (
    Arc,
    GenSpec,
    build,
    enumerate_bt,
    fas_c4free,
    find_4cycle,
    four_cycle,
    min_fas_exact,
    random_c4free,
    trim_acyclic_vertices,
    xv,
    yv,
)
from btfas.errors import HasFourCycle

from helpers import all_x_to_y, four_cycle_bt, four_cycles_oracle, random_digraph, six_cycle


def test_find_4cycle_on_the_tournament():
    assert find_4cycle(four_cycle_bt()) == four_cycle(0, 0, 1, 1)


def test_find_4cycle_absent_cases():
    assert find_4cycle(six_cycle()) is None
    assert find_4cycle(all_x_to_y(4, 4)) is None


def test_find_4cycle_agrees_with_exhaustive_scan():
    rng = random.Random(271)
    for _ in range(120):
        g = random_digraph(rng, rng.randint(0, 4), rng.randint(0, 4))
        found = find_4cycle(g)
        exhaustive = four_cycles_oracle(g)
        assert (found is None) == (not exhaustive)
        if found is not None:
            assert found.is_cycle_of(g)


def test_trim_removes_everything_acyclic():
    sub, removed = trim_acyclic_vertices(all_x_to_y(3, 2))
    assert (sub.graph.m, sub.graph.n) == (0, 0)
    assert len(removed) == 5


def test_trim_keeps_the_six_cycle():
    g = six_cycle()
    sub, removed = trim_acyclic_vertices(g)
    assert sub.graph == g
    assert removed == frozenset()


def test_trim_drops_only_the_isolated_vertex():
    arcs = [(a.tail, a.head) for a in six_cycle().arcs()]
    g = build(3, 4, arcs)
    sub, removed = trim_acyclic_vertices(g)
    assert removed == {yv(3)}
    assert (sub.graph.m, sub.graph.n) == (3, 3)
    assert sub.graph == six_cycle()


def test_six_cycle_certificate_matches_hand_trace():
    g = six_cycle()
    cert = fas_c4free(g)
    assert cert.fas == frozenset({Arc(xv(1), yv(1))})
    assert cert.bound == 3
    assert g.is_feedback_arc_set(cert.fas)
    assert min_fas_exact(g).value == 1
    root = cert.trace[0]
    assert root.center == xv(0)
    assert root.mode == "direct"
    assert root.cut_size == 1


def test_arcless_graph_needs_nothing():
    cert = fas_c4free(build(3, 3, []))
    assert cert.fas == frozenset()
    assert cert.bound == 9


def test_rejects_inputs_with_a_4cycle():
    with pytest.raises(HasFourCycle) as exc:
        fas_c4free(four_cycle_bt())
    assert exc.value.cycle == four_cycle(0, 0, 1, 1)


def test_c4free_tournaments_are_exactly_the_acyclic_ones():
    for g in enumerate_bt(3, 3):
        c4free = find_4cycle(g) is None
        assert c4free == (g.topological_order().order is not None)
        if c4free:
            cert = fas_c4free(g)
            assert cert.fas == frozenset()


def test_certificates_on_random_c4free_instances():
    for i in range(120):
        spec = GenSpec(2 + i % 6, 2 + (i // 6) % 6, seed=i)
        g = random_c4free(spec)
        cert = fas_c4free(g)
        assert len(cert.fas) <= cert.bound == g.absent_pair_count()
        assert g.is_feedback_arc_set(cert.fas)
        assert all(g.has_arc(a) for a in cert.fas)


def test_reversal_path_bound():
    for i in range(60):
        g = random_c4free(GenSpec(4, 4, seed=900 + i))
        r = g.reverse()
        assert fas_c4free(g).bound == fas_c4free(r).bound == g.absent_pair_count()
        assert len(fas_c4free(r).fas) <= g.absent_pair_count()


def test_trace_records_are_well_formed():
    for i in range(40):
        g = random_c4free(GenSpec(5, 5, seed=50 + i))
        cert = fas_c4free(g)
        for node in cert.trace:
            assert node.mode in ("direct", "reversed")
            assert node.cut_size >= 0
            # centers are surfaced in root labels
            g._check_vertex(node.center)
        depths = [node.depth for node in cert.trace]
        assert not depths or depths[0] == 0


def test_exact_optimum_never_beats_the_bound():
    for i in range(40):
        g = random_c4free(GenSpec(3, 4, seed=77 + i))
        cert = fas_c4free(g)
        assert min_fas_exact(g).value <= len(cert.fas) <= g.absent_pair_count()
