import random

import numpy as np
import pytest

from conftest import lat
from padic_lattices import Lattice, PadicContext, Relation, act, complex_distance, compose, lattice_sum, meet
from padic_lattices.oracle import (
    MAX_GROUP,
    FiniteLattice,
    Window,
    WindowError,
    lift_from_window,
    oracle_act,
    oracle_compose,
    oracle_distance,
    oracle_group_invariants,
    oracle_meet,
    oracle_sum,
    project_to_window,
)
from padic_lattices.sampling import random_lattice

C2 = PadicContext(2)


def W(a, p=2):
    return Window(PadicContext(p), a)


def test_projection_examples():
    w = W(1)
    F_ = project_to_window(Lattice.standard(C2, 2), w)
    assert F_.elements == {(x, y) for x in (0, 2) for y in (0, 2)}
    assert len(project_to_window(Lattice.diagonal(C2, [-1, -1]), w)) == 16
    assert project_to_window(Lattice.diagonal(C2, [1]), w).elements == {(0,)}


def test_window_violation():
    with pytest.raises(WindowError):
        project_to_window(Lattice.diagonal(C2, [-2]), W(1))
    with pytest.raises(WindowError):
        project_to_window(Lattice.diagonal(C2, [2]), W(1))


def test_guard():
    w = W(3, p=5)
    assert not w.fits(2) and w.group_size(1) <= MAX_GROUP
    with pytest.raises(WindowError):
        FiniteLattice(w, 2, np.zeros(1, dtype=np.int64))


def test_sum_meet_examples():
    w = W(1)
    a = FiniteLattice(w, 1, [0, 2])
    full = FiniteLattice(w, 1, [0, 1, 2, 3])
    assert oracle_sum(a, full) == full and oracle_sum(full, a) == full
    assert oracle_meet(a, a) == a
    assert oracle_meet(a, full) == a


def test_group_invariants_examples(derived):
    w = W(1)
    O, half = project_to_window(Lattice.standard(C2, 1), w), project_to_window(Lattice.diagonal(C2, [-1]), w)
    assert oracle_group_invariants(O, half) == ([1], [])
    assert oracle_group_invariants(O, O) == ([], [])
    got = oracle_group_invariants(project_to_window(Lattice.standard(C2, 2), w),
                                  project_to_window(lat(2, (1, 0), (1, 2)), w))
    assert {"pos": got[0], "neg": got[1]} == derived["oracle_invariants_a1"] == {"pos": [], "neg": [1]}


def test_act_and_compose_examples(derived):
    w = W(2)
    Hf = project_to_window(Relation.from_generators(C2, 1, [(1, 1), (0, 4)]).carrier, w)
    Of = project_to_window(Lattice.standard(C2, 1), w)
    assert oracle_act(Hf, Of) == Of and derived["oracle_act_a2"]
    assert oracle_compose(Hf, Hf) == Hf
    full = project_to_window(Lattice.diagonal(C2, [-2, -2]), w)
    assert oracle_act(full, Of) == project_to_window(Lattice.diagonal(C2, [-2]), w)
    blocks = project_to_window(Lattice.diagonal(C2, [1, -1]), w)
    assert oracle_act(blocks, Of) == project_to_window(Lattice.diagonal(C2, [-1]), w)


def test_lift_examples():
    w = W(2)
    assert lift_from_window(FiniteLattice(w, 2, [0])) == Lattice.diagonal(C2, [2, 2])
    full = FiniteLattice(w, 1, range(16))
    assert lift_from_window(full) == Lattice.diagonal(C2, [-2])


@pytest.mark.parametrize("p,n,a", [(2, 1, 2), (2, 2, 1), (3, 1, 2), (3, 2, 1)])
def test_homomorphism(p, n, a):
    ctx, w = PadicContext(p), W(a, p)
    for i in range(20):
        rng = random.Random(i)
        L, M = random_lattice(rng, ctx, n, a), random_lattice(rng, ctx, n, a)
        Lf, Mf = project_to_window(L, w), project_to_window(M, w)
        assert lift_from_window(Lf) == L
        assert project_to_window(lattice_sum(L, M), w) == oracle_sum(Lf, Mf)
        assert project_to_window(meet(L, M), w) == oracle_meet(Lf, Mf)
        assert oracle_distance(Lf, Mf) == list(complex_distance(L, M))


def test_relation_homomorphism():
    ctx, w = C2, W(1)
    for i in range(20):
        rng = random.Random(i)
        G, H = (Relation(random_lattice(rng, ctx, 2, 1)) for _ in range(2))
        R = random_lattice(rng, ctx, 1, 1)
        Gf, Hf, Rf = (project_to_window(X, w) for X in (G.carrier, H.carrier, R))
        assert project_to_window(act(H, R), w) == oracle_act(Hf, Rf)
        assert project_to_window(compose(G, H).carrier, w) == oracle_compose(Gf, Hf)
