import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grodiag import generators as gen
from grodiag.bottleneck import (Matching, _component, bottleneck_distance, bottleneck_oracle,
                                candidate_thresholds, component_distances, diagonal_partner,
                                feasible, matching_norm, pair_cost, validate_matching)
from grodiag.diagram import Interval, PersistenceDiagram
from grodiag.errors import BackendMismatchError, PreconditionError
from grodiag.grocat import FINAB, VECT, GeneratorKey, dim, primes

INF = math.inf
seeds = st.integers(0, 2**32 - 1)
backends = st.sampled_from([VECT, FINAB])


def vect(points):
    return PersistenceDiagram(VECT, {Interval(*k): dim(m) for k, m in points.items()})


def test_norm_examples():
    assert matching_norm(Matching(VECT, {(Interval(0, 2), Interval(0.5, 2.5)): dim(1)})) == 0.5
    assert matching_norm(Matching(VECT, {(Interval(0), Interval(1)): dim(1)})) == 1
    assert matching_norm(Matching(VECT)) == 0
    assert pair_cost(Interval(0, 3), Interval(0)) == INF


def test_validate_examples():
    one = vect({(0, 2): 1})
    assert validate_matching(one, vect({}), Matching(VECT, {(Interval(0, 2), Interval(1, 1)): dim(1)})) == []
    assert len(validate_matching(one, one, Matching(VECT))) == 2
    assert validate_matching(one, one, Matching(VECT, {(Interval(0, 2), Interval(0, 2)): dim(1)})) == []
    with pytest.raises(BackendMismatchError):
        validate_matching(one, PersistenceDiagram(FINAB), Matching(VECT))


def test_distance_examples():
    d, w = bottleneck_distance(vect({(0, 2): 1}), vect({}))
    assert d == 1
    assert dict(w.items()) == {(Interval(0, 2), Interval(1, 1)): dim(1)}
    assert bottleneck_distance(vect({(0,): 1}), vect({}))[0] == INF
    Y1 = PersistenceDiagram(FINAB, {Interval(0, 3): primes({2: 1, 3: 1})})
    Y2 = PersistenceDiagram(FINAB, {Interval(0, 3): primes({2: 1}), Interval(0.5, 3.5): primes({3: 1})})
    assert bottleneck_distance(Y1, Y2)[0] == 0.5
    assert component_distances(Y1, Y2) == {GeneratorKey(2): 0.0, GeneratorKey(3): 0.5}


def test_oracle_examples():
    assert bottleneck_oracle(vect({(0, 10): 1}), vect({(1, 11): 1})) == 1
    Y1, Y2 = vect({(0, 2): 2}), vect({(0.2, 2.2): 1, (0, 2): 1})
    # 0.2 is not a float, so compare with the cost the arithmetic actually produces
    expected = max(abs(0.2 - 0), abs(2.2 - 2))
    assert bottleneck_oracle(Y1, Y2) == expected
    assert bottleneck_distance(Y1, Y2)[0] == expected
    assert expected == pytest.approx(0.2)


def test_identical_diagrams_with_essential_classes():
    Y = vect({(0,): 2, (1, 3): 1})
    d, w = bottleneck_distance(Y, Y)
    assert d == 0 and validate_matching(Y, Y, w) == []


def test_preconditions():
    neg = vect({(0, 1): -1})
    with pytest.raises(PreconditionError):
        bottleneck_distance(neg, vect({}))
    with pytest.raises(BackendMismatchError):
        bottleneck_distance(vect({}), PersistenceDiagram(FINAB))
    with pytest.raises(PreconditionError):
        bottleneck_oracle(vect({(0, 1): 7}), vect({}))


def test_diagonal_partner_is_midpoint():
    assert diagonal_partner(Interval(1, 4)) == Interval(2.5, 2.5)


def _pair(seed, backend):
    rng = np.random.default_rng(seed)
    Y1 = gen.positive_diagram(rng, backend)
    Y2 = gen.nearby_diagram(rng, Y1) if rng.random() < 0.5 else gen.positive_diagram(rng, backend)
    return Y1, Y2


@given(seeds, backends)
def test_solver_matches_oracle(seed, backend):
    Y1, Y2 = _pair(seed, backend)
    assert bottleneck_distance(Y1, Y2)[0] == bottleneck_oracle(Y1, Y2)


@given(seeds, backends)
def test_witness_is_valid_and_tight(seed, backend):
    Y1, Y2 = _pair(seed, backend)
    d, w = bottleneck_distance(Y1, Y2)
    if d != INF:
        assert validate_matching(Y1, Y2, w) == []
        assert matching_norm(w) == d


@given(seeds, backends)
def test_symmetry_and_identity(seed, backend):
    Y1, Y2 = _pair(seed, backend)
    assert bottleneck_distance(Y1, Y2)[0] == bottleneck_distance(Y2, Y1)[0]
    assert bottleneck_distance(Y1, Y1)[0] == 0


@given(seeds)
def test_distance_is_max_over_generators(seed):
    Y1, Y2 = _pair(seed, FINAB)
    d = bottleneck_distance(Y1, Y2)[0]
    per_key = component_distances(Y1, Y2)
    assert d == max(per_key.values(), default=0.0)
    for key, v in per_key.items():
        assert bottleneck_distance(Y1.restrict(key), Y2.restrict(key))[0] == v


@given(seeds, backends)
def test_feasibility_is_monotone(seed, backend):
    Y1, Y2 = _pair(seed, backend)
    for key in sorted(set(Y1.generator_keys()) | set(Y2.generator_keys())):
        left, right = _component(Y1, key), _component(Y2, key)
        sweep = [feasible(left, right, c) for c in candidate_thresholds(left, right)]
        assert sweep == sorted(sweep)


# Signed matchings: the search space of the solver is nonnegative transport plans.
# This probe enumerates small signed matchings on tiny instances and records whether
# any beats the nonnegative optimum.  No assertion is made about the outcome.

def _signed_optimum(Y1, Y2, values=range(-2, 3)):
    rows = list(Y1) + [diagonal_partner(j) for j in Y2 if not j.is_essential]
    cols = list(Y2) + [diagonal_partner(i) for i in Y1 if not i.is_essential]
    cells = [(i, j) for i in rows for j in cols if not (i.is_diagonal and j.is_diagonal)]
    best = INF
    for combo in itertools.product(values, repeat=len(cells)):
        gamma = Matching(VECT, {c: dim(v) for c, v in zip(cells, combo) if v})
        if not validate_matching(Y1, Y2, gamma):
            best = min(best, matching_norm(gamma))
    return best


def test_signed_matching_probe(capsys):
    rng = np.random.default_rng(7)
    strictly_better = 0
    runs = 0
    while runs < 12:
        Y1 = gen.positive_diagram(rng, VECT, max_mass=2, n_ticks=8)
        Y2 = gen.positive_diagram(rng, VECT, max_mass=2, n_ticks=8)
        if len(Y1) + len(Y2) > 3 or (len(Y1) + 1) * (len(Y2) + 1) > 6:
            continue
        runs += 1
        d = bottleneck_distance(Y1, Y2)[0]
        if _signed_optimum(Y1, Y2) < d:
            strictly_better += 1
    with capsys.disabled():
        print(f"\n  signed-matching probe: {strictly_better}/{runs} instances improved on the nonnegative optimum")
