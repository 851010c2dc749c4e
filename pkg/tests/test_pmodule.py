import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from grodiag import backends as bk
from grodiag import generators as gen
from grodiag.diagram import Interval, rank_from_diagram
from grodiag.errors import DomainError, OrderError, ValidationError
from grodiag.grocat import FINAB, VECT, dim, partial_leq, primes, zero
from grodiag.pipeline import classical_diagram, homology_module
from grodiag.pmodule import (ConstructibleModule, check_constructible, evaluate, evaluate_map,
                             interval_module, module, rank_function, zero_module)

seeds = st.integers(0, 2**32 - 1)
backends = st.sampled_from([VECT, FINAB])


def test_evaluate_examples(m1):
    assert evaluate(m1, 0.5).dim == 0
    assert evaluate(m1, 7) == m1.objects[2]
    assert evaluate(m1, math.inf) == m1.objects[2]
    assert evaluate(m1, 2.9).dim == 2
    assert evaluate(m1, 2) == m1.objects[1]


def test_evaluate_map_examples(m1):
    assert evaluate_map(m1, 1, 1) == bk.identity(m1.objects[0])
    f = evaluate_map(m1, 1, 3)
    assert f.is_zero() and f.matrix.shape == (1, 1)
    g = evaluate_map(m1, 0, 5)
    assert g.source.dim == 0 and g.target.dim == 1
    with pytest.raises(OrderError):
        evaluate_map(m1, 2, 1)


def test_rank_function_examples(m1):
    assert rank_function(m1, Interval(1, 3)) == dim(1)
    assert rank_function(m1, Interval(1)) == zero(VECT)
    assert rank_function(m1, Interval(0.5, 1.2)) == zero(VECT)
    assert rank_function(m1, Interval(2.5)) == dim(1)
    with pytest.raises(DomainError):
        rank_function(m1, Interval(2, 2))


def test_finab_rank_values(m2):
    assert rank_function(m2, Interval(1, 2)) == primes({2: 2})
    assert rank_function(m2, Interval(1)) == primes({2: 1})
    assert rank_function(m2, Interval(2)) == primes({2: 1})


def test_validation_messages_are_positional():
    two, one = bk.FieldObject(2, 2), bk.FieldObject(2, 1)
    bad = ConstructibleModule.__new__(ConstructibleModule)
    object.__setattr__(bad, "criticals", (0.0, 1.0))
    object.__setattr__(bad, "objects", (one, two))
    object.__setattr__(bad, "maps", (bk.identity(one),))
    assert check_constructible(bad) == [
        f"maps[0]: target {one} does not match objects[1] {two}"]
    with pytest.raises(ValidationError) as exc:
        ConstructibleModule((1.0, 0.0), (one, one), (bk.identity(one),))
    assert "criticals[1]" in str(exc.value)
    with pytest.raises(ValidationError) as exc:
        module([0, 1], [one, two], [[[1, 0]]])
    assert "maps[0]" in str(exc.value)
    with pytest.raises(ValidationError):
        ConstructibleModule((), (), ())
    with pytest.raises(ValidationError):
        ConstructibleModule((0.0, math.inf), (one, one), (bk.identity(one),))


def test_mixed_backends_rejected():
    with pytest.raises(ValidationError):
        ConstructibleModule((0.0, 1.0), (bk.FieldObject(2, 0), bk.FinAbObject(())),
                            (bk.zero_morphism(bk.FieldObject(2, 0), bk.FieldObject(2, 0)),))


def test_helpers():
    assert interval_module(0, 2).criticals == (0.0, 2.0)
    assert rank_function(interval_module(0, 2), Interval(0, 2)) == dim(1)
    assert rank_function(interval_module(0, 2), Interval(0, 2.5)) == zero(VECT)
    z = zero_module(FINAB, criticals=(0.0, 1.0))
    assert rank_function(z, Interval(0)) == zero(FINAB)


@given(seeds, backends)
def test_rank_function_reverses_inclusion(seed, backend):
    rng = np.random.default_rng(seed)
    F = gen.module(rng, backend)
    outer, inner = gen.nested_intervals(rng, F)
    assert partial_leq(rank_function(F, outer), rank_function(F, inner))


@given(seeds, backends, st.sampled_from([0, 0.25, 0.5, 0.75]), st.sampled_from([0, 0.25, 0.5, 0.75]))
def test_rank_constant_within_grid_cells(seed, backend, u, v):
    rng = np.random.default_rng(seed)
    F = gen.module(rng, backend)
    s = list(F.criticals) + [math.inf]
    i = int(rng.integers(0, F.k))
    j = int(rng.integers(i + 1, F.k + 1))
    # p moves inside [s_i, s_i+1), q inside (s_j-1, s_j]; both snap back to [s_i, s_j)
    p = s[i] + u * ((s[i + 1] if s[i + 1] != math.inf else s[i] + 4) - s[i])
    q = math.inf if s[j] == math.inf else s[j] - v * (s[j] - s[j - 1])
    assume(p < q)
    assert rank_function(F, Interval(p, q)) == rank_function(F, Interval(s[i], s[j]))


@given(seeds, st.integers(0, 2), st.sampled_from([2, 3, 5]))
def test_rank_matches_classical_persistent_betti(seed, degree, p):
    rng = np.random.default_rng(seed)
    K = gen.simplicial_complex(rng, max_vertices=8)
    F = homology_module(K, degree, p)
    ref = classical_diagram(K, degree, p)
    s = list(F.criticals) + [math.inf]
    for i in range(F.k):
        for j in range(i + 1, F.k + 1):
            iv = Interval(s[i], s[j])
            assert rank_function(F, iv) == rank_from_diagram(ref, iv)
