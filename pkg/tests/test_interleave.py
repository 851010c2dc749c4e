from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grodiag import backends as bk
from grodiag import generators as gen
from grodiag.diagram import Interval, PersistenceDiagram, mobius_inversion
from grodiag.errors import DomainError, IngestionError, PreconditionError, UnsupportedBackendError
from grodiag.grocat import VECT, dim
from grodiag.interleave import (InterleavingData, data_from_matrices, interleaving_from_functions,
                                interleaving_grid, interpolate, verify_interleaving)
from grodiag.pipeline import FilteredComplex, Simplex, homology_module
from grodiag.pmodule import check_constructible, evaluate, interval_module
from grodiag.verification import example_m2

seeds = st.integers(0, 2**32 - 1)


def identity_where_possible(F, G, eps):
    """Component maps that are the identity whenever source and target are both one-dimensional."""
    def fam(src, tgt):
        out = []
        for t in interleaving_grid(F, G, eps):
            a, b = evaluate(src, t), evaluate(tgt, t + eps)
            out.append((float(t), bk.FieldMorphism(a, b, [[1]] if a.dim and b.dim else None)))
        return out
    return InterleavingData(eps, fam(F, G), fam(G, F))


def test_verify_examples():
    F = interval_module(1, 3)
    assert verify_interleaving(F, F, identity_where_possible(F, F, 0)) == []
    G = interval_module(1.5, 3)
    assert verify_interleaving(F, G, identity_where_possible(F, G, 0.5)) == []
    problems = verify_interleaving(F, G, identity_where_possible(F, G, 0.1))
    assert "triangle psi.phi at 1.0 does not commute" in problems


def test_malformed_maps_are_reported():
    F, G = interval_module(0, 2), interval_module(1, 3)
    data = identity_where_possible(F, G, 1)
    bad_phi = tuple((at, bk.identity(bk.FieldObject(2, 2))) if at == 0.0 else (at, m) for at, m in data.phi)
    problems = verify_interleaving(F, G, InterleavingData(1, bad_phi, data.psi))
    assert any(p.startswith("phi at 0.0: expected") for p in problems)
    missing = InterleavingData(1, data.phi[1:], data.psi)
    assert any("no map at grid point" in p for p in verify_interleaving(F, G, missing))
    assert verify_interleaving(F, example_m2(), data)  # backend mismatch is a violation too


def test_negative_epsilon_rejected():
    with pytest.raises(DomainError):
        InterleavingData(-1, (), ())


def test_from_functions_examples(triangle):
    F, G, data = interleaving_from_functions(triangle, triangle)
    assert data.epsilon == 0 and verify_interleaving(F, G, data) == []
    assert all(m == bk.identity(m.source) for _, m in data.phi)
    shifted = triangle.with_values({s.id: s.value + 0.25 for s in triangle.simplices})
    for degree in (0, 1):
        F, G, data = interleaving_from_functions(triangle, shifted, degree)
        assert data.epsilon == 0.25 and verify_interleaving(F, G, data) == []
    f = FilteredComplex([Simplex(0, (0,), 0.0)])
    g = FilteredComplex([Simplex(0, (0,), 1.0)])
    F, G, data = interleaving_from_functions(f, g)
    assert data.epsilon == 1
    assert mobius_inversion(F) == PersistenceDiagram(VECT, {Interval(0): dim(1)})
    assert mobius_inversion(G) == PersistenceDiagram(VECT, {Interval(1): dim(1)})
    # every label resolves to its own grid point (the data itself is not an
    # interleaving: in exact arithmetic 0.4 - 0.3 exceeds 0.1)
    assert not any("expected" in p or "no map" in p for p in verify_interleaving(F, G, data))


def test_from_functions_rejects_different_complexes(triangle):
    other = FilteredComplex([Simplex(0, (0,), 0.0)])
    with pytest.raises(IngestionError):
        interleaving_from_functions(triangle, other)


@given(seeds, st.integers(0, 2), st.sampled_from([2, 3]))
def test_from_functions_always_verifies(seed, degree, p):
    rng = np.random.default_rng(seed)
    K = gen.simplicial_complex(rng, max_vertices=8)
    F, G, data = interleaving_from_functions(K, gen.perturb(rng, K), degree, p)
    # every label resolves to its own grid point (the data itself is not an
    # interleaving: in exact arithmetic 0.4 - 0.3 exceeds 0.1)
    assert not any("expected" in p or "no map" in p for p in verify_interleaving(F, G, data))


def test_interpolate_examples():
    F, G = interval_module(0, 2), interval_module(1, 3)
    data = identity_where_possible(F, G, 1)
    assert mobius_inversion(interpolate(F, G, data, 0)) == mobius_inversion(F)
    assert mobius_inversion(interpolate(F, G, data, 1)) == mobius_inversion(G)
    half = mobius_inversion(interpolate(F, G, data, 0.5))
    assert half == PersistenceDiagram(VECT, {Interval(0.5, 2.5): dim(1)})
    quarter = mobius_inversion(interpolate(F, G, data, 0.25))
    assert quarter == PersistenceDiagram(VECT, {Interval(0.25, 2.25): dim(1)})


def test_interpolate_preconditions():
    F, G = interval_module(1, 3), interval_module(1.5, 3)
    with pytest.raises(PreconditionError):
        interpolate(F, G, identity_where_possible(F, G, 0.1), 0.5)
    with pytest.raises(DomainError):
        interpolate(F, G, identity_where_possible(F, G, 0.5), 1.5)
    M = example_m2()
    z = InterleavingData(0, [(1.0, bk.identity(M.objects[0])), (2.0, bk.identity(M.objects[1]))],
                         [(1.0, bk.identity(M.objects[0])), (2.0, bk.identity(M.objects[1]))])
    assert verify_interleaving(M, M, z) == []
    with pytest.raises(UnsupportedBackendError):
        interpolate(M, M, z, 0.5)


@given(seeds, st.sampled_from([0.25, 0.5, 0.75]))
def test_interpolants_are_constructible_and_endpoints_match(seed, t):
    rng = np.random.default_rng(seed)
    K = gen.simplicial_complex(rng, max_simplices=40, max_vertices=6)
    F, G, data = interleaving_from_functions(K, gen.perturb(rng, K), int(rng.integers(0, 2)))
    assert check_constructible(interpolate(F, G, data, t)) == []
    assert mobius_inversion(interpolate(F, G, data, 0)) == mobius_inversion(F)
    assert mobius_inversion(interpolate(F, G, data, 1)) == mobius_inversion(G)


def test_data_from_matrices_snaps_float_labels():
    # 0.3 - 0.1 + 0.1 != 0.3 in floats; labels read from a file must still hit the grid
    F, G = interval_module(0.1, 0.3), interval_module(0.2, 0.4)
    eps = 0.1
    grid = interleaving_grid(F, G, eps)
    phi, psi = [], []
    for t in grid:
        for src, tgt, fam in ((F, G, phi), (G, F, psi)):
            a, b = evaluate(src, t), evaluate(tgt, t + Fraction(eps))
            fam.append((float(t), [[1]] if a.dim and b.dim else [[] for _ in range(b.dim)]))
    data = data_from_matrices(F, G, eps, phi, psi)
    assert all(m.target == evaluate(G, t + Fraction(eps)) for (_, m), t in zip(data.phi, grid))
    # every label resolves to its own grid point (the data itself is not an
    # interleaving: in exact arithmetic 0.4 - 0.3 exceeds 0.1)
    assert not any("expected" in p or "no map" in p for p in verify_interleaving(F, G, data))


def test_homology_interleaving_against_direct_module(triangle):
    F, _, _ = interleaving_from_functions(triangle, triangle, 1)
    assert F == homology_module(triangle, 1)
