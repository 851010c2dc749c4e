import pytest
from hypothesis import given, strategies as st

from grodiag.errors import BackendMismatchError
from grodiag.grocat import (DIM, FINAB, VECT, GeneratorKey, GroupElement, add, dim, factorize,
                            is_prime, negate, partial_leq, primes, total, zero)

small_primes = st.sampled_from([2, 3, 5, 7])
finab_elements = st.dictionaries(small_primes, st.integers(-4, 4), max_size=4).map(primes)
vect_elements = st.integers(-6, 6).map(dim)


def test_add_examples():
    assert add(primes({2: 1}), primes({2: 1})) == primes({2: 2})
    assert add(dim(3), dim(-3)) == zero(VECT)
    assert add(primes({2: 1}), primes({3: 2})) == primes({2: 1, 3: 2})


def test_negate_examples():
    assert negate(dim(2)) == dim(-2)
    assert negate(zero(FINAB)) == zero(FINAB)
    assert negate(primes({5: -1})) == primes({5: 1})


def test_partial_leq_examples():
    assert partial_leq(zero(FINAB), primes({2: 3}))
    assert not partial_leq(dim(2), dim(1))
    assert not partial_leq(primes({2: 1, 3: 1}), primes({2: 2}))


def test_mixed_backends_rejected():
    with pytest.raises(BackendMismatchError):
        add(dim(1), primes({2: 1}))
    with pytest.raises(BackendMismatchError):
        partial_leq(dim(1), primes({2: 1}))


def test_prime_keys_are_checked():
    with pytest.raises(ValueError):
        GeneratorKey(4)
    with pytest.raises(ValueError):
        primes({1: 1})
    assert GeneratorKey(7).backend == FINAB and DIM.backend == VECT


def test_canonical_form():
    e = GroupElement.make(FINAB, [(3, 1), (2, 2), (3, -1), (5, 0)])
    assert e.coeffs == ((GeneratorKey(2), 2),)
    assert repr(primes({3: 2, 2: 1})) == "{prime 2: 1, prime 3: 2}"
    assert repr(zero(VECT)) == "{}"
    with pytest.raises(ValueError):
        GroupElement(VECT, ((DIM, 0),))


def test_total_and_scaling():
    assert total([dim(1), dim(2), dim(-3)], VECT) == zero(VECT)
    assert primes({2: 1}) * 3 == primes({2: 3})
    assert primes({2: 1}) - primes({3: 1}) == primes({2: 1, 3: -1})


def test_primes_and_factorize():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}


@given(st.one_of(st.tuples(finab_elements, finab_elements, finab_elements),
                 st.tuples(vect_elements, vect_elements, vect_elements)))
def test_abelian_group_laws(abc):
    a, b, c = abc
    z = zero(a.backend)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, z) == a and add(a, z).coeffs == a.coeffs
    assert add(a, negate(a)) == z


@given(finab_elements, finab_elements, finab_elements)
def test_partial_order_laws(a, b, c):
    assert partial_leq(a, a)
    if partial_leq(a, b) and partial_leq(b, a):
        assert a == b
    if partial_leq(a, b) and partial_leq(b, c):
        assert partial_leq(a, c)
    if partial_leq(a, b):
        assert partial_leq(add(a, c), add(b, c))


@given(finab_elements, finab_elements)
def test_order_is_componentwise(a, b):
    keys = set(a.keys()) | set(b.keys())
    assert partial_leq(a, b) == all(a[k] <= b[k] for k in keys)
