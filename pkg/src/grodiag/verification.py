"""Randomized property suites behind the acceptance tests and ``grodiag selftest``.

Each ``check_*`` function draws its own instances from a seeded generator
and returns a :class:`CheckResult`; nothing here raises on a failed
property, so a caller can report every suite.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import backends as bk
from . import generators as gen
from .bottleneck import bottleneck_distance, bottleneck_oracle, matching_norm, validate_matching
from .diagram import (Interval, PersistenceDiagram, box_sum, corner_sum, injectivity_radius,
                      mobius_inversion)
from .grocat import FINAB, VECT, dim, is_nonnegative, partial_leq, primes
from .interleave import interleaving_from_functions, interpolate
from .pipeline import classical_diagram, homology_module
from .pmodule import ConstructibleModule, check_constructible, module, rank_function

MAX_REPORTED = 5


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < MAX_REPORTED:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... and more (last: {msg})"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.name}  ({self.instances} instances, {self.seconds:.1f}s)"
        for f in self.failures:
            out += f"\n      {f}"
        return out


def _timed(fn):
    def run(*args, **kw):
        start = time.perf_counter()
        res = fn(*args, **kw)
        res.seconds = time.perf_counter() - start
        return res
    run.__name__, run.__doc__ = fn.__name__, fn.__doc__
    return run


# -- golden modules ---------------------------------------------------------


def example_m1() -> ConstructibleModule:
    """GF(2), S = {1, 2, 3}, dims (1, 2, 1), maps [1; 0] and [0 1]."""
    return module([1, 2, 3], [bk.FieldObject(2, 1), bk.FieldObject(2, 2), bk.FieldObject(2, 1)],
                  [[[1], [0]], [[0, 1]]])


def example_m2() -> ConstructibleModule:
    """Z/4 -> Z/2 quotient at S = {1, 2}."""
    return module([1, 2], [bk.FinAbObject.cyclic(4), bk.FinAbObject.cyclic(2)], [[[1]]])


M1_DIAGRAM = PersistenceDiagram(VECT, {Interval(1, 3): dim(1), Interval(2): dim(1)})
M2_DIAGRAM = PersistenceDiagram(FINAB, {Interval(1, 2): primes({2: 1}), Interval(1): primes({2: 1})})


# -- suites -----------------------------------------------------------------


@_timed
def check_mobius_matches_classical(rng: np.random.Generator, n: int = 200) -> CheckResult:
    res = CheckResult("Mobius inversion of homology = classical reduction")
    for it in range(n):
        K = gen.simplicial_complex(rng)
        p, k = int(rng.choice([2, 3, 5])), int(rng.integers(0, 3))
        a, b = mobius_inversion(homology_module(K, k, p)), classical_diagram(K, k, p)
        if a != b:
            res.fail(f"instance {it} (degree {k}, p={p}, {len(K)} simplices): {a!r} != {b!r}")
        res.instances += 1
    return res


@_timed
def check_positivity(rng: np.random.Generator, n: int = 1000) -> CheckResult:
    res = CheckResult("positivity of diagram values")
    for backend in (VECT, FINAB):
        for it in range(n):
            F = gen.module(rng, backend)
            for iv, v in mobius_inversion(F).items():
                if not is_nonnegative(v):
                    res.fail(f"{backend} instance {it}: value {v!r} at {iv!r}")
            res.instances += 1
    return res


@_timed
def check_order_reversing(rng: np.random.Generator, n: int = 1000) -> CheckResult:
    res = CheckResult("rank function reverses inclusion")
    for it in range(n):
        F = gen.module(rng, VECT if it % 2 == 0 else FINAB)
        outer, inner = gen.nested_intervals(rng, F)
        a, b = rank_function(F, outer), rank_function(F, inner)
        if not partial_leq(a, b):
            res.fail(f"instance {it}: d({outer!r}) = {a!r} not below d({inner!r}) = {b!r}")
        res.instances += 1
    return res


def _random_box(rng, F, max_eps=2.0):
    """(I, eps) with a nonempty eps-box; eps may be 0.

    Half the time eps is the distance from an endpoint of I to a critical
    value, so that a box edge lands exactly on it and the open/closed
    conventions of the edges matter.
    """
    while True:
        p = gen.grid_value(rng, F)
        q = math.inf if rng.random() < 0.25 else gen.grid_value(rng, F)
        if rng.random() < 0.5:
            end = q if q != math.inf and rng.random() < 0.5 else p
            eps = abs(end - float(rng.choice(F.criticals)))
        else:
            eps = gen.STEP * int(rng.integers(0, int(max_eps / gen.STEP) + 1))
        if eps <= max_eps and q - eps > p + eps:
            return Interval(p, q), eps


@_timed
def check_corner_sums(rng: np.random.Generator, n: int = 1000) -> CheckResult:
    res = CheckResult("box sum = corner sum of the rank function")
    for it in range(n):
        F = gen.module(rng, VECT if it % 2 == 0 else FINAB)
        iv, eps = _random_box(rng, F)
        a, b = box_sum(mobius_inversion(F), iv, eps), corner_sum(F, iv, eps)
        if a != b:
            res.fail(f"instance {it}: I={iv!r} eps={eps}: box {a!r} vs corners {b!r}")
        res.instances += 1
    return res


def _interleaved_pair(rng, max_shift=1.0, step=gen.STEP, max_simplices=200, max_vertices=12):
    K = gen.simplicial_complex(rng, max_simplices=max_simplices, max_vertices=max_vertices)
    Kg = gen.perturb(rng, K, max_shift, step)
    k = int(rng.integers(0, 2))
    F, G, data = interleaving_from_functions(K, Kg, k, int(rng.choice([2, 3])))
    return K, Kg, F, G, data


@_timed
def check_box_lemma(rng: np.random.Generator, n: int = 200) -> CheckResult:
    res = CheckResult("box lemma for interleaved pairs")
    for it in range(n):
        _, _, F, G, data = _interleaved_pair(rng)
        eps = data.epsilon
        YF, YG = mobius_inversion(F), mobius_inversion(G)
        for _ in range(5):
            iv, mu = _random_box(rng, F, max_eps=1.0)
            if not iv.death - (mu + eps) > iv.birth + (mu + eps):
                continue
            for A, B, label in ((YF, YG, "F in G"), (YG, YF, "G in F")):
                a, b = box_sum(A, iv, mu), box_sum(B, iv, mu + eps)
                if not partial_leq(a, b):
                    res.fail(f"instance {it} ({label}): I={iv!r} mu={mu} eps={eps}: {a!r} vs {b!r}")
        res.instances += 1
    return res


@_timed
def check_bottleneck_oracle(rng: np.random.Generator, n: int = 500) -> CheckResult:
    res = CheckResult("bottleneck solver = exhaustive oracle, witness valid")
    for backend in (VECT, FINAB):
        for it in range(n):
            Y1 = gen.positive_diagram(rng, backend)
            Y2 = gen.nearby_diagram(rng, Y1) if it % 2 else gen.positive_diagram(rng, backend)
            d, gamma = bottleneck_distance(Y1, Y2)
            ref = bottleneck_oracle(Y1, Y2)
            if d != ref:
                res.fail(f"{backend} instance {it}: solver {d} vs oracle {ref}")
            if d != math.inf:
                bad = validate_matching(Y1, Y2, gamma)
                if bad or matching_norm(gamma) != d:
                    res.fail(f"{backend} instance {it}: witness norm {matching_norm(gamma)}, {bad[:2]}")
            res.instances += 1
    return res


@_timed
def check_stability(rng: np.random.Generator, n: int = 200) -> CheckResult:
    """Bottleneck distance of homology diagrams never exceeds the sup-distance of the filtrations.

    Every fourth instance uses a perturbation below half the injectivity
    radius, where a witness matching of norm at most eps must also exist.
    """
    res = CheckResult("stability of homology diagrams")
    for it in range(n):
        easy = it % 4 == 3
        K, Kg, F, G, data = _interleaved_pair(rng, *((1 / 32, 1 / 32) if easy else (1.0, gen.STEP)))
        eps = data.epsilon
        YF, YG = mobius_inversion(F), mobius_inversion(G)
        d, gamma = bottleneck_distance(YF, YG)
        if not d <= eps:
            res.fail(f"instance {it}: d_B = {d} > eps = {eps}")
        if eps < injectivity_radius(F.criticals) / 2:
            if validate_matching(YF, YG, gamma) or not matching_norm(gamma) <= eps:
                res.fail(f"instance {it}: no witness of norm <= {eps} in the small-perturbation regime")
        elif easy:
            res.fail(f"instance {it}: generator missed the small-perturbation regime (eps={eps})")
        res.instances += 1
    if mobius_inversion(example_m1()) != M1_DIAGRAM:
        res.fail(f"M1 diagram is {mobius_inversion(example_m1())!r}")
    if mobius_inversion(example_m2()) != M2_DIAGRAM:
        res.fail(f"M2 diagram is {mobius_inversion(example_m2())!r}")
    return res


INTERPOLATION_TIMES = (0.0, 0.25, 0.5, 0.75, 1.0)


@_timed
def check_interpolation(rng: np.random.Generator, n: int = 50, slack: float = 1e-9) -> CheckResult:
    res = CheckResult("interpolation endpoints, constructibility and Lipschitz bound")
    for it in range(n):
        _, _, F, G, data = _interleaved_pair(rng, max_simplices=60, max_vertices=8)
        eps = data.epsilon
        diagrams = {}
        for t in INTERPOLATION_TIMES:
            K = interpolate(F, G, data, t)
            problems = check_constructible(K)
            if problems:
                res.fail(f"instance {it}, t={t}: {problems[0]}")
            diagrams[t] = mobius_inversion(K)
        if diagrams[0.0] != mobius_inversion(F):
            res.fail(f"instance {it}: K_0 diagram {diagrams[0.0]!r} differs from F")
        if diagrams[1.0] != mobius_inversion(G):
            res.fail(f"instance {it}: K_1 diagram {diagrams[1.0]!r} differs from G")
        for t, s in combinations(INTERPOLATION_TIMES, 2):
            d, _ = bottleneck_distance(diagrams[t], diagrams[s])
            if not d <= eps * abs(t - s) + slack:
                res.fail(f"instance {it}: d_B(K_{t}, K_{s}) = {d} > {eps * abs(t - s)}")
        res.instances += 1
    return res


@_timed
def check_finab_golden(rng: np.random.Generator | None = None) -> CheckResult:
    res = CheckResult("finite abelian golden diagram and classification")
    got = mobius_inversion(example_m2())
    if got != M2_DIAGRAM:
        res.fail(f"M2 diagram is {got!r}")
    res.instances += 1
    for p in (2, 3, 5):
        for n in range(1, 6):
            c = bk.classify(bk.FinAbObject.cyclic(p ** n))
            if c != primes({p: n}):
                res.fail(f"classify(Z/{p}^{n}) = {c!r}")
            res.instances += 1
    return res


# name -> (function, count used by the acceptance suite)
SUITES = {
    "mobius-classical": (check_mobius_matches_classical, 200),
    "positivity": (check_positivity, 1000),
    "order-reversing": (check_order_reversing, 1000),
    "corner-sums": (check_corner_sums, 1000),
    "box-lemma": (check_box_lemma, 200),
    "bottleneck-oracle": (check_bottleneck_oracle, 500),
    "stability": (check_stability, 200),
    "interpolation": (check_interpolation, 50),
    "finab-golden": (check_finab_golden, None),
}


def run_all(seed: int = 0, scale: float = 1.0) -> list[CheckResult]:
    """Run every suite with its own child generator; ``scale`` shrinks the instance counts."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    out = []
    for (name, (fn, count)), ss in zip(SUITES.items(), children):
        rng = np.random.default_rng(ss)
        out.append(fn(rng) if count is None else fn(rng, max(1, int(count * scale))))
    return out
