"""Brute-force oracles, random generators and the verification suites.

Every sample in a suite draws from its own generator seeded by
``(seed, index)``, so reports do not depend on evaluation order or on the
number of worker processes.
"""

from __future__ import annotations

import cmath
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any

import numpy as np

from . import autgroup, foliation, membership
from .errors import PreconditionError
from .numerics import (
    TetraPoint,
    disc_compose,
    is_triangular,
    psi,
)

ORACLE_BAND = 1e-3
INTERIOR_CAP = 0.98
BOX_HALF_WIDTH = 1.2

# per-property tolerances of the invariance suite
INVARIANCE_TOLERANCES = {
    "homomorphism": 1e-11,
    "left_action_law": 1e-11,
    "right_action_law": 1e-11,
    "actions_commute": 1e-12,
    "flip_diamond": 1e-12,
    "star_relation": 1e-12,
    "compose_pointwise": 1e-10,
    "inverse_pointwise": 1e-10,
    "associativity": 1e-10,
    "membership_preserved": 0.0,
    "triangular_preserved": 1e-9,
    "canonical_radius": 1e-9,
    "normalizing_image": 1e-9,
    "transport_right": 1e-10,
    "transport_left": 1e-10,
}


@dataclass
class SuiteReport:
    suite: str
    samples_run: int
    seed: int
    disagreements: list[dict[str, Any]] = field(default_factory=list)
    worst_deviation: float = 0.0
    elapsed: float = 0.0
    borderline: int = 0
    worst_by_property: dict[str, float] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def def_min_modulus(x: TetraPoint, n: int = membership.DEFAULT_GRID) -> float:
    """Sampled minimum of |1 - x1 z - x2 w + x3 z w| over the closed bidisc."""
    return membership.in_e_definition(x, n)[1]


def sup_psi_sampled(x: TetraPoint, n: int = 4096) -> float:
    """max |psi(z, x)| over n equispaced points of the unit circle."""
    if not abs(x.x2) < 1.0:
        raise PreconditionError("sup_psi_sampled needs |x2| < 1")
    if is_triangular(x):
        raise PreconditionError("sup_psi_sampled is undefined for triangular points")
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return float(np.abs((x.x3 * z - x.x1) / (x.x2 * z - 1)).max())


def _random_phase(rng: np.random.Generator) -> complex:
    return cmath.exp(2j * cmath.pi * float(rng.random()))


def random_leaf(rng: np.random.Generator, cap: float = INTERIOR_CAP) -> tuple[complex, complex]:
    s = cap * float(rng.random())
    t = float(rng.random())
    return s * t * _random_phase(rng), s * (1.0 - t) * _random_phase(rng)


def random_disc_point(rng: np.random.Generator, cap: float = INTERIOR_CAP) -> complex:
    return cap * float(rng.random()) ** 0.5 * _random_phase(rng)


def random_interior_point(rng: np.random.Generator, cap: float = INTERIOR_CAP) -> TetraPoint:
    """A point on a random leaf with |b1| + |b2| <= cap at |lambda| <= cap."""
    b1, b2 = random_leaf(rng, cap)
    return foliation.leaf_eval(foliation.BetaLeaf(b1, b2), random_disc_point(rng, cap))


def random_box_point(rng: np.random.Generator, half_width: float = BOX_HALF_WIDTH) -> TetraPoint:
    v = rng.uniform(-half_width, half_width, 6)
    return TetraPoint(complex(v[0], v[1]), complex(v[2], v[3]), complex(v[4], v[5]))


def random_triangular_point(rng: np.random.Generator, cap: float = INTERIOR_CAP) -> TetraPoint:
    a, b = random_disc_point(rng, cap), random_disc_point(rng, cap)
    return TetraPoint(a, b, a * b)


def point_to_wire(x: TetraPoint) -> list[list[float]]:
    return [[v.real, v.imag] for v in x]


# -- cross-validation of the characterisations ------------------------------


def _cross_sample(
    index: int, seed: int, band: float, grid: int, oracle_band: float, tol: float
) -> tuple[bool, list[dict[str, Any]]]:
    rng = sample_rng(seed, index)
    interior = index % 2 == 0
    x = random_interior_point(rng) if interior else random_box_point(rng)
    report = membership.classify(x, grid_size=grid, band=band, tol=tol)
    margin = report.margins["inequality"]
    problems: list[dict[str, Any]] = []

    def record(kind: str) -> None:
        problems.append(
            {
                "kind": kind,
                "index": index,
                "point": point_to_wire(x),
                "verdicts": dict(report.verdicts),
                "margins": dict(report.margins),
            }
        )

    if not report.borderline:
        formula = {k: v for k, v in report.verdicts.items() if k != "definition"}
        if len(set(formula.values())) > 1:
            record("characterisations")
        if interior and not report.verdicts["inequality"]:
            record("generator")
        flipped = membership.inequality_margin(autgroup.flip_point(x))
        if abs(flipped) >= band and (flipped > 0) != (margin > 0):
            record("flip")
        if report.verdicts["inequality"] and not all(abs(v) < 1.0 for v in x):
            record("coordinate_bound")
    if abs(margin) > oracle_band and report.verdicts["definition"] != (margin > 0):
        record("definition_oracle")
    return report.borderline, problems


def cross_validate(
    count: int = 10000,
    seed: int = 0,
    band: float = membership.BOUNDARY_BAND,
    grid: int = membership.DEFAULT_GRID,
    oracle_band: float = ORACLE_BAND,
    tol: float = membership.DEFINITION_TOL,
    workers: int = 1,
) -> SuiteReport:
    """Play the five characterisations against each other on random points.

    Even-indexed samples are built on random leaves (so lie inside); odd ones
    are uniform in a box around the domain. Closed-form verdicts are compared
    away from the ``band`` around the boundary; the grid oracle (threshold
    ``tol``) is compared where the inequality margin exceeds ``oracle_band``.
    """
    start = time.perf_counter()
    fn = partial(
        _cross_sample, seed=seed, band=band, grid=grid, oracle_band=oracle_band, tol=tol
    )
    results = _run(fn, count, workers)
    report = SuiteReport(suite="cross", samples_run=count, seed=seed)
    for borderline, problems in results:
        report.borderline += int(borderline)
        report.disagreements.extend(problems)
    report.worst_deviation = max(
        (abs(p["margins"]["inequality"]) for p in report.disagreements), default=0.0
    )
    report.elapsed = time.perf_counter() - start
    return report


def _run(fn, count: int, workers: int) -> list:
    if workers <= 1:
        return [fn(i) for i in range(count)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count), chunksize=max(1, count // (8 * workers))))


# -- group and foliation invariances ----------------------------------------


def _z_samples(rng: np.random.Generator, k: int = 32) -> list[complex]:
    return [random_disc_point(rng, 0.99) for _ in range(k)]


def _invariance_sample(index: int, seed: int) -> dict[str, float]:
    rng = sample_rng(seed, index)
    x = random_interior_point(rng)
    y = random_interior_point(rng)
    u = autgroup.random_disc_automorphism(rng)
    v = autgroup.random_disc_automorphism(rng)
    g = autgroup.random_automorphism(rng)
    h = autgroup.random_automorphism(rng)
    k = autgroup.random_automorphism(rng)
    zs = _z_samples(rng)
    dev: dict[str, float] = {}

    xy = autgroup.diamond(x, y)
    dev["homomorphism"] = max(abs(psi(z, xy) - psi(psi(z, y), x)) for z in zs)
    dev["left_action_law"] = autgroup.act_left(u, autgroup.act_left(v, x)).distance(
        autgroup.act_left(disc_compose(u, v), x)
    )
    dev["right_action_law"] = autgroup.act_right(autgroup.act_right(x, v), u).distance(
        autgroup.act_right(x, disc_compose(v, u))
    )
    dev["actions_commute"] = autgroup.act_left(u, autgroup.act_right(x, v)).distance(
        autgroup.act_right(autgroup.act_left(u, x), v)
    )
    dev["flip_diamond"] = autgroup.flip_point(xy).distance(
        autgroup.diamond(autgroup.flip_point(y), autgroup.flip_point(x))
    )
    dev["star_relation"] = autgroup.flip_point(autgroup.act_left(u, x)).distance(
        autgroup.act_right(autgroup.flip_point(x), autgroup.star(u))
    )
    gx = autgroup.apply(g, x)
    dev["compose_pointwise"] = autgroup.apply(autgroup.compose(g, h), x).distance(
        autgroup.apply(g, autgroup.apply(h, x))
    )
    dev["inverse_pointwise"] = autgroup.apply(autgroup.inverse(g), gx).distance(x)
    dev["associativity"] = autgroup.apply(
        autgroup.compose(autgroup.compose(g, h), k), x
    ).distance(autgroup.apply(autgroup.compose(g, autgroup.compose(h, k)), x))
    # 0 when membership is preserved, else the size of the violation
    dev["membership_preserved"] = max(0.0, -membership.inequality_margin(gx))
    t = random_triangular_point(rng)
    gt = autgroup.apply(g, t)
    dev["triangular_preserved"] = abs(gt.x1 * gt.x2 - gt.x3)
    r = foliation.canonical_radius(x)
    dev["canonical_radius"] = abs(foliation.canonical_radius(gx) - r)
    hx = autgroup.apply(foliation.normalizing_automorphism(x), x)
    dev["normalizing_image"] = hx.distance(TetraPoint(0, 0, r))

    leaf = foliation.BetaLeaf(*random_leaf(rng))
    right = foliation.transport_right(leaf, v)
    left = foliation.transport_left(u, leaf)
    dev["transport_right"] = max(
        autgroup.act_right(foliation.leaf_eval(leaf, z), v).distance(
            foliation.leaf_eval(right.target, right.param_map(z))
        )
        for z in zs
    )
    dev["transport_left"] = max(
        autgroup.act_left(u, foliation.leaf_eval(leaf, z)).distance(
            foliation.leaf_eval(left.target, left.param_map(z))
        )
        for z in zs
    )
    return dev


def invariance_suite(count: int = 1000, seed: int = 0, workers: int = 1) -> SuiteReport:
    """Group laws, membership/triangularity preservation, orbit invariant, leaf transport."""
    start = time.perf_counter()
    fn = partial(_invariance_sample, seed=seed)
    results = _run(fn, count, workers)
    report = SuiteReport(suite="invariance", samples_run=count, seed=seed)
    worst = {name: 0.0 for name in INVARIANCE_TOLERANCES}
    for index, dev in enumerate(results):
        for name, value in dev.items():
            worst[name] = max(worst[name], value)
            if not value <= INVARIANCE_TOLERANCES[name]:
                report.disagreements.append(
                    {"kind": name, "index": index, "deviation": value}
                )
    report.worst_by_property = worst
    report.worst_deviation = max(
        (d["deviation"] for d in report.disagreements), default=0.0
    )
    report.elapsed = time.perf_counter() - start
    return report


SUITES = {"cross": cross_validate, "invariance": invariance_suite}
