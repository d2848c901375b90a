"""Meridian profiles r(t) of rotational hypersurfaces."""
from __future__ import annotations

import logging
import math
from typing import Callable

import attr
import numpy as np

from .const import (
    PROFILE_CIRCLE,
    PROFILE_CONSTANT,
    PROFILE_COSH,
    PROFILE_CUSTOM,
    PROFILE_TAGS,
)
from .exceptions import ConfigSemantic, ProfileDomain

_LOGGER = logging.getLogger(__name__)

Evaluator = Callable[[float], float]


@attr.s(slots=True, frozen=True)
class ProfileDerivatives:
    """r and its first four derivatives at one t."""

    t: float = attr.ib()
    r: float = attr.ib()
    r1: float = attr.ib()
    r2: float = attr.ib()
    r3: float = attr.ib()
    r4: float = attr.ib()

    @property
    def f(self) -> float:
        """Length factor 1 + r'^2 of the meridian."""
        return 1.0 + self.r1 * self.r1


@attr.s(slots=True, frozen=True, eq=False)
class ProfileCurve:
    """Meridian r(t) > 0 with derivative evaluators on an open domain.

    Centers of the parallel spheres sit at t * e on the rotation axis.
    """

    r: Evaluator = attr.ib()
    r1: Evaluator = attr.ib()
    r2: Evaluator = attr.ib()
    r3: Evaluator = attr.ib()
    r4: Evaluator = attr.ib()
    domain: tuple = attr.ib(default=(-math.inf, math.inf), converter=tuple)
    tag: str = attr.ib(default=PROFILE_CUSTOM)
    params: dict = attr.ib(factory=dict)

    @tag.validator
    def _check_tag(self, attribute, value) -> None:
        if value not in PROFILE_TAGS:
            raise ConfigSemantic(f"unknown profile family '{value}'")

    def contains(self, t: float) -> bool:
        """True when t lies strictly inside the domain."""
        return self.domain[0] < t < self.domain[1]

    def derivatives(self, t: float) -> ProfileDerivatives:
        """Evaluate r, r', r'', r''', r'''' at t.

        Raises:
            ProfileDomain: t outside the domain or r(t) <= 0
        """
        t = float(t)
        if not self.contains(t):
            raise ProfileDomain(f"t={t} outside profile domain {self.domain}")
        radius = float(self.r(t))
        if not radius > 0.0:
            raise ProfileDomain(f"profile radius {radius} not positive at t={t}")
        return ProfileDerivatives(
            t=t,
            r=radius,
            r1=float(self.r1(t)),
            r2=float(self.r2(t)),
            r3=float(self.r3(t)),
            r4=float(self.r4(t)),
        )

    def sample(self, count: int, margin: float = 0.05, span: tuple | None = None) -> np.ndarray:
        """Evenly spaced t values inside the domain (or inside span)."""
        low, high = span if span is not None else self.domain
        if not math.isfinite(low) or not math.isfinite(high):
            low, high = max(low, -1.0), min(high, 1.0)
        width = high - low
        return np.linspace(low + margin * width, high - margin * width, count)

    def consistency_residual(self, t: float, step: float = 1e-4) -> float:
        """Largest relative mismatch between each derivative and a central difference
        of the previous one."""
        evaluators = (self.r, self.r1, self.r2, self.r3, self.r4)
        worst = 0.0
        for lower, upper in zip(evaluators, evaluators[1:]):
            estimate = (lower(t + step) - lower(t - step)) / (2.0 * step)
            exact = upper(t)
            worst = max(worst, abs(estimate - exact) / max(1.0, abs(exact)))
        return worst


def constant_profile(radius: float) -> ProfileCurve:
    """r = radius, the cylinder over a round sphere."""
    if radius <= 0:
        raise ConfigSemantic("profile radius must be positive")
    zero = lambda t: 0.0  # noqa: E731
    return ProfileCurve(
        r=lambda t: radius,
        r1=zero,
        r2=zero,
        r3=zero,
        r4=zero,
        tag=PROFILE_CONSTANT,
        params={"radius": radius},
    )


def circle_profile(radius: float) -> ProfileCurve:
    """r = sqrt(radius^2 - t^2), the round sphere of that radius."""
    if radius <= 0:
        raise ConfigSemantic("profile radius must be positive")
    rho2 = radius * radius

    def r(t):
        return math.sqrt(rho2 - t * t)

    return ProfileCurve(
        r=r,
        r1=lambda t: -t / r(t),
        r2=lambda t: -rho2 / r(t) ** 3,
        r3=lambda t: -3.0 * rho2 * t / r(t) ** 5,
        r4=lambda t: -3.0 * rho2 * (r(t) ** 2 + 5.0 * t * t) / r(t) ** 7,
        domain=(-radius, radius),
        tag=PROFILE_CIRCLE,
        params={"radius": radius},
    )


def cosh_profile(scale: float = 1.0) -> ProfileCurve:
    """r = c cosh(t / c), the catenoid meridian."""
    if scale <= 0:
        raise ConfigSemantic("cosh scale must be positive")
    c = scale
    return ProfileCurve(
        r=lambda t: c * math.cosh(t / c),
        r1=lambda t: math.sinh(t / c),
        r2=lambda t: math.cosh(t / c) / c,
        r3=lambda t: math.sinh(t / c) / c ** 2,
        r4=lambda t: math.cosh(t / c) / c ** 3,
        tag=PROFILE_COSH,
        params={"scale": scale},
    )


def custom_profile(
    r: Evaluator,
    r1: Evaluator,
    r2: Evaluator,
    r3: Evaluator,
    r4: Evaluator | None = None,
    domain: tuple = (-math.inf, math.inf),
    step: float = 1e-4,
) -> ProfileCurve:
    """Profile from user evaluators; r'''' falls back to a central difference of r'''."""
    if r4 is None:

        def r4(t):
            return (r3(t + step) - r3(t - step)) / (2.0 * step)

    return ProfileCurve(r=r, r1=r1, r2=r2, r3=r3, r4=r4, domain=domain, tag=PROFILE_CUSTOM)
