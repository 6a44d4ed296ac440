"""
Parameter selection for the composite oracles.

Sampling exponents stay exact `Fraction`s. The near-linear rule has two modes:

- ``paper-c``: c = 9 + 3*sqrt(13); kappa is the largest integer <= c*sqrt(k)/18 and i = k/kappa - 1.
- ``large-k``: kappa = ceil(sqrt(k/6)) and i = k/kappa - 1, meaningful for k >= 29, where c tends to 2*sqrt(6).

Both modes take k' = floor((k + 3(kappa-1)) / (6kappa-3)), the largest k' whose certificate
2 + 3(2k'-1)(2kappa-1) <= 2k-1 holds.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exception import ParameterError
from .result import Err, Ok, Result

logger = logging.getLogger(__name__)

ParamMode = Literal["paper-c", "large-k"]
LARGE_K_MIN = 29


@dataclass(frozen=True)
class Radical:
    """The real number a + b*sqrt(r), kept exact."""

    a: int
    b: int
    r: int

    def __float__(self) -> float:
        return self.a + self.b * math.sqrt(self.r)

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.r})" if self.a else f"{self.b}*sqrt({self.r})"


RADICAL_C = Radical(9, 3, 13)
LARGE_K_C = Radical(0, 2, 6)


@dataclass(frozen=True)
class ParamsSmallK:
    """Parameters of the small-k oracle.

    Attributes:
        k (int): Target stretch parameter; the oracle has stretch 2k-1.
        k_prime (int): Spanner parameter floor(k/3).
        i (Fraction): Sampling exponent numerator; samples are drawn with p = n^(-i/k).
    """

    k: int
    k_prime: int
    i: Fraction

    @property
    def exponent(self) -> Fraction:
        return self.i / self.k

    @property
    def far_stretch(self) -> int:
        """Stretch of the d~2 estimate, 6k'-1."""
        return 6 * self.k_prime - 1


@dataclass(frozen=True)
class ParamsNearLinear:
    """Parameters of the near-linear oracle.

    Attributes:
        k (int): Target stretch parameter.
        mode (str): "paper-c" or "large-k".
        c (Radical): The constant of the mode.
        kappa (int): Level count of the restricted oracle over the spanner.
        i (Fraction): Sampling exponent numerator, i = k/kappa - 1.
        k_prime (int): Spanner parameter.
    """

    k: int
    mode: ParamMode
    c: Radical
    kappa: int
    i: Fraction
    k_prime: int

    @property
    def exponent(self) -> Fraction:
        return self.i / self.k

    @property
    def far_stretch(self) -> int:
        """Certified stretch 2 + 3(2k'-1)(2kappa-1) of the d~2 estimate."""
        return 2 + 3 * (2 * self.k_prime - 1) * (2 * self.kappa - 1)


def select_params_small_k(k: int) -> ParamsSmallK:
    """Pick k' = floor(k/3) and the exponent i per k mod 3.

    Raises:
        ParameterError: k < 3; such k have no k' >= 1.

    Examples:
        >>> select_params_small_k(6)
        ParamsSmallK(k=6, k_prime=2, i=Fraction(4, 1))
        >>> select_params_small_k(7).i
        Fraction(19, 4)
    """
    if k < 3:
        raise ParameterError(f"the small-k oracle needs k >= 3, got k={k}; build a warmup or plain tz oracle instead")
    k_prime = k // 3
    match k % 3:
        case 0:
            i = Fraction(k, 2) + 1
        case 1:
            i = Fraction(k - 1, 2) + Fraction(3 * k, 2 * (k - 1))
        case _:
            i = Fraction(k - 2, 2) + Fraction(2 * k - 1, k - 2)
    params = ParamsSmallK(k, k_prime, i)
    assert 0 < i <= k, f"exponent i={i} outside (0, {k}]"
    assert params.far_stretch <= 2 * k - 1, f"6k'-1 = {params.far_stretch} exceeds 2k-1 = {2 * k - 1}"
    return params


def _ceil_sqrt_ratio(k: int, d: int) -> int:
    """Smallest integer x with d * x^2 >= k."""
    x = math.isqrt(k // d)
    while d * x * x < k:
        x += 1
    return x


def _floor_radical_kappa(k: int) -> int:
    """Largest integer kappa with 18*kappa <= (9 + 3*sqrt(13)) * sqrt(k)."""
    kappa = int(float(RADICAL_C) * math.sqrt(k) / 18)
    # exact check of 18x - 9*sqrt(k) <= 3*sqrt(13k) on each side of the float estimate
    def fits(x: int) -> bool:
        lhs = 18 * x
        # lhs <= 9 sqrt(k) + 3 sqrt(13 k)  <=>  (lhs - 9 sqrt(k))^2 <= 117 k when lhs >= 9 sqrt(k)
        if lhs * lhs <= 81 * k:
            return True
        # lhs > 9 sqrt(k): square (lhs - 9 sqrt k) <= 3 sqrt(13k)  ->  lhs^2 + 81k - 117k <= 18 lhs sqrt(k)
        left = lhs * lhs - 36 * k
        return left <= 0 or left * left <= 324 * lhs * lhs * k

    while kappa > 0 and not fits(kappa):
        kappa -= 1
    while fits(kappa + 1):
        kappa += 1
    return kappa


def select_params_near_linear(k: int, mode: ParamMode = "paper-c") -> Result[ParamsNearLinear, str]:
    """Pick (kappa, i, k') for the near-linear oracle, or report why none fits.

    Returns:
        Result: Ok with the parameters, or Err with the infeasibility reason (i <= 0 or k' < 1).

    Examples:
        >>> p = select_params_near_linear(100).unwrap()
        >>> p.kappa, p.i, p.k_prime, p.far_stretch
        (11, Fraction(89, 11), 2, 191)
        >>> select_params_near_linear(1).is_err()
        True
    """
    if k < 1:
        return Err(f"k must be >= 1, got {k}")
    if mode == "paper-c":
        c = RADICAL_C
        kappa = _floor_radical_kappa(k)
    elif mode == "large-k":
        if k < LARGE_K_MIN:
            return Err(f"large-k mode needs k >= {LARGE_K_MIN}, got k={k}")
        c = LARGE_K_C
        kappa = _ceil_sqrt_ratio(k, 6)
    else:
        raise ParameterError(f"unknown parameter mode {mode!r}")

    if kappa < 1:
        return Err(f"k={k}: no level count kappa >= 1 fits")
    i = Fraction(k, kappa) - 1
    if i <= 0:
        return Err(f"k={k}: kappa={kappa} gives exponent i={i} <= 0")
    k_prime = (k + 3 * (kappa - 1)) // (6 * kappa - 3)
    if k_prime < 1:
        return Err(f"k={k}: kappa={kappa} gives k'={k_prime} < 1")

    params = ParamsNearLinear(k, mode, c, kappa, i, k_prime)
    assert math.ceil(Fraction(k) / (i + 1)) == kappa
    assert params.far_stretch <= 2 * k - 1, f"certificate {params.far_stretch} exceeds 2k-1 = {2 * k - 1}"
    logger.debug("near-linear parameters for k=%d (%s): kappa=%d i=%s k'=%d", k, mode, kappa, i, k_prime)
    return Ok(params)


def smallest_feasible_near_linear_k(mode: ParamMode = "paper-c", upper: int = 1000) -> int:
    """Smallest k for which `select_params_near_linear` succeeds."""
    for k in range(1, upper + 1):
        if select_params_near_linear(k, mode).is_ok():
            return k
    raise ParameterError(f"no feasible k <= {upper} in mode {mode!r}")


def warmup_spanner_parameter(epsilon: Fraction) -> int:
    """t_eps = ceil((ceil(1/eps) + 1) / 2), so the spanner stretch 2t_eps - 1 is at most ceil(1/eps) + 1.

    Examples:
        >>> warmup_spanner_parameter(Fraction(1, 3))
        2
        >>> warmup_spanner_parameter(Fraction(2))
        1
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError(f"epsilon must be > 0, got {epsilon}")
    inverse = math.ceil(1 / epsilon)
    return math.ceil(Fraction(inverse + 1, 2))
