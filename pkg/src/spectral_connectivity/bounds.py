"""Closed-form quantities and spectral thresholds for connectivity certification.

Every threshold is a pure function of a :class:`ParamSet`.  Values are
computed as exact ``Fraction`` objects and exposed as floats; a threshold
whose preconditions fail (including a nonpositive denominator) is returned
with ``value=None`` and a reason, never as NaN or infinity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DomainError, PreconditionDeltaError
from .spectra import check_pencil


@dataclass(frozen=True)
class ParamSet:
    n: int
    delta: int
    Delta: int
    girth: int | None  # None: acyclic
    omega: int  # used as the clique bound r
    k: int = 2

    def with_k(self, k: int) -> "ParamSet":
        return replace(self, k=k)


@dataclass(frozen=True)
class Threshold:
    theorem: str
    value: float | None
    strict: bool
    exact: Fraction | None = None
    reason: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None


def _inapplicable(theorem: str, strict: bool, reason: str) -> Threshold:
    return Threshold(theorem, None, strict, None, reason)


def _threshold(theorem: str, strict: bool, exact: Fraction) -> Threshold:
    return Threshold(theorem, float(exact), strict, exact)


def _geometric(base: int, terms: int) -> int:
    """``sum_{i=0}^{terms-1} base^i``."""
    return sum(base ** i for i in range(terms))


def moore_bound(delta: int, g: int) -> int:
    if delta < 2 or g < 3:
        raise DomainError(f"moore_bound needs delta >= 2 and g >= 3, got ({delta}, {g})")
    t = (g - 1) // 2
    if g % 2:
        return 1 + delta * _geometric(delta - 1, t)
    return 2 * _geometric(delta - 1, t + 1)


def phi(delta: int, r: int) -> int:
    """``max{delta + 1, floor(r delta / (r - 1))}``."""
    if r < 2 or delta < 1:
        raise DomainError(f"phi needs r >= 2 and delta >= 1, got ({delta}, {r})")
    return max(delta + 1, r * delta // (r - 1))


def f_prior(delta: int, g: int) -> int:
    if delta == 2 and g >= 3:
        return g
    t = (g - 1) // 2
    return moore_bound(delta, g) - sum((delta - 1) ** i for i in range(1, t))


def nu_prior(delta: int, g: int, k: int) -> int:
    if not delta >= k >= 2:
        raise DomainError("nu_prior needs delta >= k >= 2")
    t = (g - 1) // 2
    if g % 2 == 0 and delta == 2:
        return 2 * t + 1
    return moore_bound(delta, g) - (k - 1) * _geometric(delta - 1, t)


def _degree_ok(p: ParamSet) -> str:
    if p.k < 2:
        return "k < 2"
    if p.delta < p.k:
        return "delta < k"
    return ""


def _girth_ok(p: ParamSet) -> str:
    if p.girth is None:
        return "acyclic graph has no girth"
    if p.girth < 3:
        return "girth < 3"
    return _degree_ok(p)


def _product_threshold(theorem: str, p: ParamSet, size: Fraction | int, numerator: Fraction) -> Threshold:
    """``numerator / (size (n - size))`` guarded against nonpositive denominators."""
    denominator = size * (p.n - size)
    if size <= 0 or p.n <= size:
        return _inapplicable(theorem, False, f"n <= {size}")
    return _threshold(theorem, False, Fraction(numerator) / denominator)


def edge_girth_threshold(p: ParamSet) -> Threshold:
    """``mu >= (k-1) n / (N (n - N))`` certifies edge-connectivity >= k."""
    reason = _girth_ok(p)
    if reason:
        return _inapplicable("edge_girth", False, reason)
    N = moore_bound(p.delta, p.girth)
    return _product_threshold("edge_girth", p, N, Fraction((p.k - 1) * p.n))


def edge_clique_threshold(p: ParamSet) -> Threshold:
    reason = _degree_ok(p) or ("r < 2" if p.omega < 2 else "")
    if reason:
        return _inapplicable("edge_clique", False, reason)
    size = phi(p.delta, p.omega)
    return _product_threshold("edge_clique", p, size, Fraction((p.k - 1) * p.n))


def _vertex_threshold(theorem: str, p: ParamSet, subtracted: Fraction) -> Threshold:
    denominator = p.n * (p.n - p.k + 1) - subtracted
    if denominator <= 0:
        return _inapplicable(theorem, True, "nonpositive denominator")
    return _threshold(theorem, True, Fraction(p.n * (p.k - 1) * p.Delta) / denominator)


def vertex_girth_threshold(p: ParamSet) -> Threshold:
    """``mu > n (k-1) Delta / (n (n-k+1) - (n - 2N + k - 1)^2)`` certifies kappa >= k."""
    reason = _girth_ok(p)
    if reason:
        return _inapplicable("vertex_girth", True, reason)
    N = moore_bound(p.delta, p.girth)
    base = p.n - 2 * N + p.k - 1
    if base < 0:
        return _inapplicable("vertex_girth", True, "n < 2N - k + 1")
    return _vertex_threshold("vertex_girth", p, Fraction(base * base))


def clique_ratio(delta: int, r: int) -> Fraction:
    """``r delta / (r - 1)`` as an exact rational."""
    return Fraction(r * delta, r - 1)


def vertex_clique_threshold(p: ParamSet) -> Threshold:
    reason = _degree_ok(p) or ("r < 3" if p.omega < 3 else "")
    if reason:
        return _inapplicable("vertex_clique", True, reason)
    r, d, k, n = p.omega, p.delta, p.k, p.n
    base1 = n - Fraction(2 * (r - 1) * d, r - 2) + Fraction(r * (k - 1), r - 2)
    base2 = n - 2 * clique_ratio(d, r) + k - 1
    if base1 < 0 or base2 < 0:
        return _inapplicable("vertex_clique", True, "negative base in the squared terms")
    return _vertex_threshold("vertex_clique", p, max(base1 * base1, base2 * base2))


def _check_clique_delta(p: ParamSet) -> None:
    if p.omega < 2 or p.k < 2:
        raise DomainError("need r >= 2 and k >= 2")
    if p.delta <= (p.k - 1) * (p.omega - 1):
        raise PreconditionDeltaError(
            f"need delta > (k-1)(r-1) = {(p.k - 1) * (p.omega - 1)}, got delta={p.delta}"
        )


def vertex_clique2_threshold(p: ParamSet) -> Threshold:
    """Raises :class:`PreconditionDeltaError` unless ``delta > (k-1)(r-1)``."""
    _check_clique_delta(p)
    base = p.n - 2 * clique_ratio(p.delta, p.omega) + p.k - 1
    if base < 0:
        return _inapplicable("vertex_clique2", True, "n < 2 r delta / (r-1) - k + 1")
    return _vertex_threshold("vertex_clique2", p, base * base)


@dataclass(frozen=True)
class RatioCondition:
    """``mu1 / mu < cap`` (equivalently ``mu / mu1 > lower``) certifies kappa >= k."""

    theorem: str
    s: float
    cap: float
    lower: float


def _ratio(theorem: str, s: Fraction) -> RatioCondition:
    sf = float(s)
    root = math.sqrt(max(sf * sf - 1.0, 0.0))
    return RatioCondition(theorem, sf, sf + root, sf - root)


def ratio_girth_condition(p: ParamSet) -> RatioCondition:
    reason = _girth_ok(p)
    if reason:
        raise DomainError(reason)
    N = moore_bound(p.delta, p.girth)
    if p.n <= N:
        raise DomainError(f"n={p.n} <= N={N}")
    s = Fraction(2 * (N - p.k + 1) * (p.n - N), p.n * (p.k - 1)) + 1
    return _ratio("ratio_girth", s)


def ratio_clique_condition(p: ParamSet) -> RatioCondition:
    _check_clique_delta(p)
    m = clique_ratio(p.delta, p.omega)
    if p.n <= m:
        raise DomainError(f"n={p.n} <= r delta/(r-1)={m}")
    if m - p.k + 1 <= 0:
        raise DomainError("k - 1 >= r delta / (r-1)")
    s = 2 * (m - p.k + 1) * (p.n - m) / (p.n * (p.k - 1)) + 1
    return _ratio("ratio_clique", s)


class SmallOrder(enum.Flag):
    NONE = 0
    EDGE = enum.auto()  # edge-connectivity equals delta
    VERTEX = enum.auto()  # vertex-connectivity equals delta


def small_order_rule(p: ParamSet, kappa_hint: int | None = None) -> SmallOrder:
    """Connectivity forced to equal ``delta`` because ``n`` is small against the Moore bound.

    Without a hint for kappa the vertex test uses ``n < 2N - (delta - 1)``,
    which is what remains when kappa < delta.
    """
    if p.delta < 2 or p.girth is None or p.girth < 3:
        raise DomainError("small_order_rule needs delta >= 2 and finite girth")
    N = moore_bound(p.delta, p.girth)
    verdict = SmallOrder.NONE
    if p.n < 2 * N:
        verdict |= SmallOrder.EDGE
    kappa = p.delta - 1 if kappa_hint is None else kappa_hint
    if p.n < 2 * N - kappa:
        verdict |= SmallOrder.VERTEX
    return verdict


def courant_weyl_transfer(
    lambda2_ab: float, a: float, b: float, delta: int, p: float, strict: bool
) -> bool:
    """Whether ``lambda2(aD + bA) < (a+b) delta - b p`` (``<=`` when not strict).

    When it holds, the algebraic connectivity exceeds ``p`` (is at least ``p``).
    """
    check_pencil(a, b)
    if p < 0:
        raise DomainError("p must be nonnegative")
    bound = (a + b) * delta - b * p
    return lambda2_ab < bound if strict else lambda2_ab <= bound


# thresholds from earlier work, kept for side-by-side comparison

def prior_delta_plus_one_threshold(p: ParamSet) -> Threshold:
    """``(k-1) n / ((delta+1)(n-delta-1))`` for edge-connectivity."""
    reason = _degree_ok(p)
    if reason:
        return _inapplicable("prior_delta_plus_one", False, reason)
    return _product_threshold("prior_delta_plus_one", p, p.delta + 1, Fraction((p.k - 1) * p.n))


def prior_four_ninths_threshold(p: ParamSet) -> Threshold:
    """``(k-1) n / ((4/9) N (n - (4/9) N))``, for delta >= 3."""
    reason = _girth_ok(p) or ("delta < 3" if p.delta < 3 else "")
    if reason:
        return _inapplicable("prior_four_ninths", False, reason)
    size = Fraction(4, 9) * moore_bound(p.delta, p.girth)
    return _product_threshold("prior_four_ninths", p, size, Fraction((p.k - 1) * p.n))


def prior_f_threshold(p: ParamSet) -> Threshold:
    reason = _girth_ok(p)
    if reason:
        return _inapplicable("prior_f", False, reason)
    return _product_threshold("prior_f", p, f_prior(p.delta, p.girth), Fraction((p.k - 1) * p.n))


def prior_nu_threshold(p: ParamSet) -> Threshold:
    """``(k-1) n Delta / (2 nu (n - nu))`` for vertex-connectivity."""
    reason = _girth_ok(p)
    if reason:
        return _inapplicable("prior_nu", False, reason)
    nu = nu_prior(p.delta, p.girth, p.k)
    if nu <= 0 or p.n <= nu:
        return _inapplicable("prior_nu", False, f"n <= nu={nu}")
    return _threshold("prior_nu", False, Fraction((p.k - 1) * p.n * p.Delta, 2 * nu * (p.n - nu)))
