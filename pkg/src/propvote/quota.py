"""Quota values and threshold semantics shared by every rule and axiom tester.

A quota couples an exact rational value with a comparison mode.  INCLUSIVE
means "support >= value".  STRICT means "support > value" and stands for the
mathematical threshold ``value + epsilon`` for arbitrarily small positive
epsilon, so no concrete epsilon ever appears in the arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction


class QuotaMode(enum.Enum):
    INCLUSIVE = "inclusive"
    STRICT = "strict"


@dataclass(frozen=True)
class Quota:
    """An exact rational support threshold with its comparison mode."""

    value: Fraction
    mode: QuotaMode = QuotaMode.INCLUSIVE

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("quota value must be positive")


def hare_quota(n: int, k: int) -> Quota:
    """The Hare quota n/k, met inclusively."""
    _check_nk(n, k)
    return Quota(Fraction(n, k), QuotaMode.INCLUSIVE)


def droop_quota(n: int, k: int) -> Quota:
    """The Droop quota n/(k+1) + epsilon, modeled as a strict threshold.

    The rounded integer variant floor(n/(k+1)) + 1 is deliberately not used;
    the strict mode captures the "slightly more than n/(k+1)" intent exactly.
    """
    _check_nk(n, k)
    return Quota(Fraction(n, k + 1), QuotaMode.STRICT)


def default_quota(n: int, k: int, m: int) -> Quota:
    """The default committee quota

        n/(k+1) + (floor(n/(k+1)) + 1 - n/(k+1)) / (m+1),

    met inclusively.  It sits just above n/(k+1), close enough that
    ``l * value < l * n/(k+1) + 1`` for every l <= k.
    """
    _check_nk(n, k)
    if m < 1:
        raise ValueError("m must be >= 1")
    base = Fraction(n, k + 1)
    return Quota(base + Fraction(base.__floor__() + 1 - base, m + 1), QuotaMode.INCLUSIVE)


def support_meets(support: Fraction | int, q: Quota) -> bool:
    """Whether ``support`` satisfies the quota under its comparison mode."""
    if support < 0:
        raise ValueError("support must be nonnegative")
    if q.mode is QuotaMode.INCLUSIVE:
        return support >= q.value
    return support > q.value


def max_multiple(total: Fraction | int, q: Quota) -> int:
    """The largest l >= 0 such that a demand of l quotas is met by ``total``.

    INCLUSIVE: largest l with l*value <= total.  STRICT: largest l with
    l*value < total.  This is the binding l for proportionality demands.
    """
    if total < 0:
        raise ValueError("total must be nonnegative")
    ratio = Fraction(total) / q.value
    if q.mode is QuotaMode.INCLUSIVE:
        return max(0, ratio.__floor__())
    floor = ratio.__floor__()
    return max(0, floor - 1 if floor == ratio else floor)


def scaled(q: Quota, ell: int) -> Quota:
    """The quota demanding ``ell`` full quotas of support."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return Quota(q.value * ell, q.mode)


def admissible(q: Quota, n: int, k: int) -> bool:
    """Whether the effective threshold lies in (n/(k+1), n/k].

    Rules are guaranteed to fill all seats for quotas in this interval.  A
    strict threshold at exactly n/(k+1) is admissible (it encodes
    n/(k+1)+epsilon); a strict threshold at n/k is not.
    """
    lo = Fraction(n, k + 1)
    hi = Fraction(n, k)
    if q.mode is QuotaMode.STRICT:
        return lo <= q.value < hi
    return lo < q.value <= hi


def threshold_leq(a: Quota, b: Quota) -> bool:
    """Effective-threshold comparison: True iff meeting ``b`` implies meeting ``a``."""
    if a.value != b.value:
        return a.value < b.value
    return a.mode is QuotaMode.INCLUSIVE or b.mode is QuotaMode.STRICT


def parse_quota(spec: str, n: int, k: int, m: int) -> Quota:
    """Parse a CLI quota spec: ``hare``, ``droop``, ``default`` or
    ``<p>/<q>[,strict]`` (also plain integers like ``20``)."""
    text = spec.strip().lower()
    if text == "hare":
        return hare_quota(n, k)
    if text == "droop":
        return droop_quota(n, k)
    if text == "default":
        return default_quota(n, k, m)
    mode = QuotaMode.INCLUSIVE
    if text.endswith(",strict"):
        mode = QuotaMode.STRICT
        text = text[: -len(",strict")]
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse quota spec {spec!r}") from None
    return Quota(value, mode)


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
