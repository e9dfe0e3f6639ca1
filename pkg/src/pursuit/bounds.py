"""Closed-form tail bounds and the special functions behind the analysis.

Everything here is a direct numeric evaluator: binomial tail bounds of
Chernoff/Bernstein shape, the rate function psi, the family
f_eps(x) = x*(log(eps*x) - 1) with its root g(eps), and the piecewise
linear zigzag exponent.  The bound evaluators return valid upper bounds
for the stated tail probabilities; tests check them against Monte Carlo
frequencies.

Naming note: `dev_eps` is a relative deviation (Chernoff parameter);
the symbol `eps` in f_eps/g_eps is the edge-density margin and is a
different quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "TailBound",
    "chernoff_relative",
    "chernoff_additive",
    "chernoff_lower",
    "bernstein_degree",
    "psi",
    "f_eps",
    "g_eps",
    "zigzag",
]

_FORMS = ("relative-Chernoff", "additive-Chernoff", "lower-Chernoff", "Bernstein")


@dataclass(frozen=True)
class TailBound:
    """A bound value together with the form and inputs that produced it."""

    form: str
    value: float
    params: dict

    def __post_init__(self):
        if self.form not in _FORMS:
            raise ValueError(f"unknown bound form {self.form!r}")
        if not 0.0 <= self.value:
            raise ValueError("bound value must be non-negative")


def chernoff_relative(mean: float, dev_eps: float) -> TailBound:
    """P(|X - EX| >= dev_eps*EX) <= 2*exp(-dev_eps^2*EX/3), for 0 < dev_eps < 3/2."""
    if mean <= 0:
        raise ValueError("mean must be positive")
    if not 0.0 < dev_eps < 1.5:
        raise ValueError("dev_eps must lie in (0, 3/2)")
    value = 2.0 * math.exp(-dev_eps * dev_eps * mean / 3.0)
    return TailBound("relative-Chernoff", value, {"mean": mean, "dev_eps": dev_eps})


def chernoff_additive(n: int, p: float, a: float) -> TailBound:
    """P(|X - np| > a) < 2*exp(-2*a^2/n) for X ~ Bin(n, p)."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    if a < 0:
        raise ValueError("a must be non-negative")
    value = 2.0 * math.exp(-2.0 * a * a / n)
    return TailBound("additive-Chernoff", value, {"n": n, "p": p, "a": a})


def psi(x: float) -> float:
    """psi(x) = (1+x)*log(1+x) - x for x >= -1, with psi(-1) = 1."""
    if x < -1.0:
        raise ValueError("psi is defined for x >= -1")
    if x == -1.0:
        return 1.0
    return (1.0 + x) * math.log1p(x) - x


def chernoff_lower(mean: float, t: float) -> TailBound:
    """P(X <= EX - t) <= exp(-EX*psi(-t/EX)) for 0 <= t <= EX."""
    if mean <= 0:
        raise ValueError("mean must be positive")
    if not 0.0 <= t <= mean:
        raise ValueError("t must lie in [0, mean]")
    value = math.exp(-mean * psi(-t / mean))
    return TailBound("lower-Chernoff", value, {"mean": mean, "t": t})


def bernstein_degree(mean: float, x: float) -> TailBound:
    """P(X >= mean + x*mean) <= exp(-x^2*mean / (2*(1 + x/3))).

    At x = 7.5 the exponent coefficient x^2/(1 + x/3) exceeds 16, which
    is the margin the degree-cap argument uses.
    """
    if mean <= 0:
        raise ValueError("mean must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    value = math.exp(-x * x * mean / (2.0 * (1.0 + x / 3.0)))
    return TailBound("Bernstein", value, {"mean": mean, "x": x})


# ---------------------------------------------------------------------------
# f_eps and its root


def f_eps(eps: float, x: float) -> float:
    """f_eps(x) = x*(log(eps*x) - 1) on x in (0, 1/eps], eps in (0, 1].

    Non-increasing on its domain, with f_eps(1/eps) = -1/eps <= -1.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must be in (0, 1]")
    if not 0.0 < x <= 1.0 / eps:
        raise ValueError("x must be in (0, 1/eps]")
    return x * (math.log(eps * x) - 1.0)


def g_eps(eps: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """The unique root of f_eps(x) = -1/2, found by bisection.

    The bracket is [eps/e^2, 1/eps]: the left end has
    f_eps = (eps/e^2)*(2*log(eps) - 3) >= -3/e^2 > -1/2 and the right end
    has f_eps = -1/eps <= -1, so the sign change is guaranteed.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must be in (0, 1]")
    lo = eps / math.e**2
    hi = 1.0 / eps
    flo = f_eps(eps, lo) + 0.5
    fhi = f_eps(eps, hi) + 0.5
    if not (flo > 0.0 > fhi):
        raise ArithmeticError("bisection bracket failed")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f_eps(eps, mid) + 0.5
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def zigzag(x: float) -> float:
    """Piecewise linear exponent profile on (0, 1].

    On [1/(2j+1), 1/(2j)] the value is j*x (ascending piece), on
    [1/(2j), 1/(2j-1)] it is 1 - j*x (descending piece).  Peaks of height
    exactly 1/2 sit at x = 1/(2j); the pieces agree at every breakpoint
    1/k and the value at x = 1 is 0.
    """
    if not 0.0 < x <= 1.0:
        raise ValueError("x must be in (0, 1]")
    if x >= 0.5:
        return 1.0 - x
    # adjacent pieces agree at every breakpoint 1/k, so float error in
    # floor(1/x) at a boundary cannot change the value
    k = int(math.floor(1.0 / x))
    if k % 2 == 0:
        j = k // 2
        return j * x
    j = (k + 1) // 2
    return 1.0 - j * x
