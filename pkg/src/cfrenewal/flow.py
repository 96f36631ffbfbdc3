"""The suspension flow over the digit shift, and its correction function.

Above each point x of the invertible extension sits a vertical fiber of
height phi(x) = ln(a_1 + alpha_minus), and the flow moves upward with
unit speed, jumping from (x, phi(x)) to (step(x), 0).  The sum of roof
values along r steps is the Birkhoff sum S_r, and the key quantitative
fact is that ln q_n differs from S_n by a correction

    f_n = ln q_n - S_n,

which converges at rate |f_{k+1} - f_k| <= 2**(2-k) to a limit f, with
|f - f_n| <= 2**(3-n).  The correction is what aligns the denominator
threshold crossing (the renewal index n_R at level R) with the flow's
time crossing (the renewal time r at level ln R - f), which is the
mechanism behind the limiting overshoot law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cf import renewal_index
from .errors import InsufficientDigits
from .gauss import NaturalExtPoint

LN2 = math.log(2.0)


def roof_phi(p: NaturalExtPoint) -> float:
    """Roof value ln(a_1 + alpha_minus).

    Equals minus the logarithm of the backward coordinate of step(p),
    since that coordinate is 1/(a_1 + alpha_minus) by construction.
    """
    return math.log(p.digit(1) + p.alpha_minus)


def _forward_digits(p: NaturalExtPoint, n: int) -> tuple[int, ...]:
    """First n future digits, materializing from the tail if needed."""
    if len(p.fwd) >= n:
        return p.fwd[:n]
    return p.extended(n_fwd=n).fwd[:n]


def birkhoff_sum(p: NaturalExtPoint, r: int) -> float:
    """S_r = sum of roof values along the first r shift iterates.

    Evaluated through the backward-coordinate chain y' = 1/(a + y),
    which reproduces bit for bit the roof values seen by stepping the
    point, at a fraction of the cost.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return 0.0
    digits = _forward_digits(p, r)
    y = p.alpha_minus
    total = 0.0
    for a in digits:
        total += math.log(a + y)
        y = 1.0 / (a + y)
    return total


@dataclass(frozen=True)
class CorrectionSeries:
    """Partial corrections f_n, their limit, and the truncation bound."""

    partials: tuple[float, ...]
    limit: float
    error_bound: float


def correction_f(p: NaturalExtPoint, tol: float = 1e-9) -> CorrectionSeries:
    """Correction f = lim (ln q_n - S_n), truncated once 2**(3-n) < tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    n_stop = math.floor(3.0 - math.log2(tol)) + 1
    digits = _forward_digits(p, n_stop)
    y = p.alpha_minus
    q_prev, q_cur = 0, 1
    s = 0.0
    partials = []
    for a in digits:
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        s += math.log(a + y)
        y = 1.0 / (a + y)
        partials.append(math.log(q_cur) - s)
    return CorrectionSeries(
        partials=tuple(partials),
        limit=partials[-1],
        error_bound=2.0 ** (3 - n_stop),
    )


def renewal_time(p: NaturalExtPoint, t: float) -> int:
    """Smallest r with S_r > t.  For t < phi(p) this is 1."""
    if t < 0:
        raise ValueError("t must be non-negative")
    y = p.alpha_minus
    total = 0.0
    r = 0
    window = 16
    digits = _forward_digits(p, window)
    while True:
        if r == len(digits):
            window *= 2
            digits = _forward_digits(p, window)
        a = digits[r]
        total += math.log(a + y)
        y = 1.0 / (a + y)
        r += 1
        if total > t:
            return r


@dataclass(frozen=True)
class FlowPoint:
    """A base point together with a height strictly below the roof."""

    base: NaturalExtPoint
    height: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.height < roof_phi(self.base):
            raise ValueError(
                f"height {self.height} outside [0, {roof_phi(self.base)})"
            )


# Snap band at the section floor.  Retracing crossings in reverse adds
# the same roof values in opposite order, so the height returns to its
# start only up to summation roundoff; without the band a residue a few
# ulp below zero would trigger a spurious extra crossing.  2^-40 sits
# far above accumulated roundoff and far below any roof we can sample.
_SNAP = 2.0 ** -40


def flow_evolve(fp: FlowPoint, t: float) -> FlowPoint:
    """Unit-speed vertical motion for time t (either sign).

    Upward crossings of the roof apply the shift; downward crossings of
    the floor apply its inverse; the same roof values are added and
    subtracted in reverse order, so forward and backward runs retrace
    one another's crossing sequence.
    """
    base = fp.base
    y = fp.height + t
    if t >= 0:
        while True:
            phi = roof_phi(base)
            if y < phi:
                break
            y -= phi
            base = base.step()
    else:
        while y < 0.0:
            if y > -_SNAP:
                y = 0.0
                break
            base = base.inverse()
            y += roof_phi(base)
    return FlowPoint(base, y)


@dataclass(frozen=True)
class RenewalFlowReport:
    """Comparison of the denominator crossing with the flow-time crossing."""

    n_R: int
    renewal_r: int
    T: float
    agree: bool
    defect: float
    defect_bound: float


def renewal_vs_flow_check(
    p: NaturalExtPoint, R: float, f_ref: float
) -> RenewalFlowReport:
    """Does q_n first exceed R exactly when S_r first exceeds ln R - f_ref?

    Also reports the defect |ln q_{n_R} - S_{n_R} - f(p)|, which the
    correction estimates bound by 2**(3 - n_R).
    """
    window = max(32, int(2.0 * math.log(max(R, 2.0))) + 16)
    while True:
        digits = _forward_digits(p, window)
        try:
            res = renewal_index(digits, R)
            break
        except InsufficientDigits:
            window *= 2
    n_R = res.n_R
    T = math.log(R) - f_ref
    r = renewal_time(p, T)
    f_here = correction_f(p, tol=2.0 ** (-n_R - 8)).limit
    defect = abs(math.log(res.q_nR) - birkhoff_sum(p, n_R) - f_here)
    return RenewalFlowReport(
        n_R=n_R,
        renewal_r=r,
        T=T,
        agree=(n_R == r),
        defect=defect,
        defect_bound=2.0 ** (3 - n_R),
    )
