"""Continued-fraction digits, convergents, and the renewal index.

Digits are the positive integers a_1, a_2, ... in

    x = 1 / (a_1 + 1 / (a_2 + ...)),    0 < x < 1,

and the convergents p_n / q_n are the truncations in lowest terms,
generated by the standard three-term recursion with exact integers.
The renewal index n_R is the first n whose denominator q_n exceeds a
threshold R; the overshoot ratio q_{n_R} / R and the last few digits
before the crossing are the quantities whose joint law the rest of the
package studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import InsufficientDigits, RationalInput, TrailingUnderflow
from .fixedreal import FixedReal

RealLike = Union[float, Fraction, FixedReal]


@dataclass(frozen=True)
class DigitSequence:
    """A finite window of continued-fraction digits.

    ``index_origin`` is the absolute index of the first stored digit.  A
    one-sided sequence starts at index 1 and encodes the expansion of a
    number in (0, 1); a two-sided window may start at a non-positive
    index and is used for points of the invertible extension.
    """

    digits: tuple[int, ...]
    index_origin: int = 1
    sided: str = "one"

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))
        if any(a < 1 for a in self.digits):
            raise ValueError("digits must be positive integers")
        if self.sided not in ("one", "two"):
            raise ValueError("sided must be 'one' or 'two'")
        if self.sided == "one" and self.index_origin != 1:
            raise ValueError("one-sided sequences start at index 1")

    @classmethod
    def one_sided(cls, digits: Sequence[int]) -> "DigitSequence":
        return cls(tuple(digits), 1, "one")

    @classmethod
    def two_sided(cls, digits: Sequence[int], index_origin: int) -> "DigitSequence":
        return cls(tuple(digits), index_origin, "two")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    @property
    def indices(self) -> range:
        return range(self.index_origin, self.index_origin + len(self.digits))

    def at(self, k: int) -> int:
        """Digit a_k by absolute index."""
        if k not in self.indices:
            raise IndexError(f"index {k} outside window {self.indices}")
        return self.digits[k - self.index_origin]


@dataclass(frozen=True)
class Convergent:
    """Numerator, denominator and index of one convergent p_n / q_n."""

    p: int
    q: int
    n: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("q must be >= 1")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class RenewalResult:
    """Outcome of the first denominator crossing of a threshold R."""

    n_R: int
    q_nR: int
    q_prev: int
    ratio: float
    trailing_digits: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n_R < 1 or self.q_prev >= self.q_nR:
            raise ValueError("inconsistent renewal data")
        if self.ratio <= 1.0:
            raise ValueError("overshoot ratio must exceed 1")
        if any(a < 1 for a in self.trailing_digits):
            raise ValueError("trailing digits must be positive")


def _digit_tuple(digits: Union[DigitSequence, Sequence[int]]) -> tuple[int, ...]:
    if isinstance(digits, DigitSequence):
        if digits.sided != "one":
            raise ValueError("a one-sided digit sequence is required")
        return digits.digits
    out = tuple(int(a) for a in digits)
    if any(a < 1 for a in out):
        raise ValueError("digits must be positive integers")
    return out


def convergents(digits: Union[DigitSequence, Sequence[int]]) -> list[Convergent]:
    """Exact convergents of a one-sided digit sequence.

    Uses the recursion p_k = a_k p_{k-1} + p_{k-2} (and likewise for q)
    with seeds p_0 = 0, q_0 = 1 and p_{-1} = 1, q_{-1} = 0, so that
    p_1 = 1 and q_1 = a_1.
    """
    ds = _digit_tuple(digits)
    if not ds:
        raise ValueError("digit sequence must be non-empty")
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1
    out = []
    for n, a in enumerate(ds, start=1):
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        out.append(Convergent(p_cur, q_cur, n))
    return out


def evaluate_cf(
    digits: Union[DigitSequence, Sequence[int]],
    head: int = 0,
    exact: bool = False,
):
    """Value of head + [a_1, a_2, ..., a_n] as a float or exact Fraction."""
    ds = _digit_tuple(digits)
    if not ds:
        value = Fraction(head)
    else:
        last = convergents(ds)[-1]
        value = head + Fraction(last.p, last.q)
    return value if exact else float(value)


def _expand_fraction(x: Fraction, n_max: int) -> list[int]:
    """Exact Euclidean digit extraction; raises if x terminates early."""
    num, den = x.numerator, x.denominator
    out = []
    while len(out) < n_max:
        if num == 0:
            raise RationalInput(
                f"rational input: expansion terminates after {len(out)} digits",
                digits=out,
            )
        a, rem = divmod(den, num)
        out.append(a)
        num, den = rem, num
    return out


def _expand_fixed(x: FixedReal, n_max: int) -> list[int]:
    out = []
    while len(out) < n_max:
        a, x = x.floor_recip()
        out.append(a)
    return out


def expand_digits(x: RealLike, n_max: int) -> DigitSequence:
    """First n_max continued-fraction digits of x in (0, 1).

    Floats are treated as the exact dyadic rationals they are; use a
    FixedReal input for certified deep expansions of irrational values.
    Raises RationalInput when the expansion terminates before n_max
    digits, and PrecisionExhausted when a FixedReal enclosure can no
    longer certify the next digit.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if isinstance(x, FixedReal):
        if not (0 < x.value < 1):
            raise ValueError("x must lie in (0, 1)")
        return DigitSequence.one_sided(_expand_fixed(x, n_max))
    x_frac = Fraction(x)
    if not (0 < x_frac < 1):
        raise ValueError("x must lie in (0, 1)")
    return DigitSequence.one_sided(_expand_fraction(x_frac, n_max))


def renewal_index(
    digits: Union[DigitSequence, Sequence[int]],
    R: float,
    n_trailing: int = 0,
) -> RenewalResult:
    """First index whose convergent denominator exceeds R.

    The comparison q_n > R mixes an exact integer with the binary64
    value of R; Python compares the two exactly, so no rounding of R is
    involved.  ``n_trailing`` asks for the digits a_{n_R}, a_{n_R - 1},
    ... a_{n_R - n_trailing + 1}; TrailingUnderflow is raised when the
    crossing happens too early for that window to exist.
    """
    if R < 1:
        raise ValueError("R must be at least 1")
    if n_trailing < 0:
        raise ValueError("n_trailing must be non-negative")
    ds = _digit_tuple(digits)
    q_prev, q_cur = 0, 1
    for n, a in enumerate(ds, start=1):
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > R:
            if n < n_trailing:
                raise TrailingUnderflow(
                    f"renewal index {n} < trailing window {n_trailing}"
                )
            trailing = tuple(ds[n - 1 - k] for k in range(n_trailing))
            return RenewalResult(
                n_R=n,
                q_nR=q_cur,
                q_prev=q_prev,
                ratio=q_cur / R,
                trailing_digits=trailing,
            )
    raise InsufficientDigits(
        f"no denominator exceeds R={R} within {len(ds)} digits"
    )


def reversed_quotient_chain(digits: Sequence[int]) -> list[float]:
    """Values y_k = [0; a_k, a_{k-1}, ..., a_1] for k = 0 .. n.

    y_k equals q_{k-1} / q_k, so a_k + y_{k-1} is the denominator growth
    factor q_k / q_{k-1}.  The backward recursion y_k = 1/(a_k + y_{k-1})
    is contracting, which keeps the chain stable in double precision.
    """
    ys = [0.0]
    for a in digits:
        ys.append(1.0 / (a + ys[-1]))
    return ys


def log_q(digits: Union[DigitSequence, Sequence[int]], n: int) -> float:
    """ln q_n, computed two independent ways and cross-checked.

    Route one takes the logarithm of the exact integer q_n.  Route two
    sums ln(a_k + y_{k-1}) over the reversed-quotient chain, which
    telescopes to the same number.  The two must agree to 1e-12
    relative; disagreement would mean a numeric fault, so it is asserted.
    """
    ds = _digit_tuple(digits)
    if not (1 <= n <= len(ds)):
        raise ValueError(f"n must be in 1..{len(ds)}")
    q_prev, q_cur = 0, 1
    for a in ds[:n]:
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    direct = math.log(q_cur)
    ys = reversed_quotient_chain(ds[:n])
    chain = math.fsum(math.log(a + y) for a, y in zip(ds[:n], ys[:-1]))
    assert abs(direct - chain) <= 1e-12 * max(1.0, abs(direct)), (
        f"log q_n routes disagree: {direct} vs {chain}"
    )
    return direct
