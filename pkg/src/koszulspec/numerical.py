"""Integer-valued polynomials in the binomial basis and fitting them to value tables."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from .errors import NotStabilized


def binom(r: int, j: int) -> int:
    """``C(r, j)`` for any integer ``r`` (``r (r-1) ... (r-j+1) / j!``)."""
    if j < 0:
        return 0
    num = 1
    for k in range(j):
        num *= r - k
    return num // factorial(j)


@dataclass(frozen=True)
class NumericalPolynomial:
    """``p(r) = sum_j coeffs[j] * C(r, j)`` with integer coefficients."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, r: int) -> int:
        return sum(c * binom(r, j) for j, c in enumerate(self.coeffs))

    def difference(self) -> "NumericalPolynomial":
        """``r -> p(r+1) - p(r)``."""
        return NumericalPolynomial(self.coeffs[1:])

    def leading_difference(self) -> int:
        """``Δ^deg p``, the constant top difference (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def nth_difference(self, n: int) -> int:
        """``Δ^n p`` when it is constant, else the top coefficient is not reached and 0 is returned."""
        if self.degree > n:
            raise ValueError(f"Δ^{n} of a degree {self.degree} polynomial is not constant")
        return self.coeffs[n] if self.degree == n else 0

    def power_coeffs(self) -> List[Fraction]:
        """Ascending coefficients in the monomial basis ``1, r, r^2, ...``."""
        out = [Fraction(0)] * max(len(self.coeffs), 1)
        for j, c in enumerate(self.coeffs):
            # C(r, j) = r (r-1) ... (r-j+1) / j!
            poly = [Fraction(1)]
            for k in range(j):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for i, v in enumerate(poly):
                    nxt[i + 1] += v
                    nxt[i] -= k * v
                poly = nxt
            for i, v in enumerate(poly):
                out[i] += c * v / factorial(j)
        return out

    def __str__(self):
        pc = self.power_coeffs()
        parts = []
        for i in range(len(pc) - 1, -1, -1):
            c = pc[i]
            if not c:
                continue
            mag = -c if c < 0 else c
            ms = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            mono = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
            body = ms if not mono else (mono if mag == 1 else f"{ms}*{mono}")
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts) or "0"

    def as_dict(self) -> dict:
        return {"binomial_coeffs": list(self.coeffs), "degree": self.degree, "text": str(self)}


def _differences(values: Sequence[int]) -> List[List[int]]:
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    return rows


def fit_numerical_polynomial(values: Sequence[int], start: int = 1, window: int = 3) -> NumericalPolynomial:
    """Polynomial agreeing with the tail of ``values`` (``values[0]`` is at ``r = start``).

    The degree is the smallest ``D`` whose D-th differences agree on the last
    ``window`` positions; the fit then matches the last ``D + window`` values.
    Raises :class:`NotStabilized` when no degree passes.
    """
    vals = [int(v) for v in values]
    rows = _differences(vals)
    for D in range(len(vals)):
        row = rows[D]
        if len(row) < window:
            break
        tail = row[-window:]
        if all(t == tail[0] for t in tail):
            s = len(vals) - (D + window)  # index where the verified window begins
            r0 = start + s
            newton = [rows[j][s] for j in range(D + 1)]
            coeffs = [sum(newton[j] * binom(-r0, j - i) for j in range(i, D + 1)) for i in range(D + 1)]
            p = NumericalPolynomial(tuple(coeffs))
            if any(p(start + k) != vals[k] for k in range(s, len(vals))):
                raise ArithmeticError("fitted polynomial disagrees with its own window")
            return p
    raise NotStabilized(f"no stable finite difference among {len(vals)} values; raise r_max")
