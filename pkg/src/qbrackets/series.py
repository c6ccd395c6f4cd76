"""Truncated formal power series in q with exact rational coefficients.

A QSeries knows its coefficients for q^0 .. q^order.  Binary operations on
series of different orders silently truncate to the smaller order; asking a
question beyond the recorded order (agree_to_order, coefficient) is an error,
never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

RationalLike = Fraction | int


def _fr(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QSeries:
    """constant + coeffs[0] q + coeffs[1] q^2 + ... + coeffs[order-1] q^order."""

    order: int
    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if len(self.coeffs) != self.order:
            raise ValueError(
                f"series of order {self.order} needs exactly {self.order} "
                f"coefficients, got {len(self.coeffs)}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "QSeries":
        return QSeries(order, Fraction(0), (Fraction(0),) * order)

    @staticmethod
    def one(order: int) -> "QSeries":
        return QSeries(order, Fraction(1), (Fraction(0),) * order)

    @staticmethod
    def from_coefficients(constant: RationalLike,
                          coeffs: "list[RationalLike] | tuple[RationalLike, ...]",
                          order: int | None = None) -> "QSeries":
        cs = [_fr(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < len(cs):
            cs = cs[:order]
        else:
            cs.extend([Fraction(0)] * (order - len(cs)))
        return QSeries(order, _fr(constant), tuple(cs))

    @staticmethod
    def monomial(n: int, order: int, c: RationalLike = 1) -> "QSeries":
        """c * q^n truncated at the given order."""
        if n < 0:
            raise ValueError("monomial exponent must be non-negative")
        if n == 0:
            return QSeries(order, _fr(c), (Fraction(0),) * order)
        coeffs = [Fraction(0)] * order
        if n <= order:
            coeffs[n - 1] = _fr(c)
        return QSeries(order, Fraction(0), tuple(coeffs))

    # -- access ------------------------------------------------------------

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of q^n; n beyond the recorded order is an error."""
        if n < 0 or n > self.order:
            raise ValueError(f"coefficient q^{n} outside recorded order {self.order}")
        return self.constant if n == 0 else self.coeffs[n - 1]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return QSeries(order, self.constant, self.coeffs[:order])

    def is_zero(self) -> bool:
        return self.constant == 0 and all(c == 0 for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries(n, self.constant + other.constant,
                       tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries(n, self.constant - other.constant,
                       tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, -self.constant, tuple(-c for c in self.coeffs))

    def scale(self, c: RationalLike) -> "QSeries":
        c = _fr(c)
        return QSeries(self.order, self.constant * c,
                       tuple(a * c for a in self.coeffs))

    def __rmul__(self, c: RationalLike) -> "QSeries":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        # exact Cauchy product on cleared-denominator integer vectors
        da, ia = _as_ints(self, n)
        db, ib = _as_ints(other, n)
        out = [0] * (n + 1)
        for i, ai in enumerate(ia):
            if ai == 0:
                continue
            top = n - i
            for j, bj in enumerate(ib[:top + 1]):
                if bj:
                    out[i + j] += ai * bj
        d = da * db
        return QSeries(n, Fraction(out[0], d), tuple(Fraction(c, d) for c in out[1:]))

    def q_d_dq(self) -> "QSeries":
        """Apply q * d/dq: multiply the coefficient of q^n by n."""
        return QSeries(self.order, Fraction(0),
                       tuple(c * (i + 1) for i, c in enumerate(self.coeffs)))

    # -- comparison / io -----------------------------------------------------

    def agree_to_order(self, other: "QSeries", n: int) -> bool:
        """True iff coefficients of q^0..q^n all coincide exactly."""
        if n > min(self.order, other.order):
            raise ValueError(
                f"comparison to order {n} exceeds available orders "
                f"{self.order}, {other.order}")
        if self.constant != other.constant:
            return False
        return self.coeffs[:n] == other.coeffs[:n]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "constant": _rat_str(self.constant),
            "coeffs": [_rat_str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict) -> "QSeries":
        return QSeries(int(data["order"]), _parse_rat(data["constant"]),
                       tuple(_parse_rat(c) for c in data["coeffs"]))

    def to_text(self, var: str = "q") -> str:
        parts: list[str] = []
        if self.constant != 0:
            parts.append(str(self.constant))
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            n = i + 1
            mono = var if n == 1 else f"{var}^{n}"
            if c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        if not parts:
            parts.append("0")
        text = parts[0]
        for term in parts[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return f"{text} + O({var}^{self.order + 1})"


def _as_ints(s: QSeries, n: int) -> tuple[int, list[int]]:
    """Common denominator and integer coefficient list for q^0..q^n."""
    den = s.constant.denominator
    for c in s.coeffs[:n]:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(s.constant * den)]
    ints.extend(int(c * den) for c in s.coeffs[:n])
    return den, ints


def _rat_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _parse_rat(text: str) -> Fraction:
    return Fraction(text)


def eta24(order: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24, the discriminant cusp form; the
    coefficient of q^n is tau(n)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    n = order - 1  # need the 24th power of the Euler product to q^n
    euler = [0] * (n + 1)
    euler[0] = 1
    j = 1
    while True:
        p1 = j * (3 * j - 1) // 2
        p2 = j * (3 * j + 1) // 2
        if p1 > n:
            break
        sign = -1 if j % 2 else 1
        euler[p1] += sign
        if p2 <= n:
            euler[p2] += sign
        j += 1
    power = _int_poly_power(euler, 24, n)
    coeffs = [Fraction(c) for c in power]
    return QSeries(order, Fraction(0), tuple(coeffs))


def _int_poly_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > n:
            continue
        for j in range(min(len(b), n - i + 1)):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _int_poly_power(base: list[int], e: int, n: int) -> list[int]:
    result = [1] + [0] * n
    acc = list(base)
    while e:
        if e & 1:
            result = _int_poly_mul(result, acc, n)
        e >>= 1
        if e:
            acc = _int_poly_mul(acc, acc, n)
    return result
