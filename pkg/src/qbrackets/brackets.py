"""Multiple divisor sums and their generating series ("brackets").

[s_1,...,s_l] denotes the series whose coefficient of q^n is
sigma_{s_1-1,...,s_l-1}(n) / prod (s_i - 1)!, with the multiple divisor sum

    sigma_{r_1,...,r_l}(n) = sum v_1^{r_1} ... v_l^{r_l}

over all representations n = u_1 v_1 + ... + u_l v_l with u_1 > ... > u_l > 0.

Two independent series algorithms live here.  bracket_series organises the
definition as a recursion over composition suffixes with the inner weights
v^{s-1} summed directly; bracket_series_oracle runs over the chain from the
outermost index inward with each factor expanded through Eulerian polynomial
coefficients and binomials instead of power sums.  Their agreement is a real
mathematical identity, and the test suite insists on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .numbers import eulerian_polynomial
from .series import QSeries

Parts = tuple[int, ...]


class Composition(tuple):
    """A tuple of positive integer parts; () stands for the empty bracket."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        t = tuple(int(p) for p in parts)
        if any(p < 1 for p in t):
            raise ValueError(f"composition parts must be positive: {t}")
        return super().__new__(cls, t)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def admissible(self) -> bool:
        return len(self) == 0 or self[0] > 1

    def __repr__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"


def canonical_key(parts: Sequence[int]) -> tuple[int, int, Parts]:
    """Sort key for the canonical composition order: ascending weight, then
    ascending length, then lexicographic on the parts."""
    t = tuple(parts)
    return (sum(t), len(t), t)


def multiple_divisor_sum(r: Sequence[int], n: int) -> int:
    """sigma_{r_1,...,r_l}(n) by direct enumeration of the (u, v) tuples."""
    r = tuple(r)
    if not r:
        raise ValueError("r must be non-empty")
    if any(x < 0 for x in r):
        raise ValueError("exponents must be non-negative")
    if n < 1:
        raise ValueError("n must be positive")
    l = len(r)

    def rec(i: int, u_bound: int, budget: int) -> int:
        if i == l:
            return 1 if budget == 0 else 0
        slots_left = l - i           # this element and everything below it
        tail_min = (slots_left - 1) * slots_left // 2   # cheapest completion below u
        total = 0
        for u in range(slots_left, u_bound):
            vmax = (budget - tail_min) // u
            for v in range(1, vmax + 1):
                total += v ** r[i] * rec(i + 1, u, budget - u * v)
        return total

    return rec(0, n + 1, n)


# ---------------------------------------------------------------------------
# primary algorithm: suffix recursion with power-sum weights
# ---------------------------------------------------------------------------

# comp -> (order, sigma list); sigma[m] is the integer multiple divisor sum
_SIGMA_CACHE: dict[Parts, tuple[int, list[int]]] = {}


def _extend_suffix(below: list, s: int, n_max: int) -> list:
    """One more part on the left of the suffix.

    below[w] (w = 1..n_max+1) lists, for each strict upper bound w, the
    weighted count of chains of the current suffix with all chain elements
    < w; entry m is the coefficient of q^m.  Returns the same structure with
    the part s placed at a new chain element above the old suffix.
    """
    pows = [0] + [v ** (s - 1) for v in range(1, n_max + 1)]
    child: list = [None] * (n_max + 2)
    run = [0] * (n_max + 1)
    child[1] = run
    for w in range(1, n_max + 1):
        parent_w = below[w]
        g = [0] * (n_max + 1)
        for v in range(1, n_max // w + 1):
            pv = pows[v]
            base = w * v
            for m in range(base, n_max + 1):
                x = parent_w[m - base]
                if x:
                    g[m] += pv * x
        run = [a + b for a, b in zip(run, g)]
        child[w + 1] = run
    return child


def _sigma_lists(comps: Iterable[Parts], order: int) -> dict[Parts, list[int]]:
    """Integer sigma coefficient lists for many compositions at once.

    Compositions sharing a suffix share all of the suffix's work: the
    computation walks a trie over the reversed compositions depth-first.
    """
    todo: set[Parts] = set()
    out: dict[Parts, list[int]] = {}
    for comp in comps:
        comp = tuple(comp)
        cached = _SIGMA_CACHE.get(comp)
        if cached is not None and cached[0] >= order:
            out[comp] = cached[1][: order + 1]
        else:
            todo.add(comp)
    if not todo:
        return out

    trie: dict = {}
    for comp in todo:
        node = trie
        for part in reversed(comp):
            node = node.setdefault(part, {})
            node.setdefault(None, None)  # placeholder; filled when terminal
        node[None] = comp
    # mark: node[None] is the composition ending here, or None

    unit = [1] + [0] * order
    root_below = [unit] * (order + 2)

    def dfs(node: dict, below: list) -> None:
        for part, sub in node.items():
            if part is None:
                continue
            child = _extend_suffix(below, part, order)
            comp = sub.get(None)
            if comp is not None:
                sigma = child[order + 1]
                _SIGMA_CACHE[comp] = (order, sigma)
                if comp in todo:
                    out[comp] = sigma[: order + 1]
            dfs(sub, child)

    dfs(trie, root_below)
    return out


def _suffixes_of(comp: Parts) -> list[Parts]:
    return [comp[i:] for i in range(len(comp))]


def bracket_series_many(comps: Iterable[Parts], order: int) -> dict[Parts, QSeries]:
    """bracket_series for a family of compositions, sharing suffix work."""
    comps = [tuple(c) for c in comps]
    # computing a composition makes all of its suffixes free; ask for them too
    wanted = set()
    for c in comps:
        wanted.update(_suffixes_of(c))
    sigma = _sigma_lists(wanted, order)
    for suffix, values in sigma.items():
        if suffix not in _SIGMA_CACHE or _SIGMA_CACHE[suffix][0] < order:
            _SIGMA_CACHE[suffix] = (order, values)
    result = {}
    for c in comps:
        result[c] = _series_from_sigma(c, order)
    return result


def _series_from_sigma(comp: Parts, order: int) -> QSeries:
    if not comp:
        return QSeries.one(order)
    cached = _SIGMA_CACHE[comp]
    sigma = cached[1]
    den = 1
    for s in comp:
        den *= factorial(s - 1)
    coeffs = tuple(Fraction(sigma[m], den) for m in range(1, order + 1))
    return QSeries(order, Fraction(0), coeffs)


def bracket_series(c: Sequence[int], order: int) -> QSeries:
    """The bracket [c] as an exact series through q^order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    comp = tuple(c)
    if not comp:
        return QSeries.one(order)
    if any(p < 1 for p in comp):
        raise ValueError(f"composition parts must be positive: {comp}")
    cached = _SIGMA_CACHE.get(comp)
    if cached is None or cached[0] < order:
        _sigma_lists(set(_suffixes_of(comp)), order)
    return _series_from_sigma(comp, order)


# ---------------------------------------------------------------------------
# oracle algorithm: prefix recursion with Eulerian-kernel factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerianKernel:
    """The factor z P_{s-1}(z)/((s-1)! (1-z)^s), i.e. the generating function
    of v^{s-1}/(s-1)! summed over v >= 1, expanded without power sums."""

    s: int

    def integer_coefficient(self, w: int) -> int:
        """Coefficient of z^w in z P_{s-1}(z)/(1-z)^s; equals w^{s-1}."""
        if w < 1:
            return 0
        poly = eulerian_polynomial(self.s - 1)
        total = 0
        for i, a in enumerate(poly.coefficients):
            if i > w - 1:
                break
            total += a * comb(w - 1 - i + self.s - 1, self.s - 1)
        return total

    def coefficient(self, w: int) -> Fraction:
        return Fraction(self.integer_coefficient(w), factorial(self.s - 1))


@lru_cache(maxsize=None)
def _kernel_row(s: int, n_max: int) -> tuple[int, ...]:
    kernel = EulerianKernel(s)
    return tuple(kernel.integer_coefficient(w) for w in range(n_max + 1))


def bracket_series_oracle(c: Sequence[int], order: int) -> QSeries:
    """Independent recomputation of bracket_series; see the module docstring."""
    if order < 1:
        raise ValueError("order must be at least 1")
    comp = tuple(c)
    if not comp:
        return QSeries.one(order)
    if any(p < 1 for p in comp):
        raise ValueError(f"composition parts must be positive: {comp}")
    return _oracle_many([comp], order)[comp]


def _oracle_many(comps: list[Parts], order: int) -> dict[Parts, QSeries]:
    n_max = order
    trie: dict = {}
    for comp in comps:
        node = trie
        for part in comp:
            node = node.setdefault(part, {})
            node.setdefault(None, None)
        node[None] = comp

    unit = [1] + [0] * n_max
    root_over = [unit] * (n_max + 1)  # over[n]: chains so far, all elements > n
    out: dict[Parts, QSeries] = {}

    def dfs(node: dict, over: list) -> None:
        for part, sub in node.items():
            if part is None:
                continue
            kern = _kernel_row(part, n_max)
            levels: list = [None] * (n_max + 1)   # A[n]: new element exactly at n
            for n in range(1, n_max + 1):
                src = over[n]
                a = [0] * (n_max + 1)
                for w in range(1, n_max // n + 1):
                    kw = kern[w]
                    base = n * w
                    for m in range(base, n_max + 1):
                        x = src[m - base]
                        if x:
                            a[m] += kw * x
                levels[n] = a
            # suffix sums: chains with smallest element > n
            child_over: list = [None] * (n_max + 1)
            acc = [0] * (n_max + 1)
            for n in range(n_max, 0, -1):
                acc = [p + q for p, q in zip(acc, levels[n])]
                child_over[n - 1] = acc
            for n in range(1, n_max + 1):
                if child_over[n] is None:
                    child_over[n] = [0] * (n_max + 1)
            comp = sub.get(None)
            if comp is not None:
                total = child_over[0]
                den = 1
                for s in comp:
                    den *= factorial(s - 1)
                coeffs = tuple(Fraction(total[m], den) for m in range(1, n_max + 1))
                out[comp] = QSeries(n_max, Fraction(0), coeffs)
            dfs(sub, child_over)

    dfs(trie, root_over)
    return out


def bracket_series_oracle_many(comps: Iterable[Parts], order: int) -> dict[Parts, QSeries]:
    return _oracle_many([tuple(c) for c in comps], order)


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def partition_counts(n_max: int) -> list[int]:
    """p(0..n_max) by the Euler pentagonal-number recurrence."""
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = -1 if j % 2 == 0 else 1
            total += sign * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p


def partition_identity_check(order: int) -> bool:
    """sum_l [1,...,1] (l ones) counts all partitions: coefficient of q^n is
    p(n) whenever every l with l(l+1)/2 <= n is included."""
    if order < 1:
        raise ValueError("order must be at least 1")
    total = QSeries.zero(order)
    l = 1
    while l * (l + 1) // 2 <= order:
        total = total + bracket_series((1,) * l, order)
        l += 1
    p = partition_counts(order)
    return all(total.coefficient(n) == p[n] for n in range(1, order + 1))
