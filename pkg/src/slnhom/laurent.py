"""Laurent polynomials in q, quantum integers and Gaussian multinomials."""
from __future__ import annotations

import re
from math import comb
from typing import Iterable, Mapping


class LaurentPoly:
    """Finite map exponent -> integer coefficient; zero coefficients dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls({exp: coef})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, q) -> int | float:
        return sum(c * q**e for e, c in self.coeffs.items())

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def min_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def is_palindromic(self) -> bool:
        if not self.coeffs:
            return True
        lo, hi = self.min_degree(), self.max_degree()
        return all(self.coeffs.get(e, 0) == self.coeffs.get(lo + hi - e, 0) for e in self.coeffs)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def format_laurent(p: LaurentPoly, var: str = "q") -> str:
    """Canonical ascending form, e.g. ``q^-2 + 2 + q^2``."""
    if not p.coeffs:
        return "0"
    out = []
    for e in sorted(p.coeffs):
        c = p.coeffs[e]
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        out.append(("-" if c < 0 else "+", body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_MONO = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(q(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the canonical form produced by :func:`format_laurent`."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LaurentPoly()
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _MONO.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, num, mono, exp = m.groups()
        if num is None and mono is None:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return LaurentPoly(coeffs)


# -- quantum numbers ---------------------------------------------------------------

def quantum_integer(n: int) -> LaurentPoly:
    """[n] = q^{1-n} + q^{3-n} + ... + q^{n-1}, with [-n] = -[n]."""
    if n == 0:
        return LaurentPoly()
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def quantum_factorial(n: int) -> LaurentPoly:
    out = LaurentPoly.one()
    for m in range(1, n + 1):
        out = out * quantum_integer(m)
    return out


def quantum_binomial(n: int, k: int) -> LaurentPoly:
    """Symmetric quantum binomial; zero unless 0 <= k <= n.

    Built from the q-Pascal rule, so no polynomial division is needed.
    """
    if k < 0 or n < 0 or k > n:
        return LaurentPoly()
    return _qbinom(n, k)


def _qbinom(n: int, k: int) -> LaurentPoly:
    # [n, k] = q^{k-n} [n-1, k-1] + q^{k} [n-1, k]
    if k == 0 or k == n:
        return LaurentPoly.one()
    return _qbinom(n - 1, k - 1).shift(k - n) + _qbinom(n - 1, k).shift(k)


def gaussian_multinomial_t(blocks: Iterable[int]) -> dict[int, int]:
    """Coefficients of the Gaussian multinomial in t (bottom-normalized)."""
    blocks = list(blocks)
    total = 0
    poly = {0: 1}
    for n in blocks:
        total += n
        step = _gauss_binomial_t(total, n)
        poly = _mul_t(poly, step)
    return poly


def _mul_t(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def _gauss_binomial_t(n: int, k: int) -> dict[int, int]:
    # q-Pascal in t: [n,k]_t = [n-1,k-1]_t + t^k [n-1,k]_t
    table = {(0, 0): {0: 1}}

    def get(m, j):
        if j < 0 or j > m:
            return {}
        if (m, j) not in table:
            a = get(m - 1, j - 1)
            b = {e + j: c for e, c in get(m - 1, j).items()}
            out = dict(a)
            for e, c in b.items():
                out[e] = out.get(e, 0) + c
            table[(m, j)] = out
        return table[(m, j)]

    return get(n, k)


def poincare_flag(blocks: Iterable[int], N: int) -> LaurentPoly:
    """Poincare polynomial of the partial flag manifold F(blocks; N).

    The residual ``N - sum(blocks)`` is appended as a final block; exponents
    are cohomological degrees (t = q^2), lowest term q^0.
    """
    blocks = [int(b) for b in blocks]
    if any(b < 0 for b in blocks):
        raise ValueError(f"negative block in {blocks}")
    rest = N - sum(blocks)
    if rest < 0:
        raise ValueError(f"blocks {blocks} exceed N={N}")
    t_poly = gaussian_multinomial_t(blocks + [rest])
    return LaurentPoly({2 * e: c for e, c in t_poly.items()})


def flag_dimension(blocks: Iterable[int], N: int) -> int:
    """Real dimension N^2 - sum n_i^2 of F(blocks; N)."""
    blocks = list(blocks)
    rest = N - sum(blocks)
    return N * N - sum(b * b for b in blocks) - rest * rest


def multinomial(blocks: Iterable[int]) -> int:
    out, total = 1, 0
    for b in blocks:
        total += b
        out *= comb(total, b)
    return out


def hilbert_series_sym(sizes: Iterable[int], max_degree: int) -> LaurentPoly:
    """prod_i prod_{j <= n_i} (1 - q^{2j})^{-1}, truncated at q^max_degree."""
    poly = {0: 1}
    for n in sizes:
        for j in range(1, n + 1):
            step = 2 * j
            # multiply by 1/(1 - q^step)
            out: dict[int, int] = {}
            for e in range(0, max_degree + 1):
                val = poly.get(e, 0) + out.get(e - step, 0)
                if val:
                    out[e] = val
            poly = out
    return LaurentPoly({e: c for e, c in poly.items() if e <= max_degree})


class BigradedSeries(dict):
    """Finite map (h, q) -> integer."""

    def euler(self) -> LaurentPoly:
        out: dict[int, int] = {}
        for (h, q), c in self.items():
            out[q] = out.get(q, 0) + (-1) ** (h % 2) * c
        return LaurentPoly(out)

    def poincare(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in self.items() if v}


def euler_characteristic(ranks: Mapping[tuple[int, int], int]) -> LaurentPoly:
    """sum over bidegrees of (-1)^h rank(h, q) q^q."""
    return BigradedSeries(ranks).euler()
