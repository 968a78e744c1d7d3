"""Exact univariate integer polynomials and the Dickson-type families F, G, H.

Coefficients are stored lowest degree first as Python ints, so nothing ever
overflows. The zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    pass


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _strip(int(a) for a in self.coeffs)
        for a, b in zip(c, self.coeffs):
            if a != b:
                raise PolynomialError(f"non-integer coefficient {b!r}")
        object.__setattr__(self, "coeffs", c)

    # construction helpers

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * deg + (c,))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse the JSON coefficient-list form, e.g. ``"[-1,-12,0,1]"``."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolynomialError(f"bad coefficient list: {text!r}") from exc
        if not isinstance(data, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in data
        ):
            raise PolynomialError(f"expected a JSON list of integers, got {text!r}")
        return cls(tuple(data))

    # basic properties

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # ring operations

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(a * other for a in self.coeffs))
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PolynomialError("negative exponent")
        result = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, floats or anything ring-like."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        acc = IntPolynomial()
        for a in reversed(self.coeffs):
            acc = acc * inner + a
        return acc

    def divmod_rational(self, other: "IntPolynomial") -> tuple[list[Fraction], list[Fraction]]:
        """Long division over Q. Returns (quotient, remainder) as Fraction lists."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(a) for a in self.coeffs]
        dq = other.degree
        lead = Fraction(other.lc)
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quo[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        while rem and rem[-1] == 0:
            rem.pop()
        while quo and quo[-1] == 0:
            quo.pop()
        return quo, rem

    def pseudo_divmod(self, other: "IntPolynomial") -> tuple[int, "IntPolynomial", "IntPolynomial"]:
        """Division over Q with integers cleared: returns (m, q, r) with m*self = q*other + r."""
        quo, rem = self.divmod_rational(other)
        m = 1
        for c in quo + rem:
            m = m * c.denominator // _gcd(m, c.denominator)
        q = IntPolynomial(tuple(int(c * m) for c in quo))
        r = IntPolynomial(tuple(int(c * m) for c in rem))
        return m, q, r

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """The integer quotient self/other if it exists exactly in Z[x], else None."""
        quo, rem = self.divmod_rational(other)
        if rem or any(c.denominator != 1 for c in quo):
            return None
        return IntPolynomial(tuple(int(c) for c in quo))

    def __floordiv__(self, other):
        q = self.exact_div(_coerce(other))
        if q is None:
            raise PolynomialError("division is not exact in Z[x]")
        return q

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = _gcd(g, a)
        if self.coeffs and self.lc < 0:
            g = -g
        return g

    def primitive_part(self) -> "IntPolynomial":
        c = self.content()
        if c == 0:
            return self
        return IntPolynomial(tuple(a // c for a in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def reciprocal(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))

    # text forms

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        return pretty(self)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def pretty(p: IntPolynomial, var: str = "x") -> str:
    """Human form such as ``x^3-12x-1``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        a = p[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


X = IntPolynomial.x()
ONE = IntPolynomial.constant(1)


# Dickson-type families

def _check_dickson(k: int, i: int) -> None:
    if k < 2:
        raise PolynomialError(f"k must be >= 2, got {k}")
    if i < 0:
        raise PolynomialError(f"index must be >= 0, got {i}")


@lru_cache(maxsize=None)
def _family(family: str, k: int, i: int) -> IntPolynomial:
    seeds = {
        "F": (ONE, X, IntPolynomial((-k, 0, 1))),
        "G": (ONE, IntPolynomial((1, 1))),
        "H": (ONE, X),
    }[family]
    if i < len(seeds):
        return seeds[i]
    return X * _family(family, k, i - 1) - (k - 1) * _family(family, k, i - 2)


def dickson(family: str, k: int, i: int) -> IntPolynomial:
    """F_i, G_i or H_i with parameter k-1: P_{i+1} = x P_i - (k-1) P_{i-1}.

    F is seeded by F_0, F_1, F_2 (the recurrence only starts at i = 2),
    G and H by their first two members.
    """
    if family not in ("F", "G", "H"):
        raise PolynomialError(f"unknown family {family!r}")
    _check_dickson(k, i)
    # iterate upward so deep indices never hit the recursion limit
    for j in range(0, i, 64):
        _family(family, k, j)
    return _family(family, k, i)


def dickson_H(k: int, i: int) -> IntPolynomial:
    return dickson("H", k, i)


@dataclass
class IdentityCheck:
    holds: bool
    first_failure: tuple[str, int] | None = None


def verify_singleton_identities(k: int, i_max: int) -> IdentityCheck:
    """Check G_i = sum_{j<=i} F_j and G_{i+1} + (k-1)G_i = (x+k)H_i for 0 <= i <= i_max."""
    if k < 2 or i_max < 0:
        raise PolynomialError("need k >= 2 and i_max >= 0")
    running = IntPolynomial()
    x_plus_k = IntPolynomial((k, 1))
    for i in range(i_max + 1):
        running = running + dickson("F", k, i)
        if dickson("G", k, i) != running:
            return IdentityCheck(False, ("partial-sum", i))
        lhs = dickson("G", k, i + 1) + (k - 1) * dickson("G", k, i)
        if lhs != x_plus_k * dickson("H", k, i):
            return IdentityCheck(False, ("shifted-product", i))
    return IdentityCheck(True)


# cyclotomic apparatus

def euler_totient(l: int) -> int:
    if l < 1:
        raise PolynomialError(f"totient needs l >= 1, got {l}")
    result, m, p = l, l, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic(l: int) -> IntPolynomial:
    """Phi_l by exact division of x^l - 1 by Phi_m over the proper divisors m of l."""
    if l < 1:
        raise PolynomialError(f"cyclotomic needs l >= 1, got {l}")
    p = IntPolynomial.monomial(l) - 1
    for m in divisors(l)[:-1]:
        p = p // cyclotomic(m)
    return p


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


@lru_cache(maxsize=None)
def half_trace(l: int) -> IntPolynomial:
    """The integer polynomial f_l of degree phi(l)/2 with x^{phi/2} f_l(x + 1/x) = Phi_l(x).

    Expanding x^h (x + 1/x)^j = sum_t C(j,t) x^{h+j-2t} and matching the
    coefficients of x^{h+j} from the top makes the system unit-triangular,
    so f_l is solved top-down with integer arithmetic only.
    """
    if l < 3:
        raise PolynomialError(f"half_trace needs l >= 3, got {l}")
    phi = cyclotomic(l)
    h = phi.degree // 2
    target = [phi[h + j] for j in range(h + 1)]  # coefficients of x^{h+j}
    f = [0] * (h + 1)
    for j in range(h, -1, -1):
        # contributions to x^{h+j} from f_m with m > j: term t with m - 2t = j
        acc = 0
        for m in range(j + 1, h + 1):
            if (m - j) % 2 == 0:
                acc += f[m] * _binomial_row(m)[(m - j) // 2]
        f[j] = target[j] - acc
    result = IntPolynomial(tuple(f))
    if _substitute_reciprocal(result, h) != phi:
        raise ArithmeticError(f"half_trace({l}) failed back-substitution")
    return result


def _substitute_reciprocal(f: IntPolynomial, h: int) -> IntPolynomial:
    """Expand x^h * f(x + 1/x) exactly (h >= deg f)."""
    out = [0] * (2 * h + 1)
    for j, a in enumerate(f.coeffs):
        for t, b in enumerate(_binomial_row(j)):
            out[h + j - 2 * t] += a * b
    return IntPolynomial(tuple(out))


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPolynomial:
    """Exact characteristic polynomial det(xI - M) by the division-free Berkowitz method."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise PolynomialError("charpoly needs a square matrix")
    if n == 0:
        return ONE
    a = [[int(v) for v in row] for row in matrix]
    # vect holds coefficients highest degree first
    vect = [1, -a[0][0]]
    for r in range(1, n):
        col = [a[i][r] for i in range(r)]
        row = a[r][:r]
        sub = [line[:r] for line in a[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, ...
        t = [1, -a[r][r]]
        v = col
        for _ in range(r):
            t.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(sub[i][j] * v[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            new.append(sum(t[i - j] * vect[j] for j in range(min(i, r) + 1) if i - j < len(t)))
        vect = new
    return IntPolynomial(tuple(reversed(vect)))


def cycle_adjacency(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][(i + 1) % n] = m[(i + 1) % n][i] = 1
    return m


def cycle_factor_R(n: int) -> IntPolynomial:
    """R_n = prod_{3 <= l | n} f_l, monic of degree n/2 - 1 for even n."""
    r = ONE
    for l in divisors(n):
        if l >= 3:
            r = r * half_trace(l)
    return r


@lru_cache(maxsize=None)
def cycle_charpoly(n: int) -> IntPolynomial:
    """Characteristic polynomial of the n-cycle.

    Even n uses (x-2)(x+2)R_n(x)^2 and is cross-checked against the direct
    determinant; odd n is the direct determinant.
    """
    if n < 3:
        raise PolynomialError(f"cycle needs n >= 3, got {n}")
    direct = charpoly(cycle_adjacency(n))
    if n % 2:
        return direct
    built = IntPolynomial((-4, 0, 1)) * cycle_factor_R(n) ** 2
    if built != direct:
        raise ArithmeticError(f"cycle_charpoly({n}) factorization mismatch")
    return built
