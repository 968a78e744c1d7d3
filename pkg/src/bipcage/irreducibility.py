"""Irreducibility over Q with checkable certificates.

The decision pipeline is: content extraction, rational roots, Eisenstein,
rational-root exhaustion for degree <= 3, and finally a complete
factorization (Berlekamp modulo a small prime, Hensel lifting, exhaustive
recombination of the lifted factors with exact trial division).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt

from .polycore import IntPolynomial, PolynomialError, dickson_H, divisors

IRREDUCIBLE = "IRREDUCIBLE"
REDUCIBLE = "REDUCIBLE"

DEFAULT_EISENSTEIN_BOUND = 1000


class CertificateError(ArithmeticError):
    """A certificate failed its own re-verification."""


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class IrreducibilityCertificate:
    poly: IntPolynomial
    verdict: str
    witness: dict = field(default_factory=dict)

    @property
    def factors(self) -> tuple[IntPolynomial, IntPolynomial] | None:
        if self.witness.get("type") != "factors":
            return None
        return IntPolynomial.from_list(self.witness["f"]), IntPolynomial.from_list(self.witness["g"])

    def to_dict(self) -> dict:
        return {"poly": self.poly.to_list(), "verdict": self.verdict, "witness": dict(self.witness)}

    @classmethod
    def from_dict(cls, data: dict) -> "IrreducibilityCertificate":
        return cls(IntPolynomial.from_list(data["poly"]), data["verdict"], dict(data["witness"]))

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def verify(self) -> bool:
        """Re-check the witness independently of how it was produced."""
        kind = self.witness.get("type")
        if self.verdict == REDUCIBLE:
            if kind != "factors":
                return False
            f, g = self.factors
            return f.degree >= 1 and g.degree >= 1 and f * g == self.poly
        if self.verdict != IRREDUCIBLE:
            return False
        if kind == "eisenstein":
            return eisenstein_holds(self.poly.primitive_part(), self.witness["p"])
        if kind == "exhausted":
            # no short witness exists for these; recompute from scratch
            return is_irreducible_over_Q(self.poly).verdict == IRREDUCIBLE
        return False


# rational roots and Eisenstein

def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """All distinct rational roots, by divisor enumeration and exact evaluation."""
    if p.is_zero():
        raise PolynomialError("rational_roots of the zero polynomial")
    roots: list[Fraction] = []
    # strip the power of x first so the constant term is nonzero
    shift = 0
    while p[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    q = IntPolynomial(p.coeffs[shift:])
    if q.degree < 1:
        return roots
    for a in divisors(abs(q[0])):
        for b in divisors(abs(q.lc)):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if r not in roots and q(r) == 0:
                    roots.append(r)
    return roots


def eisenstein_holds(p: IntPolynomial, prime: int) -> bool:
    if p.degree < 1:
        return False
    return (
        all(a % prime == 0 for a in p.coeffs[:-1])
        and p.lc % prime != 0
        and p[0] % (prime * prime) != 0
    )


def eisenstein_check(p: IntPolynomial, bound: int = DEFAULT_EISENSTEIN_BOUND) -> int | None:
    """Least prime <= bound witnessing Eisenstein's criterion for the primitive part of p."""
    if p.degree < 1:
        raise PolynomialError("Eisenstein check needs a nonconstant polynomial")
    pp = p.primitive_part()
    g = 0
    for a in pp.coeffs[:-1]:
        g = _gcd(g, a)
    for prime in primes_up_to(bound):
        if g % prime == 0 and eisenstein_holds(pp, prime):
            return prime
    return None


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# arithmetic in GF(p)[x]; lists low degree first, always trimmed

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod(a, p):
    return _trim([c % p for c in a])


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    return _padd(a, [-c for c in b], p)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod(out, p)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _trim(q), _trim(a)


def _monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _pxgcd(a, b, p):
    """s, t with s*a + t*b = 1 (a, b coprime)."""
    r0, r1, s0, s1, t0, t1 = a, b, [1], [], [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[0], -1, p)  # r0 is a nonzero constant
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _derivative(a, p):
    return _mod([i * c for i, c in enumerate(a)][1:], p)


def _nullspace(rows, p):
    """Basis of {v : v * M = 0} for the square matrix M given by rows."""
    n = len(rows)
    # solve M^T v^T = 0
    mat = [[rows[r][c] % p for r in range(n)] for c in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if mat[r][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [x * inv % p for x in mat[row]]
        for r in range(n):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc] % p
        basis.append(v)
    return basis


def berlekamp(f, p):
    """Monic irreducible factors of a monic squarefree f over GF(p)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    xp = _pow_mod([0, 1], p, f, p)
    rows = []
    cur = [1]
    for i in range(n):
        row = cur + [0] * (n - len(cur))
        row[i] = (row[i] - 1) % p
        rows.append(row)
        cur = _pdivmod(_pmul(cur, xp, p), f, p)[1]
    basis = _nullspace(rows, p)
    r = len(basis)
    factors = [f]
    for v in basis:
        if len(factors) == r:
            break
        v = _trim(list(v))
        if len(v) <= 1:
            continue
        next_factors = []
        for u in factors:
            if len(u) <= 2:
                next_factors.append(u)
                continue
            pending = [u]
            for s in range(p):
                split = []
                for w in pending:
                    if len(w) <= 2:
                        split.append(w)
                        continue
                    g = _pgcd(w, _psub(v, [s], p), p)
                    if 1 < len(g) < len(w):
                        split.extend([g, _monic(_pdivmod(w, g, p)[0], p)])
                    else:
                        split.append(w)
                pending = split
            next_factors.extend(pending)
        factors = next_factors
    if len(factors) != r:
        raise ArithmeticError("Berlekamp split did not reach the expected factor count")
    return sorted(factors, key=lambda a: (len(a), a))


def _pow_mod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


# Hensel lifting and recombination over Z

def _symmetric(a, m):
    half = m // 2
    return [c - m if c > half else c for c in (x % m for x in a)]


def _hensel_two(f, g, h, p, a):
    """Lift f = g*h (mod p), g monic and coprime to h, to f = G*H (mod p^a)."""
    s, t = _pxgcd(g, h, p)
    mod = p
    for _ in range(1, a):
        gh = _zmul(g, h)
        n = max(len(f), len(gh))
        e = _mod([(x - y) // mod for x, y in zip(_pad(f, n), _pad(gh, n))], p)
        q, dg = _pdivmod(_pmul(e, t, p), g, p)
        dh = _padd(_pmul(e, s, p), _pmul(q, h, p), p)
        g = [x + mod * y for x, y in zip(_pad(g, len(g)), _pad(dg, len(g)))]
        n = max(len(h), len(dh))
        h = [x + mod * y for x, y in zip(_pad(h, n), _pad(dh, n))]
        mod *= p
        g = [c % mod for c in g]
        h = _trim([c % mod for c in h])
    return g, h


def _pad(a, n):
    return list(a) + [0] * (n - len(a))


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _coefficient_bound(f: IntPolynomial) -> int:
    # Mignotte: coefficients of any factor are <= 2^deg * ||f||_2; scaled by lc for recombination
    norm = isqrt(sum(c * c for c in f.coeffs)) + 1
    return (2 ** f.degree) * norm * abs(f.lc)


def _modular_factors(f: IntPolynomial, p: int):
    fp = _mod(list(f.coeffs), p)
    if len(fp) != len(f.coeffs):
        return None
    if len(_pgcd(fp, _derivative(fp, p), p)) != 1:
        return None
    return berlekamp(_monic(fp, p), p)


def _subset_degrees(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _squarefree_split(f: IntPolynomial) -> IntPolynomial | None:
    """A nontrivial factor of f if f is not squarefree, else None."""
    g = _rational_gcd(f, f.derivative())
    if g.degree >= 1:
        return g
    return None


def _rational_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    while not b.is_zero():
        _, _, r = a.pseudo_divmod(b)
        a, b = b, r.primitive_part() if not r.is_zero() else r
    return a.primitive_part()


def zassenhaus_factor(f: IntPolynomial, max_primes: int = 5) -> tuple[IntPolynomial | None, str]:
    """Find a nontrivial factor of a primitive squarefree f, or None when f is irreducible.

    Returns the factor (or None) together with a method tag naming the prime used.
    """
    n = f.degree
    candidates = []
    possible = set(range(n + 1))
    for p in primes_up_to(1000):
        if f.lc % p == 0:
            continue
        facs = _modular_factors(f, p)
        if facs is None:
            continue
        candidates.append((len(facs), p, facs))
        possible &= _subset_degrees([len(u) - 1 for u in facs])
        if len(candidates) >= max_primes:
            break
    if not candidates:
        raise ArithmeticError("no suitable prime found for modular factorization")
    if not any(0 < d < n for d in possible):
        best = min(candidates)[1]
        return None, f"degree-pattern-p{best}"
    r, p, facs = min(candidates)
    bound = 2 * _coefficient_bound(f)
    a = 1
    while p ** a <= bound:
        a += 1
    modulus = p ** a
    lifted = _lift_all(list(f.coeffs), facs, p, a)
    lc = f.lc
    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            deg = sum(len(lifted[i]) - 1 for i in subset)
            if deg not in possible:
                continue
            g = [lc]
            for i in subset:
                g = [c % modulus for c in _zmul(g, lifted[i])]
            cand = IntPolynomial(tuple(_symmetric(g, modulus))).primitive_part()
            if 0 < cand.degree < n and f.exact_div(cand) is not None:
                return cand, f"zassenhaus-p{p}"
    return None, f"zassenhaus-p{p}"


def _lift_all(f, facs, p, a):
    """Lift the monic modular factors facs of f to p^a, one split at a time."""
    lifted = []
    rest = f
    modulus = p ** a
    for i, g in enumerate(facs[:-1]):
        h = [f[-1] % p]
        for u in facs[i + 1 :]:
            h = _pmul(h, u, p)
        G, H = _hensel_two(rest, g, h, p, a)
        lifted.append(G)
        rest = _symmetric(H, modulus)
    last = _trim([c % modulus for c in rest])
    inv = pow(last[-1], -1, modulus)
    lifted.append([c * inv % modulus for c in last])
    return lifted


# public pipeline

def _reducible(poly: IntPolynomial, factor: IntPolynomial) -> IrreducibilityCertificate:
    other = poly.exact_div(factor)
    if other is None:
        raise CertificateError("claimed factor does not divide exactly")
    cert = IrreducibilityCertificate(
        poly, REDUCIBLE, {"type": "factors", "f": factor.to_list(), "g": other.to_list()}
    )
    if not cert.verify():
        raise CertificateError("factor pair failed re-multiplication")
    return cert


def is_irreducible_over_Q(
    p: IntPolynomial, eisenstein_bound: int = DEFAULT_EISENSTEIN_BOUND
) -> IrreducibilityCertificate:
    if p.degree < 1:
        raise PolynomialError("irreducibility is undefined for constants")
    pp = p.primitive_part()
    if pp.degree == 1:
        return IrreducibilityCertificate(p, IRREDUCIBLE, {"type": "exhausted", "method": "linear"})
    roots = rational_roots(pp)
    if roots:
        r = roots[0]
        return _reducible(p, IntPolynomial((-r.numerator, r.denominator)))
    prime = eisenstein_check(pp, eisenstein_bound)
    if prime is not None:
        return IrreducibilityCertificate(p, IRREDUCIBLE, {"type": "eisenstein", "p": prime})
    if pp.degree <= 3:
        return IrreducibilityCertificate(
            p, IRREDUCIBLE, {"type": "exhausted", "method": "rational-root-exhaustion"}
        )
    repeated = _squarefree_split(pp)
    if repeated is not None:
        return _reducible(p, repeated)
    factor, method = zassenhaus_factor(pp)
    if factor is not None:
        return _reducible(p, factor)
    return IrreducibilityCertificate(p, IRREDUCIBLE, {"type": "exhausted", "method": method})


def shifted_dickson(k: int, d: int, shift: int) -> IntPolynomial:
    return dickson_H(k, d - 1) + shift


def shifted_dickson_certificate(k: int, d: int, shift: int) -> IrreducibilityCertificate:
    """Certificate for H_{d-1}(x) + shift.

    For odd k, d >= 4 and shift = +-2 the result is required to be an
    Eisenstein certificate at p = 2: every lower coefficient of H_{d-1} is a
    multiple of the even number k-1 and the constant term is +-2 mod 4.
    """
    if k < 3 or d < 3:
        raise PolynomialError(f"need k >= 3 and d >= 3, got k={k}, d={d}")
    if shift not in (-2, -1, 1, 2):
        raise PolynomialError(f"shift must be one of -2, -1, 1, 2, got {shift}")
    cert = is_irreducible_over_Q(shifted_dickson(k, d, shift))
    if k % 2 == 1 and shift in (-2, 2) and d >= 4:
        if not (cert.verdict == IRREDUCIBLE and cert.witness == {"type": "eisenstein", "p": 2}):
            raise CertificateError(
                f"expected an Eisenstein p=2 certificate for H_{d - 1}{shift:+d} at k={k}"
            )
    return cert
