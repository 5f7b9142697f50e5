"""Point-counting oracle: counts on superelliptic curves over small finite
fields, L-polynomials from the counts, and their Newton polygons.

Independent of the character computation in :mod:`triple_branch.newton`; used
to check it at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Sequence

from .covers import InertiaType
from .modular import is_prime, prime_factors
from .newton import NewtonPolygon

DEFAULT_Q_BUDGET = 3**10


class BudgetExceeded(RuntimeError):
    """The field size needed exceeds the configured budget."""


class CorruptCountsError(ValueError):
    """Point counts that violate the Weil bound."""


class FiniteField:
    """GF(p^k) with elements encoded as ints sum c_i p^i (coefficients of a
    polynomial in the generator of the modulus), plus log/exp tables."""

    def __init__(self, p: int, k: int = 1) -> None:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = _irreducible(p, k)
        self.exp: list[int] = []
        self.log: list[int] = [-1] * self.q
        self._build_tables()
        self.one = 1

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _from_digits(self, ds: Sequence[int]) -> int:
        out = 0
        for d in reversed(ds):
            out = out * self.p + d % self.p
        return out

    def _polymul(self, u: int, v: int) -> int:
        p, k, f = self.p, self.k, self.modulus
        a, b = self._digits(u), self._digits(v)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus f (coefficients low to high, length k+1)
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * f[i]) % p
        return self._from_digits(prod[:k])

    def _build_tables(self) -> None:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._polymul(x, g)
            if len(powers) == q - 1:
                self.exp = powers
                break
        else:  # pragma: no cover - multiplicative groups of finite fields are cyclic
            raise AssertionError("no primitive element found")
        for i, x in enumerate(self.exp):
            self.log[x] = i

    def add(self, u: int, v: int) -> int:
        a, b = self._digits(u), self._digits(v)
        return self._from_digits([x + y for x, y in zip(a, b)])

    def neg(self, u: int) -> int:
        return self._from_digits([-x for x in self._digits(u)])

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        return self.exp[(self.log[u] + self.log[v]) % (self.q - 1)]

    def power(self, u: int, e: int) -> int:
        if u == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[u] * e) % (self.q - 1)]

    def scalar(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def is_power(self, u: int, d: int) -> bool:
        """Whether nonzero ``u`` is a d-th power in the field."""
        return self.log[u] % gcd(d, self.q - 1) == 0

    def count_roots(self, d: int, c: int) -> int:
        """#{t : t^d = c} for nonzero c."""
        return gcd(d, self.q - 1) if self.is_power(c, d) else 0

    def quadratic_character(self, u: int) -> int:
        if u == 0:
            return 0
        return 1 if self.log[u] % 2 == 0 else -1


def _irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible polynomial of degree k over F_p, low-to-high."""
    if k == 1:
        return [0, 1]
    for coeffs in product(range(p), repeat=k):
        f = list(coeffs) + [1]
        if f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(p), repeat=d):
            g = list(coeffs) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


@lru_cache(maxsize=64)
def galois_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def _prime_power(q: int) -> tuple[int, int]:
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, k, x = ps[0], 0, q
    while x > 1:
        x //= p
        k += 1
    return p, k


def count_points(m: int, a0: int, a1: int, q: int) -> int:
    """#X(F_q) for the smooth projective model of y^m = x^a0 (1 - x)^a1.

    Away from x in {0, 1, inf} the plane model is smooth. Over each branch
    point the points correspond to d-th roots t of a constant, where d is the
    number of branches there, and a point is rational iff t is.
    """
    p, k = _prime_power(q)
    if p == 2:
        raise ValueError("only odd characteristic is supported")
    if m % p == 0:
        raise ValueError(f"characteristic {p} divides m = {m}")
    F = galois_field(p, k)
    one = 1
    n_aff = 0
    d = gcd(m, q - 1)
    for x in range(2, q) if k == 1 else F.elements():
        if x in (0, one):
            continue
        omx = F.sub(one, x)
        if omx == 0:
            continue
        if (a0 * F.log[x] + a1 * F.log[omx]) % d == 0:
            n_aff += d
    over0 = gcd(gcd(m, a0 % m), q - 1)
    over1 = gcd(gcd(m, a1 % m), q - 1)
    dinf = gcd(m, (a0 + a1) % m)
    c = one if a1 % 2 == 0 else F.neg(one)
    overinf = F.count_roots(dinf, c)
    return n_aff + over0 + over1 + overinf


def count_points_hyperelliptic(f: Sequence[int], q: int) -> int:
    """#X(F_q) for the smooth model of y^2 = f(x), f given low-to-high over Z."""
    p, k = _prime_power(q)
    if p == 2:
        raise ValueError("only odd characteristic is supported")
    F = galois_field(p, k)
    coeffs = [F.scalar(c) for c in f]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    total = 0
    for x in F.elements():
        val = 0
        for c in reversed(coeffs):
            val = F.add(F.mul(val, x), c)
        total += 1 + F.quadratic_character(val)
    if deg % 2:
        total += 1
    else:
        total += 1 + F.quadratic_character(coeffs[-1])
    return total


def l_polynomial(counts: Sequence[int], q: int, g: int) -> list[int]:
    """Coefficients a_0..a_2g of L(T) from N_i = #X(F_{q^i}), i = 1..g."""
    if g == 0:
        return [1]
    if len(counts) < g:
        raise ValueError(f"need {g} counts, got {len(counts)}")
    s = []
    for i, n in enumerate(counts[:g], start=1):
        t = q**i + 1 - n
        if t * t > 4 * g * g * q**i:
            raise CorruptCountsError(f"N_{i} = {n} violates the Weil bound over F_{q}^{i}")
        s.append(t)
    # Newton's identities for the elementary symmetric functions of the roots
    e = [Fraction(1)]
    for kk in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[kk - i] * s[i - 1] for i in range(1, kk + 1))
        e.append(acc / kk)
    if any(x.denominator != 1 for x in e):
        raise CorruptCountsError("counts give a non-integral L-polynomial")
    coeffs = [int((-1) ** i * e[i]) for i in range(g + 1)]
    for i in range(g + 1, 2 * g + 1):
        coeffs.append(q ** (i - g) * coeffs[2 * g - i])
    return coeffs


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def np_from_lpoly(coeffs: Sequence[int], p: int, k: int = 1) -> NewtonPolygon:
    """Lower convex hull of (i, v_p(a_i)/k); slopes are normalised to [0, 1]."""
    if len(coeffs) == 1:
        return NewtonPolygon()
    if coeffs[0] == 0 or coeffs[-1] == 0:
        raise ValueError("leading and trailing coefficients must be nonzero")
    pts = [(i, Fraction(_valuation(c, p), k)) for i, c in enumerate(coeffs) if c]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: dict[Fraction, int] = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        lam = (y2 - y1) / (x2 - x1)
        slopes[lam] = slopes.get(lam, 0) + (x2 - x1)
    return NewtonPolygon.from_counter(slopes)


@dataclass
class OracleReport:
    m: int
    a: tuple[int, int, int]
    p: int
    counts: list[int]
    l_poly: list[int]
    np: NewtonPolygon = NewtonPolygon()

    def check(self) -> None:
        g = (len(self.l_poly) - 1) // 2
        for i in range(g + 1):
            if self.l_poly[2 * g - i] != self.p ** (g - i) * self.l_poly[i]:
                raise CorruptCountsError("L-polynomial fails the functional equation")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "a": list(self.a),
            "p": self.p,
            "counts": list(self.counts),
            "l_poly": list(self.l_poly),
            "slopes": [[lam.numerator, lam.denominator, k] for lam, k in self.np.slopes],
        }


def oracle_report(a: InertiaType, p: int, q_budget: int = DEFAULT_Q_BUDGET) -> OracleReport:
    """Count points of the cyclic cover ``a`` over F_p, ..., F_{p^g}."""
    if not a.shape.is_cyclic:
        raise ValueError("the oracle handles cyclic covers only")
    m = a.shape.n1
    a0, a1, ainf = (x[0] for x in a.a)
    g = a.genus
    if p**g > q_budget:
        raise BudgetExceeded(f"p^g = {p}^{g} exceeds the budget {q_budget}")
    counts = [count_points(m, a0, a1, p**i) for i in range(1, g + 1)]
    coeffs = l_polynomial(counts, p, g)
    report = OracleReport(m, (a0, a1, ainf), p, counts, coeffs, np_from_lpoly(coeffs, p))
    report.check()
    return report
