"""Exact arithmetic in GF(q), q = p^m.

Field elements are plain ints in 0..q-1.  The base-p digits of an element
are its polynomial-basis coefficients, constant term in the least
significant digit, so 0 and 1 are the additive and multiplicative
identities for every p and m.  The same integer encoding fixes the digit
order used by vertex ids and file exports.

For m >= 2 arithmetic is done modulo a monic irreducible polynomial of
degree m over GF(p).  Unless an override is given, construction picks the
irreducible polynomial whose coefficient encoding sum(c_i * p^i) is
smallest (the monic leading coefficient is excluded from the encoding),
found by an exhaustive scan, so a given q always yields the same field.
Extension-field multiplication goes through discrete log/antilog tables
built on the smallest primitive element; addition is digitwise mod p,
which for p = 2 is plain XOR.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

__all__ = ["FieldSpec", "make_field", "poly_str"]


def _split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"field order must be at least 2, got {q}")
    p = q
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    m, n = 0, q
    while n > 1:
        if n % p:
            raise ValueError(f"{q} is not a prime power")
        n //= p
        m += 1
    return p, m


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _poly_divides(g: Sequence[int], f: Sequence[int], p: int) -> bool:
    """True if monic g divides f over GF(p).  Little-endian coefficients."""
    r = list(f)
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            for j in range(dg + 1):
                r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
    return not any(r[:dg])


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by x
    for d in range(1, deg // 2 + 1):
        for enc in range(p**d):
            g = _digits(enc, p, d) + [1]
            if _poly_divides(g, coeffs, p):
                return False
    return True


def _minimal_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)  # the polynomial x; unused by degree-1 arithmetic
    for enc in range(p**m):
        coeffs = _digits(enc, p, m) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: GF(p^m) always has an irreducible modulus")


def _check_modulus(coeffs: tuple[int, ...], p: int, m: int) -> None:
    if len(coeffs) != m + 1:
        raise ValueError(f"modulus must have degree {m}, got {len(coeffs) - 1}")
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError(f"modulus coefficients must lie in 0..{p - 1}")
    if coeffs[-1] != 1:
        raise ValueError("modulus must be monic")
    if m >= 2 and not _is_irreducible(coeffs, p):
        raise ValueError(f"modulus {list(coeffs)} is reducible over GF({p})")


def _poly_mulmod(a: int, b: int, p: int, m: int, modulus: Sequence[int]) -> int:
    """Product of two elements by schoolbook polynomial arithmetic."""
    da = _digits(a, p, m)
    db = _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    # fold down using x^m = -(c_0 + ... + c_{m-1} x^{m-1})
    for deg in range(2 * m - 2, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(m):
                prod[deg - m + j] = (prod[deg - m + j] - c * modulus[j]) % p
    n = 0
    for d in reversed(prod[:m]):
        n = n * p + d
    return n


def poly_str(coeffs: Sequence[int]) -> str:
    """Human-readable form of a little-endian coefficient list."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            terms.append(x if c == 1 else f"{c}{x}")
    return " + ".join(terms) if terms else "0"


class FieldSpec:
    """Immutable description of GF(q) plus its arithmetic.

    Scalar methods take and return element indices (plain ints); the
    v-prefixed variants act elementwise on numpy arrays and broadcast
    like ufuncs.  Instances are safe to share across threads.
    """

    def __init__(self, q: int, modulus: Sequence[int] | None = None):
        p, m = _split_prime_power(q)
        if modulus is None:
            mod = _minimal_modulus(p, m)
        else:
            mod = tuple(int(c) for c in modulus)
            _check_modulus(mod, p, m)
        self.p = p
        self.m = m
        self.q = q
        self.modulus = mod

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.q == other.q
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    # -- discrete log tables (m >= 2 only) --------------------------------

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log) for the smallest primitive element."""
        q = self.q
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            x, ok = 1, True
            for i in range(q - 1):
                exp[i] = x
                x = _poly_mulmod(x, g, self.p, self.m, self.modulus)
                if x == 1 and i != q - 2:
                    ok = False  # order of g divides i+1 < q-1
                    break
            if ok and x == 1:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                return exp, log
        raise AssertionError("unreachable: GF(q)* is cyclic")

    # -- scalar ops --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, pk = 0, 1
        for _ in range(self.m):
            out += ((a + b) % self.p) * pk
            a //= self.p
            b //= self.p
            pk *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        out, pk = 0, 1
        for _ in range(self.m):
            out += ((self.p - a) % self.p) * pk
            a //= self.p
            pk *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return int(exp[(log[a] + log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return int(exp[(self.q - 1 - int(log[a])) % (self.q - 1)])

    # -- vector ops --------------------------------------------------------

    def vadd(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        a = np.asarray(a)
        b = np.asarray(b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pk = 1
        for _ in range(self.m):
            out += ((a % self.p + b % self.p) % self.p) * pk
            a = a // self.p
            b = b // self.p
            pk *= self.p
        return out

    def vneg(self, a):
        a = np.asarray(a)
        if self.m == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        pk = 1
        for _ in range(self.m):
            out += ((self.p - a % self.p) % self.p) * pk
            a = a // self.p
            pk *= self.p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.m == 1:
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        exp, log = self._tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- small printable tables ---------------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        i = np.arange(self.q, dtype=np.int64)
        return self.vadd(i[:, None], i[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        i = np.arange(self.q, dtype=np.int64)
        return self.vmul(i[:, None], i[None, :])


@lru_cache(maxsize=None)
def _make_field_cached(q: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(q, modulus)


def make_field(q: int, modulus_override: Sequence[int] | None = None) -> FieldSpec:
    """Construct GF(q), deterministically for a given q.

    Raises ValueError when q is not a prime power (or q < 2) and when the
    override is not a monic irreducible polynomial of the right degree.
    """
    key = tuple(int(c) for c in modulus_override) if modulus_override is not None else None
    return _make_field_cached(int(q), key)
