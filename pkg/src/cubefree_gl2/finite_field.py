"""Exact arithmetic in GF(p^k).

Elements are stored as integer codes: the residue c_0 + c_1 x + ... + c_{k-1} x^{k-1}
has code c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Comparing codes therefore compares
coefficient tuples from the highest degree down, which is the total order used
everywhere a "smallest" element or polynomial is picked.

:class:`FieldDesc` exposes the arithmetic on raw codes (used by the matrix
layer for speed); :class:`FieldElem` wraps a code with operator overloading.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

MAX_Q = 1 << 20
_TABLE_LIMIT = 1 << 12

__all__ = [
    "FieldDesc",
    "FieldElem",
    "make_field",
    "field_of_order",
    "add",
    "mul",
    "neg",
    "inv",
    "power",
    "element_order",
    "element_of_order",
    "primitive_element",
    "euler_phi",
    "factorize",
    "is_prime",
    "prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@functools.lru_cache(maxsize=4096)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization as a sorted list of ``(prime, exponent)``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return list(_factorize(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"phi undefined for {n}")
    result = n
    for r, _ in _factorize(n):
        result -= result // r
    return result


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    f = _factorize(q)
    if len(f) != 1:
        return None
    return f[0]


# -- polynomials over GF(p): coefficient lists, index i = coefficient of x^i --

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, m, p)


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic f over GF(p) by gcd(x^(p^i) - x, f) for i <= deg/2."""
    k = len(f) - 1
    if k == 1:
        return True
    xp = [0, 1]
    for _ in range(k // 2):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(list(f), diff, p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # monic degree-k polys ordered by (c_{k-1}, ..., c_0) as a base-p integer
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        f = low + [1]
        if k > 1 and f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} mod {p}")


@dataclass(frozen=True)
class FieldDesc:
    """The field GF(q), q = p^k, realized as GF(p)[x]/(modulus)."""

    p: int
    k: int
    q: int
    modulus: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    # -- code <-> coefficients ------------------------------------------------

    def coeffs(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p**i) % p for i in range(self.k))

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            coeffs = _poly_mod(list(coeffs), self.modulus, self.p)
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def __call__(self, value: int | Sequence[int]) -> FieldElem:
        """Build an element from an integer (reduced mod p) or a coefficient list."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.code(value))

    def from_code(self, code: int) -> FieldElem:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self}")
        return FieldElem(self, code)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self) -> Iterator[FieldElem]:
        return (FieldElem(self, c) for c in range(self.q))

    def units(self) -> Iterator[FieldElem]:
        return (FieldElem(self, c) for c in range(1, self.q))

    # -- arithmetic on codes --------------------------------------------------

    def _digits(self) -> list[tuple[int, ...]]:
        d = self._cache.get("digits")
        if d is None:
            d = [self.coeffs(c) for c in range(self.q)]
            self._cache["digits"] = d
        return d

    def _tables(self) -> tuple[list[int], list[int]] | None:
        if self.k == 1 or self.q > _TABLE_LIMIT:
            return None
        t = self._cache.get("explog")
        if t is None:
            g = self.coeffs(primitive_element(self).code)
            exp = [0] * (self.q - 1)
            log = [0] * self.q
            cur = [1]
            for i in range(self.q - 1):
                c = self.code(cur)
                exp[i] = c
                log[c] = i
                cur = _poly_mulmod(cur, g, self.modulus, self.p)
            t = (exp, log)
            self._cache["explog"] = t
        return t

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        da, db = self._digits()[a], self._digits()[b]
        return sum(((x + y) % p) * p**i for i, (x, y) in enumerate(zip(da, db)))

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        if p == 2:
            return a
        return sum((-x % p) * p**i for i, x in enumerate(self._digits()[a]))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tables()
        if t is not None:
            exp, log = t
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self.code(_poly_mulmod(self.coeffs(a), self.coeffs(b), self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.k == 1:
            return pow(a, -1, self.p)
        t = self._tables()
        if t is not None:
            exp, log = t
            return exp[-log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        t = self._tables()
        if t is not None:
            exp, log = t
            return exp[log[a] * e % (self.q - 1)]
        return self.code(_poly_powmod(self.coeffs(a), e, self.modulus, self.p))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True, eq=True)
class FieldElem:
    field: FieldDesc
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"mixed-field operands {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(o)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def __lt__(self, other: FieldElem) -> bool:
        return self.code < other.code

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.code))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if (c != 1 or i == 0) else mono)
        return "+".join(reversed(terms)) or "0"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldDesc:
    """Return GF(p^k) with the smallest irreducible monic modulus.

    >>> make_field(3, 2).modulus
    (1, 0, 1)
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    q = p**k
    if q > MAX_Q:
        raise ValueError(f"q = {q} exceeds the supported bound {MAX_Q}")
    return FieldDesc(p, k, q, _smallest_irreducible(p, k))


def field_of_order(q: int) -> FieldDesc:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pk)


def _check_pair(x: FieldElem, y: FieldElem) -> None:
    if x.field != y.field:
        raise ValueError(f"mixed-field operands {x.field} and {y.field}")


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    _check_pair(x, y)
    return x + y


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    _check_pair(x, y)
    return x * y


def neg(x: FieldElem) -> FieldElem:
    return -x


def inv(x: FieldElem) -> FieldElem:
    return x.inverse()


def power(x: FieldElem, e: int) -> FieldElem:
    return x**e


def _order_of_code(F: FieldDesc, c: int) -> int:
    # plain polynomial powering: this runs while the log tables are being built
    def is_one(e: int) -> bool:
        if F.k == 1:
            return pow(c, e, F.p) == 1
        return _poly_powmod(F.coeffs(c), e, F.modulus, F.p) == [1]

    n = F.q - 1
    for r, e in _factorize(F.q - 1):
        for _ in range(e):
            if is_one(n // r):
                n //= r
            else:
                break
    return n


def element_order(x: FieldElem) -> int:
    """Multiplicative order, found by peeling prime factors off q - 1."""
    if x.code == 0:
        raise ValueError("zero has no multiplicative order")
    return _order_of_code(x.field, x.code)


def primitive_element(F: FieldDesc) -> FieldElem:
    """The smallest (by code) generator of the multiplicative group."""
    g = F._cache.get("primitive")
    if g is None:
        for c in range(1, F.q):
            if _order_of_code(F, c) == F.q - 1:
                g = c
                break
        F._cache["primitive"] = g
    return FieldElem(F, g)


def element_of_order(F: FieldDesc, n: int) -> FieldElem:
    """Canonical element of order n: g^((q-1)/n) for the canonical primitive g."""
    if n < 1 or (F.q - 1) % n:
        raise ValueError(f"{n} does not divide q - 1 = {F.q - 1}")
    return primitive_element(F) ** ((F.q - 1) // n)

