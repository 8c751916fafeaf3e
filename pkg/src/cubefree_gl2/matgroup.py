"""2x2 matrices over GF(q), finite matrix groups, and the standard subgroups
D(2,q) (diagonal), M(2,q) (monomial), S(2,q) (Singer cycle) and N(2,q)
(normaliser of the Singer cycle).
"""

from __future__ import annotations

import bisect
import functools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .finite_field import FieldDesc, FieldElem, factorize

Codes = tuple[int, int, int, int]

GL_STREAM_CAP = 13

__all__ = [
    "Mat",
    "MatGroup",
    "GroupDescriptor",
    "StandardSubgroups",
    "identity",
    "diag",
    "swap",
    "closure",
    "standard_subgroups",
    "is_conjugate_subgroup",
    "iter_gl",
    "gl_order",
]


def gl_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


@functools.lru_cache(maxsize=None)
def _mul4(F: FieldDesc) -> Callable[[Codes, Codes], Codes]:
    """Fast product on raw code 4-tuples (row-major)."""
    if F.k == 1:
        p = F.p

        def mul(x: Codes, y: Codes) -> Codes:
            a, b, c, d = x
            e, f, g, h = y
            return ((a * e + b * g) % p, (a * f + b * h) % p,
                    (c * e + d * g) % p, (c * f + d * h) % p)
        return mul

    fa, fm = F.add, F.mul

    def mul(x: Codes, y: Codes) -> Codes:
        a, b, c, d = x
        e, f, g, h = y
        return (fa(fm(a, e), fm(b, g)), fa(fm(a, f), fm(b, h)),
                fa(fm(c, e), fm(d, g)), fa(fm(c, f), fm(d, h)))
    return mul


def _det(F: FieldDesc, x: Codes) -> int:
    a, b, c, d = x
    return F.sub(F.mul(a, d), F.mul(b, c))


def _inv4(F: FieldDesc, x: Codes) -> Codes:
    a, b, c, d = x
    di = F.inv(_det(F, x))
    return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))


@dataclass(frozen=True)
class Mat:
    """An invertible 2x2 matrix; ``codes`` holds e11, e12, e21, e22 as field codes."""

    field: FieldDesc
    codes: Codes

    @classmethod
    def of(cls, F: FieldDesc, rows: Sequence[Sequence[int | FieldElem]]) -> Mat:
        """Build from rows; ints are read as prime-field integers, FieldElems as is."""
        flat = [F(x).code for row in rows for x in row]
        if len(flat) != 4:
            raise ValueError("expected a 2x2 matrix")
        m = cls(F, tuple(flat))
        if _det(F, m.codes) == 0:
            raise ValueError(f"singular matrix {m}")
        return m

    @property
    def entries(self) -> tuple[FieldElem, FieldElem, FieldElem, FieldElem]:
        F = self.field
        return tuple(FieldElem(F, c) for c in self.codes)

    def det(self) -> FieldElem:
        return FieldElem(self.field, _det(self.field, self.codes))

    def __mul__(self, other: Mat) -> Mat:
        if other.field != self.field:
            raise ValueError("matrices over different fields")
        return Mat(self.field, _mul4(self.field)(self.codes, other.codes))

    def inverse(self) -> Mat:
        if _det(self.field, self.codes) == 0:
            raise ValueError("singular matrix has no inverse")
        return Mat(self.field, _inv4(self.field, self.codes))

    def __pow__(self, e: int) -> Mat:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = identity(self.field)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self) -> int:
        return mat_order(self)

    def is_scalar(self) -> bool:
        a, b, c, d = self.codes
        return b == 0 and c == 0 and a == d

    def __lt__(self, other: Mat) -> bool:
        return self.codes < other.codes

    def to_json(self) -> list[list[list[int]]]:
        e = self.entries
        return [[e[0].to_json(), e[1].to_json()], [e[2].to_json(), e[3].to_json()]]

    @classmethod
    def from_json(cls, F: FieldDesc, data) -> Mat:
        return cls.of(F, [[F(x) for x in row] for row in data])

    def __repr__(self) -> str:
        e = self.entries
        return f"[[{e[0]!r}, {e[1]!r}], [{e[2]!r}, {e[3]!r}]]"


def identity(F: FieldDesc) -> Mat:
    return Mat(F, (1, 0, 0, 1))


def swap(F: FieldDesc) -> Mat:
    """The coordinate swap ``a``."""
    return Mat(F, (0, 1, 1, 0))


def diag(d1: FieldElem, d2: FieldElem) -> Mat:
    if d1.field != d2.field:
        raise ValueError("diagonal entries from different fields")
    if not d1 or not d2:
        raise ValueError("diagonal entries must be nonzero")
    return Mat(d1.field, (d1.code, 0, 0, d2.code))


def conj(g: Mat, x: Mat) -> Mat:
    """g x g^-1."""
    return g * x * g.inverse()


def _gl_exponent_factors(q: int) -> list[tuple[int, int]]:
    return factorize(gl_order(q))


def mat_order(x: Mat) -> int:
    """Least n >= 1 with x^n = I; the order divides |GL(2,q)|, so peel its prime factors."""
    F = x.field
    if _det(F, x.codes) == 0:
        raise ValueError("singular matrix has no order")
    one = (1, 0, 0, 1)
    n = gl_order(F.q)
    for r, e in _gl_exponent_factors(F.q):
        for _ in range(e):
            if (x ** (n // r)).codes == one:
                n //= r
            else:
                break
    return n


class MatGroup:
    """A finite subgroup of GL(2,q): generators plus its closed, sorted element list.

    Two groups compare equal when their element sets agree; generators are
    bookkeeping only.
    """

    __slots__ = ("field", "generators", "_codes", "_set", "__weakref__", "_cache")

    def __init__(self, F: FieldDesc, generators: Iterable[Mat], codes: Iterable[Codes]):
        self.field = F
        self.generators = tuple(generators)
        self._codes: tuple[Codes, ...] = tuple(sorted(codes))
        self._set: frozenset[Codes] = frozenset(self._codes)
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return len(self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    @property
    def elements(self) -> tuple[Mat, ...]:
        els = self._cache.get("elements")
        if els is None:
            els = tuple(Mat(self.field, c) for c in self._codes)
            self._cache["elements"] = els
        return els

    @property
    def codes(self) -> tuple[Codes, ...]:
        return self._codes

    @property
    def code_set(self) -> frozenset[Codes]:
        return self._set

    def __iter__(self) -> Iterator[Mat]:
        return iter(self.elements)

    def __contains__(self, x: Mat) -> bool:
        i = bisect.bisect_left(self._codes, x.codes)
        return i < len(self._codes) and self._codes[i] == x.codes

    def __eq__(self, other) -> bool:
        return isinstance(other, MatGroup) and self.field == other.field and self._codes == other._codes

    def __hash__(self) -> int:
        return hash(self._codes)

    def __lt__(self, other: MatGroup) -> bool:
        return self._codes < other._codes

    def __repr__(self) -> str:
        return f"MatGroup(order={self.order}, generators={list(self.generators)})"

    def is_subgroup_of(self, other: MatGroup) -> bool:
        return self._set <= other._set

    def element_orders(self) -> Counter:
        c = self._cache.get("orders")
        if c is None:
            c = Counter(element_order_in(self, x) for x in self._codes)
            self._cache["orders"] = c
        return c

    def conjugate(self, g: Mat) -> MatGroup:
        F = self.field
        mul = _mul4(F)
        gi = _inv4(F, g.codes)
        codes = [mul(mul(g.codes, x), gi) for x in self._codes]
        gens = [conj(g, x) for x in self.generators]
        return MatGroup(F, gens, codes)

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [g.to_json() for g in self.generators]}


def element_order_in(G: MatGroup, x: Codes) -> int:
    """Order of an element, by iteration (cheap inside a small group)."""
    mul = _mul4(G.field)
    one = (1, 0, 0, 1)
    n, y = 1, x
    while y != one:
        y = mul(y, x)
        n += 1
    return n


def closure(F: FieldDesc, gens: Iterable[Mat], limit: int | None = None) -> MatGroup:
    """Breadth-first closure of ``gens`` under multiplication.

    With ``limit`` set, returns None as soon as the group exceeds that order.
    """
    gens = [g for g in gens]
    for g in gens:
        if g.field != F:
            raise ValueError("generator over a different field")
        if _det(F, g.codes) == 0:
            raise ValueError(f"singular generator {g}")
    mul = _mul4(F)
    gcodes = list(dict.fromkeys(g.codes for g in gens))
    one = (1, 0, 0, 1)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gcodes:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if limit is not None and len(seen) > limit:
            return None
        frontier = nxt
    return MatGroup(F, gens, seen)


def closure_codes(F: FieldDesc, gcodes: Sequence[Codes]) -> set[Codes]:
    mul = _mul4(F)
    one = (1, 0, 0, 1)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gcodes:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def small_generating_set(G: MatGroup) -> list[Mat]:
    """Greedy generating set: highest-order elements first, ties by matrix order."""
    F = G.field
    ords = {x: element_order_in(G, x) for x in G.codes}
    ranked = sorted(G.codes, key=lambda x: (-ords[x], x))
    gens: list[Codes] = []
    current = {(1, 0, 0, 1)}
    for x in ranked:
        if len(current) == G.order:
            break
        if x not in current:
            gens.append(x)
            current = closure_codes(F, gens)
    return [Mat(F, g) for g in gens]


def with_small_generators(G: MatGroup) -> MatGroup:
    return MatGroup(G.field, small_generating_set(G), G.codes)


# -- standard subgroups --------------------------------------------------------


@dataclass(frozen=True)
class GroupDescriptor:
    """Generators and order of a subgroup whose elements are built only on demand."""

    field: FieldDesc
    name: str
    generators: tuple[Mat, ...]
    order: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def group(self) -> MatGroup:
        G = self._cache.get("group")
        if G is None:
            G = closure(self.field, self.generators)
            assert G.order == self.order, (self.name, G.order, self.order)
            self._cache["group"] = G
        return G


@dataclass(frozen=True)
class StandardSubgroups:
    a: Mat
    h: Mat
    b: Mat
    D: GroupDescriptor
    M: GroupDescriptor
    S: GroupDescriptor
    N: GroupDescriptor

    def singer_power(self, k: int) -> Mat:
        return self.h ** k


class _QuadraticExtension:
    """GF(q^2) as GF(q)[y]/(y^2 + c1 y + c0), elements as code pairs (a0, a1)."""

    def __init__(self, F: FieldDesc):
        self.F = F
        self.c0, self.c1 = self._smallest_irreducible_quadratic(F)

    @staticmethod
    def _smallest_irreducible_quadratic(F: FieldDesc) -> tuple[int, int]:
        squares_plus = None
        for c1 in range(F.q):
            for c0 in range(1, F.q):
                # irreducible iff no root in F
                if squares_plus is None or squares_plus[0] != c1:
                    vals = {F.add(F.mul(t, t), F.mul(c1, t)) for t in range(F.q)}
                    squares_plus = (c1, vals)
                if F.neg(c0) not in squares_plus[1]:
                    return c0, c1
        raise AssertionError("no irreducible quadratic")

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        F = self.F
        a0, a1 = x
        b0, b1 = y
        # y^2 = -c1 y - c0
        t = F.mul(a1, b1)
        r0 = F.sub(F.mul(a0, b0), F.mul(t, self.c0))
        r1 = F.sub(F.add(F.mul(a0, b1), F.mul(a1, b0)), F.mul(t, self.c1))
        return r0, r1

    def pow(self, x: tuple[int, int], e: int) -> tuple[int, int]:
        result = (1, 0)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def primitive(self) -> tuple[int, int]:
        F = self.F
        n = F.q * F.q - 1
        primes = [r for r, _ in factorize(n)]
        # candidates in (a1, a0) order: highest degree coefficient compared first
        for a1 in range(F.q):
            for a0 in range(F.q):
                x = (a0, a1)
                if x == (0, 0):
                    continue
                if all(self.pow(x, n // r) != (1, 0) for r in primes):
                    return x
        raise AssertionError("no primitive element")


def _nullspace(F: FieldDesc, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the right nullspace of a matrix over F (codes), by Gauss-Jordan."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(v, inv) for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(A[i][fc])
        basis.append(v)
    return basis


def _singer_generator(F: FieldDesc) -> Mat:
    ext = _QuadraticExtension(F)
    theta = ext.primitive()
    theta_q = ext.pow(theta, F.q)
    trace = F.add(theta[0], theta_q[0])
    norm = ext.mul(theta, theta_q)
    assert F.add(theta[1], theta_q[1]) == 0 and norm[1] == 0
    # minimal polynomial x^2 - trace x + norm; companion [[0, -c0], [1, -c1]]
    return Mat(F, (0, F.neg(norm[0]), 1, trace))


def _singer_involution(F: FieldDesc, h: Mat) -> Mat:
    """Canonical b with b h b^-1 = h^q and b^2 = I."""
    hq = h ** F.q
    # unknowns (x1, x2, x3, x4) of b; equations of b h - h^q b = 0
    h11, h12, h21, h22 = h.codes
    g11, g12, g21, g22 = hq.codes
    n = F.neg
    rows = [
        [F.sub(h11, g11), h21, n(g12), 0],
        [h12, F.sub(h22, g11), 0, n(g12)],
        [n(g21), 0, F.sub(h11, g22), h21],
        [0, n(g21), h12, F.sub(h22, g22)],
    ]
    basis = _nullspace(F, rows, 4)
    b1 = Mat(F, tuple(basis[0]))
    s = (b1 * b1).codes
    assert s[1] == 0 and s[2] == 0 and s[0] == s[3], "b^2 must be scalar"
    z = (h ** (F.q + 1)).codes[0]
    target = F.inv(s[0])
    t, zt = 0, 1
    while zt != target:
        zt = F.mul(zt, z)
        t += 1
    step = h ** (F.q - 1)
    cand = (h ** t) * b1
    best = cand
    for _ in range(F.q):
        cand = step * cand
        if cand < best:
            best = cand
    assert (best * best).codes == (1, 0, 0, 1)
    return best


@functools.lru_cache(maxsize=None)
def standard_subgroups(F: FieldDesc) -> StandardSubgroups:
    from .finite_field import primitive_element

    q = F.q
    a = swap(F)
    g = primitive_element(F)
    one = F.one
    h = _singer_generator(F)
    b = _singer_involution(F, h)
    dgens = (diag(g, one), diag(one, g))
    D = GroupDescriptor(F, "D", dgens, (q - 1) ** 2)
    M = GroupDescriptor(F, "M", dgens + (a,), 2 * (q - 1) ** 2)
    S = GroupDescriptor(F, "S", (h,), q * q - 1)
    N = GroupDescriptor(F, "N", (h, b), 2 * (q * q - 1))
    return StandardSubgroups(a=a, h=h, b=b, D=D, M=M, S=S, N=N)


def iter_gl(F: FieldDesc, allow_large: bool = False) -> Iterator[Mat]:
    """Stream every element of GL(2,q) in matrix order."""
    if F.q > GL_STREAM_CAP and not allow_large:
        raise ValueError(f"streaming GL(2,{F.q}) exceeds the cap q <= {GL_STREAM_CAP}")
    q = F.q
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    x = (a, b, c, d)
                    if _det(F, x):
                        yield Mat(F, x)


def _profile(G: MatGroup) -> tuple:
    return (G.order, sorted(G.element_orders().items()))


def is_conjugate_subgroup(ambient: Iterable[Mat], H: MatGroup, K: MatGroup) -> Mat | None:
    """Some g from ``ambient`` with g H g^-1 = K, or None."""
    if H.field != K.field:
        raise ValueError("subgroups over different fields")
    if H.order != K.order:
        return None
    if H == K:
        return identity(H.field)
    if _profile(H) != _profile(K):
        return None
    F = H.field
    mul = _mul4(F)
    gens = [g.codes for g in H.generators] if H.generators else list(H.codes)
    kset = K.code_set
    for g in ambient:
        gi = _inv4(F, g.codes)
        if all(mul(mul(g.codes, x), gi) in kset for x in gens):
            return g
    return None
