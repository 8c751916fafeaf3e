"""Closed-form class counts for cube-free p'-subgroups of GL(2,q).

Reducible subgroups of order m isomorphic to H number (rho + delta) / 2:
rho counts the subgroups of D(2,q) isomorphic to H, delta counts those
among them normalised by the swap matrix.  Imprimitive and primitive
isomorphism types each form a single class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .finite_field import FieldDesc, primitive_element
from .shapes import (
    GroupShape,
    NotPPrime,
    check_order,
    index_set_I,
    reducible_realizable,
)


@dataclass(frozen=True)
class CountResult:
    rho: int
    delta: int
    count: int
    realizable: bool

    def to_json(self) -> dict:
        return {"rho": self.rho, "delta": self.delta, "count": self.count, "realizable": self.realizable}


def t_count(p: int, beta: int) -> int:
    """Cyclic subgroups of order p^beta in D(2,q) when p^beta divides q - 1."""
    return p**beta + p ** (beta - 1)


def _require_reducible(shape: GroupShape) -> None:
    if shape.geo.kind != "reducible":
        raise ValueError(f"shape is {shape.geo.kind}, not reducible")


def rho(shape: GroupShape) -> int:
    _require_reducible(shape)
    I, r = index_set_I(shape)
    two = shape.sylow(2)
    if two is not None and two.cyclic:
        primes = I | {2}
    elif r > 0:
        primes = I
    else:
        return 1
    out = 1
    for s in shape.sylows:
        if s.prime in primes:
            out *= t_count(s.prime, s.exponent)
    return out


def delta(shape: GroupShape) -> int:
    _require_reducible(shape)
    _, r = index_set_I(shape)
    two = shape.sylow(2)
    if two is not None and two.exponent == 2 and two.cyclic:
        return 2 ** (r + 1)
    return 2**r


def count_reducible(shape: GroupShape, F: FieldDesc) -> CountResult:
    """Number of GL(2,q)-classes of reducible subgroups of the given abelian shape."""
    _require_reducible(shape)
    check_order(shape.m, F)
    r_, d_ = rho(shape), delta(shape)
    if not reducible_realizable(shape, F):
        return CountResult(r_, d_, 0, False)
    if shape.m == 1:
        return CountResult(1, 1, 1, True)
    if (r_ + d_) % 2:
        raise AssertionError(f"rho + delta = {r_ + d_} is odd for {shape.label()}")
    return CountResult(r_, d_, (r_ + d_) // 2, True)


# -- subgroups of D(2,q) as subgroups of Z_n x Z_n, n = q - 1 -------------------

DiagSubgroup = frozenset  # of (i, j) exponent pairs: dia(g^i, g^j)


def _cyclic_pieces(n: int, p: int, beta: int) -> list[frozenset]:
    """All cyclic subgroups of order p^beta inside the p^beta-torsion of Z_n^2."""
    pb = p**beta
    s = n // pb
    seen = {}
    for u in range(pb):
        for v in range(pb):
            if (u % p or v % p):  # order exactly p^beta
                sub = frozenset(((k * u % pb) * s, (k * v % pb) * s) for k in range(pb))
                seen.setdefault(sub, None)
    return sorted(seen, key=sorted)


def _elementary_piece(n: int, p: int) -> frozenset:
    s = n // p
    return frozenset((u * s, v * s) for u in range(p) for v in range(p))


def diagonal_subgroups(shape: GroupShape, F: FieldDesc) -> list[DiagSubgroup]:
    """All subgroups of D(2,q) of the given abelian shape, as exponent-pair sets.

    Built prime by prime: an abelian group is the direct product of its Sylow
    subgroups, so every such subgroup is a sum of one piece per prime.
    """
    _require_reducible(shape)
    if not reducible_realizable(shape, F):
        raise ValueError(f"{shape.label()} does not embed in D(2,{F.q})")
    n = F.q - 1
    per_prime = []
    for s in shape.sylows:
        if s.cyclic:
            per_prime.append(_cyclic_pieces(n, s.prime, s.exponent))
        else:
            per_prime.append([_elementary_piece(n, s.prime)])
    out = []
    for combo in itertools.product(*per_prime):
        sub = {(0, 0)}
        for piece in combo:
            sub = {((i + k) % n, (j + l) % n) for i, j in sub for k, l in piece}
        out.append(frozenset(sub))
    return out


def swap_image(T: DiagSubgroup) -> DiagSubgroup:
    return frozenset((j, i) for i, j in T)


def burnside_count_reducible(shape: GroupShape, F: FieldDesc) -> CountResult:
    """Orbit count of M(2,q) on the subgroups of D(2,q) of the given shape.

    D(2,q) acts trivially and every d*a acts like a, so the orbit count is
    (|Y| + |Fix(a)|) / 2, both terms taken from an explicit enumeration.
    """
    if shape.m % F.p == 0:
        raise NotPPrime(f"p = {F.p} divides m = {shape.m}")
    Y = diagonal_subgroups(shape, F)
    fixed = sum(1 for T in Y if swap_image(T) == T)
    total = len(Y) + fixed
    if total % 2:
        raise AssertionError("Burnside sum is odd")
    return CountResult(len(Y), fixed, total // 2, True)


def diag_subgroup_to_matgroup(T: DiagSubgroup, F: FieldDesc):
    from .matgroup import MatGroup

    g = primitive_element(F)
    powers = [F.pow(g.code, e) for e in range(F.q - 1)]
    codes = [(powers[i], 0, 0, powers[j]) for i, j in T]
    return MatGroup(F, [], codes)


def count_imprimitive(H) -> CountResult:
    from .classifier import classify, is_solvable

    _check_group(H)
    if classify(H) != "imprimitive":
        raise ValueError("group is not imprimitive")
    if not is_solvable(H):
        raise ValueError("group is not solvable")
    return CountResult(1, 1, 1, True)


def count_primitive(H) -> CountResult:
    from .classifier import classify, is_solvable

    _check_group(H)
    if classify(H) != "primitive":
        raise ValueError("group is not primitive")
    if not is_solvable(H):
        raise ValueError("group is not solvable")
    return CountResult(1, 1, 1, True)


def _check_group(H) -> None:
    check_order(H.order, H.field)
