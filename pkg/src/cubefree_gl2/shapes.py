"""Isomorphism-type descriptors for cube-free groups realized in GL(2,q)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Literal

from .finite_field import FieldDesc, factorize

if TYPE_CHECKING:
    from .matgroup import MatGroup

CYCLIC = "cyclic"
ELEMENTARY = "elementary-abelian"

GeoKind = Literal["reducible", "imprimitive", "primitive-cyclic", "primitive-split"]


class NotCubeFree(ValueError):
    pass


class NotPPrime(ValueError):
    """The order is divisible by the field characteristic."""


@dataclass(frozen=True, order=True)
class SylowShape:
    prime: int
    exponent: int
    kind: str = CYCLIC

    def __post_init__(self):
        if self.exponent not in (1, 2):
            raise NotCubeFree(f"Sylow {self.prime}-subgroup of order {self.prime}^{self.exponent}")
        if self.kind not in (CYCLIC, ELEMENTARY):
            raise ValueError(f"unknown Sylow kind {self.kind!r}")
        if self.kind == ELEMENTARY and self.exponent != 2:
            raise ValueError("an elementary abelian Sylow must have exponent 2")

    @property
    def order(self) -> int:
        return self.prime**self.exponent

    @property
    def cyclic(self) -> bool:
        return self.kind == CYCLIC

    def label(self) -> str:
        if self.cyclic:
            return f"Z{self.order}"
        return f"Z{self.prime}xZ{self.prime}"

    def to_json(self) -> dict:
        return {"p": self.prime, "beta": self.exponent, "kind": self.kind}


@dataclass(frozen=True)
class Geo:
    kind: GeoKind
    p_top: int | None = None

    def __post_init__(self):
        if self.kind == "imprimitive" and self.p_top not in (2, 4):
            raise ValueError("imprimitive geometry needs p_top in {2, 4}")

    def to_json(self):
        if self.p_top is None:
            return self.kind
        return {"kind": self.kind, "p_top": self.p_top}

    @classmethod
    def from_json(cls, data) -> Geo:
        if isinstance(data, str):
            return cls(data)
        return cls(data["kind"], data.get("p_top"))

    @property
    def coarse(self) -> str:
        """reducible / imprimitive / primitive."""
        return "primitive" if self.kind.startswith("primitive") else self.kind


REDUCIBLE = Geo("reducible")


@dataclass(frozen=True)
class GroupShape:
    m: int
    sylows: tuple[SylowShape, ...]
    geo: Geo = REDUCIBLE
    iso_witness: MatGroup | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        prod = 1
        for s in self.sylows:
            prod *= s.order
        if prod != self.m:
            raise ValueError(f"Sylow orders multiply to {prod}, not m = {self.m}")
        primes = [s.prime for s in self.sylows]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("sylows must be sorted by distinct primes")
        if self.geo.kind in ("imprimitive", "primitive-split") and self.m % 2:
            raise ValueError(f"{self.geo.kind} groups have even order")

    def sylow(self, prime: int) -> SylowShape | None:
        return next((s for s in self.sylows if s.prime == prime), None)

    @property
    def is_abelian_type(self) -> bool:
        return self.geo.kind == "reducible"

    def label(self) -> str:
        """Abelian label such as ``Z4xZ3`` (reducible) or ``<geo>:<m>`` otherwise."""
        if not self.sylows:
            return "1"
        body = "x".join(s.label() for s in self.sylows)
        if self.geo.kind == "reducible":
            return body
        return f"{self.geo.kind}[{body}]"

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "sylows": [s.to_json() for s in self.sylows],
            "geo": self.geo.to_json(),
        }
        if self.iso_witness is not None:
            out["witness"] = self.iso_witness.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, F: FieldDesc | None = None) -> GroupShape:
        sylows = tuple(sorted(
            SylowShape(int(s["p"]), int(s["beta"]), s.get("kind", CYCLIC)) for s in data["sylows"]
        ))
        m = int(data.get("m", 0)) or _prod(s.order for s in sylows)
        geo = Geo.from_json(data.get("geo", "reducible"))
        witness = None
        if "witness" in data and F is not None:
            from .matgroup import Mat, closure

            witness = closure(F, [Mat.from_json(F, g) for g in data["witness"]["generators"]])
        return cls(m, sylows, geo, witness)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def factor_cube_free(m: int) -> list[tuple[int, int]]:
    """Factor m, raising NotCubeFree if some prime appears cubed.

    >>> factor_cube_free(12)
    [(2, 2), (3, 1)]
    """
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    f = factorize(m) if m > 1 else []
    bad = [(r, e) for r, e in f if e >= 3]
    if bad:
        r, e = bad[0]
        raise NotCubeFree(f"{m} is not cube-free ({r}^{e} divides it)")
    return f


def is_cube_free(m: int) -> bool:
    try:
        factor_cube_free(m)
    except NotCubeFree:
        return False
    return True


def check_order(m: int, F: FieldDesc) -> list[tuple[int, int]]:
    """Validate a candidate order against the cube-free and p' hypotheses."""
    f = factor_cube_free(m)
    if m % F.p == 0:
        raise NotPPrime(f"p = {F.p} divides m = {m}")
    return f


def reducible_shapes(m: int) -> list[GroupShape]:
    """Every abelian shape of order m: each squared prime may be cyclic or elementary."""
    f = factor_cube_free(m)
    options = []
    for r, e in f:
        if e == 1:
            options.append([SylowShape(r, 1)])
        else:
            options.append([SylowShape(r, 2, CYCLIC), SylowShape(r, 2, ELEMENTARY)])
    return [GroupShape(m, tuple(combo)) for combo in itertools.product(*options)]


def abelian_shape(m: int, elementary: set[int] | frozenset[int] = frozenset()) -> GroupShape:
    """Reducible shape of order m with the listed primes elementary abelian."""
    sylows = []
    for r, e in factor_cube_free(m):
        kind = ELEMENTARY if r in elementary else CYCLIC
        sylows.append(SylowShape(r, e, kind))
    return GroupShape(m, tuple(sylows))


def index_set_I(shape: GroupShape) -> tuple[frozenset[int], int]:
    """Odd primes with a cyclic Sylow subgroup, and their count r."""
    primes = frozenset(s.prime for s in shape.sylows if s.prime != 2 and s.cyclic)
    return primes, len(primes)


def reducible_realizable(shape: GroupShape, F: FieldDesc) -> bool:
    """Whether the abelian shape embeds in D(2,q) = Z_{q-1} x Z_{q-1}."""
    if shape.m % F.p == 0:
        raise NotPPrime(f"p = {F.p} divides m = {shape.m}")
    n = F.q - 1
    for s in shape.sylows:
        need = s.order if s.cyclic else s.prime
        if n % need:
            return False
    return True


def with_geo(shape: GroupShape, geo: Geo, witness: MatGroup | None = None) -> GroupShape:
    return replace(shape, geo=geo, iso_witness=witness)
