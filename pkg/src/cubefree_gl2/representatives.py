"""Explicit generators for one subgroup per conjugacy class.

Reducible classes are enumerated exhaustively: subgroups of the diagonal
group D(2,q) of a given shape, one per orbit of the coordinate swap.
Imprimitive groups are a swap-stable diagonal group L extended by a
monomial element of order 2 or 4; primitive groups are built inside the
Singer normaliser from a power of h and, for the split case, one element of
the coset S(2,q)b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .classifier import classify, is_isomorphic, is_solvable, sylow_shape_of
from .counting import DiagSubgroup, count_reducible, diagonal_subgroups, swap_image
from .finite_field import FieldDesc, FieldElem, element_of_order, element_order, primitive_element
from .matgroup import MatGroup, closure, diag, small_generating_set, standard_subgroups
from .shapes import GroupShape, check_order, reducible_realizable, reducible_shapes

__all__ = [
    "RepSpec",
    "Representative",
    "reducible_class_reps",
    "reducible_representatives",
    "stable_diagonal_subgroups",
    "imprimitive_rep",
    "primitive_rep",
    "rep_verify",
    "imprimitive_representatives",
    "primitive_representatives",
]


@dataclass(frozen=True)
class RepSpec:
    """How a representative was built: named field parameters, Singer power, top element."""

    shape: GroupShape
    params: dict[str, Any] = field(default_factory=dict)
    singer_power: int | None = None
    top_kind: str | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        for name, v in self.params.items():
            out[name] = v.to_json() if isinstance(v, FieldElem) else v
        if self.singer_power is not None:
            out["singer_power"] = self.singer_power
        if self.top_kind is not None:
            out["top"] = self.top_kind
        return out


@dataclass
class Representative:
    group: MatGroup
    spec: RepSpec

    def to_json(self) -> dict:
        shape = self.spec.shape
        shape_json = shape.to_json()
        shape_json.pop("witness", None)
        return {
            "shape": shape_json,
            "label": shape.label(),
            "generators": [g.to_json() for g in self.group.generators],
            "order": self.group.order,
            "geo": shape.geo.to_json(),
            "recipe_params": self.spec.to_json(),
        }


# -- reducible ---------------------------------------------------------------


def _diag_codes(F: FieldDesc, T: DiagSubgroup) -> list[tuple[int, int, int, int]]:
    g = primitive_element(F)
    powers = [F.pow(g.code, e) for e in range(F.q - 1)]
    return sorted((powers[i], 0, 0, powers[j]) for i, j in T)


def _orbit_key(F: FieldDesc, T: DiagSubgroup) -> tuple:
    # larger image on the first coordinate wins, then the smaller element list
    first = {i for i, _ in T}
    return (-len(first), _diag_codes(F, T))


def _as_group(F: FieldDesc, T: DiagSubgroup) -> MatGroup:
    G = MatGroup(F, [], _diag_codes(F, T))
    return MatGroup(F, small_generating_set(G), G.codes)


def reducible_class_reps(shape: GroupShape, F: FieldDesc) -> list[MatGroup]:
    """One diagonal subgroup per GL(2,q)-class of the given abelian shape.

    Swap-stable subgroups come first, then the swapped pairs; within each
    group the order is by sorted element list.
    """
    return [r.group for r in reducible_representatives(shape, F)]


def reducible_representatives(shape: GroupShape, F: FieldDesc) -> list[Representative]:
    check_order(shape.m, F)
    if shape.geo.kind != "reducible":
        raise ValueError(f"shape is {shape.geo.kind}, not reducible")
    if not reducible_realizable(shape, F):
        raise ValueError(f"{shape.label()} does not embed in D(2,{F.q})")
    Y = diagonal_subgroups(shape, F)
    stable, pairs = [], []
    seen: set[DiagSubgroup] = set()
    for T in Y:
        if T in seen:
            continue
        U = swap_image(T)
        seen.update((T, U))
        if U == T:
            stable.append(T)
        else:
            pairs.append(min(T, U, key=lambda X: _orbit_key(F, X)))
    stable.sort(key=lambda X: _diag_codes(F, X))
    pairs.sort(key=lambda X: _diag_codes(F, X))
    out = []
    for T in stable:
        G = _as_group(F, T)
        out.append(Representative(G, RepSpec(shape, _stable_params(G))))
    for T in pairs:
        G = _as_group(F, T)
        out.append(Representative(G, RepSpec(shape, {"normalizer": "D"})))
    assert len(out) == count_reducible(shape, F).count
    return out


def _cyclic_generator(elems: list[FieldElem]) -> FieldElem:
    """Element of largest order, smallest code among ties."""
    return max(elems, key=lambda x: (element_order(x), -x.code))


def _stable_params(G: MatGroup) -> dict[str, Any]:
    """Split a swap-stable diagonal group into central and swap-inverted parts."""
    F = G.field
    odd_central, odd_inverted = [], []
    for x in G.elements:
        d1, _, _, d2 = x.entries
        if x.order() % 2 == 0:
            continue
        if d1 == d2:
            odd_central.append(d1)
        if (d1 * d2).code == 1:
            odd_inverted.append(d1)
    lam13 = _cyclic_generator(odd_central)
    lam23 = _cyclic_generator(odd_inverted)
    P0 = MatGroup(F, [], [x.codes for x in G.elements if x.order() & (x.order() - 1) == 0])
    return {
        "normalizer": "M",
        "lambda13": lam13,
        "lambda23": lam23,
        "P0": [g.to_json() for g in small_generating_set(P0)],
    }


def stable_diagonal_subgroups(order: int, F: FieldDesc) -> list[MatGroup]:
    """Every subgroup of D(2,q) of the given order that the swap normalises."""
    out = []
    for shape in reducible_shapes(order):
        if not reducible_realizable(shape, F):
            continue
        for T in diagonal_subgroups(shape, F):
            if swap_image(T) == T:
                out.append(_as_group(F, T))
    out.sort(key=lambda G: G.codes)
    return out


# -- imprimitive --------------------------------------------------------------


def imprimitive_rep(L: MatGroup, p_top: int, F: FieldDesc, mu: FieldElem | None = None) -> MatGroup:
    """L extended by dia(mu, mu^-1)a (p_top = 2) or dia(mu, -mu^-1)a (p_top = 4)."""
    if p_top not in (2, 4):
        raise ValueError("p_top must be 2 or 4")
    if p_top == 4 and F.p == 2:
        raise ValueError("an element of order 4 in D(2,q)a needs q odd")
    S = standard_subgroups(F)
    a = S.a
    if any(x.codes[1] or x.codes[2] for x in L.elements):
        raise ValueError("L must be diagonal")
    if L.conjugate(a) != L:
        raise ValueError("L is not normalised by the swap")
    mu = F.one if mu is None else mu
    if not mu:
        raise ValueError("mu must be nonzero")
    second = mu.inverse() if p_top == 2 else element_of_order(F, 2) * mu.inverse()
    top = diag(mu, second) * a
    gens = list(L.generators) if L.generators else small_generating_set(L)
    G = closure(F, gens + [top])
    if G.order != L.order * p_top:
        raise ValueError(f"order {G.order}, expected {L.order * p_top}")
    kind = classify(G)
    if kind != "imprimitive":
        raise ValueError(f"construction is {kind}, not imprimitive")
    return G


def imprimitive_representatives(m: int, F: FieldDesc) -> tuple[list[Representative], list[dict]]:
    """One imprimitive group per isomorphism type of order m, plus warnings."""
    check_order(m, F)
    reps: list[Representative] = []
    warnings: list[dict] = []
    for p_top in (2, 4):
        if m % p_top:
            continue
        if p_top == 4 and F.p == 2:
            continue
        for L in stable_diagonal_subgroups(m // p_top, F):
            try:
                G = imprimitive_rep(L, p_top, F)
            except ValueError as exc:
                warnings.append({"construction": "imprimitive", "p_top": p_top,
                                 "L": L.to_json(), "reason": str(exc)})
                continue
            if any(is_isomorphic(G, r.group) for r in reps):
                continue
            shape = sylow_shape_of(G)
            params = {"mu": F.one, "L": [g.to_json() for g in G.generators[:-1]]}
            if p_top == 4:
                params["u"] = element_of_order(F, 2)
            reps.append(Representative(G, RepSpec(shape, params, top_kind=f"order-{p_top}")))
    return reps, warnings


# -- primitive -----------------------------------------------------------------


def primitive_rep(m: int, F: FieldDesc, top: str | None = None) -> MatGroup:
    """A primitive subgroup of the Singer normaliser of order m.

    top = None:  <h^k> with k = (q^2 - 1) / m.
    top = "2":   <h^k> extended by b, where |<h^k>| = m / 2.
    top = "4":   <h^k> extended by h^((q-1)/2) b, where |<h^k>| = m / 4.
    """
    q = F.q
    S = standard_subgroups(F)
    n = q * q - 1
    divisor = {None: 1, "2": 2, "4": 4}.get(top)
    if divisor is None:
        raise ValueError(f"unknown top {top!r}")
    if m % divisor or n % (m // divisor):
        raise ValueError(f"{m // divisor if m % divisor == 0 else m} does not divide q^2 - 1 = {n}")
    k = n // (m // divisor)
    gens = [S.h**k]
    if top == "2":
        gens.append(S.b)
    elif top == "4":
        if q % 2 == 0:
            raise ValueError("an order-4 element in S(2,q)b needs q odd")
        gens.append(S.h ** ((q - 1) // 2) * S.b)
    G = closure(F, gens)
    if G.order != m:
        raise ValueError(f"order {G.order}, expected {m}")
    kind = classify(G)
    if kind != "primitive":
        raise ValueError(f"construction is {kind}, not primitive")
    return G


def primitive_representatives(m: int, F: FieldDesc) -> tuple[list[Representative], list[dict]]:
    check_order(m, F)
    q = F.q
    n = q * q - 1
    reps: list[Representative] = []
    warnings: list[dict] = []
    for top, divisor in ((None, 1), ("2", 2), ("4", 4)):
        if m % divisor or n % (m // divisor):
            continue
        if top == "4" and q % 2 == 0:
            continue
        try:
            G = primitive_rep(m, F, top)
        except ValueError as exc:
            warnings.append({"construction": "primitive", "top": top or "cyclic", "reason": str(exc)})
            continue
        if any(is_isomorphic(G, r.group) for r in reps):
            continue
        spec = RepSpec(sylow_shape_of(G), {}, singer_power=n // (m // divisor), top_kind=top and f"order-{top}")
        reps.append(Representative(G, spec))
    return reps, warnings


# -- verification ----------------------------------------------------------


def rep_verify(G: MatGroup, shape: GroupShape) -> bool:
    """Order, Sylow shape, geometry and solvability all agree with the shape."""
    if G.order != shape.m:
        return False
    try:
        actual = sylow_shape_of(G)
    except ValueError:  # p | |G| or not cube-free
        return False
    if actual.sylows != shape.sylows:
        return False
    if actual.geo != shape.geo:
        return False
    return is_solvable(G)


def representatives_for(m: int, F: FieldDesc, geo: str | None = None) -> tuple[list[Representative], list[dict]]:
    """Every constructible representative of order m, each checked by rep_verify."""
    check_order(m, F)
    reps: list[Representative] = []
    warnings: list[dict] = []
    if geo in (None, "reducible"):
        for shape in reducible_shapes(m):
            if reducible_realizable(shape, F):
                reps.extend(reducible_representatives(shape, F))
    if geo in (None, "imprimitive"):
        r, w = imprimitive_representatives(m, F)
        reps += r
        warnings += w
    if geo in (None, "primitive"):
        r, w = primitive_representatives(m, F)
        reps += r
        warnings += w
    checked = []
    for rep in reps:
        if rep_verify(rep.group, rep.spec.shape):
            checked.append(rep)
        else:
            warnings.append({"construction": rep.spec.shape.label(), "reason": "failed verification"})
    return checked, warnings

