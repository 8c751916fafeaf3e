"""Geometric class, solvability, Sylow shape and isomorphism for subgroups of GL(2,q)."""

from __future__ import annotations

from collections import Counter
from typing import Literal

from .finite_field import FieldDesc
from .matgroup import (
    Codes,
    Mat,
    MatGroup,
    _inv4,
    _mul4,
    closure_codes,
    element_order_in,
    small_generating_set,
)
from .shapes import CYCLIC, ELEMENTARY, Geo, GroupShape, NotPPrime, SylowShape, factor_cube_free

GeoClass = Literal["reducible", "imprimitive", "primitive"]
Line = tuple[int, int]

__all__ = [
    "lines",
    "is_reducible",
    "is_imprimitive",
    "classify",
    "geo_of",
    "is_solvable",
    "derived_subgroup",
    "center",
    "sylow_shape_of",
    "is_isomorphic",
    "fingerprint",
]


def lines(F: FieldDesc) -> list[Line]:
    """Normalised spanning vectors of the q + 1 lines: (1, t) for each t, then (0, 1)."""
    return [(1, t) for t in range(F.q)] + [(0, 1)]


def _normalise(F: FieldDesc, v: tuple[int, int]) -> Line:
    x, y = v
    if x:
        return (1, F.mul(y, F.inv(x)))
    return (0, 1)


def _image(F: FieldDesc, g: Codes, v: Line) -> Line:
    a, b, c, d = g
    x, y = v
    return _normalise(F, (F.add(F.mul(a, x), F.mul(b, y)), F.add(F.mul(c, x), F.mul(d, y))))


def _line_perms(H: MatGroup) -> list[dict[Line, Line]]:
    F = H.field
    gens = [g.codes for g in H.generators] or list(H.codes)
    ls = lines(F)
    return [{v: _image(F, g, v) for v in ls} for g in gens]


def _check_coprime(H: MatGroup) -> None:
    if H.order % H.field.p == 0:
        raise NotPPrime(f"p = {H.field.p} divides |H| = {H.order}")


def is_reducible(H: MatGroup) -> Line | None:
    """A line fixed by every element of H, if one exists."""
    _check_coprime(H)
    perms = _line_perms(H)
    for v in lines(H.field):
        if all(pi[v] == v for pi in perms):
            return v
    return None


def is_imprimitive(H: MatGroup) -> tuple[Line, Line] | None:
    """An unordered pair of lines permuted by H, for irreducible H."""
    if is_reducible(H) is not None:
        raise ValueError("is_imprimitive requires an irreducible group")
    perms = _line_perms(H)
    ls = lines(H.field)
    for i, v in enumerate(ls):
        for w in ls[i + 1:]:
            pair = {v, w}
            if all({pi[v], pi[w]} == pair for pi in perms):
                return (v, w)
    return None


def classify(H: MatGroup) -> GeoClass:
    if is_reducible(H) is not None:
        return "reducible"
    if is_imprimitive(H) is not None:
        return "imprimitive"
    return "primitive"


def _is_abelian(H: MatGroup) -> bool:
    mul = _mul4(H.field)
    gens = [g.codes for g in H.generators] or list(H.codes)
    return all(mul(x, y) == mul(y, x) for x in gens for y in gens)


def geo_of(H: MatGroup) -> Geo:
    """Refined geometry: the top Sylow-2 data that distinguishes the semidirect shapes."""
    kind = classify(H)
    if kind == "reducible":
        return Geo("reducible")
    if kind == "imprimitive":
        v, w = is_imprimitive(H)
        F = H.field
        swaps_involution = any(
            _image(F, x, v) == w and element_order_in(H, x) == 2 for x in H.codes
        )
        return Geo("imprimitive", 2 if swaps_involution else 4)
    if _is_abelian(H):
        return Geo("primitive-cyclic")
    return Geo("primitive-split", H.order & -H.order)


# -- derived series ------------------------------------------------------------


def _normal_closure(F: FieldDesc, seeds: list[Codes], conj_by: list[Codes]) -> set[Codes]:
    """Smallest subgroup containing ``seeds`` and normalised by ``conj_by``."""
    mul = _mul4(F)
    gens = list(dict.fromkeys(seeds))
    S = closure_codes(F, gens)
    changed = True
    while changed:
        changed = False
        for g in conj_by:
            gi = _inv4(F, g)
            for s in list(gens):
                y = mul(mul(g, s), gi)
                if y not in S:
                    gens.append(y)
                    S = closure_codes(F, gens)
                    changed = True
    return S


def _gens_of(F: FieldDesc, S: set[Codes]) -> list[Codes]:
    gens: list[Codes] = []
    cur = {(1, 0, 0, 1)}
    for x in sorted(S):
        if x not in cur:
            gens.append(x)
            cur = closure_codes(F, gens)
            if len(cur) == len(S):
                break
    return gens


def _generators(H: MatGroup) -> list[Codes]:
    return [g.codes for g in H.generators] if H.generators else _gens_of(H.field, set(H.codes))


def derived_subgroup(H: MatGroup) -> MatGroup:
    F = H.field
    mul = _mul4(F)
    gens = _generators(H)
    comms = []
    for x in gens:
        xi = _inv4(F, x)
        for y in gens:
            yi = _inv4(F, y)
            c = mul(mul(x, y), mul(xi, yi))
            if c != (1, 0, 0, 1):
                comms.append(c)
    S = _normal_closure(F, comms, gens)
    return MatGroup(F, [Mat(F, c) for c in _gens_of(F, S)], S)


def is_solvable(H: MatGroup) -> bool:
    """Whether the derived series reaches the trivial group."""
    G = H
    while G.order > 1:
        D = derived_subgroup(G)
        if D.order == G.order:
            return False
        G = D
    return True


def center(H: MatGroup) -> MatGroup:
    F = H.field
    mul = _mul4(F)
    gens = _generators(H)
    Z = [x for x in H.codes if all(mul(x, g) == mul(g, x) for g in gens)]
    return MatGroup(F, [], Z)


# -- Sylow shape -------------------------------------------------------------


def sylow_shape_of(H: MatGroup) -> GroupShape:
    """Per-prime Sylow kinds plus refined geometry; the group itself is the witness."""
    _check_coprime(H)
    f = factor_cube_free(H.order)
    orders = H.element_orders()
    sylows = []
    for r, e in f:
        cyclic = e == 1 or any(o % (r**e) == 0 for o in orders)
        sylows.append(SylowShape(r, e, CYCLIC if cyclic else ELEMENTARY))
    return GroupShape(H.order, tuple(sylows), geo_of(H), H)


# -- isomorphism -------------------------------------------------------------


class _Table:
    """Multiplication table of a small group, elements indexed in sorted order."""

    def __init__(self, H: MatGroup):
        F = H.field
        mul = _mul4(F)
        self.codes = H.codes
        index = {x: i for i, x in enumerate(self.codes)}
        self.n = n = len(self.codes)
        self.mul = [[index[mul(x, y)] for y in self.codes] for x in self.codes]
        self.e = index[(1, 0, 0, 1)]
        self.orders = [element_order_in(H, x) for x in self.codes]
        self.inv = [0] * n
        for i in range(n):
            row = self.mul[i]
            self.inv[i] = row.index(self.e)
        self.gens = [index[g.codes] for g in small_generating_set(H)]

    def class_sizes(self) -> list[int]:
        n, mul, inv = self.n, self.mul, self.inv
        out = [0] * n
        done = [False] * n
        for x in range(n):
            if done[x]:
                continue
            cls = {mul[mul[g][x]][inv[g]] for g in range(n)}
            for y in cls:
                out[y] = len(cls)
                done[y] = True
        return out


def fingerprint(H: MatGroup) -> tuple:
    """Conjugation-free isomorphism invariants, cheap to compare."""
    fp = H._cache.get("fingerprint")
    if fp is None:
        D = derived_subgroup(H)
        fp = (
            H.order,
            tuple(sorted(H.element_orders().items())),
            center(H).order,
            D.order,
            tuple(sorted(D.element_orders().items())),
        )
        H._cache["fingerprint"] = fp
    return fp


def _extend(tab_h: _Table, tab_k: _Table, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Map <gens> -> K along the Cayley graph; None on any inconsistency."""
    phi = {tab_h.e: tab_k.e}
    frontier = [tab_h.e]
    mh, mk = tab_h.mul, tab_k.mul
    while frontier:
        nxt = []
        for x in frontier:
            fx = phi[x]
            for g, fg in zip(gens, images):
                y = mh[x][g]
                fy = mk[fx][fg]
                got = phi.get(y)
                if got is None:
                    phi[y] = fy
                    nxt.append(y)
                elif got != fy:
                    return None
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def is_isomorphic(H: MatGroup, K: MatGroup) -> bool:
    """Exact isomorphism test: invariant rejection, then backtracking over generator images."""
    if H.order != K.order:
        return False
    if H.order <= 2:
        return True
    if fingerprint(H) != fingerprint(K):
        return False
    th, tk = _Table(H), _Table(K)
    ch, ck = th.class_sizes(), tk.class_sizes()
    if Counter(zip(th.orders, ch)) != Counter(zip(tk.orders, ck)):
        return False
    gens = th.gens
    cands = [[y for y in range(tk.n) if tk.orders[y] == th.orders[g] and ck[y] == ch[g]] for g in gens]

    def search(i: int, images: list[int]) -> bool:
        if i == len(gens):
            phi = _extend(th, tk, gens, images)
            return phi is not None and len(phi) == th.n
        for y in cands[i]:
            if y in images:
                continue
            trial = images + [y]
            if _extend(th, tk, gens[: i + 1], trial) is not None and search(i + 1, trial):
                return True
        return False

    return search(0, [])
