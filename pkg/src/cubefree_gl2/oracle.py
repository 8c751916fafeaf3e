"""Brute-force ground truth at small q.

Every subgroup of GL(2,q) of the requested orders is enumerated by cyclic
extension (each solvable group is reached from a normal subgroup of prime
index), the subgroups are split into GL(2,q)-conjugacy classes, the classes
are grouped by isomorphism type, and the per-type class counts are compared
with the closed formulas.

GL(2,q) is held as numpy arrays indexed in matrix order, so multiplication
and conjugation by the whole group are single vectorised operations.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

import numpy as np

from .classifier import fingerprint, is_isomorphic, is_solvable, sylow_shape_of
from .counting import count_imprimitive, count_primitive, count_reducible
from .finite_field import FieldDesc, factorize
from .matgroup import Mat, MatGroup, gl_order
from .shapes import Geo, GroupShape, check_order, factor_cube_free, is_cube_free, reducible_shapes

log = logging.getLogger(__name__)

ORACLE_CAP = 11
EXTENDED_CAP = 13

__all__ = [
    "GLContext",
    "OracleClass",
    "IsoTypeRow",
    "OracleReport",
    "all_subgroups_of_order",
    "partition_into_classes",
    "verify_formulas",
    "check_cap",
]


def check_cap(q: int, extended: bool = False) -> None:
    cap = EXTENDED_CAP if extended else ORACLE_CAP
    if q > cap:
        hint = "" if extended else f" (use the extended flag for q <= {EXTENDED_CAP})"
        raise ValueError(f"q = {q} is above the oracle cap {cap}{hint}")


class GLContext:
    """GL(2,q) as index arrays: element i has entry codes ``codes[i]``."""

    def __init__(self, F: FieldDesc):
        q = self.q = F.q
        self.field = F
        r = np.arange(q)
        self.fmul = np.array([[F.mul(x, y) for y in r] for x in r], dtype=np.int64)
        self.fadd = np.array([[F.add(x, y) for y in r] for x in r], dtype=np.int64)
        a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
        det = self.fadd[self.fmul[a, d], [F.neg(int(v)) for v in self.fmul[b, c]]]
        keep = det != 0
        self.codes = np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1).astype(np.int64)
        self.n = len(self.codes)
        assert self.n == gl_order(q)
        flat = ((self.codes[:, 0] * q + self.codes[:, 1]) * q + self.codes[:, 2]) * q + self.codes[:, 3]
        self.index_of = np.full(q**4, -1, dtype=np.int64)
        self.index_of[flat] = np.arange(self.n)
        self.identity = int(self.index_of[(1 * q + 0) * q * q + 1])
        self.all = np.arange(self.n)
        self.inv = self._inverses()
        self.orders = self._orders()

    def mul(self, x, y) -> np.ndarray:
        """Elementwise product of index arrays (numpy broadcasting applies)."""
        X, Y = self.codes[x], self.codes[y]
        m, s = self.fmul, self.fadd
        e11 = s[m[X[..., 0], Y[..., 0]], m[X[..., 1], Y[..., 2]]]
        e12 = s[m[X[..., 0], Y[..., 1]], m[X[..., 1], Y[..., 3]]]
        e21 = s[m[X[..., 2], Y[..., 0]], m[X[..., 3], Y[..., 2]]]
        e22 = s[m[X[..., 2], Y[..., 1]], m[X[..., 3], Y[..., 3]]]
        q = self.q
        return self.index_of[((e11 * q + e12) * q + e21) * q + e22]

    def _inverses(self) -> np.ndarray:
        F = self.field
        out = np.empty(self.n, dtype=np.int64)
        for i, (a, b, c, d) in enumerate(self.codes.tolist()):
            di = F.inv(F.sub(F.mul(a, d), F.mul(b, c)))
            e = (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))
            out[i] = self.index_of[((e[0] * self.q + e[1]) * self.q + e[2]) * self.q + e[3]]
        return out

    def _orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        power = self.all.copy()
        k = 1
        while (orders == 0).any():
            hit = (power == self.identity) & (orders == 0)
            orders[hit] = k
            power = self.mul(power, self.all)
            k += 1
        return orders

    def conj_all(self, hs: np.ndarray) -> np.ndarray:
        """Row g holds g h g^-1 for every h in ``hs``."""
        g = self.all[:, None]
        return self.mul(self.mul(g, hs[None, :]), self.inv[g])

    def to_index(self, x: Mat) -> int:
        a, b, c, d = x.codes
        return int(self.index_of[((a * self.q + b) * self.q + c) * self.q + d])

    def to_mat(self, i: int) -> Mat:
        return Mat(self.field, tuple(int(v) for v in self.codes[i]))

    def group(self, elements: np.ndarray, gens) -> MatGroup:
        codes = [tuple(r) for r in self.codes[elements].tolist()]
        return MatGroup(self.field, [self.to_mat(int(g)) for g in gens], codes)

    def indices(self, G: MatGroup) -> np.ndarray:
        return np.array(sorted(self.to_index(x) for x in G.elements), dtype=np.int64)

    def closure(self, gens: list[int], limit: int | None = None) -> np.ndarray | None:
        seen = np.zeros(self.n, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity])
        g = np.array(gens, dtype=np.int64)
        while frontier.size:
            new = np.unique(self.mul(frontier[:, None], g[None, :]).ravel())
            new = new[~seen[new]]
            seen[new] = True
            if limit is not None and seen.sum() > limit:
                return None
            frontier = new
        return np.flatnonzero(seen)


@functools.lru_cache(maxsize=4)
def gl_context(F: FieldDesc) -> GLContext:
    return GLContext(F)


@dataclass
class _Class:
    elements: np.ndarray  # canonical (minimum) member, sorted indices
    gens: list[int]
    orbit: np.ndarray  # every member, one sorted row each

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.orbit)


def _orbit(ctx: GLContext, elements: np.ndarray, gens: list[int]) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """All conjugates of a subgroup; returns (orbit rows, canonical row, canonical gens)."""
    rows = np.sort(ctx.conj_all(elements), axis=1)
    orbit, first = np.unique(rows, axis=0, return_index=True)
    g = int(first[0])
    gi = int(ctx.inv[g])
    cgens = [int(ctx.mul(ctx.mul(g, x), gi)) for x in gens]
    return orbit, orbit[0], cgens


class SubgroupLattice:
    """Conjugacy classes of subgroups of GL(2,q) whose orders lie in ``orders``.

    ``orders`` must be closed under taking divisors that matter for cyclic
    extension, i.e. contain every order of every subgroup in the chain of a
    wanted group; the set of cube-free orders up to a bound is.
    """

    def __init__(self, F: FieldDesc, orders: set[int]):
        self.field = F
        self.ctx = gl_context(F)
        n = self.ctx.n
        self.orders = {o for o in orders if n % o == 0} | {1}
        self.classes: list[_Class] = []
        self.registry: dict[bytes, int] = {}
        self._build()

    def _register(self, elements: np.ndarray, gens: list[int]) -> int | None:
        key = elements.astype(np.int64).tobytes()
        if key in self.registry:
            return None
        orbit, canon, cgens = _orbit(self.ctx, elements, gens)
        cid = len(self.classes)
        self.classes.append(_Class(canon, cgens, orbit))
        for row in orbit:
            self.registry[row.tobytes()] = cid
        return cid

    def class_of(self, elements: np.ndarray) -> int | None:
        return self.registry.get(np.sort(elements).astype(np.int64).tobytes())

    def _build(self) -> None:
        ctx = self.ctx
        self._register(np.array([ctx.identity]), [])
        for o in sorted(self.orders):
            for cid in [i for i, c in enumerate(self.classes) if c.order == o]:
                self._extend(self.classes[cid])

    def _extend(self, U: _Class) -> None:
        ctx = self.ctx
        u = U.order
        primes = sorted({r for o in self.orders if o % u == 0 and o > u
                         for r, _ in factorize(o // u) if o // u == r})
        if not primes:
            return
        in_u = np.zeros(ctx.n, dtype=bool)
        in_u[U.elements] = True
        if U.gens:
            conj = ctx.conj_all(np.array(U.gens))
            normaliser = np.flatnonzero(in_u[conj].all(axis=1))
        else:
            normaliser = ctx.all
        cands = normaliser[~in_u[normaliser]]
        if cands.size == 0:
            return
        # order of x modulo U
        rel = np.zeros(cands.size, dtype=np.int64)
        power = cands.copy()
        for j in range(2, max(primes) + 1):
            power = ctx.mul(power, cands)
            hit = (rel == 0) & in_u[power]
            rel[hit] = j
        ok = np.isin(rel, primes)
        covered = np.zeros(ctx.n, dtype=bool)
        for x, r in zip(cands[ok].tolist(), rel[ok].tolist()):
            if covered[x]:
                continue
            cosets = [U.elements]
            xp = x
            for _ in range(r - 1):
                cosets.append(ctx.mul(xp, U.elements))
                xp = int(ctx.mul(xp, x))
            W = np.sort(np.concatenate(cosets))
            covered[W] = True
            self._register(W, U.gens + [x])

    def add_nonsolvable_sweep(self, max_order: int) -> int:
        """Register the non-solvable cube-free subgroups of order <= max_order.

        Cyclic extension never reaches a non-solvable group.  In odd
        characteristic none are cube-free (their Sylow 2-subgroups are
        generalised quaternion of order >= 8); in characteristic 2 they are
        SL(2,4) times scalars, generated by an involution and one other
        element, so pairing each involution class with every element is
        complete.
        """
        ctx = self.ctx
        involutions = [x for x in _element_class_reps(ctx) if ctx.orders[x] == 2]
        rejected: set[bytes] = set()
        added = 0
        for x in involutions:
            for y in range(ctx.n):
                W = ctx.closure([x, y], limit=max_order)
                if W is None:
                    continue
                n = len(W)
                # non-solvable needs a non-cyclic Sylow 2-subgroup and three primes
                if n % 4 or len(factorize(n)) < 3 or not is_cube_free(n):
                    continue
                key = W.tobytes()
                if key in self.registry or key in rejected:
                    continue
                if is_solvable(ctx.group(W, [x, y])):
                    rejected.add(key)
                    continue
                self._register(W, [x, y])
                self.orders.add(n)
                added += 1
        return added

    def members(self, cid: int) -> list[MatGroup]:
        """Every subgroup in a class, generators conjugated along."""
        c = self.classes[cid]
        ctx = self.ctx
        out = []
        for row in c.orbit:
            out.append(ctx.group(row, []))
        return out

    def subgroups_of_order(self, m: int) -> list[MatGroup]:
        out = []
        for cid, c in enumerate(self.classes):
            if c.order == m:
                out.extend(self.members(cid))
        return out

    def representative(self, cid: int) -> MatGroup:
        c = self.classes[cid]
        return self.ctx.group(c.elements, c.gens)


def _element_class_reps(ctx: GLContext) -> list[int]:
    done = np.zeros(ctx.n, dtype=bool)
    reps = []
    for x in range(ctx.n):
        if done[x]:
            continue
        reps.append(x)
        done[ctx.conj_all(np.array([x]))[:, 0]] = True
    return reps


def _lattice_orders(F: FieldDesc, m_max: int, include_modular: bool = False) -> set[int]:
    return {o for o in range(1, m_max + 1)
            if is_cube_free(o) and (include_modular or o % F.p)}


@functools.lru_cache(maxsize=8)
def subgroup_lattice(F: FieldDesc, m_max: int, include_modular: bool = False) -> SubgroupLattice:
    lat = SubgroupLattice(F, _lattice_orders(F, m_max, include_modular))
    lat.add_nonsolvable_sweep(m_max)
    return lat


def all_subgroups_of_order(F: FieldDesc, m: int, extended: bool = False,
                           include_modular: bool = False) -> list[MatGroup]:
    """Every subgroup of GL(2,q) of order m, duplicate-free.

    m must be cube-free and, unless ``include_modular``, coprime to p.  The
    modular mode adds a two-generator sweep so non-solvable groups are found.
    """
    check_cap(F.q, extended)
    if include_modular:
        factor_cube_free(m)
    else:
        check_order(m, F)
    divisors = {d for d in range(1, m + 1) if m % d == 0}
    lat = SubgroupLattice(F, divisors)
    if include_modular:
        lat.add_nonsolvable_sweep(m)
    return lat.subgroups_of_order(m)


@dataclass
class PartitionClass:
    representative: MatGroup
    class_size: int
    members: list[int]


def partition_into_classes(subs: list[MatGroup], F: FieldDesc) -> list[PartitionClass]:
    """Split subgroups into GL(2,q)-conjugacy classes; representatives are class minima."""
    ctx = gl_context(F)
    keyed = [ctx.indices(G) for G in subs]
    position = {}
    for i, idx in enumerate(keyed):
        position.setdefault(idx.tobytes(), []).append(i)
    assigned = [False] * len(subs)
    out = []
    for i, idx in enumerate(keyed):
        if assigned[i]:
            continue
        gens = [ctx.to_index(g) for g in subs[i].generators] or idx.tolist()
        orbit, canon, cgens = _orbit(ctx, idx, gens)
        members = []
        for row in orbit:
            for j in position.get(row.tobytes(), []):
                assigned[j] = True
                members.append(j)
        rep = ctx.group(canon, cgens if subs[i].generators else [])
        out.append(PartitionClass(rep, len(orbit), sorted(members)))
    return out


# -- reports ------------------------------------------------------------------


@dataclass
class OracleClass:
    representative: MatGroup
    class_size: int
    geo: Geo | None
    solvable: bool
    shape: GroupShape | None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "class_size": self.class_size,
            "geo": self.geo.to_json() if self.geo else None,
            "solvable": self.solvable,
            "shape": self.shape.to_json() if self.shape else None,
            "note": self.note,
        }


@dataclass
class IsoTypeRow:
    witness: int | None
    geo: str
    fingerprint: str
    formula: int | None
    oracle: int
    status: str  # OK / FAIL / EXCLUDED

    def to_json(self) -> dict:
        return {
            "witness": self.witness,
            "geo": self.geo,
            "fingerprint": self.fingerprint,
            "formula": self.formula,
            "class_count": self.oracle,
            "status": self.status,
        }


@dataclass
class OracleReport:
    q: int
    m: int
    classes: list[OracleClass] = field(default_factory=list)
    by_iso_type: list[IsoTypeRow] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return all(r.status != "FAIL" for r in self.by_iso_type)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "agreement": self.agreement,
            "classes": [c.to_json() for c in self.classes],
            "by_iso_type": [r.to_json() for r in self.by_iso_type],
        }

    def table_rows(self) -> list[list[str]]:
        rows = []
        for r in self.by_iso_type:
            formula = "-" if r.formula is None else str(r.formula)
            rows.append([str(self.q), str(self.m), r.fingerprint, r.geo, formula, str(r.oracle), r.status])
        return rows


TABLE_HEADER = ["q", "m", "iso-fingerprint", "geo", "formula", "oracle", "status"]


def format_table(reports: list[OracleReport]) -> str:
    rows = [TABLE_HEADER] + [row for rep in reports for row in rep.table_rows()]
    widths = [max(len(r[i]) for r in rows) for i in range(len(TABLE_HEADER))]
    return "\n".join(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _type_label(H: MatGroup, shape: GroupShape | None, geo: Geo | None) -> str:
    if shape is not None and geo is not None and geo.kind == "reducible":
        return shape.label()
    fp = fingerprint(H)
    base = shape.label() if shape is not None else f"order {H.order}"
    return f"{base} |Z|={fp[2]} |G'|={fp[3]}"


def _describe(G: MatGroup, class_size: int) -> OracleClass:
    F = G.field
    solvable = is_solvable(G)
    if not solvable:
        return OracleClass(G, class_size, None, False, None, note="non-solvable")
    if G.order % F.p == 0:
        return OracleClass(G, class_size, None, True, None, note="p divides the order")
    shape = sylow_shape_of(G)
    return OracleClass(G, class_size, shape.geo, True, shape)


def build_report(F: FieldDesc, m: int, subs: list[MatGroup]) -> OracleReport:
    """Partition, group by isomorphism type within each geometry, compare with the formulas."""
    report = OracleReport(F.q, m)
    parts = partition_into_classes(subs, F)
    parts.sort(key=lambda c: c.representative.codes)
    report.classes = [_describe(c.representative, c.class_size) for c in parts]

    # isomorphism types: (coarse geometry or exclusion reason, witness class index, members)
    types: list[tuple[str, int, list[int]]] = []
    for i, cl in enumerate(report.classes):
        bucket = cl.geo.coarse if cl.geo is not None else f"excluded:{cl.note}"
        for t_bucket, w, members in types:
            if t_bucket == bucket and is_isomorphic(report.classes[w].representative, cl.representative):
                members.append(i)
                break
        else:
            types.append((bucket, i, [i]))

    seen_shapes = set()
    for bucket, w, members in types:
        cl = report.classes[w]
        label = _type_label(cl.representative, cl.shape, cl.geo)
        if bucket.startswith("excluded"):
            report.by_iso_type.append(IsoTypeRow(w, bucket.split(":", 1)[1], label, None, len(members), "EXCLUDED"))
            continue
        if bucket == "reducible":
            shape = cl.shape
            # every member must share the witness's abelian shape
            consistent = all(report.classes[j].shape.sylows == shape.sylows for j in members)
            formula = count_reducible(shape, F).count
            seen_shapes.add(shape.sylows)
            status = "OK" if consistent and formula == len(members) else "FAIL"
        elif bucket == "imprimitive":
            formula = count_imprimitive(cl.representative).count
            status = "OK" if formula == len(members) else "FAIL"
        else:
            formula = count_primitive(cl.representative).count
            status = "OK" if formula == len(members) else "FAIL"
        report.by_iso_type.append(IsoTypeRow(w, bucket, label, formula, len(members), status))

    if m % F.p and is_cube_free(m):
        for shape in reducible_shapes(m):
            if shape.sylows in seen_shapes:
                continue
            formula = count_reducible(shape, F).count
            if formula:
                report.by_iso_type.append(IsoTypeRow(None, "reducible", shape.label(), formula, 0, "FAIL"))
    return report


def verify_formulas(F: FieldDesc, m_max: int, extended: bool = False,
                    include_modular: bool = False) -> list[OracleReport]:
    """Oracle reports for every cube-free m <= m_max (coprime to p unless include_modular)."""
    check_cap(F.q, extended)
    lat = subgroup_lattice(F, m_max, include_modular)
    reports = []
    wanted = _lattice_orders(F, m_max, include_modular)
    # non-solvable finds are reported even when p divides their order
    wanted |= {c.order for c in lat.classes}
    for m in sorted(wanted):
        subs = lat.subgroups_of_order(m) if m in lat.orders else []
        log.info("q=%d m=%d: %d subgroups", F.q, m, len(subs))
        reports.append(build_report(F, m, subs))
    return reports
