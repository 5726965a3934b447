"""Constructors for finite groupoids and the group tables that feed them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import FiniteGroupoid, IsotropyGroup, ValidationReport, Violation
from .quasiperm import Quasipermutation

__all__ = [
    "GroupTable",
    "cyclic_group",
    "direct_product",
    "disjoint_union",
    "from_group",
    "group_table_of",
    "induced_groupoid",
    "induced_triples",
    "klein_four_group",
    "left_translation_groupoid",
    "null_groupoid",
    "pair_groupoid",
    "pair_groupoid_over",
    "pair_index",
    "whitney_sum",
]


@dataclass(frozen=True)
class GroupTable:
    """A finite group as labels, a total multiplication table, identity and
    inverses.  ``table[i][j]`` is the index of the product of i and j."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]

    @classmethod
    def build(
        cls,
        labels: Sequence[str],
        table: Sequence[Sequence[int]],
        identity: int,
        inv: Sequence[int],
    ) -> "GroupTable":
        return cls(
            tuple(labels),
            tuple(tuple(row) for row in table),
            identity,
            tuple(inv),
        )

    @classmethod
    def from_isotropy(cls, parent: FiniteGroupoid, iso: IsotropyGroup) -> "GroupTable":
        return cls(
            labels=tuple(parent.elements[x] for x in iso.members),
            table=iso.table,
            identity=iso.identity_position,
            inv=iso.inv,
        )

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def validate(self) -> ValidationReport:
        """Check the group axioms; violations carry witnesses."""
        v: list[Violation] = []
        k = self.order
        if len(set(self.labels)) != k:
            v.append(Violation("structure", (), "labels must be unique"))
        if len(self.table) != k or any(len(row) != k for row in self.table):
            v.append(Violation("structure", (), "table must be k x k"))
            return ValidationReport(tuple(v))
        if not 0 <= self.identity < k or len(self.inv) != k:
            v.append(Violation("structure", (), "identity or inverse map out of shape"))
            return ValidationReport(tuple(v))
        for i in range(k):
            for j in range(k):
                if not 0 <= self.table[i][j] < k:
                    v.append(Violation("structure", (i, j), "table entry out of range"))
        if v:
            return ValidationReport(tuple(v))
        e = self.identity
        for i in range(k):
            if self.table[e][i] != i or self.table[i][e] != i:
                v.append(Violation("identity", (i,), "identity element fails"))
            if not 0 <= self.inv[i] < k:
                v.append(Violation("structure", (i,), "inverse entry out of range"))
            elif self.table[i][self.inv[i]] != e or self.table[self.inv[i]][i] != e:
                v.append(Violation("inverse", (i,), "inverse element fails"))
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    if self.table[self.table[i][j]][l] != self.table[i][self.table[j][l]]:
                        v.append(Violation("associativity", (i, j, l), "associativity fails"))
        return ValidationReport(tuple(v))

    def is_commutative(self) -> bool:
        k = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(k) for j in range(k))


def group_table_of(g: FiniteGroupoid) -> GroupTable:
    """Read a one-unit groupoid back as a group table; the multiplication
    must be total."""
    if len(g.units) != 1:
        raise ValueError(f"expected one unit, got {len(g.units)}")
    n = len(g)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            z = g.mul.get((i, j))
            if z is None:
                raise ValueError(
                    f"product of {g.elements[i]} and {g.elements[j]} is undefined; "
                    "not a group")
            row.append(z)
        table.append(row)
    return GroupTable.build(g.elements, table, g.units[0], g.inv)


def cyclic_group(n: int) -> GroupTable:
    """The cyclic group of order n, written additively with labels 0..n-1."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return GroupTable.build(
        labels=[str(i) for i in range(n)],
        table=[[(i + j) % n for j in range(n)] for i in range(n)],
        identity=0,
        inv=[(-i) % n for i in range(n)],
    )


def klein_four_group() -> GroupTable:
    """The Klein four-group with labels e, a, b, ab."""
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return GroupTable.build(["e", "a", "b", "ab"], table, 0, [0, 1, 2, 3])


# ----- elementary groupoids ------------------------------------------------


def pair_index(n: int, i: int, j: int) -> int:
    """Position of the arrow (i, j), 0-based points, in the pair groupoid
    element order: the n diagonal units first, then the off-diagonal pairs
    lexicographically."""
    if i == j:
        return i
    # off-diagonal rank of (i, j) in lexicographic order without the diagonal
    return n + i * (n - 1) + j - (1 if j > i else 0)


def pair_groupoid_over(points: Sequence[str]) -> FiniteGroupoid:
    """The pair groupoid on the given base points.

    Arrows are ordered pairs (x, y); (x, y) * (y, z) = (x, z) and the
    inverse of (x, y) is (y, x).  Units are the diagonal pairs and come
    first in the element order.
    """
    pts = list(points)
    if not pts:
        raise ValueError("pair groupoid needs at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("pair groupoid points must be distinct")
    n = len(pts)
    pairs = [(i, i) for i in range(n)]
    pairs += [(i, j) for i in range(n) for j in range(n) if i != j]
    index = {p: k for k, p in enumerate(pairs)}
    mul = {}
    for i, j in pairs:
        for l in range(n):
            mul[(index[(i, j)], index[(j, l)])] = index[(i, l)]
    return FiniteGroupoid(
        elements=[f"({pts[i]},{pts[j]})" for i, j in pairs],
        units=list(range(n)),
        alpha=[index[(i, i)] for i, j in pairs],
        beta=[index[(j, j)] for i, j in pairs],
        inv=[index[(j, i)] for i, j in pairs],
        mul=mul,
        base_labels={i: pts[i] for i in range(n)},
    )


def pair_groupoid(n: int) -> FiniteGroupoid:
    """The pair groupoid on the points 1..n; type (n^2; n)."""
    if n < 1:
        raise ValueError("pair groupoid needs at least one point")
    return pair_groupoid_over([str(i) for i in range(1, n + 1)])


def null_groupoid(labels: Sequence[str]) -> FiniteGroupoid:
    """The groupoid of units only: every element is its own source, target
    and inverse, and the only products are u*u = u."""
    pts = list(labels)
    if not pts:
        raise ValueError("null groupoid needs at least one label")
    if len(set(pts)) != len(pts):
        raise ValueError("null groupoid labels must be distinct")
    n = len(pts)
    idx = list(range(n))
    return FiniteGroupoid(
        elements=pts,
        units=idx,
        alpha=idx,
        beta=idx,
        inv=idx,
        mul={(i, i): i for i in idx},
    )


def from_group(t: GroupTable) -> FiniteGroupoid:
    """A group as a groupoid with a single unit; every pair is composable."""
    t.validate().require("not a group")
    n = t.order
    return FiniteGroupoid(
        elements=t.labels,
        units=[t.identity],
        alpha=[t.identity] * n,
        beta=[t.identity] * n,
        inv=t.inv,
        mul={(i, j): t.table[i][j] for i in range(n) for j in range(n)},
    )


# ----- combinators ---------------------------------------------------------


def disjoint_union(*factors: FiniteGroupoid) -> FiniteGroupoid:
    """The disjoint union of groupoids; elements are tagged copies, and no
    cross-factor pair is composable."""
    if not factors:
        raise ValueError("disjoint union needs at least one factor")
    elements: list[str] = []
    units: list[int] = []
    alpha: list[int] = []
    beta: list[int] = []
    inv: list[int] = []
    mul: dict[tuple[int, int], int] = {}
    offset = 0
    for pos, g in enumerate(factors, start=1):
        elements.extend(f"{pos}/{lbl}" for lbl in g.elements)
        units.extend(offset + u for u in g.units)
        alpha.extend(offset + a for a in g.alpha)
        beta.extend(offset + b for b in g.beta)
        inv.extend(offset + i for i in g.inv)
        for (x, y), z in g.mul.items():
            mul[(offset + x, offset + y)] = offset + z
        offset += len(g)
    return FiniteGroupoid(elements, units, alpha, beta, inv, mul)


def direct_product(g: FiniteGroupoid, h: FiniteGroupoid) -> FiniteGroupoid:
    """The direct product: all element pairs, with componentwise structure."""
    nh = len(h)
    elements = [f"({a},{b})" for a in g.elements for b in h.elements]
    pair = lambda x, y: x * nh + y
    mul = {}
    for (x1, y1), z1 in g.mul.items():
        for (x2, y2), z2 in h.mul.items():
            mul[(pair(x1, x2), pair(y1, y2))] = pair(z1, z2)
    return FiniteGroupoid(
        elements=elements,
        units=[pair(u, w) for u in g.units for w in h.units],
        alpha=[pair(g.alpha[x], h.alpha[y]) for x in range(len(g)) for y in range(nh)],
        beta=[pair(g.beta[x], h.beta[y]) for x in range(len(g)) for y in range(nh)],
        inv=[pair(g.inv[x], h.inv[y]) for x in range(len(g)) for y in range(nh)],
        mul=mul,
    )


def whitney_sum(g: FiniteGroupoid, h: FiniteGroupoid) -> FiniteGroupoid:
    """The fibered sum over a shared base: pairs of arrows with equal source
    base labels and equal target base labels, composed componentwise.

    The bases are identified through ``base_labels`` (element labels of the
    units when absent); the two label sets must coincide.
    """
    base_g = {u: g.unit_base_label(u) for u in g.units}
    base_h = {u: h.unit_base_label(u) for u in h.units}
    if set(base_g.values()) != set(base_h.values()):
        raise ValueError(
            "whitney sum needs identical base label sets, got "
            f"{sorted(base_g.values())} vs {sorted(base_h.values())}"
        )
    elements: list[tuple[int, int]] = []
    for x in range(len(g)):
        sa, sb = base_g[g.alpha[x]], base_g[g.beta[x]]
        for y in range(len(h)):
            if base_h[h.alpha[y]] == sa and base_h[h.beta[y]] == sb:
                elements.append((x, y))
    index = {p: k for k, p in enumerate(elements)}
    mul = {}
    for x1, y1 in elements:
        for x2, y2 in elements:
            z1 = g.mul.get((x1, x2))
            if z1 is None:
                continue
            z2 = h.mul.get((y1, y2))
            if z2 is None:
                continue
            mul[(index[(x1, y1)], index[(x2, y2)])] = index[(z1, z2)]
    units = [index[(u, w)] for (u, w) in elements if g.is_unit(u) and h.is_unit(w)]
    return FiniteGroupoid(
        elements=[f"({g.elements[x]},{h.elements[y]})" for x, y in elements],
        units=units,
        alpha=[index[(g.alpha[x], h.alpha[y])] for x, y in elements],
        beta=[index[(g.beta[x], h.beta[y])] for x, y in elements],
        inv=[index[(g.inv[x], h.inv[y])] for x, y in elements],
        mul=mul,
        base_labels={index[(u, w)]: base_g[u] for (u, w) in elements
                     if g.is_unit(u) and h.is_unit(w)},
    )


def induced_triples(
    g: FiniteGroupoid, f: Mapping[str, str]
) -> tuple[list[str], dict[str, int], list[tuple[str, str, int]]]:
    """Element order shared by induced_groupoid and its canonical morphism:
    the points of f's key set, the unit of g over each image base point, and
    the triples (x, y, a) with alpha(a) over f(x) and beta(a) over f(y)."""
    points = list(f.keys())
    if not points:
        raise ValueError("induced groupoid needs a nonempty point set")
    base_to_unit = {g.unit_base_label(u): u for u in g.units}
    for x in points:
        if f[x] not in base_to_unit:
            raise ValueError(f"f({x!r}) = {f[x]!r} is not a base label of the groupoid")
    target_unit = {x: base_to_unit[f[x]] for x in points}
    triples: list[tuple[str, str, int]] = []
    for x in points:
        for y in points:
            for a in range(len(g)):
                if g.alpha[a] == target_unit[x] and g.beta[a] == target_unit[y]:
                    triples.append((x, y, a))
    return points, target_unit, triples


def induced_groupoid(g: FiniteGroupoid, f: Mapping[str, str]) -> FiniteGroupoid:
    """The pullback of g along a map f from a fresh point set into g's base.

    Elements are triples (x, y, a) with f(x) the source base point of a and
    f(y) the target; (x, y, a) * (y, z, b) = (x, z, a*b) and the inverse is
    (y, x, inv(a)).  The new base is the key set of f, in its given order.
    """
    points, target_unit, triples = induced_triples(g, f)
    index = {t: k for k, t in enumerate(triples)}
    mul = {}
    for x, y, a in triples:
        for z in points:
            for b in range(len(g)):
                if g.alpha[b] == target_unit[y] and g.beta[b] == target_unit[z]:
                    mul[(index[(x, y, a)], index[(y, z, b)])] = index[(x, z, g.mul[(a, b)])]
    unit_index = {x: index[(x, x, target_unit[x])] for x in points}
    return FiniteGroupoid(
        elements=[f"({x},{y},{g.elements[a]})" for x, y, a in triples],
        units=[unit_index[x] for x in points],
        alpha=[unit_index[x] for x, y, a in triples],
        beta=[unit_index[y] for x, y, a in triples],
        inv=[index[(y, x, g.inv[a])] for x, y, a in triples],
        mul=mul,
        base_labels={unit_index[x]: x for x in points},
    )


def left_translation_groupoid(g: FiniteGroupoid) -> FiniteGroupoid:
    """The groupoid of left translations of g, realized as injective partial
    maps of g's element set (numbered 1..|g|).

    L_a acts on {x : alpha(x) = beta(a)} by x -> a*x; the translations
    multiply by L_a * L_b = L_{a*b} on the pairs where a and b compose, and
    a -> L_a is a bijection.
    """
    n = len(g)
    payloads = []
    for a in range(n):
        domain = tuple(x for x in range(n) if g.alpha[x] == g.beta[a])
        image = tuple(g.mul[(a, x)] for x in domain)
        payloads.append(
            Quasipermutation(
                n,
                tuple(x + 1 for x in domain),
                tuple(z + 1 for z in image),
            )
        )
    if len({(p.domain, p.image) for p in payloads}) != n:
        raise ValueError("left translations are not pairwise distinct; input is not a groupoid")
    return FiniteGroupoid(
        elements=[f"L[{lbl}]" for lbl in g.elements],
        units=g.units,
        alpha=g.alpha,
        beta=g.beta,
        inv=g.inv,
        mul=dict(g.mul),
        payloads=payloads,
    )
