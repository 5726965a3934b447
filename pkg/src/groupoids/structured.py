"""Groupoids carrying compatible group or vector-space structure.

A group-groupoid equips the element set and the unit set with group
operations that every structure map respects, tied together by the
interchange law (x*y) + (z*t) = (x+z)*(y+t).  Over a prime field the same
data with a scalar action gives a vector-space groupoid.  Each validator
exists in two equivalent forms: a direct checklist of laws, and a
reduction to ordinary groupoid morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Sequence

from .core import FiniteGroupoid, SizeLimitError, ValidationReport, Violation, validate
from .constructions import (
    GroupTable,
    direct_product,
    from_group,
    null_groupoid,
    pair_groupoid_over,
    pair_index,
)
from .morphisms import GroupoidMorphism, validate_morphism

__all__ = [
    "GroupGroupoid",
    "VectorSpaceGroupoid",
    "gf_vector_group",
    "group_as_group_groupoid",
    "is_prime",
    "pair_group_groupoid",
    "pair_vector_space_groupoid",
    "validate_group",
    "validate_group_groupoid",
    "validate_group_groupoid_as_morphisms",
    "validate_group_groupoid_morphism",
    "validate_vector_space_groupoid",
    "validate_vector_space_groupoid_via_morphisms",
]

PAIR_BASE_LIMIT = 64


def validate_group(t: GroupTable) -> ValidationReport:
    """Group axioms for a total table; see GroupTable.validate."""
    return t.validate()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GroupGroupoid:
    """A groupoid whose elements and units both form groups.

    elem_group is the group on the full element list (labels must match the
    carrier's element order); unit_group is the group on the units, in the
    carrier's unit order.
    """

    def __init__(
        self,
        carrier: FiniteGroupoid,
        elem_group: GroupTable,
        unit_group: GroupTable,
    ):
        if elem_group.labels != carrier.elements:
            raise ValueError("element group labels must match the carrier elements")
        if unit_group.labels != tuple(carrier.elements[u] for u in carrier.units):
            raise ValueError("unit group labels must match the carrier units in order")
        self.carrier = carrier
        self.elem_group = elem_group
        self.unit_group = unit_group

    def __repr__(self) -> str:
        n, m = self.carrier.groupoid_type()
        return f"GroupGroupoid(type ({n};{m}))"

    def add(self, x: int, y: int) -> int:
        return self.elem_group.table[x][y]

    def add_units(self, i: int, j: int) -> int:
        """Unit-group operation on unit positions (indices into
        carrier.units)."""
        return self.unit_group.table[i][j]

    def unit_position(self, u: int) -> int:
        return self.carrier.units.index(u)


def _prefixed(report: ValidationReport, prefix: str) -> list[Violation]:
    return [Violation(f"{prefix}-{v.axiom}", v.witness, v.detail) for v in report.violations]


def validate_group_groupoid(gg: GroupGroupoid) -> ValidationReport:
    """Direct checklist: carrier is a groupoid, both tables are groups, the
    structure maps are homomorphisms, the interchange law holds, and group
    inversion distributes over the partial product."""
    g = gg.carrier
    v: list[Violation] = []
    carrier_report = validate(g)
    if not carrier_report.passed:
        return ValidationReport(tuple(_prefixed(carrier_report, "carrier")))
    v.extend(_prefixed(gg.elem_group.validate(), "elem-group"))
    v.extend(_prefixed(gg.unit_group.validate(), "unit-group"))
    if v:
        return ValidationReport(tuple(v))
    n = len(g)
    pos = {u: i for i, u in enumerate(g.units)}
    add = gg.elem_group.table
    add0 = gg.unit_group.table
    for x in range(n):
        for y in range(n):
            s = add[x][y]
            if pos[g.alpha[s]] != add0[pos[g.alpha[x]]][pos[g.alpha[y]]]:
                v.append(Violation(
                    "alpha-additive", (x, y), "source is not additive on this pair"))
            if pos[g.beta[s]] != add0[pos[g.beta[x]]][pos[g.beta[y]]]:
                v.append(Violation(
                    "beta-additive", (x, y), "target is not additive on this pair"))
            if g.inv[s] != add[g.inv[x]][g.inv[y]]:
                v.append(Violation(
                    "inv-additive", (x, y),
                    "groupoid inversion is not additive on this pair"))
    for i, u in enumerate(g.units):
        for j, w in enumerate(g.units):
            if add[u][w] != g.units[add0[i][j]]:
                v.append(Violation(
                    "unit-additive", (i, j),
                    "unit inclusion is not a homomorphism on this pair"))
    for (x, y), xy in g.mul.items():
        for (z, t), zt in g.mul.items():
            lhs = add[xy][zt]
            rhs = g.mul.get((add[x][z], add[y][t]))
            if rhs is None:
                v.append(Violation(
                    "interchange", (x, y, z, t),
                    "sums of a composable pair of pairs fail to compose"))
            elif lhs != rhs:
                v.append(Violation(
                    "interchange", (x, y, z, t),
                    "sum of products differs from product of sums"))
    neg = gg.elem_group.inv
    for (x, y), xy in g.mul.items():
        rhs = g.mul.get((neg[x], neg[y]))
        if rhs is None or neg[xy] != rhs:
            v.append(Violation(
                "neg-compat", (x, y),
                "group negation fails to distribute over this product"))
    return ValidationReport(tuple(v))


def validate_group_groupoid_as_morphisms(gg: GroupGroupoid) -> ValidationReport:
    """Equivalent formulation: addition, the identity selection, and
    negation are groupoid morphisms (from the square of the carrier, from a
    one-point groupoid, and from the carrier)."""
    g = gg.carrier
    carrier_report = validate(g)
    if not carrier_report.passed:
        return ValidationReport(tuple(_prefixed(carrier_report, "carrier")))
    v: list[Violation] = []
    v.extend(_prefixed(gg.elem_group.validate(), "elem-group"))
    v.extend(_prefixed(gg.unit_group.validate(), "unit-group"))
    if v:
        return ValidationReport(tuple(v))
    n = len(g)
    pos = {u: i for i, u in enumerate(g.units)}
    square = direct_product(g, g)
    add_map = [gg.elem_group.table[i // n][i % n] for i in range(n * n)]
    add_unit_map = {}
    for u in g.units:
        for w in g.units:
            add_unit_map[u * n + w] = g.units[gg.unit_group.table[pos[u]][pos[w]]]
    omega = GroupoidMorphism(square, g, add_map, add_unit_map)
    v.extend(_prefixed(validate_morphism(omega), "add"))
    point = null_groupoid(["*"])
    nu = GroupoidMorphism(point, g, [gg.elem_group.identity],
                          {0: g.units[gg.unit_group.identity]})
    v.extend(_prefixed(validate_morphism(nu), "zero"))
    sigma = GroupoidMorphism(g, g, gg.elem_group.inv,
                             {u: g.units[gg.unit_group.inv[pos[u]]] for u in g.units})
    v.extend(_prefixed(validate_morphism(sigma), "neg"))
    return ValidationReport(tuple(v))


def validate_group_groupoid_morphism(
    m: GroupoidMorphism, dom: GroupGroupoid, cod: GroupGroupoid
) -> ValidationReport:
    """A groupoid morphism between group-groupoid carriers that is also
    additive on elements and on units."""
    if m.domain != dom.carrier or m.codomain != cod.carrier:
        raise ValueError("morphism endpoints must be the carriers of the two structures")
    v = list(validate_morphism(m).violations)
    f = m.elem_map
    for x in range(len(dom.carrier)):
        for y in range(len(dom.carrier)):
            if f[dom.elem_group.table[x][y]] != cod.elem_group.table[f[x]][f[y]]:
                v.append(Violation(
                    "additive", (x, y), "element map is not a group homomorphism here"))
    dpos = {u: i for i, u in enumerate(dom.carrier.units)}
    cpos = {u: i for i, u in enumerate(cod.carrier.units)}
    for u in dom.carrier.units:
        for w in dom.carrier.units:
            left = m.unit_map[dom.carrier.units[dom.unit_group.table[dpos[u]][dpos[w]]]]
            right = cod.carrier.units[
                cod.unit_group.table[cpos[m.unit_map[u]]][cpos[m.unit_map[w]]]]
            if left != right:
                v.append(Violation(
                    "additive-units", (u, w), "unit map is not a group homomorphism here"))
    return ValidationReport(tuple(v))


class VectorSpaceGroupoid:
    """A commutative group-groupoid over GF(p) with a scalar action.

    scalar[k][x] is the element k.x; unit_scalar[k][i] acts on unit
    positions.  p must be prime.
    """

    def __init__(
        self,
        structure: GroupGroupoid,
        p: int,
        scalar: Sequence[Sequence[int]],
        unit_scalar: Sequence[Sequence[int]],
    ):
        if not is_prime(p):
            raise ValueError(f"scalar field size must be prime, got {p}")
        n = len(structure.carrier)
        m = len(structure.carrier.units)
        self.structure = structure
        self.p = p
        self.scalar = tuple(tuple(int(x) for x in row) for row in scalar)
        self.unit_scalar = tuple(tuple(int(x) for x in row) for row in unit_scalar)
        if len(self.scalar) != p or any(len(row) != n for row in self.scalar):
            raise ValueError("scalar table must have p rows over the elements")
        if len(self.unit_scalar) != p or any(len(row) != m for row in self.unit_scalar):
            raise ValueError("unit scalar table must have p rows over the unit positions")
        for row in self.scalar:
            for x in row:
                if not 0 <= x < n:
                    raise ValueError("scalar table entry out of range")
        for row in self.unit_scalar:
            for x in row:
                if not 0 <= x < m:
                    raise ValueError("unit scalar table entry out of range")

    @property
    def carrier(self) -> FiniteGroupoid:
        return self.structure.carrier

    def scale(self, k: int, x: int) -> int:
        return self.scalar[k % self.p][x]

    def __repr__(self) -> str:
        n, m = self.carrier.groupoid_type()
        return f"VectorSpaceGroupoid(GF({self.p}), type ({n};{m}))"


def _scalar_law_violations(v: VectorSpaceGroupoid) -> list[Violation]:
    """Vector-space axioms for both scalar actions, assuming the additive
    groups already validate."""
    out: list[Violation] = []
    p = v.p
    gg = v.structure
    n = len(gg.carrier)
    m = len(gg.carrier.units)
    add = gg.elem_group.table
    add0 = gg.unit_group.table
    for name, size, act, table in (
        ("scalar", n, v.scalar, add),
        ("unit-scalar", m, v.unit_scalar, add0),
    ):
        for x in range(size):
            if act[1 % p][x] != x:
                out.append(Violation(f"{name}-identity", (x,), "1.x differs from x"))
        for k in range(p):
            for l in range(p):
                for x in range(size):
                    if act[k][act[l][x]] != act[(k * l) % p][x]:
                        out.append(Violation(
                            f"{name}-assoc", (k, l, x), "k.(l.x) differs from (kl).x"))
                    if act[(k + l) % p][x] != table[act[k][x]][act[l][x]]:
                        out.append(Violation(
                            f"{name}-distrib", (k, l, x),
                            "(k+l).x differs from k.x + l.x"))
        for k in range(p):
            for x in range(size):
                for y in range(size):
                    if act[k][table[x][y]] != table[act[k][x]][act[k][y]]:
                        out.append(Violation(
                            f"{name}-distrib-add", (k, x, y),
                            "k.(x+y) differs from k.x + k.y"))
    return out


def _commutativity_violations(gg: GroupGroupoid) -> list[Violation]:
    out = []
    if not gg.elem_group.is_commutative():
        out.append(Violation("commutative", (), "element group is not commutative"))
    if not gg.unit_group.is_commutative():
        out.append(Violation("commutative", (), "unit group is not commutative"))
    return out


def _linearity_violations(v: VectorSpaceGroupoid) -> list[Violation]:
    """Structure maps commute with the scalar action."""
    out: list[Violation] = []
    g = v.carrier
    pos = {u: i for i, u in enumerate(g.units)}
    for k in range(v.p):
        for x in range(len(g)):
            if pos[g.alpha[v.scalar[k][x]]] != v.unit_scalar[k][pos[g.alpha[x]]]:
                out.append(Violation(
                    "alpha-linear", (k, x), "source does not commute with the action"))
            if pos[g.beta[v.scalar[k][x]]] != v.unit_scalar[k][pos[g.beta[x]]]:
                out.append(Violation(
                    "beta-linear", (k, x), "target does not commute with the action"))
            if g.inv[v.scalar[k][x]] != v.scalar[k][g.inv[x]]:
                out.append(Violation(
                    "inv-linear", (k, x), "inversion does not commute with the action"))
        for i, u in enumerate(g.units):
            if v.scalar[k][u] != g.units[v.unit_scalar[k][i]]:
                out.append(Violation(
                    "unit-linear", (k, i),
                    "unit inclusion does not commute with the action"))
    return out


def validate_vector_space_groupoid(v: VectorSpaceGroupoid) -> ValidationReport:
    """Direct checklist: a commutative group-groupoid, vector-space axioms
    for both actions, linear structure maps, and the interchange law."""
    base = validate_group_groupoid(v.structure)
    out = list(base.violations)
    if any(x.axiom.startswith(("carrier", "elem-group", "unit-group")) for x in out):
        return ValidationReport(tuple(out))
    out.extend(_commutativity_violations(v.structure))
    out.extend(_scalar_law_violations(v))
    out.extend(_linearity_violations(v))
    return ValidationReport(tuple(out))


def validate_vector_space_groupoid_via_morphisms(v: VectorSpaceGroupoid) -> ValidationReport:
    """Equivalent formulation: both scalar structures are vector spaces,
    the carrier is a commutative group-groupoid in the morphism sense, and
    the action is a groupoid morphism from (scalars, carrier) pairs with
    scalars as a null groupoid."""
    base = validate_group_groupoid_as_morphisms(v.structure)
    out = list(base.violations)
    if any(x.axiom.startswith(("carrier", "elem-group", "unit-group")) for x in out):
        return ValidationReport(tuple(out))
    out.extend(_commutativity_violations(v.structure))
    out.extend(_scalar_law_violations(v))
    g = v.carrier
    n = len(g)
    scalars = null_groupoid([str(k) for k in range(v.p)])
    square = direct_product(scalars, g)
    act_map = [v.scalar[i // n][i % n] for i in range(v.p * n)]
    act_unit_map = {}
    for k in range(v.p):
        for i, u in enumerate(g.units):
            act_unit_map[k * n + u] = g.units[v.unit_scalar[k][i]]
    action = GroupoidMorphism(square, g, act_map, act_unit_map)
    out.extend(_prefixed(validate_morphism(action), "action"))
    return ValidationReport(tuple(out))


# ----- canonical models ----------------------------------------------------


def group_as_group_groupoid(t: GroupTable) -> GroupGroupoid:
    """A group as a one-unit groupoid with itself as the ambient group.
    Validates exactly when t is commutative: the interchange law then
    collapses to commutativity."""
    carrier = from_group(t)
    unit_group = GroupTable.build([t.labels[t.identity]], [[0]], 0, [0])
    return GroupGroupoid(carrier, t, unit_group)


def pair_group_groupoid(t: GroupTable) -> GroupGroupoid:
    """The pair groupoid on a group's elements with componentwise addition
    of arrows; the canonical valid group-groupoid."""
    t.validate().require("not a group")
    n = t.order
    if n > PAIR_BASE_LIMIT:
        raise SizeLimitError(f"pair group-groupoid base limited to {PAIR_BASE_LIMIT}, got {n}")
    carrier = pair_groupoid_over(t.labels)
    pairs = [(i, i) for i in range(n)]
    pairs += [(i, j) for i in range(n) for j in range(n) if i != j]
    table = [
        [pair_index(n, t.table[a][c], t.table[b][d]) for (c, d) in pairs]
        for (a, b) in pairs
    ]
    elem_group = GroupTable.build(
        labels=carrier.elements,
        table=table,
        identity=pair_index(n, t.identity, t.identity),
        inv=[pair_index(n, t.inv[a], t.inv[b]) for (a, b) in pairs],
    )
    unit_group = GroupTable.build(
        labels=tuple(carrier.elements[u] for u in carrier.units),
        table=t.table,
        identity=t.identity,
        inv=t.inv,
    )
    return GroupGroupoid(carrier, elem_group, unit_group)


def gf_vector_group(p: int, dim: int) -> GroupTable:
    """The additive group of GF(p)^dim; coordinates joined with commas for
    dim at least 2."""
    if not is_prime(p):
        raise ValueError(f"field size must be prime, got {p}")
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    vectors = list(iter_product(range(p), repeat=dim))
    index = {vec: i for i, vec in enumerate(vectors)}

    def label(vec):
        return str(vec[0]) if dim == 1 else ",".join(str(c) for c in vec)

    return GroupTable.build(
        labels=[label(vec) for vec in vectors],
        table=[
            [index[tuple((a + b) % p for a, b in zip(v, w))] for w in vectors]
            for v in vectors
        ],
        identity=index[(0,) * dim],
        inv=[index[tuple((-a) % p for a in v)] for v in vectors],
    )


def pair_vector_space_groupoid(p: int, dim: int) -> VectorSpaceGroupoid:
    """The pair groupoid on GF(p)^dim with componentwise addition and
    scalar action; the canonical valid vector-space groupoid."""
    if not is_prime(p):
        raise ValueError(f"field size must be prime, got {p}")
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if p ** dim > PAIR_BASE_LIMIT:
        raise SizeLimitError(
            f"pair vector-space groupoid base limited to {PAIR_BASE_LIMIT} points, "
            f"got {p ** dim}")
    t = gf_vector_group(p, dim)
    gg = pair_group_groupoid(t)
    n = t.order
    vectors = list(iter_product(range(p), repeat=dim))
    vec_index = {vec: i for i, vec in enumerate(vectors)}
    vec_scale = [
        [vec_index[tuple((k * a) % p for a in vec)] for vec in vectors]
        for k in range(p)
    ]
    pairs = [(i, i) for i in range(n)]
    pairs += [(i, j) for i in range(n) for j in range(n) if i != j]
    scalar = [
        [pair_index(n, vec_scale[k][a], vec_scale[k][b]) for (a, b) in pairs]
        for k in range(p)
    ]
    unit_scalar = [[vec_scale[k][i] for i in range(n)] for k in range(p)]
    return VectorSpaceGroupoid(gg, p, scalar, unit_scalar)
