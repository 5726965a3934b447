"""Finite groupoids as explicit partial multiplication tables.

A finite groupoid is stored in Brandt normal form: the unit set is a subset
of the carrier, the source map ``alpha`` and target map ``beta`` send every
element to a unit, ``inv`` is the inversion bijection, and the partial
product is a sparse table defined exactly on the composable pairs
``{(x, y) : beta(x) == alpha(y)}``.  Elements are identified by index;
labels exist for display and serialization only.

``validate`` checks the axioms (associativity, identities, inverses,
surjectivity of source/target onto the units, and exactness of the partial
product's domain) and reports violations with witnesses instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

__all__ = [
    "FiniteGroupoid",
    "IsotropyGroup",
    "SizeLimitError",
    "ValidationReport",
    "Violation",
    "is_isomorphic",
    "isotropy_conjugation",
    "restricted",
    "validate",
    "with_base_labels",
]

ISO_SIZE_LIMIT = 32


class SizeLimitError(ValueError):
    """An operation was asked to run above its configured size bound."""


@dataclass(frozen=True)
class Violation:
    """A single axiom failure with a concrete witness (element indices)."""

    axiom: str
    witness: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"[{self.axiom}] witness={self.witness}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an axiom check; passes exactly when no violations exist."""

    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def require(self, context: str) -> None:
        """Raise ValueError naming the first violation unless the report passed."""
        if not self.passed:
            first = self.violations[0]
            raise ValueError(f"{context}: {len(self.violations)} violation(s), first: {first}")

    def summary(self) -> str:
        if self.passed:
            return "ok"
        lines = [f"{len(self.violations)} violation(s):"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


class FiniteGroupoid:
    """A finite groupoid over indexed elements.

    Attributes (treated as immutable after construction):
      elements:    tuple of unique display labels; index = identity.
      units:       ascending tuple of element indices forming the unit set.
      alpha, beta: source/target, total maps index -> unit index.
      inv:         inversion, total map index -> index.
      mul:         sparse partial product {(x, y): x*y}.
      base_labels: optional bijection unit index -> external base label,
                   used when two groupoids must share a base.
      payloads:    optional per-element payload objects (e.g. partial maps).

    The constructor checks container shape only (lengths, label uniqueness,
    key forms); semantic defects such as out-of-range indices or products
    defined off the composable pairs are reported by :func:`validate`, not
    raised here.  Equality compares the tables index-wise and ignores
    labels, base labels and payloads.
    """

    def __init__(
        self,
        elements: Sequence[str],
        units: Iterable[int],
        alpha: Sequence[int],
        beta: Sequence[int],
        inv: Sequence[int],
        mul: Mapping[tuple[int, int], int],
        *,
        base_labels: Mapping[int, str] | None = None,
        payloads: Sequence[object] | None = None,
    ) -> None:
        self.elements: tuple[str, ...] = tuple(elements)
        if not self.elements:
            raise ValueError("a groupoid needs at least one element")
        for e in self.elements:
            if not isinstance(e, str):
                raise ValueError(f"element labels must be strings, got {e!r}")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element labels must be unique")

        unit_list = [int(u) for u in units]
        if len(set(unit_list)) != len(unit_list):
            raise ValueError("duplicate entries in unit set")
        if not unit_list:
            raise ValueError("a groupoid needs at least one unit")
        self.units: tuple[int, ...] = tuple(sorted(unit_list))

        n = len(self.elements)
        self.alpha: tuple[int, ...] = tuple(int(v) for v in alpha)
        self.beta: tuple[int, ...] = tuple(int(v) for v in beta)
        self.inv: tuple[int, ...] = tuple(int(v) for v in inv)
        for name, table in (("alpha", self.alpha), ("beta", self.beta), ("inv", self.inv)):
            if len(table) != n:
                raise ValueError(f"{name} must assign every element, got {len(table)} of {n}")

        product: dict[tuple[int, int], int] = {}
        for key, value in mul.items():
            pair = tuple(key)
            if len(pair) != 2:
                raise ValueError(f"mul keys must be element pairs, got {key!r}")
            product[(int(pair[0]), int(pair[1]))] = int(value)
        self.mul: dict[tuple[int, int], int] = product

        if base_labels is not None:
            base = {int(u): str(lbl) for u, lbl in base_labels.items()}
            unknown = set(base) - set(self.units)
            if unknown:
                raise ValueError(f"base labels given for non-units: {sorted(unknown)}")
            if len(set(base.values())) != len(base):
                raise ValueError("base labels must be pairwise distinct")
            self.base_labels: dict[int, str] | None = base
        else:
            self.base_labels = None

        if payloads is not None:
            self.payloads: tuple[object, ...] | None = tuple(payloads)
            if len(self.payloads) != n:
                raise ValueError("payloads must parallel the element list")
        else:
            self.payloads = None

        self._label_index: dict[str, int] = {lbl: i for i, lbl in enumerate(self.elements)}

    # ----- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        n, m = self.groupoid_type()
        return f"FiniteGroupoid(type=({n};{m}))"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            len(self.elements) == len(other.elements)
            and self.units == other.units
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.inv == other.inv
            and self.mul == other.mul
        )

    def groupoid_type(self) -> tuple[int, int]:
        """The pair (carrier size, unit count)."""
        return (len(self.elements), len(self.units))

    def is_unit(self, x: int) -> bool:
        return x in self._unit_set()

    def _unit_set(self) -> frozenset[int]:
        cached = getattr(self, "_units_frozen", None)
        if cached is None:
            cached = frozenset(self.units)
            self._units_frozen = cached
        return cached

    def label(self, x: int) -> str:
        return self.elements[x]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r}") from None

    def source(self, x: int) -> int:
        self._check_index(x)
        return self.alpha[x]

    def target(self, x: int) -> int:
        self._check_index(x)
        return self.beta[x]

    def inverse(self, x: int) -> int:
        self._check_index(x)
        return self.inv[x]

    def composable(self, x: int, y: int) -> bool:
        self._check_index(x)
        self._check_index(y)
        return self.beta[x] == self.alpha[y]

    def compose(self, x: int, y: int) -> Optional[int]:
        """The product x*y, or None when the pair is not composable."""
        self._check_index(x)
        self._check_index(y)
        return self.mul.get((x, y))

    def anchor(self, x: int) -> tuple[int, int]:
        """The (source, target) unit pair of x."""
        self._check_index(x)
        return (self.alpha[x], self.beta[x])

    def is_transitive(self) -> bool:
        """True when every ordered unit pair is the anchor of some element."""
        seen = {(self.alpha[x], self.beta[x]) for x in range(len(self.elements))}
        return len(seen) == len(self.units) ** 2

    def isotropy_members(self, u: int) -> tuple[int, ...]:
        return tuple(
            x for x in range(len(self.elements)) if self.alpha[x] == u and self.beta[x] == u
        )

    def isotropy_group(self, u: int) -> "IsotropyGroup":
        """The group of elements with source and target both equal to the unit u."""
        if not self.is_unit(u):
            raise ValueError(f"element {u} is not a unit")
        members = self.isotropy_members(u)
        pos = {x: i for i, x in enumerate(members)}
        table = []
        for x in members:
            row = []
            for y in members:
                z = self.mul.get((x, y))
                if z is None or z not in pos:
                    raise ValueError(f"isotropy set at unit {u} is not closed at ({x}, {y})")
                row.append(pos[z])
            table.append(tuple(row))
        inv_positions = []
        for x in members:
            xi = self.inv[x]
            if xi not in pos:
                raise ValueError(f"isotropy set at unit {u} lacks the inverse of {x}")
            inv_positions.append(pos[xi])
        group = IsotropyGroup(
            unit=u, members=members, table=tuple(table), inv=tuple(inv_positions)
        )
        group.check(self)
        return group

    def isotropy_bundle(self) -> tuple[int, ...]:
        """All elements whose source and target coincide, ascending."""
        return tuple(
            x for x in range(len(self.elements)) if self.alpha[x] == self.beta[x]
        )

    def unit_base_label(self, u: int) -> str:
        """The external base label of a unit (defaults to its element label)."""
        if not self.is_unit(u):
            raise ValueError(f"element {u} is not a unit")
        if self.base_labels is not None and u in self.base_labels:
            return self.base_labels[u]
        return self.elements[u]

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        return iter(self.mul.keys())

    def _check_index(self, x: int) -> None:
        if not 0 <= x < len(self.elements):
            raise IndexError(f"element index {x} out of range")


@dataclass(frozen=True)
class IsotropyGroup:
    """The isotropy group at a unit, with its induced total multiplication.

    ``members`` are parent element indices; ``table`` and ``inv`` work on
    member positions (0..k-1) so the record is a self-contained group table.
    """

    unit: int
    members: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def identity_position(self) -> int:
        return self.members.index(self.unit)

    def check(self, parent: FiniteGroupoid) -> None:
        """Verify the group axioms on the induced table (defensive)."""
        k = self.order
        e = self.identity_position
        for i in range(k):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise ValueError(f"unit {self.unit} is not an identity of its isotropy group")
            if self.table[i][self.inv[i]] != e or self.table[self.inv[i]][i] != e:
                raise ValueError(f"isotropy group at unit {self.unit} lacks an inverse")
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    if self.table[self.table[i][j]][l] != self.table[i][self.table[j][l]]:
                        raise ValueError(
                            f"isotropy group at unit {self.unit} is not associative"
                        )


# ----- validation ----------------------------------------------------------


def validate(g: FiniteGroupoid) -> ValidationReport:
    """Check the groupoid axioms on g's tables.

    Violations are tagged by axiom:
      structure     index out of range, source/target not landing in units
      closure       product defined off a composable pair, or missing on one
      surjectivity  a unit missed by the source or target map
      G1            associativity (including drifting product anchors)
      G2            identity laws alpha(x)*x = x = x*beta(x)
      G3            inverse laws inv(x)*x = beta(x), x*inv(x) = alpha(x)
    """
    v: list[Violation] = []
    n = len(g.elements)

    for u in g.units:
        if not 0 <= u < n:
            v.append(Violation("structure", (u,), "unit index out of range"))
    for name, table in (("alpha", g.alpha), ("beta", g.beta), ("inv", g.inv)):
        for x, value in enumerate(table):
            if not 0 <= value < n:
                v.append(Violation("structure", (x,), f"{name}({x}) = {value} out of range"))
    for (x, y), z in g.mul.items():
        if not (0 <= x < n and 0 <= y < n and 0 <= z < n):
            v.append(Violation("structure", (x, y), f"product entry ({x}, {y}) -> {z} out of range"))
    if v:
        return ValidationReport(tuple(v))

    unit_set = set(g.units)
    for x in range(n):
        if g.alpha[x] not in unit_set:
            v.append(Violation("structure", (x,), f"alpha({x}) is not a unit"))
        if g.beta[x] not in unit_set:
            v.append(Violation("structure", (x,), f"beta({x}) is not a unit"))
    if v:
        return ValidationReport(tuple(v))

    for u in unit_set - {g.alpha[x] for x in range(n)}:
        v.append(Violation("surjectivity", (u,), "unit is not the source of any element"))
    for u in unit_set - {g.beta[x] for x in range(n)}:
        v.append(Violation("surjectivity", (u,), "unit is not the target of any element"))

    by_alpha: dict[int, list[int]] = {}
    for y in range(n):
        by_alpha.setdefault(g.alpha[y], []).append(y)

    for (x, y) in g.mul:
        if g.beta[x] != g.alpha[y]:
            v.append(Violation("closure", (x, y), "product defined on a non-composable pair"))
    for x in range(n):
        for y in by_alpha.get(g.beta[x], ()):
            if (x, y) not in g.mul:
                v.append(Violation("closure", (x, y), "composable pair has no product"))

    for x in range(n):
        a, b = g.alpha[x], g.beta[x]
        if g.beta[a] != a:
            v.append(Violation("G2", (x,), f"left identity pair ({a}, {x}) not composable"))
        elif g.mul.get((a, x)) != x:
            v.append(Violation("G2", (x,), f"alpha({x}) * {x} != {x}"))
        if g.alpha[b] != b:
            v.append(Violation("G2", (x,), f"right identity pair ({x}, {b}) not composable"))
        elif g.mul.get((x, b)) != x:
            v.append(Violation("G2", (x,), f"{x} * beta({x}) != {x}"))

    for x in range(n):
        xi = g.inv[x]
        if g.beta[xi] != g.alpha[x]:
            v.append(Violation("G3", (x,), f"pair (inv({x}), {x}) not composable"))
        elif g.mul.get((xi, x)) != g.beta[x]:
            v.append(Violation("G3", (x,), f"inv({x}) * {x} != beta({x})"))
        if g.beta[x] != g.alpha[xi]:
            v.append(Violation("G3", (x,), f"pair ({x}, inv({x})) not composable"))
        elif g.mul.get((x, xi)) != g.alpha[x]:
            v.append(Violation("G3", (x,), f"{x} * inv({x}) != alpha({x})"))

    for (x, y), z in g.mul.items():
        if g.alpha[z] != g.alpha[x] or g.beta[z] != g.beta[y]:
            v.append(Violation("G1", (x, y), "anchors of the product drift from its factors"))

    for (x, y), xy in g.mul.items():
        for z in by_alpha.get(g.beta[y], ()):
            yz = g.mul.get((y, z))
            if yz is None:
                continue
            lhs = g.mul.get((xy, z))
            rhs = g.mul.get((x, yz))
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                v.append(Violation("G1", (x, y, z), f"({x}*{y})*{z} != {x}*({y}*{z})"))

    return ValidationReport(tuple(v))


# ----- derived structure ---------------------------------------------------


def isotropy_conjugation(g: FiniteGroupoid, x: int) -> dict[int, int]:
    """Conjugation by x: the isomorphism z -> inv(x)*z*x between the isotropy
    groups at the source and target of x.  Returns the map as a dict and
    verifies it really is a group isomorphism.
    """
    g._check_index(x)
    u, w = g.alpha[x], g.beta[x]
    source = g.isotropy_members(u)
    target_set = set(g.isotropy_members(w))
    xi = g.inv[x]
    mapping: dict[int, int] = {}
    for z in source:
        step = g.mul.get((xi, z))
        if step is None:
            raise ValueError(f"conjugation by {x} undefined at {z}")
        out = g.mul.get((step, x))
        if out is None or out not in target_set:
            raise ValueError(f"conjugation by {x} leaves the target isotropy group at {z}")
        mapping[z] = out
    if len(set(mapping.values())) != len(target_set):
        raise ValueError(f"conjugation by {x} is not a bijection of isotropy groups")
    for z1 in source:
        for z2 in source:
            prod = g.mul[(z1, z2)]
            if mapping[prod] != g.mul[(mapping[z1], mapping[z2])]:
                raise ValueError(f"conjugation by {x} is not a homomorphism at ({z1}, {z2})")
    return mapping


def restricted(g: FiniteGroupoid, members: Iterable[int]) -> FiniteGroupoid:
    """The full substructure on a product- and inverse-closed subset.

    Labels, base labels and payloads are inherited.  Raises ValueError when
    the subset is not closed (use the subgroupoid classifier to check first).
    """
    subset = sorted(set(int(x) for x in members))
    if not subset:
        raise ValueError("cannot restrict to an empty subset")
    member_set = set(subset)
    for x in subset:
        g._check_index(x)
        for probe, name in ((g.alpha[x], "source"), (g.beta[x], "target"), (g.inv[x], "inverse")):
            if probe not in member_set:
                raise ValueError(f"subset is not closed: {name} of {x} escapes it")
    new_index = {x: i for i, x in enumerate(subset)}
    mul = {}
    for (x, y), z in g.mul.items():
        if x in member_set and y in member_set:
            if z not in member_set:
                raise ValueError(f"subset is not closed: product of ({x}, {y}) escapes it")
            mul[(new_index[x], new_index[y])] = new_index[z]
    base = None
    if g.base_labels is not None:
        base = {new_index[u]: lbl for u, lbl in g.base_labels.items() if u in member_set}
    payloads = None
    if g.payloads is not None:
        payloads = [g.payloads[x] for x in subset]
    return FiniteGroupoid(
        elements=[g.elements[x] for x in subset],
        units=[new_index[u] for u in g.units if u in member_set],
        alpha=[new_index[g.alpha[x]] for x in subset],
        beta=[new_index[g.beta[x]] for x in subset],
        inv=[new_index[g.inv[x]] for x in subset],
        mul=mul,
        base_labels=base,
        payloads=payloads,
    )


def with_base_labels(g: FiniteGroupoid, base_labels: Mapping[int, str]) -> FiniteGroupoid:
    """A copy of g carrying the given unit -> base label bijection."""
    return FiniteGroupoid(
        elements=g.elements,
        units=g.units,
        alpha=g.alpha,
        beta=g.beta,
        inv=g.inv,
        mul=g.mul,
        base_labels=base_labels,
        payloads=g.payloads,
    )


# ----- isomorphism search --------------------------------------------------


def _element_order(g: FiniteGroupoid, x: int) -> int:
    if g.alpha[x] != g.beta[x]:
        return 0
    power = x
    order = 1
    while not g.is_unit(power):
        power = g.mul[(power, x)]
        order += 1
    return order


def _invariant_vectors(g: FiniteGroupoid) -> list[tuple]:
    n = len(g.elements)
    alpha_fiber: dict[int, int] = {}
    beta_fiber: dict[int, int] = {}
    for x in range(n):
        alpha_fiber[g.alpha[x]] = alpha_fiber.get(g.alpha[x], 0) + 1
        beta_fiber[g.beta[x]] = beta_fiber.get(g.beta[x], 0) + 1
    iso_size = {u: len(g.isotropy_members(u)) for u in g.units}
    vectors = []
    for x in range(n):
        a, b = g.alpha[x], g.beta[x]
        vectors.append(
            (
                g.is_unit(x),
                a == b,
                g.inv[x] == x,
                alpha_fiber.get(a, 0),
                beta_fiber.get(b, 0),
                alpha_fiber.get(b, 0),
                beta_fiber.get(a, 0),
                iso_size.get(a, 0),
                iso_size.get(b, 0),
                _element_order(g, x),
            )
        )
    return vectors


def is_isomorphic(
    g: FiniteGroupoid, h: FiniteGroupoid, *, max_size: int = ISO_SIZE_LIMIT
) -> Optional[tuple[int, ...]]:
    """Search for a structure-preserving bijection g -> h.

    Returns the element map as a tuple (position x holds the image of x),
    or None when the groupoids are not isomorphic.  Backtracking with
    per-element invariant pruning and forced propagation of products;
    raises SizeLimitError above ``max_size`` elements.
    """
    if len(g) > max_size or len(h) > max_size:
        raise SizeLimitError(
            f"isomorphism search limited to {max_size} elements, got {len(g)} and {len(h)}"
        )
    if len(g) != len(h) or len(g.units) != len(h.units) or len(g.mul) != len(h.mul):
        return None
    vec_g = _invariant_vectors(g)
    vec_h = _invariant_vectors(h)
    if sorted(vec_g) != sorted(vec_h):
        return None

    n = len(g)
    by_vec: dict[tuple, list[int]] = {}
    for c in range(n):
        by_vec.setdefault(vec_h[c], []).append(c)
    candidates = [by_vec.get(vec_g[x], []) for x in range(n)]
    if any(not c for c in candidates):
        return None

    fwd: list[Optional[int]] = [None] * n
    bwd: list[Optional[int]] = [None] * n
    assigned: list[int] = []

    def attempt(x: int, c: int, trail: list[int]) -> bool:
        queue = [(x, c)]
        while queue:
            a, b = queue.pop()
            if fwd[a] is not None:
                if fwd[a] != b:
                    return False
                continue
            if bwd[b] is not None or vec_g[a] != vec_h[b]:
                return False
            fwd[a] = b
            bwd[b] = a
            assigned.append(a)
            trail.append(a)
            queue.append((g.alpha[a], h.alpha[b]))
            queue.append((g.beta[a], h.beta[b]))
            queue.append((g.inv[a], h.inv[b]))
            for y in assigned:
                fy = fwd[y]
                prod = g.mul.get((a, y))
                if prod is None:
                    if (b, fy) in h.mul:
                        return False
                else:
                    img = h.mul.get((b, fy))
                    if img is None:
                        return False
                    queue.append((prod, img))
                if y != a:
                    prod = g.mul.get((y, a))
                    if prod is None:
                        if (fy, b) in h.mul:
                            return False
                    else:
                        img = h.mul.get((fy, b))
                        if img is None:
                            return False
                        queue.append((prod, img))
        return True

    def unwind(trail: list[int]) -> None:
        for a in reversed(trail):
            b = fwd[a]
            fwd[a] = None
            bwd[b] = None
            assigned.pop()

    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))

    def search(k: int) -> bool:
        while k < n and fwd[order[k]] is not None:
            k += 1
        if k == n:
            return True
        x = order[k]
        for c in candidates[x]:
            if bwd[c] is not None:
                continue
            trail: list[int] = []
            if attempt(x, c, trail) and search(k + 1):
                return True
            unwind(trail)
        return False

    if search(0):
        return tuple(fwd)  # type: ignore[arg-type]
    return None
