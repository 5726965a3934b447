"""Quasipermutations: injective partial maps on {1..n} and their groupoids.

A quasipermutation of degree n is an injective map from a nonempty subset of
{1..n} into {1..n}.  Two of them compose exactly when the range of the first
equals the domain of the second, which makes the full collection a groupoid
whose units are the identity maps of the nonempty subsets.  Restricting to
the ones of positive signature gives a wide normal subgroupoid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Optional

from .core import FiniteGroupoid, SizeLimitError, restricted

__all__ = [
    "GroupoidCounts",
    "Quasipermutation",
    "alternating_groupoid",
    "count_formulas",
    "qp_compose",
    "signature",
    "symmetric_groupoid",
]

DEGREE_LIMIT = 6


@dataclass(frozen=True)
class Quasipermutation:
    """An injective partial map on {1..degree} with ordered domain.

    ``domain`` is strictly increasing; ``image[i]`` is the value taken at
    ``domain[i]``.  The text form is ``"k: i1 .. ik -> j1 .. jk"``.
    """

    degree: int
    domain: tuple[int, ...]
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if not self.domain:
            raise ValueError("domain must be nonempty")
        if len(self.domain) != len(self.image):
            raise ValueError("domain and image must have equal length")
        if any(not 1 <= i <= self.degree for i in self.domain + self.image):
            raise ValueError(f"entries must lie in 1..{self.degree}")
        if any(a >= b for a, b in zip(self.domain, self.domain[1:])):
            raise ValueError("domain must be strictly increasing")
        if len(set(self.image)) != len(self.image):
            raise ValueError("image entries must be distinct")

    @classmethod
    def identity(cls, degree: int, subset: tuple[int, ...]) -> "Quasipermutation":
        ordered = tuple(sorted(subset))
        return cls(degree, ordered, ordered)

    @property
    def length(self) -> int:
        return len(self.domain)

    @property
    def range_set(self) -> frozenset[int]:
        return frozenset(self.image)

    @property
    def domain_set(self) -> frozenset[int]:
        return frozenset(self.domain)

    def is_identity(self) -> bool:
        return self.domain == self.image

    def apply(self, i: int) -> int:
        try:
            return self.image[self.domain.index(i)]
        except ValueError:
            raise ValueError(f"{i} is outside the domain {self.domain}") from None

    def inverse(self) -> "Quasipermutation":
        pairs = sorted(zip(self.image, self.domain))
        return Quasipermutation(
            self.degree,
            tuple(v for v, _ in pairs),
            tuple(d for _, d in pairs),
        )

    def text_form(self) -> str:
        dom = " ".join(str(i) for i in self.domain)
        img = " ".join(str(j) for j in self.image)
        return f"{self.length}: {dom} -> {img}"

    @classmethod
    def from_text(cls, degree: int, text: str) -> "Quasipermutation":
        try:
            head, rest = text.split(":", 1)
            dom_part, img_part = rest.split("->", 1)
            k = int(head.strip())
            domain = tuple(int(t) for t in dom_part.split())
            image = tuple(int(t) for t in img_part.split())
        except (ValueError, IndexError):
            raise ValueError(f"malformed quasipermutation text {text!r}") from None
        if k != len(domain):
            raise ValueError(f"length prefix {k} does not match domain in {text!r}")
        return cls(degree, domain, image)

    def __str__(self) -> str:
        return self.text_form()


def qp_compose(f: Quasipermutation, g: Quasipermutation) -> Optional[Quasipermutation]:
    """The product f*g: apply f first, then g.

    Defined exactly when the range of f equals the domain of g; returns None
    otherwise.  Degrees must agree.
    """
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    if f.range_set != g.domain_set:
        return None
    return Quasipermutation(
        f.degree, f.domain, tuple(g.apply(f.apply(i)) for i in f.domain)
    )


def signature(f: Quasipermutation) -> int:
    """The sign of a quasipermutation.

    For length >= 2 this is the parity of the permutation obtained by
    ranking the image values against the sorted range.  A length-1 map is
    assigned +1 exactly when it is an identity; this is the unique
    convention under which the even maps at every degree form a wide normal
    subgroupoid whose element counts satisfy the closed-form formulas.
    """
    if f.length == 1:
        return 1 if f.domain == f.image else -1
    inversions = 0
    for i in range(f.length):
        for j in range(i + 1, f.length):
            if f.image[i] > f.image[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def _enumerate(n: int) -> list[Quasipermutation]:
    """All quasipermutations of degree n: identity maps first (by length,
    then domain), then the rest by (length, domain, image)."""
    units: list[Quasipermutation] = []
    rest: list[Quasipermutation] = []
    points = range(1, n + 1)
    for k in range(1, n + 1):
        for domain in itertools.combinations(points, k):
            units.append(Quasipermutation(n, domain, domain))
    units.sort(key=lambda f: (f.length, f.domain))
    for k in range(1, n + 1):
        for domain in itertools.combinations(points, k):
            for image in itertools.permutations(points, k):
                if image != domain:
                    rest.append(Quasipermutation(n, domain, image))
    return units + rest


def symmetric_groupoid(n: int, *, limit: int = DEGREE_LIMIT) -> FiniteGroupoid:
    """The groupoid of all quasipermutations of degree n.

    Units are the identity maps of nonempty subsets; the product of f and g
    is defined when range(f) = domain(g) and is the composite map.  Element
    payloads hold the Quasipermutation objects.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > limit:
        raise SizeLimitError(f"degree {n} exceeds the bound {limit}")
    maps = _enumerate(n)
    index = {(f.domain, f.image): i for i, f in enumerate(maps)}
    unit_of_subset = {f.domain_set: i for i, f in enumerate(maps) if f.is_identity()}
    by_domain: dict[frozenset[int], list[int]] = {}
    for j, g in enumerate(maps):
        by_domain.setdefault(g.domain_set, []).append(j)
    mul = {}
    for i, f in enumerate(maps):
        for j in by_domain[f.range_set]:
            h = qp_compose(f, maps[j])
            mul[(i, j)] = index[(h.domain, h.image)]
    return FiniteGroupoid(
        elements=[f.text_form() for f in maps],
        units=[i for i, f in enumerate(maps) if f.is_identity()],
        alpha=[unit_of_subset[f.domain_set] for f in maps],
        beta=[unit_of_subset[f.range_set] for f in maps],
        inv=[index[(f.inverse().domain, f.inverse().image)] for f in maps],
        mul=mul,
        payloads=maps,
    )


def alternating_groupoid(n: int, *, limit: int = DEGREE_LIMIT) -> FiniteGroupoid:
    """The wide subgroupoid of even quasipermutations of degree n (n >= 2)."""
    if n < 2:
        raise ValueError("the even quasipermutations need degree at least 2")
    full = symmetric_groupoid(n, limit=limit)
    assert full.payloads is not None
    members = [i for i, f in enumerate(full.payloads) if signature(f) == 1]
    return restricted(full, members)


@dataclass(frozen=True)
class GroupoidCounts:
    """Closed-form counts for the quasipermutation groupoids of degree n.

    The alternating fields are None for n = 1, where no even/odd split is
    defined.
    """

    n: int
    s_total: int
    s_units: int
    s_isotropy: int
    a_total: Optional[int]
    a_units: Optional[int]
    a_isotropy: Optional[int]


def count_formulas(n: int) -> GroupoidCounts:
    """Exact element, unit and isotropy counts for degree n (integers, no
    truncation)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    s_total = sum(factorial(k) * comb(n, k) ** 2 for k in range(1, n + 1))
    s_units = 2**n - 1
    s_isotropy = sum(factorial(k) * comb(n, k) for k in range(1, n + 1))
    if n < 2:
        return GroupoidCounts(n, s_total, s_units, s_isotropy, None, None, None)
    a_total = (s_total - (n * n - 2 * n)) // 2
    a_units = 2**n - 1
    a_isotropy = (n + s_isotropy) // 2
    return GroupoidCounts(n, s_total, s_units, s_isotropy, a_total, a_units, a_isotropy)
