"""The group of 3x3 upper-unitriangular matrices over F_ell.

Elements are exponent triples (e_alpha, e_beta, e_c): e_alpha at entry
(1,2), e_beta at entry (2,3), e_c at entry (1,3).  Composition in these
coordinates is

    (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a * b'),

which matches matrix multiplication.  The group has order ell^3; its center
is {(0, 0, c)} of order ell.  For ell >= 3 every non-identity element has
order ell; for ell = 2 the elements with both off-diagonal entries set have
order 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import MixedModulusError, NotPrimeError
from .finite_field import is_prime


@dataclass(frozen=True)
class HeisElem:
    ell: int
    e_alpha: int
    e_beta: int
    e_c: int

    def __post_init__(self):
        ell = self.ell
        object.__setattr__(self, "e_alpha", self.e_alpha % ell)
        object.__setattr__(self, "e_beta", self.e_beta % ell)
        object.__setattr__(self, "e_c", self.e_c % ell)

    def __mul__(self, other: "HeisElem") -> "HeisElem":
        if self.ell != other.ell:
            raise MixedModulusError("elements of groups over different F_ell")
        ell = self.ell
        return HeisElem(
            ell,
            (self.e_alpha + other.e_alpha) % ell,
            (self.e_beta + other.e_beta) % ell,
            (self.e_c + other.e_c + self.e_alpha * other.e_beta) % ell,
        )

    def inverse(self) -> "HeisElem":
        ell = self.ell
        return HeisElem(
            ell,
            -self.e_alpha,
            -self.e_beta,
            -self.e_c + self.e_alpha * self.e_beta,
        )

    def __pow__(self, n: int) -> "HeisElem":
        if n < 0:
            return self.inverse() ** (-n)
        acc = identity(self.ell)
        for _ in range(n):
            acc = acc * self
        return acc

    @property
    def is_identity(self) -> bool:
        return self.e_alpha == 0 and self.e_beta == 0 and self.e_c == 0

    @property
    def is_central(self) -> bool:
        return self.e_alpha == 0 and self.e_beta == 0

    def key(self) -> tuple[int, int, int]:
        return (self.e_alpha, self.e_beta, self.e_c)

    def to_matrix(self) -> tuple[tuple[int, ...], ...]:
        return (
            (1, self.e_alpha, self.e_c),
            (0, 1, self.e_beta),
            (0, 0, 1),
        )


def identity(ell: int) -> HeisElem:
    return HeisElem(ell, 0, 0, 0)


def compose(g: HeisElem, h: HeisElem) -> HeisElem:
    return g * h


def element_order(g: HeisElem) -> int:
    """Smallest n >= 1 with g^n = identity."""
    acc = g
    n = 1
    while not acc.is_identity:
        acc = acc * g
        n += 1
    return n


def all_elements(ell: int):
    for a, b, c in product(range(ell), repeat=3):
        yield HeisElem(ell, a, b, c)


@lru_cache(maxsize=None)
def conjugacy_classes(ell: int) -> tuple[tuple[HeisElem, ...], ...]:
    """Complete partition into conjugacy classes, by brute conjugation.

    Classes are ordered by (size, minimal representative); within a class
    elements are sorted by their exponent triple.
    """
    if not is_prime(ell):
        raise NotPrimeError(f"ell = {ell} is not prime")
    elems = list(all_elements(ell))
    seen: set[tuple[int, int, int]] = set()
    classes = []
    for g in elems:
        if g.key() in seen:
            continue
        cls = {(h * g * h.inverse()).key() for h in elems}
        seen |= cls
        members = tuple(
            HeisElem(ell, *k) for k in sorted(cls)
        )
        classes.append(members)
    classes.sort(key=lambda cls: (len(cls), cls[0].key()))
    return tuple(classes)


def class_label(g: HeisElem) -> str:
    """Canonical conjugacy class label of g.

    The class of a non-central element (a, b, c) is {(a, b, *)}; central
    elements are singletons.
    """
    if g.is_identity:
        return "1"
    if g.is_central:
        return f"z^{g.e_c}"
    return f"({g.e_alpha},{g.e_beta},*)"


def class_size(g: HeisElem) -> int:
    """Size of the conjugacy class of g (1 for central, ell otherwise)."""
    return 1 if g.is_central else g.ell
