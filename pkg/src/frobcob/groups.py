"""Finitely generated abelian groups in invariant-factor presentation.

A group is Z^r x Z/m_1 x ... x Z/m_k with every m_j >= 2 and the orders
nondecreasing, so equality of groups is structural equality of the
presentation.  Elements store an integer vector for the free part and
reduced residues for the torsion part.  Groups needing Smith normal
form reduction to reach this shape are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product


class GroupMismatchError(ValueError):
    """Raised when elements of different groups are combined."""


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError(f"free rank must be nonnegative, got {self.free_rank}")
        for m in self.torsion_orders:
            if m < 2:
                raise ValueError(f"torsion orders must be at least 2, got {m}")
        if any(a > b for a, b in zip(self.torsion_orders, self.torsion_orders[1:])):
            raise ValueError(f"torsion orders must be nondecreasing: {self.torsion_orders}")

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def is_trivial(self) -> bool:
        return self.num_generators == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if not self.is_finite():
            return None
        return math.prod(self.torsion_orders)

    def exponent(self) -> int | None:
        if not self.is_finite():
            return None
        return math.lcm(*self.torsion_orders) if self.torsion_orders else 1

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.torsion_orders))

    def element(self, *components: int) -> "GroupElement":
        """Build an element from r free components followed by k torsion residues."""
        r, k = self.free_rank, len(self.torsion_orders)
        if len(components) != r + k:
            raise ValueError(
                f"expected {r}+{k} components for {self}, got {len(components)}")
        return GroupElement(self, tuple(components[:r]), tuple(components[r:]))

    def generators(self) -> tuple["GroupElement", ...]:
        out = []
        n = self.num_generators
        for t in range(n):
            comps = [0] * n
            comps[t] = 1
            out.append(self.element(*comps))
        return tuple(out)

    def generator_names(self) -> tuple[str, ...]:
        """Names used by the algebra file format: u0.. free, t0.. torsion."""
        free = [f"u{t}" for t in range(self.free_rank)]
        tor = [f"t{t}" for t in range(len(self.torsion_orders))]
        return tuple(free + tor)

    def elements(self):
        """All elements of a finite group, leftmost factor most significant."""
        if not self.is_finite():
            raise ValueError(f"cannot enumerate the infinite group {self}")
        for residues in product(*(range(m) for m in self.torsion_orders)):
            yield GroupElement(self, (), residues)

    def element_index(self, g: "GroupElement") -> int:
        if g.group != self:
            raise GroupMismatchError(f"element of {g.group} indexed in {self}")
        if not self.is_finite():
            raise ValueError(f"cannot index elements of the infinite group {self}")
        i = 0
        for m, b in zip(self.torsion_orders, g.torsion):
            i = i * m + b
        return i

    def __str__(self):
        if self.is_trivial():
            return "1"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{m}" for m in self.torsion_orders)
        return " x ".join(parts)


TRIVIAL = AbelianGroup()


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        free = tuple(self.free)
        if len(free) != self.group.free_rank:
            raise ValueError(
                f"free part has {len(free)} components, group {self.group} needs"
                f" {self.group.free_rank}")
        orders = self.group.torsion_orders
        tor = tuple(self.torsion)
        if len(tor) != len(orders):
            raise ValueError(
                f"torsion part has {len(tor)} components, group {self.group} needs"
                f" {len(orders)}")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion", tuple(b % m for b, m in zip(tor, orders)))

    def _require_same_group(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected a group element, got {other!r}")
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of different groups: {self.group} and {other.group}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.free),
                            tuple(-b for b in self.torsion))

    def __pow__(self, n: int) -> "GroupElement":
        return GroupElement(self.group, tuple(n * a for a in self.free),
                            tuple(n * b for b in self.torsion))

    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def order(self) -> int | None:
        """Least n >= 1 with g^n = 1, or None when no such n exists."""
        if any(self.free):
            return None
        if not self.torsion:
            return 1
        return math.lcm(*(m // math.gcd(b, m) for b, m in
                          zip(self.torsion, self.group.torsion_orders)))

    @property
    def sort_key(self) -> tuple:
        return (self.free, self.torsion)

    def __str__(self):
        left = ",".join(str(a) for a in self.free)
        right = ",".join(str(b) for b in self.torsion)
        if left and right:
            return f"({left}; {right})"
        return f"({left or right})"
