"""Labelled 2d cobordisms between disjoint unions of circles.

A cobordism from m circles to n circles is a list of connected
components; each component records its genus, the set of input ports it
touches, the set of output ports, and a label drawn from a fixed
finitely generated abelian group.  Both port sets may be empty, which
makes the component a closed surface.  Note that closed components are
honest morphisms from 0 to 0 carrying their own labels, so the labelled
calculus is not just the unlabelled one paired with a single global
group value.

Composition glues output port j of the first cobordism to input port j
of the second.  Merged components are found by union-find, merged
labels are products, and merged genus comes from Euler characteristic
bookkeeping: chi(genus g, b boundary circles) = 2 - 2g - b, and chi is
additive under gluing along circles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import TRIVIAL, AbelianGroup, GroupElement, GroupMismatchError


class CompositionError(ValueError):
    """Raised when two cobordisms do not share a gluing interface."""


@dataclass(frozen=True)
class Component:
    genus: int
    inputs: frozenset[int]
    outputs: frozenset[int]
    label: GroupElement

    def __post_init__(self):
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        if self.genus < 0:
            raise ValueError(f"genus must be nonnegative, got {self.genus}")

    def is_closed(self) -> bool:
        return not self.inputs and not self.outputs

    @property
    def sort_key(self) -> tuple:
        return (tuple(sorted(self.inputs)), tuple(sorted(self.outputs)),
                self.genus, self.label.sort_key)


@dataclass(frozen=True)
class Cobordism:
    group: AbelianGroup
    source: int
    target: int
    components: tuple[Component, ...] = field(default_factory=tuple)

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda c: c.sort_key))
        object.__setattr__(self, "components", comps)
        if self.source < 0 or self.target < 0:
            raise ValueError("circle counts must be nonnegative")
        seen_in: set[int] = set()
        seen_out: set[int] = set()
        for c in comps:
            if c.label.group != self.group:
                raise GroupMismatchError(
                    f"component labelled in {c.label.group}, cobordism over {self.group}")
            if c.inputs & seen_in:
                raise ValueError(f"input ports used twice: {sorted(c.inputs & seen_in)}")
            if c.outputs & seen_out:
                raise ValueError(f"output ports used twice: {sorted(c.outputs & seen_out)}")
            seen_in |= c.inputs
            seen_out |= c.outputs
        if seen_in != set(range(self.source)):
            raise ValueError(
                f"input ports {sorted(seen_in)} do not cover 0..{self.source - 1}")
        if seen_out != set(range(self.target)):
            raise ValueError(
                f"output ports {sorted(seen_out)} do not cover 0..{self.target - 1}")

    def canonical_form(self) -> "Cobordism":
        # Components are sorted at construction, so this is the identity;
        # kept as the explicit name for the normalization contract.
        return self

    def __str__(self):
        return f"<cobordism {self.source}->{self.target} over {self.group}, {len(self.components)} components>"


def _chi(genus: int, boundary: int) -> int:
    return 2 - 2 * genus - boundary


def identity(n: int, group: AbelianGroup) -> Cobordism:
    one = group.identity()
    comps = [Component(0, frozenset({j}), frozenset({j}), one) for j in range(n)]
    return Cobordism(group, n, n, tuple(comps))


def compose(second: Cobordism, first: Cobordism) -> Cobordism:
    """Glue first's outputs to second's inputs; result maps first.source to second.target."""
    if first.group != second.group:
        raise GroupMismatchError(
            f"cannot compose over different groups: {first.group} and {second.group}")
    if first.target != second.source:
        raise CompositionError(
            f"cannot glue {first.target} output circle(s) to {second.source} input circle(s)")

    pieces = list(first.components) + list(second.components)
    offset = len(first.components)
    parent = list(range(len(pieces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    out_owner = {}
    for i, c in enumerate(first.components):
        for j in c.outputs:
            out_owner[j] = i
    in_owner = {}
    for i, c in enumerate(second.components):
        for j in c.inputs:
            in_owner[j] = offset + i
    for j in range(first.target):
        union(out_owner[j], in_owner[j])

    classes: dict[int, list[int]] = {}
    for i in range(len(pieces)):
        classes.setdefault(find(i), []).append(i)

    merged = []
    for members in classes.values():
        inputs: set[int] = set()
        outputs: set[int] = set()
        chi = 0
        label = first.group.identity()
        for i in members:
            c = pieces[i]
            chi += _chi(c.genus, len(c.inputs) + len(c.outputs))
            label = label * c.label
            if i < offset:
                inputs |= c.inputs
            else:
                outputs |= c.outputs
        boundary = len(inputs) + len(outputs)
        num = 2 - chi - boundary
        if num < 0 or num % 2:
            raise RuntimeError(
                f"genus bookkeeping violated: chi={chi}, boundary={boundary}")
        merged.append(Component(num // 2, frozenset(inputs), frozenset(outputs), label))

    return Cobordism(first.group, first.source, second.target, tuple(merged))


def tensor(left: Cobordism, right: Cobordism) -> Cobordism:
    """Place right next to left, shifting its port numbers past left's."""
    if left.group != right.group:
        raise GroupMismatchError(
            f"cannot tensor over different groups: {left.group} and {right.group}")
    shifted = [
        Component(c.genus,
                  frozenset(j + left.source for j in c.inputs),
                  frozenset(j + left.target for j in c.outputs),
                  c.label)
        for c in right.components
    ]
    return Cobordism(left.group, left.source + right.source,
                     left.target + right.target,
                     tuple(left.components) + tuple(shifted))


def cup(group: AbelianGroup) -> Cobordism:
    """The disc 0 -> 1."""
    return Cobordism(group, 0, 1,
                     (Component(0, frozenset(), frozenset({0}), group.identity()),))


def cap(group: AbelianGroup) -> Cobordism:
    """The disc 1 -> 0."""
    return Cobordism(group, 1, 0,
                     (Component(0, frozenset({0}), frozenset(), group.identity()),))


def pants(group: AbelianGroup) -> Cobordism:
    """The pair of pants 2 -> 1."""
    return Cobordism(group, 2, 1,
                     (Component(0, frozenset({0, 1}), frozenset({0}), group.identity()),))


def copants(group: AbelianGroup) -> Cobordism:
    """The reversed pair of pants 1 -> 2."""
    return Cobordism(group, 1, 2,
                     (Component(0, frozenset({0}), frozenset({0, 1}), group.identity()),))


def cylinder(label: GroupElement, genus: int = 0) -> Cobordism:
    """A 1 -> 1 tube carrying a label, optionally with handles."""
    return Cobordism(label.group, 1, 1,
                     (Component(genus, frozenset({0}), frozenset({0}), label),))


def swap(group: AbelianGroup) -> Cobordism:
    """Two crossing cylinders: input j to output 1 - j."""
    one = group.identity()
    return Cobordism(group, 2, 2, (
        Component(0, frozenset({0}), frozenset({1}), one),
        Component(0, frozenset({1}), frozenset({0}), one)))


def closed(genus: int, label: GroupElement) -> Cobordism:
    """A closed labelled surface as an endomorphism of zero circles."""
    return Cobordism(label.group, 0, 0,
                     (Component(genus, frozenset(), frozenset(), label),))


def permutation_cobordism(images: tuple[int, ...], group: AbelianGroup) -> Cobordism:
    """Unlabelled cylinders wiring input j to output images[j]."""
    one = group.identity()
    comps = [Component(0, frozenset({j}), frozenset({t}), one)
             for j, t in enumerate(images)]
    return Cobordism(group, len(images), len(images), tuple(comps))


def erase_labels(c: Cobordism) -> Cobordism:
    """Forget all labels, landing in the trivial group."""
    one = TRIVIAL.identity()
    comps = [Component(p.genus, p.inputs, p.outputs, one) for p in c.components]
    return Cobordism(TRIVIAL, c.source, c.target, tuple(comps))
