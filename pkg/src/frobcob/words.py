"""Words in the generating cobordisms, and random sampling of them.

A word is a sequence of slices; a slice is a tensor row of atoms drawn
from the generator set (id, cup, cap, pants, copants, swap, labelled
cylinders, closed surfaces).  Words exist so that slice-by-slice
evaluation can be compared against evaluation of the fully composed
cobordism, and so failing cases can be printed back in expression
syntax.

The random word sampler respects a strand bound and rejects words
whose composite (or any prefix/suffix composite) would evaluate to a
matrix with a huge number of nonzero entries; without the guard a
6->1->6 funnel composes to a map with millions of entries, which is
pointless for a test distribution.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce

from .cobordism import (Cobordism, cap, closed, compose, copants, cup, cylinder,
                        identity, pants, swap, tensor)
from .groups import AbelianGroup, GroupElement

_ARITY = {
    "id": (1, 1),
    "cup": (0, 1),
    "cap": (1, 0),
    "pants": (2, 1),
    "copants": (1, 2),
    "swap": (2, 2),
    "cyl": (1, 1),
    "closed": (0, 0),
}


@dataclass(frozen=True)
class Atom:
    kind: str
    label: GroupElement | None = None
    genus: int = 0

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind in ("cyl", "closed") and self.label is None:
            raise ValueError(f"{self.kind} atoms need a label")

    @property
    def source(self) -> int:
        return _ARITY[self.kind][0]

    @property
    def target(self) -> int:
        return _ARITY[self.kind][1]

    def to_cobordism(self, group: AbelianGroup) -> Cobordism:
        k = self.kind
        if k == "id":
            return identity(1, group)
        if k == "cup":
            return cup(group)
        if k == "cap":
            return cap(group)
        if k == "pants":
            return pants(group)
        if k == "copants":
            return copants(group)
        if k == "swap":
            return swap(group)
        if k == "cyl":
            return cylinder(self.label)
        return closed(self.genus, self.label)

    def to_text(self) -> str:
        if self.kind == "cyl":
            return f"cyl[{self.label}]"
        if self.kind == "closed":
            return f"closed[{self.genus};{self.label}]"
        return self.kind


Slice = tuple[Atom, ...]


@dataclass(frozen=True)
class Word:
    group: AbelianGroup
    slices: tuple[Slice, ...]

    @property
    def source(self) -> int:
        if not self.slices:
            return 0
        return sum(a.source for a in self.slices[0])

    @property
    def target(self) -> int:
        if not self.slices:
            return 0
        return sum(a.target for a in self.slices[-1])

    def slice_cobordism(self, index: int) -> Cobordism:
        atoms = self.slices[index]
        cobs = [a.to_cobordism(self.group) for a in atoms]
        return reduce(tensor, cobs) if cobs else identity(0, self.group)

    def to_cobordism(self) -> Cobordism:
        acc = identity(self.source, self.group)
        for i in range(len(self.slices)):
            acc = compose(self.slice_cobordism(i), acc)
        return acc

    def to_text(self) -> str:
        return " ; ".join(" | ".join(a.to_text() for a in s) for s in self.slices)

    def split(self, cut: int) -> tuple["Word", "Word"]:
        return (Word(self.group, self.slices[:cut]),
                Word(self.group, self.slices[cut:]))

    def erase_labels(self) -> "Word":
        from .groups import TRIVIAL
        one = TRIVIAL.identity()
        out = []
        for s in self.slices:
            out.append(tuple(
                Atom(a.kind, one, a.genus) if a.kind in ("cyl", "closed") else Atom(a.kind)
                for a in s))
        return Word(TRIVIAL, tuple(out))

    def __len__(self):
        return len(self.slices)


def random_element(rng: random.Random, group: AbelianGroup) -> GroupElement:
    free = tuple(rng.randint(-3, 3) for _ in range(group.free_rank))
    tor = tuple(rng.randrange(m) for m in group.torsion_orders)
    return GroupElement(group, free, tor)


def _map_cost(a: int, b: int, d: int) -> int:
    # Upper bound on the nonzero count of one component's evaluation.
    if a == 0 and b == 0:
        return 1
    return d ** ((a - 1 if a else 0) + (b - 1 if b else 0) + 1)


def cobordism_cost(c: Cobordism, d: int) -> int:
    cost = 1
    for comp in c.components:
        cost *= _map_cost(len(comp.inputs), len(comp.outputs), d)
        if cost > 10 ** 9:
            break
    return cost


def _word_cost_ok(word: Word, d: int, limit: int) -> bool:
    prefix = None
    for i in range(len(word.slices)):
        sc = word.slice_cobordism(i)
        prefix = sc if prefix is None else compose(sc, prefix)
        if cobordism_cost(prefix, d) > limit:
            return False
    suffix = None
    for i in range(len(word.slices) - 1, -1, -1):
        sc = word.slice_cobordism(i)
        suffix = sc if suffix is None else compose(suffix, sc)
        if cobordism_cost(suffix, d) > limit:
            return False
    return True


def _random_slice(rng: random.Random, group: AbelianGroup, incoming: int,
                  max_strands: int) -> Slice:
    atoms: list[Atom] = []
    remaining = incoming
    produced = 0
    while remaining > 0:
        budget = max_strands - produced
        options: list[tuple[str, float]] = [("cap", 1.0)]
        if budget >= 1:
            options += [("id", 2.0), ("cyl", 3.0)]
        if remaining >= 2 and budget >= 1:
            options.append(("pants", 2.0))
        if remaining >= 2 and budget >= 2:
            options.append(("swap", 1.5))
        if budget >= 2:
            options.append(("copants", 1.2))
        kinds = [k for k, _ in options]
        weights = [w for _, w in options]
        kind = rng.choices(kinds, weights)[0]
        if kind == "cyl":
            atoms.append(Atom("cyl", random_element(rng, group)))
        else:
            atoms.append(Atom(kind))
        remaining -= _ARITY[kind][0]
        produced += _ARITY[kind][1]
    while produced < max_strands and rng.random() < 0.2:
        if rng.random() < 0.3:
            atoms.append(Atom("closed", random_element(rng, group), rng.randint(0, 2)))
        else:
            atoms.append(Atom("cup"))
            produced += 1
    if not atoms:
        # A slice must contain at least one atom to stay printable.
        if rng.random() < 0.5:
            atoms.append(Atom("cup"))
        else:
            atoms.append(Atom("closed", random_element(rng, group), rng.randint(0, 2)))
    rng.shuffle(atoms)
    return tuple(atoms)


def random_word(rng: random.Random, group: AbelianGroup, dim: int = 4, *,
                max_strands: int = 6, max_slices: int = 8,
                cost_limit: int = 200_000) -> Word:
    """Sample a well-shaped word; deterministic for a given rng state."""
    for _ in range(60):
        strands = rng.randint(0, 3)
        slices = []
        for _ in range(rng.randint(1, max_slices)):
            s = _random_slice(rng, group, strands, max_strands)
            slices.append(s)
            strands = sum(a.target for a in s)
        word = Word(group, tuple(slices))
        if _word_cost_ok(word, dim, cost_limit):
            return word
    # Fall back to a plain cylinder word; reachable only for tiny limits.
    return Word(group, ((Atom("cyl", random_element(rng, group)),),))


def random_cobordism(rng: random.Random, group: AbelianGroup, *,
                     max_circles: int = 4, max_components: int = 4,
                     max_genus: int = 2) -> Cobordism:
    """Sample an arbitrary valid cobordism, not necessarily word-shaped."""
    from .cobordism import Component

    m = rng.randint(0, max_circles)
    n = rng.randint(0, max_circles)
    k = rng.randint(1, max_components)
    buckets_in: list[set[int]] = [set() for _ in range(k)]
    buckets_out: list[set[int]] = [set() for _ in range(k)]
    for j in range(m):
        buckets_in[rng.randrange(k)].add(j)
    for j in range(n):
        buckets_out[rng.randrange(k)].add(j)
    comps = []
    for t in range(k):
        if not buckets_in[t] and not buckets_out[t] and rng.random() < 0.5:
            # Keeping only some empty buckets leaves an occasional closed
            # component in the mix without flooding every sample with them.
            continue
        comps.append(Component(rng.randint(0, max_genus),
                               frozenset(buckets_in[t]),
                               frozenset(buckets_out[t]),
                               random_element(rng, group)))
    return Cobordism(group, m, n, tuple(comps))
