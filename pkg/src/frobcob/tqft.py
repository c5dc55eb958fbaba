"""Evaluation of labelled cobordisms in a Frobenius algebra with symmetry.

Each connected component with a input ports, b output ports, genus g
and label x evaluates to

    (iterated comultiplication to b outputs)
      . action of x . handle^g . (iterated multiplication of a inputs)

where zero inputs insert the unit and zero outputs apply the counit; a
closed component is therefore the 1x1 scalar counit(i(x)(handle^g(1))).
A whole cobordism gathers its source factors component by component,
tensors the component maps in canonical component order, and scatters
the results to the target positions; closed components multiply the
result as scalars.

extract() reads the algebra back out of an evaluator (product from the
pants, unit from the cup, counit from the cap, generator actions from
labelled cylinders) and revalidates it; by construction the two
directions invert each other field-exactly, and roundtrip_report()
checks precisely that, along with functoriality, monoidality and
slice-by-slice agreement on random words.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cobordism import (Cobordism, Component, cap, compose, cup, cylinder,
                        identity, pants, tensor)
from .frobenius import (AFrobeniusAlgebra, CheckReport, FrobeniusAlgebra,
                        check_action, check_frobenius)
from .groups import GroupMismatchError
from .linalg import LinearMap, Permutation, kron_all, permute_factors
from .scalar import ONE
from .words import Atom, Word


class ConsistencyError(RuntimeError):
    """An extracted structure failed validation; this indicates a bug."""


class WordShapeError(ValueError):
    """Adjacent slices of a word do not fit together."""

    def __init__(self, slice_index: int, expected: int, got: int):
        self.slice_index = slice_index
        super().__init__(
            f"slice {slice_index} consumes {got} strand(s) but {expected} arrive")


class Evaluator:
    """Evaluates cobordisms over a fixed AFrobeniusAlgebra, with caching."""

    def __init__(self, algebra: AFrobeniusAlgebra):
        self.algebra = algebra
        v = algebra.algebra
        self._mult = [None, LinearMap.identity(v.dim, 1), v.multiplication]
        self._comult = [None, LinearMap.identity(v.dim, 1), v.comultiplication]
        self._handle_pows = [LinearMap.identity(v.dim, 1)]
        self._component_cache: dict[tuple, LinearMap] = {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def group(self):
        return self.algebra.group

    def iterated_multiplication(self, a: int) -> LinearMap:
        """V^(x)a -> V; a = 0 inserts the unit."""
        if a == 0:
            return self.algebra.algebra.unit_map
        while len(self._mult) <= a:
            prev = self._mult[-1]
            step = prev.kron(LinearMap.identity(self.dim, 1))
            self._mult.append(self.algebra.algebra.multiplication @ step)
        return self._mult[a]

    def iterated_comultiplication(self, b: int) -> LinearMap:
        """V -> V^(x)b; b = 0 applies the counit."""
        if b == 0:
            return self.algebra.algebra.counit_map
        while len(self._comult) <= b:
            prev = self._comult[-1]
            step = prev.kron(LinearMap.identity(self.dim, 1))
            self._comult.append(step @ self.algebra.algebra.comultiplication)
        return self._comult[b]

    def handle_power(self, g: int) -> LinearMap:
        while len(self._handle_pows) <= g:
            self._handle_pows.append(self._handle_pows[-1] @ self.algebra.algebra.handle)
        return self._handle_pows[g]

    def evaluate_component(self, comp: Component) -> LinearMap:
        a, b = len(comp.inputs), len(comp.outputs)
        key = (a, b, comp.genus, comp.label.free, comp.label.torsion)
        hit = self._component_cache.get(key)
        if hit is not None:
            return hit
        out = (self.iterated_comultiplication(b)
               @ self.algebra.action_of(comp.label)
               @ self.handle_power(comp.genus)
               @ self.iterated_multiplication(a))
        self._component_cache[key] = out
        return out

    def evaluate(self, cob: Cobordism) -> LinearMap:
        if cob.group != self.group:
            raise GroupMismatchError(
                f"cobordism over {cob.group}, evaluator over {self.group}")
        d = self.dim
        open_maps = []
        gather: list[int] = []
        scatter: list[int] = []
        scalar = ONE
        for comp in cob.components:
            m = self.evaluate_component(comp)
            if comp.is_closed():
                scalar = scalar * m.entry(0, 0)
            else:
                open_maps.append(m)
                gather.extend(sorted(comp.inputs))
                scatter.extend(sorted(comp.outputs))
        block = kron_all(open_maps, d)
        p_in = permute_factors(Permutation(tuple(gather)).inverse(), d)
        p_out = permute_factors(Permutation(tuple(scatter)), d)
        result = p_out @ block @ p_in
        if scalar != ONE:
            result = result.scale(scalar)
        return result

    def atom_matrix(self, atom: Atom) -> LinearMap:
        d = self.dim
        v = self.algebra.algebra
        k = atom.kind
        if k == "id":
            return LinearMap.identity(d, 1)
        if k == "cup":
            return v.unit_map
        if k == "cap":
            return v.counit_map
        if k == "pants":
            return v.multiplication
        if k == "copants":
            return v.comultiplication
        if k == "swap":
            return permute_factors(Permutation((1, 0)), d)
        if k == "cyl":
            return self.algebra.action_of(atom.label)
        m = (v.counit_map @ self.algebra.action_of(atom.label)
             @ self.handle_power(atom.genus) @ v.unit_map)
        return m

    def evaluate_word(self, word: Word) -> LinearMap:
        """Multiply the slice matrices; equals evaluating the composed cobordism."""
        if word.group != self.group:
            raise GroupMismatchError(
                f"word over {word.group}, evaluator over {self.group}")
        current = LinearMap.identity(self.dim, word.source)
        for idx, s in enumerate(word.slices):
            mats = kron_all([self.atom_matrix(a) for a in s], self.dim)
            if mats.arity_in != current.arity_out:
                raise WordShapeError(idx, current.arity_out, mats.arity_in)
            current = mats @ current
        return current


def evaluate(cob: Cobordism, algebra: AFrobeniusAlgebra) -> LinearMap:
    return Evaluator(algebra).evaluate(cob)


def evaluate_component(comp: Component, algebra: AFrobeniusAlgebra) -> LinearMap:
    return Evaluator(algebra).evaluate_component(comp)


def evaluate_word(word: Word, algebra: AFrobeniusAlgebra) -> LinearMap:
    return Evaluator(algebra).evaluate_word(word)


def extract(ev: Evaluator) -> AFrobeniusAlgebra:
    """Read the algebra back out of an evaluator and revalidate it.

    Raises ConsistencyError if the extracted structure fails validation,
    which cannot happen for a valid input algebra.
    """
    out = _extract_raw(ev)
    frob = check_frobenius(out.algebra)
    if not frob:
        raise ConsistencyError(f"extracted algebra failed validation: {frob}")
    act = check_action(out)
    if not act:
        raise ConsistencyError(f"extracted action failed validation: {act}")
    return out


def _extract_raw(ev: Evaluator) -> AFrobeniusAlgebra:
    a = ev.algebra.group
    d = ev.dim
    mult = ev.evaluate(pants(a))
    unit = ev.evaluate(cup(a))
    counit = ev.evaluate(cap(a))
    structure = [[[mult.entry(k, i * d + j) for k in range(d)]
                  for j in range(d)] for i in range(d)]
    algebra = FrobeniusAlgebra(
        ev.algebra.algebra.basis_names,
        structure,
        [unit.entry(k, 0) for k in range(d)],
        [counit.entry(0, k) for k in range(d)])
    actions = tuple(ev.evaluate(cylinder(g)) for g in a.generators())
    return AFrobeniusAlgebra(algebra, a, actions)


@dataclass
class SuiteResult:
    passed: int = 0
    failed: int = 0
    witness: str | None = None

    def record(self, ok: bool, witness: str):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.witness is None:
                self.witness = witness

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def __str__(self):
        return f"{self.passed} passed, {self.failed} failed"


@dataclass
class RoundtripReport:
    frobenius: CheckReport
    action: CheckReport
    extraction: CheckReport
    placements: SuiteResult
    functoriality: SuiteResult
    monoidality: SuiteResult
    slicing: SuiteResult

    @property
    def ok(self) -> bool:
        return (self.frobenius.ok and self.action.ok and self.extraction.ok
                and self.placements.ok and self.functoriality.ok
                and self.monoidality.ok and self.slicing.ok)


def roundtrip_report(algebra: AFrobeniusAlgebra, *, seed: int = 0,
                     iterations: int = 200) -> RoundtripReport:
    """Full build/extract/law sweep; robust to invalid input algebras."""
    from .words import Atom, Word, random_cobordism, random_word

    frob = check_frobenius(algebra.algebra)
    act = check_action(algebra)

    # The report must come back even for corrupted inputs, where building
    # the evaluator (comultiplication needs the inverse Gram matrix) or a
    # single evaluation can raise; such phases are recorded as failures.
    placements = SuiteResult()
    functoriality = SuiteResult()
    monoidality = SuiteResult()
    slicing = SuiteResult()
    try:
        ev = Evaluator(algebra)
    except Exception as e:
        reason = f"evaluator construction failed: {e}"
        extraction = CheckReport(False, "round trip", reason)
        for suite in (placements, functoriality, monoidality, slicing):
            suite.record(False, reason)
        return RoundtripReport(frob, act, extraction, placements,
                               functoriality, monoidality, slicing)

    try:
        back = _extract_raw(ev)
        if back == algebra:
            extraction = CheckReport(True)
        else:
            extraction = CheckReport(False, "round trip",
                                     "extracted structure differs from the input")
    except Exception as e:  # a singular action matrix, for instance
        extraction = CheckReport(False, "round trip", str(e))

    # The two tensor placements must be compared slice-wise: as cobordisms
    # they fuse into the same canonical form, so only the word-level matrix
    # products can expose a non-module action.
    a = algebra.group
    gens = a.generators()
    idat = Atom("id")
    try:
        for g in gens:
            fused = ev.evaluate(compose(cylinder(g), pants(a)))
            left = Word(a, ((Atom("cyl", g), idat), (Atom("pants"),)))
            right = Word(a, ((idat, Atom("cyl", g)), (Atom("pants"),)))
            ok = (ev.evaluate_word(left) == fused
                  and ev.evaluate_word(right) == fused)
            placements.record(ok,
                              f'word: "{left.to_text()}" vs "pants ; cyl[{g}]"')
        for g in gens:
            for h in gens:
                lhs = ev.evaluate(cylinder(g)) @ ev.evaluate(cylinder(h))
                placements.record(lhs == ev.evaluate(cylinder(g * h)),
                                  f'word: "cyl[{h}] ; cyl[{g}]" vs "cyl[{g * h}]"')
    except Exception as e:
        placements.record(False, f"evaluation aborted: {e}")

    rng = random.Random(seed)
    try:
        for _ in range(iterations):
            word = random_word(rng, a, ev.dim)
            whole = word.to_cobordism()
            sliced = ev.evaluate_word(word)
            composed = ev.evaluate(whole)
            slicing.record(sliced == composed, f"word: {word.to_text()}")

            cut = rng.randint(0, len(word))
            front, back_part = word.split(cut)
            first = front.to_cobordism() if front.slices else identity(whole.source, a)
            second = back_part.to_cobordism() if back_part.slices else identity(whole.target, a)
            glued = ev.evaluate(compose(second, first))
            chained = ev.evaluate(second) @ ev.evaluate(first)
            functoriality.record(glued == chained,
                                 f"word: {word.to_text()} cut at slice {cut}")

            ca = random_cobordism(rng, a, max_circles=3, max_components=2)
            cb = random_cobordism(rng, a, max_circles=3, max_components=2)
            joint = ev.evaluate(tensor(ca, cb))
            split_eval = ev.evaluate(ca).kron(ev.evaluate(cb))
            monoidality.record(joint == split_eval,
                               f"tensor of {ca} and {cb}")
    except Exception as e:
        slicing.record(False, f"evaluation aborted: {e}")

    return RoundtripReport(frob, act, extraction, placements,
                           functoriality, monoidality, slicing)
