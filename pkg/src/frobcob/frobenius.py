"""Commutative Frobenius algebras over Q(i), with an abelian group action.

A FrobeniusAlgebra is presented by structure constants c[i][j][k] for
the products e_i e_j = sum_k c[i][j][k] e_k, a unit vector and a counit
row theta.  The counit is part of the input data; the Gram pairing
B[i][j] = theta(e_i e_j) must be invertible, and everything else
(copairing, comultiplication, handle operator) is derived from B by
exact linear algebra:

    gamma  = sum_ij Binv[i][j] e_i (x) e_j
    Delta(x) = (x (x) 1) . gamma
    handle = multiplication after Delta

An AFrobeniusAlgebra adds one invertible matrix per group generator;
the generators must commute, satisfy their torsion orders, and act by
module maps: i(a)(x y) = (i(a)x) y = x (i(a)y).

check_frobenius / check_action report rather than raise, naming the
first violated axiom with an explicit witness, so broken presentations
can be examined.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .groups import TRIVIAL, AbelianGroup, GroupElement, GroupMismatchError
from .linalg import LinearMap, SingularMatrixError, invert
from .scalar import ONE, ZERO, Scalar, as_scalar


class NondegeneracyError(ValueError):
    """Raised when the Gram pairing of a presented algebra is singular."""


class CheckReport:
    """Outcome of an axiom sweep: ok, or the first violation with a witness."""

    def __init__(self, ok: bool, axiom: str | None = None, witness: str | None = None):
        self.ok = ok
        self.axiom = axiom
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"{self.axiom}: {self.witness}"

    def __repr__(self):
        return f"CheckReport({self})"


def _vec(values, dim: int, what: str) -> tuple[Scalar, ...]:
    out = tuple(as_scalar(v) for v in values)
    if len(out) != dim:
        raise ValueError(f"{what} has {len(out)} entries, expected {dim}")
    return out


def _lincomb(coeffs: Sequence[Scalar], names: Sequence[str]) -> str:
    parts = []
    for c, n in zip(coeffs, names):
        if not c:
            continue
        if c == ONE:
            parts.append(n)
        elif c == -1:
            parts.append(f"-{n}")
        else:
            parts.append(f"({c}) {n}" if c.im else f"{c} {n}")
    return " + ".join(parts) if parts else "0"


class FrobeniusAlgebra:
    """A finite-dimensional commutative Frobenius algebra with chosen basis."""

    def __init__(self, basis_names: Sequence[str], structure, unit, counit):
        names = tuple(str(n) for n in basis_names)
        if not names:
            raise ValueError("the algebra needs at least one basis vector")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate basis names: {names}")
        d = len(names)
        if len(structure) != d:
            raise ValueError(f"structure constants need {d} rows, got {len(structure)}")
        rows = []
        for i, plane in enumerate(structure):
            if len(plane) != d:
                raise ValueError(f"structure constants row {i} has {len(plane)} columns")
            rows.append(tuple(_vec(v, d, f"product c[{i}][{j}]")
                              for j, v in enumerate(plane)))
        self.basis_names = names
        self.structure = tuple(rows)
        self.unit = _vec(unit, d, "unit")
        self.counit = _vec(counit, d, "counit")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def multiply(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Product of two coefficient vectors."""
        d = self.dim
        out = [ZERO] * d
        for i in range(d):
            if not x[i]:
                continue
            for j in range(d):
                if not y[j]:
                    continue
                f = x[i] * y[j]
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        out[k] = out[k] + f * c
        return tuple(out)

    @cached_property
    def multiplication(self) -> LinearMap:
        """The product as a map V (x) V -> V."""
        d = self.dim
        entries = {}
        for i in range(d):
            for j in range(d):
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        entries[(k, i * d + j)] = c
        return LinearMap(d, 1, 2, entries)

    @cached_property
    def unit_map(self) -> LinearMap:
        return LinearMap(self.dim, 1, 0,
                         {(k, 0): v for k, v in enumerate(self.unit) if v})

    @cached_property
    def counit_map(self) -> LinearMap:
        return LinearMap(self.dim, 0, 1,
                         {(0, k): v for k, v in enumerate(self.counit) if v})

    @cached_property
    def gram(self) -> LinearMap:
        """B[i][j] = counit(e_i e_j)."""
        d = self.dim
        entries = {}
        for i in range(d):
            for j in range(d):
                s = ZERO
                for k, c in enumerate(self.structure[i][j]):
                    if c and self.counit[k]:
                        s = s + c * self.counit[k]
                if s:
                    entries[(i, j)] = s
        return LinearMap(d, 1, 1, entries)

    @cached_property
    def gram_inverse(self) -> LinearMap:
        try:
            return invert(self.gram)
        except SingularMatrixError as e:
            raise NondegeneracyError(
                f"counit form is degenerate: Gram matrix singular at stage {e.stage}") from e

    @cached_property
    def copairing(self) -> LinearMap:
        """gamma as a column V^(x)0 -> V (x) V."""
        d = self.dim
        entries = {}
        for (i, j), v in self.gram_inverse.items():
            entries[(i * d + j, 0)] = v
        return LinearMap(d, 2, 0, entries)

    @cached_property
    def comultiplication(self) -> LinearMap:
        """Delta(x) = (x (x) 1) . gamma as a map V -> V (x) V."""
        d = self.dim
        binv = self.gram_inverse
        entries: dict[tuple[int, int], Scalar] = {}
        for k in range(d):
            for (a, j), w in binv.items():
                for i, c in enumerate(self.structure[k][a]):
                    if c:
                        key = (i * d + j, k)
                        prev = entries.get(key)
                        v = w * c
                        entries[key] = v if prev is None else prev + v
        return LinearMap(d, 2, 1, entries)

    @cached_property
    def handle(self) -> LinearMap:
        """Multiplication after comultiplication; V -> V."""
        return self.multiplication @ self.comultiplication

    def __eq__(self, other):
        if not isinstance(other, FrobeniusAlgebra):
            return NotImplemented
        return (self.basis_names == other.basis_names
                and self.structure == other.structure
                and self.unit == other.unit
                and self.counit == other.counit)

    def __repr__(self):
        return f"<FrobeniusAlgebra dim={self.dim} basis={','.join(self.basis_names)}>"


def check_frobenius(algebra: FrobeniusAlgebra) -> CheckReport:
    """Validate commutativity, associativity, the unit law and nondegeneracy."""
    d = algebra.dim
    c = algebra.structure
    names = algebra.basis_names

    for i in range(d):
        for j in range(i + 1, d):
            if c[i][j] != c[j][i]:
                return CheckReport(
                    False, "commutativity",
                    f"(i={i}, j={j}): {names[i]}*{names[j]} = {_lincomb(c[i][j], names)}"
                    f" but {names[j]}*{names[i]} = {_lincomb(c[j][i], names)}")

    basis = [tuple(ONE if t == k else ZERO for t in range(d)) for k in range(d)]
    for i in range(d):
        for j in range(d):
            left_inner = algebra.multiply(basis[i], basis[j])
            for k in range(d):
                lhs = algebra.multiply(left_inner, basis[k])
                rhs = algebra.multiply(basis[i], algebra.multiply(basis[j], basis[k]))
                if lhs != rhs:
                    return CheckReport(
                        False, "associativity",
                        f"(i={i}, j={j}, k={k}):"
                        f" ({names[i]}*{names[j]})*{names[k]} = {_lincomb(lhs, names)}"
                        f" but {names[i]}*({names[j]}*{names[k]}) = {_lincomb(rhs, names)}")

    for j in range(d):
        prod = algebra.multiply(algebra.unit, basis[j])
        if prod != basis[j]:
            return CheckReport(
                False, "unit law",
                f"(j={j}): unit*{names[j]} = {_lincomb(prod, names)}")

    try:
        algebra.gram_inverse
    except NondegeneracyError as e:
        return CheckReport(False, "nondegeneracy", str(e))

    return CheckReport(True)


class AFrobeniusAlgebra:
    """A Frobenius algebra together with a group acting by module maps.

    generator_actions lists one dim x dim matrix per generator of the
    group, free generators first and then the torsion generators, in
    the same order as AbelianGroup.generators().
    """

    def __init__(self, algebra: FrobeniusAlgebra, group: AbelianGroup = TRIVIAL,
                 generator_actions: Sequence[LinearMap] = ()):
        actions = tuple(generator_actions)
        if len(actions) != group.num_generators:
            raise ValueError(
                f"{group} has {group.num_generators} generators,"
                f" got {len(actions)} action matrices")
        for m in actions:
            if not isinstance(m, LinearMap):
                raise TypeError(f"action must be a LinearMap, got {m!r}")
            if m.dim != algebra.dim or m.arity_in != 1 or m.arity_out != 1:
                raise ValueError(
                    f"action must be a {algebra.dim}x{algebra.dim} map on V, got {m!r}")
        self.algebra = algebra
        self.group = group
        self.generator_actions = actions
        self._action_cache: dict[tuple, LinearMap] = {}
        self._inverse_cache: dict[int, LinearMap] = {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def _generator_power(self, index: int, e: int) -> LinearMap:
        base = self.generator_actions[index]
        if e < 0:
            if index not in self._inverse_cache:
                self._inverse_cache[index] = invert(base)
            base = self._inverse_cache[index]
            e = -e
        out = LinearMap.identity(self.dim, 1)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base if e > 1 else base
            e >>= 1
        return out

    def action_of(self, g: GroupElement) -> LinearMap:
        """The matrix for an arbitrary element: product of generator powers."""
        if g.group != self.group:
            raise GroupMismatchError(f"element of {g.group} acting through {self.group}")
        key = (g.free, g.torsion)
        hit = self._action_cache.get(key)
        if hit is not None:
            return hit
        out = LinearMap.identity(self.dim, 1)
        exponents = list(g.free) + list(g.torsion)
        for t, e in enumerate(exponents):
            if e:
                out = out @ self._generator_power(t, e)
        self._action_cache[key] = out
        return out

    def __eq__(self, other):
        if not isinstance(other, AFrobeniusAlgebra):
            return NotImplemented
        return (self.algebra == other.algebra
                and self.group == other.group
                and self.generator_actions == other.generator_actions)

    def __repr__(self):
        return f"<AFrobeniusAlgebra dim={self.dim} group={self.group}>"


def check_action(w: AFrobeniusAlgebra) -> CheckReport:
    """Validate invertibility, torsion orders, commutation and the module condition.

    Assumes the underlying algebra already passes check_frobenius.
    """
    names = w.group.generator_names()
    d = w.dim
    ident = LinearMap.identity(d, 1)

    for t, m in enumerate(w.generator_actions):
        try:
            invert(m)
        except SingularMatrixError as e:
            return CheckReport(
                False, "invertibility",
                f"action of {names[t]} is singular (pivot stage {e.stage})")

    orders = w.group.torsion_orders
    for j, m_order in enumerate(orders):
        t = w.group.free_rank + j
        if w._generator_power(t, m_order) != ident:
            return CheckReport(
                False, "torsion order",
                f"action of {names[t]} does not satisfy {names[t]}^{m_order} = id")

    for a in range(len(w.generator_actions)):
        for b in range(a + 1, len(w.generator_actions)):
            ma, mb = w.generator_actions[a], w.generator_actions[b]
            if ma @ mb != mb @ ma:
                return CheckReport(
                    False, "commutation",
                    f"actions of {names[a]} and {names[b]} do not commute")

    mult = w.algebra.multiplication
    for t, m in enumerate(w.generator_actions):
        after = m @ mult
        on_left = mult @ m.kron(ident)
        on_right = mult @ ident.kron(m)
        if after != on_left or after != on_right:
            bad = _module_witness(w, m)
            return CheckReport(
                False, "module condition",
                f"action of {names[t]} is not a module map: {bad}")

    return CheckReport(True)


def _module_witness(w: AFrobeniusAlgebra, m: LinearMap) -> str:
    d = w.dim
    names = w.algebra.basis_names
    mult = w.algebra.multiplication
    after = m @ mult
    on_left = mult @ m.kron(LinearMap.identity(d, 1))
    for i in range(d):
        for j in range(d):
            col = i * d + j
            a = [after.entry(k, col) for k in range(d)]
            b = [on_left.entry(k, col) for k in range(d)]
            if a != b:
                return (f"on ({names[i]}, {names[j]}):"
                        f" i(x y) = {_lincomb(a, names)} but (i x) y = {_lincomb(b, names)}")
    # Mismatch must then sit on the right-hand placement.
    on_right = mult @ LinearMap.identity(d, 1).kron(m)
    for i in range(d):
        for j in range(d):
            col = i * d + j
            a = [after.entry(k, col) for k in range(d)]
            b = [on_right.entry(k, col) for k in range(d)]
            if a != b:
                return (f"on ({names[i]}, {names[j]}):"
                        f" i(x y) = {_lincomb(a, names)} but x (i y) = {_lincomb(b, names)}")
    return "no pointwise witness found"


def group_algebra(h: AbelianGroup, acting_group: AbelianGroup = TRIVIAL,
                  embed: Sequence[GroupElement] = ()) -> AFrobeniusAlgebra:
    """The group algebra of a finite abelian group, acted on by translation.

    Basis vectors are the elements of h in enumeration order, named
    e0, e1, ...; the unit is the identity element and the counit is the
    dual of the identity basis vector.  embed sends each generator of
    acting_group to an element of h; torsion generators must land on
    elements whose order divides theirs.
    """
    if not h.is_finite():
        raise ValueError(f"group algebra needs a finite group, got {h}")
    elems = list(h.elements())
    index = {e: t for t, e in enumerate(elems)}
    d = len(elems)
    names = [f"e{t}" for t in range(d)]

    structure = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            structure[i][j][index[a * b]] = 1
    unit = [0] * d
    unit[index[h.identity()]] = 1
    counit = [0] * d
    counit[index[h.identity()]] = 1

    gens = acting_group.generators()
    targets = tuple(embed)
    if len(targets) != len(gens):
        raise ValueError(
            f"embedding needs {len(gens)} images for {acting_group}, got {len(targets)}")
    actions = []
    for gen, target, name in zip(gens, targets, acting_group.generator_names()):
        if target.group != h:
            raise GroupMismatchError(f"embedding image {target} does not lie in {h}")
        gen_order = gen.order()
        if gen_order is not None and not (target ** gen_order).is_identity():
            raise ValueError(
                f"embedding violates orders: {name} has order {gen_order}"
                f" but its image {target} has order {target.order()}")
        entries = {(index[target * e], index[e]): ONE for e in elems}
        actions.append(LinearMap(d, 1, 1, entries))

    algebra = FrobeniusAlgebra(names, structure, unit, counit)
    return AFrobeniusAlgebra(algebra, acting_group, tuple(actions))
