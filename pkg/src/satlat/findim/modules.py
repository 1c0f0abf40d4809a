"""Finite-dimensional right modules: action matrices on row vectors,
subquotients, exhaustive submodule enumeration, isomorphism testing, a
canonical small-module corpus, and extension enumeration.

The module-corpus generator requires the algebra basis to be homogeneous
for the Peirce decomposition of the declared idempotents; every algebra in
the supported corpus is.  Parameters that are not forced by the structure
constants are enumerated exhaustively with a candidate bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..errors import CombinatorialBlowup, InfiniteFieldUnsupported, SpecError
from ..linalg import all_subspaces, in_span, kernel_dense, rref
from .algebra import StructAlgebra

ENUMERATION_BOUND = 2**16


def _mat_mul(a, b, field):
    if not a or not b:
        return tuple(tuple() for _ in a)
    cols = len(b[0])
    inner = len(b)
    out = []
    for row in a:
        new = [field.zero] * cols
        for t, x in enumerate(row):
            if field.is_zero(x) or t >= inner:
                continue
            brow = b[t]
            for c in range(cols):
                if not field.is_zero(brow[c]):
                    new[c] = field.add(new[c], field.mul(x, brow[c]))
        out.append(tuple(new))
    return tuple(out)


def _mat_add(a, b, field):
    return tuple(
        tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _mat_scale(c, a, field):
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)


def _zero_matrix(rows, cols, field):
    return tuple(tuple(field.zero for _ in range(cols)) for _ in range(rows))


def _identity(n, field):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class FDModule:
    """Right module: vectors are rows, b_j acts by v -> v @ actions[j]."""

    algebra: StructAlgebra
    dim: int
    actions: tuple  # one dim x dim matrix per algebra basis element

    def act_basis(self, v, j: int):
        field = self.algebra.field
        out = [field.zero] * self.dim
        for i, x in enumerate(v):
            if field.is_zero(x):
                continue
            row = self.actions[j][i]
            for c in range(self.dim):
                if not field.is_zero(row[c]):
                    out[c] = field.add(out[c], field.mul(x, row[c]))
        return tuple(out)

    def act(self, v, elem):
        """v * a for an algebra element given by its coefficient vector."""
        field = self.algebra.field
        out = [field.zero] * self.dim
        for j, c in enumerate(elem):
            if field.is_zero(c):
                continue
            w = self.act_basis(v, j)
            out = [field.add(x, field.mul(c, y)) for x, y in zip(out, w)]
        return tuple(out)

    def validate(self) -> bool:
        """Action matrices respect the structure constants and the unit."""
        field = self.algebra.field
        d = self.algebra.dim
        for i in range(d):
            for j in range(d):
                prod = _mat_mul(self.actions[i], self.actions[j], field)
                expected = _zero_matrix(self.dim, self.dim, field)
                for k, c in enumerate(self.algebra.table[i][j]):
                    if not field.is_zero(c):
                        expected = _mat_add(
                            expected, _mat_scale(c, self.actions[k], field), field
                        )
                if prod != expected:
                    return False
        unit_action = _zero_matrix(self.dim, self.dim, field)
        for j, c in enumerate(self.algebra.unit):
            if not field.is_zero(c):
                unit_action = _mat_add(
                    unit_action, _mat_scale(c, self.actions[j], field), field
                )
        return unit_action == _identity(self.dim, field)

    @cached_property
    def vectors(self):
        if not self.algebra.field.is_finite():
            raise InfiniteFieldUnsupported("vector enumeration needs a finite field")
        elems = list(self.algebra.field.elements())
        return [tuple(v) for v in itertools.product(elems, repeat=self.dim)]

    def __repr__(self):
        return f"<FDModule dim {self.dim} over {self.algebra!r}>"


def regular_module(algebra: StructAlgebra) -> FDModule:
    actions = tuple(algebra.right_mult_matrix(j) for j in range(algebra.dim))
    return FDModule(algebra, algebra.dim, actions)


def zero_module(algebra: StructAlgebra) -> FDModule:
    return FDModule(algebra, 0, tuple(() for _ in range(algebra.dim)))


def _coords_in_basis(v, basis, field):
    """Coordinates of v in the span of (independent) basis rows, or None."""
    if not basis:
        return None if any(not field.is_zero(x) for x in v) else ()
    coords = [field.zero] * len(basis)
    v = list(v)
    for idx, row in enumerate(basis):
        piv = next(i for i, x in enumerate(row) if not field.is_zero(x))
        if not field.is_zero(v[piv]):
            f = field.div(v[piv], row[piv])
            coords[idx] = f
            v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
    if any(not field.is_zero(x) for x in v):
        return None
    return tuple(coords)


def module_from_subspace(parent: FDModule, subspace) -> FDModule:
    """The subspace (assumed action-stable) as a module in its own basis."""
    field = parent.algebra.field
    basis = rref(list(subspace), field, parent.dim)
    k = len(basis)
    actions = []
    for j in range(parent.algebra.dim):
        rows = []
        for v in basis:
            w = parent.act_basis(v, j)
            coords = _coords_in_basis(w, basis, field)
            if coords is None:
                raise SpecError("subspace is not stable under the action")
            rows.append(coords)
        actions.append(tuple(rows))
    return FDModule(parent.algebra, k, tuple(actions))


def quotient_module(parent: FDModule, subspace) -> FDModule:
    """parent / subspace on the non-pivot coordinates."""
    field = parent.algebra.field
    basis = rref(list(subspace), field, parent.dim)
    pivots = [
        next(i for i, x in enumerate(row) if not field.is_zero(x)) for row in basis
    ]
    free = [i for i in range(parent.dim) if i not in pivots]

    def project(v):
        v = list(v)
        for row, piv in zip(basis, pivots):
            if not field.is_zero(v[piv]):
                f = v[piv]
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        return tuple(v[i] for i in free)

    actions = []
    for j in range(parent.algebra.dim):
        rows = []
        for i in free:
            e = tuple(
                field.one if c == i else field.zero for c in range(parent.dim)
            )
            rows.append(project(parent.act_basis(e, j)))
        actions.append(tuple(rows))
    return FDModule(parent.algebra, len(free), tuple(actions))


def direct_sum(modules) -> FDModule:
    modules = list(modules)
    if not modules:
        raise SpecError("direct sum of nothing needs an algebra")
    algebra = modules[0].algebra
    field = algebra.field
    total = sum(m.dim for m in modules)
    actions = []
    for j in range(algebra.dim):
        rows = []
        offset = 0
        for m in modules:
            for r in m.actions[j]:
                rows.append(
                    tuple(field.zero for _ in range(offset))
                    + tuple(r)
                    + tuple(field.zero for _ in range(total - offset - m.dim))
                )
            offset += m.dim
        actions.append(tuple(rows))
    return FDModule(algebra, total, tuple(actions))


def projective_module(algebra: StructAlgebra, alpha: int) -> FDModule:
    """P_alpha = e_alpha * A as a module."""
    reg = regular_module(algebra)
    e = algebra.idempotents[alpha]
    span = [algebra.mul(e, algebra.basis_vector(j)) for j in range(algebra.dim)]
    return module_from_subspace(reg, rref(span, algebra.field, algebra.dim))


def projective_subspace(algebra: StructAlgebra, alpha: int):
    """e_alpha * A as an ambient subspace of the regular module."""
    e = algebra.idempotents[alpha]
    span = [algebra.mul(e, algebra.basis_vector(j)) for j in range(algebra.dim)]
    return rref(span, algebra.field, algebra.dim)


def enumerate_right_submodules(module: FDModule, bound: int = ENUMERATION_BOUND):
    """All action-stable subspaces, each re-verified, in deterministic order."""
    if not module.algebra.field.is_finite():
        raise InfiniteFieldUnsupported("submodule enumeration needs a finite field")
    field = module.algebra.field
    p = len(list(field.elements()))
    if p**module.dim > bound:
        raise CombinatorialBlowup(p**module.dim, bound)
    out = []
    for sub in all_subspaces(module.dim, field):
        stable = all(
            in_span(module.act_basis(v, j), sub, field)
            for v in sub
            for j in range(module.algebra.dim)
        )
        if stable:
            out.append(sub)
    out.sort(key=lambda s: (len(s), s))
    return out


# --- isomorphism ------------------------------------------------------------------


def _intertwiners(m: FDModule, n: FDModule):
    """Basis of {T : A_j^m T = T A_j^n for all j} as dim_m x dim_n matrices."""
    field = m.algebra.field
    if m.dim == 0 or n.dim == 0:
        return []
    unknowns = m.dim * n.dim
    rows = []  # one row per unknown: columns indexed by (j, r, c) constraints
    width = m.algebra.dim * m.dim * n.dim
    for t in range(unknowns):
        tr, tc = divmod(t, n.dim)
        row = [field.zero] * width
        col = 0
        for j in range(m.algebra.dim):
            am = m.actions[j]
            an = n.actions[j]
            for r in range(m.dim):
                for c in range(n.dim):
                    # (A_m T - T A_n)[r][c] coefficient of T[tr][tc]
                    coeff = field.zero
                    if tc == c:
                        coeff = field.add(coeff, am[r][tr])
                    if tr == r:
                        coeff = field.sub(coeff, an[tc][c])
                    row[col] = coeff
                    col += 1
        rows.append(tuple(row))
    combos = kernel_dense(rows, field, width, transpose=True)
    mats = []
    for combo in combos:
        mat = [[field.zero] * n.dim for _ in range(m.dim)]
        for t, v in enumerate(combo):
            tr, tc = divmod(t, n.dim)
            mat[tr][tc] = v
        mats.append(tuple(tuple(r) for r in mat))
    return mats


def modules_isomorphic(m: FDModule, n: FDModule, bound: int = ENUMERATION_BOUND) -> bool:
    """Search the intertwiner space for an invertible element."""
    if m.algebra is not n.algebra and m.algebra.labels != n.algebra.labels:
        return False
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    field = m.algebra.field
    basis = _intertwiners(m, n)
    if not basis:
        return False
    p = len(list(field.elements()))
    if p ** len(basis) > bound:
        raise CombinatorialBlowup(p ** len(basis), bound)
    elems = list(field.elements())
    for combo in itertools.product(elems, repeat=len(basis)):
        if all(field.is_zero(c) for c in combo):
            continue
        mat = _zero_matrix(m.dim, n.dim, field)
        for c, b in zip(combo, basis):
            if not field.is_zero(c):
                mat = _mat_add(mat, _mat_scale(c, b, field), field)
        if len(rref(mat, field, n.dim)) == m.dim:
            return True
    return False


# --- the canonical small-module corpus --------------------------------------------


def _peirce_position(algebra: StructAlgebra, j: int):
    """(alpha, beta) with e_a b_j e_b = b_j; None for idempotent labels."""
    field = algebra.field
    b = algebra.basis_vector(j)
    if algebra.labels[j] in algebra.unit_labels:
        return None
    hits = []
    for a, ea in enumerate(algebra.idempotents):
        for bb, eb in enumerate(algebra.idempotents):
            piece = algebra.mul(ea, algebra.mul(b, eb))
            if any(not field.is_zero(c) for c in piece):
                hits.append((a, bb, piece))
    if len(hits) != 1 or hits[0][2] != b:
        raise SpecError(
            f"basis element {algebra.labels[j]} is not Peirce-homogeneous; "
            "module enumeration needs an adapted basis"
        )
    return hits[0][0], hits[0][1]


def _forcing_schedule(algebra: StructAlgebra):
    """Static order in which non-idempotent actions are forced or free.

    Returns (free_indices, steps) where steps are (k, i, j, coeff, others):
    action_k = coeff^{-1} (action_i @ action_j - sum others).
    """
    field = algebra.field
    assigned = {
        j for j in range(algebra.dim) if algebra.labels[j] in algebra.unit_labels
    }
    remaining = [j for j in range(algebra.dim) if j not in assigned]
    free = []
    steps = []
    while remaining:
        progressed = False
        for i in sorted(assigned):
            for j in sorted(assigned):
                combo = algebra.table[i][j]
                unknown = [
                    k
                    for k, c in enumerate(combo)
                    if not field.is_zero(c) and k not in assigned
                ]
                if len(unknown) == 1:
                    k = unknown[0]
                    others = [
                        (kk, c)
                        for kk, c in enumerate(combo)
                        if not field.is_zero(c) and kk != k
                    ]
                    steps.append((k, i, j, combo[k], others))
                    assigned.add(k)
                    remaining.remove(k)
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:
            k = remaining.pop(0)
            free.append(k)
            assigned.add(k)
    return free, steps


def _modules_of_dims(algebra: StructAlgebra, block_dims, bound):
    """All module structures with the given idempotent block dimensions."""
    field = algebra.field
    total = sum(block_dims)
    offsets = []
    off = 0
    for d in block_dims:
        offsets.append(off)
        off += d
    positions = {}
    for j in range(algebra.dim):
        if algebra.labels[j] not in algebra.unit_labels:
            positions[j] = _peirce_position(algebra, j)
    free, steps = _forcing_schedule(algebra)
    # idempotent actions: block projections
    base_actions = {}
    for a, lab in enumerate(algebra.unit_labels):
        j = algebra.labels.index(lab)
        mat = [[field.zero] * total for _ in range(total)]
        for t in range(offsets[a], offsets[a] + block_dims[a]):
            mat[t][t] = field.one
        base_actions[j] = tuple(tuple(r) for r in mat)
    # free parameters: one (d_a x d_b) block per free basis element
    elems = list(field.elements())
    shapes = {}
    count = 1
    for j in free:
        a, b = positions[j]
        shapes[j] = (a, b)
        count *= len(elems) ** (block_dims[a] * block_dims[b])
        if count > bound:
            raise CombinatorialBlowup(count, bound)
    out = []
    space = [
        itertools.product(elems, repeat=block_dims[shapes[j][0]] * block_dims[shapes[j][1]])
        for j in free
    ]
    for assignment in itertools.product(*space):
        actions = dict(base_actions)
        ok = True
        for j, flat in zip(free, assignment):
            a, b = shapes[j]
            mat = [[field.zero] * total for _ in range(total)]
            it = iter(flat)
            for r in range(offsets[a], offsets[a] + block_dims[a]):
                for c in range(offsets[b], offsets[b] + block_dims[b]):
                    mat[r][c] = next(it)
            actions[j] = tuple(tuple(r) for r in mat)
        for k, i, j2, coeff, others in steps:
            acc = _mat_mul(actions[i], actions[j2], field)
            for kk, c in others:
                acc = _mat_add(acc, _mat_scale(field.neg(c), actions[kk], field), field)
            actions[k] = _mat_scale(field.inv(coeff), acc, field)
        module = FDModule(
            algebra, total, tuple(actions[j] for j in range(algebra.dim))
        )
        if module.validate():
            out.append(module)
    return out


def _iso_fingerprint(module: FDModule):
    """Cheap iso invariants: ranks of actions and of their pairwise products."""
    field = module.algebra.field
    ranks = tuple(
        len(rref(module.actions[j], field, module.dim))
        for j in range(module.algebra.dim)
    )
    prod_ranks = tuple(
        len(
            rref(
                _mat_mul(module.actions[i], module.actions[j], field),
                field,
                module.dim,
            )
        )
        for i in range(module.algebra.dim)
        for j in range(module.algebra.dim)
    )
    return (module.dim, ranks, prod_ranks)


def modules_up_to_iso(algebra: StructAlgebra, max_dim: int, bound: int = ENUMERATION_BOUND):
    """All right modules of dimension <= max_dim up to isomorphism.

    Enumerates action matrices block by block over the idempotent
    decomposition (the basis must be Peirce-homogeneous), buckets by cheap
    rank invariants, and dedupes within buckets by an honest isomorphism
    search.
    """
    if not algebra.field.is_finite():
        raise InfiniteFieldUnsupported("module enumeration needs a finite field")
    reps = [zero_module(algebra)]
    buckets = {}
    n_idem = len(algebra.idempotents)
    for total in range(1, max_dim + 1):
        for block_dims in itertools.product(range(total + 1), repeat=n_idem):
            if sum(block_dims) != total:
                continue
            for candidate in _modules_of_dims(algebra, block_dims, bound):
                key = (block_dims, _iso_fingerprint(candidate))
                bucket = buckets.setdefault(key, [])
                if not any(modules_isomorphic(candidate, seen) for seen in bucket):
                    bucket.append(candidate)
                    reps.append(candidate)
    return reps


# --- extensions -------------------------------------------------------------------


def extensions(sub: FDModule, quot: FDModule, bound: int = ENUMERATION_BOUND):
    """All modules N with the given submodule and quotient structure.

    N lives on sub + quot coordinates, actions are block lower triangular
    [[A_sub, 0], [gamma, A_quot]]; the gammas range over all solutions of
    the multiplicativity and unit constraints.
    """
    algebra = sub.algebra
    field = algebra.field
    if sub.dim == 0:
        return [quot]
    if quot.dim == 0:
        return [sub]
    elems = list(field.elements())
    cells = algebra.dim * quot.dim * sub.dim
    if len(elems) ** cells > bound:
        raise CombinatorialBlowup(len(elems) ** cells, bound)
    out = []
    for flat in itertools.product(elems, repeat=cells):
        gammas = []
        it = iter(flat)
        for _ in range(algebra.dim):
            gammas.append(
                tuple(tuple(next(it) for _ in range(sub.dim)) for _ in range(quot.dim))
            )
        actions = []
        for j in range(algebra.dim):
            rows = [
                tuple(sub.actions[j][r]) + tuple(field.zero for _ in range(quot.dim))
                for r in range(sub.dim)
            ]
            rows += [
                tuple(gammas[j][r]) + tuple(quot.actions[j][r])
                for r in range(quot.dim)
            ]
            actions.append(tuple(rows))
        module = FDModule(algebra, sub.dim + quot.dim, tuple(actions))
        if module.validate():
            out.append(module)
    return out
