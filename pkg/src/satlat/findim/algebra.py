"""Finite-dimensional algebras by structure constants, their two-sided
ideals as subspaces, and exact saturation/stability over any exact field.

Elements are coefficient tuples over the algebra basis.  Ideals and
submodules are row-reduced subspace matrices, so identity of subspaces is
literal equality of canonical tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import (
    BadIdempotents,
    InfiniteFieldUnsupported,
    NoUnit,
    NotAssociative,
    SpecError,
)
from ..fields import Field
from ..linalg import all_subspaces, in_span, intersect_spans, kernel_dense, rref


class StructAlgebra:
    """An associative unital algebra given by a multiplication table.

    ``table[i][j]`` is the coefficient vector of b_i * b_j.  The unit is
    given as a list of basis labels summing (with coefficient 1) to 1; the
    listed labels double as the distinguished orthogonal idempotent
    decomposition used for the projective generators e_alpha * A.
    """

    def __init__(self, labels, field: Field, table, unit_labels):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.field = field
        self.table = tuple(tuple(tuple(field.of(c) for c in cell) for cell in row) for row in table)
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise SpecError("multiplication table must be dim x dim")
        self.unit_labels = tuple(unit_labels)
        for lab in self.unit_labels:
            if lab not in self.labels:
                raise NoUnit(f"unit component {lab!r} is not a basis label")
        self.unit = self._vector_from_labels(self.unit_labels)
        self._validate()

    def _vector_from_labels(self, labs):
        v = [self.field.zero] * self.dim
        for lab in labs:
            v[self.labels.index(lab)] = self.field.add(
                v[self.labels.index(lab)], self.field.one
            )
        return tuple(v)

    def basis_vector(self, i: int):
        return tuple(
            self.field.one if k == i else self.field.zero for k in range(self.dim)
        )

    def mul(self, u, v):
        field = self.field
        out = [field.zero] * self.dim
        for i, a in enumerate(u):
            if field.is_zero(a):
                continue
            for j, b in enumerate(v):
                if field.is_zero(b):
                    continue
                ab = field.mul(a, b)
                for k, c in enumerate(self.table[i][j]):
                    if not field.is_zero(c):
                        out[k] = field.add(out[k], field.mul(ab, c))
        return tuple(out)

    def _validate(self):
        field = self.field
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self.mul(self.table[i][j], self.basis_vector(k))
                    rhs = self.mul(self.basis_vector(i), self.table[j][k])
                    if lhs != rhs:
                        raise NotAssociative(i, j, k)
        for i in range(d):
            b = self.basis_vector(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise NoUnit(f"declared unit does not fix basis element {self.labels[i]}")
        # the unit labels must be orthogonal idempotents
        for la in self.unit_labels:
            ea = self.basis_vector(self.labels.index(la))
            if self.mul(ea, ea) != ea:
                raise BadIdempotents(f"{la} is not idempotent")
            for lb in self.unit_labels:
                if la == lb:
                    continue
                eb = self.basis_vector(self.labels.index(lb))
                if any(not field.is_zero(c) for c in self.mul(ea, eb)):
                    raise BadIdempotents(f"{la} and {lb} are not orthogonal")

    @cached_property
    def idempotents(self):
        return tuple(
            self.basis_vector(self.labels.index(lab)) for lab in self.unit_labels
        )

    def right_mult_matrix(self, j: int):
        """Matrix of v -> v * b_j on row vectors."""
        return tuple(self.table[i][j] for i in range(self.dim))

    def left_mult_matrix(self, j: int):
        """Matrix of v -> b_j * v on row vectors."""
        return tuple(self.table[j][i] for i in range(self.dim))

    def element_str(self, v) -> str:
        field = self.field
        parts = [
            (f"{field.render(c)}*{lab}" if c != field.one else lab)
            for c, lab in zip(v, self.labels)
            if not field.is_zero(c)
        ]
        return " + ".join(parts) if parts else "0"

    def is_commutative(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def __repr__(self):
        return f"StructAlgebra({', '.join(self.labels)}; {self.field})"


def build_algebra(labels, field, products, unit_labels) -> StructAlgebra:
    """Build and validate an algebra from a sparse product map.

    ``products`` maps (label_i, label_j) to a dict {label: coefficient};
    missing pairs multiply to zero.
    """
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    table = [[[field.zero] * d for _ in range(d)] for _ in range(d)]
    for (la, lb), combo in products.items():
        if la not in index or lb not in index:
            raise SpecError(f"unknown label in product ({la}, {lb})")
        for lab, c in combo.items():
            if lab not in index:
                raise SpecError(f"unknown label {lab!r} in product value")
            table[index[la]][index[lb]][index[lab]] = field.of(c)
    return StructAlgebra(labels, field, table, unit_labels)


def upper_triangular_2x2(field: Field) -> StructAlgebra:
    """Upper triangular 2x2 matrices: basis e11, e12, e22."""
    return build_algebra(
        ("e11", "e12", "e22"),
        field,
        {
            ("e11", "e11"): {"e11": 1},
            ("e11", "e12"): {"e12": 1},
            ("e12", "e22"): {"e12": 1},
            ("e22", "e22"): {"e22": 1},
        },
        ("e11", "e22"),
    )


def truncated_poly_algebra(field: Field, nil_degree: int = 3) -> StructAlgebra:
    """k[x]/(x^n): basis 1, x, ..., x^(n-1)."""
    labels = ["e"] + [f"x{i}" if i > 1 else "x" for i in range(1, nil_degree)]
    products = {}
    for i in range(nil_degree):
        for j in range(nil_degree):
            if i + j < nil_degree:
                products[(labels[i], labels[j])] = {labels[i + j]: 1}
    return build_algebra(labels, field, products, ("e",))


# --- ideals as subspaces ----------------------------------------------------------


@dataclass(frozen=True)
class LinIdeal:
    """A subspace of the regular module with verified stability flags."""

    algebra: StructAlgebra
    basis: tuple  # canonical RREF rows
    right_stable: bool
    two_sided: bool

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v) -> bool:
        return in_span(v, self.basis, self.algebra.field)

    def __le__(self, other: "LinIdeal") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __repr__(self):
        kind = "two-sided" if self.two_sided else ("right" if self.right_stable else "subspace")
        return f"<{kind} subspace dim {self.dim} of {self.algebra!r}>"


def lin_ideal(algebra: StructAlgebra, vectors) -> LinIdeal:
    """Canonicalize a spanning set and verify its stability flags."""
    field = algebra.field
    basis = rref(list(vectors), field, algebra.dim)
    right = all(
        in_span(algebra.mul(v, algebra.basis_vector(j)), basis, field)
        for v in basis
        for j in range(algebra.dim)
    )
    left = all(
        in_span(algebra.mul(algebra.basis_vector(j), v), basis, field)
        for v in basis
        for j in range(algebra.dim)
    )
    return LinIdeal(algebra, basis, right_stable=right, two_sided=right and left)


def right_ideal_closure(algebra: StructAlgebra, vectors) -> LinIdeal:
    """Smallest right ideal containing the vectors."""
    field = algebra.field
    current = rref(list(vectors), field, algebra.dim)
    while True:
        new = list(current)
        for v in current:
            for j in range(algebra.dim):
                w = algebra.mul(v, algebra.basis_vector(j))
                if not in_span(w, current, field):
                    new.append(w)
        nxt = rref(new, field, algebra.dim)
        if nxt == current:
            return lin_ideal(algebra, current)
        current = nxt


def enumerate_two_sided_ideals(algebra: StructAlgebra):
    """All two-sided ideals, exhaustively, in a deterministic order."""
    if not algebra.field.is_finite():
        raise InfiniteFieldUnsupported("ideal enumeration needs a finite field")
    out = []
    for sub in all_subspaces(algebra.dim, algebra.field):
        ideal = lin_ideal(algebra, sub)
        if ideal.two_sided:
            out.append(ideal)
    out.sort(key=lambda i: (i.dim, i.basis))
    return out


def sum_ideals(a: LinIdeal, b: LinIdeal) -> LinIdeal:
    return lin_ideal(a.algebra, list(a.basis) + list(b.basis))


def intersect_ideals(a: LinIdeal, b: LinIdeal) -> LinIdeal:
    inter = intersect_spans(a.basis, b.basis, a.algebra.field, a.algebra.dim)
    return lin_ideal(a.algebra, inter)


def product_ideals(a: LinIdeal, b: LinIdeal) -> LinIdeal:
    prods = [a.algebra.mul(u, v) for u in a.basis for v in b.basis]
    return lin_ideal(a.algebra, prods)


def colon_exact(k: LinIdeal, i: LinIdeal) -> LinIdeal:
    """{z in A : z * I <= K}, solved as one linear system."""
    alg = k.algebra
    field = alg.field
    d = alg.dim
    # rows of the constraint matrix: for each unknown-coordinate e_t and
    # each ideal basis vector w: the class of e_t * w modulo K
    complement = _complement_projector(k, alg)
    rows = []
    for t in range(d):
        et = alg.basis_vector(t)
        row = []
        for w in i.basis:
            row.extend(complement(alg.mul(et, w)))
        rows.append(tuple(row))
    width = len(rows[0]) if rows and rows[0] else 0
    if width == 0:
        return lin_ideal(alg, [alg.basis_vector(t) for t in range(d)])
    coeffs = kernel_dense(rows, field, width, transpose=True)
    vectors = []
    for combo in coeffs:
        v = [field.zero] * d
        for t, c in enumerate(combo):
            if not field.is_zero(c):
                v = [field.add(x, field.mul(c, y)) for x, y in zip(v, alg.basis_vector(t))]
        vectors.append(tuple(v))
    return lin_ideal(alg, vectors)


def _complement_projector(k: LinIdeal, alg: StructAlgebra):
    """Reduce a vector mod K and return its non-pivot coordinates."""
    field = alg.field
    pivots = []
    for row in k.basis:
        pivots.append(next(i for i, x in enumerate(row) if not field.is_zero(x)))
    free = [i for i in range(alg.dim) if i not in pivots]

    def project(v):
        v = list(v)
        for row, piv in zip(k.basis, pivots):
            if not field.is_zero(v[piv]):
                f = v[piv]
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        return [v[i] for i in free]

    return project


def saturate_exact(k: LinIdeal, i: LinIdeal, cap: int | None = None) -> LinIdeal:
    """Exact saturation of K w.r.t. I-power torsion: colon to a fixpoint.

    The fixpoint is reached in at most dim(A) colon steps since each
    proper step strictly increases the dimension.
    """
    if not i.two_sided:
        raise SpecError("saturation needs a two-sided base ideal")
    cap = cap if cap is not None else k.algebra.dim + 1
    current = k
    for _ in range(cap):
        nxt = colon_exact(current, i)
        if nxt.basis == current.basis:
            return current
        current = nxt
    return current


def stability_predicates(k: LinIdeal, i: LinIdeal):
    """(torsionfree_generated, essentially_stable, y_closed), all exact.

    The chain (I^n K)~ is computed until the presaturations I^n K
    stabilize, which happens within dim(A) steps.
    """
    if not i.two_sided or not k.right_stable:
        raise SpecError("predicates need two-sided I and a right ideal K")
    sat = saturate_exact(k, i)
    tf = sat.basis == k.basis
    chain = [sat]
    pres = k
    while True:
        nxt_pres = product_ideals(i, pres)
        if nxt_pres.basis == pres.basis:
            break
        pres = nxt_pres
        chain.append(saturate_exact(pres, i))
    stable = all(term.basis == chain[0].basis for term in chain)
    y_closed = tf and stable
    return tf, stable, y_closed
