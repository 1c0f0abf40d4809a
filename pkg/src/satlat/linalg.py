"""Exact linear algebra helpers.

Two layers: a sparse echelon structure over dict-rows (used for degree
truncations of ideals and for the truncated colon's kernel), and dense
row-matrix routines over small fields (used by the finite-dimensional
layer).  Everything is exact; rows are reduced fully so canonical forms
are unique.
"""

from __future__ import annotations

from .fields import Field


class Echelon:
    """Row space in fully reduced echelon form over sparse dict-rows.

    Rows map column keys to nonzero field elements.  ``key`` orders the
    columns; the pivot of a row is its maximal column.  Inserted rows are
    reduced against existing pivots and existing rows are back-reduced, so
    the stored basis is canonical for the row space.
    """

    def __init__(self, field: Field, key):
        self.field = field
        self.key = key
        self.rows = {}  # pivot -> row dict, monic at pivot

    def _pivot(self, row):
        return max(row, key=self.key)

    def reduce(self, row):
        """Fully reduce a row against the stored basis; returns a new dict."""
        field = self.field
        row = dict(row)
        changed = True
        while changed:
            changed = False
            for col in sorted(row, key=self.key, reverse=True):
                coeff = row.get(col)
                if coeff is None or field.is_zero(coeff):
                    row.pop(col, None)
                    continue
                base = self.rows.get(col)
                if base is None:
                    continue
                for c2, k2 in base.items():
                    v = field.sub(row.get(c2, field.zero), field.mul(coeff, k2))
                    if field.is_zero(v):
                        row.pop(c2, None)
                    else:
                        row[c2] = v
                changed = True
                break
        return {c: v for c, v in row.items() if not field.is_zero(v)}

    def insert(self, row):
        """Add a row to the space.  Returns the reduced residual (empty if dependent)."""
        field = self.field
        residual = self.reduce(row)
        if not residual:
            return residual
        pivot = self._pivot(residual)
        inv = field.inv(residual[pivot])
        residual = {c: field.mul(inv, v) for c, v in residual.items()}
        # back-reduce existing rows by the new one
        for piv, base in list(self.rows.items()):
            coeff = base.get(pivot)
            if coeff is None:
                continue
            for c2, k2 in residual.items():
                v = field.sub(base.get(c2, field.zero), field.mul(coeff, k2))
                if field.is_zero(v):
                    base.pop(c2, None)
                else:
                    base[c2] = v
        self.rows[pivot] = residual
        return residual

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        """Canonical basis rows, sorted by pivot descending."""
        return [
            dict(self.rows[piv])
            for piv in sorted(self.rows, key=self.key, reverse=True)
        ]


def kernel_of_columns(columns, images, field: Field, key):
    """Kernel vectors of the linear map column -> image.

    ``columns`` is a list of column labels; ``images[i]`` is the sparse
    image row of column i.  Returns a list of dicts {column label: coeff}
    spanning the kernel, echelonized over the column positions (so output
    is canonical given the column order).
    """
    tracker_key = lambda idx: -idx  # earlier columns = higher priority pivots
    ech = Echelon(field, key)
    combos = {}  # pivot -> combo dict over column indices
    kernel = []
    for i, label in enumerate(columns):
        row = dict(images[i])
        combo = {i: field.one}
        # reduce row against stored, tracking the combination
        while True:
            row = {c: v for c, v in row.items() if not field.is_zero(v)}
            target = None
            for col in sorted(row, key=key, reverse=True):
                if col in ech.rows:
                    target = col
                    break
            if target is None:
                break
            coeff = row[target]
            base = ech.rows[target]
            base_combo = combos[target]
            for c2, k2 in base.items():
                v = field.sub(row.get(c2, field.zero), field.mul(coeff, k2))
                if field.is_zero(v):
                    row.pop(c2, None)
                else:
                    row[c2] = v
            for c2, k2 in base_combo.items():
                v = field.sub(combo.get(c2, field.zero), field.mul(coeff, k2))
                if field.is_zero(v):
                    combo.pop(c2, None)
                else:
                    combo[c2] = v
        if not row:
            kernel.append({columns[j]: v for j, v in combo.items()})
        else:
            pivot = max(row, key=key)
            inv = field.inv(row[pivot])
            row = {c: field.mul(inv, v) for c, v in row.items()}
            combo = {c: field.mul(inv, v) for c, v in combo.items()}
            ech.rows[pivot] = row
            combos[pivot] = combo
    return kernel


# --- dense helpers over small fields ---------------------------------------------


def rref(rows, field: Field, width: int):
    """Reduced row echelon form; returns a canonical tuple of row tuples."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        sel = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [
                    field.sub(a, field.mul(f, b)) for a, b in zip(mat[i], mat[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r])


def in_span(vector, basis_rref, field: Field):
    """Whether vector lies in the row space given by an RREF basis."""
    v = list(vector)
    for row in basis_rref:
        piv = next(i for i, x in enumerate(row) if not field.is_zero(x))
        if not field.is_zero(v[piv]):
            f = v[piv]
            v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
    return all(field.is_zero(x) for x in v)

def span_dim(basis_rref) -> int:
    return len(basis_rref)


def intersect_spans(a_rref, b_rref, field: Field, width: int):
    """RREF basis of the intersection of two row spaces (via kernel of stacking)."""
    rows = list(a_rref) + list(b_rref)
    if not rows:
        return ()
    coeffs = kernel_dense(rows, field, width, transpose=True)
    out = []
    for combo in coeffs:
        vec = [field.zero] * width
        for idx, c in enumerate(combo[: len(a_rref)]):
            if field.is_zero(c):
                continue
            row = a_rref[idx]
            vec = [field.add(v, field.mul(c, x)) for v, x in zip(vec, row)]
        out.append(vec)
    return rref(out, field, width)


def kernel_dense(rows, field: Field, width: int, transpose=False):
    """Kernel of the matrix as a list of coefficient tuples.

    With ``transpose=True`` the rows are treated as vectors and the kernel
    is over row-combination coefficients (i.e. linear dependencies).
    """
    if transpose:
        m = len(rows)
        mat = [[rows[i][c] for i in range(m)] for c in range(width)]
        ncols = m
    else:
        mat = [list(r) for r in rows]
        ncols = width
    # eliminate to row echelon, record pivot columns
    mat = [list(r) for r in mat]
    pivots = {}
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][c]):
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [
                    field.sub(a, field.mul(f, b)) for a, b in zip(mat[i], mat[r])
                ]
        pivots[c] = r
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for c, prow in pivots.items():
            vec[c] = field.neg(mat[prow][fc])
        kernel.append(tuple(vec))
    return kernel


def all_subspaces(dim: int, field: Field):
    """All subspaces of field^dim as canonical RREF tuples (finite fields only)."""
    from itertools import product

    elems = list(field.elements())
    seen = {(): None}
    out = [()]
    vectors = [v for v in product(elems, repeat=dim) if any(not field.is_zero(x) for x in v)]
    frontier = [()]
    while frontier:
        nxt = []
        for base in frontier:
            for v in vectors:
                if in_span(v, base, field):
                    continue
                cand = rref(list(base) + [v], field, dim)
                if cand not in seen:
                    seen[cand] = None
                    out.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return out
