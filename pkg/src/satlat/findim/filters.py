"""Filter systems on the projective generators e_alpha*A and the
round-trip between them and the subcategories they generate.

Submodules of P_alpha are kept as ambient subspaces of the regular module,
so everything is a canonical RREF tuple and set operations are literal.
A filter system stores one filter per generator and is validated at
construction: top element present, upward closure, intersection closure,
and compatibility with every homomorphism between generators (preimages of
filter members stay in the filter).
"""

from __future__ import annotations

import itertools
from functools import cached_property

from ..errors import CombinatorialBlowup, SatlatError
from ..linalg import in_span, intersect_spans, kernel_dense, rref
from .algebra import LinIdeal, StructAlgebra, lin_ideal
from .modules import (
    ENUMERATION_BOUND,
    FDModule,
    enumerate_right_submodules,
    extensions,
    module_from_subspace,
    projective_subspace,
    quotient_module,
    regular_module,
)


class FilterSystemViolation(SatlatError):
    """A candidate family of filters breaks one of the filter-system laws."""


def _hom_space(algebra: StructAlgebra, alpha: int, beta: int):
    """Basis of Hom(P_alpha, P_beta) = e_beta A e_alpha, as algebra elements."""
    field = algebra.field
    ea = algebra.idempotents[alpha]
    eb = algebra.idempotents[beta]
    span = [
        algebra.mul(eb, algebra.mul(algebra.basis_vector(j), ea))
        for j in range(algebra.dim)
    ]
    return rref(span, field, algebra.dim)


def _all_hom_elements(algebra: StructAlgebra, alpha: int, beta: int):
    field = algebra.field
    basis = _hom_space(algebra, alpha, beta)
    elems = list(field.elements())
    out = []
    for combo in itertools.product(elems, repeat=len(basis)):
        v = [field.zero] * algebra.dim
        for c, row in zip(combo, basis):
            if not field.is_zero(c):
                v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
        out.append(tuple(v))
    return out


def _preimage(algebra: StructAlgebra, x, target, domain):
    """{v in domain : x*v in target} as an ambient subspace."""
    field = algebra.field
    rows = []
    for v in domain:
        image = algebra.mul(x, v)
        reduced = list(image)
        for trow in target:
            piv = next(i for i, c in enumerate(trow) if not field.is_zero(c))
            if not field.is_zero(reduced[piv]):
                f = reduced[piv]
                reduced = [field.sub(a, field.mul(f, b)) for a, b in zip(reduced, trow)]
        rows.append(tuple(reduced))
    if not rows:
        return ()
    combos = kernel_dense(rows, field, algebra.dim, transpose=True)
    vectors = []
    for combo in combos:
        v = [field.zero] * algebra.dim
        for c, row in zip(combo, domain):
            if not field.is_zero(c):
                v = [field.add(a, field.mul(c, b)) for a, b in zip(v, row)]
        vectors.append(tuple(v))
    return rref(vectors, field, algebra.dim)


class FilterSystem:
    """One filter of submodules per projective generator, validated."""

    def __init__(self, algebra: StructAlgebra, filters, check: bool = True):
        self.algebra = algebra
        self.filters = tuple(frozenset(f) for f in filters)
        if len(self.filters) != len(algebra.idempotents):
            raise FilterSystemViolation("need one filter per generator")
        if check:
            self._validate()

    @cached_property
    def _submodule_lists(self):
        reg = regular_module(self.algebra)
        out = []
        for alpha in range(len(self.algebra.idempotents)):
            p_sub = projective_subspace(self.algebra, alpha)
            p_mod = module_from_subspace(reg, p_sub)
            subs = enumerate_right_submodules(p_mod)
            ambient = []
            for s in subs:
                rows = [_lift(row, p_sub, self.algebra) for row in s]
                ambient.append(rref(rows, self.algebra.field, self.algebra.dim))
            out.append(ambient)
        return out

    def _validate(self):
        algebra = self.algebra
        field = algebra.field
        for alpha, flt in enumerate(self.filters):
            top = projective_subspace(algebra, alpha)
            if top not in flt:
                raise FilterSystemViolation(
                    f"filter {alpha} does not contain the full generator"
                )
            subs = set(self._submodule_lists[alpha])
            for member in flt:
                if member not in subs:
                    raise FilterSystemViolation(
                        f"filter {alpha} contains a non-submodule"
                    )
            # upward closure and intersection closure, with witnesses
            for member in flt:
                for bigger in subs:
                    if _contains(bigger, member, field) and bigger not in flt:
                        raise FilterSystemViolation(
                            f"filter {alpha} misses a specialization: "
                            f"dim-{len(bigger)} over dim-{len(member)}"
                        )
            for a, b in itertools.combinations(flt, 2):
                inter = intersect_spans(a, b, field, algebra.dim)
                if inter not in flt:
                    raise FilterSystemViolation(
                        f"filter {alpha} not closed under intersection "
                        f"(dims {len(a)} and {len(b)} meet in dim {len(inter)})"
                    )
        # morphism compatibility
        for alpha in range(len(self.filters)):
            domain = projective_subspace(algebra, alpha)
            for beta in range(len(self.filters)):
                for x in _all_hom_elements(algebra, alpha, beta):
                    for member in self.filters[beta]:
                        pre = _preimage(algebra, x, member, domain)
                        if pre not in self.filters[alpha]:
                            raise FilterSystemViolation(
                                f"preimage of a filter-{beta} member under "
                                f"{algebra.element_str(x)} escapes filter {alpha}"
                            )

    def key(self):
        return tuple(tuple(sorted(f)) for f in self.filters)

    def __eq__(self, other):
        return isinstance(other, FilterSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sizes = ", ".join(str(len(f)) for f in self.filters)
        return f"<FilterSystem sizes ({sizes})>"


def _contains(big, small, field) -> bool:
    return all(in_span(v, big, field) for v in small)


def _lift(row, subspace_basis, algebra):
    """A row in subspace coordinates back to ambient coordinates."""
    field = algebra.field
    v = [field.zero] * algebra.dim
    for c, base in zip(row, subspace_basis):
        if not field.is_zero(c):
            v = [field.add(a, field.mul(c, b)) for a, b in zip(v, base)]
    return tuple(v)


def _filters_of_lattice(submodules, top, field, dim):
    """All filters (upward-closed, meet-closed, containing top) of the lattice."""
    others = [s for s in submodules if s != top]
    out = []
    for r in range(len(others) + 1):
        for subset in itertools.combinations(others, r):
            flt = frozenset(subset) | {top}
            ok = True
            for member in flt:
                for bigger in submodules:
                    if _contains(bigger, member, field) and bigger not in flt:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for a, b in itertools.combinations(flt, 2):
                    if intersect_spans(a, b, field, dim) not in flt:
                        ok = False
                        break
            if ok:
                out.append(flt)
    return out


def enumerate_filter_systems(algebra: StructAlgebra, bound: int = ENUMERATION_BOUND):
    """Every family of filters satisfying the morphism condition, exhaustively."""
    reg = regular_module(algebra)
    field = algebra.field
    per_alpha = []
    for alpha in range(len(algebra.idempotents)):
        p_sub = projective_subspace(algebra, alpha)
        p_mod = module_from_subspace(reg, p_sub)
        subs = enumerate_right_submodules(p_mod)
        ambient = [
            rref([_lift(row, p_sub, algebra) for row in s], field, algebra.dim)
            for s in subs
        ]
        if 2 ** (len(ambient) - 1) > bound:
            raise CombinatorialBlowup(2 ** (len(ambient) - 1), bound)
        per_alpha.append(_filters_of_lattice(ambient, p_sub, field, algebra.dim))
    count = 1
    for filters in per_alpha:
        count *= len(filters)
        if count > bound:
            raise CombinatorialBlowup(count, bound)
    out = []
    for combo in itertools.product(*per_alpha):
        try:
            out.append(FilterSystem(algebra, combo))
        except FilterSystemViolation:
            continue
    return out


def principal_filter_system(ideal: LinIdeal) -> FilterSystem:
    """The filter system {J : e_alpha I <= J <= P_alpha} of a two-sided ideal."""
    algebra = ideal.algebra
    field = algebra.field
    filters = []
    reg = regular_module(algebra)
    for alpha in range(len(algebra.idempotents)):
        e = algebra.idempotents[alpha]
        min_member = rref(
            [algebra.mul(e, v) for v in ideal.basis], field, algebra.dim
        )
        p_sub = projective_subspace(algebra, alpha)
        p_mod = module_from_subspace(reg, p_sub)
        members = []
        for s in enumerate_right_submodules(p_mod):
            ambient = rref(
                [_lift(row, p_sub, algebra) for row in s], field, algebra.dim
            )
            if _contains(ambient, min_member, field):
                members.append(ambient)
        filters.append(frozenset(members))
    return FilterSystem(algebra, filters)


def subcategory_membership(module: FDModule, fs: FilterSystem) -> bool:
    """Whether the module lies in the subcategory generated by the system.

    True iff the images of all maps P_alpha -> M with kernel in the filter
    sum to all of M; Hom(P_alpha, M) is enumerated through M e_alpha.
    """
    algebra = fs.algebra
    field = algebra.field
    if module.dim == 0:
        return True
    reached = ()
    for alpha in range(len(algebra.idempotents)):
        e_idx = algebra.labels.index(algebra.unit_labels[alpha])
        p_sub = projective_subspace(algebra, alpha)
        # Hom(P_alpha, M) <-> m in M*e_alpha via f(p) = m . p
        me = rref(
            [module.act_basis(v, e_idx) for v in _unit_vectors(module, field)],
            field,
            module.dim,
        )
        for m in _span_vectors(me, field, module.dim):
            kernel_rows = []
            for v in p_sub:
                kernel_rows.append(module.act(m, v))
            combos = kernel_dense(kernel_rows, field, module.dim, transpose=True)
            kernel = rref(
                [_combine(combo, p_sub, field, algebra.dim) for combo in combos],
                field,
                algebra.dim,
            )
            if kernel not in fs.filters[alpha]:
                continue
            image = [module.act(m, v) for v in p_sub]
            reached = rref(list(reached) + image, field, module.dim)
            if len(reached) == module.dim:
                return True
    return len(reached) == module.dim


def _unit_vectors(module: FDModule, field):
    return [
        tuple(field.one if i == j else field.zero for j in range(module.dim))
        for i in range(module.dim)
    ]


def _span_vectors(basis, field, dim):
    elems = list(field.elements())
    out = []
    for combo in itertools.product(elems, repeat=len(basis)):
        v = [field.zero] * dim
        for c, row in zip(combo, basis):
            if not field.is_zero(c):
                v = [field.add(a, field.mul(c, b)) for a, b in zip(v, row)]
        out.append(tuple(v))
    return out


def _combine(combo, rows, field, dim):
    v = [field.zero] * dim
    for c, row in zip(combo, rows):
        if not field.is_zero(c):
            v = [field.add(a, field.mul(c, b)) for a, b in zip(v, row)]
    return tuple(v)


def filter_system_roundtrip(fs: FilterSystem) -> bool:
    """Recompute each filter from the generated subcategory and compare."""
    algebra = fs.algebra
    field = algebra.field
    reg = regular_module(algebra)
    for alpha in range(len(algebra.idempotents)):
        p_sub = projective_subspace(algebra, alpha)
        p_mod = module_from_subspace(reg, p_sub)
        recomputed = set()
        for s in enumerate_right_submodules(p_mod):
            quot = quotient_module(p_mod, s)
            if subcategory_membership(quot, fs):
                ambient = rref(
                    [_lift(row, p_sub, algebra) for row in s], field, algebra.dim
                )
                recomputed.add(ambient)
        if recomputed != set(fs.filters[alpha]):
            return False
    return True


def is_principal_fs(fs: FilterSystem):
    """The two-sided ideal of minima if every filter is principal, else None."""
    algebra = fs.algebra
    field = algebra.field
    minima = []
    for alpha, flt in enumerate(fs.filters):
        inter = None
        for member in flt:
            inter = member if inter is None else intersect_spans(
                inter, member, field, algebra.dim
            )
        if inter not in flt:
            return None
        minima.append(inter)
    # the morphism condition on minima: x * J_alpha <= J_beta
    for alpha in range(len(minima)):
        for beta in range(len(minima)):
            basis = _hom_space(algebra, alpha, beta)
            for x in basis:
                for v in minima[alpha]:
                    if not in_span(algebra.mul(x, v), minima[beta], field):
                        return None
    total = [v for m in minima for v in m]
    ideal = lin_ideal(algebra, total)
    if not ideal.two_sided:
        return None
    return ideal


def is_gabriel_fs(fs: FilterSystem) -> bool:
    """Whether the filter system is closed the way localizing ones are.

    For every generator index beta and submodules K <= J <= P_beta with J
    in the filter: if J/K lies in the generated subcategory then K must be
    in the filter.
    """
    algebra = fs.algebra
    field = algebra.field
    reg = regular_module(algebra)
    for beta in range(len(algebra.idempotents)):
        p_sub = projective_subspace(algebra, beta)
        for j_ambient in fs.filters[beta]:
            j_mod = module_from_subspace(reg, j_ambient)
            for k_rows in enumerate_right_submodules(j_mod):
                quot = quotient_module(j_mod, k_rows)
                if not subcategory_membership(quot, fs):
                    continue
                k_ambient = rref(
                    [_lift(row, j_ambient, algebra) for row in k_rows],
                    field,
                    algebra.dim,
                )
                if k_ambient not in fs.filters[beta]:
                    return False
    return True


def subcategory_fingerprint(fs: FilterSystem, corpus) -> tuple:
    """Membership bits of the generated subcategory over a module corpus."""
    return tuple(subcategory_membership(m, fs) for m in corpus)


def is_extension_closed_on(fs: FilterSystem, corpus, max_dim: int = 3) -> bool:
    """Extension closure of the generated subcategory over the corpus."""
    members = [m for m in corpus if subcategory_membership(m, fs)]
    for sub in members:
        for quot in members:
            if sub.dim + quot.dim > max_dim or sub.dim == 0 or quot.dim == 0:
                continue
            for ext in extensions(sub, quot):
                if not subcategory_membership(ext, fs):
                    return False
    return True
