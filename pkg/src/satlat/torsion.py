"""Ideal-power torsion theories: saturation, descending chains, and the
stability predicates that decide which closed subcategories descend to a
quotient category.

A torsion theory here is always of ideal-power type: the filter is
{J : I^n <= J for some n >= 1} for a fixed two-sided ideal I.  The module
of I-power torsion in R/K is (K-tilde)/K, and the central computation is
the descending chain

    (K)~  >=  (I K)~  >=  (I^2 K)~  >=  ...

whose constancy/stabilization governs the predicates.

Equality of neighbouring chain terms is certified exactly whenever
possible: since the ring is noetherian, (P)~ = (P')~ for P' <= P holds iff
P * I^m <= P' for some m, which is a finite set of exact membership checks.
Strict descent is certified exactly through the comaximality criterion
when K is principal on a normal monomial; only when neither exact route
applies do we fall back to truncated saturations, and then the verdict
says so.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .errors import SideMismatch, NotAMonomial
from .idealops import (
    EXACT,
    Exactness,
    IdealHandle,
    Side,
    apply_automorphism_to_ideal,
    colon_normal,
    colon_truncated,
    equal,
    equal_as_sets,
    intersect,
    is_comaximal,
    product,
    two_sided_ideal,
    unit_ideal,
    up_to_degree,
)
from .ring import Poly, QRing, monomial_automorphism, mul_poly

DEFAULT_DEGREE = 12
DEFAULT_CHAIN_LENGTH = 4
SATURATION_CAP = 8
STABLE_POWER_CAP = 4


class TorsionTheory:
    """The localizing subcategory determined by powers of a two-sided ideal."""

    def __init__(self, base: IdealHandle):
        if base.side is not Side.TWO_SIDED:
            raise SideMismatch("a torsion theory needs a two-sided base ideal")
        if not base.exactness.is_exact:
            raise SideMismatch("a torsion theory needs an exact base ideal")
        self.base = base
        self.ring = base.ring
        self._powers = [unit_ideal(base.ring), base]

    @classmethod
    def from_generators(cls, ring: QRing, gens) -> "TorsionTheory":
        return cls(two_sided_ideal(ring, gens))

    def power(self, n: int) -> IdealHandle:
        while len(self._powers) <= n:
            self._powers.append(product(self.base, self._powers[-1]))
        return self._powers[n]

    def right_gens(self):
        return self.base.gb.basis

    def max_gen_degree(self) -> int:
        degs = [g.degree() for g in self.base.gb.basis]
        return max(degs) if degs else 0

    def is_zero_theory(self) -> bool:
        """Base R: the filter is {R}, Y = {0}, saturation is the identity."""
        return self.base.is_unit_ideal()

    def is_full_theory(self) -> bool:
        """Base 0: every right ideal is in the filter, Y is everything."""
        return self.base.is_zero_ideal()

    def base_is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.base.gb.basis)

    def __repr__(self):
        return f"TorsionTheory(powers of {self.base!r})"


# --- saturation -------------------------------------------------------------------


@dataclass
class SaturationResult:
    """K-tilde together with how it was obtained and re-checkable evidence."""

    ideal: IdealHandle
    route: str  # "trivial" | "exact-normal" | "truncated"
    iterations: int
    cap_exceeded: bool = False
    requested_degree: int | None = None
    certificates: list = dc_field(default_factory=list)  # (generator, m) pairs

    @property
    def exactness(self) -> Exactness:
        return self.ideal.exactness

    def as_json(self):
        return {
            "generators": [str(g) for g in self.ideal.basis],
            "route": self.route,
            "iterations": self.iterations,
            "capExceeded": self.cap_exceeded,
            "exactness": self.ideal.exactness.as_json(),
            "torsionCertificates": [
                {"element": str(g), "killedByPower": m} for g, m in self.certificates
            ],
        }


def torsion_power_certificate(z: Poly, k: IdealHandle, theory: TorsionTheory, cap: int):
    """Smallest m <= cap with z * I^m <= K (exact memberships), else None."""
    if not k.exactness.is_exact:
        return None
    for m in range(cap + 1):
        gens_m = theory.power(m).gb.basis if m else (z.ring.one,)
        if all(k.gb.contains(mul_poly(z, w, z.ring)) for w in gens_m):
            return m
    return None


def _colon_by_theory_exact(k: IdealHandle, theory: TorsionTheory) -> IdealHandle:
    """{z : z I <= K} when every right generator of I is a (normal) monomial."""
    result = None
    for h in theory.right_gens():
        c = colon_normal(k, h.monic())
        result = c if result is None else intersect(result, c)
    return result if result is not None else unit_ideal(k.ring)


def saturate(
    k: IdealHandle,
    theory: TorsionTheory,
    degree: int = DEFAULT_DEGREE,
    max_iters: int = SATURATION_CAP,
) -> SaturationResult:
    """The Y-saturation of K: fixpoint of K -> {z : z I <= K}.

    Exact when every right generator of the base is a monomial (colon by a
    normal element is exact); otherwise each colon is solved as a linear
    system and the result is certified UpToDegree(degree).  K <= result
    always; every result generator carries a torsion certificate
    (gen * I^m <= K) so the inclusion result <= K-tilde is re-checkable.
    """
    if theory.is_zero_theory():
        return SaturationResult(k, "trivial", 0, certificates=[])
    if theory.is_full_theory():
        return SaturationResult(
            unit_ideal(k.ring).with_side(k.side), "trivial", 0, certificates=[]
        )
    if theory.base_is_monomial():
        prev = k
        for it in range(1, max_iters + 1):
            nxt = _colon_by_theory_exact(prev, theory)
            if equal(nxt, prev).equal:
                certs = _result_certificates(prev, k, theory, max_iters)
                return SaturationResult(prev, "exact-normal", it - 1, certificates=certs)
            prev = nxt
        certs = _result_certificates(prev, k, theory, max_iters)
        return SaturationResult(
            prev, "exact-normal", max_iters, cap_exceeded=True, certificates=certs
        )
    maxdeg = max(theory.max_gen_degree(), 1)
    budget = degree + max_iters * maxdeg
    if not k.exactness.is_exact:
        budget = min(budget, k.exactness.degree)
    prev = k
    target = budget
    for it in range(1, max_iters + 1):
        target -= maxdeg
        nxt = colon_truncated(prev, theory.base, target)
        if equal(nxt, prev).equal:
            certified = min(degree, target)
            final = IdealHandle(prev.ring, prev.side, prev.gens, up_to_degree(certified))
            certs = _result_certificates(final, k, theory, max_iters)
            return SaturationResult(
                final, "truncated", it - 1, requested_degree=degree, certificates=certs
            )
        prev = nxt
    certified = min(degree, target)
    final = IdealHandle(prev.ring, prev.side, prev.gens, up_to_degree(certified))
    certs = _result_certificates(final, k, theory, max_iters)
    return SaturationResult(
        final,
        "truncated",
        max_iters,
        cap_exceeded=True,
        requested_degree=degree,
        certificates=certs,
    )


def _result_certificates(result: IdealHandle, k: IdealHandle, theory, cap):
    if not k.exactness.is_exact:
        return []
    out = []
    for g in result.gens if not result.exactness.is_exact else result.basis:
        m = torsion_power_certificate(g, k, theory, cap)
        if m is not None:
            out.append((g, m))
    return out


# --- chains and verdicts ----------------------------------------------------------


class VerdictKind(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDETERMINED = "undetermined"


@dataclass
class StabilityVerdict:
    kind: VerdictKind
    exactness: Exactness
    witness: Poly | None = None
    witness_step: int | None = None
    certificate: dict = dc_field(default_factory=dict)

    @property
    def holds(self):
        return self.kind is VerdictKind.HOLDS

    @property
    def fails(self):
        return self.kind is VerdictKind.FAILS

    def as_json(self):
        out = {"verdict": self.kind.value, "exactness": self.exactness.as_json()}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.witness_step is not None:
            out["witnessStep"] = self.witness_step
        if self.certificate:
            out["certificate"] = self.certificate
        return out


@dataclass
class ChainStep:
    index: int
    equal: bool | None  # None = undetermined
    exactness: Exactness
    method: str  # "power-inclusion" | "comaximal-descent" | "truncated"
    witness: Poly | None = None
    detail: dict = dc_field(default_factory=dict)

    def as_json(self):
        out = {
            "step": self.index,
            "equal": self.equal,
            "exactness": self.exactness.as_json(),
            "method": self.method,
        }
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.detail:
            out.update(self.detail)
        return out


@dataclass
class ChainReport:
    """Computed terms of a saturation chain with verdicts and witnesses."""

    theory: TorsionTheory
    terms: list  # SaturationResult per chain index (may be empty if not computed)
    steps: list  # ChainStep per consecutive pair
    stabilized_at: int | None
    strict_descents: list  # (n, witness Poly)
    exactness: Exactness

    def as_json(self):
        return {
            "terms": [t.as_json() for t in self.terms],
            "steps": [s.as_json() for s in self.steps],
            "stabilizedAt": self.stabilized_at,
            "strictDescents": [
                {"step": n, "witness": str(w)} for n, w in self.strict_descents
            ],
            "exactness": self.exactness.as_json(),
        }


def _presaturation(k: IdealHandle, theory: TorsionTheory, n: int) -> IdealHandle:
    """I^n * K, exactly."""
    if n == 0:
        return k
    return product(theory.power(n), k)


def _exact_step_equal(pn: IdealHandle, pn1: IdealHandle, theory: TorsionTheory, cap: int):
    """Certify (P_n)~ = (P_{n+1})~ exactly via P_n * I^m <= P_{n+1}.

    Sound both ways on a noetherian ring: the saturations agree iff some
    power works.  Returns the certificate dict or None if no m <= cap.
    """
    ring = pn.ring
    for m in range(cap + 1):
        gens_m = theory.power(m).gb.basis if m else (ring.one,)
        products = [mul_poly(g, w, ring) for g in pn.gb.basis for w in gens_m]
        if all(pn1.gb.contains(f) for f in products):
            return {"power": m, "productsChecked": len(products)}
    return None


@dataclass
class DescentCriterion:
    """Exact strict-descent certificate for K = hR, h a normal monomial.

    If I and psi_h(I) are comaximal and I^n != I^(n+1), then
    (I^n K)~ != (I^(n+1) K)~ with witness h * psi^{-1}(g) for any
    g in I^n \\ I^(n+1); comaximality of I with psi(I^m) for every m makes
    membership of the witness in the next term contradict g not in I^(n+1).
    """

    h: Poly
    psi_scalars: tuple
    comaximal: bool
    power_witnesses: dict  # n -> g_n in I^n \ I^{n+1}

    def witness(self, ring: QRing, n: int) -> Poly:
        g = self.power_witnesses[n]
        psi_inv = monomial_automorphism(self.h.terms[0][0], ring).inverse()
        return mul_poly(self.h, psi_inv.apply(g), ring)

    def as_json(self):
        return {
            "criterion": "comaximal-descent",
            "normalElement": str(self.h),
            "psi": [str(s) for s in self.psi_scalars],
            "comaximal": self.comaximal,
            "powerWitnesses": {str(n): str(g) for n, g in self.power_witnesses.items()},
        }


def _descent_criterion(k: IdealHandle, theory: TorsionTheory, length: int):
    """Try the exact non-stabilization certificate; None when inapplicable."""
    if theory.is_zero_theory() or theory.is_full_theory():
        return None
    basis = k.gb.basis
    if len(basis) != 1 or len(basis[0].terms) != 1:
        return None  # K must be principal on a monomial
    h = basis[0].monic()
    if h.is_constant():
        return None
    i = theory.base
    if not i.is_proper():
        return None
    psi = monomial_automorphism(h.terms[0][0], k.ring)
    psi_i = apply_automorphism_to_ideal(psi, i)
    if not is_comaximal(i, psi_i):
        return None
    witnesses = {0: k.ring.one}
    for n in range(1, length):
        v = equal(theory.power(n), theory.power(n + 1))
        if v.equal:
            return None  # powers stabilize; criterion does not apply
        assert v.witness_in == "a", "I^(n+1) <= I^n must hold"
        witnesses[n] = v.witness
    return DescentCriterion(
        h=h,
        psi_scalars=psi.scalars,
        comaximal=True,
        power_witnesses=witnesses,
    )


def tilde_chain(
    k: IdealHandle,
    theory: TorsionTheory,
    length: int = DEFAULT_CHAIN_LENGTH,
    degree: int = DEFAULT_DEGREE,
    with_terms: bool = True,
    m_cap: int = STABLE_POWER_CAP,
) -> ChainReport:
    """The chain (I^n K)~ for n = 0..length, with per-step verdicts.

    Step verdicts prefer exact certificates (power inclusion for equality,
    the comaximality criterion for strict descent) and fall back to
    comparing truncated saturations.  When terms are computed, nesting
    T_{n+1} <= T_n is re-verified and witnesses are re-checked against the
    computed handles.
    """
    if length < 1:
        raise ValueError("chain length must be >= 1")
    presats = [_presaturation(k, theory, n) for n in range(length + 1)]
    criterion = None
    steps = []
    need_truncated = False
    for n in range(length):
        cert = _exact_step_equal(presats[n], presats[n + 1], theory, m_cap)
        if cert is not None:
            steps.append(
                ChainStep(n, True, EXACT, "power-inclusion", detail=cert)
            )
            continue
        if criterion is None:
            criterion = _descent_criterion(k, theory, length)
        if criterion is not None and n in criterion.power_witnesses:
            w = criterion.witness(k.ring, n)
            steps.append(
                ChainStep(
                    n,
                    False,
                    EXACT,
                    "comaximal-descent",
                    witness=w,
                    detail={"criterion": criterion.as_json()},
                )
            )
            continue
        steps.append(ChainStep(n, None, up_to_degree(degree), "truncated"))
        need_truncated = True

    terms = []
    if with_terms or need_truncated:
        terms = [saturate(p, theory, degree) for p in presats]
        _verify_nesting(terms, degree)
        for step in steps:
            if step.method != "truncated":
                if step.witness is not None:
                    _recheck_witness(step, terms, degree)
                continue
            v = equal_as_sets(terms[step.index].ideal, terms[step.index + 1].ideal)
            step.equal = v.equal
            step.exactness = v.exactness
            if not v.equal:
                step.witness = v.witness
                step.detail["witnessIn"] = v.witness_in

    stabilized_at = None
    if steps and all(s.equal for s in steps):
        stabilized_at = 0
    else:
        for start in range(1, length):
            tail = steps[start:]
            if tail and all(s.equal for s in tail) and steps[start - 1].equal is False:
                stabilized_at = start
                break
    descents = [(s.index, s.witness) for s in steps if s.equal is False and s.witness is not None]
    exactness = EXACT
    for s in steps:
        exactness = exactness.combine(s.exactness)
    return ChainReport(
        theory=theory,
        terms=terms,
        steps=steps,
        stabilized_at=stabilized_at,
        strict_descents=descents,
        exactness=exactness,
    )


def _verify_nesting(terms, degree):
    """T_{n+1} <= T_n on every computed low-degree generator; bug guard."""
    for n in range(len(terms) - 1):
        big, small = terms[n].ideal, terms[n + 1].ideal
        for g in small.basis:
            if g.degree() <= min(degree, 6) and big.exactness.covers(g.degree()):
                if not big.gb.contains(g):
                    raise AssertionError(
                        f"chain nesting violated at step {n}: {g} escapes T_{n}"
                    )


def _recheck_witness(step, terms, degree):
    n = step.index
    w = step.witness
    if w.degree() > degree:
        return
    in_tn = terms[n].ideal.gb.contains(w)
    in_tn1 = terms[n + 1].ideal.gb.contains(w)
    if not in_tn or in_tn1:
        raise AssertionError(
            f"exact descent witness at step {n} contradicts computed terms"
        )
    step.detail["witnessRechecked"] = True


# --- the predicates ---------------------------------------------------------------


def is_torsionfree_generated(
    k: IdealHandle, theory: TorsionTheory, degree: int = DEFAULT_DEGREE
) -> StabilityVerdict:
    """K = K-tilde: the cyclic generator of Mod-(R/K) is Y-torsionfree."""
    sat = saturate(k, theory, degree)
    v = equal(k, sat.ideal)
    if v.equal:
        return StabilityVerdict(
            VerdictKind.HOLDS, v.exactness, certificate={"saturation": sat.as_json()}
        )
    m = torsion_power_certificate(v.witness, k, theory, SATURATION_CAP)
    cert = {"saturation": sat.as_json()}
    if m is not None:
        cert["witnessKilledByPower"] = m
    return StabilityVerdict(
        VerdictKind.FAILS, v.exactness, witness=v.witness, witness_step=0, certificate=cert
    )


def is_essentially_stable(
    k: IdealHandle,
    theory: TorsionTheory,
    length: int = DEFAULT_CHAIN_LENGTH,
    degree: int = DEFAULT_DEGREE,
    m_cap: int = STABLE_POWER_CAP,
) -> StabilityVerdict:
    """Constancy of the chain (I^n K)~ through the given length.

    Holds only with exact certificates (power inclusions step by step);
    strict descent is reported with a witness; anything weaker is an
    undetermined verdict carrying its bounds.
    """
    report = tilde_chain(k, theory, length, degree, with_terms=False, m_cap=m_cap)
    if all(s.equal is True and s.exactness.is_exact for s in report.steps):
        return StabilityVerdict(
            VerdictKind.HOLDS,
            EXACT,
            certificate={"steps": [s.as_json() for s in report.steps]},
        )
    for s in report.steps:
        if s.equal is False:
            return StabilityVerdict(
                VerdictKind.FAILS,
                s.exactness,
                witness=s.witness,
                witness_step=s.index,
                certificate={"steps": [t.as_json() for t in report.steps]},
            )
    return StabilityVerdict(
        VerdictKind.UNDETERMINED,
        up_to_degree(degree),
        certificate={
            "length": length,
            "degree": degree,
            "steps": [s.as_json() for s in report.steps],
        },
    )


def is_y_closed(
    k: IdealHandle,
    theory: TorsionTheory,
    length: int = DEFAULT_CHAIN_LENGTH,
    degree: int = DEFAULT_DEGREE,
    m_cap: int = STABLE_POWER_CAP,
) -> StabilityVerdict:
    """Torsionfree generated and essentially stable (equivalently K = (IK)~)."""
    tf = is_torsionfree_generated(k, theory, degree)
    if tf.fails:
        return StabilityVerdict(
            VerdictKind.FAILS,
            tf.exactness,
            witness=tf.witness,
            witness_step=tf.witness_step,
            certificate={"torsionfreeGenerated": tf.as_json()},
        )
    stable = is_essentially_stable(k, theory, length, degree, m_cap)
    cert = {
        "torsionfreeGenerated": tf.as_json(),
        "essentiallyStable": stable.as_json(),
    }
    if stable.fails:
        return StabilityVerdict(
            VerdictKind.FAILS,
            stable.exactness,
            witness=stable.witness,
            witness_step=stable.witness_step,
            certificate=cert,
        )
    if tf.holds and stable.holds:
        return StabilityVerdict(
            VerdictKind.HOLDS, tf.exactness.combine(stable.exactness), certificate=cert
        )
    return StabilityVerdict(
        VerdictKind.UNDETERMINED,
        tf.exactness.combine(stable.exactness),
        certificate=cert,
    )


def gabriel_product_ideal(k_z: IdealHandle, k_w: IdealHandle) -> IdealHandle:
    """Defining ideal of the Gabriel product of two closed subcategories.

    Objects with a subobject killed by K_W and quotient killed by K_Z are
    exactly the modules killed by K_Z * K_W, so the product ideal defines
    the extension subcategory.
    """
    if k_z.side is not Side.TWO_SIDED or k_w.side is not Side.TWO_SIDED:
        raise SideMismatch("Gabriel product needs two-sided ideals")
    return product(k_z, k_w)


def ore_chain(k: IdealHandle, s: Poly, length: int = DEFAULT_CHAIN_LENGTH) -> ChainReport:
    """The chain for the powers-of-a-normal-monomial theory, exactly.

    Saturation w.r.t. {J : s^n in J} is an exact colon fixpoint; the chain
    terms are phi^n(K-tilde) for the automorphism phi with s r = phi(r) s.
    For two-sided K on these noetherian rings the chain must stabilize
    immediately, which the report re-verifies rather than assumes; for a
    genuinely one-sided K no such guarantee holds and the report simply
    records what happened.
    """
    if s.is_zero() or len(s.terms) != 1:
        raise NotAMonomial("ore_chain needs a nonzero monomial")
    ring = k.ring
    s = s.monic()
    theory = TorsionTheory(two_sided_ideal(ring, [s]))
    if s.is_constant():
        sat = SaturationResult(k, "trivial", 0)
        steps = [ChainStep(n, True, EXACT, "automorphism-fixed") for n in range(length)]
        return ChainReport(theory, [sat] * (length + 1), steps, 0, [], EXACT)
    sat = saturate(k, theory, max_iters=4 * SATURATION_CAP)
    phi = monomial_automorphism(s.terms[0][0], ring)
    terms = [sat]
    handles = [sat.ideal]
    current = sat.ideal
    for n in range(1, length + 1):
        current = apply_automorphism_to_ideal(phi, current)
        handles.append(current)
        terms.append(
            SaturationResult(current, sat.route, sat.iterations, sat.cap_exceeded)
        )
    steps = []
    for n in range(length):
        v = equal(handles[n], handles[n + 1])
        steps.append(
            ChainStep(
                n,
                v.equal,
                v.exactness,
                "automorphism-fixed" if v.equal else "automorphism-moved",
                witness=v.witness,
            )
        )
    stabilized = 0 if steps and all(st.equal for st in steps) else None
    descents = [(st.index, st.witness) for st in steps if st.equal is False]
    return ChainReport(theory, terms, steps, stabilized, descents, EXACT)
