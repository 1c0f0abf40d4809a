"""Built-in worked examples with golden expectations.

Each scenario builds its ring in code, runs the relevant library calls,
and produces a flat dict of facts that is compared against the golden
data below; any mismatch exits with code 4 and lists the differences.
The expectations are plain data so they can be audited at a glance.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnknownExample
from .fields import GF, QQ
from .idealops import (
    equal,
    intersect,
    is_comaximal,
    membership,
    power,
    right_ideal,
    two_sided_ideal,
)
from .lattice import ClosedSubcat, distributivity_check, y_join
from .report import Report, describe_ring
from .ring import QRing, is_central, monomial_automorphism
from .torsion import (
    TorsionTheory,
    is_essentially_stable,
    is_torsionfree_generated,
    is_y_closed,
    ore_chain,
    saturate,
    tilde_chain,
)

EXIT_OK = 0
EXIT_MISMATCH = 4


EXPECTATIONS = {
    "upper-triangular": {
        "idealCount": 5,
        "idealDims": [0, 1, 2, 2, 3],
        "K_I2_torsionfreeGenerated": True,
        "K_I2_essentiallyStable": False,
        "K_I2_yClosed": False,
        "join_rad_essentiallyStable": False,
    },
    "commutative-saturation": {
        "saturationBasis": ["x"],
        "saturationExact": True,
        "corpusIdeals": 10,
        "baseIdeals": 3,
        "allStable": True,
    },
    "ore-normal": {
        "pairs": 20,
        "allStabilized": True,
        "allExact": True,
    },
    "quantum-plane-descending": {
        "comaximal": True,
        "powersStrict": [True, True, True],
        "strictDescents": 3,
        "witnessStep0": "x",
        "chainExact": True,
        "essentiallyStable": "fails",
        "yClosed": "fails",
    },
    "quantum-plane-two-torsion": {
        "psiSquaredIsIdentity": True,
        "xSquaredCentral": True,
        "JBasis": ["x", "y^2 - 1"],
        "JPsiFixed": True,
        "comaximal": True,
        "JInsideI": True,
        "tfForJPowers": "holds",
        "tfForIPowers": "holds",
        "stableForJPowers": "holds",
        "stableForJPowersExact": True,
        "yClosedForJPowers": "holds",
        "yClosedForIPowers": "fails",
    },
    "bad-union": {
        "z1Central": True,
        "z2Central": True,
        "intersectionBasis": ["x2*x3*x4"],
        "z1Stable": True,
        "z2Stable": True,
        "psiX1Scalar": "1/2",
        "comaximal": True,
        "joinStable": "fails",
        "joinWitnessStep": 0,
    },
    "not-distributive": {
        "distributive": False,
        "law": "intersection-over-sum",
        "witness": "x",
        "lhsBasis": ["x"],
        "rhsBasis": ["x^2", "x*y"],
    },
}


def _qplane(q) -> QRing:
    return QRing(("x", "y"), QQ, {(0, 1): Fraction(q)})


def _scenario_upper_triangular(degree):
    from .findim import (
        enumerate_two_sided_ideals,
        intersect_ideals,
        stability_predicates,
        upper_triangular_2x2,
    )

    algebra = upper_triangular_2x2(GF(2))
    ideals = enumerate_two_sided_ideals(algebra)
    e = algebra.basis_vector
    i1 = next(i for i in ideals if i.dim == 2 and i.contains(e(2)) and i.contains(e(1)))
    i2 = next(i for i in ideals if i.dim == 2 and i.contains(e(0)) and i.contains(e(1)))
    tf, stable, closed = stability_predicates(i2, i1)
    rad = intersect_ideals(i1, i2)
    _, rad_stable, _ = stability_predicates(rad, i1)
    facts = {
        "idealCount": len(ideals),
        "idealDims": sorted(i.dim for i in ideals),
        "K_I2_torsionfreeGenerated": tf,
        "K_I2_essentiallyStable": stable,
        "K_I2_yClosed": closed,
        "join_rad_essentiallyStable": rad_stable,
    }
    return algebra, facts


def _scenario_commutative_saturation(degree):
    ring = QRing(("x", "y"), QQ)
    x, y = ring.gens()
    sat = saturate(
        right_ideal(ring, [x**2, x * y]),
        TorsionTheory(two_sided_ideal(ring, [x, y])),
        degree or 12,
    )
    corpus = [
        [x],
        [y],
        [x + y],
        [x, y],
        [x**2, x * y],
        [x * y],
        [x**2 - y],
        [y**2 - 1],
        [x**3, y - 2],
        [x * y - 1],
    ]
    bases = [[x, y], [x], [y]]
    all_stable = True
    for gens in corpus:
        for base in bases:
            verdict = is_essentially_stable(
                right_ideal(ring, gens),
                TorsionTheory(two_sided_ideal(ring, base)),
                length=3,
            )
            all_stable = all_stable and verdict.holds and verdict.exactness.is_exact
    facts = {
        "saturationBasis": [str(g) for g in sat.ideal.basis],
        "saturationExact": sat.ideal.exactness.is_exact,
        "corpusIdeals": len(corpus),
        "baseIdeals": len(bases),
        "allStable": all_stable,
    }
    return ring, facts


def _scenario_ore_normal(degree):
    import random

    rng = random.Random(20240811)
    rings = [_qplane(2), _qplane(-1), _qplane(Fraction(1, 3))]
    pairs = 0
    all_stab = True
    all_exact = True
    while pairs < 20:
        ring = rng.choice(rings)
        x, y = ring.gens()
        pool = [x, y, x * y, y**2 - y, x + y, x * y - 1, y - 1]
        k = two_sided_ideal(ring, rng.sample(pool, rng.randint(1, 2)))
        s = ring.monomial((rng.randint(0, 2), rng.randint(0, 2)))
        if s.is_constant():
            s = x
        report = ore_chain(k, s, length=3)
        all_stab = all_stab and report.stabilized_at == 0
        all_exact = all_exact and report.exactness.is_exact
        pairs += 1
    facts = {"pairs": pairs, "allStabilized": all_stab, "allExact": all_exact}
    return rings[0], facts


def _scenario_qplane_descending(degree):
    ring = _qplane(2)
    x, y = ring.gens()
    i = two_sided_ideal(ring, [x, y - 1])
    k = right_ideal(ring, [x])
    theory = TorsionTheory(i)
    psi = monomial_automorphism((1, 0), ring)
    psi_i = two_sided_ideal(ring, [psi.apply(g) for g in i.gens])
    powers_strict = [
        not equal(power(i, n), power(i, n + 1)).equal for n in (1, 2, 3)
    ]
    chain = tilde_chain(k, theory, length=3, degree=degree or 8)
    stable = is_essentially_stable(k, theory, length=3, degree=degree or 8)
    closed = is_y_closed(k, theory, length=3, degree=degree or 8)
    facts = {
        "comaximal": is_comaximal(i, psi_i),
        "powersStrict": powers_strict,
        "strictDescents": len(chain.strict_descents),
        "witnessStep0": str(chain.strict_descents[0][1]) if chain.strict_descents else None,
        "chainExact": chain.exactness.is_exact,
        "essentiallyStable": stable.kind.value,
        "yClosed": closed.kind.value,
    }
    return ring, facts


def _scenario_qplane_two_torsion(degree):
    ring = _qplane(-1)
    x, y = ring.gens()
    i = two_sided_ideal(ring, [x, y - 1])
    psi = monomial_automorphism((1, 0), ring)
    psi_i = two_sided_ideal(ring, [psi.apply(g) for g in i.gens])
    j = intersect(i, psi_i)
    j_image = two_sided_ideal(ring, [psi.apply(g) for g in j.basis])
    k = right_ideal(ring, [x])
    t_j = TorsionTheory(j)
    t_i = TorsionTheory(i)
    tf_j = is_torsionfree_generated(k, t_j, degree or 12)
    tf_i = is_torsionfree_generated(k, t_i, degree or 12)
    stable_j = is_essentially_stable(k, t_j, length=3)
    closed_j = is_y_closed(k, t_j, length=3, degree=degree or 12)
    closed_i = is_y_closed(k, t_i, length=3, degree=degree or 8)
    facts = {
        "psiSquaredIsIdentity": psi.compose(psi).is_identity(),
        "xSquaredCentral": is_central(x**2, ring),
        "JBasis": [str(g) for g in j.basis],
        "JPsiFixed": equal(j, j_image).equal,
        "comaximal": is_comaximal(i, psi_i),
        "JInsideI": all(membership(g, i) for g in j.basis),
        "tfForJPowers": tf_j.kind.value,
        # J-torsionfree implies I-torsionfree (the J theory has more torsion)
        "tfForIPowers": tf_i.kind.value,
        "stableForJPowers": stable_j.kind.value,
        "stableForJPowersExact": stable_j.exactness.is_exact,
        "yClosedForJPowers": closed_j.kind.value,
        "yClosedForIPowers": closed_i.kind.value,
    }
    return ring, facts


def _scenario_bad_union(degree):
    ring = QRing(
        ("x1", "x2", "x3", "x4"),
        QQ,
        {(0, 1): Fraction(2), (0, 2): Fraction(1, 2), (0, 3): Fraction(1, 2)},
    )
    x1, x2, x3, x4 = ring.gens()
    z1_gen, z2_gen = x2 * x3, x2 * x4
    z1 = two_sided_ideal(ring, [z1_gen])
    z2 = two_sided_ideal(ring, [z2_gen])
    i = two_sided_ideal(ring, [x1 - 1, x2, x3, x4])
    theory = TorsionTheory(i)
    stable1 = is_essentially_stable(z1, theory, length=2)
    stable2 = is_essentially_stable(z2, theory, length=2)
    psi = monomial_automorphism((0, 1, 1, 1), ring)
    psi_i = two_sided_ideal(ring, [psi.apply(g) for g in i.gens])
    res = y_join(
        ClosedSubcat(z1), ClosedSubcat(z2), theory, length=2, degree=degree or 4
    )
    inter = intersect(z1, z2)
    facts = {
        "z1Central": is_central(z1_gen, ring),
        "z2Central": is_central(z2_gen, ring),
        "intersectionBasis": [str(g) for g in inter.basis],
        "z1Stable": stable1.holds and stable1.exactness.is_exact,
        "z2Stable": stable2.holds and stable2.exactness.is_exact,
        "psiX1Scalar": ring.field.render(psi.scalars[0]),
        "comaximal": is_comaximal(i, psi_i),
        "joinStable": res.stability.kind.value,
        "joinWitnessStep": res.stability.witness_step,
    }
    return ring, facts


def _scenario_not_distributive(degree):
    ring = QRing(("x", "y"), QQ)
    x, y = ring.gens()
    verdict = distributivity_check(
        two_sided_ideal(ring, [x]),
        two_sided_ideal(ring, [y]),
        two_sided_ideal(ring, [x + y]),
    )
    facts = {
        "distributive": verdict.holds,
        "law": verdict.side,
        "witness": str(verdict.comparison.witness) if verdict.comparison else None,
        "lhsBasis": [str(g) for g in verdict.lhs.basis],
        "rhsBasis": [str(g) for g in verdict.rhs.basis],
    }
    return ring, facts


SCENARIOS = {
    "upper-triangular": _scenario_upper_triangular,
    "commutative-saturation": _scenario_commutative_saturation,
    "ore-normal": _scenario_ore_normal,
    "quantum-plane-descending": _scenario_qplane_descending,
    "quantum-plane-two-torsion": _scenario_qplane_two_torsion,
    "bad-union": _scenario_bad_union,
    "not-distributive": _scenario_not_distributive,
}


def run_example(example_id: str, degree: int | None = None):
    """Run one scripted scenario and compare against its golden facts."""
    if example_id not in SCENARIOS:
        raise UnknownExample(
            f"unknown example {example_id!r}; choose from {sorted(SCENARIOS)}"
        )
    report = Report(f"example {example_id}", inputs={"id": example_id})
    ring, facts = SCENARIOS[example_id](degree)
    report.data["ring"] = describe_ring(ring)
    expected = EXPECTATIONS[example_id]
    mismatches = [
        {"fact": key, "expected": expected[key], "got": facts.get(key)}
        for key in expected
        if facts.get(key) != expected[key]
    ]
    report.set_result(
        {
            "facts": facts,
            "expected": expected,
            "pass": not mismatches,
            "mismatches": mismatches,
        }
    )
    return report.finish(), (EXIT_OK if not mismatches else EXIT_MISMATCH)
