"""Command-line surface.

Exit codes: 0 success (including negative verdicts), 2 parse/spec errors,
3 undetermined results (bounds too low), 4 expectation mismatch in the
example runner.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DegreeBoundTooLow, SatlatError, UnknownExample
from .idealops import (
    colon_normal,
    colon_truncated,
    equal,
    intersect,
    is_comaximal,
    membership,
    power,
    product,
    right_ideal,
    sum_ideals,
    two_sided_ideal,
)
from .lattice import ClosedSubcat, distributivity_check, join, meet, y_join, y_meet
from .parser import parse_generators, parse_poly
from .report import Report, render_text, to_json
from .ring import QRing
from .ringspec import load_ring_spec
from .torsion import (
    DEFAULT_CHAIN_LENGTH,
    DEFAULT_DEGREE,
    TorsionTheory,
    VerdictKind,
    is_essentially_stable,
    is_torsionfree_generated,
    is_y_closed,
    saturate,
    tilde_chain,
)

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_UNDETERMINED = 3
EXIT_MISMATCH = 4


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="satlat",
        description="Exact ideal calculus and saturation chains over quantum "
        "affine spaces and finite-dimensional algebras.",
    )
    top.add_argument("--json", action="store_true", help="emit the JSON report")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, filter_required=True):
        p.add_argument("--ring", required=True, help="ring spec file (TOML)")
        p.add_argument("--ideal", required=True, help="generators of K")
        p.add_argument(
            "--filter",
            required=filter_required,
            help="generators of the base ideal I (I-power filter)",
        )
        p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE)
        p.add_argument("--chain-length", type=int, default=DEFAULT_CHAIN_LENGTH)
        p.add_argument(
            "--saturation-cap",
            type=int,
            default=None,
            help="iteration cap for the saturation fixpoint",
        )
        p.add_argument(
            "--stable-power-cap",
            type=int,
            default=None,
            help="largest power tried for exact chain-equality certificates",
        )
        p.add_argument(
            "--side",
            choices=["right", "two-sided"],
            default="right",
            help="side of the ideal K",
        )

    common(sub.add_parser("saturate", help="Y-saturation of an ideal"))
    common(sub.add_parser("chain", help="the chain (I^n K)~ with verdicts"))

    check = sub.add_parser("check", help="stability predicates")
    check.add_argument(
        "predicate", choices=["tf-generated", "stable", "y-closed"]
    )
    common(check)

    ideal = sub.add_parser("ideal", help="ideal arithmetic")
    ideal.add_argument(
        "op",
        choices=["sum", "product", "power", "intersect", "colon", "equal", "comaximal", "member"],
    )
    ideal.add_argument("--ring", required=True)
    ideal.add_argument("--a", required=True, help="generators of the first ideal")
    ideal.add_argument("--b", help="generators of the second ideal (or element)")
    ideal.add_argument("--n", type=int, help="exponent for power")
    ideal.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE)
    ideal.add_argument(
        "--side", choices=["right", "two-sided"], default="two-sided"
    )

    lat = sub.add_parser("lattice", help="closed-subcategory lattice operations")
    lat.add_argument(
        "op", choices=["meet", "join", "distributive", "y-meet", "y-join"]
    )
    lat.add_argument("--ring", required=True)
    lat.add_argument("--a", required=True)
    lat.add_argument("--b", required=True)
    lat.add_argument("--c", help="third ideal for distributivity")
    lat.add_argument("--filter", help="base ideal for y-level operations")
    lat.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE)
    lat.add_argument("--chain-length", type=int, default=DEFAULT_CHAIN_LENGTH)

    fd = sub.add_parser("findim", help="finite-dimensional enumeration")
    fd.add_argument(
        "op",
        choices=[
            "enumerate-ideals",
            "enumerate-filter-systems",
            "roundtrip",
            "gabriel",
        ],
    )
    fd.add_argument("--ring", required=True)
    fd.add_argument("--max-dim", type=int, default=3, help="corpus dimension bound")

    ex = sub.add_parser("example", help="run a built-in worked example")
    ex.add_argument("id")
    ex.add_argument("--degree-bound", type=int, default=None)

    return top


def _load_quantum(path) -> QRing:
    ring = load_ring_spec(path)
    if not isinstance(ring, QRing):
        raise SatlatError("this command needs a quantum ring spec")
    return ring


def _ideal_handle(ring, text, side):
    gens = parse_generators(text, ring)
    if side == "two-sided":
        return two_sided_ideal(ring, gens)
    return right_ideal(ring, gens)


def _theory(ring, text) -> TorsionTheory:
    return TorsionTheory(two_sided_ideal(ring, parse_generators(text, ring)))


def cmd_saturate(args) -> tuple[dict, int]:
    ring = _load_quantum(args.ring)
    k = _ideal_handle(ring, args.ideal, args.side)
    theory = _theory(ring, args.filter)
    report = Report("saturate", ring, {"ideal": args.ideal, "filter": args.filter})
    from .torsion import SATURATION_CAP

    cap = SATURATION_CAP if args.saturation_cap is None else args.saturation_cap
    sat = saturate(k, theory, args.degree_bound, max_iters=cap)
    report.set_result(
        {"generators": [str(g) for g in sat.ideal.basis]}, sat.ideal.exactness
    )
    report.add_certificate(sat.as_json())
    code = EXIT_UNDETERMINED if sat.cap_exceeded else EXIT_OK
    return report.finish(), code


def _m_cap(args) -> int:
    from .torsion import STABLE_POWER_CAP

    return STABLE_POWER_CAP if args.stable_power_cap is None else args.stable_power_cap


def cmd_chain(args) -> tuple[dict, int]:
    ring = _load_quantum(args.ring)
    k = _ideal_handle(ring, args.ideal, args.side)
    theory = _theory(ring, args.filter)
    report = Report("chain", ring, {"ideal": args.ideal, "filter": args.filter})
    chain = tilde_chain(
        k, theory, args.chain_length, args.degree_bound, m_cap=_m_cap(args)
    )
    report.set_chain(chain.as_json())
    report.set_result(
        {
            "stabilizedAt": chain.stabilized_at,
            "strictDescents": len(chain.strict_descents),
        },
        chain.exactness,
    )
    for n, w in chain.strict_descents:
        report.add_witness(w, step=n)
    undetermined = any(s.equal is None for s in chain.steps)
    return report.finish(), EXIT_UNDETERMINED if undetermined else EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    ring = _load_quantum(args.ring)
    k = _ideal_handle(ring, args.ideal, args.side)
    theory = _theory(ring, args.filter)
    report = Report(
        f"check {args.predicate}",
        ring,
        {"ideal": args.ideal, "filter": args.filter},
    )
    if args.predicate == "tf-generated":
        verdict = is_torsionfree_generated(k, theory, args.degree_bound)
    elif args.predicate == "stable":
        verdict = is_essentially_stable(
            k, theory, args.chain_length, args.degree_bound, m_cap=_m_cap(args)
        )
    else:
        verdict = is_y_closed(
            k, theory, args.chain_length, args.degree_bound, m_cap=_m_cap(args)
        )
    report.set_result(verdict.kind.value, verdict.exactness)
    report.add_certificate(verdict.as_json())
    if verdict.witness is not None:
        report.add_witness(verdict.witness, step=verdict.witness_step)
    code = EXIT_UNDETERMINED if verdict.kind is VerdictKind.UNDETERMINED else EXIT_OK
    return report.finish(), code


def cmd_ideal(args) -> tuple[dict, int]:
    ring = _load_quantum(args.ring)
    a = _ideal_handle(ring, args.a, args.side)
    report = Report(f"ideal {args.op}", ring, {"a": args.a, "b": args.b, "n": args.n})

    def basis_result(handle):
        report.set_result(
            {"generators": [str(g) for g in handle.basis]}, handle.exactness
        )

    if args.op == "power":
        if args.n is None:
            raise SatlatError("power needs --n")
        basis_result(power(a, args.n))
        return report.finish(), EXIT_OK
    if args.b is None:
        raise SatlatError(f"{args.op} needs --b")
    if args.op == "member":
        f = parse_poly(args.b, ring)
        report.set_result(membership(f, a), a.exactness)
        return report.finish(), EXIT_OK
    if args.op == "colon":
        divisor = parse_generators(args.b, ring)
        if len(divisor) == 1 and len(divisor[0].terms) == 1:
            basis_result(colon_normal(a, divisor[0]))
        else:
            result = colon_truncated(
                a, two_sided_ideal(ring, divisor), args.degree_bound
            )
            basis_result(result)
        return report.finish(), EXIT_OK
    b = _ideal_handle(ring, args.b, args.side)
    if args.op == "sum":
        basis_result(sum_ideals(a, b))
    elif args.op == "product":
        basis_result(product(a, b))
    elif args.op == "intersect":
        basis_result(intersect(a, b))
    elif args.op == "equal":
        verdict = equal(a, b)
        report.set_result(
            {"equal": verdict.equal}, verdict.exactness
        )
        if verdict.witness is not None:
            report.add_witness(verdict.witness, side=verdict.witness_in)
    elif args.op == "comaximal":
        report.set_result(is_comaximal(a, b))
    return report.finish(), EXIT_OK


def cmd_lattice(args) -> tuple[dict, int]:
    ring = _load_quantum(args.ring)
    a = two_sided_ideal(ring, parse_generators(args.a, ring))
    b = two_sided_ideal(ring, parse_generators(args.b, ring))
    report = Report(f"lattice {args.op}", ring, {"a": args.a, "b": args.b, "c": args.c})
    if args.op in ("meet", "join"):
        za, zb = ClosedSubcat(a), ClosedSubcat(b)
        res = meet(za, zb) if args.op == "meet" else join(za, zb)
        report.set_result({"generators": [str(g) for g in res.ideal.basis]})
        return report.finish(), EXIT_OK
    if args.op == "distributive":
        if args.c is None:
            raise SatlatError("distributive needs --c")
        c = two_sided_ideal(ring, parse_generators(args.c, ring))
        verdict = distributivity_check(a, b, c)
        report.set_result(verdict.as_json())
        if verdict.comparison is not None and verdict.comparison.witness is not None:
            report.add_witness(verdict.comparison.witness, law=verdict.side)
        return report.finish(), EXIT_OK
    if args.filter is None:
        raise SatlatError("y-level lattice operations need --filter")
    theory = _theory(ring, args.filter)
    za, zb = ClosedSubcat(a), ClosedSubcat(b)
    fn = y_meet if args.op == "y-meet" else y_join
    res = fn(za, zb, theory, args.chain_length, args.degree_bound)
    report.set_result(res.as_json(), res.ideal.exactness)
    undetermined = (
        res.stability is not None and res.stability.kind is VerdictKind.UNDETERMINED
    )
    return report.finish(), EXIT_UNDETERMINED if undetermined else EXIT_OK


def cmd_findim(args) -> tuple[dict, int]:
    from .findim import (
        StructAlgebra,
        enumerate_filter_systems,
        enumerate_two_sided_ideals,
        filter_system_roundtrip,
        is_extension_closed_on,
        is_gabriel_fs,
        is_principal_fs,
        modules_up_to_iso,
    )

    algebra = load_ring_spec(args.ring)
    if not isinstance(algebra, StructAlgebra):
        raise SatlatError("this command needs a findim ring spec")
    report = Report(f"findim {args.op}", algebra, {})
    if args.op == "enumerate-ideals":
        ideals = enumerate_two_sided_ideals(algebra)
        report.set_result(
            {
                "count": len(ideals),
                "ideals": [
                    {
                        "dim": i.dim,
                        "basis": [algebra.element_str(v) for v in i.basis],
                    }
                    for i in ideals
                ],
            }
        )
        return report.finish(), EXIT_OK
    systems = enumerate_filter_systems(algebra)
    if args.op == "enumerate-filter-systems":
        report.set_result(
            {
                "count": len(systems),
                "systems": [
                    {
                        "filterSizes": [len(f) for f in fs.filters],
                        "principal": is_principal_fs(fs) is not None,
                    }
                    for fs in systems
                ],
            }
        )
        return report.finish(), EXIT_OK
    if args.op == "roundtrip":
        results = [filter_system_roundtrip(fs) for fs in systems]
        report.set_result({"systems": len(systems), "allRoundtrip": all(results)})
        return report.finish(), EXIT_OK
    corpus = modules_up_to_iso(algebra, args.max_dim)
    rows = []
    agree = True
    for idx, fs in enumerate(systems):
        g = is_gabriel_fs(fs)
        e = is_extension_closed_on(fs, corpus, args.max_dim)
        rows.append({"system": idx, "gabriel": g, "extensionClosed": e})
        agree = agree and (g == e)
    report.set_result({"systems": rows, "gabrielMatchesExtensionClosed": agree})
    return report.finish(), EXIT_OK


def cmd_example(args) -> tuple[dict, int]:
    from .scenarios import run_example

    return run_example(args.id, degree=args.degree_bound)


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    handlers = {
        "saturate": cmd_saturate,
        "chain": cmd_chain,
        "check": cmd_check,
        "ideal": cmd_ideal,
        "lattice": cmd_lattice,
        "findim": cmd_findim,
        "example": cmd_example,
    }
    try:
        report, code = handlers[args.command](args)
    except (DegreeBoundTooLow,) as e:
        print(f"undetermined: {e}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except UnknownExample as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SPEC
    except (SatlatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SPEC
    print(to_json(report) if args.json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
