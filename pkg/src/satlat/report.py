"""JSON certificate reports: one schema for every command.

Every report carries the command, the ring description, the parsed
inputs, a result, an exactness tag, and re-checkable certificates and
witnesses.  Identical invocations produce byte-identical reports except
for the timing field.
"""

from __future__ import annotations

import json
import time


def describe_ring(ring) -> dict:
    from .findim import StructAlgebra
    from .ring import QRing

    if isinstance(ring, QRing):
        q = {
            f"{i + 1},{j + 1}": ring.field.render(ring.q[i][j])
            for i in range(ring.n)
            for j in range(i + 1, ring.n)
            if ring.q[i][j] != ring.field.one
        }
        return {
            "type": "quantum",
            "field": ring.field.name,
            "vars": list(ring.names),
            "q": q,
        }
    if isinstance(ring, StructAlgebra):
        return {
            "type": "findim",
            "field": ring.field.name,
            "basis": list(ring.labels),
            "unit": list(ring.unit_labels),
        }
    return {"type": "unknown"}


class Report:
    def __init__(self, command: str, ring=None, inputs: dict | None = None):
        self.started = time.monotonic()
        self.data = {
            "command": command,
            "ring": describe_ring(ring) if ring is not None else None,
            "inputs": inputs or {},
            "result": None,
            "exactness": "exact",
            "certificates": [],
            "witnesses": [],
            "chain": [],
            "timing_ms": 0,
        }

    def set_result(self, result, exactness=None):
        self.data["result"] = result
        if exactness is not None:
            self.data["exactness"] = (
                exactness.as_json() if hasattr(exactness, "as_json") else exactness
            )
        return self

    def add_certificate(self, cert: dict):
        self.data["certificates"].append(cert)
        return self

    def add_witness(self, witness, **extra):
        entry = {"witness": str(witness)}
        entry.update(extra)
        self.data["witnesses"].append(entry)
        return self

    def set_chain(self, chain_json):
        self.data["chain"] = chain_json
        return self

    def finish(self) -> dict:
        self.data["timing_ms"] = round((time.monotonic() - self.started) * 1000, 3)
        return self.data


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    """Human-readable rendering of a report."""
    lines = [f"command: {report['command']}"]
    if report.get("ring"):
        ring = report["ring"]
        if ring["type"] == "quantum":
            lines.append(f"ring: quantum {ring['vars']} over {ring['field']} q={ring['q']}")
        else:
            lines.append(f"ring: findim {ring['basis']} over {ring['field']}")
    for key, value in report.get("inputs", {}).items():
        lines.append(f"input {key}: {value}")
    lines.append(f"result: {_fmt(report.get('result'))}")
    lines.append(f"exactness: {_fmt(report.get('exactness'))}")
    for w in report.get("witnesses", []):
        detail = ", ".join(f"{k}={v}" for k, v in w.items() if k != "witness")
        lines.append(f"witness: {w['witness']}" + (f" ({detail})" if detail else ""))
    for c in report.get("certificates", []):
        lines.append(f"certificate: {json.dumps(c, sort_keys=True)}")
    if report.get("chain"):
        lines.append(f"chain: {json.dumps(report['chain'], sort_keys=True)}")
    return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)
