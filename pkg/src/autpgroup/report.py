"""JSON suite reports.

The checksummed ``body`` contains no timing and no timestamps, so two runs
with the same inputs produce identical bodies.  Timing lives beside it.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .groups import GroupSpec
from .suites import Check

SCHEMA = "autpgroup-report/1"


@dataclass
class Conventions:
    side_tiebreak: str = "minus"
    zero_encoder: bool = True
    identity_involution: bool = True
    similarity: str = "enc_eq"

    def as_dict(self) -> dict:
        return {
            "side-tiebreak": self.side_tiebreak,
            "zero-encoder": "on" if self.zero_encoder else "off",
            "identity-involution": "on" if self.identity_involution else "off",
            "similarity": self.similarity,
        }


def group_record(g: GroupSpec) -> dict:
    return {"p": g.p, "exponents": list(g.exponents), "moduli": list(g.moduli),
            "description": g.describe(), "size": g.size}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def checksum(body: dict) -> str:
    return hashlib.sha256(canonical_json(body).encode("ascii")).hexdigest()


def build_report(group: GroupSpec, suite: str, results: list[tuple[str, list[Check]]],
                 conventions: Conventions, budget: int, limit: Optional[int],
                 total_seconds: float = 0.0) -> dict:
    suites = []
    timing = {"total_seconds": round(total_seconds, 3), "checks": {}}
    for name, checks in results:
        suites.append({
            "name": name,
            "passed": all(c.passed for c in checks),
            "checks": [c.body() for c in checks],
        })
        for c in checks:
            timing["checks"][f"{name}/{c.id}"] = round(c.elapsed, 4)
    every = [c for _, cs in results for c in cs]
    body = {
        "tool_version": __version__,
        "group": group_record(group),
        "suite": suite,
        "conventions": conventions.as_dict(),
        "budget": budget,
        "limit": limit,
        "suites": suites,
        "summary": {
            "checks": len(every),
            "failed": sum(not c.passed for c in every),
            "informational": sum(c.informational for c in every),
            "budget_exceeded": sum(c.budget_exceeded for c in every),
        },
        "passed": all(c.passed for c in every),
    }
    return {"schema": SCHEMA, "body": body, "checksum": checksum(body), "timing": timing}


def exit_code(report: dict) -> int:
    body = report["body"]
    if body["passed"]:
        return 0
    return 3 if body["summary"]["budget_exceeded"] else 1


def summary_lines(report: dict) -> list[str]:
    """Human-readable lines derived from the report body."""
    body = report["body"]
    out = [f"group {body['group']['description']} (size {body['group']['size']}), suite {body['suite']}"]
    for s in body["suites"]:
        out.append(f"[{'PASS' if s['passed'] else 'FAIL'}] {s['name']}")
        for c in s["checks"]:
            tag = "info" if c["informational"] else ("ok" if c["passed"] else "FAIL")
            line = f"  {tag:4} {c['id']}: formula={c['formula']} oracle={c['oracle']}"
            if "error" in c:
                line += f" error={c['error']}"
            out.append(line)
    sm = body["summary"]
    out.append(f"{'PASS' if body['passed'] else 'FAIL'}: {sm['checks']} checks, {sm['failed']} failed, "
               f"{sm['informational']} informational; checksum {report['checksum'][:16]}")
    return out


def write_report(report: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
