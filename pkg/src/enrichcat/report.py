"""Deterministic JSON and text reports for scenario runs.

Certificates are stored once, keyed by their sha256 digest, and verdicts refer to
them by digest.  Nothing time- or host-dependent goes into a report, so repeated
runs of one scenario produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .chain import ChainCosmos
from .finvect import FinVect
from .harness import Certificate, Verdict
from .linalg import FpMatrix
from .runner import CHECK_ANCHORS, CheckResult
from .scenario import Scenario

FORMAT_VERSION = 1


def substitution_note(sc: Scenario) -> str:
    lo, hi = sc.bounds
    return (
        f"Base cosmos is FinVect over F_{sc.modulus}, a finite stand-in for a locally finitely presentable "
        f"cosmos; chain complexes are cochain complexes bounded to degrees [{lo}, {hi}]. "
        "Conditions on infinite (filtered) colimits are probed on finite index categories only."
    )


def cosmos_description(sc: Scenario) -> str:
    if sc.cosmos == "chain":
        return ChainCosmos(sc.modulus, sc.bounds).describe()
    return FinVect(sc.modulus).describe()


def _verdict_entry(v: Verdict, table: dict) -> dict:
    d = v.to_dict()
    refs = []
    for c in v.certificates:
        digest = c.digest()
        table.setdefault(digest, c.payload())
        refs.append(digest)
    d["certificates"] = refs
    return d


def _outcome(r: CheckResult) -> str:
    return "pass" if r.passed else "fail"


def build_report(sc: Scenario, results: list[CheckResult], seed: int, max_dim: int) -> dict:
    table: dict = {}
    checks = []
    for r in results:
        entry = {
            "index": r.index,
            "line": r.line,
            "label": r.label,
            "kind": r.kind,
            "anchor": CHECK_ANCHORS[r.kind],
            "expected": r.expected,
            "outcome": _outcome(r),
        }
        if r.subchecks:
            entry["verdict"] = {k: v for k, v in r.verdict.to_dict().items() if k != "certificates"}
            entry["subchecks"] = [{"name": name, **_verdict_entry(v, table)} for name, v in r.subchecks]
        else:
            entry["verdict"] = _verdict_entry(r.verdict, table)
        entry["probe_inventory"] = r.extra.get("probe_inventory", [])
        info = {k: v for k, v in r.extra.items() if k != "probe_inventory"}
        if info:
            entry["info"] = info
        checks.append(entry)
    passed = sum(r.passed for r in results)
    return {
        "format": FORMAT_VERSION,
        "scenario": {
            "name": sc.name,
            "file": Path(sc.path).name,
            "modulus": sc.modulus,
            "cosmos": cosmos_description(sc),
            "seed": seed,
            "max_dim": max_dim,
        },
        "substitution": substitution_note(sc),
        "checks": checks,
        "certificates": table,
        "summary": {"checks": len(results), "as_expected": passed, "unexpected": len(results) - passed},
        "ok": passed == len(results),
    }


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _tag(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _verdict_lines(v: dict, indent: str, verbose: bool) -> list[str]:
    out = [f"{indent}scope: {v['scope']}", f"{indent}detail: {v['detail']}"]
    if v.get("counterexample"):
        out.append(f"{indent}counterexample: {json.dumps(v['counterexample'], sort_keys=True)}")
    certs = v.get("certificates") or []
    if certs:
        out.append(f"{indent}certificates: {len(certs)}, first {certs[0][:16]}")
        if verbose:
            out.extend(f"{indent}  {d}" for d in certs)
    return out


def to_text(report: dict, verbose: bool = True) -> str:
    s = report["scenario"]
    lines = [
        f"scenario {s['name']} ({s['file']})",
        f"modulus {s['modulus']}, seed {s['seed']}, max-dim {s['max_dim']}",
        f"cosmos: {s['cosmos']}",
        f"note: {report['substitution']}",
        "",
    ]
    for c in report["checks"]:
        v = c["verdict"]
        expect = "" if c["expected"] == "pass" else f"  [expected {c['expected']}, got {v['verdict']}]"
        lines.append(f"[{_tag(c['outcome'] == 'pass')}] line {c['line']}: {c['label']}{expect}")
        lines.append(f"       anchor: {c['anchor']}")
        if "subchecks" in c:
            lines.append(f"       detail: {v['detail']}")
            for sub in c["subchecks"]:
                lines.append(f"       [{_tag(sub['verdict'] == 'pass')}] {sub['name']}")
                if verbose or sub["verdict"] != "pass":
                    lines.append(f"              anchor: {sub['anchor']}")
                    lines.extend(_verdict_lines(sub, "              ", verbose))
        else:
            lines.extend(_verdict_lines(v, "       ", verbose))
        for k, val in sorted(c.get("info", {}).items()):
            lines.append(f"       {k}: {val}")
    sm = report["summary"]
    lines += ["", f"{sm['as_expected']}/{sm['checks']} checks as expected",
              f"RESULT: {_tag(report['ok'])}"]
    return "\n".join(lines) + "\n"


def write_reports(report: dict, json_path: Path, txt_path: Path) -> None:
    json_path.parent.mkdir(parents=True, exist_ok=True)
    txt_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(to_json(report))
    txt_path.write_text(to_text(report))


# re-verification from a written report --------------------------------------------------

def certificate_from_payload(payload: dict) -> Certificate:
    mats = tuple(FpMatrix(m["p"], m["entries"], tuple(m["shape"])) for m in payload["matrices"])
    return Certificate(payload["kind"], mats, payload["note"])


def recheck_report(report: dict) -> list[str]:
    """Problems found when re-verifying every stored certificate; empty when all hold."""
    problems = []
    table = report.get("certificates", {})
    for digest, payload in sorted(table.items()):
        got = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        if got != digest:
            problems.append(f"{digest[:16]}: digest does not match payload")
            continue
        if not certificate_from_payload(payload).recheck():
            problems.append(f"{digest[:16]}: {payload['kind']} certificate does not hold ({payload['note']})")
    for c in report.get("checks", []):
        verdicts = c.get("subchecks") or [c["verdict"]]
        for v in verdicts:
            for d in v.get("certificates", []):
                if d not in table:
                    problems.append(f"line {c['line']}: certificate {d[:16]} missing from the table")
    return problems
