"""Verification report assembly with atomic JSON output.

A report is a suite name, the resolved config, and a list of case dicts.
Case ids are stable across runs with the same seed and config; the only
nondeterministic field is the timing block, which writers keep separate
so reports can be compared with it stripped.
"""

import json
import os
import tempfile
import time

from .serialize import digest, dumps_canonical

SCHEMA = "rcq-report/1"


def make_case(case_id: str, ok: bool, ref: str = "", inputs=None, witness=None):
    case = {"id": case_id, "ref": ref, "status": "PASS" if ok else "FAIL"}
    if inputs is not None:
        case["inputs"] = digest(inputs)
    if not ok:
        case["witness"] = witness if witness is not None else {}
    return case


class VerificationReport:

    def __init__(self, suite: str, config: dict = None):
        self.suite = suite
        self.config = dict(config or {})
        self.cases = []
        self.extras = {}
        self._t0 = time.monotonic()
        self.elapsed = None

    def add(self, case: dict):
        """Accept either a make_case dict or a raw {'id', 'ok', ...} result."""
        if "status" not in case:
            case = make_case(case["id"], case["ok"], ref=case.get("ref", ""),
                             inputs=case.get("inputs"),
                             witness=case.get("witness"))
        self.cases.append(case)

    def extend(self, cases):
        for c in cases:
            self.add(c)

    def finish(self):
        if self.elapsed is None:
            self.elapsed = time.monotonic() - self._t0
        return self

    @property
    def failed(self):
        return [c for c in self.cases if c["status"] != "PASS"]

    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        self.finish()
        out = {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config,
            "summary": {"total": len(self.cases),
                        "passed": len(self.cases) - len(self.failed),
                        "failed": len(self.failed),
                        "status": "PASS" if self.ok() else "FAIL"},
            "cases": self.cases,
            "timing": {"seconds": round(self.elapsed, 3)},
        }
        out.update(self.extras)
        return out

    def text(self) -> str:
        lines = [f"suite {self.suite}"]
        for c in self.cases:
            line = f"  {c['status']} {c['id']}"
            if c["status"] != "PASS" and c.get("witness"):
                line += f"  witness: {json.dumps(c['witness'])[:200]}"
            lines.append(line)
        s = self.to_json()["summary"]
        lines.append(f"{s['status']}: {s['passed']}/{s['total']} cases passed"
                     f" ({self.elapsed:.2f}s)")
        return "\n".join(lines)

    def write(self, path: str):
        """Atomic write: the file either keeps its old content or has the
        complete new report, never a partial one."""
        payload = dumps_canonical(self.to_json()) + "\n"
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rcq-report-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def strip_timing(report_json: dict) -> dict:
    out = dict(report_json)
    out.pop("timing", None)
    return out


def check_report(check: str, order, cases) -> dict:
    """Flat output shape for computation subcommands:
    {check, order, cases: [{inputs, lhs, rhs, equal}]}."""
    return {"check": check, "order": order, "cases": list(cases)}
