"""Identity-check reports.

A check is a list of families. Each family is a residual tensor (lhs - rhs)
whose leading axes run over basis tuples and whose last axis is the output
vector. A tuple violates the family when its residual vector is nonzero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .exact import canon

DEFAULT_CAP = 32


@dataclass(frozen=True)
class Violation:
    tag: str
    index: tuple
    residual: tuple  # lhs - rhs, exact

    def to_dict(self) -> dict:
        return {"tag": self.tag, "index": list(self.index), "residual": [str(x) for x in self.residual]}


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)  # tag -> number of violating tuples
    cap: int = DEFAULT_CAP

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __bool__(self):
        return self.passed

    def tags(self) -> set:
        return {v.tag for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total_violations": self.total,
            "counts": dict(self.counts),
            "violations": [v.to_dict() for v in self.violations],
        }

    def summary(self) -> str:
        if self.passed:
            return "PASS"
        fams = ", ".join(f"{t}: {c}" for t, c in self.counts.items())
        return f"FAIL ({self.total} violations; {fams})"


def _check_cap(cap: int):
    if cap < 1:
        raise ValueError("violation cap must be at least 1")


def from_residuals(families: Iterable, cap: int = DEFAULT_CAP) -> CheckReport:
    """Build a report from (tag, residual) pairs in a fixed family order."""
    _check_cap(cap)
    report = CheckReport(cap=cap)
    for tag, res in families:
        res = np.asarray(res)
        if res.size == 0:
            continue
        bad = np.argwhere(np.any(res != 0, axis=-1))
        if not len(bad):
            continue
        report.counts[tag] = len(bad)
        room = cap - len(report.violations)
        for idx in bad[:max(room, 0)]:
            idx = tuple(int(i) for i in idx)
            report.violations.append(Violation(tag, idx, tuple(canon(res[idx]).tolist())))
    return report


def merge(parts: Iterable, cap: int = DEFAULT_CAP) -> CheckReport:
    """Concatenate (prefix, report) pairs, prefixing tags and re-applying the cap."""
    _check_cap(cap)
    out = CheckReport(cap=cap)
    for prefix, rep in parts:
        name = (lambda t: f"{prefix}:{t}") if prefix else (lambda t: t)
        for t, c in rep.counts.items():
            out.counts[name(t)] = out.counts.get(name(t), 0) + c
        for v in rep.violations:
            if len(out.violations) < cap:
                out.violations.append(Violation(name(v.tag), v.index, v.residual))
    return out
