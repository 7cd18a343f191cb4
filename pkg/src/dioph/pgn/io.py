"""Deterministic CSV (RFC 4180) and JSON export of simulator results.

Exact integers are serialized as decimal strings to avoid consumer-side
overflow; reals are printed at an explicit significant-digit count with
round-half-even.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable, List, Sequence, TextIO

from ..numerics import format_real
from .analysis import ExponentEstimates, IntersectionRow, TheoremVReport
from .profile import ProfileSample
from .vectors import MinimalPointSequence

__all__ = [
    "write_sequence_csv",
    "write_profile_csv",
    "write_diagnostics_csv",
    "sequence_to_dicts",
    "profile_to_dicts",
    "estimates_to_dict",
    "theorem_report_to_dict",
    "dump_json",
]

_CSV_KW = dict(lineterminator="\r\n")


def write_sequence_csv(seq: MinimalPointSequence, out: TextIO, significant: int = 12) -> None:
    n = len(seq.points[0].y) if seq.points else 0
    w = csv.writer(out, **_CSV_KW)
    w.writerow(["x"] + [f"y_{i+1}" for i in range(n)] + ["Y", "log_x", "log_Y"])
    for v in seq.points:
        w.writerow(
            [str(v.x)]
            + [str(c) for c in v.y]
            + [format_real(v.Y, significant), format_real(v.log_x, significant), format_real(v.log_Y, significant)]
        )


def write_profile_csv(samples: Sequence[ProfileSample], n: int, out: TextIO, significant: int = 12) -> None:
    w = csv.writer(out, **_CSV_KW)
    w.writerow(["q"] + [f"L_{j+1}" for j in range(n + 1)])
    for s in samples:
        w.writerow([format_real(s.q, significant)] + [format_real(v, significant) for v in s.L])


def write_diagnostics_csv(rows: Iterable[IntersectionRow], out: TextIO, significant: int = 12) -> None:
    w = csv.writer(out, **_CSV_KW)
    w.writerow(["k", "q", "r", "s", "u", "p", "q_order_ok", "u_order_ok"])
    for r in rows:
        w.writerow(
            [str(r.k)]
            + [format_real(v, significant) for v in (r.q, r.r, r.s, r.u, r.p)]
            + [str(r.q_order_ok).lower(), str(r.u_order_ok).lower()]
        )


def sequence_to_dicts(seq: MinimalPointSequence, significant: int = 12) -> List[dict]:
    """JSON-ready rows; x and y as decimal strings to avoid overflow."""
    return [
        {
            "x": str(v.x),
            "y": [str(c) for c in v.y],
            "Y": format_real(v.Y, significant),
            "log_x": format_real(v.log_x, significant),
            "log_Y": format_real(v.log_Y, significant),
        }
        for v in seq.points
    ]


def profile_to_dicts(samples: Sequence[ProfileSample], significant: int = 12) -> List[dict]:
    return [
        {
            "q": format_real(s.q, significant),
            "L": [format_real(v, significant) for v in s.L],
            "witnesses": list(s.witnesses),
        }
        for s in samples
    ]


def estimates_to_dict(est: ExponentEstimates, significant: int = 12) -> dict:
    f = lambda v: format_real(v, significant)
    return {
        "lambda_est": f(est.lambda_est),
        "lambda_hat_est": f(est.lambda_hat_est),
        "psi_low_est": f(est.psi_low_est),
        "psi_high_est": f(est.psi_high_est),
        "w_est": f(est.w_est),
        "w_hat_est": f(est.w_hat_est),
        "window_q": [f(est.window[0]), f(est.window[1])],
        "window_log_x": [f(est.window_log_x[0]), f(est.window_log_x[1])],
    }


def theorem_report_to_dict(rep: TheoremVReport, significant: int = 12) -> dict:
    f = lambda v: format_real(v, significant)
    return {
        "alpha": f(rep.alpha),
        "beta": f(rep.beta),
        "epsilon": f(rep.epsilon),
        "threshold": f(rep.threshold),
        "hypothesis_ok": rep.hypothesis_ok,
        "fitted_C": f(rep.fitted_C),
        "prop1_margin": f(rep.prop1_margin),
        "prop2_margin": f(rep.prop2_margin),
        "independence_ok": rep.independence_ok,
        "record_ok": rep.record_ok,
    }


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace variance."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
