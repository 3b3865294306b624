"""JSON-ready views of bound and solution reports.

Rationals are emitted as ``"p/q"`` strings (``"3"`` when integral); no float
ever reaches the output.
"""

from __future__ import annotations

import json
from typing import Any

from .bounds import BoundReport
from .places import Divisor, PlaceSet
from .solver import Index, SolutionReport, VerifyResult, WindowResult


def q(value) -> str:
    return str(value)


def places_doc(S: PlaceSet) -> list[str]:
    return S.tokens()


def divisor_doc(d: Divisor | None) -> dict[str, Any] | None:
    if d is None:
        return None
    return {
        "finite": [{"place": b.render(), "valuation": v} for b, v in d.entries.items()],
        "infinity": d.at_infinity,
    }


def index_doc(idx: Index) -> int | list[int]:
    return list(idx) if isinstance(idx, tuple) else idx


def bound_doc(rep: BoundReport) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "kind": rep.kind,
        "genus": rep.genus,
        "user_S": places_doc(rep.user_S),
        "enlarged_S": places_doc(rep.enlarged_S),
        "s_count": rep.s_count,
        "constants": {k: q(v) for k, v in rep.constants.items()},
        "governing": list(rep.governing),
        "final_bound": rep.final_bound,
        "heights": dict(rep.heights),
    }
    if rep.kind == "pair":
        doc["gaps"] = [{"pair": [i, j], "gap": q(g)} for (i, j), g in sorted(rep.gaps.items())]
        doc["s_prime"] = places_doc(rep.s_prime)
        doc["s_prime_count"] = rep.s_prime_count
        doc["shifts"] = [
            {
                "b": s.b,
                "coefficients": [c.render() for c in s.coeffs],
                "max_coeff_ratio_height": s.coeff_ratio_height,
                "bound": q(s.bound),
            }
            for s in rep.shifts
        ]
    return doc


def window_doc(w: WindowResult) -> dict[str, Any]:
    return {
        "lo": w.lo,
        "hi": w.hi,
        "count": w.count,
        "solutions": [index_doc(i) for i in w.solutions],
    }


def solution_doc(rep: SolutionReport) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "mode": rep.mode,
        "bound": bound_doc(rep.bound_report),
        "solutions": [
            {
                "index": index_doc(idx),
                "value": rep.witnesses[idx].value.render(),
                "divisor": divisor_doc(rep.witnesses[idx].divisor),
            }
            for idx in rep.solutions
        ],
        "user_S_solutions": [index_doc(i) for i in rep.user_solutions],
        "cross_checked_values": rep.cross_checked,
    }
    if rep.scan_window is not None:
        doc["window"] = window_doc(rep.scan_window)
    return doc


def verify_doc(res: VerifyResult) -> dict[str, Any]:
    return {
        "indices": list(res.indices),
        "enlarged_S": places_doc(res.enlarged_S),
        "value": res.value.render(),
        "s_unit": res.verdict,
        "divisor": divisor_doc(res.divisor),
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"
