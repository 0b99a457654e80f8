"""Versioned analysis reports."""
from __future__ import annotations

import json
import time

from .analysis import classify, is_saturated, saturation_bound_holds, saturation_graph, two_valenced_k
from .core import Scheme
from .desargues import is_desarguesian
from .iso import schurity, separability_report

SCHEMA_VERSION = 1


def saturation_section(X: Scheme, k=None) -> dict:
    k = k if k is not None else two_valenced_k(X)
    if k is None:
        return {"k": None, "saturated": None, "reason": "not two-valenced"}
    G = saturation_graph(X, k)
    sat = is_saturated(X, k)
    return {
        "k": k,
        "vertices": len(G.vertices),
        "edges": int((G.adj.sum() + G.adj.trace()) // 2),
        "loops": int(G.adj.trace()),
        "complete": G.is_complete(),
        "saturated": sat.saturated,
        "witness": None if sat.witness is None else list(sat.witness),
        "bound_holds": saturation_bound_holds(X, k),
    }


def desargues_section(X: Scheme) -> dict:
    if two_valenced_k(X) is None:
        return {"desarguesian": None, "reason": "not two-valenced"}
    return is_desarguesian(X).as_dict()


def build_report(X: Scheme, separability: bool = True, seeds: str = "anchored", timing: bool = False) -> dict:
    """Every field is recomputed from X; with ``timing`` wall-clock seconds per section are added."""
    clock = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        clock[name] = round(time.perf_counter() - t0, 6)
        return out

    report = {
        "schema_version": SCHEMA_VERSION,
        "scheme": {"n": X.n, "rank": X.rank, "sha256": X.digest,
                   "valencies": [int(v) for v in X.valencies]},
        "classification": timed("classification", lambda: classify(X).as_dict()),
        "saturation": timed("saturation", lambda: saturation_section(X)),
        "desargues": timed("desargues", lambda: desargues_section(X)),
        "schurity": timed("schurity", lambda: schurity(X).as_dict()),
    }
    if separability:
        rep = timed("separability", lambda: separability_report(X, seeds=seeds))
        report["separability"] = rep.as_dict()
    if timing:
        report["timing"] = clock
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
