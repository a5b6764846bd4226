"""JSON and CSV formats for permutations, group algebra elements, spectra, matrices and reports.

Floats are written with 12 significant digits so that output is stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .perms import GroupAlgebraElement, Permutation
from .spectra import SchreierGraph, Spectrum
from .young import Partition, check_partition


ZERO_SNAP = 1e-12


def num(x: float) -> float:
    """Round to 12 significant digits; magnitudes below ZERO_SNAP become 0.0."""
    value = float(f"{float(x):.12g}")
    return 0.0 if abs(value) < ZERO_SNAP else value


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def permutation_to_json(p: Permutation) -> list[int]:
    return list(p.images)


def permutation_from_json(data) -> Permutation:
    if not isinstance(data, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise ValueError(f"a permutation must be a JSON array of integers, got {data!r}")
    return Permutation(tuple(data))


def element_to_json(w: GroupAlgebraElement) -> dict:
    return {"n": w.n, "terms": [{"perm": list(p.images), "weight": num(v)} for p, v in w.items()]}


def element_from_json(data) -> GroupAlgebraElement:
    """Parse ``{"n": n, "terms": [{"perm": [...], "weight": x}, ...]}``; raises ValueError on bad input."""
    if not isinstance(data, dict) or "n" not in data or "terms" not in data:
        raise ValueError('expected an object with keys "n" and "terms"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(data["terms"], list):
        raise ValueError('"terms" must be an array')
    weights: dict[Permutation, float] = {}
    for term in data["terms"]:
        if not isinstance(term, dict) or "perm" not in term or "weight" not in term:
            raise ValueError(f"malformed term {term!r}")
        p = permutation_from_json(term["perm"])
        weight = term["weight"]
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise ValueError(f"weight must be a real number, got {weight!r}")
        weights[p] = weights.get(p, 0.0) + float(weight)
    try:
        return GroupAlgebraElement(n, weights)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


def load_element(path: str | Path) -> GroupAlgebraElement:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return element_from_json(data)


def save_element(w: GroupAlgebraElement, path: str | Path) -> None:
    Path(path).write_text(dumps(element_to_json(w)) + "\n")


def partition_to_json(alpha: Partition) -> list[int]:
    return list(alpha)


def partition_from_json(data) -> Partition:
    return check_partition(data)


def matrix_to_csv(m: np.ndarray) -> str:
    """Row-major CSV; the first line is ``dimension,<d>``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dimension", m.shape[0]])
    for row in m:
        writer.writerow([repr(num(x)) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "dimension":
        raise ValueError("missing dimension header")
    d = int(rows[0][1])
    m = np.array([[float(x) for x in row] for row in rows[1:]], dtype=float).reshape(d, d)
    return m


def spectrum_to_json(spec: Spectrum, n: int, method: str | None = None) -> dict:
    return {"n": n, "method": method or spec.method, "eigenvalues": [num(v) for v in spec.values]}


def spectrum_to_csv(spec: Spectrum) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "eigenvalue"])
    for k, v in enumerate(spec.values, start=1):
        writer.writerow([k, repr(num(v))])
    return buf.getvalue()


def pair_label(pair: tuple[int, int]) -> str:
    return f"{pair[0]},{pair[1]}"


def schreier_to_json(g: SchreierGraph) -> dict:
    return {
        "n": g.n,
        "vertices": [pair_label(v) for v in g.vertices],
        "edges": [
            {"source": pair_label(a), "target": pair_label(b), "generator": list(z.images), "weight": num(w)}
            for a, b, z, w in g.edges()
        ],
    }


def schreier_to_csv(g: SchreierGraph) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "generator", "weight"])
    for a, b, z, w in g.edges():
        writer.writerow([pair_label(a), pair_label(b), " ".join(map(str, z.images)), repr(num(w))])
    return buf.getvalue()


def gap_report_to_json(report) -> dict:
    out = {
        "n": report.n,
        "gap_irrep": {"value": num(report.gap_irrep), "method": "irrep"},
        "gap_dense": None if report.gap_dense is None else {"value": num(report.gap_dense), "method": "dense"},
        "psi_n11": {"value": num(report.psi_n11), "method": "irrep"},
        "lower_bound": {"value": num(report.lower_bound), "method": "irrep"},
        "argmin_partition": list(report.argmin_partition),
        "property_A": report.property_A,
        "generates": report.generates,
        "table": [
            {"partition": list(row.partition), "lambda_max": num(row.lambda_max), "psi": num(row.psi)}
            for row in report.table
        ],
        "recursion": [{"n": s.n, "lhs": num(s.lhs), "rhs": num(s.rhs)} for s in report.recursion],
    }
    return out
