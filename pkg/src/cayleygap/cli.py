"""Command line front end.

Exit codes: 0 on success, 1 on usage or input errors (including a size cap
exceeded without an override), 2 when a verified identity fails.

Default caps can be set through the ``CAYLEYGAP_DENSE_CAP`` and
``CAYLEYGAP_IRREP_CAP`` environment variables.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import serialize as ser
from .bounds import (
    DEFAULT_IRREP_CAP,
    GAP_TOL,
    branching_lower_bound,
    default_decomposition,
    gap_report,
    gap_s2,
    has_property_A,
    hook,
    psi_n11_via_defining,
    recursion_check,
    top_defining_eigenvalues,
)
from .errors import CapExceededError, VerificationError
from .perms import (
    GroupAlgebraElement,
    adjacent_transpositions_element,
    all_transpositions_element,
    is_symmetric,
    l1_norm,
    random_symmetric_element,
    reversal_element,
)
from .spectra import (
    DEFAULT_DENSE_CAP,
    cayley_gap_dense,
    cayley_gap_irrep,
    dense_spectrum,
    full_spectrum_irrep,
    integer_check,
    psi,
    schreier_graph_n22,
    schreier_spectrum,
    spectrum_subset,
    sym_eigenvalues,
)
from .young import defining_rep_matrix

COMMANDS = ("gap", "spectrum", "schreier", "bound", "property-a", "verify")
GENERATOR_FAMILIES = {
    "reversals": reversal_element,
    "adjacent-transpositions": adjacent_transpositions_element,
    "all-transpositions": all_transpositions_element,
}
METHODS = ("irrep", "dense", "defining")
OUTPUTS = ("json", "csv", "table")
RANDOM_SEED = 20260101


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    generators: str = "reversals"
    method: str = "irrep"
    tolerance: float = GAP_TOL
    output: str = "json"
    dense_cap: int = DEFAULT_DENSE_CAP
    irrep_cap: int = DEFAULT_IRREP_CAP
    schreier: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be at least 1")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.output not in OUTPUTS:
            raise UsageError(f"unknown output format {self.output!r}")


def resolve_element(cfg: RunConfig) -> GroupAlgebraElement:
    if cfg.generators in GENERATOR_FAMILIES:
        if cfg.n is None:
            raise UsageError("--n is required with a named generator family")
        return GENERATOR_FAMILIES[cfg.generators](cfg.n)
    path = Path(cfg.generators)
    if not path.is_file():
        raise UsageError(f"generators must be one of {sorted(GENERATOR_FAMILIES)} or a JSON file, got {cfg.generators!r}")
    try:
        w = ser.load_element(path)
    except (ValueError, OSError) as exc:
        raise UsageError(f"cannot read generator file: {exc}") from exc
    if cfg.n is not None and cfg.n != w.n:
        raise UsageError(f"--n {cfg.n} does not match the degree {w.n} in {path}")
    if not is_symmetric(w, tol=1e-12):
        raise UsageError(f"{path}: weights are not symmetric under inversion")
    return w


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _check_irrep_cap(n: int, cfg: RunConfig) -> None:
    if n > cfg.irrep_cap:
        raise CapExceededError(f"n={n} exceeds the irrep cap {cfg.irrep_cap}; raise it with --irrep-cap")


def _value(x: float, method: str) -> dict:
    return {"value": ser.num(x), "method": method}


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def cmd_gap(cfg: RunConfig, w: GroupAlgebraElement) -> tuple[int, dict, str, str]:
    _require(w.n >= 2, "the spectral gap needs n >= 2")
    result = {"command": "gap", "n": w.n, "generators": cfg.generators}
    if cfg.method == "irrep":
        _check_irrep_cap(w.n, cfg)
        res = cayley_gap_irrep(w)
        result.update(gap=_value(res.gap, "irrep"), argmin_partition=list(res.argmin), generates=res.generates)
        if w.n == 2:
            result["gap_s2"] = _value(gap_s2(w), "closed-form")
    elif cfg.method == "dense":
        result.update(gap=_value(cayley_gap_dense(w, cap=cfg.dense_cap), "dense"))
    else:
        # the defining representation only sees [n-1,1], so this is an upper bound on the gap
        result.update(gap_upper_bound=_value(psi_n11_via_defining(w), "defining"))
    key = "gap" if "gap" in result else "gap_upper_bound"
    value = result[key]
    csv_text = f"n,method,{key}\n{w.n},{value['method']},{value['value']!r}\n"
    table = _table([[w.n, value["method"], value["value"], " ".join(map(str, result.get("argmin_partition", [])))]],
                   ["n", "method", key, "argmin"])
    return 0, result, csv_text, table


def cmd_spectrum(cfg: RunConfig, w: GroupAlgebraElement) -> tuple[int, dict, str, str]:
    if cfg.schreier:
        _require(w.n >= 3, "the (n-2,2) Schreier graph needs n >= 3")
        spec = schreier_spectrum(schreier_graph_n22(w))
        method = "schreier"
    elif cfg.method == "irrep":
        _check_irrep_cap(w.n, cfg)
        spec = full_spectrum_irrep(w)
        method = "irrep"
    elif cfg.method == "dense":
        spec = dense_spectrum(w, cap=cfg.dense_cap)
        method = "dense"
    else:
        spec = sym_eigenvalues(l1_norm(w) * np.eye(w.n) - defining_rep_matrix(w), cfg.tolerance)
        method = "defining"
    result = ser.spectrum_to_json(spec, w.n, method)
    result = {"command": "spectrum", "generators": cfg.generators, **result}
    if cfg.schreier:
        ok, ints = integer_check(spec, w.n)
        result["integral"] = ok
        result["distinct_integers"] = ints
    distinct = [(v, spec.multiplicity(v)) for v in spec.distinct()]
    table = _table([[ser.num(v), m] for v, m in distinct], ["eigenvalue", "multiplicity"])
    return 0, result, ser.spectrum_to_csv(spec), table


def cmd_schreier(cfg: RunConfig, w: GroupAlgebraElement) -> tuple[int, dict, str, str]:
    _require(w.n >= 3, "the (n-2,2) Schreier graph needs n >= 3")
    graph = schreier_graph_n22(w)
    spec = schreier_spectrum(graph)
    ok, ints = integer_check(spec, w.n)
    result = {
        "command": "schreier",
        "generators": cfg.generators,
        **ser.schreier_to_json(graph),
        "spectrum": ser.spectrum_to_json(spec, w.n, "schreier"),
        "gap": _value(spec.gap, "schreier"),
        "integral": ok,
        "distinct_integers": ints,
    }
    table = _table(
        [[w.n, len(graph.vertices), len(graph.generators), ser.num(spec.gap), ok, " ".join(map(str, ints))]],
        ["n", "vertices", "generators", "gap", "integral", "eigenvalues"],
    )
    return 0, result, ser.schreier_to_csv(graph), table


def cmd_bound(cfg: RunConfig, w: GroupAlgebraElement) -> tuple[int, dict, str, str]:
    _require(w.n >= 2, "the branching bound needs n >= 2")
    _check_irrep_cap(w.n, cfg)
    d = default_decomposition(w)
    bound = branching_lower_bound(d)
    gap = cayley_gap_irrep(w).gap
    code = 0
    failures = []
    try:
        steps = recursion_check(d, cap=cfg.irrep_cap)
    except VerificationError as exc:
        steps, code = [], 2
        failures.append(str(exc))
    if bound > gap + cfg.tolerance:
        code = 2
        failures.append(f"lower bound {bound!r} exceeds the gap {gap!r}")
    result = {
        "command": "bound",
        "n": w.n,
        "generators": cfg.generators,
        "lower_bound": _value(bound, "irrep"),
        "gap": _value(gap, "irrep"),
        "slack": _value(gap - bound, "irrep"),
        "pieces": [{"k": k, "l1_norm": ser.num(l1_norm(z)), "terms": len(z)} for k, z in enumerate(d.pieces, start=1)],
        "psi_hooks": [
            {"k": k, "psi": ser.num(psi_value)}
            for k, psi_value in ((k, _psi_hook(d, k)) for k in range(2, w.n + 1))
        ],
        "recursion": [{"n": s.n, "lhs": ser.num(s.lhs), "rhs": ser.num(s.rhs)} for s in steps],
        "failures": failures,
    }
    csv_text = "k,psi\n" + "".join(f"{r['k']},{r['psi']!r}\n" for r in result["psi_hooks"])
    table = _table([[r["k"], r["psi"]] for r in result["psi_hooks"]], ["k", "psi((k-1,1), w_k)"])
    table += f"lower bound {ser.num(bound)}   gap {ser.num(gap)}\n"
    return code, result, csv_text, table


def _psi_hook(d, k: int) -> float:
    return psi(hook(k), d.partial_sum(k))


def cmd_property_a(cfg: RunConfig, w: GroupAlgebraElement) -> tuple[int, dict, str, str]:
    _require(w.n >= 2, "property (A) needs n >= 2")
    _check_irrep_cap(w.n, cfg)
    holds, worst = has_property_A(w)
    res = cayley_gap_irrep(w)
    psi_n11 = next(row.psi for row in res.table if row.partition == hook(w.n))
    a2 = abs(res.gap - psi_n11) <= cfg.tolerance
    result = {
        "command": "property-a",
        "n": w.n,
        "generators": cfg.generators,
        "property_A": holds,
        "worst_partition": list(worst),
        "A2": a2,
        "gap": _value(res.gap, "irrep"),
        "psi_n11": _value(psi_n11, "irrep"),
        "table": [
            {"partition": list(r.partition), "lambda_max": ser.num(r.lambda_max), "psi": ser.num(r.psi)}
            for r in res.table
        ],
    }
    code = 0 if holds == a2 else 2
    csv_text = "partition,lambda_max,psi\n" + "".join(
        f"\"{' '.join(map(str, r['partition']))}\",{r['lambda_max']!r},{r['psi']!r}\n" for r in result["table"]
    )
    table = _table([[" ".join(map(str, r["partition"])), r["lambda_max"], r["psi"]] for r in result["table"]],
                   ["partition", "lambda_max", "psi"])
    table += f"property (A): {holds}   worst partition: {list(worst)}\n"
    return code, result, csv_text, table


def verify_all(
    n_max: int,
    tol: float = GAP_TOL,
    dense_cap: int = DEFAULT_DENSE_CAP,
    irrep_cap: int = DEFAULT_IRREP_CAP,
) -> tuple[int, dict]:
    """Run every verification up to degree n_max; exit code 0 iff all pass."""
    if n_max < 2:
        raise UsageError("verify needs n >= 2")
    if n_max > irrep_cap:
        raise CapExceededError(f"n={n_max} exceeds the irrep cap {irrep_cap}; raise it with --irrep-cap")
    checks: list[dict] = []

    def record(name: str, n: int, ok: bool, detail: str = "") -> None:
        checks.append({"check": name, "n": n, "ok": bool(ok), "detail": detail})

    w2 = reversal_element(2)
    base, irrep2 = gap_s2(w2), cayley_gap_irrep(w2).gap
    record("base-case-s2", 2, base == 2.0 and irrep2 == 2.0, f"closed form {base}, irrep {irrep2}")

    reports = []
    for n in range(3, n_max + 1):
        try:
            report = gap_report(reversal_element(n), use_dense_oracle=n <= dense_cap, dense_cap=dense_cap)
        except VerificationError as exc:
            record("unit-gap", n, False, str(exc))
            continue
        reports.append(report)
        failures = report.failures(1.0, tol)
        record("unit-gap", n, not failures, "; ".join(failures))

    for n in range(3, n_max + 1):
        w = reversal_element(n)
        value = psi_n11_via_defining(w)
        top = top_defining_eigenvalues(w, 3)
        ok = (abs(value - 1) <= 1e-8 and abs(top[0] - n) <= 1e-8 and abs(top[1] - (n - 1)) <= 1e-8
              and top[1] - top[2] > 1e-6)
        record("defining-rep", n, ok, f"psi {value!r}, top eigenvalues {[ser.num(t) for t in top]}")

    rng = np.random.default_rng(RANDOM_SEED)
    for n in range(2, min(n_max, dense_cap) + 1):
        families = {name: make(n) for name, make in GENERATOR_FAMILIES.items()}
        families["random-symmetric"] = random_symmetric_element(n, rng)
        for name, w in families.items():
            ok = full_spectrum_irrep(w).multiset_equal(dense_spectrum(w, cap=dense_cap), tol)
            record(f"oracle-equivalence:{name}", n, ok)

    for n in range(3, n_max + 1):
        spec = schreier_spectrum(schreier_graph_n22(reversal_element(n)))
        integral, ints = integer_check(spec, n)
        ok = integral and abs(spec.gap - 1) <= 1e-6 and (n < 8 or ints == list(range(n + 1)))
        record("schreier-integrality", n, ok, f"eigenvalues {ints}")
        sub = spectrum_subset(spec, full_spectrum_irrep(reversal_element(n)), tol)
        record("schreier-subset", n, sub)

    failures = [c for c in checks if not c["ok"]]
    payload = {
        "command": "verify",
        "n_max": n_max,
        "reports": [ser.gap_report_to_json(r) for r in reports],
        "checks": checks,
        "failures": failures,
    }
    return (2 if failures else 0), payload


def cmd_verify(cfg: RunConfig) -> tuple[int, dict, str, str]:
    _require(cfg.n is not None, "verify needs --n")
    code, payload = verify_all(cfg.n, cfg.tolerance, cfg.dense_cap, cfg.irrep_cap)
    rows = [
        [r["n"], r["gap_irrep"]["value"], r["psi_n11"]["value"], r["lower_bound"]["value"],
         " ".join(map(str, r["argmin_partition"])), r["property_A"]]
        for r in payload["reports"]
    ]
    table = _table(rows, ["n", "gap", "psi_(n-1,1)", "bound", "argmin", "property A"]) if rows else ""
    table += "".join(f"{'PASS' if c['ok'] else 'FAIL'}  {c['check']}  n={c['n']}\n" for c in payload["checks"])
    csv_text = "check,n,ok\n" + "".join(f"{c['check']},{c['n']},{c['ok']}\n" for c in payload["checks"])
    return code, payload, csv_text, table


HANDLERS = {
    "gap": cmd_gap,
    "spectrum": cmd_spectrum,
    "schreier": cmd_schreier,
    "bound": cmd_bound,
    "property-a": cmd_property_a,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a configuration and return (exit code, text for standard output)."""
    try:
        cfg.validate()
        if cfg.command == "verify":
            code, result, csv_text, table = cmd_verify(cfg)
        else:
            w = resolve_element(cfg)
            if cfg.method == "dense" and w.n > cfg.dense_cap:
                raise CapExceededError(f"n={w.n} exceeds the dense cap {cfg.dense_cap}; raise it with --dense-cap")
            code, result, csv_text, table = HANDLERS[cfg.command](cfg, w)
    except (UsageError, CapExceededError, ValueError) as exc:
        return 1, ser.dumps({"error": str(exc)}) + "\n"
    if cfg.output == "csv":
        return code, csv_text
    if cfg.output == "table":
        return code, table
    return code, ser.dumps(result) + "\n"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="cayleygap", description="Spectral gaps of Cayley and Schreier graphs on S_n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, help="degree of the symmetric group (n_max for verify)")
        p.add_argument("--generators", default="reversals",
                       help="reversals, adjacent-transpositions, all-transpositions, or a JSON file")
        p.add_argument("--method", choices=METHODS, default="irrep")
        p.add_argument("--tolerance", type=float, default=GAP_TOL)
        p.add_argument("--output", choices=OUTPUTS, default="json")
        p.add_argument("--dense-cap", type=int, default=_env_int("CAYLEYGAP_DENSE_CAP", DEFAULT_DENSE_CAP))
        p.add_argument("--irrep-cap", type=int, default=_env_int("CAYLEYGAP_IRREP_CAP", DEFAULT_IRREP_CAP))
        if name == "spectrum":
            p.add_argument("--schreier", action="store_true", help="spectrum of the (n-2,2) Schreier graph")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        generators=args.generators,
        method=args.method,
        tolerance=args.tolerance,
        output=args.output,
        dense_cap=args.dense_cap,
        irrep_cap=args.irrep_cap,
        schreier=getattr(args, "schreier", False),
    )
    code, text = run(cfg)
    (sys.stdout if code != 1 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
