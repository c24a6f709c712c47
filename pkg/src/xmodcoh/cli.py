"""Command-line interface: subcommand dispatch and structured JSON reports.

Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 internal
invariant violation.  Reports are deterministic for a fixed input and
version, up to the ``timings`` block.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .crossed import validate
from .groupcoh import (
    GL2Z,
    SL2Z,
    bar_cohomology,
    exterior_power_rep,
    gl2z_cohomology,
    sl2z_cohomology,
    standard_rep,
)
from .homology import cohomology, parse_ring
from .nerve import BudgetExceeded, DEFAULT_BUDGET, NerveLevels, check_kan
from .specfile import COMMANDS, SpecError, SpecFile, parse_spec
from .structural import (
    CompactGroupSpec,
    compact_cokernel_cohomology,
    e2_page,
    finite_cokernel_cohomology,
    free_gca_dims,
    kernel_torus_cohomology,
    string_cohomology,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_INTERNAL = 3


class InputError(ValueError):
    pass


def _load_spec(path: str | None) -> SpecFile:
    if path is None:
        return SpecFile()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    return parse_spec(text)


def _get(params: dict, key: str, default=None, required=False):
    if key in params and params[key] is not None:
        return params[key]
    if required:
        raise InputError(f"missing required parameter {key!r}")
    return default


def _xmod(spec: SpecFile, params: dict):
    name = _get(params, "target", required=True)
    if name not in spec.xmods:
        raise InputError(f"unknown crossed module {name!r}")
    return spec.xmods[name]


def _run_validate(spec: SpecFile, params: dict) -> dict:
    target = _get(params, "target")
    names = [target] if target else sorted(spec.xmods)
    results = {}
    for name in names:
        if name not in spec.xmods:
            raise InputError(f"unknown crossed module {name!r}")
        report = validate(spec.xmods[name])
        results[name] = {
            "valid": report.ok,
            "violations": [
                {"identity": kind, "witness": list(w)}
                for kind, w in report.violations[:20]
            ],
        }
    return {"validated": results}


def _run_nerve(spec: SpecFile, params: dict) -> dict:
    cm = _xmod(spec, params)
    max_level = int(_get(params, "max-level", 4))
    budget = int(_get(params, "budget", DEFAULT_BUDGET))
    levels = NerveLevels(cm, budget=budget)
    table = []
    for p in range(max_level + 1):
        total = levels.count(p)
        nondeg = levels.nondegenerate_count(p)
        table.append(
            {
                "level": p,
                "simplices": str(total),
                "nondegenerate": str(nondeg),
                "degenerate": str(total - nondeg),
            }
        )
    out = {"levels": table}
    kan = _get(params, "kan")
    if kan:
        parts = kan.split(",")
        m = int(parts[0])
        horn_indices = [int(parts[1])] if len(parts) > 1 else list(range(m + 1))
        reports = []
        for j in horn_indices:
            r = check_kan(cm, m, j, budget=budget)
            reports.append(
                {
                    "level": m,
                    "horn_index": j,
                    "horns": r.horn_count,
                    "filled": r.filled_horns,
                    "min_fillers": r.min_fillers,
                    "max_fillers": r.max_fillers,
                    "is_kan": r.is_kan,
                    "unique_fillers": r.unique_fillers,
                }
            )
        out["kan"] = reports
    return out


def _run_cohomology(spec: SpecFile, params: dict) -> dict:
    cm = _xmod(spec, params)
    ring = parse_ring(_get(params, "coeff", "Q"))
    max_degree = int(_get(params, "max-degree", required=True))
    budget = int(_get(params, "budget", DEFAULT_BUDGET))
    normalized = _get(params, "normalized", "on") != "off"
    threads = int(_get(params, "threads", 1))
    result = cohomology(
        cm, ring, max_degree, budget=budget, normalized=normalized, threads=threads
    )
    return {"cohomology": _cohomology_dict(result)}


def _cohomology_dict(result) -> dict:
    out = {
        "coefficients": result.coefficients,
        "normalized": result.normalized,
        "max_degree": result.max_degree,
        "computed_degree": result.computed_degree,
        "cochain_dims": list(result.cochain_dims),
    }
    if result.betti is not None:
        out["betti"] = list(result.betti)
    if result.free_ranks is not None:
        out["free_ranks"] = list(result.free_ranks)
        out["torsion"] = [list(t) for t in result.torsion]
    return out


def _run_group_cohomology(spec: SpecFile, params: dict) -> dict:
    arithmetic = _get(params, "arithmetic")
    max_degree = int(_get(params, "max-degree", required=True))
    if arithmetic:
        k = int(_get(params, "exterior", 0))
        if arithmetic == "SL2Z":
            rep = exterior_power_rep(standard_rep(SL2Z), k)
            betti = sl2z_cohomology(rep, max_degree)
        elif arithmetic == "GL2Z":
            rep = exterior_power_rep(standard_rep(GL2Z), k)
            betti = gl2z_cohomology(rep, max_degree)
        else:
            raise InputError("arithmetic must be SL2Z or GL2Z (full pages)")
        return {
            "group": arithmetic,
            "module": f"exterior^{k} of the standard representation",
            "coefficients": "Q",
            "betti": list(betti),
        }
    gname = _get(params, "group", required=True)
    rname = _get(params, "rep", required=True)
    if gname not in spec.groups:
        raise InputError(f"unknown group {gname!r}")
    if rname not in spec.reps:
        raise InputError(f"unknown rep {rname!r}")
    ring = parse_ring(_get(params, "coeff", "Q"))
    betti = bar_cohomology(spec.groups[gname], spec.reps[rname], max_degree, ring)
    return {
        "group": gname,
        "module": rname,
        "coefficients": str(ring),
        "betti": list(betti),
    }


def _run_e2_page(spec: SpecFile, params: dict) -> dict:
    variant = _get(params, "variant", required=True)
    n = int(_get(params, "rank", required=True))
    pmax = int(_get(params, "pmax", 2))
    qmax = int(_get(params, "qmax", 3 * n))
    grid = e2_page(variant, n, pmax, qmax)
    nonzero = [
        {"p": p, "q": q, "dim": grid[p][q]}
        for p in range(len(grid))
        for q in range(len(grid[0]))
        if grid[p][q]
    ]
    return {
        "variant": variant,
        "rank": n,
        "grid": grid,
        "nonzero": nonzero,
        "statement": "second page H^p(variant(n,Z), Lambda^k Q^n) placed at q = 3k",
    }


def _run_structural(spec: SpecFile, params: dict) -> dict:
    kind = _get(params, "kind", required=True)
    n = int(_get(params, "max-degree", required=True))
    if kind == "free-gca":
        gens = [int(t) for t in _get(params, "gens", required=True).split(",") if t]
        dims = free_gca_dims(gens, n)
        statement = "free graded-commutative algebra dimensions (odd exterior, even polynomial)"
    elif kind == "torus-kernel":
        rank = int(_get(params, "rank", required=True))
        dims = kernel_torus_cohomology(rank, n)
        statement = (
            "2-group with torus kernel and trivial cokernel: exterior algebra "
            "on rank many degree-3 generators"
        )
    elif kind == "finite-cokernel":
        rank = int(_get(params, "rank", required=True))
        cname = _get(params, "cokernel", required=True)
        rname = _get(params, "rep", required=True)
        if cname not in spec.groups:
            raise InputError(f"unknown group {cname!r}")
        if rname not in spec.reps:
            raise InputError(f"unknown rep {rname!r}")
        dims = finite_cokernel_cohomology(rank, spec.groups[cname], spec.reps[rname], n)
        statement = (
            "finite-cokernel 2-group: invariants of the degree-3 exterior "
            "algebra under the cokernel action, concentrated in degrees 3q"
        )
    elif kind == "compact-cokernel":
        ctype = _get(params, "type", required=True)
        rank = int(_get(params, "kernel-rank", 1))
        t = int(_get(params, "transgression", 0))
        dims = compact_cokernel_cohomology(CompactGroupSpec(rank, ctype, t), n)
        statement = (
            "compact simply connected cokernel: H*(B cokernel) modulo the "
            "transgression image, tensor surviving degree-3 classes"
        )
    elif kind == "string":
        ctype = _get(params, "type", required=True)
        dims = string_cohomology(ctype, n)
        statement = (
            "string 2-group of a simply connected compact simple group: "
            "polynomial algebra on the classifying-space generators of degree > 4"
        )
    else:
        raise InputError(f"unknown structural kind {kind!r}")
    return {
        "kind": kind,
        "truncation": dims.truncation,
        "dims": list(dims.dims),
        "nonzero_degrees": list(dims.nonzero_degrees()),
        "statement": statement,
    }


_RUNNERS = {
    "validate": _run_validate,
    "nerve": _run_nerve,
    "cohomology": _run_cohomology,
    "group-cohomology": _run_group_cohomology,
    "e2-page": _run_e2_page,
    "structural": _run_structural,
}


def run_command(spec: SpecFile, command: str, params: dict) -> dict:
    """Dispatch one command; returns the report body."""
    return _RUNNERS[command](spec, params)


def _emit(report: dict, out_path: str | None):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmodcoh",
        description="Exact cohomology of finite crossed modules and the "
        "symbolic structural calculator.",
    )
    parser.add_argument("--version", action="version", version=f"xmodcoh {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, needs_file, help_text):
        p = sub.add_parser(name, help=help_text)
        if needs_file == "required":
            p.add_argument("file", help="declaration file")
        else:
            p.add_argument("file", nargs="?", default=None, help="declaration file")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--threads", type=int, default=1, help="worker cap")
        p.add_argument("--budget", type=int, default=None, help="enumeration budget")
        return p

    p = add("run", "required", "run the file's own command block")
    for name, key_flags in [
        ("validate", [("--target", str)]),
        ("nerve", [("--target", str), ("--max-level", int), ("--kan", str)]),
        (
            "cohomology",
            [
                ("--target", str),
                ("--coeff", str),
                ("--max-degree", int),
                ("--normalized", str),
            ],
        ),
        (
            "group-cohomology",
            [
                ("--group", str),
                ("--rep", str),
                ("--coeff", str),
                ("--max-degree", int),
                ("--arithmetic", str),
                ("--exterior", int),
            ],
        ),
        (
            "e2-page",
            [("--variant", str), ("--rank", int), ("--pmax", int), ("--qmax", int)],
        ),
        (
            "structural",
            [
                ("--kind", str),
                ("--gens", str),
                ("--rank", int),
                ("--cokernel", str),
                ("--rep", str),
                ("--type", str),
                ("--kernel-rank", int),
                ("--transgression", str),
                ("--max-degree", int),
            ],
        ),
    ]:
        needs = "required" if name in ("validate", "nerve", "cohomology") else "optional"
        p = add(name, needs, f"{name} command")
        for flag, typ in key_flags:
            p.add_argument(flag, type=typ, default=None)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    status, body, errors = "ok", {}, []
    exit_code = EXIT_OK
    command = args.subcommand
    params: dict[str, str] = {}
    try:
        spec = _load_spec(getattr(args, "file", None))
        if command == "run":
            if spec.command is None:
                raise InputError("the file has no command block")
            command, params = spec.command
            params = dict(params)
        else:
            params = {}
            if spec.command is not None and spec.command[0] == command:
                params = dict(spec.command[1])
        # CLI flags override file parameters
        for key, value in vars(args).items():
            if key in ("subcommand", "file", "out") or value is None:
                continue
            params[key.replace("_", "-")] = str(value)
        if command not in COMMANDS:
            raise InputError(f"unknown command {command!r}")
        body = run_command(spec, command, params)
    except (SpecError, InputError, ValueError) as e:
        status = "error"
        errors = e.errors if isinstance(e, SpecError) else [str(e)]
        exit_code = EXIT_INPUT
    except BudgetExceeded as e:
        status = "budget-exceeded"
        errors = [str(e)]
        exit_code = EXIT_BUDGET
        if getattr(e, "partial", None) is not None:
            body = {"cohomology": _cohomology_dict(e.partial)}
    except Exception as e:  # internal invariant violation
        status = "error"
        errors = [f"internal: {type(e).__name__}: {e}"]
        exit_code = EXIT_INTERNAL
    report = {
        "tool": {"name": "xmodcoh", "version": __version__},
        "command": {"name": command, "parameters": dict(sorted(params.items()))},
        "status": status,
        "results": body,
        "errors": errors,
        "timings": {"total_s": round(time.monotonic() - started, 3)},
    }
    _emit(report, getattr(args, "out", None))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
