"""Command-line front end.

Subcommands: info (genus, forms, generator counts), periods (the full
period matrix), basis (extracted lattice basis), verify (oracle
cross-check report).  Data goes to stdout or --out; diagnostics go to
stderr.  Exit codes: 2 invalid input, 3 quadrature non-convergence,
4 lattice extraction failure, 1 failed verification.

All floating-point output uses 17 significant digits, so parsing the
emitted JSON or CSV reproduces every double bit-exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .curve import validate_spec, enumerate_forms, genus
from .errors import (
    GfcError,
    NoConvergence,
    NotFullRank,
    ReconstructionFailed,
)
from .homology import ConjComm, Power, enumerate_generators
from .lattice import extract_basis, real_split
from .oracle import crosscheck_report
from .periods import assemble
from .quad import QuadConfig


@dataclass
class JobConfig:
    command: str
    k: int
    n: int
    lambdas: list[complex] = field(default_factory=list)
    rel_tol: float | None = None
    level: int | None = None
    max_level: int | None = None
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    include_powers: bool = False


def parse_complex(text: str) -> complex:
    """Accept 'a+bi', 'a+bj', plain reals, or 'a,b'."""
    s = text.strip().replace(" ", "")
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(s.replace("i", "j"))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_dump(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_dump(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(
            f"{json.dumps(k)}: {_json_dump(v)}" for k, v in obj.items()
        ) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _generator_dict(word) -> dict:
    if isinstance(word, Power):
        return {"type": "power", "i": word.i}
    return {"type": "conj_comm", "g": list(word.g), "j": word.j, "l": word.l}


def _word_label(word) -> str:
    if isinstance(word, Power):
        return f"power:i={word.i}"
    gs = ".".join(str(v) for v in word.g)
    return f"conj_comm:j={word.j};l={word.l};g={gs}"


def _parse_word_label(label: str):
    kind, _, rest = label.partition(":")
    fields = dict(part.split("=", 1) for part in rest.split(";"))
    if kind == "power":
        return Power(i=int(fields["i"]))
    g = tuple(int(v) for v in fields["g"].split("."))
    return ConjComm(g=g, j=int(fields["j"]), l=int(fields["l"]))


def _form_label(form) -> str:
    return ".".join(str(a) for a in form.alpha)


def periods_payload(pm) -> dict:
    return {
        "k": pm.spec.k,
        "n": pm.spec.n,
        "lambdas": [_pair(v) for v in pm.spec.lambdas],
        "genus": genus(pm.spec),
        "forms": [list(f.alpha) for f in pm.cols],
        "generators": [_generator_dict(w) for w in pm.rows],
        "periods": [[_pair(z) for z in row] for row in pm.entries],
        "base_point": _pair(pm.base_point),
    }


def periods_to_json(pm) -> str:
    return _json_dump(periods_payload(pm)) + "\n"


def periods_to_csv(pm) -> str:
    header = ["generator"]
    for f in pm.cols:
        label = _form_label(f)
        header.extend([f"re_{label}", f"im_{label}"])
    lines = [",".join(header)]
    for word, row in zip(pm.rows, pm.entries):
        cells = [_word_label(word)]
        for z in row:
            cells.extend([_fmt(z.real), _fmt(z.imag)])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_periods_json(text: str) -> dict:
    """Inverse of periods_to_json: entries back as a complex ndarray."""
    raw = json.loads(text)
    entries = np.asarray(
        [[complex(re, im) for re, im in row] for row in raw["periods"]],
        dtype=complex,
    ).reshape(len(raw["generators"]), len(raw["forms"]))
    return {
        "k": raw["k"],
        "n": raw["n"],
        "lambdas": tuple(complex(re, im) for re, im in raw["lambdas"]),
        "genus": raw["genus"],
        "forms": [tuple(f) for f in raw["forms"]],
        "generators": raw["generators"],
        "entries": entries,
        "base_point": complex(*raw["base_point"]),
    }


def parse_periods_csv(text: str) -> dict:
    lines = [ln for ln in text.splitlines() if ln]
    header = lines[0].split(",")
    nforms = (len(header) - 1) // 2
    forms = [tuple(int(a) for a in header[1 + 2 * c].removeprefix("re_").split("."))
             for c in range(nforms)]
    words = []
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        words.append(_parse_word_label(cells[0]))
        vals = cells[1:]
        rows.append(
            [complex(float(vals[2 * c]), float(vals[2 * c + 1])) for c in range(nforms)]
        )
    return {
        "forms": forms,
        "generators": words,
        "entries": np.asarray(rows, dtype=complex).reshape(len(words), nforms),
    }


def basis_payload(spec, result) -> dict:
    det = abs(float(np.linalg.det(result.basis))) if result.basis.size else 0.0
    return {
        "k": spec.k,
        "n": spec.n,
        "lambdas": [_pair(v) for v in spec.lambdas],
        "genus": genus(spec),
        "basis": [[float(x) for x in row] for row in result.basis],
        "coefficients": [[int(x) for x in row] for row in result.coefficients],
        "from_generators": [[int(x) for x in row] for row in result.from_generators],
        "residual": float(result.residual),
        "abs_det": det,
    }


def basis_to_csv(payload: dict) -> str:
    lines = ["kind,index," + ",".join(f"c{j}" for j in range(len(payload["basis"])))]
    for idx, row in enumerate(payload["basis"]):
        lines.append(f"basis,{idx}," + ",".join(_fmt(x) for x in row))
    for idx, row in enumerate(payload["coefficients"]):
        lines.append(f"coefficients,{idx}," + ",".join(str(x) for x in row))
    lines.append(f"residual,0,{_fmt(payload['residual'])}")
    lines.append(f"abs_det,0,{_fmt(payload['abs_det'])}")
    return "\n".join(lines) + "\n"


def info_payload(spec, include_powers: bool) -> dict:
    forms = enumerate_forms(spec)
    gens = enumerate_generators(spec, include_powers=include_powers)
    return {
        "k": spec.k,
        "n": spec.n,
        "lambdas": [_pair(v) for v in spec.lambdas],
        "genus": genus(spec),
        "num_forms": len(forms),
        "forms": [list(f.alpha) for f in forms],
        "num_generators": len(gens),
    }


def report_payload(report) -> dict:
    return {
        "k": report.k,
        "n": report.n,
        "lambdas": [_pair(v) for v in report.lambdas],
        "sample": report.sample,
        "seed": report.seed,
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "max_deviation": c.max_deviation,
                "tolerance": c.tolerance,
                "detail": c.detail,
            }
            for c in report.checks
        ],
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quad_config(cfg: JobConfig) -> QuadConfig:
    level = cfg.level if cfg.level is not None else 10
    rel_tol = cfg.rel_tol if cfg.rel_tol is not None else 1e-10
    max_level = cfg.max_level if cfg.max_level is not None else max(14, level)
    return QuadConfig(level=level, rel_tol=rel_tol, max_level=max_level)


def cmd_info(cfg: JobConfig) -> int:
    spec = validate_spec(cfg.k, cfg.n, cfg.lambdas)
    payload = info_payload(spec, cfg.include_powers)
    if cfg.fmt == "csv":
        lines = [f"{key},{_json_dump(val)}" for key, val in payload.items()]
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        _emit(_json_dump(payload) + "\n", cfg.out)
    return 0


def cmd_periods(cfg: JobConfig) -> int:
    spec = validate_spec(cfg.k, cfg.n, cfg.lambdas)
    pm = assemble(spec, _quad_config(cfg), include_powers=cfg.include_powers)
    text = periods_to_csv(pm) if cfg.fmt == "csv" else periods_to_json(pm)
    _emit(text, cfg.out)
    return 0


def cmd_basis(cfg: JobConfig) -> int:
    spec = validate_spec(cfg.k, cfg.n, cfg.lambdas)
    pm = assemble(spec, _quad_config(cfg), include_powers=cfg.include_powers)
    result = extract_basis(real_split(pm), spec)
    payload = basis_payload(spec, result)
    text = basis_to_csv(payload) if cfg.fmt == "csv" else _json_dump(payload) + "\n"
    _emit(text, cfg.out)
    return 0


def cmd_verify(cfg: JobConfig) -> int:
    spec = validate_spec(cfg.k, cfg.n, cfg.lambdas)
    report = crosscheck_report(spec, _quad_config(cfg), seed=cfg.seed)
    payload = report_payload(report)
    _emit(_json_dump(payload) + "\n", cfg.out)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        print(
            f"{status} {check.name}: max deviation {check.max_deviation:.3e} "
            f"(tolerance {check.tolerance:.1e})",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


_COMMANDS = {
    "info": cmd_info,
    "periods": cmd_periods,
    "basis": cmd_basis,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gfcperiods",
        description="Period lattice generators of generalized Fermat curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("info", "genus, form list, and generator counts"),
        ("periods", "compute the period matrix"),
        ("basis", "extract an integer lattice basis"),
        ("verify", "run the oracle cross-check report"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-k", type=int, required=True, help="cover degree (>= 2)")
        p.add_argument("-n", type=int, required=True, help="curve rank (>= 2)")
        p.add_argument(
            "-l",
            "--lambda",
            dest="lambdas",
            action="append",
            default=[],
            metavar="VALUE",
            help="branch value; 'a+bi' or 'a,b'; repeat for each of the n-2 values",
        )
        p.add_argument("--tol", type=float, default=None, help="quadrature relative tolerance")
        p.add_argument("--level", type=int, default=None, help="tanh-sinh starting level")
        p.add_argument(
            "--max-level",
            dest="max_level",
            type=int,
            default=None,
            help="tanh-sinh refinement cap before NoConvergence",
        )
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="verify sampler seed")
        p.add_argument(
            "--include-powers",
            action="store_true",
            help="include the power words (zero rows) among the generators",
        )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lambdas = [parse_complex(v) for v in args.lambdas]
    except ValueError as err:
        print(f"error: cannot parse lambda value: {err}", file=sys.stderr)
        return 2
    cfg = JobConfig(
        command=args.command,
        k=args.k,
        n=args.n,
        lambdas=lambdas,
        rel_tol=args.tol,
        level=args.level,
        max_level=args.max_level,
        fmt=args.fmt,
        out=args.out,
        seed=args.seed,
        include_powers=args.include_powers,
    )
    try:
        return _COMMANDS[args.command](cfg)
    except (NotFullRank, ReconstructionFailed) as err:
        print(f"error: lattice extraction failed: {err}", file=sys.stderr)
        return 4
    except NoConvergence as err:
        print(f"error: quadrature did not converge: {err}", file=sys.stderr)
        return 3
    except GfcError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
