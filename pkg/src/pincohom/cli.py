"""Command-line front end.

    pincohom group SPEC
    pincohom h2 SPEC --coeffs 2,4
    pincohom ext build SPEC --coeffs 2 --cocycle TABLE
    pincohom ext class|baer|pullback|pushout|lift ...
    pincohom pin SPEC
    pincohom swc REP
    pincohom paper-checks [--list]

Inputs are JSON files ("-" reads stdin). Exit codes: 0 success, 1 check
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import checks, grp, serialize
from .cliff import VARIANTS, pin_cocycles, pin_preimage
from .cohom import Coefficients, h2
from .errors import InputError, PincohomError
from .ext import baer_sum, decide_lift, from_cocycle, pullback, pushout, to_class, to_cocycle
from .swc import lifting_report

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...] = ()
    cap: int = grp.DEFAULT_CAP
    format: str = "json"
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.cap < 1:
            raise InputError("--cap must be at least 1")
        if self.format not in ("json", "text"):
            raise InputError("--format must be json or text")

    @property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _coeffs(text: str) -> Coefficients:
    try:
        return Coefficients(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise InputError(f"bad coefficient list {text!r}") from exc


# -- commands -------------------------------------------------------------------


def cmd_group(cfg: RunConfig) -> dict:
    G, _ = serialize.group_from_json(serialize.load_json(cfg.inputs[0]), cfg.cap)
    Ab, _ = grp.abelianization(G)
    return {
        "order": G.order,
        "iso": grp.identify(G),
        "center": len(G.center()),
        "abelian": G.is_abelian(),
        "exponent": G.exponent,
        "abelianization": {"order": Ab.order, "iso": grp.identify(Ab)},
        "element_orders": list(G.element_orders),
        "table": G.table,
    }


def cmd_h2(cfg: RunConfig) -> dict:
    G, _ = serialize.group_from_json(serialize.load_json(cfg.inputs[0]), cfg.cap)
    A = _coeffs(cfg.options["coeffs"])
    out = serialize.h2_to_json(h2(G, A))
    out.update(group_order=G.order, coeffs=list(A.orders))
    return out


def _load_ext(path: str):
    return serialize.extension_from_json(serialize.load_json(path))


def cmd_ext(cfg: RunConfig) -> dict:
    action = cfg.options["action"]
    paths = cfg.inputs
    if action == "build":
        G, _ = serialize.group_from_json(serialize.load_json(paths[0]), cfg.cap)
        A = _coeffs(cfg.options["coeffs"])
        table = serialize.load_json(cfg.options["cocycle"])
        X = from_cocycle(G, A, serialize.cocycle_from_json(G, A, table))
        out = serialize.extension_to_json(X)
        out["iso"] = grp.identify(X.E)
        return out
    X = _load_ext(paths[0])
    if action == "class":
        section = X.random_section(cfg.rng) if cfg.options.get("random_section") else None
        f = to_cocycle(X, section)
        x = f.cls()
        res = h2(X.G, X.coeffs)
        return {"cocycle": serialize.cocycle_to_json(f), "coords": list(x.coords()),
                "elementary_divisors": list(res.orders), "zero": x.is_zero()}
    if action == "baer":
        Y = _load_ext(paths[1])
        out = serialize.extension_to_json(baer_sum(X, Y))
    elif action == "pullback":
        phi = serialize.hom_from_json(serialize.load_json(paths[1]), X.G, cfg.cap)
        out = serialize.extension_to_json(pullback(phi, X))
    elif action == "pushout":
        psi = serialize.coeff_hom_from_json(serialize.load_json(paths[1]), X.coeffs)
        out = serialize.extension_to_json(pushout(psi, X))
    elif action == "lift":
        phi = serialize.hom_from_json(serialize.load_json(paths[1]), X.G, cfg.cap)
        return serialize.lift_report_to_json(decide_lift(phi, X))
    else:
        raise InputError(f"unknown ext action {action!r}")
    out["iso"] = grp.identify(grp.from_table(out["E"]["mul"]))
    return out


def cmd_pin(cfg: RunConfig) -> dict:
    spec = serialize.group_spec_from_json(serialize.load_json(cfg.inputs[0]))
    if not isinstance(spec, grp.OrthSpec):
        raise InputError("pin needs an orth group spec")
    G, mats = grp.generate(spec, cfg.cap)
    rng = cfg.rng if cfg.options.get("random_words") else None
    report = pin_cocycles(G, mats, rng)
    out = serialize.pin_report_to_json(report)
    out["order"] = G.order
    out["preimages"] = {v: grp.identify(pin_preimage(G, mats, v, report).E) for v in VARIANTS}
    return out


def cmd_swc(cfg: RunConfig) -> dict:
    pi = serialize.rep_from_json(serialize.load_json(cfg.inputs[0]), cfg.cap)
    return serialize.sw_report_to_json(lifting_report(pi, allow_pad=cfg.options.get("pad", False)))


def cmd_paper_checks(cfg: RunConfig) -> tuple[Any, int]:
    if cfg.options.get("list"):
        return [{"name": c.name, "anchor": c.anchor, "budget_seconds": c.budget} for c in checks.CHECKS], EXIT_OK
    fault = cfg.options.get("inject_fault")
    if fault is not None and fault not in checks.FAULTS:
        raise InputError(f"unknown fault {fault!r}; choose from {checks.FAULTS}")
    results = checks.run_all(cfg.seed, fault, cfg.options.get("only"))
    rows = [{"name": r.name, "anchor": r.anchor, "passed": r.ok, "detail": r.detail,
             "seconds": round(r.seconds, 3), "budget_seconds": r.budget} for r in results]
    return rows, EXIT_OK if all(r.ok for r in results) else EXIT_CHECK


# -- output ---------------------------------------------------------------------


def _text(obj: Any, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        return "\n".join(_text(x, indent) + ("\n" if i < len(obj) - 1 else "") for i, x in enumerate(obj))
    return f"{indent}{json.dumps(obj)}"


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return not any(isinstance(x, dict) for x in v)


def _checks_text(rows: list[dict]) -> str:
    if rows and "passed" not in rows[0]:
        return "\n".join(f"{r['name']}  [{r['anchor']}]  budget {r['budget_seconds']:g}s" for r in rows)
    return "\n".join(
        f"{'PASS' if r['passed'] else 'FAIL'} {r['name']} [{r['anchor']}] {r['seconds']:.2f}s: {r['detail']}" for r in rows
    )


def render(obj: Any, fmt: str, subcommand: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    if subcommand == "paper-checks":
        return _checks_text(obj)
    return _text(obj)


# -- parser ---------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="largest group order to enumerate")
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized choices")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="pincohom", parents=[common], description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("group", parents=[common], help="order, center and identification of a group")
    p.add_argument("spec")

    p = sub.add_parser("h2", parents=[common], help="H^2(G, A) with a cocycle basis")
    p.add_argument("spec")
    p.add_argument("--coeffs", default="2", help="comma-separated orders of A, e.g. 2 or 2,4")

    p = sub.add_parser("ext", parents=[common], help="central extensions")
    ext_sub = p.add_subparsers(dest="action", required=True)
    q = ext_sub.add_parser("build", parents=[common], help="extension from a cocycle table")
    q.add_argument("spec")
    q.add_argument("--coeffs", default="2")
    q.add_argument("--cocycle", required=True, help="JSON |G| x |G| table of residue lists")
    q = ext_sub.add_parser("class", parents=[common], help="cocycle and class of an extension")
    q.add_argument("ext")
    q.add_argument("--random-section", action="store_true", help="use a seeded random section")
    q = ext_sub.add_parser("baer", parents=[common], help="Baer sum of two extensions")
    q.add_argument("ext")
    q.add_argument("other")
    for name, arg, what in (("pullback", "hom", "pull back along a homomorphism"),
                            ("pushout", "psi", "push out along a coefficient map"),
                            ("lift", "hom", "decide whether a homomorphism lifts")):
        q = ext_sub.add_parser(name, parents=[common], help=what)
        q.add_argument("ext")
        q.add_argument(arg)

    p = sub.add_parser("pin", parents=[common], help="Pin cocycles of a finite orthogonal group")
    p.add_argument("spec")
    p.add_argument("--random-words", action="store_true", help="seeded random reflection words")

    p = sub.add_parser("swc", parents=[common], help="Stiefel-Whitney classes and lifting verdicts")
    p.add_argument("rep")
    p.add_argument("--pad", action="store_true", help="pad dimension-1 reps with a trivial summand")

    p = sub.add_parser("paper-checks", parents=[common], help="run the acceptance suite")
    p.add_argument("--list", action="store_true", help="list checks without running them")
    p.add_argument("--only", action="append", choices=checks.names(), help="run only the named check")
    p.add_argument("--inject-fault", choices=checks.FAULTS, help=argparse.SUPPRESS)
    return parser


_POSITIONAL = ("spec", "ext", "other", "hom", "psi", "rep")
_COMMANDS = {"group": cmd_group, "h2": cmd_h2, "ext": cmd_ext, "pin": cmd_pin, "swc": cmd_swc}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns)
    inputs = tuple(d[k] for k in _POSITIONAL if d.get(k) is not None)
    skip = {"subcommand", "cap", "format", "seed", *_POSITIONAL}
    options = {k: v for k, v in d.items() if k not in skip}
    return RunConfig(ns.subcommand, inputs, d.get("cap", grp.DEFAULT_CAP), d.get("format", "json"), d.get("seed", 0), options)


def run(cfg: RunConfig) -> tuple[Any, int]:
    if cfg.subcommand == "paper-checks":
        return cmd_paper_checks(cfg)
    return _COMMANDS[cfg.subcommand](cfg), EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        obj, code = run(cfg)
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (PincohomError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(obj, cfg.format, cfg.subcommand))
    return code


if __name__ == "__main__":
    sys.exit(main())
