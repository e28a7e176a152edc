"""JSON forms of groups, cocycles, extensions and reports.

Group specs::

    {"kind": "table", "mul": [[...], ...]}
    {"kind": "perm", "degree": k, "gens": [[[1, 2], [3, 4]], ...]}   # cycles, points 1..k
    {"kind": "orth", "dim": n, "gens": [[["p/q", ...], ...], ...]}

Cocycle tables are |G| x |G| arrays whose entries are lists of r residues.
"""

from __future__ import annotations

import json
from typing import Any

from . import grp, qmat
from .cliff import PinCocycleReport
from .cohom import Cochain1, CoeffHom, Coefficients, CohomClass, Cocycle2, H2Result
from .errors import InputError
from .ext import CentralExtension, LiftReport
from .grp import FiniteGroup, GroupHom
from .swc import OrthogonalRep, SWReport, rep_from_generators


def load_json(path: str) -> Any:
    try:
        if path == "-":
            import sys

            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def group_spec_from_json(d: dict) -> grp.GroupSpec:
    try:
        kind = d["kind"]
        if kind == "table":
            return grp.TableSpec(tuple(tuple(int(x) for x in row) for row in d["mul"]))
        if kind == "perm":
            return grp.PermSpec(int(d["degree"]), tuple(tuple(tuple(int(p) for p in c) for c in g) for g in d["gens"]))
        if kind == "orth":
            gens = tuple(qmat.as_matrix(m) for m in d["gens"])
            return grp.OrthSpec(int(d["dim"]), gens)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed group spec: {exc}") from exc
    raise InputError(f"unknown group spec kind {d.get('kind')!r}")


def group_spec_to_json(spec: grp.GroupSpec) -> dict:
    if isinstance(spec, grp.TableSpec):
        return {"kind": "table", "mul": [list(r) for r in spec.mul]}
    if isinstance(spec, grp.PermSpec):
        return {"kind": "perm", "degree": spec.degree, "gens": [[list(c) for c in g] for g in spec.gens]}
    return {"kind": "orth", "dim": spec.dim, "gens": [qmat.to_strings(m) for m in spec.gens]}


def group_to_json(G: FiniteGroup) -> dict:
    return {"kind": "table", "mul": G.table}


def group_from_json(d: dict, cap: int = grp.DEFAULT_CAP) -> tuple[FiniteGroup, list]:
    return grp.generate(group_spec_from_json(d), cap=cap)


def coeffs_from_json(d) -> Coefficients:
    orders = d if isinstance(d, list) else [d]
    return Coefficients(tuple(int(m) for m in orders))


def cocycle_to_json(f: Cocycle2 | CohomClass) -> list:
    f = f.rep if isinstance(f, CohomClass) else f
    return f.table()


def cocycle_from_json(G: FiniteGroup, A: Coefficients, table: list) -> Cocycle2:
    try:
        return Cocycle2(G, A, table)
    except ValueError as exc:
        raise InputError(f"cocycle table has the wrong shape: {exc}") from exc


def character_to_json(c: Cochain1) -> list:
    return [list(row) for row in c.table()]


def extension_to_json(X: CentralExtension) -> dict:
    return {
        "G": group_to_json(X.G),
        "E": group_to_json(X.E),
        "coeffs": list(X.coeffs.orders),
        "i": list(X.i.map),
        "p": list(X.p.map),
    }


def extension_from_json(d: dict) -> CentralExtension:
    try:
        G = grp.from_table(d["G"]["mul"])
        E = grp.from_table(d["E"]["mul"])
        A = coeffs_from_json(d["coeffs"])
        return CentralExtension(E, A, GroupHom(A.group, E, d["i"]), GroupHom(E, G, d["p"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed extension: {exc}") from exc


def hom_from_json(d: dict, target: FiniteGroup, cap: int = grp.DEFAULT_CAP) -> GroupHom:
    """{"source": GroupSpec, "images": {source element: target element}} on generators."""
    try:
        src, _ = group_from_json(d["source"], cap)
        images = {int(k): int(v) for k, v in d["images"].items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed homomorphism: {exc}") from exc
    return grp.hom(src, target, images)


def coeff_hom_from_json(d: dict, source: Coefficients) -> CoeffHom:
    """{"target": [orders], "matrix": [[...]]}, the matrix acting on residue columns."""
    try:
        return CoeffHom(source, coeffs_from_json(d["target"]), tuple(tuple(int(x) for x in r) for r in d["matrix"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed coefficient map: {exc}") from exc


def rep_from_json(d: dict, cap: int = grp.DEFAULT_CAP) -> OrthogonalRep:
    """{"group": GroupSpec, "dim": n, "images": {element index: matrix}}."""
    try:
        G, _ = group_from_json(d["group"], cap)
        pi = rep_from_generators(G, {int(k): v for k, v in d["images"].items()})
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed representation: {exc}") from exc
    if "dim" in d and int(d["dim"]) != pi.dim:
        raise InputError("declared dim differs from the matrices")
    return pi


def h2_to_json(res: H2Result) -> dict:
    return {
        "dimension": res.dimension,
        "order": res.size,
        "invariant_factors": list(res.invariant_factors),
        "elementary_divisors": list(res.orders),
        "basis": [cocycle_to_json(b) for b in res.basis],
    }


def lift_report_to_json(r: LiftReport) -> dict:
    return {
        "lifts": r.lifts,
        "obstruction": None if r.obstruction is None else cocycle_to_json(r.obstruction),
        "count": r.count,
        "witness": None if r.witness is None else list(r.witness.map),
    }


def pin_report_to_json(r: PinCocycleReport) -> dict:
    return {
        "f_plus": cocycle_to_json(r.f_plus),
        "f_minus": cocycle_to_json(r.f_minus),
        "f_tilde": cocycle_to_json(r.f_tilde),
        "word_lengths": list(r.lengths),
        "words": [[list(v) for v in w] for w in r.words],
    }


def sw_report_to_json(r: SWReport) -> dict:
    return {
        "w1": [int(x) for x in r.w1.values[:, 0]],
        "w2": cocycle_to_json(r.w2),
        "verdicts": dict(r.verdicts),
        "counts": dict(r.counts),
        "witnesses": {k: None if w is None else list(w.map) for k, w in r.witnesses.items()},
        "preimages": dict(r.preimages),
    }
