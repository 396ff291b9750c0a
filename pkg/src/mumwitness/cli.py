"""Command-line interface: ``mumwitness {mum,witness,eval,scan,compare,repro}``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .criteria import detect, isotropic_witness_value, j_index, j_report
from .measurements import (
    MUM,
    NAMED_MUMS,
    constructed_mums,
    load_mum,
    mum_fixture_d3,
    named_mum,
    exact_mums,
    verify_mum_axioms,
)
from .numerics import ValidationError, min_eigenvalue, tolerance_profile
from .rotations import RotationSet, identity_rotations, parse_angle
from .states import (
    DensityMatrix,
    isotropic_state,
    load_state,
    max_entangled,
    maximally_mixed,
    rho_6x6_blocks,
    rho_fixture_3x3,
    rho_fixture_6x6,
)
from .witness import (
    Witness,
    build_witness_choi,
    build_witness_direct,
    evaluate_witness,
    load_witness,
    printed_witness_d3,
)

PRINTED_ANGLES_D3 = ("pi/3", "pi/3", "0", "0")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _write_json(obj, path):
    if path is None:
        return
    Path(path).write_text(_dump(obj) + "\n")


def _resolve_mum(ref: str) -> MUM:
    """A fixture name or a path to MUM JSON."""
    if ref in NAMED_MUMS:
        return named_mum(ref)
    return load_mum(ref)


def _resolve_state(ref: str) -> DensityMatrix:
    """A path, or one of ``rho-3x3``, ``rho-6x6``, ``mixed-D``, ``phi-plus-d``."""
    if ref == "rho-3x3":
        return rho_fixture_3x3()
    if ref == "rho-6x6":
        return rho_fixture_6x6()
    if ref.startswith("mixed-"):
        return maximally_mixed(int(ref.split("-")[-1]))
    if ref.startswith("phi-plus-"):
        return max_entangled(int(ref.split("-")[-1]))
    return load_state(ref, policy="fixture")


def _rotations(mum: MUM, angles: str | None) -> RotationSet:
    if angles is None:
        return identity_rotations(mum.d, mum.L)
    parts = [a for a in angles.split(",") if a.strip()]
    if mum.d != 3:
        raise ValidationError("--angles is only defined for d = 3")
    if len(parts) != mum.L:
        raise ValidationError(f"need {mum.L} angles (one per measurement), got {len(parts)}")
    return RotationSet.from_angles_d3([p.strip() for p in parts])


def _witness(mum_ref: str, angles: str | None) -> Witness:
    mum = _resolve_mum(mum_ref)
    return build_witness_direct(mum, _rotations(mum, angles))


# -- mum build --------------------------------------------------------------


def cmd_mum_build(args) -> int:
    cfg = tolerance_profile()
    mum = constructed_mums(args.d, args.t, scheme=args.scheme)
    report = verify_mum_axioms(mum, cfg)
    print(_dump({"d": mum.d, "L": mum.L, "t": mum.t, "kappa": mum.kappa, "axioms": asdict(report)}))
    if not report.passed:
        print("error: measurement axioms failed", file=sys.stderr)
        return 1
    _write_json(mum.to_json(), args.out)
    return 0


# -- witness build ----------------------------------------------------------


def cmd_witness_build(args) -> int:
    mum = _resolve_mum(args.fixture or args.mum)
    rots = _rotations(mum, args.angles)
    w = build_witness_direct(mum, rots)
    summary = {
        "mum_id": w.mum_id,
        "d": w.d,
        "L": w.L,
        "kappa": w.kappa,
        "trace": w.trace,
        "min_eigenvalue": min_eigenvalue(w.matrix),
        "route_residual": float(np.max(np.abs(build_witness_choi(mum, rots).matrix - w.matrix))),
    }
    if mum.d == 3 and args.angles is not None:
        printed_angles, printed = printed_witness_d3()
        given = [parse_angle(a) for a in args.angles.split(",")]
        if np.allclose(given, [parse_angle(a) for a in printed_angles]):
            summary["printed_deviation"] = float(np.max(np.abs(w.matrix - printed)))
    print(_dump(summary))
    _write_json(w.to_json(), args.out)
    return 0


# -- eval / compare ---------------------------------------------------------


def _load_witness_ref(ref: str, angles: str | None) -> Witness:
    if ref in NAMED_MUMS:
        return _witness(ref, angles)
    return load_witness(ref)


def cmd_eval(args) -> int:
    w = _load_witness_ref(args.witness, args.angles)
    rho = _resolve_state(args.state)
    print(_dump(detect(rho, w).to_json()))
    return 0


def cmd_compare(args) -> int:
    mum = _resolve_mum(args.fixture or args.mum)
    w = build_witness_direct(mum, _rotations(mum, args.angles))
    rho = _resolve_state(args.state)
    out = {"witness": detect(rho, w).to_json()}
    if mum.L == mum.d + 1:
        out["J"] = j_report(rho, mum, args.convention).to_json()
    else:
        out["J"] = None
    print(_dump(out))
    return 0


# -- scan isotropic ---------------------------------------------------------


def isotropic_scan(d: int, alphas, kappa: float | None = None, mum: MUM | None = None) -> list[dict]:
    """Witness values along an alpha grid: closed form when only ``kappa`` is
    given, full evaluation of the identity-rotation witness for a ``mum``."""
    if (kappa is None) == (mum is None):
        raise ValueError("give exactly one of kappa or mum")
    w = None
    if mum is not None:
        if mum.L != mum.d + 1:
            raise ValidationError("isotropic scan needs a complete set of d+1 measurements")
        w = build_witness_direct(mum, identity_rotations(mum.d, mum.L))
    rows = []
    for a in alphas:
        if w is None:
            v = isotropic_witness_value(d, float(a), kappa)
        else:
            v = evaluate_witness(w, isotropic_state(d, float(a)))
        rows.append({"alpha": float(a), "value": v, "detected": v < -1e-9})
    return rows


def scan_crossing(rows: list[dict]) -> float | None:
    """Linear interpolation of the first sign change from >= 0 to < 0."""
    for lo, hi in zip(rows, rows[1:]):
        if lo["value"] >= 0 > hi["value"]:
            if lo["value"] == 0:
                return lo["alpha"]
            f = lo["value"] / (lo["value"] - hi["value"])
            return lo["alpha"] + f * (hi["alpha"] - lo["alpha"])
    return None


def cmd_scan_isotropic(args) -> int:
    if not (0 <= args.alpha_min < 1 and 0 <= args.alpha_max < 1 and args.alpha_step > 0):
        raise ValueError("alpha grid must lie in [0, 1) with a positive step")
    n = int(math.floor((args.alpha_max - args.alpha_min) / args.alpha_step + 1e-9)) + 1
    alphas = args.alpha_min + args.alpha_step * np.arange(n)
    if args.kappa is not None:
        rows = isotropic_scan(args.d, alphas, kappa=args.kappa)
        d = args.d
    else:
        mum = load_mum(args.mum) if args.mum else constructed_mums(args.d, args.t)
        rows = isotropic_scan(mum.d, alphas, mum=mum)
        d = mum.d
    for r in rows:
        print(f"{r['alpha']:.6f}  {r['value']: .10f}  {'entangled' if r['detected'] else '-'}")
    first = next((r["alpha"] for r in rows if r["detected"]), None)
    print(_dump({"d": d, "crossing": scan_crossing(rows), "first_detected": first, "expected": 1 / (d + 1)}))
    return 0


# -- repro ------------------------------------------------------------------


@dataclass
class ReproRow:
    label: str
    paper_value: float
    computed_value: float
    tolerance: float
    passed: bool
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "paper_value": self.paper_value,
            "computed_value": self.computed_value,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.error:
            out["error"] = self.error
        return out


def _row(label, paper, tol, compute) -> ReproRow:
    try:
        value = float(compute())
    except Exception as exc:  # a broken fixture fails its row, not the run
        return ReproRow(label, paper, float("nan"), tol, False, f"{type(exc).__name__}: {exc}")
    return ReproRow(label, paper, value, tol, bool(abs(value - paper) <= tol))


def _isotropic_root(d: int) -> float:
    w = build_witness_direct(constructed_mums(d), identity_rotations(d, d + 1))
    return brentq(lambda a: evaluate_witness(w, isotropic_state(d, a)), 0.0, 0.9, xtol=1e-14)


def _max_entangled_value(d: int) -> float:
    mum = constructed_mums(d)
    w = build_witness_direct(mum, identity_rotations(d, d + 1))
    return evaluate_witness(w, max_entangled(d))


def _max_entangled_formula(d: int) -> float:
    mum = constructed_mums(d)
    return (mum.L - 1) * (1 - d * mum.kappa) / d


def repro_rows() -> list[ReproRow]:
    def witness_d3():
        return build_witness_direct(exact_mums(3), RotationSet.from_angles_d3(PRINTED_ANGLES_D3))

    def mub_d6():
        mum = named_mum("mub-d6")
        return evaluate_witness(build_witness_direct(mum, identity_rotations(6, mum.L)), rho_fixture_6x6())

    def mum_d6():
        mum = exact_mums(6)
        return evaluate_witness(build_witness_direct(mum, identity_rotations(6, mum.L)), rho_fixture_6x6())

    rows = [
        _row("kappa of the printed d=3 measurements", 0.358, 2e-3, lambda: mum_fixture_d3().kappa),
        _row("Tr(rho W) d=3", -0.0017, 5e-4, lambda: evaluate_witness(witness_d3(), rho_fixture_3x3())),
        _row("J - 1 - kappa d=3", -0.0085, 1e-3, lambda: j_index(rho_fixture_3x3(), exact_mums(3)) - 1 - exact_mums(3).kappa),
        _row("Tr(rho W) d=6, three MUBs", 0.68, 0.02, mub_d6),
        _row("Tr(rho W) d=6, seven MUMs", -0.0114, 3e-3, mum_d6),
    ]
    for d in (2, 3, 4):
        rows.append(_row(f"isotropic crossing d={d}", 1 / (d + 1), 1e-9, lambda d=d: _isotropic_root(d)))
    for d in (2, 3):
        rows.append(
            _row(f"Tr(W phi+) d={d} vs (L-1)(1-d kappa)/d", _max_entangled_formula(d), 1e-10, lambda d=d: _max_entangled_value(d))
        )
    return rows


def repro_notes() -> list[str]:
    blocks = rho_6x6_blocks()
    n_a = len(blocks["A"])
    dim = sum(len(blocks[name]) if name in ("A", "B", "alpha") else 1 for name in (row[0] for row in blocks["layout"]))
    return [
        f"6x6 state: printed blocks A, B are {n_a}x{n_a}; the displayed layout assembles to {dim}x{dim} "
        f"(5*{n_a}+1), not 6 blocks of 6.",
    ]


def cmd_repro(args) -> int:
    rows = repro_rows()
    notes = repro_notes()
    if args.json:
        print(_dump({"rows": [r.to_json() for r in rows], "notes": notes}))
    else:
        print(f"{'label':44s} {'paper':>10s} {'computed':>12s} {'tol':>8s}  result")
        for r in rows:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.label:44s} {r.paper_value:10.6g} {r.computed_value:12.6g} {r.tolerance:8.1g}  {status}")
            if r.error:
                print(f"    {r.error}")
        for n in notes:
            print(f"note: {n}")
    return 0 if all(r.passed for r in rows) else 1


# -- entry point ------------------------------------------------------------


def _add_mum_source(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--mum", help="path to measurement JSON")
    g.add_argument("--fixture", choices=sorted(NAMED_MUMS), help="shipped measurement set")
    p.add_argument("--angles", help="d=3 only: comma-separated angles, e.g. pi/3,pi/3,0,0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mumwitness", description="Entanglement witnesses from mutually unbiased measurements.")
    sub = parser.add_subparsers(dest="command", required=True)

    mum = sub.add_parser("mum", help="measurement sets").add_subparsers(dest="action", required=True)
    p = mum.add_parser("build", help="construct d+1 MUMs")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--t", type=float, default=None, help="construction parameter (default: largest feasible)")
    p.add_argument("--scheme", default="default")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_mum_build)

    wit = sub.add_parser("witness", help="witness operators").add_subparsers(dest="action", required=True)
    p = wit.add_parser("build", help="assemble a witness")
    _add_mum_source(p)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_witness_build)

    p = sub.add_parser("eval", help="evaluate Tr(W rho)")
    p.add_argument("witness", help="witness JSON path or measurement fixture name")
    p.add_argument("state", help="state JSON path or rho-3x3 | rho-6x6 | mixed-D | phi-plus-d")
    p.add_argument("--angles", help="rotation angles when WITNESS is a fixture name")
    p.set_defaults(func=cmd_eval)

    scan = sub.add_parser("scan", help="parameter scans").add_subparsers(dest="action", required=True)
    p = scan.add_parser("isotropic", help="witness value along the isotropic family")
    p.add_argument("-d", type=int, default=None)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--kappa", type=float, help="use the closed form with this kappa")
    src.add_argument("--mum", help="measurement JSON path")
    p.add_argument("--t", type=float, default=None, help="construction parameter when building MUMs")
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=0.99)
    p.add_argument("--alpha-step", type=float, default=0.01)
    p.set_defaults(func=cmd_scan_isotropic)

    p = sub.add_parser("compare", help="witness and J criterion side by side")
    _add_mum_source(p)
    p.add_argument("state")
    p.add_argument("--convention", choices=("plain", "conjugated"), default="conjugated")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("repro", help="reproduce the reference numbers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "scan" and args.mum is None and args.d is None:
        parser.error("scan isotropic needs -d or --mum")
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
