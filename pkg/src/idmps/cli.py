"""Command-line front end.

Four subcommands: decompose (tensor file -> MPS file in a chosen
canonical form), reconstruct (MPS file -> tensor file), verify (gauge
check of a claimed form), and oscillator (analytical three-site
example). Each prints a single JSON report to stdout; diagnostics go to
stderr.

Exit codes: 0 success, 1 malformed input or parameters, 2 numerical
failure, 3 verification / claimed-form failure. The environment
variable IDMPS_RANK_TOL overrides the default rank-cut tolerance used
by the decompositions.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from .errors import ConvergenceFailure, FormMismatch, IdmpsError, ZeroState
from .io import load_mps, load_tensor, save_mps, save_tensor
from .mps import (
    MatrixProductState,
    TruncationPolicy,
    from_dense_left_canonical,
    from_dense_mixed_canonical,
    from_dense_right_canonical,
    from_dense_vidal,
    site_left_residual,
    site_right_residual,
    to_dense,
    verify_left_normalized,
    verify_right_normalized,
    verify_vidal,
)
from .oscillator import OscillatorParams, build_bundle, element_decay_table
from .schmidt import schmidt_decompose
from .tensor import DEFAULT_RANK_TOL, low_rank_error, tensor_norm


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; here that code means numerical
    failure, so malformed flags exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _rank_tol() -> float:
    raw = os.environ.get("IDMPS_RANK_TOL")
    if raw is None or raw == "":
        return DEFAULT_RANK_TOL
    tol = float(raw)
    if not tol > 0.0:
        raise ValueError(f"IDMPS_RANK_TOL must be > 0, got {raw!r}")
    return tol


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2))


def _parse_form(tag: str) -> tuple[str, int | None]:
    if tag in ("left", "right", "vidal"):
        return tag, None
    if tag.startswith("mixed:"):
        try:
            return "mixed", int(tag.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad form {tag!r}: expected mixed:<center>") from None
    raise ValueError(f"form must be left, right, mixed:<n> or vidal, got {tag!r}")


def cmd_decompose(args) -> int:
    t = load_tensor(args.input)
    form, center = _parse_form(args.form)
    policy = None
    if args.max_bond is not None or args.weight_tol is not None:
        policy = TruncationPolicy(max_bond=args.max_bond, weight_tol=args.weight_tol)
    rank_tol = _rank_tol()
    if form == "left":
        m = from_dense_left_canonical(t, policy, rank_tol)
    elif form == "right":
        m = from_dense_right_canonical(t, policy, rank_tol)
    elif form == "vidal":
        m = from_dense_vidal(t, policy, rank_tol)
    else:
        m = from_dense_mixed_canonical(t, center, policy, rank_tol)
    save_mps(args.out, m)
    spectra = [
        schmidt_decompose(t, cut, rank_tol).coefficients for cut in range(1, t.ndim)
    ]
    report = {
        "form": args.form,
        "shape": list(t.shape),
        "bond_dims": list(m.bond_dims),
        "bonds": [[float(v) for v in s] for s in spectra],
        "truncation_errors": [
            low_rank_error(s, min(dim, s.size))
            for s, dim in zip(spectra, m.bond_dims)
        ],
        "out": args.out,
    }
    _emit(report)
    return 0


def cmd_reconstruct(args) -> int:
    m = load_mps(args.input)
    t = to_dense(m)
    save_tensor(args.out, t)
    report = {
        "shape": list(t.shape),
        "norm": tensor_norm(t),
        "out": args.out,
    }
    if args.reference is not None:
        ref = load_tensor(args.reference)
        if ref.shape != t.shape:
            raise ValueError(
                f"reference shape {ref.shape} != reconstructed shape {t.shape}"
            )
        diff = float(np.linalg.norm(t.data - ref.data))
        scale = tensor_norm(ref)
        report["residual"] = diff / scale if scale > 0.0 else diff
    _emit(report)
    return 0


def _verify_mixed(m: MatrixProductState, tol: float) -> dict:
    center = m.center
    residuals = []
    for n in range(1, m.num_sites + 1):
        if n <= center:
            residuals.append(site_left_residual(m.sites[n - 1]))
        else:
            residuals.append(site_right_residual(m.sites[n - 1]))
    spectrum = m.bonds[center - 1] if m.bonds is not None else None
    if spectrum is None:
        raise FormMismatch("mixed form needs weights on the center bond")
    worst = max(range(1, m.num_sites + 1), key=lambda n: residuals[n - 1])
    return {
        "form": f"mixed:{center}",
        "residuals": residuals,
        "worst_site": worst,
        "boundary_scalar": float(np.sum(spectrum.values**2)),
        "passed": residuals[worst - 1] <= tol,
        "tol": tol,
    }


def cmd_verify(args) -> int:
    m = load_mps(args.input)
    tol = args.tol
    if m.form == "left":
        rep = verify_left_normalized(m, tol)
        report = {
            "form": "left",
            "residuals": list(rep.residuals),
            "worst_site": rep.worst_site,
            "boundary_site": rep.boundary_site,
            "boundary_scalar": rep.boundary_scalar,
            "passed": rep.passed,
            "tol": tol,
        }
    elif m.form == "right":
        rep = verify_right_normalized(m, tol)
        report = {
            "form": "right",
            "residuals": list(rep.residuals),
            "worst_site": rep.worst_site,
            "boundary_site": rep.boundary_site,
            "boundary_scalar": rep.boundary_scalar,
            "passed": rep.passed,
            "tol": tol,
        }
    elif m.form == "vidal":
        rep = verify_vidal(m, tol)
        report = {
            "form": "vidal",
            "residuals": list(rep.residuals),
            "passed": rep.passed,
            "tol": tol,
        }
    elif m.form == "mixed":
        report = _verify_mixed(m, tol)
    else:
        raise FormMismatch("file claims no canonical form to verify")
    _emit(report)
    return 0 if report["passed"] else 3


def cmd_oscillator(args) -> int:
    params = OscillatorParams(
        n=args.n,
        omega_tilde=args.omega_tilde,
        theta=args.theta,
        phi=args.phi,
        varphi=args.varphi,
        phys_cutoff=args.phys_cutoff,
    )
    bundle = build_bundle(params)
    save_mps(args.out_mps, bundle.mps)
    if args.out_csv is not None:
        with open(args.out_csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["which", "a", "b", "k", "magnitude"])
            for which in ("A1", "A2", "A3"):
                for row in element_decay_table(bundle, which):
                    writer.writerow(
                        [
                            row["which"],
                            "" if row["a"] is None else row["a"],
                            "" if row["b"] is None else row["b"],
                            row["k"],
                            repr(row["magnitude"]),
                        ]
                    )
    report = {
        "n": params.n,
        "omega_tilde": params.omega_tilde,
        "phys_cutoff": params.phys_cutoff,
        "bond_dims": list(bundle.mps.bond_dims),
        "norm": tensor_norm(to_dense(bundle.mps)),
        "out_mps": args.out_mps,
    }
    if args.out_csv is not None:
        report["out_csv"] = args.out_csv
    _emit(report)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="idmps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="dense tensor file -> canonical-form MPS file")
    p.add_argument("input", help="tensor file (JSON)")
    p.add_argument("--form", required=True, help="left | right | mixed:<center> | vidal")
    p.add_argument("--max-bond", type=int, default=None, help="cap every bond dimension")
    p.add_argument(
        "--weight-tol", type=float, default=None, help="allowed discarded weight per cut"
    )
    p.add_argument("--out", required=True, help="MPS file to write")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reconstruct", help="MPS file -> dense tensor file")
    p.add_argument("input", help="MPS file (JSON)")
    p.add_argument("--out", required=True, help="tensor file to write")
    p.add_argument(
        "--reference",
        default=None,
        help="original tensor file; adds the relative round-trip residual to the report",
    )
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="check the gauge conditions of a claimed form")
    p.add_argument("input", help="MPS file (JSON)")
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oscillator", help="build the analytical three-site example")
    p.add_argument("--n", type=int, required=True, help="quanta in the collective mode")
    p.add_argument("--omega-tilde", type=float, required=True, help="scaled frequency")
    p.add_argument("--theta", type=float, default=0.0, help="mixing angle theta")
    p.add_argument("--phi", type=float, default=0.0, help="mixing angle phi")
    p.add_argument("--varphi", type=float, default=0.0, help="mixing angle varphi")
    p.add_argument("--phys-cutoff", type=int, required=True, help="basis size per site")
    p.add_argument("--out-mps", required=True, help="MPS file to write")
    p.add_argument("--out-csv", default=None, help="element-decay CSV to write")
    p.set_defaults(func=cmd_oscillator)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ZeroState, ConvergenceFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except FormMismatch as exc:
        print(f"form mismatch: {exc}", file=sys.stderr)
        return 3
    except (IdmpsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
