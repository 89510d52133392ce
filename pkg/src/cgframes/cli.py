"""Command-line front end.

Exit codes
----------
0   command ran (whatever the certified flags say)
2   input could not be read, parsed or validated
3   the reference family is not an orthonormal basis
4   the requested split's precondition failed
5   g-side and c-side certificates disagree (an implementation bug)
64  usage error (unknown flag, missing argument)
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from . import io as fio
from .core import DEFAULT_TOL, FrameCertificate, certify
from .decomposition import split
from .errors import (
    DegenerateSpectrumGrid,
    FrameError,
    NotAFrame,
    NotOrthonormalBasis,
    NotRieszBasis,
    SpecFormatError,
)
from .factorization import transition_operator
from .generators import GeneratorSpec, generate, stream
from .induced import LocalBases, equivalence_report, induce, random_local_bases

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_ONB = 3
EXIT_PRECONDITION = 4
EXIT_DISAGREEMENT = 5
EXIT_USAGE = 64

SPLIT_KIND_NAMES = {
    "parseval-pair": "parseval_pair",
    "three-onb": "three_onb",
    "two-onb": "two_onb_combo",
    "onb-riesz": "onb_plus_riesz",
}

CLASS_NAMES = {
    "onb": "orthonormal_basis",
    "orthonormal_basis": "orthonormal_basis",
    "parseval": "parseval",
    "tight": "tight",
    "frame": "frame",
    "riesz": "riesz",
    "incomplete": "incomplete",
}

DECLARED_FLAG = {
    "parseval": "is_parseval",
    "orthonormal_basis": "is_orthonormal_basis",
    "riesz_basis": "is_riesz_basis",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class InputError(Exception):
    pass


def _read_input(path: str):
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        fam = fio.loads_family(data.decode("utf-8"))
    except (SpecFormatError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return fam, fio.digest(data)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _sci(x: float) -> str:
    return f"{x:.2e}"


def render_certificate(cert: FrameCertificate, label: str = "") -> str:
    lines = [f"certificate {label}".rstrip()]
    lines.append(f"  bounds      A = {cert.lower_bound:.12g}   B = {cert.upper_bound:.12g}")
    lines.append(f"  layout      n = {cert.ambient_dim}   D = {cert.coefficient_dim}   rank = {cert.rank}")
    for name, val in cert.flags().items():
        lines.append(f"  {name:<24} {'yes' if val else 'no'}")
    for name, val in cert.defects.items():
        lines.append(f"  defect {name:<20} {_sci(val)}")
    lines.append(f"  tolerance   {_sci(cert.tolerance)}")
    return "\n".join(lines)


def cmd_certify(args) -> int:
    fam, dig = _read_input(args.input)
    t0 = time.perf_counter()
    cert = certify(fam, args.tol)
    doc = fio.certificate_document(cert, dig, time.perf_counter() - t0)
    if args.json:
        _emit(json.dumps(doc, indent=1), args.out)
    else:
        _emit(render_certificate(cert, f"{args.input} ({dig})"), args.out)
    return EXIT_OK


def cmd_factorize(args) -> int:
    fam, fdig = _read_input(args.frame)
    basis, bdig = _read_input(args.basis)
    rep = transition_operator(fam, basis, args.tol)
    doc = {"tool": fio.TOOL_NAME, "version": __version__, "frame_digest": fdig, "basis_digest": bdig,
           "transition": fio.transition_to_dict(rep)}
    if args.json:
        _emit(json.dumps(doc, indent=1), args.out)
    else:
        cls = rep.classification
        with np.printoptions(precision=6, suppress=True):
            lines = [f"transition operator of {args.frame} relative to {args.basis}", str(rep.V),
                     f"  residual    {_sci(rep.residual)}",
                     f"  sigma       min {cls.sigma_min:.12g}   max {cls.sigma_max:.12g}",
                     f"  gram bounds {cls.lower_gram:.12g} .. {cls.upper_gram:.12g}"]
        for name in ("is_isometry", "is_unitary", "is_injective", "is_invertible"):
            lines.append(f"  {name:<14} {'yes' if getattr(cls, name) else 'no'}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_split(args) -> int:
    fam, _ = _read_input(args.frame)
    basis, _ = _read_input(args.basis)
    sp = split(SPLIT_KIND_NAMES[args.kind], fam, basis, args.tol)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names, rechecks = [], []
    for k, (part, declared) in enumerate(zip(sp.parts, sp.declared)):
        name = f"part_{k}.json"
        fio.write_family(out / name, part)
        names.append(name)
        rechecks.append(bool(getattr(certify(part, args.tol), DECLARED_FLAG[declared])))
    manifest = fio.manifest_to_dict(sp, names)
    manifest["recertified"] = rechecks
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
    if args.json:
        print(json.dumps(manifest, indent=1))
    else:
        print(f"{sp.kind}: {len(names)} parts written to {out}")
        for name, c, d, ok in zip(names, sp.coefficients, sp.declared, rechecks):
            print(f"  {name}  coefficient {c:.12g}  declared {d}  recertified {'yes' if ok else 'no'}")
        for note in sp.notes:
            print(f"  note: {note}")
    return EXIT_OK


def _parse_bases(spec: str, dims):
    if spec == "identity":
        return LocalBases.identity(dims)
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad --bases value {spec!r}") from None
        return random_local_bases(stream(seed, "local-bases"), dims)
    raise UsageError(f"--bases must be 'identity' or 'random:SEED', got {spec!r}")


def cmd_induce(args) -> int:
    fam, _ = _read_input(args.frame)
    bases = _parse_bases(args.bases, fam.dims)
    u = induce(fam, bases)
    if args.out:
        fio.write_cframe(args.out, u)
    rep = equivalence_report(fam, bases, args.tol)
    if args.json:
        doc = {
            "g_certificate": fio.certificate_to_dict(rep.g_certificate),
            "c_certificate": fio.certificate_to_dict(rep.c_certificate),
            "agreements": rep.agreements,
            "lower_bound_diff": rep.lower_bound_diff,
            "upper_bound_diff": rep.upper_bound_diff,
            "operator_diff": rep.operator_diff,
            "holds": rep.holds,
        }
        print(json.dumps(doc, indent=1))
    else:
        print(f"induced {len(u)} vectors in C^{u.ambient_dim}" + (f", written to {args.out}" if args.out else ""))
        g, c = rep.g_certificate, rep.c_certificate
        print(f"  g-side bounds {g.lower_bound:.12g} .. {g.upper_bound:.12g}")
        print(f"  c-side bounds {c.lower_bound:.12g} .. {c.upper_bound:.12g}")
        for name, ok in rep.agreements.items():
            print(f"  {name:<24} g={'yes' if getattr(g, name) else 'no':<3} "
                  f"c={'yes' if getattr(c, name) else 'no':<3} {'agree' if ok else 'DISAGREE'}")
    return EXIT_OK if rep.holds else EXIT_DISAGREEMENT


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_generate(args) -> int:
    dims = _int_list(args.dims) if args.dims else (1,) * args.n
    weights = _float_list(args.weights) if args.weights else None
    spec = GeneratorSpec(seed=args.seed, ambient_dim=args.n, dims=dims, weights=weights,
                         target_class=CLASS_NAMES[args.cls], A=args.A, B=args.B)
    fam = generate(spec)
    _emit(fio.dumps_family(fam), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="classification tolerance (default 1e-8)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--text", dest="json", action="store_false", help="human-readable output (default)")

    parser = _Parser(prog="cgframes", description="Certify, factorize, split and flatten g-frame families.")
    parser.add_argument("--version", action="version", version=f"cgframes {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("certify", parents=[common], help="classify a family")
    p.add_argument("input")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("factorize", parents=[common], help="transition operator against an orthonormal basis")
    p.add_argument("frame")
    p.add_argument("basis")
    p.add_argument("--out")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("split", parents=[common], help="decompose a frame into structured parts")
    p.add_argument("frame")
    p.add_argument("basis")
    p.add_argument("--kind", required=True, choices=sorted(SPLIT_KIND_NAMES))
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("induce", parents=[common], help="flatten to a weighted vector family")
    p.add_argument("frame")
    p.add_argument("--bases", default="identity", help="'identity' or 'random:SEED'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("generate", parents=[common], help="write a seeded family of a given class")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(CLASS_NAMES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dims", help="comma-separated local dimensions (default: n ones)")
    p.add_argument("--weights", help="comma-separated atom weights (default: all 1)")
    p.add_argument("--A", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotOrthonormalBasis as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ONB
    except (NotAFrame, NotRieszBasis, DegenerateSpectrumGrid) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
