"""Command-line entry point.

Exit codes: 0 success, 1 domain error (with ``{"error": code, ...}`` on
stdout under ``--json``), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence, TextIO

from . import report
from .blocks import model_profile, oracle_agreement
from .dsl import parse_operator, render_operator
from .errors import SpectralError
from .exact import parse_gq
from .generate import DEFAULT_SCALARS, GenParams, gen_random
from .matrix import (
    DEFAULT_CAP,
    ExactMatrix,
    ascent_descent,
    drazin_inverse,
    elementary_rep,
    kron,
    validate_matrix_pair,
)
from .products import Mode, product_with_provenance
from .profile import derive_flags, derive_sets
from .sets import DEFAULT_DEPTH
from .transfer import transfer_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _mode(text: str) -> Mode:
    try:
        return Mode.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid mode {text!r} (choose tensor or elem)")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_model(path: str, depth: int):
    return parse_operator(_read(path), depth)


def _load_matrix(path: str) -> ExactMatrix:
    return ExactMatrix.from_text(_read(path))


def _emit(args, payload: dict, text: str, out: TextIO) -> None:
    out.write(report.dumps(payload) if args.json else text)


def cmd_classify(args, out):
    p = model_profile(_load_model(args.file, args.depth), args.depth)
    d, f = derive_sets(p, args.depth), derive_flags(p, args.depth)
    _emit(args, report.classify_json(p, d, f), report.classify_text(p, d, f), out)


def _pair(args):
    a = model_profile(_load_model(args.a, args.depth), args.depth)
    b = model_profile(_load_model(args.b, args.depth), args.depth)
    return a, b


def cmd_product(args, out):
    a, b = _pair(args)
    res = product_with_provenance(a, b, args.mode, args.depth)
    _emit(args, report.product_json(args.mode.value, res), report.product_text(args.mode.value, res), out)


def cmd_transfer(args, out):
    a, b = _pair(args)
    r = transfer_report(a, b, args.mode, args.depth)
    prov = product_with_provenance(a, b, args.mode, args.depth)
    _emit(args, report.transfer_json(r), report.transfer_text(r, prov), out)


def cmd_oracle(args, out):
    a = _load_model(args.a, args.depth)
    b = _load_model(args.b, args.depth)
    ag = oracle_agreement(a, b, args.mode, args.depth)
    if args.json:
        out.write(report.dumps(report.agreement_json(ag, args.mode.value)))
    elif ag.equal:
        out.write("AGREE\n")
    else:
        lines = ["DISAGREE", "oracle only:"]
        lines += ["  " + report.atom_text(x) for x in ag.only_oracle]
        lines.append("calculus only:")
        lines += ["  " + report.atom_text(x) for x in ag.only_calculus]
        out.write("\n".join(lines) + "\n")
    return 0 if ag.equal else 1


def cmd_matrix_kron(args, out):
    a, b = _load_matrix(args.a), _load_matrix(args.b)
    build = kron if args.matrix_cmd == "kron" else elementary_rep
    m = build(a, b, args.cap)
    _emit(args, report.matrix_json(m), m.to_text(), out)


def cmd_matrix_ascent(args, out):
    m = _load_matrix(args.file)
    lam = parse_gq(args.at)
    ad = ascent_descent(m, lam)
    text = (
        f"lambda: {lam}\nascent: {ad.ascent}\ndescent: {ad.descent}\n"
        f"pole order: {ad.pole_order}\nrank chain: {' '.join(map(str, ad.rank_chain))}\n"
    )
    _emit(args, report.ascent_json(lam, ad), text, out)


def cmd_matrix_drazin(args, out):
    d = drazin_inverse(_load_matrix(args.file))
    _emit(args, report.drazin_json(d), f"index: {d.index}\n" + d.d.to_text(), out)


def cmd_matrix_validate(args, out):
    a, b = _load_matrix(args.a), _load_matrix(args.b)
    mode = {"tensor": "tensor", "elem": "elementary", "elementary": "elementary", "both": "both"}[args.mode]
    r = validate_matrix_pair(a, b, mode, args.cap)
    lines = [f"mode: {r.mode}", f"ok: {str(r.ok).lower()}"]
    lines += [f"  {k}: {'pass' if v else 'FAIL'}" for k, v in sorted(r.checks.items())]
    for name, spec in r.spectra.items():
        lines.append(f"{name} spectrum: {', '.join(spec)}")
        orders = r.pole_orders.get(name, {})
        lines.append(f"{name} pole orders: " + ", ".join(f"{k}:{v}" for k, v in orders.items()))
    lines += [f"failure: {f}" for f in r.failures]
    _emit(args, report.matrix_report_json(r), "\n".join(lines) + "\n", out)
    return 0 if r.ok else 1


def cmd_gen(args, out):
    pool = DEFAULT_SCALARS if args.pool is None else tuple(parse_gq(t) for t in args.pool.split(","))
    outputs = []
    for k in range(args.count):
        params = GenParams(
            seed=args.seed + k,
            max_blocks=args.max_blocks,
            allow_clusters=not args.no_clusters,
            scalar_pool=pool,
        )
        outputs.append(render_operator(gen_random(params)))
    if args.json:
        out.write(report.dumps({"seed": args.seed, "models": outputs}))
    else:
        out.write("".join(m + "\n" for m in outputs))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                        help=f"collision search depth (default {DEFAULT_DEPTH})")

    # the top level gets its own copies: set_defaults would otherwise
    # rewrite the shared actions and make the subcommands reset the flags
    parser = _Parser(prog="tensorspec",
                     description="Exact spectral bookkeeping for tensor products and elementary operators.")
    parser.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    parser.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help=f"collision search depth (default {DEFAULT_DEPTH})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="profile, derived sets and flags of one operator")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    for name, func, helptext in (
        ("product", cmd_product, "classified spectrum of the product"),
        ("transfer", cmd_transfer, "B-Weyl inclusion and Weyl identity report"),
        ("oracle", cmd_oracle, "compare block construction with the calculus"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--mode", type=_mode, default=Mode.TENSOR, help="tensor or elem")
        p.set_defaults(func=func)

    mat = sub.add_parser("matrix", parents=[common], help="exact matrix lab")
    msub = mat.add_subparsers(dest="matrix_cmd", required=True, parser_class=_Parser)
    for name, helptext in (("kron", "A (x) B"), ("elem", "matrix of U -> A U B")):
        p = msub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.set_defaults(func=cmd_matrix_kron)
    p = msub.add_parser("ascent", parents=[common], help="ascent, descent and pole order at a point")
    p.add_argument("file")
    p.add_argument("--at", default="0", help="the point lambda (default 0)")
    p.set_defaults(func=cmd_matrix_ascent)
    p = msub.add_parser("drazin", parents=[common], help="Drazin inverse and index")
    p.add_argument("file")
    p.set_defaults(func=cmd_matrix_drazin)
    p = msub.add_parser("validate", parents=[common], help="check an upper-triangular pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=("tensor", "elem", "elementary", "both"), default="both")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_matrix_validate)

    p = sub.add_parser("gen", parents=[common], help="seeded random operator descriptions")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-blocks", type=int, default=4)
    p.add_argument("--no-clusters", action="store_true")
    p.add_argument("--pool", help="comma-separated scalar pool, e.g. '0,1,1/2,0+1i'")
    p.set_defaults(func=cmd_gen)
    return parser


def run_command(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(parser.format_usage())
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    func: Callable = args.func
    try:
        code = func(args, out)
    except SpectralError as exc:
        return _fail(args, exc.code, str(exc), out, err)
    except OSError as exc:
        return _fail(args, "io_error", f"{exc.filename}: {exc.strerror}", out, err)
    except (ValueError, ZeroDivisionError) as exc:
        return _fail(args, "invalid_input", str(exc), out, err)
    return code or 0


def _fail(args, code: str, message: str, out: TextIO, err: TextIO) -> int:
    if args.json:
        out.write(report.dumps(report.error_json(code, message)))
    else:
        err.write(f"error: {code}: {message}\n")
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
