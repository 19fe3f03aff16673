"""latticeforge: present -> validate/link -> double -> quotient -> spectrum.

Stages hand off through files (presentation JSON, Cayley CSR binary) so the
intermediates can be inspected and archived.  Exit codes: 0 success,
1 validation/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cubical, quatff, quotient, spectral
from .errors import LatticeForgeError
from .fields import build_field_context
from .hurwitz import present_gamma_hurwitz
from .presentation import Presentation, deserialize, serialize, validate


def _write(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


def _load(path: str) -> Presentation:
    return deserialize(Path(path).read_bytes())


def parse_poly(text: str, base) -> list:
    """Parse `t^2+1`-style polynomials into base-field coefficient codes,
    constant first.

    For prime fields the integer coefficients reduce mod p; for extension
    fields they must already be element codes in [0, q), negated via the
    field if written with a minus sign.
    """
    s = text.replace(" ", "").replace("-", "+-")
    terms = [t for t in s.split("+") if t]
    raw: dict[int, list] = {}
    for term in terms:
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        if "t" in term:
            head, _, tail = term.partition("t")
            coeff = int(head.rstrip("*")) if head.rstrip("*") else 1
            deg = int(tail[1:]) if tail.startswith("^") else 1
        else:
            coeff = int(term)
            deg = 0
        raw.setdefault(deg, []).append(sign * coeff)
    if not raw:
        raise LatticeForgeError(f"cannot parse polynomial {text!r}")

    def to_code(n: int) -> int:
        if base.n == 1:
            return n % base.p
        mag = abs(n)
        if mag >= base.order:
            raise LatticeForgeError(f"coefficient {n} is not an F_{base.order} code")
        return base.neg(mag) if n < 0 else mag

    out = [0] * (max(raw) + 1)
    for deg, parts in raw.items():
        acc = 0
        for n in parts:
            acc = base.add(acc, to_code(n))
        out[deg] = acc
    return out


def _cmd_present(args) -> int:
    if args.source == "ff":
        delta = None
        if args.delta:
            u, v = (int(x) for x in args.delta.split(","))
            delta = (u, v)
        ctx = build_field_context(args.p, args.e, delta=delta)
        places = [int(x) for x in args.places.split(",")]
        if getattr(args, "with_lambda", False):
            pres = quatff.present_lambda_ff(ctx, places)
        else:
            pres = quatff.present_gamma_ff(ctx, places)
    else:
        primes = [int(x) for x in args.primes.split(",")]
        pres = present_gamma_hurwitz(primes, primed=not args.unprimed, unit=args.unit)
    _write(args.out, serialize(pres, "json"))
    if args.text:
        _write(args.text, serialize(pres, "text"))
    ndirs = len(pres.directions)
    print(f"wrote {args.out}: {ndirs} directions, "
          f"{sum(len(d.generators) for d in pres.directions)} generators, "
          f"{len(pres.squares)} squares")
    return 0


def _cmd_validate(args) -> int:
    report = validate(_load(args.infile))
    for problem in report.problems:
        print(f"problem: {problem}")
    for pair, corner, count in report.corner_defects:
        print(f"corner defect: pair {pair} corner {corner} covered {count} times")
    print(f"valid: {report.ok}; squares per pair: "
          f"{ {f'{a}|{b}': n for (a, b), n in sorted(report.per_pair_squares.items())} }")
    return 0 if report.ok else 1


def _cmd_link(args) -> int:
    report = cubical.check_link(_load(args.infile))
    for pair, corner, count in report.defects:
        print(f"link defect: pair {pair} corner {corner} covered {count} times")
    print(f"link: {'pass' if report.passed else 'fail'}; squares per pair: "
          f"{ {f'{a}|{b}': n for (a, b), n in sorted(report.per_pair_squares.items())} }")
    return 0 if report.passed else 1


def _cmd_double(args) -> int:
    pres = _load(args.infile)
    doubled = cubical.double(pres)
    _write(args.out, serialize(doubled, "json"))
    print(f"wrote {args.out}: generators per direction "
          f"{[len(d.generators) for d in doubled.directions]}, {len(doubled.squares)} squares")
    return 0


def _cmd_cyclic(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",")]
    pres = cubical.cyclic_complex(sizes)
    _write(args.out, serialize(pres, "json"))
    print(f"wrote {args.out}: sizes {sizes}, {len(pres.squares)} squares")
    return 0


def _cmd_quotient(args) -> int:
    pres = _load(args.infile)
    if pres.family.startswith("ff"):
        if not args.mod_poly:
            raise LatticeForgeError("ff presentations need --mod-poly")
        ctx = quatff.rebuild_ctx(pres.field_info)
        places = [int(d.label) for d in pres.directions]
        pi = parse_poly(args.mod_poly, ctx.base)
        split = quotient.split_ff(ctx, pi, places=places)
    elif pres.family == "hurwitz-gamma":
        if not args.mod:
            raise LatticeForgeError("hurwitz presentations need --mod")
        primes = [int(d.label) for d in pres.directions]
        split = quotient.split_hurwitz(args.mod, primes)
    else:
        raise LatticeForgeError(
            f"family {pres.family!r} has no algebra model to reduce (use ff or hurwitz)")
    C = quotient.build_cayley(pres, split)
    if not quotient.squares_close_up(C, split):
        raise LatticeForgeError("a presentation square does not close up mod the place")
    quotient.write_cayley_bin(C, args.out)
    if args.dot:
        _write(args.dot, quotient.to_dot(C).encode())
    print(f"wrote {args.out}: {C.n_vertices} vertices ({split.describe()})")
    return 0


def _cmd_spectrum(args) -> int:
    mats = spectral.matrices_from_bin(args.infile)
    report = spectral.ramanujan_report(mats, tol=args.tol)
    if args.json:
        _write(args.json, spectral.report_json(report).encode())
    if args.csv:
        _write(args.csv, spectral.spectrum_csv(report).encode())
        if not args.no_plot:
            plot_path = args.plot or str(Path(args.csv).with_suffix(".png"))
            spectral.render_spectrum_figure(report, plot_path)
    elif args.plot:
        spectral.render_spectrum_figure(report, args.plot)
    for d in report.directions:
        mx = "none" if d.max_nontrivial_abs is None else f"{d.max_nontrivial_abs:.9f}"
        print(f"direction {d.label}: n={d.n} trivial +{d.trivial_plus}/-{d.trivial_minus} "
              f"max|nontrivial|={mx} bound={d.bound:.9f} "
              f"{'pass' if d.passed else 'FAIL'}")
    for (v, w), ok in sorted(report.commutation.items()):
        print(f"commutation [{v},{w}]: {'exact' if ok else 'FAIL'}")
    print(f"cubical Ramanujan: {'pass' if report.passed else 'FAIL'} (tol={report.tol})")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latticeforge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    pres = sub.add_parser("present", help="emit a lattice presentation")
    pres_sub = pres.add_subparsers(dest="source", required=True)
    ff = pres_sub.add_parser("ff", help="function-field lattice over F_q(t)")
    ff.add_argument("--p", type=int, required=True)
    ff.add_argument("--e", type=int, default=1)
    ff.add_argument("--places", required=True, help="comma-separated nonzero F_q codes")
    ff.add_argument("--delta", help="override the generator, as 'u,v' for u+vZ")
    ff.add_argument("--lambda", dest="with_lambda", action="store_true",
                    help="emit the Lambda presentation (with the dihedral finite part)")
    ff.add_argument("--out", default="P.json")
    ff.add_argument("--text", help="also write the <generators|relations> text form")
    ff.set_defaults(func=_cmd_present)
    hz = pres_sub.add_parser("hurwitz", help="Hurwitz quaternion lattice over Q")
    hz.add_argument("--primes", required=True, help="comma-separated odd primes")
    hz.add_argument("--unprimed", action="store_true")
    hz.add_argument("--unit", default="i", choices=["i", "j", "k"],
                    help="primed-set unit multiplier for p = 3 mod 4")
    hz.add_argument("--out", default="P.json")
    hz.add_argument("--text")
    hz.set_defaults(func=_cmd_present)

    val = sub.add_parser("validate", help="well-formedness and corner coverage")
    val.add_argument("--in", dest="infile", required=True)
    val.set_defaults(func=_cmd_validate)

    link = sub.add_parser("link", help="product-of-trees link condition")
    link.add_argument("--in", dest="infile", required=True)
    link.set_defaults(func=_cmd_link)

    dbl = sub.add_parser("double", help="doubling construction D(X)")
    dbl.add_argument("--in", dest="infile", required=True)
    dbl.add_argument("--out", default="D.json")
    dbl.set_defaults(func=_cmd_double)

    cyc = sub.add_parser("cyclic", help="cyclic one-vertex complex")
    cyc.add_argument("--sizes", required=True, help="comma-separated even sizes")
    cyc.add_argument("--out", default="C.json")
    cyc.set_defaults(func=_cmd_cyclic)

    quo = sub.add_parser("quotient", help="congruence-quotient Cayley complex")
    quo.add_argument("--in", dest="infile", required=True)
    quo.add_argument("--mod", type=int, help="odd prime (hurwitz lattices)")
    quo.add_argument("--mod-poly", help="monic polynomial in t over F_q (ff lattices)")
    quo.add_argument("--out", default="cayley.bin")
    quo.add_argument("--dot", help="also write a DOT rendering")
    quo.set_defaults(func=_cmd_quotient)

    spect = sub.add_parser("spectrum", help="directional spectra and Ramanujan verdict")
    spect.add_argument("--in", dest="infile", required=True)
    spect.add_argument("--tol", type=float, default=1e-9)
    spect.add_argument("--json", help="write the certificate JSON")
    spect.add_argument("--csv", help="write the eigenvalue CSV (figure lands beside it)")
    spect.add_argument("--plot", help="explicit figure path")
    spect.add_argument("--no-plot", action="store_true")
    spect.set_defaults(func=_cmd_spectrum)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LatticeForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
