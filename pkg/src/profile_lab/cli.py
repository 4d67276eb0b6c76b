"""Command line interface: ``profile-lab <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 domain error.  Domain errors print
``{"error": code, "detail": ...}`` on stderr.  Exact rationals are written as
``num/den`` strings.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import expander as _exp
from . import graphs, homcount, profile, realize
from .errors import FeasibilityExceeded, ProfileLabError, UniformityMismatch

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

def _number(text: str):
    """Exact ``Fraction`` for ``3``, ``1/3`` or ``0.25``; float only for exponent notation."""
    text = text.strip()
    try:
        if "e" in text.lower() and "/" not in text:
            return float(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def _numbers(text: str) -> list:
    return [_number(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _target(text: str, family: str):
    """``y1,y2,...``; mixed targets separate the ``q`` blocks with ``;``."""
    if family == "mixed":
        return tuple(tuple(_numbers(block)) for block in text.split(";"))
    if ";" in text:
        raise UsageError("';' separates blocks only for the mixed family")
    return tuple(_numbers(text))


def _open_in(path: str):
    if path == "-":
        return sys.stdin
    try:
        return open(path, "r", encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _read_graphs(path: str) -> list:
    fh = _open_in(path)
    try:
        gs = graphs.read_graph6(fh)
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not gs:
        raise UsageError(f"no graphs in {path}")
    return gs


def _read_hypergraphs(path: str) -> list:
    fh = _open_in(path)
    try:
        hs = graphs.read_hypergraphs(fh)
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not hs:
        raise UsageError(f"no hypergraphs in {path}")
    return hs


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write(text: str, path: str | None, out) -> None:
    if path is None or path == "-":
        out.write(text)
        return
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _param(args) -> int | None:
    fam = args.family
    if fam == "necklaces":
        if args.q is None:
            raise UsageError("--q is required for necklaces")
        return args.q
    if fam == "mixed":
        return args.r
    if fam == "hyperstars":
        if args.k is None:
            raise UsageError("--k is required for hyperstars")
        return args.k
    return None


def _point_header(ell: int, family: str, r: int | None) -> list[str]:
    if family == "mixed":
        return [f"a_{j}_q{q}" for q in range(2, r + 1) for j in range(2, ell + 1)]
    return [f"a_{j}" for j in range(2, ell + 1)]


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_count(args, out) -> None:
    if args.motif == "hyperstar":
        if args.b is None:
            raise UsageError("--b is required for hyperstars")
        for H in _read_hypergraphs(args.inp):
            if args.k is not None and args.k != H.k:
                raise UniformityMismatch(f"--k {args.k} but the hypergraph is {H.k}-uniform")
            out.write(f"{homcount.hyperstar_hom(H, args.b)}\n")
        return
    if args.j is None:
        raise UsageError("--j is required for cycles and necklaces")
    q = 2 if args.motif == "cycle" else args.q
    if q is None:
        raise UsageError("--q is required for necklaces")
    for G in _read_graphs(args.inp):
        out.write(f"{homcount.necklace_hom(G, args.j, q)}\n")


def _ratio_points(args) -> list:
    fam = args.family
    if fam == "hyperstars":
        return [profile.ratio_point_hyperstars(H, args.l, args.k) for H in _read_hypergraphs(args.inp)]
    pts = []
    for G in _read_graphs(args.inp):
        if fam == "cycles":
            pts.append(profile.ratio_point_cycles(G, args.l))
        elif fam == "necklaces":
            pts.append(profile.ratio_point_necklaces(G, args.l, _param(args)))
        else:
            pts.append(profile.ratio_point_mixed(G, args.l, args.r))
    return pts


def cmd_ratio(args, out) -> None:
    pts = _ratio_points(args)
    if args.format == "json":
        out.write("".join(_dump({"values": p.as_strings()}) + "\n" for p in pts))
    else:
        out.write(_csv(_point_header(args.l, args.family, args.r), [p.as_strings() for p in pts]))


def cmd_boundary(args, out) -> None:
    pat = profile.BoundaryPattern(args.type, tuple(_ints(args.mults)), tuple(_numbers(args.values)))
    point = profile.boundary_point(pat, args.l)
    out.write(_dump({"values": point.as_strings()}) + "\n")


def cmd_sample(args, out) -> None:
    pts, sizes = profile.sample_profile(args.l, args.nmax, args.count, args.seed, return_sizes=True)
    rows = [[int(n), *(repr(float(v)) for v in p)] for n, p in zip(sizes, pts)]
    _write(_csv(["n", *_point_header(args.l, "cycles", None)], rows), args.out, out)


def _provider(args):
    return _exp.get_provider(args.provider)


def _spec(args, ell: int) -> realize.TargetSpec:
    return realize.TargetSpec(_target(args.target, args.family), ell, _param(args))


def cmd_realize(args, out) -> None:
    spec = _spec(args, 2)
    if args.family in ("cycles", "necklaces"):
        sizes = (realize.clique_sizes_cycles(spec.y, args.N) if args.family == "cycles"
                 else realize.clique_sizes_necklaces(spec.y, spec.param, args.N))
        if sum(sizes) > realize.MATERIALIZE_LIMIT:
            raise FeasibilityExceeded(
                f"graph would have {sum(sizes)} vertices, materialization cap is {realize.MATERIALIZE_LIMIT}",
                n=sum(sizes),
            )
    G = realize.build(spec, args.family, args.N, _provider(args))
    text = graphs.write_hypergraphs([G]) if args.family == "hyperstars" else graphs.write_graph6([G])
    _write(text, args.out, out)


def cmd_converge(args, out) -> None:
    spec = _spec(args, args.l)
    rows = realize.convergence_experiment(spec, args.family, _ints(args.schedule), _provider(args))
    if args.format == "json":
        payload = {"rows": [
            {"N": r.N, "graph_size": r.graph_size, "err_inf": r.err_inf, "values": r.point.as_strings()}
            for r in rows
        ]}
        out.write(_dump(payload) + "\n")
        return
    header = ["N", "graph_size", "err_inf", *_point_header(args.l, args.family, spec.param)]
    out.write(_csv(header, [[r.N, r.graph_size, repr(r.err_inf), *r.point.as_strings()] for r in rows]))


def cmd_verify(args, out) -> None:
    if (args.inp is None) == (args.alon is None):
        raise UsageError("give exactly one of --in and --alon")
    gs = [_exp.expander(args.alon, args.max_vertices)] if args.alon is not None else _read_graphs(args.inp)
    for G in gs:
        out.write(_dump(_exp.verify_ndlambda(G, args.tol).to_dict()) + "\n")


def cmd_fiber(args, out) -> None:
    b = profile.FiberPoint.from_flat(_numbers(args.point), args.l, args.r)
    scaled = profile.fiber_scale(b, _number(args.t), args.l, args.r)
    rows = [[profile.format_value(v) for v in row] for row in scaled.values]
    out.write(_dump({"values": rows}) + "\n")


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="profile-lab", description="Homomorphism ratio profiles of cycles, necklaces and hyperstars.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="exact homomorphism count")
    c.add_argument("--motif", choices=("cycle", "necklace", "hyperstar"), required=True)
    c.add_argument("--j", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--in", dest="inp", required=True)
    c.set_defaults(func=cmd_count)

    families = ("cycles", "necklaces", "mixed", "hyperstars")

    r = sub.add_parser("ratio", help="ratio point of a graph")
    r.add_argument("--family", choices=families, required=True)
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--q", type=int)
    r.add_argument("--r", type=int, default=3)
    r.add_argument("--k", type=int)
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.set_defaults(func=cmd_ratio)

    b = sub.add_parser("boundary", help="boundary point of Pi_{n,l}")
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--type", type=int, choices=(1, 2), required=True)
    b.add_argument("--mults", required=True)
    b.add_argument("--values", required=True)
    b.set_defaults(func=cmd_boundary)

    s = sub.add_parser("sample", help="random points of Pi_l as CSV")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    for name, func, hlp in (("realize", cmd_realize, "build the N-th graph of a sequence"),
                            ("converge", cmd_converge, "convergence table")):
        x = sub.add_parser(name, help=hlp)
        x.add_argument("--family", choices=families, required=True)
        x.add_argument("--target", required=True)
        x.add_argument("--q", type=int)
        x.add_argument("--r", type=int)
        x.add_argument("--k", type=int)
        x.add_argument("--provider", choices=("alon", "fallback", "petersen"), default="fallback")
        if name == "realize":
            x.add_argument("--N", type=int, required=True)
            x.add_argument("--out")
        else:
            x.add_argument("--l", type=int, required=True)
            x.add_argument("--schedule", required=True)
            x.add_argument("--format", choices=("csv", "json"), default="csv")
        x.set_defaults(func=func)

    v = sub.add_parser("verify-expander", help="(n, d, lambda) report")
    v.add_argument("--in", dest="inp")
    v.add_argument("--alon", type=int, help="build A(k,2) instead of reading a file")
    v.add_argument("--max-vertices", type=int, default=_exp.DEFAULT_MAX_VERTICES)
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fiber", help="scale a fiber point by isolated-vertex padding")
    f.add_argument("--l", type=int, required=True)
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--point", required=True)
    f.add_argument("--t", required=True)
    f.set_defaults(func=cmd_fiber)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, stdout)
    except UsageError as exc:
        stderr.write(_dump({"error": "UsageError", "detail": str(exc)}) + "\n")
        return EXIT_USAGE
    except ProfileLabError as exc:
        stderr.write(_dump({"error": exc.code, "detail": exc.detail}) + "\n")
        return EXIT_DOMAIN
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
