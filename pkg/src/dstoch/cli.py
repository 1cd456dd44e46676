"""Command-line surface.  One verb per library operation; JSON to stdout
(CSV for the boundary table with --csv), exact rationals rendered as
"p/q" strings.

Exit codes: 0 success, 1 domain error (e.g. the input is not doubly
stochastic), 2 usage or parse error.
"""

import argparse
import json
import os
import sys

from .ratmat import (DomainError, ParseError, make_jn, make_tn,
                     parse_rational, read_matrix, validate_ds)
from . import diagsum, explore, saturation, weakform


def _emit(payload):
    print(json.dumps(payload, separators=(",", ":")))


def _mat_json(m):
    return {"n": m.n, "rows": [[str(x) for x in row] for row in m.rows]}


def _perm_json(p):
    return list(p.image)


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("DS_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


# ── subcommand handlers ───────────────────────────────────────────────────

def cmd_check(args):
    m = validate_ds(read_matrix(args.matrix))
    _emit({"n": m.n, "doubly_stochastic": True})


def cmd_gap(args):
    report = diagsum.marcus_ree_gap(validate_ds(read_matrix(args.matrix)))
    _emit({"frob_sq": str(report.frob_sq), "max_trace": str(report.max_trace),
           "gap": str(report.gap), "saturated": report.saturated})


def cmd_maxtrace(args):
    m = read_matrix(args.matrix)
    if args.method == "brute":
        report = diagsum.max_trace_brute(m)
    else:
        report = diagsum.max_trace_assignment(m)
    _emit({"max_trace": str(report.max_value),
           "argmax": _perm_json(report.argmax), "method": report.method})


def cmd_permanent(args):
    _emit({"permanent": str(diagsum.permanent(read_matrix(args.matrix)))})


def cmd_maxprod(args):
    value, perm = diagsum.max_diag_product(read_matrix(args.matrix))
    _emit({"max_product": str(value), "argmax": _perm_json(perm)})


def cmd_classify(args):
    m = validate_ds(read_matrix(args.matrix))
    if m.n == 2:
        _emit({"saturated": saturation.classify2(m)})
        return
    c = saturation.classify3(m)
    if c.saturated:
        _emit({"saturated": True, "form": c.form,
               "P": _perm_json(c.witness[0]), "Q": _perm_json(c.witness[1])})
    else:
        _emit({"saturated": False, "separator": _perm_json(c.separator)})


def cmd_region(args):
    u, v = parse_rational(args.u), parse_rational(args.v)
    _emit({"E0": weakform.in_disc_e0(u, v),
           "E1": weakform.in_ellipse(1, u, v),
           "E2": weakform.in_ellipse(2, u, v),
           "E3": weakform.in_ellipse(3, u, v),
           "U_minus": weakform.in_u_minus(u, v),
           "U_plus": weakform.in_u_plus(u, v)})


def cmd_boundary(args):
    rows = weakform.boundary_curves(args.min, args.max, args.step)
    if args.csv:
        sys.stdout.write(weakform.boundary_csv(rows))
    else:
        _emit({"rows": [[u, f, g, h] for u, f, g, h in rows]})


def cmd_params(args):
    m = validate_ds(read_matrix(args.matrix))
    u, v, w = weakform.matrix_to_params(m)
    _emit({"u": str(u), "v": str(v), "w": str(w)})


def cmd_construct(args):
    u, v = parse_rational(args.u), parse_rational(args.v)
    params = weakform.solve_w(u, v, args.sign)
    matrix = weakform.params_to_matrix(params)
    payload = {"u": str(u), "v": str(v), "sign": args.sign, "exact": params.exact}
    if params.exact:
        payload["w"] = str(params.w)
        payload["matrix"] = _mat_json(matrix)
    else:
        payload["w"] = params.w
        payload["matrix"] = matrix.tolist()
    _emit(payload)


def cmd_enumerate(args):
    zero_cell = None
    if args.zero_cell:
        i, j = args.zero_cell.split(",")
        zero_cell = (int(i), int(j))
    report = explore.enumerate_grid(args.denominator, zero_cell=zero_cell,
                                    threads=_threads(args))
    found = []
    for m, c in report.saturating:
        found.append({"matrix": _mat_json(m), "form": c.form,
                      "P": _perm_json(c.witness[0]), "Q": _perm_json(c.witness[1])})
    _emit({"denominator": report.denominator,
           "total_candidates": report.total_candidates,
           "ds_count": report.ds_count, "saturating": found})


def _spec_json(spec):
    return {"p": _perm_json(spec.p), "parts": list(spec.parts),
            "q": _perm_json(spec.q)}


def cmd_products(args):
    probes = explore.search_products(args.n, args.max_parts, args.samples,
                                     args.seed)
    out = []
    for probe in probes:
        out.append({"left": _spec_json(probe.left),
                    "right": _spec_json(probe.right),
                    "product": _mat_json(probe.product),
                    "frob_sq": str(probe.frob_sq),
                    "max_trace": str(probe.max_trace),
                    "trace_perm": _perm_json(probe.trace_perm),
                    "identity_holds": probe.identity_holds,
                    "saturates": probe.saturates})
    _emit({"n": args.n, "samples": args.samples, "seed": args.seed,
           "probes": out})


def cmd_probe(args):
    report = explore.rationality_probe(args.n, args.samples, args.seed,
                                       tol=args.tol)
    out = []
    for c in report.candidates:
        out.append({"index": c.index, "kind": c.kind, "gap_float": c.gap_float,
                    "verified": c.verified,
                    "matrix": None if c.reconstructed is None
                    else _mat_json(c.reconstructed)})
    _emit({"n": report.n, "samples": report.samples, "seed": report.seed,
           "tol": report.tol, "candidates": out})


def cmd_canonical(args):
    name = args.name
    if name.startswith("Tn:"):
        m = make_tn(int(name[3:]))
    elif name.startswith("Jn:"):
        m = make_jn(int(name[3:]))
    else:
        tag = {"I1J2": "I1_J2"}.get(name, name)
        m = saturation.canonical(tag)
    _emit(_mat_json(m))


# ── driver ────────────────────────────────────────────────────────────────

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ds",
        description="Exact computations on doubly stochastic matrices.")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for grid enumeration "
                             "(default: DS_THREADS or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("check", cmd_check, "validate a doubly stochastic matrix file")
    p.add_argument("matrix")
    p = add("gap", cmd_gap, "Frobenius norm squared, maximal trace, and gap")
    p.add_argument("matrix")
    p = add("maxtrace", cmd_maxtrace, "maximal trace with witness")
    p.add_argument("matrix")
    p.add_argument("--method", choices=["brute", "assignment"],
                   default="assignment")
    p = add("permanent", cmd_permanent, "exact permanent")
    p.add_argument("matrix")
    p = add("maxprod", cmd_maxprod, "maximal diagonal product with witness")
    p.add_argument("matrix")
    p = add("classify", cmd_classify, "saturation decision (orders 2 and 3)")
    p.add_argument("matrix")
    p = add("region", cmd_region, "exact region membership of a point (u,v)")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p = add("boundary", cmd_boundary, "sample the boundary curves f, g, h")
    p.add_argument("--min", type=float, default=-1.2)
    p.add_argument("--max", type=float, default=1.2)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--csv", action="store_true")
    p = add("params", cmd_params, "recover (u, v, w) from a matrix with "
                                  "entry (2,1) zero")
    p.add_argument("matrix")
    p = add("construct", cmd_construct, "build the matrix at (u, v) for a "
                                        "root sign")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--sign", choices=["minus", "plus"], required=True)
    p = add("enumerate", cmd_enumerate, "exact census of the 1/d grid")
    p.add_argument("--denominator", type=int, required=True)
    p.add_argument("--zero-cell", default=None, metavar="I,J")
    p = add("products", cmd_products, "seeded block-J product probes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-parts", type=int, default=4)
    p = add("probe", cmd_probe, "float sampling with exact rational "
                                "reconstruction of near-saturating finds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p = add("canonical", cmd_canonical, "emit a canonical matrix "
                                        "(I3|J3|I1J2|S|T|R|Tn:<n>|Jn:<n>)")
    p.add_argument("--name", required=True)
    return parser


def _glue_rational_flags(argv):
    """Join `--u -3/5` into `--u=-3/5` so argparse does not read negative
    fractions as option flags."""
    out = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token in ("--u", "--v") and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_glue_rational_flags(list(argv)))
    try:
        args.handler(args)
    except ParseError as exc:
        print(f"ds: parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"ds: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"ds: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
