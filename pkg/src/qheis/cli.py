"""Command-line front end: every verification and computation, machine-readable.

Exit codes: 0 on success and on verification PASS, 1 on verification FAIL
(residues are printed), 2 on usage errors.  Output goes to stdout in the
requested format (json or table); diagnostics go to stderr.  The QAFF_FORMAT
environment variable overrides the default output format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cartan import InvalidType, load_type, positive_roots
from .heisenberg import (
    HeisenbergAlgebra,
    StructureConvention,
    report_to_json,
    verify_canonical_relations,
)
from .loopweights import GradedDims, phi_verma_weight_dim, weight_multiplicity
from .qscalar import qint, specialize_q1
from .verma import PhiSignature, Truncation, VermaModule
from .weyliso import verify_weyl_iso


def _format_choice(args):
    fmt = getattr(args, "format", None)
    if fmt:
        return fmt
    return os.environ.get("QAFF_FORMAT", "json")


def _emit(obj, fmt, table_renderer):
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        for line in table_renderer(obj):
            print(line)


def _convention(args):
    return (StructureConvention.QJ_BRACKET if args.convention == "paper"
            else StructureConvention.PLAIN_Q)


def _cmd_cartan(args):
    cd = load_type(args.type, args.rank)
    obj = cd.to_json()
    if args.roots:
        obj["positive_roots"] = [list(r.coeffs) for r in positive_roots(cd)]

    def table(o):
        yield f"series\t{o['series']}"
        yield f"rank\t{o['rank']}"
        for row in o["gcm"]:
            yield "gcm\t" + "\t".join(str(x) for x in row)
        yield "d\t" + "\t".join(str(x) for x in o["d"])
        for r in o.get("positive_roots", []):
            yield "root\t" + "\t".join(str(x) for x in r)

    _emit(obj, _format_choice(args), table)
    return 0


def _cmd_qnum(args):
    value = qint(args.n, args.d)
    if args.at_q1:
        rat = specialize_q1(value)
        out = int(rat) if rat.denominator == 1 else str(rat)
        print(json.dumps(out) if _format_choice(args) == "json" else out)
    else:
        text = str(value)
        print(json.dumps(text) if _format_choice(args) == "json" else text)
    return 0


def _verify_table(rows):
    for r in rows:
        status = "pass" if r["pass"] else "FAIL"
        yield f"{r['relation-id']}\t{status}\t{r['residue']}"
    bad = sum(1 for r in rows if not r["pass"])
    yield f"summary\t{len(rows) - bad}/{len(rows)} passed"


def _cmd_heis_verify(args):
    cd = load_type(args.type, args.rank)
    alg = HeisenbergAlgebra(cd, _convention(args), args.level)
    checks = verify_canonical_relations(alg, args.max_k)
    rows = report_to_json(checks)
    _emit(rows, _format_choice(args), _verify_table)
    return 0 if all(r["pass"] for r in rows) else 1


def _cmd_weyl_verify(args):
    cd = load_type(args.type, args.rank)
    checks = verify_weyl_iso(cd, args.level, args.max_k, _convention(args))
    rows = report_to_json(checks)
    _emit(rows, _format_choice(args), _verify_table)
    return 0 if all(r["pass"] for r in rows) else 1


def _cmd_verma_dims(args):
    phi = PhiSignature.parse(args.phi)
    module = VermaModule(phi, args.level, Truncation(args.max_index, args.max_exp))
    lo = args.from_degree if args.from_degree is not None else -args.max_index
    hi = args.to_degree if args.to_degree is not None else args.max_index
    obj = {
        "phi": {"prefix": phi.render().split(":")[0] if ":" in phi.render() else "",
                "period": phi.render().split(":")[-1]},
        "level": args.level,
        "truncation": {"max_index": args.max_index, "max_exponent": args.max_exp},
        "degrees": [module.graded_dim(n).to_json() for n in range(lo, hi + 1)],
    }

    def table(o):
        yield "n,dim,verdict"
        for row in o["degrees"]:
            yield f"{row['n']},{row['dim']},{row['verdict']}"

    _emit(obj, _format_choice(args), table)
    return 0


def _cmd_verma_irred(args):
    phi = PhiSignature.parse(args.phi)
    module = VermaModule(phi, args.level, Truncation(args.max_index, args.max_exp))
    obj = module.report()

    def table(o):
        yield f"verdict\t{o['verdict']}"
        if o["witness_degree"] is not None:
            yield f"witness-degree\t{o['witness_degree']}"
        for row in o["gram"]:
            yield f"gram\t{row['n']}\t{'nonzero' if row['nonzero'] else 'ZERO'}\t{row['det']}"

    _emit(obj, _format_choice(args), table)
    return 0


def _parse_vdims(text):
    raw = json.loads(text)
    counts = {}
    infinite = set()
    for key, val in raw.items():
        m = int(key)
        if val == "inf":
            infinite.add(m)
            counts[m] = 0
        else:
            counts[m] = int(val)
    keys = list(counts)
    return GradedDims(counts, frozenset(infinite), (min(keys), max(keys)))


def _cmd_loop_mult(args):
    cd = load_type(args.type, args.rank)
    beta = tuple(int(x) for x in args.beta.split(","))
    if len(beta) != cd.rank:
        raise ValueError(f"--beta needs {cd.rank} comma-separated coefficients")
    if args.k_sweep:
        lo, hi = (int(x) for x in args.k_sweep.split(":"))
        ks = range(lo, hi + 1)
    else:
        ks = [args.k]
    trunc = Truncation(args.max_index, args.max_exp)
    reports = []
    for k in ks:
        if args.vdims:
            rep = weight_multiplicity(cd, beta, k, _parse_vdims(args.vdims), args.window)
        else:
            phi = PhiSignature.parse(args.phi)
            rep = phi_verma_weight_dim(cd, phi, args.level, beta, k, args.window, trunc)
        reports.append(rep.to_json())
    obj = reports if args.k_sweep else reports[0]

    def table(o):
        rows = o if isinstance(o, list) else [o]
        yield "k,count,verdict"
        for row in rows:
            yield f"{row['mu']['k']},{row['truncated_count']},{row['verdict']}"

    _emit(obj, _format_choice(args), table)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qheis",
        description="Exact desk-scale computations for quantum Heisenberg algebras, "
                    "their Weyl-algebra realization, imaginary Verma-type modules, "
                    "and loop-module weight multiplicities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["json", "table"],
                       help="output format (default json; QAFF_FORMAT overrides)")

    def add_type_rank(p):
        p.add_argument("--type", required=True, choices=list("ABCDEFG"))
        p.add_argument("--rank", required=True, type=int)

    def add_convention(p):
        p.add_argument("--convention", choices=["paper", "drinfeld"], default="paper",
                       help="structure-constant normalization for non-simply-laced nodes")

    p = sub.add_parser("cartan", help="affine Cartan data and finite positive roots")
    add_type_rank(p)
    p.add_argument("--roots", action="store_true", help="include the finite positive roots")
    add_format(p)
    p.set_defaults(func=_cmd_cartan)

    p = sub.add_parser("qnum", help="quantum integer [n] in base q^d")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--at-q1", action="store_true", help="specialize q to 1")
    add_format(p)
    p.set_defaults(func=_cmd_qnum)

    p = sub.add_parser("heis-verify",
                       help="verify the decoupled relations through the defining ones")
    add_type_rank(p)
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--level", type=int, default=None,
                   help="specialize gamma = q^level (default: formal gamma)")
    add_convention(p)
    add_format(p)
    p.set_defaults(func=_cmd_heis_verify)

    p = sub.add_parser("weyl-verify",
                       help="verify the level-specialized Weyl realization")
    add_type_rank(p)
    p.add_argument("--level", required=True, type=int)
    p.add_argument("--max-k", type=int, default=6)
    add_convention(p)
    add_format(p)
    p.set_defaults(func=_cmd_weyl_verify)

    p = sub.add_parser("verma-dims", help="truncated graded dimensions")
    p.add_argument("--phi", required=True, help="sign signature, e.g. '+' or '+-:+'")
    p.add_argument("--level", required=True, type=int)
    p.add_argument("--max-index", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=6)
    p.add_argument("--from-degree", type=int, default=None)
    p.add_argument("--to-degree", type=int, default=None)
    add_format(p)
    p.set_defaults(func=_cmd_verma_dims)

    p = sub.add_parser("verma-irred", help="truncation-scale irreducibility verdict")
    p.add_argument("--phi", required=True)
    p.add_argument("--level", required=True, type=int)
    p.add_argument("--max-index", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=6)
    add_format(p)
    p.set_defaults(func=_cmd_verma_irred)

    p = sub.add_parser("loop-mult", help="truncated loop-module weight multiplicities")
    add_type_rank(p)
    p.add_argument("--beta", required=True, help="comma-separated simple-root coefficients")
    p.add_argument("--k", type=int, default=0, help="delta shift of the target weight")
    p.add_argument("--k-sweep", default=None, help="LO:HI sweep over the delta shift (CSV in table mode)")
    p.add_argument("--window", type=int, default=3, help="bound on each monomial shift")
    p.add_argument("--phi", default="+", help="sign signature for the inducing module")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--vdims", default=None,
                   help='JSON {"degree": dim} for a user-supplied inducing module '
                        '("inf" marks a degree as infinite-dimensional)')
    p.add_argument("--max-index", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=6)
    add_format(p)
    p.set_defaults(func=_cmd_loop_mult)

    return parser


def run(argv) -> int:
    """Parse and execute; returns the exit code instead of raising SystemExit."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InvalidType, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
