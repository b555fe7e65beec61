"""Command-line front end.

Exit status: 0 on success, 1 on usage, parse or input errors, 2 when the
answer is a mathematical negative (not regular, no multiplicative basis, a
failed GP or consistency check).  Results go to standard output as JSON,
except ``rgr-ideal`` which prints one polynomial per line.
"""

import argparse
import json
import sys

from . import arithmetic, decompose, gpcheck, grassmann, matroid
from .arithmetic import GroupList, LabelledGraph, MultiplicityTable
from .errors import ArimatError, NegativeResult, NotRegular, ParseError
from .exactmat import Matrix, PluckerVector, plucker
from .formats import dumps, parse_document, parse_field, to_doc

COMMANDS = (
    "plucker", "gp-verify", "regular", "u24", "decompose", "power", "power2", "arith",
    "arith-power", "gp-check", "gcd-check", "axioms", "labelled-graph", "rgr-ideal", "counterexample",
)


class Outcome:
    """Text to print and the exit status it carries."""

    def __init__(self, text, status=0):
        self.text = text
        self.status = status
        self.output = None


def _json(obj, status=0):
    return Outcome(dumps(obj), status)


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None


def _load(args, index=0):
    paths = args.input or [None]
    if index >= len(paths):
        raise ParseError(f"command needs {index + 1} --input documents")
    return parse_document(_read(paths[index]), args.field)


def _want(obj, *types):
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise ParseError(f"expected a {names} document, got {type(obj).__name__}")
    return obj


def _as_grouplist(obj):
    if isinstance(obj, Matrix):
        return GroupList.from_matrix(obj)
    return _want(obj, GroupList)


def _as_table(obj):
    if isinstance(obj, MultiplicityTable):
        return obj
    if isinstance(obj, LabelledGraph):
        obj = arithmetic.labelled_to_list(obj)
    return arithmetic.full_table(_as_grouplist(obj))


def cmd_plucker(args):
    return _json(plucker(_want(_load(args), Matrix)))


def cmd_gp_verify(args):
    obj = _want(_load(args), Matrix, PluckerVector)
    pv = plucker(obj) if isinstance(obj, Matrix) else obj
    bad = grassmann.gp_verify(pv)
    doc = {"relations": len(grassmann.gp_relations(pv.d, pv.n)),
           "violated": [r.render(pv.n) for r in bad]}
    return Outcome(json.dumps(doc, indent=2) + "\n", 2 if bad else 0)


def cmd_regular(args):
    m = _want(_load(args), Matrix)
    regular = matroid.is_regular(m)
    w = None if regular else matroid.find_u24(m)
    return _json({"regular": regular, "witness": w}, 0 if regular else 2)


def cmd_u24(args):
    return _json({"witness": matroid.find_u24(_want(_load(args), Matrix))})


def cmd_decompose(args):
    return _json(decompose.tad(_want(_load(args), Matrix)))


def cmd_power(args):
    return _json(decompose.power_matrix(_want(_load(args), Matrix), args.k, args.mode))


def cmd_power2(args):
    x1 = _want(_load(args, 0), Matrix)
    x2 = _want(_load(args, 1), Matrix)
    k2 = args.k if args.k2 is None else args.k2
    return _json(decompose.power_two(x1, x2, args.k, k2, sign_preserving=args.mode == "sign-preserving"))


def cmd_arith(args):
    obj = _load(args)
    if isinstance(obj, LabelledGraph):
        gl = arithmetic.labelled_to_list(obj)
        cls = arithmetic.classify(gl, arithmetic.labelled_lift(obj))
    else:
        gl = _as_grouplist(obj)
        cls = arithmetic.classify(gl)
    return _json({"classification": cls, "table": arithmetic.full_table(gl)})


def cmd_arith_power(args):
    return _json(arithmetic.arith_power(_as_grouplist(_load(args)), args.k))


def cmd_gp_check(args):
    table = _as_table(_load(args))
    if args.k != 1:
        table = table.power(args.k)
    report = gpcheck.gp_r_check(table, args.r)
    return _json(report, 0 if report.passed else 2)


def cmd_gcd_check(args):
    bad = arithmetic.gcd_consistency(_as_table(_load(args)))
    return _json({"violations": bad}, 2 if bad else 0)


def cmd_axioms(args):
    report = arithmetic.verify_axioms(_as_table(_load(args)))
    return _json(report, 0 if report.passed else 2)


def cmd_labelled_graph(args):
    g = _want(_load(args), LabelledGraph)
    return _json(arithmetic.labelled_power(g, args.k))


def cmd_rgr_ideal(args):
    if args.d is None or args.n is None:
        raise ParseError("rgr-ideal needs -d and -n")
    return Outcome("".join(line + "\n" for line in grassmann.rgr_generators(args.d, args.n).lines()))


def cmd_counterexample(args):
    if args.field in (None, 0):
        raise ParseError("counterexample needs --field Fp:<p>")
    return _json({"counterexample": decompose.counterexample_fp(args.field, args.k)})


SUMMARIES = {
    "plucker": "maximal minors of a matrix",
    "gp-verify": "Grassmann-Plücker relations violated by a matrix or Plücker vector",
    "regular": "regularity test with a U(2,4) witness when it fails",
    "u24": "first U(2,4) minor, if any",
    "decompose": "factor X = T A D with A totally unimodular",
    "power": "matrix whose minors are k-th powers (see --mode)",
    "power2": "matrix for |minors of X1|^k * |minors of X2|^k2",
    "arith": "classification and multiplicity table of a list or labelled graph",
    "arith-power": "list representing the k-th power of an arithmetic matroid",
    "gp-check": "GP_r check of a multiplicity table (optionally powered by -k)",
    "gcd-check": "dependent sets violating the gcd formula",
    "axioms": "arithmetic matroid axioms of a table",
    "labelled-graph": "list of a labelled graph with labels raised to -k",
    "rgr-ideal": "generators of the regular Grassmannian ideal for -d, -n",
    "counterexample": "U(2,4) pair over Fp:<p> with equal k-th power minors up to sign",
}

HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def _field_arg(text):
    try:
        return parse_field(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser():
    parser = argparse.ArgumentParser(prog="arimat", description="Exact computations with regular and arithmetic matroids.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name, help=SUMMARIES[name], description=SUMMARIES[name])
        p.add_argument("-i", "--input", action="append", metavar="PATH",
                       help="input document (default standard input); power2 takes two")
        p.add_argument("-o", "--output", metavar="PATH")
        p.add_argument("--field", type=_field_arg, default=None, help="Q or Fp:<p>")
        p.add_argument("-k", type=int, default=1)
        p.add_argument("--k2", type=int, default=None)
        p.add_argument("-r", type=int, default=2)
        p.add_argument("-d", type=int, default=None)
        p.add_argument("-n", type=int, default=None)
        p.add_argument("--mode", choices=decompose.MODES, default="up-to-sign")
    return parser


def _negative(e):
    doc = {"error": type(e).__name__, "message": str(e)}
    if isinstance(e, NotRegular):
        doc["detail"] = to_doc(e.detail)
        doc["certificate"] = to_doc(e.certificate)
    return Outcome(json.dumps(doc, indent=2) + "\n", 2)


def run(argv=None):
    """Parse ``argv`` and execute; returns an ``Outcome`` (never exits)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return Outcome("", 0 if e.code == 0 else 1)
    try:
        outcome = HANDLERS[args.command](args)
    except NegativeResult as e:
        outcome = _negative(e)
    except (ArimatError, ValueError, ZeroDivisionError) as e:
        return Outcome(f"arimat {args.command}: {e}\n", 1)
    outcome.output = args.output
    return outcome


def main(argv=None):
    outcome = run(argv)
    if outcome.status == 1:
        sys.stderr.write(outcome.text)
    elif outcome.output:
        with open(outcome.output, "w", encoding="utf-8") as fh:
            fh.write(outcome.text)
    else:
        sys.stdout.write(outcome.text)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
