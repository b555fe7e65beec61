"""JSON documents for every value the CLI reads or writes.

Scalars travel as strings ("3/2", "-4") so arbitrary precision survives the
round trip.  Subsets are written as sorted 1-based index strings ("1,3,4").
"""

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from itertools import combinations

from .arithmetic import (
    AxiomReport,
    Classification,
    GroupList,
    LabelledGraph,
    MultiplicityTable,
    Violation,
)
from .decompose import CounterexamplePair, TADFactorization
from .errors import ParseError
from .exactmat import Q, Matrix, PluckerVector, check_field, coerce, field_name
from .gpcheck import GPrReport, GPrWitness
from .grassmann import GPRelation, IdealGenerators, SignWitness
from .matroid import U24Witness


def subset_str(s):
    return ",".join(str(i + 1) for i in sorted(s))


def parse_subset(text, where):
    text = text.strip()
    if not text:
        return ()
    try:
        out = tuple(sorted(int(x) - 1 for x in text.split(",")))
    except ValueError:
        raise ParseError(f"{where}: bad subset {text!r}") from None
    if any(i < 0 for i in out):
        raise ParseError(f"{where}: subset indices are 1-based")
    return out


def parse_field(text):
    text = str(text).strip()
    if text == "Q":
        return Q
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ParseError(f"field: bad modulus in {text!r}") from None
        try:
            return check_field(p)
        except ValueError as e:
            raise ParseError(f"field: {e}") from None
    raise ParseError(f"field: expected 'Q' or 'Fp:<p>', got {text!r}")


def parse_scalar(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: expected an integer or 'num/den' string, got {x!r}")
    try:
        return Fraction(x.strip() if isinstance(x, str) else x)
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {x!r}") from None
    except ValueError:
        raise ParseError(f"{where}: not an exact number: {x!r}") from None


def parse_int(x, where):
    v = parse_scalar(x, where)
    if v.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return int(v)


def _grid(doc, key, where, width=None):
    rows = doc.get(key)
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{where}.{key}: expected an array of arrays")
    out = []
    for i, r in enumerate(rows):
        if width is not None and len(r) != width:
            raise ParseError(f"{where}.{key}[{i}]: expected {width} entries, got {len(r)}")
        out.append([parse_scalar(x, f"{where}.{key}[{i}][{j}]") for j, x in enumerate(r)])
    return out


def _matrix_from_doc(doc, field_override=None):
    field = parse_field(doc.get("field", "Q")) if field_override is None else field_override
    cols = doc.get("cols")
    entries = _grid(doc, "entries", "matrix", cols)
    if not entries:
        raise ParseError("matrix.entries: at least one row is required")
    if "rows" in doc and doc["rows"] != len(entries):
        raise ParseError(f"matrix.rows: declared {doc['rows']}, found {len(entries)}")
    try:
        return Matrix(entries, field)
    except ZeroDivisionError as e:
        raise ParseError(f"matrix.entries: {e}") from None
    except ValueError as e:
        raise ParseError(f"matrix: {e}") from None


def _grouplist_from_doc(doc):
    cols = doc.get("cols")
    free = _grid(doc, "entries", "grouplist", cols)
    torsion = _grid(doc, "torsion_rows", "grouplist", cols) if "torsion_rows" in doc else []
    moduli = [parse_int(q, f"grouplist.torsion_moduli[{i}]") for i, q in enumerate(doc["torsion_moduli"])]
    if cols is None:
        widths = {len(r) for r in free + torsion}
        if len(widths) != 1:
            raise ParseError("grouplist: rows have different lengths")
        cols = widths.pop()
    try:
        return GroupList(free, torsion, moduli, ncols=cols)
    except ValueError as e:
        raise ParseError(f"grouplist: {e}") from None


def _table_from_doc(doc):
    size = doc.get("ground")
    if not isinstance(size, int) or size < 0:
        raise ParseError("table.ground: expected a non-negative integer")
    rank = [None] * (1 << size)
    m = [None] * (1 << size)
    for i, item in enumerate(doc["table"]):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError(f"table.table[{i}]: expected [subset, rank, m]")
        s = parse_subset(str(item[0]), f"table.table[{i}]")
        if any(e >= size for e in s):
            raise ParseError(f"table.table[{i}]: index beyond ground set of size {size}")
        mask = MultiplicityTable.mask(s)
        rank[mask] = parse_int(item[1], f"table.table[{i}].rank")
        m[mask] = parse_int(item[2], f"table.table[{i}].m")
    missing = [MultiplicityTable.members(k) for k, v in enumerate(m) if v is None]
    if missing:
        raise ParseError(f"table: no entry for subset {{{subset_str(missing[0])}}}")
    try:
        return MultiplicityTable(size, rank, m)
    except ValueError as e:
        raise ParseError(f"table: {e}") from None


def _graph_from_doc(doc):
    vertices = doc.get("vertices")
    if not isinstance(vertices, list):
        raise ParseError("graph.vertices: expected an array")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, list) or len(e) not in (3, 4):
            raise ParseError(f"graph.edges[{i}]: expected [tail, head, label, kind]")
        kind = e[3] if len(e) == 4 else "regular"
        edges.append((e[0], e[1], parse_int(e[2], f"graph.edges[{i}].label"), kind))
    try:
        return LabelledGraph(tuple(vertices), tuple(edges))
    except ValueError as e:
        raise ParseError(f"graph: {e}") from None


def _plucker_from_doc(doc, field_override=None):
    field = parse_field(doc.get("field", "Q")) if field_override is None else field_override
    d, n = doc.get("d"), doc.get("n")
    if not isinstance(d, int) or not isinstance(n, int) or not 0 < d <= n:
        raise ParseError("plucker: d and n must be integers with 0 < d <= n")
    coords = {}
    for key, val in doc["coords"].items():
        x = parse_scalar(val, f"plucker.coords[{key!r}]")
        coords[parse_subset(key, "plucker.coords")] = coerce(x, field)
    expected = list(combinations(range(n), d))
    if sorted(coords) != expected:
        raise ParseError(f"plucker.coords: expected exactly the {len(expected)} sorted {d}-subsets of [{n}]")
    return PluckerVector(d, n, {I: coords[I] for I in expected}, field)


def parse_document(text, field_override=None):
    """Parse a JSON document, picking the type by its distinguishing key."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if "torsion_moduli" in doc:
        return _grouplist_from_doc(doc)
    if "edges" in doc:
        return _graph_from_doc(doc)
    if "table" in doc:
        return _table_from_doc(doc)
    if "coords" in doc:
        return _plucker_from_doc(doc, field_override)
    if "entries" in doc:
        return _matrix_from_doc(doc, field_override)
    raise ParseError("unrecognized document: expected one of entries, torsion_moduli, table, edges, coords")


def _s(x):
    return str(x)


def to_doc(obj):
    """Plain JSON-ready structure for a library value."""
    if isinstance(obj, Matrix):
        return {"rows": obj.nrows, "cols": obj.ncols, "field": field_name(obj.field),
                "entries": [[_s(x) for x in r] for r in obj.rows]}
    if isinstance(obj, GroupList):
        return {"rows": obj.d, "cols": obj.ncols, "field": "Q",
                "entries": [[_s(x) for x in r] for r in obj.free],
                "torsion_moduli": [_s(q) for q in obj.moduli],
                "torsion_rows": [[_s(x) for x in r] for r in obj.torsion_rows]}
    if isinstance(obj, MultiplicityTable):
        order = sorted(range(1 << obj.size), key=lambda k: (bin(k).count("1"), MultiplicityTable.members(k)))
        return {"ground": obj.size,
                "table": [[subset_str(MultiplicityTable.members(k)), obj.rank[k], obj.m[k]] for k in order]}
    if isinstance(obj, LabelledGraph):
        return {"vertices": list(obj.vertices), "edges": [list(e) for e in obj.edges]}
    if isinstance(obj, PluckerVector):
        return {"d": obj.d, "n": obj.n, "field": field_name(obj.field),
                "coords": {subset_str(I): _s(x) for I, x in obj.coords.items()}}
    if isinstance(obj, TADFactorization):
        return {"T": to_doc(obj.T), "A": to_doc(obj.A), "D": to_doc(obj.D),
                "basis": [i + 1 for i in obj.basis]}
    if isinstance(obj, GPRelation):
        return obj.render(max(max(l + r) for _, l, r in obj.terms) + 1)
    if isinstance(obj, U24Witness):
        return {"inner": subset_str(obj.inner), "context": subset_str(obj.context),
                "certificate": [_s(x) for x in obj.certificate]}
    if isinstance(obj, SignWitness):
        return {"signs": list(obj.signs), "matrix": to_doc(obj.matrix), "certified": obj.certified}
    if isinstance(obj, IdealGenerators):
        return obj.lines()
    if isinstance(obj, CounterexamplePair):
        return {"p": obj.p, "k": obj.k, "a": obj.a, "x": to_doc(obj.x), "xk": to_doc(obj.xk)}
    if isinstance(obj, GPrWitness):
        return {"r": obj.r, "I": subset_str(obj.I), "J": subset_str(obj.J), "S": subset_str(obj.S),
                "T": subset_str(obj.T), "calT": subset_str(obj.calT), "products": list(obj.products),
                "satisfiable": obj.satisfiable, "sigma": None if obj.sigma is None else list(obj.sigma)}
    if isinstance(obj, GPrReport):
        return {"r": obj.r, "pass": obj.passed, "instances": obj.instances,
                "failures": [to_doc(w) for w in obj.failures]}
    if isinstance(obj, Violation):
        return {"subset": subset_str(obj.subset), "m": obj.m, "expected": obj.expected}
    if isinstance(obj, AxiomReport):
        bad_mol = [c for c in obj.molecule_checks if not c.passed]
        bad_a1 = [c for c in obj.a1_checks if not c.passed]
        bad_a2 = [c for c in obj.a2_checks if not c.passed]
        return {
            "pass": obj.passed,
            "rank_axioms": obj.rank_ok,
            "molecules": len(obj.molecule_checks),
            "a1_checks": len(obj.a1_checks),
            "a2_checks": len(obj.a2_checks),
            "molecule_failures": [{"R": subset_str(c.R), "S": subset_str(c.S), "F": subset_str(c.F),
                                   "T": subset_str(c.T), "rho": c.rho} for c in bad_mol],
            "a1_failures": [{"A": subset_str(c.A), "e": c.e + 1} for c in bad_a1],
            "a2_failures": [{"R": subset_str(c.R), "S": subset_str(c.S), "lhs": c.lhs, "rhs": c.rhs}
                            for c in bad_a2],
        }
    if isinstance(obj, Classification):
        return {"lift": obj.lift, "regular": obj.regular,
                "weakly_multiplicative": obj.weakly_multiplicative,
                "strongly_multiplicative": obj.strongly_multiplicative,
                "multiplicative_basis": None if obj.multiplicative_basis is None
                else subset_str(obj.multiplicative_basis)}
    if isinstance(obj, dict):
        return {k: to_doc(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_doc(v) for v in obj]
    if isinstance(obj, Fraction):
        return _s(obj)
    if is_dataclass(obj):
        return {f.name: to_doc(getattr(obj, f.name)) for f in fields(obj)}
    return obj


def dumps(obj):
    return json.dumps(to_doc(obj), indent=2, ensure_ascii=False) + "\n"
