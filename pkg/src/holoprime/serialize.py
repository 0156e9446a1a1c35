"""JSON wire formats for forms, subspaces and reports."""

import json

from .algebra import Form, Rational, blades, colex_index, dim_exterior
from .linalg import Subspace


class FormatError(ValueError):
    pass


def rational_str(x):
    x = Rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def form_to_json(f):
    return {
        "n": f.n,
        "k": f.k,
        "terms": [
            {"idx": list(b), "num": str(c.numerator), "den": str(c.denominator)}
            for b, c in f.items()
        ],
    }


def form_from_json(d):
    try:
        n, k = int(d["n"]), int(d["k"])
        terms = {}
        for t in d["terms"]:
            idx = tuple(int(i) for i in t["idx"])
            c = Rational(int(t["num"]), int(t.get("den", "1")))
            if idx in terms:
                raise FormatError(f"duplicate blade {idx}")
            terms[idx] = c
        return Form(n, k, terms)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"malformed form: {exc}") from exc


def subspace_to_json(s):
    size = s.ambient_dim
    return {
        "n": s.n,
        "k": s.k,
        "basis": [[rational_str(r.get(i, 0)) for i in range(size)] for r in s.vectors],
    }


def subspace_from_json(d):
    try:
        n, k = int(d["n"]), int(d["k"])
        size = dim_exterior(n, k)
        vecs = []
        for row in d["basis"]:
            if len(row) != size:
                raise FormatError(f"basis row has {len(row)} entries, expected {size}")
            vecs.append({i: Rational(x) for i, x in enumerate(row) if Rational(x)})
        return Subspace(n, k, vecs)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"malformed subspace: {exc}") from exc


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def load_subspace(path):
    d = load_json(path)
    if "basis" in d:
        return subspace_from_json(d)
    if "terms" in d:
        f = form_from_json(d)
        return Subspace(f.n, f.k, [f.to_vector()] if f else [])
    raise FormatError(f"{path} holds neither a form nor a subspace")


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def form_str(f):
    """Compact human-readable rendering, e.g. '3/7 w123 - w145'."""
    if not f:
        return "0"
    out = []
    for b, c in f.items():
        mag = abs(c)
        if b:
            name = "w" + ("".join(map(str, b)) if all(i < 10 for i in b) else ",".join(map(str, b)))
            coef = "" if mag == 1 else rational_str(mag) + " "
        else:
            name, coef = "", rational_str(mag)
        sign = "-" if c < 0 else "+"
        out.append((sign, coef + name))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, t in out[1:]:
        s += f" {sign} {t}"
    return s
