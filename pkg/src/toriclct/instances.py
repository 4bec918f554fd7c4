"""Instance files, the bundled corpus and random instance generators."""

import json
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .newton import InputError, Kind, SingularityInput


def _parse_coord(value, kind):
    if isinstance(value, bool):
        raise InputError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if kind is not Kind.WEIGHT:
            raise InputError(f"rational string {value!r} only allowed for kind 'weight'")
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}") from exc
    raise InputError(f"coordinate must be an integer or 'p/q' string, got {value!r}")


def from_dict(doc):
    if not isinstance(doc, dict):
        raise InputError("instance must be a JSON object")
    missing = {"n", "kind", "generators"} - doc.keys()
    if missing:
        raise InputError(f"instance is missing {sorted(missing)}")
    try:
        kind = Kind(doc["kind"])
    except ValueError as exc:
        raise InputError(f"kind must be 'ideal' or 'weight', got {doc['kind']!r}") from exc
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"n must be an integer, got {n!r}")
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise InputError("generators must be a list")
    rows = []
    for g in gens:
        if not isinstance(g, list) or len(g) != n:
            raise InputError(f"generator {g!r} is not a list of length {n}")
        rows.append(tuple(_parse_coord(c, kind) for c in g))
    label = doc.get("label")
    return SingularityInput(n, tuple(rows), kind, None if label is None else str(label))


def to_dict(data):
    def coord(c):
        if data.kind is Kind.IDEAL:
            return int(c)
        return int(c) if c.denominator == 1 else str(c)

    doc = {"n": data.n, "kind": data.kind.value,
           "generators": [[coord(c) for c in g] for g in data.generators]}
    if data.label is not None:
        doc["label"] = data.label
    return doc


def load(path):
    """All instances in a file (object or list of objects) or a directory of ``*.json``."""
    path = Path(path)
    if path.is_dir():
        out = []
        for child in sorted(path.glob("*.json")):
            out.extend(load(child))
        return out
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    docs = doc if isinstance(doc, list) else [doc]
    out = []
    for i, d in enumerate(docs):
        inst = from_dict(d)
        if inst.label is None:
            label = path.stem if len(docs) == 1 else f"{path.stem}[{i}]"
            inst = SingularityInput(inst.n, inst.generators, inst.kind, label)
        out.append(inst)
    return out


def corpus_dir():
    return Path(str(resources.files("toriclct") / "corpus"))


def bundled_corpus():
    return load(corpus_dir())


# --- generators --------------------------------------------------------------

def random_ideal(rng, n, max_gens, max_exp, label=None):
    k = rng.randint(1, max_gens)
    gens = []
    while len(gens) < k:
        g = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(g):
            gens.append(g)
    return SingularityInput(n, tuple(gens), Kind.IDEAL, label)


def planted_instance(rng, n, s_max=4, extra=3, label=None):
    """``s conv(e_j : j in J) + orthant`` with redundant generators inside it."""
    size = rng.randint(1, n)
    J = sorted(rng.sample(range(n), size))
    s = rng.randint(1, s_max)
    gens = [tuple(s if k == j else 0 for k in range(n)) for j in J]
    for _ in range(rng.randint(0, extra)):
        x = [rng.randint(0, s + 2) for _ in range(n)]
        short = s - sum(x[j] for j in J)
        if short > 0:
            x[rng.choice(J)] += short
        gens.append(tuple(x))
    rng.shuffle(gens)
    return SingularityInput(n, tuple(gens), Kind.IDEAL, label), frozenset(J), s


def perturbed_negative(rng, n, s_max=4, label=None, attempts=200):
    """A planted instance plus one non-axis generator b with sum_J b_j < s.

    Such a b lies outside Gamma and cannot be redundant, so the result is
    never a scaled coordinate simplex.
    """
    for _ in range(attempts):
        base, J, s = planted_instance(rng, n, s_max)
        b = [rng.randint(0, s + 1) for _ in range(n)]
        if sum(b[j] for j in J) < s and sum(1 for c in b if c > 0) >= 2:
            gens = base.generators + (tuple(Fraction(c) for c in b),)
            return SingularityInput(n, gens, Kind.IDEAL, label)
    raise RuntimeError("could not draw a perturbed negative")


def make_rng(seed):
    return random.Random(seed)
