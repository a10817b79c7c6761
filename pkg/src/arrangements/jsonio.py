"""JSON encoding of arrangements, lattices and polynomials.

Rationals are written as strings ``"p/q"`` (or ``"p"`` for integers) so
that no precision is ever lost between tools.
"""

import json
from fractions import Fraction

from .arrangement import AFFINE, CENTRAL, Arrangement, Hyperplane
from .errors import InputError
from .linalg import to_fraction


def rational(x) -> str:
    return str(Fraction(x))


def arrangement_to_json(A: Arrangement) -> dict:
    return {
        "dim": A.dim,
        "kind": A.kind,
        "hyperplanes": [{"normal": [rational(a) for a in h.normal], "offset": rational(h.offset)}
                        for h in A],
    }


def arrangement_from_json(data) -> Arrangement:
    if not isinstance(data, dict):
        raise InputError("arrangement JSON must be an object")
    try:
        dim = data["dim"]
        kind = data.get("kind", CENTRAL)
        raw = data["hyperplanes"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"arrangement JSON is missing {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("dim must be an integer")
    if kind not in (CENTRAL, AFFINE):
        raise InputError(f"kind must be {CENTRAL!r} or {AFFINE!r}")
    hs = []
    for k, h in enumerate(raw):
        try:
            normal = tuple(_parse(x) for x in h["normal"])
            offset = _parse(h.get("offset", "0"))
        except (KeyError, TypeError, AttributeError):
            raise InputError(f"hyperplane {k} is malformed") from None
        if len(normal) != dim:
            raise InputError(f"hyperplane {k} has {len(normal)} coordinates, expected {dim}")
        hs.append(Hyperplane(normal, offset))
    return Arrangement(dim, tuple(hs), kind)


def _parse(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("rationals must be given as strings or integers, not floats")
    try:
        return to_fraction(x)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"cannot parse rational {x!r}") from None


def load_arrangement(path) -> Arrangement:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return arrangement_from_json(data)


def lattice_to_json(L) -> list:
    mu = L._mobius
    return [{"atoms": f.sorted_atoms(), "rank": f.rank, "mobius": m}
            for f, m in zip(L.flats, mu)]


def polynomial_to_json(p) -> list:
    return list(p.coefficients) if p.coefficients else [0]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def parse_index_list(text: str) -> list:
    """``"0,2,5"`` -> ``[0, 2, 5]``."""
    if text is None or not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
