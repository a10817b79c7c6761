"""Command-line front end.

Every verb prints one JSON document on stdout.  Exit status 0 means
success, 2 bad input (diagnostic on stderr), 1 a violated internal
invariant.
"""

import argparse
import json
import sys

from .arrangement import QuotientFrame, cone, fiber_arrangement, localization
from .certify import AxiomFact, Certifier, check_certificate
from .errors import InputError, InternalInconsistency
from .graphs import LoopedGraph, build_a_gamma, classify, hyperplane_labels
from .isomorphism import lattice_isomorphic
from .jsonio import (arrangement_from_json, arrangement_to_json, dumps, lattice_to_json,
                     load_arrangement, parse_index_list, polynomial_to_json, rational)
from .lattice import affine_characteristic, affine_poincare, build_lattice
from .modularity import is_modular, is_supersolvable, modular_flats
from .parallel import FlatIdentification, realize_gpc, verify_gpc_modularity
from .truncation import (abstract_truncation, factorization_check, geometric_truncation,
                         modularity_by_sampling, sample_points)


def _central(A, verb):
    if not A.is_central:
        raise InputError(f"{verb} needs a central arrangement")
    return A


def _flat(L, text):
    """Parse an index list and close it to a flat."""
    idx = parse_index_list(text)
    for i in idx:
        if not 0 <= i < L.ground:
            raise InputError(f"hyperplane index {i} out of range 0..{L.ground - 1}")
    return L.closure(idx)


def _points(text):
    if text is None:
        return None
    from .linalg import to_fraction
    try:
        return tuple(to_fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse point {text!r}") from None


def cmd_lattice(args):
    A = _central(load_arrangement(args.file), "lattice")
    return lattice_to_json(build_lattice(A))


def cmd_charpoly(args):
    A = load_arrangement(args.file)
    if A.is_central:
        L = build_lattice(A)
        chi, P = L.characteristic_polynomial(), L.poincare_polynomial()
    else:
        chi, P = affine_characteristic(A), affine_poincare(A)
    return {"chi": polynomial_to_json(chi), "poincare": polynomial_to_json(P)}


def _modular_json(L, f):
    rep = is_modular(L, f, check_sum=True)
    out = {"flat": f.sorted_atoms(), "rank": f.rank, "modular": rep.is_modular}
    if rep.witness is not None:
        out["witness"] = rep.witness.sorted_atoms()
        out["deficit"] = rep.deficit
    return out


def cmd_modular(args):
    A = _central(load_arrangement(args.file), "modular")
    L = build_lattice(A)
    if args.flat is not None:
        return _modular_json(L, _flat(L, args.flat))
    chain = is_supersolvable(L)
    return {
        "modular_flats": [f.sorted_atoms() for f in modular_flats(L)],
        "rank": L.rank,
        "supersolvable": chain is not None,
        "chain": [f.sorted_atoms() for f in chain] if chain else None,
    }


def cmd_truncate(args):
    if args.samples < 1:
        raise InputError("--samples must be positive")
    A = _central(load_arrangement(args.file), "truncate")
    L = build_lattice(A)
    X = _flat(L, args.flat)
    if X.rank < 1:
        raise InputError("truncation needs a flat of rank at least one")
    S = L.subspace(X)
    T = abstract_truncation(L, X)
    modular = bool(is_modular(L, X))
    samples = []
    for v in sample_points(A, S, args.samples):
        G = build_lattice(geometric_truncation(A, S, v))
        iso = lattice_isomorphic(G, T)
        samples.append({"point": [rational(x) for x in v], "lattice": lattice_to_json(G),
                        "isomorphic": iso is not None})
    if modular and not all(s["isomorphic"] for s in samples):
        raise InternalInconsistency("fiber over a modular flat differs from the truncation")
    fc = factorization_check(A, S, lattice=L)
    out = {
        "flat": X.sorted_atoms(),
        "modular": modular,
        "truncation": {"ground": T.ground, "rank": T.rank, "lattice": lattice_to_json(T)},
        "samples": samples,
        "factorization": {
            "chi_A": polynomial_to_json(fc.chi_A),
            "chi_base": polynomial_to_json(fc.chi_base),
            "chi_fiber": polynomial_to_json(fc.chi_fiber),
            "chi_truncation": polynomial_to_json(fc.chi_truncation),
            "poincare_A": polynomial_to_json(fc.poincare_A),
            "poincare_base": polynomial_to_json(fc.poincare_base),
            "poincare_fiber": polynomial_to_json(fc.poincare_fiber),
            "poincare_holds": fc.poincare_holds,
            "brylawski_holds": fc.brylawski_holds,
            "holds": fc.holds,
        },
    }
    if not modular:
        rep = modularity_by_sampling(A, S, args.samples, lattice=L)
        out["sampling"] = {"verdict": rep.verdict, "note": rep.note,
                           "witnesses": [[rational(x) for x in v] for v in rep.witnesses]
                           if rep.witnesses else None}
    return out


def cmd_fiber(args):
    A = _central(load_arrangement(args.file), "fiber")
    L = build_lattice(A)
    X = _flat(L, args.flat)
    S = L.subspace(X)
    v = _points(args.point)
    if v is None:
        v = sample_points(A, S, 1)[0]
    F = fiber_arrangement(A, S, v)
    return {
        "flat": X.sorted_atoms(),
        "point": [rational(x) for x in v],
        "quotient_coordinates": list(QuotientFrame.of(S).quotient_coords),
        "base": arrangement_to_json(localization(A, S)),
        "fiber": arrangement_to_json(F),
        "coned_fiber": arrangement_to_json(cone(F)),
    }


def cmd_connect(args):
    A1 = _central(load_arrangement(args.a1), "connect")
    A2 = _central(load_arrangement(args.a2), "connect")
    X1, X2 = parse_index_list(args.flat1), parse_index_list(args.flat2)
    ident = None
    if args.map:
        pairs = [p.split(":") for p in args.map.split(",")]
        try:
            ident = FlatIdentification({int(a): int(b) for a, b in pairs})
        except ValueError:
            raise InputError("--map expects pairs i:j separated by commas") from None
    R = realize_gpc(A1, A2, X1, X2, ident)
    P = R.lattice
    return {
        "arrangement": arrangement_to_json(R.arrangement),
        "identification": {str(k): v for k, v in sorted(R.identification.map.items())},
        "scalars": {str(k): rational(v) for k, v in sorted(R.identification.scalars.items())},
        "rank": P.rank,
        "flats": len(P),
        "realization_matches": R.matches,
        "second_side_modular": verify_gpc_modularity(P),
    }


def _graph(args):
    edges = []
    for e in (args.edges or "").split(","):
        if not e.strip():
            continue
        try:
            i, j = (int(t) for t in e.split("-"))
        except ValueError:
            raise InputError(f"edge {e!r} must look like i-j") from None
        edges.append((i, j))
    return LoopedGraph(args.n, frozenset(edges), frozenset(parse_index_list(args.loops)))


def cmd_graph(args):
    if args.n < 1:
        raise InputError("--n must be positive")
    g = _graph(args)
    if args.action == "arrangement":
        return arrangement_to_json(build_a_gamma(g))
    info = classify(g)
    return {
        "arrangement": arrangement_to_json(info["arrangement"]),
        "labels": hyperplane_labels(g),
        "threshold": info["threshold"],
        "free": info["free"],
        "supersolvable_criterion": info["supersolvable_criterion"],
        "supersolvable_lattice": info["supersolvable_lattice"],
        "factored": info["factored"],
        "copoint_criterion": {str(v): b for v, b in info["copoint_criterion"].items()},
        "coline_criterion": {f"{a}-{b}": ok for (a, b), ok in info["coline_criterion"].items()},
        "modular_copoints": [f.sorted_atoms() for f in info["modular_copoints"]],
        "modular_colines": [f.sorted_atoms() for f in info["modular_colines"]],
    }


def _load_axioms(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise InputError("axioms file must hold a list")
    facts = []
    for k, item in enumerate(data):
        try:
            facts.append(AxiomFact(arrangement_from_json(item["arrangement"]),
                                   item["verdict"], str(item["citation"])))
        except (KeyError, TypeError):
            raise InputError(f"axiom {k} needs arrangement, verdict and citation") from None
        if facts[-1].verdict not in ("aspherical", "not_aspherical"):
            raise InputError(f"axiom {k} has an invalid verdict")
    return facts


def cmd_certify(args):
    if args.depth_limit < 0:
        raise InputError("--depth-limit must be nonnegative")
    A = _central(load_arrangement(args.file), "certify")
    axioms = _load_axioms(args.axioms) if args.axioms else ()
    cert = Certifier(axioms, args.depth_limit).certify(A)
    check_certificate(cert, axioms)
    return cert.to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrangements",
                                     description="Exact computations with hyperplane arrangements.")
    parser.add_argument("--format", choices=["json"], default="json")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("lattice", help="intersection lattice with Mobius values")
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("charpoly", help="characteristic and Poincare polynomials")
    p.add_argument("file")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("modular", help="modular flats, or test one flat")
    p.add_argument("file")
    p.add_argument("--flat")
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("truncate", help="complete principal truncation and its fibers")
    p.add_argument("file")
    p.add_argument("--flat", required=True)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("fiber", help="fiber arrangement over a base point")
    p.add_argument("file")
    p.add_argument("--flat", required=True)
    p.add_argument("--point", help="quotient coordinates, comma separated")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("connect", help="realize a generalized parallel connection")
    p.add_argument("--a1", required=True)
    p.add_argument("--a2", required=True)
    p.add_argument("--flat1", required=True)
    p.add_argument("--flat2", required=True)
    p.add_argument("--map", help="explicit pairs i:j of identified hyperplanes")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("graph", help="the arrangement of a looped graph and its criteria")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", default="")
    p.add_argument("--loops", default="")
    p.add_argument("action", choices=["classify", "arrangement"], nargs="?", default="classify")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("certify", help="K(pi,1) certificate")
    p.add_argument("file")
    p.add_argument("--axioms")
    p.add_argument("--depth-limit", type=int, default=8)
    p.set_defaults(func=cmd_certify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except InternalInconsistency as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return 1
    out.write(dumps(result) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
