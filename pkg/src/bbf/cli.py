"""Command-line front end.

Every subcommand wraps one library operation and prints a single JSON
document on stdout; diagnostics go to stderr.  All numeric payload values
are exact: integers and rationals are rendered as strings like "2" or
"-1/3" so nothing is ever rounded.  Exit codes: 0 ok, 1 domain error,
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .catalog import CatalogError, DeformationTypeSpec, builtin_catalog, load_catalog, validate_entry
from .enumeration import (
    NormTargetSet,
    chamber_membership,
    enumerate_vectors_of_norm,
    mbm_candidates_in_complement,
    same_kahler_chamber,
    separating_walls,
    wall_classes_through,
)
from .exactlinalg import Rational, det_bareiss
from .lattice import BBFLattice, LatticeError
from .periods import (
    HKTripleClasses,
    TwistorDirection,
    fiber_connectivity_experiment,
    forgetful_map,
    hk_equivalence,
    in_hk_period_image,
    in_symplectic_period_image,
    sample_fiber,
    twistor_member,
)

CATALOG_ENV = "BBF_CATALOG"


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict[str, Any] | None = None
    error: dict[str, Any] | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.status == "ok":
            return 0
        return 2 if self.error and self.error.get("type") == "usage" else 1


# -- exact formatting / parsing ------------------------------------------------

def rat_str(x: Rational) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def vec_str(v: Sequence[Rational]) -> list[str]:
    return [rat_str(x) for x in v]


def mat_str(rows: Sequence[Sequence[Rational]]) -> list[list[str]]:
    return [vec_str(r) for r in rows]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("cannot parse %r as a rational" % text) from exc


def parse_vector(text: str) -> tuple[Rational, ...]:
    parts = [p for p in text.strip().split(",") if p.strip() != ""]
    if not parts:
        raise UsageError("empty vector")
    out = []
    for p in parts:
        f = parse_rational(p)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def parse_matrix(text: str) -> list[tuple[Rational, ...]]:
    rows = [r for r in text.strip().split(";") if r.strip() != ""]
    if not rows:
        raise UsageError("empty matrix")
    parsed = [parse_vector(r) for r in rows]
    if len({len(r) for r in parsed}) != 1:
        raise UsageError("matrix rows have inconsistent lengths")
    return parsed


def parse_int_matrix(text: str) -> list[list[int]]:
    rows = parse_matrix(text)
    out = []
    for row in rows:
        if any(not isinstance(x, int) for x in row):
            raise UsageError("matrix entries must be integers here")
        out.append([int(x) for x in row])
    return out


def parse_norms(text: str) -> NormTargetSet:
    vals = []
    for p in text.strip().split(","):
        if p.strip() == "":
            continue
        f = parse_rational(p)
        if f.denominator != 1:
            raise UsageError("norm targets must be integers, got %r" % p)
        vals.append(int(f))
    return NormTargetSet(vals)


# -- lattice resolution ---------------------------------------------------------

def _load_named(catalog_arg: str | None, name: str) -> DeformationTypeSpec:
    if catalog_arg:
        cat = load_catalog(Path(catalog_arg))
    elif os.environ.get(CATALOG_ENV):
        cat = load_catalog(Path(os.environ[CATALOG_ENV]))
    else:
        cat = builtin_catalog()
    if name not in cat:
        raise CatalogError("no catalog entry named %r (have: %s)" % (name, sorted(cat)))
    return cat[name]


def resolve_lattice(args) -> tuple[BBFLattice, NormTargetSet | None]:
    """Pick the lattice from --gram or from --catalog/--name; the entry's
    norm set rides along as the default for wall queries."""
    gram = getattr(args, "gram", None)
    name = getattr(args, "name", None)
    if gram and name:
        raise UsageError("give either --gram or --name, not both")
    if gram:
        return BBFLattice(parse_int_matrix(gram)), None
    if name:
        entry = _load_named(getattr(args, "catalog", None), name)
        return entry.lattice(), entry.mbm_norms
    raise UsageError("a lattice is required: pass --gram or --catalog/--name")


def resolve_norms(args, default: NormTargetSet | None) -> NormTargetSet:
    if getattr(args, "norms", None):
        return parse_norms(args.norms)
    if default is not None:
        return default
    raise UsageError("--norms is required when the lattice does not come from a catalog entry")


# -- subcommand handlers ---------------------------------------------------------

def cmd_lattice_info(args) -> dict[str, Any]:
    entry = _load_named(args.catalog, args.name)
    lat = entry.lattice()
    p, n = lat.signature()
    return {
        "name": entry.name,
        "rank": lat.rank,
        "signature": [p, n],
        "det": rat_str(det_bareiss(lat.gram)),
        "even": entry.even,
        "fujiki_c": entry.fujiki_c,
        "half_dim_n": entry.half_dim_n,
        "mbm_norms": [rat_str(t) for t in entry.mbm_norms],
    }


def cmd_signature(args) -> dict[str, Any]:
    lat, _ = resolve_lattice(args)
    p, n = lat.signature()
    return {"signature": [p, n], "rank": lat.rank}


def cmd_complement(args) -> dict[str, Any]:
    lat, _ = resolve_lattice(args)
    basis = parse_matrix(args.subspace)
    comp = lat.orthogonal_complement_integral(basis)
    return {"basis": mat_str(comp), "rank": len(comp)}


def cmd_enumerate_norm(args) -> dict[str, Any]:
    gram = parse_int_matrix(args.gram)
    f = parse_rational(args.norm)
    if f.denominator != 1:
        raise UsageError("--norm must be an integer")
    vecs = enumerate_vectors_of_norm(gram, int(f))
    return {"vectors": mat_str(vecs), "count": len(vecs)}


def _wall_payload(walls) -> list[dict[str, Any]]:
    out = []
    for w in walls:
        item: dict[str, Any] = {"class": vec_str(w.wall_class), "norm": rat_str(w.norm)}
        if w.crossing_parameter is not None:
            item["t"] = rat_str(w.crossing_parameter)
        out.append(item)
    return out


def cmd_mbm_in_complement(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    walls = mbm_candidates_in_complement(lat, parse_matrix(args.subspace), norms)
    return {"walls": _wall_payload(walls), "count": len(walls)}


def cmd_walls_through(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    walls = wall_classes_through(lat, parse_vector(args.vector), norms)
    return {"walls": _wall_payload(walls), "count": len(walls)}


def cmd_separating_walls(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    walls = separating_walls(
        lat, parse_vector(getattr(args, "from")), parse_vector(args.to), norms
    )
    return {"walls": _wall_payload(walls), "count": len(walls)}


def cmd_chamber(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    result = chamber_membership(lat, parse_vector(args.vector), norms)
    return {
        "membership": "interior" if result.interior else "on-walls",
        "walls": _wall_payload(result.walls),
    }


def cmd_same_chamber(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    same = same_kahler_chamber(
        lat, parse_vector(args.reference), parse_vector(args.vector), norms
    )
    return {"same_chamber": same}


def cmd_hk_image(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    result = in_hk_period_image(lat, parse_matrix(args.plane), norms)
    return {
        "in_image": result.in_image,
        "witnesses": [vec_str(w.wall_class) for w in result.witnesses],
    }


def cmd_symp_image(args) -> dict[str, Any]:
    lat, _ = resolve_lattice(args)
    v = parse_vector(args.vector)
    return {"in_image": in_symplectic_period_image(lat, v), "q": rat_str(lat.q(v))}


def _parse_triple(lat: BBFLattice, text: str) -> HKTripleClasses:
    rows = parse_matrix(text)
    if len(rows) != 3:
        raise UsageError("a triple needs exactly 3 rows")
    return HKTripleClasses(lat, rows[0], rows[1], rows[2])


def cmd_twistor(args) -> dict[str, Any]:
    lat, _ = resolve_lattice(args)
    triple = _parse_triple(lat, args.triple)
    d = parse_vector(args.direction)
    if len(d) != 3:
        raise UsageError("--direction needs exactly 3 coordinates")
    fiber = twistor_member(triple, TwistorDirection(*d))
    return {
        "omega": vec_str(fiber.omega),
        "q_omega": rat_str(lat.q(fiber.omega)),
        "plane": mat_str(fiber.plane.basis),
        "forgetful": vec_str(forgetful_map(triple)),
    }


def cmd_hk_equiv(args) -> dict[str, Any]:
    lat, _ = resolve_lattice(args)
    t1 = _parse_triple(lat, args.triple)
    t2 = _parse_triple(lat, args.other)
    return {"equivalent": hk_equivalence(t1, t2)}


def cmd_fiber_sample(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    samples = sample_fiber(lat, parse_vector(args.vector), args.count, norms, args.seed)
    return {
        "samples": [
            {
                "plane": mat_str(s.point.plane.basis),
                "accepted": s.accepted,
                "witnesses": [vec_str(w.wall_class) for w in s.witnesses],
            }
            for s in samples
        ],
        "accepted_count": sum(1 for s in samples if s.accepted),
    }


def cmd_fiber_connectivity(args) -> dict[str, Any]:
    lat, default = resolve_lattice(args)
    norms = resolve_norms(args, default)
    rep = fiber_connectivity_experiment(
        lat, parse_vector(args.vector), args.pairs, args.steps, norms, args.seed
    )
    return {
        "pairs_tested": rep.pairs_tested,
        "paths_found": rep.paths_found,
        "wall_hits": rep.wall_hits,
        "planes_sampled": rep.planes_sampled,
        "geometric_rejections": rep.geometric_rejections,
        "path_retries": rep.path_retries,
    }


def cmd_validate_catalog(args) -> dict[str, Any]:
    if args.catalog:
        raw = json.loads(Path(args.catalog).read_text())
    elif os.environ.get(CATALOG_ENV):
        raw = json.loads(Path(os.environ[CATALOG_ENV]).read_text())
    else:
        raw = [e.to_dict() for e in builtin_catalog().values()]
    if not isinstance(raw, list):
        raise CatalogError("catalog document must be a top-level list of entries")
    entries = []
    for item in raw:
        checks = validate_entry(item)
        entries.append(
            {
                "name": item.get("name", "?") if isinstance(item, dict) else "?",
                "checks": [
                    {
                        "check": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                        "informational": c.informational,
                    }
                    for c in checks
                ],
                "passed": all(c.passed for c in checks),
            }
        )
    return {"entries": entries, "all_passed": all(e["passed"] for e in entries)}


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # JSON on stdout even for usage errors
        raise UsageError(message)


def _add_lattice_args(p: argparse.ArgumentParser, norms: bool = True) -> None:
    p.add_argument("--catalog", help="path to a catalog JSON document")
    p.add_argument("--name", help="catalog entry name")
    p.add_argument("--gram", help="explicit integer Gram matrix, rows separated by ';'")
    if norms:
        p.add_argument("--norms", help="comma-separated negative wall norms, e.g. '-2,-4'")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="bbf", description=__doc__)
    sub = top.add_subparsers(dest="command", metavar="COMMAND")

    lattice = sub.add_parser("lattice", help="catalog lattice utilities")
    lat_sub = lattice.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    info = lat_sub.add_parser("info", help="rank, signature, determinant of a catalog entry")
    info.add_argument("--catalog")
    info.add_argument("--name", required=True)
    info.set_defaults(handler=cmd_lattice_info)

    p = sub.add_parser("signature", help="exact inertia of a lattice")
    _add_lattice_args(p, norms=False)
    p.set_defaults(handler=cmd_signature)

    p = sub.add_parser("complement", help="saturated integral orthogonal complement")
    _add_lattice_args(p, norms=False)
    p.add_argument("--subspace", required=True, help="rational rows separated by ';'")
    p.set_defaults(handler=cmd_complement)

    p = sub.add_parser("enumerate-norm", help="all vectors of one negative norm")
    p.add_argument("--gram", required=True)
    p.add_argument("--norm", required=True)
    p.set_defaults(handler=cmd_enumerate_norm)

    p = sub.add_parser("mbm-in-complement", help="wall classes orthogonal to a positive subspace")
    _add_lattice_args(p)
    p.add_argument("--subspace", required=True)
    p.set_defaults(handler=cmd_mbm_in_complement)

    p = sub.add_parser("walls-through", help="walls containing a positive vector")
    _add_lattice_args(p)
    p.add_argument("--vector", required=True)
    p.set_defaults(handler=cmd_walls_through)

    p = sub.add_parser("separating-walls", help="walls between two interior positive vectors")
    _add_lattice_args(p)
    p.add_argument("--from", required=True, dest="from")
    p.add_argument("--to", required=True)
    p.set_defaults(handler=cmd_separating_walls)

    p = sub.add_parser("chamber", help="interior / on-walls membership")
    _add_lattice_args(p)
    p.add_argument("--vector", required=True)
    p.set_defaults(handler=cmd_chamber)

    p = sub.add_parser("same-chamber", help="whether two vectors share a chamber")
    _add_lattice_args(p)
    p.add_argument("--reference", required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(handler=cmd_same_chamber)

    p = sub.add_parser("hk-image", help="period-image test for a positive 3-space")
    _add_lattice_args(p)
    p.add_argument("--plane", required=True, help="three rows separated by ';'")
    p.set_defaults(handler=cmd_hk_image)

    p = sub.add_parser("symp-image", help="period-image test for a single class")
    _add_lattice_args(p, norms=False)
    p.add_argument("--vector", required=True)
    p.set_defaults(handler=cmd_symp_image)

    p = sub.add_parser("twistor", help="twistor family member of a class triple")
    _add_lattice_args(p, norms=False)
    p.add_argument("--triple", required=True, help="three rows x;y;z")
    p.add_argument("--direction", required=True, help="a,b,c (projective, rational)")
    p.set_defaults(handler=cmd_twistor)

    p = sub.add_parser("hk-equiv", help="equivalence of two class triples")
    _add_lattice_args(p, norms=False)
    p.add_argument("--triple", required=True)
    p.add_argument("--other", required=True)
    p.set_defaults(handler=cmd_hk_equiv)

    p = sub.add_parser("fiber-sample", help="sample fiber planes over a positive class")
    _add_lattice_args(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_fiber_sample)

    p = sub.add_parser("fiber-connectivity", help="path search between accepted fiber points")
    _add_lattice_args(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_fiber_connectivity)

    p = sub.add_parser("validate-catalog", help="run every invariant check on a catalog")
    p.add_argument("--catalog")
    p.set_defaults(handler=cmd_validate_catalog)

    return top


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    """Join every value-taking flag with its argument as --flag=value, so
    values with a leading minus (norms, Gram rows) survive argparse."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--")
            and "=" not in tok
            and tok not in ("--help",)
            and i + 1 < len(argv)
        ):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: Sequence[str]) -> CommandResult:
    """Dispatch one command; never raises for domain or usage problems."""
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
        handler = getattr(args, "handler", None)
        if handler is None:
            raise UsageError("a subcommand is required (see --help)")
        payload = handler(args)
        return CommandResult(status="ok", payload=payload)
    except UsageError as exc:
        return CommandResult(status="error", error={"type": "usage", "message": str(exc)})
    except (LatticeError, CatalogError) as exc:
        return CommandResult(
            status="error", error={"type": type(exc).__name__, "message": str(exc)}
        )
    except (OSError, json.JSONDecodeError) as exc:
        return CommandResult(
            status="error", error={"type": type(exc).__name__, "message": str(exc)}
        )


def main(argv: Sequence[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else list(argv))
    if result.status == "ok":
        sys.stdout.write(json.dumps(result.payload, separators=(", ", ": ")) + "\n")
    else:
        sys.stdout.write(json.dumps({"error": result.error}, separators=(", ", ": ")) + "\n")
    for line in result.diagnostics:
        sys.stderr.write(line + "\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
