"""Command line interface of sdex."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import anyio

from ._core._categories import (
    FiniteCategory,
    curated_family,
    is_groupoid,
    left_fractions_check,
    nerve,
    poset_injectivity_check,
)
from ._core._constructions import boundary, horn, standard_simplex
from ._core._exceptions import (
    BudgetExceededError,
    IndexOutOfRangeError,
    MalformedInputError,
    TruncationError,
)
from ._core._lifting import LiftingVerdict, count_maps, enumerate_maps, is_fib_n
from ._core._metric import edge_distance, lemma2d_check, lemma3d_check
from ._core._parallel import is_fib_n_async
from ._core._rays import build_rays, render_svg, verify_rays
from ._core._serialization import (
    category_from_dict,
    dumps,
    loads,
    map_to_dict,
    space_from_dict,
    space_to_dict,
    to_dot,
    verdict_to_dict,
)
from ._core._simplicial import SimplicialSet
from ._core._subdivision import sd_iter
from ._core._tower import build_tower, certify_counterexample, stage_distance

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None

    return loads(text)


def _write(path: str | None, text: str) -> None:
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")


def _integers(parts: Sequence[str], spec: str) -> list[int]:
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise UsageError(f"invalid space specifier {spec!r}") from None


def _category(name: str | None, path: str | None) -> FiniteCategory:
    if path is not None:
        return category_from_dict(_read_json(path))

    family = curated_family()
    if name not in family:
        raise UsageError(
            f"unknown category {name!r} (choose from {', '.join(sorted(family))})"
        )

    return family[name]


def parse_space(spec: str, bound: int) -> SimplicialSet:
    """
    Resolve a space specifier: ``simplex:K``, ``boundary:K``, ``horn:K:I``,
    ``nerve:NAME`` (truncated at ``bound + 1``) or ``file:PATH``.
    """
    kind, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    if kind == "simplex" and len(parts) == 1:
        return standard_simplex(*_integers(parts, spec))
    elif kind == "boundary" and len(parts) == 1:
        return boundary(*_integers(parts, spec))
    elif kind == "horn" and len(parts) == 2:
        k, i = _integers(parts, spec)
        return horn(k, i)[0]
    elif kind == "nerve" and len(parts) == 1:
        return nerve(_category(parts[0], None), bound + 1)
    elif kind == "file" and rest:
        return space_from_dict(_read_json(rest))

    raise UsageError(f"invalid space specifier {spec!r}")


def _checked_space(args: argparse.Namespace, bound: int = 2) -> SimplicialSet:
    spec = f"file:{args.input}" if args.input is not None else args.of
    if spec is None:
        raise UsageError("a space is required (use --of or --in)")

    space = parse_space(spec, bound)
    violations = space.validate()
    if violations:
        first = violations[0]
        raise MalformedInputError(
            f"{spec} is not a simplicial set: {first.clause} ({first.detail})"
        )

    return space


def _report_verdict(verdict: LiftingVerdict, args: argparse.Namespace) -> int:
    print(verdict.describe())
    _write(args.json, dumps(verdict_to_dict(verdict)))
    return EXIT_OK if verdict else EXIT_FALSE


def _fib_verdict(space: SimplicialSet, n: int, bound: int, jobs: int) -> LiftingVerdict:
    if jobs <= 1:
        return is_fib_n(space, n, bound)

    async def run() -> LiftingVerdict:
        limiter = anyio.CapacityLimiter(jobs)
        return await is_fib_n_async(space, n, bound, limiter=limiter)

    return anyio.run(run)


def cmd_make(args: argparse.Namespace) -> int:
    if args.shape == "simplex":
        space = standard_simplex(args.k)
    elif args.shape == "boundary":
        space = boundary(args.k)
    elif args.shape == "horn":
        space = horn(args.k, args.i)[0]
    elif args.shape == "nerve":
        space = nerve(_category(args.category, args.input), args.bound)
    else:
        space = sd_iter(_checked_space(args, args.bound), args.n)

    print(f"f-vector: {space.f_vector}")
    print(f"dim_bound: {space.dim_bound}{' (truncated)' if space.truncated else ''}")
    _write(args.json, dumps(space_to_dict(space)))
    _write(args.dot, to_dot(space))
    return EXIT_OK


def cmd_maps(args: argparse.Namespace) -> int:
    source = _checked_space(args, args.bound)
    target = parse_space(args.to, args.bound)
    if args.json is None:
        print(count_maps(source, target))
    else:
        maps = enumerate_maps(source, target)
        print(len(maps))
        _write(args.json, dumps([map_to_dict(f)["images"] for f in maps]))

    return EXIT_OK


def cmd_kan(args: argparse.Namespace) -> int:
    space = _checked_space(args, args.bound)
    return _report_verdict(_fib_verdict(space, 0, args.bound, args.jobs), args)


def cmd_fib(args: argparse.Namespace) -> int:
    space = _checked_space(args, args.bound)
    return _report_verdict(_fib_verdict(space, args.n, args.bound, args.jobs), args)


def cmd_dist(args: argparse.Namespace) -> int:
    if args.lemma2d:
        print(f"least avoiding distance in Sd^{args.n} Δ_2: {lemma2d_check(args.n)}")
        return EXIT_OK

    if args.lemma3d is not None:
        violations = lemma3d_check(args.lemma3d, args.n)
        for violation in violations:
            print(
                f"{violation.x} {violation.y}: {violation.source_distance} along the "
                f"boundary, {violation.target_distance} across"
            )

        print(f"{len(violations)} violations")
        return EXIT_FALSE if violations else EXIT_OK

    if args.x is None or args.y is None:
        raise UsageError("two vertices are required")

    space = sd_iter(_checked_space(args), args.n)
    for vertex in (args.x, args.y):
        if not 0 <= vertex < space.size(0):
            raise IndexOutOfRangeError(f"there is no vertex {vertex}")

    print(edge_distance(space, args.x, args.y))
    return EXIT_OK


def cmd_rays(args: argparse.Namespace) -> int:
    labeled = build_rays(args.n)
    violations = verify_rays(labeled)
    for violation in violations:
        print(f"{violation.clause} at {violation.where}: {violation.detail}")

    print(f"{labeled.ray_count} rays, {len(labeled.triangles)} triangles")
    print("verified" if not violations else f"{len(violations)} violations")
    _write(args.svg, render_svg(labeled))
    _write(args.json, dumps(labeled.as_dict()))
    return EXIT_FALSE if violations else EXIT_OK


def cmd_tower(args: argparse.Namespace) -> int:
    if args.certify:
        certificate = certify_counterexample(args.n, args.stages, args.k)
        print(certificate.format_table())
        _write(args.json, dumps(certificate.as_dict()))
        lifted = any(report.lift for report in certificate.reports)
        return EXIT_OK if lifted else EXIT_FALSE

    stages = build_tower(args.n, args.stages, args.k)
    x, y = stages[0].endpoints
    for stage in stages:
        print(
            f"R_{stage.index}: f-vector {stage.space.f_vector}, "
            f"d(x,y) = {stage_distance(stage, x, y)}"
        )

    return EXIT_OK


def cmd_cat_check(args: argparse.Namespace) -> int:
    category = _category(args.category, args.input)
    if args.check == "groupoid":
        holds, witness = is_groupoid(category)
        print("groupoid" if holds else f"not a groupoid: {witness} is not invertible")
    elif args.check == "fractions":
        verdict = left_fractions_check(category)
        holds = verdict.holds
        if holds:
            print("admits a left calculus of fractions")
        else:
            witness = ", ".join(verdict.witness)
            print(f"{verdict.condition} condition fails for {witness}")
    else:
        injectivity = poset_injectivity_check(category, args.n, args.k)
        holds = injectivity.holds
        if holds:
            print(f"injective for cat(Sd^{args.n} Λ^i_k), k <= {args.k}")
        else:
            assert injectivity.horn is not None
            k, i = injectivity.horn
            print(f"a functor on cat(Sd^{args.n} Λ^{i}_{k}) does not extend")

    return EXIT_OK if holds else EXIT_FALSE


def cmd_validate(args: argparse.Namespace) -> int:
    spec = f"file:{args.input}" if args.input is not None else args.of
    if spec is None:
        raise UsageError("a space is required (use --of or --in)")

    violations = parse_space(spec, args.bound).validate()
    for violation in violations:
        simplex = f"{violation.simplex.dim}:{violation.simplex.id}"
        print(f"{simplex} {violation.clause}: {violation.detail}")

    print("valid" if not violations else f"{len(violations)} violations")
    return EXIT_FALSE if violations else EXIT_OK


def _add_space_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--of",
        metavar="SPACE",
        help="simplex:K, boundary:K, horn:K:I, nerve:NAME or file:PATH",
    )
    parser.add_argument(
        "--in", dest="input", metavar="FILE", help="read the space from a JSON file"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdex",
        description=(
            "Subdivision, extension and horn filling on finite simplicial sets."
        ),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress to stderr (-vv for debug output)",
    )
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    make = verbs.add_parser("make", help="build a simplicial set")
    make.add_argument("shape", choices=["simplex", "horn", "boundary", "sd", "nerve"])
    make.add_argument("-k", type=int, default=2, help="dimension (default: 2)")
    make.add_argument("-i", type=int, default=0, help="horn index (default: 0)")
    make.add_argument("-n", type=int, default=1, help="subdivision depth (default: 1)")
    make.add_argument(
        "-K", dest="bound", type=int, default=3, help="nerve truncation (default: 3)"
    )
    make.add_argument("--category", help="curated category for 'make nerve'")
    _add_space_options(make)
    make.add_argument("--json", metavar="FILE", help="write the result as JSON")
    make.add_argument("--dot", metavar="FILE", help="write the 1-skeleton as DOT")
    make.set_defaults(handler=cmd_make)

    maps = verbs.add_parser("maps", help="count simplicial maps")
    _add_space_options(maps)
    maps.add_argument("--to", required=True, metavar="SPACE", help="target space")
    maps.add_argument("-K", dest="bound", type=int, default=2, help=argparse.SUPPRESS)
    maps.add_argument("--json", metavar="FILE", help="write every map as JSON")
    maps.set_defaults(handler=cmd_maps)

    for verb, summary, handler in (
        ("kan", "check the Kan condition up to a bound", cmd_kan),
        ("fib", "check lifting against subdivided horns", cmd_fib),
    ):
        sub = verbs.add_parser(verb, help=summary)
        _add_space_options(sub)
        sub.add_argument(
            "-K", dest="bound", type=int, default=2, help="horn dimension bound"
        )
        if verb == "fib":
            sub.add_argument("-n", type=int, default=1, help="subdivision depth")

        sub.add_argument(
            "--jobs", type=int, default=1, help="check horns in parallel threads"
        )
        sub.add_argument("--json", metavar="FILE", help="write the verdict as JSON")
        sub.set_defaults(handler=handler)

    dist = verbs.add_parser("dist", help="edge-path distances")
    _add_space_options(dist)
    dist.add_argument("x", type=int, nargs="?", help="first vertex")
    dist.add_argument("y", type=int, nargs="?", help="second vertex")
    dist.add_argument("-n", type=int, default=0, help="subdivide the space n times")
    dist.add_argument(
        "--lemma2d",
        action="store_true",
        help="least distance from side AB to side AC of Sd^n Δ_2 avoiding A",
    )
    dist.add_argument(
        "--lemma3d",
        type=int,
        metavar="K",
        help="compare distances in Sd^n ∂Δ_K and Sd^n Δ_K",
    )
    dist.set_defaults(handler=cmd_dist)

    rays = verbs.add_parser("rays", help="label Sd^n Δ_2 by rays and verify it")
    rays.add_argument("-n", type=int, default=1, help="subdivision depth")
    rays.add_argument("--svg", metavar="FILE", help="write a picture as SVG")
    rays.add_argument("--json", metavar="FILE", help="write the labelling as JSON")
    rays.set_defaults(handler=cmd_rays)

    tower = verbs.add_parser("tower", help="build the fibrant replacement tower")
    tower.add_argument("-n", type=int, default=0, help="subdivision depth")
    tower.add_argument(
        "-j", dest="stages", type=int, default=1, help="number of stages"
    )
    tower.add_argument("-k", type=int, default=2, help="largest horn dimension")
    tower.add_argument(
        "--certify",
        action="store_true",
        help="check distances and lifts at every stage (exit 1 if no stage lifts)",
    )
    tower.add_argument("--json", metavar="FILE", help="write the certificate as JSON")
    tower.set_defaults(handler=cmd_tower)

    cat_check = verbs.add_parser("cat-check", help="check a finite category")
    cat_check.add_argument("check", choices=["groupoid", "fractions", "injectivity"])
    cat_check.add_argument("--category", default="Z2", help="curated category name")
    cat_check.add_argument(
        "--in", dest="input", metavar="FILE", help="read the category from JSON"
    )
    cat_check.add_argument("-n", type=int, default=1, help="subdivision depth")
    cat_check.add_argument("-k", type=int, default=2, help="largest horn dimension")
    cat_check.set_defaults(handler=cmd_cat_check)

    validate = verbs.add_parser("validate", help="check the simplicial identities")
    _add_space_options(validate)
    validate.add_argument(
        "-K", dest="bound", type=int, default=2, help=argparse.SUPPRESS
    )
    validate.set_defaults(handler=cmd_validate)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )

    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"sdex: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, IndexError, TruncationError) as exc:
        print(f"sdex: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
