"""Command-line front end for vergen.

Every subcommand reads Polytope JSON from --in (or standard input), writes
JSON to --out (or standard output) and logs to standard error. Exit codes:
0 pass, 1 a check failed (the witness is in the JSON), 2 usage, input or
budget error.
"""

import argparse
import json
import logging
import os
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any, NotRequired, TypedDict

from pydantic import ValidationError

from .analysis import (
    critical_dimension,
    defect,
    erosion_membership,
    generic_pair,
    is_vg,
    lambda_of,
    mixed_skeleton_check,
    pvap_check,
    skeleton_sum_check,
    vg_pieces,
)
from .cone import normal_cone
from .config import config
from .constructions import (
    augment_to_vg,
    covering_net,
    densify2d,
    fractal_envelope,
    lift_symmetric,
    local_radius,
    series_partial_sum,
    verify_local_radius,
)
from .errors import BudgetExceededError, VergenError
from .generators import SHAPES, generate
from .metrics import dF_sq, hausdorff_sq
from .minkowski import LinearMap, Segment, add_segment, minkowski_sum
from .models import (
    BracketDocument,
    HalfSpaceDocument,
    NetCertificateDocument,
    PointCloudDocument,
    PolytopeDocument,
    RegionDocument,
    RunConfig,
    VerdictDocument,
    ZonotopeDocument,
)
from .polytope import Face, Polytope
from .properties import SUITES, run_suites
from .rational import Point, format_point, format_scalar
from .region import Coverage, Region, Witness
from .render import render_svg
from .validators import parse_matrix, parse_point, parse_rational, validate_lambda

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class CommandResponse(TypedDict):
    """Type definition for a command response."""

    exitCode: int
    body: NotRequired[str]


def create_response(exit_code: int, body: dict[str, Any] | None = None) -> CommandResponse:
    """Create a response object for the command line.

    Args:
        exit_code: Process exit code
        body: JSON-serializable response body (optional)

    Returns:
        A formatted response object
    """
    response: CommandResponse = {"exitCode": exit_code}
    if body is not None:
        response["body"] = json.dumps(body)
    return response


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def load_polytope(path: str | None) -> Polytope:
    """Read and validate a Polytope JSON document."""
    return PolytopeDocument.model_validate_json(_read_text(path)).to_polytope()


def _polytope_body(P: Polytope, with_halfspaces: bool = False) -> dict[str, Any]:
    return PolytopeDocument.from_polytope(P, with_halfspaces).model_dump(mode="json", exclude_none=True)


def _jsonable(value: Any) -> Any:
    """Convert rationals, points and nested containers for json.dumps."""
    match value:
        case bool() | int() | str() | None:
            return value
        case Fraction():
            return format_scalar(value)
        case tuple() | list():
            return [_jsonable(v) for v in value]
        case dict():
            return {str(k): _jsonable(v) for k, v in value.items()}
        case _:
            return str(value)


def _verdict(
    verdict: bool,
    witness: Point | None = None,
    bracket: BracketDocument | None = None,
    details: dict[str, Any] | None = None,
) -> CommandResponse:
    document = VerdictDocument(
        verdict=verdict,
        witness=list(witness) if witness is not None else None,
        bracket=bracket,
        details=_jsonable(details or {}),
    )
    body = document.model_dump(mode="json", exclude_defaults=True)
    return create_response(EXIT_PASS if verdict else EXIT_FAIL, body)


def _coverage_verdict(outcome: Coverage, details: dict[str, Any] | None = None) -> CommandResponse:
    witness = outcome.point if isinstance(outcome, Witness) else None
    return _verdict(bool(outcome), witness, details=details)


def _region_body(R: Region) -> dict[str, Any]:
    cells = [[HalfSpaceDocument.from_halfspace(h) for h in cell.facets] for cell in R.cells]
    return RegionDocument(dim=R.dim, cells=cells, volume=R.volume).model_dump(mode="json")


def _write_svg(path: str | None, svg: Callable[[], str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(svg())
        logger.info(f"Wrote SVG to {path}")


def handle_check_vg(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Decide whether the input polytope is λ-vertex generated."""
    P = load_polytope(args.input)
    return _coverage_verdict(is_vg(P, parse_rational(args.lam), run.cell_budget))


def handle_lambda(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Certified bracket for λ(P)."""
    P = load_polytope(args.input)
    b = lambda_of(P, run.tol, run.parallelism, run.cell_budget)
    bracket = BracketDocument(
        lo=b.lo, hi=b.hi, lo_certified=b.lo_certified, hi_certified=b.hi_certified, c_lo=b.c_lo, c_hi=b.c_hi
    )
    return _verdict(b.lo_certified and b.hi_certified, bracket=bracket)


def handle_defect(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Exact defect region; the exit code is 0 whether or not it is empty."""
    P = load_polytope(args.input)
    lam = parse_rational(args.lam)
    report = defect(P, lam, run.cell_budget)
    _write_svg(args.svg, lambda: render_svg(P, vg_pieces(P, lam), report.region, report.witness))
    body = {
        "empty": report.region.is_empty(),
        "volume": format_scalar(report.volume),
        "witness": format_point(report.witness) if report.witness is not None else None,
        "region": _region_body(report.region),
    }
    return create_response(EXIT_PASS, body)


def handle_sum(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Minkowski sum of --in and --with."""
    summed = minkowski_sum(load_polytope(args.input), load_polytope(args.other))
    return create_response(EXIT_PASS, _polytope_body(summed))


def handle_add_segment(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Add the segment given as "a1,...,an;b1,...,bn"."""
    ends = [parse_point(part) for part in args.segment.split(";")]
    if len(ends) != 2:
        raise ValueError("segment needs exactly two endpoints")
    return create_response(EXIT_PASS, _polytope_body(add_segment(load_polytope(args.input), Segment(ends[0], ends[1]))))


def handle_zonotope(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Vertices of a zonotope given as Zonotope JSON."""
    Z = ZonotopeDocument.model_validate_json(_read_text(args.input)).to_zonotope()
    return create_response(EXIT_PASS, _polytope_body(Z.to_polytope()))


def handle_augment(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """P + Z for a zonotope Z making it 1/2-vertex generated, or Z alone."""
    P = load_polytope(args.input)
    Z = augment_to_vg(P)
    if args.zonotope_only:
        return create_response(EXIT_PASS, ZonotopeDocument.from_zonotope(Z).model_dump(mode="json"))
    return create_response(EXIT_PASS, _polytope_body(minkowski_sum(P, Z.to_polytope())))


def handle_densify(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Vertex-generated polygon within --eps of the input."""
    P = load_polytope(args.input)
    Q = densify2d(P, parse_rational(args.eps), run.retry_budget, run.parallelism)
    return create_response(EXIT_PASS, _polytope_body(Q))


def handle_lift(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Centrally symmetric lift of the input one dimension up."""
    P = load_polytope(args.input)
    Q = lift_symmetric(P, decorate=args.decorate, lam=parse_rational(args.lam), retry_budget=run.retry_budget)
    return create_response(EXIT_PASS, _polytope_body(Q))


def handle_fractal(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Series point cloud at the given depth, optionally drawn with its envelope."""
    P = load_polytope(args.input)
    lam = parse_rational(args.lam)
    cloud = series_partial_sum(P, lam, args.depth, run.point_budget)
    if args.svg:
        envelope = fractal_envelope(P, lam, args.depth, run.point_budget, run.cell_budget)
        _write_svg(args.svg, lambda: render_svg(P, region=envelope, points=cloud.points))
    document = PointCloudDocument(level=cloud.level, lambda_=cloud.lam, points=[list(p) for p in cloud.points])
    return create_response(EXIT_PASS, document.model_dump(mode="json", by_alias=True))


def handle_net(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Covering net certificate at level --k."""
    P = load_polytope(args.input)
    net = covering_net(P, parse_rational(args.lam), args.k, run.point_budget)
    document = NetCertificateDocument(
        k=net.k,
        scale=net.scale,
        centers=[list(c) for c in net.centers],
        bound=net.bound,
        volume_bound=net.volume_bound,
        lambda_used=net.lambda_used,
    )
    return create_response(EXIT_PASS, document.model_dump(mode="json"))


def handle_generic_pair(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Generic pair test; the witness is a shared boundary ray."""
    report = generic_pair(load_polytope(args.input), load_polytope(args.other))
    details = {"pair": report.pair} if report.pair is not None else None
    return _verdict(report.generic, report.shared_ray, details=details)


def handle_pvap(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Both sides of the P + V(AP) equivalence; fails only if they disagree."""
    P = load_polytope(args.input)
    report = pvap_check(P, LinearMap(parse_matrix(args.matrix)), run.order_bound)
    details = {"convex": report.convex, "conclusion_holds": report.conclusion_holds, "order": report.order}
    return _verdict(report.agree, report.witness, details=details)


def handle_skeleton(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Skeleton sum coverage, in mixed form when --j is given."""
    P = load_polytope(args.input)
    mu = parse_rational(args.mu)
    if args.j is not None:
        return _coverage_verdict(mixed_skeleton_check(P, args.k, args.j, mu), {"k": args.k, "j": args.j})
    return _coverage_verdict(skeleton_sum_check(P, args.k, mu), {"k": args.k})


def handle_critical_dim(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Smallest k with 2P = ∂^k P + ∂^(n-k) P."""
    return _verdict(True, details={"critical_dimension": critical_dimension(load_polytope(args.input))})


def handle_df(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Squared Hausdorff distance between the vertex sets."""
    value = dF_sq(load_polytope(args.input), load_polytope(args.other))
    return create_response(EXIT_PASS, {"squared_distance": format_scalar(value)})


def handle_dh(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Squared Hausdorff distance between the polytopes."""
    value = hausdorff_sq(load_polytope(args.input), load_polytope(args.other))
    return create_response(EXIT_PASS, {"squared_distance": format_scalar(value)})


def handle_gen(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Named shape, or a random one seeded by --seed."""
    return create_response(EXIT_PASS, _polytope_body(generate(args.shape, args.dim, run.seed)))


def handle_props(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Run property suites; fails if any case fails."""
    reports = run_suites(args.suite, args.cases, run.seed, run.parallelism)
    details = {
        r.suite: {
            "passed": len(r.results) - len(r.failures),
            "cases": len(r.results),
            "failures": [{"case": f.case, "detail": f.detail, "witness": f.witness} for f in r.failures],
        }
        for r in reports
    }
    first = next((f.witness for r in reports for f in r.failures if f.witness is not None), None)
    return _verdict(all(r.passed for r in reports), first, details=details)


def handle_faces(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Face lattice summary with the normal cone generators of each vertex."""
    P = load_polytope(args.input)
    faces = P.faces()
    counts: dict[int, int] = {}
    for f in faces:
        counts[f.dim] = counts.get(f.dim, 0) + 1
    body = {
        "dim": P.affine_dim,
        "f_vector": [counts.get(d, 0) for d in range(P.affine_dim + 1)],
        "faces": [{"dim": f.dim, "vertices": list(f.vertices)} for f in faces],
        "vertex_cones": [
            [format_point(g) for g in normal_cone(P, Face(0, (i,))).generators] for i in range(len(P.vertices))
        ],
    }
    return create_response(EXIT_PASS, body)


def handle_erosion(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Fails only if x lies in the eroded defect but not in the defect of the sum."""
    P = load_polytope(args.input)
    Q = load_polytope(args.other)
    in_lhs, in_rhs = erosion_membership(P, Q, parse_rational(args.lam), parse_point(args.point))
    return _verdict(in_rhs or not in_lhs, details={"in_lhs": in_lhs, "in_rhs": in_rhs})


def handle_local_radius(args: argparse.Namespace, run: RunConfig) -> CommandResponse:
    """Local radius at a boundary point, verified by a ball inscribed polygon."""
    P = load_polytope(args.input)
    u = parse_point(args.point)
    r_sq = local_radius(P, u)
    return _coverage_verdict(verify_local_radius(P, u), {"radius_sq": r_sq})


HANDLERS: dict[str, Callable[[argparse.Namespace, RunConfig], CommandResponse]] = {
    "check-vg": handle_check_vg,
    "lambda": handle_lambda,
    "defect": handle_defect,
    "sum": handle_sum,
    "add-segment": handle_add_segment,
    "zonotope": handle_zonotope,
    "augment": handle_augment,
    "densify": handle_densify,
    "lift": handle_lift,
    "fractal": handle_fractal,
    "net": handle_net,
    "generic-pair": handle_generic_pair,
    "pvap": handle_pvap,
    "skeleton": handle_skeleton,
    "critical-dim": handle_critical_dim,
    "dF": handle_df,
    "dH": handle_dh,
    "gen": handle_gen,
    "props": handle_props,
    "faces": handle_faces,
    "erosion": handle_erosion,
    "local-radius": handle_local_radius,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per handler."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", default=None, help="Input JSON file (default: stdin)")
    common.add_argument("--out", dest="output", default=None, help="Output JSON file (default: stdout)")
    common.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL")
    common.add_argument("--threads", type=int, default=None, help="Overrides VERGEN_THREADS")
    common.add_argument("--seed", type=int, default=None, help="Overrides VERGEN_SEED")
    common.add_argument("--cell-budget", type=int, default=None, help="Overrides VERGEN_CELL_BUDGET")
    common.add_argument("--point-budget", type=int, default=None, help="Overrides VERGEN_POINT_BUDGET")
    common.add_argument("--retry-budget", type=int, default=None, help="Overrides VERGEN_RETRY_BUDGET")
    common.add_argument("--tol", default=None, help="Bracket width for λ searches (default: 1/1024)")

    parser = argparse.ArgumentParser(prog="vergen", description="Exact tools for vertex-generated polytopes")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    add("check-vg", "Decide λ-vertex generation").add_argument("--lambda", dest="lam", required=True)
    add("lambda", "Bracket λ(P) to within --tol")
    p = add("defect", "Defect region at λ")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--svg", default=None)
    add("sum", "Minkowski sum with --with").add_argument("--with", dest="other", required=True)
    add("add-segment", "Add a segment a;b").add_argument("--segment", required=True)
    add("zonotope", "Vertices of a zonotope document")
    add("augment", "Zonotope Z with P + Z vertex generated").add_argument("--zonotope-only", action="store_true")
    add("densify", "Nearby vertex-generated polygon").add_argument("--eps", required=True)
    p = add("lift", "Centrally symmetric lift to one dimension higher")
    p.add_argument("--decorate", action="store_true")
    p.add_argument("--lambda", dest="lam", default="1/2")
    p = add("fractal", "Vertex-series point cloud")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--svg", default=None)
    p = add("net", "Certified covering net")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--k", type=int, required=True)
    add("generic-pair", "Generic pair test with --with").add_argument("--with", dest="other", required=True)
    add("pvap", "P + V(AP) convexity").add_argument("--matrix", required=True)
    p = add("skeleton", "Skeleton sum coverage")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--j", type=int, default=None, help="Second face dimension for the mixed form")
    add("critical-dim", "Critical dimension k*(P)")
    add("dF", "Squared vertex-set Hausdorff distance to --with").add_argument("--with", dest="other", required=True)
    add("dH", "Squared Hausdorff distance to --with").add_argument("--with", dest="other", required=True)
    p = add("gen", "Named or random instance")
    p.add_argument("--shape", choices=sorted(SHAPES), required=True)
    p.add_argument("--dim", type=int, required=True)
    p = add("props", "Property suites")
    p.add_argument("--suite", nargs="+", choices=["all", *SUITES], default=["all"])
    p.add_argument("--cases", type=int, default=10)
    add("faces", "Face lattice summary")
    p = add("erosion", "Erosion membership of --point")
    p.add_argument("--with", dest="other", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--point", required=True)
    add("local-radius", "Local radius at a boundary --point").add_argument("--point", required=True)
    return parser


def _configure_logging(level: str | None) -> None:
    """Send logs to stderr and apply a --log-level override to every vergen logger."""
    chosen = (level or config.log_level).upper()
    logging.basicConfig(stream=sys.stderr, level=chosen, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if level:
        for name in list(logging.root.manager.loggerDict):
            if "vergen" in name:
                logging.getLogger(name).setLevel(chosen)


def dispatch(args: argparse.Namespace) -> CommandResponse:
    """Run the handler for a parsed command line.

    Args:
        args: Parsed arguments

    Returns:
        The command response
    """
    logger.info(f"Running {args.command}")
    try:
        settings = config.run_config(
            seed=args.seed,
            tol=args.tol,
            cell_budget=args.cell_budget,
            point_budget=args.point_budget,
            retry_budget=args.retry_budget,
            parallelism=args.threads,
        )
        if getattr(args, "lam", None) is not None:
            validate_lambda(parse_rational(args.lam))
        return HANDLERS[args.command](args, settings)
    except ValidationError as e:
        logger.error(f"Validation error: {e!s}")
        return create_response(EXIT_ERROR, {"error": str(e)})
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded: {e!s}")
        return create_response(EXIT_ERROR, {"error": str(e), "budget": e.budget_name, "limit": e.limit})
    except (VergenError, ValueError, OSError) as e:
        logger.error(f"Error running {args.command}: {e!s}")
        return create_response(EXIT_ERROR, {"error": str(e)})
    except Exception as e:
        logger.exception(f"Unexpected error running {args.command}: {e!s}")
        return create_response(EXIT_ERROR, {"error": "Internal error"})


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point: write the JSON body and return the exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        The process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_ERROR
    _configure_logging(args.log_level)

    response = dispatch(args)
    body = response.get("body")
    if body is not None:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(body + "\n")
        else:
            sys.stdout.write(body + "\n")
    return response["exitCode"]


if __name__ == "__main__":
    sys.exit(main())
