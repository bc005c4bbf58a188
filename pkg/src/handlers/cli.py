"""Command-line handlers.

Every subcommand maps parsed arguments to a JSON-ready payload and an exit
code. ``run`` owns the stream handling: results go to stdout (JSON by default,
``--plain`` for whitespace-separated text), failures become a structured error
payload on stderr with exit code 2.
"""

import argparse
import json
import sys
from typing import Any, Callable, List, Optional, Sequence, TextIO, Tuple

from pydantic import ValidationError

from src.cluster.factorisation import verify_generator_factorisation
from src.cluster.mutation import (
    SEED_MATRIX,
    apply_permutation,
    mutate_matrix,
    mutate_seed,
    permutation_from_cycles,
    permute_seed,
    quiver_arrows,
    verify_B_invariance,
)
from src.cluster.models import Seed
from src.config import settings
from src.decision.orbit_decision import (
    beta3_power,
    decide,
    parse_witness,
    replay,
    witness,
)
from src.dynamics.group import invariant_T
from src.dynamics.models import Quintuple
from src.dynamics.orbit import orbit_bfs
from src.dynamics.words import product_notation
from src.exceptions import ClusterOrbitException, ParseException, ValidationException
from src.oracles.brute_force import (
    SearchBox,
    brute_force_conic_box,
    brute_force_h_box,
    brute_force_quintuples,
)
from src.reduction.conserved import ROOT_TRIPLE, Triple, apply_tilde_word, phi
from src.services.selftest import run_selftest
from src.solvers.markov_like import brute_force_triples, descend_to_root, enumerate_tree
from src.solvers.models import ConicForm
from src.solvers.pell_conic import enumerate_conic, h0_elements, least_pell4
from src.utils.exact import format_rational, parse_integer, parse_rational
from src.utils.result import Result
from src.utils.structured_logger import (
    clear_correlation_id,
    get_structured_logger,
    set_correlation_id,
)

slog = get_structured_logger("handlers.cli")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

Outcome = Tuple[Any, int]


# ============================================================================
# Argument types
# ============================================================================


def _argtype(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    """Adapt an exact parser so argparse reports its failures as usage errors."""

    def convert(text: str) -> Any:
        try:
            return parse(text)
        except ParseException as e:
            raise argparse.ArgumentTypeError(str(e))

    convert.__name__ = parse.__name__
    return convert


integer = _argtype(parse_integer)
rational = _argtype(parse_rational)


def _quintuple(values: Sequence[Any]) -> Quintuple:
    return Quintuple.of(*values)


def _member_quintuple(values: List[int], epsilon: int) -> Quintuple:
    """Four positionals mean (a, b, c, d) with e = eps; five are taken as given."""
    if len(values) == 4:
        values = values + [epsilon]
    if len(values) != 5:
        raise ValidationException("quintuple", f"expected 4 or 5 integers, got {len(values)}")
    return Quintuple.of(*values)


def _ints(values) -> List[str]:
    return [str(v) for v in values]


# ============================================================================
# exchange_core
# ============================================================================


def cmd_mutate(args: argparse.Namespace) -> Outcome:
    matrix = mutate_matrix(SEED_MATRIX, args.k)
    if args.sigma:
        matrix = apply_permutation(matrix, permutation_from_cycles(args.sigma, matrix.m))
    return {"k": args.k, "matrix": matrix.to_wire(), "equals_seed": matrix == SEED_MATRIX}, EXIT_OK


def cmd_seed_mutate(args: argparse.Namespace) -> Outcome:
    seed = mutate_seed(Seed(cluster=tuple(args.cluster), matrix=SEED_MATRIX), args.k)
    if args.sigma:
        seed = permute_seed(seed, permutation_from_cycles(args.sigma, seed.matrix.m))
    return {
        "k": args.k,
        "cluster": [format_rational(x) for x in seed.cluster],
        "matrix": seed.matrix.to_wire(),
    }, EXIT_OK


def cmd_quiver(args: argparse.Namespace) -> Outcome:
    matrix = mutate_matrix(SEED_MATRIX, args.k) if args.k else SEED_MATRIX
    return [_ints(arrow) for arrow in quiver_arrows(matrix)], EXIT_OK


def cmd_verify_matrix(args: argparse.Namespace) -> Outcome:
    report = verify_B_invariance()
    generators = verify_generator_factorisation(Quintuple.uniform(1))
    passed = report.passed and all(check.passed for check in generators)
    payload = {
        "passed": passed,
        "identities": {check.label: check.passed for check in report.checks},
        "generators": {check.letter: check.passed for check in generators},
        "skew_symmetrizer": _ints(report.skew_symmetrizer or []),
    }
    return payload, EXIT_OK if passed else EXIT_NEGATIVE


# ============================================================================
# quintuple_dynamics and conserved_map
# ============================================================================


def cmd_invariant(args: argparse.Namespace) -> Outcome:
    return format_rational(invariant_T(_quintuple(args.quintuple))), EXIT_OK


def cmd_phi(args: argparse.Namespace) -> Outcome:
    return phi(_quintuple(args.quintuple)).to_wire(), EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> Outcome:
    bound = args.bound if args.bound is not None else settings.default_orbit_bound
    return [p.to_wire() for p in orbit_bfs(args.epsilon, bound, workers=args.workers)], EXIT_OK


def cmd_beta3(args: argparse.Namespace) -> Outcome:
    return beta3_power(_quintuple(args.quintuple), args.n).to_wire(), EXIT_OK


# ============================================================================
# markov_like
# ============================================================================


def cmd_triples_enumerate(args: argparse.Namespace) -> Outcome:
    if args.method == "brute":
        triples = brute_force_triples(args.bound, workers=args.workers)
    else:
        triples = enumerate_tree(args.bound)
    return [_ints(t) for t in triples], EXIT_OK


def cmd_triples_witness(args: argparse.Namespace) -> Outcome:
    t = Triple(args.x, args.y, args.z)
    word = descend_to_root(t)
    return {
        "triple": t.to_wire(),
        "word": "~" + word.letters,
        "replay": apply_tilde_word(ROOT_TRIPLE, word).to_wire(),
    }, EXIT_OK


# ============================================================================
# pell_conic
# ============================================================================


def cmd_pell(args: argparse.Namespace) -> Outcome:
    solution = least_pell4(args.d, search=args.search)
    return _ints((solution.x, solution.y)), EXIT_OK


def cmd_conic(args: argparse.Namespace) -> Outcome:
    form = ConicForm(A=args.a, B=args.b, C=args.c, E=args.e)
    n1, n2 = args.range or (-settings.conic_default_range, settings.conic_default_range)
    return [_ints(point) for point in enumerate_conic(form, (n1, n2))], EXIT_OK


def cmd_h0(args: argparse.Namespace) -> Outcome:
    n1, n2 = args.range or (-settings.conic_default_range, settings.conic_default_range)
    return [_ints(el.point()) for el in h0_elements(args.epsilon, (n1, n2))], EXIT_OK


# ============================================================================
# orbit_decision
# ============================================================================


def cmd_decide(args: argparse.Namespace) -> Outcome:
    decision = decide(_member_quintuple(args.quintuple, args.epsilon), args.epsilon)
    return decision.to_wire(), EXIT_OK if decision.member else EXIT_NEGATIVE


def cmd_witness(args: argparse.Namespace) -> Outcome:
    p = _member_quintuple(args.quintuple, args.epsilon)
    certificate = witness(p, args.epsilon)
    payload = certificate.to_wire()
    payload["notation"] = product_notation(certificate.group_word)
    payload["replay"] = replay(certificate).to_wire()
    return payload, EXIT_OK


def cmd_replay(args: argparse.Namespace) -> Outcome:
    certificate = parse_witness(args.word, args.n, args.epsilon)
    return replay(certificate).to_wire(), EXIT_OK


# ============================================================================
# oracles
# ============================================================================


def cmd_oracle_quintuples(args: argparse.Namespace) -> Outcome:
    box = SearchBox.cube(args.bound, args.epsilon)
    return [p.to_wire() for p in brute_force_quintuples(box, workers=args.workers)], EXIT_OK


def cmd_oracle_conic(args: argparse.Namespace) -> Outcome:
    form = ConicForm(A=args.a, B=args.b, C=args.c, E=args.e)
    return [_ints(point) for point in brute_force_conic_box(form, args.bound, workers=args.workers)], EXIT_OK


def cmd_oracle_h(args: argparse.Namespace) -> Outcome:
    points = brute_force_h_box(args.epsilon, args.bound, workers=args.workers)
    return [_ints(point) for point in points], EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> Outcome:
    report = run_selftest(seed=args.seed, modules=args.module or None)
    return report.to_wire(), EXIT_OK if report.passed else EXIT_NEGATIVE


# ============================================================================
# Parser
# ============================================================================


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that never calls sys.exit itself."""

    def exit(self, status: int = 0, message: Optional[str] = None):
        if message:
            self._print_message(message, sys.stderr)
        raise _ParserExit(status)


class _ParserExit(Exception):
    def __init__(self, status: int):
        super().__init__(status)
        self.status = status


def _conic_flags(parser: argparse.ArgumentParser) -> None:
    for name in ("a", "b", "c", "e"):
        parser.add_argument(f"--{name}", type=integer, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cluster-orbit",
        description="Exact computations on the cluster-mutation orbit of (eps, eps, eps, eps, eps)",
    )
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="plain", action="store_false", help="JSON output (default)")
    output.add_argument("--plain", dest="plain", action="store_true", help="whitespace-separated output")
    parser.set_defaults(plain=False)
    parser.add_argument(
        "--workers", type=integer, default=None, help="worker processes (defaults to ORACLE_WORKERS)"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mutate", help="mu_k of the seed matrix, optionally permuted")
    p.add_argument("k", type=integer)
    p.add_argument("--sigma", help='permutation in cycle notation, e.g. "(12)"')
    p.set_defaults(handler=cmd_mutate)

    seed = sub.add_parser("seed", help="seed operations")
    seed_sub = seed.add_subparsers(dest="seed_command", required=True, parser_class=_Parser)
    p = seed_sub.add_parser("mutate", help="mu_k of the seed (cluster, B)")
    p.add_argument("k", type=integer)
    p.add_argument("cluster", type=rational, nargs=5)
    p.add_argument("--sigma")
    p.set_defaults(handler=cmd_seed_mutate)

    p = sub.add_parser("quiver", help="arrows of the quiver of B (or of mu_k B)")
    p.add_argument("--k", type=integer, default=None)
    p.set_defaults(handler=cmd_quiver)

    p = sub.add_parser("verify-matrix", help="check the invariance identities of B")
    p.set_defaults(handler=cmd_verify_matrix)

    for name, handler in (("invariant", cmd_invariant), ("phi", cmd_phi)):
        p = sub.add_parser(name)
        p.add_argument("quintuple", type=rational, nargs=5)
        p.set_defaults(handler=handler)

    triples = sub.add_parser("triples", help="positive solutions of xyz = x^2 + y^2 + z^2 + 7")
    triples_sub = triples.add_subparsers(dest="triples_command", required=True, parser_class=_Parser)
    p = triples_sub.add_parser("enumerate")
    p.add_argument("--bound", type=integer, required=True)
    p.add_argument("--method", choices=("tree", "brute"), default="tree")
    p.set_defaults(handler=cmd_triples_enumerate)
    p = triples_sub.add_parser("witness")
    for name in ("x", "y", "z"):
        p.add_argument(name, type=integer)
    p.set_defaults(handler=cmd_triples_witness)

    p = sub.add_parser("pell", help="least positive solution of X^2 - D Y^2 = 4")
    p.add_argument("--d", type=integer, required=True)
    p.add_argument("--search", action="store_true", help="ascending y-search instead of continued fractions")
    p.set_defaults(handler=cmd_pell)

    p = sub.add_parser("conic", help="integer points of A U^2 + B U V + C V^2 = E")
    _conic_flags(p)
    p.add_argument("--range", type=integer, nargs=2, metavar=("N1", "N2"))
    p.set_defaults(handler=cmd_conic)

    p = sub.add_parser("h0", help="elements of H0")
    p.add_argument("--epsilon", type=integer, required=True)
    p.add_argument("--range", type=integer, nargs=2, metavar=("N1", "N2"))
    p.set_defaults(handler=cmd_h0)

    for name, handler in (("decide", cmd_decide), ("witness", cmd_witness)):
        p = sub.add_parser(name)
        p.add_argument("--epsilon", type=integer, required=True)
        p.add_argument("quintuple", type=integer, nargs="+")
        p.set_defaults(handler=handler)

    p = sub.add_parser("replay", help="apply a witness word to beta^(3n)(eps, ..., eps)")
    p.add_argument("--epsilon", type=integer, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=integer, required=True)
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("beta3", help="beta^(3n)(P) through the step matrices")
    p.add_argument("--n", type=integer, required=True)
    p.add_argument("quintuple", type=rational, nargs=5)
    p.set_defaults(handler=cmd_beta3)

    p = sub.add_parser("orbit", help="orbit elements reachable under a component bound")
    p.add_argument("--epsilon", type=integer, required=True)
    p.add_argument("--bound", type=integer, default=None)
    p.set_defaults(handler=cmd_orbit)

    oracle = sub.add_parser("oracle", help="exhaustive searches")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    p = oracle_sub.add_parser("quintuples")
    p.add_argument("--epsilon", type=integer, default=1)
    p.add_argument("--bound", type=integer, required=True)
    p.set_defaults(handler=cmd_oracle_quintuples)
    p = oracle_sub.add_parser("conic")
    _conic_flags(p)
    p.add_argument("--bound", type=integer, required=True)
    p.set_defaults(handler=cmd_oracle_conic)
    p = oracle_sub.add_parser("h")
    p.add_argument("--epsilon", type=integer, default=1)
    p.add_argument("--bound", type=integer, required=True)
    p.set_defaults(handler=cmd_oracle_h)

    p = sub.add_parser("selftest", help="check every identity on sampled inputs")
    p.add_argument("--seed", type=integer, default=0)
    p.add_argument("--module", action="append")
    p.set_defaults(handler=cmd_selftest)

    return parser


# ============================================================================
# Output
# ============================================================================


def render_plain(payload: Any) -> str:
    """Whitespace-separated text: scalars as-is, flat lists on one line, nested lists one per line."""
    if isinstance(payload, dict):
        return "\n".join(f"{key}: {_inline(value)}" for key, value in payload.items())
    if isinstance(payload, list):
        if payload and all(isinstance(item, (list, tuple)) for item in payload):
            return "\n".join(_inline(item) for item in payload)
        return _inline(payload)
    return _inline(payload)


def _inline(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(_inline(item) for item in value)
    if isinstance(value, dict):
        return " ".join(f"{key}={_inline(item)}" for key, item in value.items())
    if value is None:
        return "-"
    return str(value)


def _emit(payload: Any, plain: bool, stream: TextIO) -> None:
    if plain:
        text = render_plain(payload)
    else:
        text = json.dumps(payload, indent=2)
    stream.write(text + "\n")


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Parse ``argv``, dispatch, write the result and return the exit code.

    Returns:
        0 on success (member for ``decide``), 1 for a negative answer, 2 for
        malformed input or any failure
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParserExit as e:
        return e.status

    correlation_id = set_correlation_id()
    slog.debug("Command started", command=args.command, correlation_id=correlation_id)
    try:
        try:
            payload, code = args.handler(args)
        except ValidationError as e:
            raise ValidationException(args.command, str(e), original_exception=e)
        result: Result[Any] = Result.ok(payload)
    except ClusterOrbitException as e:
        slog.warning("Command failed", command=args.command, error_code=e.error_code.value)
        result = Result.from_exception(e)
    except Exception as e:
        slog.error("Command crashed", command=args.command, error=str(e))
        result = Result.from_exception(e)
    finally:
        clear_correlation_id()

    if not result.success:
        stderr.write(json.dumps(result.to_dict(), indent=2, default=str) + "\n")
        return EXIT_ERROR
    _emit(result.unwrap(), args.plain, stdout)
    return code

