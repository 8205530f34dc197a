"""Command-line surface.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 for a
determination, 2 for usage or parse errors, 3 when only an interval could
be certified, 4 for infinite rank (a determination scripts can branch on).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import __version__
from .core import DissimilarityMatrix, Matrix, SymmetricMatrix, project
from .decomposition import (
    Decomposition,
    NOTIONS,
    STAR,
    SYM,
    TREE,
    verify_matrices,
)
from .deficiency import build_deficiency, chromatic_number
from .dimension import dimension_report
from .generators import GENERATORS, generate, random_matrix
from .matrixio import MatrixFormatError, parse_matrix, serialize_matrix
from .membership import BASES, is_star_tree
from .rank import (
    INFINITE,
    RankResult,
    exact_rank,
    star_upper_decomposition,
    symmetric_upper_decomposition,
    tree_upper_decomposition,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERVAL = 3
EXIT_INFINITE = 4

NOTION_ALIASES = {"sym": SYM, "star": STAR, "tree": TREE}


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load(path: str) -> Matrix:
    if path == "-":
        return parse_matrix(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as handle:
        return parse_matrix(handle.read())


def _check_space(m: Matrix, notion: str) -> None:
    if notion == SYM and not isinstance(m, SymmetricMatrix):
        raise MatrixFormatError("symmetric rank needs a symmetric matrix file")
    if notion in (STAR, TREE) and not isinstance(m, DissimilarityMatrix):
        raise MatrixFormatError(f"{notion} rank needs a dissimilarity matrix file")


def _basis_of(notion: str) -> str:
    from .rank import basis_for_notion

    return basis_for_notion(notion)


def _is_zero_one(m: Matrix) -> bool:
    return all(v in (0, 1) for _, v in m.items())


def _closed_form_rank(m: Matrix, notion: str) -> Optional[RankResult]:
    """The documented closed-form paths for `--method auto`."""
    chi = None
    if notion == SYM and m.n == 3:
        from .small_cases import sym3_rank

        outcome = sym3_rank(m)
        if outcome.value == INFINITE:
            return _infinite_result(notion, outcome.infinite_witness)
        chi = int(chromatic_number(build_deficiency(m, _basis_of(notion))))
        return _finite_result(notion, int(outcome.value), chi, outcome.decomposition, "closed-form")
    if notion == STAR and isinstance(m, DissimilarityMatrix) and m.n == 5:
        from .small_cases import star5_rank2_decompose, star5_rank2_test

        chi = int(chromatic_number(build_deficiency(m, _basis_of(notion))))
        if is_star_tree(m):
            from .core import star_generator
            from .decomposition import star_summand

            dec = Decomposition(STAR, (star_summand(star_generator(m)),))
            return _finite_result(notion, 1, chi, dec, "closed-form")
        ok, witness = star5_rank2_test(m)
        if ok:
            dec = star5_rank2_decompose(m, witness)
            return _finite_result(notion, 2, chi, dec, "closed-form")
        dec = star_upper_decomposition(m)
        return _finite_result(notion, 3, chi, dec, "closed-form")
    if notion == TREE and isinstance(m, DissimilarityMatrix) and m.n == 5:
        from .small_cases import tree5_rank

        outcome = tree5_rank(m)
        chi = int(chromatic_number(build_deficiency(m, _basis_of(notion))))
        return _finite_result(notion, outcome.value, chi, outcome.decomposition, "closed-form")
    if _is_zero_one(m):
        return _zero_one_rank(m, notion)
    return None


def _zero_one_rank(m: Matrix, notion: str) -> RankResult:
    from .covers import star_tree_rank_01, symmetric_rank_01, tree_rank_01

    if notion == SYM:
        outcome = symmetric_rank_01(m)
        if outcome.value == INFINITE:
            return _infinite_result(notion, outcome.infinite_witness)
    elif notion == STAR:
        outcome = star_tree_rank_01(m)
    else:
        outcome = tree_rank_01(m)
    chi = int(chromatic_number(build_deficiency(m, _basis_of(notion))))
    result = _finite_result(notion, int(outcome.value), chi, outcome.decomposition, "covers")
    certificate = dict(result.lower_certificate)
    certificate["cover"] = [el.to_json_dict() for el in outcome.cover]
    if outcome.solid is not None:
        certificate["solid"] = outcome.solid
    return RankResult(
        result.notion,
        result.status,
        result.value,
        result.lower,
        result.upper,
        result.chromatic_bound,
        certificate,
        result.decomposition,
    )


def _finite_result(
    notion: str, value: int, chi: int, dec: Optional[Decomposition], method: str
) -> RankResult:
    return RankResult(
        notion,
        "finite",
        value,
        value,
        value,
        chi,
        {"type": method},
        dec,
    )


def _infinite_result(notion: str, witness) -> RankResult:
    return RankResult(
        notion,
        "infinite",
        INFINITE,
        INFINITE,
        INFINITE,
        INFINITE,
        {"type": "finiteness-violation", "pair": list(witness)},
        infinite_witness=witness,
    )


def _bounds_rank(m: Matrix, notion: str) -> RankResult:
    from .rank import _upper_for_search, finiteness_violation

    if notion == SYM:
        violation = finiteness_violation(m)
        if violation is not None:
            return _infinite_result(notion, violation)
    chi = int(chromatic_number(build_deficiency(m, _basis_of(notion))))
    upper = _upper_for_search(m, notion)
    if chi >= len(upper):
        return _finite_result(notion, len(upper), chi, upper, "bounds")
    return RankResult(
        notion,
        "interval",
        None,
        chi,
        len(upper),
        chi,
        {"type": "chromatic", "value": chi},
        upper,
    )


def cmd_rank(args) -> int:
    m = _load(args.file)
    notion = NOTION_ALIASES[args.notion]
    _check_space(m, notion)
    if args.method == "exact":
        result = exact_rank(m, notion, budget=args.budget)
    elif args.method == "bounds":
        result = _bounds_rank(m, notion)
    else:
        result = _closed_form_rank(m, notion)
        if result is None:
            result = exact_rank(m, notion, budget=args.budget)
    payload = result.to_json_dict()
    if args.no_certificates:
        payload.pop("decomposition", None)
    _emit(payload)
    if result.status == "infinite":
        return EXIT_INFINITE
    if result.status == "interval":
        return EXIT_INTERVAL
    return EXIT_OK


def cmd_decompose(args) -> int:
    m = _load(args.file)
    notion = NOTION_ALIASES[args.notion]
    _check_space(m, notion)
    if args.minimize:
        result = exact_rank(m, notion)
        if result.status == "infinite":
            _emit({"error": "infinite rank", "violating_pair": list(result.infinite_witness)})
            return EXIT_INFINITE
        dec = result.decomposition
    else:
        if notion == SYM:
            from .rank import finiteness_violation

            violation = finiteness_violation(m)
            if violation is not None:
                _emit({"error": "infinite rank", "violating_pair": list(violation)})
                return EXIT_INFINITE
            dec = symmetric_upper_decomposition(m)
        elif notion == STAR:
            dec = star_upper_decomposition(m)
        else:
            dec = tree_upper_decomposition(m)
    _emit(dec.to_json_dict())
    return EXIT_OK


def cmd_deficiency(args) -> int:
    m = _load(args.file)
    h = build_deficiency(m, args.basis)
    chi = chromatic_number(h)
    if args.format == "dot":
        sys.stdout.write(h.to_dot() + "\n")
        chi_text = "infinity" if chi == INFINITE else str(int(chi))
        sys.stdout.write(f"// chromatic number: {chi_text}\n")
        return EXIT_OK
    payload = h.to_json_dict()
    payload["chromatic_number"] = "infinity" if chi == INFINITE else int(chi)
    _emit(payload)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.name == "random":
        if args.size is None:
            raise MatrixFormatError("random needs a size")
        m = random_matrix(args.kind, args.size, args.low, args.high, args.seed)
    else:
        m = generate(args.name, args.size)
    if args.project:
        if not isinstance(m, SymmetricMatrix):
            raise MatrixFormatError("--project applies to symmetric generators")
        m = project(m)
    sys.stdout.write(serialize_matrix(m))
    return EXIT_OK


def cmd_dimension(args) -> int:
    notion = NOTION_ALIASES[args.notion]
    if args.grid:
        rows = []
        for n in range(3, args.n + 1):
            top = n // 2 if notion == TREE else n
            for r in range(1, top + 1):
                report = dimension_report(notion, n, r, args.sample, args.seed)
                rows.append(report.to_json_dict())
        buffer = io.StringIO()
        writer = csv.DictWriter(
            buffer, fieldnames=["notion", "n", "r", "formula", "sampled", "match", "trials", "seed"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buffer.getvalue()
        if args.csv:
            with open(args.csv, "w", encoding="utf-8") as handle:
                handle.write(text)
            print(f"wrote {len(rows)} rows to {args.csv}", file=sys.stderr)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.r is None:
        raise MatrixFormatError("--r is required without --grid")
    report = dimension_report(notion, args.n, args.r, args.sample, args.seed)
    _emit(report.to_json_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    m = _load(args.matrix)
    with open(args.decomposition, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    notion = data.get("notion")
    if notion not in NOTIONS:
        raise MatrixFormatError(f"decomposition file has unknown notion {notion!r}")
    matrices = []
    for s in data.get("summands", []):
        rows = s.get("matrix")
        if rows is None:
            raise MatrixFormatError("summand without a matrix")
        if notion == SYM:
            matrices.append(SymmetricMatrix.from_rows(rows))
        else:
            matrices.append(DissimilarityMatrix.from_rows(rows))
    report = verify_matrices(m, matrices, notion)
    _emit(report.to_json_dict())
    return EXIT_OK if report.ok else 1


def cmd_experiment(args) -> int:
    if args.which == "rank7-search":
        from .experiments import rank7_search

        candidates, best = rank7_search(args.trials, args.seed)
        _emit(
            {
                "trials": args.trials,
                "best_chromatic_bound": best,
                "candidates": [c.to_json_dict() for c in candidates],
            }
        )
        return EXIT_OK
    from .experiments import submatrix_conjecture

    report = submatrix_conjecture(args.trials, args.seed)
    _emit(report.to_json_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troprank",
        description="Exact tropical rank computations for symmetric and dissimilarity matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="compute a rank with certificates")
    p.add_argument("file", help="matrix file ('-' for stdin)")
    p.add_argument("--notion", required=True, choices=sorted(NOTION_ALIASES))
    p.add_argument("--method", default="auto", choices=["auto", "exact", "bounds"])
    p.add_argument("--budget", type=int, default=None, help="largest rank to search")
    p.add_argument(
        "--no-certificates",
        action="store_true",
        help="omit the witness decomposition from the output",
    )
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("decompose", help="emit a verified decomposition")
    p.add_argument("file")
    p.add_argument("--notion", required=True, choices=sorted(NOTION_ALIASES))
    p.add_argument(
        "--minimize",
        action="store_true",
        help="run the exact solver instead of the constructive upper bound",
    )
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("deficiency", help="deficiency graph and chromatic number")
    p.add_argument("file")
    p.add_argument("--basis", required=True, choices=sorted(BASES))
    p.add_argument("--format", default="json", choices=["json", "dot"])
    p.set_defaults(func=cmd_deficiency)

    p = sub.add_parser("generate", help="emit a named example matrix")
    p.add_argument("name", help=f"one of: {', '.join(sorted(GENERATORS))}, random")
    p.add_argument("size", nargs="?", type=int, default=None)
    p.add_argument("--project", action="store_true", help="drop the diagonal")
    p.add_argument("--kind", default="dissimilarity", choices=["symmetric", "dissimilarity"])
    p.add_argument("--low", type=int, default=0)
    p.add_argument("--high", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("dimension", help="dimension formula vs sampled local dimension")
    p.add_argument("--notion", required=True, choices=sorted(NOTION_ALIASES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--sample", type=int, default=10, help="sampling trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", action="store_true", help="CSV over all (n, r) up to --n")
    p.add_argument("--csv", default=None, help="write the grid CSV to this path")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("verify", help="check a decomposition file against a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--decomposition", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="open-question search harnesses")
    p.add_argument("which", choices=["rank7-search", "submatrix-conjecture"])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
