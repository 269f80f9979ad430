"""Command-line entry point.

Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
3 input parse failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .errors import CoauthnetError, ConfigError, InvalidSpec, MalformedRecord, MalformedTable
from .features import ClassScheme
from .ingest import load_periods
from .pipeline import ANALYSES, InputError, RunConfig, execute
from .synth import CorpusSpec, generate_corpus

LOG_ENV = "COAUTHNET_LOG_LEVEL"

_STAGE_OF_VERB = {
    "ingest": "ingest",
    "graphs": "graphs",
    "metrics": "metrics",
    "features": "features",
    "analyze": "analyze",
    "run": "analyze",
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coauthnet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    for verb in _STAGE_OF_VERB:
        s = sub.add_parser(verb, help=f"run the pipeline through the {_STAGE_OF_VERB[verb]} stage")
        s.add_argument("--input", required=True, type=Path, help="corpus directory (or a feature matrix for analyze)")
        s.add_argument("--output", required=True, type=Path)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--scheme", choices=[c.value for c in ClassScheme], default="5class")
        s.add_argument("--subset-size", type=int, default=15)
        s.add_argument("--periods", type=Path, help="JSON list of {label,start_year,end_year}")
        s.add_argument("--analyses", default=",".join(ANALYSES), help="comma list of " + ",".join(ANALYSES))
        s.add_argument("--trees", type=int, default=100)
        s.add_argument("--bins", type=int, default=3)
        s.add_argument("--rich-club-k", type=int, default=None)
        s.add_argument("--folds", type=int, default=10)
        s.add_argument("--d-max", type=int, default=8, help="largest subset size explored by SFFS")
        s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("synth", help="write a seeded synthetic corpus")
    s.add_argument("--output", required=True, type=Path)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--programs", type=int, default=None, help="number of programs (default: 62)")
    s.add_argument(
        "--grade-counts",
        default=None,
        help="samples per grade, e.g. 3:75,4:58,5:14,6:9,7:15",
    )
    return p


def _config(args) -> RunConfig:
    try:
        periods = tuple(load_periods(args.periods)) if args.periods else None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad periods file {args.periods}: {exc}") from exc
    analyses = tuple(a.strip() for a in args.analyses.split(",") if a.strip())
    return RunConfig(
        input_dir=args.input,
        output_dir=args.output,
        periods=periods,
        class_scheme=ClassScheme(args.scheme),
        subset_size=args.subset_size,
        seed=args.seed,
        analyses=analyses,
        rich_club_k=args.rich_club_k,
        bins=args.bins,
        trees=args.trees,
        folds=args.folds,
        d_max=args.d_max,
        workers=args.workers,
    )


def _synth(args) -> None:
    kwargs = {}
    if args.grade_counts:
        try:
            kwargs["grade_counts"] = {
                int(g): int(c) for g, c in (item.split(":") for item in args.grade_counts.split(","))
            }
        except ValueError as exc:
            raise ConfigError(f"bad --grade-counts: {exc}") from exc
    if args.programs is not None:
        kwargs["n_programs"] = args.programs
    corpus = generate_corpus(args.seed, CorpusSpec(**kwargs))
    corpus.write(args.output)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get(LOG_ENV, "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = _parser().parse_args(argv)
    try:
        if args.verb == "synth":
            _synth(args)
        else:
            execute(_config(args), _STAGE_OF_VERB[args.verb])
    except (ConfigError, InvalidSpec) as exc:
        logging.error("configuration error: %s", exc)
        return 2
    except (InputError, MalformedRecord, MalformedTable, OSError) as exc:
        logging.error("input error: %s", exc)
        return 3
    except CoauthnetError as exc:
        logging.error("%s: %s", type(exc).__name__, exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
