"""Command-line interface.

Subcommands work at three levels of detail:

    score     NetTrustScore and correctness diagnostics for one run
    spectrum  per-scenario trust spectrum for one run
    density   trust densities for one or more answer scenarios
    compare   NetTrustScore table and overlaid spectra for several runs
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import __version__
from .density import DEFAULT_GRID_POINTS, estimate_density
from .plots import render_density_plot, render_spectrum_plot
from .records import RecordSet, load_records, load_run_manifest
from .report import compare_models, model_summary
from .spectrum import group_by_scenario, trust_spectrum
from .trust import GROUPINGS, WEIGHTINGS, TrustParams, score_all

PROG = "nettrust"


class CliError(Exception):
    pass


def _positive(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not x > 0 or x == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a finite positive number, got {value}")
    return x


def _int_at_least(lo: int):
    def parse(value: str) -> int:
        try:
            x = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
        if x < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}, got {x}")
        return x
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="prediction records file (.csv or .jsonl)")
    common.add_argument("--format", choices=("csv", "jsonl"),
                        help="record format; inferred from the file extension by default")
    common.add_argument("--manifest", type=Path,
                        help="JSON run manifest: [{\"model_name\": ..., \"path\": ...}, ...]")
    common.add_argument("--alpha", type=_positive, default=1.0,
                        help="reward exponent for correct answers (default: 1)")
    common.add_argument("--beta", type=_positive, default=1.0,
                        help="penalty exponent for incorrect answers (default: 1)")
    common.add_argument("--gamma", type=_positive, default=0.5,
                        help="KDE bandwidth constant; bandwidth is gamma/sqrt(N) (default: 0.5)")
    common.add_argument("--grouping", choices=GROUPINGS, default="predicted",
                        help="assign questions to scenarios by predicted or oracle label "
                             "(default: predicted)")
    common.add_argument("--weighting", choices=WEIGHTINGS, default="empirical",
                        help="scenario weights for NetTrustScore (default: empirical)")
    common.add_argument("--grid-points", type=_int_at_least(2), default=DEFAULT_GRID_POINTS,
                        help=f"density grid size on [0, 1] (default: {DEFAULT_GRID_POINTS})")
    common.add_argument("--scenario", action="append",
                        help="answer scenario label for `density`; repeatable")
    common.add_argument("--out-dir", type=Path, default=Path("."),
                        help="directory for output artifacts (default: current directory)")
    common.add_argument("--emit-plots", action="store_true", help="also write SVG plots")
    common.add_argument("--report-format", choices=("json", "csv", "text"), default="json",
                        help="summary/comparison output format (default: json)")
    common.add_argument("--ordering", choices=("by_first_model", "lexicographic"),
                        default="by_first_model", help="scenario order in spectrum plots")
    common.add_argument("--threads", type=_int_at_least(1), default=1,
                        help="worker threads for density evaluation (output does not depend on it)")

    parser = argparse.ArgumentParser(prog=PROG, description="Trust quantification for classifier "
                                     "prediction dumps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("score", parents=[common], help="NetTrustScore summary for one run")
    sub.add_parser("spectrum", parents=[common], help="trust spectrum for one run")
    sub.add_parser("density", parents=[common], help="trust densities per answer scenario")
    sub.add_parser("compare", parents=[common], help="compare several runs from a manifest")
    return parser


def _params(args) -> TrustParams:
    return TrustParams(args.alpha, args.beta, args.gamma, args.grouping, args.weighting)


def _single_run(args) -> RecordSet:
    if args.input is None:
        raise CliError(f"`{args.command}` needs --input")
    if args.manifest is not None:
        raise CliError(f"`{args.command}` takes --input, not --manifest")
    return load_records(args.input, args.format)


def _manifest_runs(args) -> list[RecordSet]:
    runs = load_run_manifest(args.manifest)
    return [load_records(path, args.format, model_name=name) for name, path in runs]


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", label).strip("_") or "scenario"


def _unique_slugs(labels) -> dict[str, str]:
    out, used = {}, set()
    for label in labels:
        base = slug = _slug(label)
        k = 2
        while slug in used:
            slug = f"{base}-{k}"
            k += 1
        used.add(slug)
        out[label] = slug
    return out


def cmd_score(args) -> list[Path]:
    rs = _single_run(args)
    summary = model_summary(rs, _params(args))
    table = compare_models([summary])
    fmt = args.report_format
    path = args.out_dir / {"json": "summary.json", "csv": "summary.csv", "text": "summary.txt"}[fmt]
    text = {"json": summary.to_json, "csv": table.to_csv, "text": table.to_text}[fmt]()
    _write(path, text)
    return [path]


def cmd_spectrum(args) -> list[Path]:
    rs = _single_run(args)
    p = _params(args)
    spectrum = trust_spectrum(score_all(rs, p), p.grouping, rs.model_name)
    paths = [args.out_dir / "spectrum.csv", args.out_dir / "spectrum.json"]
    _write(paths[0], spectrum.to_csv())
    _write(paths[1], spectrum.to_json())
    if args.emit_plots:
        paths.append(args.out_dir / "spectrum.svg")
        _write(paths[-1], render_spectrum_plot([spectrum], args.ordering,
                                               title=f"Trust spectrum: {rs.model_name}"))
    return paths


def _scenario_samples(rs: RecordSet, p: TrustParams) -> dict[str, list[float]]:
    groups = group_by_scenario(score_all(rs, p), p.grouping)
    return {g.scenario_label: [m.qa_trust for m in g.members] for g in groups}


def cmd_density(args) -> list[Path]:
    p = _params(args)
    if args.manifest is not None:
        if args.input is not None:
            raise CliError("give either --input or --manifest, not both")
        if not args.scenario:
            raise CliError("`density --manifest` needs at least one --scenario")
        runs = _manifest_runs(args)
    else:
        runs = [_single_run(args)]

    per_run = [(rs.model_name, _scenario_samples(rs, p)) for rs in runs]
    if args.scenario:
        scenarios = list(dict.fromkeys(args.scenario))
        for name, samples in per_run:
            missing = [s for s in scenarios if s not in samples]
            if missing and len(per_run) == 1:
                raise CliError(f"scenario has no members: {', '.join(map(repr, missing))} "
                               f"(grouping={p.grouping}, model {name!r})")
        if not any(s in samples for s in scenarios for _, samples in per_run):
            raise CliError(f"scenario has no members in any run: {', '.join(map(repr, scenarios))}")
    else:
        scenarios = sorted({label for _, samples in per_run for label in samples})

    scenario_slugs = _unique_slugs(scenarios)
    model_slugs = _unique_slugs([name for name, _ in per_run])
    paths = []
    for scenario in scenarios:
        densities = []
        for name, samples in per_run:
            if scenario not in samples:
                continue
            d = estimate_density(samples[scenario], p.gamma, args.grid_points, scenario, name,
                                 num_threads=args.threads)
            densities.append(d)
            stem = f"density_{scenario_slugs[scenario]}"
            if len(per_run) > 1:
                stem = f"density_{model_slugs[name]}_{scenario_slugs[scenario]}"
            for ext, text in (("csv", d.to_csv()), ("json", d.to_json())):
                paths.append(args.out_dir / f"{stem}.{ext}")
                _write(paths[-1], text)
        if args.emit_plots:
            paths.append(args.out_dir / f"density_{scenario_slugs[scenario]}.svg")
            _write(paths[-1], render_density_plot(densities, strict=True))
    return paths


def cmd_compare(args) -> list[Path]:
    if args.manifest is None:
        raise CliError("`compare` needs --manifest")
    if args.input is not None:
        raise CliError("`compare` takes --manifest, not --input")
    p = _params(args)
    runs = _manifest_runs(args)
    table = compare_models([model_summary(rs, p) for rs in runs])
    fmt = args.report_format
    path = args.out_dir / {"json": "comparison.json", "csv": "comparison.csv",
                           "text": "comparison.txt"}[fmt]
    _write(path, {"json": table.to_json, "csv": table.to_csv, "text": table.to_text}[fmt]())
    # plot follows the table's ranking so the first trace is the top model
    by_name = {rs.model_name: rs for rs in runs}
    spectra = [trust_spectrum(score_all(by_name[s.model_name], p), p.grouping, s.model_name)
               for s in table.rows]
    plot = args.out_dir / "spectra.svg"
    _write(plot, render_spectrum_plot(spectra, args.ordering, title="Trust spectra"))
    return [path, plot]


COMMANDS = {"score": cmd_score, "spectrum": cmd_spectrum, "density": cmd_density,
            "compare": cmd_compare}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        paths = COMMANDS[args.command](args)
    except (CliError, ValueError, OSError) as exc:
        print(f"{PROG} {args.command}: error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
