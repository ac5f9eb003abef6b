"""Command-line entry point: ``mixwit <subcommand> [options]``.

Exit codes: 0 success, 1 configuration or input error, 2 a claim check
failed, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from contextlib import contextmanager

import numpy as np

from . import harness
from .exceptions import MixwitError, ParseError
from .linalg import as_shape, validate_density
from .sampling import SliceSamplerConfig
from .witnesses import DEFAULT_EPS, witness_report

log = logging.getLogger("mixwit")

EXIT_OK, EXIT_CONFIG, EXIT_CLAIM, EXIT_IO = 0, 1, 2, 3


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _str_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_rows(rows, path, fmt, columns=None):
    """Write dict rows as JSON lines or CSV (columns default to the union of keys)."""
    with _open_out(path) as fh:
        if fmt == "csv":
            if columns is None:
                columns = []
                for r in rows:
                    columns.extend(k for k in r if k not in columns)
            writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
            writer.writeheader()
            writer.writerows(rows)
        else:
            for r in rows:
                fh.write(json.dumps(r) + "\n")


def load_state_file(path):
    """Read ``{"dim_a", "dim_b", "re": [[...]], "im": [[...]]}`` (``im`` optional)."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "re" not in doc:
        raise ParseError(f"{path}: expected an object with at least a 're' matrix")
    try:
        re = np.array(doc["re"], dtype=float)
        im = np.array(doc.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: matrix entries must be numbers ({exc})") from None
    if re.ndim != 2 or re.shape != im.shape:
        raise ParseError(f"{path}: 're' and 'im' must be equally sized 2-D arrays")
    return doc.get("dim_a"), doc.get("dim_b"), re + 1j * im


def _config(args) -> harness.RunConfig:
    slice_cfg = SliceSamplerConfig(
        mode=args.slice_mode, burn_in=args.burn_in, thinning=args.thinning
    )
    kwargs = dict(
        samples=args.samples,
        master_seed=args.seed,
        workers=args.workers,
        out=args.out,
        format=args.format,
        eps=args.eps,
        slice=slice_cfg,
    )
    if args.dims is not None:
        kwargs["dims"] = args.dims
    if getattr(args, "ensemble", None) is not None:
        kwargs["ensembles"] = args.ensemble
    for name in ("power", "records", "p_grid", "purities"):
        if getattr(args, name, None) is not None:
            kwargs[name] = getattr(args, name)
    return harness.RunConfig(**kwargs)


def _run_ensemble_study(args):
    cfg = _config(args)
    summary, records = harness.cmd_ensemble_study(cfg)
    if cfg.records:
        write_rows(records, cfg.records, "jsonl")
    if cfg.format == "csv":
        write_rows(summary.csv_rows(), cfg.out, "csv", harness.SUMMARY_COLUMNS)
    else:
        write_rows(summary.rows, cfg.out, "jsonl")
    if summary.containment_violations:
        log.error("%d states witnessed by mixedness but not NPT", summary.containment_violations)
        return EXIT_CLAIM
    return EXIT_OK


def _run_werner_sweep(args):
    if args.dims is None:
        args.dims = [2, 3, 5, 8, 10]
    cfg = _config(args)
    write_rows(harness.cmd_werner_sweep(cfg), cfg.out, cfg.format)
    return EXIT_OK


def _run_appendix_check(args):
    cfg = _config(args)
    results = harness.cmd_appendix_check(cfg)
    with _open_out(cfg.out) as fh:
        for r in results:
            fh.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CLAIM


def _run_state_witness(args):
    dim_a, dim_b, m = load_state_file(args.state)
    dim_a = args.dim_a or dim_a
    dim_b = args.dim_b or dim_b
    if dim_a is None or dim_b is None:
        raise ParseError("subsystem dimensions missing: give dim_a/dim_b in the file or flags")
    shape = as_shape((dim_a, dim_b))
    rho = validate_density(m)
    rep = witness_report(rho, shape, args.eps)
    with _open_out(args.out) as fh:
        fh.write(rep.to_json() + "\n")
    return EXIT_OK


def _run_bounds(args):
    if args.dims is None:
        args.dims = [3, 4, 9]
    cfg = _config(args)
    write_rows(harness.cmd_bounds(cfg), cfg.out, cfg.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", type=_int_list, help="comma-separated dimensions")
    common.add_argument("--samples", type=int, help="samples per ensemble / Monte Carlo check")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--workers", type=int, default=1, help="worker processes")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="decision tolerance")
    common.add_argument(
        "--slice-mode", choices=["auto", "rejection", "hit-and-run"], default="auto"
    )
    common.add_argument("--burn-in", type=int, default=1000)
    common.add_argument("--thinning", type=int, default=50)

    parser = argparse.ArgumentParser(prog="mixwit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ensemble-study", parents=[common], help="witness rates over random ensembles")
    p.add_argument("--ensemble", type=_str_list, help="comma-separated: UE,UP,naive,power,pure")
    p.add_argument("--power", type=float, help="exponent of the power ensemble (default D)")
    p.add_argument("--records", help="write per-state JSON lines here")
    p.set_defaults(func=_run_ensemble_study)

    p = sub.add_parser("werner-sweep", parents=[common], help="Werner witness values and thresholds")
    p.add_argument("--p-grid", type=_float_list, help="comma-separated Bell fractions")
    p.set_defaults(func=_run_werner_sweep)

    p = sub.add_parser("appendix-check", parents=[common], help="Monte Carlo checks of the simplex, naive-sampler, marginal-density and correlation claims")
    p.set_defaults(func=_run_appendix_check)

    p = sub.add_parser("state-witness", help="witness report for one state file")
    p.add_argument("state", help='JSON file {"dim_a", "dim_b", "re", "im"}')
    p.add_argument("--dim-a", type=int)
    p.add_argument("--dim-b", type=int)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--out")
    p.set_defaults(func=_run_state_witness)

    p = sub.add_parser("bounds", parents=[common], help="entropy bounds at fixed purity")
    p.add_argument("--purities", type=_float_list, help="comma-separated purities")
    p.set_defaults(func=_run_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except (MixwitError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
