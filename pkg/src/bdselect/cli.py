"""Command line front end for the Monte Carlo sweep harness."""

from __future__ import annotations

import argparse
import sys

from .selection import ALGORITHMS, DEFAULT_ALGORITHMS
from .sweep import SweepConfig, run_sweep, write_csv

__all__ = ["build_parser", "cli_main", "main"]


def _int_list(text):
    """Parse '10:60:10' ranges (inclusive) or '10,20,30' lists of ints."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad range {text!r}")
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def _float_list(text):
    return [float(p) for p in text.split(",") if p.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bdselect",
        description=(
            "Monte Carlo sum-rate and flop-count sweep for downlink "
            "multi-user MIMO user selection with block diagonalization."
        ),
    )
    parser.add_argument("--m", type=int, default=8,
                        help="transmit antennas (default 8)")
    parser.add_argument("--n", type=int, default=2,
                        help="receive antennas per user (default 2)")
    parser.add_argument("--k", type=int, default=None,
                        help="served-user cap (default floor(m/n))")
    parser.add_argument("--kt", default="10:60:10",
                        help="population sizes, 'start:stop:step' or "
                             "comma list (default 10:60:10)")
    parser.add_argument("--snr-db", default="20",
                        help="SNR grid in dB, comma list (default 20)")
    parser.add_argument("--trials", type=int, default=200,
                        help="Monte Carlo trials per cell (default 200)")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed for the trial streams (default 0)")
    parser.add_argument("--algorithms", default=None,
                        help="comma list of algorithm tags (default: every "
                             "algorithm except brute-force); known: "
                             + ", ".join(ALGORITHMS))
    parser.add_argument("--output", default="sweep.csv",
                        help="CSV output path (default sweep.csv)")
    parser.add_argument("--brute-force-cap", type=int, default=100_000,
                        help="max subsets brute force may enumerate per "
                             "cell before it is skipped (default 100000)")
    return parser


def _print_summary(result, output):
    print(f"{'algorithm':<14}{'kt':>5}{'snr_db':>8}{'trials':>8}"
          f"{'mean_rate':>12}{'std':>9}{'flops':>12}")
    for row in result.rows:
        print(f"{row.algorithm:<14}{row.kt:>5}{row.snr_db:>8.6g}"
              f"{row.trials:>8}{row.mean_sum_rate:>12.4f}"
              f"{row.std_sum_rate:>9.4f}{row.flops:>12.6g}")
    print(f"wrote {output} ({len(result.rows)} rows)")


def cli_main(argv=None):
    """Run the CLI; returns the process exit code instead of exiting.

    0 on success, 2 on argument errors, 1 on runtime failures.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        return int(exc.code or 0)

    try:
        kt_values = _int_list(args.kt)
        snr_values = _float_list(args.snr_db)
        if args.algorithms is None:
            algorithms = DEFAULT_ALGORITHMS
        else:
            algorithms = tuple(
                a.strip() for a in args.algorithms.split(",") if a.strip()
            )
        config = SweepConfig(
            m=args.m,
            n=args.n,
            kt_values=kt_values,
            snr_db_values=snr_values,
            trials=args.trials,
            base_seed=args.seed,
            algorithms=algorithms,
            k_max=args.k,
            brute_force_cap=args.brute_force_cap,
        )
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2

    try:
        result = run_sweep(config)
        write_csv(result, args.output)
    except Exception as exc:  # noqa: BLE001 - report and exit nonzero
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    _print_summary(result, args.output)
    return 0


def main():
    raise SystemExit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
