"""``fracinv`` command line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .experiments import EXPERIMENTS, output_dir_for, parse_config, run_experiment

log = logging.getLogger("fracinv")


def _mu_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fracinv",
        description="Experiments for recovering the initial value of a "
                    "space-time fractional diffusion equation.")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--alpha", type=float, help="Caputo order in (0, 1)")
    p.add_argument("--s", type=float, help="fractional Laplacian order in (0, 1)")
    p.add_argument("--n", dest="N", type=int, help="number of elements on (-1, 1)")
    p.add_argument("--k", dest="K", type=int, help="number of time steps")
    p.add_argument("--mu", dest="mu_list", type=_mu_list, help="noise levels, e.g. 0.005,0.01")
    p.add_argument("--seed", type=int)
    p.add_argument("--gamma", dest="gamma_policy", help="zero, paper (a priori rule), apriori or a number")
    p.add_argument("--out", dest="output_dir", help="output root directory")
    p.add_argument("--config", help="flat YAML file with configuration keys")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    flags = vars(args).copy()
    path = flags.pop("config")
    flags.pop("verbose")
    try:
        config = parse_config(path, **flags)
        run_experiment(config)
    except Exception as exc:
        print(json.dumps({"status": "error", "type": type(exc).__name__,
                          "message": str(exc)}), file=sys.stderr)
        return 1
    print(json.dumps({"status": "ok", "experiment": config.experiment,
                      "output": str(output_dir_for(config))}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
