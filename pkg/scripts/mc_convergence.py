"""Monte Carlo convergence: estimate vol P_n(x) for growing sample counts and
several seeds, and report the error in units of the standard error."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from permvol.oracle import monte_carlo_volume
from permvol.ratpoly import evaluate_float, parse_rationals
from permvol.volume import volume_recursive


@dataclass(frozen=True)
class ConvergenceConfig:
    x: tuple = (1, 1, 1)
    samples: tuple[int, ...] = (10**3, 10**4, 10**5, 10**6)
    seeds: tuple[int, ...] = field(default=(1, 2, 3, 4, 5))
    threads: int = 1


def run(cfg: ConvergenceConfig) -> None:
    n = len(cfg.x)
    exact = evaluate_float(volume_recursive(n).value, cfg.x)
    print(f"n={n} x={','.join(map(str, cfg.x))} exact={exact:.10g}")
    print(f"{'samples':>9} {'seed':>5} {'estimate':>12} {'std err':>10} {'z':>7}")
    for samples in cfg.samples:
        for seed in cfg.seeds:
            est = monte_carlo_volume(cfg.x, samples, seed=seed, threads=cfg.threads)
            z = (est.mean - exact) / est.standard_error if est.standard_error else 0.0
            print(f"{samples:>9} {seed:>5} {est.mean:>12.6f} {est.standard_error:>10.6f} {z:>7.2f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--x", default="1,1,1", help="comma-separated rationals, weight coordinates")
    parser.add_argument("--samples", type=int, nargs="+", default=list(ConvergenceConfig.samples))
    parser.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()
    run(ConvergenceConfig(tuple(parse_rationals(args.x)), tuple(args.samples), tuple(args.seeds), args.threads))


if __name__ == "__main__":
    main()
