"""Tabulate volume polynomials V_n: size, radicand, all-ones value and timings
of the Dyck-path sum against the first-return recursion."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from gmpy2 import mpq

from permvol import volume as vol
from permvol.dyck import catalan
from permvol.ratpoly import ScaledPoly, evaluate, render


@dataclass(frozen=True)
class TableConfig:
    n_max: int = 8
    dyck_max: int = 8
    show: int = 0  # print the polynomial itself for n <= show


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def run(cfg: TableConfig) -> None:
    print(f"{'n':>3} {'paths':>7} {'terms':>6} {'sqrt':>5} {'V/sqrt(n+1) at 1':>18} {'recursion s':>12} {'dyck s':>9}")
    for n in range(cfg.n_max + 1):
        vol.gamma.cache_clear()
        vol._recursive_value.cache_clear()
        rec, t_rec = timed(vol.volume_recursive, n)
        t_dyck = float("nan")
        if n <= cfg.dyck_max:
            dyck, t_dyck = timed(vol.volume_dyck, n)
            assert dyck.value == rec.value
        at_ones, _ = evaluate(rec.value * ScaledPoly(mpq(1, n + 1), n + 1), [1] * n)
        print(f"{n:>3} {catalan(n):>7} {len(rec.value.poly):>6} {rec.value.radicand:>5} "
              f"{str(at_ones):>18} {t_rec:>12.4f} {t_dyck:>9.3f}")
        if n <= cfg.show:
            print("    " + render(rec.value))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=TableConfig.n_max)
    parser.add_argument("--dyck-max", type=int, default=TableConfig.dyck_max)
    parser.add_argument("--show", type=int, default=TableConfig.show)
    args = parser.parse_args()
    run(TableConfig(args.n_max, args.dyck_max, args.show))


if __name__ == "__main__":
    main()
