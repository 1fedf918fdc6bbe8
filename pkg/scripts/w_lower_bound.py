"""Compare profiles of ordered block structures against the w_s sequences.

Block size s gives slots that are intervals of s points joined by a relation.
For s = 2 the profile coincides with w_2 (Fibonacci); for larger s it stays above w_s.
"""
import argparse
from dataclasses import dataclass

from strucprof.families import amc_family, ordered_block_template
from strucprof.profile import profile_table
from strucprof.series import growth_root, w_sequence


@dataclass
class Config:
    sizes: tuple[int, ...] = (2, 3)
    n_max: int = 8


def run(cfg: Config) -> None:
    for s in cfg.sizes:
        prof = profile_table(amc_family(ordered_block_template(s)), cfg.n_max).values
        w = w_sequence(s, cfg.n_max)
        print(f"s={s}  root={growth_root(s):.6f}")
        print("  n        " + " ".join(f"{n:>5}" for n in range(cfg.n_max + 1)))
        print("  profile  " + " ".join(f"{v:>5}" for v in prof))
        print("  w_s      " + " ".join(f"{v:>5}" for v in w))
        print("  dominates:", all(a >= b for a, b in zip(prof, w)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,3")
    ap.add_argument("--max-n", type=int, default=Config.n_max)
    a = ap.parse_args()
    run(Config(tuple(int(x) for x in a.sizes.split(",")), a.max_n))


if __name__ == "__main__":
    main()
