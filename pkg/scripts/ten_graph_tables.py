"""Write the profile tables of the ten graph families as one CSV (rows n, columns G1..G10)."""
import argparse
import csv
import sys
import time
from dataclasses import dataclass

from strucprof.families import ten_graph_family
from strucprof.profile import classify_growth, profile_table


@dataclass
class Config:
    n_max: int = 10
    families: tuple[int, ...] = tuple(range(1, 11))
    verdicts: bool = False


def run(cfg: Config, out=sys.stdout) -> None:
    tables = {}
    for i in cfg.families:
        t0 = time.perf_counter()
        tables[i] = profile_table(ten_graph_family(i), cfg.n_max)
        print(f"G{i}: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n"] + [f"G{i}" for i in cfg.families])
    for n in range(cfg.n_max + 1):
        w.writerow([n] + [tables[i].values[n] for i in cfg.families])
    if cfg.verdicts:
        for i in cfg.families:
            print(f"# G{i}: {classify_growth(tables[i])}", file=out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=Config.n_max)
    ap.add_argument("--families", default="1-10", help="e.g. 1-5 or 2,9")
    ap.add_argument("--verdicts", action="store_true", help="append growth classifications")
    a = ap.parse_args()
    if "-" in a.families:
        lo, hi = map(int, a.families.split("-"))
        fams = tuple(range(lo, hi + 1))
    else:
        fams = tuple(int(x) for x in a.families.split(","))
    run(Config(a.max_n, fams, a.verdicts))


if __name__ == "__main__":
    main()
