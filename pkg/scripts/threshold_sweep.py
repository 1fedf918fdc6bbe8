"""Random sweep of the finite-threshold checks on small graphs and ordered structures.

For each size, draws random structures and reports how often k-equivalence
classes are transitive, identification preserves hypomorphy, and the
component partition is the coarsest monomorphic decomposition.
"""
import argparse
import random
from dataclasses import dataclass

from strucprof.equivalence import components, interval_decomposition, is_interval_partition
from strucprof.golden import (
    check_coarseness,
    check_identify_hypomorphy,
    check_transitivity,
    random_graph,
    random_ordered_structure,
)


@dataclass
class Config:
    sizes: tuple[int, ...] = (4, 5, 6)
    samples: int = 30
    seed: int = 20240601


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    print("n  samples  transitive  identify  coarsest  ordered-intervals")
    for n in cfg.sizes:
        trans = ident = coarse = inter = 0
        for _ in range(cfg.samples):
            G = random_graph(rng, n)
            trans += all(check_transitivity(G, k) for k in range(1, n))
            ident += check_identify_hypomorphy(G)
            coarse += check_coarseness(G)
            R = random_ordered_structure(rng, n)
            inter += is_interval_partition(R, interval_decomposition(R)) and interval_decomposition(R).refines(components(R))
        print(f"{n:<2} {cfg.samples:>8} {trans:>11} {ident:>9} {coarse:>9} {inter:>18}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="4,5,6")
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(tuple(int(x) for x in a.sizes.split(",")), a.samples, a.seed))


if __name__ == "__main__":
    main()
