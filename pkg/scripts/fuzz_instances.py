"""Descend and verify many seeded instances; tally outcomes per branch."""

import argparse
from collections import Counter
from dataclasses import dataclass

from brdescent.certlang import verify_certificate
from brdescent.descent import Generic, descend
from brdescent.instances import BRANCHES, GenConfig, generate
from brdescent.oracle import DegreeBound


@dataclass
class Config:
    count: int = 200
    seed0: int = 0
    bound: int = 4


def run(cfg: Config) -> Counter:
    tally = Counter()
    for branch in BRANCHES:
        for seed in range(cfg.seed0, cfg.seed0 + cfg.count):
            out = descend(generate(GenConfig(seed=seed, branch=branch)), DegreeBound(cfg.bound))
            if isinstance(out, Generic):
                ok = verify_certificate(out.cert, bound=DegreeBound(cfg.bound)).accepted
                tally[(branch, "Generic", ok)] += 1
            else:
                tally[(branch, f"Decomposable({out.which})", None)] += 1
    return tally


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--seed0", type=int, default=Config.seed0)
    p.add_argument("-D", "--bound", type=int, default=Config.bound)
    a = p.parse_args()
    tally = run(Config(a.count, a.seed0, a.bound))
    for (branch, outcome, ok), n in sorted(tally.items(), key=str):
        status = "-" if ok is None else ("verified" if ok else "REJECTED")
        print(f"{branch:8} {outcome:18} {status:9} {n}")


if __name__ == "__main__":
    main()
