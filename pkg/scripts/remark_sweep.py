"""Sweep the x=z=1 question: is [beta, 1/x)_E split, for small x and beta?

E = GF2(s,t)[mu: s].  Prints one CSV row per (beta, x, D).  Evidence only:
NoWitnessUpTo(D) says nothing about larger bounds.
"""

import argparse
import csv
import itertools
import sys
from collections import Counter
from dataclasses import dataclass

from brdescent.descent import remark_probe
from brdescent.fields import FieldTower
from brdescent.oracle import DegreeBound


@dataclass
class Config:
    max_deg: int = 1
    bounds: tuple = (1, 2, 3)
    betas: tuple = ("s", "t", "s*t+t^3", "t+1", "s*t")


def small_polys(F, max_deg):
    s, t = F.gen("s"), F.gen("t")
    monos = [s ** i * t ** j for i in range(max_deg + 1) for j in range(max_deg + 1 - i)]
    for bits in range(1, 1 << len(monos)):
        yield sum((m for k, m in enumerate(monos) if bits >> k & 1), F.zero())


def sweep(cfg: Config):
    from brdescent.fields import parse_element

    B = FieldTower.rational(1, ("s", "t"))
    E = B.extend(B.gen("s"), "mu")
    for bs, x, D in itertools.product(cfg.betas, small_polys(B, cfg.max_deg), cfg.bounds):
        beta = parse_element(E, bs)
        rep = remark_probe(beta, 1, E.embed(x), E, DegreeBound(D))
        yield {"beta": bs, "x": str(x), "D": D, "verdict": rep.verdict}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-deg", type=int, default=Config.max_deg)
    p.add_argument("-D", type=int, nargs="+", default=list(Config.bounds))
    a = p.parse_args()
    cfg = Config(max_deg=a.max_deg, bounds=tuple(a.D))
    w = csv.DictWriter(sys.stdout, fieldnames=["beta", "x", "D", "verdict"], lineterminator="\n")
    w.writeheader()
    tally = Counter()
    for row in sweep(cfg):
        w.writerow(row)
        tally[(row["D"], row["verdict"] == "Witness")] += 1
    for D in cfg.bounds:
        print(f"# D={D}: split {tally[(D, True)]}, no witness {tally[(D, False)]}", file=sys.stderr)


if __name__ == "__main__":
    main()
