"""``descent`` command line.

Exit codes: 0 ok/witness, 1 usage or parse error, 2 no witness at the
bound, 3 decomposable, 4 chain solve failed, 5 certificate rejected.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import random
import statistics
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .certlang import parse_instance, serialize, serialize_instance, verify_document
from .descent import Decomposable, GenericSpec, descend, index_bound_check, trdeg_account
from .errors import ChainFailed, DescentError, ElementSyntaxError
from .fields import FieldTower, parse_element, parse_tower
from .instances import BRANCHES, GenConfig, doc_from_instance, generate, instance_from_doc
from .oracle import DegreeBound, chain_delta, split_search, split_system

EXIT_OK, EXIT_USAGE, EXIT_NO_WITNESS, EXIT_DECOMPOSABLE, EXIT_CHAIN, EXIT_REJECT = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def threads() -> int:
    try:
        n = int(os.environ.get("DESCENT_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _bound(args, tower=None) -> DegreeBound:
    denom = None
    if getattr(args, "denom", None):
        denom = parse_element(tower, args.denom)
    return DegreeBound(args.bound, denom)


def _strictness(args):
    return getattr(args, "strictness", None)


# split / chain ----------------------------------------------------------------


def cmd_split(args, out) -> int:
    T = parse_tower(args.tower, guard_bound=2)
    alpha, beta = parse_element(T, args.alpha), parse_element(T, args.beta)
    res = split_search(alpha, beta, _bound(args, T))
    if res.found:
        print(f"Witness ({res.witness.x}, {res.witness.y})", file=out)
        return EXIT_OK
    print(res.verdict, file=out)
    return EXIT_NO_WITNESS


def cmd_chain(args, out) -> int:
    T = parse_tower(args.tower, guard_bound=2)
    beta, Nb, gamma, Nc = (parse_element(T, v) for v in (args.beta, args.nb, args.gamma, args.nc))
    try:
        ch = chain_delta(beta, Nb, gamma, Nc, _bound(args, T))
    except DescentError as exc:
        print(f"ChainFailed at D={args.bound}: {exc}", file=sys.stderr)
        return EXIT_CHAIN
    for k, v in (("delta", ch.delta), ("x", ch.x), ("y", ch.y), ("z", ch.z), ("lambda", ch.lam), ("t", ch.t)):
        print(f"{k} = {v}", file=out)
    return EXIT_OK


# descend ----------------------------------------------------------------------


def _generic_spec(args) -> GenericSpec | None:
    if not (args.tower or args.alpha or args.beta or args.gamma):
        return None
    L = parse_tower(args.tower or "GF2(s)")
    if L.layers:
        raise UsageError("generic base field must be rational (no layers)")
    vals = [parse_element(L, v) for v in (args.alpha or "s", args.beta or "s^3", args.gamma or "s^5")]
    return GenericSpec(L, *vals)


def cmd_descend(args, out) -> int:
    if args.generic == bool(args.instance):
        raise UsageError("give exactly one of --generic or --instance")
    outdir = Path(args.out)
    bound = DegreeBound(args.bound)
    if args.generic:
        res = descend(_generic_spec(args), bound, mode="generic", strictness=_strictness(args))
        stem = "generic"
    else:
        text = Path(args.instance).read_text(encoding="utf-8")
        inst = instance_from_doc(parse_instance(text))
        try:
            res = descend(inst, bound, mode="instance", strictness=_strictness(args))
        except ChainFailed as exc:
            print(f"ChainFailed at D={exc.bound.D}: {exc}", file=sys.stderr)
            return EXIT_CHAIN
        stem = Path(args.instance).stem
    if isinstance(res, Decomposable):
        print(f"Decomposable branch {res.which}", file=out)
        print(res.note, file=out)
        return EXIT_DECOMPOSABLE
    lines = [s.text() for s in res.presentation.sorted()]
    trdeg = trdeg_account(res)
    report = [f"tower {res.T.descriptor()}", *lines, f"trdeg {trdeg}"]
    write_atomic(outdir / f"{stem}.presentation", "\n".join(report) + "\n")
    write_atomic(outdir / f"{stem}.descent-cert", serialize(res.cert))
    if args.generic:
        ic = index_bound_check(res)
        write_atomic(outdir / f"{stem}.index.descent-cert", serialize(ic.cert))
    print("presentation:", file=out)
    for ln in lines:
        print(f"  {ln}", file=out)
    print(f"trdeg {trdeg}", file=out)
    return EXIT_OK


# verify -----------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    code = EXIT_OK
    bound = DegreeBound(args.bound)
    for path in args.files:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_USAGE
        v = verify_document(text, _strictness(args), bound)
        if v.reason == "ParseError":
            print(f"{path}: {v.detail}", file=sys.stderr)
            return EXIT_USAGE
        if v.accepted:
            print(f"{path}: {v}", file=out)
        else:
            print(f"{path}: {v}", file=sys.stderr)
            code = EXIT_REJECT
    return code


# gen --------------------------------------------------------------------------


def instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [seed] + [rng.getrandbits(64) for _ in range(count - 1)]


def _gen_one(seed: int, branch: str) -> str:
    inst = generate(GenConfig(seed=seed, branch=branch))
    return serialize_instance(doc_from_instance(inst, {"branch": branch, "seed": seed}))


def cmd_gen(args, out) -> int:
    if args.count < 1:
        raise UsageError("--count must be positive")
    seeds = instance_seeds(args.seed, args.count)
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        texts = list(pool.map(lambda s: _gen_one(s, args.branch), seeds))
    if args.out is None:
        if args.count != 1:
            raise UsageError("--out is required with --count > 1")
        out.write(texts[0])
        return EXIT_OK
    outp = Path(args.out)
    if args.count == 1 and outp.suffix:
        write_atomic(outp, texts[0])
        print(outp, file=out)
        return EXIT_OK
    for i, t in enumerate(texts):
        p = outp / f"instance-{i:04d}.json"
        write_atomic(p, t)
        print(p, file=out)
    return EXIT_OK


# bench ------------------------------------------------------------------------


def bench_rows(Ds, repeats: int):
    T = FieldTower.rational(1, ("t",))
    t = T.gen("t")
    alpha, beta = t ** 3 + t + 1, t ** 2 + t + 1
    rows = []
    for D in Ds:
        bound = DegreeBound(D)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            sysm = split_system(alpha, beta, bound)
            found = sysm.solve() is not None
            times.append(time.perf_counter() - t0)
        rows.append({
            "D": D,
            "unknowns": sysm.ncols,
            "equations": len(sysm.rows),
            "found": int(found),
            "mean_s": statistics.fmean(times),
            "stdev_s": statistics.stdev(times) if len(times) > 1 else 0.0,
            "repeats": repeats,
        })
    return rows


def cmd_bench(args, out) -> int:
    rows = bench_rows(args.D, args.repeats)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in r.items()})
    if args.out:
        write_atomic(Path(args.out), buf.getvalue())
    for r in rows:
        print(f"D={r['D']:>3} unknowns={r['unknowns']:>5} equations={r['equations']:>5} "
              f"time={r['mean_s']:.4f}s +/- {r['stdev_s']:.4f}", file=out)
    return EXIT_OK


# parser -----------------------------------------------------------------------


def _strict_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strictness", action="store_const", const="strict")
    g.add_argument("--permissive", dest="strictness", action="store_const", const="permissive")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="descent", description="Exponent-2 degree-8 descent toolkit in characteristic 2")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    sp = sub.add_parser("split", help="bounded search for x^2+x+y^2*beta = alpha")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("-D", "--bound", type=int, default=8)
    sp.add_argument("--denom")
    sp.set_defaults(func=cmd_split)

    cp = sub.add_parser("chain", help="solve the chain equations for delta")
    cp.add_argument("--tower", required=True)
    for name in ("beta", "nb", "gamma", "nc"):
        cp.add_argument(f"--{name}", required=True)
    cp.add_argument("-D", "--bound", type=int, default=8)
    cp.add_argument("--denom")
    cp.set_defaults(func=cmd_chain)

    dp = sub.add_parser("descend", help="run the descent pipeline")
    dp.add_argument("--generic", action="store_true")
    dp.add_argument("--mode", choices=("instance", "generic"))
    dp.add_argument("--instance")
    dp.add_argument("--seed", type=int, default=0)
    dp.add_argument("--tower")
    dp.add_argument("--alpha")
    dp.add_argument("--beta")
    dp.add_argument("--gamma")
    dp.add_argument("-D", "--bound", type=int, default=8)
    dp.add_argument("--out", default="descent-out")
    _strict_flags(dp)
    dp.set_defaults(func=cmd_descend)

    vp = sub.add_parser("verify", help="replay certificates")
    vp.add_argument("files", nargs="+")
    vp.add_argument("-D", "--bound", type=int, default=4)
    _strict_flags(vp)
    vp.set_defaults(func=cmd_verify)

    gp = sub.add_parser("gen", help="generate seeded instances")
    gp.add_argument("--seed", type=int, default=1)
    gp.add_argument("--branch", choices=BRANCHES, default="generic")
    gp.add_argument("--count", type=int, default=1)
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)

    bp = sub.add_parser("bench", help="time split-system assembly and elimination")
    bp.add_argument("-D", type=int, nargs="+", default=[4, 8, 16, 32])
    bp.add_argument("--repeats", type=int, default=3)
    bp.add_argument("--out")
    bp.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.cmd is None:
            raise UsageError("missing subcommand")
        if args.cmd == "descend" and args.mode == "generic":
            args.generic = True
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ElementSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DescentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
