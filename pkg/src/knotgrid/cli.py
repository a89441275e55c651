"""Command-line interface: invariant computations, theorem verification
runners, and a content-addressed result cache.

Exit codes: 0 when every requested check passes, 1 when a verification
fails, 2 for usage or resource errors.  All JSON output is canonical
(sorted keys, no whitespace) and byte-identical across repeated runs and
thread counts; the cache stores exactly those bytes, keyed by the content
hash of (canonical input, operation, options, engine version).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .alexander import (
    FitFailureError,
    alexander,
    fit_stabilization,
    skein_verify,
    verify_twist_recursion,
)
from .catalog import catalog, catalog_names
from .convert import braid_to_grid
from .experiments import compare_mutants, verify_skein_split, verify_stabilization
from .hfk.engine import DEFAULT_MAX_STATES, ResourceLimitError, hfk_hat
from .hfk.tau import tau
from .links import BraidWord, GridDiagram, LinkInputError, TwistFamilySpec, parse_link_spec
from .mutants import MutantPairSpec


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Cache:
    def __init__(self, root: str | None):
        self.root = root
        if root:
            os.makedirs(root, exist_ok=True)

    def key(self, op: str, payload) -> str:
        blob = canonical_json(
            {"op": op, "input": payload, "engine": __version__}
        ).encode()
        return hashlib.sha256(blob).hexdigest()

    def get(self, key: str):
        if not self.root:
            return None
        path = os.path.join(self.root, key + ".json")
        if os.path.exists(path):
            with open(path, "rb") as fh:
                return fh.read().decode()
        return None

    def put(self, key: str, text: str):
        if not self.root:
            return
        path = os.path.join(self.root, key + ".json")
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)  # atomic publish
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _parse_window(text: str):
    """LO..HI in Alexander units (integers, halves like 3/2, or .5)."""
    lo_s, hi_s = text.split("..")

    def to_a2(s):
        v = Fraction(s)
        v2 = 2 * v
        if v2.denominator != 1:
            raise LinkInputError(f"window bound {s} is not a half-integer")
        return int(v2)

    return to_a2(lo_s), to_a2(hi_s)


def _parse_range(text: str):
    lo, hi = text.split("..")
    return range(int(lo), int(hi) + 1)


def _parse_family(text: str) -> TwistFamilySpec:
    if text.startswith("catalog:"):
        spec = catalog(text[len("catalog:") :])
        if not isinstance(spec, TwistFamilySpec):
            raise LinkInputError(f"{text} is not a twist family")
        return spec
    if text.startswith("braid:"):
        body = text[len("braid:") :]
        head, _, site = body.rpartition("@")
        parts = head.split(":")
        if len(parts) != 2 or not site:
            raise LinkInputError("expected braid:STRANDS:g1,g2,...@SITE")
        word = [int(x) for x in parts[1].split(",") if x.strip()]
        return TwistFamilySpec(BraidWord(int(parts[0]), word), int(site))
    raise LinkInputError(f"unrecognized family spec {text!r}")


def _parse_pair(text: str) -> MutantPairSpec:
    if text.startswith("catalog:"):
        spec = catalog(text[len("catalog:") :])
        if not isinstance(spec, MutantPairSpec):
            raise LinkInputError(f"{text} is not a mutant pair")
        return spec
    if text.startswith("tangles:"):
        body = text[len("tangles:") :]
        inner_s, outer_s, k_s, l_s = body.split(";")

        def word(s):
            return BraidWord(4, [int(x) for x in s.split(",") if x.strip()])

        return MutantPairSpec(outer=word(outer_s), inner=word(inner_s),
                              k=int(k_s), l=int(l_s))
    raise LinkInputError(
        "expected catalog:NAME or tangles:INNER;OUTER;K;L (comma-separated B_4 words)"
    )


def _emit(args, obj, human_lines, csv_rows=None, csv_header=None):
    text = canonical_json(obj)
    if args.json:
        print(text)
    else:
        for line in human_lines:
            print(line)
    if args.csv and csv_rows is not None:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(",".join(csv_header) + "\n")
            for row in csv_rows:
                fh.write(",".join(str(v) for v in row) + "\n")
    return text


def _ranks_human(table):
    lines = [f"{'M':>5} {'A':>7} {'rank':>5}"]
    for (m, a2), r in sorted(table.ranks.items()):
        a = f"{a2 // 2}" if a2 % 2 == 0 else f"{a2}/2"
        lines.append(f"{m:>5} {a:>7} {r:>5}")
    return lines


def _a_str(a2: int) -> str:
    return str(a2 // 2) if a2 % 2 == 0 else f"{a2}/2"


def run(argv) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--csv", metavar="PATH", help="also write a CSV report")
    common.add_argument("--cache-dir", metavar="PATH", help="content-addressed result cache")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, metavar="N")
    common.add_argument("--alexander-window", metavar="LO..HI",
                        help="restrict HFK to Alexander gradings")
    common.add_argument("--seed", type=int, default=0, metavar="N",
                        help="seed for randomized checks")

    ap = argparse.ArgumentParser(
        prog="knotgrid",
        description="Alexander polynomials and grid knot Floer homology, "
        "with twist-family and mutant-pair verification",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("alexander", parents=[common],
                       help="symmetrized Alexander polynomial")
    p.add_argument("--link", required=True)

    p = sub.add_parser("hfk", parents=[common], help="bigraded HFK-hat rank table")
    p.add_argument("--link", required=True)

    p = sub.add_parser("tau", parents=[common], help="concordance invariant tau of a knot")
    p.add_argument("--link", required=True)

    p = sub.add_parser("fit", parents=[common], help="stabilized Alexander form (k, d, f)")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, metavar="A..B")

    v = sub.add_parser("verify", parents=[common], help="theorem verification runners")
    vsub = v.add_subparsers(dest="what", required=True)
    p = vsub.add_parser("recursion", parents=[common],
                        help="twist recursion for Alexander polynomials")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, metavar="A..B")
    p = vsub.add_parser("stabilization", parents=[common],
                        help="HFK rank stabilization under twisting")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, metavar="A..B")
    p.add_argument("--window-halfwidth", type=int, default=8)
    p = vsub.add_parser("skein", parents=[common],
                        help="skein splitting (or random skein triples)")
    p.add_argument("--family")
    p.add_argument("--n", type=int)
    p.add_argument("--random", type=int, metavar="COUNT",
                   help="check the Alexander skein relation on random braid triples")
    p.add_argument("--window-halfwidth", type=int, default=8)

    p = sub.add_parser("mutants", parents=[common],
                       help="compare a mutant pair across twist counts")
    p.add_argument("--pair", required=True)
    p.add_argument("--range", required=True, metavar="A..B")
    p.add_argument("--checks", default="delta,hfk,genus,tau,delta_graded")
    p.add_argument("--window-halfwidth", type=int, default=8)

    p = sub.add_parser("catalog", parents=[common], help="catalog operations")
    p.add_argument("action", choices=["list"])

    args = ap.parse_args(argv)
    cache = Cache(args.cache_dir)
    window = _parse_window(args.alexander_window) if args.alexander_window else None

    try:
        return _dispatch(args, cache, window)
    except (LinkInputError, FitFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2


def _link_payload(link):
    return link.to_json_obj()


def _dispatch(args, cache: Cache, window) -> int:
    if args.cmd == "catalog":
        names = catalog_names()
        _emit(args, {"entries": names}, names)
        return 0

    if args.cmd == "alexander":
        link = parse_link_spec(args.link)
        key = cache.key("alexander", _link_payload(link))
        hit = cache.get(key)
        if hit is not None:
            print(hit if args.json else f"{alexander_from_json(hit)}")
            return 0
        delta = alexander(link)
        obj = delta.to_json_obj()
        text = _emit(args, obj, [str(delta)])
        cache.put(key, text)
        return 0

    if args.cmd == "hfk":
        link = parse_link_spec(args.link)
        payload = {
            "link": _link_payload(link),
            "window": list(window) if window else None,
            "max_states": args.max_states,
        }
        key = cache.key("hfk", payload)
        hit = cache.get(key)
        if hit is not None:
            obj = json.loads(hit)
            from .hfk.spaces import BigradedRanks

            table = BigradedRanks.from_json_obj(obj)
            _emit(args, obj, _ranks_human(table),
                  csv_rows=[(m, _a_str(a2), r) for m, a2, r in obj["ranks"]],
                  csv_header=("M", "A", "rank"))
            return 0
        table = hfk_hat(link, a2_window=window, max_states=args.max_states,
                        threads=args.threads)
        obj = table.to_json_obj()
        text = _emit(args, obj, _ranks_human(table),
                     csv_rows=[(m, _a_str(a2), r) for (m, a2), r in sorted(table.ranks.items())],
                     csv_header=("M", "A", "rank"))
        cache.put(key, text)
        return 0

    if args.cmd == "tau":
        link = parse_link_spec(args.link)
        key = cache.key("tau", {"link": _link_payload(link), "max_states": args.max_states})
        hit = cache.get(key)
        if hit is not None:
            obj = json.loads(hit)
            print(hit if args.json else f"tau = {obj['tau']}")
            return 0
        value = tau(link, max_states=args.max_states)
        text = _emit(args, {"tau": value}, [f"tau = {value}"])
        cache.put(key, text)
        return 0

    if args.cmd == "fit":
        spec = _parse_family(args.family)
        fit = fit_stabilization(spec, _parse_range(args.range))
        obj = fit.to_json_obj()
        _emit(args, obj, [
            f"k = {fit.k}, d = {fit.d}, f = {fit.f}",
            f"first stable n = {fit.first_stable_n}",
            *(f"n={n}: breadth {b} >= n-k: {'pass' if ok else 'FAIL'}"
              for n, b, ok in fit.degree_checks),
        ])
        return 0 if all(c[2] for c in fit.degree_checks) or not fit.degree_checks else 1

    if args.cmd == "verify" and args.what == "recursion":
        spec = _parse_family(args.family)
        rep = verify_twist_recursion(spec, _parse_range(args.range))
        obj = rep.to_json_obj()
        _emit(args, obj,
              [f"n={c.n}: {'pass' if c.passed else 'FAIL'}" for c in rep.checks],
              csv_rows=[(c.n, "recursion", c.passed) for c in rep.checks],
              csv_header=("n", "check", "passed"))
        return 0 if rep.all_passed else 1

    if args.cmd == "verify" and args.what == "stabilization":
        spec = _parse_family(args.family)
        payload = {
            "family": spec.base.to_json_obj() | {"site": spec.site},
            "range": [min(_parse_range(args.range)), max(_parse_range(args.range))],
            "max_states": args.max_states,
            "whw": args.window_halfwidth,
        }
        key = cache.key("verify-stabilization", payload)
        hit = cache.get(key)
        if hit is not None:
            obj = json.loads(hit)
            _emit(args, obj, _stab_human(obj))
            return 0 if obj["passed"] else 1
        rep = verify_stabilization(
            spec, _parse_range(args.range), spec_name=args.family,
            max_states=args.max_states, window_halfwidth=args.window_halfwidth,
            threads=args.threads,
        )
        obj = rep.to_json_obj()
        text = _emit(args, obj, _stab_human(obj),
                     csv_rows=[(n, what, ok, note) for n, what, ok, note in rep.per_n_checks],
                     csv_header=("n", "check", "passed", "note"))
        cache.put(key, text)
        return 0 if rep.passed else 1

    if args.cmd == "verify" and args.what == "skein":
        if args.random:
            return _random_skein(args)
        if not args.family or args.n is None:
            print("error: need --family and --n (or --random COUNT)", file=sys.stderr)
            return 2
        spec = _parse_family(args.family)
        rep = verify_skein_split(
            spec, args.n, max_states=args.max_states,
            window_halfwidth=args.window_halfwidth, threads=args.threads,
        )
        obj = rep.to_json_obj()
        _emit(args, obj, [
            f"n={rep.n}: strands in {'one component' if rep.same_component else 'two components'}",
            f"rank inequality: {'pass' if rep.inequality_ok else 'FAIL'}",
            f"split equality:  {'pass' if rep.equality_ok else 'FAIL'}",
            f"total dims (L_n-1, L_n, L_n+1): {rep.total_dims}",
        ])
        return 0 if rep.inequality_ok and rep.equality_ok else 1

    if args.cmd == "mutants":
        spec = _parse_pair(args.pair)
        checks = tuple(args.checks.split(","))
        rep = compare_mutants(
            spec, _parse_range(args.range), checks=checks,
            max_states=args.max_states, window_halfwidth=args.window_halfwidth,
            threads=args.threads,
        )
        obj = rep.to_json_obj()
        lines = [f"first n with bigraded HFK equality: {rep.first_hfk_equal_n}"]
        for c in rep.checks:
            lines.append(
                f"n={c.n}: delta {'=' if c.delta_equal else 'DIFFERS'}"
                + (f", hfk {'=' if c.hfk_equal else 'DIFFERS'}" if c.hfk_equal is not None else "")
                + (f", genus {c.genus_pair}" if c.genus_pair else "")
                + (f", tau {c.tau_pair}" if c.tau_pair else "")
                + (f"  [{c.error}]" if c.error else "")
            )
        _emit(args, obj, lines,
              csv_rows=[(c.n, c.delta_equal, c.hfk_equal, c.genus_pair, c.tau_pair) for c in rep.checks],
              csv_header=("n", "delta_equal", "hfk_equal", "genus_pair", "tau_pair"))
        ok = rep.all_delta_equal and all(c.hfk_equal is not False for c in rep.checks)
        return 0 if ok else 1

    print("error: unknown command", file=sys.stderr)
    return 2


def _stab_human(obj) -> list[str]:
    lines = [
        f"family: {obj['spec']}",
        f"passed: {obj['passed']}  k_observed: {obj['k_observed']}  "
        f"first stable n: {obj['first_stable_n']}",
    ]
    for n, what, ok, note in obj["per_n_checks"]:
        lines.append(f"  n={n} {what}: {'pass' if ok else 'FAIL'} {note}")
    lines.extend(f"  note: {t}" for t in obj.get("notes", ()))
    return lines


def _random_skein(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    rows = []
    for _ in range(args.random):
        s = rng.randint(2, 4)
        m = rng.randint(1, 8)
        word = [rng.choice([1, -1]) * rng.randint(1, s - 1) for _ in range(m)]
        site = rng.randrange(m)
        g = abs(word[site])
        plus = BraidWord(s, word[:site] + [g] + word[site + 1 :])
        minus = BraidWord(s, word[:site] + [-g] + word[site + 1 :])
        rest = word[:site] + word[site + 1 :]
        zero = BraidWord(s, rest) if rest else BraidWord(s, [1, -1])
        chk = skein_verify(plus, minus, zero, cross_check=False)
        rows.append({"word": word, "site": site, "passed": chk.passed})
        if not chk.passed:
            failures += 1
    obj = {"count": args.random, "failures": failures, "rows": rows}
    _emit(args, obj, [f"random skein triples: {args.random - failures}/{args.random} pass"])
    return 0 if failures == 0 else 1


def alexander_from_json(text: str) -> str:
    from .poly import HalfLaurent

    return str(HalfLaurent.from_json_obj(json.loads(text)))


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
