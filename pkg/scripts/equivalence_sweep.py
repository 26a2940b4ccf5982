"""Cross-check the equivalent forms of (pre)associativity on random tables.

Prints one row per table class with how often each property holds and how
many tables made two supposedly equivalent checks disagree.
"""

import argparse
import random
from collections import Counter

from preassoc import oracle
from preassoc.catalog import digits, random_table
from preassoc.construct import check_associative_extension, compose_right, extend_associative
from preassoc.core import BinaryMap, Codomain, UnaryMap, is_epsilon_standard


def constructed(rng, n, L, count):
    """Associative extensions on ``n`` letters, then right-composed with random unary maps."""
    X = digits(n)
    s = X.symbols
    out = []
    while len(out) < count:
        rows = tuple(tuple(rng.choice(s) for _ in s) for _ in s)
        F2 = BinaryMap(X, Codomain(s), rows)
        F1 = UnaryMap.identity(s)
        if not check_associative_extension(F1, F2):
            continue
        G = extend_associative(F1, F2, L)
        g = UnaryMap(s, s, tuple(rng.choice(s) for _ in s))
        out.append(compose_right(G, g, G(())))
    return out


def sweep(tables):
    stats, bad = Counter(), Counter()
    for F in tables:
        pre = oracle.is_preassociative(F).verdict
        stats["preassociative"] += pre
        if oracle.is_preassociative_pairwise(F).verdict != pre:
            bad["pairwise"] += 1
        if oracle.is_preassociative_brute(F).verdict != pre:
            bad["brute"] += 1
        if oracle.kernel_partition(F).is_congruence() != pre:
            bad["congruence"] += 1
        if is_epsilon_standard(F):
            a = oracle.is_associative(F).verdict
            stats["associative"] += a
            if oracle.is_associative_short(F).verdict != a:
                bad["short"] += 1
            if (pre and oracle.is_unarily_range_idempotent(F).verdict) != a:
                bad["split"] += 1
        if F.horizon >= 3:
            strong = oracle.is_strongly_preassociative(F).verdict
            stats["strong"] += strong
            if strong != (pre and oracle.is_symmetric(F).verdict):
                bad["strong"] += 1
    return stats, bad


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--horizon", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    classes = {
        "uniform": [random_table(rng, args.n, args.horizon) for _ in range(args.count)],
        "eps-standard": [random_table(rng, args.n, args.horizon, eps_standard=True)
                         for _ in range(args.count)],
        "constructed": constructed(rng, args.n, args.horizon, args.count // 5),
    }
    total_bad = 0
    for name, tables in classes.items():
        stats, bad = sweep(tables)
        total_bad += sum(bad.values())
        held = ", ".join(f"{k}={v}" for k, v in sorted(stats.items()))
        print(f"{name:>13}: {len(tables)} tables; holds: {held}; disagreements: {dict(bad) or 0}")
    raise SystemExit(1 if total_bad else 0)


if __name__ == "__main__":
    main()
