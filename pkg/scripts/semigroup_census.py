"""Count associative binary operations on small carriers two ways.

Once through the extension conditions with an identity unary part, once by
checking every triple directly.  Known labeled counts: 1, 8, 113.
"""

import argparse
import time

from preassoc.cli import semigroup_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    print(f"{'n':>2} {'tables':>8} {'extension':>10} {'brute':>8} {'secs':>6}")
    for n in range(1, args.max_n + 1):
        t = time.perf_counter()
        ext, brute = semigroup_census(n)
        print(f"{n:>2} {n ** (n * n):>8} {ext:>10} {brute:>8} {time.perf_counter() - t:>6.2f}")
        if ext != brute:
            raise SystemExit(f"mismatch at n={n}")


if __name__ == "__main__":
    main()
