"""Perturb associative extensions above arity 2 and count survivors.

Every valid (F1, F2) pair on one or two letters is extended to the horizon;
each entry of arity at least 3 is then replaced by every other value.  The
fold is the only associative completion, so the survivor count should be 0.
"""

import argparse
import itertools

from preassoc import oracle
from preassoc.catalog import digits
from preassoc.construct import check_associative_extension, extend_associative
from preassoc.core import BinaryMap, Codomain, UnaryMap


def valid_pairs(n):
    X = digits(n)
    s = X.symbols
    for flat in itertools.product(s, repeat=n * n):
        F2 = BinaryMap(X, Codomain(s), tuple(flat[i * n:(i + 1) * n] for i in range(n)))
        for u in itertools.product(s, repeat=n):
            F1 = UnaryMap(s, s, u)
            if check_associative_extension(F1, F2):
                yield F1, F2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=2)
    args = ap.parse_args()
    survivors = 0
    for n in range(1, args.max_n + 1):
        pairs = perturbed = 0
        for F1, F2 in valid_pairs(n):
            pairs += 1
            G = extend_associative(F1, F2, args.horizon)
            for w in G.words(3, args.horizon):
                for v in G.codomain.atoms:
                    if v != G(w):
                        perturbed += 1
                        survivors += bool(oracle.is_associative(G.replace(w, v)))
        print(f"n={n}: {pairs} valid pairs, {perturbed} perturbed tables")
    print(f"associative after perturbation: {survivors}")
    raise SystemExit(1 if survivors else 0)


if __name__ == "__main__":
    main()
