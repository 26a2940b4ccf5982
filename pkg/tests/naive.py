"""Literal transcriptions of the definitions, used as independent oracles.

Nothing here shares code with the optimized checks in ``preassoc.oracle``:
words are enumerated with ``itertools.product`` and every quantifier is a
plain nested loop.
"""

import itertools

from preassoc.core import EPS


def words(n, L):
    out = []
    for k in range(L + 1):
        out.extend(itertools.product(range(n), repeat=k))
    return out


def assoc(F, short=False):
    n, L, t = F.carrier.n, F.horizon, F.table
    sym = F.carrier.symbols
    for x in words(n, L):
        for y in words(n, L - len(x)):
            for z in words(n, L - len(x) - len(y)):
                if short and len(x) + len(z) > 1:
                    continue
                v = t[y]
                mid = () if v is EPS else (sym.index(v),)
                u = x + mid + z
                if len(u) <= L and t[u] != t[x + y + z]:
                    return False
    return True


def preassoc_one_letter(F):
    """``F(y)=F(y') ⇒ F(xyz)=F(xy'z)`` over contexts with ``|xz| = 1``."""
    n, L, t = F.carrier.n, F.horizon, F.table
    ws = words(n, L - 1)
    letters = [(a,) for a in range(n)]
    contexts = [((), c) for c in letters] + [(c, ()) for c in letters]
    for y in ws:
        for y2 in ws:
            if t[y] != t[y2]:
                continue
            for x, z in contexts:
                if t[x + y + z] != t[x + y2 + z]:
                    return False
    return True


def uri(F):
    t, sym = F.table, F.carrier.symbols
    for w in words(F.carrier.n, F.horizon)[1:]:
        v = t[w]
        back = () if v is EPS else (sym.index(v),)
        if t[back] != v:
            return False
    return True


def symmetric(F):
    t = F.table
    for w in words(F.carrier.n, F.horizon):
        for p in itertools.permutations(w):
            if t[p] != t[w]:
                return False
    return True


def is_eps_standard(F):
    t = F.table
    return t[()] is EPS and all(t[w] is not EPS for w in t if w)


def binary_associative(rows):
    """``rows[i][j]`` holds indices."""
    n = len(rows)
    return all(rows[rows[a][b]][c] == rows[a][rows[b][c]]
               for a, b, c in itertools.product(range(n), repeat=3))
