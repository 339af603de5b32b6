"""Brute-force reference implementations on vertex strings.

Nothing here touches bit indices: vertices are strings ``x_1 ... x_n`` and sets
are Python sets of strings, so these checks are independent of the bitmap
kernels they are compared against.
"""

from itertools import product


def cube(n):
    return ["".join(bits) for bits in product("01", repeat=n)]


def flip_str(x, i):
    """Flip 1-based coordinate ``i``."""
    return x[: i - 1] + ("1" if x[i - 1] == "0" else "0") + x[i:]


def degree(x, s):
    return sum(flip_str(x, i) in s for i in range(1, len(x) + 1))


def min_degree(s):
    return min(degree(x, s) for x in s)


def irreducible(s, n):
    return bool(s) and all(any(x[i] == b for x in s) for i in range(n) for b in "01")


def subcube_patterns(n):
    """All patterns over {'*', '0', '1'}; '*' marks a free coordinate."""
    return ["".join(p) for p in product("*01", repeat=n)]


def pattern_vertices(pattern):
    return {x for x in cube(len(pattern)) if all(p in ("*", c) for p, c in zip(pattern, x))}


def is_subcube(s, n):
    return any(pattern_vertices(p) == s for p in subcube_patterns(n))


def all_subsets(n):
    verts = cube(n)
    for choice in product((0, 1), repeat=len(verts)):
        yield {v for v, c in zip(verts, choice) if c}


def local_sensitivity(f, x):
    """``f`` maps vertex strings to 0/1."""
    return sum(f[flip_str(x, i)] != f[x] for i in range(1, len(x) + 1))


def c_sensitivity(f, c):
    vals = [local_sensitivity(f, x) for x in f if f[x] == c]
    return max(vals) if vals else None
